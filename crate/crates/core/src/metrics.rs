//! The five component measures and their mean, the aesthetic value `av`.
//!
//! Every measure lies in `[0, 1]`, 1 being best. Balance, symmetry, sequence
//! and rhythm read the axis-split portions; equilibrium uses whole-object
//! centers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{for_each_portion, Family, Layout, Quadrant, QuadrantAggregates};

/// Families compared across quadrant pairs by symmetry.
const SYMMETRY_FAMILIES: [Family; 6] = [Family::X, Family::Y, Family::H, Family::B, Family::Theta, Family::R];

/// Families compared across all quadrant pairs by rhythm.
const RHYTHM_FAMILIES: [Family; 3] = [Family::X, Family::Y, Family::A];

/// Reading-order weight per quadrant, UL first.
pub const READING_ORDER_WEIGHTS: [f64; 4] = [4.0, 3.0, 2.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureVector {
    pub balance: f64,
    pub equilibrium: f64,
    pub symmetry: f64,
    pub sequence: f64,
    pub rhythm: f64,
    pub av: f64,
}

impl MeasureVector {
    pub const COMPONENT_NAMES: [&'static str; 5] = ["balance", "equilibrium", "symmetry", "sequence", "rhythm"];

    /// Builds a vector from the five components, deriving `av`.
    pub fn from_components(c: [f64; 5]) -> Result<Self> {
        let av = order_complexity(c[0], c[1], c[2], c[3], c[4])?;
        Ok(MeasureVector {
            balance: c[0],
            equilibrium: c[1],
            symmetry: c[2],
            sequence: c[3],
            rhythm: c[4],
            av,
        })
    }

    /// Balance, equilibrium, symmetry, sequence, rhythm.
    pub fn components(&self) -> [f64; 5] {
        [
            self.balance,
            self.equilibrium,
            self.symmetry,
            self.sequence,
            self.rhythm,
        ]
    }
}

/// Area-times-distance weight on each side of the two center lines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct AxisWeights {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

/// Per-quadrant sequence bookkeeping, reading order UL, UR, LL, LR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceAssignment {
    /// Reading-order weights (4, 3, 2, 1).
    pub u: [f64; 4],
    /// `u_j · A_j`.
    pub w: [f64; 4],
    /// Expected rank value in reading order; equal to `u`.
    pub q: [u8; 4],
    /// Rank value assigned from the ordering of `w`.
    pub v: [u8; 4],
}

impl SequenceAssignment {
    pub fn from_aggregates(agg: &QuadrantAggregates) -> Self {
        let areas = agg.family(Family::A);
        let u = READING_ORDER_WEIGHTS;
        let w = [u[0] * areas[0], u[1] * areas[1], u[2] * areas[2], u[3] * areas[3]];

        // Stable sort keeps reading order among ties.
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&a, &b| w[b].total_cmp(&w[a]));

        let mut v = [0u8; 4];
        let mut start = 0;
        while start < 4 {
            let mut end = start + 1;
            while end < 4 && w[order[end]] == w[order[start]] {
                end += 1;
            }
            // A tie group takes the rank value of its first (largest) position.
            let value = 4 - start as u8;
            for &j in &order[start..end] {
                v[j] = value;
            }
            start = end;
        }

        SequenceAssignment {
            u,
            w,
            q: [4, 3, 2, 1],
            v,
        }
    }

    /// `Σ_j |q_j − v_j|`. Can reach 9 when one quadrant trails a three-way tie.
    pub fn distance(&self) -> u8 {
        self.q.iter().zip(&self.v).map(|(&q, &v)| q.abs_diff(v)).sum()
    }
}

pub fn axis_weights(layout: &Layout) -> Result<AxisWeights> {
    layout.ensure_non_empty()?;
    Ok(analyze(layout).0)
}

pub fn balance(layout: &Layout) -> Result<f64> {
    Ok(balance_from_weights(&axis_weights(layout)?))
}

pub fn equilibrium(layout: &Layout) -> Result<f64> {
    layout.ensure_non_empty()?;
    Ok(equilibrium_of(layout))
}

pub fn symmetry(layout: &Layout) -> Result<f64> {
    layout.ensure_non_empty()?;
    Ok(symmetry_from_aggregates(&QuadrantAggregates::from_layout(layout)))
}

pub fn sequence(layout: &Layout) -> Result<f64> {
    layout.ensure_non_empty()?;
    Ok(sequence_from_aggregates(&QuadrantAggregates::from_layout(layout)))
}

pub fn rhythm(layout: &Layout) -> Result<f64> {
    layout.ensure_non_empty()?;
    Ok(rhythm_from_aggregates(&QuadrantAggregates::from_layout(layout)))
}

/// Mean of the five measures.
pub fn order_complexity(balance: f64, equilibrium: f64, symmetry: f64, sequence: f64, rhythm: f64) -> Result<f64> {
    let parts = [balance, equilibrium, symmetry, sequence, rhythm];
    for (name, value) in MeasureVector::COMPONENT_NAMES.iter().zip(parts) {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::domain(format!("{name} = {value} is outside [0, 1]")));
        }
    }
    Ok((balance + equilibrium + symmetry + sequence + rhythm) / 5.0)
}

pub fn evaluate(layout: &Layout) -> Result<MeasureVector> {
    layout.ensure_non_empty()?;
    let (weights, agg) = analyze(layout);
    MeasureVector::from_components([
        balance_from_weights(&weights),
        equilibrium_of(layout),
        symmetry_from_aggregates(&agg),
        sequence_from_aggregates(&agg),
        rhythm_from_aggregates(&agg),
    ])
}

/// One pass over the portions collecting both side weights and quadrant sums.
fn analyze(layout: &Layout) -> (AxisWeights, QuadrantAggregates) {
    let (xc, yc) = layout.frame().center();
    let mut weights = AxisWeights::default();
    for_each_portion(layout, |p| {
        let (cx, cy) = p.centroid();
        let a = p.area();
        let wx = a * (cx - xc).abs();
        let wy = a * (cy - yc).abs();
        if p.quadrant.is_left() {
            weights.left += wx;
        } else {
            weights.right += wx;
        }
        if p.quadrant.is_top() {
            weights.top += wy;
        } else {
            weights.bottom += wy;
        }
    });
    (weights, QuadrantAggregates::from_layout(layout))
}

fn signed_imbalance(a: f64, b: f64) -> f64 {
    let denom = a.abs().max(b.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b) / denom
    }
}

pub fn balance_from_weights(w: &AxisWeights) -> f64 {
    let vertical = signed_imbalance(w.left, w.right);
    let horizontal = signed_imbalance(w.top, w.bottom);
    unit(1.0 - (vertical.abs() + horizontal.abs()) / 2.0)
}

fn equilibrium_of(layout: &Layout) -> f64 {
    let frame = layout.frame();
    let (xc, yc) = frame.center();
    let (mut total, mut mx, mut my) = (0.0, 0.0, 0.0);
    for obj in layout.objects() {
        let a = obj.area();
        let (cx, cy) = obj.center();
        total += a;
        mx += a * (cx - xc);
        my += a * (cy - yc);
    }
    let em_x = 2.0 * mx / (frame.width() * total);
    let em_y = 2.0 * my / (frame.height() * total);
    unit(1.0 - (em_x.abs() + em_y.abs()) / 2.0)
}

/// Divides a family by its largest quadrant value; an all-zero family stays zero.
fn normalized(agg: &QuadrantAggregates, family: Family) -> [f64; 4] {
    let values = agg.family(family);
    let max = values.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        values.map(|v| v / max)
    } else {
        [0.0; 4]
    }
}

fn pair_sum(pairs: &[(Quadrant, Quadrant)], families: &[[f64; 4]]) -> f64 {
    families
        .iter()
        .map(|f| {
            pairs
                .iter()
                .map(|&(a, b)| (f[a.index()] - f[b.index()]).abs())
                .sum::<f64>()
        })
        .sum()
}

pub fn symmetry_from_aggregates(agg: &QuadrantAggregates) -> f64 {
    use Quadrant::*;
    let families = SYMMETRY_FAMILIES.map(|f| normalized(agg, f));
    let scale = 2.0 * families.len() as f64;
    let vertical = pair_sum(&[(UL, UR), (LL, LR)], &families) / scale;
    let horizontal = pair_sum(&[(UL, LL), (UR, LR)], &families) / scale;
    let radial = pair_sum(&[(UL, LR), (UR, LL)], &families) / scale;
    unit(1.0 - (vertical + horizontal + radial) / 3.0)
}

pub fn sequence_from_aggregates(agg: &QuadrantAggregates) -> f64 {
    let d = SequenceAssignment::from_aggregates(agg).distance();
    // d = 9 is reachable under the tie rule; floor at zero.
    (1.0 - f64::from(d) / 8.0).max(0.0)
}

pub fn rhythm_from_aggregates(agg: &QuadrantAggregates) -> f64 {
    use Quadrant::*;
    const ALL_PAIRS: [(Quadrant, Quadrant); 6] = [(UL, UR), (UL, LL), (UL, LR), (UR, LL), (UR, LR), (LL, LR)];
    let families = RHYTHM_FAMILIES.map(|f| normalized(agg, f));
    let per_family = pair_sum(&ALL_PAIRS, &families) / ALL_PAIRS.len() as f64;
    unit(1.0 - per_family / families.len() as f64)
}

fn unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}
