//! Direct transliteration of the measure formulas, written without touching
//! the library's split or aggregation code. Each object is clipped against
//! each quadrant rectangle independently.

#![allow(dead_code)]

/// (x, y, w, h)
pub type Rect = (f64, f64, f64, f64);

#[derive(Debug, Clone, Copy)]
pub struct OracleMeasures {
    pub balance: f64,
    pub equilibrium: f64,
    pub symmetry: f64,
    pub sequence: f64,
    pub rhythm: f64,
    pub av: f64,
}

impl OracleMeasures {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.balance,
            self.equilibrium,
            self.symmetry,
            self.sequence,
            self.rhythm,
            self.av,
        ]
    }
}

/// Edges within this fraction of the frame dimension of a center line are
/// moved onto it before clipping.
const SNAP: f64 = 1e-9;

fn snap_to(v: f64, axis: f64, tol: f64) -> f64 {
    if (v - axis).abs() <= tol {
        axis
    } else {
        v
    }
}

fn clip(o: Rect, q: (f64, f64, f64, f64)) -> Option<Rect> {
    let x0 = o.0.max(q.0);
    let y0 = o.1.max(q.1);
    let x1 = (o.0 + o.2).min(q.2);
    let y1 = (o.1 + o.3).min(q.3);
    if x1 - x0 > 0.0 && y1 - y0 > 0.0 {
        Some((x0, y0, x1 - x0, y1 - y0))
    } else {
        None
    }
}

/// Alternative readings of the measure definitions, for sensitivity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Variant {
    /// Put each whole object in the quadrant holding its center instead of
    /// cutting it along the center lines.
    pub by_center: bool,
    /// Θ as the angle atan2(dy, dx) instead of the ratio dy/dx.
    pub angle_theta: bool,
}

// quadrant index: 0 UL, 1 UR, 2 LL, 3 LR
fn pieces(width: f64, height: f64, objects: &[Rect], variant: Variant) -> [Vec<Rect>; 4] {
    let (xc, yc) = (width / 2.0, height / 2.0);
    let bounds = [
        (0.0, 0.0, xc, yc),
        (xc, 0.0, width, yc),
        (0.0, yc, xc, height),
        (xc, yc, width, height),
    ];
    let mut out: [Vec<Rect>; 4] = Default::default();
    for &(x, y, w, h) in objects {
        let (x0, x1) = (snap_to(x, xc, SNAP * width), snap_to(x + w, xc, SNAP * width));
        let (y0, y1) = (snap_to(y, yc, SNAP * height), snap_to(y + h, yc, SNAP * height));
        let o = (x0, y0, x1 - x0, y1 - y0);
        if variant.by_center {
            let right = x + w / 2.0 >= xc;
            let bottom = y + h / 2.0 >= yc;
            out[usize::from(right) + 2 * usize::from(bottom)].push((x, y, w, h));
            continue;
        }
        for (qi, &b) in bounds.iter().enumerate() {
            if let Some(p) = clip(o, b) {
                out[qi].push(p);
            }
        }
    }
    out
}

/// Per-quadrant [X, Y, H, B, Θ, R, A].
pub fn families(width: f64, height: f64, objects: &[Rect]) -> [[f64; 7]; 4] {
    families_with(width, height, objects, Variant::default())
}

fn families_with(width: f64, height: f64, objects: &[Rect], variant: Variant) -> [[f64; 7]; 4] {
    let (xc, yc) = (width / 2.0, height / 2.0);
    let parts = pieces(width, height, objects, variant);
    let mut agg = [[0.0; 7]; 4];
    for q in 0..4 {
        for &(x, y, w, h) in &parts[q] {
            let dx = (x + w / 2.0 - xc).abs();
            let dy = (y + h / 2.0 - yc).abs();
            agg[q][0] += dx;
            agg[q][1] += dy;
            agg[q][2] += h;
            agg[q][3] += w;
            agg[q][4] += if variant.angle_theta {
                dy.atan2(dx)
            } else {
                dy / dx.max(1e-12)
            };
            agg[q][5] += (dx * dx + dy * dy).sqrt();
            agg[q][6] += w * h;
        }
    }
    agg
}

fn norm(agg: &[[f64; 7]; 4], f: usize) -> [f64; 4] {
    let m = (0..4).map(|q| agg[q][f]).fold(0.0, f64::max);
    let mut out = [0.0; 4];
    for q in 0..4 {
        out[q] = if m > 0.0 { agg[q][f] / m } else { 0.0 };
    }
    out
}

pub fn measures(width: f64, height: f64, objects: &[Rect]) -> OracleMeasures {
    measures_with(width, height, objects, Variant::default())
}

pub fn measures_with(width: f64, height: f64, objects: &[Rect], variant: Variant) -> OracleMeasures {
    let (xc, yc) = (width / 2.0, height / 2.0);
    let parts = pieces(width, height, objects, variant);

    let side = |qs: [usize; 2], horizontal: bool| -> f64 {
        qs.iter()
            .flat_map(|&q| parts[q].iter())
            .map(|&(x, y, w, h)| {
                let d = if horizontal {
                    (x + w / 2.0 - xc).abs()
                } else {
                    (y + h / 2.0 - yc).abs()
                };
                w * h * d
            })
            .sum()
    };
    let (wl, wr) = (side([0, 2], true), side([1, 3], true));
    let (wt, wb) = (side([0, 1], false), side([2, 3], false));
    let bm = |a: f64, b: f64| if a.max(b) == 0.0 { 0.0 } else { (a - b) / a.max(b) };
    let balance = 1.0 - (bm(wl, wr).abs() + bm(wt, wb).abs()) / 2.0;

    let total: f64 = objects.iter().map(|o| o.2 * o.3).sum();
    let emx = 2.0 * objects.iter().map(|o| o.2 * o.3 * (o.0 + o.2 / 2.0 - xc)).sum::<f64>() / (width * total);
    let emy = 2.0 * objects.iter().map(|o| o.2 * o.3 * (o.1 + o.3 / 2.0 - yc)).sum::<f64>() / (height * total);
    let equilibrium = 1.0 - (emx.abs() + emy.abs()) / 2.0;

    let agg = families_with(width, height, objects, variant);
    let (mut sv, mut sh, mut sr) = (0.0, 0.0, 0.0);
    for f in 0..6 {
        let n = norm(&agg, f);
        sv += (n[0] - n[1]).abs() + (n[2] - n[3]).abs();
        sh += (n[0] - n[2]).abs() + (n[1] - n[3]).abs();
        sr += (n[0] - n[3]).abs() + (n[1] - n[2]).abs();
    }
    let symmetry = 1.0 - (sv / 12.0 + sh / 12.0 + sr / 12.0) / 3.0;

    let u = [4.0, 3.0, 2.0, 1.0];
    let w: Vec<f64> = (0..4).map(|q| u[q] * agg[q][6]).collect();
    let mut dist = 0.0;
    for q in 0..4 {
        let strictly_heavier = (0..4).filter(|&k| w[k] > w[q]).count() as f64;
        let v = 4.0 - strictly_heavier;
        dist += (u[q] - v).abs();
    }
    let sequence = (1.0 - dist / 8.0).max(0.0);

    let mut rh = 0.0;
    for f in [0, 1, 6] {
        let n = norm(&agg, f);
        let mut s = 0.0;
        for a in 0..4 {
            for b in a + 1..4 {
                s += (n[a] - n[b]).abs();
            }
        }
        rh += s / 6.0;
    }
    let rhythm = 1.0 - rh / 3.0;

    let av = (balance + equilibrium + symmetry + sequence + rhythm) / 5.0;
    OracleMeasures {
        balance,
        equilibrium,
        symmetry,
        sequence,
        rhythm,
        av,
    }
}
