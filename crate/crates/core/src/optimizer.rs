//! Simulated-annealing layout search.
//!
//! Object sizes stay fixed; only positions move. Each iteration translates one
//! randomly chosen object, clamps it into the frame, and accepts the move with
//! the Metropolis rule on the objective score. The best layout seen is kept.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::LayoutDocument;
use crate::layout::Layout;
use crate::metrics::{evaluate, MeasureVector};

/// Identifier of the generator behind every search; reported with results.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64";

/// Decades spanned by the proposal step-size mixture. A step is uniform on
/// `±move_scale · dimension · 10^(−STEP_DECADES · v)` with `v` uniform in [0, 1).
const STEP_DECADES: f64 = 4.0;

pub const MAX_TARGET_TOLERANCE: f64 = 0.02;

/// What the search maximizes. Larger scores are always better.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawObjective", into = "RawObjective")]
pub enum ObjectiveSpec {
    /// Weighted sum of balance, equilibrium, symmetry, sequence, rhythm.
    Maximize { weights: [f64; 5] },
    /// Negative L1 distance to a five-measure profile.
    MatchProfile { target: [f64; 5] },
    /// Negative distance between `av` and a target value.
    MatchAv { target: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    #[serde(alias = "Maximize")]
    Maximize,
    #[serde(alias = "MatchTarget")]
    MatchTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawTarget {
    Av(f64),
    Profile([f64; 5]),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObjective {
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<[f64; 5]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<RawTarget>,
}

impl TryFrom<RawObjective> for ObjectiveSpec {
    type Error = Error;

    fn try_from(raw: RawObjective) -> Result<Self> {
        let spec = match (raw.mode, raw.weights, raw.target) {
            (Mode::Maximize, Some(weights), None) => ObjectiveSpec::Maximize { weights },
            (Mode::MatchTarget, None, Some(RawTarget::Profile(target))) => ObjectiveSpec::MatchProfile { target },
            (Mode::MatchTarget, None, Some(RawTarget::Av(target))) => ObjectiveSpec::MatchAv { target },
            (Mode::Maximize, _, _) => return Err(Error::domain("maximize objective takes `weights` only")),
            (Mode::MatchTarget, _, _) => return Err(Error::domain("match_target objective takes `target` only")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<ObjectiveSpec> for RawObjective {
    fn from(spec: ObjectiveSpec) -> Self {
        match spec {
            ObjectiveSpec::Maximize { weights } => RawObjective {
                mode: Mode::Maximize,
                weights: Some(weights),
                target: None,
            },
            ObjectiveSpec::MatchProfile { target } => RawObjective {
                mode: Mode::MatchTarget,
                weights: None,
                target: Some(RawTarget::Profile(target)),
            },
            ObjectiveSpec::MatchAv { target } => RawObjective {
                mode: Mode::MatchTarget,
                weights: None,
                target: Some(RawTarget::Av(target)),
            },
        }
    }
}

impl ObjectiveSpec {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        match self {
            ObjectiveSpec::Maximize { weights } => {
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::domain("weights must be finite and non-negative"));
                }
                if weights.iter().sum::<f64>() <= 0.0 {
                    return Err(Error::domain("weights must not all be zero"));
                }
            }
            ObjectiveSpec::MatchProfile { target } => {
                if !target.iter().all(|&t| unit(t)) {
                    return Err(Error::domain("targets must lie in [0, 1]"));
                }
            }
            ObjectiveSpec::MatchAv { target } => {
                if !unit(*target) {
                    return Err(Error::domain(format!("av target {target} outside [0, 1]")));
                }
            }
        }
        Ok(())
    }

    pub fn score_measures(&self, m: &MeasureVector) -> f64 {
        let c = m.components();
        match self {
            ObjectiveSpec::Maximize { weights } => weights.iter().zip(c).map(|(w, v)| w * v).sum(),
            ObjectiveSpec::MatchProfile { target } => -target.iter().zip(c).map(|(t, v)| (t - v).abs()).sum::<f64>(),
            ObjectiveSpec::MatchAv { target } => -(m.av - target).abs(),
        }
    }
}

pub fn score(layout: &Layout, objective: &ObjectiveSpec) -> Result<f64> {
    objective.validate()?;
    Ok(objective.score_measures(&evaluate(layout)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchParams {
    pub seed: u64,
    pub iterations: u64,
    pub initial_temperature: f64,
    /// Multiplies the temperature after every iteration.
    pub cooling: f64,
    /// Largest proposal step as a fraction of the frame dimension.
    pub move_scale: f64,
    pub forbid_overlap: bool,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            seed: 0,
            iterations: 20_000,
            initial_temperature: 0.1,
            cooling: 0.9995,
            move_scale: 0.1,
            forbid_overlap: false,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_temperature.is_finite() && self.initial_temperature > 0.0) {
            return Err(Error::domain("initial_temperature must be positive"));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::domain("cooling must lie in (0, 1)"));
        }
        if !(self.move_scale > 0.0 && self.move_scale <= 1.0) {
            return Err(Error::domain("move_scale must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub best_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_layout: Layout,
    pub best_score: f64,
    /// Best-so-far score after every iteration, starting at iteration 0.
    pub trace: Vec<TracePoint>,
    pub evaluations: u64,
    pub rng: &'static str,
}

/// Serializable summary of a search, carrying the generator identifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub rng: String,
    pub seed: u64,
    pub iterations: u64,
    pub evaluations: u64,
    pub best_score: f64,
    pub measures: MeasureVector,
    pub best_layout: LayoutDocument,
    pub trace: Vec<TracePoint>,
}

impl OptimizationReport {
    /// `max_trace` caps the trace length via [`downsample_trace`].
    pub fn new(result: &OptimizationResult, params: &SearchParams, max_trace: Option<usize>) -> Result<Self> {
        let trace = match max_trace {
            Some(max) => downsample_trace(&result.trace, max),
            None => result.trace.clone(),
        };
        Ok(OptimizationReport {
            rng: result.rng.to_owned(),
            seed: params.seed,
            iterations: params.iterations,
            evaluations: result.evaluations,
            best_score: result.best_score,
            measures: evaluate(&result.best_layout)?,
            best_layout: LayoutDocument::from_layout(&result.best_layout),
            trace,
        })
    }
}

fn overlaps_any(layout: &Layout, index: usize) -> bool {
    let objects = layout.objects();
    let moved = &objects[index];
    objects
        .iter()
        .enumerate()
        .any(|(i, o)| i != index && o.intersects(moved))
}

fn has_overlap(layout: &Layout) -> Option<(String, String)> {
    let objects = layout.objects();
    for (i, a) in objects.iter().enumerate() {
        for b in &objects[i + 1..] {
            if a.intersects(b) {
                return Some((a.id.clone(), b.id.clone()));
            }
        }
    }
    None
}

fn propose_step(rng: &mut ChaCha8Rng, max_step: f64) -> f64 {
    let scale = max_step * 10f64.powf(-STEP_DECADES * rng.gen::<f64>());
    rng.gen_range(-1.0..=1.0) * scale
}

pub fn optimize(layout: &Layout, objective: &ObjectiveSpec, params: &SearchParams) -> Result<OptimizationResult> {
    objective.validate()?;
    params.validate()?;
    layout.ensure_non_empty()?;
    if params.forbid_overlap {
        if let Some((a, b)) = has_overlap(layout) {
            return Err(Error::domain(format!(
                "forbid_overlap set but `{a}` and `{b}` already overlap"
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let frame = *layout.frame();
    let (max_dx, max_dy) = (params.move_scale * frame.width(), params.move_scale * frame.height());

    let mut current = layout.clone();
    let mut current_score = objective.score_measures(&evaluate(&current)?);
    let mut best = current.clone();
    let mut best_score = current_score;
    let mut evaluations = 1;
    let mut temperature = params.initial_temperature;
    let mut trace = Vec::with_capacity(params.iterations as usize + 1);
    trace.push(TracePoint {
        iteration: 0,
        best_score,
    });

    let n = current.len();
    for iteration in 1..=params.iterations {
        let index = rng.gen_range(0..n);
        let obj = &current.objects()[index];
        let (old_x, old_y, w, h) = (obj.x, obj.y, obj.w, obj.h);
        let dx = propose_step(&mut rng, max_dx);
        let dy = propose_step(&mut rng, max_dy);
        let new_x = (old_x + dx).clamp(0.0, frame.width() - w);
        let new_y = (old_y + dy).clamp(0.0, frame.height() - h);
        current.set_position(index, new_x, new_y);

        if params.forbid_overlap && overlaps_any(&current, index) {
            current.set_position(index, old_x, old_y);
        } else {
            let candidate = objective.score_measures(&evaluate(&current)?);
            evaluations += 1;
            let delta = candidate - current_score;
            if delta >= 0.0 || rng.gen::<f64>() < (delta / temperature).exp() {
                current_score = candidate;
                if candidate > best_score {
                    best_score = candidate;
                    best.clone_from(&current);
                }
            } else {
                current.set_position(index, old_x, old_y);
            }
        }

        temperature *= params.cooling;
        trace.push(TracePoint { iteration, best_score });
    }

    Ok(OptimizationResult {
        best_layout: best,
        best_score,
        trace,
        evaluations,
        rng: RNG_ALGORITHM,
    })
}

/// One layout per `av` target, each searched from `base` with seed offset by
/// its index. Targets must be in descending order.
pub fn generate_groups(base: &Layout, targets: &[f64], params: &SearchParams) -> Result<Vec<Layout>> {
    if targets.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::domain("targets must be sorted in descending order"));
    }
    targets
        .iter()
        .enumerate()
        .map(|(i, &target)| {
            let params = SearchParams {
                seed: params.seed.wrapping_add(i as u64),
                ..*params
            };
            optimize(base, &ObjectiveSpec::MatchAv { target }, &params).map(|r| r.best_layout)
        })
        .collect()
}

/// Keeps at most `max_points` trace entries at an even stride, always
/// including the first and last.
pub fn downsample_trace(trace: &[TracePoint], max_points: usize) -> Vec<TracePoint> {
    if trace.len() <= max_points {
        return trace.to_vec();
    }
    if max_points < 2 {
        return trace.last().into_iter().take(max_points).copied().collect();
    }
    let last = trace.len() - 1;
    (0..max_points).map(|k| trace[k * last / (max_points - 1)]).collect()
}
