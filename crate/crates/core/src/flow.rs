//! Fixed-step integration of the normalized Ricci flow
//!
//! `x_i' = -2 x_i (r_i - (sum_j r_j / a_j) / (sum_j 1 / a_j))`
//!
//! with detection of the moments at which the trajectory leaves (or, when
//! asked to keep going, re-enters) the positive-Ricci region.
//!
//! Steps are taken on the grid `t = n h`. A step is split into halves only
//! when it would move some `ln x_i` by more than [`MAX_LOG_STEP`], which
//! happens as one `x_i` collapses to zero in finite time; recorded states
//! stay on the grid either way.

use std::io::{self, Write};

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::SpaceParams;
use crate::curvature::{log_first_integral_raw, ricci_raw, MetricPoint, RicciComponents, BOUNDARY_TOL};
use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_T_MAX: f64 = 100.0;

/// Refined events satisfy `|min r_i| <= EVENT_TOL`.
pub const EVENT_TOL: f64 = 1e-10;

/// Integration aborts once `max x_i / min x_i` exceeds this.
pub const BLOW_UP_RATIO: f64 = 1e12;

/// Half-width of the box in `ln x` from which [`sample_region`] draws.
pub const SAMPLE_LOG_SPAN: f64 = 1.0;

/// Largest change of any `ln x_i` accepted in a single step; longer steps
/// are halved. Far from a collapse a step of the default size moves `ln x_i`
/// by a few thousandths, so this never fires there.
pub const MAX_LOG_STEP: f64 = 0.01;

/// Smallest sub-step, relative to the nominal step, before giving up.
const MIN_SUBSTEP: f64 = 1e-15;

const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

/// Right-hand side of the flow at `x`.
pub fn vector_field(a: &SpaceParams, x: &MetricPoint) -> [f64; 3] {
    field_raw(&a.as_array(), &x.as_array())
}

#[inline]
fn field_raw(a: &[f64; 3], x: &[f64; 3]) -> [f64; 3] {
    let r = ricci_raw(a, x).r;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..3 {
        num += r[i] / a[i];
        den += 1.0 / a[i];
    }
    let mean = num / den;
    [0, 1, 2].map(|i| -2.0 * x[i] * (r[i] - mean))
}

/// Time derivative of each Ricci component along the flow, `grad r_i . F`.
pub fn ricci_rate(a: &SpaceParams, x: &MetricPoint) -> [f64; 3] {
    let (av, xv) = (a.as_array(), x.as_array());
    let f = field_raw(&av, &xv);
    let mut out = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (xi, xj, xk) = (xv[i], xv[j], xv[k]);
        let h = 0.5 * av[i];
        let d_i = -0.5 / (xi * xi) + h * (1.0 / (xj * xk) + xj / (xk * xi * xi) + xk / (xi * xi * xj));
        let d_j = h * (-xi / (xj * xj * xk) - 1.0 / (xk * xi) + xk / (xi * xj * xj));
        let d_k = h * (-xi / (xj * xk * xk) + xj / (xk * xk * xi) - 1.0 / (xi * xj));
        out[i] = d_i * f[i] + d_j * f[j] + d_k * f[k];
    }
    out
}

#[inline]
fn rk4_raw(a: &[f64; 3], x: &[f64; 3], h: f64) -> [f64; 3] {
    let shift = |k: &[f64; 3], s: f64| [x[0] + s * k[0], x[1] + s * k[1], x[2] + s * k[2]];
    let k1 = field_raw(a, x);
    let k2 = field_raw(a, &shift(&k1, 0.5 * h));
    let k3 = field_raw(a, &shift(&k2, 0.5 * h));
    let k4 = field_raw(a, &shift(&k3, h));
    [0, 1, 2].map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// One classical Runge-Kutta step of size `h`. The result may leave the
/// positive octant, hence the raw array.
pub fn rk4_step(a: &SpaceParams, x: &MetricPoint, h: f64) -> [f64; 3] {
    rk4_raw(&a.as_array(), &x.as_array(), h)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowState {
    pub t: f64,
    pub x: MetricPoint,
    pub r: RicciComponents,
    /// First-integral value `V(x)`.
    pub v: f64,
}

impl FlowState {
    fn new(a: &[f64; 3], t: f64, x: [f64; 3]) -> Self {
        Self {
            t,
            x: MetricPoint::from_array(x).expect("caller checked positivity"),
            r: ricci_raw(a, &x),
            v: log_first_integral_raw(a, &x).exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Exit,
    Entry,
}

/// A sign change of `min r_i`, located by bisection inside one step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossingEvent {
    pub kind: EventKind,
    pub t: f64,
    pub x: MetricPoint,
    pub min_r: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Exited,
    StayedWithinHorizon,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    pub t_max: f64,
    pub step: f64,
    /// Keep integrating past the first exit and record every sign change.
    pub continue_after_exit: bool,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            t_max: DEFAULT_T_MAX,
            step: DEFAULT_STEP,
            continue_after_exit: false,
        }
    }
}

impl FlowOptions {
    pub fn new(t_max: f64, step: f64) -> Self {
        Self {
            t_max,
            step,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidControls(format!("step {} must be positive", self.step)));
        }
        if !(self.t_max.is_finite() && self.t_max >= self.step) {
            return Err(Error::InvalidControls(format!(
                "t_max {} must be finite and at least the step {}",
                self.t_max, self.step
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: SpaceParams,
    pub states: Vec<FlowState>,
    pub events: Vec<CrossingEvent>,
}

impl Trajectory {
    /// First exit from the positive region, if any.
    pub fn exit_event(&self) -> Option<&CrossingEvent> {
        self.events.iter().find(|e| e.kind == EventKind::Exit)
    }

    pub fn outcome(&self) -> Outcome {
        if self.exit_event().is_some() {
            Outcome::Exited
        } else {
            Outcome::StayedWithinHorizon
        }
    }

    pub fn initial(&self) -> &FlowState {
        &self.states[0]
    }

    pub fn last(&self) -> &FlowState {
        self.states.last().expect("trajectory has at least its initial state")
    }

    /// `max_t |V(t)/V(0) - 1|` over the recorded states.
    pub fn first_integral_drift(&self) -> f64 {
        let a = self.params.as_array();
        let log_v0 = log_first_integral_raw(&a, &self.states[0].x.as_array());
        self.states
            .iter()
            .map(|s| (log_first_integral_raw(&a, &s.x.as_array()) - log_v0).exp_m1().abs())
            .fold(0.0, f64::max)
    }

    /// CSV with header `t,x1,x2,x3,r1,r2,r3,V`, followed by one comment line
    /// per event.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,x1,x2,x3,r1,r2,r3,V")?;
        for s in &self.states {
            let [x1, x2, x3] = s.x.as_array();
            let [r1, r2, r3] = s.r.r;
            writeln!(w, "{},{},{},{},{},{},{},{}", s.t, x1, x2, x3, r1, r2, r3, s.v)?;
        }
        for e in &self.events {
            let tag = match e.kind {
                EventKind::Exit => "exit",
                EventKind::Entry => "entry",
            };
            let [x1, x2, x3] = e.x.as_array();
            writeln!(w, "# {tag} t={} x={},{},{}", e.t, x1, x2, x3)?;
        }
        Ok(())
    }
}

/// Fixed-step RK4 from `x0` up to `t_max`, stopping at the first exit.
pub fn integrate(a: &SpaceParams, x0: &MetricPoint, t_max: f64, h: f64) -> Result<Trajectory> {
    integrate_with(a, x0, &FlowOptions::new(t_max, h))
}

pub fn integrate_with(a: &SpaceParams, x0: &MetricPoint, opts: &FlowOptions) -> Result<Trajectory> {
    opts.check()?;
    let coeffs = a.as_array();
    let h = opts.step;

    let mut n_full = (opts.t_max / h + 1e-9).floor() as u64;
    let mut tail = opts.t_max - n_full as f64 * h;
    if tail < 0.0 {
        n_full -= 1;
        tail += h;
    }
    let n_steps = if tail > 1e-12 * opts.t_max { n_full + 1 } else { n_full };

    let initial = FlowState::new(&coeffs, 0.0, x0.as_array());
    if initial.r.min() <= BOUNDARY_TOL {
        warn!(
            "initial metric {:?} is not in the positive region (min r = {:e})",
            x0.as_array(),
            initial.r.min()
        );
    }

    let mut states = Vec::with_capacity(n_steps as usize + 2);
    let mut events = Vec::new();
    states.push(initial);

    'grid: for step in 1..=n_steps {
        let t = if step > n_full { opts.t_max } else { step as f64 * h };
        let mut prev = *states.last().unwrap();
        let mut sub = t - prev.t;
        loop {
            let dt = sub.min(t - prev.t);
            let (next_t, next) = match try_step(&coeffs, &prev, dt, t) {
                Step::Accept(next_t, next) => (next_t, next),
                Step::Retry if dt >= MIN_SUBSTEP * h => {
                    sub = 0.5 * dt;
                    continue;
                }
                failure => {
                    if prev.t > states.last().unwrap().t {
                        states.push(prev);
                    }
                    let partial = Box::new(Trajectory {
                        params: *a,
                        states,
                        events,
                    });
                    return Err(match failure {
                        Step::NonFinite => Error::NumericFailure(partial),
                        _ => Error::BlowUp(partial),
                    });
                }
            };
            let state = FlowState::new(&coeffs, next_t, next);

            let (before, after) = (prev.r.min(), state.r.min());
            let crossing = if before > 0.0 && after <= 0.0 {
                Some(EventKind::Exit)
            } else if before <= 0.0 && after > 0.0 {
                Some(EventKind::Entry)
            } else {
                None
            };
            if let Some(kind) = crossing {
                let event = refine_crossing(&coeffs, &prev, dt, kind);
                events.push(event);
                if kind == EventKind::Exit && !opts.continue_after_exit {
                    if event.t > states.last().unwrap().t {
                        states.push(FlowState::new(&coeffs, event.t, event.x.as_array()));
                    }
                    break 'grid;
                }
            }

            prev = state;
            if next_t >= t {
                break;
            }
            sub = 2.0 * dt;
        }
        states.push(prev);
    }

    Ok(Trajectory {
        params: *a,
        states,
        events,
    })
}

enum Step {
    Accept(f64, [f64; 3]),
    Retry,
    BlowUp,
    NonFinite,
}

/// One RK4 step of length `dt` from `prev`, landing exactly on `t_grid` when
/// it reaches it. `Retry` asks for a shorter step: the result left the
/// positive octant or some `ln x_i` moved by more than [`MAX_LOG_STEP`],
/// which only happens close to a collapse of the metric.
fn try_step(a: &[f64; 3], prev: &FlowState, dt: f64, t_grid: f64) -> Step {
    let x = prev.x.as_array();
    let next = rk4_raw(a, &x, dt);
    if next.iter().any(|v| !v.is_finite()) {
        return Step::NonFinite;
    }
    let jump = (0..3)
        .map(|i| {
            if next[i] > 0.0 {
                (next[i] / x[i]).ln().abs()
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max);
    if jump > MAX_LOG_STEP {
        return Step::Retry;
    }
    let lo = next.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = next.iter().cloned().fold(0.0, f64::max);
    if hi / lo > BLOW_UP_RATIO {
        return Step::BlowUp;
    }
    let t = if dt >= t_grid - prev.t { t_grid } else { prev.t + dt };
    Step::Accept(t, next)
}

/// Bisection on the sub-step length `tau` in `(0, dt]` of a single RK4 step
/// from `prev`, for the zero of `min r_i`. The returned point lies on the
/// far side of the crossing (non-positive for an exit, positive for an entry).
fn refine_crossing(a: &[f64; 3], prev: &FlowState, dt: f64, kind: EventKind) -> CrossingEvent {
    let x_prev = prev.x.as_array();
    let g = |tau: f64| ricci_raw(a, &rk4_raw(a, &x_prev, tau)).min();
    let past = |v: f64| match kind {
        EventKind::Exit => v <= 0.0,
        EventKind::Entry => v > 0.0,
    };

    let (mut lo, mut hi) = (0.0, dt);
    let mut g_hi = g(hi);
    for _ in 0..200 {
        if g_hi.abs() <= EVENT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if past(g_mid) {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
        }
    }
    let x = rk4_raw(a, &x_prev, hi);
    CrossingEvent {
        kind,
        t: prev.t + hi,
        x: MetricPoint::from_array(x).expect("sub-step of an accepted step stays positive"),
        min_r: g_hi,
    }
}

/// Deterministic generic points on the invariant surface `V = 1` inside the
/// positive region, drawn by rejection from a box in log coordinates.
pub fn sample_region(a: &SpaceParams, count: usize, seed: u64) -> Result<Vec<MetricPoint>> {
    if count == 0 {
        return Err(Error::InvalidControls("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > MAX_SAMPLE_ATTEMPTS {
                return Err(Error::Sampling {
                    attempts: MAX_SAMPLE_ATTEMPTS,
                });
            }
            let u: [f64; 3] = [(); 3].map(|_| rng.gen_range(-SAMPLE_LOG_SPAN..=SAMPLE_LOG_SPAN));
            let raw = MetricPoint::from_array(u.map(f64::exp))?;
            let p = crate::curvature::project_to_sigma(a, &raw);
            if p.is_generic() && crate::curvature::in_positive_region(a, &p) {
                out.push(p);
                break;
            }
        }
    }
    Ok(out)
}

/// Integrates every start independently; results keep the order of `starts`.
pub fn integrate_batch(a: &SpaceParams, starts: &[MetricPoint], opts: &FlowOptions) -> Vec<Result<Trajectory>> {
    starts.par_iter().map(|x0| integrate_with(a, x0, opts)).collect()
}
