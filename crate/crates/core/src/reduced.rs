//! Planar reduction of the equal-parameter flow on the invariant surface.
//!
//! Ratio coordinates are `x = x3 / x2`, `y = x3 / x1`, so that metrics with
//! `x1 < x2 < x3` land in `y > x > 1`. Under this convention the border
//! curve `y = psi(x)` is the trace of the cone `r2 = 0` (see
//! [`BORDER_CONE_INDEX`]); the trajectories satisfy
//!
//! `dy/dx = (y - 1)(y - 2axy - 2ax) / ((x - 1)(x - 2axy - 2ay))`.

use std::io::{self, Write};

use serde::Serialize;

use crate::catalog::SpaceParams;
use crate::curvature::{project_to_sigma, MetricPoint};
use crate::error::{Error, Result};
use crate::flow::{ricci_rate, vector_field};

/// 1-based index of the Ricci component whose zero set maps onto `psi`.
pub const BORDER_CONE_INDEX: usize = 2;

/// Denominator magnitude below which [`reduced_rhs`] reports a singularity.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioPoint {
    pub x: f64,
    pub y: f64,
}

impl RatioPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `(x3 / x2, x3 / x1)`.
    pub fn from_metric(m: &MetricPoint) -> Self {
        Self {
            x: m.x3() / m.x2(),
            y: m.x3() / m.x1(),
        }
    }

    /// The metric on the invariant surface of `a` with these ratios.
    pub fn to_metric(&self, a: &SpaceParams) -> Result<MetricPoint> {
        let m = MetricPoint::new(1.0 / self.y, 1.0 / self.x, 1.0)?;
        Ok(project_to_sigma(a, &m))
    }

    /// `y > x > 1`.
    pub fn is_ordered(&self) -> bool {
        self.y > self.x && self.x > 1.0
    }
}

fn check_a(a: f64, what: &'static str) -> Result<()> {
    if a > 0.0 && a < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: a,
            domain: "(0, 1/2)",
        })
    }
}

/// Border curve `psi(x) = x (x + sqrt((1 - 4a^2) x^2 + 4a^2)) / (2a (x^2 - 1))`
/// on `1 < x <= 1/a`; the right endpoint is the continuous extension
/// `psi(1/a) = 1/a`.
pub fn psi(a: f64, x: f64) -> Result<f64> {
    check_a(a, "psi parameter")?;
    if !(x > 1.0 && x <= 1.0 / a) {
        return Err(Error::Domain {
            what: "psi",
            value: x,
            domain: "(1, 1/a]",
        });
    }
    let a2 = 4.0 * a * a;
    Ok(x * (x + ((1.0 - a2) * x * x + a2).sqrt()) / (2.0 * a * (x * x - 1.0)))
}

/// `a x^2 y^2 - a y^2 - x^2 y + a x^2`; vanishes on the graph of `psi`.
pub fn cone_residual(a: f64, p: RatioPoint) -> f64 {
    let (x2, y2) = (p.x * p.x, p.y * p.y);
    a * x2 * y2 - a * y2 - x2 * p.y + a * x2
}

/// Slope `dy/dx` of the reduced system.
pub fn reduced_rhs(a: f64, p: RatioPoint) -> Result<f64> {
    let RatioPoint { x, y } = p;
    let den_x = x - 1.0;
    let den_mix = x - 2.0 * a * x * y - 2.0 * a * y;
    if den_x.abs() < SINGULAR_TOL || den_mix.abs() < SINGULAR_TOL || !(den_x * den_mix).is_finite() {
        return Err(Error::Singularity { x, y });
    }
    Ok((y - 1.0) * (y - 2.0 * a * x * y - 2.0 * a * x) / (den_x * den_mix))
}

/// `(dx/dt, dy/dt)` of the ratio coordinates, obtained from the
/// three-dimensional field by the chain rule.
pub fn ratio_velocity(a: &SpaceParams, m: &MetricPoint) -> (f64, f64) {
    let f = vector_field(a, m);
    let [x1, x2, x3] = m.as_array();
    let p = RatioPoint::from_metric(m);
    let log3 = f[2] / x3;
    (p.x * (log3 - f[1] / x2), p.y * (log3 - f[0] / x1))
}

/// `dy/dx` along the three-dimensional flow through `m`.
pub fn ratio_slope(a: &SpaceParams, m: &MetricPoint) -> f64 {
    let (dx, dy) = ratio_velocity(a, m);
    dy / dx
}

/// Image `y = x / (x - 1)` of the Kaehler metrics `x3 = x1 + x2`
/// (`1/x + 1/y = 1`); independent of `a`.
pub fn kahler_border(x: f64) -> Result<f64> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(Error::Domain {
            what: "kahler_border",
            value: x,
            domain: "(1, inf)",
        });
    }
    Ok(x / (x - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridNode {
    pub i: usize,
    pub x: f64,
    pub phi: f64,
    pub psi: f64,
}

impl GridNode {
    pub fn diff(&self) -> f64 {
        self.phi - self.psi
    }
}

/// Where and why a grid run stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Halt {
    /// Last node reached.
    pub i: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRun {
    pub a: f64,
    pub start: RatioPoint,
    pub left: f64,
    pub steps: usize,
    pub h: f64,
    pub nodes: Vec<GridNode>,
    /// First node with `phi - psi > 0`.
    pub crossing: Option<usize>,
    /// Set when a stage of the scheme hit a singular line of the reduced
    /// system; `nodes` then stops at `halt.i`.
    pub halt: Option<Halt>,
}

impl GridRun {
    pub fn crossing_node(&self) -> Option<&GridNode> {
        self.crossing.map(|i| &self.nodes[i])
    }

    /// CSV `i,x,phi,psi,diff` with a trailing `# crossing ...` line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,x,phi,psi,diff")?;
        for n in &self.nodes {
            writeln!(w, "{},{},{},{},{}", n.i, n.x, n.phi, n.psi, n.diff())?;
        }
        if let Some(h) = &self.halt {
            writeln!(w, "# halted i={} x={} y={}", h.i, h.x, h.y)?;
        }
        match self.crossing_node() {
            Some(n) => writeln!(w, "# crossing i={} x={} psi={}", n.i, n.x, n.psi),
            None => writeln!(w, "# crossing none"),
        }
    }
}

/// Classical RK4 in the independent variable `x` on the nodes
/// `x_i = x0 + i h`, `h = (left - x0) / steps`, recording the first node at
/// which the numerical solution is above the border curve.
pub fn run_grid(a: f64, x0: f64, y0: f64, left: f64, steps: usize) -> Result<GridRun> {
    check_a(a, "run_grid parameter")?;
    if !(x0 > left && left > 1.0 && x0 <= 1.0 / a) {
        return Err(Error::Domain {
            what: "run_grid start/left border",
            value: x0,
            domain: "1 < left < x0 <= 1/a",
        });
    }
    if steps == 0 {
        return Err(Error::InvalidControls("grid needs at least one step".into()));
    }
    if !y0.is_finite() {
        return Err(Error::Domain {
            what: "run_grid y0",
            value: y0,
            domain: "finite",
        });
    }
    let h = (left - x0) / steps as f64;
    let node_x = |i: usize| if i == steps { left } else { x0 + i as f64 * h };
    let f = |x: f64, y: f64| reduced_rhs(a, RatioPoint::new(x, y));

    let mut nodes = Vec::with_capacity(steps + 1);
    let mut crossing = None;
    let mut halt = None;
    let mut y = y0;
    for i in 0..=steps {
        let x = node_x(i);
        let node = GridNode {
            i,
            x,
            phi: y,
            psi: psi(a, x)?,
        };
        if crossing.is_none() && node.diff() > 0.0 {
            crossing = Some(i);
        }
        nodes.push(node);
        if i == steps {
            break;
        }
        let stages = (|| -> Result<f64> {
            let k1 = f(x, y)?;
            let k2 = f(x + 0.5 * h, y + 0.5 * h * k1)?;
            let k3 = f(x + 0.5 * h, y + 0.5 * h * k2)?;
            let k4 = f(x + h, y + h * k3)?;
            Ok(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        })();
        match stages {
            Ok(next) if next.is_finite() => y = next,
            _ => {
                halt = Some(Halt { i, x, y });
                break;
            }
        }
    }

    Ok(GridRun {
        a,
        start: RatioPoint::new(x0, y0),
        left,
        steps,
        h,
        nodes,
        crossing,
        halt,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BorderFlow {
    /// The flow enters the reduced region through this border point.
    Incoming,
    /// The flow leaves the region here.
    Outgoing,
}

/// Direction of the equal-parameter flow across the border curve at
/// `(x, psi(x))`, read off the sign of `d r2 / dt` there.
pub fn border_flow(a: f64, x: f64) -> Result<BorderFlow> {
    let y = psi(a, x)?;
    let params = SpaceParams::equal(a)?;
    let m = RatioPoint::new(x, y).to_metric(&params)?;
    let rate = ricci_rate(&params, &m)[BORDER_CONE_INDEX - 1];
    Ok(if rate > 0.0 {
        BorderFlow::Incoming
    } else {
        BorderFlow::Outgoing
    })
}

/// Start points on the border curve for `a = 25/146` (row 1, `k = l = m = 25`)
/// with the expected crossing direction.
pub const BORDER_PRESETS: [(f64, f64, BorderFlow); 3] = [
    (1.8, 8.27, BorderFlow::Incoming),
    (1.4, 11.75, BorderFlow::Outgoing),
    (1.08, 40.76, BorderFlow::Incoming),
];

pub const PRESET_A: f64 = 25.0 / 146.0;
