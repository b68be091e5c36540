//! Normalized Ricci flow on generalized Wallach spaces.
//!
//! A generalized Wallach space is reduced here to its parameter triple
//! `(a1, a2, a3)`; invariant metrics are positive triples `(x1, x2, x3)` and
//! the flow is a three-dimensional autonomous ODE. The crate provides:
//!
//! * [`catalog`]: parameter triples of the known families;
//! * [`curvature`]: Ricci components, the positive-Ricci region, the first
//!   integral and the invariant surface;
//! * [`flow`]: fixed-step RK4 integration with exit detection;
//! * [`classify`]: closed-form criteria for keeping or losing `Ric > 0`;
//! * [`reduced`]: the planar reduction for equal parameters;
//! * [`cli`]: the command-line front end used by the `wallach-flow` binary.
//!
//! ```
//! use wallach_flow::{classify_equal, integrate, sample_region, SpaceParams, VerdictKind};
//!
//! // a = 1/9: every metric with positive Ricci curvature loses it
//! assert_eq!(classify_equal(1.0 / 9.0)?.kind, VerdictKind::AllLose);
//!
//! let a = SpaceParams::equal(1.0 / 9.0)?;
//! let x0 = sample_region(&a, 1, 42)?[0];
//! let tr = integrate(&a, &x0, 100.0, 1e-3)?;
//! let exit = tr.exit_event().expect("leaves the positive region");
//! assert!(exit.t > 0.0 && exit.min_r.abs() <= 1e-10);
//! # Ok::<(), wallach_flow::Error>(())
//! ```

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod flow;
pub mod reduced;

pub use catalog::{make_space, validate_params, FamilySpec, SpaceParams};
pub use classify::{
    a_star_exact, classify_equal, classify_general, family_scan, partial_solutions, preserve_inequalities,
    real_roots_cubic, theta_i, ClassifyOptions, Verdict, VerdictKind,
};
pub use curvature::{
    first_integral, in_positive_region, project_to_sigma, ricci_components, MetricPoint, RicciComponents,
};
pub use error::{Error, Result};
pub use flow::{integrate, integrate_with, sample_region, vector_field, FlowOptions, FlowState, Trajectory};
pub use reduced::{cone_residual, kahler_border, psi, reduced_rhs, run_grid, GridRun, RatioPoint};
