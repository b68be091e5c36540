//! Closed-form verdicts on keeping or losing positive Ricci curvature.
//!
//! ```text
//! cargo run --example classify              # a few reference triples
//! cargo run --example classify 0.2 0.2 0.11 # a triple of your own
//! ```

use wallach_flow::classify::{equal_threshold_poly, partial_solution_t_bound};
use wallach_flow::{
    a_star_exact, classify_general, partial_solutions, preserve_inequalities, theta_i, ClassifyOptions, SpaceParams,
};

fn report(a: &SpaceParams) -> wallach_flow::Result<()> {
    let v = classify_general(a, ClassifyOptions::default())?;
    let check = preserve_inequalities(a);
    println!("a = {:?}", a.as_array());
    println!("  theta = {:+.6}, theta_i = {:.6?}", v.theta, v.theta_i);
    println!(
        "  inequality residuals {:.4?} (all >= 0: {})",
        check.residuals, check.holds
    );
    println!("  {:?}: {}", v.kind, v.rule.describe());
    Ok(())
}

fn main() -> wallach_flow::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if let [a1, a2, a3] = args[..] {
        return report(&SpaceParams::new(a1, a2, a3)?);
    }

    let a_star = a_star_exact();
    println!(
        "equal-parameter threshold a* = {a_star:.10} (h(a*) = {:.1e})",
        equal_threshold_poly(a_star)
    );
    println!("theta_i peaks at {:.6} below 1/6", theta_i(0.4196)?);
    println!();

    for (a1, a2, a3) in [
        (1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0),
        (1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0),
        (4.0 / 23.0, 4.0 / 23.0, 4.0 / 23.0),
        (0.2, 0.2, 0.11),
        (0.3, 0.25, 0.2),
        (0.2, 0.1, 0.05),
    ] {
        report(&SpaceParams::new(a1, a2, a3)?)?;
    }

    println!();
    let eps = 0.05;
    let bound = partial_solution_t_bound(eps).unwrap();
    let p = partial_solutions(eps, 0.5 * bound)?;
    println!("explicit family, eps = {eps}, t = {:.5}:", 0.5 * bound);
    report(&p)
}
