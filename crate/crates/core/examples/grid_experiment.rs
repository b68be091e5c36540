//! The planar reduction for equal parameters: RK4 on a fixed mesh from
//! `(1.5, 10)` towards `x = 1.1` for `a = 1/6`, and the first node at which
//! the solution rises above the border curve `psi`.
//!
//! ```text
//! cargo run --example grid_experiment
//! ```

use wallach_flow::{kahler_border, run_grid};

fn main() -> wallach_flow::Result<()> {
    let a = 1.0 / 6.0;
    let run = run_grid(a, 1.5, 10.0, 1.1, 100)?;
    let i = run.crossing.expect("the curve crosses psi");
    println!("  i        x          phi          psi      phi - psi");
    for n in &run.nodes[i - 3..=i + 1] {
        println!(
            "{:>3}  {:>8.4}  {:>11.6}  {:>11.6}  {:>+11.6}",
            n.i,
            n.x,
            n.phi,
            n.psi,
            n.diff()
        );
    }
    let n = &run.nodes[i];
    println!("first crossing at i = {i}, x = {:.4}, psi = {:.4}", n.x, n.psi);
    println!("Kaehler border there: y = {:.4}", kahler_border(n.x)?);

    println!();
    println!("mesh refinement:");
    for steps in [100, 200, 400, 800] {
        let r = run_grid(a, 1.5, 10.0, 1.1, steps)?;
        let c = r.crossing_node().unwrap();
        println!("  N = {steps:>3}: h = {:+.5}, crossing x = {:.5}", r.h, c.x);
    }
    Ok(())
}
