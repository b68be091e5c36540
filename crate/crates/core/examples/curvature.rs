//! Ricci components, the positive-Ricci region and the invariant surface
//! `V = x1^(1/a1) x2^(1/a2) x3^(1/a3) = 1`.
//!
//! ```text
//! cargo run --example curvature
//! ```

use wallach_flow::{
    first_integral, in_positive_region, project_to_sigma, ricci_components, sample_region, MetricPoint, SpaceParams,
};

fn main() -> wallach_flow::Result<()> {
    let a = SpaceParams::equal(1.0 / 9.0)?;
    for x in [[1.0, 1.0, 1.0], [1.0, 1.0, 2.0], [10.0, 1.0, 1.0], [0.5, 2.0, 3.0]] {
        let m = MetricPoint::from_array(x)?;
        let r = ricci_components(&a, &m);
        println!(
            "x = {x:?}: r = {:.5?}, Ric > 0: {}, V = {:.5}",
            r.r,
            in_positive_region(&a, &m),
            first_integral(&a, &m)
        );
    }

    // the Ricci components are homogeneous of degree -1 in x
    let m = MetricPoint::new(0.5, 2.0, 3.0)?;
    let on_sigma = project_to_sigma(&a, &m);
    println!();
    println!("projection of {:?} to V = 1: {:.6?}", m.as_array(), on_sigma.as_array());
    println!("  V after projection = {:.15}", first_integral(&a, &on_sigma));

    println!();
    println!("generic points of V = 1 with Ric > 0 (seed 7):");
    for p in sample_region(&a, 5, 7)? {
        println!("  {:.6?} min r = {:.4}", p.as_array(), ricci_components(&a, &p).min());
    }
    Ok(())
}
