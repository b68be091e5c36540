//! Every row of the table of generalized Wallach spaces with its parameter
//! triple, `theta` and verdict.
//!
//! ```text
//! cargo run --example catalog
//! ```

use wallach_flow::catalog::{representatives, FamilySpec};
use wallach_flow::{classify_general, make_space, ClassifyOptions};

fn main() -> wallach_flow::Result<()> {
    println!(
        "{:<22} {:>9} {:>9} {:>9} {:>9}  verdict",
        "space", "a1", "a2", "a3", "theta"
    );
    for spec in representatives() {
        let a = make_space(spec)?;
        let verdict = match classify_general(&a, ClassifyOptions::default()) {
            Ok(v) => format!("{:?}", v.kind),
            // a parameter equal to 1/2 sits on the edge of the criteria
            Err(e) => format!("({e})"),
        };
        println!(
            "{:<22} {:>9.6} {:>9.6} {:>9.6} {:>9.6}  {verdict}",
            spec.to_string(),
            a.a1(),
            a.a2(),
            a.a3(),
            a.theta()
        );
    }

    println!();
    println!("row 1 formulas: {:?}", FamilySpec::formula(1).unwrap());
    for k in [2, 16, 17, 25] {
        let a = make_space(FamilySpec::orthogonal_equal(k))?;
        println!("  k = l = m = {k:>2}: a = {:.8}", a.a1());
    }
    Ok(())
}
