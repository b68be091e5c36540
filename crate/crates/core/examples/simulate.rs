//! Integrates the normalized Ricci flow from sampled metrics and reports
//! when each trajectory leaves the positive-Ricci region.
//!
//! ```text
//! cargo run --release --example simulate            # a = 1/9, 10 starts
//! cargo run --release --example simulate 4/23 20    # a = 4/23, 20 starts
//! cargo run --release --example simulate 1/9 1 out.csv
//! ```

use std::fs::File;
use std::io::BufWriter;

use wallach_flow::cli::parse_real;
use wallach_flow::flow::integrate_batch;
use wallach_flow::{sample_region, Error, FlowOptions, SpaceParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a = args.first().map(|s| parse_real(s)).transpose()?.unwrap_or(1.0 / 9.0);
    let count = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    let params = SpaceParams::equal(a)?;

    let starts = sample_region(&params, count, 7)?;
    let results = integrate_batch(&params, &starts, &FlowOptions::default());
    for (x0, result) in starts.iter().zip(&results) {
        let start = format!("{:.4?}", x0.as_array());
        match result {
            Ok(tr) => match tr.exit_event() {
                Some(e) => println!(
                    "{start:<32} exits at t = {:.6} through r{} = 0",
                    e.t,
                    tr.last().r.argmin() + 1
                ),
                None => println!("{start:<32} stays positive up to t = {}", tr.last().t),
            },
            // one x_i reaches zero in finite time
            Err(Error::BlowUp(tr)) => println!(
                "{start:<32} collapses near t = {:.4} with Ric > 0 (V drift {:.1e})",
                tr.last().t,
                tr.first_integral_drift()
            ),
            Err(e) => println!("{start:<32} failed: {e}"),
        }
    }

    if let (Some(path), Some(Ok(tr))) = (args.get(2), results.first()) {
        tr.write_csv(BufWriter::new(File::create(path)?))?;
        println!("first trajectory written to {path}");
    }
    Ok(())
}
