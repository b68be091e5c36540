//! Sweeps table rows and prints where the verdict changes.
//!
//! ```text
//! cargo run --example family_scan
//! ```

use wallach_flow::classify::ScanRange;
use wallach_flow::{family_scan, ClassifyOptions};

fn main() -> wallach_flow::Result<()> {
    let opts = ClassifyOptions::default();

    let so = family_scan(1, &ScanRange::EqualK(2..=25), opts)?;
    for pair in so.windows(2) {
        if pair[0].kind() != pair[1].kind() {
            println!(
                "row 1, k = l = m: {:?} up to {}, {:?} from {}",
                pair[0].kind().unwrap(),
                pair[0].spec,
                pair[1].kind().unwrap(),
                pair[1].spec
            );
        }
    }

    let triples = ScanRange::Triples {
        k: 1..=8,
        l: 1..=8,
        m: 1..=8,
    };
    for row in 1..=3 {
        let entries = family_scan(row, &triples, opts)?;
        let mut counts = std::collections::BTreeMap::new();
        for e in &entries {
            let key = e.kind().map_or("skipped".to_string(), |k| format!("{k:?}"));
            *counts.entry(key).or_insert(0) += 1;
        }
        println!("row {row}, k >= l >= m in 1..=8: {counts:?}");
    }

    let sp = family_scan(4, &ScanRange::L(2..=6), opts)?;
    for e in sp {
        println!("{}: {:?}", e.spec, e.kind());
    }
    Ok(())
}
