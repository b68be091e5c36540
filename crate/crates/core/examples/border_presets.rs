//! Direction of the flow across the border curve at the preset points for
//! `a = 25/146`, checked against short runs of the three-dimensional flow.
//!
//! ```text
//! cargo run --example border_presets
//! ```

use wallach_flow::reduced::{border_flow, BORDER_CONE_INDEX, BORDER_PRESETS, PRESET_A};
use wallach_flow::{integrate_with, psi, FlowOptions, RatioPoint, SpaceParams};

fn main() -> wallach_flow::Result<()> {
    let params = SpaceParams::equal(PRESET_A)?;
    let idx = BORDER_CONE_INDEX - 1;
    for (x, y, expected) in BORDER_PRESETS {
        let on_curve = psi(PRESET_A, x)?;
        let direction = border_flow(PRESET_A, x)?;
        let start = RatioPoint::new(x, on_curve).to_metric(&params)?;
        let opts = FlowOptions {
            continue_after_exit: true,
            ..FlowOptions::new(0.01, 1e-4)
        };
        let r_after = integrate_with(&params, &start, &opts)?.last().r.r[idx];
        println!(
            "E({x}, {y}): psi(x) = {on_curve:.4}, {direction:?} (expected {expected:?}), r{} after t = 0.01: {r_after:+.2e}",
            BORDER_CONE_INDEX
        );
    }
    Ok(())
}
