//! Generate the conventions report: which c1^2 channel keeps the binding
//! bound violation-free, plus the one-boundary anchor check.
//!
//! ```bash
//! cargo run --example calibration_report
//! ```

use obcalc::dthree::calibration;

fn main() {
    let report = calibration::run(0xC0FFEE, 500);
    print!("{}", report.render_markdown());
}
