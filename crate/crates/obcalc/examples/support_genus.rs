//! Support genus of the contact structures in the pseudo-Anosov normal-form
//! family, with the propagated condition-R certificate.
//!
//! ```bash
//! cargo run --example support_genus
//! ```

use obcalc::links3::support_genus;

fn main() {
    for d in [-1, 0, 1, 2, 4] {
        let report = support_genus(&[1, 2], d).unwrap();
        println!("n = (1,2), d = {d:2}: {}", report.verdict);
    }

    let report = support_genus(&[1, 2], 4).unwrap();
    println!("\ncertificate for n = (1,2), d = 4:");
    for step in report.condition_r_chain.unwrap() {
        println!("  {step}");
    }
}
