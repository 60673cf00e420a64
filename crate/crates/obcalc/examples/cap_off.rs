//! Capping off a boundary component of an open book descriptor.
//!
//! The genus-one, two-boundary page carries curves a, b, gamma and a
//! boundary-parallel curve c; capping the boundary B kills the twists along
//! c, turns gamma into b, and leaves a, b alone, sending the monodromy
//! (t_a t_b)^5 t_gamma^2 t_c^2 to (t_a t_b)^5 t_b^2.
//!
//! ```bash
//! cargo run --example cap_off
//! ```

use obcalc::openbook::example_s12_book;

fn main() {
    let book = example_s12_book();
    println!("before: {} with monodromy {}", book.surface(), book.monodromy);
    let capped = book.cap_off("B").unwrap();
    println!("after:  {} with monodromy {}", capped.surface(), capped.monodromy);
    println!("\ncapped descriptor as JSON:\n{}", serde_json::to_string_pretty(&capped).unwrap());
}
