//! Nielsen-Thurston classification of genus-one monodromy words.
//!
//! ```bash
//! cargo run --example classify_words
//! ```

use obcalc::mcg::{classify, fdtc_periodic, normal_form_word, periodic_power_pair, NormalForm3};
use obcalc::words::TwistWord;

fn main() {
    let samples = [
        "a b",           // periodic, the standard tight three-sphere book
        "a b a b a b",   // h, the half boundary twist
        "a",             // reducible
        "b a^-1",        // pseudo-Anosov with d = 0
        "a^-3 b",        // pseudo-Anosov
    ];
    for text in samples {
        let word = TwistWord::parse(text).unwrap();
        let verdict = classify(&word).unwrap();
        println!("{text:14} -> {verdict}");
        if let NormalForm3::Periodic { .. } = verdict {
            let (m, k) = periodic_power_pair(&word).unwrap();
            println!("{:14}    word^{m} = (boundary twist)^{k}, FDTC {}", "", fdtc_periodic(&word).unwrap());
        }
    }

    // The pseudo-Anosov normal form is a faithful conjugacy invariant: the
    // word rebuilt from (n, d) classifies back to the same data.
    let word = TwistWord::parse("a b").unwrap().pow(6).compose(&TwistWord::parse("b a^-1").unwrap());
    let NormalForm3::PseudoAnosov { d, n } = classify(&word).unwrap() else {
        unreachable!("trace 3 image");
    };
    let rebuilt = normal_form_word(d, &n);
    println!("\nroundtrip: {word} -> (d = {d}, n = {n:?}) -> {rebuilt} -> {}", classify(&rebuilt).unwrap());
}
