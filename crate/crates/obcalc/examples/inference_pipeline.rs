//! The capping inference pipeline: Stein fillability plus a non-torsion
//! first Chern class force positive support genus of the capped book.
//!
//! ```bash
//! cargo run --example inference_pipeline
//! ```

use obcalc::infer::{run, Fact, Predicate, Script, ScriptOp};
use obcalc::openbook::example_s12_book;

fn main() {
    let book = example_s12_book();
    let capped = book.cap_off("B").unwrap();

    let mut script = Script::default();
    script.books.insert("ob".into(), book);
    script.books.insert("capped".into(), capped);
    script.ops.push(ScriptOp::Cap {
        from: "ob".into(),
        to: "capped".into(),
        label: "B".into(),
        stein: false,
        companion: None,
    });
    script.facts.push(Fact::new("ob", Predicate::SteinFillable));
    script.facts.push(Fact::new("ob", Predicate::C1Nontorsion));

    println!("script as JSON:\n{}\n", serde_json::to_string_pretty(&script).unwrap());

    let closure = run(&script).unwrap();
    let idx = closure.find("capped", &Predicate::SgGe(1)).expect("positive support genus derived");
    println!("derivation of sg >= 1 for the capped book:\n{}", closure.derivation_tree(idx));
    println!("rule spine: {:?}", closure.rule_spine(idx));
}
