//! Gluing, self-gluing and Legendrian stabilization at the descriptor level.
//!
//! ```bash
//! cargo run --example glue_and_stabilize
//! ```

use obcalc::openbook::{example_s12_book, glue, legendrian_stabilize, self_glue, OpenBookDesc, SurfaceSig};
use obcalc::words::TwistWord;

fn main() {
    let a = OpenBookDesc::new(SurfaceSig::new(1, vec!["A1", "A2"]), TwistWord::identity(), vec![]);
    let b = OpenBookDesc::new(SurfaceSig::new(0, vec!["B1", "B2", "B3"]), TwistWord::identity(), vec![]);

    let glued = glue(&a, &b, &[("A1".into(), "B1".into())], false).unwrap();
    println!("{} glued to {} along one pair -> {}", a.surface(), b.surface(), glued.surface());
    println!(
        "chi additivity: {} + {} = {}",
        a.surface().euler_characteristic(),
        b.surface().euler_characteristic(),
        glued.surface().euler_characteristic()
    );

    // Gluing along n pairs is one gluing followed by n-1 self-gluings.
    let two_pairs = glue(&a, &b, &[("A1".into(), "B1".into()), ("A2".into(), "B2".into())], false).unwrap();
    let staged = self_glue(&glued, ("A2", "B2")).unwrap();
    println!(
        "two pairs at once -> {}; one pair then self-glue -> {} (equal: {})",
        two_pairs.surface(),
        staged.surface(),
        two_pairs == staged
    );

    // Stabilize a page curve and undo it by capping the fresh boundaries.
    let book = example_s12_book();
    let stab = legendrian_stabilize(&book, "a", true).unwrap();
    println!(
        "\nstabilized {} -> {} with fresh curve {} and boundaries {}, {}",
        book.surface(),
        stab.book.surface(),
        stab.stabilized_curve,
        stab.plus_label,
        stab.minus_label
    );
    let recovered = stab.book.cap_off(&stab.plus_label).unwrap().cap_off(&stab.minus_label).unwrap();
    println!("capping both fresh boundaries recovers the input: {}", recovered == book);

    // With the surgery twist over the stabilized curve, capping maps it
    // back to a twist over the original curve.
    let surgered = stab.book.surgery_compose(&stab.stabilized_curve, -1).unwrap();
    let capped = surgered.cap_off(&stab.plus_label).unwrap().cap_off(&stab.minus_label).unwrap();
    println!(
        "surgery on {} then capping equals surgery on a: {}",
        stab.stabilized_curve,
        capped == book.surgery_compose("a", -1).unwrap()
    );
}
