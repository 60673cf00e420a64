//! Pseudo-Anosov foliation bookkeeping: the singularity balance, capping,
//! and the U-power membership criterion.
//!
//! ```bash
//! cargo run --example foliation_capping
//! ```

use obcalc::foliations::{u_image_report, FoliationData};
use obcalc::rational::Rat;
use std::collections::BTreeMap;

fn main() {
    // A genus-one page with three boundary circles, two singularities on
    // each (the orientable case), and one twist coefficient below 1.
    let fd = FoliationData {
        genus: 1,
        boundary: vec!["B1".into(), "B2".into(), "B3".into()],
        interior_prongs: vec![],
        boundary_sings: [("B1", 2u32), ("B2", 2), ("B3", 2)]
            .into_iter()
            .map(|(l, c)| (l.to_owned(), c))
            .collect::<BTreeMap<_, _>>(),
        fdtc: [("B1", Rat::new(1, 2)), ("B2", Rat::from_int(3)), ("B3", Rat::from_int(3))]
            .into_iter()
            .map(|(l, c)| (l.to_owned(), c))
            .collect::<BTreeMap<_, _>>(),
    };
    println!("validate: {:?}", fd.validate());
    println!("U-power criterion: {:?}", u_image_report(&fd));

    // Capping boundaries one at a time preserves the balance; ending at the
    // closed torus with no singularities (the Anosov picture).
    let mut cur = fd;
    for label in ["B1", "B2", "B3"] {
        cur = cur.cap_foliation(label).unwrap();
        println!(
            "capped {label}: {} with interior prongs {:?} (balanced: {})",
            cur.surface(),
            cur.interior_prongs,
            cur.validate().is_ok(),
        );
    }

    // A single boundary singularity is not cappable.
    let lopsided = FoliationData {
        genus: 1,
        boundary: vec!["B1".into(), "B2".into()],
        interior_prongs: vec![],
        boundary_sings: [("B1".to_owned(), 3u32), ("B2".to_owned(), 1)].into_iter().collect(),
        fdtc: [("B1".to_owned(), Rat::zero()), ("B2".to_owned(), Rat::zero())].into_iter().collect(),
    };
    assert!(lopsided.validate().is_ok());
    println!("\ncapping a one-pronged boundary: {:?}", lopsided.cap_foliation("B2").unwrap_err());
}
