//! Singularity bookkeeping for the invariant foliations of pseudo-Anosov
//! monodromies.
//!
//! The data of a pair of transverse measured foliations is recorded as the
//! multiset of interior prong counts (each at least 3), the number of
//! boundary singularities per boundary component (at least 1), and the
//! fractional Dehn twist coefficient per boundary. FDTCs are inputs here,
//! never computed: they are defined through a free isotopy this bookkeeping
//! cannot see.
//!
//! Capping a boundary carrying `p > 1` singularities extends the foliations
//! over the disk, creating an interior `p`-pronged singularity (none when
//! `p = 2`); a single boundary singularity is not cappable. Consistency is
//! the Euler-Poincare balance
//!
//! ```text
//! 2 chi(S) + 2r = sum_interior (2 - p) + sum_boundary (2 - p_i),
//! ```
//!
//! which is exactly what capping every boundary preserves down to the closed
//! case `2 chi = sum (2 - p)`.

use crate::openbook::{Label, SurfaceSig};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoliationError {
    #[error("label {0:?} is not a boundary component")]
    UnknownLabel(Label),
    #[error("boundary {label:?} carries a single singularity; not cappable as pseudo-Anosov")]
    NotCappable { label: Label },
    #[error("invalid foliation data: {0}")]
    Invalid(Violation),
}

/// A structured constraint violation: which constraint, and by how much.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    /// `2 chi + 2r` minus the singularity side, nonzero.
    BalanceMismatch { lhs: i64, rhs: i64, deficit: i64 },
    InteriorProngTooSmall { prongs: u32 },
    BoundarySingularityCountZero { label: Label },
    MissingBoundaryEntry { label: Label, field: &'static str },
    ExtraBoundaryEntry { label: Label, field: &'static str },
    DuplicateBoundaryLabel { label: Label },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BalanceMismatch { lhs, rhs, deficit } => write!(
                f,
                "singularity balance off by {deficit}: 2*chi + 2r = {lhs} but prong side = {rhs}"
            ),
            Violation::InteriorProngTooSmall { prongs } => {
                write!(f, "interior singularity with {prongs} prongs (need >= 3)")
            }
            Violation::BoundarySingularityCountZero { label } => {
                write!(f, "boundary {label:?} needs at least one singularity")
            }
            Violation::MissingBoundaryEntry { label, field } => {
                write!(f, "boundary {label:?} missing from {field}")
            }
            Violation::ExtraBoundaryEntry { label, field } => {
                write!(f, "{field} mentions {label:?}, which is not a boundary component")
            }
            Violation::DuplicateBoundaryLabel { label } => {
                write!(f, "duplicate boundary label {label:?}")
            }
        }
    }
}

/// Foliation singularity data over a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoliationData {
    pub genus: u32,
    pub boundary: Vec<Label>,
    /// Prong counts of interior singularities (each >= 3), as a multiset.
    pub interior_prongs: Vec<u32>,
    /// Singularities on each boundary component (each >= 1).
    pub boundary_sings: BTreeMap<Label, u32>,
    /// Fractional Dehn twist coefficient per boundary; supplied, not computed.
    pub fdtc: BTreeMap<Label, Rat>,
}

impl FoliationData {
    pub fn surface(&self) -> SurfaceSig {
        SurfaceSig { genus: self.genus, boundary: self.boundary.clone() }
    }

    fn balance_sides(&self) -> (i64, i64) {
        let chi = self.surface().euler_characteristic();
        let r = self.boundary.len() as i64;
        let interior: i64 = self.interior_prongs.iter().map(|&p| 2 - p as i64).sum();
        let boundary: i64 = self.boundary_sings.values().map(|&p| 2 - p as i64).sum();
        (2 * chi + 2 * r, interior + boundary)
    }

    /// Check the balance identity and the per-field constraints.
    pub fn validate(&self) -> Result<(), Violation> {
        for (i, label) in self.boundary.iter().enumerate() {
            if self.boundary[..i].contains(label) {
                return Err(Violation::DuplicateBoundaryLabel { label: label.clone() });
            }
        }
        for label in &self.boundary {
            if !self.boundary_sings.contains_key(label) {
                return Err(Violation::MissingBoundaryEntry { label: label.clone(), field: "boundary_sings" });
            }
            if !self.fdtc.contains_key(label) {
                return Err(Violation::MissingBoundaryEntry { label: label.clone(), field: "fdtc" });
            }
        }
        let key_lists: [(&'static str, Vec<&Label>); 2] = [
            ("boundary_sings", self.boundary_sings.keys().collect()),
            ("fdtc", self.fdtc.keys().collect()),
        ];
        for (field, keys) in key_lists {
            for label in keys {
                if !self.boundary.contains(label) {
                    return Err(Violation::ExtraBoundaryEntry { label: label.clone(), field });
                }
            }
        }
        for (label, &count) in &self.boundary_sings {
            if count == 0 {
                return Err(Violation::BoundarySingularityCountZero { label: label.clone() });
            }
        }
        for &p in &self.interior_prongs {
            if p < 3 {
                return Err(Violation::InteriorProngTooSmall { prongs: p });
            }
        }
        let (lhs, rhs) = self.balance_sides();
        if lhs != rhs {
            return Err(Violation::BalanceMismatch { lhs, rhs, deficit: lhs - rhs });
        }
        Ok(())
    }

    /// Cap one boundary component, extending the foliations over the disk.
    ///
    /// Requires `p > 1` singularities on that boundary; creates an interior
    /// `p`-pronged singularity when `p >= 3` and none when `p = 2`. The
    /// remaining FDTC entries are untouched (the modification is local).
    pub fn cap_foliation(&self, label: &str) -> Result<FoliationData, FoliationError> {
        self.validate().map_err(FoliationError::Invalid)?;
        let Some(&p) = self.boundary_sings.get(label) else {
            return Err(FoliationError::UnknownLabel(label.to_owned()));
        };
        if p == 1 {
            return Err(FoliationError::NotCappable { label: label.to_owned() });
        }
        let mut out = self.clone();
        out.boundary.retain(|l| l != label);
        out.boundary_sings.remove(label);
        out.fdtc.remove(label);
        if p >= 3 {
            out.interior_prongs.push(p);
            out.interior_prongs.sort_unstable();
        }
        debug_assert!(out.validate().is_ok(), "capping preserves the balance identity");
        Ok(out)
    }
}

/// Outcome of the U-power membership criterion for genus-one pseudo-Anosov
/// data with orientable foliations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UImageReport {
    /// Some coefficient is below 1: the contact class lies in the image of
    /// every power of U.
    InImUAllD,
    /// The hypotheses fail or every coefficient is at least 1; the
    /// criterion is silent.
    Inconclusive { reason: String },
}

/// Apply the genus-one criterion: two singularities on every boundary
/// (equivalently, orientable foliations) and some FDTC below 1 put the
/// contact class in the image of `U^d` for every d.
pub fn u_image_report(fd: &FoliationData) -> UImageReport {
    if let Err(violation) = fd.validate() {
        return UImageReport::Inconclusive { reason: format!("hypothesis violated: {violation}") };
    }
    if fd.genus != 1 {
        return UImageReport::Inconclusive {
            reason: format!("hypothesis violated: genus is {}, criterion needs genus 1", fd.genus),
        };
    }
    if let Some((label, &count)) = fd.boundary_sings.iter().find(|(_, &c)| c != 2) {
        return UImageReport::Inconclusive {
            reason: format!(
                "hypothesis violated: boundary {label:?} carries {count} singularities, criterion needs exactly 2"
            ),
        };
    }
    if fd.fdtc.values().any(|&c| c < Rat::one()) {
        UImageReport::InImUAllD
    } else {
        UImageReport::Inconclusive {
            reason: "all fractional Dehn twist coefficients are at least 1; membership is open".to_owned(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn data(genus: u32, sings: &[(&str, u32)], interior: &[u32], fdtc: &[(&str, Rat)]) -> FoliationData {
        FoliationData {
            genus,
            boundary: sings.iter().map(|(l, _)| (*l).to_owned()).collect(),
            interior_prongs: interior.to_vec(),
            boundary_sings: sings.iter().map(|&(l, c)| (l.to_owned(), c)).collect(),
            fdtc: fdtc.iter().map(|&(l, c)| (l.to_owned(), c)).collect(),
        }
    }

    fn anosov_like(genus: u32, sings: &[(&str, u32)], interior: &[u32]) -> FoliationData {
        let fdtc: Vec<(&str, Rat)> = sings.iter().map(|&(l, _)| (l, rat(1, 2))).collect();
        data(genus, sings, interior, &fdtc)
    }

    #[test]
    fn validate_examples() {
        // S_{1,1} with two boundary singularities: 2(-1) + 2 = 0 = (2 - 2).
        assert!(anosov_like(1, &[("B", 2)], &[]).validate().is_ok());
        // S_{0,4} with one singularity per boundary: 2(-2) + 8 = 4 = 4(2-1).
        assert!(anosov_like(0, &[("B1", 1), ("B2", 1), ("B3", 1), ("B4", 1)], &[]).validate().is_ok());
        // S_{0,3} with one per boundary misses the balance by 1.
        let bad = anosov_like(0, &[("B1", 1), ("B2", 1), ("B3", 1)], &[]);
        assert_eq!(
            bad.validate().unwrap_err(),
            Violation::BalanceMismatch { lhs: 4, rhs: 3, deficit: 1 }
        );
    }

    #[test]
    fn validate_field_constraints() {
        let mut fd = anosov_like(1, &[("B", 2)], &[]);
        fd.interior_prongs.push(2);
        assert_eq!(fd.validate().unwrap_err(), Violation::InteriorProngTooSmall { prongs: 2 });

        let mut fd = anosov_like(1, &[("B", 2)], &[]);
        fd.fdtc.clear();
        assert!(matches!(fd.validate().unwrap_err(), Violation::MissingBoundaryEntry { .. }));

        let mut fd = anosov_like(1, &[("B", 2)], &[]);
        fd.boundary_sings.insert("B".into(), 0);
        assert!(matches!(
            fd.validate().unwrap_err(),
            Violation::BoundarySingularityCountZero { .. }
        ));
    }

    #[test]
    fn cap_torus_case() {
        // S_{1,1} with two singularities caps to the closed torus with no
        // singularities: the Anosov case.
        let fd = anosov_like(1, &[("B", 2)], &[]);
        let capped = fd.cap_foliation("B").unwrap();
        assert!(capped.boundary.is_empty());
        assert!(capped.interior_prongs.is_empty());
        assert!(capped.validate().is_ok());
    }

    #[test]
    fn cap_is_balance_preserving() {
        let fd = anosov_like(1, &[("B1", 2), ("B2", 2)], &[]);
        let capped = fd.cap_foliation("B1").unwrap();
        assert_eq!(capped.surface().to_string(), "S_{1,1}");
        assert_eq!(capped.boundary_sings.get("B2"), Some(&2));
        assert!(capped.validate().is_ok());

        // A three-pronged boundary leaves an interior three-prong behind.
        let fd = anosov_like(1, &[("B1", 3), ("B2", 1)], &[]);
        let capped = fd.cap_foliation("B1").unwrap();
        assert_eq!(capped.interior_prongs, vec![3]);
        assert!(capped.validate().is_ok());
    }

    #[test]
    fn cap_rejects_single_singularity() {
        let fd = anosov_like(1, &[("B1", 3), ("B2", 1)], &[]);
        assert_eq!(
            fd.cap_foliation("B2").unwrap_err(),
            FoliationError::NotCappable { label: "B2".into() }
        );
        assert!(matches!(fd.cap_foliation("nope").unwrap_err(), FoliationError::UnknownLabel(_)));
    }

    #[test]
    fn u_image_fires_on_its_hypothesis() {
        // S_{1,3}, two singularities everywhere, one coefficient below 1.
        let fd = data(
            1,
            &[("B1", 2), ("B2", 2), ("B3", 2)],
            &[],
            &[("B1", rat(1, 2)), ("B2", rat(3, 1)), ("B3", rat(3, 1))],
        );
        assert_eq!(u_image_report(&fd), UImageReport::InImUAllD);
    }

    #[test]
    fn u_image_inconclusive_when_all_coefficients_large() {
        let fd = data(1, &[("B", 2)], &[], &[("B", rat(2, 1))]);
        assert!(matches!(u_image_report(&fd), UImageReport::Inconclusive { .. }));
    }

    #[test]
    fn u_image_gate_checks() {
        // Boundary counts (2, 3) violate the hypothesis outright (and the
        // balance, as it happens, cannot hold for genus one with them).
        let fd = data(1, &[("B1", 2), ("B2", 3)], &[], &[("B1", rat(1, 2)), ("B2", rat(1, 2))]);
        let UImageReport::Inconclusive { reason } = u_image_report(&fd) else {
            panic!("expected inconclusive");
        };
        assert!(reason.contains("hypothesis violated"), "{reason}");

        let genus_two = anosov_like(2, &[("B", 6)], &[]);
        assert!(genus_two.validate().is_ok());
        let UImageReport::Inconclusive { reason } = u_image_report(&genus_two) else {
            panic!("expected inconclusive");
        };
        assert!(reason.contains("genus"), "{reason}");
    }

    #[test]
    fn json_shape() {
        let fd = anosov_like(1, &[("B", 2)], &[]);
        let json = serde_json::to_string(&fd).unwrap();
        assert!(json.contains("\"fdtc\":{\"B\":\"1/2\"}"));
        let back: FoliationData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fd);
    }
}
