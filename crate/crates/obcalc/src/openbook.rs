//! Open-book descriptors and their structural operations.
//!
//! A descriptor is a surface signature (genus plus ordered boundary labels),
//! a monodromy word, and per-curve metadata. Curve geometry is metadata, not
//! computed: the behavior of each curve under capping a given boundary must
//! be declared up front, and an undeclared behavior for a curve that the
//! monodromy actually uses is an error, never a guess.
//!
//! The operations are the symbolic counterparts of capping off, gluing,
//! self-gluing, contact surgery and Legendrian stabilization. Surface
//! signatures follow Euler characteristic additivity: gluing n pairs of
//! boundary circles gives `g'' = g + g' + n - 1`, `r'' = r + r' - 2n`, and a
//! self-gluing trades two boundary components for a handle.

use crate::words::TwistWord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Label = String;
pub type CurveId = String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpenBookError {
    #[error("boundary label {0:?} is not a boundary component of this open book")]
    UnknownLabel(Label),
    #[error("curve {0:?} is not in the alphabet of this open book")]
    UnknownCurve(CurveId),
    #[error("insufficient curve metadata: curve {curve:?} has no declared behavior for capping {label:?}")]
    InsufficientCurveMetadata { curve: CurveId, label: Label },
    #[error("curve {curve:?} becomes {target:?} under capping {label:?}, but {target:?} is not in the alphabet")]
    MissingBecomesTarget { curve: CurveId, target: CurveId, label: Label },
    #[error("monodromy letter {0:?} does not appear in the alphabet")]
    LetterNotInAlphabet(CurveId),
    #[error("duplicate boundary label {0:?}")]
    DuplicateLabel(Label),
    #[error("duplicate curve id {0:?} in a glued alphabet")]
    DuplicateCurve(CurveId),
    #[error("boundary-parallel curve {curve:?} must become null-homotopic when {label:?} is capped")]
    BoundaryParallelMismatch { curve: CurveId, label: Label },
    #[error("gluing needs at least one boundary pair")]
    EmptyPairs(),
    #[error("label {0:?} used twice in the gluing pairs")]
    ReusedPairLabel(Label),
    #[error("curve {curve:?} becomes {target:?} under capping {label:?}, but {target:?} does not survive that cap")]
    InconsistentBecomesTarget { curve: CurveId, target: CurveId, label: Label },
    #[error("the result would be a closed surface; pass allow_closed to permit it")]
    ClosedOutput,
    #[error("self-gluing needs at least three boundary components, found {0}")]
    TooFewBoundaries(usize),
    #[error("self-gluing pair must name two distinct labels")]
    SelfGlueSameLabel,
}

/// Surface signature: genus and ordered, distinct boundary labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub boundary: Vec<Label>,
}

impl SurfaceSig {
    pub fn new(genus: u32, boundary: Vec<impl Into<Label>>) -> Self {
        SurfaceSig { genus, boundary: boundary.into_iter().map(Into::into).collect() }
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// Euler characteristic `2 - 2g - r`, always recomputed.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.boundary.iter().any(|l| l == label)
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.boundary.len())
    }
}

/// Declared isotopy type of a curve on the page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveKind {
    Nonseparating,
    BoundaryParallel(Label),
    Generic,
}

/// Declared behavior of a curve when one boundary component is capped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CapBehavior {
    Becomes(CurveId),
    NullHomotopic,
    Unaffected,
}

/// A named curve with its capping metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInfo {
    pub id: CurveId,
    #[serde(with = "curve_kind_string")]
    pub kind: CurveKind,
    /// boundary label -> behavior of this curve when that label is capped.
    #[serde(with = "cap_images_strings", default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cap_images: BTreeMap<Label, CapBehavior>,
}

impl CurveInfo {
    pub fn new(id: impl Into<CurveId>, kind: CurveKind) -> Self {
        CurveInfo { id: id.into(), kind, cap_images: BTreeMap::new() }
    }

    pub fn with_cap(mut self, label: impl Into<Label>, behavior: CapBehavior) -> Self {
        self.cap_images.insert(label.into(), behavior);
        self
    }
}

// The JSON forms are compact strings: "nonseparating" | "generic" |
// "boundary-parallel(B)" and "unaffected" | "null-homotopic" | "becomes(c)".

mod curve_kind_string {
    use super::CurveKind;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn to_string(kind: &CurveKind) -> String {
        match kind {
            CurveKind::Nonseparating => "nonseparating".to_owned(),
            CurveKind::Generic => "generic".to_owned(),
            CurveKind::BoundaryParallel(l) => format!("boundary-parallel({l})"),
        }
    }

    pub fn from_str(s: &str) -> Option<CurveKind> {
        match s {
            "nonseparating" => Some(CurveKind::Nonseparating),
            "generic" => Some(CurveKind::Generic),
            other => other
                .strip_prefix("boundary-parallel(")
                .and_then(|rest| rest.strip_suffix(')'))
                .map(|l| CurveKind::BoundaryParallel(l.to_owned())),
        }
    }

    pub fn serialize<S: Serializer>(kind: &CurveKind, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&to_string(kind))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<CurveKind, D::Error> {
        let s = String::deserialize(de)?;
        from_str(&s).ok_or_else(|| D::Error::custom(format!("invalid curve kind {s:?}")))
    }
}

mod cap_images_strings {
    use super::{CapBehavior, Label};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn to_string(b: &CapBehavior) -> String {
        match b {
            CapBehavior::NullHomotopic => "null-homotopic".to_owned(),
            CapBehavior::Unaffected => "unaffected".to_owned(),
            CapBehavior::Becomes(c) => format!("becomes({c})"),
        }
    }

    pub fn from_str(s: &str) -> Option<CapBehavior> {
        match s {
            "null-homotopic" => Some(CapBehavior::NullHomotopic),
            "unaffected" => Some(CapBehavior::Unaffected),
            other => other
                .strip_prefix("becomes(")
                .and_then(|rest| rest.strip_suffix(')'))
                .map(|c| CapBehavior::Becomes(c.to_owned())),
        }
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Label, CapBehavior>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let as_strings: BTreeMap<&Label, String> =
            map.iter().map(|(k, v)| (k, to_string(v))).collect();
        serde::Serialize::serialize(&as_strings, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<Label, CapBehavior>, D::Error> {
        let raw: BTreeMap<Label, String> = BTreeMap::deserialize(de)?;
        raw.into_iter()
            .map(|(k, v)| {
                from_str(&v)
                    .map(|b| (k, b))
                    .ok_or_else(|| D::Error::custom(format!("invalid cap behavior {v:?}")))
            })
            .collect()
    }
}

/// An open book descriptor: page signature, monodromy, curve alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookDesc {
    pub genus: u32,
    pub boundary: Vec<Label>,
    pub monodromy: TwistWord,
    pub alphabet: Vec<CurveInfo>,
}

impl OpenBookDesc {
    pub fn new(surface: SurfaceSig, monodromy: TwistWord, alphabet: Vec<CurveInfo>) -> Self {
        OpenBookDesc { genus: surface.genus, boundary: surface.boundary, monodromy, alphabet }
    }

    pub fn surface(&self) -> SurfaceSig {
        SurfaceSig { genus: self.genus, boundary: self.boundary.clone() }
    }

    pub fn curve(&self, id: &str) -> Option<&CurveInfo> {
        self.alphabet.iter().find(|c| c.id == id)
    }

    /// Validate the descriptor invariants.
    pub fn validate(&self) -> Result<(), OpenBookError> {
        for (i, label) in self.boundary.iter().enumerate() {
            if self.boundary[..i].contains(label) {
                return Err(OpenBookError::DuplicateLabel(label.clone()));
            }
        }
        for (curve, _) in self.monodromy.letters() {
            if self.curve(curve).is_none() {
                return Err(OpenBookError::LetterNotInAlphabet(curve.clone()));
            }
        }
        for info in &self.alphabet {
            if let CurveKind::BoundaryParallel(label) = &info.kind {
                if self.boundary.contains(label)
                    && info.cap_images.get(label) != Some(&CapBehavior::NullHomotopic)
                {
                    return Err(OpenBookError::BoundaryParallelMismatch {
                        curve: info.id.clone(),
                        label: label.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Cap off one boundary component with a disk.
    ///
    /// The genus is unchanged, the label disappears, and every letter of the
    /// monodromy is rewritten by its declared behavior: null-homotopic
    /// letters are deleted, `becomes(c)` letters are substituted, unaffected
    /// letters kept. Unused curves with no declared behavior for the capped
    /// label are dropped from the alphabet.
    pub fn cap_off(&self, label: &str) -> Result<OpenBookDesc, OpenBookError> {
        if !self.boundary.iter().any(|l| l == label) {
            return Err(OpenBookError::UnknownLabel(label.to_owned()));
        }
        // Every curve the monodromy uses must have declared behavior.
        for (curve, _) in self.monodromy.letters() {
            let info = self
                .curve(curve)
                .ok_or_else(|| OpenBookError::LetterNotInAlphabet(curve.clone()))?;
            if !info.cap_images.contains_key(label) {
                return Err(OpenBookError::InsufficientCurveMetadata {
                    curve: curve.clone(),
                    label: label.to_owned(),
                });
            }
        }
        // Substitution targets must exist and survive this cap themselves.
        let mut becomes_targets: Vec<CurveId> = Vec::new();
        for info in &self.alphabet {
            if let Some(CapBehavior::Becomes(target)) = info.cap_images.get(label) {
                let Some(target_info) = self.curve(target) else {
                    return Err(OpenBookError::MissingBecomesTarget {
                        curve: info.id.clone(),
                        target: target.clone(),
                        label: label.to_owned(),
                    });
                };
                match target_info.cap_images.get(label) {
                    None | Some(CapBehavior::Unaffected) => becomes_targets.push(target.clone()),
                    Some(_) => {
                        return Err(OpenBookError::InconsistentBecomesTarget {
                            curve: info.id.clone(),
                            target: target.clone(),
                            label: label.to_owned(),
                        })
                    }
                }
            }
        }

        let monodromy = self.monodromy.map_letters(|curve| {
            match self.curve(curve).and_then(|i| i.cap_images.get(label)) {
                Some(CapBehavior::NullHomotopic) => None,
                Some(CapBehavior::Becomes(target)) => Some(target.clone()),
                Some(CapBehavior::Unaffected) | None => Some(curve.to_owned()),
            }
        });

        // Keep the unaffected curves and the substitution targets; everything
        // else (null-homotopic, substituted away, or of unknown behavior and
        // unused) disappears with the capped boundary.
        let alphabet = self
            .alphabet
            .iter()
            .filter(|info| match info.cap_images.get(label) {
                Some(CapBehavior::Unaffected) => true,
                None => becomes_targets.contains(&info.id),
                Some(_) => false,
            })
            .map(|info| {
                let mut info = info.clone();
                info.cap_images.remove(label);
                info
            })
            .collect();

        let boundary = self.boundary.iter().filter(|l| *l != label).cloned().collect();
        let capped =
            OpenBookDesc { genus: self.genus, boundary, monodromy, alphabet };
        capped.validate()?;
        Ok(capped)
    }

    /// Compose the monodromy with `t_K^e` for a curve on the page.
    fn twist_by(&self, curve: &str, exp: i64) -> Result<OpenBookDesc, OpenBookError> {
        if self.curve(curve).is_none() {
            return Err(OpenBookError::UnknownCurve(curve.to_owned()));
        }
        let mut out = self.clone();
        out.monodromy = out.monodromy.compose(&TwistWord::single(curve, exp));
        Ok(out)
    }

    /// Contact surgery on a page curve: contact -1-surgery composes with
    /// `t_K`, contact +1-surgery with `t_K^-1`.
    pub fn surgery_compose(&self, curve: &str, surgery_sign: i8) -> Result<OpenBookDesc, OpenBookError> {
        self.twist_by(curve, if surgery_sign > 0 { -1 } else { 1 })
    }
}

fn fresh_name(base: &str, taken: &mut Vec<String>) -> String {
    let mut candidate = base.to_owned();
    let mut counter = 2;
    while taken.contains(&candidate) {
        candidate = format!("{base}{counter}");
        counter += 1;
    }
    taken.push(candidate.clone());
    candidate
}

/// Glue two open books along `pairs` of boundary circles.
///
/// The monodromy is the concatenation over the disjoint-union alphabet; the
/// signature follows Euler characteristic additivity. Closed outputs are
/// rejected unless `allow_closed` is set.
pub fn glue(
    ob1: &OpenBookDesc,
    ob2: &OpenBookDesc,
    pairs: &[(Label, Label)],
    allow_closed: bool,
) -> Result<OpenBookDesc, OpenBookError> {
    let n = pairs.len();
    if n == 0 {
        return Err(OpenBookError::EmptyPairs());
    }
    let mut used1 = Vec::new();
    let mut used2 = Vec::new();
    for (l1, l2) in pairs {
        if !ob1.surface().has_label(l1) {
            return Err(OpenBookError::UnknownLabel(l1.clone()));
        }
        if !ob2.surface().has_label(l2) {
            return Err(OpenBookError::UnknownLabel(l2.clone()));
        }
        if used1.contains(l1) {
            return Err(OpenBookError::ReusedPairLabel(l1.clone()));
        }
        if used2.contains(l2) {
            return Err(OpenBookError::ReusedPairLabel(l2.clone()));
        }
        used1.push(l1.clone());
        used2.push(l2.clone());
    }

    let boundary: Vec<Label> = ob1
        .boundary
        .iter()
        .filter(|l| !used1.contains(l))
        .chain(ob2.boundary.iter().filter(|l| !used2.contains(l)))
        .cloned()
        .collect();
    for (i, label) in boundary.iter().enumerate() {
        if boundary[..i].contains(label) {
            return Err(OpenBookError::DuplicateLabel(label.clone()));
        }
    }
    // "One side keeps a spare boundary circle" is exactly r'' >= 1, so a
    // single closedness check enforces the gluing hypothesis.
    if boundary.is_empty() && !allow_closed {
        return Err(OpenBookError::ClosedOutput);
    }

    let mut alphabet = Vec::new();
    for info in ob1.alphabet.iter().chain(ob2.alphabet.iter()) {
        if alphabet.iter().any(|c: &CurveInfo| c.id == info.id) {
            return Err(OpenBookError::DuplicateCurve(info.id.clone()));
        }
        alphabet.push(scrub_glued_labels(info, &used1, &used2));
    }

    let genus = ob1.genus + ob2.genus + n as u32 - 1;
    let glued = OpenBookDesc {
        genus,
        boundary,
        monodromy: ob1.monodromy.compose(&ob2.monodromy),
        alphabet,
    };
    glued.validate()?;
    Ok(glued)
}

/// Glue two boundary components of a single open book to each other.
///
/// The page gains a handle and loses two boundary circles; the monodromy
/// word is unchanged.
pub fn self_glue(ob: &OpenBookDesc, pair: (&str, &str)) -> Result<OpenBookDesc, OpenBookError> {
    let r = ob.boundary.len();
    if r < 3 {
        return Err(OpenBookError::TooFewBoundaries(r));
    }
    let (l1, l2) = pair;
    if l1 == l2 {
        return Err(OpenBookError::SelfGlueSameLabel);
    }
    for l in [l1, l2] {
        if !ob.surface().has_label(l) {
            return Err(OpenBookError::UnknownLabel(l.to_owned()));
        }
    }
    let used = vec![l1.to_owned(), l2.to_owned()];
    let out = OpenBookDesc {
        genus: ob.genus + 1,
        boundary: ob.boundary.iter().filter(|l| !used.contains(l)).cloned().collect(),
        monodromy: ob.monodromy.clone(),
        alphabet: ob.alphabet.iter().map(|i| scrub_glued_labels(i, &used, &[])).collect(),
    };
    out.validate()?;
    Ok(out)
}

/// Forget cap metadata for labels that stopped being boundary components; a
/// curve that was parallel to a glued-away label is just generic afterwards.
fn scrub_glued_labels(info: &CurveInfo, gone1: &[Label], gone2: &[Label]) -> CurveInfo {
    let gone = |l: &Label| gone1.contains(l) || gone2.contains(l);
    let mut out = info.clone();
    out.cap_images.retain(|l, _| !gone(l));
    if let CurveKind::BoundaryParallel(l) = &out.kind {
        if gone(l) {
            out.kind = CurveKind::Generic;
        }
    }
    out
}

/// Result of a Legendrian stabilization of a page curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    pub book: OpenBookDesc,
    /// The stabilized copy `S+(K)` or `S-(K)` of the input curve.
    pub stabilized_curve: CurveId,
    /// The two fresh boundary labels; capping both recovers the input book
    /// with the stabilized curve replaced by the original.
    pub plus_label: Label,
    pub minus_label: Label,
}

/// Positively stabilize the open book twice so that the Legendrian
/// stabilization `S+(K)` or `S-(K)` sits on the page.
///
/// The page gains two boundary components and no genus; the monodromy is
/// composed with one positive twist over each fresh stabilization curve. The
/// fresh curves are opaque: their only declared behavior is under capping
/// the fresh labels, arranged so that capping both recovers the input
/// descriptor with `S±(K)` mapped back to `K`.
pub fn legendrian_stabilize(
    ob: &OpenBookDesc,
    curve: &str,
    positive: bool,
) -> Result<Stabilized, OpenBookError> {
    if ob.curve(curve).is_none() {
        return Err(OpenBookError::UnknownCurve(curve.to_owned()));
    }
    let mut label_pool = ob.boundary.clone();
    let plus_label = fresh_name("B+", &mut label_pool);
    let minus_label = fresh_name("B-", &mut label_pool);

    let mut id_pool: Vec<String> = ob.alphabet.iter().map(|c| c.id.clone()).collect();
    let sign = if positive { "+" } else { "-" };
    let stab_curve = fresh_name(&format!("S{sign}({curve})"), &mut id_pool);
    let half_plus = fresh_name(&format!("{stab_curve}/{plus_label}"), &mut id_pool);
    let half_minus = fresh_name(&format!("{stab_curve}/{minus_label}"), &mut id_pool);
    let twist_plus = fresh_name(&format!("stab({plus_label})"), &mut id_pool);
    let twist_minus = fresh_name(&format!("stab({minus_label})"), &mut id_pool);

    // Existing curves live away from the stabilization region.
    let mut alphabet: Vec<CurveInfo> = ob
        .alphabet
        .iter()
        .map(|info| {
            info.clone()
                .with_cap(plus_label.clone(), CapBehavior::Unaffected)
                .with_cap(minus_label.clone(), CapBehavior::Unaffected)
        })
        .collect();
    // Stabilization twist curves die when their own boundary is capped.
    alphabet.push(
        CurveInfo::new(twist_plus.clone(), CurveKind::Generic)
            .with_cap(plus_label.clone(), CapBehavior::NullHomotopic)
            .with_cap(minus_label.clone(), CapBehavior::Unaffected),
    );
    alphabet.push(
        CurveInfo::new(twist_minus.clone(), CurveKind::Generic)
            .with_cap(plus_label.clone(), CapBehavior::Unaffected)
            .with_cap(minus_label.clone(), CapBehavior::NullHomotopic),
    );
    // The stabilized curve chains back to the original through one
    // intermediate per capping order.
    alphabet.push(
        CurveInfo::new(stab_curve.clone(), CurveKind::Generic)
            .with_cap(plus_label.clone(), CapBehavior::Becomes(half_plus.clone()))
            .with_cap(minus_label.clone(), CapBehavior::Becomes(half_minus.clone())),
    );
    alphabet.push(
        CurveInfo::new(half_plus, CurveKind::Generic)
            .with_cap(minus_label.clone(), CapBehavior::Becomes(curve.to_owned())),
    );
    alphabet.push(
        CurveInfo::new(half_minus, CurveKind::Generic)
            .with_cap(plus_label.clone(), CapBehavior::Becomes(curve.to_owned())),
    );

    let mut boundary = ob.boundary.clone();
    boundary.push(plus_label.clone());
    boundary.push(minus_label.clone());
    let monodromy = ob
        .monodromy
        .compose(&TwistWord::single(twist_plus, 1))
        .compose(&TwistWord::single(twist_minus, 1));

    let book = OpenBookDesc { genus: ob.genus, boundary, monodromy, alphabet };
    book.validate()?;
    Ok(Stabilized { book, stabilized_curve: stab_curve, plus_label, minus_label })
}

/// The standard genus-one, two-boundary example page: curves `a`, `b` survive
/// capping `B`, `gamma` becomes `b`, and the boundary-parallel curve `c`
/// dies.
pub fn standard_s12_alphabet() -> Vec<CurveInfo> {
    vec![
        CurveInfo::new("a", CurveKind::Nonseparating)
            .with_cap("B", CapBehavior::Unaffected),
        CurveInfo::new("b", CurveKind::Nonseparating)
            .with_cap("B", CapBehavior::Unaffected),
        CurveInfo::new("gamma", CurveKind::Generic)
            .with_cap("B", CapBehavior::Becomes("b".to_owned())),
        CurveInfo::new("c", CurveKind::BoundaryParallel("B".to_owned()))
            .with_cap("B", CapBehavior::NullHomotopic),
    ]
}

/// `(S_{1,2}, (t_a t_b)^5 t_gamma^2 t_c^2)` over the standard alphabet.
pub fn example_s12_book() -> OpenBookDesc {
    let monodromy = TwistWord::parse("a b").unwrap().pow(5).compose(&TwistWord::parse("gamma^2 c^2").unwrap());
    OpenBookDesc::new(
        SurfaceSig::new(1, vec!["B", "B2"]),
        monodromy,
        standard_s12_alphabet(),
    )
}
