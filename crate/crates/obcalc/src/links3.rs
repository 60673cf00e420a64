//! 3-braid closures and the branched double cover bookkeeping.
//!
//! The pseudo-Anosov normal forms of the genus-one mapping class group
//! correspond to 3-braids `(s1 s2)^{3d} s2 s1^{-n_1} ... s2 s1^{-n_k}`, whose
//! closures are the branched-cover presentations used by the rank and
//! determinant identities:
//!
//! * `determinant` evaluates the reduced Burau representation at t = -1;
//!   `(1 + t + t^2)` is 1 there, so the link determinant is
//!   `|det(rho(b) - I)|` on the nose.
//! * [`bracket::bracket_determinant`] is an independent diagram-level route
//!   (and the only route for the unoriented resolutions, which are not braid
//!   closures).
//! * [`goeritz::goeritz_determinant`] is a second independent oracle.
//!
//! `support_genus` classifies the support genus of the contact structures
//! attached to these braids; the positive-genus half is a propagated
//! certificate rooted at the base tuple `(1)` with two full twists, not a
//! Floer-theoretic computation.

pub mod bracket;
pub mod goeritz;

pub use bracket::{bracket_determinant, BraidDiagram, MAX_BRACKET_CROSSINGS};
pub use goeritz::goeritz_determinant;

use crate::mcg::Sl2;
use crate::words;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Links3Error {
    #[error("invalid braid letter {0:?}: expected s1 or s2")]
    InvalidLetter(String),
    #[error("invalid braid word: {0}")]
    Parse(#[from] words::ParseWordError),
    #[error("integer overflow in exact braid arithmetic")]
    Overflow,
    #[error("tuple must be nonempty with at least one positive entry")]
    InvalidTuple,
    #[error("diagram has {count} crossings; the exact evaluator accepts at most {max}")]
    TooManyCrossings { count: usize, max: usize },
    #[error("smoothing marker {site} out of range for {crossings} crossings")]
    MarkerOutOfRange { site: usize, crossings: usize },
    #[error("bracket norm is not a rational integer square (internal invariant)")]
    NonIntegerBracketNorm,
}

/// Generators of the 3-strand braid group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BraidGen {
    Sigma1,
    Sigma2,
}

impl BraidGen {
    fn name(self) -> &'static str {
        match self {
            BraidGen::Sigma1 => "s1",
            BraidGen::Sigma2 => "s2",
        }
    }

    fn burau_at_minus_one(self) -> Sl2 {
        match self {
            BraidGen::Sigma1 => Sl2::GEN_A,
            BraidGen::Sigma2 => Sl2::GEN_B,
        }
    }
}

/// A word in the 3-strand braid group, freely reduced: adjacent letters over
/// the same generator merge and zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Braid3Word {
    letters: Vec<(BraidGen, i64)>,
}

impl Braid3Word {
    pub fn identity() -> Self {
        Braid3Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<(BraidGen, i64)>) -> Self {
        let mut normalized: Vec<(BraidGen, i64)> = Vec::with_capacity(letters.len());
        for (gen, exp) in letters {
            if exp == 0 {
                continue;
            }
            match normalized.last_mut() {
                Some((last, e)) if *last == gen => {
                    *e += exp;
                    if *e == 0 {
                        normalized.pop();
                    }
                }
                _ => normalized.push((gen, exp)),
            }
        }
        Braid3Word { letters: normalized }
    }

    pub fn parse(text: &str) -> Result<Self, Links3Error> {
        let mut letters = Vec::new();
        for (id, exp) in words::parse_tokens(text)? {
            let gen = match id.as_str() {
                "s1" => BraidGen::Sigma1,
                "s2" => BraidGen::Sigma2,
                other => return Err(Links3Error::InvalidLetter(other.to_owned())),
            };
            letters.push((gen, exp));
        }
        Ok(Braid3Word::new(letters))
    }

    pub fn letters(&self) -> &[(BraidGen, i64)] {
        &self.letters
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, e)| e).sum()
    }

    /// Number of crossings of the closure diagram.
    pub fn crossing_count(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// One entry per crossing, `(generator, sign)`.
    pub fn expand(&self) -> Vec<(BraidGen, i8)> {
        let mut out = Vec::with_capacity(self.crossing_count());
        for &(gen, exp) in &self.letters {
            let sign = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                out.push((gen, sign));
            }
        }
        out
    }

    pub fn compose(&self, other: &Braid3Word) -> Braid3Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Braid3Word::new(letters)
    }

    pub fn inverse(&self) -> Braid3Word {
        Braid3Word::new(self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn conjugated_by(&self, u: &Braid3Word) -> Braid3Word {
        u.compose(self).compose(&u.inverse())
    }

    pub fn cyclic_rotation(&self) -> Braid3Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        let first = letters.remove(0);
        letters.push(first);
        Braid3Word::new(letters)
    }

    /// Image under the reduced Burau representation at t = -1.
    pub fn burau_at_minus_one(&self) -> Result<Sl2, Links3Error> {
        let mut acc = Sl2::IDENTITY;
        for &(gen, exp) in &self.letters {
            let m = gen.burau_at_minus_one().pow(exp).map_err(|_| Links3Error::Overflow)?;
            acc = acc.mul(&m).map_err(|_| Links3Error::Overflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Braid3Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(gen, exp) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{}", gen.name())?;
            } else {
                write!(f, "{}^{}", gen.name(), exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Braid3Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Braid3Word({self})")
    }
}

impl Serialize for Braid3Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Braid3Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Braid3Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// The braid `(s1 s2)^{3d} s2 s1^{-n_1} ... s2 s1^{-n_k}` whose closure is
/// the branched-cover link of the pseudo-Anosov normal form `(n, d)`.
pub fn braid_of(n: &[u64], d: i64) -> Braid3Word {
    let full_twist_third = Braid3Word::new(vec![(BraidGen::Sigma1, 1), (BraidGen::Sigma2, 1)]);
    let mut letters = Vec::new();
    for _ in 0..(3 * d.unsigned_abs()) {
        letters.extend_from_slice(if d >= 0 {
            full_twist_third.letters()
        } else {
            &[(BraidGen::Sigma2, -1), (BraidGen::Sigma1, -1)]
        });
    }
    for &ni in n {
        letters.push((BraidGen::Sigma2, 1));
        letters.push((BraidGen::Sigma1, -(ni as i64)));
    }
    Braid3Word::new(letters)
}

/// How a determinant was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetMethod {
    #[serde(rename = "burau")]
    Burau,
    #[serde(rename = "bracket-oracle")]
    BracketOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetReport {
    pub braid: Braid3Word,
    pub determinant: u64,
    pub method: DetMethod,
}

/// Link determinant of the braid closure: `|det(rho(b) - I)|` with the
/// reduced Burau representation at t = -1.
pub fn determinant(braid: &Braid3Word) -> Result<u64, Links3Error> {
    let m = braid.burau_at_minus_one()?.entries;
    let det = (m[0][0] - 1)
        .checked_mul(m[1][1] - 1)
        .and_then(|p| {
            let q = m[0][1].checked_mul(m[1][0])?;
            p.checked_sub(q)
        })
        .ok_or(Links3Error::Overflow)?;
    Ok(det.unsigned_abs() as u64)
}

pub fn det_report(braid: &Braid3Word) -> Result<DetReport, Links3Error> {
    Ok(DetReport { braid: braid.clone(), determinant: determinant(braid)?, method: DetMethod::Burau })
}

/// Same determinant through the diagram-level bracket engine.
pub fn determinant_bracket(braid: &Braid3Word) -> Result<u64, Links3Error> {
    bracket_determinant(&BraidDiagram::closure(braid))
}

/// `n^-`: the tuple with 1 added to its last entry.
fn tuple_minus(n: &[u64]) -> Vec<u64> {
    crate::mcg::murasugi_op(n, crate::mcg::TupleOp::Minus)
}

/// The diagram of the unoriented resolution of `braid_of(minus(n), 0)` at a
/// negative crossing of its last block.
///
/// `site_from_end` selects which crossing of the last `s1^{-(n_k + 1)}` block
/// is smoothed, counted from the end of the word; all sites in the block give
/// isotopic diagrams and the default is 0 (the last crossing).
pub fn unoriented_resolution_diagram(n: &[u64], site_from_end: usize) -> Result<BraidDiagram, Links3Error> {
    if n.is_empty() || !n.iter().any(|&x| x > 0) {
        return Err(Links3Error::InvalidTuple);
    }
    let n_minus = tuple_minus(n);
    let last_block = *n_minus.last().unwrap() as usize;
    if site_from_end >= last_block {
        return Err(Links3Error::MarkerOutOfRange { site: site_from_end, crossings: last_block });
    }
    let word = braid_of(&n_minus, 0);
    let crossings = word.expand();
    let marker = crossings.len() - 1 - site_from_end;
    debug_assert!(matches!(crossings[marker], (BraidGen::Sigma1, -1)));
    Ok(BraidDiagram { crossings, marker: Some(marker) })
}

/// Determinant of the unoriented resolution `B^u` of `braid_of(minus(n), 0)`,
/// computed by the bracket engine (the resolved diagram is not a braid
/// closure). Satisfies the alternating determinant sum
/// `det(B_{minus(n),0}) = det(B_{n,0}) + det(B^u)`.
pub fn unoriented_resolution_det(n: &[u64]) -> Result<u64, Links3Error> {
    bracket_determinant(&unoriented_resolution_diagram(n, 0)?)
}

/// The tower count and extra-generator grading of the plus-flavor Floer
/// homology model of `-Sigma(B_{n,2})`: `det(B_{n,0})` copies of the tower in
/// Z/2-grading 0 plus one extra generator in grading 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFModel {
    pub tower_count: u64,
    pub extra_generator_grading: u8,
}

impl HFModel {
    /// Rank of the hat-flavor group: `2 + det(B_{n,0})`.
    pub fn hat_rank(&self) -> u64 {
        self.tower_count + 2
    }
}

pub fn hf_model(n: &[u64]) -> Result<HFModel, Links3Error> {
    if n.is_empty() || !n.iter().any(|&x| x > 0) {
        return Err(Links3Error::InvalidTuple);
    }
    Ok(HFModel { tower_count: determinant(&braid_of(n, 0))?, extra_generator_grading: 1 })
}

/// Support genus verdict for the contact structure of the normal form `(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportGenusVerdict {
    /// Overtwisted, hence planar.
    Zero,
    /// Positive support genus, carried by a genus-one open book.
    One,
    /// The classification is silent at one full twist.
    UnknownD1,
}

impl fmt::Display for SupportGenusVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportGenusVerdict::Zero => write!(f, "zero"),
            SupportGenusVerdict::One => write!(f, "one"),
            SupportGenusVerdict::UnknownD1 => write!(f, "unknown_d1"),
        }
    }
}

/// One step of the propagated positive-genus certificate.
///
/// The base fact is that the tuple `(1)` with two full twists satisfies the
/// U-power obstruction (condition R); the obstruction is closed under the
/// tuple moves at d = 2 and under adding further full positive twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum CondRStep {
    Base { tuple: Vec<u64> },
    Minus { tuple: Vec<u64> },
    Zero { tuple: Vec<u64> },
    Cycle { tuple: Vec<u64> },
    TwistIncrease { from_d: i64, to_d: i64 },
}

impl fmt::Display for CondRStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tup = |t: &[u64]| t.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            CondRStep::Base { tuple } => {
                write!(f, "base: condition R holds for n = ({}) at d = 2", tup(tuple))
            }
            CondRStep::Minus { tuple } => write!(f, "minus move -> n = ({})", tup(tuple)),
            CondRStep::Zero { tuple } => write!(f, "zero move -> n = ({})", tup(tuple)),
            CondRStep::Cycle { tuple } => write!(f, "cyclic move -> n = ({})", tup(tuple)),
            CondRStep::TwistIncrease { from_d, to_d } => {
                write!(f, "full positive twists: d = {from_d} -> d = {to_d}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportGenusReport {
    pub n: Vec<u64>,
    pub d: i64,
    pub verdict: SupportGenusVerdict,
    /// Present exactly when the verdict is `One`.
    pub condition_r_chain: Option<Vec<CondRStep>>,
}

/// Support genus of the contact structure attached to `(n, d)`: zero for
/// d <= 0 (overtwisted), one for d >= 2 (with the condition-R certificate),
/// undecided at d = 1.
pub fn support_genus(n: &[u64], d: i64) -> Result<SupportGenusReport, Links3Error> {
    if n.is_empty() || !n.iter().any(|&x| x > 0) {
        return Err(Links3Error::InvalidTuple);
    }
    let verdict = match d {
        _ if d <= 0 => SupportGenusVerdict::Zero,
        1 => SupportGenusVerdict::UnknownD1,
        _ => SupportGenusVerdict::One,
    };
    let chain = (verdict == SupportGenusVerdict::One).then(|| condition_r_chain(n, d));
    Ok(SupportGenusReport { n: n.to_vec(), d, verdict, condition_r_chain: chain })
}

/// Build the certificate `(1) -> ... -> (n, 2) -> (n, d)` from the tuple
/// moves: rotate a positive entry to the front, grow the tuple entry by
/// entry, rotate back, then raise d.
fn condition_r_chain(n: &[u64], d: i64) -> Vec<CondRStep> {
    debug_assert!(d >= 2);
    let k = n.len();
    let rot = n.iter().position(|&x| x > 0).unwrap();
    let target: Vec<u64> = (0..k).map(|i| n[(i + rot) % k]).collect();

    let mut chain = vec![CondRStep::Base { tuple: vec![1] }];
    let mut cur = vec![1u64];
    for _ in 1..target[0] {
        cur = tuple_minus(&cur);
        chain.push(CondRStep::Minus { tuple: cur.clone() });
    }
    for &entry in &target[1..] {
        cur.push(0);
        chain.push(CondRStep::Zero { tuple: cur.clone() });
        for _ in 0..entry {
            cur = tuple_minus(&cur);
            chain.push(CondRStep::Minus { tuple: cur.clone() });
        }
    }
    for _ in 0..(k - rot) % k {
        cur.rotate_left(1);
        chain.push(CondRStep::Cycle { tuple: cur.clone() });
    }
    debug_assert_eq!(cur, n);
    if d > 2 {
        chain.push(CondRStep::TwistIncrease { from_d: 2, to_d: d });
    }
    chain
}
