//! Words in the mapping class group of the genus-one, one-boundary surface.
//!
//! The group is generated by right-handed Dehn twists `t_a`, `t_b` around the
//! two standard curves and is isomorphic to the three-strand braid group via
//! `t_a -> s1`, `t_b -> s2`. Quotienting by the boundary twist
//! `t_delta = (t_a t_b)^6` identifies the free mapping class group with
//! SL(2,Z), which is what makes the Nielsen-Thurston trichotomy decidable by
//! exact integer arithmetic:
//!
//! * elliptic or `±I` image      -> periodic,
//! * parabolic image (`|tr| = 2`, infinite order) -> reducible,
//! * hyperbolic image (`|tr| > 2`) -> pseudo-Anosov.
//!
//! Pseudo-Anosov classes are put in the alternating normal form
//! `h^d t_b t_a^{-n_1} ... t_b t_a^{-n_k}`, `h = (t_a t_b)^3`, by cyclically
//! reducing the image in PSL(2,Z) = Z/2 * Z/3 and reading the tuple `n` off
//! the R/L syllable structure. The exponent d is then pinned by the exponent
//! sum identity `e(w) = 6d + k - sum(n)`, which doubles as a self-check.

use crate::rational::Rat;
use crate::words::TwistWord;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Curve names of the standard genus-one alphabet.
pub const CURVE_A: &str = "a";
pub const CURVE_B: &str = "b";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McgError {
    #[error("letter {0:?} is outside the {{a, b}} alphabet")]
    LetterOutsideAlphabet(String),
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("word is not periodic (classified as {0})")]
    NotPeriodic(String),
}

/// A 2x2 integer matrix of determinant one.
///
/// Carrier of the braid-group representation `s1 -> [[1,1],[0,1]]`,
/// `s2 -> [[1,0],[-1,1]]`; the determinant is re-checked on every product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2 {
    pub entries: [[i128; 2]; 2],
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { entries: [[1, 0], [0, 1]] };

    /// Image of `t_a` (and of the braid generator `s1`).
    pub const GEN_A: Sl2 = Sl2 { entries: [[1, 1], [0, 1]] };

    /// Image of `t_b` (and of the braid generator `s2`).
    pub const GEN_B: Sl2 = Sl2 { entries: [[1, 0], [-1, 1]] };

    pub fn det(&self) -> i128 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> i128 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn mul(&self, other: &Sl2) -> Result<Sl2, McgError> {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[0i128; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p0 = a[i][0].checked_mul(b[0][j]).ok_or(McgError::Overflow)?;
                let p1 = a[i][1].checked_mul(b[1][j]).ok_or(McgError::Overflow)?;
                *cell = p0.checked_add(p1).ok_or(McgError::Overflow)?;
            }
        }
        let m = Sl2 { entries: out };
        debug_assert_eq!(m.det(), 1, "product left SL(2,Z)");
        Ok(m)
    }

    pub fn inverse(&self) -> Sl2 {
        let [[a, b], [c, d]] = self.entries;
        Sl2 { entries: [[d, -b], [-c, a]] }
    }

    pub fn pow(&self, e: i64) -> Result<Sl2, McgError> {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = Sl2::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        *self == Sl2::IDENTITY || self.entries == [[-1, 0], [0, -1]]
    }

    /// Order of the matrix in SL(2,Z), if finite (1, 2, 3, 4 or 6).
    pub fn finite_order(&self) -> Option<u32> {
        let mut acc = *self;
        for m in 1..=6u32 {
            if acc == Sl2::IDENTITY {
                return Some(m);
            }
            acc = acc.mul(self).ok()?;
        }
        None
    }
}

/// The Nielsen-Thurston verdict for a genus-one, one-boundary monodromy.
///
/// For pseudo-Anosov classes `n` is stored in its lexicographically least
/// cyclic rotation, the canonical representative of the conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalForm3 {
    Periodic { fdtc: Rat },
    Reducible,
    PseudoAnosov { d: i64, n: Vec<u64> },
}

impl fmt::Display for NormalForm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm3::Periodic { fdtc } => write!(f, "periodic, FDTC {fdtc}"),
            NormalForm3::Reducible => write!(f, "reducible"),
            NormalForm3::PseudoAnosov { d, n } => {
                let tuple = n.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                write!(f, "pseudo-Anosov, d = {d}, n = ({tuple})")
            }
        }
    }
}

/// Composition of monodromies: concatenation with merge normalization.
pub fn compose(w1: &TwistWord, w2: &TwistWord) -> TwistWord {
    w1.compose(w2)
}

fn letter_matrix(curve: &str) -> Result<Sl2, McgError> {
    match curve {
        CURVE_A => Ok(Sl2::GEN_A),
        CURVE_B => Ok(Sl2::GEN_B),
        other => Err(McgError::LetterOutsideAlphabet(other.to_owned())),
    }
}

/// Image of a word over `{a, b}` in SL(2,Z) under `t_a -> s1 -> [[1,1],[0,1]]`,
/// `t_b -> s2 -> [[1,0],[-1,1]]`.
pub fn to_braid_matrix(word: &TwistWord) -> Result<Sl2, McgError> {
    let mut acc = Sl2::IDENTITY;
    for (curve, exp) in word.letters() {
        let m = letter_matrix(curve)?.pow(*exp)?;
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// PSL(2,Z) = Z/2 * Z/3 syllable machinery.
//
// S = [[0,-1],[1,0]] has order 2 in PSL, U = [[1,-1],[1,0]] has order 3, and
//   t_a   -> U S        t_a^-1 -> S U^2
//   t_b   -> S U        t_b^-1 -> U^2 S
// A cyclically reduced word alternates S with U^{1,2}; the pairs (U S) and
// (U^2 S) are exactly the parabolic generators R = [[1,1],[0,1]] and
// L = [[1,0],[1,1]], so the hyperbolic conjugacy classes are cyclic positive
// R/L words and the Murasugi tuple can be read off directly.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Syl {
    S,
    /// `U^e` with e in {1, 2}.
    U(u8),
}

fn push_reduced(stack: &mut Vec<Syl>, syl: Syl) {
    match (stack.last().copied(), syl) {
        (Some(Syl::S), Syl::S) => {
            stack.pop();
        }
        (Some(Syl::U(i)), Syl::U(j)) => {
            stack.pop();
            let e = (i + j) % 3;
            if e != 0 {
                push_reduced(stack, Syl::U(e));
            }
        }
        _ => stack.push(syl),
    }
}

fn letter_syllables(curve: &str, positive: bool) -> Result<[Syl; 2], McgError> {
    Ok(match (curve, positive) {
        (CURVE_A, true) => [Syl::U(1), Syl::S],
        (CURVE_A, false) => [Syl::S, Syl::U(2)],
        (CURVE_B, true) => [Syl::S, Syl::U(1)],
        (CURVE_B, false) => [Syl::U(2), Syl::S],
        (other, _) => return Err(McgError::LetterOutsideAlphabet(other.to_owned())),
    })
}

/// Reduced word in Z/2 * Z/3 for the image of `word` in PSL(2,Z).
fn psl_word(word: &TwistWord) -> Result<Vec<Syl>, McgError> {
    let mut stack = Vec::new();
    for (curve, exp) in word.letters() {
        let syls = letter_syllables(curve, *exp > 0)?;
        for _ in 0..exp.unsigned_abs() {
            for syl in syls {
                push_reduced(&mut stack, syl);
            }
        }
    }
    Ok(stack)
}

/// Cyclic reduction: merge the ends until the word is cyclically alternating.
fn cyclically_reduce(mut word: Vec<Syl>) -> Vec<Syl> {
    loop {
        if word.len() < 2 {
            return word;
        }
        match (word[0], *word.last().unwrap()) {
            (Syl::S, Syl::S) => {
                word.pop();
                word.remove(0);
            }
            (Syl::U(i), Syl::U(j)) => {
                word.pop();
                word.remove(0);
                let e = (i + j) % 3;
                if e != 0 {
                    word.insert(0, Syl::U(e));
                }
            }
            _ => return word,
        }
    }
}

/// Lexicographically least cyclic rotation.
fn canonical_rotation(n: &[u64]) -> Vec<u64> {
    let k = n.len();
    if k == 0 {
        return Vec::new();
    }
    (0..k)
        .map(|r| {
            let mut rot = Vec::with_capacity(k);
            rot.extend_from_slice(&n[r..]);
            rot.extend_from_slice(&n[..r]);
            rot
        })
        .min()
        .unwrap()
}

/// Exponent sum of a word; a homomorphism to Z with `e(t_delta) = 12`.
pub fn exponent_sum(word: &TwistWord) -> i64 {
    word.letters().iter().map(|(_, e)| e).sum()
}

/// Nielsen-Thurston classification of a word over `{a, b}`.
///
/// Total on its precondition (alphabet inside `{a, b}`); the identity word is
/// periodic with FDTC 0.
pub fn classify(word: &TwistWord) -> Result<NormalForm3, McgError> {
    let image = to_braid_matrix(word)?;
    let trace = image.trace().abs();
    if image.is_plus_minus_identity() || trace < 2 {
        return Ok(NormalForm3::Periodic { fdtc: fdtc_of_periodic_image(word) });
    }
    if trace == 2 {
        return Ok(NormalForm3::Reducible);
    }

    // Hyperbolic: extract the Murasugi tuple from the cyclic R/L word.
    let cyclic = cyclically_reduce(psl_word(word)?);
    debug_assert!(cyclic.len() >= 2 && cyclic.len().is_multiple_of(2));
    let start = cyclic
        .iter()
        .position(|s| matches!(s, Syl::U(_)))
        .expect("hyperbolic word has a U syllable");
    let mut exponents = Vec::with_capacity(cyclic.len() / 2);
    let mut i = start;
    for _ in 0..cyclic.len() / 2 {
        let Syl::U(e) = cyclic[i] else { panic!("expected alternating word") };
        debug_assert!(matches!(cyclic[(i + 1) % cyclic.len()], Syl::S));
        exponents.push(e);
        i = (i + 2) % cyclic.len();
    }
    debug_assert!(
        exponents.contains(&1) && exponents.contains(&2),
        "mixed syllables in a hyperbolic class"
    );

    // Each R (= U S) opens a slot of the tuple; the following L-run is its n_i.
    let k = exponents.len();
    let first_r = exponents.iter().position(|&e| e == 1).unwrap();
    let mut n = Vec::new();
    let mut run = 0u64;
    for step in 1..=k {
        let e = exponents[(first_r + step) % k];
        if e == 1 {
            n.push(run);
            run = 0;
        } else {
            run += 1;
        }
    }

    let n = canonical_rotation(&n);
    let e_sum = exponent_sum(word);
    let k = n.len() as i64;
    let n_sum: i64 = n.iter().map(|&x| x as i64).sum();
    let numerator = e_sum - k + n_sum;
    assert!(numerator % 6 == 0, "exponent sum identity failed: e = {e_sum}, k = {k}, sum n = {n_sum}");
    Ok(NormalForm3::PseudoAnosov { d: numerator / 6, n })
}

fn fdtc_of_periodic_image(word: &TwistWord) -> Rat {
    // t_delta is central with exponent sum 12, so the FDTC is e(w)/12.
    Rat::new(exponent_sum(word) as i128, 12)
}

/// Fractional Dehn twist coefficient of a periodic word: `k/m` where
/// `w^m = t_delta^k` as boundary-fixing mapping classes.
pub fn fdtc_periodic(word: &TwistWord) -> Result<Rat, McgError> {
    match classify(word)? {
        NormalForm3::Periodic { fdtc } => Ok(fdtc),
        other => Err(McgError::NotPeriodic(other.to_string())),
    }
}

/// The pair `(m, k)` with `w^m = t_delta^k`, `m` the order of the SL(2,Z)
/// image. This is the direct route to the FDTC; `fdtc_periodic` returns the
/// equal reduced fraction `e(w)/12`.
pub fn periodic_power_pair(word: &TwistWord) -> Result<(u32, i64), McgError> {
    let image = to_braid_matrix(word)?;
    let m = image
        .finite_order()
        .ok_or_else(|| McgError::NotPeriodic("infinite-order image".to_owned()))?;
    let e = exponent_sum(word);
    let km12 = e * m as i64;
    assert!(km12 % 12 == 0, "w^m lies in <t_delta>, so 12 divides m*e(w)");
    Ok((m, km12 / 12))
}

/// The word `h^d t_b t_a^{-n_1} ... t_b t_a^{-n_k}` realizing a pseudo-Anosov
/// normal form, with `h = (t_a t_b)^3`.
pub fn normal_form_word(d: i64, n: &[u64]) -> TwistWord {
    let h = TwistWord::parse("a b a b a b").unwrap();
    let mut word = h.pow(d);
    for &ni in n {
        word = word.compose(&TwistWord::new(vec![
            (CURVE_B.to_owned(), 1),
            (CURVE_A.to_owned(), -(ni as i64)),
        ]));
    }
    word
}

/// The Murasugi tuple moves of the pseudo-Anosov family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleOp {
    /// `n^-`: add 1 to the last entry.
    Minus,
    /// `n^0`: append a 0.
    Zero,
    /// Rotate left by one.
    Cycle,
}

/// Apply a tuple move; total, and the empty tuple is left unchanged.
pub fn murasugi_op(n: &[u64], which: TupleOp) -> Vec<u64> {
    let mut out = n.to_vec();
    match which {
        TupleOp::Minus => {
            if let Some(last) = out.last_mut() {
                *last += 1;
            }
        }
        TupleOp::Zero => out.push(0),
        TupleOp::Cycle => {
            if !out.is_empty() {
                out.rotate_left(1);
            }
        }
    }
    out
}
