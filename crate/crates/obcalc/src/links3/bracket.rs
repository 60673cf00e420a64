//! Exact skein evaluation of 3-braid diagrams over Z[zeta_8].
//!
//! The determinant of a link is |V(-1)|, and the Jones polynomial at t = -1
//! corresponds to the Kauffman bracket at A = zeta_8. At that value the loop
//! weight -A^2 - A^-2 vanishes, so a diagram evaluates through the
//! Temperley-Lieb algebra TL_3 with delta = 0: only the basis diagrams whose
//! closure is a single loop survive the trace. Coefficients live in
//! Z[zeta_8] = Z[x]/(x^4 + 1) and the determinant is recovered as the exact
//! integer square root of |bracket|^2.

use super::{BraidGen, Links3Error};

/// Largest diagram the evaluator accepts; keeps every intermediate
/// coefficient (and the final norm) comfortably inside i128.
pub const MAX_BRACKET_CROSSINGS: usize = 56;

/// An element of Z[zeta_8]: `c[0] + c[1] z + c[2] z^2 + c[3] z^3`, z^4 = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cyc(pub [i128; 4]);

impl Cyc {
    pub const ZERO: Cyc = Cyc([0, 0, 0, 0]);
    pub const ONE: Cyc = Cyc([1, 0, 0, 0]);
    /// A = zeta_8.
    pub const A: Cyc = Cyc([0, 1, 0, 0]);
    /// A^-1 = zeta_8^7 = -zeta_8^3.
    pub const A_INV: Cyc = Cyc([0, 0, 0, -1]);

    pub fn add(self, other: Cyc) -> Cyc {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(other.0) {
            *a += b;
        }
        Cyc(out)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(self, other: Cyc) -> Cyc {
        let mut out = [0i128; 4];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                let p = self.0[i] * other.0[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p; // z^4 = -1
                }
            }
        }
        Cyc(out)
    }

    /// Complex conjugation: z -> z^-1 = -z^3.
    pub fn conj(self) -> Cyc {
        let [a, b, c, d] = self.0;
        Cyc([a, -d, -c, -b])
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0; 4]
    }
}

/// TL_3 basis: 1, e1, e2, e1 e2, e2 e1.
const DIM: usize = 5;

/// Basis multiplication at delta = 0: `TABLE[x][y]` is the basis index of
/// `x * y`, or `None` when the product carries a closed loop and dies.
const TABLE: [[Option<usize>; DIM]; DIM] = [
    [Some(0), Some(1), Some(2), Some(3), Some(4)],
    [Some(1), None, Some(3), None, Some(1)],
    [Some(2), Some(4), None, Some(2), None],
    [Some(3), Some(1), None, Some(3), None],
    [Some(4), None, Some(2), None, Some(4)],
];

/// Number of loops in the braid closure of each basis diagram.
const CLOSURE_LOOPS: [u32; DIM] = [3, 2, 2, 1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tl(pub [Cyc; DIM]);

impl Tl {
    pub const IDENTITY: Tl = {
        let mut c = [Cyc::ZERO; DIM];
        c[0] = Cyc::ONE;
        Tl(c)
    };

    #[allow(clippy::needless_range_loop)]
    fn mul(&self, other: &Tl) -> Tl {
        let mut out = [Cyc::ZERO; DIM];
        for i in 0..DIM {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if other.0[j].is_zero() {
                    continue;
                }
                if let Some(k) = TABLE[i][j] {
                    out[k] = out[k].add(self.0[i].mul(other.0[j]));
                }
            }
        }
        Tl(out)
    }
}

fn cup_cap(gen: BraidGen) -> usize {
    match gen {
        BraidGen::Sigma1 => 1,
        BraidGen::Sigma2 => 2,
    }
}

/// TL element of one crossing: `sigma_i -> A + A^-1 e_i` and the inverse
/// crossing swaps the coefficients.
fn crossing_element(gen: BraidGen, positive: bool) -> Tl {
    let (on_identity, on_cup) = if positive { (Cyc::A, Cyc::A_INV) } else { (Cyc::A_INV, Cyc::A) };
    let mut c = [Cyc::ZERO; DIM];
    c[0] = on_identity;
    c[cup_cap(gen)] = on_cup;
    Tl(c)
}

/// A 3-braid closure diagram with at most one crossing replaced by its
/// unoriented smoothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidDiagram {
    /// Crossings in order, as `(generator, sign)` with sign in {-1, +1}.
    pub crossings: Vec<(BraidGen, i8)>,
    /// Index of the smoothed crossing, if any.
    pub marker: Option<usize>,
}

impl BraidDiagram {
    pub fn closure(word: &super::Braid3Word) -> Self {
        BraidDiagram { crossings: word.expand(), marker: None }
    }
}

/// Exact bracket trace of the diagram closure at A = zeta_8.
pub(crate) fn bracket_value(diagram: &BraidDiagram) -> Result<Cyc, Links3Error> {
    if diagram.crossings.len() > MAX_BRACKET_CROSSINGS {
        return Err(Links3Error::TooManyCrossings {
            count: diagram.crossings.len(),
            max: MAX_BRACKET_CROSSINGS,
        });
    }
    if let Some(site) = diagram.marker {
        if site >= diagram.crossings.len() {
            return Err(Links3Error::MarkerOutOfRange { site, crossings: diagram.crossings.len() });
        }
    }
    let mut acc = Tl::IDENTITY;
    for (idx, &(gen, sign)) in diagram.crossings.iter().enumerate() {
        let step = if diagram.marker == Some(idx) {
            let mut c = [Cyc::ZERO; DIM];
            c[cup_cap(gen)] = Cyc::ONE;
            Tl(c)
        } else {
            crossing_element(gen, sign > 0)
        };
        acc = acc.mul(&step);
    }
    // Markov trace with delta = 0: weight delta^{loops - 1}.
    let mut trace = Cyc::ZERO;
    for (coeff, loops) in acc.0.iter().zip(CLOSURE_LOOPS) {
        if loops == 1 {
            trace = trace.add(*coeff);
        }
    }
    Ok(trace)
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut lo = 0i128;
    let mut hi = (1i128 << 63) - 1;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if mid.checked_mul(mid).map(|sq| sq <= n).unwrap_or(false) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (lo * lo == n).then_some(lo)
}

/// Link determinant of the diagram: |bracket|, extracted exactly.
pub fn bracket_determinant(diagram: &BraidDiagram) -> Result<u64, Links3Error> {
    let z = bracket_value(diagram)?;
    let norm = z.mul(z.conj());
    // |z|^2 is a rational integer for a link diagram bracket at zeta_8.
    if norm.0[1] != 0 || norm.0[2] != 0 || norm.0[3] != 0 {
        return Err(Links3Error::NonIntegerBracketNorm);
    }
    let det = isqrt(norm.0[0]).ok_or(Links3Error::NonIntegerBracketNorm)?;
    Ok(det as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links3::Braid3Word;

    fn closure_det(word: &str) -> u64 {
        let b = Braid3Word::parse(word).unwrap();
        bracket_determinant(&BraidDiagram::closure(&b)).unwrap()
    }

    #[test]
    fn zeta8_arithmetic() {
        // z^4 = -1 and A * A^-1 = 1.
        assert_eq!(Cyc::A.mul(Cyc::A).mul(Cyc::A).mul(Cyc::A), Cyc([-1, 0, 0, 0]));
        assert_eq!(Cyc::A.mul(Cyc::A_INV), Cyc::ONE);
        // delta = -A^2 - A^-2 = 0.
        let a2 = Cyc::A.mul(Cyc::A);
        let a2inv = Cyc::A_INV.mul(Cyc::A_INV);
        assert!(a2.add(a2inv).is_zero());
    }

    #[test]
    fn classic_closures() {
        assert_eq!(closure_det("s2 s1^-1"), 1); // unknot
        assert_eq!(closure_det("s1 s2 s1 s2"), 3); // trefoil
        assert_eq!(closure_det("s2 s1^-1 s2 s1^-1"), 5); // figure eight
        assert_eq!(closure_det(""), 0); // three-component unlink
        assert_eq!(closure_det("s1^3"), 0); // split: trefoil plus far unknot
    }

    #[test]
    fn split_resolution_is_zero() {
        // Smoothing the only crossing of closure(s1) leaves a split diagram.
        let b = Braid3Word::parse("s1").unwrap();
        let mut d = BraidDiagram::closure(&b);
        d.marker = Some(0);
        assert_eq!(bracket_determinant(&d).unwrap(), 0);
    }

    #[test]
    fn crossing_budget_enforced() {
        let b = Braid3Word::parse("s1^40 s2^40").unwrap();
        let err = bracket_determinant(&BraidDiagram::closure(&b)).unwrap_err();
        assert!(matches!(err, Links3Error::TooManyCrossings { .. }));
    }
}
