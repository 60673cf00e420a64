//! The d3 invariant of tight contact structures supported by genus-one
//! periodic open books.
//!
//! Ingredients:
//!
//! * [`f_table`]: the grading of the contact class of a one-boundary
//!   genus-one periodic open book, as a function of its fractional Dehn
//!   twist coefficient. Row lookup, exactly as tabulated; an FDTC matching
//!   no row with nonnegative row parameter means the structure is
//!   overtwisted.
//! * [`d3`]: the closed formula
//!   `d3 = -f(k_r/m) + (3I - r - 4)/4 - (1/4) sum_j term_j`
//!   together with its telescoped recomputation, which caps boundary
//!   components one at a time in ascending coefficient order and adds the
//!   per-cap grading shifts from [`crate::domains`]. The two are the same
//!   telescope algebraically and must agree exactly; this is tested, not
//!   assumed.
//! * [`tightness`]: periodic monodromies are tight exactly when every
//!   fractional Dehn twist coefficient is nonnegative (and then Stein
//!   fillable).
//! * [`binding_bound`]: the binding bound `r >= -1 - 4 d3`, reported as the
//!   exact margin `r + 1 + 4 d3`.
//!
//! A global half-integer offset (default 0) can be added to reported d3
//! values; the one-boundary anchor case is documented in the calibration
//! report rather than silently absorbed.

use crate::domains::{intersection_data, s_sequence, C1Channel, CobordismReport, DomainError, PeriodicData};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DthreeError {
    #[error("overtwisted regime: FDTC {0} matches no grading row with nonnegative parameter")]
    OvertwistedRegime(Rat),
    #[error("FDTC {0} has denominator outside {{1, 2, 3, 4, 6}}; not realizable by a genus-one periodic monodromy")]
    InvalidDenominator(Rat),
    #[error("the d3 formula is stated for genus one, got genus {0}")]
    GenusNotOne(u32),
    #[error("overtwisted input: some twist coefficient is negative")]
    Overtwisted,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Grading of the contact class versus fractional Dehn twist coefficient,
/// by table row. Row parameter `k >= 0` throughout.
///
/// | FDTC      | grading |
/// |-----------|---------|
/// | (6k+5)/6  | -2      |
/// | (4k+3)/4  | -7/4    |
/// | (3k+2)/3  | -3/2    |
/// | (6k+1)/6  | -1/2    |
/// | (4k+1)/4  | -1/4    |
/// | (3k+1)/3  | 0       |
/// | (2k-1)/2  | -1      |
/// | k         | -1      |
pub fn f_table(c: Rat) -> Result<Rat, DthreeError> {
    let (p, q) = (c.numer(), c.denom());
    let row = |modulus: i128, residue: i128, min: i128, value: Rat| {
        (p.rem_euclid(modulus) == residue && p >= min).then_some(value)
    };
    let hit = match q {
        1 => row(1, 0, 0, Rat::new(-1, 1)),
        2 => row(2, 1, -1, Rat::new(-1, 1)),
        3 => row(3, 2, 2, Rat::new(-3, 2)).or_else(|| row(3, 1, 1, Rat::zero())),
        4 => row(4, 3, 3, Rat::new(-7, 4)).or_else(|| row(4, 1, 1, Rat::new(-1, 4))),
        6 => row(6, 5, 5, Rat::new(-2, 1)).or_else(|| row(6, 1, 1, Rat::new(-1, 2))),
        _ => return Err(DthreeError::InvalidDenominator(c)),
    };
    hit.ok_or(DthreeError::OvertwistedRegime(c))
}

/// Options for the d3 computation: which `c_1^2` channel feeds grading
/// shifts, and a global additive offset on reported values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct D3Options {
    pub channel: C1Channel,
    pub offset: Rat,
}

impl Default for D3Options {
    fn default() -> Self {
        D3Options { channel: C1Channel::default(), offset: Rat::zero() }
    }
}

impl D3Options {
    pub fn with_channel(channel: C1Channel) -> Self {
        D3Options { channel, offset: Rat::zero() }
    }
}

/// The graded output of the d3 computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    /// `k_r / m`, the coefficient fed to the grading table.
    pub fdtc_last: Rat,
    pub f_value: Rat,
    /// Per-cap intersection reports, capping in ascending coefficient order.
    pub per_cap: Vec<CobordismReport>,
    /// Grading shift of each cap under the configured channel.
    pub per_cap_shifts: Vec<Rat>,
    /// The closed formula.
    pub d3_printed: Rat,
    /// The telescoped recomputation; equals `d3_printed` exactly.
    pub d3_telescoped: Rat,
    pub convention: C1Channel,
    /// Offset that was added to both d3 values (0 by default).
    pub offset: Rat,
}

/// Compute d3 for genus-one periodic data by both routes.
///
/// Capping order for the telescope is ascending coefficient (zeros first),
/// matching the sorted hypothesis of the closed formula. Errors when every
/// coefficient vanishes with `r >= 2` (the first-nonzero index is undefined)
/// and propagates grading-table failures.
pub fn d3(pd: &PeriodicData, opts: D3Options) -> Result<GradingReport, DthreeError> {
    if pd.genus != 1 {
        return Err(DthreeError::GenusNotOne(pd.genus));
    }
    let r = pd.r();
    let fdtc_last = pd.fdtc_last();
    let f_value = f_table(fdtc_last)?;
    let quarter = Rat::new(1, 4);

    if r >= 2 && pd.first_nonzero().is_none() {
        return Err(DomainError::AllCoefficientsZero.into());
    }

    // Closed formula: -f + (3I - r - 4)/4 - (1/4) sum_{j=I-1}^{r-2} term_j,
    // with term_j the configured c_1^2 of the cap leaving (k_{j+1}, ..., k_r).
    let d3_printed = if r == 1 {
        -f_value - Rat::new(1, 2)
    } else {
        let i_index = pd.first_nonzero().unwrap();
        let (_, s) = s_sequence(pd)?;
        let s_at = |j: usize| s[j - (i_index - 1)]; // s[j] for j = I-1, ..., r-1
        let m = Rat::from_int(pd.m as i128);
        let k_r = Rat::from_int(*pd.k.last().unwrap() as i128);
        let mut sum = Rat::zero();
        for j in (i_index - 1)..=(r - 2) {
            let k_next = Rat::from_int(pd.k[j] as i128); // k_{j+1}, 1-based
            let term = match opts.channel {
                C1Channel::Printed => {
                    let numer = (k_r * Rat::from_int(j as i128 - r as i128) - k_next * s_at(j)).square();
                    numer / (m * k_next * s_at(j) * s_at(j + 1))
                }
                C1Channel::FirstPrinciples => {
                    // pairing^2 / self-intersection for the truncated vector:
                    // N_j = k_{j+1} s_j / m, c_1^2 = -N_j / s_{j+1}.
                    -(k_next * s_at(j) / m) / s_at(j + 1)
                }
            };
            sum += term;
        }
        let constant = Rat::new(3 * i_index as i128 - r as i128 - 4, 4);
        -f_value + constant - quarter * sum
    };

    // Telescope: cap ascending, accumulate shifts, finish at the one-boundary
    // book whose grading the table supplies.
    let mut per_cap = Vec::with_capacity(r - 1);
    for cut in 0..r.saturating_sub(1) {
        per_cap.push(intersection_data(&pd.truncate_front(cut), opts.channel)?);
    }
    let per_cap_shifts: Vec<Rat> = per_cap.iter().map(|rep| rep.shift).collect();
    let shift_sum: Rat = per_cap_shifts.iter().copied().sum();
    let d3_telescoped = -(f_value + shift_sum) - Rat::new(1, 2);

    Ok(GradingReport {
        fdtc_last,
        f_value,
        per_cap,
        per_cap_shifts,
        d3_printed: d3_printed + opts.offset,
        d3_telescoped: d3_telescoped + opts.offset,
        convention: opts.channel,
        offset: opts.offset,
    })
}

/// Tightness of a periodic monodromy from its twist coefficients, which may
/// be negative here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tightness {
    TightSteinFillable,
    Overtwisted,
}

/// A periodic open book is tight iff every fractional Dehn twist coefficient
/// is nonnegative, and then the contact structure is Stein fillable.
pub fn tightness(ks: &[i64]) -> Tightness {
    if ks.iter().all(|&k| k >= 0) {
        Tightness::TightSteinFillable
    } else {
        Tightness::Overtwisted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BindingBound {
    /// `r + 1 + 4 d3`, exact.
    pub margin: Rat,
    pub satisfied: bool,
    pub d3: Rat,
}

/// Evaluate the binding bound `r >= -1 - 4 d3` for tight periodic data.
///
/// Accepts raw (possibly negative) coefficients and errors on overtwisted
/// input.
pub fn binding_bound(genus: u32, m: u64, ks: &[i64], opts: D3Options) -> Result<BindingBound, DthreeError> {
    if tightness(ks) == Tightness::Overtwisted {
        return Err(DthreeError::Overtwisted);
    }
    let unsigned: Vec<u64> = ks.iter().map(|&k| k as u64).collect();
    let pd = PeriodicData::new(genus, m, &unsigned)?;
    let report = d3(&pd, opts)?;
    let margin = Rat::from_int(pd.r() as i128) + Rat::one() + Rat::from_int(4) * report.d3_telescoped;
    Ok(BindingBound { margin, satisfied: !margin.is_negative(), d3: report.d3_telescoped })
}

pub mod calibration {
    //! Channel selection for the `c_1^2` ambiguity.
    //!
    //! The two channels disagree (the case `g = 1, r = 2, m = 6, k = (1, 2)`
    //! discriminates), and the binding bound decides between them: exactly
    //! one channel keeps `r + 1 + 4 d3 >= 0` across a randomized tight
    //! suite. The report also records the one-boundary anchor: the standard
    //! tight structure on the three-sphere has binding number one and
    //! d3 = -1/2, while the verbatim table gives d3 = 0 for its open book,
    //! a residual offset of -1/2 that is documented, not applied.

    use super::*;

    #[derive(Debug, Clone, Serialize, Deserialize)]
    pub struct ChannelOutcome {
        pub channel: C1Channel,
        pub cases: usize,
        pub violations: usize,
        /// Margin of the discriminating case `m = 6, k = (1, 2)`.
        pub discriminating_margin: Rat,
        pub discriminating_d3: Rat,
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    pub struct CalibrationReport {
        pub outcomes: Vec<ChannelOutcome>,
        /// The unique violation-free channel, when there is exactly one.
        pub selected: Option<C1Channel>,
        /// d3 of the anchor open book (r = 1, m = 6, k = (1)) under the
        /// verbatim table.
        pub anchor_computed_d3: Rat,
        /// The reference value for the standard tight three-sphere.
        pub anchor_reference_d3: Rat,
        /// `reference - computed`: the offset a caller would pass to match
        /// the anchor.
        pub residual_offset: Rat,
        pub seed: u64,
    }

    /// Deterministic case list: a coefficient grid plus the discriminating
    /// case, all tight (nonnegative, not all zero for `r >= 2`) and inside
    /// the grading table's domain (the reduced denominator of `k_r/m` must
    /// be one of 1, 2, 3, 4, 6).
    fn suite(seed: u64, cases: usize) -> Vec<PeriodicData> {
        // Small multiplicative congruential stream; the suite only needs
        // deterministic variety, not statistical quality.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = |bound: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % bound
        };
        let mut out = vec![PeriodicData::new(1, 6, &[1, 2]).unwrap()];
        while out.len() < cases {
            let r = 1 + next(6) as usize;
            let m = 1 + next(12);
            let ks: Vec<u64> = (0..r).map(|_| next(9)).collect();
            if r >= 2 && ks.iter().all(|&k| k == 0) {
                continue;
            }
            let pd = PeriodicData::new(1, m, &ks).unwrap();
            if f_table(pd.fdtc_last()).is_err() {
                continue;
            }
            out.push(pd);
        }
        out
    }

    pub fn run(seed: u64, cases: usize) -> CalibrationReport {
        let discriminating = PeriodicData::new(1, 6, &[1, 2]).unwrap();
        let mut outcomes = Vec::new();
        for channel in [C1Channel::Printed, C1Channel::FirstPrinciples] {
            let opts = D3Options::with_channel(channel);
            let mut violations = 0usize;
            let mut cases_run = 0usize;
            for pd in suite(seed, cases) {
                let ks: Vec<i64> = pd.k.iter().map(|&k| k as i64).collect();
                let bound = binding_bound(1, pd.m, &ks, opts).expect("tight suite");
                cases_run += 1;
                if !bound.satisfied {
                    violations += 1;
                }
            }
            let disc = d3(&discriminating, opts).expect("discriminating case");
            let margin = Rat::from_int(2) + Rat::one() + Rat::from_int(4) * disc.d3_telescoped;
            outcomes.push(ChannelOutcome {
                channel,
                cases: cases_run,
                violations,
                discriminating_margin: margin,
                discriminating_d3: disc.d3_telescoped,
            });
        }
        let clean: Vec<C1Channel> =
            outcomes.iter().filter(|o| o.violations == 0).map(|o| o.channel).collect();
        let selected = (clean.len() == 1).then(|| clean[0]);

        let anchor = PeriodicData::new(1, 6, &[1]).unwrap();
        let anchor_computed = d3(&anchor, D3Options::default()).expect("anchor").d3_telescoped;
        let anchor_reference = Rat::new(-1, 2);
        CalibrationReport {
            outcomes,
            selected,
            anchor_computed_d3: anchor_computed,
            anchor_reference_d3: anchor_reference,
            residual_offset: anchor_reference - anchor_computed,
            seed,
        }
    }

    impl CalibrationReport {
        pub fn render_markdown(&self) -> String {
            let mut out = String::new();
            out.push_str("# Conventions report\n\n");
            out.push_str("Channel selection for the grading-shift c1^2 expression, decided by\n");
            out.push_str("the binding bound `r + 1 + 4 d3 >= 0` over a randomized tight suite\n");
            out.push_str("of genus-one periodic data (the case m = 6, k = (1, 2) discriminates).\n\n");
            out.push_str("| channel | cases | violations | d3 at m=6, k=(1,2) | margin |\n");
            out.push_str("|---------|-------|------------|--------------------|--------|\n");
            for o in &self.outcomes {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    o.channel.name(),
                    o.cases,
                    o.violations,
                    o.discriminating_d3,
                    o.discriminating_margin
                ));
            }
            match self.selected {
                Some(channel) => out.push_str(&format!(
                    "\nSelected channel: **{}** (the unique violation-free configuration).\n",
                    channel.name()
                )),
                None => out.push_str("\nNo unique violation-free channel; selection failed.\n"),
            }
            out.push_str(&format!(
                "\nAnchor check (one binding component, m = 6, k = (1)): computed d3 = {},\n\
                 reference d3 for the standard tight three-sphere = {}; residual offset = {}.\n\
                 The default configuration applies no offset (set OBCALC_D3_OFFSET to adjust).\n",
                self.anchor_computed_d3, self.anchor_reference_d3, self.residual_offset
            ));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pd(m: u64, ks: &[u64]) -> PeriodicData {
        PeriodicData::new(1, m, ks).unwrap()
    }

    #[test]
    fn f_table_rows() {
        assert_eq!(f_table(rat(1, 6)).unwrap(), rat(-1, 2));
        assert_eq!(f_table(rat(2, 3)).unwrap(), rat(-3, 2));
        assert_eq!(f_table(rat(5, 1)).unwrap(), rat(-1, 1));
        assert_eq!(f_table(rat(5, 6)).unwrap(), rat(-2, 1));
        assert_eq!(f_table(rat(3, 4)).unwrap(), rat(-7, 4));
        assert_eq!(f_table(rat(1, 4)).unwrap(), rat(-1, 4));
        assert_eq!(f_table(rat(1, 3)).unwrap(), Rat::zero());
        assert_eq!(f_table(rat(-1, 2)).unwrap(), rat(-1, 1));
        assert_eq!(f_table(Rat::zero()).unwrap(), rat(-1, 1));
    }

    #[test]
    fn f_table_errors() {
        for c in [rat(-1, 6), rat(-1, 4), rat(-1, 3), rat(-1, 1), rat(-3, 2)] {
            assert!(matches!(f_table(c), Err(DthreeError::OvertwistedRegime(_))), "{c}");
        }
        assert!(matches!(f_table(rat(1, 5)), Err(DthreeError::InvalidDenominator(_))));
        assert!(matches!(f_table(rat(1, 12)), Err(DthreeError::InvalidDenominator(_))));
    }

    #[test]
    fn f_table_rows_are_disjoint_and_total_for_tight_inputs() {
        // Every reduced p/q with q in {1,2,3,4,6} and value >= 0 (plus -1/2)
        // matches exactly one row; matching is exclusive across rows.
        for q in [1i128, 2, 3, 4, 6] {
            for p in -600..=600i128 {
                if num::integer::gcd(p, q) != 1 {
                    continue;
                }
                let c = rat(p, q);
                let mut hits = 0;
                for (modulus, residue, min) in [
                    (6, 5, 5),
                    (4, 3, 3),
                    (3, 2, 2),
                    (6, 1, 1),
                    (4, 1, 1),
                    (3, 1, 1),
                    (2, 1, -1),
                    (1, 0, 0),
                ] {
                    let denom_of_row = if modulus == 1 { 1 } else { modulus };
                    if q == denom_of_row && p.rem_euclid(modulus) == residue && p >= min {
                        hits += 1;
                    }
                }
                assert!(hits <= 1, "rows overlap at {c}");
                let expect_hit = c >= Rat::zero() || c == rat(-1, 2);
                assert_eq!(f_table(c).is_ok(), hits == 1, "{c}");
                if expect_hit {
                    assert!(f_table(c).is_ok(), "tight-range value {c} must match a row");
                }
            }
        }
    }

    #[test]
    fn d3_one_boundary() {
        // r = 1: empty sum, d3 = -f(k/m) - 1/2.
        let report = d3(&pd(6, &[1]), D3Options::default()).unwrap();
        assert_eq!(report.d3_printed, Rat::zero());
        assert_eq!(report.d3_telescoped, Rat::zero());
        let report = d3(&pd(1, &[0]), D3Options::default()).unwrap();
        assert_eq!(report.d3_printed, rat(1, 2));
    }

    #[test]
    fn d3_zero_one() {
        // I = 2, empty sum: d3 = -f(1/6) = 1/2; the telescoped route caps a
        // trivial-form handle (shift -1/2) first.
        let report = d3(&pd(6, &[0, 1]), D3Options::default()).unwrap();
        assert_eq!(report.d3_printed, rat(1, 2));
        assert_eq!(report.d3_telescoped, rat(1, 2));
        assert_eq!(report.per_cap_shifts, vec![rat(-1, 2)]);
    }

    #[test]
    fn d3_one_one() {
        // One nontrivial cap with printed c_1^2 = 0: shift 1/4 and
        // d3 = -(-1/2 + 1/4) - 1/2 = -1/4 on both routes.
        let report = d3(&pd(6, &[1, 1]), D3Options::default()).unwrap();
        assert_eq!(report.d3_printed, rat(-1, 4));
        assert_eq!(report.d3_telescoped, rat(-1, 4));
    }

    #[test]
    fn d3_discriminating_case_under_both_channels() {
        let printed = d3(&pd(6, &[1, 2]), D3Options::with_channel(C1Channel::Printed)).unwrap();
        assert_eq!(printed.d3_printed, rat(-55, 72));
        assert_eq!(printed.d3_telescoped, rat(-55, 72));
        let fp = d3(&pd(6, &[1, 2]), D3Options::with_channel(C1Channel::FirstPrinciples)).unwrap();
        assert_eq!(fp.d3_printed, rat(-5, 8));
        assert_eq!(fp.d3_telescoped, rat(-5, 8));
    }

    #[test]
    fn d3_rejects_all_zero_with_multiple_boundaries() {
        assert!(matches!(
            d3(&pd(6, &[0, 0]), D3Options::default()),
            Err(DthreeError::Domain(DomainError::AllCoefficientsZero))
        ));
        assert!(matches!(
            d3(&PeriodicData::new(2, 6, &[1]).unwrap(), D3Options::default()),
            Err(DthreeError::GenusNotOne(2))
        ));
    }

    #[test]
    fn d3_scale_invariance() {
        for (m, ks) in [(6u64, vec![1u64, 2]), (2, vec![0, 1, 1]), (3, vec![2])] {
            let base = d3(&pd(m, &ks), D3Options::default()).unwrap();
            for c in [2u64, 5] {
                let scaled: Vec<u64> = ks.iter().map(|&k| k * c).collect();
                let got = d3(&pd(m * c, &scaled), D3Options::default()).unwrap();
                assert_eq!(got.d3_printed, base.d3_printed, "m={m} ks={ks:?} c={c}");
                assert_eq!(got.d3_telescoped, base.d3_telescoped);
            }
        }
    }

    #[test]
    fn d3_offset_is_additive() {
        let opts = D3Options { channel: C1Channel::Printed, offset: rat(-1, 2) };
        let report = d3(&pd(6, &[1]), opts).unwrap();
        assert_eq!(report.d3_printed, rat(-1, 2));
    }

    #[test]
    fn tightness_examples() {
        assert_eq!(tightness(&[0, 2]), Tightness::TightSteinFillable);
        assert_eq!(tightness(&[-1, 3]), Tightness::Overtwisted);
    }

    #[test]
    fn binding_bound_examples() {
        // r = 1, m = 6, k = (1): d3 = 0, margin = 2.
        let bound = binding_bound(1, 6, &[1], D3Options::default()).unwrap();
        assert_eq!(bound.margin, rat(2, 1));
        assert!(bound.satisfied);
        // The anchor value itself: with d3 = -1/2 the bound is sharp.
        assert!(
            (Rat::one() + Rat::one() + Rat::from_int(4) * rat(-1, 2)).is_zero(),
            "r = 1 with d3 = -1/2 has margin exactly 0"
        );
        assert!(matches!(
            binding_bound(1, 6, &[-1, 3], D3Options::default()),
            Err(DthreeError::Overtwisted)
        ));
        // Discriminating case: satisfied under first_principles only.
        let fp = binding_bound(1, 6, &[1, 2], D3Options::with_channel(C1Channel::FirstPrinciples)).unwrap();
        assert!(fp.satisfied);
        assert_eq!(fp.margin, rat(1, 2));
        let printed = binding_bound(1, 6, &[1, 2], D3Options::with_channel(C1Channel::Printed)).unwrap();
        assert!(!printed.satisfied);
        assert_eq!(printed.margin, rat(-1, 18));
    }

    #[test]
    fn calibration_selects_first_principles() {
        let report = calibration::run(7, 300);
        assert_eq!(report.selected, Some(C1Channel::FirstPrinciples));
        assert_eq!(report.residual_offset, rat(-1, 2));
        let md = report.render_markdown();
        assert!(md.contains("first_principles"));
    }
}
