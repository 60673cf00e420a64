//! Link determinants via the Goeritz form of the closure diagram.
//!
//! Independent of the Burau and bracket routes: checkerboard-color the
//! closure of a 3-braid, form the Goeritz matrix of the white regions, delete
//! one region and take the absolute determinant. For the standard closure of
//! a 3-braid the white regions are the outer region together with the
//! segments of the middle gap cut by the sigma_2 crossings, so the matrix can
//! be written down without a general planar-diagram engine.
//!
//! Splits are detected up front: if either generator is missing, the closure
//! has a far unknot component and the determinant is 0.

use super::{Braid3Word, BraidGen};

/// Determinant of the closure, by Goeritz matrix. Exact; desk-scale words.
pub fn goeritz_determinant(braid: &Braid3Word) -> u64 {
    let crossings = braid.expand();
    let sigma2_heights: Vec<usize> = crossings
        .iter()
        .enumerate()
        .filter(|(_, (g, _))| *g == BraidGen::Sigma2)
        .map(|(i, _)| i)
        .collect();
    let has_sigma1 = crossings.iter().any(|(g, _)| *g == BraidGen::Sigma1);
    let t = sigma2_heights.len();
    if !has_sigma1 || t == 0 {
        return 0;
    }

    // White regions: index 0 is the outer region A, indices 1..=t are the
    // middle-gap segments P_j. Segment j lies between sigma_2 crossings j and
    // j+1; segment t-1 wraps around through the closure band.
    let segment_of = |height: usize| -> usize {
        match sigma2_heights.binary_search(&height) {
            Ok(_) => unreachable!("sigma_1 crossing shares no height with sigma_2"),
            Err(pos) => {
                if pos == 0 || pos == t {
                    t - 1 // above the first or below the last: the wrap segment
                } else {
                    pos - 1
                }
            }
        }
    };

    let dim = t + 1;
    let mut g = vec![vec![0i128; dim]; dim];
    let mut add_pair = |i: usize, j: usize, eta: i128| {
        if i == j {
            return; // both white corners in one region: no contribution
        }
        g[i][j] -= eta;
        g[j][i] -= eta;
    };

    for (height, &(gen, sign)) in crossings.iter().enumerate() {
        let sign = sign as i128;
        match gen {
            // sigma_1 crossing: white corners are A and the middle segment at
            // this height; incidence number -sign.
            BraidGen::Sigma1 => add_pair(0, 1 + segment_of(height), -sign),
            // sigma_2 crossing j: white corners are the segments above and
            // below; incidence number +sign.
            BraidGen::Sigma2 => {
                let j = sigma2_heights.binary_search(&height).unwrap();
                let above = (j + t - 1) % t;
                add_pair(1 + above, 1 + j, sign);
            }
        }
    }

    #[allow(clippy::needless_range_loop)]
    for i in 0..dim {
        g[i][i] = -(0..dim).filter(|&j| j != i).map(|j| g[i][j]).sum::<i128>();
    }

    // Delete the outer region and take the principal minor.
    let minor: Vec<Vec<i128>> = (1..dim).map(|i| g[i][1..dim].to_vec()).collect();
    bareiss_determinant(minor).unsigned_abs() as u64
}

/// Fraction-free Gaussian elimination; exact integer determinant.
fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(pivot) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(word: &str) -> u64 {
        goeritz_determinant(&Braid3Word::parse(word).unwrap())
    }

    #[test]
    fn torus_links_through_one_sigma2() {
        // closure(s1^n s2) is the (2, n) torus link, determinant n.
        for n in 1..=7 {
            assert_eq!(det(&format!("s1^{n} s2")), n as u64);
        }
    }

    #[test]
    fn classic_closures() {
        assert_eq!(det("s2 s1^-1"), 1); // unknot
        assert_eq!(det("s1 s2 s1 s2"), 3); // trefoil
        assert_eq!(det("s2 s1^-1 s2 s1^-1"), 5); // figure eight
        assert_eq!(det("s1 s2^-1"), 1);
        assert_eq!(det("s2 s1^-1 s2 s1^-1 s2 s1^-1"), 16); // borromean rings
    }

    #[test]
    fn splits_are_zero() {
        assert_eq!(det(""), 0);
        assert_eq!(det("s1^3"), 0);
        assert_eq!(det("s2^-4"), 0);
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_determinant(vec![vec![3, -1], vec![-1, 3]]), 8);
        assert_eq!(
            bareiss_determinant(vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]),
            16
        );
        assert_eq!(bareiss_determinant(vec![vec![0, 1], vec![1, 0]]), -1);
    }
}
