//! L-polynomial reconstruction from point counts.
//!
//! For a smooth projective curve of genus `g` over `F_2`, the zeta numerator
//! `P(T) = Σ a_i T^i` has degree `2g`, `a_0 = 1`, and satisfies the
//! functional equation `a_{2g−i} = 2^{g−i} a_i`. Writing
//! `t_k = 2^k + 1 − #Y(F_{2^k})` for the power sums of the inverse roots,
//! Newton's identities determine `a_1, …, a_g` from the counts for
//! `k = 1..g`; the counts for `k = g+1..2g` are then predictions and are
//! used as an internal cross-check. `#J(F_2) = P(1)`.

use super::{projective_point_count, CurveError, CurveSpec};

/// Zeta-function numerator of a smooth projective curve over F_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    genus: usize,
    coeffs: Vec<i64>, // a_0 .. a_{2g}
}

impl LPolynomial {
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `a_0 .. a_{2g}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `P(1)`, the order of the Jacobian over F_2.
    pub fn order(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `a_{2g−i} = 2^{g−i} a_i` for `i = 0..g`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus;
        (0..=g).all(|i| self.coeffs[2 * g - i] == (1i64 << (g - i)) * self.coeffs[i])
    }
}

/// Reconstructs `P(T)` from projective point counts over `F_{2^k}`,
/// `k = 1..2g`. Fails if the curve is not smooth or the counts for
/// `k = g+1..2g` disagree with the polynomial determined by `k = 1..g`
/// (which would signal a counting or smoothness bug).
pub fn l_polynomial(curve: &CurveSpec) -> Result<LPolynomial, CurveError> {
    let g = curve.case().genus();
    let counts: Vec<u64> = (1..=2 * g as u32)
        .map(|k| projective_point_count(curve, k))
        .collect::<Result<_, _>>()?;
    let t: Vec<i64> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let k = i as u32 + 1;
            (1i64 << k) + 1 - n as i64
        })
        .collect();

    // Newton: k·e_k = Σ_{j=1..k} (−1)^{j−1} e_{k−j} t_j, with a_k = (−1)^k e_k.
    let mut e = vec![0i64; g + 1];
    e[0] = 1;
    for k in 1..=g {
        let mut acc = 0i64;
        for j in 1..=k {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * e[k - j] * t[j - 1];
        }
        if acc % k as i64 != 0 {
            return Err(CurveError::InconsistentCounts { k: k as u32 });
        }
        e[k] = acc / k as i64;
    }
    let mut coeffs = vec![0i64; 2 * g + 1];
    for (k, &ek) in e.iter().enumerate() {
        coeffs[k] = if k % 2 == 0 { ek } else { -ek };
    }
    for i in 0..g {
        coeffs[2 * g - i] = (1i64 << (g - i)) * coeffs[i];
    }

    // Replay the high power sums against the measured counts.
    for k in g + 1..=2 * g {
        let mut acc = k as i64 * coeffs[k];
        for i in 1..k {
            acc += coeffs[i] * t[k - i - 1];
        }
        if t[k - 1] != -acc {
            return Err(CurveError::InconsistentCounts { k: k as u32 });
        }
    }

    let poly = LPolynomial { genus: g, coeffs };
    if poly.order() <= 0 {
        return Err(CurveError::InconsistentCounts { k: 1 });
    }
    Ok(poly)
}

/// `#J(F_2) = P(1)`.
pub fn jacobian_order_f2(curve: &CurveSpec) -> Result<i64, CurveError> {
    Ok(l_polynomial(curve)?.order())
}
