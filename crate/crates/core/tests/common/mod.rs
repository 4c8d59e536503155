//! Shared test support: an exact Fourier-Motzkin feasibility oracle used to
//! cross-check the simplex-based decisions. Deliberately independent of the
//! library's solver internals: plain elimination over `BigRational` with no
//! presolve.
//!
//! Compiled separately into each integration-test target, so not every
//! target uses every item.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use cuspcert::grading::{Grading, PhiVSet};

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// One inequality `coeffs · x (<|≤) rhs`.
#[derive(Clone)]
pub struct Ineq {
    pub coeffs: Vec<BigRational>,
    pub strict: bool,
    pub rhs: BigRational,
}

/// Decides whether a system of inequalities has a rational solution by
/// eliminating variables one at a time.
pub fn fm_feasible(mut system: Vec<Ineq>, num_vars: usize) -> bool {
    for var in (0..num_vars).rev() {
        let mut zero_rows = Vec::new();
        let mut uppers = Vec::new();
        let mut lowers = Vec::new();
        for ineq in system {
            let c = ineq.coeffs[var].clone();
            if c.is_zero() {
                zero_rows.push(ineq);
            } else if c.is_positive() {
                uppers.push(ineq);
            } else {
                lowers.push(ineq);
            }
        }
        let mut next = zero_rows;
        for up in &uppers {
            for low in &lowers {
                let cu = up.coeffs[var].clone();
                let cl = -low.coeffs[var].clone();
                let coeffs: Vec<BigRational> = (0..num_vars)
                    .map(|i| &cl * &up.coeffs[i] + &cu * &low.coeffs[i])
                    .collect();
                next.push(Ineq {
                    coeffs,
                    strict: up.strict || low.strict,
                    rhs: &cl * &up.rhs + &cu * &low.rhs,
                });
            }
        }
        system = next;
    }
    system.iter().all(|ineq| {
        debug_assert!(ineq.coeffs.iter().all(Zero::is_zero));
        if ineq.strict {
            ineq.rhs.is_positive()
        } else {
            !ineq.rhs.is_negative()
        }
    })
}

/// Condition-2 decision by Fourier-Motzkin: is there a nonzero rational `a`
/// with `Σ a_i n_i(α) ≤ 0` for every `α ∈ Φ_V − M`? Probes each pin
/// `a_j = ±1` by substitution and eliminates the remaining variables.
pub fn cond2_oracle(g: &Grading, m: &PhiVSet) -> bool {
    let r = g.rank();
    let complement: Vec<usize> = m.complement().iter().collect();
    for j in 0..r {
        for s in [1i64, -1] {
            let system: Vec<Ineq> = complement
                .iter()
                .map(|&local| {
                    let n = g.n_scaled_phi_v(local);
                    let coeffs: Vec<BigRational> = (0..r)
                        .map(|i| if i == j { rat(0) } else { rat(n[i]) })
                        .collect();
                    Ineq {
                        coeffs,
                        strict: false,
                        rhs: rat(-n[j] * s),
                    }
                })
                .collect();
            if fm_feasible(system, r) {
                return true;
            }
        }
    }
    false
}
