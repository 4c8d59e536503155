//! Reducibility criteria with exact witnesses.
//!
//! A subset `M ⊆ Φ_V` is *handled* when one of three conditions holds:
//!
//! 1. some `ω ∈ Ω` maps `Φ_V^+ − S_H` into `M`;
//! 2. some nonzero integer vector `a` has `Σ a_i n_i(α) ≤ 0` for every
//!    `α ∈ Φ_V − M`;
//! 3. some `β ∈ S_G` and `α ∈ Φ_V − M` satisfy the root-string conditions
//!    (a)–(b) and condition 2 holds for `M ∪ {α}`.
//!
//! There is also the f-function system used to bound cusp strata: a
//! nonnegative `f` on `M_1` with `Σ f(α) < #M_0` and, for each `i`,
//! `Σ_{Φ_G^+} n_i − Σ_{M_0} n_i + Σ_{M_1} f(α) n_i(α) > 0`, both strict.
//!
//! Everything here is exact rational arithmetic. Feasibility questions go
//! through [`lp_feasible`], a two-phase simplex with Bland pivoting; strict
//! inequalities are handled by maximizing a slack `t ≤ 1` and demanding
//! `t > 0` at the optimum. Every checker returns a [`Certificate`] that
//! [`verify_certificate`] re-checks from the defining inequalities alone,
//! independently of the solver path that produced it.

mod simplex;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::grading::{Grading, PhiVSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// A system of rational linear constraints over `num_vars` variables;
/// variables listed in `nonneg_vars` are additionally constrained to be ≥ 0,
/// the rest are free.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub nonneg_vars: Vec<usize>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            constraints: Vec::new(),
            nonneg_vars: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Exact substitution check, strict relations strictly.
    pub fn satisfied_by(&self, point: &[BigRational]) -> bool {
        if point.len() != self.num_vars {
            return false;
        }
        if self
            .nonneg_vars
            .iter()
            .any(|&i| point[i].is_negative())
        {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs: BigRational = c.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Lt => lhs < c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Gt => lhs > c.rhs,
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[BigRational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides feasibility of `sys` over the rationals and returns an exact
/// witness when feasible.
///
/// Strict inequalities are reduced to non-strict ones with a shared slack
/// variable `t ≤ 1` added on the small side; the relaxation is feasible with
/// optimal `t* > 0` exactly when the strict system is feasible, and the
/// returned witness has `t` already substituted away.
pub fn lp_feasible(sys: &LinearSystem) -> Feasibility {
    let n = sys.num_vars;
    let mut nonneg = vec![false; n];
    for &i in &sys.nonneg_vars {
        nonneg[i] = true;
    }
    let has_strict = sys
        .constraints
        .iter()
        .any(|c| matches!(c.relation, Relation::Lt | Relation::Gt));

    let outcome = if has_strict {
        let mut rows = Vec::with_capacity(sys.constraints.len() + 1);
        for c in &sys.constraints {
            let mut coeffs = c.coeffs.clone();
            let (t_coeff, rel) = match c.relation {
                Relation::Le => (BigRational::zero(), simplex::Rel::Le),
                Relation::Lt => (BigRational::one(), simplex::Rel::Le),
                Relation::Eq => (BigRational::zero(), simplex::Rel::Eq),
                Relation::Ge => (BigRational::zero(), simplex::Rel::Ge),
                Relation::Gt => (-BigRational::one(), simplex::Rel::Ge),
            };
            coeffs.push(t_coeff);
            rows.push((coeffs, rel, c.rhs.clone()));
        }
        let mut cap = vec![BigRational::zero(); n + 1];
        cap[n] = BigRational::one();
        rows.push((cap.clone(), simplex::Rel::Le, BigRational::one()));
        nonneg.push(true);
        let problem = simplex::Problem {
            num_vars: n + 1,
            rows,
            nonneg,
            objective: cap,
        };
        match simplex::solve(&problem) {
            simplex::Outcome::Infeasible => return Feasibility::Infeasible,
            simplex::Outcome::Unbounded => unreachable!("slack t is capped at 1"),
            simplex::Outcome::Optimal { point, value } => {
                if value.is_positive() {
                    simplex::Outcome::Optimal {
                        point: point[..n].to_vec(),
                        value,
                    }
                } else {
                    return Feasibility::Infeasible;
                }
            }
        }
    } else {
        let rows = sys
            .constraints
            .iter()
            .map(|c| {
                let rel = match c.relation {
                    Relation::Le => simplex::Rel::Le,
                    Relation::Eq => simplex::Rel::Eq,
                    Relation::Ge => simplex::Rel::Ge,
                    Relation::Lt | Relation::Gt => unreachable!(),
                };
                (c.coeffs.clone(), rel, c.rhs.clone())
            })
            .collect();
        let problem = simplex::Problem {
            num_vars: n,
            rows,
            nonneg,
            objective: vec![BigRational::zero(); n],
        };
        match simplex::solve(&problem) {
            simplex::Outcome::Infeasible => return Feasibility::Infeasible,
            simplex::Outcome::Unbounded => unreachable!("zero objective is bounded"),
            optimal => optimal,
        }
    };

    match outcome {
        simplex::Outcome::Optimal { point, .. } => {
            debug_assert!(sys.satisfied_by(&point));
            Feasibility::Feasible(point)
        }
        _ => unreachable!(),
    }
}

/// Exact rational with `p/q` string serialization (plain `p` when `q = 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Frac(pub BigRational);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| BigInt::from_str(t).map_err(|e| format!("bad rational `{s}`: {e}"));
        match s.split_once('/') {
            None => Ok(Frac(BigRational::from(parse_int(s)?))),
            Some((p, q)) => {
                let denom = parse_int(q)?;
                if denom.is_zero() {
                    return Err(format!("bad rational `{s}`: zero denominator"));
                }
                Ok(Frac(BigRational::new(parse_int(p)?, denom)))
            }
        }
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A witness that a subset of `Φ_V` is handled. Indices are Φ_V-local;
/// `omega_index` refers to [`Grading::omega`], `beta` to [`Grading::s_g`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    FFunction {
        #[serde(with = "f_map")]
        f: BTreeMap<usize, Frac>,
    },
    Cond1 { omega_index: usize },
    Cond2 { a: Vec<i64> },
    Cond3 { beta: usize, alpha: usize, a: Vec<i64> },
}

/// JSON objects key on strings, so the f map round-trips through stringified
/// Φ_V indices.
mod f_map {
    use super::Frac;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        f: &BTreeMap<usize, Frac>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        f.iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<String, Frac>>()
            .serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<usize, Frac>, D::Error> {
        let raw = BTreeMap::<String, Frac>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|e| serde::de::Error::custom(format!("bad f index `{k}`: {e}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("malformed certificate: {0}")]
pub struct MalformedCertificate(pub String);

/// Condition 1: the first `ω ∈ Ω` with `ω(Φ_V^+ − S_H) ⊆ M`, if any.
pub fn check_condition_1(g: &Grading, m: &PhiVSet) -> Option<Certificate> {
    g.omega()
        .iter()
        .position(|w| w.cusp_support.is_subset_of(m))
        .map(|omega_index| Certificate::Cond1 { omega_index })
}

/// Condition 2: a nonzero integer vector `a` with `Σ a_i n_i(α) ≤ 0` for all
/// `α ∈ Φ_V − M`, if one exists.
///
/// Roots of `Φ_V − M` that occur together with their negatives force
/// equalities `Σ a_i n_i(α) = 0`, so the search space is the kernel of their
/// `n`-vectors; the remaining constraints are probed by fixing each
/// coordinate of `a` to ±1 in turn (any nonzero solution can be scaled so
/// that some coordinate is ±1, so the 2r probes are exhaustive).
pub fn check_condition_2(g: &Grading, m: &PhiVSet) -> Option<Certificate> {
    cond2_vector(g, m).map(|a| Certificate::Cond2 { a })
}

fn cond2_vector(g: &Grading, m: &PhiVSet) -> Option<Vec<i64>> {
    let r = g.rank();
    let complement = m.complement();

    let mut echelon = IntEchelon::new(r);
    let mut unpaired: Vec<usize> = Vec::new();
    for local in complement.iter() {
        let neg = g.phi_v_negation(local);
        if complement.contains(neg) {
            if local < neg {
                echelon.insert(g.n_scaled_phi_v(local));
            }
        } else {
            unpaired.push(local);
        }
    }
    let kernel = echelon.kernel();
    if kernel.is_empty() {
        return None;
    }
    if unpaired.is_empty() {
        return Some(kernel[0].clone());
    }

    let d = kernel.len();
    for j in 0..r {
        for sign in [1i64, -1] {
            let mut sys = LinearSystem::new(d);
            for &local in &unpaired {
                let nv = g.n_scaled_phi_v(local);
                let coeffs = kernel
                    .iter()
                    .map(|w| crate::linalg::from_int(dot(nv, w)))
                    .collect();
                sys.constrain(coeffs, Relation::Le, BigRational::zero());
            }
            let pin = kernel
                .iter()
                .map(|w| crate::linalg::from_int(w[j]))
                .collect();
            sys.constrain(pin, Relation::Eq, crate::linalg::from_int(sign));
            if let Feasibility::Feasible(z) = lp_feasible(&sys) {
                let a_rat: Vec<BigRational> = (0..r)
                    .map(|i| {
                        z.iter()
                            .zip(&kernel)
                            .map(|(zk, w)| zk * crate::linalg::from_int(w[i]))
                            .sum()
                    })
                    .collect();
                return Some(primitive_integer_vector(&a_rat));
            }
        }
    }
    None
}

/// Condition 3: searches `β ∈ S_G` satisfying the root-string closure (a),
/// then `α ∈ candidates` with `α − β ∈ Φ_V − M` (b), then requires the
/// condition-2 system for `M ∪ {α}` (c). Callers restrict `candidates` to
/// `M_1`, matching how the certificates are used downstream.
pub fn check_condition_3(g: &Grading, m: &PhiVSet, candidates: &PhiVSet) -> Option<Certificate> {
    debug_assert!(candidates.is_disjoint_from(m));
    for (bj, beta) in g.s_g().iter().enumerate() {
        let closed = m.iter().all(|local| {
            let gamma = g.phi_v_root(local);
            [gamma.sum(beta), gamma.difference(beta)]
                .iter()
                .all(|shift| match g.phi_v_index(shift) {
                    Some(s) => m.contains(s),
                    None => true,
                })
        });
        if !closed {
            continue;
        }
        for alpha in candidates.iter() {
            let diff = g.phi_v_root(alpha).difference(beta);
            match g.phi_v_index(&diff) {
                Some(d) if !m.contains(d) => {}
                _ => continue,
            }
            if let Some(a) = cond2_vector(g, &m.with(alpha)) {
                return Some(Certificate::Cond3 { beta: bj, alpha, a });
            }
        }
    }
    None
}

/// Solves the f-function system for a cusp datum `(M_0, M_1)`: nonnegative
/// `f` on `M_1` with `Σ f(α) < #M_0` and, for each `i`,
/// `Σ_{Φ_G^+} n_i − Σ_{M_0} n_i + Σ_{M_1} f(α) n_i(α) > 0`.
pub fn solve_f(g: &Grading, m0: &PhiVSet, m1: &PhiVSet) -> Option<Certificate> {
    if m0.is_empty() {
        return None;
    }
    debug_assert!(m1.is_disjoint_from(m0));
    let r = g.rank();
    let vars: Vec<usize> = m1.to_indices();
    let mut sys = LinearSystem::new(vars.len());
    sys.nonneg_vars = (0..vars.len()).collect();

    let ones = vec![BigRational::one(); vars.len()];
    sys.constrain(ones, Relation::Lt, crate::linalg::from_int(m0.card() as i64));

    // Row i, scaled by the common denominator L of the n_i:
    //   Σ_k L·n_i(α_k) f_k  >  Σ_{M_0} L·n_i  −  L·Σ_{Φ_G^+} n_i.
    let l = g.n_denominator();
    for i in 0..r {
        let coeffs = vars
            .iter()
            .map(|&local| crate::linalg::from_int(g.n_scaled_phi_v(local)[i]))
            .collect();
        let m0_sum: i64 = m0.iter().map(|local| g.n_scaled_phi_v(local)[i]).sum();
        let rhs = m0_sum - l * g.sum_n_phi_g_pos()[i];
        sys.constrain(coeffs, Relation::Gt, crate::linalg::from_int(rhs));
    }

    match lp_feasible(&sys) {
        Feasibility::Feasible(values) => {
            let f = vars
                .into_iter()
                .zip(values)
                .map(|(local, value)| (local, Frac(value)))
                .collect();
            Some(Certificate::FFunction { f })
        }
        Feasibility::Infeasible => None,
    }
}

/// Re-checks a certificate against the defining inequalities from scratch,
/// without touching the simplex. Structural defects (indices out of range,
/// zero vectors, `f` supported outside `M_1`, negative `f` values) are
/// reported as [`MalformedCertificate`]; a well-formed certificate that does
/// not prove its claim yields `Ok(false)`.
pub fn verify_certificate(
    g: &Grading,
    m0: &PhiVSet,
    m1: &PhiVSet,
    cert: &Certificate,
) -> Result<bool, MalformedCertificate> {
    let r = g.rank();
    match cert {
        Certificate::FFunction { f } => {
            for (&local, value) in f {
                if !m1.contains(local) {
                    return Err(MalformedCertificate(format!(
                        "f is supported on {local} which is not in M1"
                    )));
                }
                if value.0.is_negative() {
                    return Err(MalformedCertificate(format!("f({local}) is negative")));
                }
            }
            let total: BigRational = f.values().map(|v| v.0.clone()).sum();
            if total >= crate::linalg::from_int(m0.card() as i64) {
                return Ok(false);
            }
            let l = crate::linalg::from_int(g.n_denominator());
            for i in 0..r {
                let mut lhs = crate::linalg::from_int(g.sum_n_phi_g_pos()[i]);
                for local in m0.iter() {
                    lhs -= crate::linalg::from_int(g.n_scaled_phi_v(local)[i]) / &l;
                }
                for (&local, value) in f {
                    lhs += &value.0 * crate::linalg::from_int(g.n_scaled_phi_v(local)[i]) / &l;
                }
                if !lhs.is_positive() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::Cond1 { omega_index } => {
            let w = g.omega().get(*omega_index).ok_or_else(|| {
                MalformedCertificate(format!("omega index {omega_index} out of range"))
            })?;
            Ok(w.cusp_support.is_subset_of(m0))
        }
        Certificate::Cond2 { a } => {
            check_a_vector(a, r)?;
            Ok(a_dominates(g, m0, None, a))
        }
        Certificate::Cond3 { beta, alpha, a } => {
            check_a_vector(a, r)?;
            if *beta >= r {
                return Err(MalformedCertificate(format!("beta index {beta} out of range")));
            }
            if *alpha >= g.num_phi_v() {
                return Err(MalformedCertificate(format!(
                    "alpha index {alpha} out of range"
                )));
            }
            if m0.contains(*alpha) {
                return Ok(false);
            }
            let beta_root = &g.s_g()[*beta];
            let closed = m0.iter().all(|local| {
                let gamma = g.phi_v_root(local);
                [gamma.sum(beta_root), gamma.difference(beta_root)]
                    .iter()
                    .all(|shift| match g.phi_v_index(shift) {
                        Some(s) => m0.contains(s),
                        None => true,
                    })
            });
            if !closed {
                return Ok(false);
            }
            let diff = g.phi_v_root(*alpha).difference(beta_root);
            match g.phi_v_index(&diff) {
                Some(d) if !m0.contains(d) => {}
                _ => return Ok(false),
            }
            Ok(a_dominates(g, m0, Some(*alpha), a))
        }
    }
}

fn check_a_vector(a: &[i64], rank: usize) -> Result<(), MalformedCertificate> {
    if a.len() != rank {
        return Err(MalformedCertificate(format!(
            "vector a has length {}, expected {rank}",
            a.len()
        )));
    }
    if a.iter().all(|&c| c == 0) {
        return Err(MalformedCertificate("vector a is zero".into()));
    }
    Ok(())
}

/// True when `Σ a_i n_i(γ) ≤ 0` for every `γ ∈ Φ_V − M` other than the
/// optional exception.
fn a_dominates(g: &Grading, m: &PhiVSet, exception: Option<usize>, a: &[i64]) -> bool {
    m.complement().iter().all(|local| {
        Some(local) == exception || dot(g.n_scaled_phi_v(local), a) <= 0
    })
}

fn dot(xs: &[i64], ys: &[i64]) -> i64 {
    xs.iter().zip(ys).map(|(x, y)| x * y).sum()
}

fn primitive_integer_vector(values: &[BigRational]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    assert!(!gcd.is_zero(), "cannot scale the zero vector");
    ints.iter()
        .map(|i| (i / &gcd).to_i64().expect("witness entries are small"))
        .collect()
}

/// Incremental integer row echelon over ≤ 8 columns, used to find the exact
/// kernel of the paired constraint rows. Rows are kept gcd-reduced so the
/// i128 intermediates stay far from overflow at these sizes.
struct IntEchelon {
    cols: usize,
    rows: Vec<Vec<i128>>, // sorted by pivot column
}

impl IntEchelon {
    fn new(cols: usize) -> Self {
        IntEchelon {
            cols,
            rows: Vec::new(),
        }
    }

    fn insert(&mut self, row: &[i64]) {
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for existing in &self.rows {
            let p = pivot_col(existing).expect("stored rows are nonzero");
            if v[p] != 0 {
                let (ep, vp) = (existing[p], v[p]);
                for j in 0..self.cols {
                    v[j] = v[j] * ep - existing[j] * vp;
                }
                reduce_row(&mut v);
            }
        }
        if pivot_col(&v).is_some() {
            reduce_row(&mut v);
            self.rows.push(v);
            self.rows
                .sort_by_key(|r| pivot_col(r).expect("rows are nonzero"));
        }
    }

    /// Primitive integer basis of the null space.
    fn kernel(&self) -> Vec<Vec<i64>> {
        let pivots: Vec<usize> = self
            .rows
            .iter()
            .map(|r| pivot_col(r).expect("rows are nonzero"))
            .collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (row, &p) in self.rows.iter().zip(&pivots).rev() {
                    let mut acc = BigRational::zero();
                    for j in p + 1..self.cols {
                        if row[j] != 0 && !x[j].is_zero() {
                            acc += BigRational::from(BigInt::from(row[j])) * &x[j];
                        }
                    }
                    x[p] = -acc / BigRational::from(BigInt::from(row[p]));
                }
                primitive_integer_vector(&x)
            })
            .collect()
    }
}

fn pivot_col(row: &[i128]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

fn reduce_row(row: &mut [i128]) {
    let mut gcd: i128 = 0;
    for &x in row.iter() {
        gcd = gcd.gcd(&x);
    }
    if gcd > 1 {
        for x in row.iter_mut() {
            *x /= gcd;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::compute_grading;
    use crate::linalg::{from_int, rational};
    use crate::rootsys::build_root_system;

    fn grading(name: &str) -> Grading {
        compute_grading(build_root_system(name.parse().unwrap())).unwrap()
    }

    #[test]
    fn strictly_positive_single_variable() {
        let mut sys = LinearSystem::new(1);
        sys.constrain(vec![from_int(1)], Relation::Gt, from_int(0));
        let Feasibility::Feasible(w) = lp_feasible(&sys) else {
            panic!("{{x > 0}} must be feasible");
        };
        assert!(w[0].is_positive());
    }

    #[test]
    fn contradictory_strict_pair_is_infeasible() {
        let mut sys = LinearSystem::new(1);
        sys.constrain(vec![from_int(1)], Relation::Gt, from_int(0));
        sys.constrain(vec![from_int(-1)], Relation::Gt, from_int(0));
        assert_eq!(lp_feasible(&sys), Feasibility::Infeasible);
    }

    #[test]
    fn mixed_system_returns_verified_witness() {
        // x + y ≤ 1, x ≥ 0, y ≥ 0, x + 2y > 3/2.
        let mut sys = LinearSystem::new(2);
        sys.nonneg_vars = vec![0, 1];
        sys.constrain(vec![from_int(1), from_int(1)], Relation::Le, from_int(1));
        sys.constrain(vec![from_int(1), from_int(2)], Relation::Gt, rational(3, 2));
        let Feasibility::Feasible(w) = lp_feasible(&sys) else {
            panic!("system is feasible, e.g. (0, 7/8)");
        };
        assert!(sys.satisfied_by(&w));
    }

    #[test]
    fn feasibility_is_invariant_under_positive_row_scaling() {
        let mut base = LinearSystem::new(2);
        base.nonneg_vars = vec![0, 1];
        base.constrain(vec![from_int(2), from_int(-3)], Relation::Ge, from_int(1));
        base.constrain(vec![from_int(-1), from_int(1)], Relation::Gt, from_int(-2));
        let mut scaled = base.clone();
        for (k, c) in scaled.constraints.iter_mut().enumerate() {
            let factor = rational(3 + 2 * k as i64, 7);
            for coeff in c.coeffs.iter_mut() {
                *coeff *= factor.clone();
            }
            c.rhs *= factor;
        }
        assert_eq!(
            lp_feasible(&base).is_feasible(),
            lp_feasible(&scaled).is_feasible()
        );
    }

    #[test]
    fn cond1_identity_on_full_support() {
        let g = grading("E7");
        let support = g.phi_v_positive().difference(&g.simple_roots_set());
        let cert = check_condition_1(&g, &support).expect("identity works");
        assert_eq!(cert, Certificate::Cond1 { omega_index: 0 });
        assert!(verify_certificate(&g, &support, &PhiVSet::empty(70), &cert).unwrap());

        let empty = PhiVSet::empty(g.num_phi_v());
        assert!(check_condition_1(&g, &empty).is_none());
    }

    #[test]
    fn cond1_detects_the_nontrivial_omega_image() {
        let g = grading("E7");
        let image = g.omega()[1].cusp_support;
        let cert = check_condition_1(&g, &image).expect("the nontrivial ω works");
        // ω_1(Φ_V^+ − S_H) differs from the identity image, so the witness
        // must be the nontrivial element.
        assert_eq!(cert, Certificate::Cond1 { omega_index: 1 });
    }

    #[test]
    fn cond2_is_vacuous_on_the_full_set() {
        let g = grading("E7");
        let full = PhiVSet::full(g.num_phi_v());
        let cert = check_condition_2(&g, &full).expect("vacuously feasible");
        assert!(verify_certificate(&g, &full, &PhiVSet::empty(70), &cert).unwrap());
    }

    #[test]
    fn cond2_fails_on_the_empty_set() {
        for name in ["D4", "E7"] {
            let g = grading(name);
            let empty = PhiVSet::empty(g.num_phi_v());
            assert!(check_condition_2(&g, &empty).is_none(), "{name}");
        }
    }

    #[test]
    fn cond2_monotone_under_supersets_on_samples() {
        use rand::{Rng, SeedableRng};
        let g = grading("E7");
        let nv = g.num_phi_v();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut holds = 0;
        for _ in 0..80 {
            let mut m = PhiVSet::empty(nv);
            for i in 0..nv {
                if rng.gen_bool(0.9) {
                    m.insert(i);
                }
            }
            let mut superset = m;
            for i in 0..nv {
                if !superset.contains(i) && rng.gen_bool(0.5) {
                    superset.insert(i);
                }
            }
            if check_condition_2(&g, &m).is_some() {
                holds += 1;
                assert!(
                    check_condition_2(&g, &superset).is_some(),
                    "condition 2 must be monotone: {m} ⊆ {superset}"
                );
            }
        }
        assert!(holds > 0, "sample should contain positive instances");
    }

    #[test]
    fn cond3_fails_on_the_empty_set() {
        let g = grading("E7");
        let empty = PhiVSet::empty(g.num_phi_v());
        let candidates = PhiVSet::full(g.num_phi_v());
        assert!(check_condition_3(&g, &empty, &candidates).is_none());
    }

    #[test]
    fn solve_f_at_the_root_datum_of_e7() {
        let g = grading("E7");
        let nv = g.num_phi_v();
        let m0 = PhiVSet::singleton(nv, g.highest_root_local());
        // λ({α_0}) is computed by cuspgen; a conservative stand-in for this
        // test is the empty M1, for which the system degenerates to
        // Σ_{Φ_G^+} n_i > n_i(α_0) componentwise.
        let m1 = PhiVSet::empty(nv);
        let cert = solve_f(&g, &m0, &m1).expect("f ≡ 0 works at the root");
        assert!(verify_certificate(&g, &m0, &m1, &cert).unwrap());
    }

    #[test]
    fn solve_f_rejects_empty_m0() {
        let g = grading("E7");
        let nv = g.num_phi_v();
        assert!(solve_f(&g, &PhiVSet::empty(nv), &PhiVSet::empty(nv)).is_none());
    }

    #[test]
    fn verify_rejects_zero_a_as_malformed() {
        let g = grading("E7");
        let m0 = PhiVSet::full(g.num_phi_v());
        let cert = Certificate::Cond2 { a: vec![0; 7] };
        assert!(matches!(
            verify_certificate(&g, &m0, &PhiVSet::empty(70), &cert),
            Err(MalformedCertificate(_))
        ));
    }

    #[test]
    fn verify_detects_perturbed_f() {
        let g = grading("E7");
        let nv = g.num_phi_v();
        let m0 = PhiVSet::singleton(nv, g.highest_root_local());
        let m1 = PhiVSet::empty(nv);
        let Some(Certificate::FFunction { mut f }) = solve_f(&g, &m0, &m1) else {
            panic!("expected an f certificate");
        };
        // Perturb by +#M0 on some α ∈ M1; with empty M1 use a forged entry,
        // which must be flagged malformed instead.
        f.insert(0, Frac(from_int(1)));
        let forged = Certificate::FFunction { f };
        assert!(matches!(
            verify_certificate(&g, &m0, &m1, &forged),
            Err(MalformedCertificate(_))
        ));
    }

    #[test]
    fn kernel_of_full_rank_system_is_empty() {
        let mut ech = IntEchelon::new(3);
        ech.insert(&[1, 0, 0]);
        ech.insert(&[0, 2, 0]);
        ech.insert(&[1, 1, 5]);
        assert!(ech.kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate_inserted_rows() {
        let rows: Vec<Vec<i64>> = vec![vec![2, -4, 2, 0], vec![1, 1, -3, 1]];
        let mut ech = IntEchelon::new(4);
        for row in &rows {
            ech.insert(row);
        }
        let kernel = ech.kernel();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            for row in &rows {
                assert_eq!(dot(row, v), 0);
            }
            let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            assert_eq!(g, 1, "kernel vectors are primitive");
        }
    }
}
