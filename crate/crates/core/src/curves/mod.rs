//! The two families of affine plane curves attached to the graded types:
//!
//! * genus 3: `y³ = x³y + c₁₀x² + x(c₂y² + c₈y + c₁₄) + c₆y² + c₁₂y + c₁₈`
//! * genus 4: `y³ = x⁵ + y(c₂x³ + c₈x² + c₁₄x + c₂₀) + c₁₂x³ + c₁₈x² + c₂₄x + c₃₀`
//!
//! with weighted-homogeneity checks against the `G_m`-weight tables
//! (`wt(c_i) = 2i`, `wt(x,y) = (8,12)` resp. `(12,20)`), exact point counts
//! over `F_{2^k}`, smoothness search over the algebraic closure, and
//! L-polynomial reconstruction from point counts via [`l_polynomial`].
//!
//! Coefficients are integers and are reduced mod 2 for finite-field work, so
//! every curve handled here is defined over the prime field F_2.

pub mod gf2k;
mod heights;
mod lpoly;

pub use heights::{
    count_bounded_height, fit_exponent, geometric_ladder, height, height_less_than, HeightSpec,
};
pub use lpoly::{jacobian_order_f2, l_polynomial, LPolynomial};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gf2k::Gf2k;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveCase {
    E7,
    E8,
}

impl CurveCase {
    pub fn genus(&self) -> usize {
        match self {
            CurveCase::E7 => 3,
            CurveCase::E8 => 4,
        }
    }

    pub fn coefficient_names(&self) -> &'static [&'static str] {
        match self {
            CurveCase::E7 => &["c2", "c6", "c8", "c10", "c12", "c14", "c18"],
            CurveCase::E8 => &["c2", "c8", "c12", "c14", "c18", "c20", "c24", "c30"],
        }
    }

    /// Degrees of the invariant coordinates (the `i` of each `c_i`).
    pub fn degrees(&self) -> &'static [u32] {
        match self {
            CurveCase::E7 => &[2, 6, 8, 10, 12, 14, 18],
            CurveCase::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    /// Number of rational points on the smooth completion beyond the affine
    /// chart: two sections at infinity for the plane quartic, one for the
    /// genus-4 family.
    pub fn points_at_infinity(&self) -> u64 {
        match self {
            CurveCase::E7 => 2,
            CurveCase::E8 => 1,
        }
    }
}

impl fmt::Display for CurveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveCase::E7 => write!(f, "E7"),
            CurveCase::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for CurveCase {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E7" | "e7" => Ok(CurveCase::E7),
            "E8" | "e8" => Ok(CurveCase::E8),
            other => Err(CurveError::UnknownCase(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("unknown curve case `{0}` (expected E7 or E8)")]
    UnknownCase(String),
    #[error("coefficient set mismatch: expected {expected:?}")]
    WrongCoefficients { expected: Vec<String> },
    #[error("field F_2^{k} is out of the supported brute-force range")]
    FieldTooLarge { k: u32 },
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("point counts are inconsistent at extension degree {k}")]
    InconsistentCounts { k: u32 },
}

/// One monomial `±c·x^dx·y^dy` of the defining polynomial, written with the
/// curve equation moved to one side (`F = 0`).
#[derive(Debug, Clone, Copy)]
struct Term {
    coeff: Option<&'static str>,
    dx: u32,
    dy: u32,
}

fn defining_terms(case: CurveCase) -> &'static [Term] {
    match case {
        // y³ − x³y − c10·x² − c2·xy² − c8·xy − c14·x − c6·y² − c12·y − c18
        CurveCase::E7 => &[
            Term { coeff: None, dx: 0, dy: 3 },
            Term { coeff: None, dx: 3, dy: 1 },
            Term { coeff: Some("c10"), dx: 2, dy: 0 },
            Term { coeff: Some("c2"), dx: 1, dy: 2 },
            Term { coeff: Some("c8"), dx: 1, dy: 1 },
            Term { coeff: Some("c14"), dx: 1, dy: 0 },
            Term { coeff: Some("c6"), dx: 0, dy: 2 },
            Term { coeff: Some("c12"), dx: 0, dy: 1 },
            Term { coeff: Some("c18"), dx: 0, dy: 0 },
        ],
        // y³ − x⁵ − c2·x³y − c8·x²y − c14·xy − c20·y − c12·x³ − c18·x² − c24·x − c30
        CurveCase::E8 => &[
            Term { coeff: None, dx: 0, dy: 3 },
            Term { coeff: None, dx: 5, dy: 0 },
            Term { coeff: Some("c2"), dx: 3, dy: 1 },
            Term { coeff: Some("c8"), dx: 2, dy: 1 },
            Term { coeff: Some("c14"), dx: 1, dy: 1 },
            Term { coeff: Some("c20"), dx: 0, dy: 1 },
            Term { coeff: Some("c12"), dx: 3, dy: 0 },
            Term { coeff: Some("c18"), dx: 2, dy: 0 },
            Term { coeff: Some("c24"), dx: 1, dy: 0 },
            Term { coeff: Some("c30"), dx: 0, dy: 0 },
        ],
    }
}

/// `G_m`-weights for one curve family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub case: CurveCase,
    pub coefficient_weights: BTreeMap<&'static str, u32>,
    pub x: u32,
    pub y: u32,
}

impl WeightTable {
    /// The published table: `wt(c_i) = 2i`, `wt(x, y) = (8, 12)` for the
    /// quartic family and `(12, 20)` for the genus-4 family.
    pub fn standard(case: CurveCase) -> WeightTable {
        let coefficient_weights = case
            .coefficient_names()
            .iter()
            .zip(case.degrees())
            .map(|(&name, &deg)| (name, 2 * deg))
            .collect();
        let (x, y) = match case {
            CurveCase::E7 => (8, 12),
            CurveCase::E8 => (12, 20),
        };
        WeightTable {
            case,
            coefficient_weights,
            x,
            y,
        }
    }
}

/// Checks that every monomial of the defining equation has the same total
/// weight under `table`; returns that weight if so.
pub fn homogeneity_check_with(table: &WeightTable) -> Option<u32> {
    let mut weights = defining_terms(table.case).iter().map(|t| {
        let coeff_weight = t.coeff.map_or(0, |name| table.coefficient_weights[name]);
        coeff_weight + t.dx * table.x + t.dy * table.y
    });
    let first = weights.next().expect("equations are non-empty");
    weights.all(|w| w == first).then_some(first)
}

/// Weighted homogeneity of the defining equation under the standard table.
pub fn homogeneity_check(case: CurveCase) -> Option<u32> {
    homogeneity_check_with(&WeightTable::standard(case))
}

/// A member of one of the two families with integer coefficients. Finite
/// field computations reduce the coefficients mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    case: CurveCase,
    coeffs: BTreeMap<String, i64>,
}

impl CurveSpec {
    pub fn new(case: CurveCase, coeffs: BTreeMap<String, i64>) -> Result<CurveSpec, CurveError> {
        let expected: Vec<String> = case
            .coefficient_names()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let found: Vec<&String> = coeffs.keys().collect();
        if found.len() != expected.len() || expected.iter().any(|n| !coeffs.contains_key(n)) {
            return Err(CurveError::WrongCoefficients { expected });
        }
        Ok(CurveSpec { case, coeffs })
    }

    /// All coefficients zero; the cuspidal member of the family.
    pub fn zero(case: CurveCase) -> CurveSpec {
        let coeffs = case
            .coefficient_names()
            .iter()
            .map(|&n| (n.to_string(), 0))
            .collect();
        CurveSpec { case, coeffs }
    }

    /// The F_2 test curve of the corresponding family:
    /// `y³ = x³y + y + 1` (genus 3) or `y³ = x⁵ + y(x³ + x²) + x³ + 1`
    /// (genus 4).
    pub fn f2_test_curve(case: CurveCase) -> CurveSpec {
        let mut curve = CurveSpec::zero(case);
        let ones: &[&str] = match case {
            CurveCase::E7 => &["c12", "c18"],
            CurveCase::E8 => &["c2", "c8", "c12", "c30"],
        };
        for name in ones {
            curve.coeffs.insert(name.to_string(), 1);
        }
        curve
    }

    pub fn case(&self) -> CurveCase {
        self.case
    }

    pub fn coefficient(&self, name: &str) -> i64 {
        self.coeffs[name]
    }

    fn coeff_bit(&self, name: &str) -> u32 {
        (self.coeffs[name].rem_euclid(2)) as u32
    }
}

/// The affine polynomial `F` and its formal partials over F_2, as generic
/// monomial lists with 0/1 coefficients baked in from `curve`.
struct ReducedPoly {
    terms: Vec<(u32, u32)>, // (dx, dy), coefficient 1, char 2
}

impl ReducedPoly {
    fn eval(&self, field: &Gf2k, x: u32, y: u32) -> u32 {
        let mut acc = 0u32;
        for &(dx, dy) in &self.terms {
            acc ^= field.mul(field.pow(x, dx), field.pow(y, dy));
        }
        acc
    }

    fn derivative(&self, with_respect_to_x: bool) -> ReducedPoly {
        let mut terms = Vec::new();
        for &(dx, dy) in &self.terms {
            let (exp, other) = if with_respect_to_x { (dx, dy) } else { (dy, dx) };
            // d/du u^e = e·u^{e−1}; in characteristic 2 only odd e survive.
            if exp % 2 == 1 {
                let reduced = exp - 1;
                if with_respect_to_x {
                    terms.push((reduced, other));
                } else {
                    terms.push((other, reduced));
                }
            }
        }
        ReducedPoly { terms }.simplified()
    }

    /// Cancels duplicate monomials in pairs (coefficients live in F_2).
    fn simplified(mut self) -> ReducedPoly {
        self.terms.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::new();
        for t in self.terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        ReducedPoly { terms: out }
    }
}

fn reduced_affine_poly(curve: &CurveSpec) -> ReducedPoly {
    let terms = defining_terms(curve.case)
        .iter()
        .filter(|t| t.coeff.is_none_or(|name| curve.coeff_bit(name) == 1))
        .map(|t| (t.dx, t.dy))
        .collect();
    ReducedPoly { terms }.simplified()
}

/// Exact count of affine points `(x, y) ∈ F_{2^k}²` on the curve.
pub fn count_affine_points(curve: &CurveSpec, k: u32) -> Result<u64, CurveError> {
    if !(1..=16).contains(&k) {
        return Err(CurveError::FieldTooLarge { k });
    }
    let field = Gf2k::new(k);
    let poly = reduced_affine_poly(curve);
    let mut count = 0u64;
    for x in field.elements() {
        for y in field.elements() {
            if poly.eval(&field, x, y) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Degree of the extension search used by the smoothness check. The singular
/// locus is contained in the common zeros of the two partials, a scheme of
/// degree at most 3·3 = 9 (genus 3) resp. 4·3 = 12 (genus 4) by Bezout when
/// finite, so closed singular points have residue degree at most 12 over F_2
/// and searching F_{2^m} for m ≤ 12 is exhaustive.
const SMOOTHNESS_SEARCH_DEGREE: u32 = 12;

/// True when the affine curve has no singular point over the algebraic
/// closure of F_2 (coefficients are reduced mod 2 first).
pub fn is_smooth_affine(curve: &CurveSpec) -> bool {
    let poly = reduced_affine_poly(curve);
    let fx = poly.derivative(true);
    let fy = poly.derivative(false);
    for m in 1..=SMOOTHNESS_SEARCH_DEGREE {
        let field = Gf2k::new(m);
        for x in field.elements() {
            for y in field.elements() {
                if poly.eval(&field, x, y) == 0
                    && fx.eval(&field, x, y) == 0
                    && fy.eval(&field, x, y) == 0
                {
                    return false;
                }
            }
        }
    }
    true
}

/// For the plane quartic, the two points at infinity in the charts `y₀ = 1`
/// and `x₀ = 1` of the projective closure; both must lie on the curve and be
/// non-singular. Returns false if either chart point is singular.
fn e7_smooth_at_infinity(curve: &CurveSpec) -> bool {
    // Homogenize F (degree 4) with z₀ and inspect the two chart origins.
    // Chart y₀ = 1, P₁ = (x₀, z₀) = (0, 0): the z₀-partial picks up the
    // monomial y₀³z₀ ↦ z₀, constant coefficient 1, so ∂/∂z₀(0,0) = 1 always;
    // chart x₀ = 1, P₂ = (y₀, z₀) = (0, 0): the y₀-partial of x₀³y₀ ↦ y₀ is
    // likewise 1. Both points lie on the curve since every other monomial
    // carries a positive power of z₀. Evaluate generically anyway over F_2.
    let field = Gf2k::new(1);
    let quartic: Vec<(u32, u32, u32, u32)> = defining_terms(CurveCase::E7)
        .iter()
        .filter(|t| t.coeff.is_none_or(|n| curve.coeff_bit(n) == 1))
        .map(|t| {
            let dz = 4 - t.dx - t.dy;
            (t.dx, t.dy, dz, 1u32)
        })
        .collect();
    let eval_chart = |fix_x: bool, u: u32, v: u32| -> (u32, u32, u32) {
        // fix_x: chart x₀ = 1 with coords (u, v) = (y₀, z₀);
        // else chart y₀ = 1 with coords (u, v) = (x₀, z₀).
        let mut value = 0u32;
        let mut du = 0u32;
        let mut dv = 0u32;
        for &(dx, dy, dz, c) in &quartic {
            let (eu, ev) = if fix_x { (dy, dz) } else { (dx, dz) };
            let term = field.mul(c, field.mul(field.pow(u, eu), field.pow(v, ev)));
            value ^= term;
            if eu % 2 == 1 {
                du ^= field.mul(c, field.mul(field.pow(u, eu - 1), field.pow(v, ev)));
            }
            if ev % 2 == 1 {
                dv ^= field.mul(c, field.mul(field.pow(u, eu), field.pow(v, ev - 1)));
            }
        }
        (value, du, dv)
    };
    for fix_x in [false, true] {
        let (value, du, dv) = eval_chart(fix_x, 0, 0);
        if value != 0 || (du == 0 && dv == 0) {
            return false;
        }
    }
    true
}

/// True when the projective model of the curve is smooth: the affine part
/// has no singular closed point and, for the quartic family, the two points
/// at infinity are checked in their charts. For the genus-4 family the
/// weighted completion is smooth at its unique section by construction.
pub fn is_smooth_projective(curve: &CurveSpec) -> bool {
    let infinity_ok = match curve.case {
        CurveCase::E7 => e7_smooth_at_infinity(curve),
        CurveCase::E8 => true,
    };
    infinity_ok && is_smooth_affine(curve)
}

/// Point count on the smooth projective model over `F_{2^k}`: affine points
/// plus the rational points at infinity (two for genus 3, one for genus 4;
/// in both families these are the only points at infinity over every
/// extension).
pub fn projective_point_count(curve: &CurveSpec, k: u32) -> Result<u64, CurveError> {
    if !is_smooth_projective(curve) {
        return Err(CurveError::NotSmooth);
    }
    Ok(count_affine_points(curve, k)? + curve.case.points_at_infinity())
}
