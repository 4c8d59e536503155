//! The Z/2-grading of a simply-laced root system by height parity.
//!
//! The involution `Ad(ρ̌(−1))` acts on the root space of `α` as `(−1)^{⟨α,ρ̌⟩}`
//! and `⟨α, ρ̌⟩` is the height of `α`, so the fixed part `Φ_G` consists of the
//! even-height roots and the odd part `Φ_V` of the odd-height ones. This
//! module computes that split, the root basis `S_G = {β_1, …, β_r}` of `Φ_G`
//! whose positive system is `Φ_G ∩ Φ_H^+` (as the indecomposable elements of
//! that positive system), the rational coordinate functions `n_i` with
//! `γ = Σ n_i(γ) β_i`, and the group `Ω` of Weyl elements permuting `S_G`.
//!
//! For E7 and E8 the basis `S_G` is numbered to match the published tables
//! (type A7 resp. D8), and `Ω` is obtained by extending the diagram
//! automorphisms of `S_G` linearly and keeping the maps that permute the
//! roots of the ambient system. This is exhaustive for E7/E8 because there
//! every automorphism of the root system already lies in the Weyl group,
//! which avoids enumerating Weyl groups with up to ~7·10^8 elements.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::linalg;
use crate::rootsys::{CartanType, Family, Root, RootSystem};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GradingError {
    #[error(
        "the indecomposable even-height positive roots do not form a basis \
         (found {found}, need {rank}); the grading is degenerate for this type"
    )]
    BasisDegenerate { found: usize, rank: usize },
    #[error("computed S_G does not match the published table for {0}")]
    BasisTableMismatch(CartanType),
    #[error("Ω enumeration is only supported for types E7 and E8, got {0}")]
    OmegaUnsupported(CartanType),
}

/// A subset of `Φ_V`, stored as a bitmask over the Φ_V-local root indices
/// (0-based positions in [`Grading::phi_v`]). `#Φ_V ≤ 128` for every
/// supported type, so a `u128` suffices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiVSet {
    bits: u128,
    len: u32,
}

impl PhiVSet {
    pub fn empty(len: usize) -> Self {
        assert!(len <= 128);
        PhiVSet {
            bits: 0,
            len: len as u32,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        set.bits = if len == 128 {
            u128::MAX
        } else {
            (1u128 << len) - 1
        };
        set
    }

    pub fn singleton(len: usize, index: usize) -> Self {
        let mut set = Self::empty(len);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe_len(&self) -> usize {
        self.len as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.len as usize && self.bits >> index & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.len as usize);
        self.bits |= 1 << index;
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.len as usize);
        self.bits &= !(1 << index);
    }

    pub fn with(&self, index: usize) -> Self {
        let mut set = *self;
        set.insert(index);
        set
    }

    pub fn card(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        PhiVSet {
            bits: self.bits | other.bits,
            len: self.len,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        PhiVSet {
            bits: self.bits & other.bits,
            len: self.len,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        PhiVSet {
            bits: self.bits & !other.bits,
            len: self.len,
        }
    }

    pub fn complement(&self) -> Self {
        Self::full(self.len as usize).difference(self)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len as usize;
        (0..len).filter(move |&i| self.bits >> i & 1 == 1)
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for PhiVSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An element of `Ω` with the derived data used by the reducibility checks.
#[derive(Debug, Clone)]
pub struct OmegaElement {
    /// Action on simple-root coordinates.
    pub matrix: Vec<Vec<i64>>,
    /// Permutation induced on Φ_V-local indices.
    pub phi_v_perm: Vec<usize>,
    /// Image of `Φ_V^+ − S_H` as a Φ_V-local set.
    pub cusp_support: PhiVSet,
}

/// The height-parity grading of a root system, with everything downstream
/// needs precomputed: Φ_V indexing, integer-scaled `n_i` vectors, and `Ω`.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct Grading {
    rs: RootSystem,
    phi_g: Vec<usize>,
    phi_v: Vec<usize>,
    phi_v_local: HashMap<Vec<i64>, usize>,
    s_g: Vec<Root>,
    basis_matrix: Vec<Vec<i64>>,
    n_matrix: Vec<Vec<BigRational>>,
    /// `n_scaled_matrix = n_denom · n_matrix`, entrywise integral.
    n_scaled_matrix: Vec<Vec<i64>>,
    n_denom: i64,
    /// `n_denom · n(root)` for every Φ_V-local index.
    n_scaled_phi_v: Vec<Vec<i64>>,
    /// `Σ_{γ ∈ Φ_G^+} n(γ)`, exact (entrywise a nonnegative integer).
    sum_n_phi_g_pos: Vec<i64>,
    phi_v_positive: PhiVSet,
    simple_roots: PhiVSet,
    /// Local index of `−α` for each Φ_V-local `α`.
    negation: Vec<usize>,
    omega: Vec<OmegaElement>,
    highest_local: usize,
}

const S_G_E7: [[i64; 7]; 7] = [
    [0, 0, 1, 1, 0, 0, 0], // β_1 = α_3 + α_4
    [0, 0, 0, 0, 1, 1, 0], // β_2 = α_5 + α_6
    [0, 1, 0, 1, 0, 0, 0], // β_3 = α_2 + α_4
    [1, 0, 1, 0, 0, 0, 0], // β_4 = α_1 + α_3
    [0, 0, 0, 1, 1, 0, 0], // β_5 = α_4 + α_5
    [0, 0, 0, 0, 0, 1, 1], // β_6 = α_6 + α_7
    [0, 1, 1, 1, 1, 0, 0], // β_7 = α_2 + α_3 + α_4 + α_5
];

const S_G_E8: [[i64; 8]; 8] = [
    [0, 1, 1, 1, 1, 0, 0, 0], // β_1 = α_2 + α_3 + α_4 + α_5
    [0, 0, 0, 0, 0, 1, 1, 0], // β_2 = α_6 + α_7
    [0, 0, 0, 1, 1, 0, 0, 0], // β_3 = α_4 + α_5
    [1, 0, 1, 0, 0, 0, 0, 0], // β_4 = α_1 + α_3
    [0, 1, 0, 1, 0, 0, 0, 0], // β_5 = α_2 + α_4
    [0, 0, 0, 0, 1, 1, 0, 0], // β_6 = α_5 + α_6
    [0, 0, 0, 0, 0, 0, 1, 1], // β_7 = α_7 + α_8
    [0, 0, 1, 1, 0, 0, 0, 0], // β_8 = α_3 + α_4
];

/// Computes the grading of `rs`. Fails with [`GradingError::BasisDegenerate`]
/// when the even-height roots do not span (true for all type-A systems, where
/// the even part has corank one).
pub fn compute_grading(rs: RootSystem) -> Result<Grading, GradingError> {
    Grading::compute(rs)
}

impl Grading {
    pub fn compute(rs: RootSystem) -> Result<Grading, GradingError> {
        let r = rs.rank();

        let mut phi_g = Vec::new();
        let mut phi_v = Vec::new();
        for (i, root) in rs.roots().iter().enumerate() {
            if root.height() % 2 == 0 {
                phi_g.push(i);
            } else {
                phi_v.push(i);
            }
        }
        let phi_v_local: HashMap<Vec<i64>, usize> = phi_v
            .iter()
            .enumerate()
            .map(|(local, &global)| (rs.roots()[global].coords().to_vec(), local))
            .collect();

        // S_G = indecomposable elements of Φ_G^+.
        let phi_g_pos: Vec<&Root> = phi_g
            .iter()
            .map(|&i| &rs.roots()[i])
            .filter(|root| root.is_positive())
            .collect();
        let phi_g_pos_coords: std::collections::HashSet<&[i64]> =
            phi_g_pos.iter().map(|root| root.coords()).collect();
        let mut s_g_set: Vec<Root> = phi_g_pos
            .iter()
            .filter(|gamma| {
                !phi_g_pos.iter().any(|g1| {
                    let rest = gamma.difference(g1);
                    rest != Root::new(vec![0; r]) && phi_g_pos_coords.contains(rest.coords())
                })
            })
            .map(|&root| root.clone())
            .collect();
        if s_g_set.len() != r {
            return Err(GradingError::BasisDegenerate {
                found: s_g_set.len(),
                rank: r,
            });
        }
        s_g_set.sort();

        let s_g: Vec<Root> = match (rs.ctype().family(), rs.ctype().rank()) {
            (Family::E, 7) => published_basis(&s_g_set, &S_G_E7, rs.ctype())?,
            (Family::E, 8) => published_basis(&s_g_set, &S_G_E8, rs.ctype())?,
            _ => s_g_set,
        };

        let mut basis_matrix = vec![vec![0i64; r]; r];
        for (j, beta) in s_g.iter().enumerate() {
            for (i, &c) in beta.coords().iter().enumerate() {
                basis_matrix[i][j] = c;
            }
        }
        let rational_basis: Vec<Vec<BigRational>> = basis_matrix
            .iter()
            .map(|row| row.iter().map(|&e| linalg::from_int(e)).collect())
            .collect();
        let n_matrix = linalg::invert(&rational_basis).ok_or(GradingError::BasisDegenerate {
            found: r,
            rank: r,
        })?;

        let mut n_denom: i64 = 1;
        for row in &n_matrix {
            for entry in row {
                let d = entry
                    .denom()
                    .to_i64()
                    .expect("denominators of n_i are tiny");
                n_denom = n_denom.lcm(&d);
            }
        }
        let n_scaled_matrix: Vec<Vec<i64>> = n_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        let scaled = entry * linalg::from_int(n_denom);
                        assert!(scaled.is_integer());
                        scaled.to_integer().to_i64().expect("entries are tiny")
                    })
                    .collect()
            })
            .collect();

        let n_scaled_phi_v: Vec<Vec<i64>> = phi_v
            .iter()
            .map(|&global| linalg::mat_vec_i64(&n_scaled_matrix, rs.roots()[global].coords()))
            .collect();

        let mut sum_n_phi_g_pos = vec![0i64; r];
        for &global in &phi_g {
            let root = &rs.roots()[global];
            if root.is_positive() {
                let scaled = linalg::mat_vec_i64(&n_scaled_matrix, root.coords());
                for (acc, s) in sum_n_phi_g_pos.iter_mut().zip(scaled) {
                    assert_eq!(s % n_denom, 0, "n_i is integral on Φ_G");
                    *acc += s / n_denom;
                }
            }
        }

        let nv = phi_v.len();
        let phi_v_positive = PhiVSet::from_indices(
            nv,
            phi_v
                .iter()
                .enumerate()
                .filter(|(_, &global)| rs.roots()[global].is_positive())
                .map(|(local, _)| local),
        );
        let simple_roots = PhiVSet::from_indices(
            nv,
            phi_v
                .iter()
                .enumerate()
                .filter(|(_, &global)| rs.roots()[global].height() == 1)
                .map(|(local, _)| local),
        );

        let negation: Vec<usize> = phi_v
            .iter()
            .map(|&global| {
                *phi_v_local
                    .get(rs.roots()[global].negated().coords())
                    .expect("Φ_V is closed under negation")
            })
            .collect();

        let highest_local = *phi_v_local
            .get(rs.highest_root().coords())
            .expect("highest root has odd height for all supported graded types");

        let mut grading = Grading {
            rs,
            phi_g,
            phi_v,
            phi_v_local,
            s_g,
            basis_matrix,
            n_matrix,
            n_scaled_matrix,
            n_denom,
            n_scaled_phi_v,
            sum_n_phi_g_pos,
            phi_v_positive,
            simple_roots,
            negation,
            omega: Vec::new(),
            highest_local,
        };
        grading.omega = grading.enumerate_omega();
        Ok(grading)
    }

    fn enumerate_omega(&self) -> Vec<OmegaElement> {
        let r = self.rank();
        let identity: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut elements = vec![self.omega_element(identity)];

        let ct = self.rs.ctype();
        if !(ct.family() == Family::E && (ct.rank() == 7 || ct.rank() == 8)) {
            // Diagram-automorphism enumeration is only exhaustive when every
            // automorphism of Φ_H lies in the Weyl group (E7, E8); elsewhere
            // only the identity is exposed.
            return elements;
        }

        // Cartan pairings among the β_i.
        let gram: Vec<Vec<i64>> = self
            .s_g
            .iter()
            .map(|a| self.s_g.iter().map(|b| self.rs.pairing(a, b)).collect())
            .collect();

        let mut perm = vec![0usize; r];
        let mut used = vec![false; r];
        let mut found: Vec<Vec<usize>> = Vec::new();
        search_diagram_perms(&gram, 0, &mut perm, &mut used, &mut found);

        for sigma in found {
            if sigma.iter().enumerate().all(|(i, &s)| i == s) {
                continue; // identity handled above
            }
            if let Some(matrix) = self.linear_extension(&sigma) {
                if self.preserves_roots(&matrix) {
                    elements.push(self.omega_element(matrix));
                }
            }
        }
        elements
    }

    /// Matrix sending β_j to β_{σ(j)}, if it is integral on the α-lattice.
    fn linear_extension(&self, sigma: &[usize]) -> Option<Vec<Vec<i64>>> {
        let r = self.rank();
        let mut matrix = vec![vec![0i64; r]; r];
        // Column c of the result is the image of α_{c+1}: write α in β
        // coordinates via n_matrix and map β_j ↦ β_{σ(j)}.
        for c in 0..r {
            for i in 0..r {
                let mut entry = BigRational::zero();
                for j in 0..r {
                    // coefficient of β_j in α_c is n_matrix[j][c]
                    entry += &self.n_matrix[j][c]
                        * linalg::from_int(self.basis_matrix[i][sigma[j]]);
                }
                if !entry.is_integer() {
                    return None;
                }
                matrix[i][c] = entry.to_integer().to_i64().expect("small entries");
            }
        }
        Some(matrix)
    }

    fn preserves_roots(&self, matrix: &[Vec<i64>]) -> bool {
        self.rs.roots().iter().all(|root| {
            let image = Root::new(linalg::mat_vec_i64(matrix, root.coords()));
            self.rs.is_root(&image)
        })
    }

    fn omega_element(&self, matrix: Vec<Vec<i64>>) -> OmegaElement {
        let nv = self.phi_v.len();
        let phi_v_perm: Vec<usize> = (0..nv)
            .map(|local| {
                let image =
                    Root::new(linalg::mat_vec_i64(&matrix, self.phi_v_root(local).coords()));
                *self
                    .phi_v_local
                    .get(image.coords())
                    .expect("ω preserves Φ_V")
            })
            .collect();
        let support = self.phi_v_positive.difference(&self.simple_roots);
        let cusp_support =
            PhiVSet::from_indices(nv, support.iter().map(|local| phi_v_perm[local]));
        OmegaElement {
            matrix,
            phi_v_perm,
            cusp_support,
        }
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Global root indices of Φ_G, ascending.
    pub fn phi_g(&self) -> &[usize] {
        &self.phi_g
    }

    /// Global root indices of Φ_V, ascending. The position in this list is
    /// the Φ_V-local index used by [`PhiVSet`] and all cusp-datum reports.
    pub fn phi_v(&self) -> &[usize] {
        &self.phi_v
    }

    pub fn num_phi_v(&self) -> usize {
        self.phi_v.len()
    }

    pub fn phi_v_root(&self, local: usize) -> &Root {
        &self.rs.roots()[self.phi_v[local]]
    }

    pub fn phi_v_index(&self, root: &Root) -> Option<usize> {
        self.phi_v_local.get(root.coords()).copied()
    }

    /// `Φ_V^+` as a local set.
    pub fn phi_v_positive(&self) -> PhiVSet {
        self.phi_v_positive
    }

    /// `S_H` as a local set (simple roots all have height one).
    pub fn simple_roots_set(&self) -> PhiVSet {
        self.simple_roots
    }

    /// Local index of `−α` for a Φ_V-local index `α`.
    pub fn phi_v_negation(&self, local: usize) -> usize {
        self.negation[local]
    }

    /// Φ_V-local index of the highest root α_0.
    pub fn highest_root_local(&self) -> usize {
        self.highest_local
    }

    pub fn s_g(&self) -> &[Root] {
        &self.s_g
    }

    /// Column `j` is `β_j` in simple-root coordinates.
    pub fn basis_matrix(&self) -> &[Vec<i64>] {
        &self.basis_matrix
    }

    pub fn n_matrix(&self) -> &[Vec<BigRational>] {
        &self.n_matrix
    }

    /// Common denominator `L` such that `L · n_i` is integral on the whole
    /// root lattice (observed: 2 for E7 and E8).
    pub fn n_denominator(&self) -> i64 {
        self.n_denom
    }

    /// Exact `n`-coordinates of an arbitrary weight in α-coordinates.
    pub fn n_of(&self, coords: &[i64]) -> Vec<BigRational> {
        self.n_matrix
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for (entry, &c) in row.iter().zip(coords) {
                    if c != 0 {
                        acc += entry * linalg::from_int(c);
                    }
                }
                acc
            })
            .collect()
    }

    /// `n_denominator() · n_of(coords)`, exact in integers.
    pub fn n_scaled_of(&self, coords: &[i64]) -> Vec<i64> {
        linalg::mat_vec_i64(&self.n_scaled_matrix, coords)
    }

    /// Scaled `n`-vector of a Φ_V root by local index.
    pub fn n_scaled_phi_v(&self, local: usize) -> &[i64] {
        &self.n_scaled_phi_v[local]
    }

    /// `Σ_{γ ∈ Φ_G^+} n_i(γ)` (entrywise integral).
    pub fn sum_n_phi_g_pos(&self) -> &[i64] {
        &self.sum_n_phi_g_pos
    }

    pub fn omega(&self) -> &[OmegaElement] {
        &self.omega
    }

    /// Applies an α-coordinate matrix to a root.
    pub fn apply_matrix(&self, matrix: &[Vec<i64>], root: &Root) -> Root {
        Root::new(linalg::mat_vec_i64(matrix, root.coords()))
    }
}

/// Exact `n`-coordinates of a root (or any weight given in α-coordinates).
pub fn n_coordinates(g: &Grading, gamma: &Root) -> Vec<BigRational> {
    g.n_of(gamma.coords())
}

/// The matrices of `Ω` acting on α-coordinates. Only E7 and E8 are supported:
/// for those types extending diagram automorphisms of `S_G` is exhaustive.
pub fn compute_omega(g: &Grading) -> Result<Vec<Vec<Vec<i64>>>, GradingError> {
    let ct = g.rs().ctype();
    if ct.family() == Family::E && (ct.rank() == 7 || ct.rank() == 8) {
        Ok(g.omega().iter().map(|w| w.matrix.clone()).collect())
    } else {
        Err(GradingError::OmegaUnsupported(ct))
    }
}

fn published_basis<const N: usize>(
    computed: &[Root],
    table: &[[i64; N]; N],
    ctype: CartanType,
) -> Result<Vec<Root>, GradingError> {
    let published: Vec<Root> = table.iter().map(|row| Root::new(row.to_vec())).collect();
    let mut sorted = published.clone();
    sorted.sort();
    if sorted.as_slice() != computed {
        return Err(GradingError::BasisTableMismatch(ctype));
    }
    Ok(published)
}

fn search_diagram_perms(
    gram: &[Vec<i64>],
    depth: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let r = gram.len();
    if depth == r {
        found.push(perm.clone());
        return;
    }
    for candidate in 0..r {
        if used[candidate] || gram[candidate][candidate] != gram[depth][depth] {
            continue;
        }
        if (0..depth).any(|prev| gram[perm[prev]][candidate] != gram[prev][depth]) {
            continue;
        }
        used[candidate] = true;
        perm[depth] = candidate;
        search_diagram_perms(gram, depth + 1, perm, used, found);
        used[candidate] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;
    use num_traits::One;

    fn grading(name: &str) -> Grading {
        compute_grading(build_root_system(name.parse().unwrap())).unwrap()
    }

    #[test]
    fn e7_partition_sizes() {
        let g = grading("E7");
        assert_eq!(g.phi_v().len(), 70);
        assert_eq!(g.phi_g().len(), 56);
    }

    #[test]
    fn e8_partition_sizes() {
        let g = grading("E8");
        assert_eq!(g.phi_v().len(), 128);
        assert_eq!(g.phi_g().len(), 112);
    }

    #[test]
    fn a_type_grading_is_degenerate() {
        let rs = build_root_system("A3".parse().unwrap());
        assert!(matches!(
            compute_grading(rs),
            Err(GradingError::BasisDegenerate { .. })
        ));
    }

    #[test]
    fn d4_grading_exists() {
        let g = grading("D4");
        assert_eq!(g.phi_v().len(), 16);
        assert_eq!(g.phi_g().len(), 8);
        assert_eq!(g.omega().len(), 1);
    }

    #[test]
    fn e7_published_basis_endpoints() {
        let g = grading("E7");
        assert_eq!(g.s_g()[0].coords(), &[0, 0, 1, 1, 0, 0, 0]);
        assert_eq!(g.s_g()[6].coords(), &[0, 1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn e8_published_basis_endpoints() {
        let g = grading("E8");
        assert_eq!(g.s_g()[0].coords(), &[0, 1, 1, 1, 1, 0, 0, 0]);
        assert_eq!(g.s_g()[7].coords(), &[0, 0, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn parity_closure_rules_hold_exhaustively() {
        for name in ["D4", "E7"] {
            let g = grading(name);
            let rs = g.rs();
            for a in rs.roots() {
                for b in rs.roots() {
                    let sum = a.sum(b);
                    if rs.is_root(&sum) {
                        let pa = a.height() % 2 == 0;
                        let pb = b.height() % 2 == 0;
                        let ps = sum.height() % 2 == 0;
                        assert_eq!(ps, pa == pb, "{name}: {a} + {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn n_matrix_inverts_the_basis_on_every_root() {
        for name in ["D4", "E7", "E8"] {
            let g = grading(name);
            for (j, beta) in g.s_g().iter().enumerate() {
                let n = g.n_of(beta.coords());
                for (i, entry) in n.iter().enumerate() {
                    let expected = if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(*entry, expected);
                }
            }
            // basis_matrix · n(γ) = γ for all roots, and n(−γ) = −n(γ).
            for root in g.rs().roots() {
                let n = g.n_scaled_of(root.coords());
                for i in 0..g.rank() {
                    let recovered: i64 = (0..g.rank())
                        .map(|j| g.basis_matrix()[i][j] * n[j])
                        .sum();
                    assert_eq!(recovered, root.coords()[i] * g.n_denominator());
                }
                let neg = g.n_scaled_of(root.negated().coords());
                assert!(n.iter().zip(&neg).all(|(a, b)| *a == -b));
            }
        }
    }

    #[test]
    fn e7_n_coordinates_of_highest_root() {
        let g = grading("E7");
        let n = g.n_of(g.rs().highest_root().coords());
        let expected: Vec<BigRational> = [(1, 2), (1, 1), (3, 2), (2, 1), (3, 2), (1, 1), (1, 2)]
            .iter()
            .map(|&(p, q)| linalg::rational(p, q))
            .collect();
        assert_eq!(n, expected);
    }

    #[test]
    fn recorded_n_denominators() {
        // The paper does not state these; they are observed and frozen here.
        assert_eq!(grading("E7").n_denominator(), 2);
        assert_eq!(grading("E8").n_denominator(), 2);
        assert_eq!(grading("D4").n_denominator(), 2);
    }

    #[test]
    fn n_is_nonnegative_integral_on_positive_even_roots() {
        for name in ["E7", "E8"] {
            let g = grading(name);
            for &global in g.phi_g() {
                let root = &g.rs().roots()[global];
                if !root.is_positive() {
                    continue;
                }
                let scaled = g.n_scaled_of(root.coords());
                for &s in &scaled {
                    assert!(s >= 0 && s % g.n_denominator() == 0);
                }
            }
        }
    }

    #[test]
    fn e7_sum_of_n_over_positive_even_roots() {
        assert_eq!(grading("E7").sum_n_phi_g_pos(), &[7, 12, 15, 16, 15, 12, 7]);
    }

    #[test]
    fn omega_orders_match_the_component_groups() {
        assert_eq!(grading("E7").omega().len(), 2);
        assert_eq!(grading("E8").omega().len(), 1);
    }

    #[test]
    fn published_numbering_realizes_the_subsystem_cartan_matrices() {
        // The β_i of E7 form an A7 chain in Bourbaki order; those of E8 a D8
        // diagram (chain 1..7, node 8 attached to node 6).
        for (name, sub) in [("E7", CartanType::new(Family::A, 7).unwrap()),
                            ("E8", CartanType::new(Family::D, 8).unwrap())] {
            let g = grading(name);
            let expected = sub.cartan_matrix();
            for (i, a) in g.s_g().iter().enumerate() {
                for (j, b) in g.s_g().iter().enumerate() {
                    assert_eq!(
                        g.rs().pairing(a, b),
                        expected[i][j],
                        "{name}: pairing of β_{} and β_{}",
                        i + 1,
                        j + 1
                    );
                }
            }
        }
    }

    #[test]
    fn free_function_surfaces_agree_with_the_methods() {
        let g = grading("E7");
        let beta = &g.s_g()[2];
        assert_eq!(n_coordinates(&g, beta), g.n_of(beta.coords()));
        let matrices = compute_omega(&g).unwrap();
        assert_eq!(matrices.len(), g.omega().len());
        assert_eq!(matrices[1], g.omega()[1].matrix);
    }

    #[test]
    fn shared_read_types_are_sync() {
        fn assert_sync<T: Sync + Send>() {}
        assert_sync::<RootSystem>();
        assert_sync::<Grading>();
    }

    #[test]
    fn compute_omega_rejects_unsupported_types() {
        assert!(matches!(
            compute_omega(&grading("D4")),
            Err(GradingError::OmegaUnsupported(_))
        ));
    }

    #[test]
    fn omega_elements_permute_roots_and_preserve_parity() {
        for name in ["E7", "E8"] {
            let g = grading(name);
            assert!(g.omega()[0]
                .matrix
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &e)| e == i64::from(i == j))));
            for w in g.omega() {
                let mut seen = std::collections::HashSet::new();
                for root in g.rs().roots() {
                    let image = g.apply_matrix(&w.matrix, root);
                    assert!(g.rs().is_root(&image));
                    assert_eq!(image.height() % 2 != 0, root.height() % 2 != 0);
                    assert!(seen.insert(image));
                }
                // ω permutes S_G setwise.
                for beta in g.s_g() {
                    let image = g.apply_matrix(&w.matrix, beta);
                    assert!(g.s_g().contains(&image));
                }
            }
        }
    }

    #[test]
    fn nontrivial_e7_omega_has_order_two() {
        let g = grading("E7");
        let w = &g.omega()[1].matrix;
        let r = g.rank();
        for c in 0..r {
            let col: Vec<i64> = (0..r).map(|i| w[i][c]).collect();
            let twice = linalg::mat_vec_i64(w, &col);
            let expected: Vec<i64> = (0..r).map(|i| i64::from(i == c)).collect();
            assert_eq!(twice, expected);
        }
    }
}
