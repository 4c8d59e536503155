//! Simply-laced root systems of types A, D, E built from hard-coded Bourbaki
//! Cartan matrices.
//!
//! Roots are stored as integer coordinate vectors in the simple-root basis
//! `S_H = {α_1, …, α_r}`; all inner products go through the Cartan matrix, so
//! there is no ambient Euclidean embedding anywhere. The full root list is
//! generated by closing `S_H` under the simple reflections and is ordered
//! deterministically: positive roots first, each block sorted
//! lexicographically on coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid Cartan type {family}{rank}: not a simply-laced type of that rank")]
    InvalidType { family: Family, rank: usize },
    #[error("cannot parse `{0}` as a Cartan type (expected e.g. E7, A3, D8)")]
    ParseType(String),
    #[error("simple-root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector is not a root of this system")]
    NotARoot,
}

/// A valid simply-laced Cartan type: `A_r` (r ≥ 1), `D_r` (r ≥ 3) or
/// `E_6`, `E_7`, `E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootSysError::InvalidType { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        match self.family {
            Family::A => self.rank * (self.rank + 1),
            Family::D => 2 * self.rank * (self.rank - 1),
            Family::E => match self.rank {
                6 => 72,
                7 => 126,
                8 => 240,
                _ => unreachable!(),
            },
        }
    }

    /// Cartan matrix in Bourbaki numbering. For `E_r` the chain is
    /// `1–3–4–5–…–r` with node 2 attached to node 4; for `D_r` the chain is
    /// `1–…–(r−2)` with both `r−1` and `r` attached to `r−2`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match self.family {
            Family::A => {
                for i in 1..r {
                    edges.push((i, i + 1));
                }
            }
            Family::D => {
                for i in 1..r - 1 {
                    edges.push((i, i + 1));
                }
                edges.push((r - 2, r));
            }
            Family::E => {
                edges.push((1, 3));
                for i in 3..r {
                    edges.push((i, i + 1));
                }
                edges.push((2, 4));
            }
        }
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            cartan[i][i] = 2;
        }
        for (a, b) in edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        cartan
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSysError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RootSysError::ParseType(s.to_string());
        let (head, tail) = s.split_at(1);
        let family = match head {
            "A" | "a" => Family::A,
            "D" | "d" => Family::D,
            "E" | "e" => Family::E,
            _ => return Err(err()),
        };
        let rank: usize = tail.parse().map_err(|_| err())?;
        CartanType::new(family, rank).map_err(|_| err())
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Sum of the simple-root coefficients. Nonzero for every root.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn negated(&self) -> Root {
        Root::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn sum(&self, other: &Root) -> Root {
        Root::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn difference(&self, other: &Root) -> Root {
        Root::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An immutable root system: the ordered root list, Cartan data, and the
/// highest root. Construction is deterministic, so root indices are stable
/// across runs and safe to use as bitset positions downstream.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: CartanType,
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<BigRational>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    num_positive: usize,
    highest: usize,
}

/// Builds the root system for `ctype` by closing the simple roots under the
/// simple reflections.
pub fn build_root_system(ctype: CartanType) -> RootSystem {
    RootSystem::build(ctype)
}

impl RootSystem {
    pub fn build(ctype: CartanType) -> RootSystem {
        let r = ctype.rank();
        let cartan = ctype.cartan_matrix();

        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut worklist: Vec<Root> = (0..r)
            .map(|i| {
                let mut coords = vec![0i64; r];
                coords[i] = 1;
                Root::new(coords)
            })
            .collect();
        for root in &worklist {
            seen.insert(root.coords.clone(), 0);
        }
        while let Some(root) = worklist.pop() {
            for i in 1..=r {
                let image = reflect_raw(&cartan, &root, i);
                if !seen.contains_key(image.coords()) {
                    seen.insert(image.coords.clone(), 0);
                    worklist.push(image);
                }
            }
        }

        let mut roots: Vec<Root> = seen.keys().cloned().map(Root::new).collect();
        roots.sort_by(|a, b| {
            b.is_positive()
                .cmp(&a.is_positive())
                .then_with(|| a.coords.cmp(&b.coords))
        });
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, root)| (root.coords.clone(), i))
            .collect();
        let num_positive = roots.iter().filter(|root| root.is_positive()).count();
        let highest = roots
            .iter()
            .enumerate()
            .max_by_key(|(_, root)| root.height())
            .map(|(i, _)| i)
            .expect("root system is non-empty");

        let rational_cartan: Vec<Vec<BigRational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&e| linalg::from_int(e)).collect())
            .collect();
        let inv_cartan =
            linalg::invert(&rational_cartan).expect("Cartan matrices are invertible");

        let rs = RootSystem {
            ctype,
            cartan,
            inv_cartan,
            roots,
            index,
            num_positive,
            highest,
        };
        debug_assert_eq!(rs.roots.len(), ctype.num_roots());
        debug_assert_eq!(2 * rs.num_positive, rs.roots.len());
        rs
    }

    pub fn ctype(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Inverse Cartan matrix; row `i` holds the fundamental coweight `ω̌_i`
    /// in the coweight coordinates dual to `S_H`.
    pub fn inv_cartan(&self) -> &[Vec<BigRational>] {
        &self.inv_cartan
    }

    /// All roots, positive block first, each block lexicographically sorted.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.index.get(root.coords()).copied()
    }

    pub fn is_root(&self, coords: &Root) -> bool {
        self.index.contains_key(coords.coords())
    }

    /// The unique root of maximal height.
    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    /// Cartan pairing `⟨a, b^∨⟩`. Simply laced, so this is symmetric.
    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        let mut total = 0;
        for (i, bi) in b.coords().iter().enumerate() {
            if *bi != 0 {
                let row: i64 = self
                    .cartan[i]
                    .iter()
                    .zip(a.coords())
                    .map(|(c, aj)| c * aj)
                    .sum();
                total += bi * row;
            }
        }
        total
    }

    /// Simple reflection `s_{α_i}` applied to a root of this system;
    /// `i` is the 1-based Bourbaki index.
    pub fn reflect(&self, root: &Root, i: usize) -> Result<Root, RootSysError> {
        if i == 0 || i > self.rank() {
            return Err(RootSysError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        if !self.is_root(root) {
            return Err(RootSysError::NotARoot);
        }
        let image = reflect_raw(&self.cartan, root, i);
        debug_assert!(self.is_root(&image));
        Ok(image)
    }
}

fn reflect_raw(cartan: &[Vec<i64>], root: &Root, i: usize) -> Root {
    // root − ⟨root, α_i^∨⟩ α_i, with ⟨root, α_i^∨⟩ = (row i of C) · root.
    let pairing: i64 = cartan[i - 1]
        .iter()
        .zip(root.coords())
        .map(|(c, x)| c * x)
        .sum();
    let mut coords = root.coords().to_vec();
    coords[i - 1] -= pairing;
    Root::new(coords)
}
