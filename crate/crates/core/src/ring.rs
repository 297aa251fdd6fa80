//! Based rings over the integers.
//!
//! A [`BasedRing`] stores structure constants `N[i][j][k]` with
//! `b_i b_j = sum_k N[i][j][k] b_k`, a unit index and a duality involution.
//! Fusion rings and the class algebras of finite groups are two validation
//! [`Profile`]s of the same type: a class algebra pairs `C_i` with its inverse
//! class with multiplicity `|C_i|` instead of 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::{det_bareiss, nonneg_spectral_radius};
use crate::{Error, Result, Tolerances};

/// Which axiom set [`BasedRing::validate`] enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Unit, associativity and duality axioms with `N_{i i*}^1 >= 1`.
    Based,
    /// Additionally `N_{i i*}^1 = 1`.
    Fusion,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Based => f.write_str("based"),
            Profile::Fusion => f.write_str("fusion"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasedRing {
    labels: Vec<String>,
    rank: usize,
    /// Flat `rank^3` array, index `(i * rank + j) * rank + k`.
    n: Vec<u32>,
    unit: usize,
    dual: Vec<usize>,
}

impl BasedRing {
    /// Builds a ring from flat structure constants. Only the shape is
    /// checked here; the ring axioms are checked by [`BasedRing::validate`].
    pub fn new(labels: Vec<String>, n: Vec<u32>, unit: usize, dual: Vec<usize>) -> Result<Self> {
        let rank = dual.len();
        if rank == 0 {
            return Err(Error::Structure("rank must be positive".into()));
        }
        if n.len() != rank * rank * rank {
            return Err(Error::Structure(format!(
                "structure constants have {} entries, expected rank^3 = {}",
                n.len(),
                rank * rank * rank
            )));
        }
        let labels = if labels.is_empty() {
            (0..rank).map(|i| format!("b{i}")).collect()
        } else if labels.len() == rank {
            labels
        } else {
            return Err(Error::Structure(format!("{} labels for rank {}", labels.len(), rank)));
        };
        if unit >= rank {
            return Err(Error::Structure(format!("unit index {unit} out of range")));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Structure(format!("dual index {bad} out of range")));
        }
        Ok(BasedRing {
            labels,
            rank,
            n,
            unit,
            dual,
        })
    }

    pub fn from_dense(labels: Vec<String>, dense: &[Vec<Vec<u32>>], unit: usize, dual: Vec<usize>) -> Result<Self> {
        let rank = dual.len();
        let mut n = Vec::with_capacity(rank * rank * rank);
        if dense.len() != rank {
            return Err(Error::Structure(format!(
                "N has {} outer entries, expected {rank}",
                dense.len()
            )));
        }
        for (i, plane) in dense.iter().enumerate() {
            if plane.len() != rank {
                return Err(Error::Structure(format!("N[{i}] has {} rows", plane.len())));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != rank {
                    return Err(Error::Structure(format!("N[{i}][{j}] has {} entries", row.len())));
                }
                n.extend_from_slice(row);
            }
        }
        BasedRing::new(labels, n, unit, dual)
    }

    /// Builds a ring from `(i, j, k, value)` entries; unlisted entries are 0.
    pub fn from_sparse(labels: Vec<String>, entries: &[[u32; 4]], unit: usize, dual: Vec<usize>) -> Result<Self> {
        let rank = dual.len();
        let mut n = vec![0u32; rank * rank * rank];
        for e in entries {
            let [i, j, k, v] = *e;
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Structure(format!(
                    "sparse entry [{i}, {j}, {k}, {v}] out of range"
                )));
            }
            n[(i * rank + j) * rank + k] = v;
        }
        BasedRing::new(labels, n, unit, dual)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    /// Indices `k` with `N_{ij}^k > 0`.
    pub fn product_support(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        let base = (i * self.rank + j) * self.rank;
        (0..self.rank).filter(move |&k| self.n[base + k] > 0)
    }

    /// `N_{i i*}^{unit}`: 1 for fusion rings, `|C_i|` for class algebras.
    pub fn pairing_weight(&self, i: usize) -> u32 {
        self.n(i, self.dual[i], self.unit)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (i + 1..self.rank).all(|j| (0..self.rank).all(|k| self.n(i, j, k) == self.n(j, i, k))))
    }

    /// Matrix of left multiplication by `b_i`: entry `(k, j)` is `N_{ij}^k`.
    pub fn fusion_matrix(&self, i: usize) -> Result<Vec<Vec<u32>>> {
        if i >= self.rank {
            return Err(Error::Structure(format!(
                "basis index {i} out of range for rank {}",
                self.rank
            )));
        }
        Ok((0..self.rank)
            .map(|k| (0..self.rank).map(|j| self.n(i, j, k)).collect())
            .collect())
    }

    /// Relabels the basis: new index `perm[old]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<BasedRing> {
        let r = self.rank;
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Structure("not a permutation of the basis".into()));
        }
        let mut n = vec![0u32; r * r * r];
        let mut labels = vec![String::new(); r];
        let mut dual = vec![0usize; r];
        for i in 0..r {
            labels[perm[i]] = self.labels[i].clone();
            dual[perm[i]] = perm[self.dual[i]];
            for j in 0..r {
                for k in 0..r {
                    n[(perm[i] * r + perm[j]) * r + perm[k]] = self.n(i, j, k);
                }
            }
        }
        BasedRing::new(labels, n, perm[self.unit], dual)
    }

    /// Checks every ring axiom of `profile` and lists all violations.
    pub fn validate(&self, profile: Profile) -> ValidationReport {
        let r = self.rank;
        let u = self.unit;
        let mut violations = Vec::new();

        for j in 0..r {
            for k in 0..r {
                let expected = u32::from(j == k);
                if self.n(u, j, k) != expected {
                    violations.push(Violation::LeftUnit {
                        j,
                        k,
                        value: self.n(u, j, k),
                    });
                }
                if self.n(j, u, k) != expected {
                    violations.push(Violation::RightUnit {
                        j,
                        k,
                        value: self.n(j, u, k),
                    });
                }
            }
        }

        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|m| u64::from(self.n(i, j, m)) * u64::from(self.n(m, k, l)))
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|m| u64::from(self.n(j, k, m)) * u64::from(self.n(i, m, l)))
                            .sum();
                        if lhs != rhs {
                            violations.push(Violation::Associativity { i, j, k, l, lhs, rhs });
                        }
                    }
                }
            }
        }

        if self.dual[u] != u {
            violations.push(Violation::DualOfUnit { dual: self.dual[u] });
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                violations.push(Violation::DualNotInvolution { i });
            }
            for j in 0..r {
                let v = self.n(i, j, u);
                if j != self.dual[i] && v != 0 {
                    violations.push(Violation::UnitOutsideDual { i, j, value: v });
                }
            }
            let w = self.pairing_weight(i);
            match profile {
                Profile::Based if w == 0 => violations.push(Violation::MissingPairing { i }),
                Profile::Fusion if w != 1 => violations.push(Violation::FusionPairing { i, value: w }),
                _ => {}
            }
        }

        ValidationReport { profile, violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    LeftUnit {
        j: usize,
        k: usize,
        value: u32,
    },
    RightUnit {
        j: usize,
        k: usize,
        value: u32,
    },
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        lhs: u64,
        rhs: u64,
    },
    DualOfUnit {
        dual: usize,
    },
    DualNotInvolution {
        i: usize,
    },
    UnitOutsideDual {
        i: usize,
        j: usize,
        value: u32,
    },
    MissingPairing {
        i: usize,
    },
    FusionPairing {
        i: usize,
        value: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeftUnit { j, k, value } => {
                write!(f, "left unit law: N(unit,{j})^{k} = {value}")
            }
            Violation::RightUnit { j, k, value } => {
                write!(f, "right unit law: N({j},unit)^{k} = {value}")
            }
            Violation::Associativity { i, j, k, l, lhs, rhs } => write!(
                f,
                "associativity at (i,j,k,l) = ({i},{j},{k},{l}): (b_i b_j) b_k gives {lhs}, b_i (b_j b_k) gives {rhs}"
            ),
            Violation::DualOfUnit { dual } => write!(f, "dual of the unit is {dual}"),
            Violation::DualNotInvolution { i } => write!(f, "dual is not an involution at {i}"),
            Violation::UnitOutsideDual { i, j, value } => {
                write!(f, "N({i},{j})^unit = {value} but {j} is not the dual of {i}")
            }
            Violation::MissingPairing { i } => write!(f, "N({i},{i}*)^unit = 0"),
            Violation::FusionPairing { i, value } => {
                write!(f, "fusion profile requires N({i},{i}*)^unit = 1, found {value}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub profile: Profile,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_associativity_violation(&self) -> bool {
        self.violations
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. }))
    }
}

/// Exact form of a Frobenius–Perron dimension, when one was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum DimKind {
    Integer(u64),
    /// `d = sqrt(m)` with `m` not a perfect square; stores `m`.
    SqrtInteger(u64),
    Other,
}

impl DimKind {
    /// `d^2` when it is an integer.
    pub fn square(self) -> Option<u64> {
        match self {
            DimKind::Integer(k) => Some(k * k),
            DimKind::SqrtInteger(m) => Some(m),
            DimKind::Other => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionData {
    pub dims: Vec<f64>,
    pub exact: Vec<DimKind>,
    /// Regular-trace dimension `sum_i d_i^2 / N_{i i*}^1`, which is
    /// `FPdim = sum_i d_i^2` on fusion rings and `|G|` on class algebras.
    pub total: f64,
    pub weights: Vec<u32>,
}

impl DimensionData {
    pub fn is_integral(&self) -> bool {
        self.exact.iter().all(|k| matches!(k, DimKind::Integer(_)))
    }

    pub fn is_weakly_integral(&self) -> bool {
        self.exact.iter().all(|k| k.square().is_some())
    }

    /// Exact total when every `d_i^2` is an integer divisible by its weight.
    pub fn total_exact(&self) -> Option<u64> {
        self.exact
            .iter()
            .zip(&self.weights)
            .map(|(k, &w)| {
                let sq = k.square()?;
                (sq % u64::from(w) == 0).then(|| sq / u64::from(w))
            })
            .sum()
    }

    /// `sum_{i in subset} d_i^2` (the dimension of a fusion subring).
    pub fn subset_dim(&self, subset: &BTreeSet<usize>) -> f64 {
        subset.iter().map(|&i| self.dims[i] * self.dims[i]).sum()
    }

    pub fn subset_dim_exact(&self, subset: &BTreeSet<usize>) -> Option<u64> {
        subset.iter().map(|&i| self.exact[i].square()).sum()
    }
}

const MAX_POWER_ITERATIONS: usize = 200_000;

/// Frobenius–Perron dimensions, snapped to certified exact values where possible.
///
/// A numeric radius `r` of the fusion matrix `N_i` is snapped to the integer
/// `k` when `|r - k| < tol.snap` and `det(N_i - k I) = 0` exactly, and to
/// `sqrt(m)` when `|r^2 - m| < tol.snap` and `det(N_i^2 - m I) = 0` exactly.
pub fn fp_dims(ring: &BasedRing, tol: &Tolerances) -> Result<DimensionData> {
    let r = ring.rank();
    let mut dims = Vec::with_capacity(r);
    let mut exact = Vec::with_capacity(r);
    for i in 0..r {
        if i == ring.unit() {
            dims.push(1.0);
            exact.push(DimKind::Integer(1));
            continue;
        }
        let m = ring.fusion_matrix(i)?;
        let mf: Vec<Vec<f64>> = m
            .iter()
            .map(|row| row.iter().map(|&v| f64::from(v)).collect())
            .collect();
        let radius = nonneg_spectral_radius(&mf, tol.eigen, MAX_POWER_ITERATIONS)?;
        let (d, kind) = snap_dimension(&m, radius, tol.snap);
        dims.push(d);
        exact.push(kind);
    }
    let weights: Vec<u32> = (0..r).map(|i| ring.pairing_weight(i).max(1)).collect();
    let total = dims.iter().zip(&weights).map(|(d, &w)| d * d / f64::from(w)).sum();
    Ok(DimensionData {
        dims,
        exact,
        total,
        weights,
    })
}

fn snap_dimension(m: &[Vec<u32>], radius: f64, snap: f64) -> (f64, DimKind) {
    let k = radius.round();
    if k >= 1.0 && (radius - k).abs() < snap && is_eigenvalue(m, k as u64, false) {
        return (k, DimKind::Integer(k as u64));
    }
    let sq = radius * radius;
    let msq = sq.round();
    if msq >= 1.0 && (sq - msq).abs() < snap && is_eigenvalue(m, msq as u64, true) {
        let ms = msq as u64;
        let root = ms.isqrt();
        if root * root != ms {
            return ((ms as f64).sqrt(), DimKind::SqrtInteger(ms));
        }
    }
    (radius, DimKind::Other)
}

/// Exact test that `value` is an eigenvalue of `m` (or of `m^2` when `squared`).
fn is_eigenvalue(m: &[Vec<u32>], value: u64, squared: bool) -> bool {
    let n = m.len();
    let base: Vec<Vec<BigInt>> = if squared {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| BigInt::from(m[i][l]) * BigInt::from(m[l][j])).sum())
                    .collect()
            })
            .collect()
    } else {
        m.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    };
    let shifted: Vec<Vec<BigInt>> = base
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row[i] -= BigInt::from(value);
            row
        })
        .collect();
    det_bareiss(shifted) == BigInt::from(0)
}

/// Indices of invertible basis elements: `b_i b_{i*} = b_unit` exactly.
pub fn invertibles(ring: &BasedRing) -> BTreeSet<usize> {
    let u = ring.unit();
    (0..ring.rank())
        .filter(|&i| {
            let d = ring.dual(i);
            ring.n(i, d, u) == 1
                && ring.product_support(i, d).all(|k| k == u)
                && (0..ring.rank()).map(|k| ring.n(i, d, k)).sum::<u32>() == 1
        })
        .collect()
}

/// Smallest index set containing `seed` and the unit that is closed under
/// duality and product support.
pub fn subring_closure(ring: &BasedRing, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut closed: BTreeSet<usize> = BTreeSet::new();
    let mut pending: Vec<usize> = seed.into_iter().filter(|&i| i < ring.rank()).collect();
    pending.push(ring.unit());
    while let Some(x) = pending.pop() {
        if !closed.insert(x) {
            continue;
        }
        pending.push(ring.dual(x));
        let members: Vec<usize> = closed.iter().copied().collect();
        for y in members {
            pending.extend(ring.product_support(x, y));
            pending.extend(ring.product_support(y, x));
        }
    }
    closed
}

/// Adjoint subring of the subring spanned by `within`: closure of the
/// supports of `b_i b_{i*}` for `i` in `within`.
pub fn adjoint_of(ring: &BasedRing, within: &BTreeSet<usize>) -> BTreeSet<usize> {
    let seed: Vec<usize> = within
        .iter()
        .flat_map(|&i| ring.product_support(i, ring.dual(i)).collect::<Vec<_>>())
        .collect();
    subring_closure(ring, seed)
}

pub fn adjoint_subring(ring: &BasedRing) -> BTreeSet<usize> {
    adjoint_of(ring, &(0..ring.rank()).collect())
}

/// The universal grading: components of the coarsest grading whose trivial
/// component is the adjoint subring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingData {
    pub adjoint: Vec<usize>,
    /// Components; component 0 is the adjoint subring.
    pub classes: Vec<Vec<usize>>,
    /// `group_table[a][b]` is the component containing products of `a` and `b`.
    pub group_table: Vec<Vec<usize>>,
    pub order: usize,
}

impl GradingData {
    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&i))
    }
}

pub fn universal_grading(ring: &BasedRing) -> Result<GradingData> {
    let r = ring.rank();
    let adjoint = adjoint_subring(ring);

    // i ~ j iff N_{a i}^j > 0 for some a in the adjoint subring.
    let mut component = vec![usize::MAX; r];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = vec![ring.unit()];
    order.extend((0..r).filter(|&i| i != ring.unit()));
    for start in order {
        if component[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        component[start] = id;
        let mut idx = 0;
        while idx < members.len() {
            let x = members[idx];
            idx += 1;
            for &a in &adjoint {
                for y in ring.product_support(a, x).collect::<Vec<_>>() {
                    if component[y] == usize::MAX {
                        component[y] = id;
                        members.push(y);
                    } else if component[y] != id {
                        return Err(Error::Inconsistent(format!(
                            "adjoint action joins components of {x} and {y}"
                        )));
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }

    if classes[0].iter().copied().collect::<BTreeSet<_>>() != adjoint {
        return Err(Error::Inconsistent(
            "trivial component differs from the adjoint subring".into(),
        ));
    }

    let g = classes.len();
    let mut table = vec![vec![usize::MAX; g]; g];
    for i in 0..r {
        for j in 0..r {
            let (ci, cj) = (component[i], component[j]);
            for k in ring.product_support(i, j) {
                let ck = component[k];
                let slot = &mut table[ci][cj];
                if *slot == usize::MAX {
                    *slot = ck;
                } else if *slot != ck {
                    return Err(Error::Inconsistent(format!(
                        "grading product of components {ci} and {cj} is not single-valued"
                    )));
                }
            }
        }
    }
    check_group_table(&table)?;

    Ok(GradingData {
        adjoint: adjoint.into_iter().collect(),
        classes,
        group_table: table,
        order: g,
    })
}

fn check_group_table(table: &[Vec<usize>]) -> Result<()> {
    let g = table.len();
    for a in 0..g {
        if table[0][a] != a || table[a][0] != a {
            return Err(Error::Inconsistent(format!(
                "component 0 is not the identity of the grading group at {a}"
            )));
        }
        if !(0..g).any(|b| table[a][b] == 0 && table[b][a] == 0) {
            return Err(Error::Inconsistent(format!("component {a} has no inverse")));
        }
        for b in 0..g {
            if table[a][b] >= g {
                return Err(Error::Inconsistent(format!(
                    "product of components {a} and {b} is empty"
                )));
            }
        }
    }
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Inconsistent(format!(
                        "grading group is not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyChain {
    pub nilpotent: bool,
    /// `full ⊇ C_ad ⊇ (C_ad)_ad ⊇ ...` up to the point where it stabilises.
    pub chain: Vec<Vec<usize>>,
}

impl NilpotencyChain {
    /// Number of adjoint steps taken.
    pub fn steps(&self) -> usize {
        self.chain.len() - 1
    }
}

pub fn is_nilpotent(ring: &BasedRing) -> NilpotencyChain {
    let trivial: BTreeSet<usize> = [ring.unit()].into();
    let mut current: BTreeSet<usize> = (0..ring.rank()).collect();
    let mut chain = vec![current.iter().copied().collect::<Vec<_>>()];
    while current != trivial {
        let next = adjoint_of(ring, &current);
        if next == current {
            return NilpotencyChain {
                nilpotent: false,
                chain,
            };
        }
        chain.push(next.iter().copied().collect());
        current = next;
    }
    NilpotencyChain { nilpotent: true, chain }
}

/// Groups simples by exact dimension: `(d^2, count)` pairs sorted by `d^2`.
pub fn dimension_type(dims: &DimensionData) -> Option<Vec<(u64, u64)>> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for k in &dims.exact {
        *counts.entry(k.square()?).or_default() += 1;
    }
    Some(counts.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ising() -> BasedRing {
        // 0 = 1, 1 = eps, 2 = sigma
        BasedRing::from_sparse(
            vec!["1".into(), "eps".into(), "sigma".into()],
            &[
                [0, 0, 0, 1],
                [0, 1, 1, 1],
                [0, 2, 2, 1],
                [1, 0, 1, 1],
                [1, 1, 0, 1],
                [1, 2, 2, 1],
                [2, 0, 2, 1],
                [2, 1, 2, 1],
                [2, 2, 0, 1],
                [2, 2, 1, 1],
            ],
            0,
            vec![0, 1, 2],
        )
        .unwrap()
    }

    fn rep_s3() -> BasedRing {
        BasedRing::from_sparse(
            vec!["1".into(), "s".into(), "v".into()],
            &[
                [0, 0, 0, 1],
                [0, 1, 1, 1],
                [0, 2, 2, 1],
                [1, 0, 1, 1],
                [1, 1, 0, 1],
                [1, 2, 2, 1],
                [2, 0, 2, 1],
                [2, 1, 2, 1],
                [2, 2, 0, 1],
                [2, 2, 1, 1],
                [2, 2, 2, 1],
            ],
            0,
            vec![0, 1, 2],
        )
        .unwrap()
    }

    fn cyclic(n: usize) -> BasedRing {
        let mut e = Vec::new();
        for i in 0..n {
            for j in 0..n {
                e.push([i as u32, j as u32, ((i + j) % n) as u32, 1]);
            }
        }
        BasedRing::from_sparse(vec![], &e, 0, (0..n).map(|i| (n - i) % n).collect()).unwrap()
    }

    #[test]
    fn trivial_ring_is_valid() {
        let r = BasedRing::new(vec![], vec![1], 0, vec![0]).unwrap();
        assert!(r.validate(Profile::Fusion).is_valid());
        assert!(is_nilpotent(&r).nilpotent);
        assert_eq!(is_nilpotent(&r).steps(), 0);
        let d = fp_dims(&r, &Tolerances::default()).unwrap();
        assert_eq!(d.total, 1.0);
    }

    #[test]
    fn ising_valid_under_fusion_profile() {
        let report = ising().validate(Profile::Fusion);
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn broken_ising_reports_associativity() {
        let r = ising();
        let mut n = r.n.clone();
        n[(2 * 3 + 2) * 3 + 1] = 2;
        let broken = BasedRing::new(r.labels.clone(), n, 0, vec![0, 1, 2]).unwrap();
        let report = broken.validate(Profile::Fusion);
        assert!(report.has_associativity_violation());
        // (sigma sigma) sigma = (1 + 2 eps) sigma = 3 sigma, sigma (sigma sigma) = sigma (1 + 2 eps) = 3 sigma,
        // but (sigma sigma) eps = eps + 2: coefficient of 1 is 2 vs sigma (sigma eps) = 1 + 2 eps: coefficient 1.
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Associativity {
                i: 2,
                j: 2,
                k: 1,
                l: 0,
                lhs: 2,
                rhs: 1
            }
        )));
    }

    #[test]
    fn malformed_shape_is_structural() {
        assert!(matches!(
            BasedRing::new(vec![], vec![1, 0, 0], 0, vec![0, 1]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            BasedRing::from_dense(vec![], &[vec![vec![1, 0]]], 0, vec![0, 1]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn fusion_matrices() {
        let r = ising();
        assert_eq!(
            r.fusion_matrix(0).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            r.fusion_matrix(2).unwrap(),
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(
            rep_s3().fusion_matrix(2).unwrap(),
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 1]]
        );
        assert!(matches!(r.fusion_matrix(3), Err(Error::Structure(_))));
    }

    #[test]
    fn dims_are_snapped_and_certified() {
        let tol = Tolerances::default();
        let z2 = fp_dims(&cyclic(2), &tol).unwrap();
        assert_eq!(z2.dims, vec![1.0, 1.0]);
        assert_eq!(z2.total, 2.0);
        let is = fp_dims(&ising(), &tol).unwrap();
        assert_eq!(
            is.exact,
            vec![DimKind::Integer(1), DimKind::Integer(1), DimKind::SqrtInteger(2)]
        );
        assert_eq!(is.dims[2], 2f64.sqrt());
        assert!((is.total - 4.0).abs() < 1e-12);
        assert_eq!(is.total_exact(), Some(4));
        assert!(is.is_weakly_integral() && !is.is_integral());
        let s3 = fp_dims(&rep_s3(), &tol).unwrap();
        assert_eq!(s3.dims, vec![1.0, 1.0, 2.0]);
        assert_eq!(s3.total, 6.0);
    }

    #[test]
    fn invertible_elements() {
        assert_eq!(invertibles(&ising()), [0, 1].into());
        assert_eq!(invertibles(&cyclic(5)), (0..5).collect());
        assert_eq!(invertibles(&rep_s3()), [0, 1].into());
    }

    #[test]
    fn closures() {
        let r = ising();
        assert_eq!(subring_closure(&r, []), [0].into());
        assert_eq!(subring_closure(&r, [1]), [0, 1].into());
        assert_eq!(subring_closure(&r, [2]), [0, 1, 2].into());
    }

    #[test]
    fn adjoint_subrings() {
        assert_eq!(adjoint_subring(&cyclic(4)), [0].into());
        assert_eq!(adjoint_subring(&ising()), [0, 1].into());
        assert_eq!(adjoint_subring(&rep_s3()), [0, 1, 2].into());
    }

    #[test]
    fn gradings() {
        let g = universal_grading(&ising()).unwrap();
        assert_eq!(g.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(g.order, 2);
        assert_eq!(g.group_table, vec![vec![0, 1], vec![1, 0]]);

        let g = universal_grading(&rep_s3()).unwrap();
        assert_eq!(g.order, 1);

        let g = universal_grading(&cyclic(5)).unwrap();
        assert_eq!(g.order, 5);
        assert!(g.classes.iter().all(|c| c.len() == 1));
        // the component group is cyclic: generated by the component of b_1
        let gen = g.class_of(1).unwrap();
        let mut x = 0;
        for _ in 0..5 {
            x = g.group_table[x][gen];
        }
        assert_eq!(x, 0);
    }

    #[test]
    fn nilpotency() {
        let p = is_nilpotent(&cyclic(3));
        assert!(p.nilpotent);
        assert_eq!(p.steps(), 1);
        let i = is_nilpotent(&ising());
        assert!(i.nilpotent);
        assert_eq!(i.chain, vec![vec![0, 1, 2], vec![0, 1], vec![0]]);
        let s = is_nilpotent(&rep_s3());
        assert!(!s.nilpotent);
        assert_eq!(s.chain, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn transpose_of_fusion_matrix_is_dual() {
        for ring in [ising(), rep_s3(), cyclic(4)] {
            for i in 0..ring.rank() {
                let m = ring.fusion_matrix(i).unwrap();
                let md = ring.fusion_matrix(ring.dual(i)).unwrap();
                for a in 0..ring.rank() {
                    for b in 0..ring.rank() {
                        assert_eq!(m[a][b], md[b][a]);
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_preserves_validity() {
        let p = ising().permuted(&[0, 2, 1]).unwrap();
        assert!(p.validate(Profile::Fusion).is_valid());
        assert_eq!(p.labels()[2], "eps");
    }
}
