//! Square-free splits, divisibility filters on category types, and a pruned
//! enumerator of candidate types.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::ring::{adjoint_subring, invertibles, is_nilpotent, universal_grading, BasedRing};
use crate::{Error, Result, Status, Verdict};

/// Largest `N` accepted by the enumerator by default.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
/// Largest number of types the enumerator returns by default.
pub const DEFAULT_RESULT_CAP: usize = 1_000_000;

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `(N_1, N_{>=2})` where `N_1` is the product of the primes dividing `N`
/// exactly once.
pub fn squarefree_split(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::Domain("square-free split of 0".into()));
    }
    let n1: u64 = factorize(n)
        .into_iter()
        .filter(|&(_, e)| e == 1)
        .map(|(p, _)| p)
        .product();
    Ok((n1, n / n1))
}

fn free_part(n: u64) -> u64 {
    squarefree_split(n).map(|(a, _)| a).unwrap_or(1)
}

/// One block of a type: `mult` simples of dimension `sqrt(dim_sq)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeEntry {
    pub dim_sq: u64,
    pub mult: u64,
}

impl TypeEntry {
    /// Integer dimension, when `dim_sq` is a perfect square.
    pub fn dim(&self) -> Option<u64> {
        let r = self.dim_sq.isqrt();
        (r * r == self.dim_sq).then_some(r)
    }
}

/// A type `(d_1, n_1; d_2, n_2; ...)` with `d_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CategoryType {
    entries: Vec<TypeEntry>,
    total: u64,
    sqfree: u64,
    square_part: u64,
}

impl CategoryType {
    /// Builds a type from `(d^2, n)` pairs; entries are sorted and merged.
    pub fn from_squares(pairs: &[(u64, u64)]) -> Result<Self> {
        let mut entries: Vec<TypeEntry> = Vec::new();
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable();
        for (dim_sq, mult) in sorted {
            if dim_sq == 0 || mult == 0 {
                return Err(Error::Domain(format!("type entry ({dim_sq}, {mult}) must be positive")));
            }
            match entries.last_mut() {
                Some(last) if last.dim_sq == dim_sq => last.mult += mult,
                _ => entries.push(TypeEntry { dim_sq, mult }),
            }
        }
        if entries.first().map(|e| e.dim_sq) != Some(1) {
            return Err(Error::Domain("a type needs at least one simple of dimension 1".into()));
        }
        let total = entries
            .iter()
            .try_fold(0u64, |acc, e| acc.checked_add(e.dim_sq.checked_mul(e.mult)?))
            .ok_or_else(|| Error::Domain("type dimension overflows".into()))?;
        let (sqfree, square_part) = squarefree_split(total)?;
        Ok(CategoryType {
            entries,
            total,
            sqfree,
            square_part,
        })
    }

    /// Builds an integral type from `(d, n)` pairs.
    pub fn from_dims(pairs: &[(u64, u64)]) -> Result<Self> {
        let sq: Vec<(u64, u64)> = pairs.iter().map(|&(d, n)| (d * d, n)).collect();
        CategoryType::from_squares(&sq)
    }

    pub fn entries(&self) -> &[TypeEntry] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn sqfree(&self) -> u64 {
        self.sqfree
    }

    pub fn square_part(&self) -> u64 {
        self.square_part
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.dim().is_some())
    }

    /// Number of invertible simples.
    pub fn pointed_count(&self) -> u64 {
        self.entries[0].mult
    }
}

impl fmt::Display for CategoryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e.dim() {
                Some(d) => format!("{d},{}", e.mult),
                None => format!("sqrt{},{}", e.dim_sq, e.mult),
            })
            .collect();
        write!(f, "({})", parts.join("; "))
    }
}

pub const MULTIPLICITY_DIVISIBILITY: &str = "multiplicity-divisibility";
pub const DIMENSION_COPRIMALITY: &str = "dimension-coprimality";
pub const POINTED_DIVISIBILITY: &str = "pointed-divisibility";
pub const POINTED_ORBIT: &str = "pointed-orbit";
pub const NILPOTENT_ADJOINT: &str = "nilpotent-adjoint";

/// The square-free part `N_1` of the dimension divides every multiplicity
/// `n_i`, including `n_1`. Applies to weakly-integral modular types.
pub fn check_multiplicity_divisibility(ty: &CategoryType) -> Verdict {
    let n1 = ty.sqfree;
    match ty.entries.iter().find(|e| e.mult % n1 != 0) {
        None => Verdict::from_bool(MULTIPLICITY_DIVISIBILITY, true, format!("N_1 = {n1} divides every n_i")),
        Some(e) => Verdict::from_bool(
            MULTIPLICITY_DIVISIBILITY,
            false,
            format!("N_1 = {n1} does not divide n = {} at d^2 = {}", e.mult, e.dim_sq),
        ),
    }
    .exact()
}

/// For integral modular types: every `d_i > 1` has `d_i^2 | N` and
/// `gcd(d_i, N_1) = 1`.
pub fn check_dimension_coprimality(ty: &CategoryType) -> Verdict {
    if !ty.is_integral() {
        return Verdict::not_applicable(DIMENSION_COPRIMALITY, "type is not integral");
    }
    for e in &ty.entries[1..] {
        let d = e.dim().unwrap_or(0);
        if !ty.total.is_multiple_of(e.dim_sq) {
            return Verdict::from_bool(
                DIMENSION_COPRIMALITY,
                false,
                format!("{}^2 does not divide {}", d, ty.total),
            )
            .exact();
        }
        if d.gcd(&ty.sqfree) != 1 {
            return Verdict::from_bool(
                DIMENSION_COPRIMALITY,
                false,
                format!("gcd({d}, N_1 = {}) != 1", ty.sqfree),
            )
            .exact();
        }
    }
    Verdict::from_bool(DIMENSION_COPRIMALITY, true, "all d_i^2 | N and coprime to N_1").exact()
}

/// When `N_1` is coprime to every `d_i^2` with `d_i > 1`, each prime of `N_1`
/// divides the number of invertibles `n_1`.
pub fn check_pointed_divisibility(ty: &CategoryType) -> Verdict {
    if ty.entries[1..].iter().any(|e| e.dim_sq.gcd(&ty.sqfree) != 1) {
        return Verdict::not_applicable(POINTED_DIVISIBILITY, "N_1 shares a factor with some d_i^2");
    }
    let n1 = ty.pointed_count();
    Verdict::from_bool(
        POINTED_DIVISIBILITY,
        n1.is_multiple_of(ty.sqfree),
        format!("N_1 = {} vs n_1 = {n1}", ty.sqfree),
    )
    .exact()
}

/// The number of invertibles divides `n_i d_i^2` for every block.
pub fn check_pointed_orbit(ty: &CategoryType) -> Verdict {
    let n1 = ty.pointed_count();
    let bad = ty.entries.iter().find(|e| (e.mult * e.dim_sq) % n1 != 0);
    Verdict::from_bool(
        POINTED_ORBIT,
        bad.is_none(),
        match bad {
            None => format!("n_1 = {n1} divides every n_i d_i^2"),
            Some(e) => format!("n_1 = {n1} does not divide {}", e.mult * e.dim_sq),
        },
    )
    .exact()
}

/// For a non-pointed, integral, nilpotent commutative ring: `FPdim(C_ad)`
/// has trivial square-free part and `N_1` divides the order of the
/// universal grading group.
pub fn check_nilpotent_adjoint(ring: &BasedRing, table: &CharacterTable) -> Verdict {
    if !ring.is_commutative() {
        return Verdict::not_applicable(NILPOTENT_ADJOINT, "ring is not commutative");
    }
    if !table.dims.is_integral() {
        return Verdict::not_applicable(NILPOTENT_ADJOINT, "ring is not integral");
    }
    if invertibles(ring).len() == ring.rank() {
        return Verdict::not_applicable(NILPOTENT_ADJOINT, "ring is pointed");
    }
    if !is_nilpotent(ring).nilpotent {
        return Verdict::not_applicable(NILPOTENT_ADJOINT, "ring is not nilpotent");
    }
    let grading = match universal_grading(ring) {
        Ok(g) => g,
        Err(e) => return Verdict::new(NILPOTENT_ADJOINT, Status::Fail, e.to_string()),
    };
    let adjoint: BTreeSet<usize> = adjoint_subring(ring);
    let (Some(fp_ad), Some(total)) = (table.dims.subset_dim_exact(&adjoint), table.dims.total_exact()) else {
        return Verdict::not_applicable(NILPOTENT_ADJOINT, "dimensions are not exact");
    };
    let order = grading.order as u64;
    if order * fp_ad != total {
        return Verdict::new(
            NILPOTENT_ADJOINT,
            Status::Fail,
            format!("|U| * FPdim(C_ad) = {order} * {fp_ad} != FPdim = {total}"),
        );
    }
    let ad_free = free_part(fp_ad);
    let n1 = free_part(total);
    Verdict::from_bool(
        NILPOTENT_ADJOINT,
        ad_free == 1 && order.is_multiple_of(n1),
        format!("FPdim(C_ad) = {fp_ad} (square-free part {ad_free}), N_1 = {n1}, |U| = {order}"),
    )
    .exact()
}

/// `N = p^2 q^2 r^2 d` with primes `p < q < r` and `d` square-free and coprime to `pqr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePrimeShape {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub d: u64,
}

pub fn detect_three_prime_shape(n: u64) -> Option<ThreePrimeShape> {
    if n == 0 {
        return None;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 2) {
        return None;
    }
    let squared: Vec<u64> = f.iter().filter(|&&(_, e)| e == 2).map(|&(p, _)| p).collect();
    if squared.len() != 3 {
        return None;
    }
    let d = f.iter().filter(|&&(_, e)| e == 1).map(|&(p, _)| p).product();
    Some(ThreePrimeShape {
        p: squared[0],
        q: squared[1],
        r: squared[2],
        d,
    })
}

/// Pruning predicates for [`enumerate_types`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    /// `d_i^2 | N` for every block.
    pub dims_divide: bool,
    /// `N_1 | n_i` for every block.
    pub multiplicity_divisibility: bool,
    /// `d_i^2 | N` and `gcd(d_i, N_1) = 1` for `d_i > 1`.
    pub dimension_coprimality: bool,
    /// `N_1 | n_1`.
    pub pointed_divisibility: bool,
    /// `n_1 | n_i d_i^2` for every block.
    pub pointed_orbit: bool,
    /// Enumerate weakly-integral types (`d_i^2` any integer); only
    /// `multiplicity_divisibility` is applied on that path.
    pub weakly_integral: bool,
}

impl Filters {
    pub fn all() -> Self {
        Filters {
            dims_divide: true,
            multiplicity_divisibility: true,
            dimension_coprimality: true,
            pointed_divisibility: true,
            pointed_orbit: false,
            weakly_integral: false,
        }
    }
}

/// All types of dimension `n` passing the enabled filters, in lexicographic
/// order of their `(d^2, n)` entries.
pub fn enumerate_types(n: u64, filters: Filters, cap: u64, max_results: usize) -> Result<Vec<CategoryType>> {
    if n == 0 {
        return Err(Error::Domain("type dimension must be positive".into()));
    }
    if n > cap {
        return Err(Error::Size(format!("N = {n} exceeds the enumeration cap {cap}")));
    }
    let (n1, _) = squarefree_split(n)?;
    let integral_path = !filters.weakly_integral;
    let mut candidates: Vec<u64> = Vec::new();
    let mut s = 2u64;
    while s < n {
        let square = (s as f64).sqrt().round() as u64;
        let is_square = square * square == s;
        let keep = if integral_path {
            is_square
                && (!(filters.dims_divide || filters.dimension_coprimality) || n.is_multiple_of(s))
                && (!filters.dimension_coprimality || square.gcd(&n1) == 1)
        } else {
            true
        };
        if keep {
            candidates.push(s);
        }
        s += 1;
    }

    let step = if filters.multiplicity_divisibility { n1 } else { 1 };
    let mut out = Vec::new();
    let mut stack: Vec<(u64, u64)> = Vec::new();
    search(
        &candidates,
        0,
        n,
        step,
        n1,
        &filters,
        integral_path,
        &mut stack,
        &mut out,
        max_results,
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    candidates: &[u64],
    from: usize,
    remaining: u64,
    step: u64,
    n1: u64,
    filters: &Filters,
    integral_path: bool,
    stack: &mut Vec<(u64, u64)>,
    out: &mut Vec<CategoryType>,
    max_results: usize,
) -> Result<()> {
    // remaining is n_1, the number of invertibles, if we stop here
    let pointed = remaining;
    let leaf_ok = (!filters.multiplicity_divisibility || pointed.is_multiple_of(n1))
        && (!(filters.pointed_divisibility && integral_path) || pointed.is_multiple_of(n1))
        && (!(filters.pointed_orbit && integral_path) || stack.iter().all(|&(s, m)| (s * m) % pointed == 0));
    if leaf_ok {
        if out.len() >= max_results {
            return Err(Error::Size(format!("more than {max_results} types")));
        }
        let mut pairs = vec![(1, pointed)];
        pairs.extend(stack.iter().copied());
        out.push(CategoryType::from_squares(&pairs)?);
    }
    for (idx, &s) in candidates.iter().enumerate().skip(from) {
        if s >= remaining {
            break;
        }
        let mut mult = step;
        while mult * s < remaining {
            stack.push((s, mult));
            search(
                candidates,
                idx + 1,
                remaining - mult * s,
                step,
                n1,
                filters,
                integral_path,
                stack,
                out,
                max_results,
            )?;
            stack.pop();
            mult += step;
        }
    }
    Ok(())
}

/// Which of the type checks a type passes, by check name.
pub fn filter_provenance(ty: &CategoryType) -> Vec<String> {
    [
        check_multiplicity_divisibility(ty),
        check_dimension_coprimality(ty),
        check_pointed_divisibility(ty),
        check_pointed_orbit(ty),
    ]
    .into_iter()
    .filter(Verdict::passed)
    .map(|v| v.check)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits() {
        assert_eq!(squarefree_split(36).unwrap(), (1, 36));
        assert_eq!(squarefree_split(12).unwrap(), (3, 4));
        assert_eq!(squarefree_split(180).unwrap(), (5, 36));
        assert_eq!(squarefree_split(1).unwrap(), (1, 1));
        assert!(matches!(squarefree_split(0), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicity_divisibility() {
        let t = CategoryType::from_dims(&[(1, 12)]).unwrap();
        assert!(check_multiplicity_divisibility(&t).passed());
        let t = CategoryType::from_dims(&[(1, 4), (2, 2)]).unwrap();
        assert_eq!(t.total(), 12);
        assert!(check_multiplicity_divisibility(&t).failed());
        let t = CategoryType::from_dims(&[(1, 4), (2, 2), (4, 1)]).unwrap();
        assert_eq!(t.total(), 28);
        assert!(check_multiplicity_divisibility(&t).failed());
        let t = CategoryType::from_dims(&[(1, 4), (2, 8)]).unwrap();
        assert_eq!(t.sqfree(), 1);
        assert!(check_multiplicity_divisibility(&t).passed());
    }

    #[test]
    fn coprimality() {
        assert!(check_dimension_coprimality(&CategoryType::from_dims(&[(1, 7)]).unwrap()).passed());
        // 36 does not divide 68
        assert!(check_dimension_coprimality(&CategoryType::from_dims(&[(1, 32), (6, 1)]).unwrap()).failed());
        assert!(check_dimension_coprimality(&CategoryType::from_dims(&[(1, 12), (2, 6)]).unwrap()).passed());
        assert!(CategoryType::from_dims(&[(1, 0)]).is_err());
        assert!(CategoryType::from_dims(&[(2, 1)]).is_err());
    }

    #[test]
    fn enumerates_small_types() {
        let none = Filters::default();
        // N = 8: (1,8), (1,4;2,1)
        let all = enumerate_types(8, none, DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP).unwrap();
        let shown: Vec<String> = all.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, vec!["(1,4; 2,1)", "(1,8)"]);
        let t = enumerate_types(6, Filters::all(), DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].to_string(), "(1,6)");
    }

    #[test]
    fn three_prime_shape() {
        let s = detect_three_prime_shape(4 * 9 * 25 * 7).unwrap();
        assert_eq!((s.p, s.q, s.r, s.d), (2, 3, 5, 7));
        assert!(detect_three_prime_shape(4 * 9).is_none());
        assert!(detect_three_prime_shape(8 * 9 * 25).is_none());
    }
}
