//! Exact finite-group engine.
//!
//! Groups are explicit Cayley tables, either given directly or enumerated as
//! the closure of a list of permutations. Everything here is exact: class
//! algebra constants are integers and products of class sums are computed
//! over the rationals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::ring::BasedRing;
use crate::{Error, Result};

/// Default bound on the order of a group enumerated from generators.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;
/// Default bound on the order of groups for full group-ring computations.
pub const DEFAULT_GROUP_RING_CAP: usize = 500;

/// A permutation of `{0, .., n-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `(0,1)`; points are
    /// 0-based. `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced cycle in {text:?}")))?;
            let points: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<_>>()?;
            let mut distinct = BTreeSet::new();
            for &p in &points {
                if p >= degree {
                    return Err(Error::Parse(format!("point {p} exceeds degree {degree}")));
                }
                if !distinct.insert(p) {
                    return Err(Error::Parse(format!("point {p} repeated in a cycle")));
                }
            }
            let mut cycle: Vec<usize> = (0..degree).collect();
            for idx in 0..points.len() {
                cycle[points[idx]] = points[(idx + 1) % points.len()];
            }
            // products of cycles act right to left
            images = compose_images(&images, &cycle);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_images(images)
    }

    /// Largest point mentioned in cycle notation, plus one.
    pub fn cycle_degree(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .map(|p| p + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(compose_images(&self.0, &other.0))
    }

    fn padded(&self, n: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len()..n);
        Permutation(v)
    }
}

fn compose_images(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            let parts: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// A finite group as an explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<usize>,
    identity: usize,
}

impl CayleyTable {
    /// Builds and checks a table given as rows: `rows[a][b] = a * b`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Structure("empty Cayley table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Structure(format!("row {a} has {} entries", row.len())));
            }
            let mut seen = vec![false; order];
            for &x in row {
                if x >= order || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Structure(format!("row {a} is not a permutation")));
                }
                mul.push(x as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::Structure("table has no identity".into()))?;
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            inv[a] = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::Structure(format!("element {a} has no inverse")))?;
        }
        let table = CayleyTable {
            order,
            mul,
            inv,
            identity,
        };
        table.check_associative()?;
        Ok(table)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a, b, c| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::Structure(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1_000_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::Structure(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut idx = 0;
        while idx < elems.len() {
            let x = elems[idx];
            idx += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }
}

/// Enumerates the group generated by `perms` breadth-first from the
/// identity, multiplying on the right by the generators in the given order.
pub fn cayley_from_generators(perms: &[Permutation], cap: usize) -> Result<CayleyTable> {
    let degree = perms.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = perms.iter().map(|p| p.padded(degree)).collect();
    let mut elems = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    // word structure: element b = parent[b] * gens[via[b]]
    let mut parent = vec![usize::MAX];
    let mut via = vec![usize::MAX];
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut idx = 0;
    while idx < elems.len() {
        let x = elems[idx].clone();
        for (gi, g) in gens.iter().enumerate() {
            let y = x.compose(g);
            let yi = match index.get(&y) {
                Some(&yi) => yi,
                None => {
                    if elems.len() >= cap {
                        return Err(Error::Size(format!("closure exceeds the cap of {cap} elements")));
                    }
                    let yi = elems.len();
                    index.insert(y.clone(), yi);
                    elems.push(y);
                    parent.push(idx);
                    via.push(gi);
                    yi
                }
            };
            right[gi].push(yi as u32);
        }
        idx += 1;
    }
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        mul[a * n] = a as u32;
        for b in 1..n {
            let left = mul[a * n + parent[b]] as usize;
            mul[a * n + b] = right[via[b]][left];
        }
    }
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            if mul[a * n + b] == 0 {
                inv[a] = b;
                break;
            }
        }
    }
    Ok(CayleyTable {
        order: n,
        mul,
        inv,
        identity: 0,
    })
}

/// Conjugacy classes and class-algebra structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub order: usize,
    /// Classes as sorted element lists; class 0 is `{identity}`.
    pub classes: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub commutator: Vec<usize>,
    /// Flat `(i * m + j) * m + k`: `C_i C_j = sum_k a_ijk C_k`.
    pub a: Vec<u64>,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn a(&self, i: usize, j: usize, k: usize) -> u64 {
        let m = self.classes.len();
        self.a[(i * m + j) * m + k]
    }

    /// Classes contained in the commutator subgroup.
    pub fn commutator_classes(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.commutator.iter().copied().collect();
        (0..self.classes.len())
            .filter(|&j| set.contains(&self.classes[j][0]))
            .collect()
    }
}

pub fn class_data(g: &CayleyTable) -> Result<ClassData> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = vec![g.identity()];
    order.extend((0..n).filter(|&x| x != g.identity()));
    for x in order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<usize> = (0..n)
            .map(|h| g.mul(g.mul(h, x), g.inv(h)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        members.sort_unstable();
        for &y in &members {
            class_of[y] = id;
        }
        classes.push(members);
    }
    let m = classes.len();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();

    let mut a = vec![0u64; m * m * m];
    let mut counts = vec![0u64; n];
    for i in 0..m {
        for j in 0..m {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in &classes[i] {
                for &y in &classes[j] {
                    counts[g.mul(x, y)] += 1;
                }
            }
            for (k, class) in classes.iter().enumerate() {
                let value = counts[class[0]];
                if let Some(&z) = class.iter().find(|&&z| counts[z] != value) {
                    return Err(Error::Inconsistent(format!(
                        "a({i},{j},{k}) differs between representatives {} and {z}",
                        class[0]
                    )));
                }
                a[(i * m + j) * m + k] = value;
            }
        }
    }

    let mut commutators = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
            commutators.insert(c);
        }
    }
    let commutator = g.subgroup_closure(&commutators.into_iter().collect::<Vec<_>>());
    let in_comm: BTreeSet<usize> = commutator.iter().copied().collect();
    for class in &classes {
        let inside = class.iter().filter(|x| in_comm.contains(x)).count();
        if inside != 0 && inside != class.len() {
            return Err(Error::Inconsistent(
                "commutator subgroup is not a union of classes".into(),
            ));
        }
    }

    Ok(ClassData {
        order: n,
        classes,
        sizes,
        class_of,
        inverse_class,
        commutator,
        a,
    })
}

/// An element of the rational class algebra, by class coefficients.
pub type ClassVector = Vec<BigRational>;

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Product in the class algebra via the structure constants.
pub fn class_mul(classes: &ClassData, x: &ClassVector, y: &ClassVector) -> ClassVector {
    let m = classes.num_classes();
    let mut z = vec![BigRational::zero(); m];
    for i in 0..m {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..m {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for (k, zk) in z.iter_mut().enumerate() {
                let a = classes.a(i, j, k);
                if a != 0 {
                    *zk += &xy * rational(a);
                }
            }
        }
    }
    z
}

/// `prod_j C_j / |C^j|` in the class algebra.
pub fn normalized_class_product(classes: &ClassData) -> ClassVector {
    let m = classes.num_classes();
    let mut p = vec![BigRational::zero(); m];
    p[0] = BigRational::one();
    for j in 0..m {
        let mut basis = vec![BigRational::zero(); m];
        basis[j] = BigRational::new(BigInt::one(), BigInt::from(classes.sizes[j]));
        p = class_mul(classes, &p, &basis);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaradaGroupReport {
    pub passed: bool,
    /// Coefficients of `(prod_j C_j/|C^j|)^2`, as reduced fractions.
    pub lhs: Vec<String>,
    /// Coefficients of `(1/|G'|) sum_{C^j in G'} C_j`.
    pub rhs: Vec<String>,
    /// First class whose coefficients differ.
    pub mismatch: Option<usize>,
    pub commutator_order: usize,
}

/// Exact check of `(prod_j C_j/|C^j|)^2 = (1/|G'|) sum_{C^j in G'} C_j`.
pub fn verify_harada_group(classes: &ClassData) -> HaradaGroupReport {
    let p = normalized_class_product(classes);
    let lhs = class_mul(classes, &p, &p);
    let m = classes.num_classes();
    let mut rhs = vec![BigRational::zero(); m];
    let weight = BigRational::new(BigInt::one(), BigInt::from(classes.commutator.len()));
    for j in classes.commutator_classes() {
        rhs[j] = weight.clone();
    }
    let mismatch = (0..m).find(|&j| lhs[j] != rhs[j]);
    HaradaGroupReport {
        passed: mismatch.is_none(),
        lhs: lhs.iter().map(ToString::to_string).collect(),
        rhs: rhs.iter().map(ToString::to_string).collect(),
        mismatch,
        commutator_order: classes.commutator.len(),
    }
}

/// Class algebra as a based ring: basis = classes, `N = a`, dual = inverse class.
pub fn class_algebra_as_ring(classes: &ClassData) -> Result<BasedRing> {
    let labels = classes
        .classes
        .iter()
        .enumerate()
        .map(|(j, c)| format!("C{j}[{}]", c.len()))
        .collect();
    let n = classes
        .a
        .iter()
        .map(|&v| u32::try_from(v).map_err(|_| Error::Size(format!("class constant {v} exceeds u32"))))
        .collect::<Result<Vec<u32>>>()?;
    BasedRing::new(labels, n, 0, classes.inverse_class.clone())
}

/// Unnormalised `prod_j C_j` in the integral group ring `Z[G]`.
pub fn group_ring_class_product(g: &CayleyTable, classes: &ClassData, cap: usize) -> Result<Vec<BigInt>> {
    let n = g.order();
    if n > cap {
        return Err(Error::Size(format!("group ring of order {n} exceeds cap {cap}")));
    }
    let mut v = vec![BigInt::zero(); n];
    v[g.identity()] = BigInt::one();
    for class in &classes.classes {
        let mut next = vec![BigInt::zero(); n];
        for x in 0..n {
            if v[x].is_zero() {
                continue;
            }
            for &y in class {
                next[g.mul(x, y)] += &v[x];
            }
        }
        v = next;
    }
    Ok(v)
}

fn group_ring_mul(g: &CayleyTable, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let n = g.order();
    let mut z = vec![BigRational::zero(); n];
    for a in 0..n {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if !y[b].is_zero() {
                z[g.mul(a, b)] += &x[a] * &y[b];
            }
        }
    }
    z
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingOracle {
    /// `prod_j C_j/|C^j|` agrees between the class algebra and `Q[G]`.
    pub product_matches: bool,
    /// Its square agrees as well.
    pub square_matches: bool,
}

/// Recomputes the normalised class product and its square by direct
/// convolution in the `|G|`-dimensional group ring and compares them with the
/// class-algebra results.
pub fn group_ring_oracle(g: &CayleyTable, classes: &ClassData, cap: usize) -> Result<GroupRingOracle> {
    let raw = group_ring_class_product(g, classes, cap)?;
    let denom: BigInt = classes.sizes.iter().map(|&s| BigInt::from(s)).product();
    let p_ring: Vec<BigRational> = raw.into_iter().map(|c| BigRational::new(c, denom.clone())).collect();
    let p_class = normalized_class_product(classes);
    let product_matches = (0..g.order()).all(|x| p_ring[x] == p_class[classes.class_of[x]]);
    let sq_ring = group_ring_mul(g, &p_ring, &p_ring);
    let sq_class = class_mul(classes, &p_class, &p_class);
    let square_matches = (0..g.order()).all(|x| sq_ring[x] == sq_class[classes.class_of[x]]);
    Ok(GroupRingOracle {
        product_matches,
        square_matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetCheck {
    pub support: Vec<usize>,
    pub commutator_order: usize,
    pub is_coset: bool,
}

/// Whether the support of `prod_j C_j` in `Z[G]` is a single coset of `G'`.
pub fn class_product_coset(g: &CayleyTable, classes: &ClassData, cap: usize) -> Result<CosetCheck> {
    let raw = group_ring_class_product(g, classes, cap)?;
    let support: Vec<usize> = (0..g.order()).filter(|&x| !raw[x].is_zero()).collect();
    let is_coset = match support.first() {
        Some(&x) => {
            let coset: BTreeSet<usize> = classes.commutator.iter().map(|&c| g.mul(x, c)).collect();
            coset.into_iter().eq(support.iter().copied())
        }
        None => false,
    };
    Ok(CosetCheck {
        support,
        commutator_order: classes.commutator.len(),
        is_coset,
    })
}

/// The representation ring `K(Rep G)` recovered from the central characters.
#[derive(Debug, Clone)]
pub struct CharacterRing {
    pub ring: BasedRing,
    pub degrees: Vec<u64>,
    /// `values[a][j] = chi_a(g_j)` for a representative `g_j` of class `j`.
    pub values: Vec<Vec<Complex64>>,
}

/// Recovers the irreducible characters of `G` from the character table of
/// its class algebra and builds the fusion ring of `Rep(G)`.
///
/// A row of the class-algebra table is a central character
/// `omega(C_j) = |C_j| chi(g_j) / chi(1)`; its weighted codegree is
/// `|G| / chi(1)^2`, which gives `chi(1)` and then every `chi(g_j)`.
pub fn character_ring(classes: &ClassData, table: &CharacterTable) -> Result<CharacterRing> {
    let m = classes.num_classes();
    let order = classes.order as f64;
    let mut chars: Vec<(u64, Vec<Complex64>)> = Vec::with_capacity(m);
    for (row, &c) in table.values.iter().zip(&table.codegrees) {
        let deg_f = (order / c).sqrt();
        let deg = deg_f.round();
        if (deg_f - deg).abs() > 1e-6 || deg < 1.0 {
            return Err(Error::numeric(
                "character degree is not an integer",
                (deg_f - deg).abs(),
            ));
        }
        let values = (0..m).map(|j| row[j] * deg / classes.sizes[j] as f64).collect();
        chars.push((deg as u64, values));
    }
    // trivial character first, then by degree (stable on the table's row order)
    chars[1..].sort_by_key(|(d, _)| *d);

    let mut n = vec![0u32; m * m * m];
    let mut worst = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let s: Complex64 = (0..m)
                    .map(|j| chars[a].1[j] * chars[b].1[j] * chars[c].1[j].conj() * classes.sizes[j] as f64)
                    .sum::<Complex64>()
                    / order;
                let k = s.re.round();
                worst = worst.max((s - k).norm());
                n[(a * m + b) * m + c] = k.max(0.0) as u32;
            }
        }
    }
    if worst > 1e-6 {
        return Err(Error::numeric("tensor product multiplicities are not integers", worst));
    }
    let dual = (0..m)
        .map(|a| {
            (0..m)
                .find(|&b| n[(a * m + b) * m] == 1)
                .ok_or_else(|| Error::numeric("character without a dual", worst))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = chars
        .iter()
        .enumerate()
        .map(|(a, (d, _))| format!("chi{a}[{d}]"))
        .collect();
    let ring = BasedRing::new(labels, n, 0, dual)?;
    Ok(CharacterRing {
        ring,
        degrees: chars.iter().map(|(d, _)| *d).collect(),
        values: chars.into_iter().map(|(_, v)| v).collect(),
    })
}

/// For each row of a table of `Rep(G)`, the conjugacy class whose character
/// values it reproduces.
pub fn match_rows_to_classes(chars: &CharacterRing, table: &CharacterTable) -> Result<Vec<usize>> {
    let m = chars.values.len();
    table
        .values
        .iter()
        .map(|row| {
            (0..m)
                .find(|&j| (0..m).all(|a| (row[a] - chars.values[a][j]).norm() < 1e-6))
                .ok_or_else(|| Error::numeric("table row matches no conjugacy class", 0.0))
        })
        .collect()
}

/// Class dimensions of `Rep(G)` against conjugacy-class sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSizeOracle {
    /// `class_of_row[j]` is the conjugacy class matched to row `j`.
    pub class_of_row: Vec<usize>,
    pub class_dims: Vec<f64>,
    pub snapped: Vec<Option<u64>>,
    pub matches: bool,
}

/// Computes the table of the class algebra, rebuilds `Rep(G)` from it, takes
/// the table of `Rep(G)`, and compares its snapped class dimensions with the
/// sizes of the matched conjugacy classes.
pub fn class_size_oracle(classes: &ClassData, tol: &crate::Tolerances, seed: u64) -> Result<ClassSizeOracle> {
    let algebra = class_algebra_as_ring(classes)?;
    let table = crate::chartab::compute_table(&algebra, tol, seed)?;
    let chars = character_ring(classes, &table)?;
    let rep_table = crate::chartab::compute_table(&chars.ring, tol, seed)?;
    let class_of_row = match_rows_to_classes(&chars, &rep_table)?;
    let snapped: Vec<Option<u64>> = rep_table
        .class_dims
        .iter()
        .map(|&c| crate::identities::snap_positive(c, tol.snap))
        .collect();
    let matches = class_of_row
        .iter()
        .zip(&snapped)
        .all(|(&j, s)| *s == Some(classes.sizes[j] as u64))
        && class_of_row.iter().collect::<BTreeSet<_>>().len() == classes.num_classes();
    Ok(ClassSizeOracle {
        class_of_row,
        class_dims: rep_table.class_dims,
        snapped,
        matches,
    })
}
