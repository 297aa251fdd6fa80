//! Finite groups used across the integration tests, built as Cayley tables.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use fusionkit::format::{parse_input, Input, Meta};
use fusionkit::group::{cayley_from_generators, CayleyTable, Permutation, DEFAULT_CLOSURE_CAP};
use fusionkit::ring::BasedRing;

pub fn table(rows: Vec<Vec<usize>>) -> CayleyTable {
    CayleyTable::from_rows(&rows).expect("construction yields a group")
}

pub fn cyclic(n: usize) -> CayleyTable {
    table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
}

pub fn product(g: &CayleyTable, h: &CayleyTable) -> CayleyTable {
    let (m, n) = (g.order(), h.order());
    table(
        (0..m * n)
            .map(|a| {
                (0..m * n)
                    .map(|b| g.mul(a / n, b / n) * n + h.mul(a % n, b % n))
                    .collect()
            })
            .collect(),
    )
}

pub fn products(parts: &[CayleyTable]) -> CayleyTable {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| product(&acc, p))
}

/// `<x, y | x^n, y^m = x^s, y x y^-1 = x^r>`, elements `x^i y^j`.
pub fn metacyclic(n: usize, m: usize, r: usize, s: usize) -> CayleyTable {
    let pow_r = |k: usize| (0..k).fold(1usize, |acc, _| acc * r % n);
    assert_eq!(pow_r(m), 1 % n, "r^m must be 1 mod n");
    assert_eq!(r * s % n, s % n, "x^s must be fixed by conjugation");
    let idx = |i: usize, j: usize| i * m + j;
    table(
        (0..n * m)
            .map(|a| {
                let (ai, aj) = (a / m, a % m);
                (0..n * m)
                    .map(|b| {
                        let (bi, bj) = (b / m, b % m);
                        let wrap = if aj + bj >= m { s } else { 0 };
                        idx((ai + bi * pow_r(aj) + wrap) % n, (aj + bj) % m)
                    })
                    .collect()
            })
            .collect(),
    )
}

pub fn dihedral(n: usize) -> CayleyTable {
    metacyclic(n, 2, n - 1, 0)
}

/// `N ⋊ H` where `phi[h]` is the automorphism of `N` by which `h` acts, as an image list.
pub fn semidirect(n: &CayleyTable, h: &CayleyTable, phi: &[Vec<usize>]) -> CayleyTable {
    let (a, b) = (n.order(), h.order());
    for h1 in 0..b {
        for h2 in 0..b {
            for x in 0..a {
                assert_eq!(phi[h.mul(h1, h2)][x], phi[h1][phi[h2][x]], "phi is not an action");
            }
        }
        for x in 0..a {
            for y in 0..a {
                assert_eq!(
                    phi[h1][n.mul(x, y)],
                    n.mul(phi[h1][x], phi[h1][y]),
                    "phi is not by automorphisms"
                );
            }
        }
    }
    // (x, h)(y, k) = (x phi_h(y), hk)
    table(
        (0..a * b)
            .map(|p| {
                (0..a * b)
                    .map(|q| {
                        let (x, hh) = (p / b, p % b);
                        let (y, k) = (q / b, q % b);
                        n.mul(x, phi[hh][y]) * b + h.mul(hh, k)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Powers of a single automorphism `f` of `n`, indexed like `cyclic(k)`.
pub fn powers(n: &CayleyTable, f: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n.order()).collect::<Vec<_>>()];
    for _ in 1..k {
        let last = out.last().unwrap();
        out.push(last.iter().map(|&x| f[x]).collect());
    }
    out
}

/// The automorphism of an abelian group given as `products(cyclic ...)` that
/// sends generator `i` to the element `images[i]`, extended additively.
pub fn abelian_automorphism(orders: &[usize], images: &[Vec<usize>]) -> Vec<usize> {
    let total: usize = orders.iter().product();
    let digits = |mut e: usize| {
        let mut d = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            d[i] = e % orders[i];
            e /= orders[i];
        }
        d
    };
    let encode = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (x, o)| acc * o + x % o);
    (0..total)
        .map(|e| {
            let d = digits(e);
            let mut out = vec![0; orders.len()];
            for (g, &coef) in d.iter().enumerate() {
                for (slot, v) in out.iter_mut().zip(&images[g]) {
                    *slot += coef * v;
                }
            }
            encode(&out)
        })
        .collect()
}

pub fn from_generators(gens: &[&str]) -> CayleyTable {
    let degree = gens.iter().map(|g| Permutation::cycle_degree(g)).max().unwrap_or(1);
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|g| Permutation::parse_cycles(g, degree).unwrap())
        .collect();
    cayley_from_generators(&perms, DEFAULT_CLOSURE_CAP).unwrap()
}

pub fn quaternion8() -> CayleyTable {
    metacyclic(4, 2, 3, 2)
}

/// `(C4 x C2) ⋊ C2` with the given images of the generators `a = (1,0)`, `b = (0,1)`.
fn c4c2_by_c2(a_img: [usize; 2], b_img: [usize; 2]) -> CayleyTable {
    let orders = [4, 2];
    let n = products(&[cyclic(4), cyclic(2)]);
    let f = abelian_automorphism(&orders, &[a_img.to_vec(), b_img.to_vec()]);
    semidirect(&n, &cyclic(2), &powers(&n, &f, 2))
}

/// `SL(2,3)` as `Q8 ⋊ C3`, with `C3` cycling `i -> j -> k`.
fn sl23() -> CayleyTable {
    let q8 = from_generators(&["(0 2 1 3)(4 7 5 6)", "(0 4 1 5)(2 6 3 7)"]);
    // search for an order-3 automorphism moving the generator of order 4
    let elements: Vec<usize> = (0..8).collect();
    let order = |x: usize| {
        let mut k = 1;
        let mut y = x;
        while y != q8.identity() {
            y = q8.mul(y, x);
            k += 1;
        }
        k
    };
    let fours: Vec<usize> = elements.iter().copied().filter(|&x| order(x) == 4).collect();
    let (i, j) = (
        fours[0],
        *fours
            .iter()
            .find(|&&y| q8.mul(fours[0], y) != q8.mul(y, fours[0]))
            .unwrap(),
    );
    let k = q8.mul(i, j);
    // i -> j, j -> k determines the automorphism on the closure of {i, j}
    let mut image = vec![usize::MAX; 8];
    image[q8.identity()] = q8.identity();
    let mut frontier = vec![(q8.identity(), q8.identity())];
    while let Some((x, fx)) = frontier.pop() {
        for (g, fg) in [(i, j), (j, k)] {
            let y = q8.mul(x, g);
            if image[y] == usize::MAX {
                image[y] = q8.mul(fx, fg);
                frontier.push((y, image[y]));
            }
        }
    }
    semidirect(&q8, &cyclic(3), &powers(&q8, &image, 3))
}

/// Every group of order at most 24, one per isomorphism class, with a name.
pub fn small_groups() -> Vec<(String, CayleyTable)> {
    let c = cyclic;
    let mut out: Vec<(String, CayleyTable)> = Vec::new();
    let mut add = |name: &str, g: CayleyTable| out.push((name.to_string(), g));
    for n in [1, 2, 3, 5, 7, 11, 13, 17, 19, 23] {
        add(&format!("C{n}"), c(n));
    }
    add("C4", c(4));
    add("C2xC2", products(&[c(2), c(2)]));
    add("C6", c(6));
    add("S3", dihedral(3));
    add("C8", c(8));
    add("C4xC2", products(&[c(4), c(2)]));
    add("C2^3", products(&[c(2), c(2), c(2)]));
    add("D4", dihedral(4));
    add("Q8", quaternion8());
    add("C9", c(9));
    add("C3xC3", products(&[c(3), c(3)]));
    add("C10", c(10));
    add("D5", dihedral(5));
    add("C12", c(12));
    add("C6xC2", products(&[c(6), c(2)]));
    add("D6", dihedral(6));
    add("A4", from_generators(&["(0 1 2)", "(1 2 3)"]));
    add("Dic3", metacyclic(3, 4, 2, 0));
    add("C14", c(14));
    add("D7", dihedral(7));
    add("C15", c(15));

    add("C16", c(16));
    add("C4xC4", products(&[c(4), c(4)]));
    add("C8xC2", products(&[c(8), c(2)]));
    add("C4xC2xC2", products(&[c(4), c(2), c(2)]));
    add("C2^4", products(&[c(2), c(2), c(2), c(2)]));
    add("D8", dihedral(8));
    add("Q16", metacyclic(8, 2, 7, 4));
    add("SD16", metacyclic(8, 2, 3, 0));
    add("M16", metacyclic(8, 2, 5, 0));
    add("C4:C4", metacyclic(4, 4, 3, 0));
    add("D4xC2", products(&[dihedral(4), c(2)]));
    add("Q8xC2", products(&[quaternion8(), c(2)]));
    add("(C4xC2):C2", c4c2_by_c2([1, 1], [0, 1]));
    add("C4oD4", c4c2_by_c2([1, 0], [2, 1]));

    add("C18", c(18));
    add("C6xC3", products(&[c(6), c(3)]));
    add("D9", dihedral(9));
    add("S3xC3", products(&[dihedral(3), c(3)]));
    {
        let n = products(&[c(3), c(3)]);
        let inv: Vec<usize> = (0..9).map(|x| n.inv(x)).collect();
        add("(C3xC3):C2", semidirect(&n, &c(2), &powers(&n, &inv, 2)));
    }

    add("C20", c(20));
    add("C10xC2", products(&[c(10), c(2)]));
    add("D10", dihedral(10));
    add("Dic5", metacyclic(5, 4, 4, 0));
    add("C5:C4", metacyclic(5, 4, 2, 0));
    add("C21", c(21));
    add("C7:C3", metacyclic(7, 3, 2, 0));
    add("C22", c(22));
    add("D11", dihedral(11));

    add("C24", c(24));
    add("C3:C8", metacyclic(3, 8, 2, 0));
    add("SL(2,3)", sl23());
    add("Dic6", metacyclic(12, 2, 11, 6));
    add("C4xS3", products(&[c(4), dihedral(3)]));
    add("D12", dihedral(12));
    add("C2xDic3", products(&[c(2), metacyclic(3, 4, 2, 0)]));
    add(
        "C3:D4",
        from_generators(&["(0 1 2)", "(3 5)(4 6)", "(4 6)", "(0 1)(3 4 5 6)"]),
    );
    add("C12xC2", products(&[c(12), c(2)]));
    add("C3xD4", products(&[c(3), dihedral(4)]));
    add("C3xQ8", products(&[c(3), quaternion8()]));
    add("S4", from_generators(&["(0 1 2 3)", "(0 1)"]));
    add("C2xA4", products(&[c(2), from_generators(&["(0 1 2)", "(1 2 3)"])]));
    add("C2xC2xS3", products(&[c(2), c(2), dihedral(3)]));
    add("C6xC2xC2", products(&[c(6), c(2), c(2)]));
    out.sort_by_key(|(_, g)| g.order());
    out
}

/// Groups outside the small range that the tests also exercise.
pub fn extra_groups() -> Vec<(String, CayleyTable)> {
    vec![
        ("D5".into(), dihedral(5)),
        ("Q8".into(), quaternion8()),
        ("D4".into(), dihedral(4)),
        ("A4".into(), from_generators(&["(0 1 2)", "(1 2 3)"])),
        ("S4".into(), from_generators(&["(0 1 2 3)", "(0 1)"])),
        ("A5".into(), from_generators(&["(0 1 2 3 4)", "(0 1 2)"])),
    ]
}

pub fn element_order(g: &CayleyTable, x: usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Isomorphism invariants, strong enough to separate the groups above.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Signature {
    pub order: usize,
    pub element_orders: BTreeMap<usize, usize>,
    pub center_orders: BTreeMap<usize, usize>,
    pub commutator: usize,
    pub classes: usize,
    pub squares: usize,
    /// For each element, how many square roots it has; as a multiset.
    pub root_counts: BTreeMap<usize, usize>,
}

pub fn signature(g: &CayleyTable) -> Signature {
    let n = g.order();
    let mut element_orders = BTreeMap::new();
    for x in 0..n {
        *element_orders.entry(element_order(g, x)).or_insert(0) += 1;
    }
    let center: Vec<usize> = (0..n).filter(|&x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x))).collect();
    let mut center_orders = BTreeMap::new();
    for &z in &center {
        *center_orders.entry(element_order(g, z)).or_insert(0) += 1;
    }
    let commutators: Vec<usize> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let commutator = g.subgroup_closure(&commutators).len();
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for x in 0..n {
        if seen.insert(x) {
            classes += 1;
            for y in 0..n {
                seen.insert(g.mul(g.mul(y, x), g.inv(y)));
            }
        }
    }
    let mut roots = vec![0usize; n];
    for x in 0..n {
        roots[g.mul(x, x)] += 1;
    }
    let squares = roots.iter().filter(|&&r| r > 0).count();
    let mut root_counts = BTreeMap::new();
    for r in roots {
        *root_counts.entry(r).or_insert(0) += 1;
    }
    Signature {
        order: n,
        element_orders,
        center_orders,
        commutator,
        classes,
        squares,
        root_counts,
    }
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every document of the shipped corpus, by file name.
pub fn corpus() -> Vec<(String, Input)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let input = parse_input(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, input)
        })
        .collect()
}

pub fn corpus_rings() -> Vec<(String, BasedRing, Meta)> {
    corpus()
        .into_iter()
        .filter_map(|(name, input)| match input {
            Input::Ring { ring, meta } => Some((name, ring, meta)),
            _ => None,
        })
        .collect()
}

pub fn corpus_groups() -> Vec<(String, CayleyTable)> {
    corpus()
        .into_iter()
        .filter_map(|(name, input)| match input {
            Input::Group { table, .. } => Some((name, table)),
            _ => None,
        })
        .collect()
}

pub fn corpus_ring(file: &str) -> BasedRing {
    corpus_rings()
        .into_iter()
        .find(|(n, _, _)| n == file)
        .unwrap_or_else(|| panic!("{file} not in corpus"))
        .1
}
