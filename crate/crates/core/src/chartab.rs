//! Character tables of commutative based rings.
//!
//! The algebra homomorphisms `mu_j` of a commutative based ring are the common
//! left eigenvectors of its fusion matrices. They are found by diagonalising
//! one generic combination `sum_i t_i N_i`; once its eigenvalues are simple,
//! each eigenvector is a character up to scale, fixed by `mu_j(b_unit) = 1`.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ring::{fp_dims, invertibles, BasedRing, DimensionData};
use crate::{Error, Result, Tolerances};

/// Number of fresh coefficient draws after the first one.
pub const MAX_RETRIES: u64 = 8;
const COEFF_DENOM: u64 = 1 << 20;
const MAX_INVERSE_STEPS: usize = 12;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// `values[j][i] = mu_j(b_i)`.
    pub values: Vec<Vec<Complex64>>,
    /// Row of the Frobenius–Perron homomorphism; rows are ordered so this is 0.
    pub fp_index: usize,
    pub dims: DimensionData,
    pub codegrees: Vec<f64>,
    pub class_dims: Vec<f64>,
    pub unit: usize,
    pub duals: Vec<usize>,
    pub labels: Vec<String>,
    pub seed: u64,
    /// Coefficient draws used, starting at 1.
    pub attempts: u64,
}

impl CharacterTable {
    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn rank(&self) -> usize {
        self.duals.len()
    }

    pub fn total(&self) -> f64 {
        self.dims.total
    }

    pub fn value(&self, j: usize, i: usize) -> Complex64 {
        self.values[j][i]
    }

    /// `mu_j(b_i) / d_i`, the value of the normalised character.
    pub fn normalized(&self, j: usize, i: usize) -> Complex64 {
        self.values[j][i] / self.dims.dims[i]
    }

    fn weight(&self, i: usize) -> f64 {
        f64::from(self.dims.weights[i])
    }
}

/// Computes the character table of `ring`.
///
/// Rows are sorted: the Frobenius–Perron row first, then the remaining rows
/// in decreasing lexicographic order of their values, so tables computed
/// with different seeds agree row for row.
pub fn compute_table(ring: &BasedRing, tol: &Tolerances, seed: u64) -> Result<CharacterTable> {
    if !ring.is_commutative() {
        return Err(Error::Precondition("character tables need a commutative ring".into()));
    }
    let dims = fp_dims(ring, tol)?;
    let r = ring.rank();

    let mut last_gap = 0.0;
    for attempt in 0..=MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let coeffs: Vec<f64> = (0..r)
            .map(|_| rng.gen_range(1..=COEFF_DENOM) as f64 / COEFF_DENOM as f64)
            .collect();

        // Transposed combination: its eigenvectors are the characters.
        let at = DMatrix::<f64>::from_fn(r, r, |j, k| {
            (0..r).map(|i| coeffs[i] * f64::from(ring.n(i, j, k))).sum()
        });
        let eig = at.complex_eigenvalues();
        let scale = eig.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let gap = min_separation(eig.as_slice());
        last_gap = gap;
        if gap <= 1e-6 * scale {
            continue;
        }

        let atc = at.map(|v| Complex64::new(v, 0.0));
        let start = nalgebra::DVector::<Complex64>::from_fn(r, |_, _| {
            Complex64::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))
        });
        let mut values = Vec::with_capacity(r);
        for &lambda in eig.iter() {
            match eigenvector(&atc, lambda, scale, &start) {
                Some(mut v) => {
                    let pivot = v[ring.unit()];
                    for x in v.iter_mut() {
                        *x /= pivot;
                        if x.im.abs() < 1e-13 * (1.0 + x.re.abs()) {
                            x.im = 0.0;
                        }
                    }
                    values.push(v);
                }
                None => break,
            }
        }
        if values.len() != r {
            continue;
        }

        let table = assemble(ring, dims.clone(), values, seed, attempt + 1, tol)?;
        let res = certify(ring, &table);
        if res.homomorphism > tol.eigen * scale {
            continue;
        }
        return Ok(table);
    }
    Err(Error::numeric(
        format!(
            "eigenvalues of the generic combination kept colliding after {} draws",
            MAX_RETRIES + 1
        ),
        last_gap,
    ))
}

fn min_separation(eig: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for a in 0..eig.len() {
        for b in a + 1..eig.len() {
            gap = gap.min((eig[a] - eig[b]).norm());
        }
    }
    gap
}

/// Inverse iteration at a slightly shifted eigenvalue, run until the
/// eigen-residual stops improving.
fn eigenvector(
    at: &DMatrix<Complex64>,
    lambda: Complex64,
    scale: f64,
    start: &nalgebra::DVector<Complex64>,
) -> Option<Vec<Complex64>> {
    let r = at.nrows();
    let shift = lambda + Complex64::new(1e-10, 1e-10) * scale;
    let shifted = at - DMatrix::<Complex64>::identity(r, r) * shift;
    let lu = shifted.lu();
    let residual = |v: &nalgebra::DVector<Complex64>| (at * v - v * lambda).norm();
    let mut v = start.clone();
    let mut best = f64::INFINITY;
    for _ in 0..MAX_INVERSE_STEPS {
        let mut next = lu.solve(&v)?;
        let m = next.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if !m.is_finite() || m == 0.0 {
            return None;
        }
        next /= Complex64::new(m, 0.0);
        let res = residual(&next);
        if res >= best {
            break;
        }
        best = res;
        v = next;
        if res < 1e-15 * scale {
            break;
        }
    }
    Some(v.iter().copied().collect())
}

fn assemble(
    ring: &BasedRing,
    dims: DimensionData,
    values: Vec<Vec<Complex64>>,
    seed: u64,
    attempts: u64,
    tol: &Tolerances,
) -> Result<CharacterTable> {
    let r = ring.rank();
    let positive = |row: &Vec<Complex64>| row.iter().all(|z| z.re > tol.zero && z.im.abs() < 1e-8 * (1.0 + z.re));
    let fp_rows: Vec<usize> = (0..values.len()).filter(|&j| positive(&values[j])).collect();
    if fp_rows.len() != 1 {
        return Err(Error::numeric(
            format!("expected one positive row, found {}", fp_rows.len()),
            0.0,
        ));
    }
    let mut values = values;
    let fp = values.remove(fp_rows[0]);
    values.sort_by_key(|row| std::cmp::Reverse(row_key(row)));
    values.insert(0, fp);

    let weights: Vec<f64> = dims.weights.iter().map(|&w| f64::from(w)).collect();
    let codegrees: Vec<f64> = values
        .iter()
        .map(|row| {
            (0..r)
                .map(|i| row[i] * row[ring.dual(i)] / weights[i])
                .sum::<Complex64>()
                .re
        })
        .collect();
    if let Some(c) = codegrees.iter().find(|&&c| c <= 0.0) {
        return Err(Error::numeric("non-positive formal codegree", *c));
    }
    let class_dims = codegrees.iter().map(|c| dims.total / c).collect();

    Ok(CharacterTable {
        values,
        fp_index: 0,
        dims,
        codegrees,
        class_dims,
        unit: ring.unit(),
        duals: ring.duals().to_vec(),
        labels: ring.labels().to_vec(),
        seed,
        attempts,
    })
}

fn row_key(row: &[Complex64]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect()
}

/// `c_j = sum_i mu_j(b_i) mu_j(b_{i*}) / N_{i i*}^1`.
pub fn codegree(table: &CharacterTable, j: usize) -> f64 {
    table.codegrees[j]
}

/// Maximum residuals of the defining identities of a character table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TableResiduals {
    pub homomorphism: f64,
    pub unit: f64,
    pub fp_row: f64,
    /// Row relation `sum_i mu_j(b_i) mu_k(b_{i*}) / w_i = delta_jk c_j`.
    pub orthogonality: f64,
    /// Column relation `sum_j mu_j(b_i) mu_j(b_{k*}) / c_j = delta_ik w_i`.
    pub column_orthogonality: f64,
    pub class_dim_sum: f64,
    pub codegree_imag: f64,
}

pub fn certify(ring: &BasedRing, table: &CharacterTable) -> TableResiduals {
    let r = ring.rank();
    let mut res = TableResiduals::default();
    for (j, row) in table.values.iter().enumerate() {
        res.unit = res.unit.max((row[ring.unit()] - 1.0).norm());
        for i in 0..r {
            for k in 0..r {
                let rhs: Complex64 = (0..r).map(|l| row[l] * f64::from(ring.n(i, k, l))).sum();
                res.homomorphism = res.homomorphism.max((row[i] * row[k] - rhs).norm());
            }
        }
        for (k, other) in table.values.iter().enumerate() {
            let s: Complex64 = (0..r).map(|i| row[i] * other[ring.dual(i)] / table.weight(i)).sum();
            let expected = if j == k { table.codegrees[j] } else { 0.0 };
            res.orthogonality = res.orthogonality.max((s - expected).norm());
            if j == k {
                res.codegree_imag = res.codegree_imag.max(s.im.abs());
            }
        }
    }
    for i in 0..r {
        for k in 0..r {
            let s: Complex64 = table
                .values
                .iter()
                .zip(&table.codegrees)
                .map(|(row, c)| row[i] * row[ring.dual(k)] / *c)
                .sum();
            let expected = if i == k { table.weight(i) } else { 0.0 };
            res.column_orthogonality = res.column_orthogonality.max((s - expected).norm());
        }
    }
    let fp = &table.values[table.fp_index];
    res.fp_row = (0..r).map(|i| (fp[i] - table.dims.dims[i]).norm()).fold(0.0, f64::max);
    res.class_dim_sum = (table.class_dims.iter().sum::<f64>() - table.total()).abs();
    res
}

/// Largest entry difference between two tables after pairing each row of
/// `a` with a distinct nearest row of `b`; `None` when the shapes differ or
/// no such pairing exists within `tol`.
pub fn row_permutation_distance(a: &CharacterTable, b: &CharacterTable, tol: f64) -> Option<f64> {
    if a.values.len() != b.values.len() || a.rank() != b.rank() {
        return None;
    }
    let dist = |x: &[Complex64], y: &[Complex64]| x.iter().zip(y).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
    let mut used = vec![false; b.values.len()];
    let mut worst = 0.0f64;
    for row in &a.values {
        let (k, d) = b
            .values
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, other)| (k, dist(row, other)))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if d > tol {
            return None;
        }
        used[k] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualHypergroup {
    pub size: usize,
    /// Flat `(a * size + b) * size + c`: coefficient of `mu_c` in `mu_a ⋆ mu_b`.
    pub p: Vec<f64>,
    pub nonneg_flag: bool,
    /// Largest imaginary part discarded from the structure constants.
    pub max_imag: f64,
    pub residual: f64,
}

impl DualHypergroup {
    pub fn p(&self, a: usize, b: usize, c: usize) -> f64 {
        self.p[(a * self.size + b) * self.size + c]
    }
}

/// Structure constants of the pointwise product of normalised characters,
/// `(mu_a ⋆ mu_b)(b_i) = mu_a(b_i) mu_b(b_i) / d_i`, expanded back in the rows.
pub fn dual_hypergroup(table: &CharacterTable, tol: &Tolerances) -> Result<DualHypergroup> {
    let m = table.rows();
    let r = table.rank();
    // Columns of `basis` are the rows of the table.
    let basis = DMatrix::<Complex64>::from_fn(r, m, |i, c| table.values[c][i]);
    let lu = basis.clone().lu();
    let mut p = vec![0.0; m * m * m];
    let mut max_imag = 0.0f64;
    let mut residual = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            let target = nalgebra::DVector::<Complex64>::from_fn(r, |i, _| {
                table.values[a][i] * table.values[b][i] / table.dims.dims[i]
            });
            let coeffs = lu
                .solve(&target)
                .ok_or_else(|| Error::numeric("singular character table", f64::INFINITY))?;
            residual = residual.max((&basis * &coeffs - &target).norm());
            for c in 0..m {
                max_imag = max_imag.max(coeffs[c].im.abs());
                p[(a * m + b) * m + c] = coeffs[c].re;
            }
        }
    }
    let bound = tol.identity.max(1e3 * tol.eigen);
    if residual > bound || max_imag > bound {
        return Err(Error::numeric(
            "dual hypergroup expansion is not real",
            residual.max(max_imag),
        ));
    }
    let nonneg_flag = p.iter().all(|&v| v >= -bound);
    Ok(DualHypergroup {
        size: m,
        p,
        nonneg_flag,
        max_imag,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurnsideEntry {
    pub index: usize,
    pub label: String,
    pub invertible: bool,
    pub has_zero: bool,
    /// Smallest `|mu_j(b_i)|` over all rows.
    pub min_abs: f64,
}

impl BurnsideEntry {
    pub fn holds(&self) -> bool {
        self.invertible != self.has_zero
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurnsideReport {
    pub entries: Vec<BurnsideEntry>,
    pub holds: bool,
}

/// Burnside's vanishing property: a simple is non-invertible exactly when its
/// character vanishes at some homomorphism.
pub fn burnside_check(ring: &BasedRing, table: &CharacterTable, tol: &Tolerances) -> BurnsideReport {
    let inv = invertibles(ring);
    let entries: Vec<BurnsideEntry> = (0..ring.rank())
        .map(|i| {
            let min_abs = table
                .values
                .iter()
                .map(|row| row[i].norm())
                .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
                .unwrap_or(f64::INFINITY);
            BurnsideEntry {
                index: i,
                label: ring.labels()[i].clone(),
                invertible: inv.contains(&i),
                has_zero: min_abs < tol.zero,
                min_abs,
            }
        })
        .collect();
    let holds = entries.iter().all(BurnsideEntry::holds);
    BurnsideReport { entries, holds }
}
