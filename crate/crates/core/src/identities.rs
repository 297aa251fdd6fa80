//! Class sums, supports of fusion subrings and Harada-type identities.
//!
//! Central elements are stored by the scalar through which they act on each
//! simple object, so products and idempotents are entrywise arithmetic. The
//! normalised class sum `C_j / dim(C^j)` acts on `X_i` by `mu_j(b_i) / d_i`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::ring::{adjoint_subring, invertibles, subring_closure, BasedRing, Profile};
use crate::{Error, Result, Status, Tolerances, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct CentralElement {
    pub action: Vec<Complex64>,
}

impl CentralElement {
    pub fn unit(rank: usize) -> Self {
        CentralElement {
            action: vec![Complex64::new(1.0, 0.0); rank],
        }
    }

    pub fn zero(rank: usize) -> Self {
        CentralElement {
            action: vec![Complex64::new(0.0, 0.0); rank],
        }
    }

    /// Sum of the primitive idempotents `E_i` for `i` in `set`.
    pub fn indicator(rank: usize, set: &BTreeSet<usize>) -> Self {
        CentralElement {
            action: (0..rank)
                .map(|i| Complex64::new(if set.contains(&i) { 1.0 } else { 0.0 }, 0.0))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CentralElement {
            action: self.action.iter().zip(&other.action).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CentralElement {
            action: self.action.iter().zip(&other.action).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        CentralElement {
            action: self.action.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest coordinate difference and where it occurs.
    pub fn distance(&self, other: &Self) -> (f64, usize) {
        self.action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| (a - b).norm())
            .enumerate()
            .fold((0.0, 0), |acc, (i, d)| if d > acc.0 { (d, i) } else { acc })
    }
}

/// The class sum `C_j`: acts on `X_i` by `dim(C^j) mu_j(b_i) / d_i`.
pub fn class_sum(table: &CharacterTable, j: usize) -> CentralElement {
    CentralElement {
        action: (0..table.rank())
            .map(|i| table.normalized(j, i) * table.class_dims[j])
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportData {
    pub subring: Vec<usize>,
    /// `mu_j(lambda_D)` for every row `j` (real parts).
    pub lambda_values: Vec<f64>,
    pub support: Vec<usize>,
    /// Largest distance of a value from `{0, 1}`.
    pub residual: f64,
}

/// Support `J_D` of a fusion subring `D`: the rows on which its normalised
/// integral `lambda_D = sum_{i in D} d_i b_i / FPdim(D)` evaluates to 1.
pub fn support(
    ring: &BasedRing,
    table: &CharacterTable,
    subring: &BTreeSet<usize>,
    tol: &Tolerances,
) -> Result<SupportData> {
    if subring_closure(ring, subring.iter().copied()) != *subring {
        return Err(Error::Precondition(format!("{subring:?} is not a closed subring")));
    }
    let w = |i: usize| f64::from(table.dims.weights[i]);
    let d = &table.dims.dims;
    let norm: f64 = subring.iter().map(|&i| d[i] * d[i] / w(i)).sum();
    let mut lambda_values = Vec::with_capacity(table.rows());
    let mut support = Vec::new();
    let mut residual = 0.0f64;
    for j in 0..table.rows() {
        let v: Complex64 = subring
            .iter()
            .map(|&i| table.value(j, i) * (d[i] / w(i)))
            .sum::<Complex64>()
            / norm;
        let off = (v - 1.0).norm().min(v.norm());
        residual = residual.max(off);
        if (v - 1.0).norm() < 0.5 {
            support.push(j);
        }
        lambda_values.push(v.re);
    }
    if residual > tol.identity {
        return Err(Error::numeric(
            "normalised integral of the subring is not idempotent",
            residual,
        ));
    }
    Ok(SupportData {
        subring: subring.iter().copied().collect(),
        lambda_values,
        support,
        residual,
    })
}

/// `(prod_j C_j / dim(C^j))^2`, acting on `X_i` by `(prod_j mu_j(b_i) / d_i)^2`.
pub fn harada_lhs(table: &CharacterTable) -> CentralElement {
    CentralElement {
        action: (0..table.rank())
            .map(|i| {
                let p: Complex64 = (0..table.rows()).map(|j| table.normalized(j, i)).product();
                p * p
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaradaReport {
    pub verdicts: Vec<Verdict>,
    pub invertibles: Vec<usize>,
    pub pointed_support: Option<Vec<usize>>,
    pub lhs: Vec<(f64, f64)>,
    pub fpdim: f64,
    pub fpdim_pt: f64,
}

impl HaradaReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == name)
    }
}

pub const HARADA_A: &str = "harada.idempotents";
pub const HARADA_B: &str = "harada.class-sums";
pub const HARADA_C: &str = "harada.cross-identity";

/// Checks, in central-element coordinates:
///
/// * (a) `(prod_j C_j/dim C^j)^2 = sum_{i in Irr(C_pt)} E_i`,
/// * (b) `(prod_j C_j/dim C^j)^2 = FPdim(C_pt)/FPdim(C) sum_{j in J_pt} C_j`,
/// * (c) `FPdim(C)/FPdim(C_pt) sum_{i in Irr(C_pt)} E_i = sum_{j in J_pt} C_j`.
pub fn verify_harada(ring: &BasedRing, table: &CharacterTable, tol: &Tolerances) -> Result<HaradaReport> {
    let report = ring.validate(Profile::Fusion);
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "not a fusion ring: {}",
            report.violations[0]
        )));
    }
    let r = ring.rank();
    let inv = invertibles(ring);
    let pointed = subring_closure(ring, inv.iter().copied());
    let fpdim = table.total();
    let fpdim_pt = table.dims.subset_dim(&pointed);
    let lhs = harada_lhs(table);
    let indicator = CentralElement::indicator(r, &inv);

    let mut verdicts = Vec::new();
    let (res_a, at_a) = lhs.distance(&indicator);
    verdicts.push(
        Verdict::from_bool(
            HARADA_A,
            res_a < tol.identity,
            format!("worst coordinate {} ({})", at_a, ring.labels()[at_a]),
        )
        .with_residual(res_a),
    );

    let pointed_support = match support(ring, table, &pointed, tol) {
        Ok(s) => {
            let sum = s
                .support
                .iter()
                .fold(CentralElement::zero(r), |acc, &j| acc.add(&class_sum(table, j)));
            let rhs_b = sum.scale(fpdim_pt / fpdim);
            let (res_b, at_b) = lhs.distance(&rhs_b);
            verdicts.push(
                Verdict::from_bool(HARADA_B, res_b < tol.identity, format!("worst coordinate {at_b}"))
                    .with_residual(res_b),
            );
            let lhs_c = indicator.scale(fpdim / fpdim_pt);
            let (res_c, at_c) = lhs_c.distance(&sum);
            verdicts.push(
                Verdict::from_bool(HARADA_C, res_c < tol.identity, format!("worst coordinate {at_c}"))
                    .with_residual(res_c),
            );
            Some(s.support)
        }
        Err(e) => {
            for name in [HARADA_B, HARADA_C] {
                verdicts.push(Verdict::new(name, Status::Fail, format!("support of C_pt: {e}")));
            }
            None
        }
    };

    Ok(HaradaReport {
        verdicts,
        invertibles: inv.into_iter().collect(),
        pointed_support,
        lhs: lhs.action.iter().map(|z| (z.re, z.im)).collect(),
        fpdim,
        fpdim_pt,
    })
}

/// Snaps `x` to a positive integer when it is within `snap` of one.
pub(crate) fn snap_positive(x: f64, snap: f64) -> Option<u64> {
    let k = x.round();
    (k >= 1.0 && (x - k).abs() < snap * x.abs().max(1.0)).then_some(k as u64)
}

pub const CLASS_DIM_DIVISIBILITY: &str = "class-dim-divisibility";
pub const MODULAR_DIVISIBILITY: &str = "modular-divisibility";

/// `FPdim(C)/FPdim(C_pt)` divides `prod_j FPdim(C^j)`, decided after snapping
/// both sides to integers.
pub fn check_class_dim_divisibility(ring: &BasedRing, table: &CharacterTable, tol: &Tolerances) -> Verdict {
    let pointed = subring_closure(ring, invertibles(ring));
    let ratio = table.total() / table.dims.subset_dim(&pointed);
    let Some(ratio_int) = snap_positive(ratio, tol.snap) else {
        return Verdict::not_applicable(
            CLASS_DIM_DIVISIBILITY,
            format!("FPdim(C)/FPdim(C_pt) = {ratio} is not an integer"),
        );
    };
    let mut product = BigInt::one();
    for (j, &c) in table.class_dims.iter().enumerate() {
        match snap_positive(c, tol.snap) {
            Some(k) => product *= k,
            None => {
                return Verdict::not_applicable(
                    CLASS_DIM_DIVISIBILITY,
                    format!("class dimension {j} = {c} is not an integer"),
                )
            }
        }
    }
    let ok = (&product % BigInt::from(ratio_int)).is_zero();
    Verdict::from_bool(CLASS_DIM_DIVISIBILITY, ok, format!("{ratio_int} | {product}")).exact()
}

/// For a modular category: `FPdim(C_ad) = FPdim(C)/FPdim(C_pt)` divides
/// `prod_j d_j^2`. Modularity is input metadata and is not checked here.
pub fn check_modular_divisibility(
    ring: &BasedRing,
    table: &CharacterTable,
    modular: bool,
    tol: &Tolerances,
) -> Verdict {
    if !modular {
        return Verdict::not_applicable(MODULAR_DIVISIBILITY, "ring is not declared modular");
    }
    let dims = &table.dims;
    let Some(ad) = dims.subset_dim_exact(&adjoint_subring(ring)) else {
        return Verdict::not_applicable(MODULAR_DIVISIBILITY, "FPdim(C_ad) is not an integer");
    };
    let squares: Option<Vec<u64>> = dims.exact.iter().map(|k| k.square()).collect();
    let Some(squares) = squares else {
        return Verdict::not_applicable(MODULAR_DIVISIBILITY, "some d_j^2 is not an integer");
    };
    let pointed = subring_closure(ring, invertibles(ring));
    let ratio = table.total() / dims.subset_dim(&pointed);
    if snap_positive(ratio, tol.snap) != Some(ad) {
        return Verdict::new(
            MODULAR_DIVISIBILITY,
            Status::Fail,
            format!("FPdim(C_ad) = {ad} but FPdim(C)/FPdim(C_pt) = {ratio}"),
        );
    }
    divides_product_of_squares(ad, &squares)
}

/// The arithmetic core of the modular divisibility check.
pub fn divides_product_of_squares(fpdim_ad: u64, squares: &[u64]) -> Verdict {
    let product: BigInt = squares.iter().map(|&s| BigInt::from(s)).product();
    let ok = (&product % BigInt::from(fpdim_ad)).is_zero();
    Verdict::from_bool(MODULAR_DIVISIBILITY, ok, format!("{fpdim_ad} | {product}")).exact()
}
