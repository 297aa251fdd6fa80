use std::collections::BTreeSet;

use fusionkit::arith::{
    check_dimension_coprimality, check_multiplicity_divisibility, check_nilpotent_adjoint, check_pointed_divisibility,
    check_pointed_orbit, detect_three_prime_shape, CategoryType, ThreePrimeShape,
};
use fusionkit::chartab::{burnside_check, certify, compute_table, row_permutation_distance, CharacterTable};
use fusionkit::format::Meta;
use fusionkit::group::{
    class_algebra_as_ring, class_data, class_product_coset, class_size_oracle, group_ring_oracle, verify_harada_group,
    CayleyTable, ClassData, DEFAULT_GROUP_RING_CAP,
};
use fusionkit::identities::{check_class_dim_divisibility, check_modular_divisibility, verify_harada};
use fusionkit::ring::{dimension_type, fp_dims, invertibles, is_nilpotent, BasedRing, Profile};
use fusionkit::{Error, Result, Status, Tolerances, Verdict};
use serde_json::json;

use crate::report::{ErrorClass, ErrorRecord, RunReport};

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub tol: Tolerances,
    pub seed: u64,
    pub profile: Option<Profile>,
}

/// Destination for the records of one input.
pub struct Sink<'a> {
    pub report: &'a mut RunReport,
    pub file: Option<String>,
}

impl Sink<'_> {
    pub fn verdict(&mut self, v: Verdict) {
        self.report.verdict(self.file.as_deref(), v);
    }

    pub fn data(&mut self, name: &str, value: impl serde::Serialize) {
        self.report.data(self.file.as_deref(), name, value);
    }

    pub fn error(&mut self, e: &Error) {
        self.report.error(self.file.as_deref(), e);
    }
}

pub fn validate(ring: &BasedRing, ctx: &Ctx, out: &mut Sink) -> bool {
    let profiles = match ctx.profile {
        Some(p) => vec![p],
        None => vec![Profile::Based, Profile::Fusion],
    };
    let mut all = true;
    for p in profiles {
        let report = ring.validate(p);
        let details = match report.violations.first() {
            None => format!("rank {} satisfies the {p} axioms", ring.rank()),
            Some(v) => format!("{} violation(s); first: {v}", report.violations.len()),
        };
        all &= report.is_valid();
        out.verdict(Verdict::from_bool(format!("validate.{p}"), report.is_valid(), details).exact());
        if !report.is_valid() {
            out.data(&format!("violations.{p}"), &report.violations);
        }
    }
    all
}

pub fn table(ring: &BasedRing, ctx: &Ctx, out: &mut Sink) -> Result<Option<CharacterTable>> {
    if !ring.is_commutative() {
        out.verdict(Verdict::from_bool("chartab.commutative", false, "ring is not commutative").exact());
        return Ok(None);
    }
    let t = compute_table(ring, &ctx.tol, ctx.seed)?;
    Ok(Some(t))
}

pub fn export_table(t: &CharacterTable, out: &mut Sink) {
    let rows: Vec<Vec<[f64; 2]>> = t
        .values
        .iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    out.data(
        "table",
        json!({
            "labels": t.labels,
            "rows": rows,
            "dims": t.dims.dims,
            "exact_dims": t.dims.exact,
            "codegrees": t.codegrees,
            "class_dims": t.class_dims,
            "total": t.total(),
            "seed": t.seed,
            "attempts": t.attempts,
        }),
    );
}

/// Residual checks on a table plus a second diagonalization with another seed.
pub fn certify_table(ring: &BasedRing, t: &CharacterTable, ctx: &Ctx, out: &mut Sink) -> Result<()> {
    let res = certify(ring, t);
    let eps = ctx.tol.eigen;
    let checks = [
        ("chartab.homomorphism", res.homomorphism, eps),
        ("chartab.unit", res.unit, eps),
        ("chartab.fp-row", res.fp_row, 10.0 * eps),
        ("chartab.orthogonality", res.orthogonality, 10.0 * eps),
        ("chartab.column-orthogonality", res.column_orthogonality, 10.0 * eps),
        ("chartab.class-dim-sum", res.class_dim_sum, 10.0 * eps),
    ];
    for (name, r, bound) in checks {
        out.verdict(Verdict::from_bool(name, r < bound, format!("bound {bound:e}")).with_residual(r));
    }
    out.data("residuals", res);
    let other = compute_table(ring, &ctx.tol, ctx.seed.wrapping_add(0x9e37_79b9))?;
    let v = match row_permutation_distance(t, &other, 1e-6) {
        Some(d) => {
            Verdict::from_bool("chartab.seed-independence", true, "rows agree up to permutation").with_residual(d)
        }
        None => Verdict::from_bool("chartab.seed-independence", false, "rows differ between seeds"),
    };
    out.verdict(v);
    Ok(())
}

pub fn burnside(ring: &BasedRing, t: &CharacterTable, ctx: &Ctx, out: &mut Sink) {
    let report = burnside_check(ring, t, &ctx.tol);
    let bad: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| !e.holds())
        .map(|e| e.label.as_str())
        .collect();
    let details = if bad.is_empty() {
        "invertible exactly when the character has no zero".to_string()
    } else {
        format!("fails at {}", bad.join(", "))
    };
    out.verdict(Verdict::from_bool("burnside", report.holds, details));
    out.data("burnside", &report.entries);
}

pub fn harada_ring(ring: &BasedRing, t: &CharacterTable, ctx: &Ctx, out: &mut Sink) -> Result<()> {
    let weakly = t.dims.is_weakly_integral();
    let report = verify_harada(ring, t, &ctx.tol)?;
    for mut v in report.verdicts.clone() {
        if !weakly && v.failed() {
            v.details = format!("ring not weakly integral; {}", v.details);
        }
        out.verdict(v);
    }
    out.data(
        "harada",
        json!({
            "invertibles": report.invertibles,
            "pointed_support": report.pointed_support,
            "lhs": report.lhs,
            "fpdim": report.fpdim,
            "fpdim_pt": report.fpdim_pt,
            "weakly_integral": weakly,
        }),
    );
    Ok(())
}

pub fn divisibility(ring: &BasedRing, t: &CharacterTable, meta: &Meta, ctx: &Ctx, out: &mut Sink) {
    out.verdict(check_class_dim_divisibility(ring, t, &ctx.tol));
    out.verdict(check_modular_divisibility(ring, t, meta.modular, &ctx.tol));
    out.verdict(check_nilpotent_adjoint(ring, t));
}

/// The type of an integral ring flagged modular, checked against the type filters.
pub fn ring_type(ring: &BasedRing, t: &CharacterTable, meta: &Meta, out: &mut Sink) -> Result<()> {
    let chain = is_nilpotent(ring);
    out.data(
        "structure",
        json!({
            "invertibles": invertibles(ring),
            "nilpotent": chain.nilpotent,
            "adjoint_chain": chain.chain,
            "integral": t.dims.is_integral(),
            "weakly_integral": t.dims.is_weakly_integral(),
        }),
    );
    if !(meta.modular && t.dims.is_integral()) {
        return Ok(());
    }
    let Some(pairs) = dimension_type(&t.dims) else {
        return Ok(());
    };
    let ty = CategoryType::from_squares(&pairs)?;
    type_checks(&ty, true, false, out);
    Ok(())
}

pub fn type_checks(ty: &CategoryType, integral_modular: bool, pointed_orbit: bool, out: &mut Sink) {
    out.data(
        "type",
        json!({
            "type": ty.to_string(),
            "total": ty.total(),
            "sqfree": ty.sqfree(),
            "square_part": ty.square_part(),
        }),
    );
    out.verdict(check_multiplicity_divisibility(ty));
    if integral_modular {
        out.verdict(check_dimension_coprimality(ty));
        out.verdict(check_pointed_divisibility(ty));
    }
    if pointed_orbit {
        out.verdict(check_pointed_orbit(ty));
    }
    if let Some(shape) = detect_three_prime_shape(ty.total()) {
        out.data("three-prime-shape", shape_report(&shape));
    }
}

pub fn shape_report(s: &ThreePrimeShape) -> serde_json::Value {
    let core = (s.p * s.q * s.r).pow(2);
    json!({
        "p": s.p,
        "q": s.q,
        "r": s.r,
        "d": s.d,
        "consequence": format!(
            "an integral modular category of this dimension is weakly group-theoretical and \
             splits as a pointed modular factor of dimension {} times a factor of dimension {core}",
            s.d
        ),
    })
}

/// Every ring check, in pipeline order.
pub fn ring_pipeline(ring: &BasedRing, meta: &Meta, ctx: &Ctx, out: &mut Sink) -> Result<()> {
    let profile_ctx = Ctx {
        profile: Some(ctx.profile.unwrap_or(Profile::Fusion)),
        ..ctx.clone()
    };
    if !validate(ring, &profile_ctx, out) {
        return Ok(());
    }
    let dims = fp_dims(ring, &ctx.tol)?;
    out.data("fp_dims", &dims);
    let Some(t) = table(ring, ctx, out)? else {
        return Ok(());
    };
    certify_table(ring, &t, ctx, out)?;
    burnside(ring, &t, ctx, out);
    if ring.validate(Profile::Fusion).is_valid() {
        harada_ring(ring, &t, ctx, out)?;
    }
    divisibility(ring, &t, meta, ctx, out);
    ring_type(ring, &t, meta, out)?;
    Ok(())
}

pub fn group_summary(g: &CayleyTable, classes: &ClassData, out: &mut Sink) {
    out.data(
        "classes",
        json!({
            "order": g.order(),
            "abelian": g.is_abelian(),
            "sizes": classes.sizes,
            "inverse_class": classes.inverse_class,
            "commutator_order": classes.commutator.len(),
            "commutator_classes": classes.commutator_classes(),
        }),
    );
}

pub fn harada_group(classes: &ClassData, out: &mut Sink) {
    let report = verify_harada_group(classes);
    let details = match report.mismatch {
        None => format!("|G'| = {}", report.commutator_order),
        Some(j) => format!("mismatch at class {j}: {} vs {}", report.lhs[j], report.rhs[j]),
    };
    out.verdict(Verdict::from_bool("harada.group", report.passed, details).exact());
    out.data("harada.group", &report);
}

/// Every group check, in pipeline order.
pub fn group_pipeline(g: &CayleyTable, ctx: &Ctx, out: &mut Sink) -> Result<()> {
    let classes = class_data(g)?;
    group_summary(g, &classes, out);
    harada_group(&classes, out);
    if g.order() <= DEFAULT_GROUP_RING_CAP {
        let oracle = group_ring_oracle(g, &classes, DEFAULT_GROUP_RING_CAP)?;
        out.verdict(
            Verdict::from_bool(
                "group.group-ring-oracle",
                oracle.product_matches && oracle.square_matches,
                "class-algebra product against direct convolution",
            )
            .exact(),
        );
        let coset = class_product_coset(g, &classes, DEFAULT_GROUP_RING_CAP)?;
        out.verdict(
            Verdict::from_bool(
                "group.class-product-coset",
                coset.is_coset,
                format!(
                    "support of size {} against |G'| = {}",
                    coset.support.len(),
                    coset.commutator_order
                ),
            )
            .exact(),
        );
    } else {
        out.verdict(Verdict::not_applicable(
            "group.group-ring-oracle",
            format!("order {} exceeds {}", g.order(), DEFAULT_GROUP_RING_CAP),
        ));
    }
    let algebra = class_algebra_as_ring(&classes)?;
    let based = algebra.validate(Profile::Based);
    out.verdict(
        Verdict::from_bool(
            "group.class-algebra-based",
            based.is_valid(),
            "class algebra as a based ring",
        )
        .exact(),
    );
    let t = compute_table(&algebra, &ctx.tol, ctx.seed)?;
    certify_table(&algebra, &t, ctx, out)?;
    let size_oracle = class_size_oracle(&classes, &ctx.tol, ctx.seed)?;
    out.verdict(Verdict::from_bool(
        "group.class-dims",
        size_oracle.matches,
        "snapped class dimensions of Rep(G) against class sizes",
    ));
    out.data("class-dims", &size_oracle);
    Ok(())
}

/// Marks failures on a negative control as expected and records whether
/// anything failed at all.
pub fn settle_negative_control(report: &mut RunReport, file: &str) {
    let mut any = false;
    for r in report.verdicts.iter_mut().filter(|r| r.file.as_deref() == Some(file)) {
        if r.verdict.status == Status::Fail {
            r.verdict.status = Status::ExpectedFail;
            any = true;
        }
    }
    let mine = |e: &ErrorRecord| e.file.as_deref() == Some(file) && e.class != ErrorClass::Input;
    let any = any || report.errors.iter().any(mine);
    report.errors.retain(|e| !mine(e));
    report.verdict(
        Some(file),
        Verdict::from_bool(
            "negative-control",
            any,
            if any {
                "failed as expected"
            } else {
                "expected at least one failing check"
            },
        ),
    );
}

pub fn subring_arg(ring: &BasedRing, indices: &[usize]) -> Result<BTreeSet<usize>> {
    match indices.iter().find(|&&i| i >= ring.rank()) {
        Some(i) => Err(Error::Parse(format!("subring index {i} out of range"))),
        None => Ok(indices.iter().copied().collect()),
    }
}
