//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fusionkit::arith::{
    check_nilpotent_adjoint, enumerate_types, CategoryType, Filters, DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP,
};
use fusionkit::chartab::{burnside_check, certify, compute_table, row_permutation_distance};
use fusionkit::group::{class_data, class_size_oracle, group_ring_oracle, verify_harada_group, DEFAULT_GROUP_RING_CAP};
use fusionkit::identities::{check_class_dim_divisibility, check_modular_divisibility, verify_harada, HARADA_A};
use fusionkit::ring::{dimension_type, fp_dims, invertibles, is_nilpotent, BasedRing};
use fusionkit::{Status, Tolerances};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn commutative_rings() -> Vec<(String, BasedRing, fusionkit::format::Meta)> {
    common::corpus_rings()
        .into_iter()
        .filter(|(_, r, _)| r.is_commutative())
        .collect()
}

fn harada_on_groups() -> Outcome {
    let start = Instant::now();
    let mut groups: Vec<_> = common::small_groups();
    groups.extend(common::extra_groups());
    for (name, g) in &groups {
        let classes = class_data(g).map_err(|e| format!("{name}: {e}"))?;
        let report = verify_harada_group(&classes);
        ensure(report.passed, || {
            format!("{name}: coefficients differ at class {:?}", report.mismatch)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} groups, exact, {:.2?}", groups.len(), elapsed))
}

fn group_ring_equivalence() -> Outcome {
    let mut count = 0;
    for (name, g) in common::small_groups().into_iter().filter(|(_, g)| g.order() <= 16) {
        let classes = class_data(&g).map_err(|e| format!("{name}: {e}"))?;
        let oracle = group_ring_oracle(&g, &classes, DEFAULT_GROUP_RING_CAP).map_err(|e| format!("{name}: {e}"))?;
        ensure(oracle.product_matches && oracle.square_matches, || {
            format!("{name}: class algebra and group ring disagree")
        })?;
        count += 1;
    }
    Ok(format!("{count} groups of order <= 16"))
}

fn harada_on_rings() -> Outcome {
    let tol = Tolerances::default();
    let mut names = Vec::new();
    let mut worst = 0.0f64;
    for (name, ring, _) in commutative_rings() {
        let dims = fp_dims(&ring, &tol).map_err(|e| format!("{name}: {e}"))?;
        if !dims.is_weakly_integral() {
            continue;
        }
        let table = compute_table(&ring, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        let report = verify_harada(&ring, &table, &tol).map_err(|e| format!("{name}: {e}"))?;
        for v in &report.verdicts {
            let residual = v.residual.unwrap_or(0.0);
            worst = worst.max(residual);
            ensure(v.passed() && residual < 1e-7, || {
                format!("{name}: {} {:?} residual {residual:e}", v.check, v.status)
            })?;
        }
        names.push(name);
    }
    for required in [
        "z2.json",
        "z3.json",
        "ising.json",
        "rep_s3.json",
        "rep_d4.json",
        "rep_q8.json",
        "rep_a4.json",
        "rep_s4.json",
        "toric_code.json",
        "ty_z2xz2.json",
    ] {
        ensure(names.iter().any(|n| n == required), || {
            format!("{required} missing from the sweep")
        })?;
    }
    ensure(names.len() >= 10, || format!("only {} rings", names.len()))?;
    Ok(format!("{} rings, worst residual {worst:.1e}", names.len()))
}

fn negative_control() -> Outcome {
    let tol = Tolerances::default();
    let fib = common::corpus_ring("fibonacci.json");
    let table = compute_table(&fib, &tol, 1).map_err(|e| e.to_string())?;
    let burnside = burnside_check(&fib, &table, &tol);
    ensure(!burnside.holds, || "Fibonacci satisfies the vanishing property".into())?;
    let report = verify_harada(&fib, &table, &tol).map_err(|e| e.to_string())?;
    let a = report.check(HARADA_A).ok_or("no idempotent check reported")?;
    ensure(a.status == Status::Fail, || {
        format!("Fibonacci idempotent check is {:?}", a.status)
    })?;

    let mut count = 0;
    for (name, ring, _) in commutative_rings() {
        let dims = fp_dims(&ring, &tol).map_err(|e| format!("{name}: {e}"))?;
        if !dims.is_weakly_integral() {
            continue;
        }
        let table = compute_table(&ring, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        ensure(burnside_check(&ring, &table, &tol).holds, || {
            format!("{name}: vanishing property fails")
        })?;
        count += 1;
    }
    Ok(format!(
        "Fibonacci rejected by both checks; vanishing property holds on {count} rings"
    ))
}

fn table_certification() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = [0.0f64; 3];
    let rings = commutative_rings();
    for (name, ring, _) in &rings {
        let a = compute_table(ring, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        let b = compute_table(ring, &tol, 0x5eed_2024).map_err(|e| format!("{name}: {e}"))?;
        for t in [&a, &b] {
            let res = certify(ring, t);
            worst[0] = worst[0].max(res.homomorphism);
            worst[1] = worst[1].max(res.orthogonality);
            worst[2] = worst[2].max(res.class_dim_sum);
            ensure(
                res.homomorphism < 1e-9 && res.orthogonality < 1e-8 && res.class_dim_sum < 1e-8,
                || format!("{name}: {res:?}"),
            )?;
        }
        ensure(row_permutation_distance(&a, &b, 1e-8).is_some(), || {
            format!("{name}: seeds disagree")
        })?;
    }
    Ok(format!(
        "{} tables; homomorphism {:.1e}, orthogonality {:.1e}, class-dim sum {:.1e}",
        rings.len(),
        worst[0],
        worst[1],
        worst[2]
    ))
}

fn class_size_oracle_on_groups() -> Outcome {
    let tol = Tolerances::default();
    let groups = common::corpus_groups();
    ensure(!groups.is_empty(), || "no groups in the corpus".into())?;
    for (name, g) in &groups {
        let classes = class_data(g).map_err(|e| format!("{name}: {e}"))?;
        let oracle = class_size_oracle(&classes, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        ensure(oracle.matches, || {
            format!("{name}: {:?} vs sizes {:?}", oracle.snapped, classes.sizes)
        })?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn divisibility() -> Outcome {
    let tol = Tolerances::default();
    let (mut class_pass, mut modular_pass, mut skipped) = (0, 0, Vec::new());
    for (name, ring, meta) in commutative_rings() {
        let table = compute_table(&ring, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        let v = check_class_dim_divisibility(&ring, &table, &tol);
        ensure(v.status != Status::Fail, || format!("{name}: {}", v.details))?;
        if v.passed() {
            class_pass += 1;
        }
        if meta.modular {
            let v = check_modular_divisibility(&ring, &table, true, &tol);
            ensure(v.status != Status::Fail, || format!("{name}: {}", v.details))?;
            if v.passed() {
                modular_pass += 1;
            } else {
                skipped.push(name);
            }
        }
    }
    ensure(class_pass > 0 && modular_pass > 0, || "nothing was checked".into())?;
    Ok(format!(
        "class-dim divisibility on {class_pass} rings, modular divisibility on {modular_pass} rings (not integral: {skipped:?})"
    ))
}

/// Types of `n` from partitions of `n` into perfect squares with at least one part 1.
fn brute_force_types(n: u64) -> BTreeSet<Vec<(u64, u64)>> {
    fn parts(rest: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        let mut d = max;
        while d >= 1 {
            if d * d <= rest {
                acc.push(d * d);
                parts(rest - d * d, d, acc, out);
                acc.pop();
            }
            d -= 1;
        }
    }
    let mut all = Vec::new();
    let top = (1..=n).take_while(|d| d * d <= n).last().unwrap_or(1);
    parts(n, top, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|p| p.contains(&1))
        .map(|p| {
            let mut counts = std::collections::BTreeMap::new();
            for s in p {
                *counts.entry(s).or_insert(0u64) += 1;
            }
            counts.into_iter().collect()
        })
        .collect()
}

fn as_pairs(ty: &CategoryType) -> Vec<(u64, u64)> {
    ty.entries().iter().map(|e| (e.dim_sq, e.mult)).collect()
}

fn enumerator_oracle() -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::default();
    let mut total = 0;
    for n in 1..=200u64 {
        let found: BTreeSet<Vec<(u64, u64)>> =
            enumerate_types(n, Filters::default(), DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP)
                .map_err(|e| format!("N = {n}: {e}"))?
                .iter()
                .map(as_pairs)
                .collect();
        let expected = brute_force_types(n);
        ensure(found == expected, || {
            format!(
                "N = {n}: extra {:?}, missing {:?}",
                found.difference(&expected).collect::<Vec<_>>(),
                expected.difference(&found).collect::<Vec<_>>()
            )
        })?;
        total += found.len();
    }

    let filters = Filters {
        multiplicity_divisibility: true,
        ..Filters::default()
    };
    let mut survivors = 0;
    for (name, ring, meta) in common::corpus_rings() {
        let dims = fp_dims(&ring, &tol).map_err(|e| format!("{name}: {e}"))?;
        if !(meta.modular && dims.is_integral()) {
            continue;
        }
        let own = dimension_type(&dims).ok_or_else(|| format!("{name}: no exact type"))?;
        let n = dims.total_exact().ok_or_else(|| format!("{name}: inexact total"))?;
        let kept = enumerate_types(n, filters, DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(kept.iter().any(|t| as_pairs(t) == own), || {
            format!("{name}: type {own:?} was filtered out")
        })?;
        survivors += 1;
    }
    ensure(survivors > 0, || "no integral modular rings".into())?;
    let twelve =
        enumerate_types(12, filters, DEFAULT_ENUMERATION_CAP, DEFAULT_RESULT_CAP).map_err(|e| e.to_string())?;
    ensure(!twelve.iter().any(|t| as_pairs(t) == vec![(1, 4), (4, 2)]), || {
        "(1,4; 2,2) survived".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{total} types for N <= 200 match; {survivors} corpus types survive; {elapsed:.2?}"
    ))
}

fn nilpotent_sweep() -> Outcome {
    let tol = Tolerances::default();
    let mut checked = Vec::new();
    for (name, ring, _) in commutative_rings() {
        let dims = fp_dims(&ring, &tol).map_err(|e| format!("{name}: {e}"))?;
        if !dims.is_integral() || invertibles(&ring).len() == ring.rank() || !is_nilpotent(&ring).nilpotent {
            continue;
        }
        let table = compute_table(&ring, &tol, 1).map_err(|e| format!("{name}: {e}"))?;
        let v = check_nilpotent_adjoint(&ring, &table);
        ensure(v.passed(), || format!("{name}: {:?} {}", v.status, v.details))?;
        checked.push(name);
    }
    ensure(!checked.is_empty(), || "no nilpotent non-pointed integral rings".into())?;
    Ok(format!("{} rings: {checked:?}", checked.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact class-sum identity on groups", harada_on_groups),
        ("class algebra against the full group ring", group_ring_equivalence),
        ("class-sum identities on fusion rings", harada_on_rings),
        ("Fibonacci negative control", negative_control),
        ("character table certification", table_certification),
        ("class dimensions against class sizes", class_size_oracle_on_groups),
        ("divisibility of class and adjoint dimensions", divisibility),
        ("type enumerator against brute force", enumerator_oracle),
        ("nilpotent adjoint sweep", nilpotent_sweep),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {title}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {title}: {detail}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
