//! Acceptance run: one PASS/FAIL line per criterion, then a nonzero exit if any failed.
//!
//! Runs with `harness = false` so the lines are printed even when everything passes.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use gradus::arith::{FieldSpec, Scalar};
use gradus::classify::{
    cross_validate, diff_against_golden, generate_table, golden_table, golden_types, CellStatus,
    CrossOptions, Verdict,
};
use gradus::hat::build_hat;
use gradus::lie::exp::{is_algebraic, SampleMode};
use gradus::lie::ideal::graded_ideal_closure;
use gradus::lie::iso::{compare_graded, IsoStatus};
use gradus::lie::{chevalley_algebra, Grading};
use gradus::roots::constants::{cache_dir, read_cache};
use gradus::roots::{all_types_up_to, ChevalleyConstants, JSubset, RootSystem, RootType};
use gradus::structurable::{
    find_unit_pair, kappa, pair_from_grading, SearchMode, SearchPolicy, StructurableAlgebra,
    StructurableJson, UnitPairOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

/// The sweep: A1..A8, B2..B8, C3..C8, D4..D8, G2, F4, E6, E7, E8.
fn sweep() -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=8).map(|n| (RootType::A, n)));
    out.extend((2..=8).map(|n| (RootType::B, n)));
    out.extend((3..=8).map(|n| (RootType::C, n)));
    out.extend((4..=8).map(|n| (RootType::D, n)));
    out.extend([
        (RootType::G, 2),
        (RootType::F, 4),
        (RootType::E, 6),
        (RootType::E, 7),
        (RootType::E, 8),
    ]);
    out
}

fn criterion_1() -> Outcome {
    let mut covered = golden_types();
    covered.sort();
    let mut expected = sweep();
    expected.sort();
    ensure(covered == expected, || {
        format!("golden file covers {covered:?}")
    })?;
    for (ty, n) in sweep() {
        let t = generate_table(ty, n).map_err(|e| e.to_string())?;
        let d = diff_against_golden(ty, n, &t).map_err(|e| e.to_string())?;
        ensure(d.matches(), || d.render())?;
    }
    Ok(format!(
        "{} types, {} structurable rows identical",
        sweep().len(),
        golden_table().len()
    ))
}

fn criterion_2() -> Outcome {
    let opts = CrossOptions {
        fields: vec![q(), gf(7), gf(5)],
        ..Default::default()
    };
    let (mut cells, mut witnessed, mut informational) = (0, 0, 0);
    let mut e8_ms = 0;
    for (ty, n) in sweep() {
        let start = Instant::now();
        let r = cross_validate(ty, n, &opts).map_err(|e| format!("{ty}{n}: {e}"))?;
        if (ty, n) == (RootType::E, 8) {
            e8_ms = start.elapsed().as_millis();
        }
        if let Some(d) = r.first_discrepancy() {
            return Err(d);
        }
        for c in &r.cells {
            cells += 1;
            if c.status == CellStatus::Informational {
                informational += 1;
                continue;
            }
            if c.expected == Verdict::Structurable {
                ensure(
                    c.search.as_ref().is_some_and(|s| s.found().is_some()),
                    || format!("{ty}{n} J={:?} over {}: no witness", c.j, c.field),
                )?;
                witnessed += 1;
            }
        }
    }
    ensure(e8_ms < 600_000, || format!("E8 took {e8_ms} ms"))?;
    Ok(format!(
        "{cells} cells consistent, {witnessed} witnesses verified, {informational} informational, E8 in {e8_ms} ms"
    ))
}

fn criterion_3() -> Outcome {
    let ch = chevalley_algebra(&RootSystem::new(RootType::A, 2).unwrap(), gf(5)).unwrap();
    let j = JSubset::from_labels(2, &[1]).unwrap();
    let g = ch.grading(&j).unwrap();
    let zeta = ch.grading_derivation(&j);
    let opts = UnitPairOptions {
        policy: SearchPolicy::Exhaustive,
        ..Default::default()
    };
    let r = find_unit_pair(&ch.algebra, &g, &zeta, &opts).map_err(|e| e.to_string())?;
    ensure(r.mode == SearchMode::ExhaustivePairs, || {
        format!("mode {:?}", r.mode)
    })?;
    ensure(r.trials == 625, || format!("{} pairs enumerated", r.trials))?;
    ensure(r.found().is_none(), || "a unit pair was found".into())?;
    let oracle = generate_table(RootType::A, 2).unwrap();
    let entry = oracle.iter().find(|e| e.j == vec![1]).unwrap();
    ensure(entry.verdict == Verdict::NotStructurable, || {
        "oracle says structurable".into()
    })?;
    Ok("625 pairs, none with [u,v] = zeta; oracle agrees".into())
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/structurable")
}

fn criterion_4() -> Outcome {
    let expected_blocks = [
        ("k-trivial", [0, 1, 1, 1, 0]),
        ("kxk-swap", [1, 2, 2, 2, 1]),
        ("m2-transpose", [1, 4, 5, 4, 1]),
    ];
    for (name, blocks) in expected_blocks {
        let text = std::fs::read_to_string(data_dir().join(format!("{name}.json")))
            .map_err(|e| e.to_string())?;
        let json: StructurableJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        for field in [q(), gf(5), gf(7)] {
            let a = StructurableAlgebra::from_json(&json, Some(field))
                .map_err(|e| format!("{name}: {e}"))?;
            let k = kappa(&a).map_err(|e| e.to_string())?;
            ensure(k.block_dims() == blocks, || {
                format!("{name} over {field}: blocks {:?}", k.block_dims())
            })?;
            let jac = k.check_jacobi();
            ensure(jac.passed(), || format!("{name} over {field}: {jac:?}"))?;
            ensure(k.unit_bracket_is_grading_derivation(), || {
                format!("{name} over {field}: [1+,1-] is not the grading derivation")
            })?;
        }
    }
    let k = kappa(&gradus::structurable::examples::trivial(q())).unwrap();
    let ch = chevalley_algebra(&RootSystem::new(RootType::A, 1).unwrap(), q()).unwrap();
    let g = ch.grading(&JSubset::from_labels(1, &[1]).unwrap()).unwrap();
    let iso = compare_graded(&k.algebra, &k.grading, &ch.algebra, &g, 0);
    ensure(iso.status == IsoStatus::ExplicitMap, || {
        format!("K(k) vs sl2: {}", iso.detail)
    })?;
    Ok("3 algebras over Q, GF5, GF7: Jacobi, blocks, grading derivation; K(k) = sl2 by explicit map".into())
}

fn criterion_5() -> Outcome {
    let (mut exhaustive, mut sampled) = (0, 0);
    for (ty, n) in sweep() {
        let rs = RootSystem::new(ty, n).unwrap();
        for p in [101, 5] {
            let ch = chevalley_algebra(&rs, gf(p)).unwrap();
            for entry in generate_table(ty, n).unwrap() {
                let g = ch.grading(&entry.subset().unwrap()).unwrap();
                let pair = pair_from_grading(&ch.algebra, &g).map_err(|e| e.to_string())?;
                let r = pair.check_axioms(100, 0);
                ensure(r.passed(), || {
                    format!("{} over GF{p}: {:?}", entry.key(), r.failure)
                })?;
                if r.exhaustive {
                    exhaustive += 1;
                } else {
                    ensure(r.kp1_checked >= 100 && r.kp2_checked >= 100, || {
                        format!("{}: too few tuples", entry.key())
                    })?;
                    sampled += 1;
                }
            }
        }
    }
    Ok(format!("KP1 and KP2 hold: {exhaustive} gradings exhaustively, {sampled} on 100+ seeded tuples per side"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for (ty, n) in sweep() {
        let rs = RootSystem::new(ty, n).unwrap();
        let ch = chevalley_algebra(&rs, gf(5)).unwrap();
        for entry in generate_table(ty, n).unwrap() {
            if entry.verdict != Verdict::Structurable {
                continue;
            }
            let j = entry.subset().unwrap();
            if !ch.grading_derivation(&j).is_in_algebra() {
                continue;
            }
            let g = ch.grading(&j).unwrap();
            let r = is_algebraic(
                &ch.algebra,
                &g,
                SampleMode::Sampled {
                    samples: 200,
                    seed: 0,
                },
            )
            .map_err(|e| e.to_string())?;
            ensure(r.passed && r.checked == 200, || {
                format!("{}: {:?}", entry.key(), r.counterexample)
            })?;
            checked += 1;
        }
    }
    let sl2 = chevalley_algebra(&RootSystem::new(RootType::A, 1).unwrap(), gf(5)).unwrap();
    let g = sl2
        .grading(&JSubset::from_labels(1, &[1]).unwrap())
        .unwrap();
    let r = is_algebraic(&sl2.algebra, &g, SampleMode::Exhaustive).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("sl2: {:?}", r.counterexample))?;
    Ok(format!(
        "{checked} gradings pass 200 samples; sl2 exhaustive ({} pairs)",
        r.checked
    ))
}

fn criterion_7() -> Outcome {
    let mut instances = 0;
    for (ty, n) in all_types_up_to(4) {
        let rs = RootSystem::new(ty, n).unwrap();
        for j in rs.admissible_subsets() {
            let mut dims = Vec::new();
            for field in [q(), gf(5), gf(7), gf(101)] {
                let ch = chevalley_algebra(&rs, field).unwrap();
                let g = ch.grading(&j).unwrap();
                let hat = build_hat(&ch.algebra, &g)
                    .map_err(|e| format!("{ty}{n} {}: {e}", j.display()))?;
                let tag = format!("{ty}{n} {} over {field}", j.display());
                ensure(hat.contains_grading_derivation(), || {
                    format!("{tag}: zeta missing")
                })?;
                let jac = hat.check_jacobi(2000, 0);
                ensure(jac.passed(), || format!("{tag}: {jac:?}"))?;
                ensure(
                    hat.algebra().dim() > 40
                        || matches!(jac, gradus::lie::JacobiReport::Exhaustive { .. }),
                    || format!("{tag}: Jacobi not exhaustive"),
                )?;
                dims.push(hat.hat_zero_dim());
            }
            ensure(dims.iter().all(|&d| d == dims[0]), || {
                format!("{ty}{n} {}: hat-zero dims {dims:?}", j.display())
            })?;
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} gradings of rank <= 4 over Q, GF5, GF7, GF101"
    ))
}

fn criterion_8() -> Outcome {
    let ch = chevalley_algebra(&RootSystem::new(RootType::A, 4).unwrap(), gf(5)).unwrap();
    let center = ch.algebra.center();
    ensure(center.dim() == 1, || {
        format!("center has dimension {}", center.dim())
    })?;
    let j = JSubset::from_labels(4, &[2]).unwrap();
    let g = ch.grading(&j).unwrap();
    let quo = ch.algebra.central_quotient().map_err(|e| e.to_string())?;
    let qa = &quo.algebra;
    ensure(qa.dim() == 23, || {
        format!("quotient has dimension {}", qa.dim())
    })?;
    ensure(qa.check_jacobi_exhaustive().passed(), || {
        "quotient fails Jacobi".into()
    })?;
    ensure(qa.center().dim() == 0, || "quotient has a center".into())?;
    let degrees = quo.representatives.iter().map(|&r| g.degree(r)).collect();
    let gq = Grading::new(qa, degrees).map_err(|e| e.to_string())?;
    let mut seeds: Vec<Vec<Scalar>> = (0..qa.dim()).map(|i| qa.basis_vector(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for d in -2..=2 {
        let comp = gq.component(d);
        for _ in 0..10 {
            let mut v = qa.zero();
            for &i in &comp {
                v[i] = gf(5).random(&mut rng);
            }
            if v.iter().any(|s| !s.is_zero()) {
                seeds.push(v);
            }
        }
    }
    for (k, s) in seeds.iter().enumerate() {
        let closure =
            graded_ideal_closure(qa, &gq, std::slice::from_ref(s)).map_err(|e| e.to_string())?;
        ensure(closure.dim() == qa.dim(), || {
            format!("seed {k} generates an ideal of dimension {}", closure.dim())
        })?;
    }
    Ok(format!(
        "center dim 1; quotient dim 23 has no center; {} homogeneous seeds each generate it",
        seeds.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut algebras = 0;
    for (ty, n) in all_types_up_to(8) {
        let rs = RootSystem::new(ty, n).unwrap();
        if rs.num_roots() + n > 60 {
            continue;
        }
        for field in [q(), gf(5), gf(7)] {
            let ch = chevalley_algebra(&rs, field).unwrap();
            let r = ch.algebra.check_jacobi_exhaustive();
            ensure(r.passed(), || format!("{ty}{n} over {field}: {r:?}"))?;
            algebras += 1;
        }
    }
    for a in [
        gradus::structurable::examples::trivial(q()),
        gradus::structurable::examples::swap(q()),
        gradus::structurable::examples::m2_transpose(q()),
    ] {
        let k = kappa(&a).unwrap();
        ensure(k.check_jacobi().passed(), || "K(A) fails Jacobi".into())?;
        algebras += 1;
    }
    let mut constants = 0;
    for (ty, n) in all_types_up_to(8) {
        let rs = RootSystem::new(ty, n).unwrap();
        ChevalleyConstants::load_or_compute(&rs)
            .verify(&rs)
            .map_err(|e| format!("{ty}{n}: {e}"))?;
        constants += 1;
    }
    let dir = cache_dir().ok_or("no cache directory")?;
    let mut cached = 0;
    for (ty, n) in [(RootType::E, 7), (RootType::E, 8)] {
        let rs = RootSystem::new(ty, n).unwrap();
        let path = gradus::roots::constants::cache_path(&dir, &rs);
        read_cache(&path, &rs).map_err(|e| format!("{}: {e}", path.display()))?;
        cached += 1;
    }
    Ok(format!(
        "Jacobi exhaustive on {algebras} algebras of dim <= 60; |N| = p+1 on {constants} constant tables ({cached} cached)"
    ))
}

fn main() {
    // A private cache so the cached-table check reads files written by this run.
    let cache = tempfile::tempdir().expect("temporary cache directory");
    std::env::set_var("GRADUS_CACHE_DIR", cache.path());

    let criteria: [Criterion; 9] = [
        ("table reproduction", criterion_1),
        ("two-route consistency", criterion_2),
        ("exhaustive negatives in characteristic 5", criterion_3),
        ("K(A) correctness", criterion_4),
        ("Kantor pair axioms", criterion_5),
        ("algebraicity in characteristic 5", criterion_6),
        ("hat extension", criterion_7),
        ("characteristic 5 structure of sl5", criterion_8),
        ("structure constants", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
