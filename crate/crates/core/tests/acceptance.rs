//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use grouptk_core::catalog::default_catalog;
use grouptk_core::checks::{run_check, Check, ScanOptions, ScanStatus};
use grouptk_core::cohomology::{
    elementary_abelian_cohomology_dim, elementary_abelian_dims_by_resolution,
};
use grouptk_core::dichotomy::{check_decomposition, maschke_decomposition, FpHModule};
use grouptk_core::heisenberg::{
    min_abelian_index, sample_points, verify_free_action_s3_model, verify_phi_action,
    verify_psi_is_effective_action, Status, DEFAULT_SEED,
};
use grouptk_core::{group_from_spec, GroupContext, Guards};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    summary: String,
}

fn verdict(ok: bool, summary: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        summary: summary.into(),
    }
}

struct Catalogued {
    label: String,
    ctx: GroupContext,
}

fn catalog_contexts(guards: &Guards) -> Vec<Catalogued> {
    default_catalog()
        .groups
        .into_iter()
        .map(|e| Catalogued {
            ctx: GroupContext::new(group_from_spec(&e.spec, guards).unwrap(), guards).unwrap(),
            label: e.label,
        })
        .collect()
}

/// Runs `check` on every selected group; returns the labels that did not
/// pass and how many groups were checked.
fn run_over(
    groups: &[Catalogued],
    check: Check,
    options: &ScanOptions,
    select: impl Fn(&Catalogued) -> bool,
) -> (Vec<String>, usize) {
    let mut failed = Vec::new();
    let mut checked = 0;
    for g in groups.iter().filter(|g| select(g)) {
        checked += 1;
        let r = run_check(&g.label, &g.ctx, check, options);
        if r.status != ScanStatus::Pass {
            failed.push(format!("{}: {}", g.label, r.details));
        }
    }
    (failed, checked)
}

fn heisenberg_abelian_index(guards: &Guards) -> Verdict {
    let mut minima = Vec::new();
    let mut ok = true;
    for n in 2..=5u64 {
        match min_abelian_index(n, guards) {
            Ok(r) => {
                ok &= r.bound_holds && r.min_index >= n;
                minima.push(format!("n={n}:{}", r.min_index));
            }
            Err(e) => {
                ok = false;
                minima.push(format!("n={n}:error {e}"));
            }
        }
    }
    verdict(ok, format!("min |G_n:A| {}", minima.join(" ")))
}

fn bundle_actions() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=4u64 {
        let samples = sample_points(n, 64, DEFAULT_SEED);
        let phi = verify_phi_action(n, &samples, DEFAULT_SEED).unwrap();
        let psi = verify_psi_is_effective_action(n, &samples, DEFAULT_SEED).unwrap();
        ok &= samples.len() >= 50 && phi.status == Status::Pass && psi.status == Status::Pass;
        notes.push(format!(
            "n={n}: {} samples, {} + {} violations",
            samples.len(),
            phi.violation_count,
            psi.violation_count
        ));
    }
    verdict(ok, notes.join("; "))
}

fn free_action(guards: &Guards) -> Verdict {
    let mut derived = 0;
    let mut ok = true;
    for n in 2..=6u64 {
        let r = verify_free_action_s3_model(n, guards).unwrap();
        ok &= r.status == Status::Pass;
        derived += n * n * n - 1 - r.violation_count as u64;
    }
    verdict(
        ok,
        format!("{derived} non-identity elements shown fixed-point free"),
    )
}

fn cohomology_dims() -> Verdict {
    let mut equal = 0;
    let mut total = 0;
    for p in [2, 3, 5] {
        for r in 1..=3u32 {
            let dims = elementary_abelian_dims_by_resolution(p, r, 8).unwrap();
            for d in 0..=8u64 {
                total += 1;
                if dims[d as usize] == elementary_abelian_cohomology_dim(p, r as u64, d).unwrap() {
                    equal += 1;
                }
            }
        }
    }
    verdict(
        equal == total && total == 81,
        format!("{equal}/{total} equalities"),
    )
}

fn catalog_verdict(results: &[(Vec<String>, usize)], what: &str) -> Verdict {
    let failed: Vec<&String> = results.iter().flat_map(|(f, _)| f).collect();
    let checked: usize = results.iter().map(|(_, c)| c).sum();
    let mut summary = format!("{checked} {what}");
    if !failed.is_empty() {
        summary.push_str(&format!(
            ", failing: {}",
            failed
                .iter()
                .take(3)
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(" | ")
        ));
    }
    verdict(failed.is_empty() && checked > 0, summary)
}

fn maschke_instances() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut passed = 0;
    for _ in 0..200 {
        let m = common::random_module(&mut rng);
        let module = FpHModule::new(m.p, m.factors, m.generators).unwrap();
        let d = maschke_decomposition(&module).unwrap();
        if check_decomposition(&module, &d).holds() {
            passed += 1;
        }
    }
    verdict(
        passed == 200,
        format!("{passed}/200 random modules decompose"),
    )
}

fn prime_of(order: u64) -> Option<u64> {
    grouptk_core::arith::prime_power(order).map(|(p, _)| p)
}

fn main() -> ExitCode {
    let guards = Guards::default();
    let options = ScanOptions::default();
    let start = Instant::now();
    let groups = catalog_contexts(&guards);
    let setup = start.elapsed();

    type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn Fn() -> Verdict + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "heisenberg abelian index",
            Some(Duration::from_secs(60)),
            Box::new(|| heisenberg_abelian_index(&guards)),
        ),
        (
            "bundle actions",
            Some(Duration::from_secs(60)),
            Box::new(bundle_actions),
        ),
        (
            "free action on T2 x S3",
            Some(Duration::from_secs(10)),
            Box::new(|| free_action(&guards)),
        ),
        (
            "cohomology dimensions",
            Some(Duration::from_secs(30)),
            Box::new(cohomology_dims),
        ),
        (
            "section vs nilpotent index",
            Some(Duration::from_secs(900)),
            Box::new(|| {
                let r = run_over(&groups, Check::SectionVsIndex, &options, |_| true);
                catalog_verdict(&[r], "catalog groups")
            }),
        ),
        (
            "fitting dominance and frattini nilpotency",
            None,
            Box::new(|| {
                let a = run_over(&groups, Check::FittingDominance, &options, |_| true);
                let b = run_over(&groups, Check::FrattiniNilpotent, &options, |_| true);
                catalog_verdict(&[a, b], "group checks")
            }),
        ),
        (
            "chermak-delgado postconditions",
            None,
            Box::new(|| {
                let r = run_over(&groups, Check::ChermakDelgado, &options, |g| {
                    g.ctx.group().order() <= 100
                });
                catalog_verdict(&[r], "catalog groups of order <= 100")
            }),
        ),
        (
            "burnside-miller and gillam",
            None,
            Box::new(|| {
                let small_23 = |g: &Catalogued| {
                    let order = g.ctx.group().order();
                    order > 1 && order <= 64 && matches!(prime_of(order), Some(2 | 3))
                };
                let a = run_over(&groups, Check::BurnsideMiller, &options, small_23);
                let b = run_over(&groups, Check::Gillam, &options, small_23);
                catalog_verdict(&[a, b], "2- and 3-group checks")
            }),
        ),
        ("maschke decomposition", None, Box::new(maschke_instances)),
        (
            "dichotomy and trichotomy reports",
            None,
            Box::new(|| {
                let mut results = Vec::new();
                for threshold in [1, 2, 3, 5] {
                    let options = ScanOptions {
                        threshold,
                        ..options
                    };
                    results.push(run_over(&groups, Check::Dichotomy, &options, |_| true));
                    results.push(run_over(&groups, Check::Trichotomy, &options, |_| true));
                }
                results.push(run_over(&groups, Check::SpecialWitness, &options, |_| true));
                catalog_verdict(&results, "reports at T in {1,2,3,5} plus witness re-checks")
            }),
        ),
    ];

    println!(
        "catalog: {} groups built in {:.2}s",
        groups.len(),
        setup.as_secs_f64()
    );
    let mut all_ok = true;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let begin = Instant::now();
        let v = run();
        let elapsed = begin.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let ok = v.ok && in_time;
        all_ok &= ok;
        let limit = budget.map_or(String::new(), |b| format!(", limit {}s", b.as_secs()));
        println!(
            "criterion {:>2} {}: {} ({}; {:.2}s{limit})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            v.summary,
            elapsed.as_secs_f64(),
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
