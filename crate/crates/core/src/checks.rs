//! Per-group invariant checks run by catalog scans.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::arith::{exact_log, prime_power};
use crate::catalog::CatalogEntry;
use crate::config::Guards;
use crate::dichotomy::{
    affine_cyclic_sections, min_index_nilpotent_normal, reverify_section, reverify_witness,
    special_by_cyclic_subgroups, verify_jordan_trichotomy, verify_reduction_theorem,
};
use crate::error::{Error, Result};
use crate::perm::{group_from_spec, quotient_group, PermGroup, Permutation};
use crate::structure::{self, series, GroupContext};

/// Quotients `G/N` are rank-checked only for `|G|` up to this order.
pub const QUOTIENT_RANK_MAX_ORDER: u64 = 64;
/// Naive closure is compared with the BSGS order up to this order.
pub const NAIVE_CLOSURE_MAX_ORDER: u64 = 5000;
const MEMBERSHIP_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    BsgsOrder,
    FittingDominance,
    FrattiniNilpotent,
    RankMonotone,
    SectionVsIndex,
    ChermakDelgado,
    BurnsideMiller,
    Gillam,
    Dichotomy,
    Trichotomy,
    MinIndexNilpotent,
    SpecialWitness,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::BsgsOrder,
        Check::FittingDominance,
        Check::FrattiniNilpotent,
        Check::RankMonotone,
        Check::SectionVsIndex,
        Check::ChermakDelgado,
        Check::BurnsideMiller,
        Check::Gillam,
        Check::Dichotomy,
        Check::Trichotomy,
        Check::MinIndexNilpotent,
        Check::SpecialWitness,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::BsgsOrder => "bsgs-order",
            Check::FittingDominance => "fitting-dominance",
            Check::FrattiniNilpotent => "frattini-nilpotent",
            Check::RankMonotone => "rank-monotone",
            Check::SectionVsIndex => "section-vs-index",
            Check::ChermakDelgado => "chermak-delgado",
            Check::BurnsideMiller => "burnside-miller",
            Check::Gillam => "gillam",
            Check::Dichotomy => "dichotomy",
            Check::Trichotomy => "trichotomy",
            Check::MinIndexNilpotent => "min-index-nilpotent",
            Check::SpecialWitness => "special-witness",
        }
    }

    /// Parses a comma-separated list; `all` selects every check and the
    /// empty string selects none.
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        let mut seen = HashSet::new();
        out.retain(|c| seen.insert(*c));
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Format(format!("unknown check `{s}`")))
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    #[serde(rename = "skipped:guard")]
    SkippedGuard,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub label: String,
    pub check: Check,
    pub status: ScanStatus,
    pub details: Value,
    /// Milliseconds; only filled in when timings are requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub threshold: u64,
    pub seed: u64,
    pub timings: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            threshold: 2,
            seed: crate::heisenberg::DEFAULT_SEED,
            timings: false,
        }
    }
}

struct Outcome {
    status: ScanStatus,
    details: Value,
}

impl Outcome {
    fn from_bool(ok: bool, details: Value) -> Self {
        Outcome {
            status: if ok {
                ScanStatus::Pass
            } else {
                ScanStatus::Fail
            },
            details,
        }
    }

    fn vacuous(reason: &str) -> Self {
        Outcome {
            status: ScanStatus::Pass,
            details: json!({ "vacuous": true, "reason": reason }),
        }
    }
}

fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(Permutation::to_cycle_string).collect()
}

fn error_result(label: &str, check: Check, e: &Error) -> ScanResult {
    let status = match e {
        Error::GuardExceeded { .. } => ScanStatus::SkippedGuard,
        _ => ScanStatus::Fail,
    };
    ScanResult {
        label: label.to_string(),
        check,
        status,
        details: json!({ "error": e.to_string() }),
        wall_time_ms: None,
    }
}

/// Runs `checks` on one catalog entry. The group and its subgroup lattice
/// are built once and shared between checks; a guard hit turns into
/// `skipped:guard` for the affected checks only.
pub fn scan_entry(
    entry: &CatalogEntry,
    checks: &[Check],
    options: &ScanOptions,
    guards: &Guards,
) -> Vec<ScanResult> {
    let start = Instant::now();
    let ctx = group_from_spec(&entry.spec, guards).and_then(|g| GroupContext::new(g, guards));
    let setup = start.elapsed();
    checks
        .iter()
        .map(|&check| {
            let begin = Instant::now();
            let mut result = match &ctx {
                Ok(ctx) => run_check(&entry.label, ctx, check, options),
                Err(e) => error_result(&entry.label, check, e),
            };
            if options.timings {
                let elapsed = begin.elapsed() + setup / checks.len().max(1) as u32;
                result.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
            }
            result
        })
        .collect()
}

pub fn run_check(
    label: &str,
    ctx: &GroupContext,
    check: Check,
    options: &ScanOptions,
) -> ScanResult {
    let outcome = match check {
        Check::BsgsOrder => bsgs_order(ctx, options.seed),
        Check::FittingDominance => fitting_dominance(ctx),
        Check::FrattiniNilpotent => frattini_nilpotent(ctx),
        Check::RankMonotone => rank_monotone(ctx),
        Check::SectionVsIndex => section_vs_index(ctx),
        Check::ChermakDelgado => chermak_delgado(ctx),
        Check::BurnsideMiller => burnside_miller(ctx),
        Check::Gillam => gillam(ctx),
        Check::Dichotomy => dichotomy(ctx, options.threshold),
        Check::Trichotomy => trichotomy(ctx, options.threshold),
        Check::MinIndexNilpotent => min_index(ctx),
        Check::SpecialWitness => special_witnesses(ctx),
    };
    match outcome {
        Ok(o) => ScanResult {
            label: label.to_string(),
            check,
            status: o.status,
            details: o.details,
            wall_time_ms: None,
        },
        Err(e) => error_result(label, check, &e),
    }
}

/// Breadth-first closure under right multiplication by the generators.
pub fn naive_closure(g: &PermGroup, limit: usize) -> Option<HashSet<Permutation>> {
    let mut seen = HashSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen)
}

fn bsgs_order(ctx: &GroupContext, seed: u64) -> Result<Outcome> {
    let g = ctx.group();
    if g.order() > NAIVE_CLOSURE_MAX_ORDER {
        return Ok(Outcome::vacuous("order above naive closure limit"));
    }
    let closure = naive_closure(g, NAIVE_CLOSURE_MAX_ORDER as usize).expect("order within limit");
    let elements: Vec<&Permutation> = {
        let mut v: Vec<&Permutation> = closure.iter().collect();
        v.sort();
        v
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut non_members = Vec::new();
    for _ in 0..MEMBERSHIP_SAMPLES {
        let a = elements[rng.gen_range(0..elements.len())];
        let b = elements[rng.gen_range(0..elements.len())];
        let ab = a.mul(b);
        if !g.contains(&ab) || !closure.contains(&ab) {
            non_members.push(json!({ "a": a.to_cycle_string(), "b": b.to_cycle_string() }));
        }
    }
    let ok = closure.len() as u64 == g.order() && non_members.is_empty();
    Ok(Outcome::from_bool(
        ok,
        json!({
            "bsgs_order": g.order(),
            "enumerated": closure.len(),
            "membership_samples": MEMBERSHIP_SAMPLES,
            "non_members": non_members,
        }),
    ))
}

fn fitting_dominance(ctx: &GroupContext) -> Result<Outcome> {
    let t = ctx.table();
    let f = ctx.fitting();
    let lattice = ctx.lattice()?;
    let mut checked = 0;
    for e in lattice.iter() {
        if !(e.flags.is_normal && e.flags.nilpotency_class.is_some()) {
            continue;
        }
        checked += 1;
        if !e.subgroup.is_subgroup_of(&f) {
            return Ok(Outcome::from_bool(
                false,
                json!({
                    "fitting_order": f.order(),
                    "witness": {
                        "order": e.subgroup.order(),
                        "generators": cycles(ctx.to_perm(&e.subgroup).generators()),
                    },
                }),
            ));
        }
    }
    let fitting_nilpotent = series::nilpotency_class(t, &f).is_some();
    let fitting_normal = t.is_normal_in(&f, &t.whole());
    Ok(Outcome::from_bool(
        fitting_nilpotent && fitting_normal,
        json!({
            "fitting_order": f.order(),
            "nilpotent_normal_subgroups": checked,
            "fitting_nilpotent": fitting_nilpotent,
            "fitting_normal": fitting_normal,
        }),
    ))
}

fn frattini_nilpotent(ctx: &GroupContext) -> Result<Outcome> {
    let t = ctx.table();
    let phi = ctx.frattini()?;
    let class = series::nilpotency_class(t, &phi);
    let mut details = json!({
        "frattini_order": phi.order(),
        "nilpotency_class": class,
    });
    let mut ok = class.is_some();
    let order = t.order() as u64;
    if let Some((p, _)) = prime_power(order) {
        let kernel = structure::elementary_abelian_kernel(t, &t.whole(), p);
        let burnside = exact_log((order / phi.order() as u64).max(1), p).unwrap_or(u32::MAX);
        let d = ctx.min_generators();
        let kernel_agrees = kernel == phi;
        details["kernel_agrees"] = json!(kernel_agrees);
        details["frattini_quotient_dim"] = json!(burnside);
        details["min_generators"] = json!(d);
        ok &= kernel_agrees && burnside == d;
    }
    Ok(Outcome::from_bool(ok, details))
}

fn rank_monotone(ctx: &GroupContext) -> Result<Outcome> {
    let t = ctx.table();
    let lattice = ctx.lattice()?;
    let rank = lattice.rank();
    let whole = t.whole();
    let order = t.order() as u64;
    let mut quotients_checked = 0;
    let mut quotient_ranks = Vec::new();
    if order <= QUOTIENT_RANK_MAX_ORDER {
        for e in lattice.iter() {
            let n = &e.subgroup;
            if !e.flags.is_normal || n.is_trivial() || *n == whole {
                continue;
            }
            let q = quotient_group(ctx.group(), &ctx.to_perm(n), ctx.guards())?;
            let quotient_rank = GroupContext::new(q, ctx.guards())?.rank()?;
            quotients_checked += 1;
            if quotient_rank > rank {
                return Ok(Outcome::from_bool(
                    false,
                    json!({
                        "rank": rank,
                        "witness": {
                            "kind": "quotient",
                            "normal_order": n.order(),
                            "normal_generators": cycles(ctx.to_perm(n).generators()),
                            "quotient_rank": quotient_rank,
                        },
                    }),
                ));
            }
            quotient_ranks.push(quotient_rank);
        }
    }
    // rank(H) for H <= G is the largest generator count over the subgroups
    // of H, recomputed here per subgroup
    let mut subgroup_max = 0;
    for e in lattice.iter() {
        let h_rank = lattice
            .subgroups_of(&e.subgroup)
            .map(|i| lattice.get(i).flags.min_generators)
            .max()
            .unwrap_or(0);
        if h_rank > rank {
            return Ok(Outcome::from_bool(
                false,
                json!({
                    "rank": rank,
                    "witness": {
                        "kind": "subgroup",
                        "order": e.subgroup.order(),
                        "generators": cycles(ctx.to_perm(&e.subgroup).generators()),
                        "subgroup_rank": h_rank,
                    },
                }),
            ));
        }
        subgroup_max = subgroup_max.max(h_rank);
    }
    Ok(Outcome::from_bool(
        true,
        json!({
            "rank": rank,
            "subgroups_checked": lattice.len(),
            "max_subgroup_rank": subgroup_max,
            "quotients_checked": quotients_checked,
            "max_quotient_rank": quotient_ranks.iter().max(),
            "quotients_skipped": order > QUOTIENT_RANK_MAX_ORDER,
        }),
    ))
}

fn section_vs_index(ctx: &GroupContext) -> Result<Outcome> {
    let index = min_index_nilpotent_normal(ctx)?.index;
    let sections = affine_cyclic_sections(ctx, 2)?;
    let largest = sections.iter().max_by_key(|s| s.c_order);
    let max_c = largest.map_or(1, |s| s.c_order);
    let mut details = json!({
        "nilpotent_index": index,
        "section_count": sections.len(),
        "max_section_c": max_c,
    });
    if max_c > index {
        details["witness"] = serde_json::to_value(largest).expect("section serializes");
    }
    Ok(Outcome::from_bool(max_c <= index, details))
}

fn chermak_delgado(ctx: &GroupContext) -> Result<Outcome> {
    let cd = ctx.chermak_delgado()?;
    let ok = cd.holds();
    let mut details = serde_json::to_value(&cd).expect("report serializes");
    details["generators"] = json!(cycles(ctx.to_perm(&cd.subgroup).generators()));
    Ok(Outcome::from_bool(ok, details))
}

/// Largest order of an abelian normal subgroup, and of any abelian subgroup.
fn abelian_maxima(ctx: &GroupContext) -> Result<(usize, usize)> {
    let lattice = ctx.lattice()?;
    let abelian: Vec<_> = lattice.iter().filter(|e| e.flags.is_abelian).collect();
    let normal = abelian
        .iter()
        .filter(|e| e.flags.is_normal)
        .map(|e| e.subgroup.order())
        .max()
        .unwrap_or(1);
    let any = abelian
        .iter()
        .map(|e| e.subgroup.order())
        .max()
        .unwrap_or(1);
    Ok((normal, any))
}

fn burnside_miller(ctx: &GroupContext) -> Result<Outcome> {
    let order = ctx.group().order();
    let Some((p, _)) = prime_power(order) else {
        return Ok(Outcome::vacuous("not a p-group"));
    };
    let (b, _) = abelian_maxima(ctx)?;
    let beta = exact_log(b as u64, p).expect("subgroup of a p-group") as u64;
    let exponent = beta * (beta + 1) / 2;
    let quotient = order / b as u64;
    let bound = (p as u128).checked_pow(exponent as u32);
    let ok = bound.is_none_or(|bound| quotient as u128 <= bound);
    Ok(Outcome::from_bool(
        ok,
        json!({
            "p": p,
            "order": order,
            "max_abelian_normal_order": b,
            "log_p_b": beta,
            "quotient_order": quotient,
            "quotient_bound_exponent": exponent,
            "quotient_bound": bound.map(|v| v.to_string()),
        }),
    ))
}

fn gillam(ctx: &GroupContext) -> Result<Outcome> {
    let t = ctx.table();
    if prime_power(t.order() as u64).is_none() {
        return Ok(Outcome::vacuous("not a p-group"));
    }
    let derived_length = series::derived_length(t, &t.whole()).expect("p-groups are solvable");
    if derived_length > 2 {
        return Ok(Outcome::vacuous("not metabelian"));
    }
    let (normal, any) = abelian_maxima(ctx)?;
    Ok(Outcome::from_bool(
        normal == any,
        json!({
            "derived_length": derived_length,
            "max_abelian_order": any,
            "max_abelian_normal_order": normal,
        }),
    ))
}

fn dichotomy(ctx: &GroupContext, threshold: u64) -> Result<Outcome> {
    let report = verify_reduction_theorem(ctx, threshold)?;
    Ok(Outcome::from_bool(
        report.consistent,
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

fn trichotomy(ctx: &GroupContext, threshold: u64) -> Result<Outcome> {
    let report = verify_jordan_trichotomy(ctx, threshold)?;
    Ok(Outcome::from_bool(
        report.consistent,
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

fn min_index(ctx: &GroupContext) -> Result<Outcome> {
    let report = min_index_nilpotent_normal(ctx)?;
    Ok(Outcome::from_bool(
        report.agree,
        serde_json::to_value(report).expect("report serializes"),
    ))
}

fn special_witnesses(ctx: &GroupContext) -> Result<Outcome> {
    let witnesses = special_by_cyclic_subgroups(ctx)?;
    for w in &witnesses {
        if !reverify_witness(ctx, w)? {
            return Ok(Outcome::from_bool(
                false,
                json!({ "witness": w, "kind": "special-by-cyclic" }),
            ));
        }
    }
    let sections = affine_cyclic_sections(ctx, 2)?;
    for s in &sections {
        if !reverify_section(ctx, s)? {
            return Ok(Outcome::from_bool(
                false,
                json!({ "witness": s, "kind": "affine-cyclic-section" }),
            ));
        }
    }
    Ok(Outcome::from_bool(
        true,
        json!({ "witnesses": witnesses.len(), "sections": sections.len() }),
    ))
}
