//! Affine-cyclic sections, special-by-cyclic subgroups and the reports
//! built on them.

mod maschke;

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{p_part, prime_divisors, prime_power};
use crate::bounds::{self, BoundInputs, Formula};
use crate::error::{Error, Result};
use crate::structure::{self, GroupContext, SpecialBranch, SubgroupSet};
use crate::table::{BitSet, Elem, GroupTable, Subgroup};

pub use maschke::{
    check_decomposition, maschke_decomposition, FpHModule, MaschkeCheck, MaschkeDecomposition,
};

/// Smallest `k >= 1` with `x^k` in `n`.
pub fn order_modulo(t: &GroupTable, x: Elem, n: &Subgroup) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !n.contains(y) {
        y = t.mul(y, x);
        k += 1;
    }
    k
}

/// Elements of `h` whose image in `h/n` has order dividing `m`.
fn elements_of_order_dividing(t: &GroupTable, h: &Subgroup, n: &Subgroup, m: u64) -> BitSet {
    let mut bits = BitSet::new(t.order());
    for x in h.elements() {
        if n.contains(t.pow(x, m)) {
            bits.insert(x as usize);
        }
    }
    bits
}

/// A section `H/N ≅ E ⋊ C` with `E` elementary abelian of order `p^a` and
/// `C` cyclic of order `q^t` acting faithfully.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineCyclicSection {
    pub host: usize,
    pub kernel: usize,
    pub host_order: usize,
    pub kernel_order: usize,
    pub p: u64,
    pub q: u64,
    pub e_order: u64,
    pub c_order: u64,
    pub faithful: bool,
    /// An element of `H` whose image generates a complement to `E`.
    pub complement: Elem,
}

fn classify_section(
    t: &GroupTable,
    h: &Subgroup,
    n: &Subgroup,
    p: u64,
    q: u64,
) -> Result<Option<(u64, u64, Elem)>> {
    let quotient = (h.order() / n.order()) as u64;
    let pa = p_part(quotient, p);
    let qt = quotient / pa;
    let e_bits = elements_of_order_dividing(t, h, n, pa);
    // the p-elements form a subgroup exactly when the Sylow p-subgroup of
    // H/N is normal
    if e_bits.count() as u64 != pa * n.order() as u64 {
        return Ok(None);
    }
    let e = t.subgroup_from_bits(e_bits);
    let gens = e.gens();
    for (i, &a) in gens.iter().enumerate() {
        if !n.contains(t.pow(a, p))
            || gens[i + 1..]
                .iter()
                .any(|&b| !n.contains(t.commutator(a, b)))
        {
            return Ok(None);
        }
    }
    if !h.elements().any(|x| order_modulo(t, x, &e) == qt) {
        return Ok(None);
    }
    let Some(x) = h.elements().find(|&x| order_modulo(t, x, n) == qt) else {
        return Err(Error::Internal(format!(
            "no complement of order {qt} found in a section of order {quotient}"
        )));
    };
    let z = t.pow(x, qt / q);
    let faithful = gens.iter().any(|&g| !n.contains(t.commutator(g, z)));
    Ok(faithful.then_some((pa, qt, x)))
}

/// Every affine-cyclic section `H/N` with `|C| >= min_c`, over all pairs
/// of a subgroup `H` and a normal subgroup `N` of `H`.
pub fn affine_cyclic_sections(ctx: &GroupContext, min_c: u64) -> Result<Vec<AffineCyclicSection>> {
    let t = ctx.table();
    let lattice = ctx.lattice()?;
    let min_c = min_c.max(2);
    let mut out = Vec::new();
    for (hi, he) in lattice.iter().enumerate() {
        let h = &he.subgroup;
        if prime_divisors(h.order() as u64).len() < 2 {
            continue;
        }
        for (ni, ne) in lattice.iter().enumerate().take(hi) {
            let n = &ne.subgroup;
            if h.order() % n.order() != 0 || !n.is_subgroup_of(h) {
                continue;
            }
            let quotient = (h.order() / n.order()) as u64;
            let primes = prime_divisors(quotient);
            if primes.len() != 2 || !t.is_normal_in(n, h) {
                continue;
            }
            for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
                if p_part(quotient, q) < min_c {
                    continue;
                }
                if let Some((e_order, c_order, x)) = classify_section(t, h, n, p, q)? {
                    out.push(AffineCyclicSection {
                        host: hi,
                        kernel: ni,
                        host_order: h.order(),
                        kernel_order: n.order(),
                        p,
                        q,
                        e_order,
                        c_order,
                        faithful: true,
                        complement: x,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Recomputes the structure of a returned section from scratch.
pub fn reverify_section(ctx: &GroupContext, s: &AffineCyclicSection) -> Result<bool> {
    let t = ctx.table();
    let lattice = ctx.lattice()?;
    let h = &lattice.get(s.host).subgroup;
    let n = &lattice.get(s.kernel).subgroup;
    if !t.is_normal_in(n, h) || crate::arith::gcd(s.e_order, s.c_order) != 1 {
        return Ok(false);
    }
    let prime_of = |x: u64| prime_power(x).map(|(p, _)| p);
    if s.p == s.q || prime_of(s.e_order) != Some(s.p) || prime_of(s.c_order) != Some(s.q) {
        return Ok(false);
    }
    if order_modulo(t, s.complement, n) != s.c_order {
        return Ok(false);
    }
    let e = t.subgroup_from_bits(elements_of_order_dividing(t, h, n, s.e_order));
    if (e.order() / n.order()) as u64 != s.e_order {
        return Ok(false);
    }
    // C_C(E) = 1: the order-q element of C must act nontrivially on E/N
    let z = t.pow(s.complement, s.c_order / s.q);
    Ok(e.gens().iter().any(|&g| !n.contains(t.commutator(g, z))))
}

/// A subgroup `S = P ⋊ C` with `P` a normal special Sylow `p`-subgroup and
/// `C` a cyclic Sylow `q`-subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialWitness {
    pub subgroup: usize,
    pub order: usize,
    pub p: u64,
    pub q: u64,
    pub p_order: u64,
    pub c_order: u64,
    /// `|C : C_C(P)|`, the order of the image of `C` in `Aut(P)`.
    pub image: u64,
    pub branch: SpecialBranch,
    pub complement: Elem,
    pub generators: Vec<String>,
}

/// `|C : C_C(P)|` for `C = <c>` a cyclic `q`-group.
fn aut_image(t: &GroupTable, c: Elem, p: &Subgroup, q: u64) -> u64 {
    let mut y = c;
    let mut image = 1;
    while !p.gens().iter().all(|&g| t.mul(g, y) == t.mul(y, g)) {
        y = t.pow(y, q);
        image *= q;
    }
    image
}

/// All special-by-cyclic subgroups of the group, in lattice order.
pub fn special_by_cyclic_subgroups(ctx: &GroupContext) -> Result<Vec<SpecialWitness>> {
    let t = ctx.table();
    let lattice = ctx.lattice()?;
    let mut special_cache: HashMap<BitSet, Option<SpecialBranch>> = HashMap::new();
    let mut out = Vec::new();
    for (si, se) in lattice.iter().enumerate() {
        let s = &se.subgroup;
        let order = s.order() as u64;
        let primes = prime_divisors(order);
        if primes.len() != 2 {
            continue;
        }
        for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
            let pa = p_part(order, p);
            let qt = order / pa;
            let p_bits = elements_of_order_dividing(t, s, &t.trivial(), pa);
            if p_bits.count() as u64 != pa {
                continue;
            }
            let Some(c) = s.elements().find(|&x| t.elem_order(x) as u64 == qt) else {
                continue;
            };
            let branch = *special_cache.entry(p_bits.clone()).or_insert_with(|| {
                let sub = t.subgroup_from_bits(p_bits.clone());
                structure::special_check(t, &sub)
                    .ok()
                    .and_then(|c| c.branch)
            });
            let Some(branch) = branch else { continue };
            let sylow = t.subgroup_from_bits(p_bits);
            out.push(SpecialWitness {
                subgroup: si,
                order: s.order(),
                p,
                q,
                p_order: pa,
                c_order: qt,
                image: aut_image(t, c, &sylow, q),
                branch,
                complement: c,
                generators: s
                    .gens()
                    .iter()
                    .map(|&g| t.permutation(g).to_cycle_string())
                    .collect(),
            });
        }
    }
    Ok(out)
}

fn best_witness<'a>(
    witnesses: impl Iterator<Item = &'a SpecialWitness>,
    threshold: u64,
) -> Option<&'a SpecialWitness> {
    witnesses
        .filter(|w| w.image >= threshold)
        .min_by_key(|w| (std::cmp::Reverse(w.image), w.order, w.subgroup))
}

/// A special-by-cyclic subgroup whose cyclic part has image of order at
/// least `threshold` in `Aut(P)`, preferring the largest image.
pub fn special_by_cyclic_witness(
    ctx: &GroupContext,
    threshold: u64,
) -> Result<Option<SpecialWitness>> {
    let all = special_by_cyclic_subgroups(ctx)?;
    Ok(best_witness(all.iter(), threshold).cloned())
}

/// Checks a witness from scratch: the Sylow `p`-subgroup of `S` is normal
/// and special, `S/P` is cyclic of `q`-power order, and the image order is
/// `|C : C_C(P)|`.
pub fn reverify_witness(ctx: &GroupContext, w: &SpecialWitness) -> Result<bool> {
    let t = ctx.table();
    let s = &ctx.lattice()?.get(w.subgroup).subgroup;
    let p_sub = structure::sylow(t, s, w.p);
    if p_sub.order() as u64 != w.p_order || !t.is_normal_in(&p_sub, s) {
        return Ok(false);
    }
    let qt = (s.order() / p_sub.order()) as u64;
    if qt != w.c_order || prime_power(qt).map(|(q, _)| q) != Some(w.q) {
        return Ok(false);
    }
    if order_modulo(t, w.complement, &p_sub) != qt || t.elem_order(w.complement) as u64 != qt {
        return Ok(false);
    }
    let special = structure::special_check(t, &p_sub)?;
    if special.branch != Some(w.branch) {
        return Ok(false);
    }
    let c = t.closure(&[w.complement]);
    let centralizer = t.centralizer(&p_sub, &c);
    Ok((c.order() / centralizer.order()) as u64 == w.image)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinIndexReport {
    pub index: u64,
    pub fitting_order: usize,
    /// Minimum index over the nilpotent normal subgroups in the lattice.
    pub enumerated_index: u64,
    pub agree: bool,
}

/// `|G : F(G)|`, cross-checked against every nilpotent normal subgroup.
pub fn min_index_nilpotent_normal(ctx: &GroupContext) -> Result<MinIndexReport> {
    let order = ctx.table().order();
    let f = ctx.fitting();
    let largest = ctx
        .lattice()?
        .iter()
        .filter(|e| e.flags.is_normal && e.flags.nilpotency_class.is_some())
        .map(|e| e.subgroup.order())
        .max()
        .unwrap_or(1);
    let index = (order / f.order()) as u64;
    let enumerated_index = (order / largest) as u64;
    Ok(MinIndexReport {
        index,
        fitting_order: f.order(),
        enumerated_index,
        agree: index == enumerated_index,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    A,
    B,
    Both,
    None,
}

impl Branch {
    fn from_flags(a: bool, b: bool) -> Self {
        match (a, b) {
            (true, true) => Branch::Both,
            (true, false) => Branch::A,
            (false, true) => Branch::B,
            (false, false) => Branch::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "T")]
    pub threshold: u64,
    pub order: u64,
    pub rank: u32,
    pub fitting_order: usize,
    pub nilpotent_index: u64,
    pub nilpotent_index_enumerated: u64,
    pub section_count: usize,
    /// Largest `|C|` over affine-cyclic sections (1 if there are none).
    pub max_section_c: u64,
    /// Largest image order over special-by-cyclic subgroups (1 if none).
    pub max_witness_image: u64,
    pub best_special_witness: Option<SpecialWitness>,
    /// No affine-cyclic section has `|C| > T`.
    pub branch_a: bool,
    /// A special-by-cyclic witness with image at least `T` exists.
    pub branch_b: bool,
    pub branch_satisfied: Branch,
    /// The witness has `|P| > p^(2r)`.
    pub p_order_flag: bool,
    pub section_bound_holds: bool,
    pub witness_reverified: bool,
    pub consistent: bool,
}

pub fn verify_reduction_theorem(ctx: &GroupContext, threshold: u64) -> Result<DichotomyReport> {
    let lattice = ctx.lattice()?;
    let min_index = min_index_nilpotent_normal(ctx)?;
    let sections = affine_cyclic_sections(ctx, 2)?;
    let witnesses = special_by_cyclic_subgroups(ctx)?;
    let max_section_c = sections.iter().map(|s| s.c_order).max().unwrap_or(1);
    let max_witness_image = witnesses.iter().map(|w| w.image).max().unwrap_or(1);
    let best = best_witness(witnesses.iter(), threshold).cloned();
    let rank = lattice.rank();
    let branch_a = max_section_c <= threshold;
    let branch_b = best.is_some();
    let witness_reverified = match &best {
        Some(w) => reverify_witness(ctx, w)?,
        None => true,
    };
    let p_order_flag = best.as_ref().is_some_and(|w| {
        (w.p as u128)
            .checked_pow(2 * rank)
            .is_some_and(|bound| w.p_order as u128 > bound)
    });
    let section_bound_holds = max_section_c <= min_index.index;
    // A faithful section of size |C| yields a special-by-cyclic subgroup
    // with image |C| and conversely, so the two maxima agree.
    let consistent = (branch_a || branch_b)
        && min_index.agree
        && section_bound_holds
        && witness_reverified
        && max_section_c == max_witness_image;
    Ok(DichotomyReport {
        label: None,
        threshold,
        order: ctx.group().order(),
        rank,
        fitting_order: min_index.fitting_order,
        nilpotent_index: min_index.index,
        nilpotent_index_enumerated: min_index.enumerated_index,
        section_count: sections.len(),
        max_section_c,
        max_witness_image,
        best_special_witness: best,
        branch_a,
        branch_b,
        branch_satisfied: Branch::from_flags(branch_a, branch_b),
        p_order_flag,
        section_bound_holds,
        witness_reverified,
        consistent,
    })
}

/// A `p`-subgroup `P` with an abelian normal subgroup `A`, `P/A` cyclic,
/// and no abelian normal subgroup of index at most `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianByCyclicWitness {
    pub subgroup: usize,
    pub order: usize,
    pub p: u64,
    pub abelian_normal_order: usize,
    pub min_abelian_normal_index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "T")]
    pub threshold: u64,
    pub order: u64,
    pub rank: u32,
    /// `T^(16 r^2 ceil(log2 T))` in decimal, absent when too large to
    /// evaluate (then it exceeds every index).
    pub jordan_bound: Option<String>,
    pub min_abelian_normal_index: u64,
    pub branch_a: bool,
    pub branch_b: Option<SpecialWitness>,
    pub branch_c: Option<AbelianByCyclicWitness>,
    pub satisfied: Vec<&'static str>,
    pub witnesses_reverified: bool,
    pub consistent: bool,
}

/// Largest order of an abelian subgroup of `p` that is normal in `p`.
fn max_abelian_normal_in(
    t: &GroupTable,
    lattice: &SubgroupSet,
    p: &Subgroup,
) -> (usize, Vec<usize>) {
    let candidates: Vec<usize> = lattice
        .subgroups_of(p)
        .filter(|&i| {
            let a = &lattice.get(i).subgroup;
            lattice.get(i).flags.is_abelian && t.is_normal_in(a, p)
        })
        .collect();
    let best = candidates
        .iter()
        .map(|&i| lattice.get(i).subgroup.order())
        .max()
        .unwrap_or(1);
    (best, candidates)
}

fn abelian_by_cyclic_witness(
    t: &GroupTable,
    lattice: &SubgroupSet,
    threshold: u64,
) -> Option<AbelianByCyclicWitness> {
    for (i, e) in lattice.iter().enumerate() {
        let p_sub = &e.subgroup;
        let Some((p, _)) = prime_power(p_sub.order() as u64) else {
            continue;
        };
        if e.flags.is_abelian {
            continue;
        }
        let (largest, candidates) = max_abelian_normal_in(t, lattice, p_sub);
        let min_index = (p_sub.order() / largest) as u64;
        if min_index <= threshold {
            continue;
        }
        let cyclic_over = candidates.iter().copied().find(|&ai| {
            let a = &lattice.get(ai).subgroup;
            p_sub
                .elements()
                .any(|x| t.join_elements(a, &[x]).order() == p_sub.order())
        });
        if let Some(ai) = cyclic_over {
            return Some(AbelianByCyclicWitness {
                subgroup: i,
                order: p_sub.order(),
                p,
                abelian_normal_order: lattice.get(ai).subgroup.order(),
                min_abelian_normal_index: min_index,
            });
        }
    }
    None
}

fn reverify_abelian_by_cyclic(
    t: &GroupTable,
    lattice: &SubgroupSet,
    w: &AbelianByCyclicWitness,
    threshold: u64,
) -> bool {
    let p_sub = &lattice.get(w.subgroup).subgroup;
    let normal_abelian: Vec<&Subgroup> = lattice
        .iter()
        .map(|e| &e.subgroup)
        .filter(|a| a.is_subgroup_of(p_sub) && t.is_abelian(a) && t.is_normal_in(a, p_sub))
        .collect();
    let no_small_index = normal_abelian
        .iter()
        .all(|a| (p_sub.order() / a.order()) as u64 > threshold);
    let cyclic_quotient = normal_abelian.iter().any(|a| {
        a.order() == w.abelian_normal_order
            && p_sub
                .elements()
                .any(|x| order_modulo(t, x, a) as usize == p_sub.order() / a.order())
    });
    no_small_index && cyclic_quotient
}

pub fn verify_jordan_trichotomy(ctx: &GroupContext, threshold: u64) -> Result<TrichotomyReport> {
    if threshold == 0 {
        return Err(Error::InvalidField {
            field: "T",
            reason: "must be at least 1".into(),
        });
    }
    let t = ctx.table();
    let lattice = ctx.lattice()?;
    let rank = lattice.rank();
    let order = t.order();
    let largest_abelian_normal = lattice
        .iter()
        .filter(|e| e.flags.is_abelian && e.flags.is_normal)
        .map(|e| e.subgroup.order())
        .max()
        .unwrap_or(1);
    let min_abelian_normal_index = (order / largest_abelian_normal) as u64;
    let inputs = BoundInputs {
        r: Some(rank as u64),
        big_t: Some(threshold),
        ..BoundInputs::default()
    };
    let jordan = match bounds::evaluate(Formula::Jordan, &inputs) {
        Ok(v) => Some(v.value),
        Err(Error::GuardExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let branch_a = jordan
        .as_ref()
        .is_none_or(|j| BigUint::from(min_abelian_normal_index) <= *j);
    let witnesses = special_by_cyclic_subgroups(ctx)?;
    let branch_b = best_witness(
        witnesses
            .iter()
            .filter(|w| w.branch == SpecialBranch::ElementaryAbelian),
        threshold,
    )
    .cloned();
    let branch_c = abelian_by_cyclic_witness(t, lattice, threshold);
    let mut satisfied = Vec::new();
    if branch_a {
        satisfied.push("a");
    }
    if branch_b.is_some() {
        satisfied.push("b");
    }
    if branch_c.is_some() {
        satisfied.push("c");
    }
    let witnesses_reverified = match &branch_b {
        Some(w) => reverify_witness(ctx, w)?,
        None => true,
    } && branch_c
        .as_ref()
        .is_none_or(|w| reverify_abelian_by_cyclic(t, lattice, w, threshold));
    Ok(TrichotomyReport {
        label: None,
        threshold,
        order: ctx.group().order(),
        rank,
        jordan_bound: jordan.map(|j| j.to_string()),
        min_abelian_normal_index,
        branch_a,
        consistent: !satisfied.is_empty() && witnesses_reverified,
        branch_b,
        branch_c,
        satisfied,
        witnesses_reverified,
    })
}
