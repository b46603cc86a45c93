//! Subgroup structure: lattices, characteristic subgroups, rank, special
//! p-groups and the Chermak–Delgado subgroup.

mod context;
mod lattice;
pub mod series;

use serde::Serialize;

use crate::arith::{prime_divisors, prime_power};
use crate::error::{Error, Result};
use crate::table::{BitSet, Elem, GroupTable, Subgroup};

pub use context::{
    all_subgroups, center, chermak_delgado_subgroup, derived_series, derived_subgroup,
    fitting_subgroup, frattini_subgroup, is_special_p_group, lower_central_series, min_generators,
    rank, structure_report, sylow_subgroup, GroupContext,
};
pub use lattice::{SubgroupEntry, SubgroupFlags, SubgroupSet};

/// `{x^-1 k x : k in h}` as an element set.
pub fn conjugate_bits(t: &GroupTable, h: &Subgroup, x: Elem) -> BitSet {
    let mut bits = BitSet::new(t.order());
    for k in h.elements() {
        bits.insert(t.conjugate(k, x) as usize);
    }
    bits
}

/// A Sylow `p`-subgroup of `h`, grown one step at a time inside normalizers.
/// Returns the trivial subgroup when `p` does not divide `|h|`.
pub fn sylow(t: &GroupTable, h: &Subgroup, p: u64) -> Subgroup {
    let target = crate::arith::p_part(h.order() as u64, p) as usize;
    let mut sylow = t.trivial();
    while sylow.order() < target {
        let norm = t.normalizer(&sylow, h);
        let step = norm.elements().find_map(|x| {
            if sylow.contains(x) {
                return None;
            }
            let mut y = x;
            let mut k = 1u64;
            while !sylow.contains(y) {
                y = t.mul(y, x);
                k += 1;
            }
            k.is_multiple_of(p).then(|| t.pow(x, k / p))
        });
        match step {
            Some(y) => sylow = t.join_elements(&sylow, &[y]),
            None => unreachable!("p divides |N(P)/P| while P is not Sylow"),
        }
    }
    sylow
}

/// Largest normal subgroup of `h` contained in `k`.
pub fn core(t: &GroupTable, k: &Subgroup, h: &Subgroup) -> Subgroup {
    let mut bits = k.bits().clone();
    loop {
        let current = t.subgroup_from_bits(bits.clone());
        let mut next = bits.clone();
        for &s in h.gens() {
            next = next.intersection(&conjugate_bits(t, &current, s));
        }
        if next == bits {
            return current;
        }
        bits = next;
    }
}

/// `O_p(h)`: intersection of the Sylow `p`-subgroups.
pub fn p_core(t: &GroupTable, h: &Subgroup, p: u64) -> Subgroup {
    core(t, &sylow(t, h, p), h)
}

/// Product of the `p`-cores over the primes dividing `|h|`.
pub fn fitting(t: &GroupTable, h: &Subgroup) -> Subgroup {
    prime_divisors(h.order() as u64)
        .into_iter()
        .fold(t.trivial(), |acc, p| t.join(&acc, &p_core(t, h, p)))
}

/// `h' h^p`: the smallest normal subgroup with elementary abelian
/// `p`-quotient. For a `p`-group this is the Frattini subgroup.
pub fn elementary_abelian_kernel(t: &GroupTable, h: &Subgroup, p: u64) -> Subgroup {
    let mut seeds: Vec<Elem> = h.elements().map(|x| t.pow(x, p)).collect();
    let gens = h.gens();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(t.commutator(a, b));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    t.normal_closure(&seeds, h)
}

/// Intersection of the maximal subgroups of `h`, read off a lattice that
/// contains all subgroups of `h`.
pub fn frattini(t: &GroupTable, lattice: &SubgroupSet, h: &Subgroup) -> Subgroup {
    let maximal = lattice.maximal_subgroups_of(h);
    let mut bits = h.bits().clone();
    for i in maximal {
        bits = bits.intersection(lattice.get(i).subgroup.bits());
    }
    t.subgroup_from_bits(bits)
}

/// One generator for every nontrivial cyclic subgroup of `h`.
fn cyclic_generators(t: &GroupTable, h: &Subgroup) -> Vec<Elem> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for x in h.elements().filter(|&x| x != 0) {
        if seen.insert(t.closure(&[x]).bits().clone()) {
            reps.push(x);
        }
    }
    reps
}

/// Smallest size of a generating set of `h`; 0 for the trivial group.
pub fn min_generators_of(t: &GroupTable, h: &Subgroup) -> u32 {
    if h.is_trivial() {
        return 0;
    }
    let order = h.order() as u64;
    if h.elements().any(|x| t.elem_order(x) as u64 == order) {
        return 1;
    }
    let lower = prime_divisors(order)
        .into_iter()
        .map(|p| {
            let k = elementary_abelian_kernel(t, h, p);
            crate::arith::exact_log((h.order() / k.order()) as u64, p).unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
        .max(2);
    if prime_power(order).is_some() {
        return lower;
    }
    let reps = cyclic_generators(t, h);
    let mut k = lower;
    loop {
        if generates_with(t, h, &reps, k, 0, &t.trivial()) {
            return k;
        }
        k += 1;
    }
}

fn generates_with(
    t: &GroupTable,
    h: &Subgroup,
    reps: &[Elem],
    remaining: u32,
    start: usize,
    partial: &Subgroup,
) -> bool {
    if partial.order() == h.order() {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    for i in start..reps.len() {
        if partial.contains(reps[i]) {
            continue;
        }
        let next = t.join_elements(partial, &[reps[i]]);
        if generates_with(t, h, reps, remaining - 1, i + 1, &next) {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialBranch {
    ElementaryAbelian,
    ClassTwo,
}

/// Outcome of the special `p`-group test, with the subgroup orders it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialCheck {
    pub special: bool,
    pub branch: Option<SpecialBranch>,
    pub p: u64,
    pub order: usize,
    pub frattini_order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub derived_elementary_abelian: bool,
}

fn is_elementary_abelian(t: &GroupTable, h: &Subgroup, p: u64) -> bool {
    t.is_abelian(h) && h.gens().iter().all(|&x| t.elem_order(x) as u64 == p)
}

pub fn special_check(t: &GroupTable, h: &Subgroup) -> Result<SpecialCheck> {
    let order = h.order() as u64;
    let (p, _) = prime_power(order).ok_or(Error::NotAPGroup(order))?;
    let phi = elementary_abelian_kernel(t, h, p);
    let z = series::center(t, h);
    let d = series::derived_subgroup(t, h);
    let d_ea = is_elementary_abelian(t, &d, p);
    let branch = if is_elementary_abelian(t, h, p) {
        Some(SpecialBranch::ElementaryAbelian)
    } else if phi == z && z == d && d_ea {
        Some(SpecialBranch::ClassTwo)
    } else {
        None
    };
    Ok(SpecialCheck {
        special: branch.is_some(),
        branch,
        p,
        order: h.order(),
        frattini_order: phi.order(),
        center_order: z.order(),
        derived_order: d.order(),
        derived_elementary_abelian: d_ea,
    })
}

/// Elements of order dividing `p` in an abelian `p`-group.
pub fn omega1(t: &GroupTable, a: &Subgroup, p: u64) -> Subgroup {
    let mut bits = BitSet::new(t.order());
    for x in a.elements() {
        if t.pow(x, p) == 0 {
            bits.insert(x as usize);
        }
    }
    t.subgroup_from_bits(bits)
}

/// Chermak–Delgado measure `|h| |C_G(h)|`.
pub fn cd_measure(t: &GroupTable, h: &Subgroup) -> u64 {
    (h.order() * t.centralizer(h, &t.whole()).order()) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChermakDelgado {
    pub order: usize,
    pub index: usize,
    pub measure: u64,
    pub lattice_size: usize,
    pub abelian: bool,
    pub normal: bool,
    pub contains_center: bool,
    /// Abelian subgroups `A` with `|G:N| > |G:A|^2`, as orders.
    pub violations: Vec<usize>,
    #[serde(skip)]
    pub subgroup: Subgroup,
}

impl ChermakDelgado {
    pub fn holds(&self) -> bool {
        self.abelian && self.normal && self.contains_center && self.violations.is_empty()
    }
}

/// Least member of the Chermak–Delgado lattice, with its postconditions
/// checked against every abelian subgroup.
pub fn chermak_delgado(t: &GroupTable, lattice: &SubgroupSet) -> ChermakDelgado {
    let whole = t.whole();
    let measures: Vec<u64> = lattice.iter().map(|e| cd_measure(t, &e.subgroup)).collect();
    let best = *measures.iter().max().expect("lattice is nonempty");
    let members: Vec<usize> = (0..lattice.len())
        .filter(|&i| measures[i] == best)
        .collect();
    let mut bits = whole.bits().clone();
    for &i in &members {
        bits = bits.intersection(lattice.get(i).subgroup.bits());
    }
    let n = t.subgroup_from_bits(bits);
    let g = t.order();
    let index = g / n.order();
    let violations = lattice
        .iter()
        .filter(|e| e.flags.is_abelian)
        .filter(|e| {
            let a_index = g / e.subgroup.order();
            index > a_index * a_index
        })
        .map(|e| e.subgroup.order())
        .collect();
    ChermakDelgado {
        order: n.order(),
        index,
        measure: best,
        lattice_size: members.len(),
        abelian: t.is_abelian(&n),
        normal: t.is_normal_in(&n, &whole),
        contains_center: series::center(t, &whole).is_subgroup_of(&n),
        violations,
        subgroup: n,
    }
}
