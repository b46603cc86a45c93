use std::collections::HashMap;

use serde::Serialize;

use crate::arith::prime_power;
use crate::config::Guards;
use crate::error::{Error, Result};
use crate::table::{BitSet, Elem, GroupTable, Subgroup};

use super::series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgroupFlags {
    pub order: usize,
    pub is_normal: bool,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
    pub nilpotency_class: Option<u32>,
    pub is_solvable: bool,
    pub min_generators: u32,
}

#[derive(Debug, Clone)]
pub struct SubgroupEntry {
    pub subgroup: Subgroup,
    pub flags: SubgroupFlags,
}

/// Every subgroup of a group, each exactly once, sorted by order (the
/// trivial subgroup first, the whole group last).
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    entries: Vec<SubgroupEntry>,
    index: HashMap<BitSet, usize>,
    cyclic: Vec<usize>,
}

impl SubgroupSet {
    /// Layered cyclic-closure enumeration: layer 1 holds the cyclic
    /// subgroups, layer `k+1` the new joins of layer-`k` subgroups with a
    /// cyclic subgroup. A subgroup first appears in layer `d` exactly when
    /// its minimal number of generators is `d`.
    pub fn enumerate(t: &GroupTable, guards: &Guards) -> Result<Self> {
        guards.check_lattice(t.order() as u64)?;
        let n = t.order();
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        let mut found: Vec<(Subgroup, u32)> = Vec::new();
        let trivial = t.trivial();
        seen.insert(trivial.bits().clone(), 0);
        found.push((trivial, 0));

        let mut cyclic = Vec::new();
        for x in 1..n as Elem {
            let c = t.closure(&[x]);
            if !seen.contains_key(c.bits()) {
                seen.insert(c.bits().clone(), found.len());
                cyclic.push(found.len());
                found.push((c, 1));
            }
        }

        let mut frontier = cyclic.clone();
        let mut depth = 1;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for &si in &frontier {
                for &ci in &cyclic {
                    let (s, c) = (&found[si].0, &found[ci].0);
                    if c.is_subgroup_of(s) {
                        continue;
                    }
                    let joined = t.join_elements(s, c.gens());
                    if seen.contains_key(joined.bits()) {
                        continue;
                    }
                    if found.len() >= guards.max_subgroups {
                        return Err(Error::guard(
                            "subgroup count",
                            guards.max_subgroups as u64,
                            found.len() as u64 + 1,
                        ));
                    }
                    seen.insert(joined.bits().clone(), found.len());
                    next.push(found.len());
                    found.push((joined, depth));
                }
            }
            frontier = next;
        }

        let cyclic_bits: Vec<BitSet> = cyclic.iter().map(|&i| found[i].0.bits().clone()).collect();
        found.sort_by(|a, b| {
            a.0.order()
                .cmp(&b.0.order())
                .then_with(|| a.0.bits().cmp(b.0.bits()))
        });
        let whole = t.whole();
        let entries: Vec<SubgroupEntry> = found
            .into_iter()
            .map(|(h, depth)| SubgroupEntry {
                flags: compute_flags(t, &whole, &h, depth),
                subgroup: h,
            })
            .collect();
        let index: HashMap<BitSet, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.subgroup.bits().clone(), i))
            .collect();
        let mut cyclic: Vec<usize> = cyclic_bits.iter().map(|b| index[b]).collect();
        cyclic.sort_unstable();
        Ok(SubgroupSet {
            entries,
            index,
            cyclic,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SubgroupEntry] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &SubgroupEntry {
        &self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubgroupEntry> {
        self.entries.iter()
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.bits()).copied()
    }

    pub fn whole(&self) -> &SubgroupEntry {
        self.entries
            .last()
            .expect("lattice contains the whole group")
    }

    pub fn trivial(&self) -> &SubgroupEntry {
        &self.entries[0]
    }

    /// Indices of the cyclic subgroups (including none of the trivial one).
    pub fn cyclic(&self) -> &[usize] {
        &self.cyclic
    }

    /// Indices of all subgroups of `h` (including `h`).
    pub fn subgroups_of<'a>(&'a self, h: &'a Subgroup) -> impl Iterator<Item = usize> + 'a {
        self.entries
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.subgroup.is_subgroup_of(h))
            .map(|(i, _)| i)
    }

    /// Maximal proper subgroups of `h`.
    pub fn maximal_subgroups_of(&self, h: &Subgroup) -> Vec<usize> {
        let proper: Vec<usize> = self
            .subgroups_of(h)
            .filter(|&i| self.entries[i].subgroup.order() < h.order())
            .collect();
        proper
            .iter()
            .copied()
            .filter(|&i| {
                let k = &self.entries[i].subgroup;
                !proper.iter().any(|&j| {
                    let l = &self.entries[j].subgroup;
                    l.order() > k.order() && k.is_subgroup_of(l)
                })
            })
            .collect()
    }

    /// Largest number of generators needed by any subgroup.
    pub fn rank(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| e.flags.min_generators)
            .max()
            .unwrap_or(0)
    }
}

fn compute_flags(t: &GroupTable, whole: &Subgroup, h: &Subgroup, depth: u32) -> SubgroupFlags {
    let is_abelian = t.is_abelian(h);
    let is_elementary_abelian = is_abelian
        && match prime_power(h.order() as u64) {
            Some((p, _)) => h.gens().iter().all(|&g| t.elem_order(g) as u64 == p),
            None => false,
        };
    SubgroupFlags {
        order: h.order(),
        is_normal: t.is_normal_in(h, whole),
        is_abelian,
        is_elementary_abelian,
        nilpotency_class: series::nilpotency_class(t, h),
        is_solvable: series::is_solvable(t, h),
        min_generators: depth,
    }
}
