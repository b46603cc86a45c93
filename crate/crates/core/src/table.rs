//! Cayley-table view of a small permutation group.
//!
//! Structural computations (subgroup lattices, sections, Sylow and Fitting
//! subgroups) work on element indices and bitsets rather than on
//! permutations. Element 0 is always the identity.

use std::collections::HashMap;
use std::fmt;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub type Elem = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of a [`GroupTable`] group: its element set plus a small
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: BitSet,
    gens: Vec<Elem>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn bits(&self) -> &BitSet {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter().map(|x| x as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.elements.is_subset(&other.elements)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

pub struct GroupTable {
    elements: Vec<Permutation>,
    n: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    generators: Vec<Elem>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.n)
            .finish()
    }
}

impl GroupTable {
    /// Builds the multiplication table; the order must not exceed the
    /// lattice guard.
    pub fn new(group: &PermGroup, guards: &Guards) -> Result<Self> {
        guards.check_lattice(group.order())?;
        let elements = group.elements(guards)?;
        let n = elements.len();
        let base: Vec<usize> = if group.base().is_empty() {
            vec![0]
        } else {
            group.base().to_vec()
        };
        let key =
            |p: &Permutation| -> Box<[u32]> { base.iter().map(|&b| p.image(b) as u32).collect() };
        let index: HashMap<Box<[u32]>, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (key(e), i as Elem))
            .collect();
        let mut mul = vec![0 as Elem; n * n];
        let mut buf = vec![0u32; base.len()];
        for (i, a) in elements.iter().enumerate() {
            let a_base: Vec<usize> = base.iter().map(|&b| a.image(b)).collect();
            for (j, b) in elements.iter().enumerate() {
                for (slot, &x) in buf.iter_mut().zip(&a_base) {
                    *slot = b.image(x) as u32;
                }
                mul[i * n + j] = *index
                    .get(&buf[..])
                    .ok_or_else(|| Error::Internal("product missing from table".into()))?;
            }
        }
        let mut inv = vec![0 as Elem; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as Elem;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (i, slot) in orders.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + i] as usize;
                k += 1;
            }
            *slot = k;
        }
        let generators = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| index[&key(g)])
            .collect();
        Ok(GroupTable {
            elements,
            n,
            mul,
            inv,
            orders,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn permutation(&self, x: Elem) -> &Permutation {
        &self.elements[x as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.elements.binary_search(p).ok().map(|i| i as Elem)
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.orders[a as usize] as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn whole(&self) -> Subgroup {
        self.closure(&self.generators)
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = BitSet::new(self.n);
        bits.insert(0);
        Subgroup {
            elements: bits,
            gens: Vec::new(),
            order: 1,
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut bits = BitSet::new(self.n);
        bits.insert(0);
        let mut list = vec![0 as Elem];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if bits.insert(y as usize) {
                    list.push(y);
                }
            }
            i += 1;
        }
        Subgroup {
            order: list.len(),
            elements: bits,
            gens,
        }
    }

    /// `<base, extra>` computed coset by coset from the elements of `base`.
    pub fn join_elements(&self, base: &Subgroup, extra: &[Elem]) -> Subgroup {
        let fresh: Vec<Elem> = extra
            .iter()
            .copied()
            .filter(|&x| !base.contains(x))
            .collect();
        if fresh.is_empty() {
            return base.clone();
        }
        let mut gens = base.gens.clone();
        gens.extend(&fresh);
        let base_list: Vec<Elem> = base.elements().collect();
        let mut bits = base.elements.clone();
        let mut count = base.order;
        let mut reps = vec![0 as Elem];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = self.mul(r, s);
                if !bits.contains(y as usize) {
                    for &h in &base_list {
                        bits.insert(self.mul(h, y) as usize);
                    }
                    count += base_list.len();
                    reps.push(y);
                }
            }
            i += 1;
        }
        Subgroup {
            elements: bits,
            gens,
            order: count,
        }
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.order >= b.order {
            self.join_elements(a, &b.gens)
        } else {
            self.join_elements(b, &a.gens)
        }
    }

    /// Subgroup with the given element set, which must be closed.
    pub fn subgroup_from_bits(&self, bits: BitSet) -> Subgroup {
        let mut current = self.trivial();
        for x in bits.iter() {
            if !current.contains(x as Elem) {
                current = self.join_elements(&current, &[x as Elem]);
            }
        }
        debug_assert_eq!(current.elements, bits);
        current
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.subgroup_from_bits(a.elements.intersection(&b.elements))
    }

    /// Smallest subgroup of `within` containing `seeds` and normalized by
    /// `within`.
    pub fn normal_closure(&self, seeds: &[Elem], within: &Subgroup) -> Subgroup {
        let mut k = self.closure(seeds);
        loop {
            let mut added = false;
            'scan: for &s in within.gens() {
                for &x in k.gens() {
                    let c = self.conjugate(x, s);
                    if !k.contains(c) {
                        k = self.join_elements(&k, &[c]);
                        added = true;
                        break 'scan;
                    }
                }
            }
            if !added {
                return k;
            }
        }
    }

    pub fn is_normal_in(&self, h: &Subgroup, g: &Subgroup) -> bool {
        g.gens()
            .iter()
            .all(|&s| h.gens().iter().all(|&x| h.contains(self.conjugate(x, s))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let g = h.gens();
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of `within` commuting with every generator of `of`.
    pub fn centralizer(&self, of: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(self.n);
        for x in within.elements() {
            if of.gens().iter().all(|&g| self.mul(x, g) == self.mul(g, x)) {
                bits.insert(x as usize);
            }
        }
        self.subgroup_from_bits(bits)
    }

    /// Elements of `within` normalizing `h`.
    pub fn normalizer(&self, h: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(self.n);
        for x in within.elements() {
            if h.gens().iter().all(|&g| h.contains(self.conjugate(g, x))) {
                bits.insert(x as usize);
            }
        }
        self.subgroup_from_bits(bits)
    }

    /// The subgroup as a permutation group on the original points.
    pub fn to_perm_group(&self, h: &Subgroup) -> PermGroup {
        let degree = self.elements[0].degree();
        let gens = h
            .gens()
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect();
        PermGroup::with_guards(
            degree,
            gens,
            &Guards {
                max_order: u64::MAX,
                max_degree: usize::MAX,
                ..Guards::default()
            },
        )
        .expect("subgroup of a valid group")
    }

    /// The subgroup of this table corresponding to a permutation subgroup.
    pub fn subgroup_of_perm(&self, h: &PermGroup) -> Result<Subgroup> {
        let gens = h
            .generators()
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::spec::named_group;

    fn table(s: &str) -> GroupTable {
        GroupTable::new(
            &named_group(s, &Guards::default()).unwrap(),
            &Guards::default(),
        )
        .unwrap()
    }

    #[test]
    fn table_basics() {
        let t = table("sym:4");
        assert_eq!(t.order(), 24);
        assert!(t.permutation(0).is_identity());
        for a in 0..24 {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in 0..24 {
                let prod = t.permutation(a).mul(t.permutation(b));
                assert_eq!(t.index_of(&prod), Some(t.mul(a, b)));
            }
        }
        assert_eq!(t.whole().order(), 24);
        assert_eq!((0..24).filter(|&x| t.elem_order(x) == 2).count(), 9);
    }

    #[test]
    fn join_matches_closure() {
        let t = table("dihedral:6");
        for a in 0..t.order() as Elem {
            let ca = t.closure(&[a]);
            for b in 0..t.order() as Elem {
                let j = t.join_elements(&ca, &[b]);
                let c = t.closure(&[a, b]);
                assert_eq!(j, c);
                assert_eq!(j.order(), c.order());
                assert_eq!(j.bits().count(), j.order());
            }
        }
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new(130);
        a.insert(0);
        a.insert(129);
        assert!(a.contains(129));
        assert!(!a.insert(0));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 129]);
        let mut b = BitSet::new(130);
        b.insert(129);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersection(&b), b);
    }
}
