//! Independent brute-force oracles shared by the integration tests. Nothing
//! here goes through `GroupTable` or the lattice code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use grouptk_core::fp::FpMatrix;
use grouptk_core::perm::spec::named_group;
use grouptk_core::{Guards, PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn group(spec: &str) -> PermGroup {
    named_group(spec, &Guards::default()).unwrap()
}

/// Multiplication table over the naive closure of the generators.
pub struct Cayley {
    pub elements: Vec<Permutation>,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
}

impl Cayley {
    pub fn new(g: &PermGroup) -> Self {
        let mut seen = HashSet::from([g.identity()]);
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for s in g.generators() {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let identity = index[&g.identity()];
        Cayley {
            elements,
            mul,
            identity,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul[a][b] == self.identity)
            .unwrap()
    }

    pub fn closure(&self, seeds: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seeds.clone();
        set.insert(self.identity);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for &b in &set {
                    grown.insert(self.mul[a][b]);
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    /// Every subgroup, found by adding one element at a time to known
    /// subgroups starting from the trivial one.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let trivial = BTreeSet::from([self.identity]);
        let mut frontier = vec![trivial.clone()];
        found.insert(trivial);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut seeds = h.clone();
                seeds.insert(g);
                let k = self.closure(&seeds);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_normal(&self, h: &BTreeSet<usize>) -> bool {
        (0..self.order()).all(|g| {
            let gi = self.inv(g);
            h.iter().all(|&x| h.contains(&self.mul[self.mul[gi][x]][g]))
        })
    }

    pub fn is_abelian(&self, h: &BTreeSet<usize>) -> bool {
        h.iter()
            .all(|&a| h.iter().all(|&b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul[self.mul[self.inv(a)][self.inv(b)]][self.mul[a][b]]
    }

    /// `[a, b]` for `a` in `x`, `b` in `y`, closed up.
    pub fn commutator_subgroup(&self, x: &BTreeSet<usize>, y: &BTreeSet<usize>) -> BTreeSet<usize> {
        let seeds = x
            .iter()
            .flat_map(|&a| y.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.closure(&seeds)
    }

    pub fn is_nilpotent(&self, h: &BTreeSet<usize>) -> bool {
        let mut term = h.clone();
        loop {
            if term.len() == 1 {
                return true;
            }
            let next = self.commutator_subgroup(&term, h);
            if next == term {
                return false;
            }
            term = next;
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    /// Smallest `k` such that some `k` elements generate `h`.
    pub fn min_generators(&self, h: &BTreeSet<usize>) -> usize {
        if h.len() == 1 {
            return 0;
        }
        let elems: Vec<usize> = h.iter().copied().collect();
        let mut k = 1;
        loop {
            if self.generated_by_some_subset(h, &elems, k, 0, &mut Vec::new()) {
                return k;
            }
            k += 1;
        }
    }

    fn generated_by_some_subset(
        &self,
        h: &BTreeSet<usize>,
        elems: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == k {
            return self.closure(&chosen.iter().copied().collect()).len() == h.len();
        }
        for i in start..elems.len() {
            chosen.push(elems[i]);
            if self.generated_by_some_subset(h, elems, k, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// `a^-1` over `F_p` by Gauss–Jordan on `[a | I]`.
pub fn invert(p: u64, a: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_multiple_of(p))?;
        m.swap(col, pivot);
        let inv = pow_mod(m[col][col], p - 2, p);
        for x in m[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..2 * n {
                    m[r][c] = (m[r][c] + p * p - f * m[col][c] % p) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mat_mul(p: u64, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

fn random_invertible(p: u64, n: usize, rng: &mut impl Rng) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    loop {
        let a: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if let Some(inv) = invert(p, &a) {
            return (a, inv);
        }
    }
}

/// Elements of `F_p^*` of order dividing `m`.
fn roots_of_unity(p: u64, m: u64) -> Vec<u64> {
    (1..p).filter(|&x| pow_mod(x, m, p) == 1).collect()
}

#[derive(Debug, Clone)]
pub struct ModuleInstance {
    pub p: u64,
    pub factors: Vec<u64>,
    pub generators: Vec<FpMatrix>,
}

/// A random coprime module: either a cyclic group `Z_m` acting by a
/// conjugated block-diagonal matrix of coordinate cycles (length dividing
/// `m`) and scalar roots of unity, or `Z_2 x Z_2` (odd `p`) acting by two
/// conjugated diagonal sign matrices.
pub fn random_module(rng: &mut impl Rng) -> ModuleInstance {
    let p = *[2u64, 3, 5, 7].choose(rng).unwrap();
    let r = rng.gen_range(1..=6usize);
    let (conj, conj_inv) = random_invertible(p, r, rng);
    let conjugate =
        |m: &[Vec<u64>]| FpMatrix::from_rows(p, &mat_mul(p, &mat_mul(p, &conj, m), &conj_inv));
    if p != 2 && rng.gen_bool(0.3) {
        let signs = |rng: &mut dyn rand::RngCore| -> Vec<Vec<u64>> {
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            if i != j {
                                0
                            } else if rng.gen_bool(0.5) {
                                1
                            } else {
                                p - 1
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let a = signs(rng);
        let b = signs(rng);
        return ModuleInstance {
            p,
            factors: vec![2, 2],
            generators: vec![conjugate(&a), conjugate(&b)],
        };
    }
    let m = loop {
        let m = rng.gen_range(1..=12u64);
        if m % p != 0 {
            break m;
        }
    };
    let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    let roots = roots_of_unity(p, m);
    let mut block = vec![vec![0u64; r]; r];
    let mut i = 0;
    while i < r {
        let len = *divisors
            .iter()
            .filter(|&&d| d as usize <= r - i)
            .collect::<Vec<_>>()
            .choose(rng)
            .unwrap();
        let len = *len as usize;
        if len == 1 {
            block[i][i] = *roots.choose(rng).unwrap();
        } else {
            for k in 0..len {
                block[i + (k + 1) % len][i + k] = 1;
            }
        }
        i += len;
    }
    ModuleInstance {
        p,
        factors: vec![m],
        generators: vec![conjugate(&block)],
    }
}

/// All vectors of `F_p^r`, when there are at most `limit` of them.
pub fn all_vectors(p: u64, r: usize, limit: usize) -> Option<Vec<Vec<u64>>> {
    let total = (p as usize).checked_pow(r as u32)?;
    if total > limit {
        return None;
    }
    Some(
        (0..total)
            .map(|mut code| {
                (0..r)
                    .map(|_| {
                        let d = code as u64 % p;
                        code /= p as usize;
                        d
                    })
                    .collect()
            })
            .collect(),
    )
}
