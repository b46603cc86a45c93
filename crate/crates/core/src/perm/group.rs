use std::collections::HashMap;
use std::fmt;

use crate::config::Guards;
use crate::error::{Error, Result};

use super::chain::StabChain;
use super::Permutation;

/// A permutation group given by generators, with its stabilizer chain built
/// eagerly at construction. Immutable after construction.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_guards(degree, generators, &Guards::default())
    }

    pub fn with_guards(
        degree: usize,
        generators: Vec<Permutation>,
        guards: &Guards,
    ) -> Result<Self> {
        guards.check_degree(degree)?;
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Format(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let chain = StabChain::build(degree, &generators, guards.max_order)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group always builds")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn base(&self) -> &[usize] {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    /// Fundamental orbit lengths; their product is the order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `other`.
    pub fn is_normalized_by(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(g)))
        })
    }

    /// All elements, sorted lexicographically by image vector (the identity
    /// comes first).
    pub fn elements(&self, guards: &Guards) -> Result<Vec<Permutation>> {
        guards.check_enumeration(self.order())?;
        let mut els = self.chain.elements();
        els.sort_unstable();
        Ok(els)
    }

    /// Sub-permutation-group generated by `gens` on the same points.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotSubgroup);
            }
        }
        PermGroup::new(self.degree, gens)
    }

    /// Faithful action of `G/N` on the right cosets of `N`.
    pub fn quotient(&self, normal: &PermGroup) -> Result<PermGroup> {
        quotient_group(self, normal, &Guards::default())
    }
}

impl PartialEq for PermGroup {
    /// Equality as subgroups of the same symmetric group.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.is_subgroup_of(other)
    }
}

pub fn quotient_group(g: &PermGroup, n: &PermGroup, guards: &Guards) -> Result<PermGroup> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !n.is_normalized_by(g) {
        return Err(Error::NotNormal);
    }
    let elements = g.elements(guards)?;
    let n_elements = n.elements(guards)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut coset_of = vec![usize::MAX; elements.len()];
    let mut reps = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(i);
        for m in &n_elements {
            coset_of[index[&m.mul(x)]] = id;
        }
    }
    let degree = reps.len();
    let mut gens = Vec::with_capacity(g.generators().len());
    for s in g.generators() {
        let images: Vec<usize> = reps
            .iter()
            .map(|&r| coset_of[index[&elements[r].mul(s)]])
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::with_guards(degree, gens, guards)
}
