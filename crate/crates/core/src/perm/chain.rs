//! Deterministic Schreier–Sims.
//!
//! Base points are appended as the smallest point moved by the element that
//! forced a new level. Every Schreier generator is sifted exactly once; the
//! per-point counters in [`Level::checked`] record how far each orbit point
//! has been processed, which stays valid because transversals only grow.

use crate::error::{Error, Result};

use super::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    orbit: Vec<u32>,
    position: Vec<u32>,
    /// `reps[i]` maps the base point to `orbit[i]`.
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    /// Indices into the strong generating set.
    gens: Vec<usize>,
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut position = vec![NOT_IN_ORBIT; degree];
        position[base] = 0;
        Level {
            orbit: vec![base as u32],
            position,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            gens: Vec::new(),
            checked: vec![0],
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds the chain, aborting once the partial order exceeds `max_order`.
    pub(crate) fn build(degree: usize, gens: &[Permutation], max_order: u64) -> Result<Self> {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            chain.add_strong(g.clone(), 0, max_order)?;
        }
        chain.complete(max_order)?;
        Ok(chain)
    }

    fn add_strong(&mut self, h: Permutation, from_level: usize, max_order: u64) -> Result<()> {
        // h fixes base[0..j]; it belongs to levels from_level..=j
        let mut j = 0;
        while j < self.base.len() && h.image(self.base[j]) == self.base[j] {
            j += 1;
        }
        if j == self.base.len() {
            let b = h
                .first_moved_point()
                .expect("identity never added as strong generator");
            self.base.push(b);
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for l in from_level..=j {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l);
        }
        let partial = self.order_u128();
        if partial > max_order as u128 {
            return Err(Error::guard(
                "group order",
                max_order,
                partial.min(u64::MAX as u128) as u64,
            ));
        }
        Ok(())
    }

    fn extend_orbit(&mut self, l: usize) {
        let level = &mut self.levels[l];
        let mut i = 0;
        while i < level.orbit.len() {
            let p = level.orbit[i] as usize;
            for gi in 0..level.gens.len() {
                let s = &self.strong[level.gens[gi]];
                let q = s.image(p);
                if level.position[q] == NOT_IN_ORBIT {
                    let rep = level.reps[i].mul(s);
                    level.position[q] = level.orbit.len() as u32;
                    level.orbit.push(q as u32);
                    level.reps_inv.push(rep.inverse());
                    level.reps.push(rep);
                    level.checked.push(0);
                }
            }
            i += 1;
        }
    }

    fn complete(&mut self, max_order: u64) -> Result<()> {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                for pi in 0..self.levels[i].orbit.len() {
                    while self.levels[i].checked[pi] < self.levels[i].gens.len() {
                        let gi = self.levels[i].checked[pi];
                        self.levels[i].checked[pi] += 1;
                        let level = &self.levels[i];
                        let s = &self.strong[level.gens[gi]];
                        let p = level.orbit[pi] as usize;
                        let q = s.image(p);
                        let qi = level.position[q] as usize;
                        let schreier = level.reps[pi].mul(s).mul(&level.reps_inv[qi]);
                        let (residue, _) = self.strip(schreier, i + 1);
                        if !residue.is_identity() {
                            self.add_strong(residue, i + 1, max_order)?;
                            continue 'restart;
                        }
                    }
                }
            }
            return Ok(());
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped.
    pub(crate) fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let x = g.image(self.base[l]);
            let pos = level.position[x];
            if pos == NOT_IN_ORBIT {
                return (g, l);
            }
            g = g.mul(&level.reps_inv[pos as usize]);
        }
        (g, self.levels.len())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).0.is_identity()
    }

    fn order_u128(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    pub(crate) fn order(&self) -> u64 {
        self.order_u128() as u64
    }

    pub(crate) fn base(&self) -> &[usize] {
        &self.base
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All elements as products `u_{k-1} ... u_1 u_0` of transversal
    /// representatives.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.reps.len());
            for e in &acc {
                for u in &level.reps {
                    next.push(e.mul(u));
                }
            }
            acc = next;
        }
        acc
    }
}
