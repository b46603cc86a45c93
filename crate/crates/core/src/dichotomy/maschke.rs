use serde::Serialize;

use crate::arith::{gcd, inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::fp::{in_span, span_dim, FpMatrix};

/// `F_p^r` with an action of the abelian group `Z_{m_1} x ... x Z_{m_k}`;
/// generator `i` acts by `generators[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpHModule {
    p: u64,
    dim: usize,
    factors: Vec<u64>,
    generators: Vec<FpMatrix>,
}

impl FpHModule {
    /// Checks that the matrices are invertible, satisfy `g_i^{m_i} = 1`
    /// and commute pairwise.
    pub fn new(p: u64, factors: Vec<u64>, generators: Vec<FpMatrix>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField {
                field: "p",
                reason: format!("{p} is not prime"),
            });
        }
        if factors.len() != generators.len() || factors.contains(&0) {
            return Err(Error::InvalidField {
                field: "factors",
                reason: "one positive order per generator required".into(),
            });
        }
        let dim = generators.first().map_or(0, FpMatrix::rows);
        let bad = |reason: String| Error::InvalidField {
            field: "generators",
            reason,
        };
        for (i, (g, &m)) in generators.iter().zip(&factors).enumerate() {
            if g.p() != p || !g.is_square() || g.rows() != dim {
                return Err(bad(format!("generator {i} has the wrong shape or field")));
            }
            if !g.is_invertible() {
                return Err(bad(format!("generator {i} is singular")));
            }
            if g.pow(m) != FpMatrix::identity(p, dim) {
                return Err(bad(format!("generator {i} does not satisfy g^{m} = 1")));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return Err(bad("generators do not commute".into()));
                }
            }
        }
        Ok(FpHModule {
            p,
            dim,
            factors,
            generators,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    /// The image of every element of the acting group, with multiplicity.
    pub fn group_matrices(&self) -> Vec<FpMatrix> {
        let mut all = vec![FpMatrix::identity(self.p, self.dim)];
        for (g, &m) in self.generators.iter().zip(&self.factors) {
            let powers: Vec<FpMatrix> = (0..m).map(|e| g.pow(e)).collect();
            all = all
                .iter()
                .flat_map(|a| powers.iter().map(move |b| a.mul(b)))
                .collect();
        }
        all
    }

    /// `(1/|H|) Σ_h h`.
    pub fn averaging_projector(&self) -> Result<FpMatrix> {
        let order = self.group_order();
        if gcd(order, self.p) != 1 {
            return Err(Error::CoprimalityViolation { p: self.p, order });
        }
        let sum = self
            .group_matrices()
            .iter()
            .fold(FpMatrix::zeros(self.p, self.dim, self.dim), |acc, m| {
                acc.add(m)
            });
        let inv = inv_mod(order % self.p, self.p).expect("coprime");
        Ok(sum.scale(inv))
    }

    /// Common fixed vectors of all generators.
    pub fn fixed_space(&self) -> Vec<Vec<u64>> {
        let id = FpMatrix::identity(self.p, self.dim);
        let stacked = self
            .generators
            .iter()
            .fold(FpMatrix::zeros(self.p, 0, self.dim), |acc, g| {
                acc.vstack(&g.sub(&id))
            });
        stacked.nullspace()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaschkeDecomposition {
    /// Basis of `A'`, the fixed submodule.
    pub fixed: Vec<Vec<u64>>,
    /// Basis of `A''`, the image of `1 - e`.
    pub complement: Vec<Vec<u64>>,
    pub projector: FpMatrix,
}

/// `A = A' ⊕ A''` with `A'` the fixed vectors and `A'' = (1 - e) A`.
pub fn maschke_decomposition(m: &FpHModule) -> Result<MaschkeDecomposition> {
    let e = m.averaging_projector()?;
    let id = FpMatrix::identity(m.p, m.dim);
    Ok(MaschkeDecomposition {
        fixed: m.fixed_space(),
        complement: id.sub(&e).column_space(),
        projector: e,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaschkeCheck {
    pub dim: usize,
    pub fixed_dim: usize,
    pub complement_dim: usize,
    pub direct_sum: bool,
    pub complement_invariant: bool,
    pub complement_fixed_zero: bool,
    pub projector_idempotent: bool,
    pub projector_onto_fixed: bool,
}

impl MaschkeCheck {
    pub fn holds(&self) -> bool {
        self.direct_sum
            && self.complement_invariant
            && self.complement_fixed_zero
            && self.projector_idempotent
            && self.projector_onto_fixed
    }
}

/// Re-derives every claimed property of a decomposition from the module.
pub fn check_decomposition(m: &FpHModule, d: &MaschkeDecomposition) -> MaschkeCheck {
    let p = m.p;
    let r = m.dim;
    let mut both = d.fixed.clone();
    both.extend(d.complement.iter().cloned());
    let complement_invariant = m.generators.iter().all(|g| {
        d.complement
            .iter()
            .all(|v| in_span(p, &d.complement, &g.apply(v)))
    });
    // A'' ∩ A' = 0: adding the fixed basis to A'' must raise the dimension
    // by exactly dim A'.
    let complement_fixed_zero =
        span_dim(p, r, &both) == d.fixed.len() + span_dim(p, r, &d.complement);
    let e = &d.projector;
    let image = e.column_space();
    MaschkeCheck {
        dim: r,
        fixed_dim: d.fixed.len(),
        complement_dim: d.complement.len(),
        direct_sum: d.fixed.len() + d.complement.len() == r && span_dim(p, r, &both) == r,
        complement_invariant,
        complement_fixed_zero,
        projector_idempotent: e.mul(e) == *e,
        projector_onto_fixed: image.len() == d.fixed.len()
            && image.iter().all(|v| in_span(p, &d.fixed, v)),
    }
}
