//! Mod-`p` cohomology dimensions with trivial coefficients: the periodic
//! resolution of a cyclic group, Künneth products, and the normalized bar
//! complex as an independent check for very small groups.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::table::GroupTable;

pub const MAX_DEGREE: usize = 256;
pub const MAX_CYCLIC_ORDER: u64 = 4096;
/// Default cap on the size of a single bar-complex differential.
pub const BAR_CELL_CAP: usize = 1 << 21;

/// Cochain complex `C^0 -> C^1 -> ...` of `F_p` vector spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpCochainComplex {
    p: u64,
    dims: Vec<usize>,
    /// `differentials[d]` maps `C^d` to `C^{d+1}` (as a `dims[d+1] x dims[d]`
    /// matrix).
    differentials: Vec<FpMatrix>,
}

impl FpCochainComplex {
    pub fn new(p: u64, dims: Vec<usize>, differentials: Vec<FpMatrix>) -> Result<Self> {
        if differentials.len() + 1 != dims.len() {
            return Err(Error::Internal(
                "one differential per consecutive degree".into(),
            ));
        }
        for (d, m) in differentials.iter().enumerate() {
            if m.rows() != dims[d + 1] || m.cols() != dims[d] {
                return Err(Error::Internal(format!(
                    "differential {d} has the wrong shape"
                )));
            }
        }
        Ok(FpCochainComplex {
            p,
            dims,
            differentials,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differentials(&self) -> &[FpMatrix] {
        &self.differentials
    }

    /// Whether every composite `d_{k+1} d_k` vanishes.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// `dim H^d` for `d` below the top degree (the top degree has no
    /// outgoing differential and is omitted).
    pub fn cohomology_dims(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.differentials.iter().map(FpMatrix::rank).collect();
        (0..self.differentials.len())
            .map(|d| {
                let incoming = if d == 0 { 0 } else { ranks[d - 1] };
                (self.dims[d] - ranks[d] - incoming) as u64
            })
            .collect()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidField {
            field: "p",
            reason: format!("{p} is not prime"),
        })
    }
}

fn check_degree(max_deg: usize) -> Result<()> {
    if max_deg > MAX_DEGREE {
        return Err(Error::guard(
            "cohomology degree",
            MAX_DEGREE as u64,
            max_deg as u64,
        ));
    }
    Ok(())
}

/// Multiplication by `Σ coeffs[i] t^i` on `F_p[Z_m]` (basis `1, t, ...`).
fn group_ring_operator(p: u64, m: usize, coeffs: &[(usize, u64)]) -> FpMatrix {
    let mut a = FpMatrix::zeros(p, m, m);
    for j in 0..m {
        for &(i, c) in coeffs {
            let row = (i + j) % m;
            let v = (a.get(row, j) + c) % p;
            a.set(row, j, v);
        }
    }
    a
}

/// The cochain complex `Hom_G(F_*, F_p)` for the periodic resolution
/// `... -> F_p[G] --N--> F_p[G] --(t-1)--> F_p[G] -> F_p` of `G = Z_m`.
pub fn cyclic_cochain_complex(m: u64, p: u64, max_deg: usize) -> Result<FpCochainComplex> {
    check_prime(p)?;
    check_degree(max_deg)?;
    if m == 0 {
        return Err(Error::Range("cyclic group order must be >= 1".into()));
    }
    if m > MAX_CYCLIC_ORDER {
        return Err(Error::guard("cyclic group order", MAX_CYCLIC_ORDER, m));
    }
    let mu = m as usize;
    let t_minus_1 = group_ring_operator(p, mu, &[(1, 1), (0, p - 1)]);
    let norm = group_ring_operator(p, mu, &(0..mu).map(|i| (i, 1)).collect::<Vec<_>>());
    let shift = group_ring_operator(p, mu, &[(1, 1)]);
    // G-equivariant functionals on F_p[G]: row vectors f with f t = f
    let invariant = shift
        .transpose()
        .sub(&FpMatrix::identity(p, mu))
        .nullspace();
    let basis = FpMatrix::from_rows(p, &invariant);
    let k = invariant.len();
    // A functional f = c * basis pulls back along a boundary map B to
    // c * (basis B); express the result in the same basis by solving.
    let pullback = |boundary: &FpMatrix| -> Result<FpMatrix> {
        let image = basis.mul(boundary);
        let mut out = FpMatrix::zeros(p, k, k);
        for (i, row) in (0..k).map(|i| (i, image.row(i).to_vec())) {
            let coords = solve_in_rows(&basis, &row)
                .ok_or_else(|| Error::Internal("pullback is not equivariant".into()))?;
            for (j, c) in coords.into_iter().enumerate() {
                out.set(j, i, c);
            }
        }
        Ok(out)
    };
    let odd = pullback(&t_minus_1)?;
    let even = pullback(&norm)?;
    let differentials = (0..max_deg + 1)
        .map(|d| {
            if d % 2 == 0 {
                odd.clone()
            } else {
                even.clone()
            }
        })
        .collect();
    FpCochainComplex::new(p, vec![k; max_deg + 2], differentials)
}

/// Coordinates `c` with `c * rows = v`, if any.
fn solve_in_rows(rows: &FpMatrix, v: &[u64]) -> Option<Vec<u64>> {
    let p = rows.p();
    let k = rows.rows();
    // augmented system: rows^T c = v^T
    let mut aug = FpMatrix::zeros(p, rows.cols(), k + 1);
    for r in 0..rows.cols() {
        for c in 0..k {
            aug.set(r, c, rows.get(c, r));
        }
        aug.set(r, k, v[r]);
    }
    let (red, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![0; k];
    for (i, &pc) in pivots.iter().enumerate() {
        c[pc] = red.get(i, k);
    }
    Some(c)
}

/// `dim H^d(Z_m; F_p)` for `0 <= d <= max_deg`.
pub fn cyclic_cohomology_dims(m: u64, p: u64, max_deg: usize) -> Result<Vec<u64>> {
    Ok(cyclic_cochain_complex(m, p, max_deg)?.cohomology_dims())
}

/// Graded convolution `out[d] = Σ a[i] b[d-i]`, truncated to the shorter
/// input.
pub fn kunneth_dims(a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum())
        .collect()
}

/// `binom(d + r - 1, d)`; for `r = 0` this is 1 in degree 0 and 0 above.
pub fn elementary_abelian_cohomology_dim(p: u64, r: u64, d: u64) -> Result<u64> {
    check_prime(p)?;
    if r == 0 {
        return Ok(u64::from(d == 0));
    }
    let b = crate::bounds::binomial(d + r - 1, d);
    u64::try_from(b).map_err(|_| Error::guard("cohomology dimension", u64::MAX, u64::MAX))
}

/// Dimensions of `H^*((Z_p)^r; F_p)` as the `r`-fold Künneth product of the
/// resolution-computed cyclic dimensions.
pub fn elementary_abelian_dims_by_resolution(p: u64, r: u32, max_deg: usize) -> Result<Vec<u64>> {
    let cyclic = cyclic_cohomology_dims(p, p, max_deg)?;
    let mut acc: Vec<u64> = (0..=max_deg).map(|d| u64::from(d == 0)).collect();
    for _ in 0..r {
        acc = kunneth_dims(&acc, &cyclic);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub p: u64,
    pub r: u32,
    pub max_deg: usize,
    pub resolution: Vec<u64>,
    pub formula: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn cohomology_table(p: u64, r: u32, max_deg: usize) -> Result<CohomologyTable> {
    let resolution = elementary_abelian_dims_by_resolution(p, r, max_deg)?;
    let formula = (0..=max_deg as u64)
        .map(|d| elementary_abelian_cohomology_dim(p, r as u64, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyTable {
        p,
        r,
        max_deg,
        matches: resolution == formula,
        resolution,
        formula,
    })
}

/// The normalized bar complex of a group given by its table, in degrees
/// `0..=max_deg + 1`, with trivial coefficients `F_p`.
pub fn bar_cochain_complex(
    t: &GroupTable,
    p: u64,
    max_deg: usize,
    cell_cap: usize,
) -> Result<FpCochainComplex> {
    check_prime(p)?;
    if t.order() > 12 {
        return Err(Error::guard(
            "bar complex group order",
            12,
            t.order() as u64,
        ));
    }
    let k = t.order() - 1;
    let dims: Vec<usize> = (0..=max_deg + 1).map(|n| k.pow(n as u32)).collect();
    if let Some(n) = (0..=max_deg).find(|&n| dims[n] * dims[n + 1] > cell_cap) {
        return Err(Error::guard(
            "bar differential size",
            cell_cap as u64,
            (dims[n] * dims[n + 1]) as u64,
        ));
    }
    // tuple index <-> non-identity elements 1..=k
    let decode = |mut idx: usize, n: usize| -> Vec<u32> {
        let mut out = vec![0u32; n];
        for slot in out.iter_mut().rev() {
            *slot = (idx % k) as u32 + 1;
            idx /= k;
        }
        out
    };
    let encode = |tuple: &[u32]| -> Option<usize> {
        let mut idx = 0;
        for &g in tuple {
            if g == 0 {
                return None;
            }
            idx = idx * k + (g as usize - 1);
        }
        Some(idx)
    };
    let mut differentials = Vec::with_capacity(max_deg + 1);
    for n in 0..=max_deg {
        let mut d = FpMatrix::zeros(p, dims[n + 1], dims[n]);
        for row in 0..dims[n + 1] {
            let g = decode(row, n + 1);
            let mut add = |tuple: &[u32], sign: u64| {
                if let Some(col) = encode(tuple) {
                    let v = (d.get(row, col) + sign) % p;
                    d.set(row, col, v);
                }
            };
            add(&g[1..], 1);
            for i in 0..n {
                let mut merged = g[..i].to_vec();
                merged.push(t.mul(g[i], g[i + 1]));
                merged.extend(&g[i + 2..]);
                add(&merged, if (i + 1) % 2 == 0 { 1 } else { p - 1 });
            }
            add(&g[..n], if (n + 1) % 2 == 0 { 1 } else { p - 1 });
        }
        differentials.push(d);
    }
    FpCochainComplex::new(p, dims, differentials)
}

/// `dim H^d(G; F_p)` for `0 <= d <= max_deg` from the bar complex.
pub fn bar_cohomology_dims(
    t: &GroupTable,
    p: u64,
    max_deg: usize,
    cell_cap: usize,
) -> Result<Vec<u64>> {
    Ok(bar_cochain_complex(t, p, max_deg, cell_cap)?.cohomology_dims())
}
