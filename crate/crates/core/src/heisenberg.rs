//! Heisenberg-type groups `G_n` and their actions on circle bundles over the
//! torus, checked with exact rational arithmetic.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::perm::{regular_representation, PermGroup};
use crate::structure::GroupContext;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Largest sample set grown while looking for effectiveness witnesses.
pub const SAMPLE_CAP: usize = 10_000;
const MAX_LISTED_VIOLATIONS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeisenbergElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl HeisenbergElement {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        HeisenbergElement { a, b, c }
    }
}

/// `G_n = (Z_n x Z_n) ⋉ Z_n` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heisenberg {
    n: u64,
}

impl Heisenberg {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("heisenberg needs n >= 2, got {n}")));
        }
        Ok(Heisenberg { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.n.pow(3)
    }

    pub fn identity(&self) -> HeisenbergElement {
        HeisenbergElement::new(0, 0, 0)
    }

    pub fn element(&self, a: i64, b: i64, c: i64) -> HeisenbergElement {
        let n = self.n as i64;
        HeisenbergElement::new(
            a.rem_euclid(n) as u64,
            b.rem_euclid(n) as u64,
            c.rem_euclid(n) as u64,
        )
    }

    pub fn mul(&self, x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement {
        let n = self.n;
        HeisenbergElement::new(
            (x.a + y.a) % n,
            (x.b + y.b) % n,
            (x.c + y.c + x.a * y.b) % n,
        )
    }

    pub fn inverse(&self, x: HeisenbergElement) -> HeisenbergElement {
        let n = self.n;
        HeisenbergElement::new((n - x.a) % n, (n - x.b) % n, (n - x.c + x.a * x.b % n) % n)
    }

    pub fn index(&self, x: HeisenbergElement) -> usize {
        (x.a * self.n * self.n + x.b * self.n + x.c) as usize
    }

    pub fn from_index(&self, i: usize) -> HeisenbergElement {
        let (i, n) = (i as u64, self.n);
        HeisenbergElement::new(i / (n * n), i / n % n, i % n)
    }

    pub fn elements(&self) -> impl Iterator<Item = HeisenbergElement> + '_ {
        (0..self.order() as usize).map(|i| self.from_index(i))
    }
}

/// Right regular representation of `G_n`, generated by `(1,0,0)`,
/// `(0,1,0)`, `(0,0,1)`; point `i` is the element with index `i`.
pub fn heisenberg_group(n: u64, guards: &Guards) -> Result<PermGroup> {
    let h = Heisenberg::new(n)?;
    guards.check_order(h.order())?;
    let gens = [h.element(1, 0, 0), h.element(0, 1, 0), h.element(0, 0, 1)].map(|g| h.index(g));
    regular_representation(
        h.order() as usize,
        &gens,
        |x, y| h.index(h.mul(h.from_index(x), h.from_index(y))),
        guards,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianIndexReport {
    pub n: u64,
    pub order: u64,
    pub min_index: u64,
    pub witness_order: u64,
    /// Generators of a witness subgroup as `(a, b, c)` triples.
    pub witness: Vec<HeisenbergElement>,
    pub abelian_subgroups: usize,
    pub bound_holds: bool,
}

/// Exact minimum of `|G_n : A|` over abelian subgroups `A`, by a full
/// subgroup scan.
pub fn min_abelian_index(n: u64, guards: &Guards) -> Result<AbelianIndexReport> {
    let h = Heisenberg::new(n)?;
    let ctx = GroupContext::new(heisenberg_group(n, guards)?, guards)?;
    let lattice = ctx.lattice()?;
    let abelian: Vec<_> = lattice.iter().filter(|e| e.flags.is_abelian).collect();
    let best = abelian
        .iter()
        .max_by_key(|e| e.subgroup.order())
        .expect("the trivial subgroup is abelian");
    let order = h.order();
    let to_triple = |x: u32| h.from_index(ctx.table().permutation(x).image(0));
    Ok(AbelianIndexReport {
        n,
        order,
        min_index: order / best.subgroup.order() as u64,
        witness_order: best.subgroup.order() as u64,
        witness: best.subgroup.gens().iter().map(|&x| to_triple(x)).collect(),
        abelian_subgroups: abelian.len(),
        bound_holds: order / best.subgroup.order() as u64 >= n,
    })
}

/// `q mod 1` in `[0, 1)`.
pub fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

/// A point `<x, y, e^{2πiθ}>` of the bundle `E_n`, stored as the unique
/// representative with `x, y, θ ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundlePoint {
    pub x: Rational64,
    pub y: Rational64,
    pub theta: Rational64,
    pub n: u64,
}

impl Serialize for BundlePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.theta]
            .map(|q| q.to_string())
            .serialize(s)
    }
}

/// An unreduced triple `(x, y, θ)` in `R^2 x R/Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawPoint {
    pub x: Rational64,
    pub y: Rational64,
    pub theta: Rational64,
}

impl RawPoint {
    pub fn new(x: Rational64, y: Rational64, theta: Rational64) -> Self {
        RawPoint { x, y, theta }
    }
}

/// `Φ_n((k, l), (x, y, θ)) = (x + k, y + l, θ + k n y)`.
pub fn phi(n: u64, k: i64, l: i64, p: RawPoint) -> RawPoint {
    let k = Rational64::from_integer(k);
    RawPoint {
        x: p.x + k,
        y: p.y + Rational64::from_integer(l),
        theta: frac(p.theta + k * Rational64::from_integer(n as i64) * p.y),
    }
}

pub fn canonicalize(n: u64, p: RawPoint) -> BundlePoint {
    let k = -p.x.floor().to_integer();
    let l = -p.y.floor().to_integer();
    let q = phi(n, k, l, p);
    BundlePoint {
        x: q.x,
        y: q.y,
        theta: q.theta,
        n,
    }
}

impl BundlePoint {
    pub fn raw(&self) -> RawPoint {
        RawPoint::new(self.x, self.y, self.theta)
    }
}

/// `Ψ_n((k,l,m), (x,y,θ)) = (x + k/n, y + l/n, θ + k y + m/n)` before
/// reduction.
pub fn psi_raw(n: u64, g: HeisenbergElement, p: RawPoint) -> RawPoint {
    let n_q = Rational64::from_integer(n as i64);
    let k = Rational64::from_integer(g.a as i64);
    let l = Rational64::from_integer(g.b as i64);
    let m = Rational64::from_integer(g.c as i64);
    RawPoint {
        x: p.x + k / n_q,
        y: p.y + l / n_q,
        theta: frac(p.theta + k * p.y + m / n_q),
    }
}

pub fn psi_action(n: u64, g: HeisenbergElement, p: &BundlePoint) -> BundlePoint {
    canonicalize(n, psi_raw(n, g, p.raw()))
}

fn rational_point(rng: &mut ChaCha8Rng) -> [Rational64; 3] {
    [0; 3].map(|_| {
        let d: i64 = rng.gen_range(1..=64);
        Rational64::new(rng.gen_range(0..d), d)
    })
}

/// The deterministic grid `{i/7}^2 x {j/11}` followed by `extra` seeded
/// random points with denominators at most 64.
pub fn sample_points(n: u64, extra: usize, seed: u64) -> Vec<BundlePoint> {
    let mut out = Vec::with_capacity(7 * 7 * 11 + extra);
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..11 {
                out.push(BundlePoint {
                    x: Rational64::new(i, 7),
                    y: Rational64::new(j, 7),
                    theta: Rational64::new(k, 11),
                    n,
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let [x, y, theta] = rational_point(&mut rng);
        out.push(BundlePoint { x, y, theta, n });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: &'static str,
    pub n: u64,
    pub samples: usize,
    pub seed: u64,
    pub violation_count: usize,
    pub violations: Vec<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

struct Violations {
    count: usize,
    listed: Vec<Value>,
}

impl Violations {
    fn new() -> Self {
        Violations {
            count: 0,
            listed: Vec::new(),
        }
    }

    fn push(&mut self, v: impl FnOnce() -> Value) {
        self.count += 1;
        if self.listed.len() < MAX_LISTED_VIOLATIONS {
            self.listed.push(v());
        }
    }
}

fn report(
    check: &'static str,
    n: u64,
    samples: usize,
    seed: u64,
    v: Violations,
    inconclusive: bool,
    details: Value,
) -> VerificationReport {
    let status = if v.count > 0 {
        Status::Fail
    } else if inconclusive {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    VerificationReport {
        check,
        n,
        samples,
        seed,
        violation_count: v.count,
        violations: v.listed,
        status,
        details,
    }
}

fn check_n(n: u64) -> Result<()> {
    Heisenberg::new(n).map(|_| ())
}

/// Composition law and freeness of `Φ_n` on the window `[-3, 3]^2`.
pub fn verify_phi_action(n: u64, samples: &[BundlePoint], seed: u64) -> Result<VerificationReport> {
    check_n(n)?;
    let mut v = Violations::new();
    let window: Vec<(i64, i64)> = (-3..=3)
        .flat_map(|k| (-3..=3).map(move |l| (k, l)))
        .collect();
    for s in samples {
        let p = s.raw();
        for &(k, l) in &window {
            let moved = phi(n, k, l, p);
            if (k, l) != (0, 0) && moved.x == p.x && moved.y == p.y {
                v.push(|| json!({"kind": "fixed_point", "k": k, "l": l, "point": s}));
            }
            if (k, l) == (0, 0) && moved != p {
                v.push(|| json!({"kind": "identity", "point": s}));
            }
            for &(k2, l2) in &window {
                let lhs = phi(n, k, l, phi(n, k2, l2, p));
                let rhs = phi(n, k + k2, l + l2, p);
                if lhs != rhs {
                    v.push(|| json!({"kind": "composition", "k": k, "l": l, "k2": k2, "l2": l2, "point": s}));
                }
            }
        }
    }
    Ok(report(
        "phi-action",
        n,
        samples.len(),
        seed,
        v,
        false,
        Value::Null,
    ))
}

/// Well-definedness, homomorphism property and effectiveness of `Ψ_n`.
///
/// Effectiveness looks for a moved sample for every `g != e`; if none is
/// found the sample set is grown with further seeded points up to
/// [`SAMPLE_CAP`], after which the check is inconclusive.
pub fn verify_psi_is_effective_action(
    n: u64,
    samples: &[BundlePoint],
    seed: u64,
) -> Result<VerificationReport> {
    let h = Heisenberg::new(n)?;
    let mut v = Violations::new();
    let group: Vec<HeisenbergElement> = h.elements().collect();

    for s in samples {
        if canonicalize(n, s.raw()) != *s {
            v.push(|| json!({"kind": "not_canonical", "point": s}));
        }
        for &g in &group {
            let image = psi_action(n, g, s);
            for (k, l) in [(1, 0), (0, 1), (-2, 1), (3, -2)] {
                let other = phi(n, k, l, s.raw());
                if canonicalize(n, psi_raw(n, g, other)) != image {
                    v.push(|| json!({"kind": "well_defined", "g": g, "k": k, "l": l, "point": s}));
                }
            }
        }
    }

    for &g in &group {
        for &g2 in &group {
            let gg = h.mul(g, g2);
            for s in samples {
                if psi_action(n, g, &psi_action(n, g2, s)) != psi_action(n, gg, s) {
                    v.push(|| json!({"kind": "homomorphism", "g": g, "g2": g2, "point": s}));
                }
            }
        }
    }

    let mut pool: Vec<BundlePoint> = samples.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut inconclusive = Vec::new();
    for &g in group.iter().skip(1) {
        let mut i = 0;
        loop {
            if i == pool.len() {
                if pool.len() >= SAMPLE_CAP {
                    inconclusive.push(g);
                    break;
                }
                let [x, y, theta] = rational_point(&mut rng);
                pool.push(BundlePoint { x, y, theta, n });
            }
            if psi_action(n, g, &pool[i]) != pool[i] {
                break;
            }
            i += 1;
        }
    }
    let details = json!({"inconclusive_elements": inconclusive, "sample_pool": pool.len()});
    Ok(report(
        "psi-action",
        n,
        samples.len(),
        seed,
        v,
        !inconclusive.is_empty(),
        details,
    ))
}

/// Whether the `j` marker is present in an element of the normalizer
/// `{e^{iα}} ∪ {e^{iα} j}` of the circle in the unit quaternions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Marker {
    One,
    J,
}

/// `e^{2πiα}` or `e^{2πiα} j` with `α` a rational angle; closed under
/// multiplication since `j e^{iβ} = e^{-iβ} j` and `j^2 = -1 = e^{iπ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitQuaternion {
    pub angle: Rational64,
    pub marker: Marker,
}

impl UnitQuaternion {
    pub fn circle(angle: Rational64) -> Self {
        UnitQuaternion {
            angle: frac(angle),
            marker: Marker::One,
        }
    }

    pub fn with_j(angle: Rational64) -> Self {
        UnitQuaternion {
            angle: frac(angle),
            marker: Marker::J,
        }
    }

    pub fn one() -> Self {
        Self::circle(Rational64::zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.angle, other.angle);
        match (self.marker, other.marker) {
            (Marker::One, m) => UnitQuaternion {
                angle: frac(a + b),
                marker: m,
            },
            (Marker::J, Marker::One) => Self::with_j(a - b),
            (Marker::J, Marker::J) => Self::circle(a - b + Rational64::new(1, 2)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self.marker {
            Marker::One => Self::circle(-self.angle),
            Marker::J => Self::with_j(self.angle + Rational64::new(1, 2)),
        }
    }
}

/// A point of the `T^2 x S^3` model: torus coordinates plus the unit
/// quaternion component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S3ModelPoint {
    pub x: Rational64,
    pub y: Rational64,
    pub u: UnitQuaternion,
}

impl S3ModelPoint {
    pub fn canonical(x: Rational64, y: Rational64, u: UnitQuaternion) -> Self {
        S3ModelPoint {
            x: frac(x),
            y: frac(y),
            u,
        }
    }
}

fn s3_samples(n: u64) -> Vec<S3ModelPoint> {
    let mut out = Vec::new();
    let d = 2 * n as i64 + 3;
    for i in 0..d {
        let angle = Rational64::new(i, d);
        for u in [UnitQuaternion::circle(angle), UnitQuaternion::with_j(angle)] {
            out.push(S3ModelPoint::canonical(
                Rational64::new(i, 7),
                Rational64::new(i, 11),
                u,
            ));
        }
    }
    out
}

/// For every `g = (k,l,m) != e`, derives that `g` has no fixed point: a
/// nonzero `k` shifts `x` by `k/n`, a nonzero `l` shifts `y` by `l/n`, and
/// otherwise the `S^3` component is left-multiplied by `q' = e^{2πi m/n}`,
/// and `q' u = u` forces `q' = (q' u) u^{-1} = 1`.
pub fn verify_free_action_s3_model(n: u64, guards: &Guards) -> Result<VerificationReport> {
    let h = Heisenberg::new(n)?;
    guards.check_order(h.order())?;
    let n_q = Rational64::from_integer(n as i64);
    let samples = s3_samples(n);
    let mut v = Violations::new();
    let mut steps = [0usize; 3];
    for g in h.elements().skip(1) {
        let dx = frac(Rational64::from_integer(g.a as i64) / n_q);
        let dy = frac(Rational64::from_integer(g.b as i64) / n_q);
        if !dx.is_zero() {
            steps[0] += 1;
            continue;
        }
        if !dy.is_zero() {
            steps[1] += 1;
            continue;
        }
        let q = UnitQuaternion::circle(Rational64::from_integer(g.c as i64) / n_q);
        let mut derived = !q.is_one();
        for s in &samples {
            let moved = q.mul(&s.u);
            // left translation: q u = u would give q = (q u) u^-1 = 1
            if moved.mul(&s.u.inverse()) != q || moved == s.u {
                derived = false;
            }
        }
        if derived {
            steps[2] += 1;
        } else {
            v.push(|| json!({"g": g}));
        }
    }
    let details = json!({"x_shift": steps[0], "y_shift": steps[1], "left_translation": steps[2]});
    Ok(report("free-s3", n, samples.len(), 0, v, false, details))
}

/// `(a, b)`-part inverting automorphism of `G_n`: `(a,b,c) -> (-a,-b,c)`.
pub fn inversion_automorphism(h: &Heisenberg, x: HeisenbergElement) -> HeisenbergElement {
    let n = h.n();
    HeisenbergElement::new((n - x.a) % n, (n - x.b) % n, x.c)
}

/// Least common multiple of the element orders.
pub fn exponent(h: &Heisenberg) -> u64 {
    h.elements()
        .map(|x| {
            let mut y = x;
            let mut k = 1u64;
            while y != h.identity() {
                y = h.mul(y, x);
                k += 1;
            }
            k
        })
        .fold(1, |a, b| a.lcm(&b))
}
