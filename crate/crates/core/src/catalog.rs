//! Labelled lists of group specs, and the built-in default list.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::heisenberg::{inversion_automorphism, Heisenberg};
use crate::perm::spec::named_group;
use crate::perm::{regular_representation, GroupSpec, PermGroup, Permutation, SemidirectSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub spec: GroupSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(default)]
    pub provenance: String,
    pub groups: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses a catalog document and checks that labels are unique.
    pub fn from_json(text: &str) -> Result<Self> {
        let catalog: Catalog =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("bad catalog: {e}")))?;
        let mut seen = HashSet::new();
        for e in &catalog.groups {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::Format(format!(
                    "duplicate catalog label `{}`",
                    e.label
                )));
            }
        }
        Ok(catalog)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

fn construct(label: &str, spec: &str) -> CatalogEntry {
    CatalogEntry {
        label: label.to_string(),
        spec: GroupSpec::construct(spec),
    }
}

fn explicit(label: &str, group: &PermGroup) -> CatalogEntry {
    CatalogEntry {
        label: label.to_string(),
        spec: GroupSpec::explicit(group, Some(label)),
    }
}

fn semidirect(
    label: &str,
    normal: &str,
    complement: &str,
    action: Vec<Vec<String>>,
) -> CatalogEntry {
    CatalogEntry {
        label: label.to_string(),
        spec: GroupSpec::Semidirect {
            semidirect: SemidirectSpec {
                normal: Box::new(GroupSpec::parse_inline(normal).expect("valid constructor")),
                complement: Box::new(
                    GroupSpec::parse_inline(complement).expect("valid constructor"),
                ),
                action,
            },
        },
    }
}

fn group(spec: &str) -> PermGroup {
    named_group(spec, &Guards::default()).expect("catalog constructor")
}

/// `x -> x^k` on `cyclic:n`.
fn power_action(n: usize, k: u64) -> Vec<String> {
    let g = group(&format!("cyclic:{n}"));
    vec![g.generators()[0].pow(k).to_cycle_string()]
}

/// Acts on `elem_abelian:p:r` by the matrix `m`: generator `j` goes to
/// `Π_i g_i^{m[i][j]}`.
fn matrix_action(p: usize, r: usize, m: &[Vec<u64>]) -> Vec<String> {
    let g = group(&format!("elem_abelian:{p}:{r}"));
    let gens = g.generators();
    (0..r)
        .map(|j| {
            (0..r)
                .fold(g.identity(), |acc, i| acc.mul(&gens[i].pow(m[i][j])))
                .to_cycle_string()
        })
        .collect()
}

fn mat_mul(p: u64, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

fn mat_order(p: u64, m: &[Vec<u64>]) -> Option<u64> {
    let n = m.len();
    let id: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut acc = m.to_vec();
    for k in 1..=p.pow(n as u32) {
        if acc == id {
            return Some(k);
        }
        acc = mat_mul(p, &acc, m);
    }
    None
}

/// First matrix over `F_p` (entries in lexicographic order) of exact order
/// `k`.
fn matrix_of_order(p: u64, n: usize, k: u64) -> Vec<Vec<u64>> {
    let cells = n * n;
    (0..p.pow(cells as u32))
        .map(|mut code| {
            let mut m = vec![vec![0u64; n]; n];
            for c in 0..cells {
                m[c / n][c % n] = code % p;
                code /= p;
            }
            m
        })
        .find(|m| mat_order(p, m) == Some(k))
        .expect("GL(n, p) has an element of the requested order")
}

fn trivial_action(normal: &str, complement_gens: usize) -> Vec<Vec<String>> {
    let g = group(normal);
    let same: Vec<String> = g
        .generators()
        .iter()
        .map(Permutation::to_cycle_string)
        .collect();
    vec![same; complement_gens]
}

/// `<a, b | a^n = 1, b^2 = a^(n/2), b^-1 a b = a^-1>` (quaternion for
/// `n = 4`), by its regular representation on the words `a^i b^j`.
fn dicyclic(n: usize) -> PermGroup {
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        // b^j a^k = a^((-1)^j k) b^j
        let k = if j == 1 { (n - k) % n } else { k };
        let mut a = (i + k) % n;
        let b = j + l;
        if b == 2 {
            a = (a + n / 2) % n;
        }
        a + (b % 2) * n
    };
    regular_representation(2 * n, &[1, n], mul, &Guards::default()).expect("dicyclic group")
}

fn heisenberg_inversion_action() -> Vec<Vec<String>> {
    let h = Heisenberg::new(3).expect("n >= 2");
    let degree = h.order() as usize;
    let perm_of = |g| {
        let images = (0..degree)
            .map(|x| h.index(h.mul(h.from_index(x), g)))
            .collect();
        Permutation::from_images(images).expect("regular action")
    };
    let gens = [h.element(1, 0, 0), h.element(0, 1, 0), h.element(0, 0, 1)];
    vec![gens
        .iter()
        .map(|&g| perm_of(inversion_automorphism(&h, g)).to_cycle_string())
        .collect()]
}

/// `Q8 ⋊ Z3 = SL(2,3)`: the order-3 automorphism `i -> j -> k`.
fn quaternion_cycling() -> (PermGroup, Vec<Vec<String>>) {
    let q8 = dicyclic(4);
    let (i, j) = (q8.generators()[0].clone(), q8.generators()[1].clone());
    let k = i.mul(&j);
    (q8, vec![vec![j.to_cycle_string(), k.to_cycle_string()]])
}

/// Named constructors up to order 200 plus semidirect products covering
/// both outcomes of the reduction check.
pub fn default_catalog() -> Catalog {
    let mut groups = Vec::new();
    for n in [1, 2, 4, 6, 8, 12, 15, 30, 60] {
        groups.push(construct(&format!("cyclic:{n}"), &format!("cyclic:{n}")));
    }
    for (p, r) in [
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 2),
        (11, 2),
        (13, 2),
    ] {
        let s = format!("elem_abelian:{p}:{r}");
        groups.push(construct(&s, &s));
    }
    for n in [3, 4, 5, 6, 8, 10, 12, 15, 16, 20, 30, 50, 100] {
        let s = format!("dihedral:{n}");
        groups.push(construct(&s, &s));
    }
    for n in 1..=5 {
        let s = format!("sym:{n}");
        groups.push(construct(&s, &s));
    }
    for n in 3..=5 {
        let s = format!("alt:{n}");
        groups.push(construct(&s, &s));
    }
    for n in 2..=5 {
        let s = format!("heisenberg:{n}");
        groups.push(construct(&s, &s));
    }

    let cyc = |n: usize, c: &str, k: u64, label: &str| {
        semidirect(label, &format!("cyclic:{n}"), c, vec![power_action(n, k)])
    };
    groups.push(cyc(7, "cyclic:3", 2, "z7:z3"));
    groups.push(cyc(7, "cyclic:6", 3, "z7:z6"));
    groups.push(cyc(5, "cyclic:4", 2, "z5:z4"));
    groups.push(cyc(3, "cyclic:4", 2, "z3:z4"));
    groups.push(cyc(11, "cyclic:5", 3, "z11:z5"));
    groups.push(cyc(13, "cyclic:3", 3, "z13:z3"));
    groups.push(cyc(9, "cyclic:3", 4, "z9:z3"));
    groups.push(cyc(4, "cyclic:4", 3, "z4:z4"));
    groups.push(cyc(8, "cyclic:2", 5, "m16"));
    groups.push(cyc(8, "cyclic:2", 3, "sd16"));

    let lin = |p: usize, r: usize, k: u64, c: &str, label: &str| {
        let m = matrix_of_order(p as u64, r, k);
        semidirect(
            label,
            &format!("elem_abelian:{p}:{r}"),
            c,
            vec![matrix_action(p, r, &m)],
        )
    };
    groups.push(lin(2, 2, 3, "cyclic:3", "z2^2:z3"));
    groups.push(lin(3, 2, 2, "cyclic:2", "z3^2:z2"));
    groups.push(lin(3, 2, 4, "cyclic:4", "z3^2:z4"));
    groups.push(lin(3, 2, 8, "cyclic:8", "z3^2:z8"));
    groups.push(lin(2, 3, 7, "cyclic:7", "z2^3:z7"));
    groups.push(lin(2, 4, 5, "cyclic:5", "z2^4:z5"));
    groups.push(lin(5, 2, 3, "cyclic:3", "z5^2:z3"));
    groups.push(lin(5, 2, 4, "cyclic:4", "z5^2:z4"));

    groups.push(semidirect(
        "he3:z2",
        "heisenberg:3",
        "cyclic:2",
        heisenberg_inversion_action(),
    ));
    let (q8, cycling) = quaternion_cycling();
    groups.push(explicit("q8", &q8));
    groups.push(CatalogEntry {
        label: "q8:z3".into(),
        spec: GroupSpec::Semidirect {
            semidirect: SemidirectSpec {
                normal: Box::new(GroupSpec::explicit(&q8, Some("q8"))),
                complement: Box::new(GroupSpec::construct("cyclic:3")),
                action: cycling,
            },
        },
    });
    groups.push(explicit("q16", &dicyclic(8)));
    groups.push(explicit("dic12", &dicyclic(6)));

    let direct = |label: &str, a: &str, b: &str| {
        let b_gens = group(b).generators().len();
        semidirect(label, a, b, trivial_action(a, b_gens))
    };
    groups.push(direct("s3xs3", "sym:3", "sym:3"));
    groups.push(direct("z3xs3", "sym:3", "cyclic:3"));
    groups.push(direct("d8xz3", "dihedral:4", "cyclic:3"));
    groups.push(direct("z2xd8", "dihedral:4", "cyclic:2"));
    groups.push(direct("z4xz2", "cyclic:4", "cyclic:2"));
    groups.push(direct("z2xa4", "alt:4", "cyclic:2"));
    groups.push(CatalogEntry {
        label: "z2xq8".into(),
        spec: GroupSpec::Semidirect {
            semidirect: SemidirectSpec {
                normal: Box::new(GroupSpec::explicit(&q8, Some("q8"))),
                complement: Box::new(GroupSpec::construct("cyclic:2")),
                action: vec![q8
                    .generators()
                    .iter()
                    .map(Permutation::to_cycle_string)
                    .collect()],
            },
        },
    });

    Catalog {
        provenance: "built-in default catalog: named constructors up to order 200 and \
                     semidirect products with cyclic complements"
            .into(),
        groups,
    }
}
