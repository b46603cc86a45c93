use std::collections::HashMap;

use crate::config::Guards;
use crate::error::{Error, Result};

use super::{PermGroup, Permutation};

fn cycle_on(points: std::ops::Range<usize>, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let pts: Vec<usize> = points.collect();
    for (i, &x) in pts.iter().enumerate() {
        images[x] = pts[(i + 1) % pts.len()] as u32;
    }
    Permutation::from_raw(images)
}

fn transposition(a: usize, b: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.swap(a, b);
    Permutation::from_raw(images)
}

fn expect_order(guards: &Guards, order: u128) -> Result<()> {
    if order > guards.max_order as u128 {
        return Err(Error::guard(
            "group order",
            guards.max_order,
            order.min(u64::MAX as u128) as u64,
        ));
    }
    Ok(())
}

/// Regular representation of `Z_n` on `n` points.
pub fn cyclic(n: usize, guards: &Guards) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Range("cyclic group order must be >= 1".into()));
    }
    expect_order(guards, n as u128)?;
    PermGroup::with_guards(n, vec![cycle_on(0..n, n)], guards)
}

/// `(Z_p)^r` acting on `p*r` points, one `p`-cycle per factor.
pub fn elementary_abelian(p: usize, r: usize, guards: &Guards) -> Result<PermGroup> {
    if !crate::arith::is_prime(p as u64) {
        return Err(Error::Range(format!("{p} is not prime")));
    }
    expect_order(
        guards,
        (p as u128).checked_pow(r as u32).unwrap_or(u128::MAX),
    )?;
    let degree = (p * r).max(1);
    let gens = (0..r)
        .map(|i| cycle_on(i * p..(i + 1) * p, degree))
        .collect();
    PermGroup::with_guards(degree, gens, guards)
}

/// Dihedral group of order `2n`; natural action on an `n`-gon for `n >= 3`.
pub fn dihedral(n: usize, guards: &Guards) -> Result<PermGroup> {
    expect_order(guards, 2 * n as u128)?;
    match n {
        0 => Err(Error::Range("dihedral:n needs n >= 1".into())),
        1 => PermGroup::with_guards(2, vec![transposition(0, 1, 2)], guards),
        2 => {
            let a = Permutation::parse_cycles("(1 2)(3 4)", 4)?;
            let b = Permutation::parse_cycles("(1 3)(2 4)", 4)?;
            PermGroup::with_guards(4, vec![a, b], guards)
        }
        _ => {
            let rotation = cycle_on(0..n, n);
            let images: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
            PermGroup::with_guards(n, vec![rotation, Permutation::from_raw(images)], guards)
        }
    }
}

pub fn symmetric(n: usize, guards: &Guards) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Range("sym:n needs n >= 1".into()));
    }
    let order: u128 = (1..=n as u128)
        .try_fold(1u128, |a, b| a.checked_mul(b))
        .unwrap_or(u128::MAX);
    expect_order(guards, order)?;
    guards.check_degree(n)?;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::with_guards(n, vec![transposition(0, 1, n), cycle_on(0..n, n)], guards)
}

pub fn alternating(n: usize, guards: &Guards) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Range("alt:n needs n >= 1".into()));
    }
    let order: u128 = (1..=n as u128)
        .try_fold(1u128, |a, b| a.checked_mul(b))
        .unwrap_or(u128::MAX);
    expect_order(guards, if n < 2 { 1 } else { order / 2 })?;
    guards.check_degree(n)?;
    let gens = (2..n)
        .map(|k| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images[0] = 1;
            images[1] = k as u32;
            images[k] = 0;
            Permutation::from_raw(images)
        })
        .collect();
    PermGroup::with_guards(n, gens, guards)
}

/// Right regular representation of an abstract group with `size` elements.
///
/// `mul(a, b)` is the index of the product `a*b`; the group acts on its own
/// elements by `x -> x*g`. The returned group is generated by the images of
/// `gens`.
pub fn regular_representation(
    size: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    guards: &Guards,
) -> Result<PermGroup> {
    expect_order(guards, size as u128)?;
    guards.check_degree(size)?;
    let perms = gens
        .iter()
        .map(|&g| Permutation::from_images((0..size).map(|x| mul(x, g)).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::with_guards(size, perms, guards)
}

/// Direct sum of two permutations on disjoint point sets.
pub(crate) fn direct_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let d = a.degree() as u32;
    let mut images: Vec<u32> = a.images().to_vec();
    images.extend(b.images().iter().map(|&x| x + d));
    Permutation::from_raw(images)
}

/// `N ⋊ H` for a right action of `H` on `N`.
///
/// `action[i][j]` is the image of `N`'s generator `j` under `H`'s generator
/// `i`. The product is realized by the regular action on the pair set
/// `H × N` with multiplication `(h1, n1)(h2, n2) = (h1 h2, n1^h2 n2)`.
/// The generators of the result are those of the normal copy of `N`
/// followed by those of the complement.
pub fn semidirect_product(
    normal: &PermGroup,
    complement: &PermGroup,
    action: &[Vec<Permutation>],
    guards: &Guards,
) -> Result<PermGroup> {
    let h_gens = complement.generators();
    let n_gens = normal.generators();
    if action.len() != h_gens.len() {
        return Err(Error::NotAnAutomorphism(format!(
            "{} automorphisms given for {} complement generators",
            action.len(),
            h_gens.len()
        )));
    }
    let size = normal.order() as u128 * complement.order() as u128;
    expect_order(guards, size)?;
    guards.check_degree(size as usize)?;

    let n_elements = normal.elements(guards)?;
    let n_index: HashMap<&Permutation, usize> =
        n_elements.iter().enumerate().map(|(i, e)| (e, i)).collect();

    let mut automorphisms = Vec::with_capacity(action.len());
    for (i, images) in action.iter().enumerate() {
        automorphisms.push(
            automorphism_table(normal, images, &n_index, guards).map_err(|e| match e {
                Error::NotAnAutomorphism(msg) => {
                    Error::NotAnAutomorphism(format!("complement generator {}: {msg}", i + 1))
                }
                other => other,
            })?,
        );
    }

    // The generator assignment must extend to a homomorphism H -> Aut(N):
    // the graph subgroup of H x Sym(N) has order |H| exactly when it does.
    if !h_gens.is_empty() {
        let graph_gens: Vec<Permutation> = h_gens
            .iter()
            .zip(&automorphisms)
            .map(|(h, alpha)| direct_sum(h, alpha))
            .collect();
        let relations_fail = || {
            Error::NotAnAutomorphism(
                "assignment does not respect the relations of the complement".into(),
            )
        };
        let graph = PermGroup::with_guards(
            complement.degree() + n_elements.len(),
            graph_gens,
            &Guards {
                max_order: complement.order(),
                max_degree: usize::MAX,
                ..*guards
            },
        )
        .map_err(|e| match e {
            Error::GuardExceeded { .. } => relations_fail(),
            other => other,
        })?;
        if graph.order() != complement.order() {
            return Err(relations_fail());
        }
    }

    let h_elements = complement.elements(guards)?;
    let h_index: HashMap<&Permutation, usize> =
        h_elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let nn = n_elements.len();
    let point = |h: usize, n: usize| h * nn + n;
    let mut gens = Vec::with_capacity(n_gens.len() + h_gens.len());
    for nj in n_gens {
        let right: Vec<usize> = n_elements.iter().map(|e| n_index[&e.mul(nj)]).collect();
        let mut images = vec![0usize; size as usize];
        for h in 0..h_elements.len() {
            for n in 0..nn {
                images[point(h, n)] = point(h, right[n]);
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    for (hi, alpha) in h_gens.iter().zip(&automorphisms) {
        let right: Vec<usize> = h_elements.iter().map(|e| h_index[&e.mul(hi)]).collect();
        let mut images = vec![0usize; size as usize];
        for h in 0..h_elements.len() {
            for n in 0..nn {
                images[point(h, n)] = point(right[h], alpha.image(n));
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::with_guards(size as usize, gens, guards)?;
    if group.order() as u128 != size {
        return Err(Error::Internal(format!(
            "semidirect product has order {}, expected {size}",
            group.order()
        )));
    }
    Ok(group)
}

/// The automorphism of `N` determined by generator images, as a permutation
/// of `N`'s element indices.
fn automorphism_table(
    normal: &PermGroup,
    images: &[Permutation],
    n_index: &HashMap<&Permutation, usize>,
    guards: &Guards,
) -> Result<Permutation> {
    let gens = normal.generators();
    if images.len() != gens.len() {
        return Err(Error::NotAnAutomorphism(format!(
            "{} images for {} generators",
            images.len(),
            gens.len()
        )));
    }
    for img in images {
        if img.degree() != normal.degree() || !normal.contains(img) {
            return Err(Error::NotAnAutomorphism(format!("image {img} is not in N")));
        }
    }
    let onto = PermGroup::with_guards(normal.degree(), images.to_vec(), guards)?;
    if onto.order() != normal.order() {
        return Err(Error::NotAnAutomorphism("images do not generate N".into()));
    }
    // graph of the assignment inside N x N
    let graph = PermGroup::with_guards(
        2 * normal.degree(),
        gens.iter()
            .zip(images)
            .map(|(g, i)| direct_sum(g, i))
            .collect(),
        &Guards {
            max_order: normal.order(),
            max_degree: usize::MAX,
            ..*guards
        },
    )
    .map_err(|e| match e {
        Error::GuardExceeded { .. } => {
            Error::NotAnAutomorphism("assignment does not respect the relations of N".into())
        }
        other => other,
    })?;
    if graph.order() != normal.order() {
        return Err(Error::NotAnAutomorphism(
            "assignment does not respect the relations of N".into(),
        ));
    }
    let d = normal.degree();
    let mut table = vec![usize::MAX; n_index.len()];
    for pair in graph.elements(guards)? {
        let left = Permutation::from_raw(pair.images()[..d].to_vec());
        let right =
            Permutation::from_raw(pair.images()[d..].iter().map(|&x| x - d as u32).collect());
        table[n_index[&left]] = n_index[&right];
    }
    Permutation::from_images(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn named_orders() {
        assert_eq!(cyclic(6, &g()).unwrap().order(), 6);
        assert_eq!(cyclic(6, &g()).unwrap().degree(), 6);
        assert_eq!(elementary_abelian(2, 3, &g()).unwrap().order(), 8);
        assert_eq!(elementary_abelian(3, 0, &g()).unwrap().order(), 1);
        assert_eq!(dihedral(4, &g()).unwrap().order(), 8);
        assert_eq!(dihedral(2, &g()).unwrap().order(), 4);
        assert_eq!(dihedral(1, &g()).unwrap().order(), 2);
        assert_eq!(symmetric(4, &g()).unwrap().order(), 24);
        assert_eq!(symmetric(1, &g()).unwrap().order(), 1);
        assert_eq!(alternating(5, &g()).unwrap().order(), 60);
        assert_eq!(alternating(2, &g()).unwrap().order(), 1);
        assert!(elementary_abelian(4, 2, &g()).is_err());
        assert!(matches!(
            symmetric(12, &g()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn inversion_on_z3_gives_s3() {
        let n = cyclic(3, &g()).unwrap();
        let h = cyclic(2, &g()).unwrap();
        let inv = n.generators()[0].inverse();
        let s3 = semidirect_product(&n, &h, &[vec![inv]], &g()).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn non_automorphisms_rejected() {
        let n = cyclic(4, &g()).unwrap();
        let h = cyclic(2, &g()).unwrap();
        // x -> x^2 is not onto
        let sq = n.generators()[0].pow(2);
        assert!(matches!(
            semidirect_product(&n, &h, &[vec![sq]], &g()),
            Err(Error::NotAnAutomorphism(_))
        ));
        // an order-2 generator of H cannot act by an automorphism of order 4
        let n5 = cyclic(5, &g()).unwrap();
        let x2 = n5.generators()[0].pow(2);
        assert!(matches!(
            semidirect_product(&n5, &h, &[vec![x2]], &g()),
            Err(Error::NotAnAutomorphism(_))
        ));
        // element outside N
        let outside = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert!(semidirect_product(&n, &h, &[vec![outside]], &g()).is_err());
    }

    #[test]
    fn relation_violating_images_rejected() {
        // V4 = <a, b>; a -> a, b -> a is not injective, a -> b, b -> a is fine
        let v4 = elementary_abelian(2, 2, &g()).unwrap();
        let h = cyclic(2, &g()).unwrap();
        let [a, b] = [v4.generators()[0].clone(), v4.generators()[1].clone()];
        assert!(semidirect_product(&v4, &h, &[vec![a.clone(), a.clone()]], &g()).is_err());
        let d8 = semidirect_product(&v4, &h, &[vec![b, a]], &g()).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(!d8.is_abelian());
    }
}
