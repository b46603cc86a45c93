mod common;

use common::group;
use grouptk_core::bounds::{self, binomial, BoundInputs, Formula};
use grouptk_core::cohomology::{
    bar_cochain_complex, bar_cohomology_dims, cohomology_table, cyclic_cochain_complex,
    cyclic_cohomology_dims, elementary_abelian_cohomology_dim,
    elementary_abelian_dims_by_resolution, kunneth_dims, BAR_CELL_CAP,
};
use grouptk_core::table::GroupTable;
use grouptk_core::Guards;
use num_bigint::BigUint;
use proptest::prelude::*;

fn table(spec: &str) -> GroupTable {
    GroupTable::new(&group(spec), &Guards::default()).unwrap()
}

/// Pascal's triangle, built by addition only.
fn pascal(rows: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![1]];
    for n in 1..rows {
        let prev = &out[n - 1];
        let row = (0..=n)
            .map(|k| {
                if k == 0 || k == n {
                    1
                } else {
                    prev[k - 1] + prev[k]
                }
            })
            .collect();
        out.push(row);
    }
    out
}

#[test]
fn bar_complex_agrees_with_periodic_resolution() {
    for (spec, m, p, deg) in [
        ("cyclic:2", 2, 2, 5),
        ("cyclic:3", 3, 3, 4),
        ("cyclic:4", 4, 2, 4),
        ("cyclic:6", 6, 3, 3),
        ("cyclic:6", 6, 2, 3),
        ("cyclic:5", 5, 5, 3),
        ("cyclic:5", 5, 2, 3),
    ] {
        let bar = bar_cohomology_dims(&table(spec), p, deg, BAR_CELL_CAP).unwrap();
        assert_eq!(
            bar,
            cyclic_cohomology_dims(m, p, deg).unwrap(),
            "{spec} mod {p}"
        );
    }
}

#[test]
fn bar_complex_of_klein_four_group() {
    let bar = bar_cohomology_dims(&table("elem_abelian:2:2"), 2, 5, BAR_CELL_CAP).unwrap();
    assert_eq!(bar, elementary_abelian_dims_by_resolution(2, 2, 5).unwrap());
    assert_eq!(bar, vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn bar_complex_of_s3() {
    // mod 3 only degrees 0 and 3 mod 4 survive; mod 2 it looks like Z_2
    let t = table("sym:3");
    assert_eq!(
        bar_cohomology_dims(&t, 3, 4, BAR_CELL_CAP).unwrap(),
        vec![1, 0, 0, 1, 1]
    );
    assert_eq!(
        bar_cohomology_dims(&t, 2, 4, BAR_CELL_CAP).unwrap(),
        vec![1; 5]
    );
    assert!(bar_cochain_complex(&t, 3, 3, BAR_CELL_CAP)
        .unwrap()
        .is_complex());
}

#[test]
fn bar_complex_guards() {
    assert!(bar_cohomology_dims(&table("alt:4"), 2, 6, BAR_CELL_CAP).is_err());
    assert!(bar_cohomology_dims(&table("dihedral:8"), 2, 1, BAR_CELL_CAP).is_err());
}

#[test]
fn closed_form_matches_resolution_for_small_ranks() {
    let tri = pascal(16);
    for p in [2, 3, 5] {
        for r in 0..=3u32 {
            let dims = elementary_abelian_dims_by_resolution(p, r, 8).unwrap();
            for d in 0..=8usize {
                let expected = if r == 0 {
                    u64::from(d == 0)
                } else {
                    tri[d + r as usize - 1][d]
                };
                assert_eq!(dims[d], expected, "p={p} r={r} d={d}");
                assert_eq!(
                    elementary_abelian_cohomology_dim(p, r as u64, d as u64).unwrap(),
                    expected
                );
            }
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(cyclic_cohomology_dims(3, 3, 6).unwrap(), vec![1; 7]);
    assert_eq!(cyclic_cohomology_dims(3, 2, 3).unwrap(), vec![1, 0, 0, 0]);
    assert_eq!(cyclic_cohomology_dims(4, 2, 6).unwrap(), vec![1; 7]);
    assert_eq!(elementary_abelian_cohomology_dim(7, 1, 9).unwrap(), 1);
    assert_eq!(elementary_abelian_cohomology_dim(3, 2, 3).unwrap(), 4);
    assert_eq!(elementary_abelian_cohomology_dim(3, 5, 0).unwrap(), 1);
    let z = vec![1u64; 6];
    assert_eq!(kunneth_dims(&z, &z), vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(
        kunneth_dims(&kunneth_dims(&z, &z), &z),
        vec![1, 3, 6, 10, 15, 21]
    );
    let table = cohomology_table(3, 2, 4).unwrap();
    assert_eq!(table.resolution, vec![1, 2, 3, 4, 5]);
    assert!(table.matches);
    assert_eq!(
        cohomology_table(2, 0, 3).unwrap().resolution,
        vec![1, 0, 0, 0]
    );
    assert!(cyclic_cohomology_dims(4, 4, 2).is_err());
}

#[test]
fn differentials_square_to_zero() {
    for m in 1..=12 {
        for p in [2, 3, 5, 7] {
            assert!(
                cyclic_cochain_complex(m, p, 6).unwrap().is_complex(),
                "m={m} p={p}"
            );
        }
    }
}

fn inputs(r: Option<u64>, big_t: Option<u64>, d: Option<u64>, t: Option<u64>) -> BoundInputs {
    BoundInputs { r, big_t, d, t }
}

#[test]
fn bound_examples() {
    let v = |f, i| bounds::evaluate(f, &i).unwrap().value;
    assert_eq!(
        v(
            Formula::FactorialPower,
            inputs(Some(2), Some(3), None, None)
        ),
        BigUint::from(36u32)
    );
    assert_eq!(
        v(Formula::Gillam, inputs(Some(3), None, None, Some(2))),
        BigUint::from(64u32)
    );
    assert_eq!(
        v(
            Formula::BinomialSquare,
            inputs(Some(2), None, Some(3), None)
        ),
        BigUint::from(100u32)
    );
    assert_eq!(binomial(5, 2), BigUint::from(10u32));
    // T^(16 r^2 log2 T) with T = 4, r = 1: 4^32
    assert_eq!(
        v(Formula::Jordan, inputs(Some(1), Some(4), None, None)),
        BigUint::from(4u32).pow(32u32)
    );
    let three = bounds::evaluate(Formula::Jordan, &inputs(Some(1), Some(3), None, None)).unwrap();
    assert!(three.symbolic.is_some());
    assert_eq!(three.value, BigUint::from(3u32).pow(32u32));
}

/// The inputs `base` and a copy with one field raised by `bump`.
fn lift(field: usize, base: [u64; 4], bump: u64) -> (BoundInputs, BoundInputs) {
    let mut hi = base;
    hi[field] += bump;
    let make = |v: [u64; 4]| inputs(Some(v[0]), Some(v[1]), Some(v[2]), Some(v[3]));
    (make(base), make(hi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kunneth_commutative_and_associative(
        a in prop::collection::vec(0u64..5, 1..8),
        b in prop::collection::vec(0u64..5, 1..8),
        c in prop::collection::vec(0u64..5, 1..8),
    ) {
        prop_assert_eq!(kunneth_dims(&a, &b), kunneth_dims(&b, &a));
        prop_assert_eq!(
            kunneth_dims(&kunneth_dims(&a, &b), &c),
            kunneth_dims(&a, &kunneth_dims(&b, &c))
        );
    }

    #[test]
    fn bounds_monotone(
        field in 0usize..4,
        r in 0u64..4, big_t in 1u64..6, d in 0u64..6, t in 1u64..9,
        bump in 1u64..3,
    ) {
        let (lo, hi) = lift(field, [r, big_t, d, t], bump);
        for f in Formula::ALL {
            let (Ok(a), Ok(b)) = (bounds::evaluate(f, &lo), bounds::evaluate(f, &hi)) else {
                continue;
            };
            prop_assert!(a.value <= b.value, "{} {:?} {:?}", f, lo, hi);
        }
    }
}
