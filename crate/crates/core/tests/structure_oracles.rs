mod common;

use std::collections::BTreeSet;

use common::{group, Cayley};
use grouptk_core::structure::{series as st, SpecialBranch};
use grouptk_core::{GroupContext, Guards, Permutation};

const SMALL: [&str; 16] = [
    "cyclic:6",
    "cyclic:8",
    "elem_abelian:2:3",
    "elem_abelian:3:2",
    "dihedral:3",
    "dihedral:4",
    "dihedral:6",
    "dihedral:8",
    "sym:3",
    "sym:4",
    "alt:4",
    "heisenberg:2",
    "heisenberg:3",
    "cyclic:12",
    "dihedral:5",
    "cyclic:4",
];

fn context(spec: &str) -> GroupContext {
    GroupContext::new(group(spec), &Guards::default()).unwrap()
}

fn as_perms(c: &Cayley, set: &BTreeSet<usize>) -> BTreeSet<Permutation> {
    set.iter().map(|&i| c.elements[i].clone()).collect()
}

fn lattice_as_perms(ctx: &GroupContext) -> BTreeSet<BTreeSet<Permutation>> {
    let guards = Guards::default();
    ctx.lattice()
        .unwrap()
        .iter()
        .map(|e| {
            ctx.to_perm(&e.subgroup)
                .elements(&guards)
                .unwrap()
                .into_iter()
                .collect()
        })
        .collect()
}

#[test]
fn subgroup_counts_match_hand_values() {
    assert_eq!(context("cyclic:6").lattice().unwrap().len(), 4);
    assert_eq!(context("dihedral:4").lattice().unwrap().len(), 10);
    assert_eq!(context("heisenberg:2").lattice().unwrap().len(), 10);
    assert_eq!(context("sym:3").lattice().unwrap().len(), 6);
    assert_eq!(context("sym:4").lattice().unwrap().len(), 30);
    assert_eq!(context("alt:5").lattice().unwrap().len(), 59);
}

#[test]
fn lattice_matches_naive_growth() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let naive: BTreeSet<BTreeSet<Permutation>> =
            c.subgroups().iter().map(|h| as_perms(&c, h)).collect();
        assert_eq!(lattice_as_perms(&ctx), naive, "{spec}");
    }
}

#[test]
fn fitting_is_largest_nilpotent_normal() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let largest = c
            .subgroups()
            .into_iter()
            .filter(|h| c.is_normal(h) && c.is_nilpotent(h))
            .max_by_key(BTreeSet::len)
            .unwrap();
        assert_eq!(ctx.fitting().order(), largest.len(), "{spec}");
    }
    assert_eq!(context("sym:4").fitting().order(), 4);
    assert_eq!(context("sym:3").fitting().order(), 3);
}

#[test]
fn frattini_is_intersection_of_maximal_subgroups() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let subs = c.subgroups();
        let whole: BTreeSet<usize> = (0..c.order()).collect();
        let maximal: Vec<&BTreeSet<usize>> = subs
            .iter()
            .filter(|h| h.len() < c.order())
            .filter(|h| {
                !subs
                    .iter()
                    .any(|k| k.len() < c.order() && k.len() > h.len() && h.is_subset(k))
            })
            .collect();
        let phi = maximal
            .iter()
            .fold(whole, |acc, m| acc.intersection(m).copied().collect());
        let computed = ctx.frattini().unwrap();
        assert_eq!(computed.order(), phi.len(), "{spec}");
        assert!(c.is_nilpotent(&phi));
    }
    assert_eq!(context("cyclic:4").frattini().unwrap().order(), 2);
    assert_eq!(context("elem_abelian:3:3").frattini().unwrap().order(), 1);
    for p in [2, 3, 5] {
        assert_eq!(
            context(&format!("heisenberg:{p}"))
                .frattini()
                .unwrap()
                .order(),
            p
        );
    }
}

#[test]
fn rank_and_generators_match_subset_search() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let subs = c.subgroups();
        let whole: BTreeSet<usize> = (0..c.order()).collect();
        assert_eq!(
            ctx.min_generators() as usize,
            c.min_generators(&whole),
            "{spec}"
        );
        let rank = subs.iter().map(|h| c.min_generators(h)).max().unwrap();
        assert_eq!(ctx.rank().unwrap() as usize, rank, "{spec}");
    }
    assert_eq!(context("sym:1").min_generators(), 0);
    assert_eq!(context("sym:1").rank().unwrap(), 0);
    assert_eq!(context("elem_abelian:2:4").rank().unwrap(), 4);
    assert_eq!(context("heisenberg:3").min_generators(), 2);
}

#[test]
fn center_and_derived_subgroup() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let center = (0..c.order())
            .filter(|&a| (0..c.order()).all(|b| c.mul[a][b] == c.mul[b][a]))
            .count();
        assert_eq!(ctx.center().order(), center, "{spec}");
        let whole: BTreeSet<usize> = (0..c.order()).collect();
        assert_eq!(
            ctx.derived_subgroup().order(),
            c.commutator_subgroup(&whole, &whole).len(),
            "{spec}"
        );
    }
}

#[test]
fn heisenberg_series() {
    let guards = Guards::default();
    for n in 2..=6u64 {
        let ctx = context(&format!("heisenberg:{n}"));
        let t = ctx.table();
        let whole = t.whole();
        let z = st::center(t, &whole);
        assert_eq!(z.order() as u64, n);
        assert_eq!(st::derived_subgroup(t, &whole), z);
        assert_eq!(st::nilpotency_class(t, &whole), Some(2));
        // the quotient by the center is Z_n x Z_n
        let q = grouptk_core::perm::quotient_group(ctx.group(), &ctx.to_perm(&z), &guards).unwrap();
        assert_eq!(q.order(), n * n);
        assert!(q.is_abelian());
    }
}

#[test]
fn sylow_orders() {
    let ctx = context("sym:4");
    assert_eq!(ctx.sylow(2).order(), 8);
    assert_eq!(ctx.sylow(3).order(), 3);
    assert!(ctx.sylow(5).is_trivial());
    let ctx = context("alt:5");
    assert_eq!(ctx.sylow(5).order(), 5);
    assert_eq!(ctx.sylow(2).order(), 4);
}

#[test]
fn special_groups() {
    for p in [2, 3, 5] {
        let check = context(&format!("heisenberg:{p}")).special_check().unwrap();
        assert!(check.special);
        assert_eq!(check.branch, Some(SpecialBranch::ClassTwo));
    }
    let check = context("elem_abelian:3:2").special_check().unwrap();
    assert_eq!(check.branch, Some(SpecialBranch::ElementaryAbelian));
    assert!(!context("cyclic:4").special_check().unwrap().special);
    assert!(!context("dihedral:8").special_check().unwrap().special);
    assert!(context("sym:3").special_check().is_err());
}

#[test]
fn chermak_delgado_matches_measure_table() {
    for spec in SMALL {
        let ctx = context(spec);
        let c = Cayley::new(ctx.group());
        let subs = c.subgroups();
        let centralizer_order = |h: &BTreeSet<usize>| {
            (0..c.order())
                .filter(|&g| h.iter().all(|&x| c.mul[g][x] == c.mul[x][g]))
                .count()
        };
        let measures: Vec<usize> = subs
            .iter()
            .map(|h| h.len() * centralizer_order(h))
            .collect();
        let best = *measures.iter().max().unwrap();
        let least = subs
            .iter()
            .zip(&measures)
            .filter(|(_, &m)| m == best)
            .map(|(h, _)| h.len())
            .min()
            .unwrap();
        let cd = ctx.chermak_delgado().unwrap();
        assert_eq!(cd.measure as usize, best, "{spec}");
        assert_eq!(cd.order, least, "{spec}");
        assert!(cd.holds(), "{spec}");
    }
    let cd = context("sym:3").chermak_delgado().unwrap();
    assert_eq!((cd.order, cd.measure), (3, 9));
    let cd = context("cyclic:12").chermak_delgado().unwrap();
    assert_eq!(cd.index, 1);
}

#[test]
fn structure_report_fields() {
    let report = context("sym:4").report().unwrap();
    assert_eq!(report.order, 24);
    assert_eq!(report.fitting_order, 4);
    assert_eq!(report.derived_length, Some(3));
    assert_eq!(report.nilpotency_class, None);
    assert_eq!(report.subgroup_count, 30);
    assert_eq!(report.rank, 2);
    let report = context("heisenberg:3").report().unwrap();
    assert_eq!(report.omega1_center_order, Some(3));
    assert_eq!(report.nilpotency_class, Some(2));
}
