use crate::table::{Elem, GroupTable, Subgroup};

pub fn center(t: &GroupTable, h: &Subgroup) -> Subgroup {
    t.centralizer(h, h)
}

pub fn derived_subgroup(t: &GroupTable, h: &Subgroup) -> Subgroup {
    let gens = h.gens();
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(t.commutator(a, b));
        }
    }
    t.normal_closure(&seeds, h)
}

/// `[k, h]` for `k` normal in `h`.
pub fn commutator_subgroup(t: &GroupTable, k: &Subgroup, h: &Subgroup) -> Subgroup {
    let seeds: Vec<Elem> = k
        .gens()
        .iter()
        .flat_map(|&x| h.gens().iter().map(move |&s| (x, s)))
        .map(|(x, s)| t.commutator(x, s))
        .collect();
    t.normal_closure(&seeds, h)
}

/// `h = γ1 ≥ γ2 ≥ …`, ending at the first repeated term.
pub fn lower_central_series(t: &GroupTable, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(t, last, h);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `h ≥ h' ≥ h'' ≥ …`, ending at the first repeated term.
pub fn derived_series(t: &GroupTable, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(t, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Class `c` with `γ_{c+1} = 1`; `None` if not nilpotent. The trivial group
/// has class 0.
pub fn nilpotency_class(t: &GroupTable, h: &Subgroup) -> Option<u32> {
    if h.is_trivial() {
        return Some(0);
    }
    if t.is_abelian(h) {
        return Some(1);
    }
    let lcs = lower_central_series(t, h);
    lcs.last()
        .unwrap()
        .is_trivial()
        .then(|| lcs.len() as u32 - 1)
}

pub fn derived_length(t: &GroupTable, h: &Subgroup) -> Option<u32> {
    if h.is_trivial() {
        return Some(0);
    }
    if t.is_abelian(h) {
        return Some(1);
    }
    let ds = derived_series(t, h);
    ds.last().unwrap().is_trivial().then(|| ds.len() as u32 - 1)
}

pub fn is_solvable(t: &GroupTable, h: &Subgroup) -> bool {
    derived_length(t, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Guards;
    use crate::perm::spec::named_group;

    fn table(s: &str) -> GroupTable {
        let g = Guards::default();
        GroupTable::new(&named_group(s, &g).unwrap(), &g).unwrap()
    }

    #[test]
    fn s3_series() {
        let t = table("sym:3");
        let g = t.whole();
        assert!(center(&t, &g).is_trivial());
        assert_eq!(derived_subgroup(&t, &g).order(), 3);
        assert_eq!(nilpotency_class(&t, &g), None);
        assert_eq!(derived_length(&t, &g), Some(2));
    }

    #[test]
    fn s4_and_a5() {
        let t = table("sym:4");
        let orders: Vec<usize> = derived_series(&t, &t.whole())
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let t = table("alt:5");
        assert!(!is_solvable(&t, &t.whole()));
        assert_eq!(derived_subgroup(&t, &t.whole()).order(), 60);
    }

    #[test]
    fn dihedral_16_class() {
        let t = table("dihedral:8");
        let orders: Vec<usize> = lower_central_series(&t, &t.whole())
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(orders, vec![16, 4, 2, 1]);
        assert_eq!(nilpotency_class(&t, &t.whole()), Some(3));
    }
}
