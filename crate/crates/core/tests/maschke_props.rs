mod common;

use common::{all_vectors, random_module};
use grouptk_core::dichotomy::{check_decomposition, maschke_decomposition, FpHModule};
use grouptk_core::fp::FpMatrix;
use grouptk_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn module(seed: u64) -> FpHModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_module(&mut rng);
    FpHModule::new(m.p, m.factors, m.generators).unwrap()
}

/// Counts vectors fixed by every generator, and vectors killed by the sum
/// over the whole acting group, by listing `F_p^r`.
fn brute_counts(m: &FpHModule) -> Option<(usize, usize)> {
    let vectors = all_vectors(m.p(), m.dim(), 20_000)?;
    let group = m.group_matrices();
    let fixed = vectors
        .iter()
        .filter(|v| m.generators().iter().all(|g| g.apply(v) == **v))
        .count();
    let killed = vectors
        .iter()
        .filter(|v| {
            let mut sum = vec![0u64; v.len()];
            for g in &group {
                for (s, x) in sum.iter_mut().zip(g.apply(v)) {
                    *s = (*s + x) % m.p();
                }
            }
            sum.iter().all(|&x| x == 0)
        })
        .count();
    Some((fixed, killed))
}

#[test]
fn documented_examples() {
    let m = FpHModule::new(5, vec![3], vec![FpMatrix::identity(5, 4)]).unwrap();
    let d = maschke_decomposition(&m).unwrap();
    assert_eq!((d.fixed.len(), d.complement.len()), (4, 0));

    let neg = FpMatrix::from_rows(3, &[vec![2]]);
    let m = FpHModule::new(3, vec![2], vec![neg]).unwrap();
    let d = maschke_decomposition(&m).unwrap();
    assert_eq!((d.fixed.len(), d.complement.len()), (0, 1));

    let cycle = FpMatrix::from_rows(2, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let m = FpHModule::new(2, vec![3], vec![cycle]).unwrap();
    let d = maschke_decomposition(&m).unwrap();
    assert_eq!(d.fixed, vec![vec![1, 1, 1]]);
    assert_eq!(d.complement.len(), 2);
    assert!(check_decomposition(&m, &d).holds());
}

#[test]
fn coprimality_is_enforced() {
    let swap = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]);
    let m = FpHModule::new(2, vec![2], vec![swap]).unwrap();
    assert_eq!(
        maschke_decomposition(&m).unwrap_err(),
        Error::CoprimalityViolation { p: 2, order: 2 }
    );
}

#[test]
fn dimensions_match_vector_counts() {
    let mut compared = 0;
    for seed in 0..120 {
        let m = module(seed);
        let d = maschke_decomposition(&m).unwrap();
        if let Some((fixed, killed)) = brute_counts(&m) {
            let p = m.p() as usize;
            assert_eq!(p.pow(d.fixed.len() as u32), fixed, "seed {seed}");
            assert_eq!(p.pow(d.complement.len() as u32), killed, "seed {seed}");
            compared += 1;
        }
    }
    assert!(compared > 40);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_instances_decompose(seed in any::<u64>()) {
        let m = module(seed);
        let d = maschke_decomposition(&m).unwrap();
        let check = check_decomposition(&m, &d);
        prop_assert!(check.holds(), "{:?}", check);
        prop_assert_eq!(check.fixed_dim + check.complement_dim, m.dim());
    }
}
