use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stratcx_core::folan::{build_complex, fixture_pencil, rank_profile, theorem1_check, Variant};
use stratcx_core::pforms::{basis, delta_injectivity_rank, delta_matrix, integrable, TwistedForm};

fn unit(r: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; r + 1];
    e[i] = 1;
    e
}

fn quadric_pencils(r: usize) -> Vec<TwistedForm> {
    let exp = |entries: &[(usize, u32)]| {
        let mut e = vec![0; r + 1];
        for &(i, a) in entries {
            e[i] += a;
        }
        e
    };
    vec![
        fixture_pencil(r, &unit(r, 0), &unit(r, 1), 1, 1).unwrap(),
        fixture_pencil(r, &unit(r, 2), &unit(r, r), 1, 1).unwrap(),
        fixture_pencil(r, &exp(&[(0, 2)]), &exp(&[(1, 1), (2, 1)]), 2, 2).unwrap(),
        fixture_pencil(r, &unit(r, 0), &exp(&[(1, 1), (3, 1)]), 1, 2).unwrap(),
    ]
}

#[test]
fn pencils_give_complexes_at_r5() {
    for w in quadric_pencils(5).into_iter().filter(|w| w.twist() == 2) {
        let check = theorem1_check(&w, w.twist()).unwrap();
        assert!(check.integrable && check.membership(), "{w}");
    }
}

#[test]
fn random_forms_agree_at_r5() {
    let b = basis(5, 1, 2);
    let mut non_integrable = 0;
    for seed in 0..24 {
        let w = b.random_element_seeded(seed, 3);
        let check = theorem1_check(&w, 2).unwrap();
        assert!(check.agrees(), "seed {seed}");
        non_integrable += usize::from(!check.integrable);
    }
    assert!(non_integrable >= 20);
}

#[test]
fn integrable_forms_give_complexes_at_r3() {
    for w in quadric_pencils(3) {
        for variant in Variant::ALL {
            assert!(build_complex(&w, w.twist(), variant).unwrap().is_complex());
        }
    }
}

#[test]
fn delta_squared_vanishes_exactly_on_integrable_forms() {
    let b = basis(5, 1, 2);
    let mut forms = quadric_pencils(5);
    forms.extend((0..4).map(|s| b.random_element_seeded(100 + s, 2)));
    for w in forms {
        let e = w.twist();
        let first = delta_matrix(&w, 1, e).unwrap();
        let second = delta_matrix(&w, 3, e + w.twist()).unwrap();
        assert_eq!((&second * &first).is_zero(), integrable(&w).unwrap(), "{w}");
    }
}

#[test]
fn injectivity_of_delta() {
    for (r, d, k, e) in [(3, 2, 1, 3), (4, 2, 1, 3), (4, 3, 1, 4)] {
        assert_eq!(delta_injectivity_rank(r, d, k, e).unwrap(), basis(r, 1, d).dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pencils_are_integrable(
        f in proptest::collection::vec(0u32..=2, 5),
        g in proptest::collection::vec(0u32..=2, 5),
    ) {
        let (p, q) = (f.iter().sum::<u32>(), g.iter().sum::<u32>());
        prop_assume!(p > 0 && q > 0);
        let w = fixture_pencil(4, &f, &g, p, q).unwrap();
        prop_assert!(integrable(&w).unwrap());
    }

    #[test]
    fn matrices_are_linear_in_the_form(seed in any::<u64>()) {
        let b = basis(5, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = b.random_combination(&mut rng, 3, 3);
        let v = b.random_combination(&mut rng, 3, 3);
        let sum = build_complex(&u.add(&v).unwrap(), 2, Variant::Plus).unwrap();
        let cu = build_complex(&u, 2, Variant::Plus).unwrap();
        let cv = build_complex(&v, 2, Variant::Plus).unwrap();
        for ((s, a), c) in sum.matrices().iter().zip(cu.matrices()).zip(cv.matrices()) {
            prop_assert_eq!(s, &(a + c));
        }
    }

    #[test]
    fn profiles_are_admissible(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let mut g = unit(5, j);
        g[k] += 1;
        let w = fixture_pencil(5, &unit(5, i), &g, 1, 2).unwrap();
        let report = rank_profile(&w, 2, Variant::Minus).unwrap();
        prop_assert_eq!(report.d, 3);
        prop_assert!(report.admissible);
        prop_assert!(!report.dominating_maximal.is_empty());
    }
}
