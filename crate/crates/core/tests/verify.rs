use std::cmp::Ordering;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratmle::exactalg::rational::{int, rat, Rational};
use ratmle::horn::*;
use ratmle::stagedtree::builders::{coin, four_chain, independence, star};
use ratmle::stagedtree::{tree_horn_reduced, tree_mle, tree_parametrize};
use ratmle::verify::*;
use ratmle::Error;

fn eq4_pair() -> HornPair {
    let h = HornMatrix::new(vec![
        vec![-1, -1, -2, -2],
        vec![1, 0, 3, 2],
        vec![1, 3, 0, 2],
        vec![-1, -2, -1, -2],
    ])
    .unwrap();
    let l = CoefficientVector::new(vec![rat(2, 3), rat(-4, 27), rat(-4, 27), rat(1, 27)]).unwrap();
    HornPair::new(h, l).unwrap()
}

fn saturated(n: usize) -> HornPair {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rows.push(vec![-1; n]);
    HornPair::new(HornMatrix::new(rows).unwrap(), CoefficientVector::new(vec![int(-1); n]).unwrap()).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn positive_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(1..100), rng.gen_range(1..8))).collect()
}

/// `∏ p_i^{u_i}` for integer `u`, evaluated without any shortcut.
fn likelihood(p: &[Rational], u: &[i64]) -> Rational {
    p.iter().zip(u).fold(int(1), |acc, (x, &e)| (0..e).fold(acc, |a, _| a * x))
}

#[test]
fn equal_vectors_compare_equal() {
    let p = vec![rat(1, 3), rat(2, 3)];
    assert_eq!(log_likelihood_compare(&p, &p, &ints(&[4, 5])).unwrap(), Ordering::Equal);
}

#[test]
fn coin_estimate_beats_the_fair_coin() {
    let t = coin();
    let u = ints(&[1, 1, 1]);
    let (_, p) = tree_mle(&t, &u).unwrap();
    let q = tree_parametrize(&t, &[rat(1, 2), rat(1, 2)]).unwrap();
    assert_eq!(q, vec![rat(1, 4), rat(1, 4), rat(1, 2)]);
    assert_eq!(log_likelihood_compare(&p, &q, &u).unwrap(), Ordering::Greater);
    assert!(likelihood(&p, &[1, 1, 1]) > likelihood(&q, &[1, 1, 1]));
}

#[test]
fn rational_counts_are_scaled_before_comparing() {
    let p = vec![rat(1, 2), rat(1, 2)];
    let q = vec![rat(2, 3), rat(1, 3)];
    let u = vec![rat(1, 2), rat(1, 4)];
    let expected = likelihood(&p, &[2, 1]).cmp(&likelihood(&q, &[2, 1]));
    assert_eq!(log_likelihood_compare(&p, &q, &u).unwrap(), expected);
    assert_eq!(expected, Ordering::Less);
}

#[test]
fn saturated_estimate_dominates_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = ints(&[3, 1, 4, 1, 5]);
    let total: Rational = u.iter().sum();
    let p: Vec<Rational> = u.iter().map(|x| x / &total).collect();
    assert_eq!(horn_map_eval(&saturated(5), &u).unwrap(), p);
    for _ in 0..200 {
        let w = positive_point(&mut rng, 5);
        let s: Rational = w.iter().sum();
        let q: Vec<Rational> = w.iter().map(|x| x / &s).collect();
        let ord = log_likelihood_compare(&p, &q, &u).unwrap();
        assert!(ord == Ordering::Greater || (ord == Ordering::Equal && q == p));
    }
}

#[test]
fn gradient_vanishes_at_the_data() {
    let u = ints(&[1, 1, 1, 1]);
    let g = critical_gradient(&eq4_pair(), &u, &u).unwrap();
    assert!(g.iter().all(|x| *x == int(0)));
}

#[test]
fn gradient_is_nonzero_away_from_the_data() {
    let p = eq4_pair();
    let u = ints(&[1, 1, 1, 1]);
    let v = ints(&[1, 2, 3, 4]);
    let g = critical_gradient(&p, &u, &v).unwrap();
    let hu = p.h.apply(&u).unwrap();
    let hv = p.h.apply(&v).unwrap();
    let by_hand: Vec<Rational> = (0..4)
        .map(|l| (0..4).map(|j| int(p.h.row(j)[l]) * &hu[j] / &hv[j]).sum())
        .collect();
    assert_eq!(g, by_hand);
    assert!(g.iter().any(|x| *x != int(0)));
}

#[test]
fn gradient_vanishes_on_the_fiber_of_the_data() {
    let p = eq4_pair();
    let u = ints(&[1, 1, 1, 1]);
    let v = ints(&[1, 1, 1, 2]);
    let hu = p.h.apply(&u).unwrap();
    let hv = p.h.apply(&v).unwrap();
    assert!(hu.iter().zip(&hv).all(|(a, b)| b * int(3) == a * int(4)));
    assert_eq!(horn_map_eval(&p, &v).unwrap(), horn_map_eval(&p, &u).unwrap());
    assert!(critical_gradient(&p, &u, &v).unwrap().iter().all(|x| *x == int(0)));
}

#[test]
fn gradient_pole() {
    let h = HornMatrix::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let p = HornPair::new(h, CoefficientVector::new(ints(&[-1, -1])).unwrap()).unwrap();
    let err = critical_gradient(&p, &ints(&[1, 1]), &[int(1), int(-1)]).unwrap_err();
    assert!(matches!(err, Error::PoleAtInput { row: 2 }));
}

#[test]
fn numeric_gradient_is_close_to_the_exact_one() {
    let p = eq4_pair();
    let u = ints(&[1, 1, 1, 1]);
    let v = ints(&[1, 1, 1, 2]);
    let exact = critical_gradient(&p, &u, &v).unwrap();
    let approx = numeric_gradient(&p, &u, &v).unwrap();
    for (e, a) in exact.iter().zip(&approx) {
        let e = num_traits::ToPrimitive::to_f64(e).unwrap();
        assert!((e - a).abs() < 1e-4, "{e} vs {a}");
    }
}

#[test]
fn eq4_idempotence_at_ones() {
    let p = eq4_pair();
    let u = ints(&[1, 1, 1, 1]);
    assert_eq!(horn_map_eval(&p, &u).unwrap(), vec![rat(2, 3), rat(4, 27), rat(4, 27), rat(1, 27)]);
    assert!(mle_idempotence_check(&p, &u).unwrap());
}

#[test]
fn eq4_image_satisfies_its_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let u = positive_point(&mut rng, 4);
        let q = horn_map_eval(&eq4_pair(), &u).unwrap();
        let s: Rational = q.iter().sum();
        assert_eq!(int(9) * &q[1] * &q[2], int(8) * &q[0] * &q[3]);
        assert_eq!(&q[0] * &q[0], int(12) * s * &q[3]);
    }
}

#[test]
fn coin_idempotence_over_100_trials() {
    let r = verify_model(&coin(), None, 5, 100, 0);
    let idem = r.checks.iter().find(|c| c.name == "idempotence").unwrap();
    assert_eq!((idem.trials, idem.passed), (100, 100));
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn trees_pass_every_check() {
    for t in [coin(), star(3), independence(2, 3), four_chain()] {
        let r = verify_tree(&t, 17, 20, 200).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.checks.len(), 5);
        assert!(r.checks.iter().all(|c| c.passed == 20));
    }
}

#[test]
fn eq4_passes_every_check() {
    let p = eq4_pair();
    let r = verify_model(&p, Some(&p), 2, 25, 200);
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn wrong_estimator_is_caught() {
    struct Uniform;
    impl Estimator for Uniform {
        fn states(&self) -> usize {
            3
        }
        fn estimate(&self, u: &[Rational]) -> ratmle::Result<Vec<Rational>> {
            Ok(vec![rat(1, 3); u.len()])
        }
    }
    let r = verify_model(&Uniform, Some(&tree_horn_reduced(&coin()).unwrap()), 1, 10, 5);
    assert!(!r.ok());
    let agree = r.checks.iter().find(|c| c.name == "agrees_with_horn_map").unwrap();
    assert!(agree.passed < 10);
}

#[test]
fn report_is_reproducible_and_serializes() {
    let a = verify_tree(&star(2), 99, 8, 10).unwrap();
    let b = verify_tree(&star(2), 99, 8, 10).unwrap();
    assert_eq!(a, b);
    let v = serde_json::to_value(&a).unwrap();
    assert_eq!(v["seed"], 99);
    assert!(v["checks"].is_array() && v["failures"].is_array());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gradient_zero_at_scaled_data(u in prop::collection::vec(1i64..50, 4), c in 1i64..20, d in 1i64..20) {
        let u = ints(&u);
        let v: Vec<Rational> = u.iter().map(|x| x * rat(c, d)).collect();
        let g = critical_gradient(&eq4_pair(), &u, &v).unwrap();
        prop_assert!(g.iter().all(|x| *x == int(0)));
        let chain = tree_horn_reduced(&four_chain()).unwrap();
        let w: Vec<Rational> = (0..16).map(|i| u[i % 4].clone() + int(i as i64)).collect();
        let g = critical_gradient(&chain, &w, &w).unwrap();
        prop_assert!(g.iter().all(|x| *x == int(0)));
    }

    #[test]
    fn coin_estimate_is_idempotent(u in prop::collection::vec(1i64..1000, 3)) {
        prop_assert!(mle_idempotence_check(&coin(), &ints(&u)).unwrap());
    }
}
