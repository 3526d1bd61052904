use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratmle::disctriple::{algorithm1_scan, pair_from_marked_poly, triple_check, MarkedPoly};
use ratmle::exactalg::rational::{int, rat, Rational};
use ratmle::exactalg::univariate::{normalize_discriminant, sylvester_resultant_cofactor, UniPolyOverRing};
use ratmle::exactalg::{Monomial, SparsePoly};
use ratmle::families::*;
use ratmle::horn::*;

fn minus_binomials() -> Family {
    Family::LinearMultiple {
        shape: Shape::Binomial,
        sign: Sign::Minus,
        bound: 8,
    }
}

#[test]
fn univariate_instance_counts() {
    assert_eq!(Family::Univariate { bound: 17 }.instances().len(), 613);
    let small = Family::Univariate { bound: 3 }.instances();
    assert_eq!(small.len(), 1);
    assert_eq!(small[0].params, vec![1, 2, 3]);
}

#[test]
fn linear_multiple_instance_counts() {
    let per_degree = |f: Family| -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for i in f.instances() {
            let (_, d) = f.build(&i).unwrap();
            *m.entry(d.total_degree().unwrap()).or_insert(0) += 1;
        }
        m
    };
    let b = per_degree(minus_binomials());
    assert_eq!(b.values().copied().collect::<Vec<_>>(), vec![6, 21, 46, 81, 126, 181, 246, 321]);
    assert_eq!(b.keys().copied().collect::<Vec<_>>(), (2..=9).collect::<Vec<_>>());
    for sign in [Sign::Plus, Sign::Minus] {
        let t = per_degree(Family::LinearMultiple {
            shape: Shape::Trinomial,
            sign,
            bound: 3,
        });
        assert_eq!(t.values().copied().collect::<Vec<_>>(), vec![4, 104, 684]);
    }
}

#[test]
fn monomials_in_graded_lex_order() {
    let m = monomials_of_degree(3, 2);
    let exps: Vec<Vec<i32>> = m.iter().map(|x| x.0.clone()).collect();
    assert_eq!(
        exps,
        vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
    );
}

#[test]
fn smallest_univariate_instance_is_the_cubic() {
    let f = Family::Univariate { bound: 3 };
    let inst = &f.instances()[0];
    let (a, d) = f.build(inst).unwrap();
    assert_eq!(d.len(), 5);
    assert_eq!(d.coefficient(&Monomial(vec![2, 0, 0, 2])), int(27));
    let out = algorithm1_scan(&a, &d).unwrap();
    for k in 0..d.len() {
        let t = triple_check(&a, &MarkedPoly::from_index(d.clone(), k).unwrap());
        let passes = out.records.iter().any(|r| r.term_index == k);
        // triple_check needs H already reduced; the scan reduces first
        if t.verified() {
            assert!(passes);
        }
    }
    assert_eq!(scan_instance(&f, inst).unwrap().terms, 5);
}

#[test]
fn one_four_seven_has_nine_terms() {
    assert_eq!(univariate_discriminant(1, 4, 7).unwrap().len(), 9);
}

#[test]
fn two_quadratics_match_cofactor_expansion() {
    let r = trinomial_resultant(1, 2, 1, 2).unwrap();
    let f = UniPolyOverRing::sparse_generic(6, &[0, 1, 2], &[0, 1, 2]).unwrap();
    let g = UniPolyOverRing::sparse_generic(6, &[3, 4, 5], &[0, 1, 2]).unwrap();
    let oracle = normalize_discriminant(&sylvester_resultant_cofactor(&f, &g).unwrap());
    assert_eq!(r, oracle);
    assert_eq!(r.len(), 7);
}

#[test]
fn percentages_round_to_two_decimals() {
    assert_eq!(percentage(123, 7927), "1.55");
    assert_eq!(percentage(8, 8678), "0.09");
    assert_eq!(percentage(12, 8212), "0.15");
    assert_eq!(percentage(93, 2665), "3.49");
    assert_eq!(percentage(0, 10), "0.00");
    assert_eq!(percentage(1, 8), "12.50");
}

#[test]
fn scan_is_independent_of_workers() {
    let f = Family::Univariate { bound: 7 };
    let one = run_scan(&f, &ScanOptions { jobs: Some(1), ..Default::default() }).unwrap();
    let four = run_scan(&f, &ScanOptions { jobs: Some(4), ..Default::default() }).unwrap();
    assert_eq!(one.records, four.records);
    assert_eq!(one.totals, four.totals);
    let sum: usize = one.records.iter().map(|r| r.terms).sum();
    assert_eq!(one.totals.terms, sum);
}

#[test]
fn checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.ndjson");
    let f = Family::Univariate { bound: 8 };
    let partial = run_scan(
        &f,
        &ScanOptions {
            checkpoint: Some(path.clone()),
            limit: Some(20),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(partial.records.len(), 20);
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, 20);
    let full = run_scan(
        &f,
        &ScanOptions {
            checkpoint: Some(path.clone()),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(full, ScanReport { elapsed_ms: full.elapsed_ms, ..run_scan(&f, &ScanOptions::default()).unwrap() });
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), full.records.len());
}

#[test]
fn report_output_formats() {
    let r = run_scan(&Family::Univariate { bound: 5 }, &ScanOptions::default()).unwrap();
    let text = r.to_ndjson();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), r.records.len() + 1);
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["totals"]["terms"], r.totals.terms);
    let table = ScanReport::to_table(&[r]);
    assert!(table.starts_with("Family"));
    assert!(table.lines().nth(2).unwrap().starts_with("univariate"));
}

#[test]
fn discrepancy_is_flagged() {
    let f = Family::LinearMultiple {
        shape: Shape::Trinomial,
        sign: Sign::Minus,
        bound: 3,
    };
    let r = run_scan(&f, &ScanOptions::default()).unwrap();
    assert_eq!((r.totals.terms, r.totals.passing), (8678, 8));
    assert_eq!(r.flags, vec!["percentage: computed 0.09%, published 0.01%".to_string()]);
}

/// Univariate instances up to 8, with each discriminant recomputed by
/// cofactor expansion of the Sylvester matrix.
#[test]
fn bound_eight_cross_checked_by_cofactor_expansion() {
    let f = Family::Univariate { bound: 8 };
    let report = run_scan(&f, &ScanOptions::default()).unwrap();
    // C(8,3) triples less the four with all entries even
    assert_eq!(report.records.len(), 52);
    for inst in f.instances() {
        let p: Vec<usize> = inst.params.iter().map(|&x| x as usize).collect();
        let u = UniPolyOverRing::sparse_generic(4, &[0, 1, 2, 3], &[0, p[0], p[1], p[2]]).unwrap();
        let oracle = normalize_discriminant(&sylvester_resultant_cofactor(&u, &u.derivative().unwrap()).unwrap());
        let (_, d) = f.build(&inst).unwrap();
        assert_eq!(d, oracle, "{}", inst.label);
        assert_eq!(report.records[inst.index].terms, d.len());
    }
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rat(rng.gen_range(1..50), rng.gen_range(1..6))).collect())
        .collect()
}

#[test]
fn minus_binomial_models_coincide() {
    let f = minus_binomials();
    let mut pairs = Vec::new();
    for inst in f.instances() {
        let (a, d) = f.build(&inst).unwrap();
        if d.total_degree() != Some(2) {
            continue;
        }
        for r in algorithm1_scan(&a, &d).unwrap().records {
            pairs.push(r.pair);
        }
    }
    assert_eq!(pairs.len(), 12);
    for p in &pairs {
        assert!(horn_pair_check(&p.h, &p.lambda).horn);
        assert!(horn_pair_equal(&pairs[0], p, None).unwrap());
    }
    // 2x2 minors of [[p0, p1, p2], [p0+p1+p2, p3, p4]] under some labelling
    let points = sample_points(5, 10, 5);
    let images: Vec<Vec<Rational>> = points.iter().map(|u| horn_map_eval(&pairs[0], u).unwrap()).collect();
    let minors_vanish = |q: &[Rational]| {
        let top = [q[0].clone(), q[1].clone(), q[2].clone()];
        let bottom = [&q[0] + &q[1] + &q[2], q[3].clone(), q[4].clone()];
        (0..3).all(|i| (i + 1..3).all(|j| &top[i] * &bottom[j] == &top[j] * &bottom[i]))
    };
    let found = permutations(5).into_iter().any(|perm| {
        images.iter().all(|p| {
            let q: Vec<Rational> = perm.iter().map(|&k| p[k].clone()).collect();
            minors_vanish(&q)
        })
    });
    assert!(found);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn multinomial_pairs() {
    let m = multinomial_marked_poly(2, 2).unwrap();
    assert_eq!(
        m.delta(),
        &SparsePoly::from_terms(
            3,
            [
                (int(1), Monomial(vec![2, 0, 0])),
                (int(-1), Monomial(vec![0, 2, 0])),
                (int(-2), Monomial(vec![0, 1, 1])),
                (int(-1), Monomial(vec![0, 0, 2])),
            ]
        )
    );
    let p = pair_from_marked_poly(&m).unwrap();
    assert_eq!(p.lambda.values(), &[int(1), int(2), int(1)]);
    assert!(friendliness_check(&p.h, &p.lambda));
    for (k, rolls) in [(3usize, 2u32), (2, 3), (3, 3), (4, 2)] {
        let r = rolls as usize;
        let p = pair_from_marked_poly(&multinomial_marked_poly(k, rolls).unwrap()).unwrap();
        assert!(p.h.column(0)[0] == -(rolls as i64));
        assert!(horn_pair_check(&p.h, &p.lambda).horn, "k={k} m={rolls}");
        let columns = (1..=k + r - 1).product::<usize>() / (1..=r).product::<usize>() / (1..k).product::<usize>();
        assert_eq!(p.h.ncols(), columns);
    }
}
