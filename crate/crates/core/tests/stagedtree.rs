use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratmle::exactalg::rational::{int, rat, Rational};
use ratmle::horn::*;
use ratmle::stagedtree::builders::{coin, four_chain, independence, mirror_coin, star};
use ratmle::stagedtree::*;
use ratmle::Error;

/// The matrix printed next to the 4-chain tree, one row per label.
fn figure_rows() -> Vec<(&'static str, &'static str)> {
    vec![
        ("s0", "1111111100000000"),
        ("s1", "0000000011111111"),
        ("f1", "----------------"),
        ("s2", "1111000000000000"),
        ("s3", "0000111100000000"),
        ("f2", "--------00000000"),
        ("s4", "0000000011110000"),
        ("s5", "0000000000001111"),
        ("f3", "00000000--------"),
        ("s6", "1100000011000000"),
        ("s7", "0011000000110000"),
        ("f4", "----0000----0000"),
        ("s8", "0000110000001100"),
        ("s9", "0000001100000011"),
        ("f5", "0000----0000----"),
        ("s10", "1000100010001000"),
        ("s11", "0100010001000100"),
        ("f6", "--00--00--00--00"),
        ("s12", "0010001000100010"),
        ("s13", "0001000100010001"),
        ("f7", "00--00--00--00--"),
    ]
}

fn decode(row: &str) -> Vec<i64> {
    row.chars()
        .map(|c| match c {
            '1' => 1,
            '-' => -1,
            _ => 0,
        })
        .collect()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn random_counts(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    use rand::Rng;
    (0..n).map(|_| rat(rng.gen_range(1..40), rng.gen_range(1..5))).collect()
}

fn row_by_label<'a>(h: &'a HornMatrix, label: &str) -> &'a [i64] {
    let i = h.labels().unwrap().iter().position(|l| l == label).unwrap();
    h.row(i)
}

#[test]
fn four_chain_horn_matrix_matches_figure() {
    let t = four_chain();
    let (h, l) = tree_horn(&t);
    assert_eq!((h.nrows(), h.ncols()), (21, 16));
    let expected_order: Vec<String> = (0..14).map(|i| format!("s{i}")).chain((1..=7).map(|i| format!("f{i}"))).collect();
    assert_eq!(h.labels().unwrap(), expected_order.as_slice());
    for (label, row) in figure_rows() {
        assert_eq!(row_by_label(&h, label), decode(row).as_slice(), "row {label}");
    }
    assert_eq!(l.values(), ints(&[1; 16]).as_slice());
}

#[test]
fn four_chain_florets_and_validation() {
    let t = four_chain();
    assert!(tree_validate(&t.to_json()).is_empty());
    let names: Vec<Vec<&str>> = t
        .florets()
        .iter()
        .map(|f| f.iter().map(|&l| t.labels()[l].as_str()).collect())
        .collect();
    assert_eq!(
        names,
        vec![
            vec!["s0", "s1"],
            vec!["s2", "s3"],
            vec!["s4", "s5"],
            vec!["s6", "s7"],
            vec!["s8", "s9"],
            vec!["s10", "s11"],
            vec!["s12", "s13"],
        ]
    );
}

#[test]
fn overlapping_florets_are_reported() {
    let j: TreeJson = serde_json::from_str(
        r#"{"nodes":["r","a","b","c","d"],
            "edges":[{"from":"r","to":"a","label":"s0"},{"from":"r","to":"b","label":"s1"},
                     {"from":"a","to":"c","label":"s1"},{"from":"a","to":"d","label":"s2"}]}"#,
    )
    .unwrap();
    let v = tree_validate(&j);
    assert!(v.iter().any(|m| m.contains("overlap")), "{v:?}");
    assert!(StagedTree::from_json(&j).is_err());
}

#[test]
fn single_child_and_cycles_are_reported() {
    let j: TreeJson = serde_json::from_str(
        r#"{"nodes":["r","a"],"edges":[{"from":"r","to":"a","label":"s0"}]}"#,
    )
    .unwrap();
    assert!(!tree_validate(&j).is_empty());
}

#[test]
fn four_chain_reduction_deletes_four_rows() {
    let t = four_chain();
    let (h, l) = tree_horn(&t);
    assert!(!horn_pair_check(&h, &l).horn);
    let r = tree_horn_reduced(&t).unwrap();
    let kept: Vec<String> = r.h.labels().unwrap().to_vec();
    assert_eq!(r.h.nrows(), 17);
    for gone in ["s0", "s1", "f2", "f3"] {
        assert!(!kept.iter().any(|k| k.split('+').any(|p| p == gone)), "{gone} in {kept:?}");
    }
    assert!(horn_pair_check(&r.h, &r.lambda).horn);
    // each deleted pair (s, -s) contributes (-1)^{r_j} on its support
    assert_eq!(r.lambda.values(), ints(&[-1; 16]).as_slice());
}

#[test]
fn coin_tree_horn_and_mle() {
    let t = coin();
    let (h, l) = tree_horn(&t);
    assert_eq!(h.rows(), &[vec![2, 1, 0], vec![0, 1, 1], vec![-2, -2, -1]]);
    assert_eq!(l.values(), ints(&[1, 1, -1]).as_slice());
    let (s, p) = tree_mle(&t, &ints(&[1, 1, 1])).unwrap();
    assert_eq!(s, vec![rat(3, 5), rat(2, 5)]);
    assert_eq!(p, vec![rat(9, 25), rat(6, 25), rat(2, 5)]);
    assert_eq!(tree_mle_aggregated(&t, &ints(&[1, 1, 1])).unwrap(), (s, p));
}

#[test]
fn parametrization() {
    let half = rat(1, 2);
    assert_eq!(
        tree_parametrize(&coin(), &[half.clone(), half.clone()]).unwrap(),
        vec![rat(1, 4), rat(1, 4), rat(1, 2)]
    );
    assert!(matches!(
        tree_parametrize(&coin(), &[int(1), int(0)]),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        tree_parametrize(&coin(), &[rat(1, 2), rat(1, 3)]),
        Err(Error::InvalidParameter(_))
    ));
    let p = tree_parametrize(&four_chain(), &vec![half; 14]).unwrap();
    assert_eq!(p, vec![rat(1, 16); 16]);
}

#[test]
fn zero_floret_denominator() {
    let mut u = ints(&[1; 16]);
    for x in &mut u[8..] {
        *x = int(0);
    }
    assert_eq!(tree_mle(&four_chain(), &u).unwrap_err(), Error::ZeroDenominator(2));
    assert!(tree_mle(&coin(), &ints(&[0, 0, 3])).is_ok());
}

#[test]
fn star_tree_is_saturated() {
    let t = star(4);
    let (h, l) = tree_horn(&t);
    assert_eq!(
        h.rows(),
        &[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, -1, -1, -1]
        ]
    );
    assert_eq!(l.values(), ints(&[-1; 4]).as_slice());
    let u = ints(&[3, 1, 4, 2]);
    let (s, p) = tree_mle_aggregated(&t, &u).unwrap();
    let expect: Vec<Rational> = u.iter().map(|x| x / int(10)).collect();
    assert_eq!(s, expect);
    assert_eq!(p, expect);
}

#[test]
fn independence_tree_multiplies_margins() {
    let t = independence(2, 2);
    let u = ints(&[5, 2, 3, 7]);
    let (_, p) = tree_mle(&t, &u).unwrap();
    let n = int(17);
    assert_eq!(p[0], int(7) * int(8) / (&n * &n));
    assert_eq!(p[3], int(10) * int(9) / (&n * &n));
}

#[test]
fn equivalence() {
    assert!(tree_equivalent(&coin(), &coin()).unwrap());
    assert!(tree_equivalent(&coin(), &mirror_coin()).unwrap());
    assert!(!tree_equivalent(&coin(), &star(3)).unwrap());
    assert!(tree_equivalent(&four_chain(), &four_chain()).unwrap());
}

#[test]
fn identifying_middle_florets_gives_independence() {
    let t = identify_florets(&four_chain(), 3, 4).unwrap();
    assert_eq!(t.florets().len(), 6);
    assert!(tree_equivalent(&t, &independence(4, 4)).unwrap());
    assert!(!tree_equivalent(&four_chain(), &independence(4, 4)).unwrap());
}

#[test]
fn identification_rejects_bad_input() {
    let t = four_chain();
    assert!(matches!(identify_florets(&t, 3, 3), Err(Error::InvalidInput(_))));
    let s = independence(3, 2);
    assert_eq!(identify_florets(&s, 0, 1).unwrap_err(), Error::SizeMismatch(3, 2));
}

#[test]
fn identification_block_formula() {
    let t = four_chain();
    let (h, _) = tree_horn(&t);
    let merged = identify_florets(&t, 3, 4).unwrap();
    let (h2, l2) = tree_horn(&merged);
    let add = |a: &str, b: &str| -> Vec<i64> {
        row_by_label(&h, a).iter().zip(row_by_label(&h, b)).map(|(x, y)| x + y).collect()
    };
    assert_eq!(row_by_label(&h2, "s6"), add("s6", "s8").as_slice());
    assert_eq!(row_by_label(&h2, "s7"), add("s7", "s9").as_slice());
    assert_eq!(row_by_label(&h2, "f4"), add("f4", "f5").as_slice());
    for label in ["s0", "s1", "s2", "s3", "s4", "s5", "s10", "s11", "s12", "s13"] {
        assert_eq!(row_by_label(&h2, label), row_by_label(&h, label));
    }
    // florets after f5 shift down by one
    assert_eq!(row_by_label(&h2, "f5"), row_by_label(&h, "f6"));
    assert_eq!(row_by_label(&h2, "f6"), row_by_label(&h, "f7"));
    assert_eq!(h2.nrows(), 18);
    assert_eq!(l2.values(), ints(&[1; 16]).as_slice());
}

#[test]
fn identification_with_explicit_bijection() {
    let t = identify_florets_with(&four_chain(), 3, 4, &[1, 0]).unwrap();
    let (h, _) = tree_horn(&t);
    assert_eq!(row_by_label(&h, "s6"), decode("1100001111000011").as_slice());
    assert!(identify_florets_with(&four_chain(), 3, 4, &[0, 0]).is_err());
}

#[test]
fn marginals() {
    let u = ContingencyTable::new(vec![2, 2, 2, 2], (1..=16).map(int).collect()).unwrap();
    let m = u.marginal(&[0, 2]).unwrap();
    assert_eq!(m.dims(), &[2, 2]);
    // u_{1+0+} sums the entries with first index 1 and third index 0
    let direct: Rational = (0..16)
        .filter(|&k| (k >> 3) & 1 == 1 && (k >> 1) & 1 == 0)
        .map(|k| int(k + 1))
        .sum();
    assert_eq!(m.get(&[1, 0]), &direct);
    assert_eq!(u.marginal(&[0, 1, 2, 3]).unwrap(), u);
    let all = u.marginal(&[]).unwrap();
    assert_eq!(all.counts(), &[int(136)]);
}

#[test]
fn table_json_round_trip() {
    let j: TableJson = serde_json::from_str(r#"{"dims":[2,2],"counts":[1,"2/3",3,4]}"#).unwrap();
    let t = ContingencyTable::from_json(&j).unwrap();
    assert_eq!(t.get(&[0, 1]), &rat(2, 3));
    assert_eq!(ContingencyTable::from_json(&t.to_json()).unwrap(), t);
    let bad: TableJson = serde_json::from_str(r#"{"dims":[2,2],"counts":[1,2,3]}"#).unwrap();
    assert!(ContingencyTable::from_json(&bad).is_err());
}

fn binary_table(seed: u64) -> ContingencyTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ContingencyTable::new(vec![2, 2, 2, 2], random_counts(&mut rng, 16)).unwrap()
}

#[test]
fn star_graph_formula() {
    let g = UndirectedGraph::from_cliques(4, &[vec![0, 3], vec![1, 3], vec![2, 3]]).unwrap();
    let u = binary_table(1);
    let p = decomposable_mle(&g, &u).unwrap();
    let n = u.total();
    let m03 = u.marginal(&[0, 3]).unwrap();
    let m13 = u.marginal(&[1, 3]).unwrap();
    let m23 = u.marginal(&[2, 3]).unwrap();
    let m3 = u.marginal(&[3]).unwrap();
    for k in 0..16 {
        let s = u.state(k);
        let (i, j, kk, l) = (s[0], s[1], s[2], s[3]);
        let want = m03.get(&[i, l]) * m13.get(&[j, l]) * m23.get(&[kk, l])
            / (&n * m3.get(&[l]) * m3.get(&[l]));
        assert_eq!(p.counts()[k], want);
    }
}

#[test]
fn chain_graph_matches_four_chain_tree() {
    let g = UndirectedGraph::from_cliques(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
    for seed in 0..5 {
        let u = binary_table(seed);
        let p = decomposable_mle(&g, &u).unwrap();
        let (_, tree_p) = tree_mle(&four_chain(), u.counts()).unwrap();
        assert_eq!(p.counts(), tree_p.as_slice());
    }
}

#[test]
fn single_edge_graph_is_saturated() {
    let g = UndirectedGraph::new(2, &[(0, 1)]).unwrap();
    let u = ContingencyTable::new(vec![2, 3], ints(&[1, 2, 3, 4, 5, 6])).unwrap();
    let p = decomposable_mle(&g, &u).unwrap();
    let want: Vec<Rational> = (1..=6).map(|k| rat(k, 21)).collect();
    assert_eq!(p.counts(), want.as_slice());
}

#[test]
fn four_cycle_is_not_chordal() {
    let g = UndirectedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert!(!g.is_chordal());
    assert_eq!(decomposable_mle(&g, &binary_table(0)), Err(Error::NotChordal));
}

#[test]
fn dag_rejects_cycles() {
    assert_eq!(DagModel::new(vec![2, 2, 2], &[(0, 1), (1, 2), (2, 0)]), Err(Error::CyclicGraph));
    assert_eq!(DagModel::new(vec![2, 2], &[(0, 0)]), Err(Error::CyclicGraph));
}

#[test]
fn star_dag_matches_star_graph() {
    let d = DagModel::new(vec![2; 4], &[(0, 3), (3, 1), (3, 2)]).unwrap();
    let g = UndirectedGraph::from_cliques(4, &[vec![0, 3], vec![1, 3], vec![2, 3]]).unwrap();
    for seed in 0..5 {
        let u = binary_table(seed);
        assert_eq!(bayes_net_mle(&d, &u).unwrap(), decomposable_mle(&g, &u).unwrap());
        let e = from_bayesian_network(&d).unwrap();
        let (_, p) = tree_mle(&e.tree, &e.leaf_counts(&u)).unwrap();
        assert_eq!(e.to_table(u.dims(), &p).unwrap(), bayes_net_mle(&d, &u).unwrap());
    }
}

#[test]
fn empty_dag_is_independence() {
    let d = DagModel::new(vec![2, 2], &[]).unwrap();
    let u = ContingencyTable::new(vec![2, 2], ints(&[5, 2, 3, 7])).unwrap();
    let p = bayes_net_mle(&d, &u).unwrap();
    assert_eq!(p.get(&[0, 0]), &(int(7) * int(8) / int(289)));
}

#[test]
fn chain_dag_export_is_equivalent_to_four_chain() {
    let d = DagModel::new(vec![2; 4], &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let e = from_bayesian_network(&d).unwrap();
    assert_eq!(e.tree.florets().len(), 7);
    assert!(tree_equivalent(&e.tree, &four_chain()).unwrap());
    let g = UndirectedGraph::from_cliques(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
    let u = binary_table(9);
    let (_, p) = tree_mle(&e.tree, &e.leaf_counts(&u)).unwrap();
    assert_eq!(e.to_table(u.dims(), &p).unwrap(), decomposable_mle(&g, &u).unwrap());
}

#[test]
fn tree_json_round_trip() {
    let t = four_chain();
    let text = serde_json::to_string(&t.to_json()).unwrap();
    let back = StagedTree::parse(&text).unwrap();
    assert_eq!(tree_horn(&back).0, tree_horn(&t).0);
}

fn generated(seed: u64) -> StagedTree {
    random_staged_tree(&mut ChaCha8Rng::seed_from_u64(seed), 4, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_trees_are_valid(seed in any::<u64>()) {
        let t = generated(seed);
        prop_assert!(tree_validate(&t.to_json()).is_empty());
        for (j, p) in t.paths().iter().enumerate() {
            let col: i64 = t.mu().iter().map(|r| r[j]).sum();
            prop_assert_eq!(col, p.len() as i64);
        }
    }

    #[test]
    fn mle_forms_agree_and_are_idempotent(seed in any::<u64>()) {
        let t = generated(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let u = random_counts(&mut rng, t.num_leaves());
        let (s, p) = tree_mle(&t, &u).unwrap();
        prop_assert_eq!(tree_mle_aggregated(&t, &u).unwrap(), (s.clone(), p.clone()));
        prop_assert_eq!(p.iter().sum::<Rational>(), int(1));
        let scaled: Vec<Rational> = p.iter().map(|x| x * int(37)).collect();
        prop_assert_eq!(tree_mle(&t, &scaled).unwrap().1, p.clone());
        prop_assert_eq!(tree_parametrize(&t, &s).unwrap(), p);
    }

    #[test]
    fn tree_pairs_are_friendly_and_reduce_to_horn_pairs(seed in any::<u64>()) {
        let t = generated(seed);
        let (h, l) = tree_horn(&t);
        prop_assert!(friendliness_check(&h, &l));
        let r = tree_horn_reduced(&t).unwrap();
        prop_assert!(horn_pair_check(&r.h, &r.lambda).horn);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        for _ in 0..3 {
            let u = random_counts(&mut rng, t.num_leaves());
            let (_, p) = tree_mle(&t, &u).unwrap();
            prop_assert_eq!(horn_map_eval(&r, &u).unwrap(), p);
        }
    }

    #[test]
    fn parametrization_sums_to_one(seed in any::<u64>()) {
        use rand::Rng;
        let t = generated(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = vec![int(0); t.labels().len()];
        for f in t.florets() {
            let w: Vec<i64> = f.iter().map(|_| rng.gen_range(1..9)).collect();
            let total: i64 = w.iter().sum();
            for (&l, &x) in f.iter().zip(&w) {
                s[l] = rat(x, total);
            }
        }
        prop_assert_eq!(tree_parametrize(&t, &s).unwrap().iter().sum::<Rational>(), int(1));
    }
}

#[test]
fn wrong_sign_breaks_friendliness_on_large_trees() {
    let mut checked = 0;
    for seed in 0..200 {
        let t = generated(seed);
        let (h, l) = tree_horn(&t);
        if friendliness_check_with(&h, &l).1 != IdentityMethod::RandomPoints {
            continue;
        }
        let mut v = l.values().to_vec();
        v[0] = -v[0].clone();
        assert!(!friendliness_check(&h, &CoefficientVector::new(v).unwrap()));
        checked += 1;
        if checked == 5 {
            break;
        }
    }
    assert_eq!(checked, 5);
}

#[test]
fn four_chain_pair_is_friendly() {
    let (h, l) = tree_horn(&four_chain());
    assert_eq!(friendliness_check_with(&h, &l), (true, IdentityMethod::Expansion));
}
