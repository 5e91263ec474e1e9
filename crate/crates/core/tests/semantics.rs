mod common;

use common::{arb_formula, interned_all, pure_all, MAX_VARS};
use proptest::prelude::*;
use robdd::diagram::{sat_count, size};
use robdd::interned::structural_eq;
use robdd::oracle::{bdd_truth_table, formula_truth_table};
use robdd::pure;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pure_matches_oracle(f in arb_formula()) {
        let (roots, store) = pure_all(std::slice::from_ref(&f));
        prop_assert_eq!(
            bdd_truth_table(&store, roots[0], MAX_VARS).unwrap(),
            formula_truth_table(&f, MAX_VARS).unwrap()
        );
    }

    #[test]
    fn interned_matches_oracle(f in arb_formula()) {
        let (roots, m) = interned_all(std::slice::from_ref(&f));
        prop_assert_eq!(
            bdd_truth_table(&m, roots[0], MAX_VARS).unwrap(),
            formula_truth_table(&f, MAX_VARS).unwrap()
        );
    }

    #[test]
    fn equality_iff_same_function(f in arb_formula(), g in arb_formula()) {
        let same = formula_truth_table(&f, MAX_VARS).unwrap() == formula_truth_table(&g, MAX_VARS).unwrap();
        let pair = [f, g];
        let (p, _) = pure_all(&pair);
        prop_assert_eq!(pure::eq(p[0], p[1]), same);
        let (h, _) = interned_all(&pair);
        prop_assert_eq!(structural_eq(h[0], h[1]), same);
    }

    #[test]
    fn rewritten_formula_gets_same_root(f in arb_formula(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = robdd::frontend::families::random_equivalent(&mut rng, &f);
        let pair = [f, g];
        let (p, _) = pure_all(&pair);
        prop_assert_eq!(p[0], p[1]);
        let (h, _) = interned_all(&pair);
        prop_assert_eq!(h[0], h[1]);
    }

    #[test]
    fn sat_count_matches_brute_force(f in arb_formula()) {
        let expected = formula_truth_table(&f, MAX_VARS).unwrap().count_ones() as u128;
        let (p, store) = pure_all(std::slice::from_ref(&f));
        prop_assert_eq!(sat_count(&store, p[0], MAX_VARS).unwrap(), expected);
        let (h, m) = interned_all(std::slice::from_ref(&f));
        prop_assert_eq!(sat_count(&m, h[0], MAX_VARS).unwrap(), expected);
    }

    #[test]
    fn backends_agree_on_shape_and_counters(fs in prop::collection::vec(arb_formula(), 1..5)) {
        let (p, store) = pure_all(&fs);
        let (h, m) = interned_all(&fs);
        prop_assert_eq!(store.stats(), m.stats());
        prop_assert_eq!(store.len() + 2, m.pool_len());
        for (a, b) in p.iter().zip(&h) {
            prop_assert_eq!(size(&store, *a).unwrap(), size(&m, *b).unwrap());
        }
    }
}

#[test]
fn sat_count_of_constants_and_wide_spaces() {
    let m = robdd::interned::Manager::new();
    assert_eq!(sat_count(&m, m.leaf_true(), 0).unwrap(), 1);
    assert_eq!(sat_count(&m, m.leaf_true(), 100).unwrap(), 1u128 << 100);
    assert_eq!(sat_count(&m, m.leaf_false(), 100).unwrap(), 0);
    assert!(sat_count(&m, m.leaf_true(), 128).is_err());
}

#[test]
fn queens_model_counts_match_enumeration() {
    use robdd::frontend::{compile_interned, families};
    use robdd::oracle::queens_solutions;
    for n in 1..=6 {
        let mut m = robdd::interned::Manager::new();
        let r = compile_interned(&families::queens(n), &mut m).unwrap();
        let count = sat_count(&m, r, families::queens_vars(n)).unwrap();
        assert_eq!(count, queens_solutions(n) as u128, "n = {n}");
    }
}

#[test]
fn pigeonhole_is_unsatisfiable() {
    use robdd::frontend::{compile_pure, families};
    for holes in 1..=5 {
        let f = families::pigeonhole(holes);
        let fuel = pure::Fuel::for_vars(f.max_var());
        let (r, _) = compile_pure(&f, pure::Store::new(), fuel).unwrap();
        assert_eq!(r, robdd::NodeRef::False, "holes = {holes}");
    }
}
