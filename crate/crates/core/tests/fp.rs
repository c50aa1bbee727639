use halftwist::bn_tilde::pure_subgroup_generators;
use halftwist::fp::snf::smith_normal_form_i64;
use halftwist::fp::{
    abelianization, reidemeister_schreier, tietze_simplify, todd_coxeter, todd_coxeter_with, Presentation, Strategy,
};
use halftwist::{BraidWord, Letter};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s3() -> Presentation {
    Presentation::parse("gens 2\ng1 g1\ng2 g2\ng1 g2 g1 g2 g1 g2").unwrap()
}

#[test]
fn symmetric_group_cosets() {
    for s in [Strategy::Hlt, Strategy::Felsch] {
        assert_eq!(todd_coxeter_with(&s3(), &[], 100, s).unwrap().index(), 6);
    }
    assert_eq!(abelianization(&s3()).to_string(), "Z_2");
}

#[test]
fn pure_braid_cosets_in_b3() {
    let p = Presentation::braid_group(3);
    let sub: Vec<Vec<Letter>> = ["s1 s1", "s2 s2", "s2 s1 s1 s2^-1"]
        .iter()
        .map(|w| BraidWord::parse(3, w).unwrap().letters().to_vec())
        .collect();
    let t = todd_coxeter(&p, &sub, 1000).unwrap();
    assert_eq!(t.index(), 6);
    // cosets biject with permutations: coset of w determined by w's permutation
    let words = halftwist::bn_tilde::permutation_transversal(3);
    let mut seen = std::collections::HashSet::new();
    for w in &words {
        assert!(seen.insert(t.trace(0, w.letters())));
    }
}

#[test]
fn pure_braid_group_abelianization() {
    // P_3 is F_2 x Z, so its abelianization is Z^3
    let p = Presentation::braid_group(3);
    let t = todd_coxeter(&p, &pure_subgroup_generators(3), 1000).unwrap();
    let sp = reidemeister_schreier(&p, &t).unwrap();
    assert_eq!(sp.presentation.generators(), 6 + 1);
    assert_eq!(abelianization(&sp.presentation).to_string(), "Z^3");
}

#[test]
fn whole_group_subgroup() {
    let p = Presentation::braid_group(4);
    let all: Vec<Vec<Letter>> = (1..=3).map(|k| vec![Letter::pos(k)]).collect();
    let t = todd_coxeter(&p, &all, 10).unwrap();
    assert_eq!(t.index(), 1);
    let sp = reidemeister_schreier(&p, &t).unwrap();
    assert_eq!(abelianization(&sp.presentation), abelianization(&p));
}

#[test]
fn braid_groups_abelianize_to_z() {
    for n in 2..=6 {
        assert_eq!(abelianization(&Presentation::braid_group(n)).to_string(), "Z");
    }
    assert_eq!(abelianization(&Presentation::free(2)).to_string(), "Z^2");
}

#[test]
fn tietze_orders_preserve_abelianization() {
    let p = Presentation::braid_group(3);
    let t = todd_coxeter(&p, &pure_subgroup_generators(3), 1000).unwrap();
    let sp = reidemeister_schreier(&p, &t).unwrap();
    let expected = abelianization(&sp.presentation);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = sp.presentation.generators();
    for _ in 0..50 {
        let mut order: Vec<usize> = (1..=k).collect();
        order.shuffle(&mut rng);
        let q = tietze_simplify(&sp.presentation, &order, 10_000);
        assert!(q.generators() <= k);
        assert_eq!(abelianization(&q), expected);
    }
}

#[test]
fn snf_stable_under_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let m: Vec<Vec<i64>> = (0..4).map(|_| (0..5).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let base = smith_normal_form_i64(&m);
        for _ in 0..50 {
            let mut rows = m.clone();
            rows.shuffle(&mut rng);
            let mut cols: Vec<usize> = (0..5).collect();
            cols.shuffle(&mut rng);
            let pm: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            assert_eq!(smith_normal_form_i64(&pm), base);
        }
    }
}

proptest! {
    #[test]
    fn snf_stable_under_elementary_ops(
        m in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 3), 3),
        i in 0usize..3, j in 0usize..3, c in -3i64..=3,
    ) {
        prop_assume!(i != j);
        let base = smith_normal_form_i64(&m);
        let mut r = m.clone();
        for col in 0..3 {
            r[i][col] += c * m[j][col];
        }
        prop_assert_eq!(smith_normal_form_i64(&r), base.clone());
        let mut s = m.clone();
        for row in s.iter_mut() {
            row[i] += c * row[j];
        }
        prop_assert_eq!(smith_normal_form_i64(&s), base);
    }

    #[test]
    fn snf_diagonal_divides(m in proptest::collection::vec(proptest::collection::vec(-20i64..=20, 4), 1..5)) {
        let d = smith_normal_form_i64(&m).diagonal;
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == num_bigint::BigInt::from(0));
        }
    }
}
