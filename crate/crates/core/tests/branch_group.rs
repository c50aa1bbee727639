use halftwist::braid::delta_squared;
use halftwist::branch_group::*;
use halftwist::{BraidWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE: &str = include_str!("../data/v3_sample.table");

fn sample() -> IntersectionTable {
    IntersectionTable::parse(SAMPLE).unwrap()
}

fn random_g0(rng: &mut ChaCha8Rng, t: &IntersectionTable) -> G0Element {
    G0Element { exponents: (0..t.len()).map(|_| rng.gen_range(-4..=4)).collect(), tau: rng.gen_bool(0.5) }
}

fn random_braid(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
    BraidWord::new(n, (0..len).map(|_| Letter::new(rng.gen_range(1..n), rng.gen_bool(0.5)))).unwrap()
}

fn three_labels(r12: Relation, r21: Relation, r23: Relation) -> IntersectionTable {
    IntersectionTable::new(
        vec![1, 2, 3],
        &[(1, 2, r12), (2, 1, r21), (2, 3, r23), (1, 3, Relation::Disjoint)],
        &[(1, 1), (2, 2), (3, 3)],
        Relation::Disjoint,
    )
    .unwrap()
}

#[test]
fn g0_associative() {
    let t = sample();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (a, b, c) = (random_g0(&mut rng, &t), random_g0(&mut rng, &t), random_g0(&mut rng, &t));
        let l = g0_mul(&g0_mul(&a, &b, &t).unwrap(), &c, &t).unwrap();
        let r = g0_mul(&a, &g0_mul(&b, &c, &t).unwrap(), &t).unwrap();
        assert_eq!(l, r);
    }
}

#[test]
fn g0_generator_relations() {
    let t = sample();
    let tau = G0Element::tau(&t);
    assert!(g0_mul(&tau, &tau, &t).unwrap().is_identity());
    for i in 0..t.len() {
        let gi = G0Element::generator(&t, i);
        assert_eq!(g0_mul(&gi, &tau, &t).unwrap(), g0_mul(&tau, &gi, &t).unwrap());
        for j in 0..t.len() {
            let gj = G0Element::generator(&t, j);
            let c = g0_commutator(&gi, &gj, &t);
            assert_eq!(c.tau, t.commutator_bit(i, j));
            assert!(c.exponents.iter().all(|&e| e == 0));
        }
    }
}

#[test]
fn letters_act_as_automorphisms() {
    let t = sample();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let x = random_g0(&mut rng, &t);
        let y = random_g0(&mut rng, &t);
        let k = rng.gen_range(1..t.strands());
        for l in [Letter::pos(k), Letter::neg(k)] {
            let there = braid_action(&x, l, &t).unwrap();
            assert_eq!(braid_action(&there, l.inverse(), &t).unwrap(), x);
            let xy = g0_mul(&x, &y, &t).unwrap();
            let lhs = braid_action(&xy, l, &t).unwrap();
            let rhs = g0_mul(&there, &braid_action(&y, l, &t).unwrap(), &t).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn action_examples() {
    let t = sample();
    let g1 = G0Element::generator(&t, 0);
    let img = braid_action(&g1, Letter::pos(1), &t).unwrap();
    assert_eq!(img.display(&t).to_string(), "g1^-1 tau");
    // label 1 and the twist at position 3 (label 3) are disjoint
    assert_eq!(braid_action(&g1, Letter::pos(3), &t).unwrap(), g1);
}

#[test]
fn semidirect_product() {
    let t = sample();
    let n = t.strands();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rand_elt = |rng: &mut ChaCha8Rng| SemidirectElement {
        braid: random_braid(rng, n, 6),
        g: random_g0(rng, &t),
    };
    for _ in 0..10_000 {
        let (x, y, z) = (rand_elt(&mut rng), rand_elt(&mut rng), rand_elt(&mut rng));
        let l = semidirect_mul(&semidirect_mul(&x, &y, &t).unwrap(), &z, &t).unwrap();
        let r = semidirect_mul(&x, &semidirect_mul(&y, &z, &t).unwrap(), &t).unwrap();
        assert_eq!(l.g, r.g);
        assert_eq!(l.braid, r.braid);
    }
    let x = rand_elt(&mut rng);
    let id = SemidirectElement::identity(&t);
    assert_eq!(semidirect_mul(&id, &x, &t).unwrap(), x);
    let inv = semidirect_inverse(&x, &t).unwrap();
    let one = semidirect_mul(&x, &inv, &t).unwrap();
    assert!(one.braid.is_empty() && one.g.is_identity());
    let b = SemidirectElement::from_braid(x.braid.clone(), &t);
    let g = SemidirectElement::from_g0(x.g.clone(), &t);
    assert_eq!(semidirect_mul(&b, &g, &t).unwrap(), x);
}

#[test]
fn quotient_maps() {
    let t = sample();
    let n = t.strands();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let x = SemidirectElement { braid: random_braid(&mut rng, n, 8), g: random_g0(&mut rng, &t) };
        let y = SemidirectElement { braid: random_braid(&mut rng, n, 8), g: random_g0(&mut rng, &t) };
        let xy = semidirect_mul(&x, &y, &t).unwrap();
        assert_eq!(psi_hat(&xy), psi_hat(&x).then(&psi_hat(&y)));
        assert_eq!(ab_hat(&xy), ab_hat(&x) + ab_hat(&y));
    }
    let s1 = SemidirectElement { braid: BraidWord::parse(n, "s1").unwrap(), g: G0Element::tau(&t) };
    assert_eq!(psi_hat(&s1).to_string(), "(1 2)");
    assert!(psi_hat(&SemidirectElement::from_g0(G0Element::tau(&t), &t)).is_identity());
    assert_eq!(ab_hat(&SemidirectElement::from_braid(delta_squared(9).unwrap(), &t)), 72);
    assert_eq!(ab_hat(&SemidirectElement::from_g0(G0Element::generator(&t, 0), &t)), 0);
}

#[test]
fn n9_relators_vanish_under_quotient_maps() {
    let t = sample();
    let (c, x) = n9_relators(&t).unwrap();
    for r in [&c, &x] {
        assert!(psi_hat(r).is_identity());
        assert_eq!(ab_hat(r), 0);
    }
    assert!(c.g.tau);
}

#[test]
fn sample_table_validates() {
    let t = sample();
    assert_eq!(t.strands(), 9);
    let r = validate_configuration(&t);
    assert!(r.is_valid(), "{r}");
    assert_eq!(r.to_string(), "checked 1176\nvalid\n");
}

#[test]
fn single_twist_is_valid() {
    let t = IntersectionTable::parse("labels 1\ntwist 1 1\n").unwrap();
    assert!(validate_configuration(&t).is_valid());
}

#[test]
fn disjoint_labels_on_adjacent_positions_fail() {
    let t = IntersectionTable::new(vec![1, 2], &[(1, 2, Relation::Disjoint)], &[(1, 1), (2, 2)], Relation::Disjoint)
        .unwrap();
    let r = validate_configuration(&t);
    assert!(!r.is_valid());
    assert!(r.violations.iter().any(|v| v.relation.starts_with("artin(s1 s2 s1")));
}

#[test]
fn mixed_orientation_fails() {
    let t = three_labels(Relation::OrderlyAdjacent, Relation::NotOrderlyAdjacent, Relation::OrderlyAdjacent);
    assert!(!validate_configuration(&t).is_valid());
    let t = three_labels(Relation::NotOrderlyAdjacent, Relation::NotOrderlyAdjacent, Relation::OrderlyAdjacent);
    assert!(validate_configuration(&t).is_valid());
}

#[test]
fn sample_round_trips() {
    let t = sample();
    assert_eq!(IntersectionTable::parse(&t.to_string()).unwrap(), t);
}
