use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use fundalc::affine::{ReducedWord, TieBreak};
use fundalc::expr::{format_element, parse_element};
use fundalc::linalg;
use fundalc::newton::{dominant_newton_point, is_straight, newton_point, power_defect, two_rho_of};
use fundalc::oracle::length_oracle;
use fundalc::{AffineWeylGroup, Element, Rational};

const KEYS: [&str; 9] = [
    "GL2", "SL2", "PGL2", "GL3", "SL3", "Sp4-sc", "G2-sc", "SL3@2", "SL4@2",
];

fn groups() -> &'static [AffineWeylGroup] {
    static G: OnceLock<Vec<AffineWeylGroup>> = OnceLock::new();
    G.get_or_init(|| KEYS.iter().map(|k| AffineWeylGroup::from_key(k).unwrap()).collect())
}

/// `omega * s_{i1} * ... * s_{ik}` from raw indices.
fn build(g: &AffineWeylGroup, omega: usize, word: &[usize]) -> Element {
    let omegas = g.omega_elements(1);
    let n = g.simple_affine_reflections().len();
    word.iter()
        .fold(omegas[omega % omegas.len()].clone(), |acc, &i| acc.mul(g.simple_element(i % n)))
}

fn word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..16, 0..=max)
}

fn subword_products(g: &AffineWeylGroup, w: &ReducedWord) -> HashSet<Element> {
    let k = w.letters.len();
    (0u32..(1 << k))
        .map(|mask| {
            let letters = (0..k).filter(|t| (mask >> t) & 1 == 1).map(|t| w.letters[t]).collect();
            g.word_product(&ReducedWord { omega: w.omega.clone(), letters })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(d in 0..KEYS.len(), o in 0usize..8, a in word(6), b in word(6), c in word(6)) {
        let g = &groups()[d];
        let (x, y, z) = (build(g, o, &a), build(g, 0, &b), build(g, o + 1, &c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(g.identity().mul(&x), x.clone());
        let p = g.base_alcove_point();
        prop_assert_eq!(x.mul(&y).apply(&p), x.apply(&y.apply(&p)));
    }

    #[test]
    fn length_properties(d in 0..KEYS.len(), o in 0usize..8, a in word(8), b in word(8), s in 0usize..16) {
        let g = &groups()[d];
        let (x, y) = (build(g, o, &a), build(g, 0, &b));
        let l = g.length(&x);
        prop_assert_eq!(l, g.length(&x.inverse()));
        prop_assert!(g.length(&x.mul(&y)) <= l + g.length(&y));
        let n = g.simple_affine_reflections().len();
        let ls = g.length(&g.simple_element(s % n).mul(&x));
        prop_assert!(ls == l + 1 || ls + 1 == l);
        let omegas = g.omega_elements(1);
        let (w1, w2) = (&omegas[o % omegas.len()], &omegas[(o + 1) % omegas.len()]);
        prop_assert_eq!(g.length(&w1.mul(&x).mul(w2)), l);
        prop_assert_eq!(l, length_oracle(g, &x));
    }

    #[test]
    fn invariants_under_sigma_conjugation(d in 0..KEYS.len(), o in 0usize..8, a in word(8), h in word(10), ho in 0usize..8) {
        let g = &groups()[d];
        let x = build(g, o, &a);
        let k = build(g, ho, &h);
        let y = g.sigma_conjugate(&k, &x);
        prop_assert_eq!(dominant_newton_point(g, &y), dominant_newton_point(g, &x));
        prop_assert_eq!(g.kottwitz_point(&y), g.kottwitz_point(&x));
    }

    #[test]
    fn literal_roundtrip(d in 0..KEYS.len(), o in 0usize..8, a in word(10)) {
        let g = &groups()[d];
        let x = build(g, o, &a);
        let lit = format_element(g, &x);
        prop_assert_eq!(parse_element(g, &lit).unwrap(), x);
    }

    #[test]
    fn reduced_words_by_both_policies(d in 0..KEYS.len(), o in 0usize..8, a in word(7)) {
        let g = &groups()[d];
        let y = build(g, o, &a);
        let small = g.reduced_word_with(&y, TieBreak::Smallest);
        let large = g.reduced_word_with(&y, TieBreak::Largest);
        prop_assert_eq!(small.letters.len(), g.length(&y));
        prop_assert_eq!(large.letters.len(), g.length(&y));
        prop_assert_eq!(g.word_product(&small), y.clone());
        prop_assert_eq!(g.word_product(&large), y.clone());
        // the Bruhat interval does not depend on the reduced word
        let a = subword_products(g, &small);
        let b = subword_products(g, &large);
        prop_assert_eq!(&a, &b);
        let lower: HashSet<Element> = g.bruhat_lower_set(&y).into_iter().collect();
        prop_assert_eq!(&a, &lower);
    }

    #[test]
    fn bruhat_is_a_partial_order(d in 0..KEYS.len(), o in 0usize..8, a in word(7), i in 0usize..1000, j in 0usize..1000) {
        let g = &groups()[d];
        let z = build(g, o, &a);
        let below = g.bruhat_lower_set(&z);
        let y = &below[i % below.len()];
        let below_y = g.bruhat_lower_set(y);
        let x = &below_y[j % below_y.len()];
        prop_assert!(g.bruhat_leq(&z, &z));
        prop_assert!(g.bruhat_leq(y, &z) && g.bruhat_leq(x, y));
        prop_assert!(g.bruhat_leq(x, &z));
        prop_assert!(g.length(x) <= g.length(y));
        if g.bruhat_leq(&z, y) {
            prop_assert_eq!(y, &z);
        }
    }

    #[test]
    fn power_defect_is_bounded(d in 0..KEYS.len(), o in 0usize..8, a in word(6), n in 1usize..=12) {
        let g = &groups()[d];
        let x = build(g, o, &a);
        let defect = power_defect(g, &x, n);
        // (x sigma)^p sigma^-p is a translation for p the period
        let p = newton_point(g, &x).period;
        let excess = Rational::from_integer(g.length(&x) as i64) - two_rho_of(g, &dominant_newton_point(g, &x));
        prop_assert!(defect <= excess * Rational::from_integer((n % p) as i64));
        if is_straight(g, &x) {
            prop_assert_eq!(defect, Rational::from_integer(0));
        }
    }

    #[test]
    fn inner_product_is_weyl_invariant(d in 0..KEYS.len(), w in 0usize..10_000, u in prop::collection::vec(-5i64..=5, 4), v in prop::collection::vec(-5i64..=5, 4)) {
        let g = &groups()[d];
        let dat = g.datum();
        let r = dat.rank();
        let ws = g.finite_weyl_group();
        let w = &ws[w % ws.len()];
        let u = linalg::to_rational(&u[..r]);
        let v = linalg::to_rational(&v[..r]);
        prop_assert_eq!(
            dat.inner(&w.apply_rational(&u), &w.apply_rational(&v)),
            dat.inner(&u, &v)
        );
    }
}

#[test]
fn root_systems_are_closed() {
    for g in groups() {
        let d = g.datum();
        assert_eq!(d.roots().len(), d.coroots().len());
        for i in 0..d.num_roots() {
            let neg = d.negative_of(i);
            assert_eq!(d.root(neg), &linalg::sub(&vec![0; d.rank()], d.root(i)));
            for j in 0..d.num_roots() {
                let img = d.map_root(&d.reflection_matrix(i), j);
                assert!(img.is_some(), "{}: s_{i} root {j}", g.key());
            }
        }
    }
}
