use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use nearhopf::catalog::entry;
use nearhopf::presentation::Model;
use nearhopf::{Element, Group, HopfAlgebra, Monomial, TensorElement};

const PAIRS: [(Group, u32); 10] = [
    (Group::G2, 2),
    (Group::F4, 2),
    (Group::F4, 3),
    (Group::E6, 2),
    (Group::E6, 3),
    (Group::E7, 2),
    (Group::E7, 3),
    (Group::E8, 2),
    (Group::E8, 3),
    (Group::E8, 5),
];

/// Degree bound for sampled basis elements.
const MAX_DEGREE: u32 = 36;

struct Pair {
    h: HopfAlgebra,
    basis: Vec<Monomial>,
}

fn pairs() -> &'static [Pair] {
    static P: OnceLock<Vec<Pair>> = OnceLock::new();
    P.get_or_init(|| {
        PAIRS
            .iter()
            .map(|&(g, p)| {
                let h = HopfAlgebra::new(Arc::new(entry(g).unwrap()), p, Model::Strict).unwrap();
                let basis = (0..=MAX_DEGREE)
                    .flat_map(|d| h.algebra().monomial_basis(d))
                    .collect();
                Pair { h, basis }
            })
            .collect()
    })
}

fn element(pair: &Pair, picks: &[(usize, i64)]) -> Element {
    let alg = pair.h.algebra();
    let mut x = alg.zero();
    for &(i, c) in picks {
        x.add_term(pair.basis[i % pair.basis.len()].clone(), c);
    }
    x
}

fn monomial(pair: &Pair, i: usize) -> Element {
    element(pair, &[(i, 1)])
}

fn degree(pair: &Pair, i: usize) -> u32 {
    pair.h
        .algebra()
        .monomial_degree(&pair.basis[i % pair.basis.len()])
}

fn sign(d: u32) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((any::<usize>(), 1i64..5), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Rewriting a shuffled word of generators agrees with the Koszul sign of
    /// the shuffle, computed independently by counting odd inversions.
    #[test]
    fn rewriting_is_confluent(k in 0usize..10, word in prop::collection::vec(any::<usize>(), 1..7)) {
        let pair = &pairs()[k];
        let alg = pair.h.algebra();
        let word: Vec<usize> = word.into_iter().map(|i| i % alg.ngens()).collect();
        let prod = |w: &[usize]| w.iter().fold(alg.one(), |acc, &i| alg.multiply(&acc, &alg.generator(i)));
        let mut sorted = word.clone();
        sorted.sort();
        let odd = |i: usize| alg.generators()[i].degree % 2 == 1;
        let mut inversions = 0;
        for a in 0..word.len() {
            for b in a + 1..word.len() {
                if word[a] > word[b] && odd(word[a]) && odd(word[b]) {
                    inversions += 1;
                }
            }
        }
        let s = if inversions % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(prod(&word), prod(&sorted).scaled(s));
        let right = word.iter().rev().fold(alg.one(), |acc, &i| alg.multiply(&alg.generator(i), &acc));
        prop_assert_eq!(prod(&word), right);
    }

    #[test]
    fn multiplication_is_associative(k in 0usize..10, a in picks(), b in picks(), c in picks()) {
        let pair = &pairs()[k];
        let alg = pair.h.algebra();
        let (a, b, c) = (element(pair, &a), element(pair, &b), element(pair, &c));
        prop_assert_eq!(
            alg.multiply(&alg.multiply(&a, &b), &c),
            alg.multiply(&a, &alg.multiply(&b, &c))
        );
    }

    #[test]
    fn graded_commutativity(k in 0usize..10, i in any::<usize>(), j in any::<usize>()) {
        let pair = &pairs()[k];
        let alg = pair.h.algebra();
        let (a, b) = (monomial(pair, i), monomial(pair, j));
        let s = sign(degree(pair, i) * degree(pair, j));
        prop_assert_eq!(alg.multiply(&a, &b), alg.multiply(&b, &a).scaled(s));
    }

    #[test]
    fn bockstein_laws(k in 0usize..10, i in any::<usize>(), j in any::<usize>()) {
        let pair = &pairs()[k];
        let (h, alg) = (&pair.h, pair.h.algebra());
        let (a, b) = (monomial(pair, i), monomial(pair, j));
        prop_assert!(h.bockstein(&h.bockstein(&a)).is_zero());
        let mut rhs = alg.multiply(&h.bockstein(&a), &b);
        rhs.add_scaled(&alg.multiply(&a, &h.bockstein(&b)), sign(degree(pair, i)));
        prop_assert_eq!(h.bockstein(&alg.multiply(&a, &b)), rhs);
    }

    #[test]
    fn coproduct_is_multiplicative_and_natural(k in 0usize..10, i in any::<usize>(), j in any::<usize>()) {
        let pair = &pairs()[k];
        let (h, alg) = (&pair.h, pair.h.algebra());
        let (a, b) = (monomial(pair, i), monomial(pair, j));
        prop_assert_eq!(
            h.coproduct(&alg.multiply(&a, &b)),
            alg.tensor_multiply(&h.coproduct(&a), &h.coproduct(&b))
        );
        prop_assert_eq!(h.coproduct(&h.bockstein(&a)), h.bockstein_tensor(&h.coproduct(&a)));
    }

    /// The Koszul rule (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd, and the
    /// tensor Bockstein is a derivation of the tensor product.
    #[test]
    fn tensor_laws(k in 0usize..10, i in any::<usize>(), j in any::<usize>(), m in any::<usize>(), n in any::<usize>()) {
        let pair = &pairs()[k];
        let (h, alg) = (&pair.h, pair.h.algebra());
        let (a, b, c, d) = (monomial(pair, i), monomial(pair, j), monomial(pair, m), monomial(pair, n));
        let lhs = alg.tensor_multiply(&alg.tensor(&a, &b), &alg.tensor(&c, &d));
        let rhs = alg.tensor(&alg.multiply(&a, &c), &alg.multiply(&b, &d)).scaled(sign(degree(pair, j) * degree(pair, m)));
        prop_assert_eq!(lhs, rhs);
        let t = alg.tensor(&a, &b);
        let mut expect = alg.tensor(&h.bockstein(&a), &b);
        expect.add_scaled(&alg.tensor(&a, &h.bockstein(&b)), sign(degree(pair, i)));
        prop_assert_eq!(h.bockstein_tensor(&t), expect);
    }

    /// Boundaries lift, and the lift is a Bockstein preimage.
    #[test]
    fn boundaries_lift(k in 0usize..10, i in any::<usize>(), j in any::<usize>(), c in 1i64..5) {
        let pair = &pairs()[k];
        let (h, alg) = (&pair.h, pair.h.algebra());
        let u: TensorElement = alg.tensor(&monomial(pair, i), &monomial(pair, j)).scaled(c);
        let t = h.bockstein_tensor(&u);
        if !t.is_zero() {
            prop_assert!(h.in_bockstein_image(&t));
            let v = h.bockstein_preimage(&t).unwrap();
            prop_assert_eq!(h.bockstein_tensor(&v), t);
        }
    }
}
