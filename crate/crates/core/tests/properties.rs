//! Algebraic invariants on randomly generated small instances.

use std::sync::Arc;

use cind_core::carriers::Term;
use cind_core::transport::{mu_bang_term, mu_shriek, SubCoalgebra, XTerm};
use cind_core::{Algebra, Bounds, Coalgebra, Elem, FValue, FunctorSig, Monoid, MonoidHom, NatTransf};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sigs() -> Vec<FunctorSig> {
    let triv = Arc::new(Monoid::trivial());
    let or = Arc::new(Monoid::bool_or());
    vec![
        FunctorSig::shape(triv.clone(), 1),
        FunctorSig::shape(or.clone(), 1),
        FunctorSig::shape(triv, 2),
        FunctorSig::shape(or.clone(), 2),
        FunctorSig::shape(or.clone(), 0),
        FunctorSig::constant(or),
        FunctorSig::constant(Arc::new(Monoid::truth_and())),
    ]
}

fn random_value(sig: &FunctorSig, n: usize, rng: &mut ChaCha8Rng) -> FValue<usize> {
    let labels = sig.monoid().elements().unwrap();
    if sig.has_bottom() && rng.gen_range(0..4) == 0 {
        FValue::Bottom
    } else {
        FValue::Node(labels[rng.gen_range(0..labels.len())], (0..sig.arity()).map(|_| rng.gen_range(0..n)).collect())
    }
}

fn random_coalgebra(sig: &FunctorSig, states: usize, rng: &mut ChaCha8Rng) -> Coalgebra {
    let chi = (0..states).map(|_| random_value(sig, states, rng)).collect();
    let names = (0..states).map(|i| format!("s{}", i)).collect();
    Coalgebra::new("C", sig.clone(), names, chi).unwrap()
}

fn random_term(arity: usize, labels: &[u64], depth: usize, rng: &mut ChaCha8Rng) -> Term {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        Term::Bottom
    } else {
        Term::node(
            labels[rng.gen_range(0..labels.len())],
            (0..arity).map(|_| random_term(arity, labels, depth - 1, rng)).collect(),
        )
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zip_is_associative_and_unital(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for sig in sigs() {
            let u = random_value(&sig, 3, &mut rng);
            let v = random_value(&sig, 3, &mut rng);
            let w = random_value(&sig, 3, &mut rng);
            let left = sig.zip(&sig.zip(&u, &v).unwrap(), &w).unwrap().map(|((x, y), z)| (*x, (*y, *z)));
            let right = sig.zip(&u, &sig.zip(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let eta = sig.eta();
            prop_assert_eq!(sig.zip(&eta, &u).unwrap().map(|(_, x)| *x), u.clone());
            prop_assert_eq!(sig.zip(&u, &eta).unwrap().map(|(x, _)| *x), u);
        }
    }

    #[test]
    fn fmap_obeys_the_functor_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = |x: &usize| x * 3 + 1;
        let g = |x: &usize| x % 4;
        for sig in sigs() {
            let v = random_value(&sig, 5, &mut rng);
            prop_assert_eq!(sig.fmap(|x: &usize| *x, &v).unwrap(), v.clone());
            let composed = sig.fmap(|x| g(&f(x)), &v).unwrap();
            let stepwise = sig.fmap(g, &sig.fmap(f, &v).unwrap()).unwrap();
            prop_assert_eq!(composed, stepwise);
        }
    }

    #[test]
    fn trunc_is_idempotent_and_fold_ignores_short_terms(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = FunctorSig::shape(Arc::new(Monoid::bool_or()), 2);
        let sum = Algebra::from_fn("count", sig, (0..4).map(|i| i.to_string()).collect(), |v| match v {
            FValue::Bottom => 0,
            FValue::Node(m, xs) => (*m as usize + xs[0] + xs[1]).min(3),
        })
        .unwrap();
        let t = random_term(2, &[0, 1], 5, &mut rng);
        let once = t.trunc(n);
        prop_assert_eq!(once.trunc(n), once.clone());
        prop_assert!(once.depth() <= n);
        if t.depth() <= n {
            prop_assert_eq!(once.clone(), t.clone());
        }
        prop_assert_eq!(sum.fold(&once.trunc(n)).unwrap(), sum.fold(&once).unwrap());
    }

    #[test]
    fn tensor_is_associative_and_unital(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for sig in sigs() {
            let d = random_coalgebra(&sig, rng.gen_range(1..=4), &mut rng);
            let c = random_coalgebra(&sig, rng.gen_range(1..=4), &mut rng);
            let e = random_coalgebra(&sig, rng.gen_range(1..=4), &mut rng);
            // ((d, c), e) and (d, (c, e)) share the index d·|C||E| + c·|E| + e.
            let left = Coalgebra::tensor(&Coalgebra::tensor(&d, &c).unwrap(), &e).unwrap();
            let right = Coalgebra::tensor(&d, &Coalgebra::tensor(&c, &e).unwrap()).unwrap();
            prop_assert_eq!(left.transitions(), right.transitions());
            let unit = Coalgebra::unit(sig.clone());
            prop_assert_eq!(Coalgebra::tensor(&unit, &c).unwrap().transitions().to_vec(), c.transitions().to_vec());
            prop_assert_eq!(Coalgebra::tensor(&c, &unit).unwrap().transitions().to_vec(), c.transitions().to_vec());
        }
    }

    #[test]
    fn leaf_expansion_order_does_not_matter(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Arc::new(Monoid::bool_or());
        let lists = FunctorSig::shape(m.clone(), 1);
        let trees = FunctorSig::shape(m.clone(), 2);
        let mu = NatTransf::new(lists.clone(), trees, MonoidHom::identity(m), vec![0, 0]).unwrap();
        for bound in [None, Some(3)] {
            let a = match bound {
                None => Algebra::initial(lists.clone()).unwrap(),
                Some(n) => Algebra::bounded(lists.clone(), n).unwrap(),
            };
            let bang = mu_bang_term(&mu, Arc::new(a)).unwrap();
            let x = random_xterm(&mut rng, 3);
            let reference = bang.normalize(&x);
            for _ in 0..4 {
                let mut order = ChaCha8Rng::seed_from_u64(rng.gen());
                prop_assert_eq!(bang.normalize_by(&x, &mut |k| order.gen_range(0..k)), reference.clone());
            }
        }
    }

    #[test]
    fn mu_shriek_keeps_the_greatest_admissible_set(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triv = Arc::new(Monoid::trivial());
        let or = Arc::new(Monoid::bool_or());
        let cases = [
            (FunctorSig::shape(triv.clone(), 1), FunctorSig::shape(or.clone(), 1), vec![0]),
            (FunctorSig::shape(triv.clone(), 1), FunctorSig::shape(triv.clone(), 2), vec![0, 0]),
            (FunctorSig::shape(or.clone(), 2), FunctorSig::shape(or.clone(), 2), vec![1, 0]),
        ];
        for (src, tgt, reindex) in cases {
            let hom = if src.monoid().size() == tgt.monoid().size() {
                MonoidHom::identity(tgt.monoid().clone())
            } else {
                MonoidHom::table(src.monoid().clone(), tgt.monoid().clone(), vec![0]).unwrap()
            };
            let mu = NatTransf::new(src, tgt.clone(), hom, reindex).unwrap();
            let n = rng.gen_range(1..=8);
            let c = Arc::new(random_coalgebra(&tgt, n, &mut rng));
            let s = mu_shriek(&mu, c.clone()).unwrap();
            let kept: Vec<bool> = (0..n).map(|i| s.position(i).is_some()).collect();
            prop_assert!(SubCoalgebra::admits_structure(&mu, &c, &kept));
            for mask in 0u32..(1 << n) {
                let states: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                if SubCoalgebra::admits_structure(&mu, &c, &states) {
                    prop_assert!((0..n).all(|i| !states[i] || kept[i]), "admissible set outside kept");
                }
            }
        }
    }
}

fn random_xterm(rng: &mut ChaCha8Rng, depth: usize) -> XTerm {
    match rng.gen_range(0..4) {
        0 => XTerm::Bottom,
        1 | 2 if depth > 0 => XTerm::Node(rng.gen_range(0..2), vec![random_xterm(rng, depth - 1), random_xterm(rng, depth - 1)]),
        _ => XTerm::Leaf(random_term(1, &[0, 1], 3, rng)),
    }
}

/// The tables on terms of depth ≤ d satisfying the morphism equations.
fn lawful_tables(sig: &FunctorSig, d: usize, b: &Algebra) -> Vec<Vec<Elem>> {
    let labels = sig.monoid().elements().unwrap();
    let terms = Term::enumerate(sig.arity(), &labels, d);
    let (b_elems, _) = b.elements(&Bounds::default());
    let index = |t: &Term| terms.iter().position(|s| s == t).unwrap();
    let total = (b_elems.len() as u64).pow(terms.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let table: Vec<Elem> = terms
            .iter()
            .map(|_| {
                let k = (rest % b_elems.len() as u64) as usize;
                rest /= b_elems.len() as u64;
                b_elems[k].clone()
            })
            .collect();
        let ok = terms.iter().all(|t| {
            let v = t.unpack().map(|c| table[index(c)].clone());
            table[index(t)] == b.alpha(&v).unwrap()
        });
        if ok {
            out.push(table);
        }
    }
    out
}

#[test]
fn fold_is_the_only_morphism_out_of_terms() {
    let triv = Arc::new(Monoid::trivial());
    let or = Arc::new(Monoid::bool_or());
    let cases = [
        (FunctorSig::shape(triv.clone(), 1), 3),
        (FunctorSig::shape(or.clone(), 1), 2),
        (FunctorSig::shape(triv.clone(), 2), 2),
        (FunctorSig::shape(or, 0), 3),
    ];
    for (sig, d) in cases {
        for size in 1..=3 {
            for b in cind_core::oracle::random_algebras(&sig, size, 4, size as u64).unwrap() {
                let tables = lawful_tables(&sig, d, &b);
                assert_eq!(tables.len(), 1, "{} into {}", sig.describe(), b.name());
                let terms = Term::enumerate(sig.arity(), &sig.monoid().elements().unwrap(), d);
                for (t, x) in terms.iter().zip(&tables[0]) {
                    assert_eq!(&b.fold(t).unwrap(), x);
                }
            }
        }
    }
}

#[test]
fn depth_three_binary_terms_measure_only_by_fold() {
    let sig = FunctorSig::shape(Arc::new(Monoid::trivial()), 2);
    let t = Arc::new(Algebra::initial(sig.clone()).unwrap());
    let unit = Arc::new(Coalgebra::unit(sig.clone()));
    let bounds = Bounds::default();
    let (terms, _) = t.elements(&bounds);
    for b in cind_core::oracle::random_algebras(&sig, 3, 8, 99).unwrap() {
        let r = cind_core::oracle::solve_measurings(&unit, &t, &b, &bounds, Default::default()).unwrap();
        assert_eq!(r.solutions.len(), 1);
        for x in &terms {
            assert_eq!(r.solutions[0].eval(0, x).unwrap(), b.fold(x.as_term().unwrap()).unwrap());
        }
    }
}
