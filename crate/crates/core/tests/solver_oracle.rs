//! The solver against a raw filter over every table `C × A → B`.

use std::collections::BTreeSet;
use std::sync::Arc;

use cind_core::carriers::builtins;
use cind_core::oracle::{random_algebras, solve_measurings, SolveOptions};
use cind_core::{Algebra, Bounds, Coalgebra, Elem, FValue, FunctorSig, Monoid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RAW_LIMIT: u64 = 1 << 18;

/// Every lawful table, by filtering all `|B|^(|C||A|)` candidates. The law is
/// spelled out here with its own zip rather than through the library.
fn raw_filter(c: &Coalgebra, a: &Algebra, b: &Algebra) -> BTreeSet<Vec<usize>> {
    let bounds = Bounds::default();
    let (a_elems, complete) = a.elements(&bounds);
    assert!(complete);
    let (b_elems, _) = b.elements(&bounds);
    let sig = a.sig();
    let monoid = sig.monoid();
    let labels = monoid.elements().expect("finite monoid");
    let values = sig.values_over(&labels, a_elems.len());
    let index = |xs: &[Elem], x: &Elem| xs.iter().position(|y| y == x).expect("in carrier");
    let alpha: Vec<usize> =
        values.iter().map(|v| index(&a_elems, &a.alpha(&v.map(|&i| a_elems[i].clone())).unwrap())).collect();
    let beta = |v: FValue<usize>| index(&b_elems, &b.alpha(&v.map(|&i| b_elems[i].clone())).unwrap());

    let (nc, na, nb) = (c.len(), a_elems.len(), b_elems.len());
    let cells = nc * na;
    let total = (nb as u64).pow(cells as u32);
    let mut out = BTreeSet::new();
    let mut table = vec![0usize; cells];
    for code in 0..total {
        let mut rest = code;
        for cell in table.iter_mut() {
            *cell = (rest % nb as u64) as usize;
            rest /= nb as u64;
        }
        let lawful = (0..nc).all(|s| {
            values.iter().zip(&alpha).all(|(v, &lhs)| {
                let rhs = match (c.chi(s), v) {
                    (FValue::Bottom, _) | (_, FValue::Bottom) => beta(FValue::Bottom),
                    (FValue::Node(m, cs), FValue::Node(x, xs)) => beta(FValue::Node(
                        monoid.op(*m, *x),
                        cs.iter().zip(xs).map(|(&t, &y)| table[t * na + y]).collect(),
                    )),
                };
                table[s * na + lhs] == rhs
            })
        });
        if lawful {
            out.insert(table.clone());
        }
    }
    out
}

fn random_coalgebra(sig: &FunctorSig, states: usize, rng: &mut ChaCha8Rng) -> Coalgebra {
    let labels = sig.monoid().elements().unwrap();
    let chi = (0..states)
        .map(|_| {
            if sig.has_bottom() && rng.gen_range(0..3) == 0 {
                FValue::Bottom
            } else {
                let m = labels[rng.gen_range(0..labels.len())];
                FValue::Node(m, (0..sig.arity()).map(|_| rng.gen_range(0..states)).collect())
            }
        })
        .collect();
    let names = (0..states).map(|i| format!("s{}", i)).collect();
    Coalgebra::new("C", sig.clone(), names, chi).unwrap()
}

fn sigs() -> Vec<FunctorSig> {
    let triv = Arc::new(Monoid::trivial());
    let or = Arc::new(Monoid::bool_or());
    vec![
        FunctorSig::shape(triv.clone(), 1),
        FunctorSig::shape(or.clone(), 1),
        FunctorSig::shape(triv.clone(), 2),
        FunctorSig::shape(or.clone(), 0),
        FunctorSig::constant(or),
        FunctorSig::constant(Arc::new(Monoid::truth_and())),
    ]
}

#[test]
fn solver_matches_raw_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let bounds = Bounds::default();
    let sigs = sigs();
    let mut instances = 0;
    let mut counts = BTreeSet::new();
    let mut attempt = 0u64;
    let mut largest = 0u64;
    while instances < 64 {
        attempt += 1;
        let sig = &sigs[rng.gen_range(0..sigs.len())];
        let a: Arc<Algebra> = if sig.is_shape() && sig.arity() == 1 && sig.monoid().size() == Some(1) && rng.gen_bool(0.3) {
            Arc::new(builtins::nat_bounded(rng.gen_range(0..3)))
        } else {
            random_algebras(sig, rng.gen_range(1..=3), 1, attempt).unwrap().remove(0)
        };
        let b = random_algebras(sig, rng.gen_range(2..=3), 1, attempt + 1000).unwrap().remove(0);
        let c = Arc::new(random_coalgebra(sig, rng.gen_range(1..=3), &mut rng));
        let na = a.elements(&bounds).0.len();
        let nb = b.elements(&bounds).0.len();
        let Some(raw) = (nb as u64).checked_pow((c.len() * na) as u32).filter(|&t| t <= RAW_LIMIT) else {
            continue;
        };
        largest = largest.max(raw);
        let expected = raw_filter(&c, &a, &b);
        let r = solve_measurings(&c, &a, &b, &bounds, SolveOptions::default()).unwrap();
        assert!(r.exhaustive, "solver not exhaustive on instance {}", instances);
        let (a_elems, _) = a.elements(&bounds);
        let (b_elems, _) = b.elements(&bounds);
        let got: BTreeSet<Vec<usize>> = r
            .solutions
            .iter()
            .map(|phi| {
                (0..c.len())
                    .flat_map(|s| a_elems.iter().map(move |x| (s, x)))
                    .map(|(s, x)| {
                        let y = phi.eval(s, x).unwrap();
                        b_elems.iter().position(|z| *z == y).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(got.len(), r.solutions.len(), "duplicate solutions");
        assert_eq!(got, expected, "instance {} over {}", instances, sig.describe());
        for phi in &r.solutions {
            assert!(phi.check_law(&bounds).holds());
        }
        counts.insert(expected.len());
        instances += 1;
    }
    assert!(largest >= 1 << 12, "largest raw space {}", largest);
    // The corpus must exercise empty, unique and ambiguous cases.
    assert!(counts.contains(&0) && counts.contains(&1) && counts.iter().any(|&k| k > 1), "{:?}", counts);
}

#[test]
fn unit_coalgebra_solutions_are_algebra_morphisms() {
    let bounds = Bounds::default();
    for sig in sigs() {
        let targets = random_algebras(&sig, 2, 3, 5).unwrap();
        let sources = random_algebras(&sig, 3, 3, 6).unwrap();
        let unit = Arc::new(Coalgebra::unit(sig.clone()));
        for a in &sources {
            for b in &targets {
                let (homs, complete) = a.morphisms_to(b, &bounds).unwrap();
                assert!(complete);
                let r = solve_measurings(&unit, a, b, &bounds, SolveOptions::default()).unwrap();
                assert_eq!(homs.len(), r.solutions.len());
            }
        }
    }
}
