//! Recasting carriers along a natural transformation `μ : F → G`.
//!
//! - [`pullback_algebra`] and [`pushforward_coalgebra`] precompose or
//!   postcompose with `μ`.
//! - [`mu_bang_const`] builds the left adjoint of pullback for constant
//!   functors as the pushout `A + M' / α(x) ∼ h(x)`.
//! - [`mu_bang_term`] builds it for term algebras over shape signatures by
//!   expanding every source node into a target node.
//! - [`mu_shriek`] builds the right adjoint of pushforward as the greatest
//!   subcoalgebra whose transitions all lie in the image of `μ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::carriers::{Algebra, Coalgebra, CoalgebraMorphism, Elem, Term};
use crate::error::{Error, Result};
use crate::kernel::{FValue, Label, NatTransf};
use crate::union_find::UnionFind;

/// `μ*(B)`: the same carrier with structure `α_B ∘ μ`.
pub fn pullback_algebra(nat: &NatTransf, b: Arc<Algebra>) -> Result<Algebra> {
    Algebra::pullback(nat, b)
}

/// `μ_*(C)`: the same states with structure `μ ∘ χ`.
pub fn pushforward_coalgebra(nat: &NatTransf, c: &Coalgebra) -> Result<Coalgebra> {
    if c.sig() != nat.source() {
        return Err(Error::SignatureMismatch(format!(
            "cannot push {} forward along {}",
            c.sig().describe(),
            nat.describe()
        )));
    }
    let chi = c.transitions().iter().map(|v| nat.apply(v)).collect::<Result<Vec<_>>>()?;
    Coalgebra::new(format!("push({})", c.name()), nat.target().clone(), c.names().to_vec(), chi)
}

/// `μ_*(f)`: the same state map between the pushed-forward coalgebras.
pub fn pushforward_morphism(
    nat: &NatTransf,
    f: &CoalgebraMorphism,
    source: Arc<Coalgebra>,
    target: Arc<Coalgebra>,
) -> Result<CoalgebraMorphism> {
    if source.sig() != nat.target() || target.sig() != nat.target() {
        return Err(Error::SignatureMismatch("pushed coalgebras expected".to_string()));
    }
    CoalgebraMorphism::new(source, target, f.map().to_vec())
}

/// A member of `A ⊔ M'` before quotienting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientMember {
    Source(Elem),
    Label(Label),
}

/// `μ_!(A) = A + M' / α(x) ∼ h(x)` for constant functors.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    nat: NatTransf,
    source: Arc<Algebra>,
    source_len: usize,
    member_names: Vec<String>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    algebra: Arc<Algebra>,
}

pub fn mu_bang_const(nat: &NatTransf, a: Arc<Algebra>) -> Result<QuotientAlgebra> {
    if nat.source().is_shape() {
        return Err(Error::KindMismatch("the pushout construction needs constant functors".to_string()));
    }
    if a.sig() != nat.source() {
        return Err(Error::SignatureMismatch(format!("{} is not a {}-algebra", a.name(), nat.source().describe())));
    }
    let (src_names, _) = a
        .table()
        .ok_or_else(|| Error::NotEnumerable(format!("{} is not a finite algebra", a.name())))?;
    let m = nat.source().monoid();
    let target = nat.target().monoid();
    let (m_elems, k) = match (m.elements(), target.size()) {
        (Some(e), Some(k)) => (e, k),
        _ => return Err(Error::NotEnumerable("the pushout needs finite monoids".to_string())),
    };
    let n = src_names.len();
    let mut uf = UnionFind::new(n + k);
    for &x in &m_elems {
        let ax = a.alpha(&FValue::Node(x, vec![]))?.as_fin().expect("finite algebra");
        uf.union(ax, n + nat.hom().apply(x) as usize);
    }
    let (class_of, members) = uf.classes();
    let mut member_names: Vec<String> = src_names.to_vec();
    member_names.extend((0..k as Label).map(|l| format!("{}'", target.show(l))));
    let class_names: Vec<String> = members
        .iter()
        .map(|ms| {
            let parts: Vec<&str> = ms.iter().map(|&i| member_names[i].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let table = (0..k).map(|l| class_of[n + l]).collect();
    let algebra = Algebra::finite(format!("bang({})", a.name()), nat.target().clone(), class_names, table)?;
    Ok(QuotientAlgebra {
        nat: nat.clone(),
        source: a,
        source_len: n,
        member_names,
        class_of,
        members,
        algebra: Arc::new(algebra),
    })
}

impl QuotientAlgebra {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn nat(&self) -> &NatTransf {
        &self.nat
    }

    /// `[a]`.
    pub fn embed(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Fin(i) if *i < self.source_len => Ok(Elem::Fin(self.class_of[*i])),
            other => Err(Error::OutOfCarrier(format!("{:?} not in {}", other, self.source.name()))),
        }
    }

    /// `[x']`.
    pub fn embed_label(&self, l: Label) -> Elem {
        Elem::Fin(self.class_of[self.source_len + l as usize])
    }

    /// The least member of a class in interning order (source first).
    pub fn representative(&self, class: &Elem) -> Result<QuotientMember> {
        let c = class
            .as_fin()
            .filter(|&c| c < self.members.len())
            .ok_or_else(|| Error::OutOfCarrier(format!("{:?} is not a class", class)))?;
        let first = self.members[c][0];
        Ok(if first < self.source_len {
            QuotientMember::Source(Elem::Fin(first))
        } else {
            QuotientMember::Label((first - self.source_len) as Label)
        })
    }

    /// Every class as the names of its members, sources first.
    pub fn classes(&self) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|ms| ms.iter().map(|&i| self.member_names[i].clone()).collect())
            .collect()
    }
}

/// A target-signature term whose leaves still hold unexpanded source terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XTerm {
    Bottom,
    Node(Label, Vec<XTerm>),
    Leaf(Term),
}

impl XTerm {
    pub fn from_term(t: &Term) -> XTerm {
        match t {
            Term::Bottom => XTerm::Bottom,
            Term::Node(m, xs) => XTerm::Node(*m, xs.iter().map(XTerm::from_term).collect()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            XTerm::Bottom => 0,
            XTerm::Leaf(_) => 1,
            XTerm::Node(_, xs) => xs.iter().map(XTerm::leaf_count).sum(),
        }
    }

    pub fn to_term(&self) -> Option<Term> {
        match self {
            XTerm::Bottom => Some(Term::Bottom),
            XTerm::Leaf(_) => None,
            XTerm::Node(m, xs) => Some(Term::Node(*m, xs.iter().map(XTerm::to_term).collect::<Option<_>>()?)),
        }
    }
}

/// `μ_!(A)` for a term algebra `A`: target terms, with every source node
/// `(m, t⃗)` read as `(h(m), t_{r(1)}, …, t_{r(b)})`.
#[derive(Clone, Debug)]
pub struct ExpandedTermAlgebra {
    nat: NatTransf,
    source: Arc<Algebra>,
    algebra: Arc<Algebra>,
}

pub fn mu_bang_term(nat: &NatTransf, a: Arc<Algebra>) -> Result<ExpandedTermAlgebra> {
    if !nat.source().is_shape() {
        return Err(Error::KindMismatch("term expansion needs shape signatures".to_string()));
    }
    if a.sig() != nat.source() {
        return Err(Error::SignatureMismatch(format!("{} is not a {}-algebra", a.name(), nat.source().describe())));
    }
    let bound = a
        .term_bound()
        .ok_or_else(|| Error::Unsupported(format!("{} is not a term algebra", a.name())))?;
    let algebra = match bound {
        Some(n) => Algebra::bounded(nat.target().clone(), n)?,
        None => Algebra::initial(nat.target().clone())?,
    }
    .renamed(format!("bang({})", a.name()));
    Ok(ExpandedTermAlgebra { nat: nat.clone(), source: a, algebra: Arc::new(algebra) })
}

impl ExpandedTermAlgebra {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn nat(&self) -> &NatTransf {
        &self.nat
    }

    /// Expands one source node.
    fn step(&self, t: &Term) -> XTerm {
        match t {
            Term::Bottom => XTerm::Bottom,
            Term::Node(m, xs) => XTerm::Node(
                self.nat.hom().apply(*m),
                self.nat.reindex().iter().map(|&i| XTerm::Leaf(xs[i].clone())).collect(),
            ),
        }
    }

    fn expand(&self, t: &Term) -> Term {
        match t {
            Term::Bottom => Term::Bottom,
            Term::Node(m, xs) => Term::Node(
                self.nat.hom().apply(*m),
                self.nat.reindex().iter().map(|&i| self.expand(&xs[i])).collect(),
            ),
        }
    }

    fn clamp(&self, t: Term) -> Term {
        match self.algebra.term_bound().flatten() {
            Some(n) => t.trunc(n),
            None => t,
        }
    }

    /// `[a]` in normal form.
    pub fn embed(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Term(t) if self.source.contains(a) => Ok(Elem::Term(self.clamp(self.expand(t)))),
            other => Err(Error::OutOfCarrier(format!("{:?} not in {}", other, self.source.name()))),
        }
    }

    /// Normal form of a mixed term, expanding leaves leftmost first.
    pub fn normalize(&self, x: &XTerm) -> Term {
        self.normalize_by(x, &mut |_| 0)
    }

    /// Normal form of a mixed term, expanding at each step the leaf chosen by
    /// `pick(number_of_leaves)` in preorder.
    pub fn normalize_by(&self, x: &XTerm, pick: &mut dyn FnMut(usize) -> usize) -> Term {
        let mut cur = x.clone();
        loop {
            let n = cur.leaf_count();
            if n == 0 {
                break;
            }
            let k = pick(n) % n;
            let mut seen = 0;
            self.expand_nth(&mut cur, k, &mut seen);
        }
        self.clamp(cur.to_term().expect("no leaves left"))
    }

    fn expand_nth(&self, x: &mut XTerm, k: usize, seen: &mut usize) -> bool {
        match x {
            XTerm::Bottom => false,
            XTerm::Leaf(t) => {
                if *seen == k {
                    *x = self.step(&t.clone());
                    true
                } else {
                    *seen += 1;
                    false
                }
            }
            XTerm::Node(_, xs) => xs.iter_mut().any(|c| self.expand_nth(c, k, seen)),
        }
    }
}

/// `μ_¡(C)`: the greatest set of states whose unfolding stays in the image
/// of `μ`, with its induced source structure.
#[derive(Clone, Debug)]
pub struct SubCoalgebra {
    nat: NatTransf,
    parent: Arc<Coalgebra>,
    kept: Vec<usize>,
    coalgebra: Arc<Coalgebra>,
}

/// Whether a single transition has a unique `μ`-preimage over `kept`.
fn preimage(nat: &NatTransf, v: &FValue<usize>, kept: &[bool]) -> Option<FValue<usize>> {
    match v {
        FValue::Bottom => Some(FValue::Bottom),
        FValue::Node(m, cs) => {
            let src = nat.hom().preimage(*m)?;
            let mut d: Vec<Option<usize>> = vec![None; nat.source().arity()];
            for (j, &c) in cs.iter().enumerate() {
                if !kept[c] {
                    return None;
                }
                let slot = &mut d[nat.reindex()[j]];
                match slot {
                    Some(prev) if *prev != c => return None,
                    _ => *slot = Some(c),
                }
            }
            Some(FValue::Node(src, d.into_iter().collect::<Option<Vec<_>>>()?))
        }
    }
}

pub fn mu_shriek(nat: &NatTransf, c: Arc<Coalgebra>) -> Result<SubCoalgebra> {
    if c.sig() != nat.target() {
        return Err(Error::SignatureMismatch(format!("{} is not a {}-coalgebra", c.name(), nat.target().describe())));
    }
    if nat.hom().is_injective() != Some(true) {
        return Err(Error::UnsupportedRightAdjoint("the monoid homomorphism is not injective".to_string()));
    }
    if !nat.is_surjective_reindex() {
        return Err(Error::UnsupportedRightAdjoint("the reindexing is not surjective".to_string()));
    }
    let n = c.len();
    let mut kept = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if kept[i] && preimage(nat, c.chi(i), &kept).is_none() {
                kept[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept_states: Vec<usize> = (0..n).filter(|&i| kept[i]).collect();
    let position: BTreeMap<usize, usize> = kept_states.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let chi = kept_states
        .iter()
        .map(|&i| preimage(nat, c.chi(i), &kept).expect("fixpoint").map(|s| position[s]))
        .collect();
    let names = kept_states.iter().map(|&i| c.state_name(i).to_string()).collect();
    let coalgebra = Coalgebra::new(format!("shriek({})", c.name()), nat.source().clone(), names, chi)?;
    Ok(SubCoalgebra { nat: nat.clone(), parent: c, kept: kept_states, coalgebra: Arc::new(coalgebra) })
}

impl SubCoalgebra {
    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn parent(&self) -> &Arc<Coalgebra> {
        &self.parent
    }

    /// Kept parent states, in parent order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn nat(&self) -> &NatTransf {
        &self.nat
    }

    /// Index in the subcoalgebra of a parent state.
    pub fn position(&self, parent_state: usize) -> Option<usize> {
        self.kept.binary_search(&parent_state).ok()
    }

    /// Whether `states` (parent indices) admit a source structure whose
    /// pushforward is the restriction of the parent structure.
    pub fn admits_structure(nat: &NatTransf, parent: &Coalgebra, states: &[bool]) -> bool {
        (0..parent.len()).all(|i| !states[i] || preimage(nat, parent.chi(i), states).is_some())
    }
}

/// `ε : μ_*(μ_¡(C)) → C`, the inclusion of kept states.
pub fn counit_epsilon(s: &SubCoalgebra) -> Result<CoalgebraMorphism> {
    let pushed = Arc::new(pushforward_coalgebra(&s.nat, &s.coalgebra)?);
    CoalgebraMorphism::new(pushed, s.parent.clone(), s.kept.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::builtins;
    use crate::kernel::{FunctorSig, Monoid, MonoidHom};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    /// `μ : 1 + X → 1 + M × X^b`, `x ↦ (e, x, …, x)`.
    fn diagonal(m: Arc<Monoid>, b: usize) -> NatTransf {
        let triv = arc(Monoid::trivial());
        let h = MonoidHom::table(triv.clone(), m.clone(), vec![m.unit()]).unwrap();
        NatTransf::new(FunctorSig::shape(triv, 1), FunctorSig::shape(m, b), h, vec![0; b]).unwrap()
    }

    #[test]
    fn pullback_of_trees_doubles_the_child() {
        let mu = diagonal(arc(Monoid::bool_or()), 2);
        let t = arc(Algebra::initial(mu.target().clone()).unwrap());
        let p = pullback_algebra(&mu, t).unwrap();
        let x = Elem::Term(Term::node(1, vec![Term::Bottom, Term::Bottom]));
        let y = p.alpha(&FValue::Node(0, vec![x])).unwrap();
        let leaf = Term::node(1, vec![Term::Bottom, Term::Bottom]);
        assert_eq!(y, Elem::Term(Term::node(0, vec![leaf.clone(), leaf])));
    }

    #[test]
    fn pushforward_of_counter_is_perfect_shape() {
        let mu = diagonal(arc(Monoid::trivial()), 2);
        let pushed = pushforward_coalgebra(&mu, &builtins::nat_counter(2)).unwrap();
        assert_eq!(pushed.transitions(), builtins::perfect_shape(2).transitions());
    }

    #[test]
    fn pushforward_of_unit_is_unit() {
        let mu = diagonal(arc(Monoid::bool_or()), 2);
        let pushed = pushforward_coalgebra(&mu, &Coalgebra::unit(mu.source().clone())).unwrap();
        assert_eq!(pushed.transitions(), Coalgebra::unit(mu.target().clone()).transitions());
    }

    fn truth_flip() -> NatTransf {
        let and = arc(Monoid::truth_and());
        let or = arc(Monoid::truth_or());
        // T ↦ F, F ↦ T
        let h = MonoidHom::table(and.clone(), or.clone(), vec![1, 0]).unwrap();
        NatTransf::new(FunctorSig::constant(and), FunctorSig::constant(or), h, vec![]).unwrap()
    }

    #[test]
    fn truth_pushout_swaps_the_values() {
        let mu = truth_flip();
        let a = arc(
            Algebra::finite(
                "A",
                mu.source().clone(),
                vec!["T_A".into(), "F_A".into(), "other".into()],
                vec![0, 1],
            )
            .unwrap(),
        );
        let q = mu_bang_const(&mu, a).unwrap();
        assert_eq!(q.classes(), vec![
            vec!["T_A".to_string(), "F'".to_string()],
            vec!["F_A".to_string(), "T'".to_string()],
            vec!["other".to_string()],
        ]);
        // the structure sends T' to the class of F_A
        assert_eq!(q.algebra().alpha(&FValue::Node(0, vec![])).unwrap(), Elem::Fin(1));
    }

    #[test]
    fn pushout_along_identity_is_the_monoid() {
        let m = arc(Monoid::bool_or());
        let mu = NatTransf::identity(FunctorSig::constant(m.clone()));
        let a = arc(Algebra::finite("M", mu.source().clone(), vec!["0".into(), "1".into()], vec![0, 1]).unwrap());
        let q = mu_bang_const(&mu, a).unwrap();
        assert_eq!(q.classes().len(), 2);
        assert!(q.classes().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn pushout_from_the_trivial_monoid() {
        let triv = arc(Monoid::trivial());
        let m = arc(Monoid::bool_or());
        let h = MonoidHom::table(triv.clone(), m.clone(), vec![0]).unwrap();
        let mu = NatTransf::new(FunctorSig::constant(triv), FunctorSig::constant(m), h, vec![]).unwrap();
        let a = arc(Algebra::finite("A", mu.source().clone(), vec!["a".into()], vec![0]).unwrap());
        let q = mu_bang_const(&mu, a).unwrap();
        assert_eq!(q.classes(), vec![vec!["a".to_string(), "0'".to_string()], vec!["1'".to_string()]]);
    }

    #[test]
    fn numerals_expand_to_perfect_trees() {
        let m = arc(Monoid::bool_or());
        let mu = diagonal(m, 2);
        let nat = arc(Algebra::initial(mu.source().clone()).unwrap());
        let x = mu_bang_term(&mu, nat).unwrap();
        assert_eq!(x.embed(&Elem::Term(Term::numeral(2))).unwrap(), Elem::Term(Term::perfect(0, 2, 2)));
        assert_eq!(x.embed(&Elem::Term(Term::Bottom)).unwrap(), Elem::Term(Term::Bottom));
    }

    #[test]
    fn lists_expand_to_equilevel_trees() {
        let n = arc(Monoid::nat_plus());
        let g = FunctorSig::shape(n.clone(), 1);
        let h = FunctorSig::shape(n.clone(), 2);
        let mu = NatTransf::new(g, h, MonoidHom::identity(n), vec![0, 0]).unwrap();
        let lists = arc(Algebra::initial(mu.source().clone()).unwrap());
        let x = mu_bang_term(&mu, lists).unwrap();
        let leaf5 = Term::node(5, vec![Term::Bottom, Term::Bottom]);
        assert_eq!(
            x.embed(&Elem::Term(Term::list(&[3, 5]))).unwrap(),
            Elem::Term(Term::node(3, vec![leaf5.clone(), leaf5]))
        );
        let mixed = XTerm::Node(7, vec![XTerm::Leaf(Term::list(&[1])), XTerm::Bottom]);
        let mut flip = false;
        let a = x.normalize(&mixed);
        let b = x.normalize_by(&mixed, &mut |n| {
            flip = !flip;
            if flip { n - 1 } else { 0 }
        });
        assert_eq!(a, b);
    }

    fn unit_to_m(m: Arc<Monoid>) -> NatTransf {
        let triv = arc(Monoid::trivial());
        let h = MonoidHom::table(triv.clone(), m.clone(), vec![m.unit()]).unwrap();
        NatTransf::new(FunctorSig::shape(triv, 1), FunctorSig::shape(m, 1), h, vec![0]).unwrap()
    }

    #[test]
    fn shriek_keeps_all_unit_lists() {
        let m = arc(Monoid::bool_or());
        let mu = unit_to_m(m.clone());
        let c = arc(builtins::list_coalg(m, 2).unwrap());
        let s = mu_shriek(&mu, c.clone()).unwrap();
        let kept: Vec<&str> = s.kept().iter().map(|&i| c.state_name(i)).collect();
        assert_eq!(kept, ["#b", "(0 #b)", "(0 (0 #b))"]);
        let eps = counit_epsilon(&s).unwrap();
        assert!(eps.check().holds());
    }

    #[test]
    fn shriek_drops_non_unit_loops() {
        let m = arc(Monoid::bool_or());
        let mu = unit_to_m(m.clone());
        let c = arc(Coalgebra::new("loop", mu.target().clone(), vec!["x".into()], vec![FValue::Node(1, vec![0])]).unwrap());
        let s = mu_shriek(&mu, c).unwrap();
        assert!(s.kept().is_empty());
        assert!(counit_epsilon(&s).unwrap().map().is_empty());
    }

    #[test]
    fn shriek_of_pushforward_keeps_everything() {
        let m = arc(Monoid::bool_or());
        let mu = unit_to_m(m);
        let d = builtins::nat_counter(3);
        let c = arc(pushforward_coalgebra(&mu, &d).unwrap());
        let s = mu_shriek(&mu, c).unwrap();
        assert_eq!(s.kept(), &[0, 1, 2, 3]);
        assert_eq!(s.coalgebra().transitions(), d.transitions());
        assert_eq!(counit_epsilon(&s).unwrap().map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn shriek_rejects_non_injective_homs() {
        let m = arc(Monoid::bool_or());
        let triv = arc(Monoid::trivial());
        let nu = NatTransf::new(
            FunctorSig::shape(m.clone(), 1),
            FunctorSig::shape(triv.clone(), 1),
            MonoidHom::to_unit(m, triv),
            vec![0],
        )
        .unwrap();
        let c = arc(builtins::nat_counter(1));
        assert!(matches!(mu_shriek(&nu, c), Err(Error::UnsupportedRightAdjoint(_))));
    }
}
