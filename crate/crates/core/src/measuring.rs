//! Measurings `φ : C ⊗ A → B`: maps satisfying
//!
//! ```text
//! φ(c, α(v)) = β(F(φ)(∇(χ(c), v)))      for every state c and v ∈ F(A)
//! ```
//!
//! together with their composition and the three transports along natural
//! transformations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::carriers::{Algebra, AlgebraMorphism, AlgebraTag, Coalgebra, Elem};
use crate::error::{Error, Result};
use crate::kernel::{FValue, NatTransf};
use crate::report::LawReport;
use crate::transport::{
    mu_bang_const, mu_bang_term, mu_shriek, pushforward_coalgebra, ExpandedTermAlgebra, QuotientAlgebra,
    QuotientMember, SubCoalgebra, XTerm,
};
use crate::Bounds;

#[derive(Clone, Debug)]
enum Rule {
    /// `cells[c · |A| + index[a]]`; `partial` when the source carrier was
    /// only enumerated to the depth bound.
    Table { index: BTreeMap<Elem, usize>, cells: Vec<Elem>, partial: bool },
    /// `φ(c, t) = β(F(φ)(∇(χ(c), unpack t)))` on a term algebra.
    Structural,
    /// An algebra morphism read through the unit coalgebra.
    Morphism(AlgebraMorphism),
    /// `ψ ∘ (id_D ⊗ φ)` on `D ⊗ C`.
    Composite { outer: Arc<Measuring>, inner: Arc<Measuring> },
    /// The same function over recast carriers.
    Retyped(Arc<Measuring>),
    PushedConst { inner: Arc<Measuring>, a: Arc<QuotientAlgebra>, b: Arc<QuotientAlgebra> },
    PushedTerm { inner: Arc<Measuring>, b: Arc<ExpandedTermAlgebra> },
    /// `f ∘ (ε ⊗ id)`.
    Restricted { inner: Arc<Measuring>, kept: Vec<usize> },
}

/// A measuring from `source` to `target` by `coalg`.
#[derive(Clone, Debug)]
pub struct Measuring {
    name: String,
    coalg: Arc<Coalgebra>,
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    rule: Rule,
}

fn same_sig(c: &Coalgebra, a: &Algebra, b: &Algebra) -> Result<()> {
    if c.sig() != a.sig() || a.sig() != b.sig() {
        return Err(Error::SignatureMismatch(format!(
            "{} over {}, {} over {}, {} over {}",
            c.name(),
            c.sig().describe(),
            a.name(),
            a.sig().describe(),
            b.name(),
            b.sig().describe()
        )));
    }
    Ok(())
}

/// Whether `c` is the one-state coalgebra `∗ ↦ η`.
pub fn is_unit_coalgebra(c: &Coalgebra) -> bool {
    c.len() == 1 && *c.chi(0) == c.sig().eta().map(|_| 0)
}

impl Measuring {
    /// A finite table, row-major by state then by the interning order of the
    /// source carrier. The law is not checked; see [`Measuring::check_law`].
    /// An unbounded source gives a table on its depth-bounded prefix.
    pub fn table(
        name: impl Into<String>,
        coalg: Arc<Coalgebra>,
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        cells: Vec<Elem>,
        bounds: &Bounds,
    ) -> Result<Self> {
        same_sig(&coalg, &source, &target)?;
        let (domain, complete) = source.elements(bounds);
        if cells.len() != coalg.len() * domain.len() {
            return Err(Error::InvalidCarrier(format!(
                "{} cells for {} states and {} elements",
                cells.len(),
                coalg.len(),
                domain.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|x| !target.contains(x)) {
            return Err(Error::OutOfCarrier(format!("{:?} not in {}", bad, target.name())));
        }
        let index = domain.into_iter().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(Measuring { name: name.into(), coalg, source, target, rule: Rule::Table { index, cells, partial: !complete } })
    }

    pub fn from_fn(
        name: impl Into<String>,
        coalg: Arc<Coalgebra>,
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        f: impl Fn(usize, &Elem) -> Elem,
        bounds: &Bounds,
    ) -> Result<Self> {
        let (domain, _) = source.elements(bounds);
        let cells = (0..coalg.len()).flat_map(|c| domain.iter().map(move |a| (c, a))).map(|(c, a)| f(c, a)).collect();
        Measuring::table(name, coalg, source, target, cells, bounds)
    }

    /// The canonical measuring out of a term algebra, defined by recursion on
    /// the term.
    pub fn structural(coalg: Arc<Coalgebra>, source: Arc<Algebra>, target: Arc<Algebra>) -> Result<Self> {
        same_sig(&coalg, &source, &target)?;
        if source.term_bound().is_none() {
            return Err(Error::Unsupported(format!("{} is not a term algebra", source.name())));
        }
        Ok(Measuring {
            name: format!("rec({},{},{})", coalg.name(), source.name(), target.name()),
            coalg,
            source,
            target,
            rule: Rule::Structural,
        })
    }

    /// The measuring by the unit coalgebra induced by an algebra morphism.
    pub fn from_morphism(f: AlgebraMorphism, bounds: &Bounds) -> Result<Self> {
        let report = f.check(bounds);
        if let Some(v) = report.violations.first() {
            return Err(Error::LawViolation(format!("{}: {}", v.law, v.detail)));
        }
        let coalg = Arc::new(Coalgebra::unit(f.source().sig().clone()));
        Ok(Measuring {
            name: format!("mor({},{})", f.source().name(), f.target().name()),
            coalg,
            source: f.source().clone(),
            target: f.target().clone(),
            rule: Rule::Morphism(f),
        })
    }

    /// The algebra morphism underlying a measuring by the unit coalgebra.
    pub fn to_morphism(&self, bounds: &Bounds) -> Result<AlgebraMorphism> {
        if !is_unit_coalgebra(&self.coalg) {
            return Err(Error::Unsupported(format!("{} is not the unit coalgebra", self.coalg.name())));
        }
        match &self.rule {
            Rule::Morphism(f) => Ok(f.clone()),
            Rule::Structural if self.source.tag() == AlgebraTag::Initial => {
                AlgebraMorphism::fold(self.source.clone(), self.target.clone())
            }
            _ => {
                let (domain, _) = self.source.elements(bounds);
                let images = domain.iter().map(|a| self.eval(0, a)).collect::<Result<Vec<_>>>()?;
                AlgebraMorphism::table(self.source.clone(), self.target.clone(), images, bounds)
            }
        }
    }

    /// `ψ ∘_m φ : D ⊗ C ⊗ A → T`.
    pub fn compose(psi: &Arc<Measuring>, phi: &Arc<Measuring>) -> Result<Self> {
        if phi.target != psi.source {
            return Err(Error::SignatureMismatch(format!(
                "{} lands in {} but {} starts from {}",
                phi.name,
                phi.target.name(),
                psi.name,
                psi.source.name()
            )));
        }
        let coalg = Arc::new(Coalgebra::tensor(&psi.coalg, &phi.coalg)?);
        Ok(Measuring {
            name: format!("{}.{}", psi.name, phi.name),
            coalg,
            source: phi.source.clone(),
            target: psi.target.clone(),
            rule: Rule::Composite { outer: psi.clone(), inner: phi.clone() },
        })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coalg(&self) -> &Arc<Coalgebra> {
        &self.coalg
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn is_table(&self) -> bool {
        matches!(self.rule, Rule::Table { .. })
    }

    /// `φ(c, a)`.
    pub fn eval(&self, c: usize, a: &Elem) -> Result<Elem> {
        if c >= self.coalg.len() {
            return Err(Error::OutOfCarrier(format!("state {} not in {}", c, self.coalg.name())));
        }
        match &self.rule {
            Rule::Table { index, cells, .. } => {
                let i = index
                    .get(a)
                    .ok_or_else(|| Error::OutOfCarrier(format!("{} not in {}", self.source.render(a), self.source.name())))?;
                Ok(cells[c * index.len() + i].clone())
            }
            Rule::Structural => match a {
                Elem::Term(t) => self.eval_structural(c, t),
                other => Err(Error::OutOfCarrier(format!("{:?} is not a term", other))),
            },
            Rule::Morphism(f) => f.apply(a),
            Rule::Composite { outer, inner } => {
                let n = inner.coalg.len();
                outer.eval(c / n, &inner.eval(c % n, a)?)
            }
            Rule::Retyped(inner) => inner.eval(c, a),
            Rule::PushedConst { inner, a: qa, b: qb } => match qa.representative(a)? {
                QuotientMember::Source(x) => qb.embed(&inner.eval(c, &x)?),
                QuotientMember::Label(x) => match self.coalg.chi(c) {
                    FValue::Node(m, _) => Ok(qb.embed_label(self.target.sig().monoid().op(*m, x))),
                    FValue::Bottom => Err(Error::KindMismatch("constant functors have no bottom".to_string())),
                },
            },
            Rule::PushedTerm { .. } => match a {
                Elem::Term(t) => self.eval_mixed(c, &XTerm::from_term(t)),
                other => Err(Error::OutOfCarrier(format!("{:?} is not a term", other))),
            },
            Rule::Restricted { inner, kept } => inner.eval(kept[c], a),
        }
    }

    fn eval_structural(&self, c: usize, t: &crate::carriers::Term) -> Result<Elem> {
        let sig = self.source.sig();
        let v = sig.zip(self.coalg.chi(c), &t.unpack())?;
        let w = v.try_map(|(cj, tj)| self.eval_structural(*cj, tj))?;
        self.target.alpha(&w)
    }

    /// A pushed shape measuring on a target term whose leaves hold source
    /// elements: `[a] ↦ [φ(c, a)]`, nodes recurse along the pushed fuel.
    pub fn eval_mixed(&self, c: usize, x: &XTerm) -> Result<Elem> {
        let (inner, b) = match &self.rule {
            Rule::PushedTerm { inner, b } => (inner, b),
            _ => return Err(Error::Unsupported("mixed terms only apply to pushed shape measurings".to_string())),
        };
        let bottom = || -> Result<Elem> {
            let beta_bottom = inner.target.bottom().ok_or_else(|| Error::KindMismatch("no bottom".to_string()))?;
            b.embed(&beta_bottom)
        };
        match x {
            XTerm::Leaf(t) => b.embed(&inner.eval(c, &Elem::Term(t.clone()))?),
            XTerm::Bottom => bottom(),
            XTerm::Node(m, ts) => match self.coalg.chi(c) {
                FValue::Bottom => bottom(),
                FValue::Node(mc, cs) => {
                    let label = self.target.sig().monoid().op(*mc, *m);
                    let kids = cs.iter().zip(ts).map(|(&cj, tj)| self.eval_mixed(cj, tj)).collect::<Result<Vec<_>>>()?;
                    self.target.alpha(&FValue::Node(label, kids))
                }
            },
        }
    }

    /// Whether `α(v)` falls outside a depth-bounded table.
    fn beyond_table(&self, v: &FValue<Elem>) -> bool {
        match &self.rule {
            Rule::Table { index, partial: true, .. } => {
                self.source.alpha(v).is_ok_and(|a| !index.contains_key(&a))
            }
            _ => false,
        }
    }

    fn law_case(&self, c: usize, v: &FValue<Elem>) -> Result<Option<String>> {
        let a = self.source.alpha(v)?;
        let left = self.eval(c, &a)?;
        if !self.target.contains(&left) {
            return Ok(Some(format!(
                "φ({}, {}) = {} lies outside {}",
                self.coalg.state_name(c),
                self.source.render(&a),
                self.target.render(&left),
                self.target.name()
            )));
        }
        let zipped = self.source.sig().zip(self.coalg.chi(c), v)?;
        let right = self.target.alpha(&zipped.try_map(|(cj, aj)| self.eval(*cj, aj))?)?;
        if left == right {
            return Ok(None);
        }
        Ok(Some(format!(
            "at c = {}, v = {}: φ(c, α(v)) = {} but β(F(φ)(∇(χ(c), v))) = {}",
            self.coalg.state_name(c),
            self.source.render_value(v),
            self.target.render(&left),
            self.target.render(&right)
        )))
    }

    /// Checks the measuring law on every state and every value of `F(A)`
    /// over the (bounded) carrier of `A`.
    pub fn check_law(&self, bounds: &Bounds) -> LawReport {
        let mut report = LawReport::new(format!("measuring {}", self.name));
        let (elems, all) = self.source.elements(bounds);
        let (values, all_labels) = self.source.values(&elems, bounds);
        report.exhaustive = all && all_labels;
        'outer: for v in values {
            if self.beyond_table(&v) {
                report.exhaustive = false;
                continue;
            }
            for c in 0..self.coalg.len() {
                if report.checked >= bounds.budget {
                    report.exhaustive = false;
                    break 'outer;
                }
                report.checked += 1;
                match self.law_case(c, &v) {
                    Ok(None) => {}
                    Ok(Some(w)) => report.violate(clause(self.coalg.chi(c), &v), w),
                    Err(e) => report.violate("evaluation", format!("at c = {}: {}", self.coalg.state_name(c), e)),
                }
            }
        }
        report
    }

    /// Like [`Measuring::check_law`] but stops at the first violation; cases
    /// beyond the budget are not examined.
    pub fn satisfies_law(&self, bounds: &Bounds) -> Result<bool> {
        let (elems, _) = self.source.elements(bounds);
        let (values, _) = self.source.values(&elems, bounds);
        let mut checked = 0u64;
        for v in values {
            if self.beyond_table(&v) {
                continue;
            }
            for c in 0..self.coalg.len() {
                checked += 1;
                if checked > bounds.budget {
                    return Ok(true);
                }
                if self.law_case(c, &v)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Pointwise comparison with `other`, whose state `map(c)` corresponds to
    /// state `c` of `self`; returns the first few differences.
    pub fn differences(
        &self,
        other: &Measuring,
        map: &dyn Fn(usize) -> usize,
        bounds: &Bounds,
    ) -> Result<Vec<String>> {
        let (elems, _) = self.source.elements(bounds);
        let mut out = Vec::new();
        for c in 0..self.coalg.len() {
            for a in &elems {
                let x = self.eval(c, a)?;
                let y = other.eval(map(c), a)?;
                if x != y {
                    out.push(format!(
                        "at ({}, {}): {} vs {}",
                        self.coalg.state_name(c),
                        self.source.render(a),
                        self.target.render(&x),
                        other.target.render(&y)
                    ));
                    if out.len() >= 4 {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(state, input, output)` over the (bounded) source carrier.
    pub fn rows(&self, bounds: &Bounds) -> Result<Vec<(String, String, String)>> {
        let (elems, _) = self.source.elements(bounds);
        let mut out = Vec::with_capacity(self.coalg.len() * elems.len());
        for c in 0..self.coalg.len() {
            for a in &elems {
                let b = self.eval(c, a)?;
                out.push((self.coalg.state_name(c).to_string(), self.source.render(a), self.target.render(&b)));
            }
        }
        Ok(out)
    }
}

fn clause(chi: &FValue<usize>, v: &FValue<Elem>) -> &'static str {
    match (v, chi) {
        (FValue::Bottom, _) => "bottom clause",
        (_, FValue::Bottom) => "exhausted fuel clause",
        _ => "node clause",
    }
}

/// Whether `nu ∘ mu` acts as the identity on sampled values.
fn is_section(nu: &NatTransf, mu: &NatTransf, bounds: &Bounds) -> Result<bool> {
    let comp = nu.after(mu).map_err(|e| Error::SectionFails(e.to_string()))?;
    let (labels, _) = mu.source().monoid().sample(bounds.labels);
    let k = mu.source().arity().max(1) + 1;
    Ok(mu.source().values_over(&labels, k).iter().all(|v| comp.apply(v).map(|w| w == *v).unwrap_or(false)))
}

/// Recasts an `F`-measuring as a `G`-measuring over `μ_*(C)`, `ν*(A)`,
/// `ν*(B)`, given `ν ∘ μ = id`.
pub fn phi_embed(nu: &NatTransf, mu: &NatTransf, phi: &Arc<Measuring>, bounds: &Bounds) -> Result<Measuring> {
    if mu.source() != phi.source.sig() || nu.target() != phi.source.sig() {
        return Err(Error::SignatureMismatch(format!("{} does not match the transformations", phi.name)));
    }
    if !is_section(nu, mu, bounds)? {
        return Err(Error::SectionFails(format!("{} after {} is not the identity", nu.describe(), mu.describe())));
    }
    let coalg = Arc::new(pushforward_coalgebra(mu, &phi.coalg)?);
    let source = Arc::new(Algebra::pullback(nu, phi.source.clone())?);
    let target = Arc::new(Algebra::pullback(nu, phi.target.clone())?);
    Ok(Measuring {
        name: format!("embed({})", phi.name),
        coalg,
        source,
        target,
        rule: Rule::Retyped(phi.clone()),
    })
}

/// Pushes a measuring to `μ_*(C) ⊗ μ_!(A) → μ_!(B)`.
pub fn phi_push(mu: &NatTransf, phi: &Arc<Measuring>) -> Result<Measuring> {
    if mu.source() != phi.source.sig() {
        return Err(Error::SignatureMismatch(format!("{} does not start at {}", mu.describe(), phi.source.sig().describe())));
    }
    let coalg = Arc::new(pushforward_coalgebra(mu, &phi.coalg)?);
    let name = format!("push({})", phi.name);
    if mu.source().is_shape() {
        let a = mu_bang_term(mu, phi.source.clone())?;
        let b = mu_bang_term(mu, phi.target.clone())?;
        Ok(Measuring {
            name,
            coalg,
            source: a.algebra().clone(),
            target: b.algebra().clone(),
            rule: Rule::PushedTerm { inner: phi.clone(), b: Arc::new(b) },
        })
    } else {
        let a = mu_bang_const(mu, phi.source.clone())?;
        let b = mu_bang_const(mu, phi.target.clone())?;
        Ok(Measuring {
            name,
            coalg,
            source: a.algebra().clone(),
            target: b.algebra().clone(),
            rule: Rule::PushedConst { inner: phi.clone(), a: Arc::new(a), b: Arc::new(b) },
        })
    }
}

/// Pulls a `G`-measuring back to `μ_¡(C) ⊗ μ*(A) → μ*(B)` by restriction.
pub fn phi_pull(mu: &NatTransf, f: &Arc<Measuring>) -> Result<Measuring> {
    let sub: SubCoalgebra = mu_shriek(mu, f.coalg.clone())?;
    let source = Arc::new(Algebra::pullback(mu, f.source.clone())?);
    let target = Arc::new(Algebra::pullback(mu, f.target.clone())?);
    Ok(Measuring {
        name: format!("pull({})", f.name),
        coalg: sub.coalgebra().clone(),
        source,
        target,
        rule: Rule::Restricted { inner: f.clone(), kept: sub.kept().to_vec() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::{builtins, Term};
    use crate::kernel::{FunctorSig, Monoid, MonoidHom};
    use alloc::vec;

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn list_zip_is_a_measuring() {
        let m = arc(Monoid::bool_or());
        let c = arc(builtins::list_coalg(m.clone(), 2).unwrap());
        let a = arc(builtins::lists_bounded(m.clone(), 2));
        let star = arc(Algebra::initial(FunctorSig::shape(m, 1)).unwrap());
        let zip = Measuring::structural(c.clone(), a, star).unwrap();
        assert!(zip.check_law(&b()).holds());
        let x = zip.eval(c.state_named("(1 (0 #b))").unwrap(), &Elem::Term(Term::list(&[0, 0, 1]))).unwrap();
        assert_eq!(x, Elem::Term(Term::list(&[1, 0])));
    }

    #[test]
    fn constant_measuring_fails_the_bottom_clause() {
        let c = arc(builtins::nat_counter(1));
        let a = arc(builtins::nat_bounded(1));
        let top = Elem::Term(Term::numeral(1));
        let phi = Measuring::from_fn("k", c, a.clone(), a, |_, _| top.clone(), &b()).unwrap();
        let report = phi.check_law(&b());
        assert!(report.violations.iter().any(|v| v.law == "bottom clause"));
    }

    #[test]
    fn morphisms_round_trip_through_the_unit_coalgebra() {
        let sig = FunctorSig::shape(arc(Monoid::nat_plus()), 2);
        let t = arc(Algebra::initial(sig.clone()).unwrap());
        let sum = arc(Algebra::label_sum(sig).unwrap());
        let f = AlgebraMorphism::fold(t, sum).unwrap();
        let small = Bounds { depth: 2, ..b() };
        let phi = Measuring::from_morphism(f.clone(), &small).unwrap();
        assert!(phi.check_law(&small).holds());
        assert_eq!(phi.to_morphism(&small).unwrap(), f);
    }

    #[test]
    fn non_morphisms_are_rejected() {
        let a = arc(builtins::nat_bounded(1));
        let images = vec![Elem::Term(Term::numeral(1)), Elem::Term(Term::numeral(1))];
        let f = AlgebraMorphism::table(a.clone(), a, images, &b()).unwrap();
        assert!(matches!(Measuring::from_morphism(f, &b()), Err(Error::LawViolation(_))));
    }

    #[test]
    fn min_zip_counts_the_shorter_fuel() {
        // 𝕟° ⊗ 𝕟 → μ*(M*) with μ : x ↦ (e, x)
        let m = arc(Monoid::bool_or());
        let triv = arc(Monoid::trivial());
        let mu = NatTransf::new(
            FunctorSig::shape(triv.clone(), 1),
            FunctorSig::shape(m.clone(), 1),
            MonoidHom::table(triv, m.clone(), vec![0]).unwrap(),
            vec![0],
        )
        .unwrap();
        let lists = arc(Algebra::initial(FunctorSig::shape(m, 1)).unwrap());
        let target = arc(Algebra::pullback(&mu, lists).unwrap());
        let c = arc(builtins::nat_counter(4));
        let phi = Measuring::structural(c, arc(builtins::nat_bounded(4)), target).unwrap();
        assert!(phi.check_law(&b()).holds());
        for i in 0..=4 {
            for j in 0..=4 {
                let out = phi.eval(i, &Elem::Term(Term::numeral(j))).unwrap();
                assert_eq!(out, Elem::Term(Term::list(&vec![0; i.min(j)])));
            }
        }
    }

    #[test]
    fn composition_over_the_unit_is_the_measuring() {
        let m = arc(Monoid::bool_or());
        let c = arc(builtins::list_coalg(m.clone(), 2).unwrap());
        let a = arc(builtins::lists_bounded(m.clone(), 2));
        let zip = arc(Measuring::structural(c, a.clone(), a.clone()).unwrap());
        let u = arc(Coalgebra::unit(a.sig().clone()));
        let id = arc(Measuring::structural(u, a.clone(), a).unwrap());
        let comp = Measuring::compose(&id, &zip).unwrap();
        assert!(comp.check_law(&b()).holds());
        assert!(comp.differences(&zip, &|c| c, &b()).unwrap().is_empty());
    }

    #[test]
    fn pushed_leaves_agree_with_their_expansion() {
        let n = arc(Monoid::nat_plus());
        let g = FunctorSig::shape(n.clone(), 1);
        let h = FunctorSig::shape(n.clone(), 2);
        let mu = NatTransf::new(g.clone(), h, MonoidHom::identity(n), vec![0, 0]).unwrap();
        let c = arc(Coalgebra::of_terms("fuel", g.clone(), &[Term::list(&[0, 1, 2])]).unwrap());
        let a = arc(Algebra::initial(g).unwrap());
        let phi = arc(Measuring::structural(c.clone(), a.clone(), a).unwrap());
        let pushed = phi_push(&mu, &phi).unwrap();
        let bnd = Bounds { labels: 2, depth: 2, ..b() };
        assert!(pushed.check_law(&bnd).holds());
        let top = c.state_named("(0 (1 (2 #b)))").unwrap();
        for list in [vec![], vec![4], vec![4, 7], vec![1, 1, 1, 1]] {
            let leaf = XTerm::Leaf(Term::list(&list));
            let x = pushed.eval_mixed(top, &leaf).unwrap();
            let t = crate::transport::mu_bang_term(&mu, phi.source().clone()).unwrap();
            let y = pushed.eval(top, &t.embed(&Elem::Term(Term::list(&list))).unwrap()).unwrap();
            assert_eq!(x, y, "{:?}", list);
        }
    }
}
