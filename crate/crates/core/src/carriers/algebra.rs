use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::term::Term;
use crate::error::{Error, Result};
use crate::kernel::{render_value, FValue, FunctorSig, Label, NatTransf};
use crate::report::LawReport;
use crate::Bounds;

/// A carrier element. Finite algebras use indices, the builtin numeric
/// algebras use naturals and term algebras use terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Fin(usize),
    Nat(u64),
    Term(Term),
}

impl Elem {
    pub fn as_fin(&self) -> Option<usize> {
        match self {
            Elem::Fin(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Elem::Term(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraTag {
    Initial,
    Bounded(usize),
    Finite,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Structure {
    /// `table[code(v)]` for every `v ∈ F({0..n})`.
    Finite { names: Vec<String>, table: Vec<usize> },
    /// Terms with node construction, truncated at `bound` when present.
    Terms { bound: Option<usize> },
    /// Naturals with `⊥ ↦ 0`, `(m, x⃗) ↦ 1 + max x⃗`.
    Height,
    /// Naturals with `⊥ ↦ 0`, `(m, x⃗) ↦ m + Σ x⃗`.
    LabelSum,
    /// `α ∘ μ` on the carrier of `base`.
    Pullback { nat: NatTransf, base: Arc<Algebra> },
}

/// An algebra `α : F(A) → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    sig: FunctorSig,
    structure: Structure,
}

impl Algebra {
    /// A finite algebra from its full structure table, indexed as
    /// [`FunctorSig::values_over`] enumerates `F({0..n})`.
    pub fn finite(name: impl Into<String>, sig: FunctorSig, names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let labels = sig
            .monoid()
            .size()
            .ok_or_else(|| Error::NotEnumerable(format!("finite algebra {} over {}", name, sig.monoid().name())))?;
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidCarrier(format!("{} has an empty carrier", name)));
        }
        let expected = sig
            .value_count(labels, n)
            .ok_or_else(|| Error::NotEnumerable(format!("structure table of {} is too large", name)))?;
        if table.len() != expected {
            return Err(Error::InvalidCarrier(format!(
                "{} has {} structure entries, expected {}",
                name,
                table.len(),
                expected
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfCarrier(format!("{} maps into index {}", name, bad)));
        }
        Ok(Algebra { name, sig, structure: Structure::Finite { names, table } })
    }

    pub fn from_fn(
        name: impl Into<String>,
        sig: FunctorSig,
        names: Vec<String>,
        alpha: impl Fn(&FValue<usize>) -> usize,
    ) -> Result<Self> {
        let labels = sig
            .monoid()
            .elements()
            .ok_or_else(|| Error::NotEnumerable(format!("finite algebra over {}", sig.monoid().name())))?;
        let table = sig.values_over(&labels, names.len()).iter().map(alpha).collect();
        Algebra::finite(name, sig, names, table)
    }

    /// The initial algebra: all finite terms.
    pub fn initial(sig: FunctorSig) -> Result<Self> {
        if !sig.is_shape() {
            return Err(Error::KindMismatch("term algebras need a shape signature".to_string()));
        }
        Ok(Algebra { name: format!("T[{}]", sig.describe()), sig, structure: Structure::Terms { bound: None } })
    }

    /// Terms of depth at most `n` with truncating node construction.
    pub fn bounded(sig: FunctorSig, n: usize) -> Result<Self> {
        if !sig.is_shape() {
            return Err(Error::KindMismatch("term algebras need a shape signature".to_string()));
        }
        Ok(Algebra {
            name: format!("T[{}]_{}", sig.describe(), n),
            sig,
            structure: Structure::Terms { bound: Some(n) },
        })
    }

    pub fn height(sig: FunctorSig) -> Result<Self> {
        if !sig.is_shape() {
            return Err(Error::KindMismatch("height algebra needs a shape signature".to_string()));
        }
        Ok(Algebra { name: "height".to_string(), sig, structure: Structure::Height })
    }

    pub fn label_sum(sig: FunctorSig) -> Result<Self> {
        if !sig.is_shape() || sig.monoid().is_finite() {
            return Err(Error::KindMismatch("label sum needs a shape signature over the naturals".to_string()));
        }
        Ok(Algebra { name: "sum".to_string(), sig, structure: Structure::LabelSum })
    }

    /// `μ*(B)`: the structure `F(B) → G(B) → B`.
    pub fn pullback(nat: &NatTransf, base: Arc<Algebra>) -> Result<Self> {
        if nat.target() != &base.sig {
            return Err(Error::SignatureMismatch(format!(
                "cannot pull {} back along {}",
                base.sig.describe(),
                nat.describe()
            )));
        }
        Ok(Algebra {
            name: format!("pull({})", base.name),
            sig: nat.source().clone(),
            structure: Structure::Pullback { nat: nat.clone(), base },
        })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> &FunctorSig {
        &self.sig
    }

    pub fn tag(&self) -> AlgebraTag {
        match &self.structure {
            Structure::Terms { bound: None } => AlgebraTag::Initial,
            Structure::Terms { bound: Some(n) } => AlgebraTag::Bounded(*n),
            Structure::Finite { .. } => AlgebraTag::Finite,
            _ => AlgebraTag::Derived,
        }
    }

    /// `Some(bound)` for term algebras.
    pub fn term_bound(&self) -> Option<Option<usize>> {
        match &self.structure {
            Structure::Terms { bound } => Some(*bound),
            _ => None,
        }
    }

    /// The finite structure table, if this is a finite algebra.
    pub fn table(&self) -> Option<(&[String], &[usize])> {
        match &self.structure {
            Structure::Finite { names, table } => Some((names, table)),
            _ => None,
        }
    }

    pub fn pullback_parts(&self) -> Option<(&NatTransf, &Arc<Algebra>)> {
        match &self.structure {
            Structure::Pullback { nat, base } => Some((nat, base)),
            _ => None,
        }
    }

    /// The structure map.
    pub fn alpha(&self, v: &FValue<Elem>) -> Result<Elem> {
        self.sig.check(v)?;
        match &self.structure {
            Structure::Finite { names, table } => {
                let idx = v.try_map(|x| match x {
                    Elem::Fin(i) if *i < names.len() => Ok(*i),
                    other => Err(Error::OutOfCarrier(format!("{:?} not in {}", other, self.name))),
                })?;
                Ok(Elem::Fin(table[self.sig.value_code(&idx, names.len())]))
            }
            Structure::Terms { bound } => {
                let t = Term::pack(v.try_map(|x| match x {
                    Elem::Term(t) => Ok(t.clone()),
                    other => Err(Error::OutOfCarrier(format!("{:?} is not a term", other))),
                })?);
                Ok(Elem::Term(match bound {
                    Some(n) => t.trunc(*n),
                    None => t,
                }))
            }
            Structure::Height => {
                let ns = v.try_map(nat_of)?;
                Ok(Elem::Nat(match ns {
                    FValue::Bottom => 0,
                    FValue::Node(_, xs) => 1 + xs.into_iter().max().unwrap_or(0),
                }))
            }
            Structure::LabelSum => {
                let ns = v.try_map(nat_of)?;
                Ok(Elem::Nat(match ns {
                    FValue::Bottom => 0,
                    FValue::Node(m, xs) => xs.into_iter().fold(m, u64::saturating_add),
                }))
            }
            Structure::Pullback { nat, base } => base.alpha(&nat.apply(v)?),
        }
    }

    /// `α(⊥)` for shape signatures.
    pub fn bottom(&self) -> Option<Elem> {
        if self.sig.has_bottom() {
            self.alpha(&FValue::Bottom).ok()
        } else {
            None
        }
    }

    /// Whether [`Algebra::elements`] lists the whole carrier.
    pub fn is_enumerable(&self) -> bool {
        match &self.structure {
            Structure::Finite { .. } => true,
            Structure::Terms { bound } => bound.is_some() && self.sig.monoid().is_finite(),
            Structure::Height | Structure::LabelSum => false,
            Structure::Pullback { base, .. } => base.is_enumerable(),
        }
    }

    /// The carrier in interning order, or a bounded prefix of it; the flag
    /// tells whether the list is complete.
    pub fn elements(&self, bounds: &Bounds) -> (Vec<Elem>, bool) {
        match &self.structure {
            Structure::Finite { names, .. } => ((0..names.len()).map(Elem::Fin).collect(), true),
            Structure::Terms { bound } => {
                let (labels, all_labels) = self.sig.monoid().sample(bounds.labels);
                let depth = bound.unwrap_or(bounds.depth);
                let terms = Term::enumerate(self.sig.arity(), &labels, depth);
                (terms.into_iter().map(Elem::Term).collect(), all_labels && bound.is_some())
            }
            Structure::Height | Structure::LabelSum => ((0..=bounds.depth as u64).map(Elem::Nat).collect(), false),
            Structure::Pullback { base, .. } => base.elements(bounds),
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (&self.structure, x) {
            (Structure::Finite { names, .. }, Elem::Fin(i)) => *i < names.len(),
            (Structure::Terms { bound }, Elem::Term(t)) => {
                t.fits(&self.sig) && bound.is_none_or(|n| t.depth() <= n)
            }
            (Structure::Height | Structure::LabelSum, Elem::Nat(_)) => true,
            (Structure::Pullback { base, .. }, x) => base.contains(x),
            _ => false,
        }
    }

    pub fn render(&self, x: &Elem) -> String {
        match (&self.structure, x) {
            (Structure::Finite { names, .. }, Elem::Fin(i)) if *i < names.len() => names[*i].clone(),
            (Structure::Pullback { base, .. }, x) => base.render(x),
            (_, Elem::Term(t)) => t.render(self.sig.monoid()),
            (_, Elem::Nat(n)) => n.to_string(),
            (_, Elem::Fin(i)) => format!("#{}", i),
        }
    }

    /// Position of an element in [`Algebra::elements`], by name for finite
    /// algebras.
    pub fn element_named(&self, name: &str) -> Option<Elem> {
        match &self.structure {
            Structure::Finite { names, .. } => names.iter().position(|n| n == name).map(Elem::Fin),
            Structure::Pullback { base, .. } => base.element_named(name),
            _ => None,
        }
    }

    /// Structural recursion `fold(t) = α(F(fold)(unpack t))`.
    pub fn fold(&self, t: &Term) -> Result<Elem> {
        if !self.sig.is_shape() {
            return Err(Error::KindMismatch("fold needs a shape signature".to_string()));
        }
        let v = t.unpack().try_map(|c| self.fold(c))?;
        self.alpha(&v)
    }

    pub fn render_value(&self, v: &FValue<Elem>) -> String {
        render_value(&self.sig, v, |x| self.render(x))
    }

    /// All values of `F(A)` over the listed elements and sampled labels.
    pub(crate) fn values<'a>(
        &self,
        elems: &'a [Elem],
        bounds: &Bounds,
    ) -> (impl Iterator<Item = FValue<Elem>> + 'a, bool) {
        let (labels, all_labels) = self.sig.monoid().sample(bounds.labels);
        let vals = self.sig.values_iter(labels, elems.len()).map(move |v| v.map(|&i| elems[i].clone()));
        (vals, all_labels)
    }

    /// All algebra morphisms into `target`, by backtracking over the source
    /// carrier with the morphism equations checked as soon as their cells are
    /// assigned.
    pub fn morphisms_to(self: &Arc<Self>, target: &Arc<Algebra>, bounds: &Bounds) -> Result<(Vec<AlgebraMorphism>, bool)> {
        if self.sig != target.sig {
            return Err(Error::SignatureMismatch(format!(
                "{} and {} have different signatures",
                self.name, target.name
            )));
        }
        if !self.is_enumerable() || !target.is_enumerable() {
            return Err(Error::NotEnumerable("morphism enumeration needs finite carriers".to_string()));
        }
        let (src, _) = self.elements(bounds);
        let (tgt, _) = target.elements(bounds);
        let src_index: BTreeMap<&Elem, usize> = src.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let tgt_index: BTreeMap<Elem, usize> = tgt.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let values: Vec<_> = self.values(&src, bounds).0.collect();

        // Equation f(α(v)) = β(F(f)(v)), bucketed by its largest cell.
        struct Eq {
            lhs: usize,
            label: Option<Label>,
            args: Vec<usize>,
        }
        let mut buckets: Vec<Vec<Eq>> = (0..src.len()).map(|_| Vec::new()).collect();
        for v in &values {
            let a = self.alpha(v)?;
            let lhs = *src_index
                .get(&a)
                .ok_or_else(|| Error::OutOfCarrier(format!("{} leaves the carrier", self.render(&a))))?;
            let idx = v.map(|x| src_index[x]);
            let (label, args) = match idx {
                FValue::Bottom => (None, Vec::new()),
                FValue::Node(m, xs) => (Some(m), xs),
            };
            let top = args.iter().copied().chain([lhs]).max().unwrap_or(lhs);
            buckets[top].push(Eq { lhs, label, args });
        }

        let mut beta_cache: BTreeMap<(Option<Label>, Vec<usize>), usize> = BTreeMap::new();
        let mut beta = |label: Option<Label>, args: &[usize]| -> Result<usize> {
            let key = (label, args.to_vec());
            if let Some(&k) = beta_cache.get(&key) {
                return Ok(k);
            }
            let v = match label {
                None => FValue::Bottom,
                Some(m) => FValue::Node(m, args.iter().map(|&i| tgt[i].clone()).collect()),
            };
            let b = target.alpha(&v)?;
            let k = *tgt_index
                .get(&b)
                .ok_or_else(|| Error::OutOfCarrier(format!("{} leaves {}", target.render(&b), target.name)))?;
            beta_cache.insert(key, k);
            Ok(k)
        };

        let n = src.len();
        let k = tgt.len();
        let mut out = Vec::new();
        let mut assign = vec![0usize; n];
        let mut steps = 0u64;
        let mut complete = true;
        // Iterative depth-first search over assignments in index order.
        let mut pos = 0usize;
        let mut next_value = vec![0usize; n + 1];
        loop {
            if pos == n {
                out.push(AlgebraMorphism {
                    source: self.clone(),
                    target: target.clone(),
                    map: MorphismMap::Table {
                        domain: src.clone(),
                        images: assign.iter().map(|&i| tgt[i].clone()).collect(),
                    },
                });
                pos -= 1;
                continue;
            }
            if next_value[pos] == k {
                next_value[pos] = 0;
                if pos == 0 {
                    break;
                }
                pos -= 1;
                continue;
            }
            steps += 1;
            if steps > bounds.budget {
                complete = false;
                break;
            }
            assign[pos] = next_value[pos];
            next_value[pos] += 1;
            let mut ok = true;
            for eq in &buckets[pos] {
                let args: Vec<usize> = eq.args.iter().map(|&i| assign[i]).collect();
                if assign[eq.lhs] != beta(eq.label, &args)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                pos += 1;
            }
        }
        Ok((out, complete))
    }
}

fn nat_of(x: &Elem) -> Result<u64> {
    match x {
        Elem::Nat(n) => Ok(*n),
        other => Err(Error::OutOfCarrier(format!("{:?} is not a natural", other))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismMap {
    Table { domain: Vec<Elem>, images: Vec<Elem> },
    /// The unique map out of an initial algebra.
    Fold,
}

/// A function between algebra carriers, checked against the morphism
/// equations by [`AlgebraMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    map: MorphismMap,
}

impl AlgebraMorphism {
    pub fn table(source: Arc<Algebra>, target: Arc<Algebra>, images: Vec<Elem>, bounds: &Bounds) -> Result<Self> {
        if !source.is_enumerable() {
            return Err(Error::NotEnumerable(format!("{} is not finite", source.name)));
        }
        let (domain, _) = source.elements(bounds);
        if domain.len() != images.len() {
            return Err(Error::InvalidCarrier(format!(
                "{} images for {} source elements",
                images.len(),
                domain.len()
            )));
        }
        if let Some(bad) = images.iter().find(|x| !target.contains(x)) {
            return Err(Error::OutOfCarrier(format!("{:?} not in {}", bad, target.name)));
        }
        Ok(AlgebraMorphism { source, target, map: MorphismMap::Table { domain, images } })
    }

    pub fn fold(source: Arc<Algebra>, target: Arc<Algebra>) -> Result<Self> {
        if source.tag() != AlgebraTag::Initial {
            return Err(Error::Unsupported(format!("{} is not an initial algebra", source.name)));
        }
        if source.sig != target.sig {
            return Err(Error::SignatureMismatch(format!("{} vs {}", source.sig.describe(), target.sig.describe())));
        }
        Ok(AlgebraMorphism { source, target, map: MorphismMap::Fold })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn map(&self) -> &MorphismMap {
        &self.map
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        match &self.map {
            MorphismMap::Table { domain, images } => domain
                .iter()
                .position(|d| d == x)
                .map(|i| images[i].clone())
                .ok_or_else(|| Error::OutOfCarrier(format!("{} not in {}", self.source.render(x), self.source.name))),
            MorphismMap::Fold => match x {
                Elem::Term(t) => self.target.fold(t),
                other => Err(Error::OutOfCarrier(format!("{:?} is not a term", other))),
            },
        }
    }

    /// `f(α(v)) = β(F(f)(v))` on all values over the (bounded) source carrier.
    pub fn check(&self, bounds: &Bounds) -> LawReport {
        let mut report = LawReport::new(format!("morphism {} -> {}", self.source.name, self.target.name));
        let (elems, all) = self.source.elements(bounds);
        let (values, all_labels) = self.source.values(&elems, bounds);
        report.exhaustive = all && all_labels;
        for v in values {
            if report.checked >= bounds.budget {
                report.exhaustive = false;
                break;
            }
            report.checked += 1;
            let outcome = (|| -> Result<Option<(Elem, Elem)>> {
                let left = self.apply(&self.source.alpha(&v)?)?;
                let right = self.target.alpha(&v.try_map(|x| self.apply(x))?)?;
                Ok((left != right).then_some((left, right)))
            })();
            match outcome {
                Ok(None) => {}
                Ok(Some((l, r))) => report.violate(
                    "morphism",
                    format!(
                        "f(α{}) = {} but β(F f{}) = {}",
                        self.source.render_value(&v),
                        self.target.render(&l),
                        self.source.render_value(&v),
                        self.target.render(&r)
                    ),
                ),
                Err(e) => report.violate("morphism", format!("at {}: {}", self.source.render_value(&v), e)),
            }
        }
        report
    }

    /// Pointwise equality on the listed elements.
    pub fn agrees_on(&self, other: &AlgebraMorphism, elems: &[Elem]) -> Result<bool> {
        for x in elems {
            if self.apply(x)? != other.apply(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self ∘ first` as a table on the source carrier of `first`.
    pub fn after(&self, first: &AlgebraMorphism, bounds: &Bounds) -> Result<AlgebraMorphism> {
        let (domain, _) = first.source.elements(bounds);
        let images = domain.iter().map(|x| self.apply(&first.apply(x)?)).collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::table(first.source.clone(), self.target.clone(), images, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Monoid;

    fn triv1() -> FunctorSig {
        FunctorSig::shape(Arc::new(Monoid::trivial()), 1)
    }

    #[test]
    fn bounded_numerals_saturate() {
        let a = Algebra::bounded(triv1(), 2).unwrap();
        let (elems, all) = a.elements(&Bounds::default());
        assert!(all);
        assert_eq!(elems, vec![
            Elem::Term(Term::numeral(0)),
            Elem::Term(Term::numeral(1)),
            Elem::Term(Term::numeral(2))
        ]);
        let top = Elem::Term(Term::numeral(2));
        assert_eq!(a.alpha(&FValue::Node(0, vec![top.clone()])).unwrap(), top);
    }

    #[test]
    fn bounded_boolor_trees_of_depth_one() {
        let sig = FunctorSig::shape(Arc::new(Monoid::bool_or()), 2);
        let a = Algebra::bounded(sig, 1).unwrap();
        let (elems, _) = a.elements(&Bounds::default());
        assert_eq!(elems.len(), 3);
        let leaf1 = Elem::Term(Term::node(1, vec![Term::Bottom, Term::Bottom]));
        let v = FValue::Node(1, vec![leaf1.clone(), leaf1.clone()]);
        assert_eq!(a.alpha(&v).unwrap(), leaf1);
    }

    #[test]
    fn bounded_lists_keep_a_prefix() {
        let sig = FunctorSig::shape(Arc::new(Monoid::bool_or()), 1);
        let a = Algebra::bounded(sig, 3).unwrap();
        let l = Elem::Term(Term::list(&[1, 1, 0]));
        assert_eq!(a.alpha(&FValue::Node(0, vec![l])).unwrap(), Elem::Term(Term::list(&[0, 1, 1])));
        assert_eq!(a.elements(&Bounds::default()).0.len(), 15);
    }

    #[test]
    fn fold_examples() {
        let h = Algebra::height(triv1()).unwrap();
        assert_eq!(h.fold(&Term::numeral(2)).unwrap(), Elem::Nat(2));
        let sig = FunctorSig::shape(Arc::new(Monoid::nat_plus()), 2);
        let sum = Algebra::label_sum(sig).unwrap();
        let t = Term::node(3, vec![Term::node(1, vec![Term::Bottom, Term::Bottom]), Term::Bottom]);
        assert_eq!(sum.fold(&t).unwrap(), Elem::Nat(4));
        assert_eq!(sum.fold(&Term::Bottom).unwrap(), sum.alpha(&FValue::Bottom).unwrap());
    }

    #[test]
    fn finite_table_is_validated() {
        let sig = triv1();
        assert!(Algebra::finite("X", sig.clone(), vec!["a".into()], vec![0]).is_err());
        assert!(Algebra::finite("X", sig.clone(), vec!["a".into()], vec![0, 1]).is_err());
        assert!(Algebra::finite("X", sig, vec!["a".into()], vec![0, 0]).is_ok());
    }

    #[test]
    fn morphisms_from_bounded_numerals() {
        // From 𝕟 = {0,1,2} (saturating) into the two-element algebra with
        // ⊥ ↦ 0 and s = id: the unique morphism is constant 0.
        let a = Arc::new(Algebra::bounded(triv1(), 2).unwrap());
        let b = Arc::new(
            Algebra::from_fn("B", triv1(), vec!["x".into(), "y".into()], |v| match v {
                FValue::Bottom => 0,
                FValue::Node(_, xs) => xs[0],
            })
            .unwrap(),
        );
        let (ms, complete) = a.morphisms_to(&b, &Bounds::default()).unwrap();
        assert!(complete);
        assert_eq!(ms.len(), 1);
        assert!(ms[0].check(&Bounds::default()).holds());
        // Brute force over all 2³ maps.
        let (src, _) = a.elements(&Bounds::default());
        let mut count = 0;
        for code in 0..8usize {
            let images: Vec<Elem> = (0..3).map(|i| Elem::Fin((code >> i) & 1)).collect();
            let f = AlgebraMorphism::table(a.clone(), b.clone(), images, &Bounds::default()).unwrap();
            if f.check(&Bounds::default()).holds() {
                count += 1;
                assert!(f.agrees_on(&ms[0], &src).unwrap());
            }
        }
        assert_eq!(count, 1);
    }

    #[test]
    fn pullback_recasts_structure() {
        let m = Arc::new(Monoid::bool_or());
        let triv = Arc::new(Monoid::trivial());
        let g = FunctorSig::shape(m.clone(), 1);
        let f = FunctorSig::shape(triv.clone(), 1);
        let nu = NatTransf::new(g, f.clone(), crate::MonoidHom::to_unit(m, triv), vec![0]).unwrap();
        let nat = Arc::new(Algebra::height(f).unwrap());
        let pulled = Algebra::pullback(&nu, nat).unwrap();
        assert_eq!(pulled.alpha(&FValue::Bottom).unwrap(), Elem::Nat(0));
        assert_eq!(pulled.alpha(&FValue::Node(1, vec![Elem::Nat(4)])).unwrap(), Elem::Nat(5));
    }
}
