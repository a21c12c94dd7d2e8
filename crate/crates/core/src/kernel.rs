//! Monoids, the two functor signature classes and natural transformations
//! between signatures of the same class.
//!
//! A [`FunctorSig::Shape`] `(M, a)` denotes `X ↦ 1 + M × X^a` and a
//! [`FunctorSig::Const`] `M` denotes `X ↦ M`. Values of `F(X)` are
//! [`FValue`]s; the constant functor reuses the `Node` variant with an empty
//! slot list and never produces `Bottom`, which lets every algorithm treat the
//! two classes uniformly.
//!
//! Both classes carry the lax monoidal structure
//!
//! ```text
//! ∇((m, x⃗), (m', y⃗)) = (m • m', (x_i, y_i)_i)      ∇(⊥, _) = ∇(_, ⊥) = ⊥
//! η(∗) = (e, ∗, …, ∗)
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::Bounds;

/// A monoid element. Table monoids use indices into their element list,
/// the builtin naturals use the number itself.
pub type Label = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Carrier {
    Table { elements: Vec<String>, table: Vec<Label>, unit: Label },
    NatPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    name: String,
    carrier: Carrier,
}

impl Monoid {
    /// A finite monoid given by its multiplication table (row-major, `n × n`).
    ///
    /// Only the shape of the table is validated here; the monoid laws are
    /// reported by [`Monoid::check`].
    pub fn table(name: impl Into<String>, elements: Vec<String>, table: Vec<Label>, unit: Label) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("empty carrier".to_string()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidMonoid(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= n) {
            return Err(Error::InvalidMonoid(format!("table entry {} outside carrier", bad)));
        }
        if unit as usize >= n {
            return Err(Error::InvalidMonoid(format!("unit {} outside carrier", unit)));
        }
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(Error::InvalidMonoid(format!("duplicate element {}", a)));
            }
        }
        Ok(Monoid { name: name.into(), carrier: Carrier::Table { elements, table, unit } })
    }

    pub fn from_fn(
        name: impl Into<String>,
        elements: Vec<String>,
        op: impl Fn(Label, Label) -> Label,
        unit: Label,
    ) -> Result<Self> {
        let n = elements.len() as Label;
        let mut table = Vec::with_capacity((n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                table.push(op(a, b));
            }
        }
        Monoid::table(name, elements, table, unit)
    }

    /// The one-element monoid `{e}`.
    pub fn trivial() -> Self {
        Monoid::from_fn("Triv", vec!["e".to_string()], |_, _| 0, 0).expect("valid table")
    }

    /// `({0,1}, max, 0)`.
    pub fn bool_or() -> Self {
        Monoid::from_fn("BoolOr", vec!["0".to_string(), "1".to_string()], |a, b| a.max(b), 0).expect("valid table")
    }

    /// `({T,F}, ∧, T)` with `T = 0`, `F = 1`.
    pub fn truth_and() -> Self {
        Monoid::from_fn("TruthAnd", vec!["T".to_string(), "F".to_string()], |a, b| a.max(b), 0).expect("valid table")
    }

    /// `({T,F}, ∨, F)` with `T = 0`, `F = 1`.
    pub fn truth_or() -> Self {
        Monoid::from_fn("TruthOr", vec!["T".to_string(), "F".to_string()], |a, b| a.min(b), 1).expect("valid table")
    }

    /// The naturals under addition. Addition saturates at `u64::MAX`.
    pub fn nat_plus() -> Self {
        Monoid { name: "Nat".to_string(), carrier: Carrier::NatPlus }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "trivial" | "triv" => Ok(Monoid::trivial()),
            "boolor" => Ok(Monoid::bool_or()),
            "nat" => Ok(Monoid::nat_plus()),
            "truth_and" => Ok(Monoid::truth_and()),
            "truth_or" => Ok(Monoid::truth_or()),
            other => Err(Error::UnknownBuiltin(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn op(&self, a: Label, b: Label) -> Label {
        match &self.carrier {
            Carrier::Table { elements, table, .. } => table[(a as usize) * elements.len() + b as usize],
            Carrier::NatPlus => a.saturating_add(b),
        }
    }

    pub fn unit(&self) -> Label {
        match &self.carrier {
            Carrier::Table { unit, .. } => *unit,
            Carrier::NatPlus => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Table { .. })
    }

    pub fn size(&self) -> Option<usize> {
        match &self.carrier {
            Carrier::Table { elements, .. } => Some(elements.len()),
            Carrier::NatPlus => None,
        }
    }

    /// All elements, or `None` for the builtin naturals.
    pub fn elements(&self) -> Option<Vec<Label>> {
        self.size().map(|n| (0..n as Label).collect())
    }

    /// All elements if finite, otherwise the first `k`; the flag tells whether
    /// the list is complete.
    pub fn sample(&self, k: usize) -> (Vec<Label>, bool) {
        match self.elements() {
            Some(all) => (all, true),
            None => ((0..k as Label).collect(), false),
        }
    }

    pub fn contains(&self, l: Label) -> bool {
        match &self.carrier {
            Carrier::Table { elements, .. } => (l as usize) < elements.len(),
            Carrier::NatPlus => true,
        }
    }

    pub fn show(&self, l: Label) -> String {
        match &self.carrier {
            Carrier::Table { elements, .. } => {
                elements.get(l as usize).cloned().unwrap_or_else(|| format!("?{}", l))
            }
            Carrier::NatPlus => l.to_string(),
        }
    }

    pub fn parse_label(&self, s: &str) -> Option<Label> {
        match &self.carrier {
            Carrier::Table { elements, .. } => elements.iter().position(|e| e == s).map(|i| i as Label),
            Carrier::NatPlus => s.parse().ok(),
        }
    }

    pub fn element_names(&self) -> Option<&[String]> {
        match &self.carrier {
            Carrier::Table { elements, .. } => Some(elements),
            Carrier::NatPlus => None,
        }
    }

    /// Associativity and unit laws on every triple (finite monoids) or on
    /// sampled triples (the naturals).
    pub fn check(&self, bounds: &Bounds) -> LawReport {
        let mut report = LawReport::new(format!("monoid {}", self.name));
        let k = bounds.labels.clamp(2, 64);
        let (elems, exhaustive) = self.sample(k);
        report.exhaustive = exhaustive;
        let e = self.unit();
        for &a in &elems {
            report.checked += 1;
            if self.op(e, a) != a || self.op(a, e) != a {
                report.violate("unit", format!("{} is not neutral for {}", self.show(e), self.show(a)));
            }
        }
        'outer: for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    if report.checked >= bounds.budget {
                        report.exhaustive = false;
                        break 'outer;
                    }
                    report.checked += 1;
                    let left = self.op(self.op(a, b), c);
                    let right = self.op(a, self.op(b, c));
                    if left != right {
                        report.violate(
                            "associativity",
                            format!(
                                "({}•{})•{} = {} but {}•({}•{}) = {}",
                                self.show(a),
                                self.show(b),
                                self.show(c),
                                self.show(left),
                                self.show(a),
                                self.show(b),
                                self.show(c),
                                self.show(right)
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomMap {
    Identity,
    /// Constant map onto the target unit.
    ToUnit,
    Table(Vec<Label>),
}

/// A map of monoid carriers. Totality is enforced on construction; the
/// homomorphism laws are reported by [`MonoidHom::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: Arc<Monoid>,
    target: Arc<Monoid>,
    map: HomMap,
}

impl MonoidHom {
    pub fn identity(m: Arc<Monoid>) -> Self {
        MonoidHom { source: m.clone(), target: m, map: HomMap::Identity }
    }

    pub fn to_unit(source: Arc<Monoid>, target: Arc<Monoid>) -> Self {
        MonoidHom { source, target, map: HomMap::ToUnit }
    }

    pub fn table(source: Arc<Monoid>, target: Arc<Monoid>, images: Vec<Label>) -> Result<Self> {
        let n = source
            .size()
            .ok_or_else(|| Error::InvalidHom("table homomorphisms need a finite source".to_string()))?;
        if images.len() != n {
            return Err(Error::InvalidHom(format!("{} images for {} source elements", images.len(), n)));
        }
        if let Some(&bad) = images.iter().find(|&&l| !target.contains(l)) {
            return Err(Error::InvalidHom(format!("image {} outside {}", bad, target.name())));
        }
        Ok(MonoidHom { source, target, map: HomMap::Table(images) })
    }

    pub fn source(&self) -> &Arc<Monoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Monoid> {
        &self.target
    }

    pub fn map(&self) -> &HomMap {
        &self.map
    }

    pub fn apply(&self, l: Label) -> Label {
        match &self.map {
            HomMap::Identity => l,
            HomMap::ToUnit => self.target.unit(),
            HomMap::Table(t) => t[l as usize],
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonoidHom) -> Result<MonoidHom> {
        if first.target != self.source {
            return Err(Error::InvalidHom(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                first.source.name(),
                first.target.name()
            )));
        }
        let map = match (&first.map, &self.map) {
            (HomMap::Identity, m) => m.clone(),
            (m, HomMap::Identity) => match m {
                HomMap::ToUnit => HomMap::ToUnit,
                other => other.clone(),
            },
            (_, HomMap::ToUnit) => HomMap::ToUnit,
            (HomMap::ToUnit, HomMap::Table(t)) => match first.source.size() {
                Some(n) => HomMap::Table(vec![t[self.source.unit() as usize]; n]),
                None if t[self.source.unit() as usize] == self.target.unit() => HomMap::ToUnit,
                None => return Err(Error::Unsupported("constant map from an infinite monoid".to_string())),
            },
            (HomMap::Table(a), HomMap::Table(b)) => HomMap::Table(a.iter().map(|&x| b[x as usize]).collect()),
        };
        Ok(MonoidHom { source: first.source.clone(), target: self.target.clone(), map })
    }

    /// `Some(true)` when injective, `None` if undecidable (infinite source
    /// with a non-identity map).
    pub fn is_injective(&self) -> Option<bool> {
        match &self.map {
            HomMap::Identity => Some(true),
            HomMap::ToUnit => self.source.size().map(|n| n <= 1),
            HomMap::Table(t) => {
                let mut seen = t.clone();
                seen.sort_unstable();
                seen.dedup();
                Some(seen.len() == t.len())
            }
        }
    }

    /// The unique preimage of `l`, assuming injectivity.
    pub fn preimage(&self, l: Label) -> Option<Label> {
        match &self.map {
            HomMap::Identity => Some(l),
            HomMap::ToUnit => (l == self.target.unit()).then(|| self.source.unit()),
            HomMap::Table(t) => t.iter().position(|&x| x == l).map(|i| i as Label),
        }
    }

    pub fn check(&self, bounds: &Bounds) -> LawReport {
        let mut report = LawReport::new(format!("hom {} -> {}", self.source.name(), self.target.name()));
        let (elems, exhaustive) = self.source.sample(bounds.labels.max(2));
        report.exhaustive = exhaustive;
        report.checked += 1;
        if self.apply(self.source.unit()) != self.target.unit() {
            report.violate(
                "unit",
                format!(
                    "h({}) = {} ≠ {}",
                    self.source.show(self.source.unit()),
                    self.target.show(self.apply(self.source.unit())),
                    self.target.show(self.target.unit())
                ),
            );
        }
        for &a in &elems {
            for &b in &elems {
                report.checked += 1;
                let left = self.apply(self.source.op(a, b));
                let right = self.target.op(self.apply(a), self.apply(b));
                if left != right {
                    report.violate(
                        "multiplicativity",
                        format!(
                            "h({}•{}) = {} ≠ {} = h({})•h({})",
                            self.source.show(a),
                            self.source.show(b),
                            self.target.show(left),
                            self.target.show(right),
                            self.source.show(a),
                            self.source.show(b)
                        ),
                    );
                }
            }
        }
        report
    }
}

/// A value of `F(X)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FValue<X> {
    Bottom,
    Node(Label, Vec<X>),
}

impl<X> FValue<X> {
    pub fn map<Y>(&self, mut f: impl FnMut(&X) -> Y) -> FValue<Y> {
        match self {
            FValue::Bottom => FValue::Bottom,
            FValue::Node(m, xs) => FValue::Node(*m, xs.iter().map(&mut f).collect()),
        }
    }

    pub fn try_map<Y, E>(&self, mut f: impl FnMut(&X) -> core::result::Result<Y, E>) -> core::result::Result<FValue<Y>, E> {
        Ok(match self {
            FValue::Bottom => FValue::Bottom,
            FValue::Node(m, xs) => FValue::Node(*m, xs.iter().map(&mut f).collect::<core::result::Result<_, _>>()?),
        })
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, FValue::Bottom)
    }

    pub fn slots(&self) -> &[X] {
        match self {
            FValue::Bottom => &[],
            FValue::Node(_, xs) => xs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorSig {
    /// `X ↦ M`
    Const(Arc<Monoid>),
    /// `X ↦ 1 + M × X^a`
    Shape(Arc<Monoid>, usize),
}

impl FunctorSig {
    pub fn shape(m: Arc<Monoid>, arity: usize) -> Self {
        FunctorSig::Shape(m, arity)
    }

    pub fn constant(m: Arc<Monoid>) -> Self {
        FunctorSig::Const(m)
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        match self {
            FunctorSig::Const(m) | FunctorSig::Shape(m, _) => m,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            FunctorSig::Const(_) => 0,
            FunctorSig::Shape(_, a) => *a,
        }
    }

    pub fn has_bottom(&self) -> bool {
        matches!(self, FunctorSig::Shape(..))
    }

    pub fn is_shape(&self) -> bool {
        self.has_bottom()
    }

    pub fn same_class(&self, other: &FunctorSig) -> bool {
        self.is_shape() == other.is_shape()
    }

    pub fn describe(&self) -> String {
        match self {
            FunctorSig::Const(m) => format!("const({})", m.name()),
            FunctorSig::Shape(m, a) => format!("shape({},{})", m.name(), a),
        }
    }

    /// Well-formedness of a value: slot count and label membership.
    pub fn check<X>(&self, v: &FValue<X>) -> Result<()> {
        match v {
            FValue::Bottom if self.has_bottom() => Ok(()),
            FValue::Bottom => Err(Error::KindMismatch(format!("{} has no bottom summand", self.describe()))),
            FValue::Node(m, xs) => {
                if xs.len() != self.arity() {
                    return Err(Error::ArityMismatch { expected: self.arity(), found: xs.len() });
                }
                if !self.monoid().contains(*m) {
                    return Err(Error::OutOfCarrier(format!("label {} not in {}", m, self.monoid().name())));
                }
                Ok(())
            }
        }
    }

    /// The functor action on a payload function.
    pub fn fmap<X, Y>(&self, f: impl FnMut(&X) -> Y, v: &FValue<X>) -> Result<FValue<Y>> {
        self.check(v)?;
        Ok(v.map(f))
    }

    /// The lax structure `∇ : F(X) × F(Y) → F(X × Y)`.
    pub fn zip<X: Clone, Y: Clone>(&self, u: &FValue<X>, v: &FValue<Y>) -> Result<FValue<(X, Y)>> {
        self.check(u)?;
        self.check(v)?;
        Ok(match (u, v) {
            (FValue::Node(m, xs), FValue::Node(n, ys)) => FValue::Node(
                self.monoid().op(*m, *n),
                xs.iter().cloned().zip(ys.iter().cloned()).collect(),
            ),
            _ => FValue::Bottom,
        })
    }

    /// The lax unit `η : 1 → F(1)`.
    pub fn eta(&self) -> FValue<()> {
        FValue::Node(self.monoid().unit(), vec![(); self.arity()])
    }

    /// Number of values of `F(X)` for `|X| = n` over `labels` labels.
    pub fn value_count(&self, labels: usize, n: usize) -> Option<usize> {
        let pow = n.checked_pow(self.arity() as u32)?;
        labels.checked_mul(pow)?.checked_add(self.has_bottom() as usize)
    }

    /// Every value of `F({0..n})` over the given labels, in code order:
    /// bottom first, then by label, then slots in mixed radix (first slot most
    /// significant).
    pub fn values_over(&self, labels: &[Label], n: usize) -> Vec<FValue<usize>> {
        self.values_iter(labels.to_vec(), n).collect()
    }

    /// Lazy form of [`FunctorSig::values_over`].
    pub fn values_iter(&self, labels: Vec<Label>, n: usize) -> impl Iterator<Item = FValue<usize>> {
        let a = self.arity();
        let bottom = self.has_bottom().then_some(FValue::Bottom);
        let total = if n == 0 && a > 0 { 0 } else { n.pow(a as u32) };
        let nodes = labels.into_iter().flat_map(move |m| {
            (0..total).map(move |code| {
                let mut slots = vec![0usize; a];
                let mut rest = code;
                for i in (0..a).rev() {
                    slots[i] = rest % n;
                    rest /= n;
                }
                FValue::Node(m, slots)
            })
        });
        bottom.into_iter().chain(nodes)
    }

    /// Position of a value in [`FunctorSig::values_over`] over all labels of a
    /// finite monoid.
    pub fn value_code(&self, v: &FValue<usize>, n: usize) -> usize {
        match v {
            FValue::Bottom => 0,
            FValue::Node(m, xs) => {
                let mut code = 0usize;
                for &x in xs {
                    code = code * n + x;
                }
                self.has_bottom() as usize + (*m as usize) * n.pow(self.arity() as u32) + code
            }
        }
    }
}

/// A lax monoidal natural transformation between signatures of the same class:
/// `μ_X(⊥) = ⊥`, `μ_X(m, x_1..x_a) = (h(m), x_{r(1)}, …, x_{r(b)})`.
///
/// `reindex[j]` is the (0-based) source slot feeding target slot `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransf {
    source: FunctorSig,
    target: FunctorSig,
    hom: MonoidHom,
    reindex: Vec<usize>,
}

impl NatTransf {
    pub fn new(source: FunctorSig, target: FunctorSig, hom: MonoidHom, reindex: Vec<usize>) -> Result<Self> {
        if !source.same_class(&target) {
            return Err(Error::KindMismatch(format!(
                "no transformation between {} and {}",
                source.describe(),
                target.describe()
            )));
        }
        if hom.source() != source.monoid() || hom.target() != target.monoid() {
            return Err(Error::InvalidNat(format!(
                "homomorphism {} -> {} does not match {} -> {}",
                hom.source().name(),
                hom.target().name(),
                source.describe(),
                target.describe()
            )));
        }
        if reindex.len() != target.arity() {
            return Err(Error::InvalidNat(format!(
                "reindexing has {} entries, target arity is {}",
                reindex.len(),
                target.arity()
            )));
        }
        if let Some(&bad) = reindex.iter().find(|&&r| r >= source.arity()) {
            return Err(Error::InvalidNat(format!("reindex slot {} but source arity is {}", bad + 1, source.arity())));
        }
        Ok(NatTransf { source, target, hom, reindex })
    }

    pub fn identity(sig: FunctorSig) -> Self {
        let hom = MonoidHom::identity(sig.monoid().clone());
        let reindex = (0..sig.arity()).collect();
        NatTransf { source: sig.clone(), target: sig, hom, reindex }
    }

    pub fn source(&self) -> &FunctorSig {
        &self.source
    }

    pub fn target(&self) -> &FunctorSig {
        &self.target
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn reindex(&self) -> &[usize] {
        &self.reindex
    }

    pub fn is_surjective_reindex(&self) -> bool {
        (0..self.source.arity()).all(|i| self.reindex.contains(&i))
    }

    pub fn describe(&self) -> String {
        let r: Vec<String> = self.reindex.iter().map(|r| (r + 1).to_string()).collect();
        format!("{} -> {} [{}]", self.source.describe(), self.target.describe(), r.join(","))
    }

    /// The component `μ_X`.
    pub fn apply<X: Clone>(&self, v: &FValue<X>) -> Result<FValue<X>> {
        self.source.check(v)?;
        Ok(match v {
            FValue::Bottom => FValue::Bottom,
            FValue::Node(m, xs) => FValue::Node(self.hom.apply(*m), self.reindex.iter().map(|&i| xs[i].clone()).collect()),
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &NatTransf) -> Result<NatTransf> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch(format!(
                "cannot compose {} after {}",
                self.describe(),
                first.describe()
            )));
        }
        let hom = self.hom.after(&first.hom)?;
        let reindex = self.reindex.iter().map(|&j| first.reindex[j]).collect();
        NatTransf::new(first.source.clone(), self.target.clone(), hom, reindex)
    }

    /// Naturality, compatibility with `∇` and with `η`, on payload sets
    /// `{0..k}` and sampled labels.
    pub fn check_lax(&self, k: usize, bounds: &Bounds) -> LawReport {
        let mut report = LawReport::new(format!("lax natural {}", self.describe()));
        let (labels, exhaustive) = self.source.monoid().sample(bounds.labels);
        report.exhaustive = exhaustive;
        let values = self.source.values_over(&labels, k);
        let show = |v: &FValue<usize>, sig: &FunctorSig| render_value(sig, v, |x| x.to_string());

        // naturality against every f : {0..k} → {0..k}
        let functions = k.checked_pow(k as u32).unwrap_or(usize::MAX);
        'nat: for code in 0..functions {
            let f: Vec<usize> = (0..k).map(|i| (code / k.pow(i as u32)) % k).collect();
            for v in &values {
                if report.checked >= bounds.budget {
                    report.exhaustive = false;
                    break 'nat;
                }
                report.checked += 1;
                let left = self.apply(&v.map(|&x| f[x])).expect("well-formed");
                let right = self.apply(v).expect("well-formed").map(|&x| f[x]);
                if left != right {
                    report.violate("naturality", format!("at {}", show(v, &self.source)));
                }
            }
        }

        // ∇ square: μ(∇(u, v)) = ∇(μu, μv)
        'zip: for u in &values {
            for v in &values {
                if report.checked >= bounds.budget {
                    report.exhaustive = false;
                    break 'zip;
                }
                report.checked += 1;
                let left = self.apply(&self.source.zip(u, v).expect("well-formed")).expect("well-formed");
                let right = self
                    .target
                    .zip(&self.apply(u).expect("well-formed"), &self.apply(v).expect("well-formed"))
                    .expect("well-formed");
                if left != right {
                    report.violate(
                        "nabla",
                        format!(
                            "μ(∇({}, {})) ≠ ∇(μ{}, μ{})",
                            show(u, &self.source),
                            show(v, &self.source),
                            show(u, &self.source),
                            show(v, &self.source)
                        ),
                    );
                }
            }
        }

        report.checked += 1;
        if self.apply(&self.source.eta()).expect("well-formed") != self.target.eta() {
            report.violate("eta", "μ(η_F) ≠ η_G".to_string());
        }
        report
    }
}

/// Renders an `F`-value as `#b` or `(m x1 … xa)`.
pub fn render_value<X>(sig: &FunctorSig, v: &FValue<X>, mut show: impl FnMut(&X) -> String) -> String {
    match v {
        FValue::Bottom => "#b".to_string(),
        FValue::Node(m, xs) => {
            let mut s = format!("({}", sig.monoid().show(*m));
            for x in xs {
                s.push(' ');
                s.push_str(&show(x));
            }
            s.push(')');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(m: Monoid) -> Arc<Monoid> {
        Arc::new(m)
    }

    #[test]
    fn bool_or_is_a_monoid() {
        assert!(Monoid::bool_or().check(&Bounds::default()).holds());
    }

    #[test]
    fn subtraction_table_is_not_associative() {
        // 0-0=0, 0-1=1, 1-0=1, 1-1=0 would be xor; use a truncated subtraction
        // table instead: a ∘ b = max(a - b, 0) with unit 0.
        let m = Monoid::from_fn("Sub", vec!["0".into(), "1".into()], |a, b| a.saturating_sub(b), 0).unwrap();
        let report = m.check(&Bounds::default());
        assert!(!report.holds());
        // Brute force over all eight triples.
        let mut expected = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                for c in 0..2u64 {
                    if a.saturating_sub(b).saturating_sub(c) != a.saturating_sub(b.saturating_sub(c)) {
                        expected += 1;
                    }
                }
            }
        }
        let assoc = report.violations.iter().filter(|v| v.law == "associativity").count();
        assert_eq!(assoc, expected);
        // 0 is only a right unit.
        assert!(report.violations.iter().any(|v| v.law == "unit"));
    }

    #[test]
    fn nat_plus_sampled_check_holds() {
        let report = Monoid::nat_plus().check(&Bounds { labels: 100, budget: 2_000_000, ..Bounds::default() });
        assert!(report.holds());
        assert!(!report.exhaustive);
    }

    #[test]
    fn table_rejects_bad_shapes() {
        assert!(Monoid::table("X", vec!["a".into()], vec![0, 0], 0).is_err());
        assert!(Monoid::table("X", vec!["a".into()], vec![1], 0).is_err());
        assert!(Monoid::table("X", vec![], vec![], 0).is_err());
    }

    #[test]
    fn functor_map_examples() {
        let triv1 = FunctorSig::shape(arc(Monoid::trivial()), 1);
        assert_eq!(triv1.fmap(|x: &u32| x + 1, &FValue::Node(0, vec![3])).unwrap(), FValue::Node(0, vec![4]));
        let or2 = FunctorSig::shape(arc(Monoid::bool_or()), 2);
        assert_eq!(or2.fmap(|x: &bool| !x, &FValue::Bottom).unwrap(), FValue::Bottom);
        let c = FunctorSig::constant(arc(Monoid::bool_or()));
        assert_eq!(c.fmap(|x: &u8| x + 7, &FValue::Node(1, vec![])).unwrap(), FValue::Node(1, vec![]));
        assert!(matches!(
            triv1.fmap(|x: &u32| *x, &FValue::Node(0, vec![1, 2])),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn zip_examples() {
        let nat2 = FunctorSig::shape(arc(Monoid::nat_plus()), 2);
        let z = nat2.zip(&FValue::Node(2, vec!['p', 'q']), &FValue::Node(3, vec!['s', 't'])).unwrap();
        assert_eq!(z, FValue::Node(5, vec![('p', 's'), ('q', 't')]));
        let triv1 = FunctorSig::shape(arc(Monoid::trivial()), 1);
        assert_eq!(triv1.zip::<u8, u8>(&FValue::Bottom, &FValue::Node(0, vec![1])).unwrap(), FValue::Bottom);
        let c = FunctorSig::constant(arc(Monoid::bool_or()));
        assert_eq!(
            c.zip::<(), ()>(&FValue::Node(1, vec![]), &FValue::Node(0, vec![])).unwrap(),
            FValue::Node(1, vec![])
        );
    }

    #[test]
    fn eta_examples() {
        let or2 = FunctorSig::shape(arc(Monoid::bool_or()), 2);
        assert_eq!(or2.eta(), FValue::Node(0, vec![(), ()]));
        assert_eq!(FunctorSig::shape(arc(Monoid::trivial()), 1).eta(), FValue::Node(0, vec![()]));
        assert_eq!(FunctorSig::constant(arc(Monoid::nat_plus())).eta(), FValue::Node(0, vec![]));
    }

    #[test]
    fn nat_apply_examples() {
        let triv = arc(Monoid::trivial());
        let m = arc(Monoid::bool_or());
        let f = FunctorSig::shape(triv.clone(), 1);
        let h3 = FunctorSig::shape(m.clone(), 2);
        let pick_e = MonoidHom::table(triv.clone(), m.clone(), vec![0]).unwrap();
        let mu = NatTransf::new(f.clone(), h3, pick_e, vec![0, 0]).unwrap();
        assert_eq!(mu.apply(&FValue::Node(0, vec!['x'])).unwrap(), FValue::Node(0, vec!['x', 'x']));
        assert_eq!(mu.apply::<char>(&FValue::Bottom).unwrap(), FValue::Bottom);

        let g = FunctorSig::shape(m.clone(), 1);
        let nu = NatTransf::new(g, f, MonoidHom::to_unit(m, triv), vec![0]).unwrap();
        assert_eq!(nu.apply(&FValue::Node(1, vec!['x'])).unwrap(), FValue::Node(0, vec!['x']));
    }

    #[test]
    fn cross_class_transformations_are_rejected() {
        let m = arc(Monoid::bool_or());
        let r = NatTransf::new(
            FunctorSig::shape(m.clone(), 1),
            FunctorSig::constant(m.clone()),
            MonoidHom::identity(m),
            vec![],
        );
        assert!(matches!(r, Err(Error::KindMismatch(_))));
    }

    #[test]
    fn lax_check_accepts_homomorphisms_and_rejects_others() {
        let triv = arc(Monoid::trivial());
        let m = arc(Monoid::bool_or());
        let pick_e = MonoidHom::table(triv.clone(), m.clone(), vec![0]).unwrap();
        let mu = NatTransf::new(FunctorSig::shape(triv, 1), FunctorSig::shape(m.clone(), 1), pick_e, vec![0]).unwrap();
        assert!(mu.check_lax(3, &Bounds::default()).holds());

        // BoolOr → BoolOr swapping 0 and 1 is not a homomorphism.
        let swap = MonoidHom::table(m.clone(), m.clone(), vec![1, 0]).unwrap();
        let bad = NatTransf::new(FunctorSig::shape(m.clone(), 1), FunctorSig::shape(m.clone(), 1), swap, vec![0]).unwrap();
        let report = bad.check_lax(2, &Bounds::default());
        assert!(report.violations.iter().any(|v| v.law == "nabla"));

        let id = NatTransf::identity(FunctorSig::shape(m, 2));
        assert!(id.check_lax(3, &Bounds::default()).holds());
    }

    #[test]
    fn composite_transformation_reindexes_through_both() {
        let triv = arc(Monoid::trivial());
        let m = arc(Monoid::bool_or());
        let f = FunctorSig::shape(triv.clone(), 1);
        let g = FunctorSig::shape(m.clone(), 1);
        let mu = NatTransf::new(f.clone(), g.clone(), MonoidHom::table(triv.clone(), m.clone(), vec![0]).unwrap(), vec![0])
            .unwrap();
        let nu = NatTransf::new(g, f.clone(), MonoidHom::to_unit(m, triv), vec![0]).unwrap();
        let id = nu.after(&mu).unwrap();
        assert_eq!(id.apply(&FValue::Node(0, vec![7])).unwrap(), FValue::Node(0, vec![7]));
        assert_eq!(id.reindex(), &[0]);
    }

    #[test]
    fn value_code_matches_enumeration_order() {
        let sig = FunctorSig::shape(arc(Monoid::bool_or()), 2);
        let vals = sig.values_over(&[0, 1], 3);
        assert_eq!(vals.len(), sig.value_count(2, 3).unwrap());
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(sig.value_code(v, 3), i);
        }
    }
}
