use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::term::Term;
use crate::error::{Error, Result};
use crate::kernel::{render_value, FValue, FunctorSig};
use crate::report::LawReport;

/// A finite coalgebra `χ : C → F(C)` with named states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    name: String,
    sig: FunctorSig,
    names: Vec<String>,
    chi: Vec<FValue<usize>>,
}

impl Coalgebra {
    pub fn new(name: impl Into<String>, sig: FunctorSig, names: Vec<String>, chi: Vec<FValue<usize>>) -> Result<Self> {
        let name = name.into();
        if names.len() != chi.len() {
            return Err(Error::InvalidCarrier(format!(
                "{} has {} states but {} transitions",
                name,
                names.len(),
                chi.len()
            )));
        }
        for (i, v) in chi.iter().enumerate() {
            sig.check(v)?;
            if let Some(&bad) = v.slots().iter().find(|&&s| s >= names.len()) {
                return Err(Error::OutOfCarrier(format!("state {} of {} refers to state {}", names[i], name, bad)));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidCarrier(format!("duplicate state {} in {}", n, name)));
            }
        }
        Ok(Coalgebra { name, sig, names, chi })
    }

    /// The one-state coalgebra `∗ ↦ η`.
    pub fn unit(sig: FunctorSig) -> Self {
        let chi = vec![sig.eta().map(|_| 0)];
        Coalgebra { name: "unit".to_string(), sig, names: vec!["*".to_string()], chi }
    }

    /// The fuel counter `{0..n}` over `Shape(M, 1)`: `0 ↦ ⊥`, `i ↦ (e, i−1)`.
    pub fn counter(sig: FunctorSig, n: usize) -> Result<Self> {
        if !sig.is_shape() || sig.arity() != 1 {
            return Err(Error::KindMismatch(format!("counter needs arity 1, got {}", sig.describe())));
        }
        let e = sig.monoid().unit();
        let chi = (0..=n).map(|i| if i == 0 { FValue::Bottom } else { FValue::Node(e, vec![i - 1]) }).collect();
        let names = (0..=n).map(|i| i.to_string()).collect();
        Coalgebra::new(format!("counter{}", n), sig, names, chi)
    }

    /// The unfolding coalgebra on the given terms and all their subterms;
    /// states are ordered by depth, then structurally.
    pub fn of_terms(name: impl Into<String>, sig: FunctorSig, roots: &[Term]) -> Result<Self> {
        let mut states: Vec<Term> = Vec::new();
        for r in roots {
            if !r.fits(&sig) {
                return Err(Error::OutOfCarrier(format!("{} does not fit {}", r, sig.describe())));
            }
            for t in r.subterms() {
                if !states.contains(&t) {
                    states.push(t);
                }
            }
        }
        states.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
        Coalgebra::unfold(name, sig, states)
    }

    /// All terms of depth at most `n` over a finite monoid, unfolding.
    pub fn all_terms(sig: FunctorSig, n: usize) -> Result<Self> {
        let labels = sig
            .monoid()
            .elements()
            .ok_or_else(|| Error::NotEnumerable(format!("terms over {}", sig.monoid().name())))?;
        if !sig.is_shape() {
            return Err(Error::KindMismatch("term coalgebras need a shape signature".to_string()));
        }
        let states = Term::enumerate(sig.arity(), &labels, n);
        Coalgebra::unfold(format!("terms{}", n), sig, states)
    }

    /// Tree shapes of depth at most `n`, each unfolding to
    /// `(e, subshape_1, …, subshape_a)`.
    pub fn shapes(sig: FunctorSig, n: usize) -> Result<Self> {
        if !sig.is_shape() {
            return Err(Error::KindMismatch("shape coalgebras need a shape signature".to_string()));
        }
        let e = sig.monoid().unit();
        let states = Term::enumerate(sig.arity(), &[0], n);
        let names = states.iter().map(|t| t.render_shape()).collect();
        let chi = states
            .iter()
            .map(|t| match t {
                Term::Bottom => FValue::Bottom,
                Term::Node(_, xs) => {
                    FValue::Node(e, xs.iter().map(|x| states.iter().position(|s| s == x).expect("closed")).collect())
                }
            })
            .collect();
        Coalgebra::new(format!("shapes{}", n), sig, names, chi)
    }

    fn unfold(name: impl Into<String>, sig: FunctorSig, states: Vec<Term>) -> Result<Self> {
        let names = states.iter().map(|t| t.render(sig.monoid())).collect();
        let chi = states
            .iter()
            .map(|t| {
                t.unpack().map(|x| states.iter().position(|s| s == x).expect("states closed under subterms"))
            })
            .collect();
        Coalgebra::new(name, sig, names, chi)
    }

    /// `D ⊗ C` with state `(d, c)` at index `d·|C| + c` and
    /// `χ(d, c) = ∇(χ_D(d), χ_C(c))`.
    pub fn tensor(d: &Coalgebra, c: &Coalgebra) -> Result<Self> {
        if d.sig != c.sig {
            return Err(Error::SignatureMismatch(format!("{} vs {}", d.sig.describe(), c.sig.describe())));
        }
        let n = c.len();
        let mut names = Vec::with_capacity(d.len() * n);
        let mut chi = Vec::with_capacity(d.len() * n);
        for i in 0..d.len() {
            for j in 0..n {
                names.push(format!("({},{})", d.names[i], c.names[j]));
                chi.push(d.sig.zip(&d.chi[i], &c.chi[j])?.map(|&(x, y)| x * n + y));
            }
        }
        Ok(Coalgebra { name: format!("{}*{}", d.name, c.name), sig: d.sig.clone(), names, chi })
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

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn state_named(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn chi(&self, i: usize) -> &FValue<usize> {
        &self.chi[i]
    }

    pub fn transitions(&self) -> &[FValue<usize>] {
        &self.chi
    }

    pub fn render_chi(&self, i: usize) -> String {
        render_value(&self.sig, &self.chi[i], |&j| self.names[j].clone())
    }

    /// Longest unfolding path from each state, or `None` if a cycle is
    /// reachable.
    pub fn depths(&self) -> Vec<Option<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        fn visit(c: &Coalgebra, i: usize, mark: &mut [u8], memo: &mut [Option<usize>]) {
            match mark[i] {
                2 => return,
                1 => {
                    memo[i] = None;
                    return;
                }
                _ => {}
            }
            mark[i] = 1;
            let mut best = Some(match &c.chi[i] {
                FValue::Bottom => 0,
                FValue::Node(..) => 1,
            });
            for &j in c.chi[i].slots() {
                if mark[j] == 1 {
                    best = None;
                    continue;
                }
                visit(c, j, mark, memo);
                best = match (best, memo[j]) {
                    (Some(b), Some(d)) => Some(b.max(d + 1)),
                    _ => None,
                };
            }
            memo[i] = best;
            mark[i] = 2;
        }
        let mut mark = vec![0u8; self.len()];
        let mut memo = vec![Some(0); self.len()];
        for i in 0..self.len() {
            visit(self, i, &mut mark, &mut memo);
        }
        memo
    }

    /// All coalgebra morphisms into `target`, by backtracking with each
    /// equation checked once its cells are assigned.
    pub fn morphisms_to(self: &Arc<Self>, target: &Arc<Coalgebra>, budget: u64) -> Result<(Vec<CoalgebraMorphism>, bool)> {
        if self.sig != target.sig {
            return Err(Error::SignatureMismatch(format!("{} vs {}", self.sig.describe(), target.sig.describe())));
        }
        let n = self.len();
        let k = target.len();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
        for d in 0..n {
            let top = self.chi[d].slots().iter().copied().chain([d]).max().unwrap_or(d);
            buckets[top].push(d);
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(CoalgebraMorphism { source: self.clone(), target: target.clone(), map: Vec::new() });
            return Ok((out, true));
        }
        if k == 0 {
            return Ok((out, true));
        }
        let mut assign = vec![0usize; n];
        let mut next_value = vec![0usize; n];
        let mut pos = 0usize;
        let mut steps = 0u64;
        let mut complete = true;
        loop {
            if pos == n {
                out.push(CoalgebraMorphism { source: self.clone(), target: target.clone(), map: assign.clone() });
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
            if steps > budget {
                complete = false;
                break;
            }
            assign[pos] = next_value[pos];
            next_value[pos] += 1;
            let ok = buckets[pos].iter().all(|&d| target.chi[assign[d]] == self.chi[d].map(|&x| assign[x]));
            if ok {
                pos += 1;
            }
        }
        Ok((out, complete))
    }
}

/// A map of states, checked against `χ_C ∘ f = F(f) ∘ χ_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Arc<Coalgebra>,
    target: Arc<Coalgebra>,
    map: Vec<usize>,
}

impl CoalgebraMorphism {
    /// Builds the map without checking the morphism law; see
    /// [`CoalgebraMorphism::check`].
    pub fn new(source: Arc<Coalgebra>, target: Arc<Coalgebra>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::InvalidCarrier(format!("{} images for {} states", map.len(), source.len())));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.len()) {
            return Err(Error::OutOfCarrier(format!("state {} not in {}", bad, target.name)));
        }
        Ok(CoalgebraMorphism { source, target, map })
    }

    pub fn identity(c: Arc<Coalgebra>) -> Self {
        let map = (0..c.len()).collect();
        CoalgebraMorphism { source: c.clone(), target: c, map }
    }

    pub fn source(&self) -> &Arc<Coalgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Coalgebra> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, d: usize) -> usize {
        self.map[d]
    }

    pub fn check(&self) -> LawReport {
        let mut report = LawReport::new(format!("coalgebra morphism {} -> {}", self.source.name, self.target.name));
        if self.source.sig != self.target.sig {
            report.violate("signature", "source and target signatures differ");
            return report;
        }
        for d in 0..self.source.len() {
            report.checked += 1;
            let left = &self.target.chi[self.map[d]];
            let right = self.source.chi[d].map(|&x| self.map[x]);
            if *left != right {
                report.violate(
                    "coalgebra morphism",
                    format!(
                        "χ(f({})) = {} but F(f)(χ({})) = {}",
                        self.source.names[d],
                        self.target.render_chi(self.map[d]),
                        self.source.names[d],
                        render_value(&self.source.sig, &right, |&j| self.target.names[j].clone())
                    ),
                );
            }
        }
        report
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        if first.target.len() != self.source.len() {
            return Err(Error::SignatureMismatch("morphisms are not composable".to_string()));
        }
        CoalgebraMorphism::new(
            first.source.clone(),
            self.target.clone(),
            first.map.iter().map(|&x| self.map[x]).collect(),
        )
    }
}
