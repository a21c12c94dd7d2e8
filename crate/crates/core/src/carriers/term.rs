use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{FValue, FunctorSig, Label, Monoid};

/// A finite tree over a shape signature: `#b` or `(m t_1 … t_a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Bottom,
    Node(Label, Vec<Term>),
}

impl Term {
    pub fn node(label: Label, children: Vec<Term>) -> Self {
        Term::Node(label, children)
    }

    /// `[m_1, …, m_k]` as an arity-1 chain ending in `#b`.
    pub fn list(labels: &[Label]) -> Self {
        labels.iter().rev().fold(Term::Bottom, |tail, &m| Term::Node(m, vec![tail]))
    }

    /// The numeral `s^k(#b)` over a one-element monoid.
    pub fn numeral(k: usize) -> Self {
        Term::list(&vec![0; k])
    }

    /// The perfect tree of the given depth and arity with every label `m`.
    pub fn perfect(label: Label, arity: usize, depth: usize) -> Self {
        if depth == 0 {
            Term::Bottom
        } else {
            Term::Node(label, vec![Term::perfect(label, arity, depth - 1); arity])
        }
    }

    /// Labels along an arity-1 chain.
    pub fn as_list(&self) -> Option<Vec<Label>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Bottom => return Some(out),
                Term::Node(m, xs) if xs.len() == 1 => {
                    out.push(*m);
                    cur = &xs[0];
                }
                Term::Node(..) => return None,
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Bottom => 0,
            Term::Node(_, xs) => 1 + xs.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Bottom => 1,
            Term::Node(_, xs) => 1 + xs.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Cuts every branch below depth `n`; `trunc(0)` is `#b`.
    pub fn trunc(&self, n: usize) -> Term {
        match self {
            Term::Bottom => Term::Bottom,
            Term::Node(..) if n == 0 => Term::Bottom,
            Term::Node(m, xs) => Term::Node(*m, xs.iter().map(|x| x.trunc(n - 1)).collect()),
        }
    }

    pub fn unpack(&self) -> FValue<Term> {
        match self {
            Term::Bottom => FValue::Bottom,
            Term::Node(m, xs) => FValue::Node(*m, xs.clone()),
        }
    }

    pub fn pack(v: FValue<Term>) -> Term {
        match v {
            FValue::Bottom => Term::Bottom,
            FValue::Node(m, xs) => Term::Node(m, xs),
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        if let Term::Node(m, xs) = self {
            out.push(*m);
            for x in xs {
                x.collect_labels(out);
            }
        }
    }

    /// Whether every node has exactly `sig.arity()` children and labels in
    /// the monoid.
    pub fn fits(&self, sig: &FunctorSig) -> bool {
        match self {
            Term::Bottom => sig.has_bottom(),
            Term::Node(m, xs) => {
                xs.len() == sig.arity() && sig.monoid().contains(*m) && xs.iter().all(|x| x.fits(sig))
            }
        }
    }

    /// Every subterm, children before parents, without duplicates.
    pub fn subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms(&self, out: &mut Vec<Term>) {
        if let Term::Node(_, xs) = self {
            for x in xs {
                x.collect_subterms(out);
            }
        }
        if !out.contains(self) {
            out.push(self.clone());
        }
    }

    pub fn map_labels(&self, f: &impl Fn(Label) -> Label) -> Term {
        match self {
            Term::Bottom => Term::Bottom,
            Term::Node(m, xs) => Term::Node(f(*m), xs.iter().map(|x| x.map_labels(f)).collect()),
        }
    }

    /// Canonical rendering: `#b`, `(m c_1 … c_a)`.
    pub fn render(&self, monoid: &Monoid) -> String {
        let mut s = String::new();
        self.render_into(monoid, &mut s);
        s
    }

    fn render_into(&self, monoid: &Monoid, s: &mut String) {
        match self {
            Term::Bottom => s.push_str("#b"),
            Term::Node(m, xs) => {
                s.push('(');
                s.push_str(&monoid.show(*m));
                for x in xs {
                    s.push(' ');
                    x.render_into(monoid, s);
                }
                s.push(')');
            }
        }
    }

    /// Renders a tree shape with `e` at every node.
    pub fn render_shape(&self) -> String {
        self.render(&Monoid::trivial())
    }

    /// All terms of depth at most `depth` over the given labels, in
    /// construction order: `#b` first, then nodes by label and by children in
    /// mixed radix over the previous level.
    pub fn enumerate(arity: usize, labels: &[Label], depth: usize) -> Vec<Term> {
        let mut level = vec![Term::Bottom];
        for _ in 0..depth {
            let prev = level;
            let n = prev.len();
            let mut next = vec![Term::Bottom];
            let total = n.pow(arity as u32);
            for &m in labels {
                for code in 0..total {
                    let mut children = vec![Term::Bottom; arity];
                    let mut rest = code;
                    for i in (0..arity).rev() {
                        children[i] = prev[rest % n].clone();
                        rest /= n;
                    }
                    next.push(Term::Node(m, children));
                }
            }
            level = next;
        }
        level
    }

    /// Number of terms [`Term::enumerate`] would produce, if it fits a `usize`.
    pub fn count(arity: usize, labels: usize, depth: usize) -> Option<usize> {
        let mut n: usize = 1;
        for _ in 0..depth {
            n = labels.checked_mul(n.checked_pow(arity as u32)?)?.checked_add(1)?;
        }
        Some(n)
    }
}

impl core::fmt::Display for Term {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Term::Bottom => f.write_str("#b"),
            Term::Node(m, xs) => {
                write!(f, "({}", m)?;
                for x in xs {
                    write!(f, " {}", x)?;
                }
                f.write_str(")")
            }
        }
    }
}
