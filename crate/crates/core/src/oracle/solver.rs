//! Enumerates every measuring table between finite carriers.
//!
//! Cells are pairs `(c, a)` with domain `B`. Each state `c` and value
//! `v ∈ F(A)` contributes the equation `φ(c, α(v)) = β(F(φ)(∇(χ(c), v)))`,
//! whose right side is either a constant `β(⊥)` or `β(m, cells…)`. An
//! equation fires once all its argument cells are known and then either
//! assigns or checks its left cell. Cells that no equation pins are branched
//! on in interning order; conflicts undo through a trail.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::carriers::{Algebra, Coalgebra, Elem};
use crate::error::{Error, Result};
use crate::kernel::{FValue, Label};
use crate::measuring::Measuring;
use crate::Bounds;

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub solutions: Vec<Measuring>,
    /// The list is complete for the given carriers.
    pub exhaustive: bool,
    /// Propagation and branching steps spent.
    pub steps: u64,
    /// The search stopped because the step budget ran out.
    pub budget_hit: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Stop after this many solutions.
    pub max_solutions: Option<usize>,
}

struct Constraint {
    lhs: usize,
    label: Option<Label>,
    args: Vec<usize>,
}

/// `β` on element indices, tabulated for finite label sets and memoized
/// otherwise.
struct Beta<'a> {
    algebra: &'a Algebra,
    elems: &'a [Elem],
    index: &'a BTreeMap<Elem, usize>,
    memo: BTreeMap<(Option<Label>, Vec<usize>), usize>,
}

impl Beta<'_> {
    fn apply(&mut self, label: Option<Label>, args: &[usize]) -> Result<usize> {
        if let Some(&k) = self.memo.get(&(label, args.to_vec())) {
            return Ok(k);
        }
        let v = match label {
            None => FValue::Bottom,
            Some(m) => FValue::Node(m, args.iter().map(|&i| self.elems[i].clone()).collect()),
        };
        let b = self.algebra.alpha(&v)?;
        let k = *self.index.get(&b).ok_or_else(|| {
            Error::OutOfCarrier(format!("{} leaves {}", self.algebra.render(&b), self.algebra.name()))
        })?;
        self.memo.insert((label, args.to_vec()), k);
        Ok(k)
    }

    fn precompute(&mut self) -> Result<()> {
        let sig = self.algebra.sig();
        if let Some(labels) = sig.monoid().elements() {
            let n = self.elems.len();
            if sig.value_count(labels.len(), n).is_some_and(|c| c <= 1 << 16) {
                for v in sig.values_over(&labels, n) {
                    match v {
                        FValue::Bottom => self.apply(None, &[])?,
                        FValue::Node(m, xs) => self.apply(Some(m), &xs)?,
                    };
                }
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    constraints: Vec<Constraint>,
    watch: Vec<Vec<usize>>,
    values: Vec<Option<usize>>,
    trail: Vec<usize>,
    beta: Beta<'a>,
    width: usize,
    steps: u64,
    budget: u64,
}

enum Outcome {
    Ok,
    Conflict,
    Budget,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.steps += 1;
        self.steps <= self.budget
    }

    fn assign(&mut self, cell: usize, value: usize, queue: &mut VecDeque<usize>) {
        self.values[cell] = Some(value);
        self.trail.push(cell);
        queue.extend(self.watch[cell].iter().copied());
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("trail longer than mark");
            self.values[cell] = None;
        }
    }

    /// Fires every queued constraint whose arguments are known.
    fn propagate(&mut self, queue: &mut VecDeque<usize>) -> Result<Outcome> {
        while let Some(k) = queue.pop_front() {
            if !self.tick() {
                return Ok(Outcome::Budget);
            }
            let con = &self.constraints[k];
            let mut args = Vec::with_capacity(con.args.len());
            for &a in &con.args {
                match self.values[a] {
                    Some(x) => args.push(x),
                    None => break,
                }
            }
            if args.len() < con.args.len() {
                continue;
            }
            let (lhs, label) = (con.lhs, con.label);
            let want = self.beta.apply(label, &args)?;
            match self.values[lhs] {
                Some(have) if have != want => return Ok(Outcome::Conflict),
                Some(_) => {}
                None => self.assign(lhs, want, queue),
            }
        }
        Ok(Outcome::Ok)
    }

    fn all_hold(&mut self) -> Result<bool> {
        for k in 0..self.constraints.len() {
            let con = &self.constraints[k];
            let args: Vec<usize> = con.args.iter().map(|&a| self.values[a].expect("complete")).collect();
            let (lhs, label) = (con.lhs, con.label);
            if self.values[lhs] != Some(self.beta.apply(label, &args)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Depth-first search; returns `false` when the budget ran out.
    fn search(&mut self, found: &mut Vec<Vec<usize>>, limit: Option<usize>) -> Result<bool> {
        let Some(cell) = self.values.iter().position(Option::is_none) else {
            if !self.all_hold()? {
                return Err(Error::LawViolation("solver produced an unlawful table".into()));
            }
            found.push(self.values.iter().map(|v| v.expect("complete")).collect());
            return Ok(true);
        };
        for value in 0..self.width {
            if limit.is_some_and(|l| found.len() >= l) {
                return Ok(true);
            }
            if !self.tick() {
                return Ok(false);
            }
            let mark = self.trail.len();
            let mut queue = VecDeque::new();
            self.assign(cell, value, &mut queue);
            match self.propagate(&mut queue)? {
                Outcome::Budget => {
                    self.undo(mark);
                    return Ok(false);
                }
                Outcome::Conflict => {}
                Outcome::Ok => {
                    if !self.search(found, limit)? {
                        self.undo(mark);
                        return Ok(false);
                    }
                }
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

/// All measurings `C ⊗ A → B` as tables, in first-found order.
pub fn solve_measurings(
    c: &Arc<Coalgebra>,
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    bounds: &Bounds,
    options: SolveOptions,
) -> Result<SolveResult> {
    if c.sig() != a.sig() || a.sig() != b.sig() {
        return Err(Error::SignatureMismatch(format!(
            "{}, {} and {} have different signatures",
            c.name(),
            a.name(),
            b.name()
        )));
    }
    if !b.is_enumerable() {
        return Err(Error::NotEnumerable(format!("target {} is not finite", b.name())));
    }
    let (a_elems, a_complete) = a.elements(bounds);
    let (b_elems, _) = b.elements(bounds);
    let a_index: BTreeMap<Elem, usize> = a_elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let b_index: BTreeMap<Elem, usize> = b_elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let (values, all_labels) = a.values(&a_elems, bounds);
    let values: Vec<_> = values.collect();
    let width_a = a_elems.len();
    let cell = |s: usize, x: usize| s * width_a + x;

    let mut constraints = Vec::new();
    let mut closed = true;
    for s in 0..c.len() {
        for v in &values {
            let Some(&lhs) = a_index.get(&a.alpha(v)?) else {
                // α leaves the enumerated part of an unbounded carrier
                closed = false;
                continue;
            };
            let idx = v.map(|x| a_index[x]);
            let (label, args) = match a.sig().zip(c.chi(s), &idx)? {
                FValue::Bottom => (None, Vec::new()),
                FValue::Node(m, pairs) => (Some(m), pairs.into_iter().map(|(t, x)| cell(t, x)).collect()),
            };
            constraints.push(Constraint { lhs: cell(s, lhs), label, args });
        }
    }

    let cells = c.len() * width_a;
    let mut watch = vec![Vec::new(); cells];
    for (k, con) in constraints.iter().enumerate() {
        for &x in con.args.iter().chain([&con.lhs]) {
            if watch[x].last() != Some(&k) {
                watch[x].push(k);
            }
        }
    }

    let mut beta = Beta { algebra: b, elems: &b_elems, index: &b_index, memo: BTreeMap::new() };
    beta.precompute()?;
    let mut search = Search {
        constraints,
        watch,
        values: vec![None; cells],
        trail: Vec::new(),
        beta,
        width: b_elems.len(),
        steps: 0,
        budget: bounds.budget,
    };

    let mut found = Vec::new();
    let mut queue: VecDeque<usize> = (0..search.constraints.len()).filter(|&k| search.constraints[k].args.is_empty()).collect();
    let complete = match search.propagate(&mut queue)? {
        Outcome::Budget => false,
        Outcome::Conflict => true,
        Outcome::Ok => search.search(&mut found, options.max_solutions)?,
    };
    let truncated = options.max_solutions.is_some_and(|l| found.len() >= l);
    let steps = search.steps;

    let solutions = found
        .into_iter()
        .enumerate()
        .map(|(i, cells)| {
            let name: String = format!("sol{}({},{},{})", i, c.name(), a.name(), b.name());
            Measuring::table(name, c.clone(), a.clone(), b.clone(), cells.into_iter().map(|k| b_elems[k].clone()).collect(), bounds)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SolveResult {
        solutions,
        exhaustive: complete && !truncated && a_complete && all_labels && closed,
        steps,
        budget_hit: !complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::builtins;
    use crate::kernel::{FunctorSig, Monoid};

    #[test]
    fn pruning_is_the_unique_shape_measuring() {
        let triv = Arc::new(Monoid::trivial());
        let c = Arc::new(builtins::shape_coalg(triv.clone(), 2));
        let t = Arc::new(builtins::trees_bounded(triv, 2));
        let r = solve_measurings(&c, &t, &t, &Bounds::default(), SolveOptions::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.solutions.len(), 1);
        assert!(r.solutions[0].check_law(&Bounds::default()).holds());
    }

    #[test]
    fn unconstrained_cells_branch() {
        // A with a junk element that α never reaches: two free cells per state.
        let sig = FunctorSig::shape(Arc::new(Monoid::trivial()), 1);
        let a = Arc::new(
            Algebra::from_fn("A", sig.clone(), vec!["z".into(), "junk".into()], |_| 0).unwrap(),
        );
        let b = Arc::new(Algebra::from_fn("B", sig.clone(), vec!["p".into(), "q".into()], |_| 0).unwrap());
        let u = Arc::new(Coalgebra::unit(sig));
        let r = solve_measurings(&u, &a, &b, &Bounds::default(), SolveOptions::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.solutions.len(), 2);
        let first = solve_measurings(&u, &a, &b, &Bounds::default(), SolveOptions { max_solutions: Some(1) }).unwrap();
        assert_eq!(first.solutions.len(), 1);
        assert!(!first.exhaustive);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let triv = Arc::new(Monoid::trivial());
        let c = Arc::new(builtins::shape_coalg(triv.clone(), 2));
        let t = Arc::new(builtins::trees_bounded(triv, 2));
        let r = solve_measurings(&c, &t, &t, &Bounds::with_budget(3), SolveOptions::default()).unwrap();
        assert!(!r.exhaustive);
        assert!(r.budget_hit);
    }
}
