//! Builds the declared objects and runs the `check` commands.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use cind_core::carriers::builtins::{self, Builtin};
use cind_core::oracle::{self, Instances, SolveOptions, Transport};
use cind_core::transport::{mu_bang_const, mu_bang_term, mu_shriek, pushforward_coalgebra, ExpandedTermAlgebra, QuotientAlgebra};
use cind_core::{
    measuring, Algebra, Bounds, Coalgebra, Elem, FValue, FunctorSig, Label, Measuring, Monoid, MonoidHom, NatTransf,
    Report, Status, Term,
};

use super::ast::*;
use super::elab::{elaborate, Kind};
use super::lexer::Pos;
use super::{Parsed, ScriptError};
use crate::prune::prune;

/// A built declaration.
#[derive(Clone, Debug)]
pub enum Value {
    Monoid(Arc<Monoid>),
    Hom(MonoidHom),
    Functor(FunctorSig),
    Nat(NatTransf),
    Alg(Arc<Algebra>, Option<Bang>),
    Coalg(Arc<Coalgebra>),
    Measure(Arc<Measuring>),
}

/// The left adjoint construction an algebra came from, kept for `classes`
/// and `inject`.
#[derive(Clone, Debug)]
pub enum Bang {
    Const(Arc<QuotientAlgebra>),
    Term(Arc<ExpandedTermAlgebra>),
}

/// One `check` command and its report.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub pos: Pos,
    pub report: Report,
}

/// The result of running a script.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub checks: Vec<CheckOutcome>,
    env: HashMap<String, Value>,
}

impl Outcome {
    /// `Fails` if any check failed, else `Budget` if any ran out of budget.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.report.status).max().unwrap_or(Status::Holds)
    }

    pub fn measuring(&self, name: &str) -> Option<&Arc<Measuring>> {
        match self.env.get(name) {
            Some(Value::Measure(m)) => Some(m),
            _ => None,
        }
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    /// Every declared measuring, sorted by name.
    pub fn measurings(&self) -> Vec<(&str, &Arc<Measuring>)> {
        let mut out: Vec<_> = self
            .env
            .iter()
            .filter_map(|(k, v)| match v {
                Value::Measure(m) => Some((k.as_str(), m)),
                _ => None,
            })
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// Random target algebras per carrier size when a check names none.
const SAMPLES_PER_SIZE: usize = 10;
const MAX_SAMPLE_SIZE: usize = 3;

type Fallible<T> = Result<T, String>;

fn core<T>(r: cind_core::Result<T>) -> Fallible<T> {
    r.map_err(|e| e.to_string())
}

/// Resolves names, builds every declaration in order and runs the checks.
pub fn run(parsed: &Parsed, bounds: &Bounds) -> Result<Outcome, ScriptError> {
    elaborate(parsed)?;
    let mut it = Interp { env: HashMap::new(), bounds: *bounds };
    let mut checks = Vec::new();
    for (decl, &pos) in parsed.script.decls.iter().zip(&parsed.positions) {
        match decl {
            Decl::Check { kind, args } => {
                let report = it.check(pos, kind, args)?;
                checks.push(CheckOutcome { pos, report });
            }
            _ => {
                let name = decl.name().expect("named").to_string();
                let value = it.build(pos, decl)?;
                it.env.insert(name, value);
            }
        }
    }
    Ok(Outcome { checks, env: it.env })
}

struct Interp {
    env: HashMap<String, Value>,
    bounds: Bounds,
}

fn eval_err(pos: Pos) -> impl Fn(String) -> ScriptError {
    move |message| ScriptError::Eval { pos, message }
}

fn atom_name(s: &SExpr) -> Fallible<&str> {
    match s {
        SExpr::Atom(a) => Ok(a),
        other => Err(format!("expected a name, found {}", other)),
    }
}

fn label(m: &Monoid, s: &str) -> Fallible<Label> {
    m.parse_label(s).ok_or_else(|| format!("`{}` is not an element of {}", s, m.name()))
}

/// A term over `sig` from its literal.
pub fn term_of(sig: &FunctorSig, s: &SExpr) -> Fallible<Term> {
    match s {
        SExpr::Bottom => Ok(Term::Bottom),
        SExpr::List(items) if items.len() == sig.arity() + 1 => {
            let m = label(sig.monoid(), atom_name(&items[0])?)?;
            let kids = items[1..].iter().map(|x| term_of(sig, x)).collect::<Fallible<Vec<_>>>()?;
            Ok(Term::node(m, kids))
        }
        SExpr::List(items) => Err(format!("a node of {} has {} children, found {}", sig.describe(), sig.arity(), items.len() - 1)),
        other => Err(format!("`{}` is not a term of {}", other, sig.describe())),
    }
}

/// An element of `a` from a name, a numeral or a term literal.
fn elem_of(a: &Algebra, s: &SExpr) -> Fallible<Elem> {
    // a pulled back algebra keeps the carrier, and the term syntax, of its base
    if let Some((_, base)) = a.pullback_parts() {
        return elem_of(base, s);
    }
    if let SExpr::Atom(name) = s {
        if let Some(x) = a.element_named(name) {
            return Ok(x);
        }
        if let Ok(n) = name.parse::<u64>() {
            if a.contains(&Elem::Nat(n)) {
                return Ok(Elem::Nat(n));
            }
        }
    }
    if a.sig().is_shape() {
        if let Ok(t) = term_of(a.sig(), s) {
            let x = Elem::Term(t);
            if a.contains(&x) {
                return Ok(x);
            }
        }
    }
    Err(format!("`{}` is not an element of {}", s, a.name()))
}

/// A value of `F(A)`: `#b`, `(m x_1 … x_a)`, or a bare label for constant
/// functors.
fn fvalue_of(a: &Algebra, s: &SExpr) -> Fallible<FValue<Elem>> {
    let sig = a.sig();
    match s {
        SExpr::Bottom if sig.has_bottom() => Ok(FValue::Bottom),
        SExpr::Atom(m) if !sig.is_shape() => Ok(FValue::Node(label(sig.monoid(), m)?, vec![])),
        SExpr::List(items) if items.len() == sig.arity() + 1 => {
            let m = label(sig.monoid(), atom_name(&items[0])?)?;
            let xs = items[1..].iter().map(|x| elem_of(a, x)).collect::<Fallible<Vec<_>>>()?;
            Ok(FValue::Node(m, xs))
        }
        other => Err(format!("`{}` is not a value of {}", other, sig.describe())),
    }
}

/// Whether `pat` matches `v`; element slots are matched by name.
fn matches(pat: &SExpr, v: &FValue<usize>, sig: &FunctorSig, elements: &[String]) -> Fallible<bool> {
    let label_ok = |p: &SExpr, m: Label| -> Fallible<bool> {
        match p {
            SExpr::Wild => Ok(true),
            SExpr::Atom(a) => Ok(label(sig.monoid(), a)? == m),
            other => Err(format!("`{}` is not a label pattern", other)),
        }
    };
    let elem_ok = |p: &SExpr, i: usize| -> Fallible<bool> {
        match p {
            SExpr::Wild => Ok(true),
            SExpr::Atom(a) => match elements.iter().position(|e| e == a) {
                Some(j) => Ok(j == i),
                None => Err(format!("`{}` is not one of the listed elements", a)),
            },
            other => Err(format!("`{}` is not an element pattern", other)),
        }
    };
    match (pat, v) {
        (SExpr::Wild, _) => Ok(true),
        (SExpr::Bottom, v) => Ok(v.is_bottom()),
        (SExpr::Atom(_), FValue::Node(m, _)) if !sig.is_shape() => label_ok(pat, *m),
        (SExpr::List(items), FValue::Node(m, xs)) if items.len() == sig.arity() + 1 => {
            if !label_ok(&items[0], *m)? {
                return Ok(false);
            }
            for (p, &x) in items[1..].iter().zip(xs) {
                if !elem_ok(p, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (SExpr::List(items), _) if items.len() != sig.arity() + 1 => {
            Err(format!("pattern `{}` does not fit {}", pat, sig.describe()))
        }
        (SExpr::List(_), FValue::Bottom) => Ok(false),
        _ => Err(format!("pattern `{}` does not fit {}", pat, sig.describe())),
    }
}

/// Reads a check argument as a term or name.
fn arg_sexpr(a: &CheckArg) -> Option<SExpr> {
    match a {
        CheckArg::Word(s) | CheckArg::Str(s) => Some(SExpr::Atom(s.clone())),
        CheckArg::Int(n) => Some(SExpr::Atom(n.to_string())),
        CheckArg::Term(t) => Some(t.clone()),
        CheckArg::Set(_) | CheckArg::Eq => None,
    }
}

/// Cursor over the arguments of one check.
struct Args<'a> {
    args: &'a [CheckArg],
    at: usize,
    kind: &'a str,
}

impl<'a> Args<'a> {
    fn next(&mut self, what: &str) -> Fallible<&'a CheckArg> {
        let a = self.args.get(self.at).ok_or_else(|| format!("`check {}` is missing {}", self.kind, what))?;
        self.at += 1;
        Ok(a)
    }

    fn word(&mut self, what: &str) -> Fallible<&'a str> {
        match self.next(what)? {
            CheckArg::Word(w) => Ok(w),
            other => Err(format!("`check {}` expected {}, found {}", self.kind, what, other)),
        }
    }

    fn sexpr(&mut self, what: &str) -> Fallible<SExpr> {
        let a = self.next(what)?;
        arg_sexpr(a).ok_or_else(|| format!("`check {}` expected {}, found {}", self.kind, what, a))
    }

    fn eq(&mut self) -> Fallible<()> {
        match self.next("`=`")? {
            CheckArg::Eq => Ok(()),
            other => Err(format!("`check {}` expected `=`, found {}", self.kind, other)),
        }
    }

    fn sets(&mut self) -> Fallible<Vec<&'a Vec<String>>> {
        let mut out = Vec::new();
        while let Some(CheckArg::Set(s)) = self.args.get(self.at) {
            out.push(s);
            self.at += 1;
        }
        Ok(out)
    }

    fn peek_word(&self, w: &str) -> bool {
        matches!(self.args.get(self.at), Some(CheckArg::Word(x)) if x == w)
    }

    fn done(&self) -> bool {
        self.at >= self.args.len()
    }

    fn finish(&self) -> Fallible<()> {
        match self.args.get(self.at) {
            None => Ok(()),
            Some(extra) => Err(format!("`check {}` has an unexpected argument {}", self.kind, extra)),
        }
    }
}

impl Interp {
    fn get(&self, name: &str, kind: Kind) -> Fallible<&Value> {
        let v = self.env.get(name).ok_or_else(|| format!("unresolved name `{}`", name))?;
        let actual = match v {
            Value::Monoid(_) => Kind::Monoid,
            Value::Hom(_) => Kind::Hom,
            Value::Functor(_) => Kind::Functor,
            Value::Nat(_) => Kind::Nat,
            Value::Alg(..) => Kind::Alg,
            Value::Coalg(_) => Kind::Coalg,
            Value::Measure(_) => Kind::Measure,
        };
        if actual != kind {
            return Err(format!("`{}` is {}, expected {}", name, actual.noun(), kind.noun()));
        }
        Ok(v)
    }

    fn monoid(&self, name: &str) -> Fallible<Arc<Monoid>> {
        match self.get(name, Kind::Monoid)? {
            Value::Monoid(m) => Ok(m.clone()),
            _ => unreachable!(),
        }
    }

    fn hom(&self, name: &str) -> Fallible<MonoidHom> {
        match self.get(name, Kind::Hom)? {
            Value::Hom(h) => Ok(h.clone()),
            _ => unreachable!(),
        }
    }

    fn functor(&self, name: &str) -> Fallible<FunctorSig> {
        match self.get(name, Kind::Functor)? {
            Value::Functor(f) => Ok(f.clone()),
            _ => unreachable!(),
        }
    }

    fn nat(&self, name: &str) -> Fallible<NatTransf> {
        match self.get(name, Kind::Nat)? {
            Value::Nat(n) => Ok(n.clone()),
            _ => unreachable!(),
        }
    }

    fn alg(&self, name: &str) -> Fallible<Arc<Algebra>> {
        match self.get(name, Kind::Alg)? {
            Value::Alg(a, _) => Ok(a.clone()),
            _ => unreachable!(),
        }
    }

    fn bang(&self, name: &str) -> Fallible<Bang> {
        match self.get(name, Kind::Alg)? {
            Value::Alg(_, Some(b)) => Ok(b.clone()),
            _ => Err(format!("`{}` is not built by `bang`", name)),
        }
    }

    fn coalg(&self, name: &str) -> Fallible<Arc<Coalgebra>> {
        match self.get(name, Kind::Coalg)? {
            Value::Coalg(c) => Ok(c.clone()),
            _ => unreachable!(),
        }
    }

    fn measure(&self, name: &str) -> Fallible<Arc<Measuring>> {
        match self.get(name, Kind::Measure)? {
            Value::Measure(m) => Ok(m.clone()),
            _ => unreachable!(),
        }
    }

    fn build(&self, pos: Pos, decl: &Decl) -> Result<Value, ScriptError> {
        let name = decl.name().expect("named");
        let built = match decl {
            Decl::Monoid { def, .. } => self.build_monoid(name, def).map(|m| Value::Monoid(Arc::new(m))),
            Decl::Hom { source, target, def, .. } => self.build_hom(source, target, def).map(Value::Hom),
            Decl::Functor { def, .. } => match def {
                FunctorDef::Const(m) => self.monoid(m).map(|m| Value::Functor(FunctorSig::constant(m))),
                FunctorDef::Shape(m, a) => self.monoid(m).map(|m| Value::Functor(FunctorSig::shape(m, *a))),
            },
            Decl::Nat { source, target, hom, reindex, .. } => self.build_nat(source, target, hom, reindex).map(Value::Nat),
            Decl::Alg { expr, .. } => self.build_alg(name, expr),
            Decl::Coalg { expr, .. } => self.build_coalg(expr).map(|c| Value::Coalg(Arc::new(c.renamed(name)))),
            Decl::Measure { expr, .. } => return self.build_measure(pos, name, expr).map(|m| Value::Measure(Arc::new(m))),
            Decl::Check { .. } => unreachable!("checks are run, not built"),
        };
        built.map_err(|m| ScriptError::Eval { pos, message: format!("in `{}`: {}", name, m) })
    }

    fn build_monoid(&self, name: &str, def: &MonoidDef) -> Fallible<Monoid> {
        match def {
            // builtin monoids keep their own names so that signatures built
            // from them agree with the builtin carriers
            MonoidDef::Builtin(b) => core(Monoid::builtin(b)),
            MonoidDef::Table { elements, op, unit } => {
                let n = elements.len();
                let index = |s: &str| {
                    elements.iter().position(|e| e == s).ok_or_else(|| format!("`{}` is not a listed element", s))
                };
                let table: Vec<Label> = match op {
                    TableOp::Named(o) => {
                        let f: fn(usize, usize, usize) -> usize = match o.as_str() {
                            "max" => |i, j, _| i.max(j),
                            "min" => |i, j, _| i.min(j),
                            "add" => |i, j, n| (i + j) % n,
                            other => return Err(format!("unknown operation `{}`; use max, min, add or a table", other)),
                        };
                        (0..n).flat_map(|i| (0..n).map(move |j| f(i, j, n) as Label)).collect()
                    }
                    TableOp::Matrix(rows) => {
                        let mut t = Vec::new();
                        for row in rows {
                            for x in row {
                                t.push(index(x)? as Label);
                            }
                        }
                        t
                    }
                };
                let unit = index(unit)? as Label;
                let m = core(Monoid::table(name, elements.clone(), table, unit))?;
                let report = m.check(&self.bounds);
                match report.violations.first() {
                    Some(v) => Err(format!("not a monoid: {}: {}", v.law, v.detail)),
                    None => Ok(m),
                }
            }
        }
    }

    fn build_hom(&self, source: &str, target: &str, def: &HomDef) -> Fallible<MonoidHom> {
        let (s, t) = (self.monoid(source)?, self.monoid(target)?);
        match def {
            HomDef::Identity if s == t => Ok(MonoidHom::identity(s)),
            HomDef::Identity => Err(format!("`id` needs equal monoids, found {} and {}", source, target)),
            HomDef::ToUnit => Ok(MonoidHom::to_unit(s, t)),
            HomDef::Map(pairs) => {
                let elems = s.elements().ok_or_else(|| format!("{} is infinite; use `id` or `unit`", source))?;
                let mut images = Vec::new();
                for x in elems {
                    let shown = s.show(x);
                    let (_, y) = pairs
                        .iter()
                        .find(|(a, _)| *a == shown)
                        .ok_or_else(|| format!("no image given for `{}`", shown))?;
                    images.push(label(&t, y)?);
                }
                for (a, _) in pairs {
                    label(&s, a)?;
                }
                core(MonoidHom::table(s, t, images))
            }
        }
    }

    fn build_nat(&self, source: &str, target: &str, hom: &str, reindex: &[usize]) -> Fallible<NatTransf> {
        let r = reindex
            .iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| "reindex positions count from 1".to_string()))
            .collect::<Fallible<Vec<_>>>()?;
        core(NatTransf::new(self.functor(source)?, self.functor(target)?, self.hom(hom)?, r))
    }

    fn build_alg(&self, name: &str, expr: &Expr) -> Fallible<Value> {
        let (alg, bang) = match expr {
            Expr::Block { functor, elements, rules, .. } => {
                let sig = self.functor(functor)?;
                let labels = sig.monoid().elements().ok_or_else(|| "finite algebras need a finite monoid".to_string())?;
                let mut table = Vec::new();
                for v in sig.values_over(&labels, elements.len()) {
                    let mut image = None;
                    for (pat, rhs) in rules {
                        if matches(pat, &v, &sig, elements)? {
                            image = Some(atom_name(rhs)?);
                            break;
                        }
                    }
                    let shown = cind_core::kernel::render_value(&sig, &v, |&i| elements[i].clone());
                    let image = image.ok_or_else(|| format!("no rule covers {}", shown))?;
                    let i = elements.iter().position(|e| e == image).ok_or_else(|| format!("`{}` is not a listed element", image))?;
                    table.push(i);
                }
                (core(Algebra::finite(name, sig, elements.clone(), table))?, None)
            }
            Expr::Call { head, args } => {
                let name_at = |i: usize| match &args[i] {
                    Arg::Name(n) => n.as_str(),
                    Arg::Int(_) => unreachable!("checked by elaboration"),
                };
                let int_at = |i: usize| match &args[i] {
                    Arg::Int(n) => *n as usize,
                    Arg::Name(_) => unreachable!("checked by elaboration"),
                };
                match head.as_str() {
                    "initial" => (core(Algebra::initial(self.functor(name_at(0))?))?, None),
                    "bounded" => (core(Algebra::bounded(self.functor(name_at(0))?, int_at(1)))?, None),
                    "height" => (core(Algebra::height(self.functor(name_at(0))?))?, None),
                    "label_sum" => (core(Algebra::label_sum(self.functor(name_at(0))?))?, None),
                    "pullback" => (core(Algebra::pullback(&self.nat(name_at(0))?, self.alg(name_at(1))?))?, None),
                    "nat" => (builtins::nat_bounded(int_at(0)), None),
                    "lists" => (builtins::lists_bounded(self.monoid(name_at(0))?, int_at(1)), None),
                    "trees" => (builtins::trees_bounded(self.monoid(name_at(0))?, int_at(1)), None),
                    "bang" => {
                        let mu = self.nat(name_at(0))?;
                        let a = self.alg(name_at(1))?;
                        if mu.source().is_shape() {
                            let b = core(mu_bang_term(&mu, a))?;
                            ((**b.algebra()).clone(), Some(Bang::Term(Arc::new(b))))
                        } else {
                            let b = core(mu_bang_const(&mu, a))?;
                            ((**b.algebra()).clone(), Some(Bang::Const(Arc::new(b))))
                        }
                    }
                    other => unreachable!("`{}` passed elaboration", other),
                }
            }
        };
        Ok(Value::Alg(Arc::new(alg.renamed(name)), bang))
    }

    fn build_coalg(&self, expr: &Expr) -> Fallible<Coalgebra> {
        match expr {
            Expr::Block { functor, rules, .. } => {
                let sig = self.functor(functor)?;
                let mut names: Vec<String> = Vec::new();
                for (lhs, _) in rules {
                    let n = match lhs {
                        SExpr::Atom(a) => a.clone(),
                        other => format!("{}", other),
                    };
                    if names.contains(&n) {
                        return Err(format!("state `{}` has two rules", n));
                    }
                    names.push(n);
                }
                let state = |s: &SExpr| -> Fallible<usize> {
                    let n = match s {
                        SExpr::Atom(a) => a.clone(),
                        other => format!("{}", other),
                    };
                    names.iter().position(|x| *x == n).ok_or_else(|| format!("state `{}` has no rule", n))
                };
                let mut chi = Vec::new();
                for (_, rhs) in rules {
                    chi.push(match rhs {
                        SExpr::Bottom => FValue::Bottom,
                        SExpr::Atom(m) if !sig.is_shape() => FValue::Node(label(sig.monoid(), m)?, vec![]),
                        SExpr::List(items) if items.len() == sig.arity() + 1 => FValue::Node(
                            label(sig.monoid(), atom_name(&items[0])?)?,
                            items[1..].iter().map(state).collect::<Fallible<Vec<_>>>()?,
                        ),
                        other => return Err(format!("`{}` is not a transition of {}", other, sig.describe())),
                    });
                }
                core(Coalgebra::new("machine", sig, names, chi))
            }
            Expr::Call { head, args } => {
                let name_at = |i: usize| match &args[i] {
                    Arg::Name(n) => n.as_str(),
                    Arg::Int(_) => unreachable!("checked by elaboration"),
                };
                let int_at = |i: usize| match &args[i] {
                    Arg::Int(n) => *n as usize,
                    Arg::Name(_) => unreachable!("checked by elaboration"),
                };
                let named = |m: Option<Arc<Monoid>>, n: usize| -> Fallible<Coalgebra> {
                    match core(builtins::builtin(head, m, n))? {
                        Builtin::Coalgebra(c) => Ok(c),
                        Builtin::Algebra(_) => unreachable!("coalgebra builtins"),
                    }
                };
                match head.as_str() {
                    "nat_counter" | "perfect_shape" => named(None, int_at(0)),
                    "shape_coalg" if args.len() == 1 => named(None, int_at(0)),
                    "shape_coalg" | "list_coalg" | "tree_coalg" => named(Some(self.monoid(name_at(0))?), int_at(1)),
                    "unit" => Ok(Coalgebra::unit(self.functor(name_at(0))?)),
                    "terms" => core(Coalgebra::all_terms(self.functor(name_at(0))?, int_at(1))),
                    "shapes" => core(Coalgebra::shapes(self.functor(name_at(0))?, int_at(1))),
                    "push" => core(pushforward_coalgebra(&self.nat(name_at(0))?, &*self.coalg(name_at(1))?)),
                    "shriek" => {
                        let s = core(mu_shriek(&self.nat(name_at(0))?, self.coalg(name_at(1))?))?;
                        Ok((**s.coalgebra()).clone())
                    }
                    "tensor" => core(Coalgebra::tensor(&*self.coalg(name_at(0))?, &*self.coalg(name_at(1))?)),
                    other => unreachable!("`{}` passed elaboration", other),
                }
            }
        }
    }

    fn build_measure(&self, pos: Pos, name: &str, expr: &Expr) -> Result<Measuring, ScriptError> {
        let err = |m: String| ScriptError::Eval { pos, message: format!("in `{}`: {}", name, m) };
        let (head, args) = match expr {
            Expr::Call { head, args } => (head.as_str(), args),
            Expr::Block { .. } => unreachable!("checked by elaboration"),
        };
        let n = |i: usize| match &args[i] {
            Arg::Name(n) => n.as_str(),
            Arg::Int(_) => unreachable!("checked by elaboration"),
        };
        let m = match head {
            "solve" => {
                let (c, a, b) = (self.coalg(n(0)).map_err(err)?, self.alg(n(1)).map_err(err)?, self.alg(n(2)).map_err(err)?);
                let r = oracle::solve_measurings(&c, &a, &b, &self.bounds, SolveOptions { max_solutions: Some(2) })
                    .map_err(|e| err(e.to_string()))?;
                match r.solutions.len() {
                    1 if !r.budget_hit => r.solutions.into_iter().next().expect("one solution"),
                    _ if r.budget_hit => {
                        return Err(ScriptError::Budget {
                            pos,
                            message: format!("in `{}`: budget exhausted after {} steps", name, r.steps),
                        })
                    }
                    0 => return Err(err("no measuring exists".to_string())),
                    _ => return Err(err("the measuring is not unique; `check count` lists how many exist".to_string())),
                }
            }
            "structural" => {
                let (c, a, b) = (self.coalg(n(0)).map_err(err)?, self.alg(n(1)).map_err(err)?, self.alg(n(2)).map_err(err)?);
                Measuring::structural(c, a, b).map_err(|e| err(e.to_string()))?
            }
            "compose" => {
                let (psi, phi) = (self.measure(n(0)).map_err(err)?, self.measure(n(1)).map_err(err)?);
                Measuring::compose(&psi, &phi).map_err(|e| err(e.to_string()))?
            }
            "embed" => {
                let (nu, mu, phi) = (self.nat(n(0)).map_err(err)?, self.nat(n(1)).map_err(err)?, self.measure(n(2)).map_err(err)?);
                measuring::phi_embed(&nu, &mu, &phi, &self.bounds).map_err(|e| err(e.to_string()))?
            }
            "push" => {
                let (mu, phi) = (self.nat(n(0)).map_err(err)?, self.measure(n(1)).map_err(err)?);
                measuring::phi_push(&mu, &phi).map_err(|e| err(e.to_string()))?
            }
            "pull" => {
                let (mu, phi) = (self.nat(n(0)).map_err(err)?, self.measure(n(1)).map_err(err)?);
                measuring::phi_pull(&mu, &phi).map_err(|e| err(e.to_string()))?
            }
            other => unreachable!("`{}` passed elaboration", other),
        };
        Ok(m.renamed(name))
    }

    fn random_targets(&self, sig: &FunctorSig) -> Fallible<Vec<Arc<Algebra>>> {
        let mut out = Vec::new();
        for size in 1..=MAX_SAMPLE_SIZE {
            out.extend(core(oracle::random_algebras(sig, size, SAMPLES_PER_SIZE, size as u64))?);
        }
        Ok(out)
    }

    fn targets(&self, args: &mut Args, sig: &FunctorSig) -> Fallible<Vec<Arc<Algebra>>> {
        if args.peek_word("against") {
            args.at += 1;
            let mut out = Vec::new();
            while let Some(CheckArg::Word(w)) = args.args.get(args.at) {
                if w == "expect" {
                    break;
                }
                out.push(self.alg(w)?);
                args.at += 1;
            }
            if out.is_empty() {
                return Err("`against` needs at least one algebra".to_string());
            }
            Ok(out)
        } else {
            self.random_targets(sig)
        }
    }

    fn check(&self, pos: Pos, kind: &str, args: &[CheckArg]) -> Result<Report, ScriptError> {
        // a trailing `expect STATUS` states the intended outcome
        let (args, expected) = match args {
            [rest @ .., CheckArg::Word(e), CheckArg::Word(s)] if e == "expect" => {
                let s = match s.as_str() {
                    "holds" => Status::Holds,
                    "fails" => Status::Fails,
                    "budget" => Status::Budget,
                    other => {
                        return Err(ScriptError::Eval { pos, message: format!("unknown status `{}`", other) })
                    }
                };
                (rest, Some(s))
            }
            _ => (args, None),
        };
        let instance = args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
        let mut cursor = Args { args, at: 0, kind };
        let inner = self.run_check(kind, &mut cursor).map_err(eval_err(pos))?;
        let mut report = Report::new(kind, instance);
        report.absorb(&inner);
        if let Some(want) = expected {
            if report.status == want {
                report.status = Status::Holds;
                report.witnesses.insert(0, format!("{} as expected", want));
            } else {
                let got = report.status;
                report.status = Status::Fails;
                report.witnesses.insert(0, format!("expected {}, got {}", want, got));
            }
        }
        Ok(report)
    }

    fn run_check(&self, kind: &str, args: &mut Args) -> Fallible<Report> {
        let b = &self.bounds;
        let mut r = Report::new(kind, String::new());
        match kind {
            "law" => {
                let phi = self.measure(args.word("a measuring")?)?;
                args.finish()?;
                r = Report::from_law(kind, "", &phi.check_law(b));
            }
            "monoid" => {
                let m = self.monoid(args.word("a monoid")?)?;
                args.finish()?;
                r = Report::from_law(kind, "", &m.check(b));
            }
            "hom" => {
                let h = self.hom(args.word("a homomorphism")?)?;
                args.finish()?;
                r = Report::from_law(kind, "", &h.check(b));
            }
            "nat" => {
                let mu = self.nat(args.word("a natural transformation")?)?;
                args.finish()?;
                r = Report::from_law(kind, "", &mu.check_lax(3, b));
            }
            "c-initial" => {
                let a = self.alg(args.word("an algebra")?)?;
                let c = self.coalg(args.word("a coalgebra")?)?;
                let targets = self.targets(args, a.sig())?;
                args.finish()?;
                r = core(oracle::check_c_initial(&c, &a, &targets, b))?;
            }
            "preinitial-subterminal" => {
                let p = self.alg(args.word("an algebra")?)?;
                let target = self.alg(args.word("an algebra")?)?;
                let mut family = Vec::new();
                while !args.done() {
                    family.push(self.coalg(args.word("a coalgebra")?)?);
                }
                r = core(oracle::check_preinitial_subterminal(&p, &target, &family, b))?;
            }
            "adjunction" => {
                let side = args.word("`bang` or `shriek`")?;
                let mu = self.nat(args.word("a natural transformation")?)?;
                let x = args.word("the first object")?;
                let y = args.word("the second object")?;
                args.finish()?;
                let instances = match side {
                    "bang" => Instances::Bang(vec![(self.alg(x)?, self.alg(y)?)]),
                    "shriek" => Instances::Shriek(vec![(self.coalg(x)?, self.coalg(y)?)]),
                    other => return Err(format!("unknown adjunction side `{}`", other)),
                };
                r = core(oracle::check_adjunction(&mu, &instances, b))?;
            }
            "preserves" => {
                let mu = self.nat(args.word("a natural transformation")?)?;
                let c = self.coalg(args.word("a coalgebra")?)?;
                let a = self.alg(args.word("an algebra")?)?;
                let source_targets = self.random_targets(a.sig())?;
                let target_targets = self.targets(args, mu.target())?;
                args.finish()?;
                r = core(oracle::check_preserves_c_initial(&mu, &c, &a, &source_targets, &target_targets, b))?;
            }
            "respects" => {
                let t = match args.word("`embed`, `push` or `pull`")? {
                    "embed" => {
                        let nu = self.nat(args.word("the retraction")?)?;
                        let mu = self.nat(args.word("the section")?)?;
                        Transport::Embed { nu, mu }
                    }
                    "push" => Transport::Push(self.nat(args.word("a natural transformation")?)?),
                    "pull" => Transport::Pull(self.nat(args.word("a natural transformation")?)?),
                    other => return Err(format!("unknown transport `{}`", other)),
                };
                let psi = self.measure(args.word("the outer measuring")?)?;
                let phi = self.measure(args.word("the inner measuring")?)?;
                args.finish()?;
                r = core(oracle::check_respects_composition(&t, &[(psi, phi)], b))?;
            }
            "eval" => {
                let phi = self.measure(args.word("a measuring")?)?;
                let state = args.sexpr("a state")?;
                let input = args.sexpr("an input")?;
                args.eq()?;
                let output = args.sexpr("the expected output")?;
                args.finish()?;
                let c = phi.coalg();
                let state_name = match &state {
                    SExpr::Atom(a) => a.clone(),
                    other => other.to_string(),
                };
                let s = c.state_named(&state_name).ok_or_else(|| format!("`{}` is not a state of {}", state_name, c.name()))?;
                let x = elem_of(phi.source(), &input)?;
                let want = elem_of(phi.target(), &output)?;
                let got = core(phi.eval(s, &x))?;
                if got != want {
                    r.fail(format!("got {}", phi.target().render(&got)));
                }
            }
            "alpha" => {
                let a = self.alg(args.word("an algebra")?)?;
                let v = fvalue_of(&a, &args.sexpr("a value")?)?;
                args.eq()?;
                let want = elem_of(&a, &args.sexpr("the expected element")?)?;
                args.finish()?;
                let got = core(a.alpha(&v))?;
                if got != want {
                    r.fail(format!("got {}", a.render(&got)));
                }
            }
            "inject" => {
                let name = args.word("an algebra built by `bang`")?;
                let q = self.alg(name)?;
                let bang = self.bang(name)?;
                let input = args.sexpr("an element of the source")?;
                args.eq()?;
                let want = elem_of(&q, &args.sexpr("the expected element")?)?;
                args.finish()?;
                let got = match &bang {
                    Bang::Const(qa) => core(qa.embed(&elem_of(qa.source(), &input)?))?,
                    Bang::Term(ea) => core(ea.embed(&elem_of(ea.source(), &input)?))?,
                };
                if got != want {
                    r.fail(format!("got {}", q.render(&got)));
                }
            }
            "classes" => {
                let name = args.word("an algebra built by `bang`")?;
                let qa = match self.bang(name)? {
                    Bang::Const(qa) => qa,
                    Bang::Term(_) => return Err(format!("`{}` is a term algebra, not a quotient", name)),
                };
                let want: BTreeSet<BTreeSet<String>> =
                    args.sets()?.into_iter().map(|s| s.iter().cloned().collect()).collect();
                args.finish()?;
                let got: BTreeSet<BTreeSet<String>> = qa.classes().into_iter().map(|c| c.into_iter().collect()).collect();
                if got != want {
                    let shown: Vec<String> = qa.classes().iter().map(|c| format!("{{{}}}", c.join(", "))).collect();
                    r.fail(format!("classes are {}", shown.join(" ")));
                }
            }
            "prune" => {
                let shape = args.sexpr("a shape")?;
                let tree = args.sexpr("a tree")?;
                args.eq()?;
                let want = args.sexpr("the expected tree")?;
                args.finish()?;
                let got = prune(&shape, &tree)?;
                let want = term_of(&crate::prune::tree_sig(), &want)?;
                if got != want {
                    r.fail(format!("got {}", crate::prune::render(&got)));
                }
            }
            "count" => {
                let c = self.coalg(args.word("a coalgebra")?)?;
                let a = self.alg(args.word("an algebra")?)?;
                let target = self.alg(args.word("an algebra")?)?;
                args.eq()?;
                let want = match args.next("a number")? {
                    CheckArg::Int(n) => *n as usize,
                    other => return Err(format!("`check count` expected a number, found {}", other)),
                };
                args.finish()?;
                let res = core(oracle::solve_measurings(&c, &a, &target, b, SolveOptions::default()))?;
                if res.budget_hit {
                    r.out_of_budget(format!("budget exhausted after {} steps with {} found", res.steps, res.solutions.len()));
                } else if res.solutions.len() != want {
                    r.fail(format!("found {} measurings", res.solutions.len()));
                    for s in res.solutions.iter().take(2) {
                        r.fail(core(oracle::render_table(s, b))?);
                    }
                } else if !res.exhaustive {
                    r.witnesses.push("partial coverage: source carrier enumerated to the depth bound".to_string());
                }
            }
            "strict" => {
                let mu = self.nat(args.word("a natural transformation")?)?;
                let d = self.coalg(args.word("a coalgebra")?)?;
                let c = self.coalg(args.word("a coalgebra")?)?;
                args.finish()?;
                let left = core(pushforward_coalgebra(&mu, &core(Coalgebra::tensor(&d, &c))?))?;
                let right = core(Coalgebra::tensor(
                    &core(pushforward_coalgebra(&mu, &d))?,
                    &core(pushforward_coalgebra(&mu, &c))?,
                ))?;
                if left.sig() != right.sig() || left.names() != right.names() || left.transitions() != right.transitions() {
                    r.fail(format!("{} and {} differ", left.name(), right.name()));
                }
            }
            "same" => {
                let x = self.coalg(args.word("a coalgebra")?)?;
                let y = self.coalg(args.word("a coalgebra")?)?;
                args.finish()?;
                if x.sig() != y.sig() {
                    r.fail(format!("{} is over {}, {} over {}", x.name(), x.sig().describe(), y.name(), y.sig().describe()));
                } else if x.names() != y.names() || x.transitions() != y.transitions() {
                    let diff = (0..x.len().max(y.len()))
                        .find(|&i| i >= x.len() || i >= y.len() || x.state_name(i) != y.state_name(i) || x.chi(i) != y.chi(i));
                    r.fail(format!("first difference at state index {}", diff.unwrap_or(0)));
                }
            }
            "shriek" => {
                let mu = self.nat(args.word("a natural transformation")?)?;
                let c = self.coalg(args.word("a coalgebra")?)?;
                args.eq()?;
                let want: BTreeSet<String> = match args.next("a set of states")? {
                    CheckArg::Set(s) => s.iter().cloned().collect(),
                    other => return Err(format!("`check shriek` expected a set of states, found {}", other)),
                };
                args.finish()?;
                let s = core(mu_shriek(&mu, c.clone()))?;
                let got: BTreeSet<String> = s.kept().iter().map(|&i| c.state_name(i).to_string()).collect();
                if got != want {
                    r.fail(format!("kept {{{}}}", got.into_iter().collect::<Vec<_>>().join(", ")));
                }
            }
            other => return Err(format!("unknown check `{}`", other)),
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn run_src(src: &str) -> Result<Outcome, ScriptError> {
        run(&parse(src).unwrap(), &Bounds::default())
    }

    const BASE: &str = "
        monoid U = builtin triv
        monoid B = table {0, 1} max 0
        hom pick : U -> B = unit
        functor F = shape(U, 1)
        functor G = shape(B, 1)
        nat mu : F -> G = (hom pick, reindex [1])
    ";

    #[test]
    fn finite_algebras_follow_their_rules() {
        let src = format!(
            "{}alg A = finite G {{z, s}} {{ #b -> z, (1 _) -> s, (_ s) -> s, _ -> z }}
             check alpha A #b = z
             check alpha A (1 z) = s
             check alpha A (0 s) = s
             check alpha A (0 z) = z",
            BASE
        );
        let out = run_src(&src).unwrap();
        assert_eq!(out.checks.len(), 4);
        assert!(out.checks.iter().all(|c| c.report.holds()), "{:?}", out.checks);
    }

    #[test]
    fn min_zip_is_solved_and_evaluated() {
        let src = format!(
            "{}coalg N = nat_counter(4)  alg A = nat(4)  alg L = lists(B, 4)  alg PL = pullback(mu, L)
             measure zip = solve(N, A, PL)
             check eval zip 2 (e (e (e #b))) = [0, 0]
             check eval zip 4 (e #b) = [0]
             check eval zip 0 (e #b) = [1]",
            BASE
        );
        let out = run_src(&src).unwrap();
        assert!(out.checks[0].report.holds(), "{}", out.checks[0].report);
        assert!(out.checks[1].report.holds(), "{}", out.checks[1].report);
        assert_eq!(out.checks[2].report.status, Status::Fails);
        assert_eq!(out.status(), Status::Fails);
    }

    #[test]
    fn expectations_invert_the_outcome() {
        let src = format!(
            "{}alg J = finite F {{z, junk}} {{ _ -> z }}  alg K = finite F {{p, q}} {{ _ -> p }}  coalg I = unit(F)
             check c-initial J I against K expect fails
             check count I J K = 2",
            BASE
        );
        let out = run_src(&src).unwrap();
        assert!(out.checks[0].report.holds(), "{}", out.checks[0].report);
        assert!(out.checks[0].report.witnesses.iter().any(|w| w.contains("second:")));
        assert!(out.checks[1].report.holds(), "{}", out.checks[1].report);
    }

    #[test]
    fn runtime_errors_carry_the_declaration_position() {
        let src = format!("{}alg A = finite G {{z}} {{ #b -> z }}", BASE);
        match run_src(&src).unwrap_err() {
            ScriptError::Eval { pos, message } => {
                assert_eq!(pos.line, 8);
                assert!(message.contains("no rule covers"), "{}", message);
            }
            other => panic!("{:?}", other),
        }
    }
}
