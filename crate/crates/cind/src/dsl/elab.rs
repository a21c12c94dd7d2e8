//! Name resolution and kind checking before anything is built.

use std::collections::HashMap;

use super::ast::*;
use super::lexer::Pos;
use super::{Parsed, ScriptError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Monoid,
    Hom,
    Functor,
    Nat,
    Alg,
    Coalg,
    Measure,
}

impl Kind {
    pub fn noun(self) -> &'static str {
        match self {
            Kind::Monoid => "a monoid",
            Kind::Hom => "a homomorphism",
            Kind::Functor => "a functor",
            Kind::Nat => "a natural transformation",
            Kind::Alg => "an algebra",
            Kind::Coalg => "a coalgebra",
            Kind::Measure => "a measuring",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Param {
    Ref(Kind),
    Int,
}

use Kind::*;
use Param::{Int as I, Ref as R};

/// Accepted argument lists of each constructor, by declaration kind.
pub(crate) fn signatures(kind: Kind, head: &str) -> Option<&'static [&'static [Param]]> {
    Some(match (kind, head) {
        (Alg, "initial" | "height" | "label_sum") => &[&[R(Functor)]],
        (Alg, "bounded") => &[&[R(Functor), I]],
        (Alg, "pullback" | "bang") => &[&[R(Nat), R(Alg)]],
        (Alg, "nat") => &[&[I]],
        (Alg, "lists" | "trees") => &[&[R(Monoid), I]],
        (Coalg, "nat_counter" | "perfect_shape") => &[&[I]],
        (Coalg, "shape_coalg") => &[&[R(Monoid), I], &[I]],
        (Coalg, "list_coalg" | "tree_coalg") => &[&[R(Monoid), I]],
        (Coalg, "unit") => &[&[R(Functor)]],
        (Coalg, "terms" | "shapes") => &[&[R(Functor), I]],
        (Coalg, "push" | "shriek") => &[&[R(Nat), R(Coalg)]],
        (Coalg, "tensor") => &[&[R(Coalg), R(Coalg)]],
        (Measure, "solve" | "structural") => &[&[R(Coalg), R(Alg), R(Alg)]],
        (Measure, "compose") => &[&[R(Measure), R(Measure)]],
        (Measure, "embed") => &[&[R(Nat), R(Nat), R(Measure)]],
        (Measure, "push" | "pull") => &[&[R(Nat), R(Measure)]],
        _ => return None,
    })
}

/// Whether each functor is constant, for the cross-class check on `nat`.
struct Scope {
    kinds: HashMap<String, Kind>,
    constant: HashMap<String, bool>,
}

impl Scope {
    fn resolve(&self, pos: Pos, name: &str, want: Kind) -> Result<(), ScriptError> {
        match self.kinds.get(name) {
            None => Err(ScriptError::Unresolved { pos, name: name.to_string() }),
            Some(k) if *k != want => Err(ScriptError::Kind {
                pos,
                message: format!("`{}` is {}, expected {}", name, k.noun(), want.noun()),
            }),
            Some(_) => Ok(()),
        }
    }
}

/// Checks that every reference names an earlier declaration of the right
/// kind, that names are unique and that no transformation crosses between
/// constant and shape functors.
pub fn elaborate(parsed: &Parsed) -> Result<(), ScriptError> {
    let mut scope = Scope { kinds: HashMap::new(), constant: HashMap::new() };
    for (decl, &pos) in parsed.script.decls.iter().zip(&parsed.positions) {
        let kind = match decl {
            Decl::Monoid { .. } => Monoid,
            Decl::Hom { source, target, .. } => {
                scope.resolve(pos, source, Monoid)?;
                scope.resolve(pos, target, Monoid)?;
                Hom
            }
            Decl::Functor { name, def } => {
                let (m, constant) = match def {
                    FunctorDef::Const(m) => (m, true),
                    FunctorDef::Shape(m, _) => (m, false),
                };
                scope.resolve(pos, m, Monoid)?;
                scope.constant.insert(name.clone(), constant);
                Functor
            }
            Decl::Nat { name, source, target, hom, .. } => {
                scope.resolve(pos, source, Functor)?;
                scope.resolve(pos, target, Functor)?;
                scope.resolve(pos, hom, Hom)?;
                if scope.constant[source] != scope.constant[target] {
                    let class = |f: &String| if scope.constant[f] { "constant" } else { "shape" };
                    return Err(ScriptError::Kind {
                        pos,
                        message: format!(
                            "`{}` goes from {} functor `{}` to {} functor `{}`",
                            name,
                            class(source),
                            source,
                            class(target),
                            target
                        ),
                    });
                }
                Nat
            }
            Decl::Alg { expr, .. } => {
                resolve_expr(&scope, pos, Alg, expr)?;
                Alg
            }
            Decl::Coalg { expr, .. } => {
                resolve_expr(&scope, pos, Coalg, expr)?;
                Coalg
            }
            Decl::Measure { expr, .. } => {
                resolve_expr(&scope, pos, Measure, expr)?;
                Measure
            }
            Decl::Check { .. } => continue,
        };
        let name = decl.name().expect("declarations are named");
        if scope.kinds.insert(name.to_string(), kind).is_some() {
            return Err(ScriptError::Kind { pos, message: format!("`{}` is declared twice", name) });
        }
    }
    Ok(())
}

fn resolve_expr(scope: &Scope, pos: Pos, kind: Kind, expr: &Expr) -> Result<(), ScriptError> {
    match expr {
        Expr::Block { head, functor, .. } => {
            let fits = matches!((kind, head.as_str()), (Alg, "finite") | (Coalg, "machine"));
            if !fits {
                return Err(ScriptError::Kind { pos, message: format!("`{}` does not build {}", head, kind.noun()) });
            }
            scope.resolve(pos, functor, Functor)
        }
        Expr::Call { head, args } => {
            let sigs = signatures(kind, head).ok_or_else(|| ScriptError::Kind {
                pos,
                message: format!("`{}` does not build {}", head, kind.noun()),
            })?;
            let sig = sigs.iter().find(|s| s.len() == args.len()).ok_or_else(|| ScriptError::Kind {
                pos,
                message: format!("`{}` takes {} arguments", head, sigs.iter().map(|s| s.len().to_string()).collect::<Vec<_>>().join(" or ")),
            })?;
            for (p, a) in sig.iter().zip(args) {
                match (p, a) {
                    (Param::Int, Arg::Int(_)) => {}
                    (Param::Ref(k), Arg::Name(n)) => scope.resolve(pos, n, *k)?,
                    (Param::Int, Arg::Name(n)) => {
                        return Err(ScriptError::Kind { pos, message: format!("`{}` expects a number, found `{}`", head, n) })
                    }
                    (Param::Ref(k), Arg::Int(n)) => {
                        return Err(ScriptError::Kind { pos, message: format!("`{}` expects {}, found {}", head, k.noun(), n) })
                    }
                }
            }
            Ok(())
        }
    }
}
