//! Script syntax tree. Positions live beside the tree, not in it, so that
//! printing and reparsing compares equal.

/// A term or pattern: `#b`, `_`, a name, or `(head arg…)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Bottom,
    Wild,
    Atom(String),
    List(Vec<SExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableOp {
    /// `max`, `min` or `add` over the listed order.
    Named(String),
    /// Rows of the multiplication table, by element name.
    Matrix(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDef {
    Builtin(String),
    Table { elements: Vec<String>, op: TableOp, unit: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomDef {
    Identity,
    ToUnit,
    Map(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorDef {
    Const(String),
    Shape(String, usize),
}

/// An argument of a constructor call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Int(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `head(arg, …)`.
    Call { head: String, args: Vec<Arg> },
    /// `finite F {a, b} { pattern -> a, … }` or
    /// `machine F { s -> value, … }`.
    Block { head: String, functor: String, elements: Vec<String>, rules: Vec<(SExpr, SExpr)> },
}

/// An argument of a check command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckArg {
    Word(String),
    Int(u64),
    Str(String),
    Term(SExpr),
    Set(Vec<String>),
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Monoid { name: String, def: MonoidDef },
    Hom { name: String, source: String, target: String, def: HomDef },
    Functor { name: String, def: FunctorDef },
    Nat { name: String, source: String, target: String, hom: String, reindex: Vec<usize> },
    Alg { name: String, expr: Expr },
    Coalg { name: String, expr: Expr },
    Measure { name: String, expr: Expr },
    Check { kind: String, args: Vec<CheckArg> },
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match self {
            Decl::Monoid { name, .. }
            | Decl::Hom { name, .. }
            | Decl::Functor { name, .. }
            | Decl::Nat { name, .. }
            | Decl::Alg { name, .. }
            | Decl::Coalg { name, .. }
            | Decl::Measure { name, .. } => Some(name),
            Decl::Check { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub decls: Vec<Decl>,
}
