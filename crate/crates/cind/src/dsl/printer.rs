//! Canonical text for scripts; parsing the output gives back the same tree.

use std::fmt::{self, Write};

use super::ast::*;

fn is_plain(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    s != "_" && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '-') && !s.ends_with('-')
}

/// An atom as it must be written to lex back to the same string.
fn atom(s: &str) -> String {
    if is_plain(s) && !s.chars().all(|c| c.is_ascii_digit()) || s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
        s.to_string()
    } else {
        format!("{:?}", s)
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Bottom => f.write_str("#b"),
            SExpr::Wild => f.write_str("_"),
            SExpr::Atom(s) => f.write_str(&atom(s)),
            SExpr::List(items) => {
                f.write_char('(')?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "{}", x)?;
                }
                f.write_char(')')
            }
        }
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(s) => f.write_str(s),
            Arg::Int(n) => write!(f, "{}", n),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Call { head, args } => write!(f, "{}({})", head, join(args, ", ")),
            Expr::Block { head, functor, elements, rules } => {
                write!(f, "{} {}", head, functor)?;
                if head == "finite" {
                    let names: Vec<String> = elements.iter().map(|e| atom(e)).collect();
                    write!(f, " {{{}}}", names.join(", "))?;
                }
                f.write_str(" {")?;
                for (i, (l, r)) in rules.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "\n    {} -> {}", l, r)?;
                }
                f.write_str("\n}")
            }
        }
    }
}

impl fmt::Display for CheckArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckArg::Word(s) => f.write_str(s),
            CheckArg::Int(n) => write!(f, "{}", n),
            CheckArg::Str(s) => write!(f, "{:?}", s),
            CheckArg::Term(t) => write!(f, "{}", t),
            CheckArg::Set(items) => {
                let names: Vec<String> = items.iter().map(|e| atom(e)).collect();
                write!(f, "{{{}}}", names.join(", "))
            }
            CheckArg::Eq => f.write_char('='),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Monoid { name, def } => {
                write!(f, "monoid {} = ", name)?;
                match def {
                    MonoidDef::Builtin(b) => write!(f, "builtin {}", b),
                    MonoidDef::Table { elements, op, unit } => {
                        let names: Vec<String> = elements.iter().map(|e| atom(e)).collect();
                        write!(f, "table {{{}}} ", names.join(", "))?;
                        match op {
                            TableOp::Named(s) => f.write_str(s)?,
                            TableOp::Matrix(rows) => {
                                let rows: Vec<String> = rows
                                    .iter()
                                    .map(|r| format!("[{}]", r.iter().map(|e| atom(e)).collect::<Vec<_>>().join(", ")))
                                    .collect();
                                write!(f, "[{}]", rows.join(", "))?;
                            }
                        }
                        write!(f, " {}", atom(unit))
                    }
                }
            }
            Decl::Hom { name, source, target, def } => {
                write!(f, "hom {} : {} -> {} = ", name, source, target)?;
                match def {
                    HomDef::Identity => f.write_str("id"),
                    HomDef::ToUnit => f.write_str("unit"),
                    HomDef::Map(pairs) => {
                        let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("{} -> {}", atom(a), atom(b))).collect();
                        write!(f, "{{{}}}", parts.join(", "))
                    }
                }
            }
            Decl::Functor { name, def } => match def {
                FunctorDef::Const(m) => write!(f, "functor {} = const({})", name, m),
                FunctorDef::Shape(m, a) => write!(f, "functor {} = shape({}, {})", name, m, a),
            },
            Decl::Nat { name, source, target, hom, reindex } => write!(
                f,
                "nat {} : {} -> {} = (hom {}, reindex [{}])",
                name,
                source,
                target,
                hom,
                join(reindex, ", ")
            ),
            Decl::Alg { name, expr } => write!(f, "alg {} = {}", name, expr),
            Decl::Coalg { name, expr } => write!(f, "coalg {} = {}", name, expr),
            Decl::Measure { name, expr } => write!(f, "measure {} = {}", name, expr),
            Decl::Check { kind, args } => {
                write!(f, "check {}", kind)?;
                for a in args {
                    write!(f, " {}", a)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{}", d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse;

    #[test]
    fn printing_round_trips() {
        let src = r#"
            monoid B = table {0,1} max 0
            monoid X = table {a, b} [[a, b], [b, a]] a
            monoid N = builtin nat
            hom h : B -> B = {0 -> 1, 1 -> 1}
            functor G = shape(B, 1)
            nat mu : G -> G = (hom h, reindex [1])
            alg A = finite G {x, y} { #b -> x, (_ y) -> y, (0 x) -> "x" }
            coalg C = machine G { s -> (1 s), t -> #b, "(a b)" -> [0, 1] }
            measure phi = solve(C, A, A)
            check eval phi "s" x = y
            check classes Q {T_A, "F'"} {other}
        "#;
        let first = parse(src).unwrap().script;
        let printed = first.to_string();
        let second = parse(&printed).unwrap().script;
        assert_eq!(first, second, "{}", printed);
    }
}
