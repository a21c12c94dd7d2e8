//! One-pass recursive descent over the token stream.

use super::ast::*;
use super::lexer::{lex, Pos, Tok, Token};
use super::ParseError;

pub const KEYWORDS: [&str; 8] = ["monoid", "hom", "functor", "nat", "alg", "coalg", "measure", "check"];

/// A parsed script with the position of each declaration.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub script: Script,
    pub positions: Vec<Pos>,
}

pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut script = Script::default();
    let mut positions = Vec::new();
    while p.peek() != &Tok::Eof {
        positions.push(p.pos());
        script.decls.push(p.decl()?);
    }
    Ok(Parsed { script, positions })
}

/// Parses a single term such as `(5 (1 #b #b) #b)` or `[0,1]`.
pub fn parse_term(text: &str) -> Result<SExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.sexpr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos(), expected.iter().map(|s| s.to_string()).collect(), &self.peek().to_string()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[what])
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.error(&[&format!("`{}`", word)]),
        }
    }

    /// A declared name: an identifier that is not a keyword.
    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["a name"]),
        }
    }

    /// An element or label name; numerals and quoted strings count as names.
    /// Any identifier, keywords included; used where a keyword cannot start a declaration.
    fn word(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["a name"]),
        }
    }

    fn element(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n.to_string())
            }
            Tok::Ident(s) | Tok::Str(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["an element name"]),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.error(&["a number"]),
        }
    }

    /// `open item (, item)* close`, possibly empty.
    fn seq<T>(
        &mut self,
        open: Tok,
        close: Tok,
        open_name: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect(open, open_name)?;
        let mut out = Vec::new();
        if *self.peek() == close {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                t if *t == close => {
                    self.bump();
                    return Ok(out);
                }
                _ => return self.error(&["`,`", &close.to_string()]),
            }
        }
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let word = match self.peek() {
            Tok::Ident(s) if is_keyword(s) => s.clone(),
            _ => return self.error(&KEYWORDS),
        };
        self.bump();
        match word.as_str() {
            "monoid" => {
                let name = self.name()?;
                self.expect(Tok::Eq, "`=`")?;
                let def = self.monoid_def()?;
                Ok(Decl::Monoid { name, def })
            }
            "hom" => {
                let name = self.name()?;
                self.expect(Tok::Colon, "`:`")?;
                let source = self.name()?;
                self.expect(Tok::Arrow, "`->`")?;
                let target = self.name()?;
                self.expect(Tok::Eq, "`=`")?;
                let def = self.hom_def()?;
                Ok(Decl::Hom { name, source, target, def })
            }
            "functor" => {
                let name = self.name()?;
                self.expect(Tok::Eq, "`=`")?;
                let def = match self.peek() {
                    Tok::Ident(s) if s == "const" => {
                        self.bump();
                        self.expect(Tok::LParen, "`(`")?;
                        let m = self.name()?;
                        self.expect(Tok::RParen, "`)`")?;
                        FunctorDef::Const(m)
                    }
                    Tok::Ident(s) if s == "shape" => {
                        self.bump();
                        self.expect(Tok::LParen, "`(`")?;
                        let m = self.name()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let a = self.int()? as usize;
                        self.expect(Tok::RParen, "`)`")?;
                        FunctorDef::Shape(m, a)
                    }
                    _ => return self.error(&["`const`", "`shape`"]),
                };
                Ok(Decl::Functor { name, def })
            }
            "nat" => {
                let name = self.name()?;
                self.expect(Tok::Colon, "`:`")?;
                let source = self.name()?;
                self.expect(Tok::Arrow, "`->`")?;
                let target = self.name()?;
                self.expect(Tok::Eq, "`=`")?;
                self.expect(Tok::LParen, "`(`")?;
                self.keyword("hom")?;
                let hom = self.name()?;
                self.expect(Tok::Comma, "`,`")?;
                self.keyword("reindex")?;
                let reindex = self.seq(Tok::LBracket, Tok::RBracket, "`[`", |p| p.int().map(|n| n as usize))?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Decl::Nat { name, source, target, hom, reindex })
            }
            "alg" | "coalg" | "measure" => {
                let name = self.name()?;
                self.expect(Tok::Eq, "`=`")?;
                let expr = self.expr()?;
                Ok(match word.as_str() {
                    "alg" => Decl::Alg { name, expr },
                    "coalg" => Decl::Coalg { name, expr },
                    _ => Decl::Measure { name, expr },
                })
            }
            _ => {
                // check kinds may reuse declaration keywords, as in `check nat mu`
                let kind = match self.peek().clone() {
                    Tok::Ident(s) => {
                        self.bump();
                        s
                    }
                    _ => return self.error(&["a check kind"]),
                };
                let mut args = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::Eof => break,
                        Tok::Ident(s) if is_keyword(&s) => break,
                        Tok::Ident(s) => {
                            self.bump();
                            args.push(CheckArg::Word(s));
                        }
                        Tok::Int(n) => {
                            self.bump();
                            args.push(CheckArg::Int(n));
                        }
                        Tok::Str(s) => {
                            self.bump();
                            args.push(CheckArg::Str(s));
                        }
                        Tok::Eq => {
                            self.bump();
                            args.push(CheckArg::Eq);
                        }
                        Tok::LBrace => {
                            let items = self.seq(Tok::LBrace, Tok::RBrace, "`{`", |p| p.element())?;
                            args.push(CheckArg::Set(items));
                        }
                        Tok::Bottom | Tok::LParen | Tok::LBracket => args.push(CheckArg::Term(self.sexpr()?)),
                        _ => return self.error(&["a check argument", "a declaration keyword", "end of input"]),
                    }
                }
                Ok(Decl::Check { kind, args })
            }
        }
    }

    fn monoid_def(&mut self) -> Result<MonoidDef, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "builtin" => {
                self.bump();
                Ok(MonoidDef::Builtin(self.word()?))
            }
            Tok::Ident(s) if s == "table" => {
                self.bump();
                let elements = self.seq(Tok::LBrace, Tok::RBrace, "`{`", |p| p.element())?;
                let op = match self.peek() {
                    Tok::LBracket => TableOp::Matrix(self.seq(Tok::LBracket, Tok::RBracket, "`[`", |p| {
                        p.seq(Tok::LBracket, Tok::RBracket, "`[`", |q| q.element())
                    })?),
                    _ => TableOp::Named(self.name()?),
                };
                let unit = self.element()?;
                Ok(MonoidDef::Table { elements, op, unit })
            }
            _ => self.error(&["`builtin`", "`table`"]),
        }
    }

    fn hom_def(&mut self) -> Result<HomDef, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "id" => {
                self.bump();
                Ok(HomDef::Identity)
            }
            Tok::Ident(s) if s == "unit" => {
                self.bump();
                Ok(HomDef::ToUnit)
            }
            Tok::LBrace => Ok(HomDef::Map(self.seq(Tok::LBrace, Tok::RBrace, "`{`", |p| {
                let x = p.element()?;
                p.expect(Tok::Arrow, "`->`")?;
                Ok((x, p.element()?))
            })?)),
            _ => self.error(&["`id`", "`unit`", "`{`"]),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let head = self.word()?;
        match head.as_str() {
            "finite" => {
                let functor = self.name()?;
                let elements = self.seq(Tok::LBrace, Tok::RBrace, "`{`", |p| p.element())?;
                let rules = self.rules()?;
                Ok(Expr::Block { head, functor, elements, rules })
            }
            "machine" => {
                let functor = self.name()?;
                let rules = self.rules()?;
                Ok(Expr::Block { head, functor, elements: Vec::new(), rules })
            }
            _ => {
                let args = self.seq(Tok::LParen, Tok::RParen, "`(`", |p| match p.peek().clone() {
                    Tok::Int(n) => {
                        p.bump();
                        Ok(Arg::Int(n))
                    }
                    _ => Ok(Arg::Name(p.name()?)),
                })?;
                Ok(Expr::Call { head, args })
            }
        }
    }

    fn rules(&mut self) -> Result<Vec<(SExpr, SExpr)>, ParseError> {
        self.seq(Tok::LBrace, Tok::RBrace, "`{`", |p| {
            let lhs = p.sexpr()?;
            p.expect(Tok::Arrow, "`->`")?;
            Ok((lhs, p.sexpr()?))
        })
    }

    fn sexpr(&mut self) -> Result<SExpr, ParseError> {
        match self.peek().clone() {
            Tok::Bottom => {
                self.bump();
                Ok(SExpr::Bottom)
            }
            Tok::Underscore => {
                self.bump();
                Ok(SExpr::Wild)
            }
            Tok::Int(_) | Tok::Ident(_) => Ok(SExpr::Atom(self.element()?)),
            Tok::Str(s) => {
                self.bump();
                Ok(SExpr::Atom(s))
            }
            Tok::LParen => {
                self.bump();
                let mut items = Vec::new();
                while *self.peek() != Tok::RParen {
                    if *self.peek() == Tok::Eof {
                        return self.error(&["`)`"]);
                    }
                    items.push(self.sexpr()?);
                }
                self.bump();
                if items.is_empty() {
                    return Err(ParseError::new(self.pos(), vec!["a label".into()], "`()`"));
                }
                Ok(SExpr::List(items))
            }
            Tok::LBracket => {
                // list sugar: [a, b] is (a (b #b))
                let items = self.seq(Tok::LBracket, Tok::RBracket, "`[`", |p| p.element())?;
                Ok(items.into_iter().rev().fold(SExpr::Bottom, |tail, x| SExpr::List(vec![SExpr::Atom(x), tail])))
            }
            _ => self.error(&["`#b`", "`_`", "a name", "`(`", "`[`"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_monoid_decl() {
        let p = parse("monoid B = table {0,1} max 0").unwrap();
        assert_eq!(
            p.script.decls,
            vec![Decl::Monoid {
                name: "B".into(),
                def: MonoidDef::Table { elements: vec!["0".into(), "1".into()], op: TableOp::Named("max".into()), unit: "0".into() }
            }]
        );
    }

    #[test]
    fn functor_and_nat() {
        let p = parse("functor G = shape(B, 1)  nat mu : F -> G = (hom unitB, reindex [1])").unwrap();
        assert_eq!(p.script.decls.len(), 2);
        assert_eq!(
            p.script.decls[1],
            Decl::Nat { name: "mu".into(), source: "F".into(), target: "G".into(), hom: "unitB".into(), reindex: vec![1] }
        );
        assert_eq!(p.positions[1], Pos { line: 1, col: 26 });
    }

    #[test]
    fn errors_carry_position_and_expected_tokens() {
        let e = parse("functor G = shape(B 1)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 21 });
        assert_eq!(e.expected, vec!["`,`".to_string()]);
        let e = parse("monoid B = table {0,1} max 0\nnonsense").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 1 });
        assert!(e.expected.contains(&"check".to_string()));
    }

    #[test]
    fn list_sugar() {
        assert_eq!(parse_term("[a, b]").unwrap(), parse_term("(a (b #b))").unwrap());
    }

    #[test]
    fn checks_stop_at_keywords() {
        let p = parse("check eval phi \"0\" 3 = 2 check c-initial T1 S1").unwrap();
        assert_eq!(p.script.decls.len(), 2);
        assert_eq!(
            p.script.decls[0],
            Decl::Check {
                kind: "eval".into(),
                args: vec![
                    CheckArg::Word("phi".into()),
                    CheckArg::Str("0".into()),
                    CheckArg::Int(3),
                    CheckArg::Eq,
                    CheckArg::Int(2)
                ]
            }
        );
    }
}
