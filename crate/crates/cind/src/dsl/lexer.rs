//! Tokens with line:col positions.

use std::fmt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Bottom,
    Arrow,
    Eq,
    Colon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Underscore,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::Int(n) => write!(f, "`{}`", n),
            Tok::Str(s) => write!(f, "{:?}", s),
            Tok::Bottom => f.write_str("`#b`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Underscore => f.write_str("`_`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '#' if chars.get(i + 1) == Some(&'b') && !chars.get(i + 2).is_some_and(|&d| ident_char(d)) => {
                out.push(Token { tok: Tok::Bottom, pos });
                advance(2, &mut i);
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, pos });
                advance(2, &mut i);
            }
            '"' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(ParseError::new(pos, vec!["closing `\"`".into()], "end of line"));
                        }
                        Some('"') => break,
                        Some(&d) => s.push(d),
                    }
                    j += 1;
                }
                out.push(Token { tok: Tok::Str(s), pos });
                let n = j + 1 - i;
                advance(n, &mut i);
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j < chars.len() && ident_char(chars[j]) && !chars[j].is_ascii_digit() {
                    // digits followed by letters form a name such as `0a`
                    while j < chars.len() && (ident_char(chars[j]) || is_hyphen(&chars, j)) {
                        j += 1;
                    }
                    out.push(Token { tok: Tok::Ident(chars[i..j].iter().collect()), pos });
                } else {
                    let digits: String = chars[i..j].iter().collect();
                    let n = digits
                        .parse()
                        .map_err(|_| ParseError::new(pos, vec!["a number below 2^64".into()], &digits))?;
                    out.push(Token { tok: Tok::Int(n), pos });
                }
                let n = j - i;
                advance(n, &mut i);
            }
            '_' if !chars.get(i + 1).is_some_and(|&d| ident_char(d)) => {
                out.push(Token { tok: Tok::Underscore, pos });
                advance(1, &mut i);
            }
            c if ident_start(c) => {
                let mut j = i;
                while j < chars.len() && (ident_char(chars[j]) || is_hyphen(&chars, j)) {
                    j += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[i..j].iter().collect()), pos });
                let n = j - i;
                advance(n, &mut i);
            }
            _ => {
                let tok = match c {
                    '=' => Tok::Eq,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    other => return Err(ParseError::new(pos, vec!["a token".into()], &format!("`{}`", other))),
                };
                out.push(Token { tok, pos });
                advance(1, &mut i);
            }
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

/// A hyphen inside a name such as `c-initial`, but not the start of `->`.
fn is_hyphen(chars: &[char], j: usize) -> bool {
    chars[j] == '-' && chars.get(j + 1).is_some_and(|&d| ident_char(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn names_arrows_and_comments() {
        assert_eq!(
            toks("nat mu : F->G # note\ncheck c-initial T1 S1"),
            vec![
                Tok::Ident("nat".into()),
                Tok::Ident("mu".into()),
                Tok::Colon,
                Tok::Ident("F".into()),
                Tok::Arrow,
                Tok::Ident("G".into()),
                Tok::Ident("check".into()),
                Tok::Ident("c-initial".into()),
                Tok::Ident("T1".into()),
                Tok::Ident("S1".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn terms_and_positions() {
        let t = lex("(5 #b\n  #b) \"(e #b)\" x'").unwrap();
        assert_eq!(t[1].tok, Tok::Int(5));
        assert_eq!(t[3].pos, Pos { line: 2, col: 3 });
        assert_eq!(t[5].tok, Tok::Str("(e #b)".into()));
        assert_eq!(t[6].tok, Tok::Ident("x'".into()));
    }

    #[test]
    fn stray_characters_are_reported() {
        let e = lex("monoid B = table {0,1} max 0;").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 29 });
    }
}
