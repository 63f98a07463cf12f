//! Surface syntax:
//!
//! ```text
//! phi ::= exists x. phi | forall x. phi | exists2 X. phi | forall2 X. phi
//!       | phi -> phi | phi | phi | phi & phi | !phi | (phi)
//!       | true | false | a(t) | first(t) | last(t)
//!       | t <= t | t < t | t = t | t != t | t >= t | t > t | t in X
//!       | t = first | t = last
//! t   ::= x | x + k
//! ```

use super::ast::{Formula, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    Sym(&'static str),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

const SYMS: [&str; 14] = [
    "->", "<=", ">=", "!=", "(", ")", ".", "&", "|", "!", "<", ">", "=", "+",
];

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '#' || c == '\''
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src,
            toks: Vec::new(),
        };
        let bytes = src.as_bytes();
        let mut i = 0;
        'outer: while i < bytes.len() {
            let c = src[i..].chars().next().unwrap();
            if c.is_whitespace() {
                i += c.len_utf8();
                continue;
            }
            if ident_char(c) {
                let start = i;
                while i < bytes.len() && ident_char(bytes[i] as char) {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word.parse::<usize>() {
                    Ok(n) => Tok::Num(n),
                    Err(_) => Tok::Ident(word.to_string()),
                };
                lx.toks.push((tok, start));
                continue;
            }
            for s in SYMS {
                if src[i..].starts_with(s) {
                    lx.toks.push((Tok::Sym(s), i));
                    i += s.len();
                    continue 'outer;
                }
            }
            return Err(lx.error(i, format!("unexpected character `{c}`")));
        }
        Ok(lx.toks)
    }

    fn error(&self, offset: usize, msg: String) -> Error {
        position_error(self.src, offset, msg)
    }
}

fn position_error(src: &str, offset: usize, msg: String) -> Error {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    Error::parse(line, column, msg)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses a formula in the surface syntax described in the module docs.
pub fn parse_formula(src: &str) -> Result<Formula> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn error(&self, msg: &str) -> Error {
        let offset = self.toks.get(self.pos).map_or(self.src.len(), |&(_, o)| o);
        let found = match self.peek() {
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Num(n)) => format!("`{n}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
            None => "end of input".to_string(),
        };
        position_error(self.src, offset, format!("{msg}, found {found}"))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if self.peek() == Some(&Tok::Sym(leak(sym))) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{sym}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if let Some(Tok::Ident(kw)) = self.peek() {
            let kw = kw.clone();
            if matches!(kw.as_str(), "exists" | "forall" | "exists2" | "forall2") {
                self.pos += 1;
                let mut vars = vec![self.ident()?];
                while let Some(Tok::Ident(_)) = self.peek() {
                    vars.push(self.ident()?);
                }
                self.expect(".")?;
                let mut body = self.formula()?;
                for v in vars.into_iter().rev() {
                    body = match kw.as_str() {
                        "exists" => Formula::exists(&v, body),
                        "forall" => Formula::forall(&v, body),
                        "exists2" => Formula::exists2(&v, body),
                        _ => Formula::forall2(&v, body),
                    };
                }
                return Ok(body);
            }
        }
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat("|") {
            let g = self.conjunction_or_quantifier()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat("&") {
            let g = self.unary_or_quantifier()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(k)) if matches!(k.as_str(), "exists" | "forall" | "exists2" | "forall2"))
    }

    // a quantifier after a binary operator extends to the right
    fn conjunction_or_quantifier(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            self.formula()
        } else {
            self.conjunction()
        }
    }

    fn unary_or_quantifier(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            self.formula()
        } else {
            self.unary()
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("!") {
            let f = self.unary_or_quantifier()?;
            return Ok(Formula::not(f));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let name = self.ident()?;
        match name.as_str() {
            "true" => return Ok(Formula::True),
            "false" => return Ok(Formula::False),
            _ => {}
        }
        if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(match name.as_str() {
                "first" => Formula::First(t),
                "last" => Formula::Last(t),
                _ => Formula::Letter(name, t),
            });
        }
        self.pos -= 1;
        let lhs = self.term()?;
        if let Some(Tok::Ident(k)) = self.peek() {
            if k == "in" {
                self.pos += 1;
                let set = self.ident()?;
                return Ok(Formula::In(lhs, set));
            }
        }
        let op = match self.peek() {
            Some(Tok::Sym(s @ ("<=" | "<" | "=" | "!=" | ">=" | ">"))) => *s,
            _ => return Err(self.error("expected a comparison or `in`")),
        };
        self.pos += 1;
        if op == "=" {
            if let (Some(Tok::Ident(k)), next) = (self.peek(), self.peek_at(1)) {
                let bare = !matches!(next, Some(Tok::Sym("(")) | Some(Tok::Sym("+")));
                if bare && (k == "first" || k == "last") {
                    let k = k.clone();
                    self.pos += 1;
                    return Ok(if k == "first" {
                        Formula::First(lhs)
                    } else {
                        Formula::Last(lhs)
                    });
                }
            }
        }
        let rhs = self.term()?;
        Ok(match op {
            "<=" => Formula::le(lhs, rhs),
            "<" => Formula::lt(lhs, rhs),
            "=" => Formula::eq(lhs, rhs),
            "!=" => Formula::not(Formula::eq(lhs, rhs)),
            ">=" => Formula::le(rhs, lhs),
            _ => Formula::lt(rhs, lhs),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let var = self.ident()?;
        let mut offset = 0;
        while self.eat("+") {
            match self.peek() {
                Some(&Tok::Num(n)) => {
                    offset += n;
                    self.pos += 1;
                }
                _ => return Err(self.error("expected a number after `+`")),
            }
        }
        Ok(Term { var, offset })
    }
}

fn leak(sym: &str) -> &'static str {
    SYMS.iter()
        .find(|&&s| s == sym)
        .copied()
        .expect("known symbol")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shift_formula() {
        let f = parse_formula("x = y + 1 | y = x + 1").unwrap();
        assert_eq!(
            f,
            Formula::or(
                Formula::eq(Term::var("x"), Term::plus("y", 1)),
                Formula::eq(Term::var("y"), Term::plus("x", 1))
            )
        );
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse_formula("exists x. x in X & a(x)").unwrap();
        assert_eq!(
            f,
            Formula::exists(
                "x",
                Formula::and(
                    Formula::member(Term::var("x"), "X"),
                    Formula::letter("a", Term::var("x"))
                )
            )
        );
    }

    #[test]
    fn first_and_last_sugar() {
        assert_eq!(
            parse_formula("x = first").unwrap(),
            Formula::First(Term::var("x"))
        );
        assert_eq!(
            parse_formula("last(y)").unwrap(),
            Formula::Last(Term::var("y"))
        );
    }

    #[test]
    fn precedence() {
        let f = parse_formula("!a(x) & b(y) | c(z) -> true").unwrap();
        let expected = Formula::implies(
            Formula::or(
                Formula::and(
                    Formula::not(Formula::letter("a", Term::var("x"))),
                    Formula::letter("b", Term::var("y")),
                ),
                Formula::letter("c", Term::var("z")),
            ),
            Formula::True,
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn reports_column() {
        match parse_formula("x <= ") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("x ? y").is_err());
    }
}
