//! Coordinate-wise map expressions.
//!
//! ```text
//! map    := "vars" name { "," name } ":" "(" expr { "," expr } ")"
//! expr   := term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := ["-"] ( integer | name | "(" expr ")" )
//! ```
//!
//! Each output coordinate is an integer polynomial in the input coordinates,
//! evaluated modulo the modulus of that output coordinate.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Group(Box<Expr>),
}

impl Expr {
    /// Value modulo `modulus`, with `inputs[i]` bound to variable `i`.
    pub fn eval(&self, inputs: &[u64], modulus: u64) -> u64 {
        let m = modulus as u128;
        let v = match self {
            Expr::Int(n) => *n as u128 % m,
            Expr::Var(i) => inputs[*i] as u128 % m,
            Expr::Neg(x) => (m - x.eval(inputs, modulus) as u128) % m,
            Expr::Add(a, b) => {
                (a.eval(inputs, modulus) as u128 + b.eval(inputs, modulus) as u128) % m
            }
            Expr::Sub(a, b) => {
                (a.eval(inputs, modulus) as u128 + m - b.eval(inputs, modulus) as u128) % m
            }
            Expr::Mul(a, b) => {
                a.eval(inputs, modulus) as u128 * b.eval(inputs, modulus) as u128 % m
            }
            Expr::Group(x) => x.eval(inputs, modulus) as u128,
        };
        v as u64
    }

    fn is_sum(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..))
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Int(_) | Expr::Var(_) | Expr::Group(_))
    }

    fn write(&self, vars: &[String], out: &mut String) {
        let wrapped = |e: &Expr, needs: bool, out: &mut String| {
            if needs {
                out.push('(');
                e.write(vars, out);
                out.push(')');
            } else {
                e.write(vars, out);
            }
        };
        match self {
            Expr::Int(n) => out.push_str(&n.to_string()),
            Expr::Var(i) => out.push_str(&vars[*i]),
            Expr::Neg(x) => {
                out.push('-');
                wrapped(x, !x.is_atom(), out);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(vars, out);
                out.push_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                });
                wrapped(b, b.is_sum(), out);
            }
            Expr::Mul(a, b) => {
                wrapped(a, a.is_sum(), out);
                out.push('*');
                wrapped(b, !(b.is_atom() || matches!(**b, Expr::Neg(_))), out);
            }
            Expr::Group(x) => wrapped(x, true, out),
        }
    }
}

/// A parsed map: one variable per input coordinate, one expression per output coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapExpr {
    pub vars: Vec<String>,
    pub coords: Vec<Expr>,
}

impl MapExpr {
    pub fn parse(text: &str) -> Result<MapExpr> {
        parse_map_expr(text)
    }

    /// Image of `x`, which must already be a canonical element of `ring`.
    pub fn apply(&self, ring: &Ring, x: &Element) -> Result<Element> {
        self.check_arity(ring)?;
        Ok(Element::new(
            self.coords
                .iter()
                .zip(ring.moduli())
                .map(|(e, &d)| e.eval(x.coords(), d))
                .collect(),
        ))
    }

    pub fn check_arity(&self, ring: &Ring) -> Result<()> {
        for found in [self.vars.len(), self.coords.len()] {
            if found != ring.arity() {
                return Err(Error::Arity {
                    expected: ring.arity(),
                    found,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("vars {} : (", self.vars.join(","));
        for (i, e) in self.coords.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            e.write(&self.vars, &mut out);
        }
        out.push(')');
        f.write_str(&out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(u64),
    Comma,
    Colon,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    while let Some(&c) = chars.peek() {
        let start = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(bump(&mut chars));
                }
                let n = digits
                    .parse::<u64>()
                    .map_err(|_| syntax(start, format!("integer literal {digits} is too large")))?;
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    name.push(bump(&mut chars));
                }
                out.push((Tok::Name(name), start));
                continue;
            }
            other => return Err(syntax(start, format!("unknown character `{other}`"))),
        };
        bump(&mut chars);
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (tok, pos) = self.next();
        if tok != want {
            return Err(syntax(pos, format!("expected {want}, found {tok}")));
        }
        Ok(())
    }

    fn map(&mut self) -> Result<MapExpr> {
        match self.next() {
            (Tok::Name(kw), _) if kw == "vars" => {}
            (tok, pos) => return Err(syntax(pos, format!("expected `vars`, found {tok}"))),
        }
        loop {
            match self.next() {
                (Tok::Name(name), pos) => {
                    if self.vars.contains(&name) {
                        return Err(syntax(pos, format!("variable `{name}` declared twice")));
                    }
                    self.vars.push(name);
                }
                (tok, pos) => {
                    return Err(syntax(
                        pos,
                        format!("expected a variable name, found {tok}"),
                    ))
                }
            }
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        self.expect(Tok::Colon)?;
        self.expect(Tok::LParen)?;
        let mut coords = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.next();
            coords.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::End)?;
        Ok(MapExpr {
            vars: std::mem::take(&mut self.vars),
            coords,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let negate = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let inner = match self.next() {
            (Tok::Int(n), _) => Expr::Int(n),
            (Tok::Name(name), pos) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Expr::Var(i),
                None => return Err(syntax(pos, format!("undeclared variable `{name}`"))),
            },
            (Tok::LParen, _) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Expr::Group(Box::new(e))
            }
            (tok, pos) => {
                return Err(syntax(
                    pos,
                    format!("expected an integer, a variable or `(`, found {tok}"),
                ))
            }
        };
        Ok(if negate {
            Expr::Neg(Box::new(inner))
        } else {
            inner
        })
    }
}

pub fn parse_map_expr(text: &str) -> Result<MapExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        vars: Vec::new(),
    };
    p.map()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(i: usize) -> Box<Expr> {
        Box::new(Expr::Var(i))
    }

    #[test]
    fn parses_the_first_example_map() {
        let e = parse_map_expr("vars m,n,p : (m, n*p, -p)").unwrap();
        assert_eq!(e.vars, vec!["m", "n", "p"]);
        assert_eq!(
            e.coords,
            vec![Expr::Var(0), Expr::Mul(var(1), var(2)), Expr::Neg(var(2)),]
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_map_expr("vars a,b : (a - b - 1, -a*b + 2*(a + b))").unwrap();
        assert_eq!(
            e.coords[0],
            Expr::Sub(Box::new(Expr::Sub(var(0), var(1))), Box::new(Expr::Int(1)))
        );
        assert_eq!(
            e.coords[1],
            Expr::Add(
                Box::new(Expr::Mul(Box::new(Expr::Neg(var(0))), var(1))),
                Box::new(Expr::Mul(
                    Box::new(Expr::Int(2)),
                    Box::new(Expr::Group(Box::new(Expr::Add(var(0), var(1)))))
                ))
            )
        );
    }

    #[test]
    fn evaluation_reduces_per_coordinate() {
        let e = parse_map_expr("vars m,n,p : (m, n*p, -p)").unwrap();
        let vals: Vec<u64> = e.coords.iter().map(|c| c.eval(&[1, 2, 3], 7)).collect();
        assert_eq!(vals, vec![1, 6, 4]);
        let big = parse_map_expr("vars a : (a*a*a*a*a*a*a*a - 3)").unwrap();
        assert_eq!(big.coords[0].eval(&[4_000_000_000], 1_000_003), {
            let m = 1_000_003u128;
            let x = 4_000_000_000u128 % m;
            let mut acc = 1u128;
            for _ in 0..8 {
                acc = acc * x % m;
            }
            ((acc + m - 3) % m) as u64
        });
    }

    #[test]
    fn errors_carry_positions() {
        match parse_map_expr("vars a,b : (a, c)") {
            Err(Error::Syntax {
                line: 1,
                column: 16,
                message,
            }) => {
                assert!(message.contains("undeclared"))
            }
            other => panic!("{other:?}"),
        }
        match parse_map_expr("vars a :\n (a $ 1)") {
            Err(Error::Syntax {
                line: 2,
                column: 5,
                message,
            }) => {
                assert!(message.contains("unknown character"))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_map_expr("vars a : (a"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_map_expr("vars a, a : (a, a)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_map_expr("vars a : (--a)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_map_expr("(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_map_expr("vars a : (99999999999999999999999)"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn catalog_texts_round_trip() {
        for text in [
            "vars m,n,p : (m, n*p, -p)",
            "vars a,b : (0, b)",
            "vars a,b,c : (0, -b, c)",
            "vars a,b,c : (0, -b, -c)",
            "vars x,y : (-(x - y)*-(3), x - (y - 2)*x)",
        ] {
            let e = parse_map_expr(text).unwrap();
            assert_eq!(parse_map_expr(&e.to_string()).unwrap(), e, "{text}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u64..20).prop_map(Expr::Int),
            (0usize..3).prop_map(Expr::Var)
        ];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                inner.clone().prop_map(|e| Expr::Group(Box::new(e))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_is_faithful(
            e in arb_expr(),
            inputs in proptest::collection::vec(0u64..50, 3),
            modulus in 2u64..30,
        ) {
            let m = MapExpr { vars: vec!["x".into(), "y".into(), "z".into()], coords: vec![e.clone()] };
            let printed = m.to_string();
            let reparsed = parse_map_expr(&printed).unwrap();
            // a parsed tree is a fixed point of print-then-parse
            prop_assert_eq!(&parse_map_expr(&reparsed.to_string()).unwrap(), &reparsed);
            prop_assert_eq!(reparsed.to_string(), printed);
            prop_assert_eq!(reparsed.coords[0].eval(&inputs, modulus), e.eval(&inputs, modulus));
        }
    }
}
