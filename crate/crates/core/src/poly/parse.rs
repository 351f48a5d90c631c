//! Text form of polynomial systems: one polynomial per line, `#` comments,
//! integers, `t`, variables `X1`, `Y2`, `Z1`, `T1_2`, and `+ - * ^ ( )`.
//! Division is accepted only by integer literals that are units in the ring.

use std::collections::BTreeSet;

use super::{Block, Poly, PolySystem, Var};
use crate::error::{ArtinError, Result};
use crate::ring::{Elem, RingCtx};

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    /// Polynomials of higher total degree are rejected.
    pub max_degree: u32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_degree: 8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u128),
    T,
    Var(Var),
    Op(char),
}

#[derive(Clone, Debug)]
enum Expr {
    Int(u128),
    T,
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, u128, usize),
    Pow(Box<Expr>, u32),
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ArtinError {
    ArtinError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, line: usize) -> Result<Lexed> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<u128>()
                .map_err(|_| syntax(line, col, "integer literal too large"))?;
            toks.push((Tok::Int(n), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if s == "t" {
                toks.push((Tok::T, col));
            } else {
                let v = s
                    .parse::<Var>()
                    .map_err(|_| ArtinError::UnknownVariable(s.clone()))?;
                toks.push((Tok::Var(v), col));
            }
        } else if "+-*^()/".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexed {
        toks,
        end: chars.len() + 1,
    })
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Int(n)) => {
                        let n = *n;
                        self.pos += 1;
                        lhs = Expr::Div(Box::new(lhs), n, col);
                    }
                    _ => {
                        return Err(syntax(
                            self.line,
                            self.col(),
                            "division only by an integer literal",
                        ))
                    }
                }
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = u32::try_from(*n)
                        .map_err(|_| syntax(self.line, self.col(), "exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => Err(syntax(
                    self.line,
                    self.col(),
                    "expected an integer exponent",
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::T) => {
                self.pos += 1;
                Ok(Expr::T)
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.line, self.col(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(syntax(self.line, col, format!("unexpected `{c}`"))),
            None => Err(syntax(self.line, col, "unexpected end of input")),
        }
    }
}

fn parse_expr(src: &str, line: usize) -> Result<Expr> {
    let lexed = lex(src, line)?;
    let mut p = Parser {
        toks: &lexed.toks,
        pos: 0,
        end: lexed.end,
        line,
    };
    let e = p.expr()?;
    if p.pos < lexed.toks.len() {
        return Err(syntax(line, p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

fn collect_vars(e: &Expr, out: &mut BTreeSet<Var>) {
    match e {
        Expr::Var(v) => {
            out.insert(*v);
        }
        Expr::Neg(a) | Expr::Pow(a, _) | Expr::Div(a, _, _) => collect_vars(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Int(_) | Expr::T => {}
    }
}

fn int_elem(ring: &RingCtx, n: u128) -> Elem {
    // reduce before converting so huge literals stay in range
    ring.from_int((n % ring.size() as u128) as i128)
}

fn build(ring: &RingCtx, e: &Expr, vars: &[Var], line: usize) -> Result<Poly> {
    let n = vars.len();
    Ok(match e {
        Expr::Int(k) => Poly::constant(n, int_elem(ring, *k)),
        Expr::T => Poly::constant(n, ring.uniformizer()),
        Expr::Var(v) => {
            let j = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| ArtinError::UnknownVariable(v.to_string()))?;
            Poly::var(ring, n, j)
        }
        Expr::Neg(a) => build(ring, a, vars, line)?.neg(ring),
        Expr::Add(a, b) => build(ring, a, vars, line)?.add(ring, &build(ring, b, vars, line)?),
        Expr::Sub(a, b) => build(ring, a, vars, line)?.sub(ring, &build(ring, b, vars, line)?),
        Expr::Mul(a, b) => build(ring, a, vars, line)?.mul(ring, &build(ring, b, vars, line)?),
        Expr::Pow(a, k) => {
            let base = build(ring, a, vars, line)?;
            if *k > 64 && base.degree().unwrap_or(0) > 0 {
                return Err(ArtinError::InvalidInput(format!(
                    "line {line}: exponent {k} is too large"
                )));
            }
            if base.degree().unwrap_or(0) == 0 {
                Poly::constant(n, ring.pow(base.coeff(&super::ExpVec::zero(n)), *k as u64))
            } else {
                base.pow(ring, *k)
            }
        }
        Expr::Div(a, d, col) => {
            let d_elem = int_elem(ring, *d);
            let inv = ring.invert_unit(d_elem).map_err(|_| {
                ArtinError::CoefficientNotInRing(format!(
                    "line {line}, column {col}: {d} is not a unit in {ring}"
                ))
            })?;
            build(ring, a, vars, line)?.scale(ring, inv)
        }
    })
}

/// Strips `#` comments and blank lines; yields `(line_number, text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_system(ring: &RingCtx, text: &str) -> Result<PolySystem> {
    parse_system_with(ring, text, ParseOptions::default())
}

/// Variables are the ones that occur, ordered by block (`X`, `Y`, `Z`,
/// `T`) and index; within a block of plain names the gaps are filled, so
/// `X1*X3` is a polynomial in `X1, X2, X3`.
pub fn parse_system_with(ring: &RingCtx, text: &str, opts: ParseOptions) -> Result<PolySystem> {
    let mut exprs = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, src) in content_lines(text) {
        let e = parse_expr(src, line)?;
        collect_vars(&e, &mut seen);
        exprs.push((line, e));
    }
    let mut vars = seen.clone();
    for block in [Block::X, Block::Y, Block::Z, Block::T] {
        let max = seen
            .iter()
            .filter(|v| v.block == block && v.sub == 0)
            .map(|v| v.index)
            .max();
        if let Some(max) = max {
            vars.extend((1..=max).map(|i| Var::new(block, i)));
        }
    }
    let vars: Vec<Var> = vars.into_iter().collect();
    build_system(ring, exprs, vars, opts)
}

/// Parses a system over a fixed list of variables; other names are errors.
pub fn parse_system_in(
    ring: &RingCtx,
    text: &str,
    vars: &[Var],
    opts: ParseOptions,
) -> Result<PolySystem> {
    let mut exprs = Vec::new();
    for (line, src) in content_lines(text) {
        exprs.push((line, parse_expr(src, line)?));
    }
    build_system(ring, exprs, vars.to_vec(), opts)
}

fn build_system(
    ring: &RingCtx,
    exprs: Vec<(usize, Expr)>,
    vars: Vec<Var>,
    opts: ParseOptions,
) -> Result<PolySystem> {
    let mut polys = Vec::with_capacity(exprs.len());
    for (line, e) in exprs {
        let f = build(ring, &e, &vars, line)?;
        if let Some(d) = f.degree() {
            if d > opts.max_degree {
                return Err(ArtinError::InvalidInput(format!(
                    "line {line}: degree {d} exceeds the cap {}",
                    opts.max_degree
                )));
            }
        }
        polys.push(f);
    }
    PolySystem::new(*ring, vars, polys)
}

/// Parses a single polynomial over the given variables.
pub fn parse_poly(ring: &RingCtx, src: &str, vars: &[Var]) -> Result<Poly> {
    let e = parse_expr(src, 1)?;
    build(ring, &e, vars, 1)
}

/// Parses an expression with no variables.
pub fn parse_constant(ring: &RingCtx, src: &str) -> Result<Elem> {
    let e = parse_expr(src.trim(), 1)?;
    let f = build(ring, &e, &[], 1)?;
    Ok(f.coeff(&super::ExpVec::zero(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orders_variables() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let sys = parse_system(&r, "# a comment\nX1*X3 + t\n\nZ1 - X2^2 # trailing\n").unwrap();
        let names: Vec<String> = sys.vars().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["X1", "X2", "X3", "Z1"]);
        assert_eq!(sys.len(), 2);
        assert_eq!(sys.format(), "X1*X3 + t\nX2^2 + Z1\n");
    }

    #[test]
    fn print_parse_round_trip() {
        let r = RingCtx::tseries(3, 6).unwrap();
        let src = "(1+t)*X1^2*X2 - 2*X2 + t^3/2 + (X1 - X2)^3";
        let sys = parse_system(&r, src).unwrap();
        let printed = sys.format();
        let again = parse_system(&r, &printed).unwrap();
        assert_eq!(again, sys);
        assert_eq!(again.format(), printed);
    }

    #[test]
    fn padic_constants() {
        let z = RingCtx::padic(5, 3).unwrap();
        assert_eq!(parse_constant(&z, "-3").unwrap(), z.from_int(-3));
        assert_eq!(parse_constant(&z, "1/2").unwrap(), z.from_int(63));
        assert_eq!(parse_constant(&z, "t^2 + 1").unwrap(), z.from_int(26));
        assert_eq!(parse_constant(&z, "(2+3)^3").unwrap(), z.zero());
    }

    #[test]
    fn errors() {
        let r = RingCtx::tseries(2, 8).unwrap();
        match parse_system(&r, "X1 +\n") {
            Err(ArtinError::Syntax {
                line: 1, column: 5, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_system(&r, "X1\nX2 $ 1") {
            Err(ArtinError::Syntax {
                line: 2, column: 4, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_system(&r, "W1 + 1"),
            Err(ArtinError::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_system(&r, "X1/2"),
            Err(ArtinError::CoefficientNotInRing(_))
        ));
        assert!(matches!(
            parse_system(&r, "X1/t"),
            Err(ArtinError::Syntax { .. })
        ));
        assert!(matches!(
            parse_system(&r, "X1^9"),
            Err(ArtinError::InvalidInput(_))
        ));
        assert!(parse_system_with(&r, "X1^9", ParseOptions { max_degree: 9 }).is_ok());
        assert!(matches!(
            parse_system(&r, "(X1"),
            Err(ArtinError::Syntax { .. })
        ));
    }

    #[test]
    fn fixed_variable_list() {
        let r = RingCtx::tseries(2, 4).unwrap();
        let vars = [Var::x(1), Var::x(2)];
        let sys = parse_system_in(&r, "X2", &vars, ParseOptions::default()).unwrap();
        assert_eq!(sys.nvars(), 2);
        assert!(parse_system_in(&r, "X3", &vars, ParseOptions::default()).is_err());
    }
}
