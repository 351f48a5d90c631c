//! Multivariate polynomial systems over a truncated DVR.

pub mod enlarge;
pub mod jacobian;
pub mod linear;
pub mod parse;
pub mod transfer;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{ArtinError, Result};
use crate::ring::{Elem, RingCtx, Val};

pub use enlarge::enlarge_system;
pub use jacobian::{elkik_generators, elkik_value, jacobian_minor_val, ColonData};
pub use linear::{dehomogenize, homogenize_linear, linear_parts};
pub use parse::{parse_poly, parse_system, parse_system_in, parse_system_with, ParseOptions};
pub use transfer::{transfer_system, AlgebraPresentation, SPolySystem};

/// Largest number of variables in a system.
pub const MAX_VARS: usize = 16;

/// Variable blocks, in the order they appear in a variable list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    X,
    Y,
    Z,
    T,
}

impl Block {
    fn letter(self) -> char {
        match self {
            Block::X => 'X',
            Block::Y => 'Y',
            Block::Z => 'Z',
            Block::T => 'T',
        }
    }
}

/// A variable name such as `X3` or `X2_1` (`sub == 0` means no subscript).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub block: Block,
    pub index: u32,
    pub sub: u32,
}

impl Var {
    pub fn new(block: Block, index: u32) -> Var {
        Var {
            block,
            index,
            sub: 0,
        }
    }

    pub fn with_sub(block: Block, index: u32, sub: u32) -> Var {
        Var { block, index, sub }
    }

    pub fn x(index: u32) -> Var {
        Var::new(Block::X, index)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.block.letter(), self.index)?;
        if self.sub > 0 {
            write!(f, "_{}", self.sub)?;
        }
        Ok(())
    }
}

impl FromStr for Var {
    type Err = ArtinError;

    fn from_str(s: &str) -> Result<Var> {
        let unknown = || ArtinError::UnknownVariable(s.to_string());
        let mut chars = s.chars();
        let block = match chars.next() {
            Some('X') => Block::X,
            Some('Y') => Block::Y,
            Some('Z') => Block::Z,
            Some('T') => Block::T,
            _ => return Err(unknown()),
        };
        let rest = chars.as_str();
        let (idx, sub) = match rest.split_once('_') {
            Some((i, s)) => (i, Some(s)),
            None => (rest, None),
        };
        let digits = |d: &str| -> Result<u32> {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(unknown());
            }
            match d.parse::<u32>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(unknown()),
            }
        };
        let index = digits(idx)?;
        let sub = match sub {
            Some(s) => digits(s)?,
            None => 0,
        };
        Ok(Var { block, index, sub })
    }
}

/// An exponent vector `α`, with its degree `|α|` and support cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec {
    exps: Vec<u32>,
    degree: u32,
    support: u64,
}

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> ExpVec {
        assert!(
            exps.len() <= 64,
            "exponent vectors are limited to 64 variables"
        );
        let degree = exps.iter().sum();
        let support = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |m, (j, _)| m | (1 << j));
        ExpVec {
            exps,
            degree,
            support,
        }
    }

    pub fn zero(nvars: usize) -> ExpVec {
        ExpVec::new(vec![0; nvars])
    }

    pub fn unit(nvars: usize, j: usize) -> ExpVec {
        let mut e = vec![0; nvars];
        e[j] = 1;
        ExpVec::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// `|α|`
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `supp(α)` as a bit mask.
    pub fn support_mask(&self) -> u64 {
        self.support
    }

    /// `supp(α)` as sorted indices.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len())
            .filter(|j| self.support >> j & 1 == 1)
            .collect()
    }

    /// `supp(self) ⊇ supp(other)`
    pub fn support_contains(&self, other: &ExpVec) -> bool {
        other.support & !self.support == 0
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Order used when printing: higher degree first, then reverse
    /// lexicographic on the exponents.
    fn print_order(&self, other: &ExpVec) -> Ordering {
        other
            .degree
            .cmp(&self.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<ExpVec, Elem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Elem) -> Poly {
        Poly::monomial(nvars, c, ExpVec::zero(nvars))
    }

    pub fn var(ring: &RingCtx, nvars: usize, j: usize) -> Poly {
        Poly::monomial(nvars, ring.one(), ExpVec::unit(nvars, j))
    }

    pub fn monomial(nvars: usize, c: Elem, e: ExpVec) -> Poly {
        assert_eq!(e.len(), nvars);
        let mut p = Poly::zero(nvars);
        if c != Elem::ZERO {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(
        ring: &RingCtx,
        nvars: usize,
        terms: impl IntoIterator<Item = (ExpVec, Elem)>,
    ) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(ring, e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExpVec) -> Elem {
        self.terms.get(e).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExpVec::degree).max()
    }

    pub fn add_term(&mut self, ring: &RingCtx, e: ExpVec, c: Elem) {
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if c != Elem::ZERO {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if s == Elem::ZERO {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, ring: &RingCtx, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(ring, e.clone(), *c);
        }
        out
    }

    pub fn neg(&self, ring: &RingCtx) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), ring.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &RingCtx, other: &Poly) -> Poly {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &RingCtx, c: Elem) -> Poly {
        Poly::from_terms(
            ring,
            self.nvars,
            self.terms.iter().map(|(e, x)| (e.clone(), ring.mul(c, *x))),
        )
    }

    pub fn mul(&self, ring: &RingCtx, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ring, ea.add(eb), ring.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn pow(&self, ring: &RingCtx, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, ring.one());
        for _ in 0..k {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Formal partial derivative `∂/∂X_j`, computed termwise. In
    /// characteristic `p` the integer factor is reduced, so `∂X^p = 0`.
    pub fn derivative(&self, ring: &RingCtx, j: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.exps[j];
            if k == 0 {
                continue;
            }
            let mut exps = e.exps.clone();
            exps[j] -= 1;
            out.add_term(
                ring,
                ExpVec::new(exps),
                ring.mul(ring.from_int(k as i128), *c),
            );
        }
        out
    }

    pub fn eval(&self, ring: &RingCtx, point: &[Elem]) -> Elem {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(ring.zero(), |acc, (e, c)| {
            let m = e
                .exps
                .iter()
                .zip(point)
                .filter(|(k, _)| **k > 0)
                .fold(*c, |m, (k, x)| ring.mul(m, ring.pow(*x, *k as u64)));
            ring.add(acc, m)
        })
    }

    /// Re-indexes variables: variable `j` becomes variable `map[j]` of a
    /// polynomial in `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps = vec![0; nvars];
                for (j, k) in e.exps.iter().enumerate() {
                    exps[map[j]] += k;
                }
                (ExpVec::new(exps), *c)
            })
            .collect();
        Poly { nvars, terms }
    }

    pub fn format(&self, ring: &RingCtx, vars: &[Var]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.print_order(b.0));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(j, k)| {
                        if *k == 1 {
                            vars[j].to_string()
                        } else {
                            format!("{}^{k}", vars[j])
                        }
                    })
                    .collect();
                let coef = ring.format(*c);
                let coef = if coef.contains('+') {
                    format!("({coef})")
                } else {
                    coef
                };
                match (mono.is_empty(), *c == ring.one()) {
                    (true, _) => coef,
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{coef}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The ideal generated by a set of elements of a DVR is `(t^e)` with `e` the
/// least generator valuation; this newtype carries that `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealVal(pub Val);

impl IdealVal {
    pub fn of(ring: &RingCtx, gens: impl IntoIterator<Item = Elem>) -> IdealVal {
        IdealVal(
            gens.into_iter()
                .map(|x| ring.val(x))
                .min()
                .unwrap_or(ring.top()),
        )
    }

    pub fn val(self) -> Val {
        self.0
    }

    pub fn value(self) -> u32 {
        self.0.value()
    }

    pub fn is_top(self) -> bool {
        self.0.is_top()
    }

    /// `self ⊇ other` as ideals.
    pub fn contains(self, other: IdealVal) -> bool {
        self.0 <= other.0
    }

    /// Valuation of the product ideal.
    pub fn product(self, other: IdealVal) -> IdealVal {
        IdealVal(self.0.sat_add(other.0))
    }
}

impl fmt::Display for IdealVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `f = (f_1, .., f_r)` in the named variables, over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    ring: RingCtx,
    vars: Vec<Var>,
    polys: Vec<Poly>,
}

impl PolySystem {
    pub fn new(ring: RingCtx, vars: Vec<Var>, polys: Vec<Poly>) -> Result<PolySystem> {
        if vars.len() > MAX_VARS {
            return Err(ArtinError::InvalidInput(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                vars.len()
            )));
        }
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(ArtinError::VariableCollision("duplicate variable".into()));
        }
        for f in &polys {
            if f.nvars != vars.len() {
                return Err(ArtinError::ArityMismatch {
                    expected: vars.len(),
                    got: f.nvars,
                });
            }
            if let Some(c) = f.terms.values().find(|c| ring.check(**c).is_err()) {
                return Err(ArtinError::ContextMismatch(format!(
                    "coefficient code {}",
                    c.code()
                )));
            }
        }
        Ok(PolySystem { ring, vars, polys })
    }

    /// Variables `X1..Xn`.
    pub fn in_x(ring: RingCtx, nvars: usize, polys: Vec<Poly>) -> Result<PolySystem> {
        PolySystem::new(ring, (1..=nvars as u32).map(Var::x).collect(), polys)
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn var_index(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    fn check_point(&self, a: &[Elem]) -> Result<()> {
        if a.len() != self.nvars() {
            return Err(ArtinError::ArityMismatch {
                expected: self.nvars(),
                got: a.len(),
            });
        }
        for x in a {
            self.ring.check(*x)?;
        }
        Ok(())
    }

    /// `f(a)` and the valuation of the ideal it generates.
    pub fn evaluate(&self, a: &[Elem]) -> Result<(Vec<Elem>, IdealVal)> {
        self.check_point(a)?;
        let values: Vec<Elem> = self.polys.iter().map(|f| f.eval(&self.ring, a)).collect();
        let iv = IdealVal::of(&self.ring, values.iter().copied());
        Ok((values, iv))
    }

    pub fn residual_val(&self, a: &[Elem]) -> Result<IdealVal> {
        Ok(self.evaluate(a)?.1)
    }

    /// Rows are equations, columns variables.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.polys
            .iter()
            .map(|f| {
                (0..self.nvars())
                    .map(|j| f.derivative(&self.ring, j))
                    .collect()
            })
            .collect()
    }

    pub fn jacobian_at(&self, a: &[Elem]) -> Result<crate::matrix::MatrixR> {
        self.check_point(a)?;
        let data = self
            .polys
            .iter()
            .flat_map(|f| (0..self.nvars()).map(move |j| f.derivative(&self.ring, j)))
            .map(|d| d.eval(&self.ring, a))
            .collect();
        crate::matrix::MatrixR::new(self.len(), self.nvars(), data)
    }

    /// Subsystem made of the equations at the given indices.
    pub fn subsystem(&self, idx: &[usize]) -> PolySystem {
        PolySystem {
            ring: self.ring,
            vars: self.vars.clone(),
            polys: idx.iter().map(|&i| self.polys[i].clone()).collect(),
        }
    }

    /// One polynomial per line, terms in canonical order.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for f in &self.polys {
            out.push_str(&f.format(&self.ring, &self.vars));
            out.push('\n');
        }
        out
    }
}
