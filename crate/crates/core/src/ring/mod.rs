//! Truncated discrete valuation rings.
//!
//! A [`RingCtx`] is either `Z/p^M` or `F_p[t]/(t^M)`. Both carriers have
//! `p^M` elements, and both are encoded the same way: an element is the
//! integer whose base-`p` digits are its `p`-adic digits (resp. its
//! coefficients in `t`). With that encoding the uniformizer power `t^e` is the
//! code `p^e`, valuation is the number of trailing zero digits, and
//! reduction modulo `t^k` is reduction of the code modulo `p^k`, for both
//! flavors. Only addition and multiplication differ.

mod literal;

use std::fmt;

use rand::Rng;

use crate::error::{ArtinError, Result};

/// Largest supported working precision.
pub const MAX_PRECISION: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Z/p^M`, uniformizer `p`.
    PAdic,
    /// `F_p[t]/(t^M)`, uniformizer `t`.
    TSeries,
}

/// A canonical ring element: the base-`p` code described in the module docs.
///
/// Elements do not carry their ring; every operation goes through a
/// [`RingCtx`]. Codes outside `[0, p^M)` are rejected by the checked entry
/// points as a context mismatch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn code(self) -> u64 {
        self.0
    }
}

/// A valuation in `{0, .., M}`, where `M` stands for "zero at working
/// precision" (written ⊤).
#[derive(Clone, Copy, Debug, Eq)]
pub struct Val {
    value: u32,
    prec: u32,
}

impl Val {
    pub fn new(value: u32, prec: u32) -> Val {
        Val {
            value: value.min(prec),
            prec,
        }
    }

    pub fn top(prec: u32) -> Val {
        Val { value: prec, prec }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prec(self) -> u32 {
        self.prec
    }

    pub fn is_top(self) -> bool {
        self.value >= self.prec
    }

    /// `None` for ⊤.
    pub fn finite(self) -> Option<u32> {
        (!self.is_top()).then_some(self.value)
    }

    /// Valuation of a product: saturates at ⊤.
    pub fn sat_add(self, other: Val) -> Val {
        Val::new(self.value.saturating_add(other.value), self.prec)
    }

    pub fn sat_mul(self, k: u32) -> Val {
        Val::new(self.value.saturating_mul(k), self.prec)
    }
}

impl PartialEq for Val {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl std::hash::Hash for Val {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            write!(f, "⊤")
        } else {
            write!(f, "{}", self.value)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    flavor: Flavor,
    p: u64,
    prec: u32,
    modulus: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingCtx {
    pub fn new(flavor: Flavor, p: u64, prec: u32) -> Result<RingCtx> {
        if !is_prime(p) {
            return Err(ArtinError::InvalidRing(format!("{p} is not prime")));
        }
        if prec == 0 || prec > MAX_PRECISION {
            return Err(ArtinError::InvalidRing(format!(
                "precision {prec} outside 1..={MAX_PRECISION}"
            )));
        }
        let modulus = p
            .checked_pow(prec)
            .filter(|m| *m <= 1 << 63)
            .ok_or_else(|| ArtinError::InvalidRing(format!("{p}^{prec} exceeds 2^63")))?;
        Ok(RingCtx {
            flavor,
            p,
            prec,
            modulus,
        })
    }

    pub fn padic(p: u64, prec: u32) -> Result<RingCtx> {
        RingCtx::new(Flavor::PAdic, p, prec)
    }

    pub fn tseries(p: u64, prec: u32) -> Result<RingCtx> {
        RingCtx::new(Flavor::TSeries, p, prec)
    }

    /// Same ring at a different working precision.
    pub fn with_precision(&self, prec: u32) -> Result<RingCtx> {
        RingCtx::new(self.flavor, self.p, prec)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Number of elements, `p^M`.
    pub fn size(&self) -> u64 {
        self.modulus
    }

    pub fn top(&self) -> Val {
        Val::top(self.prec)
    }

    pub fn val_of(&self, v: u32) -> Val {
        Val::new(v, self.prec)
    }

    // ---- construction -------------------------------------------------

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1 % self.modulus)
    }

    /// Checked conversion from a canonical code.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.modulus {
            Ok(Elem(code))
        } else {
            Err(ArtinError::ContextMismatch(format!(
                "code {code} not below {}",
                self.modulus
            )))
        }
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        self.elem(x.0)
    }

    /// Image of an integer: residue mod `p^M` for p-adic rings, the constant
    /// `n mod p` for t-series rings.
    pub fn from_int(&self, n: i128) -> Elem {
        match self.flavor {
            Flavor::PAdic => Elem(n.rem_euclid(self.modulus as i128) as u64),
            Flavor::TSeries => Elem(n.rem_euclid(self.p as i128) as u64 % self.modulus),
        }
    }

    /// The uniformizer power `t^e` (resp. `p^e`); zero once `e >= M`.
    pub fn t_pow(&self, e: u32) -> Elem {
        if e >= self.prec {
            Elem(0)
        } else {
            Elem(self.p.pow(e))
        }
    }

    pub fn uniformizer(&self) -> Elem {
        self.t_pow(1)
    }

    /// Element with the given base-`p` digits, lowest first. Digits beyond
    /// the precision are dropped; each digit is reduced mod `p`.
    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        let mut code = 0u64;
        for &d in digits.iter().take(self.prec as usize).rev() {
            code = code * self.p + d % self.p;
        }
        Elem(code)
    }

    pub fn digits(&self, x: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.prec as usize);
        let mut c = x.0;
        for _ in 0..self.prec {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    fn digit_array(&self, x: u64) -> [u64; MAX_PRECISION as usize] {
        let mut out = [0u64; MAX_PRECISION as usize];
        let mut c = x;
        for d in out.iter_mut().take(self.prec as usize) {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let mut code = 0u64;
        for &d in digits[..self.prec as usize].iter().rev() {
            code = code * self.p + d;
        }
        code
    }

    // ---- arithmetic ---------------------------------------------------

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match self.flavor {
            Flavor::PAdic => Elem((x.0 + y.0) % self.modulus),
            Flavor::TSeries if self.p == 2 => Elem(x.0 ^ y.0),
            Flavor::TSeries => {
                let (a, b) = (self.digit_array(x.0), self.digit_array(y.0));
                let mut s = [0u64; MAX_PRECISION as usize];
                for i in 0..self.prec as usize {
                    s[i] = (a[i] + b[i]) % self.p;
                }
                Elem(self.pack(&s))
            }
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        match self.flavor {
            Flavor::PAdic => Elem(if x.0 == 0 { 0 } else { self.modulus - x.0 }),
            Flavor::TSeries if self.p == 2 => x,
            Flavor::TSeries => {
                let mut a = self.digit_array(x.0);
                for d in a.iter_mut().take(self.prec as usize) {
                    *d = (self.p - *d) % self.p;
                }
                Elem(self.pack(&a))
            }
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        match self.flavor {
            Flavor::PAdic => Elem((x.0 + (self.modulus - y.0)) % self.modulus),
            Flavor::TSeries if self.p == 2 => Elem(x.0 ^ y.0),
            Flavor::TSeries => self.add(x, self.neg(y)),
        }
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match self.flavor {
            Flavor::PAdic => Elem(((x.0 as u128 * y.0 as u128) % self.modulus as u128) as u64),
            Flavor::TSeries if self.p == 2 => {
                // carry-less product, truncated at t^M
                let mut acc = 0u64;
                let mut a = x.0;
                let mut shift = 0;
                while a != 0 {
                    if a & 1 == 1 {
                        acc ^= y.0 << shift;
                    }
                    a >>= 1;
                    shift += 1;
                }
                Elem(acc & (self.modulus - 1))
            }
            Flavor::TSeries => {
                let m = self.prec as usize;
                let (a, b) = (self.digit_array(x.0), self.digit_array(y.0));
                let mut acc = [0u128; MAX_PRECISION as usize];
                for i in 0..m {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..m - i {
                        acc[i + j] += a[i] as u128 * b[j] as u128;
                    }
                }
                let mut out = [0u64; MAX_PRECISION as usize];
                for i in 0..m {
                    out[i] = (acc[i] % self.p as u128) as u64;
                }
                Elem(self.pack(&out))
            }
        }
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Checked binary operation; fails if either operand is foreign to this
    /// context.
    pub fn arith(&self, op: ArithOp, x: Elem, y: Elem) -> Result<Elem> {
        let (x, y) = (self.check(x)?, self.check(y)?);
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    // ---- valuation ----------------------------------------------------

    pub fn val(&self, x: Elem) -> Val {
        if x.0 == 0 {
            return self.top();
        }
        let v = if self.p == 2 {
            x.0.trailing_zeros()
        } else {
            let mut c = x.0;
            let mut v = 0;
            while c.is_multiple_of(self.p) {
                c /= self.p;
                v += 1;
            }
            v
        };
        Val::new(v, self.prec)
    }

    pub fn is_zero(&self, x: Elem) -> bool {
        x.0 == 0
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        !x.0.is_multiple_of(self.p)
    }

    /// `x mod t^k`, as the canonical lift with the top digits cleared.
    pub fn reduce(&self, x: Elem, k: u32) -> Elem {
        if k >= self.prec {
            x
        } else {
            Elem(x.0 % self.p.pow(k))
        }
    }

    /// `x ≡ y (mod t^n)`.
    pub fn congruent(&self, x: Elem, y: Elem, n: u32) -> bool {
        self.val(self.sub(x, y)).value() >= n.min(self.prec)
    }

    /// Drops the lowest `e` digits: `x / t^e`, valid when `val(x) >= e`.
    /// The result is only meaningful modulo `t^(M-e)`; its top digits are 0.
    pub fn shift_down(&self, x: Elem, e: u32) -> Elem {
        if e >= self.prec {
            Elem(0)
        } else {
            Elem(x.0 / self.p.pow(e))
        }
    }

    // ---- division -----------------------------------------------------

    pub fn invert_unit(&self, x: Elem) -> Result<Elem> {
        let x = self.check(x)?;
        if !self.is_unit(x) {
            return Err(ArtinError::NotAUnit(self.val(x).value()));
        }
        // inverse of the lowest digit in F_p, then Newton y <- y(2 - xy)
        let d = (x.0 % self.p) as u128;
        let p = self.p as u128;
        let mut inv = 1u128;
        let mut base = d;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        let two = self.from_int(2);
        let mut y = Elem(inv as u64 % self.modulus);
        let mut correct = 1u32;
        while correct < self.prec {
            y = self.mul(y, self.sub(two, self.mul(x, y)));
            correct *= 2;
        }
        debug_assert_eq!(self.mul(x, y), self.one());
        Ok(y)
    }

    /// A quotient `q` with `q * y = x`, provided `val(y) <= val(x)` and
    /// `y` is nonzero at working precision. With `v = val(y)` the quotient is
    /// determined modulo `t^(M-v)`; the returned representative has its top
    /// `v` digits cleared.
    pub fn div_exact(&self, x: Elem, y: Elem) -> Result<Elem> {
        let vy = self.val(y);
        let vx = self.val(x);
        if vy.is_top() {
            return Err(ArtinError::NotAUnit(vy.value()));
        }
        if vx < vy {
            return Err(ArtinError::NotAUnit(vy.value() - vx.value()));
        }
        let v = vy.value();
        let num = self.shift_down(x, v);
        let unit = self.shift_down(y, v);
        let q = self.mul(num, self.invert_unit(unit)?);
        Ok(self.reduce(q, self.prec - v))
    }

    // ---- enumeration and sampling ------------------------------------

    /// Every residue class of `R/t^k`, once each, as canonical lifts in
    /// increasing code order.
    pub fn residues(&self, k: u32) -> Result<impl Iterator<Item = Elem>> {
        if k == 0 || k > self.prec {
            return Err(ArtinError::OutOfRange {
                what: "residue precision",
                detail: format!("{k} not in 1..={}", self.prec),
            });
        }
        Ok((0..self.p.pow(k)).map(Elem))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.random_range(0..self.modulus))
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if self.is_unit(x) {
                return x;
            }
        }
    }

    /// Random element of valuation at least `v` (zero when `v >= M`).
    pub fn random_in_ideal<R: Rng + ?Sized>(&self, rng: &mut R, v: u32) -> Elem {
        if v >= self.prec {
            return Elem(0);
        }
        let free = self.p.pow(self.prec - v);
        self.mul(self.t_pow(v), Elem(rng.random_range(0..free)))
    }

    /// Random element of valuation exactly `v` (< M).
    pub fn random_with_val<R: Rng + ?Sized>(&self, rng: &mut R, v: u32) -> Elem {
        debug_assert!(v < self.prec);
        self.mul(self.t_pow(v), self.random_unit(rng))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.flavor {
            Flavor::PAdic => "Zp",
            Flavor::TSeries => "Fpt",
        };
        write!(f, "{name}(p={},M={})", self.p, self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fpt(p: u64, m: u32) -> RingCtx {
        RingCtx::tseries(p, m).unwrap()
    }

    fn zp(p: u64, m: u32) -> RingCtx {
        RingCtx::padic(p, m).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let r = fpt(2, 8);
        let x = r.add(r.t_pow(3), r.t_pow(5));
        assert_eq!(r.val(x).value(), 3);
        assert!(r.val(r.zero()).is_top());
        let z = zp(2, 6);
        assert_eq!(z.val(z.from_int(12)).value(), 2);
    }

    #[test]
    fn arithmetic_examples() {
        let r = fpt(3, 4);
        let t = r.uniformizer();
        assert_eq!(r.mul(t, t), r.t_pow(2));
        let x = r.from_digits(&[1, 2, 0, 1]);
        assert_eq!(r.add(x, r.neg(x)), r.zero());
        let r2 = fpt(2, 4);
        let prod = r2.mul(r2.t_pow(2), r2.t_pow(3));
        assert!(r2.val(prod).is_top());
    }

    #[test]
    fn inverse_examples() {
        let r = fpt(2, 4);
        assert_eq!(r.invert_unit(r.one()).unwrap(), r.one());
        let one_plus_t = r.from_digits(&[1, 1]);
        assert_eq!(
            r.invert_unit(one_plus_t).unwrap(),
            r.from_digits(&[1, 1, 1, 1])
        );
        let z = zp(2, 4);
        assert_eq!(z.invert_unit(z.from_int(3)).unwrap(), z.from_int(11));
        assert_eq!(z.invert_unit(z.from_int(6)), Err(ArtinError::NotAUnit(1)));
    }

    #[test]
    fn inverse_matches_exhaustive_scan() {
        for ring in [zp(2, 4), zp(3, 3), fpt(3, 3), fpt(5, 2), fpt(2, 5)] {
            for x in ring
                .residues(ring.prec())
                .unwrap()
                .filter(|x| ring.is_unit(*x))
            {
                let scanned = ring
                    .residues(ring.prec())
                    .unwrap()
                    .find(|y| ring.mul(x, *y) == ring.one())
                    .unwrap();
                assert_eq!(ring.invert_unit(x).unwrap(), scanned, "{ring} {x:?}");
            }
        }
    }

    #[test]
    fn residue_enumeration() {
        let r = fpt(2, 5);
        let all: Vec<_> = r.residues(3).unwrap().collect();
        assert_eq!(all.len(), 8);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        let z = zp(3, 2);
        let small: Vec<_> = z.residues(1).unwrap().map(Elem::code).collect();
        assert_eq!(small, vec![0, 1, 2]);
        let r1 = fpt(2, 1);
        assert_eq!(r1.residues(1).unwrap().count(), 2);
        assert!(r.residues(0).is_err());
        assert!(r.residues(6).is_err());
    }

    #[test]
    fn div_exact_recovers_factor() {
        let r = fpt(3, 6);
        let y = r.mul(r.t_pow(2), r.from_digits(&[2, 1]));
        let q = r.from_digits(&[1, 0, 2, 1]);
        let x = r.mul(q, y);
        let got = r.div_exact(x, y).unwrap();
        assert_eq!(r.mul(got, y), x);
        assert!(r.congruent(got, q, 4));
        assert!(r.div_exact(r.t_pow(1), r.t_pow(2)).is_err());
    }

    #[test]
    fn context_checks() {
        let r = zp(5, 2);
        assert!(r.elem(25).is_err());
        assert!(r.arith(ArithOp::Add, Elem(3), Elem(30)).is_err());
        assert_eq!(r.arith(ArithOp::Mul, Elem(3), Elem(4)).unwrap(), Elem(12));
        assert!(RingCtx::padic(4, 3).is_err());
        assert!(RingCtx::padic(2, 64).is_err());
        assert!(RingCtx::tseries(3, 0).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let r = fpt(7, 5);
        for code in [0u64, 1, 6, 7, 48, 16806] {
            let x = r.elem(code).unwrap();
            assert_eq!(r.from_digits(&r.digits(x)), x);
        }
    }
}
