//! Monomial ideals over a DVR: the closed-form Artin function, repair of
//! approximate solutions by zeroing a hitting set of coordinates, and
//! witnesses showing the formula is sharp.
//!
//! Over a DVR, `X^α(b) = 0` exactly when some `b_j` with `j ∈ supp(α)`
//! vanishes, so every statement here is structural.

use std::fmt;

use crate::error::{ArtinError, Result};
use crate::poly::{ExpVec, IdealVal, Poly, PolySystem, Var, MAX_VARS};
use crate::ring::{Elem, RingCtx};

/// `n ↦ slope·n + intercept`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineBound {
    pub slope: u32,
    pub intercept: i64,
}

impl AffineBound {
    pub fn eval(&self, n: u32) -> u32 {
        (self.slope as i64 * n as i64 + self.intercept).max(0) as u32
    }
}

impl fmt::Display for AffineBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.intercept {
            0 => write!(f, "{}n", self.slope),
            c if c > 0 => write!(f, "{}n + {c}", self.slope),
            c => write!(f, "{}n - {}", self.slope, -c),
        }
    }
}

/// `(X^α_1, .., X^α_k)` with `|α_1| ≥ .. ≥ |α_k|`; equal degrees are
/// ordered lexicographically, larger exponent vectors first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    alphas: Vec<ExpVec>,
}

/// Result of a repair: the exact solution and the coordinates set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRepair {
    pub point: Vec<Elem>,
    pub zeroed: Vec<usize>,
}

impl MonomialIdeal {
    /// Rejects an empty list, mixed lengths and the zero exponent (which
    /// would make the ideal the whole ring); duplicates are dropped.
    pub fn new(alphas: Vec<Vec<u32>>) -> Result<MonomialIdeal> {
        let nvars = alphas
            .first()
            .map(Vec::len)
            .ok_or_else(|| ArtinError::InvalidInput("no generators".into()))?;
        if nvars == 0 || nvars > MAX_VARS {
            return Err(ArtinError::InvalidInput(format!(
                "{nvars} variables, expected 1..={MAX_VARS}"
            )));
        }
        let mut out = Vec::with_capacity(alphas.len());
        for a in alphas {
            if a.len() != nvars {
                return Err(ArtinError::ArityMismatch {
                    expected: nvars,
                    got: a.len(),
                });
            }
            if a.iter().all(|e| *e == 0) {
                return Err(ArtinError::InvalidInput(
                    "the exponent vector 0 generates the unit ideal".into(),
                ));
            }
            out.push(ExpVec::new(a));
        }
        out.sort_by(|a, b| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| b.exps().cmp(a.exps()))
        });
        out.dedup();
        Ok(MonomialIdeal { nvars, alphas: out })
    }

    /// Compact form `(1,1);(1,0)`, optionally prefixed by `mono:`.
    pub fn parse_compact(s: &str) -> Result<MonomialIdeal> {
        let s = s.trim();
        let s = s.strip_prefix("mono:").unwrap_or(s);
        let mut alphas = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| {
                    ArtinError::InvalidInput(format!("expected `(e1,..,eN)`, got `{part}`"))
                })?;
            let exps = inner
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| ArtinError::InvalidInput(format!("bad exponent `{e}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            alphas.push(exps);
        }
        MonomialIdeal::new(alphas)
    }

    /// Reads an ideal from a system whose equations are single monomials
    /// with unit coefficients.
    pub fn from_system(sys: &PolySystem) -> Result<MonomialIdeal> {
        let ring = sys.ring();
        let mut alphas = Vec::new();
        for (i, f) in sys.polys().iter().enumerate() {
            let mut terms = f.terms();
            match (terms.next(), terms.next()) {
                (Some((e, c)), None) if ring.is_unit(*c) => alphas.push(e.exps().to_vec()),
                _ => {
                    return Err(ArtinError::UnsupportedKind(format!(
                        "equation {} is not a monomial with unit coefficient",
                        i + 1
                    )))
                }
            }
        }
        MonomialIdeal::new(alphas)
    }

    pub fn to_system(&self, ring: &RingCtx) -> PolySystem {
        let polys = self
            .alphas
            .iter()
            .map(|a| Poly::monomial(self.nvars, ring.one(), a.clone()))
            .collect();
        PolySystem::new(*ring, (1..=self.nvars as u32).map(Var::x).collect(), polys)
            .expect("valid monomial system")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn alphas(&self) -> &[ExpVec] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Compact form, e.g. `(1,1);(1,0)`.
    pub fn to_compact(&self) -> String {
        self.alphas
            .iter()
            .map(|a| {
                format!(
                    "({})",
                    a.exps()
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    fn check_point(&self, ring: &RingCtx, a: &[Elem]) -> Result<()> {
        if a.len() != self.nvars {
            return Err(ArtinError::ArityMismatch {
                expected: self.nvars,
                got: a.len(),
            });
        }
        for x in a {
            ring.check(*x)?;
        }
        Ok(())
    }

    /// Valuation of the ideal generated by the `X^α_i(a)`, computed from the
    /// coordinate valuations (`Σ α_ij val(a_j)`, capped at `⊤`).
    pub fn eval_val(&self, ring: &RingCtx, a: &[Elem]) -> Result<IdealVal> {
        self.check_point(ring, a)?;
        let vals: Vec<_> = a.iter().map(|x| ring.val(*x)).collect();
        Ok(self.eval_val_from(ring, &vals))
    }

    pub(crate) fn eval_val_from(&self, ring: &RingCtx, vals: &[crate::ring::Val]) -> IdealVal {
        let mut best = ring.top();
        for alpha in &self.alphas {
            let v = alpha
                .exps()
                .iter()
                .zip(vals)
                .filter(|(e, _)| **e > 0)
                .fold(ring.val_of(0), |acc, (e, v)| acc.sat_add(v.sat_mul(*e)));
            best = best.min(v);
        }
        IdealVal(best)
    }

    /// The least `i` (1-based) such that `supp(α_j) ⊄ supp(α_i)` for
    /// every `j > i`.
    pub fn s_index(&self) -> usize {
        let k = self.alphas.len();
        (0..k)
            .find(|&i| (i + 1..k).all(|j| !self.alphas[i].support_contains(&self.alphas[j])))
            .map(|i| i + 1)
            .unwrap_or(k)
    }

    /// `β_n = |α_s| n - |α_s| + 1`.
    pub fn beta(&self) -> AffineBound {
        let d = self.alphas[self.s_index() - 1].degree();
        AffineBound {
            slope: d,
            intercept: 1 - d as i64,
        }
    }

    /// `max_i (|α_i| n - |α_i| + 1)`, the bound obtained generator by
    /// generator.
    pub fn max_single_bound(&self, n: u32) -> u32 {
        self.alphas
            .iter()
            .map(|a| a.degree() * n - a.degree() + 1)
            .max()
            .unwrap_or(1)
    }

    /// Whether some exact solution agrees with `a` modulo `t^n`: every
    /// support must contain a coordinate of valuation at least `n`.
    pub fn is_repairable(&self, ring: &RingCtx, a: &[Elem], n: u32) -> bool {
        let vals: Vec<_> = a.iter().map(|x| ring.val(*x)).collect();
        self.is_repairable_from(&vals, n)
    }

    pub(crate) fn is_repairable_from(&self, vals: &[crate::ring::Val], n: u32) -> bool {
        let deep = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| v.value() >= n)
            .fold(0u64, |m, (j, _)| m | 1 << j);
        self.alphas.iter().all(|a| a.support_mask() & deep != 0)
    }

    /// Zeroes a greedily chosen hitting set: generators in order, and in
    /// each uncovered support the lowest coordinate of valuation `≥ n`.
    pub fn repair(&self, ring: &RingCtx, a: &[Elem], n: u32) -> Result<MonomialRepair> {
        let beta = self.beta().eval(n);
        let v = self.eval_val(ring, a)?;
        let enough = if beta > ring.prec() {
            v.is_top()
        } else {
            v.value() >= beta
        };
        if !enough {
            return Err(ArtinError::HypothesisNotMet(format!(
                "ord I(a) = {v} is below beta_n = {beta}"
            )));
        }
        let mut zeroed: Vec<usize> = Vec::new();
        for alpha in &self.alphas {
            let support = alpha.support();
            if support.iter().any(|j| zeroed.contains(j)) {
                continue;
            }
            match support.into_iter().find(|&j| ring.val(a[j]).value() >= n) {
                Some(j) => zeroed.push(j),
                None if beta > ring.prec() => {
                    return Err(ArtinError::PrecisionExhausted(format!(
                        "beta_n = {beta} exceeds the working precision {}",
                        ring.prec()
                    )))
                }
                None => unreachable!("a point of order beta_n always has a hitting set"),
            }
        }
        zeroed.sort_unstable();
        let mut point = a.to_vec();
        for &j in &zeroed {
            point[j] = ring.zero();
        }
        Ok(MonomialRepair { point, zeroed })
    }

    /// A point of order `β_n - 1` with no exact solution within `t^n`:
    /// `t^{n-1}` on `supp(α_s)` and `t^{|α_s|(n-1)}` on all other
    /// coordinates.
    pub fn witness(&self, ring: &RingCtx, n: u32) -> Result<Vec<Elem>> {
        if n == 0 {
            return Err(ArtinError::OutOfRange {
                what: "n",
                detail: "must be at least 1".into(),
            });
        }
        let alpha_s = &self.alphas[self.s_index() - 1];
        let deep = alpha_s.degree() * (n - 1);
        if deep >= ring.prec() && n > 1 {
            return Err(ArtinError::PrecisionExhausted(format!(
                "|alpha_s|(n-1) = {deep} needs precision above {}",
                ring.prec()
            )));
        }
        let support = alpha_s.support_mask();
        Ok((0..self.nvars)
            .map(|j| {
                if support >> j & 1 == 1 {
                    ring.t_pow(n - 1)
                } else {
                    ring.t_pow(deep)
                }
            })
            .collect())
    }
}

impl MonomialRepair {
    /// Every generator vanishes identically on the point and the point is
    /// congruent to `a` modulo `t^n`.
    pub fn verify(&self, ideal: &MonomialIdeal, ring: &RingCtx, a: &[Elem], n: u32) -> bool {
        let hits = ideal
            .alphas()
            .iter()
            .all(|al| al.support().iter().any(|j| self.zeroed.contains(j)));
        let zero = self.zeroed.iter().all(|&j| self.point[j] == Elem::ZERO);
        let close = a
            .iter()
            .zip(&self.point)
            .all(|(x, y)| ring.congruent(*x, *y, n));
        hits && zero && close
    }
}
