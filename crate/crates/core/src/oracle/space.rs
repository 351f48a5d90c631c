//! Canonical enumeration of `(R/t^M)^N`, optionally restricted to one
//! representative per orbit of `a ↦ u·a` (`u` a unit).
//!
//! Orbit representatives: the zero point, and for every pivot coordinate
//! `j` and valuation `v < M` the points with `a_j = t^v`, coordinates
//! before `j` of valuation `> v`, and coordinates after `j` of valuation
//! `≥ v`. Every nonzero orbit has exactly one such point: scale by the
//! inverse of the unit part of its first coordinate of least valuation.

use crate::error::{ArtinError, Result};
use crate::ring::{Elem, RingCtx};

#[derive(Clone, Debug)]
struct Segment {
    start: u128,
    pivot: usize,
    v: u32,
}

/// A finite, totally ordered point space; points are addressed by index.
#[derive(Clone, Debug)]
pub struct PointSpace {
    ring: RingCtx,
    nvars: usize,
    symmetric: bool,
    segments: Vec<Segment>,
    total: u128,
}

fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

impl PointSpace {
    pub fn new(ring: &RingCtx, nvars: usize, symmetric: bool) -> Result<PointSpace> {
        let too_big = || ArtinError::BudgetExceeded {
            needed: u128::MAX,
            budget: u64::MAX,
        };
        let m = ring.prec();
        let p = ring.p();
        if !symmetric {
            let total = checked_pow(p, m * nvars as u32).ok_or_else(too_big)?;
            return Ok(PointSpace {
                ring: *ring,
                nvars,
                symmetric,
                segments: Vec::new(),
                total,
            });
        }
        let mut segments = Vec::new();
        // index 0 is the zero point
        let mut start = 1u128;
        for v in 0..m {
            for pivot in 0..nvars {
                let before = (m - v - 1) * pivot as u32;
                let after = (m - v) * (nvars - 1 - pivot) as u32;
                let len = checked_pow(p, before + after).ok_or_else(too_big)?;
                segments.push(Segment { start, pivot, v });
                start = start.checked_add(len).ok_or_else(too_big)?;
            }
        }
        Ok(PointSpace {
            ring: *ring,
            nvars,
            symmetric,
            segments,
            total: start,
        })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Writes point number `idx` into `out`.
    pub fn point(&self, idx: u128, out: &mut [Elem]) {
        debug_assert!(idx < self.total && out.len() == self.nvars);
        let ring = &self.ring;
        let q = ring.size() as u128;
        if !self.symmetric {
            // last coordinate varies fastest
            let mut rest = idx;
            for x in out.iter_mut().rev() {
                *x = ring.elem((rest % q) as u64).expect("in range");
                rest /= q;
            }
            return;
        }
        if idx == 0 {
            out.fill(ring.zero());
            return;
        }
        let seg = match self.segments.binary_search_by(|s| s.start.cmp(&idx)) {
            Ok(i) => &self.segments[i],
            Err(i) => &self.segments[i - 1],
        };
        let p = ring.p() as u128;
        let m = ring.prec();
        let mut rest = idx - seg.start;
        for j in (0..self.nvars).rev() {
            if j == seg.pivot {
                out[j] = ring.t_pow(seg.v);
                continue;
            }
            let floor = if j < seg.pivot { seg.v + 1 } else { seg.v };
            if floor >= m {
                out[j] = ring.zero();
                continue;
            }
            let count = p.pow(m - floor);
            let digit = (rest % count) as u64;
            rest /= count;
            out[j] = ring.mul(ring.t_pow(floor), ring.elem(digit).expect("in range"));
        }
    }
}
