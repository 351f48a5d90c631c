//! Brute-force Artin functions over `R/t^M`.
//!
//! `β_n` is computed as one more than the largest residual valuation of a
//! point that is not repairable within `t^n` (and at least 1). Whether a
//! point is repairable is decided by a structural predicate for each
//! system kind, so the answer does not depend on recognising true zeros
//! from truncated data, except for the `General` kind, which only looks
//! for solutions modulo `t^M`.

mod space;

pub use space::PointSpace;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::determinantal;
use crate::error::{ArtinError, Result};
use crate::lifting::{smith_normal_form, Snf};
use crate::matrix::MatrixR;
use crate::monomial::MonomialIdeal;
use crate::poly::{linear_parts, PolySystem};
use crate::ring::{Elem, RingCtx, Val};

/// Default cap on the number of enumerated points.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

const CHUNK: u128 = 1 << 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Monomial(MonomialIdeal),
    /// `I_r` of a generic `k×l` matrix; points are matrices read row by row.
    Determinantal {
        k: usize,
        l: usize,
        r: usize,
    },
    /// `A x = d`.
    Linear {
        a: MatrixR,
        d: Vec<Elem>,
    },
    General(PolySystem),
}

impl SystemKind {
    pub fn name(&self) -> &'static str {
        match self {
            SystemKind::Monomial(_) => "monomial",
            SystemKind::Determinantal { .. } => "determinantal",
            SystemKind::Linear { .. } => "linear",
            SystemKind::General(_) => "general",
        }
    }

    /// Builds a kind from a parsed system: `monomial` and `linear` read
    /// the equations, `general` keeps them as they are.
    pub fn from_system(kind: &str, sys: &PolySystem) -> Result<SystemKind> {
        match kind {
            "monomial" => Ok(SystemKind::Monomial(MonomialIdeal::from_system(sys)?)),
            "linear" => {
                let (a, d) =
                    linear_parts(sys).map_err(|e| ArtinError::UnsupportedKind(e.to_string()))?;
                Ok(SystemKind::Linear { a, d })
            }
            "general" => Ok(SystemKind::General(sys.clone())),
            other => Err(ArtinError::UnsupportedKind(format!(
                "`{other}` cannot be read from a system"
            ))),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            SystemKind::Monomial(i) => i.nvars(),
            SystemKind::Determinantal { k, l, .. } => k * l,
            SystemKind::Linear { a, .. } => a.cols(),
            SystemKind::General(s) => s.nvars(),
        }
    }

    /// Scaling a point by a unit preserves both the residual valuation and
    /// repairability.
    pub fn is_homogeneous(&self) -> bool {
        matches!(
            self,
            SystemKind::Monomial(_) | SystemKind::Determinantal { .. }
        )
    }

    fn validate(&self, ring: &RingCtx) -> Result<()> {
        match self {
            SystemKind::Determinantal { k, l, r } => {
                if *k == 0 || *l == 0 || *r == 0 || r > k.min(l) {
                    return Err(ArtinError::OutOfRange {
                        what: "determinantal shape",
                        detail: format!("{k}x{l}, r = {r}"),
                    });
                }
            }
            SystemKind::Linear { a, d } => {
                if a.rows() != d.len() {
                    return Err(ArtinError::ArityMismatch {
                        expected: a.rows(),
                        got: d.len(),
                    });
                }
                for x in a.data().iter().chain(d) {
                    ring.check(*x)?;
                }
            }
            SystemKind::General(s) => {
                if s.ring().flavor() != ring.flavor() || s.ring().p() != ring.p() {
                    return Err(ArtinError::ContextMismatch(format!(
                        "system over {}, oracle over {ring}",
                        s.ring()
                    )));
                }
            }
            SystemKind::Monomial(_) => {}
        }
        Ok(())
    }

    /// The same system over another precision of the same ring.
    fn at(&self, ring: &RingCtx) -> Result<SystemKind> {
        Ok(match self {
            SystemKind::General(s) => SystemKind::General(PolySystem::new(
                *ring,
                s.vars().to_vec(),
                s.polys().to_vec(),
            )?),
            other => other.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub ring: RingCtx,
    pub n: u32,
    pub beta_max: u32,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    pub budget: u64,
    /// Enumerate one point per unit orbit when the system is homogeneous.
    pub symmetry: bool,
}

impl OracleConfig {
    pub fn new(ring: RingCtx, n: u32) -> OracleConfig {
        OracleConfig {
            ring,
            n,
            beta_max: ring.prec(),
            jobs: 0,
            budget: DEFAULT_BUDGET,
            symmetry: true,
        }
    }

    fn validate(&self) -> Result<()> {
        let m = self.ring.prec();
        if self.n == 0 || self.n > self.beta_max || self.beta_max > m {
            return Err(ArtinError::OutOfRange {
                what: "oracle bounds",
                detail: format!(
                    "need 1 <= n <= beta_max <= M, got n = {}, beta_max = {}, M = {m}",
                    self.n, self.beta_max
                ),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when `β_n` exceeds `beta_max` (or the precision).
    pub beta: Option<u32>,
    /// A non-repairable point of order `β - 1` (the first in enumeration
    /// order), when one exists.
    pub counterexample: Option<Vec<Elem>>,
    pub points_examined: u64,
    pub elapsed: Duration,
}

/// Kind-specific data prepared once per run.
enum Prepared<'a> {
    Monomial(&'a MonomialIdeal),
    Det {
        k: usize,
        l: usize,
        r: usize,
    },
    Linear {
        a: &'a MatrixR,
        d: &'a [Elem],
        scaled: Snf,
    },
    General {
        sys: &'a PolySystem,
        solutions: HashSet<Vec<Elem>>,
    },
}

impl Prepared<'_> {
    fn new<'a>(kind: &'a SystemKind, ring: &RingCtx, n: u32) -> Result<Prepared<'a>> {
        Ok(match kind {
            SystemKind::Monomial(i) => Prepared::Monomial(i),
            SystemKind::Determinantal { k, l, r } => Prepared::Det {
                k: *k,
                l: *l,
                r: *r,
            },
            SystemKind::Linear { a, d } => {
                let tn = ring.t_pow(n);
                let data = a.data().iter().map(|x| ring.mul(*x, tn)).collect();
                let scaled = smith_normal_form(ring, &MatrixR::new(a.rows(), a.cols(), data)?);
                Prepared::Linear { a, d, scaled }
            }
            SystemKind::General(sys) => {
                let space = PointSpace::new(ring, sys.nvars(), false)?;
                let mut buf = vec![ring.zero(); sys.nvars()];
                let mut solutions = HashSet::new();
                for i in 0..space.len() {
                    space.point(i, &mut buf);
                    if sys.residual_val(&buf)?.is_top() {
                        solutions.insert(buf.iter().map(|x| ring.reduce(*x, n)).collect());
                    }
                }
                Prepared::General { sys, solutions }
            }
        })
    }

    fn residual(&self, ring: &RingCtx, a: &[Elem]) -> Val {
        match self {
            Prepared::Monomial(i) => {
                let vals: Vec<Val> = a.iter().map(|x| ring.val(*x)).collect();
                i.eval_val_from(ring, &vals).val()
            }
            Prepared::Det { k, l, r } => {
                let m = MatrixR::new(*k, *l, a.to_vec()).expect("shape");
                m.minor_ideal_val(ring, *r).expect("r in range")
            }
            Prepared::Linear { a: m, d, .. } => {
                let ax = m.mul_vec(ring, a).expect("shape");
                ax.iter()
                    .zip(*d)
                    .map(|(x, y)| ring.val(ring.sub(*x, *y)))
                    .min()
                    .unwrap_or(ring.top())
            }
            Prepared::General { sys, .. } => sys.residual_val(a).expect("arity").val(),
        }
    }

    fn repairable(&self, ring: &RingCtx, a: &[Elem], n: u32) -> bool {
        match self {
            Prepared::Monomial(i) => i.is_repairable(ring, a, n),
            Prepared::Det { k, l, r } => {
                let m = MatrixR::new(*k, *l, a.to_vec()).expect("shape");
                determinantal::is_repairable(ring, &m, *r, n)
            }
            Prepared::Linear { a: m, d, scaled } => {
                let ax = m.mul_vec(ring, a).expect("shape");
                let rhs: Vec<Elem> = d.iter().zip(&ax).map(|(x, y)| ring.sub(*x, *y)).collect();
                crate::lifting::snf::solve_with(ring, scaled, &rhs).is_some()
            }
            Prepared::General { solutions, .. } => {
                let key: Vec<Elem> = a.iter().map(|x| ring.reduce(*x, n)).collect();
                solutions.contains(&key)
            }
        }
    }
}

/// Whether some exact solution agrees with `a` modulo `t^n`.
pub fn exactness_predicate(kind: &SystemKind, ring: &RingCtx, a: &[Elem], n: u32) -> Result<bool> {
    kind.validate(ring)?;
    if a.len() != kind.nvars() {
        return Err(ArtinError::ArityMismatch {
            expected: kind.nvars(),
            got: a.len(),
        });
    }
    for x in a {
        ring.check(*x)?;
    }
    if n == 0 || n > ring.prec() {
        return Err(ArtinError::OutOfRange {
            what: "n",
            detail: format!("{n} not in 1..={}", ring.prec()),
        });
    }
    Ok(Prepared::new(kind, ring, n)?.repairable(ring, a, n))
}

/// Residual valuation of `a` for the kind (`ord f(a)`).
pub fn residual_val(kind: &SystemKind, ring: &RingCtx, a: &[Elem]) -> Result<Val> {
    kind.validate(ring)?;
    if a.len() != kind.nvars() {
        return Err(ArtinError::ArityMismatch {
            expected: kind.nvars(),
            got: a.len(),
        });
    }
    for x in a {
        ring.check(*x)?;
    }
    Ok(Prepared::new(kind, ring, 1)?.residual(ring, a))
}

/// Worst non-repairable point seen in a block of the enumeration.
#[derive(Clone, Copy, Debug, Default)]
struct Partial {
    worst: Option<(Val, u128)>,
}

impl Partial {
    /// Larger valuation wins, then the smaller index; associative and
    /// commutative, so the partition does not matter.
    fn merge(self, other: Partial) -> Partial {
        let worst = match (self.worst, other.worst) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }),
        };
        Partial { worst }
    }
}

fn scan(
    prep: &Prepared,
    space: &PointSpace,
    ring: &RingCtx,
    n: u32,
    lo: u128,
    hi: u128,
) -> Partial {
    let mut buf = vec![ring.zero(); space.nvars()];
    let mut worst: Option<(Val, u128)> = None;
    for idx in lo..hi {
        space.point(idx, &mut buf);
        let v = prep.residual(ring, &buf);
        if worst.is_some_and(|(w, _)| v <= w) {
            continue;
        }
        if !prep.repairable(ring, &buf, n) {
            worst = Some((v, idx));
        }
    }
    Partial { worst }
}

/// Computes `β_n` of the system by enumerating `(R/t^M)^N`.
pub fn oracle_beta(cfg: &OracleConfig, kind: &SystemKind) -> Result<OracleResult> {
    let start = Instant::now();
    cfg.validate()?;
    let ring = cfg.ring;
    kind.validate(&ring)?;
    let symmetric = cfg.symmetry && kind.is_homogeneous();
    let space = PointSpace::new(&ring, kind.nvars(), symmetric).map_err(|_| {
        ArtinError::BudgetExceeded {
            needed: u128::MAX,
            budget: cfg.budget,
        }
    })?;
    // the general kind enumerates the full space once more to collect solutions
    let needed = match kind {
        SystemKind::General(_) => space.len().saturating_mul(2),
        _ => space.len(),
    };
    if needed > cfg.budget as u128 {
        return Err(ArtinError::BudgetExceeded {
            needed,
            budget: cfg.budget,
        });
    }
    let prep = Prepared::new(kind, &ring, cfg.n)?;
    let chunks = space.len().div_ceil(CHUNK) as u64;
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c as u128 * CHUNK;
                let hi = (lo + CHUNK).min(space.len());
                scan(&prep, &space, &ring, cfg.n, lo, hi)
            })
            .reduce(Partial::default, Partial::merge)
    };
    let total = if cfg.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| ArtinError::InvalidInput(format!("thread pool: {e}")))?
            .install(run)
    };

    let (beta, counterexample) = match total.worst {
        None => (Some(1), None),
        Some((v, idx)) => {
            let mut buf = vec![ring.zero(); space.nvars()];
            space.point(idx, &mut buf);
            let beta = if v.is_top() {
                None
            } else {
                Some(v.value() + 1)
            };
            (beta.filter(|b| *b <= cfg.beta_max), Some(buf))
        }
    };
    Ok(OracleResult {
        beta,
        counterexample,
        points_examined: space.len() as u64,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub stable: bool,
    pub beta: Option<u32>,
    pub beta_next: Option<u32>,
}

/// Reruns the oracle at precision `M + 1` and compares.
pub fn stability_check(cfg: &OracleConfig, kind: &SystemKind) -> Result<Stability> {
    let base = oracle_beta(cfg, kind)?;
    let ring = cfg.ring.with_precision(cfg.ring.prec() + 1)?;
    let next_cfg = OracleConfig {
        ring,
        ..cfg.clone()
    };
    let next = oracle_beta(&next_cfg, &kind.at(&ring)?)?;
    Ok(Stability {
        stable: base.beta == next.beta,
        beta: base.beta,
        beta_next: next.beta,
    })
}
