//! Self-checking suites: closed forms against the oracle, repairs,
//! witnesses, lifting, linear approximation and enlarged systems. Each
//! suite is deterministic for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::determinantal::{self, beta_det};
use crate::error::{ArtinError, Result};
use crate::lifting::{hensel_lift, linear_offset, solve_linear_approx, tougeron_lift};
use crate::matrix::MatrixR;
use crate::monomial::MonomialIdeal;
use crate::oracle::{exactness_predicate, oracle_beta, OracleConfig, SystemKind};
use crate::poly::{
    elkik_generators, elkik_value, enlarge_system, Block, ExpVec, Poly, PolySystem, Var,
};
use crate::ring::{Elem, RingCtx};

pub const SUITES: [&str; 6] = [
    "formulas",
    "repairs",
    "witnesses",
    "lifting",
    "linear",
    "enlarge",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.cases.push(CaseResult {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "failed": self.cases.len() - self.passed(),
            "cases": self.cases.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "formulas" => formulas(&mut rng),
        "repairs" => repairs(&mut rng),
        "witnesses" => witnesses(&mut rng),
        "lifting" => lifting(&mut rng),
        "linear" => linear(&mut rng),
        "enlarge" => enlarge(&mut rng),
        other => Err(ArtinError::UnknownSuite(other.to_string())),
    }
}

/// A monomial ideal with up to `max_vars` variables, `max_gens`
/// generators and total degrees up to `max_deg`.
pub fn random_monomial_ideal<R: Rng + ?Sized>(
    rng: &mut R,
    max_vars: usize,
    max_gens: usize,
    max_deg: u32,
) -> MonomialIdeal {
    let nvars = rng.random_range(1..=max_vars);
    let k = rng.random_range(1..=max_gens);
    let alphas = (0..k)
        .map(|_| {
            let deg = rng.random_range(1..=max_deg);
            let mut e = vec![0u32; nvars];
            for _ in 0..deg {
                e[rng.random_range(0..nvars)] += 1;
            }
            e
        })
        .collect();
    MonomialIdeal::new(alphas).expect("nonzero exponents")
}

/// A point with `ord I(a) ≥ order`: random valuations by rejection, or
/// else a random hitting set pushed to valuation `order`.
pub fn random_monomial_point<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
    ideal: &MonomialIdeal,
    order: u32,
) -> Vec<Elem> {
    let m = ring.prec();
    for _ in 0..20 {
        let a: Vec<Elem> = (0..ideal.nvars())
            .map(|_| {
                let v = rng.random_range(0..=m);
                ring.random_in_ideal(rng, v)
            })
            .collect();
        if ideal.eval_val(ring, &a).expect("arity").value() >= order {
            return a;
        }
    }
    let mut a: Vec<Elem> = (0..ideal.nvars()).map(|_| ring.random(rng)).collect();
    for alpha in ideal.alphas() {
        let support = alpha.support();
        let j = support[rng.random_range(0..support.len())];
        a[j] = ring.random_in_ideal(rng, order);
    }
    a
}

/// `U V + t^order E` with `U` of width `r - 1`, so `ord I_r ≥ order`.
pub fn random_det_point<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
    k: usize,
    l: usize,
    r: usize,
    order: u32,
) -> MatrixR {
    let mut rand_matrix = |rows: usize, cols: usize, v: u32| {
        let data = (0..rows * cols)
            .map(|_| ring.random_in_ideal(rng, v))
            .collect();
        MatrixR::new(rows, cols, data).expect("shape")
    };
    let u = rand_matrix(k, r - 1, 0);
    let w = rand_matrix(r - 1, l, 0);
    let e = rand_matrix(k, l, order);
    let prod = if r == 1 {
        MatrixR::zeros(k, l)
    } else {
        u.mul(ring, &w).expect("shape")
    };
    let data = prod
        .data()
        .iter()
        .zip(e.data())
        .map(|(x, y)| ring.add(*x, *y))
        .collect();
    MatrixR::new(k, l, data).expect("shape")
}

/// A square system `A (X - b) + Q(X - b)` with `det A` a unit and `Q`
/// quadratic, together with its root `b`.
pub fn unit_jacobian_system<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
    nvars: usize,
) -> (PolySystem, Vec<Elem>) {
    let a = loop {
        let data = (0..nvars * nvars).map(|_| ring.random(rng)).collect();
        let a = MatrixR::new(nvars, nvars, data).expect("shape");
        if ring.is_unit(a.det(ring).expect("square")) {
            break a;
        }
    };
    let root: Vec<Elem> = (0..nvars).map(|_| ring.random(rng)).collect();
    let shifted: Vec<Poly> = (0..nvars)
        .map(|j| Poly::var(ring, nvars, j).sub(ring, &Poly::constant(nvars, root[j])))
        .collect();
    let polys = (0..nvars)
        .map(|i| {
            let mut f = Poly::zero(nvars);
            for j in 0..nvars {
                f = f.add(ring, &shifted[j].scale(ring, a.get(i, j)));
                for k in j..nvars {
                    if rng.random_bool(0.5) {
                        f = f.add(
                            ring,
                            &shifted[j]
                                .mul(ring, &shifted[k])
                                .scale(ring, ring.random(rng)),
                        );
                    }
                }
            }
            f
        })
        .collect();
    (
        PolySystem::in_x(*ring, nvars, polys).expect("valid system"),
        root,
    )
}

fn formulas(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("formulas");
    let ring = RingCtx::tseries(2, 6)?;
    let mut ideals = vec![
        MonomialIdeal::parse_compact("(1,1)")?,
        MonomialIdeal::parse_compact("(1,1,0);(1,0,0);(0,0,1)")?,
    ];
    ideals.extend((0..8).map(|_| random_monomial_ideal(rng, 3, 3, 3)));
    for ideal in &ideals {
        for n in 1..=2 {
            let formula = ideal.beta().eval(n);
            let got = oracle_beta(
                &OracleConfig::new(ring, n),
                &SystemKind::Monomial(ideal.clone()),
            )?
            .beta;
            rep.push(
                format!("mono {} n={n}", ideal.to_compact()),
                got == Some(formula),
                format!("formula {formula}, oracle {}", fmt_beta(got)),
            );
        }
    }
    let ring = RingCtx::tseries(2, 5)?;
    for n in 1..=2 {
        let formula = beta_det(2, n);
        let kind = SystemKind::Determinantal { k: 2, l: 2, r: 2 };
        let got = oracle_beta(&OracleConfig::new(ring, n), &kind)?.beta;
        rep.push(
            format!("det 2x2 r=2 n={n}"),
            got == Some(formula),
            format!("formula {formula}, oracle {}", fmt_beta(got)),
        );
    }
    Ok(rep)
}

fn fmt_beta(b: Option<u32>) -> String {
    b.map_or_else(|| "NOT_FOUND".to_string(), |b| b.to_string())
}

fn repairs(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("repairs");
    let rings = [RingCtx::tseries(3, 10)?, RingCtx::padic(2, 12)?];
    for (k, l, r) in [(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 3, 3)] {
        let mut ok = 0;
        let total = 250;
        for i in 0..total {
            let ring = rings[i % 2];
            let n = rng.random_range(1..=3);
            let a = random_det_point(&ring, rng, k, l, r, beta_det(r as u32, n));
            if determinantal::repair_determinantal(&ring, &a, r, n)?.verify(&ring, &a, r, n) {
                ok += 1;
            }
        }
        rep.push(
            format!("det {k}x{l} r={r}"),
            ok == total,
            format!("{ok}/{total}"),
        );
    }
    let mut ok = 0;
    let total = 1000;
    for i in 0..total {
        let ring = rings[i % 2];
        let ideal = random_monomial_ideal(rng, 4, 3, 3);
        let n = rng.random_range(1..=2);
        let a = random_monomial_point(&ring, rng, &ideal, ideal.beta().eval(n));
        if ideal.repair(&ring, &a, n)?.verify(&ideal, &ring, &a, n) {
            ok += 1;
        }
    }
    rep.push("monomial", ok == total, format!("{ok}/{total}"));
    Ok(rep)
}

fn witnesses(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("witnesses");
    let ring = RingCtx::tseries(2, 10)?;
    for r in 1..=3usize {
        for n in 1..=3 {
            for (k, l) in [(r, r), (r, r + 1), (r + 1, r)] {
                let w = determinantal::witness_det(&ring, k, l, r, n)?;
                let order = w.minor_ideal_val(&ring, r)?;
                let expect = beta_det(r as u32, n) - 1;
                let pass =
                    order.value() == expect && determinantal::obstruction_holds(&ring, &w, r, n);
                rep.push(
                    format!("det {k}x{l} r={r} n={n}"),
                    pass,
                    format!("order {order}, expected {expect}"),
                );
            }
        }
    }
    let ring = RingCtx::tseries(2, 8)?;
    for _ in 0..20 {
        let ideal = random_monomial_ideal(rng, 3, 3, 3);
        for n in 1..=2 {
            let w = ideal.witness(&ring, n)?;
            let order = ideal.eval_val(&ring, &w)?;
            let expect = ideal.beta().eval(n) - 1;
            let kind = SystemKind::Monomial(ideal.clone());
            let pass = order.value() == expect && !exactness_predicate(&kind, &ring, &w, n)?;
            rep.push(
                format!("mono {} n={n}", ideal.to_compact()),
                pass,
                format!("order {order}, expected {expect}"),
            );
        }
    }
    Ok(rep)
}

fn lifting(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lifting");
    for ring in [RingCtx::tseries(3, 32)?, RingCtx::padic(5, 20)?] {
        let (mut ok, total) = (0, 100);
        for _ in 0..total {
            let nvars = rng.random_range(1..=3);
            let (sys, root) = unit_jacobian_system(&ring, rng, nvars);
            let a: Vec<Elem> = root
                .iter()
                .map(|x| ring.add(*x, ring.random_in_ideal(rng, 1)))
                .collect();
            let report = hensel_lift(&sys, &a, ring.prec())?;
            let doubling = report
                .residual_vals
                .windows(2)
                .all(|w| w[1].is_top() || w[1].value() >= 2 * w[0].value());
            if doubling && report.residual_vals.last().is_some_and(|v| v.is_top()) {
                ok += 1;
            }
        }
        rep.push(
            format!("hensel over {ring}"),
            ok == total,
            format!("{ok}/{total}"),
        );
    }
    let ring = RingCtx::tseries(3, 24)?;
    let (mut ok, total) = (0, 50);
    for _ in 0..total {
        let m = rng.random_range(0..=3u32);
        let h = m + rng.random_range(0..=2);
        let sys = square_minus(&ring, 2 * m);
        let k = 2 * h + 1 - m + rng.random_range(0..=2);
        let sign = if rng.random_bool(0.5) {
            ring.one()
        } else {
            ring.neg(ring.one())
        };
        let a = ring.add(ring.mul(sign, ring.t_pow(m)), ring.random_in_ideal(rng, k));
        let start = sys.residual_val(&[a])?;
        let report = tougeron_lift(&sys, &[a], h, None)?;
        let loss_ok = report.congruence_order.is_top()
            || report.congruence_order.value() + h >= start.value();
        if loss_ok && sys.residual_val(&report.result)?.is_top() {
            ok += 1;
        }
    }
    rep.push("tougeron X^2 - t^2m", ok == total, format!("{ok}/{total}"));
    Ok(rep)
}

/// `X1^2 - t^e` in one variable.
pub fn square_minus(ring: &RingCtx, e: u32) -> PolySystem {
    let x = Poly::var(ring, 1, 0);
    let f = x.mul(ring, &x).sub(ring, &Poly::constant(1, ring.t_pow(e)));
    PolySystem::in_x(*ring, 1, vec![f]).expect("valid system")
}

/// Random matrix whose entries are zero or of valuation at most `max_val`.
pub fn random_low_val_matrix<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
    k: usize,
    n: usize,
    max_val: u32,
) -> MatrixR {
    let data = (0..k * n)
        .map(|_| {
            if rng.random_bool(0.2) {
                ring.zero()
            } else {
                let v = rng.random_range(0..=max_val);
                ring.random_with_val(rng, v)
            }
        })
        .collect();
    MatrixR::new(k, n, data).expect("shape")
}

fn linear(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("linear");
    let ring = RingCtx::tseries(3, 9)?;
    let (mut ok, total) = (0, 100);
    for _ in 0..total {
        let (k, nv) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let a = random_low_val_matrix(&ring, rng, k, nv, 2);
        let c = linear_offset(&ring, &a);
        let n = rng.random_range(1..=(ring.prec() - c).min(3));
        let x0: Vec<Elem> = (0..nv).map(|_| ring.random(rng)).collect();
        let d = a.mul_vec(&ring, &x0)?;
        let approx: Vec<Elem> = x0
            .iter()
            .map(|x| ring.add(*x, ring.random_in_ideal(rng, n + c)))
            .collect();
        let sol = solve_linear_approx(&ring, &a, &d, &approx, n)?;
        let exact = a.mul_vec(&ring, &sol.point)? == d;
        let close = sol
            .point
            .iter()
            .zip(&approx)
            .all(|(x, y)| ring.congruent(*x, *y, n));
        if exact && close && sol.offset == c {
            ok += 1;
        }
    }
    rep.push("random systems", ok == total, format!("{ok}/{total}"));
    let small = RingCtx::tseries(3, 5)?;
    for c in 1..=2 {
        for n in 1..=2 {
            let a = MatrixR::diagonal(2, 2, &[small.one(), small.t_pow(c)]);
            let point = [small.zero(), small.t_pow(n - 1)];
            let kind = SystemKind::Linear {
                a: a.clone(),
                d: vec![small.zero(); 2],
            };
            let order = a
                .mul_vec(&small, &point)?
                .iter()
                .map(|x| small.val(*x))
                .min()
                .expect("two rows");
            let stuck = !exactness_predicate(&kind, &small, &point, n)?;
            let beta = oracle_beta(&OracleConfig::new(small, n), &kind)?.beta;
            let pass = order.value() == n + c - 1 && stuck && beta == Some(n + c);
            rep.push(
                format!("diag(1, t^{c}) n={n}"),
                pass,
                format!("order {order}, oracle {}", fmt_beta(beta)),
            );
        }
    }
    Ok(rep)
}

/// A random polynomial in `nvars` variables with up to `terms` terms of
/// degree at most `deg`.
pub fn random_poly<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
    nvars: usize,
    terms: usize,
    deg: u32,
) -> Poly {
    let terms = (0..terms).map(|_| {
        let mut e = vec![0u32; nvars];
        for _ in 0..rng.random_range(0..=deg) {
            e[rng.random_range(0..nvars)] += 1;
        }
        (ExpVec::new(e), ring.random(rng))
    });
    Poly::from_terms(ring, nvars, terms.collect::<Vec<_>>())
}

/// One sample of the enlarged-system comparison: returns the Elkik
/// values of `f` at `a` and of the enlarged system at `(a, y, z)`.
pub fn enlarge_sample<R: Rng + ?Sized>(
    ring: &RingCtx,
    rng: &mut R,
) -> Result<(crate::poly::IdealVal, crate::poly::IdealVal)> {
    let nvars = rng.random_range(1..=3);
    let neq = rng.random_range(1..=nvars.min(2));
    let polys = (0..neq)
        .map(|_| random_poly(ring, rng, nvars, 3, 2))
        .collect();
    let f = PolySystem::in_x(*ring, nvars, polys)?;
    let gens = elkik_generators(&f, None)?;
    let nz = rng.random_range(0..=2u32);
    let mut h_vars: Vec<Var> = f.vars().to_vec();
    h_vars.extend((1..=nz).map(|i| Var::new(Block::Z, i)));
    let h = random_poly(ring, rng, h_vars.len(), 3, 2);
    let big = enlarge_system(&f, &h, &h_vars, &gens)?;
    let point: Vec<Elem> = (0..big.nvars()).map(|_| ring.random(rng)).collect();
    let small = elkik_value(&f, &point[..nvars], None)?;
    let large = elkik_value(&big, &point, None)?;
    Ok((small, large))
}

fn enlarge(rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("enlarge");
    for ring in [RingCtx::tseries(2, 8)?, RingCtx::padic(3, 6)?] {
        let (mut ok, total) = (0, 100);
        for _ in 0..total {
            let (small, large) = enlarge_sample(&ring, rng)?;
            if small.is_top() || (large.value() as u64) <= 2 * small.value() as u64 {
                ok += 1;
            }
        }
        rep.push(
            format!("containment over {ring}"),
            ok == total,
            format!("{ok}/{total}"),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", 0),
            Err(ArtinError::UnknownSuite(_))
        ));
    }

    #[test]
    fn quick_suites_pass() {
        for name in SUITES {
            let rep = run_suite(name, 7).unwrap();
            assert!(
                rep.all_passed(),
                "{:?}",
                rep.cases.iter().filter(|c| !c.pass).collect::<Vec<_>>()
            );
        }
    }
}
