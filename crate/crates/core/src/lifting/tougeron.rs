use super::snf::solve_exact;
use super::{stall_limit, LiftReport};
use crate::error::{ArtinError, Result};
use crate::poly::jacobian::{contributing_subsets, subset_contribution};
use crate::poly::{elkik_value, ColonData, PolySystem};
use crate::ring::Elem;

/// Lifts `a` with `f(a) ≡ 0 mod t^n`, `n ≥ 2h + 1`, and `H_f(a) ⊇ (t^h)`
/// to an exact zero `b ≡ a mod t^{n-h}`.
///
/// Newton steps run on the equations of the subset that certifies the
/// bound on `H_f(a)`, solving `J_S(b) Δ = f_S(b)` through Smith normal
/// form. A subset other than the full one is only usable when its colon
/// data is right, since the remaining equations must then vanish too; if
/// they do not, the lift reports `NoProgress`.
pub fn tougeron_lift(
    sys: &PolySystem,
    a: &[Elem],
    h: u32,
    colon: Option<&ColonData>,
) -> Result<LiftReport> {
    let ring = sys.ring();
    let (_, n) = sys.evaluate(a)?;
    if n.is_top() {
        return Ok(LiftReport::new(ring, a, a.to_vec(), vec![n.val()]));
    }
    let cert = elkik_value(sys, a, colon)?;
    if cert.value() > h || cert.is_top() {
        return Err(ArtinError::HypothesisNotMet(format!(
            "ord H_f(a) = {cert} exceeds h = {h}"
        )));
    }
    if n.value() < 2 * h + 1 {
        return Err(ArtinError::HypothesisNotMet(format!(
            "ord f(a) = {} is below 2h+1 = {}",
            n,
            2 * h + 1
        )));
    }

    let jac = sys.jacobian_at(a)?;
    let mut chosen: Option<(Vec<usize>, crate::poly::IdealVal)> = None;
    for s in contributing_subsets(sys, colon)? {
        let c = subset_contribution(sys, &s, colon, &jac, a)?;
        if chosen.as_ref().is_none_or(|(_, best)| c < *best) {
            chosen = Some((s, c));
        }
    }
    let (subset, _) = chosen.expect("the full subset always contributes");
    let sub = sys.subsystem(&subset);

    let mut b = a.to_vec();
    let mut vals = vec![n.val()];
    let mut stalls = 0;
    loop {
        let (fs, vs) = sub.evaluate(&b)?;
        let v = sys.residual_val(&b)?;
        if v.is_top() {
            break;
        }
        if vs.is_top() {
            return Err(ArtinError::NoProgress(v.value()));
        }
        let j = sub.jacobian_at(&b)?;
        let delta = solve_exact(ring, &j, &fs).ok_or(ArtinError::NoProgress(v.value()))?;
        for (x, d) in b.iter_mut().zip(&delta) {
            *x = ring.sub(*x, *d);
        }
        let next = sys.residual_val(&b)?;
        if next <= v {
            stalls += 1;
            if stalls >= stall_limit(ring.prec()) {
                return Err(ArtinError::NoProgress(v.value()));
            }
        }
        vals.push(next.val());
    }
    Ok(LiftReport::new(ring, a, b, vals))
}
