use super::{stall_limit, LiftReport};
use crate::error::{ArtinError, Result};
use crate::poly::PolySystem;
use crate::ring::Elem;

/// Newton iteration `b ← b - J(b)^{-1} f(b)` for a square system whose
/// Jacobian determinant is a unit at `a`. The residual valuation at least
/// doubles each step; stops once it reaches `target` (at most `M`).
pub fn hensel_lift(sys: &PolySystem, a: &[Elem], target: u32) -> Result<LiftReport> {
    let ring = sys.ring();
    if sys.len() != sys.nvars() {
        return Err(ArtinError::InvalidInput(format!(
            "Hensel lifting needs a square system, got {} equations in {} variables",
            sys.len(),
            sys.nvars()
        )));
    }
    if target == 0 || target > ring.prec() {
        return Err(ArtinError::OutOfRange {
            what: "target precision",
            detail: format!("{target} not in 1..={}", ring.prec()),
        });
    }
    let (_, v0) = sys.evaluate(a)?;
    if v0.value() < 1 {
        return Err(ArtinError::HypothesisNotMet(
            "f(a) is not in the maximal ideal".into(),
        ));
    }
    let det = sys.jacobian_at(a)?.det(ring)?;
    if !ring.is_unit(det) {
        return Err(ArtinError::JacobianNotUnit(ring.val(det).value()));
    }

    let mut b = a.to_vec();
    let mut vals = vec![v0.val()];
    let mut stalls = 0;
    loop {
        let (fb, v) = sys.evaluate(&b)?;
        if v.value() >= target {
            break;
        }
        let jinv = sys.jacobian_at(&b)?.inverse(ring)?;
        let delta = jinv.mul_vec(ring, &fb)?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;
    use crate::ring::RingCtx;

    #[test]
    fn square_root_of_two_mod_7() {
        let r = RingCtx::padic(7, 8).unwrap();
        let sys = parse_system(&r, "X1^2 - 2").unwrap();
        let rep = hensel_lift(&sys, &[r.from_int(3)], 8).unwrap();
        assert!(sys.residual_val(&rep.result).unwrap().is_top());
        assert!(r.congruent(rep.result[0], r.from_int(3), 1));
        let vals: Vec<u32> = rep.residual_vals.iter().map(|v| v.value()).collect();
        for w in vals.windows(2) {
            assert!(w[1] >= (2 * w[0]).min(8), "{vals:?}");
        }
    }

    #[test]
    fn preconditions() {
        let r = RingCtx::tseries(3, 6).unwrap();
        let sys = parse_system(&r, "X1^2 - t").unwrap();
        // J = 2X1 is t at a = t
        assert!(matches!(
            hensel_lift(&sys, &[r.uniformizer()], 6),
            Err(ArtinError::HypothesisNotMet(_)) | Err(ArtinError::JacobianNotUnit(_))
        ));
        let sys = parse_system(&r, "X1^2 - 1 - t").unwrap();
        assert!(hensel_lift(&sys, &[r.from_int(2)], 6).is_ok());
        assert!(matches!(
            hensel_lift(&sys, &[r.zero()], 6),
            Err(ArtinError::HypothesisNotMet(_))
        ));
        let sys = parse_system(&r, "X1*X2").unwrap();
        assert!(hensel_lift(&sys, &[r.one(), r.zero()], 6).is_err());
    }
}
