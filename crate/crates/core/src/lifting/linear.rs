use super::snf::{smith_normal_form, Snf};
use crate::error::{ArtinError, Result};
use crate::matrix::MatrixR;
use crate::ring::{Elem, RingCtx};

/// Largest valuation of a nonzero Smith divisor of `A` (0 if none). Any
/// `a` with `A a ≡ d mod t^{n+c}` lies within `t^n` of an exact solution.
pub fn linear_offset(ring: &RingCtx, a: &MatrixR) -> u32 {
    smith_normal_form(ring, a).max_finite_val()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub point: Vec<Elem>,
    pub offset: u32,
}

/// Given `approx` with `A·approx ≡ d mod t^{n+c}`, `c` the linear offset,
/// returns an exact solution `b ≡ approx mod t^n`.
pub fn solve_linear_approx(
    ring: &RingCtx,
    a: &MatrixR,
    d: &[Elem],
    approx: &[Elem],
    n: u32,
) -> Result<LinearSolution> {
    if d.len() != a.rows() {
        return Err(ArtinError::ArityMismatch {
            expected: a.rows(),
            got: d.len(),
        });
    }
    if approx.len() != a.cols() {
        return Err(ArtinError::ArityMismatch {
            expected: a.cols(),
            got: approx.len(),
        });
    }
    let snf = smith_normal_form(ring, a);
    let c = snf.max_finite_val();
    if n + c > ring.prec() {
        return Err(ArtinError::PrecisionExhausted(format!(
            "n + c = {} exceeds the working precision {}",
            n + c,
            ring.prec()
        )));
    }
    let ax = a.mul_vec(ring, approx)?;
    let r: Vec<Elem> = d.iter().zip(&ax).map(|(x, y)| ring.sub(*x, *y)).collect();
    let rv = r.iter().map(|x| ring.val(*x)).min().unwrap_or(ring.top());
    if rv.value() < n + c {
        return Err(ArtinError::HypothesisNotMet(format!(
            "residual valuation {rv} is below n + c = {}",
            n + c
        )));
    }
    let delta = correction(ring, &snf, &r)?;
    let point: Vec<Elem> = approx
        .iter()
        .zip(&delta)
        .map(|(x, y)| ring.add(*x, *y))
        .collect();
    debug_assert!(point
        .iter()
        .zip(approx)
        .all(|(x, y)| ring.congruent(*x, *y, n)));
    Ok(LinearSolution { point, offset: c })
}

fn correction(ring: &RingCtx, snf: &Snf, r: &[Elem]) -> Result<Vec<Elem>> {
    super::snf::solve_with(ring, snf, r)
        .ok_or_else(|| ArtinError::NoSolution("the residual is not in the image of A".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let a = MatrixR::parse(&r, "[[t^2,0];[0,t]]").unwrap();
        assert_eq!(linear_offset(&r, &a), 2);
        assert_eq!(linear_offset(&r, &MatrixR::zeros(2, 2)), 0);
    }

    #[test]
    fn approximate_solution_is_repaired() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let a = MatrixR::parse(&r, "[[t^2,t^3]]").unwrap();
        // d = t^2, approx = 1 + t^3: A·approx = t^2 + t^5, residual t^5, n + c = 3 + 2
        let d = [r.t_pow(2)];
        let approx = [r.add(r.one(), r.t_pow(3)), r.zero()];
        let sol = solve_linear_approx(&r, &a, &d, &approx, 3).unwrap();
        assert_eq!(sol.offset, 2);
        assert_eq!(a.mul_vec(&r, &sol.point).unwrap(), d);
        assert!(r.congruent(sol.point[0], approx[0], 3));
        assert!(matches!(
            solve_linear_approx(&r, &a, &d, &approx, 4),
            Err(ArtinError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn inconsistent_zero_rows() {
        let r = RingCtx::padic(3, 4).unwrap();
        let a = MatrixR::parse(&r, "[[1];[1]]").unwrap();
        // x = 1 and x = 1 + 27: residual (0, 27) has valuation 3 but no exact solution
        let d = [r.from_int(1), r.from_int(28)];
        assert!(matches!(
            solve_linear_approx(&r, &a, &d, &[r.one()], 3),
            Err(ArtinError::NoSolution(_))
        ));
    }
}
