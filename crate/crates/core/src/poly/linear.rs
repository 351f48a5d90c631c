//! Linear systems: matrix extraction and the homogenization `g_i = c_i·X + d_i Y`.

use super::{Block, ExpVec, Poly, PolySystem, Var};
use crate::error::{ArtinError, Result};
use crate::matrix::MatrixR;
use crate::ring::{Elem, RingCtx};

/// For a system of degree ≤ 1, returns `(A, d)` with `f = A X - d`.
pub fn linear_parts(sys: &PolySystem) -> Result<(MatrixR, Vec<Elem>)> {
    let ring = sys.ring();
    let n = sys.nvars();
    let mut a = MatrixR::zeros(sys.len(), n);
    let mut d = Vec::with_capacity(sys.len());
    for (i, f) in sys.polys().iter().enumerate() {
        if f.degree().unwrap_or(0) > 1 {
            return Err(ArtinError::InvalidInput(format!(
                "equation {} is not linear",
                i + 1
            )));
        }
        for j in 0..n {
            a.set(i, j, f.coeff(&ExpVec::unit(n, j)));
        }
        d.push(ring.neg(f.coeff(&ExpVec::zero(n))));
    }
    Ok((a, d))
}

/// `g_i = c_i1 X_1 + .. + c_iN X_N + e_i Y1`, where `e_i` is the constant
/// term of `f_i`; `Y1` is appended as the last variable.
pub fn homogenize_linear(sys: &PolySystem) -> Result<PolySystem> {
    let ring = sys.ring();
    let y = Var::new(Block::Y, 1);
    if sys.var_index(&y).is_some() {
        return Err(ArtinError::VariableCollision("Y1 already used".into()));
    }
    let (a, d) = linear_parts(sys)?;
    let n = sys.nvars();
    let mut vars = sys.vars().to_vec();
    vars.push(y);
    let polys = (0..sys.len())
        .map(|i| {
            let terms = (0..n)
                .map(|j| (ExpVec::unit(n + 1, j), a.get(i, j)))
                .chain(std::iter::once((ExpVec::unit(n + 1, n), ring.neg(d[i]))));
            Poly::from_terms(ring, n + 1, terms)
        })
        .collect();
    PolySystem::new(*ring, vars, polys)
}

/// Maps a zero `(x, u)` of the homogenized system with `u` a unit back to
/// the zero `u^{-1} x` of the original system.
pub fn dehomogenize(ring: &RingCtx, point: &[Elem]) -> Result<Vec<Elem>> {
    let (u, x) = point.split_last().ok_or(ArtinError::ArityMismatch {
        expected: 1,
        got: 0,
    })?;
    let inv = ring.invert_unit(*u)?;
    Ok(x.iter().map(|v| ring.mul(*v, inv)).collect())
}
