//! Jacobian minors and the Elkik ideal `H_f`.
//!
//! For a subset `S` of the equations, `Δ_S` is the ideal of `|S|`-minors of
//! the Jacobian rows in `S`, and `H_f = Σ_S Δ_S · ((f_S) : (f))`. The colon
//! ideals are not computed here: the caller supplies generators for the
//! subsets it wants counted. The full subset always contributes with colon
//! ideal `(1)`; a subset without data contributes nothing.

use std::collections::BTreeMap;

use super::{IdealVal, Poly, PolySystem};
use crate::error::{ArtinError, Result};
use crate::matrix::{combinations, MatrixR};
use crate::ring::{Elem, RingCtx};

/// Colon-ideal generators keyed by equation subset (0-based, increasing).
pub type ColonData = BTreeMap<Vec<usize>, Vec<Poly>>;

fn check_subset(sys: &PolySystem, rows: &[usize]) -> Result<()> {
    if rows.is_empty() {
        return Err(ArtinError::BadSubset("empty subset".into()));
    }
    if rows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ArtinError::BadSubset(format!(
            "{rows:?} is not strictly increasing"
        )));
    }
    if let Some(&last) = rows.last() {
        if last >= sys.len() {
            return Err(ArtinError::BadSubset(format!(
                "index {last} out of range for {} equations",
                sys.len()
            )));
        }
    }
    Ok(())
}

/// Valuation of the ideal of `|rows|`-minors of the Jacobian rows `rows`
/// at `a` (`⊤` when there are more rows than variables).
pub fn jacobian_minor_val(sys: &PolySystem, rows: &[usize], a: &[Elem]) -> Result<IdealVal> {
    check_subset(sys, rows)?;
    let j = sys.jacobian_at(a)?;
    let all: Vec<usize> = (0..sys.nvars()).collect();
    let sub = j.submatrix(rows, &all);
    Ok(IdealVal(sub.minor_ideal_val(sys.ring(), rows.len())?))
}

fn validate_colon(sys: &PolySystem, colon: &ColonData) -> Result<()> {
    for (s, gens) in colon {
        check_subset(sys, s).map_err(|e| ArtinError::MalformedColonData(e.to_string()))?;
        if s.len() == sys.len() {
            return Err(ArtinError::MalformedColonData(
                "the full subset always has colon ideal (1)".into(),
            ));
        }
        if let Some(g) = gens.iter().find(|g| g.nvars() != sys.nvars()) {
            return Err(ArtinError::MalformedColonData(format!(
                "generator in {} variables, system has {}",
                g.nvars(),
                sys.nvars()
            )));
        }
    }
    Ok(())
}

/// Subsets that contribute to `H_f`: the full subset first, then every
/// subset with colon data, in key order.
pub fn contributing_subsets(
    sys: &PolySystem,
    colon: Option<&ColonData>,
) -> Result<Vec<Vec<usize>>> {
    let mut out = vec![(0..sys.len()).collect::<Vec<_>>()];
    if let Some(c) = colon {
        validate_colon(sys, c)?;
        out.extend(c.keys().cloned());
    }
    Ok(out)
}

/// Valuation of the contribution `Δ_S(a) · colon_S(a)` of one subset.
pub fn subset_contribution(
    sys: &PolySystem,
    subset: &[usize],
    colon: Option<&ColonData>,
    jac: &MatrixR,
    a: &[Elem],
) -> Result<IdealVal> {
    let ring = sys.ring();
    if subset.len() > sys.nvars() {
        return Ok(IdealVal(ring.top()));
    }
    let all: Vec<usize> = (0..sys.nvars()).collect();
    let delta = IdealVal(
        jac.submatrix(subset, &all)
            .minor_ideal_val(ring, subset.len())?,
    );
    if subset.len() == sys.len() {
        return Ok(delta);
    }
    let gens = colon
        .and_then(|c| c.get(subset))
        .map(Vec::as_slice)
        .unwrap_or(&[]);
    let q = IdealVal::of(ring, gens.iter().map(|g| g.eval(ring, a)));
    Ok(delta.product(q))
}

/// `ord H_f(a)`, the valuation of the Elkik ideal at `a`.
pub fn elkik_value(sys: &PolySystem, a: &[Elem], colon: Option<&ColonData>) -> Result<IdealVal> {
    let subsets = contributing_subsets(sys, colon)?;
    if sys.is_empty() {
        return Ok(IdealVal(sys.ring().val_of(0)));
    }
    let jac = sys.jacobian_at(a)?;
    let mut best = IdealVal(sys.ring().top());
    for s in &subsets {
        best = best.min(subset_contribution(sys, s, colon, &jac, a)?);
    }
    Ok(best)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn poly_det(ring: &RingCtx, m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(nvars, ring.one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].mul(ring, &poly_det(ring, &minor, nvars));
        acc = if c % 2 == 0 {
            acc.add(ring, &term)
        } else {
            acc.sub(ring, &term)
        };
    }
    acc
}

/// Generators of `H_f` as polynomials: products of each maximal minor of
/// a contributing subset with each colon generator.
pub fn elkik_generators(sys: &PolySystem, colon: Option<&ColonData>) -> Result<Vec<Poly>> {
    let ring = sys.ring();
    let n = sys.nvars();
    let jac = sys.jacobian();
    let mut out = Vec::new();
    if sys.is_empty() {
        return Ok(vec![Poly::constant(n, ring.one())]);
    }
    for s in contributing_subsets(sys, colon)? {
        let p = s.len();
        if p > n {
            continue;
        }
        let full = p == sys.len();
        let gens: Vec<Poly> = if full {
            vec![Poly::constant(n, ring.one())]
        } else {
            colon.and_then(|c| c.get(&s)).cloned().unwrap_or_default()
        };
        for cols in combinations(n, p) {
            let m: Vec<Vec<Poly>> = s
                .iter()
                .map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect())
                .collect();
            let d = poly_det(ring, &m, n);
            if d.is_zero() {
                continue;
            }
            for g in &gens {
                let prod = d.mul(ring, g);
                if !prod.is_zero() {
                    out.push(prod);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;

    #[test]
    fn minor_values() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let sys = parse_system(&r, "X1*X2\nX1 + X2^2").unwrap();
        let t = r.uniformizer();
        let a = [t, r.t_pow(2)];
        // J = [[X2, X1], [1, 2 X2]] = [[t^2, t], [1, 0]]
        assert_eq!(jacobian_minor_val(&sys, &[0], &a).unwrap().value(), 1);
        assert_eq!(jacobian_minor_val(&sys, &[1], &a).unwrap().value(), 0);
        assert_eq!(jacobian_minor_val(&sys, &[0, 1], &a).unwrap().value(), 1);
        assert!(jacobian_minor_val(&sys, &[1, 0], &a).is_err());
        assert!(jacobian_minor_val(&sys, &[2], &a).is_err());
        assert!(jacobian_minor_val(&sys, &[], &a).is_err());
    }

    #[test]
    fn elkik_with_and_without_colon_data() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let sys = parse_system(&r, "X1^2\nX1*X2").unwrap();
        let a = [r.t_pow(2), r.t_pow(3)];
        // full 2x2 minor of [[0, 0], [X2, X1]] vanishes identically
        assert!(elkik_value(&sys, &a, None).unwrap().is_top());
        let mut colon = ColonData::new();
        colon.insert(
            vec![1],
            vec![parse_system(&r, "X1").unwrap().polys()[0]
                .clone()
                .remap(&[0], 2)],
        );
        // Δ_{2} = (X2, X1) -> t^2, times X1 -> t^2
        assert_eq!(elkik_value(&sys, &a, Some(&colon)).unwrap().value(), 4);

        let mut bad = ColonData::new();
        bad.insert(vec![0, 1], vec![]);
        assert!(matches!(
            elkik_value(&sys, &a, Some(&bad)),
            Err(ArtinError::MalformedColonData(_))
        ));
        let mut bad = ColonData::new();
        bad.insert(vec![5], vec![]);
        assert!(matches!(
            elkik_value(&sys, &a, Some(&bad)),
            Err(ArtinError::MalformedColonData(_))
        ));
    }

    #[test]
    fn symbolic_generators_agree_with_numeric_value() {
        let r = RingCtx::padic(3, 6).unwrap();
        let sys = parse_system(&r, "X1^2 - X2^3 + 3\nX1*X2 - 9").unwrap();
        let gens = elkik_generators(&sys, None).unwrap();
        for a in [
            [r.from_int(3), r.from_int(1)],
            [r.from_int(4), r.from_int(6)],
            [r.from_int(9), r.from_int(27)],
        ] {
            let symbolic = IdealVal::of(&r, gens.iter().map(|g| g.eval(&r, &a)));
            assert_eq!(symbolic, elkik_value(&sys, &a, None).unwrap());
        }
    }
}
