//! The enlarged system `(f, G)` with `G = h + Y_1 g_1 + .. + Y_M g_M`.

use super::{Block, Poly, PolySystem, Var};
use crate::error::{ArtinError, Result};

/// Builds `(f_1, .., f_r, G)` in the variables `X.., Y1..YM, Z..`, where
/// the `X` block is `f`'s variable list, `M = gens.len()` and the `Z` block
/// holds the `Z` variables of `h` in order. Points of the result are laid
/// out as `(a, y, z)`.
///
/// `gens` must be polynomials in `f`'s variables; `h` is given over
/// `h_vars`, which may mix `f`'s variables with `Z` variables.
pub fn enlarge_system(
    f: &PolySystem,
    h: &Poly,
    h_vars: &[Var],
    gens: &[Poly],
) -> Result<PolySystem> {
    let ring = f.ring();
    if let Some(v) = f.vars().iter().find(|v| v.block != Block::X) {
        return Err(ArtinError::VariableCollision(format!(
            "{v} in the system; only X variables are allowed"
        )));
    }
    if h.nvars() != h_vars.len() {
        return Err(ArtinError::ArityMismatch {
            expected: h_vars.len(),
            got: h.nvars(),
        });
    }
    if let Some(g) = gens.iter().find(|g| g.nvars() != f.nvars()) {
        return Err(ArtinError::ArityMismatch {
            expected: f.nvars(),
            got: g.nvars(),
        });
    }
    let mut zs: Vec<Var> = Vec::new();
    for v in h_vars {
        match v.block {
            Block::X if f.var_index(v).is_some() => {}
            Block::X => return Err(ArtinError::UnknownVariable(v.to_string())),
            Block::Z => zs.push(*v),
            _ => {
                return Err(ArtinError::VariableCollision(format!(
                    "{v} in h; only X and Z variables are allowed"
                )))
            }
        }
    }
    zs.sort();
    let n = f.nvars();
    let m = gens.len();
    let mut vars = f.vars().to_vec();
    vars.extend((1..=m as u32).map(|i| Var::new(Block::Y, i)));
    vars.extend(zs.iter().copied());
    let total = vars.len();

    let x_map: Vec<usize> = (0..n).collect();
    let h_map: Vec<usize> = h_vars
        .iter()
        .map(|v| match v.block {
            Block::X => f.var_index(v).unwrap(),
            _ => n + m + zs.iter().position(|z| z == v).unwrap(),
        })
        .collect();

    let mut g_poly = h.remap(&h_map, total);
    for (i, g) in gens.iter().enumerate() {
        let y = Poly::var(ring, total, n + i);
        g_poly = g_poly.add(ring, &y.mul(ring, &g.remap(&x_map, total)));
    }
    let mut polys: Vec<Poly> = f.polys().iter().map(|p| p.remap(&x_map, total)).collect();
    polys.push(g_poly);
    PolySystem::new(*ring, vars, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_poly, parse_system};
    use crate::ring::RingCtx;

    #[test]
    fn small_cases() {
        let r = RingCtx::tseries(3, 6).unwrap();
        let f = parse_system(&r, "X1^2").unwrap();
        let h = parse_poly(&r, "-t", &[]).unwrap();
        let g = parse_poly(&r, "2*X1", f.vars()).unwrap();
        let e = enlarge_system(&f, &h, &[], &[g]).unwrap();
        assert_eq!(e.format(), "X1^2\n2*X1*Y1 + 2*t\n");

        let f = parse_system(&r, "X1").unwrap();
        let h = parse_poly(&r, "0", &[]).unwrap();
        let one = parse_poly(&r, "1", f.vars()).unwrap();
        let e = enlarge_system(&f, &h, &[], &[one]).unwrap();
        assert_eq!(e.format(), "X1\nY1\n");
    }

    #[test]
    fn main_proof_shape() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let f = parse_system(&r, "X1^2 + X2\nX1*X2").unwrap();
        let h_vars = [
            Var::x(1),
            Var::x(2),
            Var::new(Block::Z, 1),
            Var::new(Block::Z, 2),
        ];
        let h = parse_poly(&r, "Z1*(X1^2 + X2) + Z2*X1*X2 - t", &h_vars).unwrap();
        let gens = crate::poly::elkik_generators(&f, None).unwrap();
        let e = enlarge_system(&f, &h, &h_vars, &gens).unwrap();
        let names: Vec<String> = e.vars().iter().map(ToString::to_string).collect();
        let mut expect = vec!["X1".to_string(), "X2".into()];
        expect.extend((1..=gens.len()).map(|i| format!("Y{i}")));
        expect.extend(["Z1".to_string(), "Z2".into()]);
        assert_eq!(names, expect);
        // G = Z1 f1 + Z2 f2 + Σ Y_i g_i - t, checked by evaluation
        let mut rng = rand::rng();
        for _ in 0..20 {
            let pt: Vec<_> = (0..e.nvars()).map(|_| r.random(&mut rng)).collect();
            let (a, rest) = pt.split_at(2);
            let (y, z) = rest.split_at(gens.len());
            let fa = f.evaluate(a).unwrap().0;
            let mut expect = r.sub(
                r.add(r.mul(z[0], fa[0]), r.mul(z[1], fa[1])),
                r.uniformizer(),
            );
            for (yi, g) in y.iter().zip(&gens) {
                expect = r.add(expect, r.mul(*yi, g.eval(&r, a)));
            }
            assert_eq!(e.evaluate(&pt).unwrap().0[2], expect);
        }
    }

    #[test]
    fn collisions() {
        let r = RingCtx::tseries(2, 4).unwrap();
        let f = parse_system(&r, "X1 + Y1").unwrap();
        let h = parse_poly(&r, "0", &[]).unwrap();
        assert!(matches!(
            enlarge_system(&f, &h, &[], &[]),
            Err(ArtinError::VariableCollision(_))
        ));
        let f = parse_system(&r, "X1").unwrap();
        let hv = [Var::new(Block::Y, 1)];
        let h = parse_poly(&r, "Y1", &hv).unwrap();
        assert!(matches!(
            enlarge_system(&f, &h, &hv, &[]),
            Err(ArtinError::VariableCollision(_))
        ));
    }
}
