//! Rewriting a system over a finite `R`-algebra `S = R s_1 + .. + R s_p`
//! as a system over `R`.

use super::{Block, ExpVec, Poly, PolySystem, Var};
use crate::error::{ArtinError, Result};
use crate::lifting::solve_exact;
use crate::matrix::MatrixR;
use crate::ring::{Elem, RingCtx};

/// Generators `s_1..s_p` of `S` with `s_i s_j = Σ_k c_ijk s_k`, and
/// generators `z_1..z_l` of the kernel of `R^p → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    ring: RingCtx,
    rank: usize,
    table: Vec<Elem>,
    kernel: Vec<Vec<Elem>>,
}

impl AlgebraPresentation {
    /// `table[i][j][k] = c_ijk`. Checks shapes, commutativity, and that
    /// associativity and closure of the kernel hold modulo the kernel.
    pub fn new(ring: RingCtx, table: Vec<Vec<Vec<Elem>>>, kernel: Vec<Vec<Elem>>) -> Result<Self> {
        let p = table.len();
        let bad = |m: String| Err(ArtinError::PresentationInconsistent(m));
        if p == 0 {
            return bad("rank must be positive".into());
        }
        let mut flat = Vec::with_capacity(p * p * p);
        for (i, row) in table.iter().enumerate() {
            if row.len() != p || row.iter().any(|c| c.len() != p) {
                return bad(format!("row {} of the table is not {p}x{p}", i + 1));
            }
            for c in row {
                for x in c {
                    flat.push(ring.check(*x)?);
                }
            }
        }
        if let Some(z) = kernel.iter().find(|z| z.len() != p) {
            return bad(format!(
                "kernel relation of length {}, rank is {p}",
                z.len()
            ));
        }
        for x in kernel.iter().flatten() {
            ring.check(*x)?;
        }
        let pres = AlgebraPresentation {
            ring,
            rank: p,
            table: flat,
            kernel,
        };
        for i in 0..p {
            for j in 0..p {
                if (0..p).any(|k| pres.c(i, j, k) != pres.c(j, i, k)) {
                    return bad(format!("s{} s{} != s{} s{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    let ij_k = pres.mul(&pres.mul(&pres.basis(i), &pres.basis(j)), &pres.basis(k));
                    let i_jk = pres.mul(&pres.basis(i), &pres.mul(&pres.basis(j), &pres.basis(k)));
                    let w: Vec<Elem> = ij_k
                        .iter()
                        .zip(&i_jk)
                        .map(|(a, b)| ring.sub(*a, *b))
                        .collect();
                    if !pres.in_kernel(&w) {
                        return bad(format!(
                            "(s{0} s{1}) s{2} != s{0} (s{1} s{2})",
                            i + 1,
                            j + 1,
                            k + 1
                        ));
                    }
                }
            }
        }
        for (n, z) in pres.kernel.iter().enumerate() {
            for i in 0..p {
                if !pres.in_kernel(&pres.mul(z, &pres.basis(i))) {
                    return bad(format!(
                        "kernel relation {} times s{} leaves the kernel",
                        n + 1,
                        i + 1
                    ));
                }
            }
        }
        Ok(pres)
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel(&self) -> &[Vec<Elem>] {
        &self.kernel
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Elem {
        self.table[(i * self.rank + j) * self.rank + k]
    }

    pub fn basis(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![self.ring.zero(); self.rank];
        v[i] = self.ring.one();
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let p = self.rank;
        let mut out = vec![r.zero(); p];
        for (i, xi) in x.iter().enumerate().take(p) {
            for (j, yj) in y.iter().enumerate().take(p) {
                let xy = r.mul(*xi, *yj);
                if xy == Elem::ZERO {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = r.add(*o, r.mul(xy, self.c(i, j, k)));
                }
            }
        }
        out
    }

    fn mul_poly(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        let r = &self.ring;
        let n = x[0].nvars();
        let mut out = vec![Poly::zero(n); self.rank];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if xi.is_zero() || yj.is_zero() {
                    continue;
                }
                let xy = xi.mul(r, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if c != Elem::ZERO {
                        *o = o.add(r, &xy.scale(r, c));
                    }
                }
            }
        }
        out
    }

    /// Whether the coordinate vector is an `R`-combination of the kernel
    /// relations, i.e. represents `0` in `S`.
    pub fn in_kernel(&self, w: &[Elem]) -> bool {
        if w.iter().all(|x| *x == Elem::ZERO) {
            return true;
        }
        if self.kernel.is_empty() {
            return false;
        }
        let l = self.kernel.len();
        let data = (0..self.rank)
            .flat_map(|k| self.kernel.iter().map(move |z| z[k]))
            .collect();
        let m = MatrixR::new(self.rank, l, data).expect("shape");
        solve_exact(&self.ring, &m, w).is_some()
    }
}

/// `F_i = Σ_k s_k F_i^(k)(X)`: a system over `S` given by its
/// components, each an ordinary system over `R` in the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPolySystem {
    components: Vec<PolySystem>,
}

impl SPolySystem {
    pub fn new(components: Vec<PolySystem>) -> Result<SPolySystem> {
        let first = components
            .first()
            .ok_or_else(|| ArtinError::InvalidInput("no components".into()))?;
        for c in &components[1..] {
            if c.ring() != first.ring() {
                return Err(ArtinError::ContextMismatch(
                    "components over different rings".into(),
                ));
            }
            if c.vars() != first.vars() || c.len() != first.len() {
                return Err(ArtinError::ArityMismatch {
                    expected: first.len(),
                    got: c.len(),
                });
            }
        }
        Ok(SPolySystem { components })
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn len(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.components[0].is_empty()
    }

    fn check(&self, pres: &AlgebraPresentation) -> Result<()> {
        if pres.rank() != self.rank() {
            return Err(ArtinError::PresentationInconsistent(format!(
                "system has {} components, presentation rank {}",
                self.rank(),
                pres.rank()
            )));
        }
        if pres.ring() != self.components[0].ring() {
            return Err(ArtinError::ContextMismatch(
                "presentation over a different ring".into(),
            ));
        }
        Ok(())
    }

    /// `F(x)` for a point whose coordinates are elements of `S`.
    pub fn eval(&self, pres: &AlgebraPresentation, x: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
        self.check(pres)?;
        if x.len() != self.nvars() {
            return Err(ArtinError::ArityMismatch {
                expected: self.nvars(),
                got: x.len(),
            });
        }
        let r = pres.ring();
        let mut out = vec![vec![r.zero(); pres.rank()]; self.len()];
        for (k, comp) in self.components.iter().enumerate() {
            for (i, f) in comp.polys().iter().enumerate() {
                for (e, c) in f.terms() {
                    let mut m = pres.basis(k);
                    for (v, pw) in e.exps().iter().enumerate() {
                        for _ in 0..*pw {
                            m = pres.mul(&m, &x[v]);
                        }
                    }
                    for (o, mk) in out[i].iter_mut().zip(&m) {
                        *o = r.add(*o, r.mul(*c, *mk));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The system `G_ik = F_ik - Σ_j T_ij z_jk` over `R`, in the variables
/// `X1_1..X1_p, .., XN_p` followed by `T1_1..T1_l, .., Tr_l`.
pub fn transfer_system(f: &SPolySystem, pres: &AlgebraPresentation) -> Result<PolySystem> {
    f.check(pres)?;
    let r = pres.ring();
    let p = pres.rank();
    let n = f.nvars();
    let rr = f.len();
    let l = pres.kernel().len();
    let mut vars = Vec::with_capacity(n * p + rr * l);
    for i in 1..=n as u32 {
        vars.extend((1..=p as u32).map(|j| Var::with_sub(Block::X, i, j)));
    }
    for i in 1..=rr as u32 {
        vars.extend((1..=l as u32).map(|j| Var::with_sub(Block::T, i, j)));
    }
    let total = vars.len();
    if total > super::MAX_VARS {
        return Err(ArtinError::InvalidInput(format!(
            "transfer needs {total} variables"
        )));
    }
    let xs: Vec<Vec<Poly>> = (0..n)
        .map(|v| (0..p).map(|j| Poly::var(r, total, v * p + j)).collect())
        .collect();
    let basis = |k: usize| -> Vec<Poly> {
        (0..p)
            .map(|j| {
                if j == k {
                    Poly::constant(total, r.one())
                } else {
                    Poly::zero(total)
                }
            })
            .collect()
    };

    let mut polys = Vec::with_capacity(rr * p);
    for i in 0..rr {
        let mut fi = vec![Poly::zero(total); p];
        for (k, comp) in f.components.iter().enumerate() {
            for (e, c) in comp.polys()[i].terms() {
                let mut m = basis(k);
                for (v, pw) in e.exps().iter().enumerate() {
                    for _ in 0..*pw {
                        m = pres.mul_poly(&m, &xs[v]);
                    }
                }
                for (o, mk) in fi.iter_mut().zip(&m) {
                    *o = o.add(r, &mk.scale(r, *c));
                }
            }
        }
        for (k, fik) in fi.into_iter().enumerate() {
            let mut g = fik;
            for (j, z) in pres.kernel().iter().enumerate() {
                let t = Poly::monomial(total, z[k], ExpVec::unit(total, n * p + i * l + j));
                g = g.sub(r, &t);
            }
            polys.push(g);
        }
    }
    PolySystem::new(*r, vars, polys)
}
