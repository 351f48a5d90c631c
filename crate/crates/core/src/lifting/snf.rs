//! Smith normal form over `R/t^M` and exact linear solving.

use crate::matrix::MatrixR;
use crate::ring::{Elem, RingCtx, Val};

/// `U A V = D` with `U`, `V` invertible and `D` diagonal with entries
/// `t^{e_1}, t^{e_2}, ..` (`e_1 ≤ e_2 ≤ ..`), followed by zeros.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: MatrixR,
    pub v: MatrixR,
    pub d: MatrixR,
    vals: Vec<Val>,
}

impl Snf {
    /// Valuations of the `min(k, l)` diagonal entries; `⊤` for zeros.
    pub fn divisor_vals(&self) -> &[Val] {
        &self.vals
    }

    /// Number of nonzero divisors.
    pub fn rank(&self) -> usize {
        self.vals.iter().take_while(|v| !v.is_top()).count()
    }

    /// Number of divisors of valuation `< n`.
    pub fn rank_below(&self, n: u32) -> usize {
        self.vals
            .iter()
            .filter(|v| !v.is_top() && v.value() < n)
            .count()
    }

    /// Largest finite divisor valuation, 0 when every divisor is zero.
    pub fn max_finite_val(&self) -> u32 {
        self.vals
            .iter()
            .filter_map(|v| v.finite())
            .max()
            .unwrap_or(0)
    }
}

/// Pivots on an entry of least valuation in the remaining block, breaking
/// ties by row-major position.
pub fn smith_normal_form(ring: &RingCtx, a: &MatrixR) -> Snf {
    let (k, l) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = MatrixR::identity(ring, k);
    let mut v = MatrixR::identity(ring, l);
    let mut vals = Vec::with_capacity(k.min(l));
    for s in 0..k.min(l) {
        let mut best: Option<(Val, usize, usize)> = None;
        for i in s..k {
            for j in s..l {
                let x = ring.val(d.get(i, j));
                if !x.is_top() && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        let Some((e, pi, pj)) = best else {
            vals.extend(std::iter::repeat_n(ring.top(), k.min(l) - s));
            break;
        };
        let e = e.value();
        d.swap_rows(s, pi);
        u.swap_rows(s, pi);
        d.swap_cols(s, pj);
        v.swap_cols(s, pj);
        // scale the pivot to exactly t^e
        let w = ring
            .invert_unit(ring.shift_down(d.get(s, s), e))
            .expect("pivot has valuation e");
        d.scale_row(ring, s, w);
        u.scale_row(ring, s, w);
        let pivot = ring.t_pow(e);
        for i in s + 1..k {
            let x = d.get(i, s);
            if x != Elem::ZERO {
                let q = ring.neg(ring.div_exact(x, pivot).expect("pivot divides its column"));
                d.add_row_multiple(ring, i, s, q);
                u.add_row_multiple(ring, i, s, q);
            }
        }
        for j in s + 1..l {
            let x = d.get(s, j);
            if x != Elem::ZERO {
                let q = ring.neg(ring.div_exact(x, pivot).expect("pivot divides its row"));
                d.add_col_multiple(ring, j, s, q);
                v.add_col_multiple(ring, j, s, q);
            }
        }
        vals.push(ring.val_of(e));
    }
    Snf { u, v, d, vals }
}

/// Some `x` with `A x ≡ rhs (mod t^M)`, or `None` when there is none.
/// Free coordinates in the Smith basis are set to zero.
pub fn solve_exact(ring: &RingCtx, a: &MatrixR, rhs: &[Elem]) -> Option<Vec<Elem>> {
    let snf = smith_normal_form(ring, a);
    solve_with(ring, &snf, rhs)
}

pub(crate) fn solve_with(ring: &RingCtx, snf: &Snf, rhs: &[Elem]) -> Option<Vec<Elem>> {
    let c = snf.u.mul_vec(ring, rhs).ok()?;
    let l = snf.v.rows();
    let mut y = vec![ring.zero(); l];
    for (i, ci) in c.iter().enumerate() {
        match snf.vals.get(i).and_then(|v| v.finite()) {
            Some(e) => {
                if ring.val(*ci).value() < e {
                    return None;
                }
                y[i] = ring.shift_down(*ci, e);
            }
            None => {
                if *ci != Elem::ZERO {
                    return None;
                }
            }
        }
    }
    snf.v.mul_vec(ring, &y).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_snf(ring: &RingCtx, a: &MatrixR) {
        let s = smith_normal_form(ring, a);
        let uav = s.u.mul(ring, a).unwrap().mul(ring, &s.v).unwrap();
        assert_eq!(uav, s.d);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let want = if i == j {
                    s.vals[i]
                        .finite()
                        .map(|e| ring.t_pow(e))
                        .unwrap_or(Elem::ZERO)
                } else {
                    Elem::ZERO
                };
                assert_eq!(s.d.get(i, j), want);
            }
        }
        assert!(s.vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(ring.is_unit(s.u.det(ring).unwrap()));
        assert!(ring.is_unit(s.v.det(ring).unwrap()));
    }

    #[test]
    fn examples() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let a = MatrixR::parse(&r, "[[t,t^2];[t^3,t]]").unwrap();
        let s = smith_normal_form(&r, &a);
        // det = t^2 + t^5 has valuation 2 = 1 + 1
        assert_eq!(
            s.divisor_vals()
                .iter()
                .map(|v| v.value())
                .collect::<Vec<_>>(),
            [1, 1]
        );
        check_snf(&r, &a);
        let z = MatrixR::zeros(2, 3);
        let s = smith_normal_form(&r, &z);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.max_finite_val(), 0);
    }

    #[test]
    fn divisor_product_is_determinant_valuation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = RingCtx::padic(3, 7).unwrap();
        for _ in 0..200 {
            let data = (0..9)
                .map(|_| {
                    let v = rng.random_range(0..4);
                    r.random_with_val(&mut rng, v)
                })
                .collect();
            let a = MatrixR::new(3, 3, data).unwrap();
            let s = smith_normal_form(&r, &a);
            let sum = s
                .divisor_vals()
                .iter()
                .fold(r.val_of(0), |acc, v| acc.sat_add(*v));
            assert_eq!(sum, r.val(a.det(&r).unwrap()));
            check_snf(&r, &a);
        }
    }

    proptest! {
        #[test]
        fn solve_exact_is_sound_and_complete(seed in any::<u64>(), rows in 1usize..4, cols in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = RingCtx::tseries(3, 3).unwrap();
            let data = (0..rows * cols)
                .map(|_| {
                    let v = rng.random_range(0..3);
                    r.random_in_ideal(&mut rng, v)
                })
                .collect();
            let a = MatrixR::new(rows, cols, data).unwrap();
            check_snf(&r, &a);
            let rhs: Vec<Elem> = (0..rows).map(|_| r.random(&mut rng)).collect();
            match solve_exact(&r, &a, &rhs) {
                Some(x) => prop_assert_eq!(a.mul_vec(&r, &x).unwrap(), rhs),
                None if cols <= 2 => {
                    // brute force over (R/t^3)^cols confirms there is no solution
                    let elems: Vec<Elem> = r.residues(3).unwrap().collect();
                    let mut found = false;
                    let mut x = vec![r.zero(); cols];
                    let total = elems.len().pow(cols as u32);
                    for idx in 0..total {
                        let mut q = idx;
                        for xi in x.iter_mut() {
                            *xi = elems[q % elems.len()];
                            q /= elems.len();
                        }
                        if a.mul_vec(&r, &x).unwrap() == rhs {
                            found = true;
                            break;
                        }
                    }
                    prop_assert!(!found);
                }
                None => {}
            }
        }
    }
}
