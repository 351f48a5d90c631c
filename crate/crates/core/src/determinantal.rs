//! Determinantal ideals `I_r` (all `r`-minors of a `k×l` matrix) over a
//! DVR: the Artin function `rn - r + 1`, repair by recursive rank
//! reduction, and sharpness witnesses with a valuation obstruction.

use crate::error::{ArtinError, Result};
use crate::lifting::smith_normal_form;
use crate::matrix::{combinations, MatrixR};
use crate::ring::{Elem, RingCtx, Val};

/// `β_n(I_r) = rn - r + 1`.
pub fn beta_det(r: u32, n: u32) -> u32 {
    (r * n + 1).saturating_sub(r)
}

fn check_r(a: &MatrixR, r: usize) -> Result<()> {
    let m = a.rows().min(a.cols());
    if r == 0 || r > m {
        return Err(ArtinError::OutOfRange {
            what: "r",
            detail: format!("{r} not in 1..={m}"),
        });
    }
    Ok(())
}

/// `b = Σ u_i w_iᵀ` with fewer than `r` terms, so every `r`-minor of `b`
/// vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub terms: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl RankCertificate {
    pub fn rank_bound(&self) -> usize {
        self.terms.len()
    }

    pub fn expand(&self, ring: &RingCtx, rows: usize, cols: usize) -> MatrixR {
        let mut m = MatrixR::zeros(rows, cols);
        for (u, w) in &self.terms {
            for (i, ui) in u.iter().enumerate() {
                for (j, wj) in w.iter().enumerate() {
                    m.set(i, j, ring.add(m.get(i, j), ring.mul(*ui, *wj)));
                }
            }
        }
        m
    }

    fn transpose(self) -> RankCertificate {
        RankCertificate {
            terms: self.terms.into_iter().map(|(u, w)| (w, u)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetRepair {
    pub matrix: MatrixR,
    pub certificate: RankCertificate,
}

impl DetRepair {
    /// The certificate reproduces the matrix, has fewer than `r` terms,
    /// and the matrix agrees with `a` modulo `t^n`.
    pub fn verify(&self, ring: &RingCtx, a: &MatrixR, r: usize, n: u32) -> bool {
        self.certificate.rank_bound() < r
            && self.certificate.expand(ring, a.rows(), a.cols()) == self.matrix
            && self.matrix.congruent(ring, a, n)
    }
}

/// Whether some `b ≡ a mod t^n` has rank `< r`: this holds exactly when
/// fewer than `r` Smith divisors of `a` have valuation below `n`.
pub fn is_repairable(ring: &RingCtx, a: &MatrixR, r: usize, n: u32) -> bool {
    smith_normal_form(ring, a).rank_below(n) < r
}

/// Repairs `a` with `ord I_r(a) ≥ rn - r + 1` to a matrix of rank `< r`
/// congruent to `a` modulo `t^n`.
///
/// Pivots on an entry of least valuation (row-major on ties). A pivot of
/// valuation `≥ n` means the zero matrix is close enough; otherwise the
/// pivot's row and column are split off as a rank-one term and the
/// complement `a_ij - a_iq a_pj / a_pq` is repaired for `r - 1`.
pub fn repair_determinantal(ring: &RingCtx, a: &MatrixR, r: usize, n: u32) -> Result<DetRepair> {
    check_r(a, r)?;
    for x in a.data() {
        ring.check(*x)?;
    }
    if a.rows() > a.cols() {
        let rep = repair_determinantal(ring, &a.transpose(), r, n)?;
        return Ok(DetRepair {
            matrix: rep.matrix.transpose(),
            certificate: rep.certificate.transpose(),
        });
    }
    let beta = beta_det(r as u32, n);
    let v = a.minor_ideal_val(ring, r)?;
    let enough = if beta > ring.prec() {
        v.is_top()
    } else {
        v.value() >= beta
    };
    if !enough {
        return Err(ArtinError::HypothesisNotMet(format!(
            "ord I_r(a) = {v} is below beta_n = {beta}"
        )));
    }
    let rows: Vec<usize> = (0..a.rows()).collect();
    let cols: Vec<usize> = (0..a.cols()).collect();
    let mut terms = Vec::new();
    if !reduce(ring, a, &rows, &cols, r, n, &mut terms) {
        return Err(ArtinError::PrecisionExhausted(format!(
            "beta_n = {beta} exceeds the working precision {}",
            ring.prec()
        )));
    }
    let certificate = RankCertificate { terms };
    let matrix = certificate.expand(ring, a.rows(), a.cols());
    Ok(DetRepair {
        matrix,
        certificate,
    })
}

/// Works on the submatrix of `a` on `rows × cols`, pushing rank-one terms
/// in full coordinates. Returns false when a pivot of valuation `< n` is
/// left with `r = 1`.
fn reduce(
    ring: &RingCtx,
    a: &MatrixR,
    rows: &[usize],
    cols: &[usize],
    r: usize,
    n: u32,
    terms: &mut Vec<(Vec<Elem>, Vec<Elem>)>,
) -> bool {
    let mut best: Option<(Val, usize, usize)> = None;
    for (pi, &i) in rows.iter().enumerate() {
        for (pj, &j) in cols.iter().enumerate() {
            let x = ring.val(a.get(i, j));
            if !x.is_top() && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, pi, pj));
            }
        }
    }
    let Some((v, pi, pj)) = best else { return true };
    if v.value() >= n {
        return true;
    }
    if r == 1 {
        return false;
    }
    let (pr, pc) = (rows[pi], cols[pj]);
    let pivot = a.get(pr, pc);
    let mut u = vec![ring.zero(); a.rows()];
    let mut w = vec![ring.zero(); a.cols()];
    for &i in rows {
        u[i] = a.get(i, pc);
    }
    for &j in cols {
        w[j] = ring
            .div_exact(a.get(pr, j), pivot)
            .expect("pivot has least valuation");
    }
    let mut complement = a.clone();
    for &i in rows {
        for &j in cols {
            complement.set(i, j, ring.sub(a.get(i, j), ring.mul(u[i], w[j])));
        }
    }
    terms.push((u, w));
    let sub_rows: Vec<usize> = rows.iter().copied().filter(|&i| i != pr).collect();
    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&j| j != pc).collect();
    reduce(ring, &complement, &sub_rows, &sub_cols, r - 1, n, terms)
}

/// `a_ii = t^{n-1}` for `i ≤ r`, zero elsewhere: order `rn - r`, and no
/// matrix of rank `< r` is congruent to it modulo `t^n`.
pub fn witness_det(ring: &RingCtx, k: usize, l: usize, r: usize, n: u32) -> Result<MatrixR> {
    if k == 0 || l == 0 {
        return Err(ArtinError::OutOfRange {
            what: "shape",
            detail: format!("{k}x{l}"),
        });
    }
    if r == 0 || r > k.min(l) {
        return Err(ArtinError::OutOfRange {
            what: "r",
            detail: format!("{r} not in 1..={}", k.min(l)),
        });
    }
    if n == 0 {
        return Err(ArtinError::OutOfRange {
            what: "n",
            detail: "must be at least 1".into(),
        });
    }
    if n > ring.prec() || r as u32 * (n - 1) >= ring.prec() {
        return Err(ArtinError::PrecisionExhausted(format!(
            "r(n-1) = {} needs precision above {}",
            r as u32 * (n - 1),
            ring.prec()
        )));
    }
    let mut m = MatrixR::zeros(k, l);
    for i in 0..r {
        m.set(i, i, ring.t_pow(n - 1));
    }
    Ok(m)
}

/// Certifies that no `b ≡ a mod t^n` has all `r`-minors zero: some
/// `r`-minor has a permutation term whose entries all have valuation
/// `< n` (hence fixed in `b`) and whose valuation is strictly below the
/// lower bound of every other term, computed with `min(val a_ij, n)`.
pub fn obstruction_holds(ring: &RingCtx, a: &MatrixR, r: usize, n: u32) -> bool {
    if check_r(a, r).is_err() {
        return false;
    }
    let bound = |i: usize, j: usize| ring.val(a.get(i, j)).value().min(n);
    let exact = |i: usize, j: usize| ring.val(a.get(i, j)).value() < n;
    let perms = permutations(r);
    for rows in combinations(a.rows(), r) {
        for cols in combinations(a.cols(), r) {
            let mut sums: Vec<(u32, &Vec<usize>)> = perms
                .iter()
                .map(|p| ((0..r).map(|x| bound(rows[x], cols[p[x]])).sum(), p))
                .collect();
            sums.sort();
            let (best, p) = sums[0];
            let unique = sums.get(1).is_none_or(|s| s.0 > best);
            if unique && (0..r).all(|x| exact(rows[x], cols[p[x]])) {
                return true;
            }
        }
    }
    false
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(r: &RingCtx, s: &str) -> MatrixR {
        MatrixR::parse(r, s).unwrap()
    }

    #[test]
    fn formula() {
        assert_eq!(beta_det(2, 3), 5);
        assert_eq!(beta_det(1, 7), 7);
        assert_eq!(beta_det(3, 1), 1);
    }

    #[test]
    fn repair_examples() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let z = MatrixR::zeros(2, 3);
        assert_eq!(repair_determinantal(&r, &z, 2, 3).unwrap().matrix, z);

        let a = m(&r, "[[t,0];[0,t^2]]");
        let rep = repair_determinantal(&r, &a, 2, 1).unwrap();
        assert_eq!(rep.matrix, MatrixR::zeros(2, 2));

        let a = m(&r, "[[1,1];[1,1+t^3]]");
        let rep = repair_determinantal(&r, &a, 2, 2).unwrap();
        assert_eq!(rep.matrix, m(&r, "[[1,1];[1,1]]"));
        assert!(rep.verify(&r, &a, 2, 2));
        assert!(matches!(
            repair_determinantal(&r, &a, 2, 3),
            Err(ArtinError::HypothesisNotMet(_))
        ));
        assert!(repair_determinantal(&r, &a, 3, 1).is_err());
    }

    #[test]
    fn tall_matrices_are_transposed() {
        let r = RingCtx::padic(3, 6).unwrap();
        let a = m(&r, "[[1,2];[2,4+27];[1,2]]");
        let rep = repair_determinantal(&r, &a, 2, 2).unwrap();
        assert!(rep.verify(&r, &a, 2, 2));
        let rep_t = repair_determinantal(&r, &a.transpose(), 2, 2).unwrap();
        assert_eq!(rep_t.matrix, rep.matrix.transpose());
    }

    #[test]
    fn witnesses_and_obstruction() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let w = witness_det(&r, 2, 2, 2, 2).unwrap();
        assert_eq!(w, m(&r, "[[t,0];[0,t]]"));
        assert_eq!(w.minor_ideal_val(&r, 2).unwrap().value(), 2);
        assert!(obstruction_holds(&r, &w, 2, 2));
        assert!(!is_repairable(&r, &w, 2, 2));
        assert_eq!(
            witness_det(&r, 2, 3, 2, 2).unwrap(),
            m(&r, "[[t,0,0];[0,t,0]]")
        );
        assert_eq!(witness_det(&r, 3, 3, 1, 3).unwrap().get(0, 0), r.t_pow(2));
        assert!(witness_det(&r, 3, 3, 3, 4).is_err());
        // an exact-zero matrix has no obstruction
        assert!(!obstruction_holds(&r, &MatrixR::zeros(2, 2), 2, 2));
    }

    #[test]
    fn random_rank_deficient_perturbations() {
        let ring = RingCtx::tseries(3, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(k, l, r) in &[(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 3, 3), (3, 2, 2)] {
            for n in 1..=3u32 {
                for _ in 0..100 {
                    let mut a = MatrixR::zeros(k, l);
                    for _ in 0..r - 1 {
                        let u: Vec<Elem> = (0..k).map(|_| ring.random(&mut rng)).collect();
                        let w: Vec<Elem> = (0..l).map(|_| ring.random(&mut rng)).collect();
                        for (i, ui) in u.iter().enumerate() {
                            for (j, wj) in w.iter().enumerate() {
                                a.set(i, j, ring.add(a.get(i, j), ring.mul(*ui, *wj)));
                            }
                        }
                    }
                    let beta = beta_det(r as u32, n);
                    for i in 0..k {
                        for j in 0..l {
                            let e = ring.random_in_ideal(&mut rng, beta);
                            a.set(i, j, ring.add(a.get(i, j), e));
                        }
                    }
                    let rep = repair_determinantal(&ring, &a, r, n).unwrap();
                    assert!(rep.verify(&ring, &a, r, n));
                    assert!(rep.matrix.minor_ideal_val(&ring, r).unwrap().is_top());
                    assert!(is_repairable(&ring, &a, r, n));
                }
            }
        }
    }
}
