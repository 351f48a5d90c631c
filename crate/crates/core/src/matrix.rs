//! Dense matrices over a truncated DVR.

use std::fmt::Write as _;

use crate::error::{ArtinError, Result};
use crate::ring::{Elem, RingCtx, Val};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixR {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl MatrixR {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<MatrixR> {
        if data.len() != rows * cols {
            return Err(ArtinError::ArityMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(MatrixR { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> MatrixR {
        MatrixR {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: &RingCtx, n: usize) -> MatrixR {
        let mut m = MatrixR::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<MatrixR> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ArtinError::ArityMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(MatrixR {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[Elem]) -> MatrixR {
        let mut m = MatrixR::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, *d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixR {
        let mut t = MatrixR::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row_multiple(&mut self, ring: &RingCtx, dst: usize, src: usize, c: Elem) {
        for j in 0..self.cols {
            let v = ring.add(self.get(dst, j), ring.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col_multiple(&mut self, ring: &RingCtx, dst: usize, src: usize, c: Elem) {
        for i in 0..self.rows {
            let v = ring.add(self.get(i, dst), ring.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, ring: &RingCtx, i: usize, c: Elem) {
        for j in 0..self.cols {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, ring: &RingCtx, other: &MatrixR) -> Result<MatrixR> {
        if self.cols != other.rows {
            return Err(ArtinError::ArityMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = MatrixR::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(acc, ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, ring: &RingCtx, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(ArtinError::ArityMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(acc, ring.mul(*a, *b)))
            })
            .collect())
    }

    pub fn sub(&self, ring: &RingCtx, other: &MatrixR) -> Result<MatrixR> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArtinError::ArityMismatch {
                expected: self.data.len(),
                got: other.data.len(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| ring.sub(*a, *b))
            .collect();
        Ok(MatrixR {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixR {
        let mut out = MatrixR::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn min_entry_val(&self, ring: &RingCtx) -> Val {
        self.data
            .iter()
            .map(|x| ring.val(*x))
            .min()
            .unwrap_or(ring.top())
    }

    /// Entrywise `self ≡ other (mod t^n)`.
    pub fn congruent(&self, ring: &RingCtx, other: &MatrixR, n: u32) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| ring.congruent(*a, *b, n))
    }

    /// Determinant modulo `t^M`.
    ///
    /// Gaussian elimination choosing, in each column, the pivot of least
    /// valuation; every other entry of the column is then a multiple of the
    /// pivot, so row operations stay inside `R` and the result is exact at
    /// working precision.
    pub fn det(&self, ring: &RingCtx) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(ArtinError::ArityMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ring.one();
        for c in 0..n {
            let pivot = (c..n).min_by_key(|&i| (ring.val(a.get(i, c)), i)).unwrap();
            let pv = a.get(pivot, c);
            if ring.is_zero(pv) {
                return Ok(ring.zero());
            }
            if pivot != c {
                a.swap_rows(pivot, c);
                det = ring.neg(det);
            }
            for i in c + 1..n {
                let x = a.get(i, c);
                if !ring.is_zero(x) {
                    let q = ring.div_exact(x, pv)?;
                    a.add_row_multiple(ring, i, c, ring.neg(q));
                }
            }
            det = ring.mul(det, pv);
        }
        Ok(det)
    }

    /// Valuation of the ideal generated by all `r`-minors: the least
    /// valuation over every choice of `r` rows and `r` columns. The empty
    /// minor (`r = 0`) is 1; when `r` exceeds both dimensions the ideal is 0.
    pub fn minor_ideal_val(&self, ring: &RingCtx, r: usize) -> Result<Val> {
        if r == 0 {
            return Ok(ring.val_of(0));
        }
        if r > self.rows || r > self.cols {
            return Ok(ring.top());
        }
        if r == 1 {
            return Ok(self.min_entry_val(ring));
        }
        let mut best = ring.top();
        for rows in combinations(self.rows, r) {
            for cols in combinations(self.cols, r) {
                let v = ring.val(self.submatrix(&rows, &cols).det(ring)?);
                if v < best {
                    best = v;
                    if best.value() == 0 {
                        return Ok(best);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Inverse of a square matrix whose determinant is a unit.
    pub fn inverse(&self, ring: &RingCtx) -> Result<MatrixR> {
        if self.rows != self.cols {
            return Err(ArtinError::ArityMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatrixR::identity(ring, n);
        for c in 0..n {
            let pivot = (c..n).find(|&i| ring.is_unit(a.get(i, c))).ok_or_else(|| {
                ArtinError::NotAUnit(ring.val(self.det(ring).unwrap_or_default()).value())
            })?;
            a.swap_rows(pivot, c);
            inv.swap_rows(pivot, c);
            let s = ring.invert_unit(a.get(c, c))?;
            a.scale_row(ring, c, s);
            inv.scale_row(ring, c, s);
            for i in 0..n {
                if i != c {
                    let f = ring.neg(a.get(i, c));
                    if !ring.is_zero(f) {
                        a.add_row_multiple(ring, i, c, f);
                        inv.add_row_multiple(ring, i, c, f);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// `[[a,b];[c,d]]` literal.
    pub fn format(&self, ring: &RingCtx) -> String {
        let mut s = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                s.push(';');
            }
            s.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", ring.format(self.get(i, j)));
            }
            s.push(']');
        }
        s.push(']');
        s
    }

    /// Parses `[[t,0];[0,t]]`. Rows are separated by `;`, entries by `,`.
    pub fn parse(ring: &RingCtx, s: &str) -> Result<MatrixR> {
        let bad = |why: String| ArtinError::InvalidInput(format!("matrix literal `{s}`: {why}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| bad("expected outer brackets".into()))?;
        let mut rows = Vec::new();
        for row in body.split(';') {
            let row = row
                .trim()
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| bad(format!("row `{row}` needs brackets")))?;
            let entries = row
                .split(',')
                .map(|e| ring.parse_elem(e))
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        let m = MatrixR::from_rows(rows)?;
        if m.rows == 0 || m.cols == 0 {
            return Err(bad("empty matrix".into()));
        }
        Ok(m)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion; independent of the elimination route.
    fn leibniz(ring: &RingCtx, m: &MatrixR) -> Elem {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], true)];
            }
            let mut out = Vec::new();
            for (p, even) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    let swaps = n - 1 - pos;
                    out.push((q, even == swaps.is_multiple_of(2)));
                }
            }
            out
        }
        let mut acc = ring.zero();
        for (p, even) in perms(m.rows()) {
            let term = p
                .iter()
                .enumerate()
                .fold(ring.one(), |a, (i, &j)| ring.mul(a, m.get(i, j)));
            acc = if even {
                ring.add(acc, term)
            } else {
                ring.sub(acc, term)
            };
        }
        acc
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn det_matches_leibniz() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ring in [
            RingCtx::tseries(2, 6).unwrap(),
            RingCtx::padic(3, 4).unwrap(),
            RingCtx::tseries(5, 3).unwrap(),
        ] {
            for n in 1..=4 {
                for _ in 0..40 {
                    let data = (0..n * n)
                        .map(|_| {
                            let v = rand::Rng::random_range(&mut rng, 0..=ring.prec());
                            ring.random_in_ideal(&mut rng, v)
                        })
                        .collect();
                    let m = MatrixR::new(n, n, data).unwrap();
                    assert_eq!(
                        m.det(&ring).unwrap(),
                        leibniz(&ring, &m),
                        "{}",
                        m.format(&ring)
                    );
                }
            }
        }
    }

    #[test]
    fn minor_values() {
        let r = RingCtx::tseries(2, 8).unwrap();
        let t = r.uniformizer();
        let m = MatrixR::diagonal(2, 2, &[t, t]);
        assert_eq!(m.minor_ideal_val(&r, 2).unwrap().value(), 2);
        let m = MatrixR::parse(&r, "[[1,1];[1,1+t^3]]").unwrap();
        assert_eq!(m.minor_ideal_val(&r, 2).unwrap().value(), 3);
        assert_eq!(m.minor_ideal_val(&r, 1).unwrap().value(), 0);
        assert!(m.minor_ideal_val(&r, 3).unwrap().is_top());
    }

    #[test]
    fn literal_round_trip() {
        let r = RingCtx::tseries(3, 5).unwrap();
        let m = MatrixR::parse(&r, "[[t,0,1];[0,2*t^2,1+t]]").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.format(&r), "[[t,0,1];[0,2*t^2,1+t]]");
        assert!(MatrixR::parse(&r, "[[t,0];[1]]").is_err());
        assert!(MatrixR::parse(&r, "t,0").is_err());
    }

    #[test]
    fn inverse_of_unimodular() {
        let r = RingCtx::padic(5, 4).unwrap();
        let m = MatrixR::parse(&r, "[[5,1];[1,3]]").unwrap();
        let inv = m.inverse(&r).unwrap();
        assert_eq!(m.mul(&r, &inv).unwrap(), MatrixR::identity(&r, 2));
        let sing = MatrixR::parse(&r, "[[5,0];[0,1]]").unwrap();
        assert!(sing.inverse(&r).is_err());
    }
}
