//! Dense matrices over the integers and Smith normal form with transforms.
//!
//! Entries are unbounded `BigInt`s; elimination never overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Columns `from..` as a new matrix.
    pub fn columns_from(&self, from: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols - from);
        for i in 0..self.rows {
            for j in from..self.cols {
                m.set(i, j - from, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    // row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = &self.data[src * c + j];
            if !s.is_zero() {
                let d = s * q;
                self.data[dst * c + j] -= d;
            }
        }
    }

    // col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * c + src];
            if !s.is_zero() {
                let d = s * q;
                self.data[i * c + dst] -= d;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

/// Result of a Smith normal form computation `P A Q = D`.
///
/// `diag` holds the nonzero invariant factors, positive and each dividing the next. The
/// unimodular transforms and their inverses are present only when requested.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub p: Option<IntMatrix>,
    pub p_inv: Option<IntMatrix>,
    pub q: Option<IntMatrix>,
    pub q_inv: Option<IntMatrix>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Transforms {
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

struct Work {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Work {
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.row_sub(dst, src, q);
        if let Some(t) = &mut self.t {
            t.p.row_sub(dst, src, q);
            t.p_inv.col_sub(src, dst, &-q);
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.col_sub(dst, src, q);
        if let Some(t) = &mut self.t {
            t.q.col_sub(dst, src, q);
            t.q_inv.row_sub(src, dst, &-q);
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(t) = &mut self.t {
            t.p.swap_rows(x, y);
            t.p_inv.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(t) = &mut self.t {
            t.q.swap_cols(x, y);
            t.q_inv.swap_rows(x, y);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.p.negate_row(i);
            t.p_inv.negate_col(i);
        }
    }
}

/// Smith normal form by row/column reduction, always pivoting on an entry of least
/// absolute value to contain coefficient growth.
pub fn smith(a: &IntMatrix, with_transforms: bool) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a: a.clone(),
        t: with_transforms.then(|| Transforms {
            p: IntMatrix::identity(m),
            p_inv: IntMatrix::identity(m),
            q: IntMatrix::identity(n),
            q_inv: IntMatrix::identity(n),
        }),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&w.a, t, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // Clear column t below the pivot.
            let piv = w.a.get(t, t).clone();
            let mut leftover = false;
            for i in t + 1..m {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(&piv);
                w.row_sub(i, t, &q);
                leftover |= !w.a.get(i, t).is_zero();
            }
            if leftover {
                let i = (t + 1..m)
                    .filter(|&i| !w.a.get(i, t).is_zero())
                    .min_by(|&x, &y| w.a.get(x, t).abs().cmp(&w.a.get(y, t).abs()))
                    .expect("leftover entry");
                w.swap_rows(t, i);
                continue;
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(&piv);
                w.col_sub(j, t, &q);
                leftover |= !w.a.get(t, j).is_zero();
            }
            if leftover {
                let j = (t + 1..n)
                    .filter(|&j| !w.a.get(t, j).is_zero())
                    .min_by(|&x, &y| w.a.get(t, x).abs().cmp(&w.a.get(t, y).abs()))
                    .expect("leftover entry");
                w.swap_cols(t, j);
                continue;
            }
            // The pivot must divide the whole remaining block.
            if !piv.abs().is_one() {
                let bad =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a.get(i, j).is_multiple_of(&piv)));
                if let Some(i) = bad {
                    w.row_sub(t, i, &-BigInt::one());
                    continue;
                }
            }
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        diag.push(w.a.get(t, t).clone());
        t += 1;
    }
    let (p, p_inv, q, q_inv) = match w.t {
        Some(t) => (Some(t.p), Some(t.p_inv), Some(t.q), Some(t.q_inv)),
        None => (None, None, None, None),
    };
    Snf {
        diag,
        p,
        p_inv,
        q,
        q_inv,
    }
}

fn min_entry(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..a.rows {
        for j in c0..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v.abs() < *b) {
                let abs = v.abs();
                let unit = abs.is_one();
                best = Some((i, j, abs));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// A basis of the integer kernel `{x : A x = 0}` as vectors of length `A.cols()`.
pub fn kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith(a, true);
    let rank = snf.rank();
    let q = snf.q.expect("transforms requested");
    (rank..a.cols()).map(|j| q.column(j)).collect()
}
