//! Dense integer matrices with checked arithmetic, Hermite and Smith normal
//! forms, and sublattice membership.
//!
//! Matrices are small here (at most a few dozen rows), so everything is a
//! straightforward row-major `Vec<i64>` and every arithmetic step is checked.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a
    /// `0 x cols` matrix.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_diagonal(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other[(k, j)]).ok_or(Error::Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add(prod).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn checked_apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect::<Result<Vec<_>>>()
    }

    /// `v * self` for a row vector `v`.
    pub fn checked_apply_left(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.rows, v.len(), "vector length mismatch");
        let mut out = vec![0i64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                axpy(&mut out, c, self.row(i))?;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        Hnf::of(self).map(|h| h.rank()).unwrap_or(0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= factor * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        if factor == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let delta = factor
                .checked_mul(self[(src, j)])
                .ok_or(Error::Overflow)?;
            let v = self[(dst, j)].checked_sub(delta).ok_or(Error::Overflow)?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// col[dst] -= factor * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        if factor == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let delta = factor
                .checked_mul(self[(i, src)])
                .ok_or(Error::Overflow)?;
            let v = self[(i, dst)].checked_sub(delta).ok_or(Error::Overflow)?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

/// out += c * v
pub fn axpy(out: &mut [i64], c: i64, v: &[i64]) -> Result<()> {
    for (o, &x) in out.iter_mut().zip(v) {
        *o = c
            .checked_mul(x)
            .and_then(|p| o.checked_add(p))
            .ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Row-style Hermite normal form `transform * input = form`.
///
/// `form` is in reduced row echelon shape: pivots are positive, entries above
/// each pivot lie in `[0, pivot)`, and rows past `rank()` are zero. The
/// transform is unimodular, so rows of `transform` past the rank span the
/// left kernel of the input.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn of(m: &IntMatrix) -> Result<Hnf> {
        let rows = m.nrows();
        let cols = m.ncols();
        let mut h = m.clone();
        let mut u = IntMatrix::identity(rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            loop {
                let best = (r..rows)
                    .filter(|&i| h[(i, col)] != 0)
                    .min_by_key(|&i| (h[(i, col)].unsigned_abs(), i));
                let Some(best) = best else { break };
                h.swap_rows(r, best);
                u.swap_rows(r, best);
                let mut clean = true;
                for i in r + 1..rows {
                    let q = h[(i, col)] / h[(r, col)];
                    h.sub_row(i, r, q)?;
                    u.sub_row(i, r, q)?;
                    if h[(i, col)] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if h[(r, col)] == 0 {
                continue;
            }
            if h[(r, col)] < 0 {
                h.negate_row(r);
                u.negate_row(r);
            }
            let p = h[(r, col)];
            for i in 0..r {
                let q = h[(i, col)].div_euclid(p);
                h.sub_row(i, r, q)?;
                u.sub_row(i, r, q)?;
            }
            pivots.push(col);
            r += 1;
        }
        Ok(Hnf {
            form: h,
            transform: u,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer combinations of the input rows that vanish.
    pub fn left_kernel(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.transform.nrows())
            .map(|i| self.transform.row(i).to_vec())
            .collect()
    }
}

/// Smith normal form `row_transform * input * col_transform = diagonal`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diagonal: IntMatrix,
    pub row_transform: IntMatrix,
    pub col_transform: IntMatrix,
}

impl Snf {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.diagonal.nrows().min(self.diagonal.ncols());
        (0..n)
            .map(|i| self.diagonal[(i, i)])
            .filter(|&d| d != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form of an arbitrary integer matrix. Total: never fails
/// except on `i64` overflow.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.unsigned_abs() < d[(bi, bj)].unsigned_abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Ok(Snf {
                    diagonal: d,
                    row_transform: u,
                    col_transform: v,
                });
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[(i, t)] / p;
                d.sub_row(i, t, q)?;
                u.sub_row(i, t, q)?;
                dirty |= d[(i, t)] != 0;
            }
            for j in t + 1..cols {
                let q = d[(t, j)] / p;
                d.sub_col(j, t, q)?;
                v.sub_col(j, t, q)?;
                dirty |= d[(t, j)] != 0;
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => {
                    // row t += row i, then the loop re-reduces
                    d.sub_row(t, i, -1)?;
                    u.sub_row(t, i, -1)?;
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_col(t);
            v.negate_col(t);
        }
    }
    Ok(Snf {
        diagonal: d,
        row_transform: u,
        col_transform: v,
    })
}

/// The integer span of a finite set of generator vectors, kept in Hermite
/// normal form for membership and coefficient recovery.
#[derive(Clone, Debug)]
pub struct Sublattice {
    dim: usize,
    generators: Vec<Vec<i64>>,
    hnf: Hnf,
}

impl Sublattice {
    pub fn span(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        for g in &generators {
            assert_eq!(g.len(), dim, "generator dimension mismatch");
        }
        let hnf = Hnf::of(&IntMatrix::from_rows(&generators, dim))?;
        Ok(Sublattice {
            dim,
            generators,
            hnf,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.hnf.rank()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| self.hnf.form.row(i).to_vec())
            .collect()
    }

    /// Coefficients over the echelon basis, or `None` if `v` is not in the span.
    fn reduce(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (i, &col) in self.hnf.pivots.iter().enumerate() {
            let p = self.hnf.form[(i, col)];
            if rest[col] % p != 0 {
                return Ok(None);
            }
            let c = rest[col] / p;
            axpy(&mut rest, -c, self.hnf.form.row(i))?;
            coeffs.push(c);
        }
        Ok(rest.iter().all(|&x| x == 0).then_some(coeffs))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.reduce(v)?.is_some())
    }

    /// Integer coefficients `c` with `sum c_i * generator_i = v`.
    pub fn solve(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        let Some(coeffs) = self.reduce(v)? else {
            return Ok(None);
        };
        let mut out = vec![0i64; self.generators.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            axpy(&mut out, c, self.hnf.transform.row(i))?;
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_relations() -> IntMatrix {
        // columns: x x^t x^τ x^tτ y y^t y^τ y^tτ
        IntMatrix::from_rows(
            &[
                vec![1, 0, 1, 0, -1, -1, 0, 0],
                vec![1, 0, 1, 0, 0, 0, -1, -1],
                vec![0, 1, 0, 1, -1, -1, 0, 0],
                vec![0, 1, 0, 1, 0, 0, -1, -1],
            ],
            8,
        )
    }

    fn check_snf(m: &IntMatrix) -> Snf {
        let snf = smith_normal_form(m).unwrap();
        let prod = snf
            .row_transform
            .checked_mul(m)
            .unwrap()
            .checked_mul(&snf.col_transform)
            .unwrap();
        assert_eq!(prod, snf.diagonal);
        for i in 0..snf.diagonal.nrows() {
            for j in 0..snf.diagonal.ncols() {
                if i != j {
                    assert_eq!(snf.diagonal[(i, j)], 0);
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {f:?}");
        }
        assert!(f.iter().all(|&x| x > 0));
        assert_eq!(snf.row_transform.rank(), m.nrows());
        assert_eq!(snf.col_transform.rank(), m.ncols());
        snf
    }

    #[test]
    fn snf_of_identity() {
        let snf = check_snf(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal, IntMatrix::identity(3));
    }

    #[test]
    fn snf_of_diag_2_3() {
        let snf = check_snf(&IntMatrix::from_diagonal(&[2, 3]));
        assert_eq!(snf.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn snf_of_h_relations_has_three_unit_factors() {
        let snf = check_snf(&h_relations());
        assert_eq!(snf.invariant_factors(), vec![1, 1, 1]);
    }

    #[test]
    fn snf_zero_and_empty() {
        let snf = check_snf(&IntMatrix::zeros(2, 3));
        assert!(snf.invariant_factors().is_empty());
        let snf = check_snf(&IntMatrix::zeros(0, 4));
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn hnf_rank_and_kernel_of_h_relations() {
        let m = h_relations();
        let hnf = Hnf::of(&m).unwrap();
        assert_eq!(hnf.rank(), 3);
        assert_eq!(hnf.transform.checked_mul(&m).unwrap(), hnf.form);
        let kernel = hnf.left_kernel();
        assert_eq!(kernel.len(), 1);
        let combo = m.checked_apply_left(&kernel[0]).unwrap();
        assert!(combo.iter().all(|&x| x == 0));
        // R1 - R2 - R3 + R4 = 0, up to sign
        let k = &kernel[0];
        let sign = k[0].signum();
        assert_eq!(
            k.iter().map(|x| x * sign).collect::<Vec<_>>(),
            vec![1, -1, -1, 1]
        );
    }

    #[test]
    fn sublattice_membership_and_solve() {
        let lat = Sublattice::span(3, vec![vec![2, 0, 0], vec![1, 1, 0]]).unwrap();
        assert!(lat.contains(&[0, 0, 0]).unwrap());
        assert!(lat.contains(&[3, 1, 0]).unwrap());
        assert!(!lat.contains(&[1, 0, 0]).unwrap());
        assert!(!lat.contains(&[0, 0, 1]).unwrap());
        let c = lat.solve(&[5, 3, 0]).unwrap().unwrap();
        let mut v = vec![0; 3];
        for (ci, g) in c.iter().zip(lat.generators()) {
            axpy(&mut v, *ci, g).unwrap();
        }
        assert_eq!(v, vec![5, 3, 0]);
    }
}
