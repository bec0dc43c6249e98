//! Dense linear algebra over exact scalars.
//!
//! [`Ring`] abstracts over rationals of any integer width and cyclotomic
//! numbers of any coefficient type. Cyclotomic zeros carry a conductor, so
//! the constants are produced from an existing value (`zero_like`) instead of
//! `num_traits::Zero`.

pub mod integer;

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{Coeff, CyclotomicNumber};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// A [`Ring`] with inverses of nonzero elements.
pub trait Field: Ring {
    fn inv_ref(&self) -> Option<Self>;
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Integer + Signed + Debug,
{
    fn zero_like(&self) -> Self {
        Ratio::zero()
    }
    fn one_like(&self) -> Self {
        Ratio::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug,
{
    fn inv_ref(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl<Q: Coeff> Ring for CyclotomicNumber<Q>
where
    CyclotomicNumber<Q>: Debug,
{
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.conductor())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl<Q: Coeff> Field for CyclotomicNumber<Q>
where
    CyclotomicNumber<Q>: Debug,
{
    fn inv_ref(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Identity of size `n` built from the scalar `unit`'s ring.
    pub fn identity_like(n: usize, unit: &R) -> Self {
        let one = unit.one_like();
        let zero = unit.zero_like();
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let n = entries.len();
        let zero = entries[0].zero_like();
        let mut m = Self::from_fn(n, n, |_, _| zero.clone());
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let zero = self.data[0].zero_like();
        let mut out = Self::from_fn(self.rows, other.cols, |_, _| zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square());
        let mut t = self.data[0].zero_like();
        for i in 0..self.rows {
            t = t.add_ref(self.get(i, i));
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == v.one_like()
                    } else {
                        v.is_zero_elem()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero_elem()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity_like(self.rows, &self.data[0]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(xI - A)`, by Berkowitz's
    /// division-free algorithm.
    pub fn charpoly(&self) -> Vec<R> {
        assert!(self.is_square());
        let n = self.rows;
        let unit = &self.data[0];
        let one = unit.one_like();
        let mut p = vec![one.clone(), self.get(0, 0).neg_ref()];
        for r in 1..n {
            // Leading block A_r, column S, row R, corner alpha.
            let s: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<R> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let alpha = self.get(r, r);
            let mut t = vec![one.clone(), alpha.neg_ref()];
            let mut v = s;
            for _ in 0..r {
                t.push(dot(&row, &v).neg_ref());
                v = (0..r)
                    .map(|i| {
                        let lead: Vec<R> = (0..r).map(|j| self.get(i, j).clone()).collect();
                        dot(&lead, &v)
                    })
                    .collect();
            }
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = unit.zero_like();
                for (j, pj) in p.iter().enumerate().take(i.min(r) + 1) {
                    acc = acc.add_ref(&t[i - j].mul_ref(pj));
                }
                next.push(acc);
            }
            p = next;
        }
        p
    }

    pub fn det(&self) -> R {
        let n = self.rows;
        let c = self.charpoly();
        if n % 2 == 0 {
            c[n].clone()
        } else {
            c[n].neg_ref()
        }
    }

    /// Rank by fraction-free elimination; no inverses needed.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| !m[r][col].is_zero_elem()) else {
                continue;
            };
            m.swap(rank, piv);
            let p = m[rank][col].clone();
            for r in rank + 1..self.rows {
                if m[r][col].is_zero_elem() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in col..self.cols {
                    m[r][c] = m[r][c].mul_ref(&p).sub_ref(&m[rank][c].mul_ref(&f));
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

pub fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero_elem() || y.is_zero_elem() {
            continue;
        }
        acc = acc.add_ref(&x.mul_ref(y));
    }
    acc
}

/// Power sums `tr(A^j)` for `j = 0..count` from the characteristic
/// polynomial via Newton's identities.
pub fn power_sums_from_charpoly<R: Ring>(
    charpoly: &[R],
    count: usize,
    int: impl Fn(i64) -> R,
) -> Vec<R> {
    let n = charpoly.len() - 1;
    let mut p: Vec<R> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(int(n as i64));
            continue;
        }
        let mut acc = if k <= n {
            int(k as i64).mul_ref(&charpoly[k])
        } else {
            charpoly[0].zero_like()
        };
        for i in 1..=k.min(n) {
            if i == k {
                continue;
            }
            acc = acc.add_ref(&charpoly[i].mul_ref(&p[k - i]));
        }
        p.push(acc.neg_ref());
    }
    p
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !m[i][col].is_zero_elem()) else {
                continue;
            };
            m.swap(r, piv);
            let inv = m[r][col].inv_ref().expect("nonzero pivot");
            for c in 0..self.cols {
                m[r][c] = m[r][c].mul_ref(&inv);
            }
            for i in 0..self.rows {
                if i != r && !m[i][col].is_zero_elem() {
                    let f = m[i][col].clone();
                    for c in 0..self.cols {
                        m[i][c] = m[i][c].sub_ref(&m[r][c].mul_ref(&f));
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (
            Self {
                rows: self.rows,
                cols: self.cols,
                data: m.into_iter().flatten().collect(),
            },
            pivots,
        )
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let unit = &self.data[0];
        let id = Self::identity_like(n, unit);
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                id.get(i, j - n).clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red.get(i, j + n).clone()))
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (red, pivots) = self.rref();
        let unit = &self.data[0];
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![unit.zero_like(); self.cols];
                v[f] = unit.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = red.get(r, f).neg_ref();
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b` plus a nullspace basis, or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<(Vec<F>, Vec<Vec<F>>)> {
        assert_eq!(b.len(), self.rows);
        let unit = &self.data[0];
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![unit.zero_like(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(r, self.cols).clone();
        }
        Some((x, self.nullspace()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect())
    }

    /// Laplace expansion, independent of Berkowitz.
    fn laplace(a: &Matrix<BigRational>) -> BigRational {
        let n = a.nrows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut total = rat_int(0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                a.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.get(0, j) * laplace(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn berkowitz_matches_laplace() {
        let a = m(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 1, 1, 1]]);
        assert_eq!(a.det(), laplace(&a));
        let b = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.det(), rat_int(1));
        assert_eq!(b.charpoly(), vec![rat_int(1), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn newton_power_sums() {
        let a = m(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let cp = a.charpoly();
        let sums = power_sums_from_charpoly(&cp, 7, rat_int);
        let mut pw = Matrix::identity_like(3, &rat_int(1));
        for s in sums {
            assert_eq!(pw.trace(), s);
            pw = pw.mul(&a);
        }
    }

    #[test]
    fn rank_and_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.inverse().is_none());
        let b = m(&[&[2, 1], &[1, 1]]);
        let inv = b.inverse().unwrap();
        assert!(b.mul(&inv).is_identity());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[rat_int(1), rat_int(2)]).is_none());
        let (x, null) = a.solve(&[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), rat_int(1));
        assert_eq!(null.len(), 1);
        let _ = rat(1, 2);
    }
}
