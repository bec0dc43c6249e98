//! Hermite and Smith normal forms over any signed integer type.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer types the lattice code runs on (`i64`, `i128`, `BigInt`, ...).
pub trait Int:
    Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

impl<T> Int for T where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

pub type IntMatrix<T> = Vec<Vec<T>>;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is upper echelon with positive pivots, every entry above a
/// pivot reduced into `[0, pivot)`, and zero rows dropped.
pub fn hermite_normal_form<T: Int>(rows: &[Vec<T>]) -> IntMatrix<T> {
    let mut a: IntMatrix<T> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let Some(best) = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            else {
                break;
            };
            a.swap(r, best);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                axpy(&mut a[i], &q, &pivot_row);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for v in a[r].iter_mut() {
                    *v = -v.clone();
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][col].div_floor(&pivot_row[col]);
                axpy(&mut a[i], &q, &pivot_row);
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// `row -= q * other`.
fn axpy<T: Int>(row: &mut [T], q: &T, other: &[T]) {
    if q.is_zero() {
        return;
    }
    for (x, y) in row.iter_mut().zip(other) {
        *x = x.clone() - q.clone() * y.clone();
    }
}

/// Smith normal form with transforms.
#[derive(Debug, Clone)]
pub struct Smith<T> {
    /// Unimodular, `rows x rows`.
    pub left: IntMatrix<T>,
    /// Diagonal entries `s_1 | s_2 | ...`, zeros last; length `min(rows, cols)`.
    pub diagonal: Vec<T>,
    /// Unimodular, `cols x cols`.
    pub right: IntMatrix<T>,
}

impl<T: Int> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity<T: Int>(n: usize) -> IntMatrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Computes `left * a * right = diag(s)`.
pub fn smith_normal_form<T: Int>(a: &[Vec<T>]) -> Smith<T> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut s: IntMatrix<T> = a.to_vec();
    let mut u = identity::<T>(m);
    let mut v = identity::<T>(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            s.swap(t, bi);
            u.swap(t, bi);
            for row in s.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut done = true;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                let (srow, urow) = (s[t].clone(), u[t].clone());
                axpy(&mut s[i], &q, &srow);
                axpy(&mut u[i], &q, &urow);
                if !s[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                for row in s.iter_mut() {
                    let d = q.clone() * row[t].clone();
                    row[j] = row[j].clone() - d;
                }
                for row in v.iter_mut() {
                    let d = q.clone() * row[t].clone();
                    row[j] = row[j].clone() - d;
                }
                if !s[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                continue;
            }
            // Enforce divisibility of the rest of the block.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let (srow, urow) = (s[i].clone(), u[i].clone());
                    let one = T::one();
                    axpy(&mut s[t], &-one.clone(), &srow);
                    axpy(&mut u[t], &-one, &urow);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..m.min(n)).map(|i| s[i][i].clone()).collect();
    Smith {
        left: u,
        diagonal,
        right: v,
    }
}

pub fn mat_mul<T: Int>(a: &[Vec<T>], b: &[Vec<T>]) -> IntMatrix<T> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(T::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone())
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square integer matrix via the Hermite form (up to sign).
pub fn abs_det<T: Int>(a: &[Vec<T>]) -> T {
    let h = hermite_normal_form(a);
    if h.len() < a.len() {
        return T::zero();
    }
    h.iter().enumerate().fold(T::one(), |acc, (i, r)| acc * r[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn hnf_small() {
        let h = hermite_normal_form(&[vec![2i64, 4], vec![3, 1], vec![6, 0]]);
        // gcd of the 2x2 minors (-10, -24, -6)
        assert_eq!(h.len(), 2);
        assert_eq!(h[0][0] * h[1][1], 2);
        assert_eq!(h[1][0], 0);
        assert!(h[0][1] >= 0 && h[0][1] < h[1][1]);
    }

    #[test]
    fn snf_known() {
        let a = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let prod = mat_mul(&mat_mul(&s.left, &a), &s.right);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { s.diagonal[i] } else { 0 });
            }
        }
    }

    #[test]
    fn bigint_instantiation() {
        let a: Vec<Vec<BigInt>> = vec![vec![4.into(), 6.into()], vec![6.into(), 9.into()]];
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(s.rank(), 1);
    }

    proptest! {
        #[test]
        fn snf_is_a_factorization(entries in proptest::collection::vec(-20i64..20, 12)) {
            let a: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let s = smith_normal_form(&a);
            let prod = mat_mul(&mat_mul(&s.left, &a), &s.right);
            for (i, row) in prod.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let expect = if i == j { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(*v, expect);
                }
            }
            for w in s.diagonal.windows(2) {
                if w[1] != 0 {
                    prop_assert!(w[0] != 0 && w[1] % w[0] == 0);
                }
            }
            prop_assert_eq!(abs_det(&s.left).abs(), 1);
            prop_assert_eq!(abs_det(&s.right).abs(), 1);
        }

        #[test]
        fn hnf_preserves_determinant(entries in proptest::collection::vec(-9i64..9, 9)) {
            let a: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
            prop_assert_eq!(abs_det(&a), det.abs());
        }
    }
}
