//! Exact feasibility for `{x : E x = 0, G x >= 1}` by phase-one simplex with
//! Bland's rule.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::linalg::integer::Int;
use crate::linalg::Matrix;

type Q<T> = Ratio<T>;

/// A point of `{x in Q^n : <e, x> = 0 for e in eq, <g, x> >= 1 for g in ge}`,
/// or `None` if the set is empty.
pub(crate) fn find_point<T: Int>(n: usize, eq: &[Vec<Q<T>>], ge: &[Vec<Q<T>>]) -> Option<Vec<Q<T>>> {
    // parametrize the equality subspace as x = K y
    let kernel: Vec<Vec<Q<T>>> = if eq.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(eq.to_vec()).nullspace()
    };
    let r = kernel.len();
    let lift = |y: &[Q<T>]| -> Vec<Q<T>> {
        (0..n)
            .map(|j| (0..r).map(|i| y[i].clone() * kernel[i][j].clone()).sum())
            .collect()
    };
    if ge.is_empty() {
        return Some(vec![Q::zero(); n]);
    }
    if r == 0 {
        return None;
    }
    let a: Vec<Vec<Q<T>>> = ge
        .iter()
        .map(|g| {
            (0..r)
                .map(|i| (0..n).map(|j| g[j].clone() * kernel[i][j].clone()).sum())
                .collect()
        })
        .collect();
    let y = phase_one(&a)?;
    Some(lift(&y))
}

/// Solves `A y >= 1` for free `y` via `A y+ - A y- - s + a = 1`.
fn phase_one<T: Int>(a: &[Vec<Q<T>>]) -> Option<Vec<Q<T>>> {
    let p = a.len();
    let r = a[0].len();
    let cols = 2 * r + 2 * p;
    let rhs = cols;
    let mut t: Vec<Vec<Q<T>>> = (0..p)
        .map(|i| {
            let mut row = vec![Q::zero(); cols + 1];
            for j in 0..r {
                row[j] = a[i][j].clone();
                row[r + j] = -a[i][j].clone();
            }
            row[2 * r + i] = -Q::one();
            row[2 * r + p + i] = Q::one();
            row[rhs] = Q::one();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..p).map(|i| 2 * r + p + i).collect();
    // reduced costs of sum(a)
    let mut z: Vec<Q<T>> = (0..=cols)
        .map(|j| {
            if (2 * r + p..cols).contains(&j) {
                Q::zero()
            } else {
                -t.iter().map(|row| row[j].clone()).sum::<Q<T>>()
            }
        })
        .collect();
    while let Some(enter) = (0..cols).find(|&j| z[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..p {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = t[i][rhs].clone() / t[i][enter].clone();
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = t[l][rhs].clone() / t[l][enter].clone();
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // phase one is bounded below by zero
        let l = leave.expect("bounded objective");
        let piv = t[l][enter].clone();
        for v in t[l].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == l || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        let f = z[enter].clone();
        for (v, pv) in z.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * pv.clone();
        }
        basis[l] = enter;
    }
    if !z[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = t[i][rhs].clone();
    }
    Some((0..r).map(|j| x[j].clone() - x[r + j].clone()).collect())
}
