use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::integer::{hermite_normal_form, Int, IntMatrix};
use crate::linalg::Matrix;

/// A full-rank lattice `N` in `Q^n`, stored as `(1/den) * rowspan(hnf)` with
/// `hnf` an upper triangular integer matrix in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotLattice<T> {
    n: usize,
    den: T,
    hnf: IntMatrix<T>,
}

pub(crate) fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("small integer fits")
}

impl<T: Int> QuotLattice<T> {
    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        let hnf = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Self { n, den: T::one(), hnf }
    }

    /// The lattice generated by `gens`, which must span `Q^n`.
    pub fn from_generators(n: usize, gens: &[Vec<Ratio<T>>]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in dimension {n}",
                g.len()
            )));
        }
        let den = gens
            .iter()
            .flatten()
            .fold(T::one(), |acc, q| acc.lcm(q.denom()));
        let rows: IntMatrix<T> = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|q| q.numer().clone() * (den.clone() / q.denom().clone()))
                    .collect()
            })
            .collect();
        let hnf = hermite_normal_form(&rows);
        if hnf.len() != n {
            return Err(Error::InvalidLattice(format!(
                "generators span rank {} in dimension {n}",
                hnf.len()
            )));
        }
        Ok(Self { n, den, hnf }.normalized())
    }

    /// Removes common factors between `den` and all of `hnf`.
    fn normalized(mut self) -> Self {
        let g = self
            .hnf
            .iter()
            .flatten()
            .fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            self.den = self.den / g.clone();
            for x in self.hnf.iter_mut().flatten() {
                *x = x.clone() / g.clone();
            }
        }
        self
    }

    /// `Z^n + sum Z u` for the given weight vectors.
    pub fn from_weights(n: usize, weights: &[Vec<Ratio<T>>]) -> Result<Self> {
        let mut gens = Self::standard(n).basis();
        gens.extend(weights.iter().cloned());
        Self::from_generators(n, &gens)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    /// The integer Hermite basis, to be divided by [`QuotLattice::den`].
    pub fn hnf(&self) -> &IntMatrix<T> {
        &self.hnf
    }

    /// Basis rows as rationals.
    pub fn basis(&self) -> Vec<Vec<Ratio<T>>> {
        self.hnf
            .iter()
            .map(|r| r.iter().map(|x| Ratio::new(x.clone(), self.den.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the basis, or `None` if `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &[Ratio<T>]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.n);
        let mut rem = Vec::with_capacity(self.n);
        for q in v {
            let x = q.clone() * Ratio::from_integer(self.den.clone());
            if !x.is_integer() {
                return None;
            }
            rem.push(x.to_integer());
        }
        let mut coords = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let (c, r) = rem[j].div_rem(&self.hnf[j][j]);
            if !r.is_zero() {
                return None;
            }
            for (k, x) in rem.iter_mut().enumerate().skip(j) {
                *x = x.clone() - c.clone() * self.hnf[j][k].clone();
            }
            coords.push(c);
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[Ratio<T>]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Z^n` is a sublattice.
    pub fn contains_standard(&self) -> bool {
        // with the triangular basis, e_i is in N iff h_ii divides den and the
        // remaining coordinates reduce; testing each unit vector is simplest
        (0..self.n).all(|i| {
            let mut e = vec![Ratio::zero(); self.n];
            e[i] = Ratio::one();
            self.contains(&e)
        })
    }

    /// `[N : Z^n]`, when `Z^n` is a sublattice.
    pub fn index_over_zn(&self) -> Option<T> {
        if !self.contains_standard() {
            return None;
        }
        let mut idx = T::one();
        for i in 0..self.n {
            idx = idx * (self.den.clone() / self.hnf[i][i].clone());
        }
        Some(idx)
    }

    /// Basis of `M = {m : <m, N> in Z}`, dual to [`QuotLattice::basis`].
    pub fn dual_basis(&self) -> Vec<Vec<Ratio<T>>> {
        if self.n == 0 {
            return Vec::new();
        }
        let b = Matrix::from_rows(self.basis());
        b.inverse().expect("full rank").transpose().to_rows()
    }

    /// The points of `N` in the half-open box `(0, 1]^n`, sorted.
    ///
    /// Walking the triangular basis, the `j`-th coordinate of a point is
    /// `acc_j + c_j h_jj` with `h_jj | den`, so each partial point has exactly
    /// `den / h_jj` continuations in `(0, den]`. The total is `[N : Z^n]`.
    pub fn box_points(&self) -> Result<Vec<Vec<Ratio<T>>>> {
        if !self.contains_standard() {
            return Err(Error::InvalidLattice(
                "box points need Z^n inside the lattice".into(),
            ));
        }
        let mut out = Vec::new();
        let mut acc = vec![T::zero(); self.n];
        self.walk(0, &mut acc, &mut out);
        let mut pts: Vec<Vec<Ratio<T>>> = out
            .into_iter()
            .map(|p| p.into_iter().map(|x| Ratio::new(x, self.den.clone())).collect())
            .collect();
        pts.sort();
        Ok(pts)
    }

    fn walk(&self, j: usize, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if j == self.n {
            out.push(acc.clone());
            return;
        }
        let h = &self.hnf[j][j];
        // smallest c with acc_j + c h > 0
        let start = (T::one() - acc[j].clone()).div_ceil(h);
        let count = self.den.clone() / h.clone();
        let saved = acc.clone();
        let mut c = start;
        let mut i = T::zero();
        while i < count {
            for k in j..self.n {
                acc[k] = saved[k].clone() + c.clone() * self.hnf[j][k].clone();
            }
            self.walk(j + 1, acc, out);
            c = c + T::one();
            i = i + T::one();
        }
        acc.clone_from(&saved);
    }

    /// Multiplies coordinate `i` by `t[i]`.
    pub fn rescale(&self, t: &[T]) -> Self {
        let gens: Vec<Vec<Ratio<T>>> = self
            .basis()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .zip(t)
                    .map(|(x, ti)| x * Ratio::from_integer(ti.clone()))
                    .collect()
            })
            .collect();
        Self::from_generators(self.n, &gens).expect("rescaling keeps full rank")
    }

    /// For each axis, `t_i = 1 / (smallest positive i-th coordinate of a
    /// point of N on that axis)`. Requires `Z^n` inside `N`.
    pub fn axis_multipliers(&self) -> Result<Vec<T>> {
        if !self.contains_standard() {
            return Err(Error::InvalidLattice(
                "axis multipliers need Z^n inside the lattice".into(),
            ));
        }
        Ok((0..self.n)
            .map(|i| {
                // move column i last; the last HNF pivot generates N on axis i
                let rows: IntMatrix<T> = self
                    .hnf
                    .iter()
                    .map(|r| {
                        let mut r2: Vec<T> = (0..self.n).filter(|&k| k != i).map(|k| r[k].clone()).collect();
                        r2.push(r[i].clone());
                        r2
                    })
                    .collect();
                let h = hermite_normal_form(&rows);
                self.den.clone() / h[self.n - 1][self.n - 1].clone()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    #[test]
    fn weights_and_index() {
        let z = QuotLattice::<i64>::from_weights(2, &[]).unwrap();
        assert_eq!(z, QuotLattice::standard(2));
        assert_eq!(z.index_over_zn(), Some(1));
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 3), q(1, 3)]]).unwrap();
        assert_eq!(l.index_over_zn(), Some(3));
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 4), q(3, 4)]]).unwrap();
        assert_eq!(l.index_over_zn(), Some(4));
    }

    #[test]
    fn membership() {
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 3), q(1, 3)]]).unwrap();
        assert!(l.contains(&[q(2, 3), q(2, 3)]));
        assert!(l.contains(&[q(4, 3), q(1, 3)]));
        assert!(!l.contains(&[q(1, 3), q(2, 3)]));
        assert!(!l.contains(&[q(1, 6), q(1, 6)]));
        let c = l.coordinates(&[q(4, 3), q(1, 3)]).unwrap();
        let b = l.basis();
        for j in 0..2 {
            let s: Q = (0..2).map(|i| b[i][j] * Q::from_integer(c[i])).sum();
            assert_eq!(s, [q(4, 3), q(1, 3)][j]);
        }
    }

    #[test]
    fn box_examples() {
        assert_eq!(
            QuotLattice::<i64>::standard(2).box_points().unwrap(),
            vec![vec![q(1, 1), q(1, 1)]]
        );
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 3), q(1, 3)]]).unwrap();
        assert_eq!(
            l.box_points().unwrap(),
            vec![
                vec![q(1, 3), q(1, 3)],
                vec![q(2, 3), q(2, 3)],
                vec![q(1, 1), q(1, 1)],
            ]
        );
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 4), q(3, 4)]]).unwrap();
        assert_eq!(
            l.box_points().unwrap(),
            vec![
                vec![q(1, 4), q(3, 4)],
                vec![q(1, 2), q(1, 2)],
                vec![q(3, 4), q(1, 4)],
                vec![q(1, 1), q(1, 1)],
            ]
        );
    }

    #[test]
    fn dual_pairs_to_identity() {
        let l = QuotLattice::<i64>::from_weights(3, &[vec![q(1, 6), q(1, 3), q(1, 2)]]).unwrap();
        let b = l.basis();
        let m = l.dual_basis();
        for i in 0..3 {
            for j in 0..3 {
                let s: Q = (0..3).map(|k| b[i][k] * m[j][k]).sum();
                assert_eq!(s, if i == j { q(1, 1) } else { q(0, 1) });
            }
        }
        // (p, q) with p + q = 0 mod 3 is in the dual of 1/3(1,1)
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 3), q(1, 3)]]).unwrap();
        let dual = QuotLattice::from_generators(2, &l.dual_basis()).unwrap();
        assert!(dual.contains(&[q(1, 1), q(2, 1)]));
        assert!(dual.contains(&[q(3, 1), q(0, 1)]));
        assert!(!dual.contains(&[q(1, 1), q(0, 1)]));
    }

    #[test]
    fn axis_multipliers() {
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 2), q(1, 1)]]).unwrap();
        assert_eq!(l.axis_multipliers().unwrap(), vec![2, 1]);
        assert_eq!(l.rescale(&[2, 1]), QuotLattice::standard(2));
        let l = QuotLattice::<i64>::from_weights(2, &[vec![q(1, 3), q(1, 3)]]).unwrap();
        assert_eq!(l.axis_multipliers().unwrap(), vec![1, 1]);
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(QuotLattice::<i64>::from_generators(2, &[vec![q(1, 1), q(1, 1)]]).is_err());
    }

    #[test]
    fn bigint_instantiation() {
        let w = vec![vec![Ratio::new(BigInt::from(1), BigInt::from(5)), Ratio::new(BigInt::from(2), BigInt::from(5))]];
        let l = QuotLattice::<BigInt>::from_weights(2, &w).unwrap();
        assert_eq!(l.index_over_zn(), Some(BigInt::from(5)));
        assert_eq!(l.box_points().unwrap().len(), 5);
    }
}
