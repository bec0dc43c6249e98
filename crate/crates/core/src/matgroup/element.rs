use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Cyclotomic;

/// An invertible square matrix over Q(zeta_m), all entries at one conductor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    matrix: Matrix<Cyclotomic>,
}

impl GroupElement {
    /// Wraps a square matrix whose entries share a conductor. Invertibility
    /// is checked by [`crate::matgroup::FiniteMatrixGroup::close`].
    pub fn new(matrix: Matrix<Cyclotomic>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch("group elements must be square and nonempty".into()));
        }
        let m = matrix.get(0, 0).conductor();
        if let Some(bad) = matrix.entries().iter().find(|e| e.conductor() != m) {
            return Err(Error::ConductorMismatch(m, bad.conductor()));
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Self::new(Matrix::from_rows(rows))
    }

    /// An integer matrix viewed over Q(zeta_m).
    pub fn from_integers(m: u64, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Cyclotomic::from_int(m, v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize, m: u64) -> Self {
        Self {
            matrix: Matrix::identity_like(n, &Cyclotomic::one(m)),
        }
    }

    /// `diag(zeta_m^{e_1}, ..., zeta_m^{e_n})`.
    pub fn diagonal_roots(m: u64, exps: &[i64]) -> Self {
        Self {
            matrix: Matrix::diagonal(exps.iter().map(|&e| Cyclotomic::zeta_pow(m, e)).collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn conductor(&self) -> u64 {
        self.matrix.get(0, 0).conductor()
    }

    pub fn matrix(&self) -> &Matrix<Cyclotomic> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Cyclotomic {
        self.matrix.get(i, j)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            matrix: self.matrix.pow(e),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix.is_diagonal()
    }

    pub fn det(&self) -> Cyclotomic {
        if self.is_diagonal() {
            let n = self.dim();
            return (1..n).fold(self.entry(0, 0).clone(), |acc, i| &acc * self.entry(i, i));
        }
        self.matrix.det()
    }

    pub fn trace(&self) -> Cyclotomic {
        self.matrix.trace()
    }

    /// Exact inverse by Gauss-Jordan elimination over Q(zeta_m).
    pub fn inverse(&self) -> Option<Self> {
        self.matrix.inverse().map(|matrix| Self { matrix })
    }

    /// Promotes every entry to conductor `target`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        let rows = self
            .matrix
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|e| e.embed(target)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Smallest `d >= 1` with `g^d = 1`.
    ///
    /// Diagonal matrices are read off from the orders of their entries;
    /// otherwise powers are taken until the identity appears or `cap` is hit.
    pub fn order(&self, cap: usize) -> Result<u64> {
        if self.is_diagonal() {
            let mut d = 1u64;
            for i in 0..self.dim() {
                let (k, _) = self
                    .entry(i, i)
                    .root_of_unity_log()
                    .map_err(|_| Error::OrderCapExceeded(cap))?;
                d = d.lcm(&k);
            }
            return Ok(d);
        }
        let mut p = self.clone();
        for k in 1..=cap as u64 {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.mul(self);
        }
        Err(Error::OrderCapExceeded(cap))
    }

    /// `g != 1` and `rank(g - 1) = 1`.
    pub fn is_pseudo_reflection(&self) -> bool {
        self.fixed_rank() == 1
    }

    /// `rank(g - 1)`.
    pub fn fixed_rank(&self) -> usize {
        let id = Matrix::identity_like(self.dim(), self.entry(0, 0));
        self.matrix.sub(&id).rank()
    }
}
