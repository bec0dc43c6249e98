use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::lattice::QuotLattice;
use super::lp::find_point;
use crate::error::{Error, Result};
use crate::linalg::integer::Int;
use crate::linalg::Matrix;

/// A strongly convex rational polyhedral cone given by ray generators in
/// ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone<T: Int> {
    n: usize,
    rays: Vec<Vec<Ratio<T>>>,
    dim: usize,
}

pub(crate) fn rank<T: Int>(rows: &[Vec<Ratio<T>>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows.to_vec()).rank()
    }
}

impl<T: Int> Cone<T> {
    /// Checks the rays are nonzero, pairwise not on a common half-line, and
    /// span no line.
    pub fn new(n: usize, rays: Vec<Vec<Ratio<T>>>) -> Result<Self> {
        if rays.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("rays must have length {n}")));
        }
        if rays.iter().any(|r| r.iter().all(|x| x.is_zero())) {
            return Err(Error::InvalidCone("zero ray".into()));
        }
        for i in 0..rays.len() {
            for j in 0..i {
                if rank(&[rays[i].clone(), rays[j].clone()]) == 1 {
                    let same_side = rays[i]
                        .iter()
                        .zip(&rays[j])
                        .all(|(a, b)| (a * b).is_zero() || (a * b).is_positive());
                    let what = if same_side { "the same half-line" } else { "a line" };
                    return Err(Error::InvalidCone(format!("rays {j} and {i} span {what}")));
                }
            }
        }
        let dim = rank(&rays);
        let cone = Self { n, rays, dim };
        if !cone.is_simplicial() && find_point(n, &[], &cone.rays).is_none() {
            return Err(Error::InvalidCone("cone contains a line".into()));
        }
        Ok(cone)
    }

    /// The positive orthant `cone(e_1, ..., e_n)`.
    pub fn standard(n: usize) -> Self {
        let rays = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect())
            .collect();
        Self { n, rays, dim: n }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Ratio<T>>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim == self.rays.len()
    }

    pub fn select(&self, subset: &[usize]) -> Vec<Vec<Ratio<T>>> {
        subset.iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn subset_rank(&self, subset: &[usize]) -> usize {
        rank(&self.select(subset))
    }

    /// A functional vanishing on the rays in `subset` and at least 1 on every
    /// other ray; exists iff `subset` is the ray set of a face.
    pub fn face_normal(&self, subset: &[usize]) -> Option<Vec<Ratio<T>>> {
        let others: Vec<Vec<Ratio<T>>> = (0..self.rays.len())
            .filter(|i| !subset.contains(i))
            .map(|i| self.rays[i].clone())
            .collect();
        find_point(self.n, &self.select(subset), &others)
    }

    pub fn is_face(&self, subset: &[usize]) -> bool {
        if subset.iter().any(|&i| i >= self.rays.len()) {
            return false;
        }
        if self.is_simplicial() {
            return true;
        }
        self.face_normal(subset).is_some()
    }

    /// Ray sets of all faces, by dimension and then lexicographically; the
    /// first is the zero face and the last is the cone itself.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let k = self.rays.len();
        assert!(k < 32, "face enumeration is exhaustive over ray subsets");
        let mut faces: Vec<(usize, Vec<usize>)> = (0u32..(1 << k))
            .map(|mask| (0..k).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| self.is_face(s))
            .map(|s| (self.subset_rank(&s), s))
            .collect();
        faces.sort();
        faces.into_iter().map(|(_, s)| s).collect()
    }

    /// Rays lying in the cone spanned by the others.
    pub fn redundant_rays(&self) -> Vec<usize> {
        if self.is_simplicial() {
            return Vec::new();
        }
        (0..self.rays.len()).filter(|&i| !self.is_face(&[i])).collect()
    }

    /// Subsets of `subset` of size `rank(subset)` with independent rays,
    /// lexicographically.
    pub fn bases_within(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let c = self.subset_rank(subset);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec<T: Int>(
            cone: &Cone<T>,
            subset: &[usize],
            start: usize,
            c: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == c {
                if cone.subset_rank(cur) == c {
                    out.push(cur.clone());
                }
                return;
            }
            for i in start..subset.len() {
                cur.push(subset[i]);
                rec(cone, subset, i + 1, c, cur, out);
                cur.pop();
            }
        }
        rec(self, subset, 0, c, &mut cur, &mut out);
        out
    }

    /// Fails unless every ray lies in `lattice` and is primitive there.
    pub fn check_primitive(&self, lattice: &QuotLattice<T>) -> Result<()> {
        if lattice.dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "cone in dimension {}, lattice in dimension {}",
                self.n,
                lattice.dim()
            )));
        }
        for (i, r) in self.rays.iter().enumerate() {
            let Some(c) = lattice.coordinates(r) else {
                return Err(Error::InvalidCone(format!("ray {i} is not in the lattice")));
            };
            let g = c.iter().fold(T::zero(), |acc, x| acc.gcd(x));
            if !g.is_one() {
                return Err(Error::InvalidCone(format!("ray {i} is not primitive")));
            }
        }
        Ok(())
    }

    /// `ray / k` for the largest integer `k` keeping it in the lattice.
    pub fn primitive_along(lattice: &QuotLattice<T>, v: &[Ratio<T>]) -> Option<Vec<Ratio<T>>> {
        // the multiples of v in N are generated by v/k with k = gcd of the
        // coordinates of a large enough multiple
        let mut scale = T::one();
        for x in v {
            scale = scale.lcm(x.denom());
        }
        scale = scale * lattice.den().clone();
        let big: Vec<Ratio<T>> = v.iter().map(|x| x.clone() * Ratio::from_integer(scale.clone())).collect();
        let c = lattice.coordinates(&big)?;
        let g = c.iter().fold(T::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return None;
        }
        let f = Ratio::new(scale, g);
        Some(v.iter().map(|x| x.clone() * f.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Ratio<i64>> {
        xs.iter().map(|&x| Ratio::from_integer(x)).collect()
    }

    #[test]
    fn validation() {
        assert!(Cone::<i64>::new(2, vec![v(&[1, 0]), v(&[2, 0])]).is_err());
        assert!(Cone::<i64>::new(2, vec![v(&[1, 0]), v(&[-1, 0])]).is_err());
        assert!(Cone::<i64>::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]).is_err());
        assert!(Cone::<i64>::new(2, vec![v(&[0, 0])]).is_err());
        let c = Cone::<i64>::new(2, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]).unwrap();
        assert_eq!(c.redundant_rays(), vec![1]);
    }

    #[test]
    fn square_cone_faces() {
        // cone over a square: 4 rays, 4 facets, 4 edges, apex
        let c = Cone::<i64>::new(
            3,
            vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])],
        )
        .unwrap();
        assert!(!c.is_simplicial());
        let faces = c.faces();
        assert_eq!(faces.len(), 1 + 4 + 4 + 1);
        assert!(c.is_face(&[0, 1]));
        assert!(!c.is_face(&[0, 2]));
        assert!(c.redundant_rays().is_empty());
        assert_eq!(c.bases_within(&[0, 1, 2, 3]).len(), 4);
    }

    #[test]
    fn primitivity() {
        let l = QuotLattice::<i64>::from_weights(2, &[vec![Ratio::new(1, 2), Ratio::new(1, 1)]]).unwrap();
        assert!(Cone::standard(2).check_primitive(&l).is_err());
        assert_eq!(
            Cone::primitive_along(&l, &v(&[1, 0])).unwrap(),
            vec![Ratio::new(1, 2), Ratio::from_integer(0)]
        );
        let l3 = QuotLattice::<i64>::from_weights(2, &[vec![Ratio::new(1, 3), Ratio::new(1, 3)]]).unwrap();
        assert!(Cone::standard(2).check_primitive(&l3).is_ok());
        assert_eq!(
            Cone::primitive_along(&l3, &v(&[3, 3])).unwrap(),
            vec![Ratio::new(1, 3), Ratio::new(1, 3)]
        );
    }
}
