use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::power_sums_from_charpoly;
use crate::matgroup::{GroupElement, DEFAULT_CAP};
use crate::{Cyclotomic, Rational};

/// Eigenvalue exponents of a finite-order element `g` of order `d`: `g` is
/// conjugate to `diag(zeta_d^{e_1}, ..., zeta_d^{e_n})` with
/// `1 <= e_1 <= ... <= e_n <= d`, eigenvalue 1 recorded as `e = d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EigenExponents {
    order: u64,
    exps: Vec<u64>,
}

impl EigenExponents {
    /// Sorts and validates `exps` against `order`.
    pub fn new(order: u64, mut exps: Vec<u64>) -> Result<Self> {
        if order == 0 || exps.iter().any(|&e| e == 0 || e > order) {
            return Err(Error::InvalidWeights(format!(
                "exponents {exps:?} must lie in [1, {order}]"
            )));
        }
        exps.sort_unstable();
        Ok(Self { order, exps })
    }

    /// From angles `a_i / b_i` in turns; each is mapped into `(0, 1]` and the
    /// result is written over the lcm of the reduced denominators.
    pub fn from_turns(turns: &[(u64, u64)]) -> Self {
        let reduced: Vec<(u64, u64)> = turns
            .iter()
            .map(|&(a, b)| {
                let a = a % b;
                if a == 0 {
                    (1, 1)
                } else {
                    let g = a.gcd(&b);
                    (a / g, b / g)
                }
            })
            .collect();
        let order = reduced.iter().fold(1u64, |acc, &(_, b)| acc.lcm(&b));
        let exps = reduced.iter().map(|&(a, b)| a * (order / b)).collect();
        Self::new(order, exps).expect("angles reduce into range")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    /// `e -> m_e`, listing only exponents that occur.
    pub fn multiplicities(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.exps {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    /// `sum e_i / d`.
    pub fn age_prime(&self) -> Rational {
        let s: u64 = self.exps.iter().sum();
        Rational::new(BigInt::from(s), BigInt::from(self.order))
    }

    /// Number of eigenvalues equal to 1.
    pub fn fixed_count(&self) -> usize {
        self.exps.iter().filter(|&&e| e == self.order).count()
    }

    /// `#{i : e_i < d}`.
    pub fn moving_count(&self) -> usize {
        self.dim() - self.fixed_count()
    }

    /// The usual age: `age' - #{e_i = d}`.
    pub fn age(&self) -> Rational {
        self.age_prime() - Rational::from_integer(BigInt::from(self.fixed_count()))
    }

    /// `e_i / d` as reduced fractions in `(0, 1]`, ascending.
    pub fn weights(&self) -> Vec<Rational> {
        self.exps
            .iter()
            .map(|&e| Rational::new(BigInt::from(e), BigInt::from(self.order)))
            .collect()
    }
}

/// Eigen-exponents of a finite-order element.
pub fn eigen_exponents(g: &GroupElement) -> Result<EigenExponents> {
    if g.is_diagonal() {
        return diagonal_exponents(g);
    }
    eigen_exponents_by_traces(g, g.order(DEFAULT_CAP)?)
}

/// Reads the exponents off the diagonal entries.
pub fn diagonal_exponents(g: &GroupElement) -> Result<EigenExponents> {
    let turns = (0..g.dim())
        .map(|i| g.entry(i, i).root_of_unity_log().map(|(k, j)| (j, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenExponents::from_turns(&turns))
}

/// Character-projector formula
/// `m_e = (1/d) sum_{j<d} zeta_d^{-ej} tr(g^j)`, evaluated exactly in
/// Q(zeta_L) with `L = lcm(m, d)`.
///
/// The traces come from the characteristic polynomial via Newton's
/// identities. Each projection is accumulated in Q[x]/(x^L - 1), where
/// multiplying by a root of unity is a rotation, and reduced once.
pub fn eigen_exponents_by_traces(g: &GroupElement, d: u64) -> Result<EigenExponents> {
    let n = g.dim();
    let m = g.conductor();
    let big_l = m.lcm(&d);
    let cp = g.matrix().charpoly();
    let sums = power_sums_from_charpoly(&cp, d as usize, |v| Cyclotomic::from_int(m, v));
    let sums: Vec<Cyclotomic> = sums.iter().map(|s| s.embed(big_l)).collect::<Result<_>>()?;
    let step = big_l / d;
    let d_rat = Rational::from_integer(BigInt::from(d));
    let mut exps = Vec::with_capacity(n);
    for e in 1..=d {
        if exps.len() == n {
            break;
        }
        let mut buf = vec![Rational::zero(); big_l as usize];
        for (j, s) in sums.iter().enumerate() {
            // zeta_d^{-ej} = zeta_L^{-step*e*j}
            let shift = (big_l - (step * e * j as u64) % big_l) % big_l;
            for (k, c) in s.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = ((k as u64 + shift) % big_l) as usize;
                buf[idx] += c;
            }
        }
        let total = Cyclotomic::from_polynomial(big_l, buf);
        let bad = || Error::NonIntegerMultiplicity { exponent: e, order: d };
        let q = total.as_rational().ok_or_else(bad)? / &d_rat;
        if !q.is_integer() || q.is_negative() {
            return Err(bad());
        }
        let mult = q.to_integer().to_usize().ok_or_else(bad)?;
        exps.extend(std::iter::repeat_n(e, mult));
    }
    if exps.len() != n {
        return Err(Error::NonIntegerMultiplicity { exponent: d, order: d });
    }
    EigenExponents::new(d, exps)
}

pub fn age_prime(g: &GroupElement) -> Result<Rational> {
    Ok(eigen_exponents(g)?.age_prime())
}

pub fn age_usual(g: &GroupElement) -> Result<Rational> {
    Ok(eigen_exponents(g)?.age())
}

/// `d / gcd(d, k)` helper shared with the cyclic path.
pub(crate) fn order_of_power(d: u64, k: u64) -> u64 {
    d / d.gcd(&(k % d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn identity_exponents() {
        let e = eigen_exponents(&GroupElement::identity(3, 1)).unwrap();
        assert_eq!(e.order(), 1);
        assert_eq!(e.exps(), &[1, 1, 1]);
        assert_eq!(e.age_prime(), rat_int(3));
        assert_eq!(e.age(), rat_int(0));
    }

    #[test]
    fn diagonal_example() {
        let g = GroupElement::diagonal_roots(3, &[1, 2]);
        let e = eigen_exponents(&g).unwrap();
        assert_eq!((e.order(), e.exps().to_vec()), (3, vec![1, 2]));
        assert_eq!(eigen_exponents_by_traces(&g, 3).unwrap(), e);
    }

    #[test]
    fn rotation_by_traces() {
        let g = GroupElement::from_integers(1, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = eigen_exponents(&g).unwrap();
        assert_eq!((e.order(), e.exps().to_vec()), (4, vec![1, 3]));
        let mult = e.multiplicities();
        assert_eq!(mult.get(&1), Some(&1));
        assert_eq!(mult.get(&3), Some(&1));
        assert_eq!(mult.get(&2), None);
        assert_eq!(mult.get(&4), None);
    }

    #[test]
    fn ages() {
        let g = GroupElement::diagonal_roots(3, &[1, 1]);
        assert_eq!(age_prime(&g).unwrap(), rat(2, 3));
        assert_eq!(age_usual(&g).unwrap(), rat(2, 3));
        let h = GroupElement::diagonal_roots(2, &[1, 1, 0]);
        let e = eigen_exponents(&h).unwrap();
        assert_eq!(e.exps(), &[1, 1, 2]);
        assert_eq!(e.age_prime(), rat_int(2));
        assert_eq!(e.age(), rat_int(1));
        assert_eq!(age_prime(&GroupElement::identity(4, 1)).unwrap(), rat_int(4));
        assert_eq!(age_usual(&GroupElement::identity(4, 1)).unwrap(), rat_int(0));
    }

    #[test]
    fn turns_normalize() {
        let e = EigenExponents::from_turns(&[(1, 2), (0, 5), (2, 4)]);
        assert_eq!((e.order(), e.exps().to_vec()), (2, vec![1, 1, 2]));
    }

    #[test]
    fn powers() {
        assert_eq!(order_of_power(12, 0), 1);
        assert_eq!(order_of_power(12, 8), 3);
        assert_eq!(order_of_power(12, 5), 12);
    }
}
