use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::eigen::order_of_power;
use super::{ClassAges, EigenExponents, SingularityReport};
use crate::error::{Error, Result};
use crate::matgroup::{FiniteMatrixGroup, GroupElement};
use crate::Rational;

/// The cyclic group `1/d(e_1, ..., e_n)` generated by
/// `diag(zeta_d^{e_1}, ..., zeta_d^{e_n})`, `1 <= e_i <= d`.
///
/// Everything here works on exponent vectors: the element `g^k` has
/// eigenvalues `zeta_d^{k e_i}`, so its eigen-exponents are read off without
/// building matrices. [`CyclicType::to_group`] gives the matrix group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicType {
    d: u64,
    e: Vec<u64>,
}

impl CyclicType {
    pub fn new(d: u64, e: Vec<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidWeights("d must be positive".into()));
        }
        if e.is_empty() {
            return Err(Error::InvalidWeights("at least one exponent is required".into()));
        }
        if let Some(bad) = e.iter().find(|&&x| x == 0 || x > d) {
            return Err(Error::InvalidWeights(format!(
                "exponent {bad} is outside [1, {d}]"
            )));
        }
        Ok(Self { d, e })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn exponents(&self) -> &[u64] {
        &self.e
    }

    pub fn dim(&self) -> usize {
        self.e.len()
    }

    /// Same type with exponents sorted ascending.
    pub fn sorted(&self) -> Self {
        let mut e = self.e.clone();
        e.sort_unstable();
        Self { d: self.d, e }
    }

    /// The generator acts faithfully on `Z/d`: `gcd(d, e_1, ..., e_n) = 1`.
    pub fn is_faithful(&self) -> bool {
        self.e.iter().fold(self.d, |g, &x| g.gcd(&(x % self.d))) == 1
    }

    /// Order of the group generated.
    pub fn group_order(&self) -> u64 {
        self.d / self.e.iter().fold(self.d, |g, &x| g.gcd(&(x % self.d)))
    }

    /// Exponents `k` in `1..d` for which `g^k` is a pseudo-reflection.
    pub fn pseudo_reflection_powers(&self) -> Vec<u64> {
        (1..self.group_order())
            .filter(|&k| self.e.iter().filter(|&&x| (k * x) % self.d != 0).count() == 1)
            .collect()
    }

    /// The generator itself is a pseudo-reflection.
    pub fn generator_is_pseudo_reflection(&self) -> bool {
        self.e.iter().filter(|&&x| x % self.d != 0).count() == 1
    }

    /// Eigen-exponents of `g^k`.
    pub fn power_exponents(&self, k: u64) -> EigenExponents {
        let turns: Vec<(u64, u64)> = self.e.iter().map(|&x| ((k * x) % self.d, self.d)).collect();
        let exps = EigenExponents::from_turns(&turns);
        debug_assert!(self.d % exps.order() == 0);
        debug_assert_eq!(exps.order() % order_of_power(self.group_order(), k).max(1), 0);
        exps
    }

    /// `u^{(g^k)} = (e_i'/d')` for every element, `k = 0..|G|`.
    pub fn weight_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.group_order())
            .map(|k| {
                self.e
                    .iter()
                    .map(|&x| {
                        let r = (k * x) % self.d;
                        let r = if r == 0 { self.d } else { r };
                        Rational::new(BigInt::from(r), BigInt::from(self.d))
                    })
                    .collect()
            })
            .collect()
    }

    /// `d(G)`: order of `det(g) = zeta_d^{sum e_i}`.
    pub fn determinant_index(&self) -> u64 {
        let s: u64 = self.e.iter().sum();
        order_of_power(self.d, s)
    }

    /// The matrix group generated by `diag(zeta_d^{e_i})`.
    pub fn to_group(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        let exps: Vec<i64> = self.e.iter().map(|&x| x as i64).collect();
        FiniteMatrixGroup::close(vec![GroupElement::diagonal_roots(self.d, &exps)], cap)
    }

    /// Per-element data with element `k` being `g^k`; the group is abelian,
    /// so every element is its own class.
    pub fn class_ages(&self) -> Vec<ClassAges> {
        let order = self.group_order();
        (0..order)
            .map(|k| ClassAges {
                rep: k as usize,
                size: 1,
                exps: self.power_exponents(k),
                inverse_exps: self.power_exponents((order - k) % order),
            })
            .collect()
    }

    /// Report computed on exponent vectors; errors if some power is a
    /// pseudo-reflection.
    ///
    /// All ages share the denominator `d`, so everything runs on the integer
    /// numerators `s_k = sum_i ((k e_i mod d) or d)`.
    pub fn report(&self) -> Result<SingularityReport> {
        let bad = self.pseudo_reflection_powers();
        if !bad.is_empty() {
            return Err(Error::PseudoReflectionPresent(
                bad.into_iter().map(|k| k as usize).collect(),
            ));
        }
        let d = self.d;
        let n = self.dim() as u64;
        let order = self.group_order();
        let numerators: Vec<(u64, u64)> = (0..order)
            .map(|k| {
                self.e.iter().fold((0, 0), |(s, fixed), &x| {
                    let r = (k * x) % d;
                    if r == 0 {
                        (s + d, fixed + 1)
                    } else {
                        (s + r, fixed)
                    }
                })
            })
            .collect();
        let (mld_num, mld_witness) = numerators
            .iter()
            .enumerate()
            .map(|(k, &(s, _))| (s, k))
            .min()
            .expect("identity");
        let total_num = numerators[1..].iter().map(|&(s, fixed)| s - fixed * d).min();
        let pairing_failures: Vec<usize> = (1..order as usize)
            .filter(|&k| {
                let (s, fixed) = numerators[k];
                let (s_inv, _) = numerators[order as usize - k];
                let ell = n - fixed;
                s + s_inv != (2 * n - ell) * d || ell < 2
            })
            .collect();
        let frac = |num: u64| Rational::new(BigInt::from(num), BigInt::from(d));
        let index = self.determinant_index();
        Ok(SingularityReport {
            n: self.dim(),
            order: order as usize,
            mld: frac(mld_num),
            total_mld: total_num.map(frac),
            gorenstein_index: index,
            mld_witness,
            classes: order as usize,
            bound_ok: mld_num <= n * d,
            smooth_iff_trivial_ok: (mld_num > (n - 1) * d) == (order == 1),
            gorenstein_ok: mld_num != (n - 1) * d || index == 1,
            pairing_ok: pairing_failures.is_empty(),
            pairing_failures,
        })
    }

    /// Same report through [`SingularityReport::assemble`] on per-element
    /// eigen data.
    pub fn report_from_exponents(&self) -> Result<SingularityReport> {
        let bad = self.pseudo_reflection_powers();
        if !bad.is_empty() {
            return Err(Error::PseudoReflectionPresent(
                bad.into_iter().map(|k| k as usize).collect(),
            ));
        }
        Ok(SingularityReport::assemble(
            self.dim(),
            self.group_order() as usize,
            self.determinant_index(),
            &self.class_ages(),
        ))
    }
}

impl fmt::Display for CyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        write!(f, "1/{}({})", self.d, e.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use crate::invariants::shokurov_report;
    use crate::matgroup::DEFAULT_CAP;

    fn ct(d: u64, e: &[u64]) -> CyclicType {
        CyclicType::new(d, e.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CyclicType::new(4, vec![0, 1]).is_err());
        assert!(CyclicType::new(4, vec![5, 1]).is_err());
        assert_eq!(ct(3, &[1, 1]).to_string(), "1/3(1,1)");
    }

    #[test]
    fn faithfulness_and_reflections() {
        assert!(ct(3, &[1, 1]).is_faithful());
        assert!(!ct(4, &[2, 2]).is_faithful());
        assert_eq!(ct(4, &[2, 2]).group_order(), 2);
        assert_eq!(ct(2, &[1, 2]).pseudo_reflection_powers(), vec![1]);
        assert!(ct(2, &[1, 2]).generator_is_pseudo_reflection());
        // g^2 = diag(1, -1) is a reflection although g is not
        assert_eq!(ct(4, &[2, 1]).pseudo_reflection_powers(), vec![2]);
        assert!(!ct(4, &[2, 1]).generator_is_pseudo_reflection());
    }

    #[test]
    fn hand_values() {
        let r = ct(3, &[1, 1]).report().unwrap();
        assert_eq!((r.mld, r.gorenstein_index), (rat(2, 3), 3));
        let r = ct(3, &[1, 2]).report().unwrap();
        assert_eq!((r.mld, r.gorenstein_index), (rat_int(1), 1));
        let r = ct(2, &[1, 1]).report().unwrap();
        assert_eq!((r.mld, r.gorenstein_index), (rat_int(1), 1));
        let r = ct(5, &[1, 2]).report().unwrap();
        assert_eq!((r.mld, r.gorenstein_index), (rat(3, 5), 5));
    }

    #[test]
    fn matches_matrix_path() {
        for (d, e) in [
            (3u64, vec![1u64, 1]),
            (5, vec![1, 2]),
            (6, vec![1, 5, 3]),
            (7, vec![1, 2, 4]),
            (4, vec![2, 2, 1, 3]),
            (2, vec![1, 1, 2]),
        ] {
            let c = ct(d, &e);
            let fast = c.report().unwrap();
            let slow = shokurov_report(&c.to_group(DEFAULT_CAP).unwrap()).unwrap();
            assert_eq!(fast, slow, "{c}");
            assert_eq!(c.report_from_exponents().unwrap(), slow, "{c}");
        }
    }
}
