//! Elements of the cyclotomic field Q(zeta_m) in the power basis modulo the
//! m-th cyclotomic polynomial.
//!
//! The ground field of every matrix in this crate is some Q(zeta_m). A finite
//! group of exponent dividing m is conjugate into GL_n(Q(zeta_m)), so nothing
//! is lost by working there instead of an algebraic closure.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::poly::{cyclotomic_polynomial, totient};
use super::Coeff;
use crate::error::{Error, Result};

/// Shared data for one conductor: the modulus `Phi_m`.
#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    phi: usize,
    modulus: Vec<i64>,
}

impl CyclotomicField {
    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Phi_m`, lowest first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Returns the cached field of conductor `m`.
    pub fn get(m: u64) -> Arc<CyclotomicField> {
        assert!(m >= 1, "conductor must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return f.clone();
        }
        let modulus = cyclotomic_polynomial(m);
        let field = Arc::new(CyclotomicField {
            m,
            phi: totient(m) as usize,
            modulus,
        });
        debug_assert_eq!(field.modulus.len(), field.phi + 1);
        cache.lock().unwrap().entry(m).or_insert(field).clone()
    }

    /// Reduces a polynomial of any degree modulo `Phi_m`.
    pub(crate) fn reduce<Q: Coeff>(&self, mut poly: Vec<Q>) -> Vec<Q> {
        let phi = self.phi;
        if poly.len() > phi {
            for k in (phi..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut poly[k], Q::zero());
                let base = k - phi;
                for (j, &mj) in self.modulus[..phi].iter().enumerate() {
                    match mj {
                        0 => {}
                        1 => poly[base + j] = poly[base + j].clone() - c.clone(),
                        -1 => poly[base + j] = poly[base + j].clone() + c.clone(),
                        _ => {
                            let f = Q::from_i64(mj).expect("small integer");
                            poly[base + j] = poly[base + j].clone() - c.clone() * f;
                        }
                    }
                }
            }
        }
        poly.resize(phi, Q::zero());
        poly
    }
}

/// An exact element of Q(zeta_m).
#[derive(Clone)]
pub struct CyclotomicNumber<Q> {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Q>,
}

impl<Q: Coeff> CyclotomicNumber<Q> {
    /// Builds a number from its power-basis coordinates; `coeffs` must have
    /// length `phi(m)`.
    pub fn new(m: u64, coeffs: Vec<Q>) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if coeffs.len() != field.phi {
            return Err(Error::DimensionMismatch(format!(
                "conductor {m} needs {} coefficients, got {}",
                field.phi,
                coeffs.len()
            )));
        }
        Ok(Self { field, coeffs })
    }

    /// Reduces an arbitrary polynomial in zeta_m.
    pub fn from_polynomial(m: u64, poly: Vec<Q>) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = field.reduce(poly);
        Self { field, coeffs }
    }

    pub fn from_rational(m: u64, q: Q) -> Self {
        let field = CyclotomicField::get(m);
        let mut coeffs = vec![Q::zero(); field.phi];
        coeffs[0] = q;
        Self { field, coeffs }
    }

    pub fn from_int(m: u64, v: i64) -> Self {
        Self::from_rational(m, Q::from_i64(v).expect("small integer"))
    }

    pub fn zero(m: u64) -> Self {
        Self::from_rational(m, Q::zero())
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Q::one())
    }

    /// zeta_m^k with zeta_m = exp(2 pi i / m); negative `k` allowed.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![Q::zero(); k + 1];
        poly[k] = Q::one();
        Self::from_polynomial(m, poly)
    }

    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the number lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.m != other.field.m {
            Err(Error::ConductorMismatch(self.field.m, other.field.m))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let phi = self.field.phi;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.m);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        let mut prod = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &Q) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * q.clone()).collect(),
        }
    }

    /// Multiplies by zeta_m^k.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let m = self.field.m as usize;
        let k = k.rem_euclid(m as i64) as usize;
        let mut buf = vec![Q::zero(); self.field.phi + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[i + k] = c.clone();
        }
        Self {
            field: self.field.clone(),
            coeffs: self.field.reduce(buf),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse, by solving the linear system of
    /// multiplication-by-self over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.field.m, Q::one() / q.clone()));
        }
        let phi = self.field.phi;
        // Column j holds self * zeta^j.
        let mut cols = Vec::with_capacity(phi);
        let mut cur = self.clone();
        for _ in 0..phi {
            cols.push(cur.coeffs.clone());
            cur = cur.mul_zeta_pow(1);
        }
        // Augmented rows: [M | e_0].
        let mut rows: Vec<Vec<Q>> = (0..phi)
            .map(|i| {
                let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
                r.push(if i == 0 { Q::one() } else { Q::zero() });
                r
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v = v.clone() / p.clone();
            }
            for r in 0..phi {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=phi {
                        let t = rows[col][c].clone() * f.clone();
                        rows[r][c] = rows[r][c].clone() - t;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|r| r[phi].clone()).collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Image under zeta_m -> zeta_{m'}^{m'/m}.
    pub fn embed(&self, target: u64) -> Result<Self> {
        let m = self.field.m;
        if target == 0 || target % m != 0 {
            return Err(Error::NotADivisor { from: m, to: target });
        }
        if target == m {
            return Ok(self.clone());
        }
        let step = (target / m) as usize;
        let mut buf = vec![Q::zero(); (self.field.phi - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[i * step] = c.clone();
        }
        Ok(Self::from_polynomial(target, buf))
    }

    /// Multiplicative order `k` and exponent `j` with `self = zeta_k^j`.
    ///
    /// Returns `(1, 1)` for 1; otherwise `gcd(j, k) = 1` and `1 <= j < k`.
    /// Every root of unity in Q(zeta_m) is `+-zeta_m^t`, so the search walks
    /// the `2m` candidates.
    pub fn root_of_unity_log(&self) -> Result<(u64, u64)> {
        let m = self.field.m;
        if self.is_zero() {
            return Err(Error::NotARootOfUnity);
        }
        let mut z = Self::one(m);
        for t in 0..m {
            if *self == z {
                return Ok(fraction_to_log(t, m));
            }
            if self.coeffs.iter().zip(&z.coeffs).all(|(a, b)| (a.clone() + b.clone()).is_zero()) {
                // -zeta_m^t = zeta_{2m}^{2t + m}
                return Ok(fraction_to_log(2 * t + m, 2 * m));
            }
            z = z.mul_zeta_pow(1);
        }
        Err(Error::NotARootOfUnity)
    }
}

/// Reduces the angle `num/den` (in turns) to `(order, exponent)`.
fn fraction_to_log(num: u64, den: u64) -> (u64, u64) {
    let num = num % den;
    if num == 0 {
        return (1, 1);
    }
    let g = num.gcd(&den);
    (den / g, num / g)
}

impl<Q: Coeff> PartialEq for CyclotomicNumber<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl<Q: Coeff> Eq for CyclotomicNumber<Q> {}

impl<Q: Coeff> Hash for CyclotomicNumber<Q> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl<Q: Coeff + fmt::Display> fmt::Debug for CyclotomicNumber<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<Q: Coeff + fmt::Display> fmt::Display for CyclotomicNumber<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})z{}", self.field.m),
                _ => format!("({c})z{}^{i}", self.field.m),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

// Operators panic on conductor mismatch; use the `try_*` methods when the
// conductors are not known to agree.
impl<Q: Coeff> Add for &CyclotomicNumber<Q> {
    type Output = CyclotomicNumber<Q>;
    fn add(self, rhs: Self) -> CyclotomicNumber<Q> {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl<Q: Coeff> Sub for &CyclotomicNumber<Q> {
    type Output = CyclotomicNumber<Q>;
    fn sub(self, rhs: Self) -> CyclotomicNumber<Q> {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}

impl<Q: Coeff> Mul for &CyclotomicNumber<Q> {
    type Output = CyclotomicNumber<Q>;
    fn mul(self, rhs: Self) -> CyclotomicNumber<Q> {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

impl<Q: Coeff> Neg for &CyclotomicNumber<Q> {
    type Output = CyclotomicNumber<Q>;
    fn neg(self) -> CyclotomicNumber<Q> {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<Q: Coeff> Add for CyclotomicNumber<Q> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<Q: Coeff> Sub for CyclotomicNumber<Q> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<Q: Coeff> Mul for CyclotomicNumber<Q> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<Q: Coeff> Neg for CyclotomicNumber<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    type C = CyclotomicNumber<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = C::zeta(4);
        assert_eq!(&z * &z, C::from_int(4, -1));
    }

    #[test]
    fn inverse_of_zeta3() {
        let z = C::zeta(3);
        let inv = z.inv().unwrap();
        assert_eq!(inv, C::zeta_pow(3, 2));
        assert_eq!(inv, C::new(3, vec![q(-1, 1), q(-1, 1)]).unwrap());
    }

    #[test]
    fn zeta6_plus_inverse() {
        assert_eq!(&C::zeta(6) + &C::zeta_pow(6, 5), C::one(6));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(C::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conductor_mismatch() {
        assert_eq!(C::one(3).try_add(&C::one(4)), Err(Error::ConductorMismatch(3, 4)));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(C::zeta(2).embed(4).unwrap(), C::zeta_pow(4, 2));
        assert_eq!(C::one(1).embed(30).unwrap(), C::one(30));
        assert_eq!(C::zeta(3).embed(12).unwrap(), C::zeta_pow(12, 4));
        assert_eq!(
            C::zeta(5).embed(12),
            Err(Error::NotADivisor { from: 5, to: 12 })
        );
    }

    #[test]
    fn logs() {
        assert_eq!(C::one(1).root_of_unity_log().unwrap(), (1, 1));
        assert_eq!(C::from_int(1, -1).root_of_unity_log().unwrap(), (2, 1));
        assert_eq!(C::zeta_pow(3, 2).root_of_unity_log().unwrap(), (3, 2));
        // -zeta_3 is a primitive sixth root: exp(2 pi i (1/3 + 1/2)) = zeta_6^5
        assert_eq!((-C::zeta(3)).root_of_unity_log().unwrap(), (6, 5));
        assert_eq!(C::from_int(3, 2).root_of_unity_log(), Err(Error::NotARootOfUnity));
        assert_eq!(C::zero(3).root_of_unity_log(), Err(Error::NotARootOfUnity));
    }

    #[test]
    fn small_integer_coefficients_work() {
        type S = CyclotomicNumber<Ratio<i64>>;
        let z = S::zeta(5);
        assert!(z.pow(5).is_one());
        let w = &z + &S::one(5);
        assert!((&w * &w.inv().unwrap()).is_one());
    }
}
