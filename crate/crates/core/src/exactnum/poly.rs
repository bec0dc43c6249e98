//! Integer polynomials used to realize roots of unity.

use num_integer::Integer;

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Sorted list of the positive divisors of `m`.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
///
/// Computed as `(x^m - 1) / prod_{d | m, d < m} Phi_d`, every division exact
/// and by a monic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient of `a` by the monic polynomial `b`; panics if the
/// remainder is nonzero.
pub(crate) fn div_exact_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k - db + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(60), 16);
        assert_eq!(totient(97), 96);
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
