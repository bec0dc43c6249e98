use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::EigenExponents;
use crate::exactnum::format_rational;
use crate::exactnum::json::{option_rational_pair, rational_pair};
use crate::Rational;

/// Eigen data for one conjugacy class and for the inverse of its
/// representative.
#[derive(Debug, Clone)]
pub struct ClassAges {
    pub rep: usize,
    pub size: usize,
    pub exps: EigenExponents,
    pub inverse_exps: EigenExponents,
}

/// Invariants of `A^n / G` at the image of the origin, together with the
/// outcome of the three mld/index assertions and the per-class pairing
/// identity `age'(g) + age'(g^-1) = 2n - l(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub n: usize,
    pub order: usize,
    #[serde(with = "rational_pair")]
    pub mld: Rational,
    /// `None` for the trivial group.
    #[serde(with = "option_rational_pair")]
    pub total_mld: Option<Rational>,
    pub gorenstein_index: u64,
    pub mld_witness: usize,
    pub classes: usize,
    pub bound_ok: bool,
    pub smooth_iff_trivial_ok: bool,
    pub gorenstein_ok: bool,
    pub pairing_ok: bool,
    /// Class representatives violating the pairing identity.
    pub pairing_failures: Vec<usize>,
}

impl SingularityReport {
    pub fn all_ok(&self) -> bool {
        self.bound_ok && self.smooth_iff_trivial_ok && self.gorenstein_ok && self.pairing_ok
    }

    /// Assembles the report from per-class data; `classes[0]` must be the
    /// identity class.
    pub fn assemble(n: usize, order: usize, index: u64, classes: &[ClassAges]) -> Self {
        let n_rat = Rational::from_integer(BigInt::from(n));
        let n_minus_1 = Rational::from_integer(BigInt::from(n as i64 - 1));
        let (mld, mld_witness) = classes
            .iter()
            .map(|c| (c.exps.age_prime(), c.rep))
            .min()
            .expect("at least the identity class");
        let total_mld = classes
            .iter()
            .filter(|c| c.rep != 0)
            .map(|c| c.exps.age())
            .min();
        let mut pairing_failures = Vec::new();
        for c in classes.iter().filter(|c| c.rep != 0) {
            let ell = c.exps.moving_count();
            let lhs = c.exps.age_prime() + c.inverse_exps.age_prime();
            let rhs = Rational::from_integer(BigInt::from(2 * n as i64 - ell as i64));
            if lhs != rhs || ell < 2 {
                pairing_failures.push(c.rep);
            }
        }
        SingularityReport {
            n,
            order,
            bound_ok: mld <= n_rat,
            smooth_iff_trivial_ok: (mld > n_minus_1) == (order == 1),
            gorenstein_ok: mld != n_minus_1 || index == 1,
            pairing_ok: pairing_failures.is_empty(),
            pairing_failures,
            mld,
            total_mld,
            gorenstein_index: index,
            mld_witness,
            classes: classes.len(),
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension          {}", self.n)?;
        writeln!(f, "group order        {}", self.order)?;
        writeln!(f, "conjugacy classes  {}", self.classes)?;
        writeln!(f, "mld at origin      {}", format_rational(&self.mld))?;
        writeln!(f, "mld witness        element {}", self.mld_witness)?;
        match &self.total_mld {
            Some(t) => writeln!(f, "total mld          {}", format_rational(t))?,
            None => writeln!(f, "total mld          (trivial group)")?,
        }
        writeln!(f, "gorenstein index   {}", self.gorenstein_index)?;
        writeln!(f, "mld <= n           {}", verdict(self.bound_ok))?;
        writeln!(f, "mld > n-1 <=> |G|=1 {}", verdict(self.smooth_iff_trivial_ok))?;
        writeln!(f, "mld = n-1 => index 1 {}", verdict(self.gorenstein_ok))?;
        write!(f, "age pairing        {}", verdict(self.pairing_ok))?;
        if !self.pairing_failures.is_empty() {
            write!(f, " (classes {:?})", self.pairing_failures)?;
        }
        writeln!(f)
    }
}
