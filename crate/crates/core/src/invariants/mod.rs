//! Ages, the Gorenstein index d(G), minimal log discrepancies and the
//! mld/index assertions for `A^n / G` at the image of the origin.
//!
//! Every group-level operation here requires a group without
//! pseudo-reflections and reports the offending elements otherwise.

mod cyclic;
mod eigen;
mod report;

use num_integer::Integer;
use rayon::prelude::*;

pub use cyclic::CyclicType;
pub use eigen::{
    age_prime, age_usual, diagonal_exponents, eigen_exponents, eigen_exponents_by_traces,
    EigenExponents,
};
pub use report::{ClassAges, SingularityReport};

use crate::error::{Error, Result};
use crate::matgroup::{FiniteMatrixGroup, GroupElement};
use crate::Rational;

pub fn require_no_pseudo_reflections(group: &FiniteMatrixGroup) -> Result<()> {
    let bad = group.pseudo_reflections();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::PseudoReflectionPresent(bad))
    }
}

/// `min{l > 0 : det(g)^l = 1 for all g}`, from the generators alone since
/// `det` is a homomorphism to an abelian group. No hypothesis on
/// pseudo-reflections.
pub fn determinant_index(generators: &[GroupElement]) -> Result<u64> {
    generators.iter().try_fold(1u64, |acc, g| {
        let (k, _) = g.det().root_of_unity_log()?;
        Ok(acc.lcm(&k))
    })
}

/// The Gorenstein index of `A^n / G` at the origin, as `d(G)`.
pub fn gorenstein_index(group: &FiniteMatrixGroup) -> Result<u64> {
    require_no_pseudo_reflections(group)?;
    determinant_index(group.generators())
}

/// Eigen data for every conjugacy class, in class order.
pub fn class_ages(group: &FiniteMatrixGroup) -> Result<Vec<ClassAges>> {
    group
        .conjugacy_classes()
        .par_iter()
        .map(|class| {
            let rep = class[0];
            let inv = group.inverse_index(rep);
            Ok(ClassAges {
                rep,
                size: class.len(),
                exps: eigen_exponents(group.element(rep))?,
                inverse_exps: eigen_exponents(group.element(inv))?,
            })
        })
        .collect()
}

/// `min age'(g)` over the group, with the smallest element index attaining it.
pub fn mld(group: &FiniteMatrixGroup) -> Result<(Rational, usize)> {
    require_no_pseudo_reflections(group)?;
    let ages = class_ages(group)?;
    Ok(ages
        .iter()
        .map(|c| (c.exps.age_prime(), c.rep))
        .min()
        .expect("identity class"))
}

/// `min age(g)` over non-identity elements.
pub fn total_mld(group: &FiniteMatrixGroup) -> Result<Rational> {
    if group.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    require_no_pseudo_reflections(group)?;
    let ages = class_ages(group)?;
    Ok(ages
        .iter()
        .filter(|c| c.rep != 0)
        .map(|c| c.exps.age())
        .min()
        .expect("nontrivial group"))
}

pub fn shokurov_report(group: &FiniteMatrixGroup) -> Result<SingularityReport> {
    require_no_pseudo_reflections(group)?;
    let index = determinant_index(group.generators())?;
    let ages = class_ages(group)?;
    Ok(SingularityReport::assemble(group.dim(), group.order(), index, &ages))
}
