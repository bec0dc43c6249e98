pub mod error;
pub mod exactnum;
pub mod harness;
pub mod linalg;
pub mod invariants;
pub mod jordanred;
pub mod matgroup;
pub mod toriclat;

pub type Rational = num_rational::BigRational;
pub type Cyclotomic = exactnum::CyclotomicNumber<Rational>;
pub type Lattice = toriclat::QuotLattice<num_bigint::BigInt>;
pub type ToricCone = toriclat::Cone<num_bigint::BigInt>;
