//! Toric side: lattices `N` containing `Z^n`, cones with primitive ray
//! generators, the support vector of `K`, its Cartier index, and minimal log
//! discrepancies at torus orbits by exact lattice-point enumeration.
//!
//! Everything is generic over the integer type; the crate root fixes
//! `BigInt` aliases and the scans use `i64`.

mod cone;
pub mod json;
mod lattice;
mod lp;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub use cone::Cone;
pub use lattice::QuotLattice;

use crate::error::{Error, Result};
use crate::linalg::integer::{smith_normal_form, Int, IntMatrix};
use crate::linalg::Matrix;
use lattice::int;

/// `m` with `<m, u_i> = 1` on every ray; unique up to `defined_modulo`,
/// a basis of the orthogonal complement of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVector<T: Int> {
    pub m: Vec<Ratio<T>>,
    pub defined_modulo: Vec<Vec<Ratio<T>>>,
}

/// Orbit data for one face `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCheck<T: Int> {
    pub face: Vec<usize>,
    pub dim: usize,
    pub mld: Ratio<T>,
    /// Cartier index of `K` on the affine piece of `tau`.
    pub index: T,
    /// Same for the simplicial cone on the first independent rays of `tau`.
    pub simplicial_index: T,
    /// `mld = n - 1` at this orbit.
    pub applies: bool,
    pub ok: bool,
}

/// `N = Z^n + sum Z u` for the weight vectors `u`.
pub fn lattice_from_weights<T: Int>(n: usize, weights: &[Vec<Ratio<T>>]) -> Result<QuotLattice<T>> {
    QuotLattice::from_weights(n, weights)
}

/// The points of `N` in `(0, 1]^n`.
pub fn box_points<T: Int>(lattice: &QuotLattice<T>) -> Result<Vec<Vec<Ratio<T>>>> {
    lattice.box_points()
}

/// Rescales coordinates so every standard basis vector is primitive in `N`;
/// returns the new lattice and the multipliers `t`.
pub fn primitivize<T: Int>(lattice: &QuotLattice<T>) -> Result<(QuotLattice<T>, Vec<T>)> {
    let t = lattice.axis_multipliers()?;
    if t.iter().all(|x| x.is_one()) {
        return Ok((lattice.clone(), t));
    }
    Ok((lattice.rescale(&t), t))
}

pub fn support_vector<T: Int>(sigma: &Cone<T>, lattice: &QuotLattice<T>) -> Result<SupportVector<T>> {
    sigma.check_primitive(lattice)?;
    support_of_rays(sigma.ambient_dim(), sigma.rays())
}

fn support_of_rays<T: Int>(n: usize, rays: &[Vec<Ratio<T>>]) -> Result<SupportVector<T>> {
    if rays.is_empty() {
        let basis = Matrix::<Ratio<T>>::identity_like(n, &Ratio::one()).to_rows();
        return Ok(SupportVector { m: vec![Ratio::zero(); n], defined_modulo: basis });
    }
    let a = Matrix::from_rows(rays.to_vec());
    let ones = vec![Ratio::one(); rays.len()];
    match a.solve(&ones) {
        Some((m, defined_modulo)) => Ok(SupportVector { m, defined_modulo }),
        None => Err(Error::NotQGorenstein(
            "no covector takes the value 1 on every ray".into(),
        )),
    }
}

fn ray_coordinates<T: Int>(lattice: &QuotLattice<T>, rays: &[Vec<Ratio<T>>]) -> Result<IntMatrix<T>> {
    rays.iter()
        .enumerate()
        .map(|(i, r)| {
            lattice
                .coordinates(r)
                .ok_or_else(|| Error::InvalidCone(format!("ray {i} is not in the lattice")))
        })
        .collect()
}

/// Smallest `r >= 1` such that some `m'` in the dual lattice takes the value
/// `r` on every ray. With `L W R = diag(s)` for the ray coordinates `W` and
/// `w = L * (1, ..., 1)`, this is `lcm s_i / gcd(s_i, w_i)`; a nonzero `w_i`
/// beyond the rank means the rays admit no support vector at all.
pub fn cartier_index_of_rays<T: Int>(lattice: &QuotLattice<T>, rays: &[Vec<Ratio<T>>]) -> Result<T> {
    if rays.is_empty() {
        return Ok(T::one());
    }
    let w_mat = ray_coordinates(lattice, rays)?;
    let snf = smith_normal_form(&w_mat);
    let rank = snf.rank();
    let mut r = T::one();
    for (i, row) in snf.left.iter().enumerate() {
        let w = row.iter().fold(T::zero(), |acc, x| acc + x.clone());
        if i < rank {
            let s = snf.diagonal[i].abs();
            r = r.lcm(&(s.clone() / s.gcd(&w)));
        } else if !w.is_zero() {
            return Err(Error::NotQGorenstein(
                "no covector takes the value 1 on every ray".into(),
            ));
        }
    }
    Ok(r)
}

pub fn toric_index<T: Int>(sigma: &Cone<T>, lattice: &QuotLattice<T>) -> Result<T> {
    sigma.check_primitive(lattice)?;
    cartier_index_of_rays(lattice, sigma.rays())
}

/// For linearly independent `rays`, the lattice `{l : sum l_i v_i in N}` in
/// `Q^k`; it contains `Z^k`.
pub fn ray_lattice<T: Int>(lattice: &QuotLattice<T>, rays: &[Vec<Ratio<T>>]) -> Result<QuotLattice<T>> {
    let k = rays.len();
    if k == 0 {
        return Ok(QuotLattice::standard(0));
    }
    let w_mat = ray_coordinates(lattice, rays)?;
    let snf = smith_normal_form(&w_mat);
    if snf.rank() != k {
        return Err(Error::InvalidCone("rays are linearly dependent".into()));
    }
    let gens: Vec<Vec<Ratio<T>>> = snf
        .left
        .iter()
        .zip(&snf.diagonal)
        .map(|(row, s)| row.iter().map(|x| Ratio::new(x.clone(), s.abs())).collect())
        .collect();
    QuotLattice::from_generators(k, &gens)
}

/// Sorted, deduplicated face, checked against `sigma`.
fn checked_face<T: Int>(sigma: &Cone<T>, lattice: &QuotLattice<T>, face: &[usize]) -> Result<Vec<usize>> {
    sigma.check_primitive(lattice)?;
    let redundant = sigma.redundant_rays();
    if !redundant.is_empty() {
        return Err(Error::InvalidCone(format!("rays {redundant:?} are not extremal")));
    }
    let mut f = face.to_vec();
    f.sort_unstable();
    f.dedup();
    if !sigma.is_face(&f) {
        return Err(Error::NotAFace(f));
    }
    support_of_rays(sigma.ambient_dim(), sigma.rays())?;
    Ok(f)
}

/// mld at the orbit of the face `tau` (given by ray indices):
/// `n - dim tau + min <m, u>` over lattice points `u` in the relative
/// interior of `tau`.
///
/// Simplicial faces use the box points of the ray lattice; other faces use
/// [`toric_mld_bounded`] with radius the number of rays of `tau`.
pub fn toric_mld<T: Int>(sigma: &Cone<T>, lattice: &QuotLattice<T>, face: &[usize]) -> Result<Ratio<T>> {
    let f = checked_face(sigma, lattice, face)?;
    let c = sigma.subset_rank(&f);
    let min = if c == f.len() {
        simplicial_min(lattice, &sigma.select(&f))?
    } else {
        bounded_min(sigma, lattice, &f, f.len())?
            .expect("the sum of the rays is an interior point of value #rays")
    };
    Ok(Ratio::from_integer(int::<T>(sigma.ambient_dim() as i64 - c as i64)) + min)
}

/// [`toric_mld`] by enumerating every lattice point `u` of `tau` with
/// `<m, u> <= radius`. Errors if no relative interior point is that low.
pub fn toric_mld_bounded<T: Int>(
    sigma: &Cone<T>,
    lattice: &QuotLattice<T>,
    face: &[usize],
    radius: usize,
) -> Result<Ratio<T>> {
    let f = checked_face(sigma, lattice, face)?;
    let c = sigma.subset_rank(&f);
    let min = bounded_min(sigma, lattice, &f, radius)?.ok_or_else(|| {
        Error::InvalidCone(format!("no interior lattice point of value <= {radius}"))
    })?;
    Ok(Ratio::from_integer(int::<T>(sigma.ambient_dim() as i64 - c as i64)) + min)
}

/// Every interior point is a box point of the ray lattice plus a
/// nonnegative integer combination of the rays, which only adds to `<m, u>`.
fn simplicial_min<T: Int>(lattice: &QuotLattice<T>, rays: &[Vec<Ratio<T>>]) -> Result<Ratio<T>> {
    let lam = ray_lattice(lattice, rays)?;
    Ok(lam
        .box_points()?
        .into_iter()
        .map(|p| p.into_iter().fold(Ratio::zero(), |a, x| a + x))
        .min()
        .expect("at least one box point"))
}

/// Functionals cutting out the facets of `face`: each vanishes on one facet
/// and is positive on the rest of `face`.
fn facet_normals<T: Int>(sigma: &Cone<T>, face: &[usize]) -> Vec<Vec<Ratio<T>>> {
    let c = sigma.subset_rank(face);
    let facets: Vec<Vec<usize>> = if sigma.is_simplicial() {
        (0..face.len())
            .map(|skip| face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect())
            .collect()
    } else {
        sigma
            .faces()
            .into_iter()
            .filter(|g| g.iter().all(|r| face.contains(r)) && sigma.subset_rank(g) + 1 == c)
            .collect()
    };
    facets
        .iter()
        .map(|g| sigma.face_normal(g).expect("facet of a face is a face"))
        .collect()
}

fn bounded_min<T: Int>(
    sigma: &Cone<T>,
    lattice: &QuotLattice<T>,
    face: &[usize],
    radius: usize,
) -> Result<Option<Ratio<T>>> {
    let c = sigma.subset_rank(face);
    if c == 0 {
        return Ok(Some(Ratio::zero()));
    }
    let normals = facet_normals(sigma, face);
    let radius = Ratio::from_integer(int::<T>(radius as i64));
    let mut best: Option<Ratio<T>> = None;
    for basis in sigma.bases_within(face) {
        let rays = sigma.select(&basis);
        let pairing: Vec<Vec<Ratio<T>>> = normals
            .iter()
            .map(|f| {
                rays.iter()
                    .map(|v| v.iter().zip(f).fold(Ratio::zero(), |a, (x, y)| a + x * y))
                    .collect()
            })
            .collect();
        let lam = ray_lattice(lattice, &rays)?;
        for p in lam.box_points()? {
            // coset representative in [0, 1)^c
            let p: Vec<Ratio<T>> = p
                .into_iter()
                .map(|x| if x.is_one() { Ratio::zero() } else { x })
                .collect();
            let mut point = p.clone();
            enumerate_shifts(&p, 0, &radius, &mut point, &mut |lam_pt: &[Ratio<T>]| {
                let value = lam_pt.iter().fold(Ratio::zero(), |a, x| a + x);
                if best.as_ref().is_some_and(|b| &value >= b) {
                    return;
                }
                let interior = pairing.iter().all(|row| {
                    row.iter()
                        .zip(lam_pt)
                        .fold(Ratio::<T>::zero(), |a, (x, y)| a + x * y)
                        .is_positive()
                });
                if interior {
                    best = Some(value);
                }
            });
        }
    }
    Ok(best)
}

/// Visits `p + k` for all `k >= 0` integral with coordinate sum at most
/// `radius`.
fn enumerate_shifts<T: Int>(
    p: &[Ratio<T>],
    j: usize,
    radius: &Ratio<T>,
    point: &mut Vec<Ratio<T>>,
    visit: &mut dyn FnMut(&[Ratio<T>]),
) {
    if j == p.len() {
        visit(point);
        return;
    }
    let mut shift = T::zero();
    loop {
        point[j] = p[j].clone() + Ratio::from_integer(shift.clone());
        let partial = point[..=j].iter().fold(Ratio::zero(), |a, x| a + x)
            + p[j + 1..].iter().fold(Ratio::zero(), |a, x| a + x);
        if &partial > radius {
            break;
        }
        enumerate_shifts(p, j + 1, radius, point, visit);
        shift = shift + T::one();
    }
    point[j] = p[j].clone();
}

/// For every face `tau`: the orbit mld and, when it equals `n - 1`, the
/// check that `K` is Cartier on the affine piece of `tau` and on the
/// simplicial cone over the first independent rays of `tau`.
pub fn toric_gorenstein_check<T: Int>(sigma: &Cone<T>, lattice: &QuotLattice<T>) -> Result<Vec<FaceCheck<T>>> {
    checked_face(sigma, lattice, &[])?;
    let n_minus_1 = Ratio::from_integer(int::<T>(sigma.ambient_dim() as i64 - 1));
    sigma
        .faces()
        .into_iter()
        .map(|face| {
            let mld = toric_mld(sigma, lattice, &face)?;
            let index = cartier_index_of_rays(lattice, &sigma.select(&face))?;
            let first = sigma.bases_within(&face).into_iter().next().unwrap_or_default();
            let simplicial_index = cartier_index_of_rays(lattice, &sigma.select(&first))?;
            let applies = mld == n_minus_1;
            let ok = !applies || (index.is_one() && simplicial_index.is_one());
            Ok(FaceCheck {
                dim: sigma.subset_rank(&face),
                face,
                mld,
                index,
                simplicial_index,
                applies,
                ok,
            })
        })
        .collect()
}
