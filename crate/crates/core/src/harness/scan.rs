use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::json::rational_pair;
use crate::invariants::{CyclicType, SingularityReport};
use crate::toriclat::{toric_index, toric_mld, Cone, QuotLattice};
use crate::Rational;

/// One scanned singularity with both computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub descriptor: String,
    pub n: usize,
    pub order: usize,
    #[serde(with = "rational_pair")]
    pub mld: Rational,
    pub index: u64,
    pub bound_ok: bool,
    pub smooth_ok: bool,
    pub gor_ok: bool,
    pub oracle_agree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanFilter {
    /// Keep only rows with this mld.
    pub mld: Option<Rational>,
    /// Keep one type per orbit of `e -> u e mod d`, `gcd(u, d) = 1`.
    pub up_to_iso: bool,
}

/// mld and Cartier index of `K` for the standard cone over
/// `N = Z^n + Z (e/d)`, in 64-bit arithmetic.
pub fn toric_values(ty: &CyclicType) -> Result<(Rational, u64)> {
    let n = ty.dim();
    let d = ty.d() as i64;
    let weight: Vec<Ratio<i64>> = ty.exponents().iter().map(|&x| Ratio::new(x as i64, d)).collect();
    let lattice = QuotLattice::<i64>::from_weights(n, &[weight])?;
    let sigma = Cone::standard(n);
    let all: Vec<usize> = (0..n).collect();
    let mld = toric_mld(&sigma, &lattice, &all)?;
    let index = toric_index(&sigma, &lattice)?;
    Ok((
        Rational::new(BigInt::from(*mld.numer()), BigInt::from(*mld.denom())),
        index as u64,
    ))
}

/// Group-side report and toric values for one type.
pub fn scan_row(ty: &CyclicType) -> Result<(ScanRow, SingularityReport)> {
    let report = ty.report()?;
    let (mld, index) = toric_values(ty)?;
    let row = ScanRow {
        descriptor: ty.to_string(),
        n: ty.dim(),
        order: report.order,
        oracle_agree: mld == report.mld && index == report.gorenstein_index,
        mld: report.mld.clone(),
        index: report.gorenstein_index,
        bound_ok: report.bound_ok,
        smooth_ok: report.smooth_iff_trivial_ok,
        gor_ok: report.gorenstein_ok,
    };
    Ok((row, report))
}

/// Nondecreasing exponent tuples in `[1, d]^n`.
fn sorted_tuples(n: usize, d: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, d: u64, lo: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in lo..=d {
            cur.push(x);
            rec(n, d, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, 1, &mut Vec::new(), &mut out);
    out
}

/// The lexicographically smallest sorted tuple among `u e mod d` over units
/// `u` (residue 0 written as `d`).
pub fn unit_canonical(ty: &CyclicType) -> CyclicType {
    let d = ty.d();
    (1..=d)
        .filter(|u| u.gcd(&d) == 1)
        .map(|u| {
            let mut e: Vec<u64> = ty
                .exponents()
                .iter()
                .map(|&x| match (u * x) % d {
                    0 => d,
                    r => r,
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .map(|e| CyclicType::new(d, e).expect("residues stay in range"))
        .expect("1 is a unit")
}

/// Faithful cyclic types `1/d(e_1 <= ... <= e_n)` with `2 <= d <= d_max` and
/// no pseudo-reflections.
pub fn admissible_types(n: usize, d_max: u64, up_to_iso: bool) -> Vec<CyclicType> {
    (2..=d_max)
        .flat_map(|d| sorted_tuples(n, d).into_iter().map(move |e| CyclicType::new(d, e).expect("in range")))
        .filter(|ty| ty.is_faithful() && ty.pseudo_reflection_powers().is_empty())
        .filter(|ty| !up_to_iso || unit_canonical(ty) == *ty)
        .collect()
}

/// Every admissible type with both computations, sorted by
/// `(n, |G|, d, e)`. A disagreement between the two aborts with the
/// offending descriptor.
pub fn scan_cyclic(n: usize, d_max: u64, filter: &ScanFilter) -> Result<Vec<ScanRow>> {
    let types = admissible_types(n, d_max, filter.up_to_iso);
    let rows: Vec<(CyclicType, ScanRow)> = types
        .into_par_iter()
        .map(|ty| scan_row(&ty).map(|(row, _)| (ty, row)))
        .collect::<Result<_>>()?;
    if let Some((_, bad)) = rows.iter().find(|(_, r)| !r.oracle_agree) {
        return Err(Error::OracleDisagreement(bad.descriptor.clone()));
    }
    let mut rows: Vec<(CyclicType, ScanRow)> = rows
        .into_iter()
        .filter(|(_, r)| filter.mld.as_ref().is_none_or(|m| &r.mld == m))
        .collect();
    rows.sort_by(|(ta, a), (tb, b)| (a.n, a.order, ta).cmp(&(b.n, b.order, tb)));
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// Cell of the empirical `r(n, a)` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub max_index: u64,
    /// First row, in scan order, attaining `max_index`.
    pub witness: String,
    pub rows: usize,
    /// `mld = n - 1` and every index is 1.
    pub gorenstein_cell: bool,
}

/// `(n, mld) -> ` largest Gorenstein index seen.
pub fn empirical_index_table(rows: &[ScanRow]) -> BTreeMap<(usize, Rational), TableCell> {
    let mut table: BTreeMap<(usize, Rational), TableCell> = BTreeMap::new();
    for r in rows {
        let cell = table.entry((r.n, r.mld.clone())).or_insert_with(|| TableCell {
            max_index: r.index,
            witness: r.descriptor.clone(),
            rows: 0,
            gorenstein_cell: false,
        });
        cell.rows += 1;
        if r.index > cell.max_index {
            cell.max_index = r.index;
            cell.witness = r.descriptor.clone();
        }
    }
    for ((n, mld), cell) in table.iter_mut() {
        let n_minus_1 = Rational::from_integer(BigInt::from(*n as i64 - 1));
        cell.gorenstein_cell = cell.max_index == 1 && *mld == n_minus_1;
    }
    table
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    descriptor: String,
    n: usize,
    order: usize,
    mld_num: String,
    mld_den: String,
    index: u64,
    bound_ok: bool,
    smooth_ok: bool,
    gor_ok: bool,
    oracle_agree: bool,
}

/// Header `descriptor,n,order,mld_num,mld_den,index,bound_ok,smooth_ok,gor_ok,oracle_agree`.
pub fn rows_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    if rows.is_empty() {
        w.write_record([
            "descriptor", "n", "order", "mld_num", "mld_den", "index", "bound_ok", "smooth_ok", "gor_ok",
            "oracle_agree",
        ])
        .map_err(io)?;
    }
    for r in rows {
        w.serialize(CsvRow {
            descriptor: r.descriptor.clone(),
            n: r.n,
            order: r.order,
            mld_num: r.mld.numer().to_string(),
            mld_den: r.mld.denom().to_string(),
            index: r.index,
            bound_ok: r.bound_ok,
            smooth_ok: r.smooth_ok,
            gor_ok: r.gor_ok,
            oracle_agree: r.oracle_agree,
        })
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ScanRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let bad = |m: String| Error::ParseError { position: 0, message: m };
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row.map_err(|e| bad(e.to_string()))?;
            let num: BigInt = row.mld_num.parse().map_err(|_| bad(format!("bad numerator {}", row.mld_num)))?;
            let den: BigInt = row.mld_den.parse().map_err(|_| bad(format!("bad denominator {}", row.mld_den)))?;
            if den == BigInt::from(0) {
                return Err(bad("zero denominator".into()));
            }
            Ok(ScanRow {
                descriptor: row.descriptor,
                n: row.n,
                order: row.order,
                mld: Rational::new(num, den),
                index: row.index,
                bound_ok: row.bound_ok,
                smooth_ok: row.smooth_ok,
                gor_ok: row.gor_ok,
                oracle_agree: row.oracle_agree,
            })
        })
        .collect()
}
