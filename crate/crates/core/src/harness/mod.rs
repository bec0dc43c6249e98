//! Input parsing, cyclic scans, the empirical index table and the report
//! types behind the command line tool.

mod parse;
mod scan;
mod suite;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

pub use parse::{parse_cyclic, parse_input, CyclicJson, InputSpec};
pub use scan::{
    admissible_types, empirical_index_table, rows_from_csv, rows_to_csv, scan_cyclic, scan_row, toric_values,
    unit_canonical, ScanFilter, ScanRow, TableCell,
};
pub use suite::{reference_groups, NamedGroup};

use crate::error::Result;
use crate::exactnum::format_rational;
use crate::exactnum::json::{IntJson, RationalJson};
use crate::jordanred::{divisibility_report, find_abelian_normal, DivisibilityReport, SubgroupWitness};
use crate::matgroup::{FiniteMatrixGroup, DEFAULT_CAP};
use crate::toriclat::{support_vector, toric_gorenstein_check, toric_index, Cone, QuotLattice};

/// Closure cap from `QUOTSING_CAP`, else [`DEFAULT_CAP`].
pub fn closure_cap() -> usize {
    std::env::var("QUOTSING_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricFace {
    pub face: Vec<usize>,
    pub dim: usize,
    pub mld: RationalJson,
    pub index: IntJson,
    pub simplicial_index: IntJson,
    /// `mld = n - 1` at this orbit.
    pub applies: bool,
    pub ok: bool,
}

/// Support vector, Cartier index and per-orbit data of an affine toric
/// variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricReport {
    pub n: usize,
    pub rays: usize,
    pub simplicial: bool,
    /// `[N : Z^n]` when `N` contains `Z^n`.
    pub lattice_index: Option<IntJson>,
    pub support_vector: Vec<RationalJson>,
    pub index: IntJson,
    pub faces: Vec<ToricFace>,
    pub all_ok: bool,
}

pub fn toric_report(sigma: &Cone<BigInt>, lattice: &QuotLattice<BigInt>) -> Result<ToricReport> {
    let faces = toric_gorenstein_check(sigma, lattice)?;
    let m = support_vector(sigma, lattice)?;
    let index = toric_index(sigma, lattice)?;
    let lattice_index = lattice.index_over_zn().map(|i| IntJson::from(&i));
    let faces: Vec<ToricFace> = faces
        .into_iter()
        .map(|f| ToricFace {
            face: f.face,
            dim: f.dim,
            mld: RationalJson(f.mld),
            index: IntJson::from(&f.index),
            simplicial_index: IntJson::from(&f.simplicial_index),
            applies: f.applies,
            ok: f.ok,
        })
        .collect();
    Ok(ToricReport {
        n: sigma.ambient_dim(),
        rays: sigma.ray_count(),
        simplicial: sigma.is_simplicial(),
        lattice_index,
        support_vector: m.m.into_iter().map(RationalJson).collect(),
        index: IntJson::from(&index),
        all_ok: faces.iter().all(|f| f.ok),
        faces,
    })
}

fn int_text(v: &IntJson) -> String {
    match v {
        IntJson::Small(s) => s.to_string(),
        IntJson::Big(s) => s.clone(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for ToricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension          {}", self.n)?;
        writeln!(f, "rays               {}", self.rays)?;
        writeln!(f, "simplicial         {}", self.simplicial)?;
        if let Some(i) = &self.lattice_index {
            writeln!(f, "[N : Z^n]          {}", int_text(i))?;
        }
        let m: Vec<String> = self.support_vector.iter().map(|q| format_rational(&q.0)).collect();
        writeln!(f, "support vector     ({})", m.join(", "))?;
        writeln!(f, "cartier index      {}", int_text(&self.index))?;
        writeln!(f, "face               dim  mld      index  check")?;
        for face in &self.faces {
            let rays: Vec<String> = face.face.iter().map(|i| i.to_string()).collect();
            writeln!(
                f,
                "{:<18} {:<4} {:<8} {:<6} {}",
                format!("{{{}}}", rays.join(",")),
                face.dim,
                format_rational(&face.mld.0),
                int_text(&face.index),
                if face.applies { verdict(face.ok) } else { "-" }
            )?;
        }
        writeln!(f, "mld = n-1 => index 1 {}", verdict(self.all_ok))
    }
}

/// Abelian normal subgroup found by the search, with the divisibility
/// check on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanReport {
    pub order: usize,
    pub subgroup: SubgroupWitness,
    pub divisibility: DivisibilityReport,
}

impl JordanReport {
    pub fn all_ok(&self) -> bool {
        self.subgroup.is_abelian_normal() && self.divisibility.divides && self.divisibility.h_prime_checks
    }
}

pub fn jordan_report(g: &FiniteMatrixGroup) -> Result<JordanReport> {
    let subgroup = find_abelian_normal(g)?;
    let divisibility = divisibility_report(g, &subgroup)?;
    Ok(JordanReport {
        order: g.order(),
        subgroup,
        divisibility,
    })
}

impl fmt::Display for JordanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = &self.subgroup;
        let d = &self.divisibility;
        writeln!(f, "group order        {}", self.order)?;
        writeln!(f, "subgroup order     {}", h.order())?;
        writeln!(f, "subgroup gens      {:?}", h.generators)?;
        writeln!(f, "index [G:H]        {}", h.index)?;
        writeln!(f, "search             {}", if h.heuristic { "heuristic" } else { "exhaustive" })?;
        writeln!(f, "d(G)               {}", d.d_g)?;
        writeln!(f, "d(H)               {}", d.d_h)?;
        writeln!(f, "exponent(G/H)      {}", d.exponent)?;
        writeln!(f, "d(G) | e d(H)      {}", verdict(d.divides))?;
        writeln!(f, "h' checks          {}", verdict(d.h_prime_checks))
    }
}
