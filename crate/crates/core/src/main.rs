use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use quotsing::error::{Error, Result};
use quotsing::exactnum::format_rational;
use quotsing::exactnum::json::RationalJson;
use quotsing::exactnum::parse_rational;
use quotsing::harness::{
    closure_cap, empirical_index_table, jordan_report, parse_input, reference_groups, rows_to_csv, scan_cyclic,
    toric_report, toric_values, InputSpec, ScanFilter, ScanRow,
};
use quotsing::invariants::{shokurov_report, CyclicType, SingularityReport};
use quotsing::matgroup::FiniteMatrixGroup;
use quotsing::toriclat::json::ConeJson;
use quotsing::toriclat::{Cone, QuotLattice};
use quotsing::Rational;

#[derive(Parser)]
#[command(name = "quotsing", version, about = "Minimal log discrepancies and Gorenstein indices of quotient singularities")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fixed seed for the random part of `selftest`.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and checks for `1/d(e1,...,en)`, a group file or a cone file.
    Report { input: String },
    /// Support vector, index and per-orbit mld of a cone (or a cyclic type).
    Toric { input: String },
    /// All admissible cyclic types with both computations.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        csv: bool,
        /// Keep rows with this mld, e.g. `2/3`.
        #[arg(long)]
        mld: Option<String>,
        #[arg(long)]
        up_to_iso: bool,
        /// Print the (n, mld) -> max index table instead of rows.
        #[arg(long)]
        table: bool,
    },
    /// Abelian normal subgroup and the divisibility check.
    Jordan { input: String },
    /// Built-in consistency checks.
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    ChecksFailed,
}

fn read_input(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn group_from(spec: InputSpec) -> Result<FiniteMatrixGroup> {
    match spec {
        InputSpec::Group(g) => FiniteMatrixGroup::close(g.generators()?, closure_cap()),
        InputSpec::Cyclic { ty, .. } => ty.to_group(closure_cap()),
        InputSpec::Cone(_) => Err(Error::ParseError {
            position: 0,
            message: "expected a group, got a cone".into(),
        }),
    }
}

fn cone_from(spec: InputSpec) -> Result<ConeJson> {
    match spec {
        InputSpec::Cone(c) => Ok(c),
        InputSpec::Cyclic { ty, .. } => {
            let d = BigInt::from(ty.d());
            let weight: Vec<Rational> = ty.exponents().iter().map(|&x| Rational::new(BigInt::from(x), d.clone())).collect();
            let lattice = QuotLattice::from_weights(ty.dim(), &[weight])?;
            Ok(ConeJson::from_parts(&Cone::standard(ty.dim()), &lattice))
        }
        InputSpec::Group(_) => Err(Error::ParseError {
            position: 0,
            message: "expected a cone or a cyclic type, got a group".into(),
        }),
    }
}

fn pseudo_reflection_error(ty: &CyclicType, powers: &[u64]) -> Error {
    eprintln!("{ty}: g^k is a pseudo-reflection for k in {powers:?}");
    Error::PseudoReflectionPresent(powers.iter().map(|&k| k as usize).collect())
}

fn report_singularity(report: &SingularityReport, toric: Option<(&Rational, u64)>, json: bool) -> Outcome {
    let agree = toric.map(|(mld, index)| *mld == report.mld && index == report.gorenstein_index);
    if json {
        let mut value = serde_json::to_value(report).expect("serializable");
        if let Some((mld, index)) = toric {
            value["toric"] = json!({"mld": RationalJson(mld.clone()), "index": index, "agree": agree});
        }
        print_json(&value);
    } else {
        print!("{report}");
        if let Some((mld, index)) = toric {
            println!(
                "toric oracle       mld {} index {} {}",
                format_rational(mld),
                index,
                if agree == Some(true) { "pass" } else { "FAIL" }
            );
        }
    }
    if report.all_ok() && agree != Some(false) {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    }
}

fn cmd_report(input: &str, json: bool) -> Result<Outcome> {
    match parse_input(&read_input(input)?)? {
        InputSpec::Cyclic { ty, pseudo_reflections } => {
            if !pseudo_reflections.is_empty() {
                return Err(pseudo_reflection_error(&ty, &pseudo_reflections));
            }
            let report = ty.report()?;
            let (mld, index) = toric_values(&ty)?;
            Ok(report_singularity(&report, Some((&mld, index)), json))
        }
        InputSpec::Cone(c) => cmd_toric_spec(c, json),
        spec => {
            let group = group_from(spec)?;
            let offenders = group.pseudo_reflections();
            if !offenders.is_empty() {
                eprintln!("pseudo-reflections at element indices {offenders:?}:");
                for &i in &offenders {
                    eprintln!("  {i}: {:?}", group.element(i).matrix().to_rows());
                }
                return Err(Error::PseudoReflectionPresent(offenders));
            }
            Ok(report_singularity(&shokurov_report(&group)?, None, json))
        }
    }
}

fn cmd_toric_spec(c: ConeJson, json: bool) -> Result<Outcome> {
    let report = toric_report(&c.cone()?, &c.lattice()?)?;
    if json {
        print_json(&report);
    } else {
        print!("{report}");
    }
    Ok(if report.all_ok { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn cmd_toric(input: &str, json: bool) -> Result<Outcome> {
    let spec = parse_input(&read_input(input)?)?;
    if let InputSpec::Cyclic { ty, pseudo_reflections } = &spec {
        if !pseudo_reflections.is_empty() {
            return Err(pseudo_reflection_error(ty, pseudo_reflections));
        }
    }
    cmd_toric_spec(cone_from(spec)?, json)
}

fn cmd_jordan(input: &str, json: bool) -> Result<Outcome> {
    let group = group_from(parse_input(&read_input(input)?)?)?;
    let report = jordan_report(&group)?;
    if json {
        print_json(&report);
    } else {
        print!("{report}");
    }
    Ok(if report.all_ok() { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn print_rows(rows: &[ScanRow]) {
    println!("{:<20} {:>2} {:>6} {:>8} {:>6}  checks", "descriptor", "n", "order", "mld", "index");
    for r in rows {
        let ok = r.bound_ok && r.smooth_ok && r.gor_ok && r.oracle_agree;
        println!(
            "{:<20} {:>2} {:>6} {:>8} {:>6}  {}",
            r.descriptor,
            r.n,
            r.order,
            format_rational(&r.mld),
            r.index,
            if ok { "pass" } else { "FAIL" }
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(n: usize, dmax: u64, csv: bool, mld: Option<String>, up_to_iso: bool, table: bool, json: bool) -> Result<Outcome> {
    if n < 2 || dmax < 2 {
        return Err(Error::InvalidWeights("scan needs n >= 2 and dmax >= 2".into()));
    }
    let mld = mld.map(|m| parse_rational(&m)).transpose()?;
    let rows = scan_cyclic(n, dmax, &ScanFilter { mld, up_to_iso })?;
    if table {
        let table = empirical_index_table(&rows);
        if json {
            let cells: Vec<_> = table
                .iter()
                .map(|((n, mld), c)| {
                    json!({
                        "n": n, "mld": RationalJson(mld.clone()), "max_index": c.max_index,
                        "witness": c.witness, "rows": c.rows, "gorenstein_cell": c.gorenstein_cell,
                    })
                })
                .collect();
            print_json(&cells);
        } else {
            println!("{:>2} {:>8} {:>9} {:<20} {:>6}", "n", "mld", "max index", "witness", "rows");
            for ((n, mld), c) in &table {
                let mark = if c.gorenstein_cell { "  gorenstein" } else { "" };
                println!(
                    "{:>2} {:>8} {:>9} {:<20} {:>6}{mark}",
                    n,
                    format_rational(mld),
                    c.max_index,
                    c.witness,
                    c.rows
                );
            }
        }
    } else if csv {
        print!("{}", rows_to_csv(&rows)?);
    } else if json {
        print_json(&rows);
    } else {
        print_rows(&rows);
    }
    let ok = rows.iter().all(|r| r.bound_ok && r.smooth_ok && r.gor_ok && r.oracle_agree);
    Ok(if ok { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn cmd_selftest(samples: usize, seedless: bool, json: bool) -> Result<Outcome> {
    let seed: u64 = if seedless {
        0
    } else {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)
    };
    let mut results: Vec<(String, bool)> = Vec::new();

    for (n, dmax) in [(2, 20), (3, 10)] {
        let ok = match scan_cyclic(n, dmax, &ScanFilter::default()) {
            Ok(rows) => rows.iter().all(|r| r.bound_ok && r.smooth_ok && r.gor_ok && r.oracle_agree),
            Err(_) => false,
        };
        results.push((format!("scan n={n} dmax={dmax}"), ok));
    }

    for g in reference_groups()? {
        let ok = shokurov_report(&g.group).map(|r| r.all_ok()).unwrap_or(false)
            && jordan_report(&g.group).map(|r| r.all_ok()).unwrap_or(false);
        results.push((g.name.clone(), ok));
    }

    // random cyclic types through the matrix group path
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut tried = 0;
    while tried < samples {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(2..=24u64);
        let e: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
        let ty = CyclicType::new(d, e)?;
        if !ty.pseudo_reflection_powers().is_empty() {
            continue;
        }
        tried += 1;
        let fast = ty.report()?;
        let slow = shokurov_report(&ty.to_group(closure_cap())?)?;
        let toric = toric_values(&ty)?;
        ok &= fast == slow && toric == (fast.mld.clone(), fast.gorenstein_index) && fast.all_ok();
    }
    results.push((format!("{samples} random cyclic types"), ok));

    let all = results.iter().all(|(_, ok)| *ok);
    if json {
        let checks: Vec<_> = results.iter().map(|(name, ok)| json!({"check": name, "ok": ok})).collect();
        print_json(&json!({"seed": seed, "checks": checks, "ok": all}));
    } else {
        println!("seed {seed}");
        for (name, ok) in &results {
            println!("{} {name}", if *ok { "pass" } else { "FAIL" });
        }
    }
    Ok(if all { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report { input } => cmd_report(&input, cli.json),
        Command::Toric { input } => cmd_toric(&input, cli.json),
        Command::Scan { n, dmax, csv, mld, up_to_iso, table } => cmd_scan(n, dmax, csv, mld, up_to_iso, table, cli.json),
        Command::Jordan { input } => cmd_jordan(&input, cli.json),
        Command::Selftest { samples } => cmd_selftest(samples, cli.seedless, cli.json),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(2),
        Err(e @ Error::OracleDisagreement(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
