//! `geocensus` command-line front end.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geocensus::census::{self, CensusEntry, CensusGeometry, CensusReport};
use geocensus::chainlink::DEFAULT_ORBIT_CAP;
use geocensus::complexity::{profile_with_cap, ManifoldDescriptor};
use geocensus::farey::pq_complexity;
use geocensus::gl2::{conj_norm, decompose, norm, Gl2};
use geocensus::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "geocensus", version, about = "Complexity estimates and census of closed 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print |p,q|.
    #[command(allow_negative_numbers = true)]
    Pq { p: i64, q: i64 },
    /// Print |A| (or ||A|| with --conj) and the S/J decomposition.
    Norm {
        /// Matrix as [[a,b],[c,d]].
        matrix: String,
        #[arg(long)]
        conj: bool,
    },
    /// Print the complexity profile c0..c9 of a manifold.
    Cn {
        /// s3 | rp3 | lens(p,q) | sfs(BASE;(p,q),...;t) | tb[[a,b],[c,d]] | chain(x,y,z)
        spec: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        orbit_cap: i64,
    },
    /// Census of manifolds with c9 <= cmax.
    Census {
        #[arg(long)]
        cmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Restrict output to one geometry.
        #[arg(long)]
        geometry: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        orbit_cap: i64,
        /// Worker threads (0 = default).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Jsonl,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Pq { p, q } => Ok(format!("{}\n", pq_complexity(p, q)?)),
        Cmd::Norm { matrix, conj } => {
            let a: Gl2 = matrix.parse()?;
            let n = if conj { conj_norm(&a)? } else { norm(&a)? };
            Ok(format!("{n}\n{}\n", decompose(&a)?))
        }
        Cmd::Cn { spec, orbit_cap } => {
            let m: ManifoldDescriptor = spec.parse()?;
            let p = profile_with_cap(&m, orbit_cap)?;
            Ok(format!("{m}\n{p}\n"))
        }
        Cmd::Census { cmax, format, geometry, orbit_cap, threads } => {
            let filter = geometry.map(|g| g.parse::<CensusGeometry>()).transpose().map_err(|e| Failure::Usage(e.to_string()))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Failure::Domain(e.to_string()))?;
            let report = pool.install(|| census::full_census_with_cap(cmax, orbit_cap))?;
            let geoms: Vec<CensusGeometry> =
                CensusGeometry::ALL.into_iter().filter(|g| filter.map_or(true, |f| f == *g)).collect();
            Ok(match format {
                Format::Table => table(&report, &geoms),
                Format::Csv => csv(&report, &geoms),
                Format::Jsonl => jsonl(&report, &geoms),
            })
        }
    }
}

fn caveats(report: &CensusReport, g: CensusGeometry) -> Vec<&'static str> {
    let f = &report.flags;
    let mut v = Vec::new();
    if g == CensusGeometry::Hyperbolic {
        if f.repetitions_conjecture {
            v.push("repetitions_conjecture");
        }
        if f.orbit_capped {
            v.push("orbit_capped");
        }
    }
    if g == CensusGeometry::Sol && f.sol_interval_fibred_omitted {
        v.push("interval_fibred_omitted");
    }
    v
}

fn table(report: &CensusReport, geoms: &[CensusGeometry]) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:<12}", "geometry");
    for c in 0..=report.c_max {
        let _ = write!(s, "{c:>6}");
    }
    s.push('\n');
    for &g in geoms {
        let _ = write!(s, "{:<12}", g.name());
        for c in 0..=report.c_max {
            match report.count(c, g) {
                0 => s.push_str("     ."),
                n => {
                    let _ = write!(s, "{n:>6}");
                }
            }
        }
        s.push('\n');
    }
    for &g in geoms {
        for flag in caveats(report, g) {
            let _ = writeln!(s, "# {}: {flag}", g.name());
        }
    }
    s
}

fn csv(report: &CensusReport, geoms: &[CensusGeometry]) -> String {
    let mut s = String::from("complexity,geometry,count,flags\n");
    for c in 0..=report.c_max {
        for &g in geoms {
            let _ = writeln!(s, "{c},{},{},{}", g.name(), report.count(c, g), caveats(report, g).join(";"));
        }
    }
    s
}

fn entry_json(c: u64, e: &CensusEntry, flags: &[&str]) -> serde_json::Value {
    json!({
        "complexity": c,
        "geometry": e.geometry.name(),
        "manifold": e.descriptor.to_string(),
        "seifert_form": e.seifert_form.as_ref().map(|m| m.to_string()),
        "homology": e.homology.as_ref().map(|h| h.to_string()),
        "min_h_form": e.min_h_form.as_ref().map(|t| t.to_string()),
        "flags": flags,
    })
}

fn jsonl(report: &CensusReport, geoms: &[CensusGeometry]) -> String {
    let mut s = String::new();
    for row in &report.rows {
        if !geoms.contains(&row.geometry) {
            continue;
        }
        let flags = caveats(report, row.geometry);
        for e in &row.manifolds {
            let _ = writeln!(s, "{}", entry_json(row.complexity, e, &flags));
        }
    }
    s
}
