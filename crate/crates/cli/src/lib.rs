//! The `dvschur` command line: argument parsing, override resolution,
//! rendering and the exit-status contract (0 exact, 2 indeterminate, 1 error).

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dvschur_core::bwb::{bott, BwbResult, Q_RANK, U_RANK};
use dvschur_core::ext::{ext_groups, ext_table_reports, sym_ext, ExtReport};
use dvschur_core::goldens::{diff_ext_table, diff_koszul_table};
use dvschur_core::koszul::{cohomology, parse_overrides, preset_overrides, RankOverride, PRESET_NAME};
use dvschur_core::partitions::{canonicalize, weyl_dim, DominantWeight};
use dvschur_core::plethysm::koszul_factor_table;
use dvschur_core::ring::{
    atomicity_report, ch_oracle, chi_endo, discriminant, multiple_of_c2x, xi_integral, Basis,
};
use dvschur_core::schur::{lr_coefficients, pieri, Decomposition};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dvschur_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dvschur", version, about = "Cohomology of Schur functors of Q on the Debarre–Voisin fourfold")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OverrideArg {
    /// Rank overrides: "none", a preset name, or a JSON file.
    #[arg(long, default_value = "none")]
    pub overrides: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Littlewood–Richardson decomposition of Σ_λ ⊗ Σ_μ.
    Lr {
        #[arg(long)]
        lambda: DominantWeight,
        #[arg(long)]
        mu: DominantWeight,
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
    /// Pieri rule: Σ_λ ⊗ Sym^k.
    Pieri {
        #[arg(long)]
        lambda: DominantWeight,
        #[arg(long)]
        boxes: i64,
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
    /// Borel–Weil–Bott for Σ_λQ ⊗ Σ_μU ⊗ O(−twist) on Gr(6,10).
    Bwb {
        #[arg(long)]
        lambda: DominantWeight,
        #[arg(long)]
        mu: DominantWeight,
        #[arg(long, default_value_t = 0)]
        twist: i64,
    },
    /// GL(6) factors of the exterior powers of ∧³U.
    KoszulTable {
        /// Last column to print.
        #[arg(long, default_value_t = 10)]
        max_p: usize,
    },
    /// Cohomology of Σ_λQ ⊗ O(−twist) on the fourfold.
    Cohomology {
        #[arg(long)]
        lambda: DominantWeight,
        #[arg(long, default_value_t = 0)]
        twist: i64,
        #[command(flatten)]
        overrides: OverrideArg,
    },
    /// Ext groups of Σ_λQ with itself.
    Ext {
        #[arg(long)]
        lambda: DominantWeight,
        #[command(flatten)]
        overrides: OverrideArg,
    },
    /// All partitions with λ₁ < 5, compared with the published values.
    #[command(name = "table1")]
    ExtTable {
        #[command(flatten)]
        overrides: OverrideArg,
    },
    /// Ext groups of Sym^mQ.
    Sym {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        overrides: OverrideArg,
    },
    /// Chern character data of Σ_λQ.
    Chern {
        #[arg(long)]
        lambda: DominantWeight,
    },
    /// Atomicity test for Σ_λQ.
    Atomic {
        #[arg(long)]
        lambda: DominantWeight,
    },
}

/// A rendered report together with its exactness.
pub struct Report {
    pub json: Value,
    pub table: Table,
    /// Custom markdown; defaults to the table.
    pub markdown: Option<String>,
    pub indeterminate: bool,
}

#[derive(Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    fn markdown(&self) -> String {
        let mut s = format!("| {} |\n|{}\n", self.headers.join(" | "), "---|".repeat(self.headers.len()));
        for r in &self.rows {
            s.push_str(&format!("| {} |\n", r.join(" | ")));
        }
        s
    }

    fn csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Resolves `--overrides` before any computation starts.
pub fn load_overrides(spec: &str) -> CliResult<Vec<RankOverride>> {
    if spec == "none" {
        return Ok(Vec::new());
    }
    if spec == PRESET_NAME {
        return Ok(preset_overrides(spec)?);
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(dvschur_core::Error::UnknownPreset(spec.to_string()).into());
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: spec.to_string(),
        source,
    })?;
    Ok(parse_overrides(&text)?)
}

fn decomposition_report(d: &Decomposition) -> CliResult<Report> {
    let mut table = Table::new(&["weight", "multiplicity", "dimension"]);
    for (w, m) in d.iter() {
        table.push([w.to_string(), m.to_string(), weyl_dim(w).to_string()]);
    }
    Ok(Report {
        json: json!({
            "constituents": serde_json::to_value(d)?,
            "dimension": d.dimension().to_string(),
        }),
        table,
        markdown: None,
        indeterminate: false,
    })
}

fn degree_table(values: &[dvschur_core::koszul::DegreeValue]) -> Table {
    let mut t = Table::new(&["degree", "value"]);
    for (n, v) in values.iter().enumerate() {
        t.push([n.to_string(), v.to_string()]);
    }
    t
}

fn ext_report(r: &ExtReport) -> CliResult<Report> {
    Ok(Report {
        json: serde_json::to_value(r)?,
        table: degree_table(&r.ext),
        markdown: None,
        indeterminate: !r.is_exact(),
    })
}

fn execute(cmd: &Command, err: &mut (dyn Write + Send)) -> CliResult<Report> {
    match cmd {
        Command::Lr { lambda, mu, rank } => decomposition_report(&lr_coefficients(lambda, mu, *rank)),
        Command::Pieri { lambda, boxes, rank } => decomposition_report(&pieri(lambda, *boxes, *rank)),
        Command::Bwb { lambda, mu, twist } => {
            if lambda.len() != Q_RANK || mu.len() != U_RANK {
                return Err(CliError::Usage(format!(
                    "bwb needs --lambda of length {Q_RANK} and --mu of length {U_RANK}"
                )));
            }
            let result = bott(lambda, &mu.shift(*twist));
            let mut table = Table::new(&["degree", "weight", "dimension"]);
            if let BwbResult::Cohomology { degree, weight, dim } = &result {
                table.push([degree.to_string(), weight.to_string(), dim.to_string()]);
            }
            let json = match &result {
                BwbResult::Acyclic => json!({ "acyclic": true }),
                other => {
                    let mut v = serde_json::to_value(other)?;
                    v["acyclic"] = Value::Bool(false);
                    v
                }
            };
            Ok(Report {
                json,
                table,
                markdown: None,
                indeterminate: false,
            })
        }
        Command::KoszulTable { max_p } => {
            if *max_p > 20 {
                return Err(dvschur_core::Error::WedgeIndex(*max_p).into());
            }
            writeln!(err, "enumerating weights of ∧^p(∧³U), p = 0..20")?;
            let t = koszul_factor_table();
            let diff = diff_koszul_table(t);
            let mismatches = diff.iter().filter(|d| !d.is_match()).count();
            let mut table = Table::new(&["p", "weight", "multiplicity", "dimension"]);
            for p in 0..=*max_p {
                for (w, m) in t.columns[p].iter() {
                    table.push([p.to_string(), w.to_string(), m.to_string(), weyl_dim(w).to_string()]);
                }
            }
            let columns: Vec<Value> = (0..=*max_p)
                .map(|p| {
                    Ok(json!({
                        "p": p,
                        "factors": serde_json::to_value(&t.columns[p])?,
                        "dimension": t.column_dimension(p).to_string(),
                    }))
                })
                .collect::<CliResult<_>>()?;
            Ok(Report {
                json: json!({
                    "columns": columns,
                    "published_diff": serde_json::to_value(&diff)?,
                    "mismatches": mismatches,
                }),
                table,
                markdown: Some(format!(
                    "{}\nmismatches against published columns 0..10: {mismatches}\n",
                    t.markdown(*max_p)
                )),
                indeterminate: false,
            })
        }
        Command::Cohomology {
            lambda,
            twist,
            overrides,
        } => {
            let overrides = load_overrides(&overrides.overrides)?;
            let (page, result) = cohomology(lambda, *twist, &overrides)?;
            Ok(Report {
                json: json!({
                    "q_weight": serde_json::to_value(&page.q_weight)?,
                    "twist": page.d,
                    "e1": serde_json::to_value(page.entries.values().collect::<Vec<_>>())?,
                    "cohomology": serde_json::to_value(&result.degrees)?,
                    "conflicts": serde_json::to_value(&result.conflicts)?,
                    "applied": serde_json::to_value(&result.applied)?,
                }),
                table: degree_table(&result.degrees),
                markdown: None,
                indeterminate: !result.is_exact(),
            })
        }
        Command::Ext { lambda, overrides } => {
            let overrides = load_overrides(&overrides.overrides)?;
            ext_report(&ext_groups(lambda, &overrides)?)
        }
        Command::Sym { m, overrides } => {
            let overrides = load_overrides(&overrides.overrides)?;
            ext_report(&sym_ext(*m, &overrides)?)
        }
        Command::ExtTable { overrides } => {
            let overrides = load_overrides(&overrides.overrides)?;
            writeln!(err, "computing 21 Ext reports")?;
            let reports = ext_table_reports(&overrides)?;
            let diff = diff_ext_table(&reports);
            let mut table = Table::new(&["lambda", "column", "computed", "published", "status"]);
            for c in &diff.cells {
                let status = serde_json::to_value(&c.status)?;
                table.push([
                    c.lambda.to_string(),
                    c.column.label().to_string(),
                    c.computed.to_string(),
                    c.published.map_or_else(|| "-".into(), |v| v.to_string()),
                    status["status"].as_str().unwrap_or_default().to_string(),
                ]);
            }
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    Ok(json!({
                        "lambda": serde_json::to_value(r.lambda.weight())?,
                        "ext": serde_json::to_value(&r.ext)?,
                        "chi_check": r.chi_check.to_string(),
                        "conflicts": r.conflict_count(),
                    }))
                })
                .collect::<CliResult<_>>()?;
            Ok(Report {
                json: json!({
                    "rows": rows,
                    "diff": serde_json::to_value(&diff)?,
                    "unannotated_mismatches": diff.unannotated_mismatches(),
                }),
                table,
                markdown: Some(diff.markdown()),
                indeterminate: reports.iter().any(|r| !r.is_exact()),
            })
        }
        Command::Chern { lambda } => {
            let c = canonicalize(lambda)?;
            let ch = ch_oracle(lambda);
            let delta = multiple_of_c2x(&discriminant(&ch)).map(|x| x.to_string());
            let chi = chi_endo(lambda);
            let xi = xi_integral(lambda);
            let atomic = atomicity_report(lambda);
            let by_degree: Vec<Value> = (0..=4)
                .map(|k| serde_json::to_value(ch.degree_part(k)))
                .collect::<Result<_, _>>()?;
            let mut table = Table::new(&["component", "value"]);
            table.push(["rank".to_string(), weyl_dim(lambda).to_string()]);
            for b in Basis::ALL {
                table.push([format!("ch.{}", b.label()), ch.coeff(b).to_string()]);
            }
            table.push(["delta/c2X".to_string(), delta.clone().unwrap_or_else(|| "-".into())]);
            table.push(["xi_integral".to_string(), xi.to_string()]);
            table.push(["chi".to_string(), chi.to_string()]);
            table.push(["atomic".to_string(), atomic.atomic.to_string()]);
            Ok(Report {
                json: json!({
                    "lambda": serde_json::to_value(lambda)?,
                    "canonical": c.to_string(),
                    "rank": weyl_dim(lambda).to_string(),
                    "ch": by_degree,
                    "delta_c2x": delta,
                    "xi_integral": xi.to_string(),
                    "chi": chi.to_string(),
                    "atomic": serde_json::to_value(&atomic)?,
                }),
                table,
                markdown: None,
                indeterminate: false,
            })
        }
        Command::Atomic { lambda } => {
            let rep = atomicity_report(lambda);
            let mut table = Table::new(&["field", "value"]);
            table.push(["lambda".to_string(), rep.lambda.to_string()]);
            table.push(["rank".to_string(), rep.rank.to_string()]);
            table.push(["chi".to_string(), rep.chi.clone()]);
            table.push(["chi/3r^2".to_string(), rep.ratio.clone()]);
            table.push(["square_test".to_string(), rep.necessary_test.to_string()]);
            table.push([
                "certificate".to_string(),
                rep.sym_certificate
                    .as_ref()
                    .map_or_else(|| "-".to_string(), |c| c.verified.to_string()),
            ]);
            table.push(["atomic".to_string(), rep.atomic.to_string()]);
            Ok(Report {
                json: serde_json::to_value(&rep)?,
                table,
                markdown: None,
                indeterminate: false,
            })
        }
    }
}

fn render(report: &Report, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => {
            // serde_json::Map is ordered by key, so this output is canonical.
            let mut s = serde_json::to_string_pretty(&report.json)?;
            s.push('\n');
            s
        }
        Format::Markdown => report
            .markdown
            .clone()
            .unwrap_or_else(|| report.table.markdown()),
        Format::Csv => report.table.csv()?,
    })
}

fn run_parsed(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CliResult<bool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let report = pool.install(|| execute(&cli.command, err))?;
    out.write_all(render(&report, cli.format)?.as_bytes())?;
    Ok(report.indeterminate)
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    match run_parsed(&cli, out, err) {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_INDETERMINATE,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
