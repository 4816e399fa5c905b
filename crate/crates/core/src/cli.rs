//! Command-line front end.
//!
//! Arguments are parsed with clap, validated into a [`JobSpec`] before any
//! computation, executed into a [`Table`] and written as CSV or JSON.
//!
//! Exit codes: 0 success, 2 validation, 3 numerical failure, 4 I/O.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    conditional_stats, conditional_var_cov_expansion, counting_stats, thm1_log, thm2_log,
    var_cov_expansion, ExpansionBreakdown, StatisticsTriple,
};
use crate::counting::joint_pmf;
use crate::fredholm::{fredholm_f, fredholm_f_with, FredholmOptions, DEFAULT_ORDER, MIN_ORDER};
use crate::partition::{check_gap_indexing, IntervalPartition, WeightConfiguration};
use crate::quadrature::MAX_ORDER;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// log F with its discretisation error estimate
    Fredholm,
    /// expansion with all weights positive
    Asym1,
    /// expansion with one vanishing weight (needs --p)
    Asym2,
    /// r (log F - expansion) over an r-range
    Converge,
    /// joint counting distribution
    Pmf,
    /// counting statistics (conditional ones with --p)
    Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sinegap", version, about = "Generating function of the sine point process")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// endpoints x_0 < ... < x_m, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// weights s_1..s_m
    #[arg(long, allow_hyphen_values = true, conflicts_with = "u")]
    pub s: Option<String>,
    /// exponents: plain values in index order, or j=value pairs
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// index of the vanishing weight
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, conflicts_with = "r_range")]
    pub r: Option<f64>,
    /// lo:hi:count, geometrically spaced
    #[arg(long)]
    pub r_range: Option<String>,
    /// quadrature points per interval
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub n: usize,
    /// largest counts K_1..K_m for pmf
    #[arg(long)]
    pub k: Option<String>,
    /// torus points per dimension for pmf (default 2 max K + 2)
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exponents in either parametrisation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Exponents {
    /// `u_1..u_m`, all weights positive.
    Positive(Vec<f64>),
    /// `u_0..u_m` with `None` at `p-1, p`.
    Gap(Vec<Option<f64>>),
}

/// A validated job.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobSpec {
    pub command: Command,
    pub x: Vec<f64>,
    pub s: Option<Vec<f64>>,
    pub u: Option<Exponents>,
    pub p: Option<usize>,
    pub r: Vec<f64>,
    pub n: usize,
    pub k: Option<Vec<usize>>,
    pub grid: Option<usize>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    partition: Option<IntervalPartition>,
}

/// Output table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid job: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| invalid(format!("cannot parse {what} entry '{}'", t.trim())))
        })
        .collect()
}

/// `lo:hi:count`, geometric spacing.
pub fn parse_r_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(invalid(format!("r-range '{text}' is not lo:hi:count")));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| invalid("bad r-range lower bound"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| invalid("bad r-range upper bound"))?;
    let count: usize = parts[2].trim().parse().map_err(|_| invalid("bad r-range count"))?;
    if !(lo > 0.0 && hi.is_finite() && hi >= lo) || count == 0 {
        return Err(invalid(format!("r-range needs 0 < lo <= hi and count >= 1, got '{text}'")));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo * (ratio * i as f64).exp() })
        .collect())
}

/// Exponents for `m` intervals: plain values in index order or `j=value` pairs.
/// With `p` they are indexed on `{0..m} \ {p-1, p}`, otherwise on `1..m`.
pub fn parse_exponents(text: &str, m: usize, p: Option<usize>) -> Result<Exponents, CliError> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    let labels: Vec<usize> = match p {
        Some(p) => (0..=m).filter(|&j| j + 1 != p && j != p).collect(),
        None => (1..=m).collect(),
    };
    let keyed = items.iter().any(|t| t.contains('='));
    let mut values: Vec<Option<f64>> = vec![None; m + 1];
    if keyed {
        for t in &items {
            let (j, v) = t
                .split_once('=')
                .ok_or_else(|| invalid("mix of plain and j=value exponents"))?;
            let j: usize = j.trim().parse().map_err(|_| invalid(format!("bad exponent index '{j}'")))?;
            let v: f64 = v.trim().parse().map_err(|_| invalid(format!("bad exponent value '{v}'")))?;
            if !labels.contains(&j) {
                return Err(invalid(format!("exponent index {j} not allowed here")));
            }
            if values[j].replace(v).is_some() {
                return Err(invalid(format!("exponent u_{j} given twice")));
            }
        }
    } else {
        if items.len() != labels.len() {
            return Err(invalid(format!(
                "expected {} exponents, got {}",
                labels.len(),
                items.len()
            )));
        }
        for (&j, t) in labels.iter().zip(&items) {
            values[j] = Some(t.parse().map_err(|_| invalid(format!("bad exponent value '{t}'")))?);
        }
    }
    if let Some(v) = values.iter().flatten().find(|v| !v.is_finite()) {
        return Err(invalid(format!("exponent {v} is not finite")));
    }
    match p {
        Some(p) => {
            check_gap_indexing(m, p, &values)?;
            Ok(Exponents::Gap(values))
        }
        None => {
            let u: Option<Vec<f64>> = labels.iter().map(|&j| values[j]).collect();
            u.map(Exponents::Positive)
                .ok_or_else(|| invalid("every exponent u_1..u_m is required"))
        }
    }
}

impl JobSpec {
    /// Checks everything that can be checked without computing.
    pub fn from_args(args: &Args) -> Result<JobSpec, CliError> {
        let x: Vec<f64> = parse_list(&args.x, "x")?;
        let partition = IntervalPartition::new(x.clone())?;
        let m = partition.m();
        let cmd = args.command;

        let r = match (&args.r, &args.r_range) {
            (Some(r), None) if *r > 0.0 && r.is_finite() => vec![*r],
            (Some(r), None) => return Err(invalid(format!("r must be positive, got {r}"))),
            (None, Some(range)) => parse_r_range(range)?,
            (None, None) => return Err(invalid("one of --r or --r-range is required")),
            (Some(_), Some(_)) => return Err(invalid("--r and --r-range are exclusive")),
        };
        if cmd == Command::Converge && args.r_range.is_none() {
            return Err(invalid("converge requires --r-range"));
        }
        if !(MIN_ORDER..=MAX_ORDER).contains(&args.n) {
            return Err(invalid(format!(
                "quadrature order {} outside [{MIN_ORDER}, {MAX_ORDER}]",
                args.n
            )));
        }

        let s = args.s.as_deref().map(|t| parse_list::<f64>(t, "s")).transpose()?;
        if let Some(s) = &s {
            if s.len() != m {
                return Err(invalid(format!("{} weights for {m} intervals", s.len())));
            }
            WeightConfiguration::real(s)?;
        }
        if let Some(p) = args.p {
            if p < 1 || p > m {
                return Err(invalid(format!("p = {p} outside 1..={m}")));
            }
        }
        let u = args.u.as_deref().map(|t| parse_exponents(t, m, args.p)).transpose()?;

        let mut job = JobSpec {
            command: cmd,
            x,
            s,
            u,
            p: args.p,
            r,
            n: args.n,
            k: None,
            grid: None,
            format: args.format,
            out: args.out.clone(),
            partition: Some(partition),
        };

        match cmd {
            Command::Fredholm => {
                if job.s.is_none() && job.u.is_none() {
                    return Err(invalid("fredholm needs --s or --u"));
                }
            }
            Command::Asym1 | Command::Asym2 | Command::Converge => {
                job.resolve_exponents()?;
                match (cmd, &job.u) {
                    (Command::Asym1, Some(Exponents::Gap(_))) => {
                        return Err(invalid("asym1 needs all weights positive (no --p)"))
                    }
                    (Command::Asym2, Some(Exponents::Positive(_))) => {
                        return Err(invalid("asym2 requires --p"))
                    }
                    _ => {}
                }
            }
            Command::Pmf => {
                if m > crate::counting::MAX_PMF_DIMENSION {
                    return Err(invalid(format!("pmf supports at most 3 intervals, got {m}")));
                }
                if job.r.len() != 1 {
                    return Err(invalid("pmf takes a single --r"));
                }
                let k: Vec<usize> = parse_list(
                    args.k.as_deref().ok_or_else(|| invalid("pmf requires --k"))?,
                    "k",
                )?;
                if k.len() != m {
                    return Err(invalid(format!("{} count bounds for {m} intervals", k.len())));
                }
                let needed = 2 * k.iter().max().unwrap() + 2;
                let grid = args.grid.unwrap_or(needed);
                if grid < needed {
                    return Err(invalid(format!("grid {grid} too small, need at least {needed}")));
                }
                job.k = Some(k);
                job.grid = Some(grid);
            }
            Command::Stats => {}
        }
        Ok(job)
    }

    /// For the expansion commands: derive `u` from `s` when only `s` is given.
    fn resolve_exponents(&mut self) -> Result<(), CliError> {
        if self.u.is_some() {
            return Ok(());
        }
        let s = self.s.as_ref().ok_or_else(|| invalid("--u or --s is required"))?;
        let w = WeightConfiguration::real(s)?;
        if s.iter().all(|&v| v > 0.0) {
            if self.p.is_some() {
                return Err(invalid("--p given but no weight vanishes"));
            }
            self.u = Some(Exponents::Positive(w.positive_exponents()?));
        } else {
            let (p, u) = w.gap_exponents()?;
            if self.p.is_some_and(|q| q != p) {
                return Err(invalid(format!("--p disagrees with the vanishing weight s_{p}")));
            }
            self.p = Some(p);
            self.u = Some(Exponents::Gap(u));
        }
        Ok(())
    }

    fn partition(&self) -> &IntervalPartition {
        self.partition.as_ref().expect("validated job")
    }

    fn weights(&self) -> Result<WeightConfiguration, CliError> {
        Ok(match (&self.s, &self.u) {
            (Some(s), _) => WeightConfiguration::real(s)?,
            (None, Some(Exponents::Positive(u))) => WeightConfiguration::from_positive_exponents(u)?,
            (None, Some(Exponents::Gap(u))) => {
                WeightConfiguration::from_gap_exponents(self.p.expect("gap exponents carry p"), u)?
            }
            (None, None) => return Err(invalid("no weights")),
        })
    }

    fn expansion(&self, r: f64) -> Result<ExpansionBreakdown, CliError> {
        Ok(match &self.u {
            Some(Exponents::Positive(u)) => thm1_log(self.partition(), u, r)?,
            Some(Exponents::Gap(u)) => thm2_log(self.partition(), self.p.unwrap(), u, r)?,
            None => return Err(invalid("no exponents")),
        })
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Evaluate a validated job. r-scans run in parallel; rows stay in r order.
pub fn execute(job: &JobSpec) -> Result<Table, CliError> {
    let part = job.partition();
    match job.command {
        Command::Fredholm => {
            let w = job.weights()?;
            let rows = job
                .r
                .par_iter()
                .map(|&r| {
                    let d = fredholm_f(part, &w, r, job.n)?;
                    Ok(vec![
                        Cell::Num(r),
                        Cell::Num(d.log_f.re),
                        Cell::Num(d.log_f.im),
                        Cell::Num(d.error_estimate),
                        Cell::Int(d.order_used as i64),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            Ok(Table {
                columns: columns(&["r", "log_f_re", "log_f_im", "error_estimate", "order"]),
                rows,
            })
        }
        Command::Asym1 | Command::Asym2 => {
            let rows = job
                .r
                .iter()
                .map(|&r| {
                    let b = job.expansion(r)?;
                    Ok(vec![
                        Cell::Num(r),
                        Cell::Num(b.r_squared_term),
                        Cell::Num(b.r_linear_term),
                        Cell::Num(b.log_r_term),
                        Cell::Num(b.constant_term),
                        Cell::Num(b.total),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            Ok(Table {
                columns: columns(&[
                    "r",
                    "r_squared_term",
                    "r_linear_term",
                    "log_r_term",
                    "constant_term",
                    "total",
                ]),
                rows,
            })
        }
        Command::Converge => {
            let w = job.weights()?;
            let opts = FredholmOptions::fast();
            let rows = job
                .r
                .par_iter()
                .map(|&r| {
                    let numeric = fredholm_f_with(part, &w, r, job.n, &opts)?.log_f.re;
                    let asym = job.expansion(r)?.total;
                    Ok(vec![
                        Cell::Num(r),
                        Cell::Num(numeric),
                        Cell::Num(asym),
                        Cell::Num(r * (numeric - asym)),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            Ok(Table {
                columns: columns(&["r", "log_f_numeric", "log_f_asym", "delta"]),
                rows,
            })
        }
        Command::Pmf => {
            let k = job.k.as_ref().unwrap();
            let pmf = joint_pmf(part, job.r[0], k, job.n, job.grid.unwrap())?;
            let mut names = vec!["entry".to_string()];
            names.extend((1..=k.len()).map(|j| format!("k{j}")));
            names.push("probability".into());
            let mut rows = Vec::with_capacity(pmf.table.len() + 1);
            for (flat, &prob) in pmf.table.iter().enumerate() {
                let mut row = vec![Cell::Text("p".into())];
                let mut rest = flat;
                let mut idx = vec![0; k.len()];
                for (slot, &kmax) in idx.iter_mut().zip(k).rev() {
                    *slot = rest % (kmax + 1);
                    rest /= kmax + 1;
                }
                row.extend(idx.iter().map(|&i| Cell::Int(i as i64)));
                row.push(Cell::Num(prob));
                rows.push(row);
            }
            let mut last = vec![Cell::Text("residual".into())];
            last.extend(k.iter().map(|_| Cell::Text(String::new())));
            last.push(Cell::Num(pmf.residual_mass));
            rows.push(last);
            Ok(Table { columns: names, rows })
        }
        Command::Stats => {
            let mut rows = Vec::new();
            for &r in &job.r {
                let (base, expanded, hat) = match job.p {
                    Some(p) => (
                        conditional_stats(part, p, r)?,
                        conditional_var_cov_expansion(part, p, r)?,
                        "_hat",
                    ),
                    None => (counting_stats(part, r)?, var_cov_expansion(part, r)?, ""),
                };
                push_stats(&mut rows, r, &base, &expanded, hat);
            }
            Ok(Table {
                columns: columns(&["r", "quantity", "j", "k", "value"]),
                rows,
            })
        }
    }
}

fn push_stats(
    rows: &mut Vec<Vec<Cell>>,
    r: f64,
    base: &StatisticsTriple,
    expanded: &StatisticsTriple,
    suffix: &str,
) {
    let ix = &base.indices;
    let mut push = |name: &str, j: usize, k: Option<usize>, v: f64| {
        rows.push(vec![
            Cell::Num(r),
            Cell::Text(format!("{name}{suffix}")),
            Cell::Int(j as i64),
            k.map_or(Cell::Text(String::new()), |k| Cell::Int(k as i64)),
            Cell::Num(v),
        ]);
    };
    for (a, &j) in ix.iter().enumerate() {
        push("mu", j, None, base.mu[a]);
    }
    for (a, &j) in ix.iter().enumerate() {
        push("sigma2", j, None, base.sigma2[a]);
    }
    for (a, &j) in ix.iter().enumerate() {
        for (b, &k) in ix.iter().enumerate().skip(a + 1) {
            push("cross", j, Some(k), base.cross[a][b]);
        }
    }
    for (a, &j) in ix.iter().enumerate() {
        push("var_expansion", j, None, expanded.sigma2[a]);
    }
    for (a, &j) in ix.iter().enumerate() {
        for (b, &k) in ix.iter().enumerate().skip(a + 1) {
            push("cov_expansion", j, Some(k), expanded.cross[a][b]);
        }
    }
}

/// 17 significant digits, fixed exponent form.
fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(v) => format_float(*v),
                Cell::Int(i) => i.to_string(),
                Cell::Text(t) => t.clone(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(job: &JobSpec, table: &Table) -> Result<String, CliError> {
    use serde_json::{Map, Value};
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(name, c)| {
                    let v = match c {
                        Cell::Num(v) => Value::from(*v),
                        Cell::Int(i) => Value::from(*i),
                        Cell::Text(t) => Value::from(t.clone()),
                    };
                    (name.clone(), v)
                })
                .collect();
            Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({ "jobspec": job, "rows": rows });
    let mut text =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parse, validate, compute, write. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_args(&args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("sinegap: {e}");
            e.exit_code()
        }
    }
}

fn run_args(args: &Args) -> Result<(), CliError> {
    let job = JobSpec::from_args(args)?;
    // open the destination before the (possibly long) computation
    let mut sink: Box<dyn Write> = match &job.out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let table = execute(&job)?;
    let text = match job.format {
        Format::Csv => render_csv(&table),
        Format::Json => render_json(&job, &table)?,
    };
    sink.write_all(text.as_bytes())
        .and_then(|_| sink.flush())
        .map_err(|e| CliError::Io(e.to_string()))
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
