//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 enumeration budget exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::codes::{CodeError, SearchConfig, DEFAULT_MAX_ENUM};
use crate::gf::{Fe, Field};
use crate::lattice::{DivisorData, Fan, LatticePolytope};
use crate::quantum::{find_dualizing_weights, pipeline, punctured_torus_support, PipelineReport};
use crate::toric::{
    build_code, hirzebruch_params, strata_distance_bound, SupportSet, ToricCodeSpec, ToricError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "toric-codes",
    version,
    about = "Toric codes over GF(q) and CSS codes built from them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical field description.
    Field {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Hirzebruch polygon, its fan and the ray pairing table.
    Polytope {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        common: Common,
    },
    /// Build a toric code and report its parameters.
    Code {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        support: SupportArgs,
        /// Compute the minimum distance by enumeration.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the quantum pipeline.
    Quantum {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        support: SupportArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Field order for the thm4 sweep.
        #[arg(long, default_value_t = 5)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Worker threads for searches; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Enumeration budget.
    #[arg(long, default_value_t = DEFAULT_MAX_ENUM)]
    pub max_enum: u64,
}

impl Common {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_enum: self.max_enum,
            threads: self.threads,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Shape {
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub e: i64,
    #[arg(long)]
    pub r: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SupportKind {
    Full,
    Pieces,
}

#[derive(Debug, Clone, Args)]
pub struct SupportArgs {
    #[arg(long, value_enum, default_value_t = SupportKind::Full)]
    pub support: SupportKind,
    #[arg(long = "I1", value_delimiter = ',')]
    pub i1: Vec<u64>,
    #[arg(long = "J1", value_delimiter = ',')]
    pub j1: Vec<u64>,
    #[arg(long = "I2", value_delimiter = ',')]
    pub i2: Vec<u64>,
    #[arg(long = "J2", value_delimiter = ',')]
    pub j2: Vec<u64>,
}

impl SupportArgs {
    fn build(&self, field: &Field) -> Result<SupportSet, CliError> {
        match self.support {
            SupportKind::Full => {
                if !(self.i1.is_empty()
                    && self.j1.is_empty()
                    && self.i2.is_empty()
                    && self.j2.is_empty())
                {
                    return Err(CliError::usage("--I1/--J1/--I2/--J2 need --support pieces"));
                }
                Ok(SupportSet::full(field).map_err(CliError::input)?)
            }
            SupportKind::Pieces => {
                let conv = |v: &[u64]| -> Result<Vec<Fe>, CliError> {
                    v.iter()
                        .map(|&x| field.element(x).map_err(CliError::input))
                        .collect()
                };
                SupportSet::from_sets(
                    field,
                    &conv(&self.i1)?,
                    &conv(&self.j1)?,
                    &conv(&self.i2)?,
                    &conv(&self.j2)?,
                )
                .map_err(CliError::input)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thm4,
    Table1,
    Residue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        CliError::usage(e.to_string())
    }

    fn failure(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_FAILURE,
            message: msg.into(),
        }
    }

    fn code(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => CliError {
                code: EXIT_BUDGET,
                message: e.to_string(),
            },
            other => CliError::failure(other.to_string()),
        }
    }

    fn toric(e: ToricError) -> Self {
        match e {
            ToricError::Code(c) => CliError::code(c),
            other => CliError::input(other),
        }
    }
}

/// Rendered command output plus the exit code it implies.
struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn field_of(q: u64) -> Result<Field, CliError> {
    Field::with_order(q).map_err(CliError::input)
}

fn cmd_field(q: u64) -> Result<Output, CliError> {
    let field = field_of(q)?;
    let spec = field.spec();
    let text = format!(
        "GF({}) p={} m={} modulus={:?} modulus_encoding={} generator={}\n",
        spec.q(),
        spec.p,
        spec.m,
        spec.modulus,
        modulus_encoding(field.p(), &spec.modulus),
        field.generator().0
    );
    let mut json = serde_json::to_value(spec).expect("plain data");
    json["q"] = json!(spec.q());
    json["modulus_encoding"] = json!(modulus_encoding(field.p(), &spec.modulus));
    json["generator"] = json!(field.generator().0);
    Ok(Output::ok(text, json))
}

fn modulus_encoding(p: u32, coeffs: &[u32]) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Pairing matrix `(V_i; V_j)` of the prime divisors on a fan.
pub fn pairing_table(fan: &Fan) -> Vec<Vec<i64>> {
    let primes: Vec<DivisorData> = (0..fan.len())
        .map(|i| DivisorData::prime(fan, i).expect("index in range"))
        .collect();
    primes
        .iter()
        .map(|a| {
            primes
                .iter()
                .map(|b| a.pair(b).expect("smooth fan"))
                .collect()
        })
        .collect()
}

fn cmd_polytope(shape: Shape) -> Result<Output, CliError> {
    let poly = LatticePolytope::hirzebruch(shape.d, shape.e, shape.r).map_err(CliError::input)?;
    let fan = poly.normal_fan().refine();
    let table = pairing_table(&fan);
    let points = poly.lattice_points();
    let divisor = DivisorData::of_polytope(&poly, &fan).map_err(CliError::input)?;
    let self_pair = divisor.pair(&divisor).map_err(CliError::input)?;

    let mut text = String::new();
    text.push_str(&format!(
        "vertices: {}\n",
        fmt_points(poly.vertices().iter().map(|p| (p.a, p.b)))
    ));
    text.push_str(&format!("lattice points: {}\n", points.len()));
    text.push_str(&format!(
        "rays: {}\n",
        fmt_points(fan.rays().iter().map(|r| (r.x(), r.y())))
    ));
    text.push_str(&format!("divisor coefficients: {:?}\n", divisor.coeffs()));
    text.push_str(&format!(
        "area2: {}\nself pairing: {}\npairing table:\n",
        poly.area2(),
        self_pair
    ));
    for row in &table {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    let json = json!({
        "vertices": poly.vertices(),
        "lattice_points": points,
        "n_lattice_points": points.len(),
        "rays": fan.rays(),
        "divisor_coeffs": divisor.coeffs(),
        "area2": poly.area2(),
        "self_pairing": self_pair,
        "pairing_table": table,
    });
    Ok(Output::ok(text, json))
}

fn fmt_points(it: impl Iterator<Item = (i64, i64)>) -> String {
    it.map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Serialize)]
struct CodeReport {
    q: u32,
    n: usize,
    k: usize,
    lattice_points: usize,
    support_overlap: bool,
    d_formula: Option<usize>,
    d_strata_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_exhaustive: Option<usize>,
    spec: serde_json::Value,
    generator: Vec<Vec<u32>>,
}

fn cmd_code(
    q: u64,
    shape: Shape,
    support: &SupportArgs,
    exhaustive: bool,
    cfg: &SearchConfig,
) -> Result<Output, CliError> {
    let field = field_of(q)?;
    let support = support.build(&field)?;
    let poly = LatticePolytope::hirzebruch(shape.d, shape.e, shape.r).map_err(CliError::input)?;
    let (formula, strata) = if support.is_full() {
        let params =
            hirzebruch_params(&field, shape.d, shape.e, shape.r).map_err(CliError::toric)?;
        let spec = ToricCodeSpec::new(poly.clone(), support.clone());
        (
            Some(params),
            Some(strata_distance_bound(&spec).map_err(CliError::toric)?),
        )
    } else {
        (None, None)
    };
    let spec = ToricCodeSpec::new(poly, support);
    let built = cfg.install(|| build_code(&spec)).map_err(CliError::toric)?;
    let code = &built.code;
    let d_exhaustive = if exhaustive {
        Some(code.min_distance_with(cfg).map_err(CliError::code)?)
    } else {
        None
    };
    let report = CodeReport {
        q: field.q(),
        n: code.n(),
        k: code.k(),
        lattice_points: built.exponents.len(),
        support_overlap: spec.support.overlap(),
        d_formula: formula.map(|p| p.d),
        d_strata_bound: strata,
        d_exhaustive,
        spec: spec.to_json(),
        generator: code.generator().to_ints(),
    };

    let mut mismatches = Vec::new();
    if let Some(p) = formula {
        if p.n != report.n || p.k != report.k {
            mismatches.push(format!(
                "formula (n,k)=({},{}) but built ({},{})",
                p.n, p.k, report.n, report.k
            ));
        }
        if let Some(d) = d_exhaustive {
            if d != p.d {
                mismatches.push(format!("formula d={} but exhaustive d={}", p.d, d));
            }
        }
    }
    if report.k != report.lattice_points && spec.support.is_full() {
        mismatches.push(format!(
            "rank {} != {} lattice points",
            report.k, report.lattice_points
        ));
    }

    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut text = format!(
        "n={} k={} d_formula={} d_strata_bound={} d_exhaustive={}\n",
        report.n,
        report.k,
        opt(report.d_formula),
        opt(report.d_strata_bound),
        opt(report.d_exhaustive)
    );
    if report.support_overlap {
        text.push_str("note: support pieces overlap; duplicates removed\n");
    }
    text.push_str(&code.generator().to_text());
    for m in &mismatches {
        text.push_str(&format!("MISMATCH: {m}\n"));
    }
    let json = serde_json::to_value(&report).expect("plain data");
    let code = if mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok(Output { text, json, code })
}

fn cmd_quantum(
    q: u64,
    shape: Shape,
    support: &SupportArgs,
    cfg: &SearchConfig,
) -> Result<Output, CliError> {
    let field = field_of(q)?;
    let support = support.build(&field)?;
    let report = cfg
        .install(|| pipeline(&field, shape.d, shape.e, shape.r, &support, cfg))
        .map_err(|e| CliError {
            code: if e.budget_exceeded {
                EXIT_BUDGET
            } else {
                EXIT_FAILURE
            },
            message: e.to_string(),
        })?;
    Ok(Output::ok(
        quantum_text(&report),
        serde_json::to_value(&report).expect("plain data"),
    ))
}

fn quantum_text(r: &PipelineReport) -> String {
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let c = &r.classical;
    let w = &r.weights;
    let qr = &r.quantum;
    let mut s = format!(
        "classical: n={} k={} d_formula={} d_exhaustive={}\n",
        c.n,
        c.k,
        opt(c.d_formula),
        opt(c.d_exhaustive)
    );
    s.push_str(&format!(
        "weights: |R|={} sum_zero={} schur_rank={} nullity={} punctured_rank={}{}\n",
        w.restricted.len(),
        w.sum_zero,
        w.schur_rank,
        w.nullity,
        w.punctured_rank,
        if w.rank_drop { " (rank drop)" } else { "" }
    ));
    s.push_str(&format!(
        "quantum: [[{}, {}, {}]] d_exact={}\n",
        qr.n,
        qr.k,
        opt(qr.d),
        qr.d_exact
    ));
    s.push_str(&format!(
        "divisors: D1_ample={} D2_ample={}\n",
        r.divisors.d1_ample, r.divisors.d2_ample
    ));
    s.push_str("hx:\n");
    for row in &qr.hx {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// One line of a verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Admissible Hirzebruch parameters for `q`: `d, e, r >= 1`, `d < q-1`,
/// `e < q-1`, `e + rd < q-1`.
pub fn admissible_triples(q: u32) -> Vec<(i64, i64, i64)> {
    let qm1 = q as i64 - 1;
    let mut out = Vec::new();
    for d in 1..qm1 {
        for e in 1..qm1 {
            for r in 1.. {
                if e + r * d >= qm1 {
                    break;
                }
                out.push((d, e, r));
            }
        }
    }
    out
}

/// Formula, strata bound, rank and exhaustive distance agree for every
/// admissible triple at `q`.
pub fn suite_thm4(q: u64, cfg: &SearchConfig) -> Result<Vec<Check>, CliError> {
    let field = field_of(q)?;
    let support = SupportSet::full(&field).map_err(CliError::toric)?;
    let mut checks = Vec::new();
    for (d, e, r) in admissible_triples(field.q()) {
        let params = hirzebruch_params(&field, d, e, r).map_err(CliError::toric)?;
        let poly = LatticePolytope::hirzebruch(d, e, r).map_err(CliError::input)?;
        let spec = ToricCodeSpec::new(poly, support.clone());
        let built = cfg.install(|| build_code(&spec)).map_err(CliError::toric)?;
        let exhaustive = built.code.min_distance_with(cfg).map_err(CliError::code)?;
        let strata = strata_distance_bound(&spec).map_err(CliError::toric)?;
        let pts = built.exponents.len();
        let pass = built.code.n() == params.n
            && built.raw_rank() == pts
            && pts == params.k
            && exhaustive == params.d
            && strata == params.d;
        checks.push(Check::new(
            format!("thm4 q={q} (d,e,r)=({d},{e},{r})"),
            pass,
            format!(
                "n={} k={} points={} d_formula={} d_strata={} d_exhaustive={}",
                built.code.n(),
                built.raw_rank(),
                pts,
                params.d,
                strata,
                exhaustive
            ),
        ));
    }
    Ok(checks)
}

/// The ray pairing table on the Hirzebruch fan: adjacent rays meet once,
/// opposite rays not at all, self-intersections `-r, 0, r, 0`.
pub fn expected_table1(r: i64) -> [[i64; 4]; 4] {
    [[-r, 1, 0, 1], [1, 0, 1, 0], [0, 1, r, 1], [1, 0, 1, 0]]
}

pub fn suite_table1() -> Vec<Check> {
    (1..=3)
        .map(|r| {
            let fan = Fan::hirzebruch(r);
            let table = pairing_table(&fan);
            let expected: Vec<Vec<i64>> =
                expected_table1(r).iter().map(|row| row.to_vec()).collect();
            let diag: Vec<i64> = (0..fan.len())
                .map(|i| fan.ray_self_intersection(i).expect("smooth"))
                .collect();
            let diag_ok = (0..4).all(|i| diag[i] == table[i][i]);
            Check::new(
                format!("table1 r={r}"),
                table == expected && diag_ok,
                format!("computed {table:?}, self-intersections {diag:?}"),
            )
        })
        .collect()
}

/// `sum w = 0` for dualizing weights of every Hirzebruch code in GF(4) and
/// GF(8) that has them, on the full torus and the punctured support, plus a
/// full pipeline run for q = 8, (1,1,1).
pub fn suite_residue(cfg: &SearchConfig) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for q in [4u64, 8] {
        let field = field_of(q)?;
        let supports = [
            ("full", SupportSet::full(&field).map_err(CliError::toric)?),
            (
                "punctured",
                punctured_torus_support(&field).map_err(CliError::toric)?,
            ),
        ];
        for (d, e, r) in admissible_triples(field.q()) {
            let poly = LatticePolytope::hirzebruch(d, e, r).map_err(CliError::input)?;
            for (label, support) in &supports {
                let spec = ToricCodeSpec::new(poly.clone(), support.clone());
                let built = cfg.install(|| build_code(&spec)).map_err(CliError::toric)?;
                let name = format!("residue q={q} ({d},{e},{r}) {label}");
                match find_dualizing_weights(&built.code) {
                    Ok(w) => checks.push(Check::new(
                        name,
                        w.sum_zero,
                        format!("|R|={} nullity={}", w.restricted.len(), w.nullity),
                    )),
                    Err(e) => checks.push(Check::new(name, true, format!("skipped: {e}"))),
                }
            }
        }
    }
    let field = field_of(8)?;
    let support = SupportSet::full(&field).map_err(CliError::toric)?;
    let report = cfg
        .install(|| pipeline(&field, 1, 1, 1, &support, cfg))
        .map_err(|e| CliError::failure(e.to_string()))?;
    checks.push(Check::new(
        "residue pipeline q=8 (1,1,1) full",
        report.weights.sum_zero,
        format!("|R|={}", report.weights.restricted.len()),
    ));
    Ok(checks)
}

fn cmd_verify(suite: Suite, q: u64, cfg: &SearchConfig) -> Result<Output, CliError> {
    let checks = match suite {
        Suite::Thm4 => suite_thm4(q, cfg)?,
        Suite::Table1 => suite_table1(),
        Suite::Residue => suite_residue(cfg)?,
    };
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!(
            "[{}] {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    text.push_str(&format!("{passed}/{} passed\n", checks.len()));
    let all = passed == checks.len();
    let json = json!({ "checks": checks, "passed": passed, "total": checks.len(), "ok": all });
    Ok(Output {
        text,
        json,
        code: if all { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn dispatch(command: &Command) -> Result<(Output, &Common), CliError> {
    Ok(match command {
        Command::Field { q, common } => (cmd_field(*q)?, common),
        Command::Polytope { shape, common } => (cmd_polytope(*shape)?, common),
        Command::Code {
            q,
            shape,
            support,
            exhaustive,
            common,
        } => (
            cmd_code(*q, *shape, support, *exhaustive, &common.config())?,
            common,
        ),
        Command::Quantum {
            q,
            shape,
            support,
            common,
        } => (cmd_quantum(*q, *shape, support, &common.config())?, common),
        Command::Verify { suite, q, common } => (cmd_verify(*suite, *q, &common.config())?, common),
    })
}

/// Parse `args`, run, and write results to `stdout` / `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((output, common)) => {
            let body = if common.json {
                let mut s = serde_json::to_string_pretty(&output.json).expect("plain data");
                s.push('\n');
                s
            } else {
                output.text
            };
            let written = match &common.out {
                Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| e.to_string()),
                None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILURE;
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["toric-codes"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn field_command() {
        let (code, out, _) = run_args(&["field", "--q", "8", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["modulus_encoding"], 11);
        let (code, _, err) = run_args(&["field", "--q", "6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("prime power"), "{err}");
    }

    #[test]
    fn polytope_command() {
        let (code, out, _) = run_args(&["polytope", "--d", "1", "--e", "1", "--r", "3", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["rays"].as_array().unwrap().contains(&json!([3, -1])));
        let (_, out, _) = run_args(&["polytope", "--d", "1", "--e", "1", "--r", "1", "--json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n_lattice_points"], 5);
        let diag: Vec<i64> = (0..4)
            .map(|i| v["pairing_table"][i][i].as_i64().unwrap())
            .collect();
        assert_eq!(diag, vec![-1, 0, 1, 0]);
    }

    #[test]
    fn code_command() {
        let (code, out, _) = run_args(&[
            "code",
            "--q",
            "5",
            "--d",
            "1",
            "--e",
            "1",
            "--r",
            "1",
            "--exhaustive",
            "--json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(16), Some(5)));
        assert_eq!(
            (v["d_formula"].as_u64(), v["d_exhaustive"].as_u64()),
            (Some(8), Some(8))
        );

        let (code, _, err) = run_args(&["code", "--q", "5", "--d", "3", "--e", "1", "--r", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("requires e+rd<q-1"), "{err}");

        let (code, _, _) = run_args(&[
            "code",
            "--q",
            "8",
            "--d",
            "1",
            "--e",
            "1",
            "--r",
            "1",
            "--exhaustive",
            "--max-enum",
            "100",
        ]);
        assert_eq!(code, EXIT_BUDGET);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["code", "--q", "5"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["code", "--q", "5", "--d", "1", "--e", "1", "--r", "1", "--I1", "1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn quantum_errors_are_staged() {
        let (code, _, err) = run_args(&["quantum", "--q", "5", "--d", "1", "--e", "1", "--r", "1"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(
            err.contains("odd characteristic unsupported for rescaling"),
            "{err}"
        );
        assert!(err.contains("rescale"), "{err}");
    }

    #[test]
    fn table1_suite() {
        assert!(suite_table1().iter().all(|c| c.pass));
    }

    #[test]
    fn admissible_q5() {
        assert_eq!(
            admissible_triples(5),
            vec![(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)]
        );
    }
}
