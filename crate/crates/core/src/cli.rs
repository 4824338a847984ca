//! The `fatsph` command line.
//!
//! Exit codes: 0 success or verified, 1 verification failure, 2 invalid input,
//! 3 magnitude or size guard.

pub mod accept;

use crate::arith::{render, ArithError, Evaluator, GuardConfig, Which};
use crate::build::{self, BallComplex, BallMeta, BuildError, SphereComplex};
use crate::cw::{CwComplex, RegularityMode};
use crate::metrics;
use crate::patmat::{self, BinaryMatrix, PatError};
use crate::realize::{self, RealizeError};
use crate::shelling;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fatsph", version, about = "Fat 3-spheres: construction, verification and counting")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate A, alpha, C, K, K', R or F.
    #[command(name = "fn", subcommand)]
    Func(FnCmd),
    /// Build and inspect the matrices M(s,t).
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Statistics of the moment-curve complex of a matrix.
    Moment(MomentArgs),
    /// Build a ball X(s,t) or a sphere S(s,t) and write it as JSON.
    Build(BuildArgs),
    /// Verify properties, shellings or strong regularity of a stored complex.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// f-vector, f03, fatness and complexity of a stored complex.
    Metrics(MetricsArgs),
    /// Exact 4-polytope realizations.
    #[command(subcommand)]
    Realize(RealizeCmd),
    /// Run the acceptance suite.
    Accept(AcceptArgs),
}

#[derive(Subcommand, Debug)]
enum FnCmd {
    Eval {
        #[arg(long)]
        which: String,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        /// Argument of alpha.
        #[arg(long)]
        n: Option<String>,
    },
    Table {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 3)]
        smax: u64,
        #[arg(long, default_value_t = 3)]
        tmax: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    Build {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = patmat::DEFAULT_SIZE_CAP)]
        cap: u64,
        /// Append the block-structure line.
        #[arg(long)]
        blocks: bool,
    },
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long = "in", conflicts_with_all = ["s", "t"])]
    input: Option<PathBuf>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    X,
    S,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum, ignore_case = true)]
    kind: Kind,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Properties {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Shelling {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    DualShelling {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    StrongRegularity {
        #[arg(long = "in")]
        input: PathBuf,
        /// Check every pair even on large complexes.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(Subcommand, Debug)]
enum RealizeCmd {
    S1t {
        #[arg(long)]
        t: u64,
        /// Check this point set instead of searching.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = realize::DEFAULT_BUDGET)]
        budget: u32,
    },
}

#[derive(Args, Debug)]
struct AcceptArgs {
    /// Suite name; all criteria when omitted.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Error carrying its exit code.
struct Fail {
    code: i32,
    msg: String,
}

impl Fail {
    fn input(msg: impl Into<String>) -> Self {
        Fail { code: EXIT_INPUT, msg: msg.into() }
    }
    fn verify(msg: impl Into<String>) -> Self {
        Fail { code: EXIT_FAIL, msg: msg.into() }
    }
}

impl From<ArithError> for Fail {
    fn from(e: ArithError) -> Self {
        let code = match e {
            ArithError::MagnitudeGuard { .. } | ArithError::RecursionDepth { .. } => EXIT_GUARD,
            ArithError::InvalidArgument(_) => EXIT_INPUT,
        };
        Fail { code, msg: e.to_string() }
    }
}

impl From<PatError> for Fail {
    fn from(e: PatError) -> Self {
        match e {
            PatError::Arith(a) => a.into(),
            PatError::SizeCap { .. } => Fail { code: EXIT_GUARD, msg: e.to_string() },
            _ => Fail::input(e.to_string()),
        }
    }
}

impl From<BuildError> for Fail {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Arith(a) => a.into(),
            BuildError::SizeCap { .. } => Fail { code: EXIT_GUARD, msg: e.to_string() },
            BuildError::InvariantViolation { .. } => Fail::verify(e.to_string()),
            BuildError::InvalidArgument(_) => Fail::input(e.to_string()),
        }
    }
}

impl From<RealizeError> for Fail {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::SearchBudgetExhausted => Fail::verify(e.to_string()),
            RealizeError::TooManyPoints(_) => Fail { code: EXIT_GUARD, msg: e.to_string() },
            _ => Fail::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::input(e.to_string())
    }
}

type Res = Result<(), Fail>;

pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_to(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parse `args` (program name first) and run, writing to the given streams.
pub fn dispatch_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let w: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(w, "{}", e.render());
            return code;
        }
    };
    match run(cli.cmd, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.msg.is_empty() {
                let _ = writeln!(err, "{}", f.msg);
            }
            f.code
        }
    }
}

/// As [`dispatch_to`], on the process streams.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_to(args, &mut stdout.lock(), &mut stderr.lock())
}

fn evaluator() -> Result<Evaluator, Fail> {
    Ok(Evaluator::new(GuardConfig::from_env()?))
}

fn run(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Res {
    match cmd {
        Cmd::Func(c) => run_fn(c, out),
        Cmd::Matrix(c) => run_matrix(c, out),
        Cmd::Moment(a) => run_moment(a, out),
        Cmd::Build(a) => run_build(a, out),
        Cmd::Verify(c) => run_verify(c, out, err),
        Cmd::Metrics(a) => run_metrics(a, out),
        Cmd::Realize(c) => run_realize(c, out),
        Cmd::Accept(a) => run_accept(a, out),
    }
}

fn need(v: Option<u64>, name: &str) -> Result<u64, Fail> {
    v.ok_or_else(|| Fail::input(format!("--{name} is required")))
}

fn eval_one(ev: &mut Evaluator, which: Which, s: u64, t: u64) -> Result<String, Fail> {
    Ok(match which {
        Which::A => render(&ev.ackermann(s, t)?),
        Which::C => render(&ev.c_fn(s, t)?),
        Which::K => render(&ev.k_fn(s, t)?),
        Which::Kp => render(&ev.kprime_fn(s, t)?),
        Which::R => render(&ev.r_fn(s, t)?),
        Which::F => {
            let f = ev.f_vec(s, t)?;
            format!("({}, {}, {}, {})", render(&f.f0), render(&f.f1), render(&f.f2), render(&f.f3))
        }
        Which::Alpha => return Err(Fail::input("alpha takes --n")),
    })
}

fn run_fn(c: FnCmd, out: &mut dyn Write) -> Res {
    let mut ev = evaluator()?;
    match c {
        FnCmd::Eval { which, s, t, n } => {
            let w: Which = which.parse().map_err(|e: ArithError| Fail::input(e.to_string()))?;
            let line = if w == Which::Alpha {
                let n = n.or_else(|| s.map(|v| v.to_string())).ok_or_else(|| Fail::input("--n is required"))?;
                let n: crate::arith::BigNat = n.parse().map_err(|_| Fail::input(format!("bad --n {n:?}")))?;
                ev.inverse_ackermann(&n)?.to_string()
            } else {
                eval_one(&mut ev, w, need(s, "s")?, need(t, "t")?)?
            };
            writeln!(out, "{line}")?;
        }
        FnCmd::Table { which, smax, tmax } => {
            let w: Which = which.parse().map_err(|e: ArithError| Fail::input(e.to_string()))?;
            if w == Which::Alpha {
                return Err(Fail::input("alpha has no table"));
            }
            let mut cells: Vec<Vec<String>> = Vec::new();
            let mut head = vec![format!("{which}")];
            head.extend((1..=tmax).map(|t| format!("t={t}")));
            cells.push(head);
            for s in 1..=smax {
                let mut row = vec![format!("s={s}")];
                for t in 1..=tmax {
                    row.push(match eval_one(&mut ev, w, s, t) {
                        Ok(v) => v,
                        Err(f) if f.code == EXIT_GUARD => "guard".into(),
                        Err(f) => return Err(f),
                    });
                }
                cells.push(row);
            }
            let widths: Vec<usize> =
                (0..=tmax as usize).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
            for r in &cells {
                let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                writeln!(out, "{}", line.join("  "))?;
            }
        }
    }
    Ok(())
}

fn read_matrix(p: &Path) -> Result<BinaryMatrix, Fail> {
    let text = std::fs::read_to_string(p)?;
    Ok(BinaryMatrix::from_text(&text)?.0)
}

fn run_matrix(c: MatrixCmd, out: &mut dyn Write) -> Res {
    let mut ev = evaluator()?;
    match c {
        MatrixCmd::Build { s, t, out: path, cap, blocks } => {
            let (m, b) = patmat::build_m(&mut ev, s, t, cap)?;
            let text = m.to_text(if blocks { Some(&b) } else { None });
            match path {
                Some(p) => std::fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        MatrixCmd::Check { input, pattern } => {
            let m = read_matrix(&input)?;
            let p = patmat::patterns::by_name(&pattern).ok_or_else(|| Fail::input(format!("unknown pattern {pattern:?}")))?;
            let c = patmat::contains(&m, &p);
            writeln!(out, "contains {pattern}: {c}")?;
        }
        MatrixCmd::Stats { input } => {
            let m = read_matrix(&input)?;
            writeln!(out, "rows {}", m.nrows)?;
            writeln!(out, "cols {}", m.ncols)?;
            writeln!(out, "weight {}", m.weight())?;
            for name in ["N", "Np"] {
                let p = patmat::patterns::by_name(name).unwrap();
                writeln!(out, "contains {name}: {}", patmat::contains(&m, &p))?;
            }
        }
    }
    Ok(())
}

fn run_moment(a: MomentArgs, out: &mut dyn Write) -> Res {
    let m = match (&a.input, a.s, a.t) {
        (Some(p), _, _) => read_matrix(p)?,
        (None, Some(s), Some(t)) => {
            let mut ev = evaluator()?;
            patmat::build_m(&mut ev, s, t, patmat::DEFAULT_SIZE_CAP)?.0
        }
        _ => return Err(Fail::input("give --in FILE or both --s and --t")),
    };
    let thin = m.delete_thin_rows(4);
    if thin.nrows == 0 {
        if a.json {
            let v = serde_json::json!({"f0": 0, "f3": 0, "f03": 0, "rows_deleted": m.nrows, "complexity": null});
            writeln!(out, "{v}")?;
        } else {
            writeln!(out, "rows deleted {}", m.nrows)?;
            writeln!(out, "empty: no row has four or more ones")?;
        }
        return Ok(());
    }
    if !patmat::validate_moment_matrix(&thin)? {
        return Err(Fail::verify("matrix fails the polytopality criterion"));
    }
    let st = patmat::moment_stats(&thin)?;
    let cx = metrics::complexity_from(&st.f0.into(), &st.f3.into(), &st.f03.into());
    if a.json {
        let v = serde_json::json!({
            "f0": st.f0, "f3": st.f3, "f03": st.f03,
            "rows_deleted": m.nrows - thin.nrows,
            "complexity": cx.as_ref().map(metrics::rational_string).ok(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "rows deleted {}", m.nrows - thin.nrows)?;
        writeln!(out, "f0 {}", st.f0)?;
        writeln!(out, "f3 {}", st.f3)?;
        writeln!(out, "f03 {}", st.f03)?;
        match cx {
            Ok(r) => writeln!(out, "complexity {} ({})", metrics::rational_string(&r), metrics::to_decimal(&r, a.precision))?,
            Err(e) => writeln!(out, "complexity undefined: {e}")?,
        }
    }
    Ok(())
}

fn run_build(a: BuildArgs, out: &mut dyn Write) -> Res {
    let w = BufWriter::new(File::create(&a.out)?);
    match a.kind {
        Kind::X => {
            let x = build::build_x(a.s, a.t)?;
            x.complex.write_json(w, &x.meta.to_json("ball", None))?;
            writeln!(out, "X({},{}) f = {:?}", a.s, a.t, x.complex.f_vector())?;
        }
        Kind::S => {
            let x = build::build_s(a.s, a.t)?;
            x.complex.write_json(w, &x.meta.to_json("sphere", Some(x.apex)))?;
            writeln!(out, "S({},{}) f = {:?}", a.s, a.t, x.complex.f_vector())?;
        }
    }
    Ok(())
}

enum Loaded {
    Ball(BallComplex),
    Sphere(SphereComplex),
    Plain(CwComplex),
}

fn load(p: &Path) -> Result<Loaded, Fail> {
    let r = BufReader::new(File::open(p)?);
    let (c, meta) = CwComplex::read_json(r).map_err(|e| Fail::input(e.to_string()))?;
    match meta.get("kind").and_then(|k| k.as_str()) {
        Some("ball") => {
            let m = BallMeta::from_json(&meta)?;
            Ok(Loaded::Ball(BallComplex { complex: c, meta: m }))
        }
        Some("sphere") => {
            let m = BallMeta::from_json(&meta)?;
            let apex = meta
                .get("apex")
                .and_then(|a| a.as_u64())
                .ok_or_else(|| Fail::input("sphere without apex"))?;
            Ok(Loaded::Sphere(SphereComplex::from_parts(c, apex as u32, m)?))
        }
        _ => Ok(Loaded::Plain(c)),
    }
}

fn complex_of(l: &Loaded) -> &CwComplex {
    match l {
        Loaded::Ball(b) => &b.complex,
        Loaded::Sphere(s) => &s.complex,
        Loaded::Plain(c) => c,
    }
}

fn read_order(p: &Path) -> Result<Vec<u32>, Fail> {
    let text = std::fs::read_to_string(p)?;
    text.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Fail::input(format!("bad id {t:?} in order file"))))
        .collect()
}

fn fail_json(err: &mut dyn Write, f: &shelling::Failure) -> Fail {
    let _ = writeln!(err, "{}", serde_json::to_string(f).unwrap_or_default());
    Fail::verify("")
}

fn run_verify(c: VerifyCmd, out: &mut dyn Write, err: &mut dyn Write) -> Res {
    match c {
        VerifyCmd::Properties { input } => {
            let Loaded::Ball(b) = load(&input)? else {
                return Err(Fail::input("properties apply to a ball file"));
            };
            let r = build::verify_properties(&b);
            for i in &r.items {
                writeln!(out, "{:<8} {}{}", i.label, if i.pass { "pass" } else { "FAIL" }, if i.pass { String::new() } else { format!("  {}", i.detail) })?;
            }
            if !r.all_pass() {
                return Err(Fail::verify("property check failed"));
            }
        }
        VerifyCmd::Shelling { input, order } => {
            let l = load(&input)?;
            let ord = match (&order, &l) {
                (Some(p), _) => read_order(p)?,
                (None, Loaded::Sphere(s)) => shelling::shelling_order(s).map_err(|e| Fail::verify(e.to_string()))?,
                _ => return Err(Fail::input("--order is required unless the input is a built sphere")),
            };
            let cert = shelling::verify_shelling(complex_of(&l), &ord);
            if let Some(f) = &cert.failure {
                return Err(fail_json(err, f));
            }
            writeln!(out, "shelling verified: {} facets", ord.len())?;
        }
        VerifyCmd::DualShelling { input, order } => {
            let l = load(&input)?;
            let ord = match (&order, &l) {
                (Some(p), _) => read_order(p)?,
                (None, Loaded::Sphere(s)) => shelling::dual_shelling_order(s),
                _ => return Err(Fail::input("--order is required unless the input is a built sphere")),
            };
            let cert = shelling::verify_dual_shelling(complex_of(&l), &ord);
            if let Some(f) = &cert.failure {
                return Err(fail_json(err, f));
            }
            writeln!(out, "dual shelling verified: {} vertices", ord.len())?;
        }
        VerifyCmd::StrongRegularity { input, full } => {
            let l = load(&input)?;
            let c = complex_of(&l);
            let r = if full { c.check_strong_regularity(RegularityMode::Full) } else { c.strong_regularity() };
            match r {
                Ok(()) => writeln!(out, "strongly regular")?,
                Err(e) => return Err(Fail::verify(e.to_string())),
            }
        }
    }
    Ok(())
}

fn run_metrics(a: MetricsArgs, out: &mut dyn Write) -> Res {
    let l = load(&a.input)?;
    let c = complex_of(&l);
    let rep = metrics::report(c).map_err(|e| Fail::input(e.to_string()))?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&rep).map_err(|e| Fail::input(e.to_string()))?)?;
    } else {
        writeln!(out, "f-vector {}", rep.f)?;
        writeln!(out, "f03 {}", rep.f03)?;
        writeln!(out, "fatness {} ({})", metrics::rational_string(&rep.fatness), metrics::to_decimal(&rep.fatness, a.precision))?;
        writeln!(
            out,
            "complexity {} ({})",
            metrics::rational_string(&rep.complexity),
            metrics::to_decimal(&rep.complexity, a.precision)
        )?;
        writeln!(out, "ziegler {}", if rep.ziegler { "ok" } else { "violated" })?;
    }
    Ok(())
}

fn run_realize(c: RealizeCmd, out: &mut dyn Write) -> Res {
    let RealizeCmd::S1t { t, points, out: path, budget } = c;
    let p = match points {
        Some(file) => {
            let pts = realize::parse_points(&std::fs::read_to_string(file)?)?;
            let p = realize::hull4(&pts)?;
            let target = build::build_s(1, t)?;
            if !realize::iso_check(&realize::face_lattice(&p), &target.complex) {
                return Err(Fail::verify(format!("hull is not isomorphic to S(1,{t})")));
            }
            p
        }
        None => realize::realize_s1t(t, budget)?,
    };
    let lat = realize::face_lattice(&p);
    writeln!(out, "S(1,{t}) realized: {} vertices, f = {:?}", p.vertex_indices().len(), lat.f_vector())?;
    for v in p.vertex_indices() {
        writeln!(out, "{}", p.points[v])?;
    }
    if let Some(path) = path {
        let w = BufWriter::new(File::create(path)?);
        lat.write_json(w, &serde_json::json!({"kind": "polytope", "t": t}))?;
    }
    Ok(())
}

fn run_accept(a: AcceptArgs, out: &mut dyn Write) -> Res {
    let ids = match &a.suite {
        None => accept::ALL.to_vec(),
        Some(name) => accept::suite(name).ok_or_else(|| Fail::input(format!("unknown suite {name:?}")))?.to_vec(),
    };
    let results = accept::run(&ids, &mut |r| {
        if !a.json {
            let _ = writeln!(out, "{}", r.line());
        }
    });
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&results).map_err(|e| Fail::input(e.to_string()))?)?;
    }
    if results.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Fail::verify("acceptance failures"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let mut v = vec!["fatsph"];
        v.extend_from_slice(args);
        let code = dispatch_to(v, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn fn_eval() {
        assert_eq!(call(&["fn", "eval", "--which", "K", "--s", "3", "--t", "2"]), (0, "32768\n".into(), String::new()));
        assert_eq!(call(&["fn", "eval", "--which", "A", "--s", "4", "--t", "4"]).0, 3);
        assert_eq!(call(&["fn", "eval", "--which", "alpha", "--n", "17"]).1, "4\n");
        assert_eq!(call(&["fn", "eval", "--which", "Q", "--s", "1", "--t", "1"]).0, 2);
        assert_eq!(call(&["fn", "eval", "--bogus"]).0, 2);
        let (c, o, _) = call(&["fn", "table", "--which", "K"]);
        assert_eq!(c, 0);
        assert!(o.contains("32768"));
    }

    #[test]
    fn build_metrics_verify() {
        let dir = std::env::temp_dir().join(format!("fatsph-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let s = dir.join("s.json");
        let x = dir.join("x.json");
        let sp = s.to_str().unwrap();
        let xp = x.to_str().unwrap();
        assert_eq!(call(&["build", "S", "--s", "1", "--t", "2", "--out", sp]).0, 0);
        let (c, o, _) = call(&["metrics", "--in", sp]);
        assert_eq!(c, 0);
        assert!(o.contains("f-vector (11, 35, 44, 20)"), "{o}");
        assert!(o.contains("fatness 59/21"));
        assert_eq!(call(&["verify", "shelling", "--in", sp]).0, 0);
        assert_eq!(call(&["verify", "dual-shelling", "--in", sp]).0, 0);
        assert_eq!(call(&["verify", "strong-regularity", "--in", sp]).0, 0);
        // a bad order: facets reversed pairwise is still a permutation, so use a truncated one
        let ord = dir.join("o.txt");
        std::fs::write(&ord, "1\n2\n").unwrap();
        let (c, _, e) = call(&["verify", "shelling", "--in", sp, "--order", ord.to_str().unwrap()]);
        assert_eq!(c, 1);
        assert!(e.contains("\"index\""));
        assert_eq!(call(&["build", "x", "--s", "2", "--t", "2", "--out", xp]).0, 0);
        assert_eq!(call(&["verify", "properties", "--in", xp]).0, 0);
        assert_eq!(call(&["build", "X", "--s", "4", "--t", "2", "--out", xp]).0, 3);
        let a = std::fs::read(&s).unwrap();
        call(&["build", "S", "--s", "1", "--t", "2", "--out", sp]);
        assert_eq!(a, std::fs::read(&s).unwrap());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn matrix_and_moment() {
        let (c, o, _) = call(&["matrix", "build", "--s", "2", "--t", "2"]);
        assert_eq!(c, 0);
        assert_eq!(o, "4 4\n1\n1 3\n2\n2 3\n");
        assert_eq!(call(&["matrix", "build", "--s", "3", "--t", "13"]).0, 3);
        let (c, o, _) = call(&["moment", "--s", "3", "--t", "4"]);
        assert_eq!(c, 0, "{o}");
        assert!(o.contains("empty"));
        let (c, o, _) = call(&["moment", "--s", "4", "--t", "3"]);
        assert_eq!(c, 0, "{o}");
        assert!(o.contains("f03 8200"), "{o}");
    }
}
