//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.
//! Plane indices on the command line are 1-based.

use std::f64::consts::FRAC_PI_3;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{check_clifford, gamma_basis, left_action, metric, reflect};
use crate::composition_algebra::{check_alternative, check_moufang, AlgebraId, CAElem, Family, Parent, Rank};
use crate::matrix_rep::{format_float, gamma, HermX, Mat4};
use crate::scalar::Scalar;
use crate::spin_action::{
    block_formula, compose, equiv_4x4_2x2, expected_signature, lie_algebra_rank, so_label, so_matrix, GeneratorSpec,
    Kind, Method, OrthoMat,
};
use crate::tensor_algebra::{PairId, TensorElem};
use crate::tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "magic-square", version, about = "Composition algebras, gamma matrices and the 2x2 magic square")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Pass threshold for numeric checks (verify: per-operation error; square: closure residual).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Clifford,
    Spin,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the multiplication table of O or O'.
    Tables { parent: String },
    /// Run verification suites on one algebra pair.
    Verify {
        k_prime: String,
        k: String,
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Matrix of a single rotation or boost in the plane (p, q).
    #[command(allow_negative_numbers = true)]
    Rotate { k_prime: String, k: String, p: usize, q: usize, theta: f64 },
    /// Product of generators read from a file of `p q theta` lines, applied in order.
    Compose { k_prime: String, k: String, file: PathBuf },
    /// Reproduce the 2x2 magic square.
    Square,
}

/// Usage error raised after argument parsing.
#[derive(Debug)]
struct Usage(String);

type CmdResult = std::result::Result<i32, Usage>;

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

/// Parses `R C H O` (case-insensitive); a split algebra carries a trailing
/// `'` or a leading `s`.
pub fn parse_algebra(token: &str) -> Option<AlgebraId> {
    let t = token.trim().to_ascii_lowercase();
    let (split, core) = if let Some(rest) = t.strip_suffix('\'') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('s') {
        (true, rest)
    } else {
        (false, t.as_str())
    };
    let rank = match core {
        "r" => Rank::R,
        "c" => Rank::C,
        "h" => Rank::H,
        "o" => Rank::O,
        _ => return None,
    };
    Some(if split { AlgebraId::split(rank) } else { AlgebraId::normed(rank) })
}

/// A split algebra followed by a normed one.
pub fn parse_pair(k_prime: &str, k: &str) -> Option<PairId> {
    let (a, b) = (parse_algebra(k_prime)?, parse_algebra(k)?);
    (a.family == Family::Split && b.family == Family::Normed).then(|| PairId::new(a.rank, b.rank))
}

fn pair_arg(k_prime: &str, k: &str) -> std::result::Result<PairId, Usage> {
    parse_pair(k_prime, k).ok_or_else(|| usage(format!("invalid algebra pair '{k_prime} {k}': expected e.g. O' O")))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> CmdResult {
    match &cli.command {
        Command::Tables { parent } => cmd_tables(parent, cli.format, out),
        Command::Verify { k_prime, k, suite } => {
            let pair = pair_arg(k_prime, k)?;
            let tol = cli.tolerance.unwrap_or(tolerances::SINGLE_OP);
            Ok(cmd_verify(pair, *suite, cli.seed, tol, cli.format, out))
        }
        Command::Rotate { k_prime, k, p, q, theta } => {
            let pair = pair_arg(k_prime, k)?;
            let spec = spec_arg(pair, *p, *q, *theta)?;
            let m = so_matrix(&spec).map_err(|e| usage(e.to_string()))?;
            emit_matrix(&m, &[spec], cli.format, out);
            Ok(EXIT_OK)
        }
        Command::Compose { k_prime, k, file } => {
            let pair = pair_arg(k_prime, k)?;
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let specs = parse_word(pair, &text)?;
            let m = compose(pair, &specs).map_err(|e| usage(e.to_string()))?;
            emit_matrix(&m, &specs, cli.format, out);
            Ok(EXIT_OK)
        }
        Command::Square => Ok(cmd_square(cli.tolerance.unwrap_or(tolerances::CLOSURE), cli.format, out)),
    }
}

fn spec_arg(pair: PairId, p: usize, q: usize, theta: f64) -> std::result::Result<GeneratorSpec, Usage> {
    let n = pair.n();
    if p == 0 || q == 0 || p > n || q > n || p == q {
        return Err(usage(format!("invalid plane ({p}, {q}) for {pair}: need 1 <= p != q <= {n}")));
    }
    if !theta.is_finite() {
        return Err(usage("theta must be finite"));
    }
    let spec = GeneratorSpec::new(pair, p - 1, q - 1, theta).map_err(|e| usage(e.to_string()))?;
    if spec.kind() == Kind::Boost && theta.abs() > tolerances::MAX_RAPIDITY {
        return Err(usage(format!("rapidity {theta} exceeds the cap of {}", tolerances::MAX_RAPIDITY)));
    }
    Ok(spec)
}

/// One `p q theta` triple per line; blank lines and `#` comments are skipped.
fn parse_word(pair: PairId, text: &str) -> std::result::Result<Vec<GeneratorSpec>, Usage> {
    let mut specs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || usage(format!("line {}: expected 'p q theta', got '{line}'", lineno + 1));
        if fields.len() != 3 {
            return Err(bad());
        }
        let p = fields[0].parse().map_err(|_| bad())?;
        let q = fields[1].parse().map_err(|_| bad())?;
        let theta = fields[2].parse().map_err(|_| bad())?;
        specs.push(spec_arg(pair, p, q, theta)?);
    }
    Ok(specs)
}

// ---------------------------------------------------------------------------
// tables

fn cmd_tables(token: &str, format: Format, out: &mut String) -> CmdResult {
    let parent = match parse_algebra(token) {
        Some(a) if a.rank == Rank::O => a.parent(),
        _ => return Err(usage(format!("unknown table '{token}': expected O or O'"))),
    };
    let labels = parent.labels();
    let table = parent.table();
    let cell = |p, q| {
        let (s, r) = table.product(p, q);
        format!("{}{}", if s < 0 { "-" } else { "" }, labels[r])
    };
    match format {
        Format::Text => {
            let _ = write!(out, "{:>4} |", "");
            for l in labels {
                let _ = write!(out, "{l:>4}");
            }
            let _ = writeln!(out, "\n{}", "-".repeat(6 + 4 * 8));
            for (p, l) in labels.iter().enumerate() {
                let _ = write!(out, "{l:>4} |");
                for q in 0..8 {
                    let _ = write!(out, "{:>4}", cell(p, q));
                }
                let _ = writeln!(out);
            }
        }
        Format::Structured => {
            let rows: Vec<String> = (0..8).map(|p| json_str_list((0..8).map(|q| cell(p, q)))).collect();
            let name = if parent == Parent::Octonion { "O" } else { "O'" };
            let _ = writeln!(
                out,
                "{{\"parent\":{},\"labels\":{},\"table\":[{}]}}",
                json_str(name),
                json_str_list(labels.iter().map(|s| s.to_string())),
                rows.join(",")
            );
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Clone)]
struct Check {
    suite: &'static str,
    name: &'static str,
    count: usize,
    failures: usize,
    max_residual: Option<f64>,
}

impl Check {
    fn exact(suite: &'static str, name: &'static str) -> Self {
        Check { suite, name, count: 0, failures: 0, max_residual: None }
    }

    fn numeric(suite: &'static str, name: &'static str) -> Self {
        Check { suite, name, count: 0, failures: 0, max_residual: Some(0.0) }
    }

    fn record(&mut self, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn record_residual(&mut self, r: f64, tol: f64) {
        self.record(r <= tol);
        self.max_residual = Some(self.max_residual.unwrap_or(0.0).max(r));
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    crate::scalar::rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_elem(rng: &mut ChaCha8Rng, alg: AlgebraId) -> CAElem<BigRational> {
    let mut coeffs: [BigRational; 8] = std::array::from_fn(|_| BigRational::from_i64(0));
    for &slot in alg.indices() {
        coeffs[slot] = random_rational(rng);
    }
    CAElem::new(alg.parent(), coeffs)
}

fn random_x(rng: &mut ChaCha8Rng, pair: PairId) -> HermX<BigRational> {
    let v: Vec<BigRational> = (0..pair.n()).map(|_| random_rational(rng)).collect();
    HermX::from_coords(pair, &v).expect("length n")
}

fn random_x_f64(rng: &mut ChaCha8Rng, pair: PairId) -> HermX<f64> {
    let v: Vec<f64> = (0..pair.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    HermX::from_coords(pair, &v).expect("length n")
}

/// Arbitrary 4×4 matrix with a few random coefficients per entry.
fn random_mat4(rng: &mut ChaCha8Rng, pair: PairId) -> Mat4<BigRational> {
    let kp = pair.k_prime().indices();
    let k = pair.k().indices();
    let entries = std::array::from_fn(|_| {
        std::array::from_fn(|_| {
            let mut grid: [[BigRational; 8]; 8] = std::array::from_fn(|_| std::array::from_fn(|_| BigRational::from_i64(0)));
            for _ in 0..3 {
                let (a, b) = (kp[rng.gen_range(0..kp.len())], k[rng.gen_range(0..k.len())]);
                grid[a][b] = random_rational(rng);
            }
            TensorElem::from_grid(pair, grid).expect("masked")
        })
    });
    Mat4::from_entries(entries).expect("single pair")
}

const SAMPLES: usize = 200;

fn algebra_checks(pair: PairId, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut composition = Check::exact("algebra", "composition |xy|^2 = |x|^2 |y|^2");
    let mut alternative = Check::exact("algebra", "alternativity");
    let mut moufang = Check::exact("algebra", "Moufang identity on basis triples");
    for alg in [pair.k_prime(), pair.k()] {
        for _ in 0..SAMPLES {
            let (x, y) = (random_elem(rng, alg), random_elem(rng, alg));
            let xy = x.product(&y).expect("same parent");
            composition.record(xy.norm() == x.norm() * y.norm());
            alternative.record(check_alternative(&x, &y).expect("same parent"));
        }
        let basis = alg.basis::<BigRational>();
        for p in &basis {
            for q in &basis {
                for r in &basis {
                    moufang.record(check_moufang(p, q, r).expect("same parent"));
                }
            }
        }
    }
    vec![composition, alternative, moufang]
}

fn clifford_checks(pair: PairId, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let report = check_clifford(pair);
    let relations = Check { suite: "clifford", name: "anticommutators {G_p, G_q} = 2 g_pq I", count: report.checked, failures: report.failures.len(), max_residual: None };

    let basis = gamma_basis::<BigRational>(pair);
    let mut reflection = Check::exact("clifford", "reflection negates exactly its axis");
    for p in 0..pair.n() {
        let x = random_x(rng, pair);
        let mut expected = x.coords();
        expected[p] = -expected[p].clone();
        let ok = reflect(basis.get(p), &gamma(&x)).map(|r| r.x().coords() == expected).unwrap_or(false);
        reflection.record(ok);
    }

    let mut left = Check::exact("clifford", "left action P(PQ) = (PP)Q");
    for _ in 0..SAMPLES / 10 {
        let p = gamma(&random_x(rng, pair));
        let q = random_mat4(rng, pair);
        let lhs = left_action(&p, &left_action(&p, &q).expect("single pair")).expect("single pair");
        let rhs = p.mat().product(p.mat()).and_then(|pp| pp.product(&q)).expect("single pair");
        left.record(lhs == rhs);
    }
    vec![relations, reflection, left]
}

fn spin_checks(pair: PairId, rng: &mut ChaCha8Rng, tol: f64) -> Vec<Check> {
    let n = pair.n();
    let mut formula = Check::numeric("spin", "generator matches its plane formula");
    let mut isometry = Check::numeric("spin", "isometry m^T G m = G");
    let mut det = Check::numeric("spin", "det m = 1");
    let mut equiv = Check::numeric("spin", "2x2 action agrees with 4x4 action");
    let thetas = [FRAC_PI_3, -FRAC_PI_3, 1.0, -1.0, 2.0, -2.0];
    for p in 0..n {
        for q in p + 1..n {
            for &theta in &thetas {
                let spec = GeneratorSpec::new(pair, p, q, theta).expect("valid plane");
                match so_matrix(&spec) {
                    Ok(m) => {
                        formula.record_residual((m.matrix() - block_formula(&spec)).amax(), tol);
                        isometry.record_residual(m.isometry_residual(), tol);
                        det.record_residual((m.det() - 1.0).abs(), tol);
                    }
                    Err(_) => {
                        formula.record(false);
                        isometry.record(false);
                        det.record(false);
                    }
                }
            }
            let spec = GeneratorSpec::new(pair, p, q, 1.0).expect("valid plane");
            if spec.method() == Method::Exponential {
                match equiv_4x4_2x2(&spec, &random_x_f64(rng, pair)) {
                    Ok(r) => equiv.record_residual(r.max_deviation, tol),
                    Err(_) => equiv.record(false),
                }
            }
        }
    }
    vec![formula, isometry, det, equiv]
}

fn cmd_verify(pair: PairId, suite: Suite, seed: u64, tol: f64, format: Format, out: &mut String) -> i32 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Algebra | Suite::All) {
        checks.extend(algebra_checks(pair, &mut rng));
    }
    if matches!(suite, Suite::Clifford | Suite::All) {
        checks.extend(clifford_checks(pair, &mut rng));
    }
    if matches!(suite, Suite::Spin | Suite::All) {
        checks.extend(spin_checks(pair, &mut rng, tol));
    }
    let passed = checks.iter().all(|c| c.failures == 0);
    let suite_name = suite.to_possible_value().expect("named").get_name().to_string();
    match format {
        Format::Text => {
            let _ = writeln!(out, "verify {pair} suite={suite_name} seed={seed}");
            for c in &checks {
                let status = if c.failures == 0 { "ok" } else { "FAIL" };
                let residual = c.max_residual.map(|r| format!("  max residual {r:.3e}")).unwrap_or_default();
                let _ =
                    writeln!(out, "  [{status:>4}] {:<9} {:<42} {:>6} checks {:>4} failures{residual}", c.suite, c.name, c.count, c.failures);
            }
            if suite == Suite::Clifford || suite == Suite::All {
                let _ = writeln!(out, "  {} generators", pair.n());
            }
            let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
        }
        Format::Structured => {
            let items: Vec<String> = checks
                .iter()
                .map(|c| {
                    format!(
                        "{{\"suite\":{},\"name\":{},\"count\":{},\"failures\":{},\"max_residual\":{}}}",
                        json_str(c.suite),
                        json_str(c.name),
                        c.count,
                        c.failures,
                        c.max_residual.map(format_float).unwrap_or_else(|| "null".into())
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "{{\"pair\":{},\"n\":{},\"suite\":{},\"seed\":{seed},\"checks\":[{}],\"passed\":{passed}}}",
                json_str(&pair.to_string()),
                pair.n(),
                json_str(&suite_name),
                items.join(",")
            );
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

// ---------------------------------------------------------------------------
// rotate / compose output

fn emit_matrix(m: &OrthoMat, specs: &[GeneratorSpec], format: Format, out: &mut String) {
    let pair = m.pair();
    let metric = m.metric();
    let residual = m.isometry_residual();
    let methods: Vec<String> = specs.iter().map(|s| s.method().to_string()).collect();
    let kinds: Vec<String> = specs.iter().map(|s| s.kind().to_string()).collect();
    let n = pair.n();
    match format {
        Format::Text => {
            let (plus, minus) = metric.signature();
            let signs: Vec<&str> = metric.diag().iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
            let _ = writeln!(out, "pair       {pair}");
            let _ = writeln!(out, "n          {n}");
            let _ = writeln!(out, "metric     {}  ({plus},{minus})", signs.join(" "));
            let _ = writeln!(out, "method     {}", methods.join(" "));
            let _ = writeln!(out, "kind       {}", kinds.join(" "));
            let _ = writeln!(out, "residual   {residual:.3e}");
            let _ = writeln!(out, "matrix");
            for r in 0..n {
                let row: Vec<String> = (0..n).map(|c| format!("{:>10.6}", m.matrix()[(r, c)] + 0.0)).collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
        }
        Format::Structured => {
            let metric_json = format!("[{}]", metric.diag().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
            let (method, kind) = if specs.len() == 1 {
                (json_str(&methods[0]), json_str(&kinds[0]))
            } else {
                (json_str_list(methods.into_iter()), json_str_list(kinds.into_iter()))
            };
            let rows: Vec<String> = (0..n)
                .map(|r| format!("[{}]", (0..n).map(|c| format_float(m.matrix()[(r, c)])).collect::<Vec<_>>().join(",")))
                .collect();
            let _ = writeln!(
                out,
                "{{\"pair\":{},\"n\":{n},\"metric\":{metric_json},\"method\":{method},\"kind\":{kind},\"matrix\":[{}],\"residual\":{}}}",
                json_str(&pair.to_string()),
                rows.join(","),
                format_float(residual)
            );
        }
    }
}

// ---------------------------------------------------------------------------
// square

fn cmd_square(closure_tol: f64, format: Format, out: &mut String) -> i32 {
    struct Row {
        pair: PairId,
        signature: (usize, usize),
        expected: (usize, usize),
        rank: usize,
        closure: f64,
        ok: bool,
    }
    let mut rows = Vec::new();
    for pair in PairId::all() {
        let n = pair.n();
        let signature = metric(pair).signature();
        let expected = expected_signature(pair);
        let (rank, closure) = match lie_algebra_rank(pair) {
            Ok(r) => (r.rank, r.closure_residual),
            Err(_) => (0, f64::INFINITY),
        };
        let ok = signature == expected && rank == n * (n - 1) / 2 && closure < closure_tol;
        rows.push(Row { pair, signature, expected, rank, closure, ok });
    }
    let passed = rows.iter().all(|r| r.ok);
    match format {
        Format::Text => {
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<7} n={:<2} signature=({},{})  rank={:<3} closure={:.1e}  {}, dim {}  {}",
                    r.pair.to_string(),
                    r.pair.n(),
                    r.signature.0,
                    r.signature.1,
                    r.rank,
                    r.closure,
                    so_label(r.expected),
                    r.rank,
                    if r.ok { "ok" } else { "MISMATCH" }
                );
            }
            let _ = writeln!(out);
            let _ = write!(out, "{:<5}", "");
            for k in Rank::ALL {
                let _ = write!(out, "{:<20}", AlgebraId::normed(k).to_string());
            }
            let _ = writeln!(out);
            for (i, kp) in Rank::ALL.iter().enumerate() {
                let _ = write!(out, "{:<5}", AlgebraId::split(*kp).to_string());
                for r in &rows[4 * i..4 * i + 4] {
                    let _ = write!(out, "{:<20}", format!("{}, dim {}", so_label(r.signature), r.rank));
                }
                let _ = writeln!(out);
            }
            let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
        }
        Format::Structured => {
            let items: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"pair\":{},\"n\":{},\"signature\":[{},{}],\"label\":{},\"rank\":{},\"closure_residual\":{},\"ok\":{}}}",
                        json_str(&r.pair.to_string()),
                        r.pair.n(),
                        r.signature.0,
                        r.signature.1,
                        json_str(&so_label(r.expected)),
                        r.rank,
                        format_float(r.closure),
                        r.ok
                    )
                })
                .collect();
            let _ = writeln!(out, "{{\"square\":[{}],\"passed\":{passed}}}", items.join(","));
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

// ---------------------------------------------------------------------------
// json helpers; all strings are ASCII labels generated here

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_str_list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.map(|s| json_str(&s)).collect::<Vec<_>>().join(","))
}
