//! Command-line front end for `repstab-core`.

pub mod cache;
pub mod output;

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use repstab_core::charpoly::{fit, CharacterPolynomial};
use repstab_core::fimod::{
    check_repstab, colimit_check, generation_profile, murnaghan_check, parse_builtin, FiModule, FiModuleData,
};
use repstab_core::fqstats::{
    discriminant_statistic, factor_degree_stats, gl_crosscheck, irreducible_count, is_prime, necklace_count,
    series_partial_sums, total_statistic, type_histogram, FqPoly, Statistic,
};
use repstab_core::osconf::{character_conf, decompose_conf, set_trace_cache, verify_stability};
use repstab_core::symcore::{character_table, dim_irrep, install_character_table, Partition};
use repstab_core::tori::{brute_force_tori, gl_order, tori_count_by_type, tori_expectation_series, tori_statistic};
use repstab_core::Error;

use cache::Cache;
use output::{Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "repstab", version, about = "Exact representation stability computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,

    /// Cache directory for character tables and traces (default: $REPSTAB_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for enumeration and trace computations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of S_n, or one row of it.
    Chars {
        #[arg(long)]
        n: usize,
        /// Partition of n, e.g. `4,1`.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Decomposition of H^i of the configuration space of n points in the plane.
    DecomposeConf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Report multiplicities over a range of n instead, e.g. `4..10`.
        #[arg(long, value_parser = parse_window)]
        window: Option<RangeInclusive<usize>>,
    },
    /// Compares a weighted count of square-free polynomials with the cohomological side.
    VerifyGl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// one, linear, quadratic-excess, or a polynomial such as `X2 - C(X1,2)`.
        #[arg(long)]
        stat: String,
    },
    /// Fits a character polynomial to the characters of H^i over a window.
    Fit {
        #[arg(long)]
        i: usize,
        #[arg(long, value_parser = parse_window)]
        window: RangeInclusive<usize>,
        /// Maximal degree (default 2i).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Statistics of polynomials over F_q.
    Fq {
        #[command(subcommand)]
        command: FqCommand,
    },
    /// Counts of maximal tori in GL_n(F_q).
    Tori {
        #[command(subcommand)]
        command: ToriCommand,
    },
    /// FI-module analysis.
    Fimod {
        #[command(subcommand)]
        command: FimodCommand,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Subcommand)]
pub enum FqCommand {
    /// Total and mean of a statistic over square-free monic polynomials.
    Total {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        stat: String,
    },
    /// Number of square-free polynomials of each factorization type.
    Histogram {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Irreducible count by enumeration next to the necklace formula.
    Irreducible {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Square and non-square discriminants among square-free polynomials (odd q).
    Discriminant {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Degrees of the irreducible factors of one polynomial.
    Factor {
        #[arg(long)]
        q: u64,
        /// Coefficients below the leading 1, constant term first, e.g. `1,1` for x^2 + x + 1.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<u64>,
    },
    /// Limiting expectation as a series in 1/q.
    Series {
        #[arg(long)]
        stat: String,
        #[arg(long, default_value_t = 4)]
        i_max: usize,
        #[arg(long, value_parser = parse_window, default_value = "2..10")]
        window: RangeInclusive<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ToriCommand {
    /// Number of maximal tori of each type.
    Counts {
        #[command(flatten)]
        field: FieldArgs,
        /// Also count by orbit enumeration (small n and q only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Weighted total and mean of a statistic over all maximal tori.
    Total {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        stat: String,
    },
    /// Mean of a statistic over tori as an exact series in 1/q.
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        stat: String,
    },
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    /// Built-in module such as `poly(3)`, `conf(2)`, `irrep((1))`, `exterior`,
    /// `ker_partials(2)`, `tensor(A, B)`, or a path to an exported JSON file.
    #[arg(long)]
    pub module: String,
}

#[derive(Debug, Subcommand)]
pub enum FimodCommand {
    /// New generators needed at each level.
    Profile {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Injectivity, surjectivity and multiplicity stability over a window.
    Repstab {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_parser = parse_window)]
        window: RangeInclusive<usize>,
    },
    /// Compares the colimit of levels up to N with V_n.
    Colimit {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "big-n")]
        big_n: usize,
        #[arg(long)]
        n: usize,
    },
    /// Stable decomposition of the tensor product V(lambda) x V(mu).
    Murnaghan {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_parser = parse_window)]
        window: RangeInclusive<usize>,
    },
    /// Writes the generating matrices of a module as JSON.
    Export {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Command failures, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Fail(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) | Error::Padding { .. } | Error::Parse(_) | Error::Precondition(_) | Error::CostGuard(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Fail(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Fail(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

/// Rendered output plus whether a verification passed.
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, passed: true }
    }
}

pub fn parse_window(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad window end {b:?}"))?;
    if a > b {
        return Err(format!("empty window {s}"));
    }
    Ok(a..=b)
}

/// Accepts `4,1`, `(4,1)` or `()`.
pub fn parse_partition(s: &str) -> std::result::Result<Partition, Failure> {
    let s = s.trim();
    let wrapped = if s.starts_with('(') { s.to_string() } else { format!("({s})") };
    wrapped
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("invalid partition {s:?}: {e}")))
}

/// Named statistics, or any character polynomial.
pub fn parse_statistic(name: &str) -> std::result::Result<Statistic, Failure> {
    Ok(match name {
        "sign" => Statistic::Sign,
        "n-cycle" | "irreducible" => Statistic::NCycle,
        _ => Statistic::Polynomial(parse_polynomial(name)?),
    })
}

pub fn parse_polynomial(name: &str) -> std::result::Result<CharacterPolynomial, Failure> {
    Ok(match name {
        "one" => CharacterPolynomial::one(),
        "linear" => CharacterPolynomial::x(1),
        "quadratic-excess" => CharacterPolynomial::quadratic_excess(),
        _ => name
            .parse()
            .map_err(|e: Error| Failure::Usage(format!("unknown statistic {name:?}: {e}")))?,
    })
}

fn check_q(q: u64) -> std::result::Result<(), Failure> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("q = {q} is not prime")))
    }
}

/// Loads character tables of `S_k` for `k <= n` from the cache, storing any it lacks.
fn warm_tables(cache: Option<&Cache>, n: usize) -> std::io::Result<()> {
    let Some(cache) = cache else { return Ok(()) };
    for k in 0..=n {
        match cache.load_table(k) {
            Some(t) => install_character_table(t),
            None => cache.store_table(&character_table(k))?,
        }
    }
    Ok(())
}

fn load_module(spec: &str, n_max: usize) -> std::result::Result<Arc<dyn FiModule>, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return Ok(Arc::new(FiModuleData::from_json(&text)?));
    }
    Ok(parse_builtin(spec, n_max)?)
}

/// Parses arguments, runs the command, prints its output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Fail(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Some(k) = cli.jobs {
        if k == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        // the global pool can only be built once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let cache = Cache::from_args(cli.cache_dir.as_deref())?;
    if let Some(c) = &cache {
        set_trace_cache(Some(Arc::new(c.clone())));
    }
    let fmt = cli.format;
    let cache = cache.as_ref();
    match &cli.command {
        Command::Chars { n, lambda } => chars(*n, lambda.as_deref(), cache, fmt),
        Command::DecomposeConf { n, i, window } => decompose(*n, *i, window.clone(), cache, fmt),
        Command::VerifyGl { n, q, stat } => verify_gl(*n, *q, stat, cache, fmt),
        Command::Fit { i, window, degree } => fit_conf(*i, window.clone(), degree.unwrap_or(2 * i), cache),
        Command::Fq { command } => fq(command, cache, fmt),
        Command::Tori { command } => tori(command, fmt),
        Command::Fimod { command } => fimod(command, fmt),
    }
}

fn chars(n: usize, lambda: Option<&str>, cache: Option<&Cache>, fmt: Format) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let only = lambda.map(parse_partition).transpose()?;
    if let Some(l) = &only {
        if l.size() != n {
            return Err(Failure::Usage(format!("{l} is not a partition of {n}")));
        }
    }
    warm_tables(cache, n)?;
    let table = character_table(n);
    let mut out = Table::new(std::iter::once("lambda".to_string()).chain(table.partitions().iter().map(|p| p.to_string())));
    for (lam, row) in table.partitions().iter().zip(table.rows()) {
        if only.as_ref().is_some_and(|l| l != lam) {
            continue;
        }
        out.push(std::iter::once(lam.to_string()).chain(row.iter().map(|v| v.to_string())));
    }
    Ok(Report::ok(out.render(fmt)))
}

fn decompose(n: usize, i: usize, window: Option<RangeInclusive<usize>>, cache: Option<&Cache>, fmt: Format) -> Outcome {
    if let Some(w) = window {
        warm_tables(cache, *w.end())?;
        let report = verify_stability(i, w.clone())?;
        let mut headers = vec!["lambda".to_string()];
        headers.extend(w.clone().map(|n| format!("n={n}")));
        headers.push("settles_at".into());
        let mut out = Table::new(headers);
        for l in &report.labels {
            let mut row = vec![repstab_core::symcore::unpadded_name(&l.lambda)];
            row.extend(l.values.iter().map(|(_, m)| m.to_string()));
            row.push(l.settles_at.to_string());
            out.push(row);
        }
        let mut text = out.render(fmt);
        if fmt != Format::Json {
            text.push_str(&format!("# onset {} (bound 4i = {})\n", report.onset, report.bound));
        }
        return Ok(Report::ok(text));
    }
    if n == 0 || (i > 0 && i >= n) {
        return Err(Failure::Usage(format!("need 0 <= i <= n - 1, got n = {n}, i = {i}")));
    }
    warm_tables(cache, n)?;
    let d = decompose_conf(n, i)?;
    let mut out = Table::new(["label", "partition", "multiplicity", "dimension"]).numeric(&["multiplicity"]);
    for (label, m) in d.iter() {
        out.push([label.to_string(), label.partition().to_string(), m.to_string(), dim_irrep(&label).to_string()]);
    }
    Ok(Report::ok(out.render(fmt)))
}

fn verify_gl(n: usize, q: u64, stat: &str, cache: Option<&Cache>, fmt: Format) -> Outcome {
    check_q(q)?;
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let p = parse_polynomial(stat)?;
    warm_tables(cache, n)?;
    let (lhs, rhs, passed) = match gl_crosscheck(n, q, &p) {
        Ok(r) => (r.total.to_string(), r.cohomology.to_string(), true),
        Err(Error::CrossCheck { lhs, rhs, .. }) => (lhs, rhs, false),
        Err(e) => return Err(e.into()),
    };
    let mut out = Table::new(["n", "q", "statistic", "enumeration", "cohomology", "result"]).numeric(&["n", "q"]);
    out.push([n.to_string(), q.to_string(), p.to_string(), lhs, rhs, if passed { "PASS" } else { "FAIL" }.to_string()]);
    Ok(Report {
        text: out.render(fmt),
        passed,
    })
}

fn fit_conf(i: usize, window: RangeInclusive<usize>, degree: usize, cache: Option<&Cache>) -> Outcome {
    warm_tables(cache, *window.end())?;
    let data: Vec<_> = window.map(|n| (n, character_conf(n, i))).collect();
    let p = fit(&data, degree)?;
    Ok(Report::ok(format!("{p}\n")))
}

fn stat_row(out: &mut Table, n: usize, q: u64, statistic: String, total: String, expectation: String) {
    out.push([n.to_string(), q.to_string(), statistic, total, expectation]);
}

fn fq(cmd: &FqCommand, cache: Option<&Cache>, fmt: Format) -> Outcome {
    let rows = || Table::new(["n", "q", "statistic", "total", "expectation"]).numeric(&["n", "q"]);
    match cmd {
        FqCommand::Total { field, stat } => {
            check_q(field.q)?;
            let s = total_statistic(field.n, field.q, &parse_statistic(stat)?)?;
            let mut out = rows();
            stat_row(&mut out, s.n, s.q, s.statistic, s.total.to_string(), s.expectation.to_string());
            Ok(Report::ok(out.render(fmt)))
        }
        FqCommand::Histogram { field } => {
            check_q(field.q)?;
            let h = type_histogram(field.n, field.q)?;
            let mut out = Table::new(["type", "count"]);
            for (mu, c) in &h.counts {
                out.push([mu.to_string(), c.to_string()]);
            }
            Ok(Report::ok(out.render(fmt)))
        }
        FqCommand::Irreducible { field } => {
            check_q(field.q)?;
            let count = irreducible_count(field.n, field.q)?;
            let mut out = Table::new(["n", "q", "enumerated", "necklace"]).numeric(&["n", "q"]);
            out.push([field.n.to_string(), field.q.to_string(), count.to_string(), necklace_count(field.n, field.q).to_string()]);
            Ok(Report::ok(out.render(fmt)))
        }
        FqCommand::Discriminant { field } => {
            check_q(field.q)?;
            let r = discriminant_statistic(field.n, field.q)?;
            let mut out = Table::new(["n", "q", "square", "nonsquare", "sign_sum", "sign_matches_residue"])
                .numeric(&["n", "q", "square", "nonsquare", "sign_sum"]);
            out.push([
                r.n.to_string(),
                r.q.to_string(),
                r.square.to_string(),
                r.nonsquare.to_string(),
                r.sign_sum.to_string(),
                r.sign_matches_residue.to_string(),
            ]);
            Ok(Report::ok(out.render(fmt)))
        }
        FqCommand::Factor { q, coeffs } => {
            check_q(*q)?;
            let f = FqPoly::monic(*q, coeffs)?;
            let stats = factor_degree_stats(&f)?;
            let mut out = Table::new(["polynomial", "type", "sign"]);
            out.push([f.to_string(), stats.cycle_type().to_string(), stats.sign().to_string()]);
            Ok(Report::ok(out.render(fmt)))
        }
        FqCommand::Series { stat, i_max, window } => {
            let p = parse_polynomial(stat)?;
            warm_tables(cache, *window.end())?;
            let s = series_partial_sums(&p, *i_max, window.clone())?;
            let mut out = Table::new(["k", "raw", "expectation", "onset"]).numeric(&["k", "onset"]);
            for k in 0..s.raw.len() {
                out.push([k.to_string(), s.raw[k].to_string(), s.expectation[k].to_string(), s.onsets[k].to_string()]);
            }
            Ok(Report::ok(out.render(fmt)))
        }
    }
}

fn tori(cmd: &ToriCommand, fmt: Format) -> Outcome {
    match cmd {
        ToriCommand::Counts { field, brute_force } => {
            check_q(field.q)?;
            let counts = tori_count_by_type(field.n, field.q)?;
            let brute = if *brute_force { Some(brute_force_tori(field.n, field.q)?) } else { None };
            let mut headers = vec!["n", "q", "type", "count"];
            if brute.is_some() {
                headers.push("enumerated");
            }
            let mut out = Table::new(headers).numeric(&["n", "q"]);
            let mut passed = true;
            for (mu, c) in &counts {
                let mut row = vec![field.n.to_string(), field.q.to_string(), mu.to_string(), c.to_string()];
                if let Some(b) = &brute {
                    let e = b.get(mu).cloned().unwrap_or_default();
                    passed &= e == *c;
                    row.push(e.to_string());
                }
                out.push(row);
            }
            let mut text = out.render(fmt);
            if fmt != Format::Json {
                text.push_str(&format!("# |GL_{}(F_{})| = {}\n", field.n, field.q, gl_order(field.n, field.q)?));
            }
            Ok(Report { text, passed })
        }
        ToriCommand::Total { field, stat } => {
            check_q(field.q)?;
            let t = tori_statistic(field.n, field.q, &parse_statistic(stat)?)?;
            let mut out = Table::new(["n", "q", "statistic", "total", "expectation"]).numeric(&["n", "q"]);
            stat_row(&mut out, t.n, t.q, t.statistic, t.total.to_string(), t.expectation.to_string());
            Ok(Report::ok(out.render(fmt)))
        }
        ToriCommand::Series { n, stat } => {
            let coeffs = tori_expectation_series(*n, &parse_statistic(stat)?)?;
            let mut out = Table::new(["k", "coefficient"]).numeric(&["k"]);
            for (k, c) in coeffs.iter().enumerate() {
                out.push([k.to_string(), c.to_string()]);
            }
            Ok(Report::ok(out.render(fmt)))
        }
    }
}

fn fimod(cmd: &FimodCommand, fmt: Format) -> Outcome {
    match cmd {
        FimodCommand::Profile { module, n_max } => {
            let v = load_module(&module.module, *n_max)?;
            let p = generation_profile(v.as_ref())?;
            let mut out = Table::new(["n", "dim", "quotient_dim", "new_generators"]).numeric(&["n", "dim", "quotient_dim", "new_generators"]);
            for n in 0..p.dims.len() {
                out.push([n, p.dims[n], p.quotient_dims[n], p.new_generators[n]]);
            }
            Ok(Report::ok(out.render(fmt)))
        }
        FimodCommand::Repstab { module, window } => {
            let v = load_module(&module.module, *window.end() + 1)?;
            let r = check_repstab(v.as_ref(), window.clone())?;
            let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            let mut out = Table::new(["n", "dim", "injective", "surjective", "multiplicities_constant", "decomposition"])
                .numeric(&["n", "dim"]);
            for row in &r.rows {
                out.push([
                    row.n.to_string(),
                    row.dim.to_string(),
                    show(row.injective),
                    show(row.surjective),
                    row.multiplicities_constant.to_string(),
                    row.decomposition.to_string(),
                ]);
            }
            let mut text = out.render(fmt);
            if fmt != Format::Json {
                let onset = r.onset.map_or("none".to_string(), |n| n.to_string());
                text.push_str(&format!("# onset {onset}\n"));
            }
            Ok(Report {
                text,
                passed: r.onset.is_some(),
            })
        }
        FimodCommand::Colimit { module, big_n, n } => {
            let v = load_module(&module.module, *n)?;
            let r = colimit_check(v.as_ref(), *big_n, *n)?;
            let mut out = Table::new(["N", "n", "colimit_dim", "v_dim", "image_rank", "isomorphic"])
                .numeric(&["N", "n", "colimit_dim", "v_dim", "image_rank"]);
            out.push([
                r.big_n.to_string(),
                r.n.to_string(),
                r.colimit_dim.to_string(),
                r.v_dim.to_string(),
                r.image_rank.to_string(),
                r.isomorphic.to_string(),
            ]);
            Ok(Report {
                text: out.render(fmt),
                passed: r.isomorphic,
            })
        }
        FimodCommand::Murnaghan { lambda, mu, window } => {
            let r = murnaghan_check(&parse_partition(lambda)?, &parse_partition(mu)?, window.clone())?;
            let mut out = Table::new(["label", "multiplicity"]).numeric(&["multiplicity"]);
            for (nu, m) in &r.table {
                out.push([repstab_core::symcore::unpadded_name(nu), m.to_string()]);
            }
            let mut text = out.render(fmt);
            if fmt != Format::Json {
                text.push_str(&format!("# onset {}\n", r.onset));
            }
            Ok(Report::ok(text))
        }
        FimodCommand::Export { module, n_max, out } => {
            let v = load_module(&module.module, *n_max)?;
            let json = FiModuleData::materialize(v.as_ref()).to_json() + "\n";
            match out {
                Some(path) => {
                    std::fs::write(path, json)?;
                    Ok(Report::ok(String::new()))
                }
                None => Ok(Report::ok(json)),
            }
        }
    }
}
