//! `l2inv`: asymptotic Betti numbers, Alexander polynomials, Mahler measures
//! and finite-cover tables from the command line.

mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use l2inv::complexes::{parse_raw_complex, presentation_complex, torsion_reduce, write_raw_complex, GroupRingComplex};
use l2inv::covers::{betti, finite_cover_complex, lattice_from_basis, torsion_order, Lattice};
use l2inv::invariants::{
    alexander_poly, alpha, limit_table, m_invariant, orbifold_complex, predict_alpha1, predict_m1, ComputeOptions,
    LimitRow,
};
use l2inv::mahler::{mahler, MahlerMethod, MahlerParams, MahlerResult};
use l2inv::presentations::{parse_presentation_file, OrbifoldType};
use l2inv::zlinalg::RankMode;
use l2inv::{CoeffDomain, Error, IntMatrix, LaurentPoly};

use output::{bigint_json, csv_field, rational_json, rational_text, sig9};

#[derive(Parser, Debug)]
#[command(name = "l2inv", version, about = "Asymptotic Betti numbers and torsion growth of abelian covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (the default for `limits`).
    #[arg(long, global = true)]
    csv: bool,

    /// Seed for every randomised step (ranks, weights, lattice rules).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,

    /// Worker threads for table rows and numeric integration.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form α₁ and M₁ for an orbifold type.
    Predict {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
    },
    /// α_i over Q (`--char 0`) or F_p.
    Alpha {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
    },
    /// The Alexander polynomial Δ_i (torsion is reduced away first).
    Alexander {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
    },
    /// Mahler measure of a polynomial, or M_i of a complex.
    Mahler {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
        /// Polynomial such as `1 + t1 + t2` (instead of an input complex).
        #[arg(long, conflicts_with_all = ["orbifold", "file"])]
        poly: Option<String>,
        /// Number of variables of `--poly` (default: highest index used).
        #[arg(long, requires = "poly")]
        vars: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Attest that the polynomial is an Alexander polynomial of a smooth
        /// quasi-projective pair (unlocks `--method leading`).
        #[arg(long)]
        attest: bool,
        /// Lattice-rule points per shift for the numeric route.
        #[arg(long)]
        points: Option<usize>,
        /// Random shifts for the numeric route.
        #[arg(long)]
        shifts: Option<usize>,
    },
    /// Betti numbers and torsion of one finite cover.
    Cover {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
        /// `N`, `diag:2,3`, `basis:1,0;1,2` (generators separated by `;`) or `random:MAXDIAG:SEED`.
        #[arg(long)]
        lattice: String,
    },
    /// Table of normalised Betti numbers and torsion along a lattice sequence.
    Limits {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        alg: Algebra,
        /// Scalar lattices `N·Z^n` for `N` in `a..b` (inclusive).
        #[arg(long)]
        range: Option<String>,
        /// Explicit lattices (repeatable), same syntax as `cover --lattice`.
        #[arg(long)]
        lattice: Vec<String>,
        /// Number of random lattices, drawn from `--seed`.
        #[arg(long)]
        random: Option<usize>,
        /// Largest diagonal entry of random lattices.
        #[arg(long, default_value_t = 8)]
        max_diag: u64,
    },
    /// Print the torsion-reduced complex in the raw complex format.
    Reduce {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Orbifold type, e.g. `g=0,r=2,mu=6` or `g=1,r=0,mu=2:3`.
    #[arg(long)]
    orbifold: Option<String>,
    /// Torsion orders m_j (one per multiplicity, comma separated); selects the
    /// target Z^n ⊕ (⊕ Z/m_j).
    #[arg(long, value_delimiter = ',', requires = "orbifold")]
    m: Option<Vec<u64>>,
    /// Presentation file (`.pres`) or raw complex file.
    #[arg(long, conflicts_with = "orbifold")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Algebra {
    /// Homological degree i.
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Characteristics (0 for Q), comma separated.
    #[arg(long = "char", value_delimiter = ',', default_value = "0")]
    chars: Vec<u64>,
    /// Maximum number of minors evaluated for Δ_i.
    #[arg(long, default_value_t = 200_000)]
    budget: usize,
    /// Exact fraction-free ranks instead of Monte Carlo evaluation.
    #[arg(long)]
    exact: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Jensen,
    Numeric,
    Leading,
}

impl From<Method> for MahlerMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Jensen => MahlerMethod::Jensen1Var,
            Method::Numeric => MahlerMethod::NumericTorus,
            Method::Leading => MahlerMethod::LeadingCoefficient,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Csv,
    Json,
}

/// Failures, each with its exit status.
#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Parse { .. }) | CliError::Usage(_) => 2,
            CliError::Core(Error::Constraint(_)) => 3,
            CliError::Core(Error::Budget(_)) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A loaded input: the complex and, for orbifold input, its type.
struct Input {
    complex: GroupRingComplex,
    orbifold: Option<(OrbifoldType, bool)>,
}

fn load(source: &Source) -> CliResult<Input> {
    match (&source.orbifold, &source.file) {
        (Some(spec), None) => {
            let tau = OrbifoldType::parse_spec(spec, source.m.clone())?;
            let torsion = source.m.as_ref().is_some_and(|m| m.iter().any(|&x| x > 1));
            Ok(Input {
                complex: orbifold_complex(&tau, torsion)?,
                orbifold: Some((tau, torsion)),
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let located = |e: Error| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column,
                    message: format!("{}: {message}", path.display()),
                },
                other => other,
            };
            let complex = if is_raw_complex(&text) {
                parse_raw_complex(&text).map_err(located)?
            } else {
                let file = parse_presentation_file(&text).map_err(located)?;
                presentation_complex(&file.presentation, &file.nu)?
            };
            Ok(Input { complex, orbifold: None })
        }
        _ => Err(CliError::Usage("give exactly one input: --orbifold or --file".into())),
    }
}

/// Raw complex files are recognised by their `ranks` header.
fn is_raw_complex(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .any(|l| l.starts_with("ranks") && l[5..].trim_start().starts_with('='))
}

fn options(alg: &Algebra, seed: u64) -> ComputeOptions {
    ComputeOptions {
        rank: if alg.exact {
            RankMode::Exact
        } else {
            RankMode::MonteCarlo { seed, trials: 3 }
        },
        budget: alg.budget,
        seed,
    }
}

/// Parses one lattice spec for rank `n`.
fn parse_lattice(spec: &str, n: usize) -> CliResult<Lattice> {
    let bad = |msg: String| CliError::Core(Error::parse(1, 1, format!("lattice '{spec}': {msg}")));
    let ints = |s: &str| -> CliResult<Vec<i64>> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad(format!("'{x}' is not an integer"))))
            .collect()
    };
    let lattice = if let Some(rest) = spec.strip_prefix("diag:") {
        let d: Vec<u64> = ints(rest)?
            .into_iter()
            .map(|x| u64::try_from(x).map_err(|_| bad("diagonal entries must be positive".into())))
            .collect::<CliResult<_>>()?;
        Lattice::diagonal(&d)?
    } else if let Some(rest) = spec.strip_prefix("basis:") {
        let gens: Vec<Vec<i64>> = rest.split(';').map(ints).collect::<CliResult<_>>()?;
        let k = gens.len();
        if gens.iter().any(|g| g.len() != k) {
            return Err(bad(format!("expected {k} generators of length {k}")));
        }
        lattice_from_basis(&IntMatrix::from_fn(k, k, |i, j| BigInt::from(gens[j][i])))?
    } else if let Some(rest) = spec.strip_prefix("random:") {
        let (d, s) = rest.split_once(':').ok_or_else(|| bad("expected random:MAXDIAG:SEED".into()))?;
        let d = d.trim().parse().map_err(|_| bad(format!("'{d}' is not a positive integer")))?;
        let s = s.trim().parse().map_err(|_| bad(format!("'{s}' is not a seed")))?;
        Lattice::random(n, d, s)?
    } else {
        let big_n = spec.trim().parse().map_err(|_| bad("expected N, diag:, basis: or random:".into()))?;
        Lattice::scalar(n, big_n)?
    };
    if lattice.n() != n {
        return Err(CliError::Core(Error::constraint(format!(
            "lattice '{spec}' has rank {}, the target has free rank {n}",
            lattice.n()
        ))));
    }
    Ok(lattice)
}

fn parse_range(spec: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Core(Error::parse(1, 1, format!("range '{spec}': expected a..b with 1 ≤ a ≤ b")));
    let (a, b) = spec.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn run(cli: &Cli) -> CliResult<String> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let seed = cli.seed;
    match &cli.command {
        Command::Predict { source, alg } => predict(source, alg, format),
        Command::Alpha { source, alg } => run_alpha(source, alg, seed, format),
        Command::Alexander { source, alg } => run_alexander(source, alg, seed, format),
        Command::Mahler {
            source,
            alg,
            poly,
            vars,
            method,
            attest,
            points,
            shifts,
        } => {
            let defaults = MahlerParams::default();
            let params = MahlerParams {
                points: points.unwrap_or(defaults.points),
                shifts: shifts.unwrap_or(defaults.shifts),
                seed,
                attested: *attest,
            };
            let method = method.map(MahlerMethod::from);
            let (label, r) = match poly {
                Some(text) => {
                    let n = vars.unwrap_or_else(|| highest_variable(text));
                    let h = LaurentPoly::parse(text, n, CoeffDomain::Integers)?;
                    let m = method.unwrap_or(if n == 1 {
                        MahlerMethod::Jensen1Var
                    } else {
                        MahlerMethod::NumericTorus
                    });
                    ("M".to_string(), mahler(&h, m, &params)?)
                }
                None => {
                    let input = load(source)?;
                    let r = m_invariant(&input.complex, alg.degree, method, &params, &options(alg, seed))?;
                    (format!("M{}", alg.degree), r)
                }
            };
            Ok(mahler_output(&label, &r, format))
        }
        Command::Cover { source, alg, lattice } => {
            let input = load(source)?;
            let lattice = parse_lattice(lattice, input.complex.target().free_rank())?;
            cover(&input, alg, &lattice, format)
        }
        Command::Limits {
            source,
            alg,
            range,
            lattice,
            random,
            max_diag,
        } => {
            let input = load(source)?;
            let n = input.complex.target().free_rank();
            let mut lattices = Vec::new();
            if let Some(r) = range {
                let (a, b) = parse_range(r)?;
                for big_n in a..=b {
                    lattices.push((big_n.to_string(), Lattice::scalar(n, big_n)?));
                }
            }
            for spec in lattice {
                lattices.push((spec.clone(), parse_lattice(spec, n)?));
            }
            for k in 0..random.unwrap_or(0) {
                let s = seed.wrapping_add(k as u64);
                lattices.push((format!("random:{max_diag}:{s}"), Lattice::random(n, *max_diag, s)?));
            }
            if lattices.is_empty() {
                return Err(CliError::Usage("give --range, --lattice or --random".into()));
            }
            let format = if format == Format::Human { Format::Csv } else { format };
            limits(&input, alg, &lattices, format)
        }
        Command::Reduce { source } => {
            let input = load(source)?;
            Ok(write_raw_complex(&torsion_reduce(&input.complex)))
        }
    }
}

/// Largest `k` with `t<k>` in the text, at least 1.
fn highest_variable(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 1;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b't' {
            let j = (i + 1..b.len()).find(|&j| !b[j].is_ascii_digit()).unwrap_or(b.len());
            if let Ok(k) = text[i + 1..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn predict(source: &Source, alg: &Algebra, format: Format) -> CliResult<String> {
    let spec = source
        .orbifold
        .as_ref()
        .ok_or_else(|| CliError::Usage("predict needs --orbifold".into()))?;
    let tau = OrbifoldType::parse_spec(spec, source.m.clone())?;
    let torsion = source.m.as_ref().is_some_and(|m| m.iter().any(|&x| x > 1));
    let alphas = alg
        .chars
        .iter()
        .map(|&p| Ok((p, predict_alpha1(&tau, p, torsion)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let m1 = predict_m1(&tau, torsion)?;
    Ok(match format {
        Format::Json => json!({
            "orbifold": tau.to_string(),
            "torsion": torsion,
            "alpha1": alphas.iter().map(|(p, a)| json!({"char": p, "value": rational_json(a)})).collect::<Vec<_>>(),
            "m1": {"value": m1.value, "symbolic": m1.symbolic},
        })
        .to_string(),
        Format::Csv => {
            let mut s = String::from("char,alpha1,m1\n");
            for (p, a) in &alphas {
                let _ = writeln!(s, "{p},{},{}", rational_text(a), sig9(m1.value));
            }
            s
        }
        Format::Human => {
            let mut s = format!("orbifold {tau}\n");
            for (p, a) in &alphas {
                let _ = writeln!(s, "alpha1 (char {p}) = {}", rational_text(a));
            }
            let _ = writeln!(s, "m1 = {} ({})", sig9(m1.value), m1.symbolic);
            s
        }
    })
}

fn run_alpha(source: &Source, alg: &Algebra, seed: u64, format: Format) -> CliResult<String> {
    let input = load(source)?;
    let opts = options(alg, seed);
    let values = alg
        .chars
        .iter()
        .map(|&p| Ok((p, alpha(&input.complex, alg.degree, p, &opts)?.value)))
        .collect::<CliResult<Vec<_>>>()?;
    let i = alg.degree;
    Ok(match format {
        Format::Json => json!({
            "degree": i,
            "alpha": values.iter().map(|(p, a)| json!({"char": p, "value": rational_json(a)})).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Csv => {
            let mut s = String::from("degree,char,alpha\n");
            for (p, a) in &values {
                let _ = writeln!(s, "{i},{p},{}", rational_text(a));
            }
            s
        }
        Format::Human => values
            .iter()
            .map(|(p, a)| format!("alpha{i} (char {p}) = {}\n", rational_text(a)))
            .collect(),
    })
}

fn run_alexander(source: &Source, alg: &Algebra, seed: u64, format: Format) -> CliResult<String> {
    let input = load(source)?;
    let c = if input.complex.target().has_torsion() {
        eprintln!("note: torsion in the target was reduced into the free part first");
        torsion_reduce(&input.complex)
    } else {
        input.complex
    };
    let delta = alexander_poly(&c, alg.degree, &options(alg, seed))?;
    Ok(match format {
        Format::Json => json!({
            "degree": alg.degree,
            "variables": delta.num_vars(),
            "delta": delta.to_string(),
        })
        .to_string(),
        Format::Csv => format!("degree,delta\n{},{}\n", alg.degree, csv_field(&delta.to_string())),
        Format::Human => format!("{delta}\n"),
    })
}

fn mahler_output(label: &str, r: &MahlerResult, format: Format) -> String {
    match format {
        Format::Json => json!({
            "quantity": label,
            "value": r.value,
            "error_estimate": r.error_estimate,
            "method": r.method.name(),
            "attested": r.attested,
        })
        .to_string(),
        Format::Csv => format!(
            "quantity,value,error_estimate,method,attested\n{label},{},{},{},{}\n",
            sig9(r.value),
            sig9(r.error_estimate),
            r.method.name(),
            r.attested
        ),
        Format::Human => {
            let mut s = format!("{label} = {} ± {} ({})", sig9(r.value), sig9(r.error_estimate), r.method.name());
            if r.attested {
                s.push_str(" [attested]");
            }
            s.push('\n');
            s
        }
    }
}

fn cover(input: &Input, alg: &Algebra, lattice: &Lattice, format: Format) -> CliResult<String> {
    let i = alg.degree;
    let cover = finite_cover_complex(&input.complex, lattice)?;
    let sheets = lattice.index() * BigInt::from(input.complex.target().torsion_size());
    let bettis = alg
        .chars
        .iter()
        .map(|&p| Ok((p, betti(&cover, i, p)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let tor = torsion_order(&cover, i)?;
    Ok(match format {
        Format::Json => json!({
            "degree": i,
            "sheets": bigint_json(&sheets),
            "lattice_index": bigint_json(lattice.index()),
            "min_norm": bigint_json(lattice.min_norm()),
            "betti": bettis.iter().map(|(p, b)| json!({"char": p, "value": b})).collect::<Vec<_>>(),
            "torsion_factors": tor.factors.iter().map(bigint_json).collect::<Vec<_>>(),
            "torsion_order": bigint_json(&tor.order()),
            "log_torsion": tor.log,
        })
        .to_string(),
        Format::Csv => {
            let mut s = String::from("sheets,min_norm");
            for (p, _) in &bettis {
                let _ = write!(s, ",b{i}_char{p}");
            }
            let _ = writeln!(s, ",log_tor");
            let _ = write!(s, "{sheets},{}", lattice.min_norm());
            for (_, b) in &bettis {
                let _ = write!(s, ",{b}");
            }
            let _ = writeln!(s, ",{}", sig9(tor.log));
            s
        }
        Format::Human => {
            let mut s = format!("sheets = {sheets}\nmin_norm = {}\n", lattice.min_norm());
            for (p, b) in &bettis {
                let _ = writeln!(s, "b{i} (char {p}) = {b}");
            }
            let factors: Vec<String> = tor.factors.iter().map(|d| format!("Z/{d}")).collect();
            let _ = writeln!(
                s,
                "torsion H{i} = {}",
                if factors.is_empty() { "0".into() } else { factors.join(" + ") }
            );
            let _ = writeln!(s, "log|tor| = {}", sig9(tor.log));
            s
        }
    })
}

fn limits(input: &Input, alg: &Algebra, lattices: &[(String, Lattice)], format: Format) -> CliResult<String> {
    let i = alg.degree;
    let c = &input.complex;
    let ls: Vec<Lattice> = lattices.iter().map(|(_, l)| l.clone()).collect();
    let rows = limit_table(c, i, &ls, &alg.chars);
    // limits along lattices are only proven in one variable
    let illustrative = c.target().free_rank() >= 2;
    if illustrative {
        eprintln!("note: free rank ≥ 2, torsion growth columns are illustrative (only a limsup is known)");
    }
    let prediction = match (&input.orbifold, i) {
        (Some((tau, torsion)), 1) => {
            let alphas = alg
                .chars
                .iter()
                .map(|&p| Ok((p, predict_alpha1(tau, p, *torsion)?)))
                .collect::<CliResult<Vec<_>>>()?;
            Some((alphas, predict_m1(tau, *torsion)?.value))
        }
        _ => None,
    };
    if format == Format::Json {
        let row_json = |(label, r): (&String, &LimitRow)| {
            json!({
                "lattice": label,
                "min_norm": bigint_json(&r.min_norm),
                "lattice_index": bigint_json(&r.lattice_index),
                "sheets": r.sheets,
                "betti": r.betti.iter().map(|(p, b)| json!({"char": p, "value": b})).collect::<Vec<_>>(),
                "torsion_order": bigint_json(&r.torsion_order),
                "log_torsion": r.log_torsion,
                "log_torsion_ratio": if r.error.is_none() { json!(r.log_torsion_ratio()) } else { Value::Null },
                "error": r.error,
            })
        };
        let mut out = json!({
            "degree": i,
            "chars": alg.chars,
            "illustrative": illustrative,
            "rows": lattices.iter().map(|(l, _)| l).zip(&rows).map(row_json).collect::<Vec<_>>(),
        });
        if let Some((alphas, m)) = &prediction {
            out["prediction"] = json!({
                "alpha1": alphas.iter().map(|(p, a)| json!({"char": p, "value": rational_json(a)})).collect::<Vec<_>>(),
                "m1": m,
            });
        }
        return Ok(out.to_string());
    }
    let mut s = String::from("lattice,min_norm,index,sheets");
    for p in &alg.chars {
        let _ = write!(s, ",b{i}_char{p},b{i}_ratio_char{p}");
    }
    s.push_str(",log_tor,log_tor_ratio");
    if let Some((alphas, _)) = &prediction {
        for (p, _) in alphas {
            let _ = write!(s, ",alpha1_pred_char{p}");
        }
        s.push_str(",m1_pred");
    }
    s.push_str(",error\n");
    for ((label, _), r) in lattices.iter().zip(&rows) {
        let _ = write!(s, "{},{},{},{}", csv_field(label), r.min_norm, r.lattice_index, r.sheets);
        for p in &alg.chars {
            match (r.betti.iter().find(|(q, _)| q == p), r.betti_ratio(*p)) {
                (Some((_, b)), Some(x)) => {
                    let _ = write!(s, ",{b},{}", sig9(x));
                }
                _ => s.push_str(",,"),
            }
        }
        if r.error.is_none() {
            let _ = write!(s, ",{},{}", sig9(r.log_torsion), sig9(r.log_torsion_ratio()));
        } else {
            s.push_str(",,");
        }
        if let Some((alphas, m)) = &prediction {
            for (_, a) in alphas {
                let _ = write!(s, ",{}", rational_text(a));
            }
            let _ = write!(s, ",{}", sig9(*m));
        }
        let _ = writeln!(s, ",{}", csv_field(r.error.as_deref().unwrap_or("")));
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if cli.json {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
