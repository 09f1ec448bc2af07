//! Command-line front end: every library operation behind a subcommand with
//! bit-exact, re-parseable text output.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a checked property
//! failed. Output is plain by default; `--format structured` switches to
//! line-oriented `key = value` for diffable logs.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ratwitt::almkvist::EndoModule;
use ratwitt::descent::{coefficients_in_base, equalizer_check, TensorSplit};
use ratwitt::fatou::{strong_fatou_check, FatouPair, Verdict};
use ratwitt::monoid::omega;
use ratwitt::{fixtures, hankel, parse, RatWitt, Ring, WittSeries};

#[derive(Parser)]
#[command(
    name = "ratwitt",
    about = "Exact arithmetic in the big Witt ring and its rational subring",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output style: bare results, or key = value lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Args)]
struct RingArg {
    /// Coefficient ring descriptor: ZZ, QQ, Zmod/6, GF/4, Dual(GF/2), …
    #[arg(long, value_name = "RING")]
    ring: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Witt-ring arithmetic on series or P/Q literals.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Ghost components w_1..w_n of a series.
    Ghost {
        #[command(flatten)]
        ring: RingArg,
        /// Series or P/Q literal.
        input: String,
        /// Number of ghost components (default RATWITT_PREC_DEFAULT or 16).
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Hankel-matrix queries.
    Hankel {
        #[command(subcommand)]
        op: HankelOp,
    },
    /// Recover P/Q from leading series coefficients.
    Reconstruct {
        #[command(flatten)]
        ring: RingArg,
        /// Comma-separated coefficients starting at the constant term 1.
        #[arg(long, value_name = "c0,c1,..")]
        series: String,
        /// Degree bound for numerator and denominator.
        #[arg(long)]
        bound: usize,
    },
    /// Rank-filtration membership tests.
    Wj {
        #[command(subcommand)]
        op: WjOp,
    },
    /// Fatou-property checks for a series over a fraction field.
    Fatou {
        #[command(subcommand)]
        op: FatouOp,
    },
    /// Image of a formal ℤ-linear sum of Teichmüller classes.
    Omega {
        #[command(flatten)]
        ring: RingArg,
        /// Formal sum literal, e.g. "2*(3) - (5)".
        input: String,
    },
    /// Endomorphism char-map oracle.
    Almkvist {
        #[command(subcommand)]
        op: AlmkvistOp,
    },
    /// Galois descent checks for finite-field coefficients.
    Descent {
        #[command(subcommand)]
        op: DescentOp,
    },
    /// Run a named acceptance fixture and print its report.
    Demo {
        /// Fixture name, or "all"; see `demo list`.
        name: String,
    },
}

#[derive(Subcommand)]
enum WittOp {
    /// Witt sum (series product).
    Add {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        g: String,
        /// Force series output at this precision.
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Witt negation.
    Neg {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Witt product (unit 1-T).
    Mul {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        g: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Frobenius F_N.
    Frob {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "N")]
        n: usize,
        f: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Verschiebung V_N.
    Versch {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "N")]
        n: usize,
        f: String,
        #[arg(long)]
        prec: Option<usize>,
    },
}

#[derive(Subcommand)]
enum HankelOp {
    /// Rank of the Hankel matrix of a series (field coefficients).
    Rank {
        #[command(flatten)]
        ring: RingArg,
        /// P/Q literal, or a comma-separated coefficient window.
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum WjOp {
    /// Does the coefficient window sit inside rank level n?
    Member {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        bound: usize,
        #[arg(long, value_name = "c0,c1,..")]
        series: String,
    },
}

#[derive(Subcommand)]
enum FatouOp {
    /// Classify f over Frac(A) relative to A.
    Check {
        /// Subring descriptor A; f is read over its fraction field.
        #[arg(long, value_name = "RING")]
        subring: String,
        /// Series or P/Q literal over the fraction field.
        f: String,
        /// Series coefficients to test when the presentation fails.
        #[arg(long)]
        prec: Option<usize>,
    },
}

#[derive(Subcommand)]
enum AlmkvistOp {
    /// det(1 - phi*T) of a square matrix, as a P/Q value.
    Char {
        #[command(flatten)]
        ring: RingArg,
        /// Matrix literal: rows separated by ';', entries by ','.
        #[arg(long)]
        matrix: String,
    },
    /// Short-exact-sequence additivity of the char map at a block split.
    Check {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        matrix: String,
        /// Size of the leading invariant block.
        #[arg(long)]
        split: usize,
    },
}

#[derive(Subcommand)]
enum DescentOp {
    /// Compare fixed-point and coefficient-field descent for f.
    Check {
        /// Base field descriptor, e.g. GF/2.
        #[arg(long, value_name = "RING")]
        base: String,
        /// Extension field descriptor, e.g. GF/4.
        #[arg(long, value_name = "RING")]
        ext: String,
        /// P/Q literal over the extension field.
        f: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage problems are exit 1; --help/--version stay successful.
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn default_prec() -> usize {
    std::env::var("RATWITT_PREC_DEFAULT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(16)
}

fn ring_of(arg: &RingArg) -> ratwitt::Result<Ring> {
    parse::parse_ring(&arg.ring)
}

/// Print a single result value, honouring the output format.
fn emit(fmt: Format, key: &str, value: &str) {
    match fmt {
        Format::Plain => println!("{value}"),
        Format::Structured => println!("{key} = {value}"),
    }
}

fn run(cli: &Cli) -> ratwitt::Result<ExitCode> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Witt { op } => run_witt(fmt, op),
        Cmd::Ghost { ring, input, upto } => {
            let r = ring_of(ring)?;
            let n = upto.unwrap_or_else(default_prec);
            let f = parse_operand(&r, input, n)?.into_series(n);
            let w = f.ghost();
            let txt: Vec<String> = w.iter().map(|c| r.render_elem(c)).collect();
            emit(fmt, "ghost", &txt.join(","));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hankel { op: HankelOp::Rank { ring, input } } => {
            let r = ring_of(ring)?;
            if input.contains(',') {
                let list = parse::parse_coeff_list(&r, input)?;
                let v = hankel::hankel_rank_field_series(&r, &list)?;
                emit(fmt, "rank", &v.rank.to_string());
                if v.truncation_limited {
                    println!("note: window too short, rank is a lower bound");
                }
            } else {
                let f = parse::parse_ratwitt(&r, input)?;
                emit(fmt, "rank", &hankel::hankel_rank_field(&f)?.to_string());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reconstruct { ring, series, bound } => {
            let r = ring_of(ring)?;
            let list = parse::parse_coeff_list(&r, series)?;
            let f = RatWitt::reconstruct_over(&r, &list, *bound)?;
            emit(fmt, "result", &f.render());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Wj { op: WjOp::Member { ring, bound, series } } => {
            let r = ring_of(ring)?;
            let list = parse::parse_coeff_list(&r, series)?;
            let ans = hankel::wj_member(&r, &list, *bound)?;
            emit(fmt, "member", if ans { "true" } else { "false" });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fatou { op: FatouOp::Check { subring, f, prec } } => {
            let a = parse::parse_ring(subring)?;
            let pair = FatouPair::new(a)?;
            let n = prec.unwrap_or_else(default_prec);
            let f = parse_operand(pair.field(), f, n)?.into_ratwitt()?;
            let v = strong_fatou_check(&pair, &f, n)?;
            let verdict = match v.verdict {
                Verdict::InWratA => "in_Wrat_A",
                Verdict::InWAOnly => "in_W_A_only",
                Verdict::Undetermined => "undetermined",
            };
            emit(fmt, "verdict", verdict);
            println!("reduced_p = {}", v.reduced_p.render("T"));
            println!("reduced_q = {}", v.reduced_q.render("T"));
            for (label, _) in v.report.iter().filter(|(_, ok)| !ok) {
                println!("outside = {label}");
            }
            if v.verdict != Verdict::InWratA {
                println!("series_checked = {}", v.series_checked);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Omega { ring, input } => {
            let r = ring_of(ring)?;
            let u = parse::parse_formal_sum(&r, input)?;
            let f = omega(&u)?;
            emit(fmt, "result", &f.render());
            if f.is_zero() && !u.is_zero() {
                println!("note: Witt zero");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Almkvist { op } => run_almkvist(fmt, op),
        Cmd::Descent { op: DescentOp::Check { base, ext, f } } => {
            let b = parse::parse_ring(base)?;
            let e = parse::parse_ring(ext)?;
            let split = TensorSplit::new(b, e)?;
            let f = parse::parse_ratwitt(split.ext(), f)?;
            let fixed = equalizer_check(&f, &split)?;
            let in_base = coefficients_in_base(&f, &split)?;
            println!("frobenius_fixed = {fixed}");
            println!("coefficients_in_base = {in_base}");
            if fixed != in_base {
                println!("note: descent equivalence violated");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Demo { name } => run_demo(name),
    }
}

/// A witt-command operand: kept exact when it arrived as P/Q over a domain,
/// expanded once a series is unavoidable.
enum Operand {
    Exact(RatWitt),
    Series(WittSeries),
}

impl Operand {
    fn into_series(self, prec: usize) -> WittSeries {
        match self {
            Operand::Exact(f) => f.to_series(prec),
            Operand::Series(w) => w,
        }
    }

    fn into_ratwitt(self) -> ratwitt::Result<RatWitt> {
        match self {
            Operand::Exact(f) => Ok(f),
            Operand::Series(_) => Err(ratwitt::Error::Domain(
                "this command needs a P/Q literal".into(),
            )),
        }
    }
}

/// Comma lists and `; prec=` literals are series; everything else tries the
/// exact P/Q form first and falls back to a series expansion over
/// non-domains.
fn parse_operand(ring: &Ring, s: &str, prec: usize) -> ratwitt::Result<Operand> {
    if s.contains(',') || s.contains(';') {
        return Ok(Operand::Series(parse::parse_series(ring, s)?));
    }
    let f = parse::parse_ratwitt(ring, s)?;
    if ring.is_domain() {
        Ok(Operand::Exact(f))
    } else {
        Ok(Operand::Series(f.to_series(prec)))
    }
}

fn run_witt(fmt: Format, op: &WittOp) -> ratwitt::Result<ExitCode> {
    // Exact in, exact out: P/Q operands over a domain stay rational unless
    // --prec forces an expansion window.
    match op {
        WittOp::Add { ring, f, g, prec } => witt_binary(fmt, ring, f, g, *prec, |a, b| a.rw_add(b), |a, b| {
            a.witt_add(b)
        }),
        WittOp::Mul { ring, f, g, prec } => witt_binary(fmt, ring, f, g, *prec, |a, b| a.rw_mul(b), |a, b| {
            a.witt_mul(b)
        }),
        WittOp::Neg { ring, f, prec } => {
            witt_unary(fmt, ring, f, *prec, |a| Ok(a.rw_neg()), |a| Ok(a.witt_neg()))
        }
        WittOp::Frob { ring, n, f, prec } => witt_unary(
            fmt,
            ring,
            f,
            *prec,
            |a| a.rw_frobenius(*n),
            |a| a.frobenius(*n),
        ),
        WittOp::Versch { ring, n, f, prec } => witt_unary(
            fmt,
            ring,
            f,
            *prec,
            |a| Ok(a.rw_verschiebung(*n)),
            |a| Ok(a.verschiebung(*n)),
        ),
    }
}

fn witt_binary(
    fmt: Format,
    ring: &RingArg,
    f: &str,
    g: &str,
    prec: Option<usize>,
    exact: impl Fn(&RatWitt, &RatWitt) -> ratwitt::Result<RatWitt>,
    series: impl Fn(&WittSeries, &WittSeries) -> ratwitt::Result<WittSeries>,
) -> ratwitt::Result<ExitCode> {
    let r = ring_of(ring)?;
    let n = prec.unwrap_or_else(default_prec);
    let (a, b) = (parse_operand(&r, f, n)?, parse_operand(&r, g, n)?);
    match (a, b, prec) {
        (Operand::Exact(a), Operand::Exact(b), None) => {
            emit(fmt, "result", &exact(&a, &b)?.render());
        }
        (a, b, _) => {
            let out = series(&a.into_series(n), &b.into_series(n))?;
            emit(fmt, "result", &out.render());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witt_unary(
    fmt: Format,
    ring: &RingArg,
    f: &str,
    prec: Option<usize>,
    exact: impl Fn(&RatWitt) -> ratwitt::Result<RatWitt>,
    series: impl Fn(&WittSeries) -> ratwitt::Result<WittSeries>,
) -> ratwitt::Result<ExitCode> {
    let r = ring_of(ring)?;
    let n = prec.unwrap_or_else(default_prec);
    match (parse_operand(&r, f, n)?, prec) {
        (Operand::Exact(a), None) => emit(fmt, "result", &exact(&a)?.render()),
        (a, _) => emit(fmt, "result", &series(&a.into_series(n))?.render()),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_almkvist(fmt: Format, op: &AlmkvistOp) -> ratwitt::Result<ExitCode> {
    match op {
        AlmkvistOp::Char { ring, matrix } => {
            let r = ring_of(ring)?;
            let m = parse::parse_matrix(&r, matrix)?;
            let e = EndoModule::new(m)?;
            emit(fmt, "result", &e.char_map().render());
            Ok(ExitCode::SUCCESS)
        }
        AlmkvistOp::Check { ring, matrix, split } => {
            let r = ring_of(ring)?;
            let m = parse::parse_matrix(&r, matrix)?;
            let ok = ratwitt::almkvist::ses_additivity_check(&m, *split)?;
            emit(fmt, "ses_additivity", if ok { "pass" } else { "fail" });
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn run_demo(name: &str) -> ratwitt::Result<ExitCode> {
    if name == "list" {
        for n in fixtures::NAMES {
            println!("{n}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let reports = if name == "all" {
        fixtures::run_all()
    } else {
        match fixtures::run(name) {
            Some(rep) => vec![rep],
            None => {
                return Err(ratwitt::Error::Domain(format!(
                    "unknown fixture {name:?}; valid names: {}",
                    fixtures::NAMES.join(", ")
                )))
            }
        }
    };
    let mut all_pass = true;
    for rep in &reports {
        all_pass &= rep.pass;
        println!(
            "{}: {} — {}",
            rep.name,
            if rep.pass { "PASS" } else { "FAIL" },
            rep.detail
        );
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}
