//! `trifields`: trinomial discriminants, quadratic-field counting, and the
//! square-sieve toolkit on the command line.
//!
//! Results go to stdout as CSV (default) or JSON lines; diagnostics (the
//! resolved command, parameters, and wall time) go to stderr. Exit codes:
//! 0 success, 2 invalid arguments, 3 internal verification failure.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use output::{emit, Cell, Format, Report};
use trinomial_fields::arith::{prime_window, squarefree_kernel};
use trinomial_fields::charsums::{
    complete_sum, complete_sum_exact, composite_sum_with_crt, gauss_sum, incomplete_box_sum,
    CharSumSpec,
};
use trinomial_fields::polyfield::{
    cohen_count, find_p0_capped, is_irreducible_mod_p, is_irreducible_over_q, DEFAULT_P0_CAP,
};
use trinomial_fields::sieve::{
    progression_box, q_exact, s_exact, sieve_detect_stats, t_exact, t_sieve_filtered, BoxRegion,
    SievePlan,
};
use trinomial_fields::trinomial::{
    disc_unit_general, discriminant, discriminant_resultant, kappa, Trinomial,
};
use trinomial_fields::verify;
use trinomial_fields::{Error, Result};

#[derive(Parser)]
#[command(
    name = "trifields",
    version,
    about = "Trinomial discriminants, square sieves, and quadratic-field counts"
)]
struct Cli {
    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write results to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel scans (default: all cores; the
    /// TRINOMIAL_SIEVE_THREADS environment variable is honored as a fallback).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// `[C, C+A] x [D, D+B]` box bounds shared by the counting subcommands.
#[derive(Args, Clone)]
struct BoxArgs {
    /// Box corner and extents: C A D B for [C, C+A] x [D, D+B].
    #[arg(long = "box", num_args = 4, value_names = ["C", "A", "D", "B"], allow_negative_numbers = true)]
    bounds: Vec<f64>,
}

impl BoxArgs {
    fn region(&self) -> Result<BoxRegion> {
        BoxRegion::new(self.bounds[0], self.bounds[1], self.bounds[2], self.bounds[3])
    }
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of t^n + a·t + b, cross-checked against the resultant oracle.
    Disc {
        degree: u32,
        #[arg(allow_negative_numbers = true)]
        a: i128,
        #[arg(allow_negative_numbers = true)]
        b: i128,
    },
    /// Discriminant of t^n + t^m + 1 by the special-value formula (gcd(n,m)=1).
    DiscUnit { degree: u32, m: u32 },
    /// Exponent constant kappa_n = 1/n + 1/(n-1) in lowest terms.
    Kappa { degree: u32 },
    /// Irreducibility of t^n + a·t + b over Q.
    Irred {
        degree: u32,
        #[arg(allow_negative_numbers = true)]
        a: i128,
        #[arg(allow_negative_numbers = true)]
        b: i128,
    },
    /// Irreducibility of t^n + a·t + b over F_p.
    IrredModp {
        degree: u32,
        #[arg(allow_negative_numbers = true)]
        a: i128,
        #[arg(allow_negative_numbers = true)]
        b: i128,
        p: u64,
    },
    /// Smallest prime p0 with an irreducible t^n + α·t + β over F_{p0}.
    FindP0 {
        degree: u32,
        /// Largest prime to try before giving up.
        #[arg(long, default_value_t = DEFAULT_P0_CAP)]
        cap: u64,
    },
    /// Exact count of irreducible trinomials t^n + α·t + β over F_p.
    Cohen { degree: u32, p: u64 },
    /// Complete character sum S_n(m; λ, μ); composite m is CRT-verified.
    Charsum {
        degree: u32,
        modulus: u64,
        #[arg(default_value_t = 0, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(default_value_t = 0, allow_negative_numbers = true)]
        mu: i64,
    },
    /// Gauss sum for an odd prime modulus.
    Gauss { modulus: u64 },
    /// Exact incomplete character sum over a box.
    Boxsum {
        degree: u32,
        modulus: u64,
        #[command(flatten)]
        bx: BoxArgs,
    },
    /// Square-sieve detector verdict for a single integer.
    SieveDetect {
        #[arg(allow_negative_numbers = true)]
        k: i128,
        /// Window parameter: primes in [z, 2z].
        #[arg(long, default_value_t = 50.0)]
        z: f64,
    },
    /// T_n count: pairs in the box with Δ_n(a,b) = s·r², sieve-filtered.
    CountPairs {
        degree: u32,
        /// Square-free kernel s.
        #[arg(allow_negative_numbers = true)]
        s: i128,
        #[command(flatten)]
        bx: BoxArgs,
        /// Window parameter override (default: (AB)^{1/3}).
        #[arg(long)]
        z: Option<f64>,
        /// Skip the detector and count exactly.
        #[arg(long)]
        exact: bool,
    },
    /// S_n count: distinct quadratic fields Q(√Δ) over irreducible pairs in the box.
    CountFields {
        degree: u32,
        #[command(flatten)]
        bx: BoxArgs,
        /// Also list the square-free kernels, one row each.
        #[arg(long)]
        list: bool,
    },
    /// Q_n(X) lower bound: distinct fields with |Δ| <= X (degree ≡ 1 mod 4).
    Qcount {
        degree: u32,
        x: i128,
        /// Also list the square-free kernels, one row each.
        #[arg(long)]
        list: bool,
    },
    /// Arithmetic progressions mod p0 whose pairs are all irreducible over Q.
    Progression {
        degree: u32,
        #[command(flatten)]
        bx: BoxArgs,
    },
    /// Measure the character-sum and count budgets; any breach exits 3.
    VerifyLemmas {
        degree: u32,
        /// Largest prime modulus in the sweeps.
        #[arg(long, default_value_t = 150)]
        lmax: u64,
    },
    /// Time the exact vs sieve-filtered scan on one box; counts must agree.
    Bench {
        degree: u32,
        #[arg(allow_negative_numbers = true)]
        s: i128,
        #[command(flatten)]
        bx: BoxArgs,
        #[arg(long, default_value_t = 3)]
        repeats: u32,
    },
}

fn configure_threads(cli_threads: Option<usize>) -> Result<()> {
    let from_env = std::env::var("TRINOMIAL_SIEVE_THREADS")
        .ok()
        .map(|v| {
            v.parse::<usize>().map_err(|_| {
                Error::InvalidArgument(format!("TRINOMIAL_SIEVE_THREADS={v} is not a number"))
            })
        })
        .transpose()?;
    if let Some(n) = cli_threads.or(from_env) {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Disc { degree, a, b } => {
            let tri = Trinomial::new(*degree, *a, *b)?;
            let closed = discriminant(&tri);
            let oracle = discriminant_resultant(&tri);
            if closed != oracle {
                return Err(Error::Verification(format!(
                    "closed-form discriminant {closed} disagrees with resultant {oracle} \
                     at n={degree}, a={a}, b={b}"
                )));
            }
            let dec = squarefree_kernel(closed);
            let mut rep =
                Report::new(vec!["degree", "a", "b", "disc", "kernel", "square_root"]);
            rep.push(vec![
                (*degree).into(),
                (*a).into(),
                (*b).into(),
                closed.into(),
                dec.kernel.into(),
                dec.root.into(),
            ]);
            Ok(rep)
        }
        Command::DiscUnit { degree, m } => {
            let d = disc_unit_general(*degree, *m)?;
            let dec = squarefree_kernel(d);
            let mut rep = Report::new(vec!["degree", "m", "disc", "kernel", "square_root"]);
            rep.push(vec![
                (*degree).into(),
                (*m).into(),
                d.into(),
                dec.kernel.into(),
                dec.root.into(),
            ]);
            Ok(rep)
        }
        Command::Kappa { degree } => {
            let k = kappa(*degree)?;
            let mut rep = Report::new(vec!["degree", "numerator", "denominator", "value"]);
            rep.push(vec![
                (*degree).into(),
                k.numerator.into(),
                k.denominator.into(),
                (k.numerator as f64 / k.denominator as f64).into(),
            ]);
            Ok(rep)
        }
        Command::Irred { degree, a, b } => {
            let tri = Trinomial::new(*degree, *a, *b)?;
            let mut rep = Report::new(vec!["degree", "a", "b", "irreducible"]);
            rep.push(vec![
                (*degree).into(),
                (*a).into(),
                (*b).into(),
                is_irreducible_over_q(&tri).into(),
            ]);
            Ok(rep)
        }
        Command::IrredModp { degree, a, b, p } => {
            let mut rep = Report::new(vec!["degree", "a", "b", "p", "irreducible"]);
            rep.push(vec![
                (*degree).into(),
                (*a).into(),
                (*b).into(),
                (*p).into(),
                is_irreducible_mod_p(*degree, *a, *b, *p)?.into(),
            ]);
            Ok(rep)
        }
        Command::FindP0 { degree, cap } => {
            let anchor = find_p0_capped(*degree, *cap)?;
            let mut rep = Report::new(vec!["degree", "p0", "alpha0", "beta0"]);
            rep.push(vec![
                (*degree).into(),
                anchor.p0.into(),
                anchor.alpha0.into(),
                anchor.beta0.into(),
            ]);
            Ok(rep)
        }
        Command::Cohen { degree, p } => {
            let count = cohen_count(*degree, *p)?;
            let expected = (*p as f64) * (*p as f64) / *degree as f64;
            let mut rep =
                Report::new(vec!["degree", "p", "count", "expected", "deviation_ratio"]);
            rep.push(vec![
                (*degree).into(),
                (*p).into(),
                count.into(),
                expected.into(),
                ((count as f64 - expected).abs() / (*p as f64).powf(1.5)).into(),
            ]);
            Ok(rep)
        }
        Command::Charsum { degree, modulus, lambda, mu } => {
            let spec = CharSumSpec::new(*degree, *modulus, *lambda, *mu)?;
            let prime = trinomial_fields::arith::is_prime(*modulus as u128);
            let res = if prime { complete_sum(&spec)? } else { composite_sum_with_crt(&spec)?.0 };
            let exact: Cell = if prime && *lambda == 0 && *mu == 0 {
                complete_sum_exact(*degree, *modulus)?.into()
            } else {
                "".into()
            };
            let mut rep = Report::new(vec![
                "degree", "modulus", "lambda", "mu", "re", "im", "abs", "exact", "term_count",
            ]);
            rep.push(vec![
                (*degree).into(),
                (*modulus).into(),
                (*lambda).into(),
                (*mu).into(),
                res.value.re.into(),
                res.value.im.into(),
                res.value.norm().into(),
                exact,
                res.term_count.into(),
            ]);
            Ok(rep)
        }
        Command::Gauss { modulus } => {
            let g = gauss_sum(*modulus)?;
            let mut rep = Report::new(vec!["modulus", "re", "im", "abs", "sqrt_modulus"]);
            rep.push(vec![
                (*modulus).into(),
                g.re.into(),
                g.im.into(),
                g.norm().into(),
                (*modulus as f64).sqrt().into(),
            ]);
            Ok(rep)
        }
        Command::Boxsum { degree, modulus, bx } => {
            let region = bx.region()?;
            let v = incomplete_box_sum(*degree, *modulus, &region)?;
            let mut rep = Report::new(vec!["degree", "modulus", "c", "a", "d", "b", "sum"]);
            rep.push(vec![
                (*degree).into(),
                (*modulus).into(),
                region.c_start.into(),
                region.a_extent.into(),
                region.d_start.into(),
                region.b_extent.into(),
                v.into(),
            ]);
            Ok(rep)
        }
        Command::SieveDetect { k, z } => {
            let window = prime_window(*z)?;
            let det = sieve_detect_stats(*k, &window)?;
            let dec = squarefree_kernel(*k);
            let mut rep = Report::new(vec![
                "k",
                "z",
                "window_size",
                "jacobi_sum",
                "omega",
                "detected",
                "is_square",
            ]);
            rep.push(vec![
                (*k).into(),
                (*z).into(),
                det.window_size.into(),
                det.jacobi_sum.into(),
                det.omega.into(),
                det.detected.into(),
                (dec.kernel == 1).into(),
            ]);
            Ok(rep)
        }
        Command::CountPairs { degree, s, bx, z, exact } => {
            let region = bx.region()?;
            let mut rep = Report::new(vec![
                "degree",
                "s",
                "count",
                "scanned",
                "detector_passed",
                "pruning_ratio",
                "max_omega",
                "mode",
            ]);
            if *exact {
                let count = t_exact(*degree, &region, *s)?;
                rep.push(vec![
                    (*degree).into(),
                    (*s).into(),
                    count.into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    "exact".into(),
                ]);
            } else {
                let plan = match z {
                    Some(z) => SievePlan::new(*z, 64)?,
                    None => SievePlan::for_box(&region)?,
                };
                let out = t_sieve_filtered(*degree, &region, *s, &plan)?;
                if out.max_omega > plan.omega_budget {
                    return Err(Error::Verification(format!(
                        "scan met ω = {} beyond the plan budget {}",
                        out.max_omega, plan.omega_budget
                    )));
                }
                let mode = if out.fell_back_exact { "sieve-fallback" } else { "sieve" };
                rep.push(vec![
                    (*degree).into(),
                    (*s).into(),
                    out.count.into(),
                    out.scanned.into(),
                    out.detector_passed.into(),
                    out.pruning_ratio().into(),
                    out.max_omega.into(),
                    mode.into(),
                ]);
            }
            Ok(rep)
        }
        Command::CountFields { degree, bx, list } => {
            let region = bx.region()?;
            if *list {
                let kernels = trinomial_fields::sieve::field_kernels(*degree, &region)?;
                let mut rep = Report::new(vec!["degree", "kernel"]);
                for k in kernels {
                    rep.push(vec![(*degree).into(), k.into()]);
                }
                Ok(rep)
            } else {
                let count = s_exact(*degree, &region)?;
                let mut rep = Report::new(vec!["degree", "c", "a", "d", "b", "count"]);
                rep.push(vec![
                    (*degree).into(),
                    region.c_start.into(),
                    region.a_extent.into(),
                    region.d_start.into(),
                    region.b_extent.into(),
                    count.into(),
                ]);
                Ok(rep)
            }
        }
        Command::Qcount { degree, x, list } => {
            let report = q_exact(*degree, *x)?;
            if *list {
                let mut rep = Report::new(vec!["degree", "kernel"]);
                for k in report.kernels {
                    rep.push(vec![(*degree).into(), k.into()]);
                }
                Ok(rep)
            } else {
                let mut rep =
                    Report::new(vec!["degree", "x", "lower_bound", "a_max", "b_max"]);
                rep.push(vec![
                    (*degree).into(),
                    (*x).into(),
                    report.count.into(),
                    report.a_max.into(),
                    report.b_max.into(),
                ]);
                Ok(rep)
            }
        }
        Command::Progression { degree, bx } => {
            let region = bx.region()?;
            let (anchor, set_a, set_b) = progression_box(*degree, &region)?;
            let mut rep = Report::new(vec![
                "degree",
                "p0",
                "alpha0",
                "beta0",
                "a_progression_size",
                "b_progression_size",
                "pair_count",
            ]);
            rep.push(vec![
                (*degree).into(),
                anchor.p0.into(),
                anchor.alpha0.into(),
                anchor.beta0.into(),
                (set_a.len() as u64).into(),
                (set_b.len() as u64).into(),
                ((set_a.len() * set_b.len()) as u64).into(),
            ]);
            Ok(rep)
        }
        Command::VerifyLemmas { degree, lmax } => {
            let reports = verify::verify_all(*degree, *lmax)?;
            let mut rep = Report::new(vec![
                "label",
                "cases",
                "max_ratio",
                "budget",
                "worst_case",
                "pass",
            ]);
            let mut failed = Vec::new();
            for r in &reports {
                if !r.pass {
                    failed.push(r.label.clone());
                }
                rep.push(vec![
                    r.label.as_str().into(),
                    r.cases.into(),
                    r.max_ratio.into(),
                    r.budget.into(),
                    r.worst_case.as_str().into(),
                    r.pass.into(),
                ]);
            }
            if !failed.is_empty() {
                emit(&rep, Format::Csv, None).ok();
                return Err(Error::Verification(format!(
                    "budget breach in: {}",
                    failed.join(", ")
                )));
            }
            Ok(rep)
        }
        Command::Bench { degree, s, bx, repeats } => {
            let region = bx.region()?;
            let plan = SievePlan::for_box(&region)?;
            let mut rep = Report::new(vec![
                "mode",
                "count",
                "pruning_ratio",
                "best_ms",
                "mean_ms",
            ]);
            let mut exact_count = 0u64;
            let mut exact_times = Vec::new();
            for _ in 0..*repeats {
                let t0 = Instant::now();
                exact_count = t_exact(*degree, &region, *s)?;
                exact_times.push(t0.elapsed().as_secs_f64() * 1e3);
            }
            let mut sieve_out = None;
            let mut sieve_times = Vec::new();
            for _ in 0..*repeats {
                let t0 = Instant::now();
                sieve_out = Some(t_sieve_filtered(*degree, &region, *s, &plan)?);
                sieve_times.push(t0.elapsed().as_secs_f64() * 1e3);
            }
            let sieve_out = sieve_out.expect("repeats >= 1");
            if sieve_out.count != exact_count {
                return Err(Error::Verification(format!(
                    "sieve-filtered count {} disagrees with exact count {exact_count}",
                    sieve_out.count
                )));
            }
            let stats = |ts: &[f64]| -> (f64, f64) {
                let best = ts.iter().cloned().fold(f64::INFINITY, f64::min);
                (best, ts.iter().sum::<f64>() / ts.len() as f64)
            };
            let (eb, em) = stats(&exact_times);
            let (sb, sm) = stats(&sieve_times);
            rep.push(vec!["exact".into(), exact_count.into(), "".into(), eb.into(), em.into()]);
            rep.push(vec![
                "sieve".into(),
                sieve_out.count.into(),
                sieve_out.pruning_ratio().into(),
                sb.into(),
                sm.into(),
            ]);
            Ok(rep)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let args: Vec<String> = std::env::args().skip(1).collect();
    eprintln!("trifields: {}", args.join(" "));
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("trifields: error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.format, cli.out.as_deref()) {
                eprintln!("trifields: output error: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "trifields: done in {:.3} ms",
                started.elapsed().as_secs_f64() * 1e3
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("trifields: error: {e}");
            match e {
                Error::Verification(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
