use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gamma_desk::config::{Overrides, Profile, RunConfig, PROFILE_ENV};
use gamma_desk::perm::{descent_polynomial, ClassSpec, EnumLimits, Permutation};
use gamma_desk::recurrences::{Family, Hypotheses, RecurrenceTable, RowGenerator, TableVerification, TableVerifier};
use gamma_desk::series::{cross_check, solve_s1_system, solve_s2_system, TruncSeries};
use gamma_desk::store::{read_header, scan_table, TableWriter, GENERATOR_VERSION};
use gamma_desk::suite::{run_suite, verdict_table, CheckReport, Verdict};
use gamma_desk::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CORRUPT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gamma-desk",
    version,
    about = "Descent statistics, gamma-expansions and recurrence tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every statistic of a permutation.
    Stats {
        /// One-line notation, e.g. `2413`, `2 4 1 3` or `2,4,1,3`.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Descent polynomial and gamma-vector of I_n, J_2n or a pattern class.
    Gamma(GammaArgs),
    /// Build a coefficient table and verify it.
    Recurrence(RecurrenceArgs),
    /// Run the check suite.
    Verify(VerifyArgs),
    /// Solve the series systems.
    Series(SeriesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "verbatim")]
enum PolyFamily {
    #[value(alias = "i")]
    I,
    #[value(alias = "j")]
    J,
}

#[derive(Args)]
struct GammaArgs {
    /// `I` for involutions of [n], `J` for fixed-point-free involutions of [2n].
    #[arg(long, value_enum, conflicts_with = "class", required_unless_present = "class")]
    family: Option<PolyFamily>,
    /// `all`, `involutions`, `fpf-involutions` or `avoiding:2413,3142`.
    #[arg(long)]
    class: Option<ClassSpec>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    A,
    B,
}

impl From<TableFamily> for Family {
    fn from(f: TableFamily) -> Self {
        match f {
            TableFamily::A => Family::A,
            TableFamily::B => Family::B,
        }
    }
}

#[derive(Args)]
struct RecurrenceArgs {
    #[arg(long, value_enum)]
    family: TableFamily,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_n: u32,
    /// Table file (JSON Lines) to write.
    #[arg(long)]
    out: PathBuf,
    /// Existing table to continue from; may equal `--out`.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Write the verification report here as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, env = PROFILE_ENV, default_value = "fast")]
    profile: Profile,
    /// Run only these checks (repeatable).
    #[arg(long)]
    only: Vec<String>,
    #[arg(long, default_value = "gamma-desk-report")]
    out_dir: PathBuf,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    max_n_table: Option<u32>,
    #[arg(long)]
    max_n_enum: Option<usize>,
    #[arg(long)]
    series_order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesSystem {
    S1,
    S2,
    CrossCheck,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum, default_value = "cross-check")]
    system: SeriesSystem,
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    /// Print `n x-deg y-deg value` lines instead of polynomials.
    #[arg(long)]
    dump: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Command::Stats { word } => cmd_stats(&word),
        Command::Gamma(a) => cmd_gamma(&a),
        Command::Recurrence(a) => cmd_recurrence(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Series(a) => cmd_series(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CorruptTable { .. } => EXIT_CORRUPT,
                Error::InvalidPermutation(_)
                | Error::InvalidArgument(_)
                | Error::LimitExceeded { .. }
                | Error::Io(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            })
        }
    }
}

fn cmd_stats(word: &[String]) -> gamma_desk::Result<bool> {
    let p = Permutation::parse(&word.join(" "))?;
    println!("{p}: {}", p.stats());
    Ok(true)
}

fn cmd_gamma(a: &GammaArgs) -> gamma_desk::Result<bool> {
    let (label, poly) = match (a.family, &a.class) {
        (Some(f), _) => {
            let fam = match f {
                PolyFamily::I => Family::A,
                PolyFamily::J => Family::B,
            };
            let t = RecurrenceTable::compute(fam, a.n)?;
            let label = match f {
                PolyFamily::I => format!("I_{}", a.n),
                PolyFamily::J => format!("J_{}", 2 * a.n),
            };
            (label, t.reconstruct_poly(a.n).expect("row computed"))
        }
        (None, Some(c)) => (
            format!("{c} at n = {}", a.n),
            descent_polynomial(a.n as usize, c, &EnumLimits::default())?,
        ),
        (None, None) => unreachable!("clap requires one of --family, --class"),
    };
    println!("{label}(t) = {poly}");
    let g = poly.gamma_expand()?;
    println!("center2 = {}", g.center2);
    println!("gamma = {g}");
    let neg = g.negatives();
    if neg.is_empty() {
        println!("gamma-nonnegative");
        Ok(true)
    } else {
        let list: Vec<String> = neg.iter().map(|(k, v)| format!("gamma_{k} = {v}")).collect();
        println!("not gamma-nonnegative: {}", list.join(", "));
        Ok(false)
    }
}

fn cmd_recurrence(a: &RecurrenceArgs) -> gamma_desk::Result<bool> {
    let family: Family = a.family.into();
    let mut verifier = TableVerifier::new(family, Hypotheses::default());
    let mut tail = vec![];
    let mut last_n = 0;

    if let Some(resume) = &a.resume {
        let header = read_header(resume)?;
        if header.family != family {
            return Err(Error::InvalidArgument(format!(
                "{} holds family {}, not {family}",
                resume.display(),
                header.family
            )));
        }
    }
    let same_file = a.resume.as_deref().is_some_and(|r| same_path(r, &a.out));
    let mut copy = match &a.resume {
        Some(_) if !same_file => Some(TableWriter::create(&a.out, family)?),
        _ => None,
    };
    if let Some(resume) = &a.resume {
        scan_table(resume, |row| {
            if row.n > a.max_n {
                return Ok(());
            }
            if let Some(w) = copy.as_mut() {
                w.write_row(&row)?;
            }
            last_n = row.n;
            tail.push(row.clone());
            if tail.len() > family.depth() {
                tail.remove(0);
            }
            verifier.push(row);
            Ok(())
        })?;
        eprintln!("resumed {} rows from {}", last_n, resume.display());
    }

    let mut writer = match copy {
        Some(w) => w,
        None if same_file => TableWriter::append(&a.out, family, last_n)?,
        None => TableWriter::create(&a.out, family)?,
    };
    let gen = RowGenerator::resume(family, tail)?;
    for row in gen.take((a.max_n - last_n) as usize) {
        let row = row?;
        writer.write_row(&row)?;
        verifier.push(row);
    }
    let v = verifier.finish();
    print_verification(&v);
    if let Some(path) = &a.report {
        let doc = json!({ "generator_version": GENERATOR_VERSION, "verification": v });
        fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(v.passed())
}

fn same_path(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn print_verification(v: &TableVerification) {
    let fam = v.family.map_or("?".into(), |f| f.to_string());
    println!("family {fam}: rows 1..={}", v.max_n);
    let nn = &v.nonneg;
    println!(
        "nonnegativity: {} ({} rows, {} violations)",
        verdict(nn.passed()),
        nn.rows_checked,
        nn.violations.len()
    );
    for e in &nn.expected_negatives {
        println!(
            "  expected negative (outside claimed range): n = {}, k = {}, value = {}",
            e.n, e.k, e.value
        );
    }
    for e in &nn.violations {
        println!("  VIOLATION: n = {}, k = {}, value = {}", e.n, e.k, e.value);
    }
    let aux = &v.aux;
    println!(
        "auxiliary inequality: {} ({} checked, {} in range, failures below range at {:?})",
        verdict(aux.passed()),
        aux.checked,
        aux.in_hypothesis,
        aux.advisory_failures
    );
    for (step, s) in &v.chains.steps {
        let name = serde_json::to_value(step)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let min = s.min_slack.as_ref().map_or("-".to_string(), |(n, sl)| {
            format!("n = {n}, {} digits", sl.trim_start_matches('-').len())
        });
        println!(
            "chain {name:<24} {} evaluated {:>5}  in range {:>5}  min slack {min}  advisory failures {:?}",
            verdict(s.violations.is_empty()),
            s.evaluated,
            s.in_hypothesis,
            s.advisory_failures
        );
    }
    for note in &v.chains.notes {
        println!("note: {note}");
    }
    println!("overall: {}", verdict(v.passed()));
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: &VerifyArgs) -> gamma_desk::Result<bool> {
    let cfg = RunConfig::for_profile(a.profile, a.out_dir.clone()).with_overrides(&Overrides {
        max_n_table: a.max_n_table,
        max_n_enum: a.max_n_enum,
        series_order: a.series_order,
    })?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let only = (!a.only.is_empty()).then_some(a.only.as_slice());
    let reports: Vec<CheckReport> = pool.install(|| run_suite(&cfg.suite(), only))?;

    fs::create_dir_all(&cfg.out_dir)?;
    let mut text = String::new();
    text.push_str(&format!(
        "{GENERATOR_VERSION}\nconfig: {}\n\n",
        serde_json::to_string(&cfg)?
    ));
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    text.push('\n');
    for (id, v) in verdict_table(&reports) {
        text.push_str(&format!("{v:<8} {id}\n"));
    }
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    text.push_str(&format!(
        "\n{} checks, {} failed, {} advisory\n",
        reports.len(),
        failed,
        reports.iter().filter(|r| r.verdict == Verdict::Advisory).count()
    ));
    fs::write(cfg.out_dir.join("report.txt"), &text)?;
    let doc = json!({ "generator_version": GENERATOR_VERSION, "config": cfg, "reports": reports });
    fs::write(cfg.out_dir.join("report.json"), serde_json::to_string_pretty(&doc)?)?;
    print!("{text}");
    std::io::stdout().flush()?;
    Ok(failed == 0)
}

fn print_series(name: &str, s: &TruncSeries, dump: bool) {
    if dump {
        println!("# {name}: n x-deg y-deg value");
        print!("{}", s.dump());
        return;
    }
    for n in 1..=s.order() {
        println!("[z^{n}] {name} = {}", s.coeff(n));
    }
}

fn cmd_series(a: &SeriesArgs) -> gamma_desk::Result<bool> {
    let order = a.order as usize;
    match a.system {
        SeriesSystem::S1 => {
            let s = solve_s1_system(order)?;
            print_series("S1", &s.s1, a.dump);
            print_series("F1", &s.f1, a.dump);
            print_series("R1", &s.r1, a.dump);
            println!("residuals: zero to z^{order}");
            Ok(true)
        }
        SeriesSystem::S2 => {
            let s = solve_s2_system(order)?;
            print_series("S2", &s.s2, a.dump);
            print_series("T2", &s.t2, a.dump);
            println!("residuals: zero to z^{order} (T2 weighted by z^n)");
            Ok(true)
        }
        SeriesSystem::CrossCheck => {
            let (r, s1, _) = cross_check(order)?;
            print_series("S1", &s1.s1, a.dump);
            println!("residuals: zero to z^{order} in all five equations (T2 weighted by z^n)");
            println!("cubic matches system: {}", r.cubic_matches_system);
            println!("rational relations hold: {}", r.rational_relations.holds());
            match &r.difference {
                None => println!("S1 = S2 to z^{order}"),
                Some(d) => println!("S1 and S2 differ at {d}"),
            }
            Ok(r.passed())
        }
    }
}
