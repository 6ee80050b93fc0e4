//! The `gridbasis` command line, callable in-process through [`run`].

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridbasis::experiments::{self, Theorem2Form};
use gridbasis::perm::DEFAULT_HARD_CAP;
use gridbasis::{
    enumerate_basis, BasisReport, ClassSpec, EnumConfig, Error, Grid2x2, GridSpec, Lemma3Verdict, Permutation,
    Side,
};
use serde::Serialize;

/// Environment variable that may lower the hard length cap.
pub const MAX_LEN_ENV: &str = "GRIDBASIS_MAX_LEN";

pub const EXIT_OK: i32 = 0;
/// A verification subcommand found a counterexample, or the engine hit an
/// internal inconsistency.
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gridbasis", version, about = "Bases of permutation classes and 2x2 grid classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Decide whether --perm lies in the class given by --class, --juxt or --grid
    Member,
    /// Enumerate the basis of a class, juxtaposition or grid up to --max-len
    Basis,
    /// Split the basis of a 2x2 grid into elements inside and outside F
    Relbasis,
    /// Decide membership of --perm in the squint class of --side
    Squint,
    /// Check that the grid class is the intersection of its two squint classes
    #[command(name = "verify-lemma3")]
    VerifyLemma3,
    /// Check that basis elements of the grid outside F are basis elements of F
    #[command(name = "verify-obs2")]
    VerifyObs2,
    /// Bases of the 16 monotone 2x2 grids, one per symmetry orbit
    SurveyMonotone,
    /// Basis of [Av(C) Av(D); <form row>] for a monotone bottom row
    Theorem2,
    /// Basis counts for the sum of Av(321654) with itself
    NonfbDemo,
}

#[derive(Args, Debug)]
struct Opts {
    /// A class: Av(...), inc, dec, empty or all
    #[arg(long, global = true, value_name = "S")]
    class: Option<String>,
    /// A juxtaposition: [C|D] side by side or [C/D] stacked
    #[arg(long, global = true, value_name = "S")]
    juxt: Option<String>,
    /// A 2x2 grid: [tl tr; bl br]
    #[arg(long, global = true, value_name = "S")]
    grid: Option<String>,
    #[arg(long, global = true, value_name = "P")]
    perm: Option<String>,
    #[arg(long, global = true, value_name = "A|B")]
    side: Option<String>,
    #[arg(long, global = true, value_name = "N", default_value_t = 6)]
    max_len: usize,
    /// Lengths without new basis elements before a basis counts as stable
    #[arg(long, global = true, value_name = "K", default_value_t = 2)]
    lookahead: usize,
    #[arg(long, global = true, value_name = "W", default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print a gridding or division triple for positive answers
    #[arg(long, global = true)]
    witness: bool,
    #[arg(long, global = true, value_name = "BYTES", default_value_t = gridbasis::basis::DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,
    /// Top-left class for theorem2: a class expression or a bare basis list
    #[arg(long, global = true, value_name = "S")]
    c_basis: Option<String>,
    /// Top-right class for theorem2
    #[arg(long, global = true, value_name = "S")]
    d_basis: Option<String>,
    #[arg(long, global = true, value_name = "1|2|3")]
    form: Option<u8>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a subcommand, mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Runs the command line, reading the cap override from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_cap(args, std::env::var(MAX_LEN_ENV).ok().as_deref())
}

/// Runs the command line with an explicit value for the cap override.
pub fn run_with_cap<I, T>(args: I, cap_override: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli, cap_override) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Engine(e)) => {
            let code = match e {
                Error::Parse(_) | Error::Input(_) => EXIT_USAGE,
                Error::Resource(_) => EXIT_RESOURCE,
                Error::NotDownwardClosed { .. } | Error::Invariant(_) => EXIT_FAILED,
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn hard_cap(cap_override: Option<&str>) -> Run<usize> {
    let Some(raw) = cap_override else {
        return Ok(DEFAULT_HARD_CAP);
    };
    let cap: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{MAX_LEN_ENV}={raw:?} is not a length")))?;
    // the variable only ever tightens the cap
    Ok(cap.min(DEFAULT_HARD_CAP))
}

fn config(opts: &Opts, cap_override: Option<&str>) -> Run<EnumConfig> {
    if opts.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let cfg = EnumConfig {
        max_len: opts.max_len,
        lookahead: opts.lookahead,
        workers: opts.workers,
        memory_budget: opts.memory_budget,
        hard_cap: hard_cap(cap_override)?,
    };
    if cfg.max_len > cfg.hard_cap {
        return Err(Failure::Engine(Error::Resource(format!(
            "--max-len {} exceeds the hard cap of {}",
            cfg.max_len, cfg.hard_cap
        ))));
    }
    Ok(cfg)
}

fn parse_with(flag: &str, text: &str, parse: impl FnOnce(&str) -> Result<(), gridbasis::ParseError>) -> Run<()> {
    parse(text).map_err(|e| Failure::Usage(format!("{flag} {text:?}: {e}")))
}

fn parse_perm(opts: &Opts) -> Run<Permutation> {
    let text = opts.perm.as_deref().ok_or_else(|| Failure::Usage("--perm is required".into()))?;
    let mut out = None;
    parse_with("--perm", text, |s| {
        out = Some(s.parse::<Permutation>()?);
        Ok(())
    })?;
    Ok(out.expect("parsed"))
}

fn parse_class(flag: &str, text: &str) -> Run<ClassSpec> {
    let mut out = None;
    parse_with(flag, text, |s| {
        out = Some(gridbasis::dsl::parse_class(s)?);
        Ok(())
    })?;
    Ok(out.expect("parsed"))
}

/// A theorem2 cell: a class expression, or a bare list read as `Av(list)`.
fn parse_basis_arg(flag: &str, text: &str) -> Run<ClassSpec> {
    let trimmed = text.trim_start();
    if trimmed.starts_with(|c: char| c.is_ascii_digit() || c == '[') {
        parse_class(flag, &format!("Av({text})"))
    } else {
        parse_class(flag, text)
    }
}

fn parse_grid_spec(flag: &str, text: &str) -> Run<GridSpec> {
    let mut out = None;
    parse_with(flag, text, |s| {
        out = Some(gridbasis::dsl::parse_grid(s)?);
        Ok(())
    })?;
    Ok(out.expect("parsed"))
}

/// The one class source given on the command line.
enum Source {
    Class(ClassSpec),
    Grid(GridSpec),
}

impl Source {
    fn contains(&self, p: &Permutation) -> bool {
        match self {
            Source::Class(c) => c.contains(p),
            Source::Grid(g) => g.contains(p),
        }
    }

    fn enumerate(&self, cfg: &EnumConfig) -> gridbasis::Result<BasisReport> {
        match self {
            Source::Class(c) => enumerate_basis(c, cfg),
            Source::Grid(g) => enumerate_basis(g, cfg),
        }
    }
}

fn source(opts: &Opts) -> Run<Source> {
    let given = [("--class", &opts.class), ("--juxt", &opts.juxt), ("--grid", &opts.grid)];
    let set: Vec<_> = given.iter().filter(|(_, v)| v.is_some()).collect();
    match set.as_slice() {
        [] => Err(Failure::Usage("one of --class, --juxt or --grid is required".into())),
        [(flag, Some(text))] => match *flag {
            "--class" => Ok(Source::Class(parse_class(flag, text)?)),
            "--juxt" => {
                let g = parse_grid_spec(flag, text)?;
                if !g.is_juxtaposition() {
                    return Err(Failure::Usage(format!("--juxt {text:?} is not a juxtaposition")));
                }
                Ok(Source::Grid(g))
            }
            _ => Ok(Source::Grid(parse_grid_spec(flag, text)?)),
        },
        _ => Err(Failure::Usage(
            "--class, --juxt and --grid are mutually exclusive".into(),
        )),
    }
}

/// The `--grid` argument, which must be 2×2.
fn square(opts: &Opts, command: &str) -> Run<Grid2x2> {
    if opts.class.is_some() || opts.juxt.is_some() {
        return Err(Failure::Usage(format!("{command} takes a 2x2 --grid only")));
    }
    let text = opts
        .grid
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("{command} requires --grid")))?;
    match parse_grid_spec("--grid", text)? {
        GridSpec::Square(g) => Ok(g),
        other => Err(Failure::Usage(format!("{command} needs a 2x2 grid, got {other}"))),
    }
}

fn parse_side(opts: &Opts) -> Run<Side> {
    let text = opts.side.as_deref().ok_or_else(|| Failure::Usage("--side is required".into()))?;
    text.parse()
        .map_err(|_| Failure::Usage(format!("--side {text:?}: expected A or B")))
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render_report(report: &BasisReport, format: Format) -> String {
    match format {
        Format::Text => report.to_string(),
        Format::Json => json(report),
    }
}

fn dispatch(cli: &Cli, cap_override: Option<&str>) -> Run<(i32, String)> {
    let opts = &cli.opts;
    let cfg = config(opts, cap_override)?;
    log::debug!("{:?} with {cfg:?}", cli.command);
    match cli.command {
        Command::Member => member(opts),
        Command::Squint => squint(opts),
        Command::Basis => {
            let report = source(opts)?.enumerate(&cfg)?;
            Ok((EXIT_OK, render_report(&report, opts.format)))
        }
        Command::Relbasis => relbasis(&square(opts, "relbasis")?, &cfg, opts.format),
        Command::VerifyLemma3 => verify_lemma3(&square(opts, "verify-lemma3")?, &cfg, opts.format),
        Command::VerifyObs2 => verify_obs2(&square(opts, "verify-obs2")?, &cfg, opts.format),
        Command::SurveyMonotone => survey(&cfg, opts.format),
        Command::Theorem2 => {
            let need = |flag: &str, v: &Option<String>| -> Run<String> {
                v.clone().ok_or_else(|| Failure::Usage(format!("theorem2 requires {flag}")))
            };
            let c = parse_basis_arg("--c-basis", &need("--c-basis", &opts.c_basis)?)?;
            let d = parse_basis_arg("--d-basis", &need("--d-basis", &opts.d_basis)?)?;
            let form = opts
                .form
                .ok_or_else(|| Failure::Usage("theorem2 requires --form".into()))
                .and_then(|n| {
                    Theorem2Form::from_number(n)
                        .ok_or_else(|| Failure::Usage(format!("--form {n}: expected 1, 2 or 3")))
                })?;
            let report = experiments::theorem2_check(&c, &d, form, &cfg)?;
            Ok((EXIT_OK, render_report(&report, opts.format)))
        }
        Command::NonfbDemo => {
            let report = experiments::nonfb_demo(&cfg)?;
            Ok((EXIT_OK, render_report(&report, opts.format)))
        }
    }
}

#[derive(Serialize)]
struct MemberAnswer {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Witness {
    Gridding { v: usize, h: usize },
    Triple { v: usize, r: usize, l: usize },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Gridding { v, h } => write!(f, "gridding v={v} h={h}"),
            Witness::Triple { v, r, l } => write!(f, "division v={v} r={r} l={l}"),
        }
    }
}

fn render_answer(answer: &MemberAnswer, format: Format) -> String {
    match format {
        Format::Json => json(answer),
        Format::Text => {
            let mut out = format!("{}\n", answer.member);
            if let Some(w) = &answer.witness {
                let _ = writeln!(out, "{w}");
            }
            out
        }
    }
}

fn member(opts: &Opts) -> Run<(i32, String)> {
    let src = source(opts)?;
    let p = parse_perm(opts)?;
    let member = src.contains(&p);
    let witness = match (&src, opts.witness && member) {
        (Source::Grid(g), true) => g.gridding(&p).map(|w| Witness::Gridding { v: w.v, h: w.h }),
        _ => None,
    };
    Ok((EXIT_OK, render_answer(&MemberAnswer { member, witness }, opts.format)))
}

fn squint(opts: &Opts) -> Run<(i32, String)> {
    let g = square(opts, "squint")?;
    let side = parse_side(opts)?;
    let p = parse_perm(opts)?;
    let member = gridbasis::member_squint(&g, &p, side);
    let witness = if opts.witness && member {
        g.squint_triple(&p, side).map(|t| Witness::Triple { v: t.v, r: t.r, l: t.l })
    } else {
        None
    };
    Ok((EXIT_OK, render_answer(&MemberAnswer { member, witness }, opts.format)))
}

#[derive(Serialize)]
struct Tagged<'a> {
    perm: &'a Permutation,
    side: String,
}

#[derive(Serialize)]
struct RelbasisJson<'a> {
    #[serde(flatten)]
    report: &'a BasisReport,
    relative_basis: Vec<Tagged<'a>>,
    outside_f: &'a [Permutation],
    outside_f_in_basis_of_f: Option<bool>,
}

fn relbasis(g: &Grid2x2, cfg: &EnumConfig, format: Format) -> Run<(i32, String)> {
    let rel = experiments::relative_basis(g, cfg, true)?;
    let tagged = || {
        rel.in_f.iter().map(|p| Tagged {
            perm: p,
            side: rel.side_tags[p].to_string(),
        })
    };
    let out = match format {
        Format::Json => json(&RelbasisJson {
            report: &rel.grid_basis,
            relative_basis: tagged().collect(),
            outside_f: &rel.outside_f,
            outside_f_in_basis_of_f: rel.outside_f_in_basis_of_f,
        }),
        Format::Text => {
            let mut out = rel.grid_basis.to_string();
            let _ = writeln!(out, "# relative basis (in F): {}", rel.in_f.len());
            for t in tagged() {
                let _ = writeln!(out, "{} {}", t.perm, t.side);
            }
            let _ = writeln!(out, "# outside F: {}", rel.outside_f.len());
            for p in &rel.outside_f {
                let _ = writeln!(out, "{p}");
            }
            if let Some(ok) = rel.outside_f_in_basis_of_f {
                let _ = writeln!(out, "# outside F all in basis of F: {}", if ok { "yes" } else { "no" });
            }
            out
        }
    };
    Ok((EXIT_OK, out))
}

#[derive(Serialize)]
struct Lemma3Json<'a> {
    class: String,
    max_len: usize,
    #[serde(flatten)]
    verdict: &'a Lemma3Verdict,
}

fn verify_lemma3(g: &Grid2x2, cfg: &EnumConfig, format: Format) -> Run<(i32, String)> {
    let verdict = experiments::verify_lemma3(g, cfg)?;
    let code = if verdict.passed() { EXIT_OK } else { EXIT_FAILED };
    let out = match format {
        Format::Text => format!("{verdict}\n"),
        Format::Json => json(&Lemma3Json {
            class: g.to_string(),
            max_len: cfg.max_len,
            verdict: &verdict,
        }),
    };
    Ok((code, out))
}

#[derive(Serialize)]
struct Obs2Json<'a> {
    class: String,
    max_len: usize,
    verdict: &'static str,
    relative_basis: Vec<Tagged<'a>>,
    outside_f: &'a [Permutation],
    missing_from_f_basis: &'a [Permutation],
    bad_tags: &'a [Permutation],
    grid_basis: &'a BasisReport,
    f_basis: &'a BasisReport,
}

fn verify_obs2(g: &Grid2x2, cfg: &EnumConfig, format: Format) -> Run<(i32, String)> {
    let check = experiments::verify_observation2(g, cfg)?;
    let code = if check.passed() { EXIT_OK } else { EXIT_FAILED };
    let out = match format {
        Format::Text => check.to_string(),
        Format::Json => json(&Obs2Json {
            class: g.to_string(),
            max_len: cfg.max_len,
            verdict: if check.passed() { "PASS" } else { "FAIL" },
            relative_basis: check
                .relative
                .iter()
                .map(|(perm, side)| Tagged {
                    perm,
                    side: side.to_string(),
                })
                .collect(),
            outside_f: &check.outside_f,
            missing_from_f_basis: &check.missing_from_f_basis,
            bad_tags: &check.bad_tags,
            grid_basis: &check.grid_basis,
            f_basis: &check.f_basis,
        }),
    };
    Ok((code, out))
}

#[derive(Serialize)]
struct OrbitJson<'a> {
    orbit: Vec<String>,
    #[serde(flatten)]
    report: &'a BasisReport,
}

fn survey(cfg: &EnumConfig, format: Format) -> Run<(i32, String)> {
    let orbits = experiments::survey_monotone(cfg)?;
    let out = match format {
        Format::Json => json(
            &orbits
                .iter()
                .map(|o| OrbitJson {
                    orbit: o.orbit.iter().map(|g| g.to_string()).collect(),
                    report: &o.report,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            for o in &orbits {
                let names: Vec<String> = o.orbit.iter().map(|g| g.to_string()).collect();
                let _ = writeln!(out, "# orbit {}", names.join(", "));
                out.push_str(&o.report.to_string());
                out.push('\n');
            }
            out
        }
    };
    Ok((EXIT_OK, out))
}
