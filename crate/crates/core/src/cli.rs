//! Command-line interface.
//!
//! Rational functions are printed in canonical text form: numerator and
//! denominator have integer coefficients, the leading coefficient of the
//! denominator is positive, and denominator factors with rational roots are
//! printed as primitive linear factors in ascending order of degree and
//! text, e.g. `(3*s + 7)/((15*s + 7)*(s + 1))`. Repeated factors carry an
//! exponent, `1/((s + 1)^2)`. The text parses back to the same function.
//! `--latex` switches to `\frac{..}{..}`.
//!
//! Exit status: 0 on success, 1 for domain errors (bad input data, missing
//! twist entries, failed verification), 2 for usage errors.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cones::StratumProfile;
use crate::error::Error;
use crate::io::{parse_bundle, parse_resolution};
use crate::suspension::{
    fermat_discrepancy, fermat_nondegenerate, legacy_formula, required_twists,
    required_twists_untwisted, suspend_f_twisted, suspend_g, suspension_matrix,
    suspension_matrix_identity, SuspensionParams,
};
use crate::symbolic::{canonical, latex, MotivicExpression, RationalFunction};
use crate::verify;
use crate::zeta::{
    resolution_topological, stratified_topological, stratified_twisted, stratum_naive_motivic,
    stratum_topological, stratum_twisted_topological, ResolutionData, StratumZeta, ZetaBundle,
};

#[derive(Debug, Parser)]
#[command(name = "topozeta", version, about = "Topological and naive motivic zeta functions of suspensions")]
pub struct Cli {
    /// Print LaTeX instead of canonical text.
    #[arg(long, global = true)]
    pub latex: bool,
    /// Wrap the output as {"result": ..., "warnings": [...]}.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SuspensionFlags {
    #[arg(long = "Q")]
    pub q: Option<i64>,
    #[arg(long, default_value_t = 0)]
    pub p: i64,
    #[arg(long, default_value_t = 1)]
    pub nuz: i64,
}

#[derive(Debug, Args)]
pub struct ProfileFlags {
    /// Multiplicities N_k, comma separated.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n: Vec<i64>,
    /// Discrepancies nu_k, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nu: Vec<i64>,
    #[arg(long = "Q")]
    pub q: i64,
    #[arg(long, default_value_t = 0)]
    pub p: i64,
    #[arg(long, default_value_t = 1)]
    pub nuz: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Z_top(f) from resolution data, or Z_top(z^p (z^Q - f)) with --Q.
    Top {
        #[arg(long)]
        resolution: PathBuf,
        #[command(flatten)]
        susp: SuspensionFlags,
    },
    /// Z_top^(e)(f) from resolution data, or Z_top^(e)(z^Q - f) with --Q.
    Twisted {
        #[arg(long)]
        resolution: PathBuf,
        #[arg(long)]
        twist: u64,
        #[arg(long = "Q")]
        q: Option<i64>,
    },
    /// The four topological parts of one stratum and their sum.
    Stratum {
        #[command(flatten)]
        profile: ProfileFlags,
        #[arg(long)]
        twist: Option<u64>,
    },
    /// The four naive motivic parts of one stratum, optionally expanded in T.
    MotivicStratum {
        #[command(flatten)]
        profile: ProfileFlags,
        /// Expand each part up to this power of T.
        #[arg(long)]
        series_bound: Option<usize>,
        /// Keep L-exponents at or above this value when expanding factors
        /// without T.
        #[arg(long, allow_negative_numbers = true)]
        l_floor: Option<i64>,
    },
    /// Z_top^(l)(z^Q - f) from a bundle of twisted zeta functions of f.
    SuspendF {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long = "Q")]
        q: i64,
        #[arg(long, default_value_t = 1)]
        twist: u64,
    },
    /// Z_top(z^p (z^Q - f)) from a bundle.
    SuspendG {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long = "Q")]
        q: i64,
        #[arg(long, default_value_t = 0)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        nuz: i64,
    },
    /// The matrix B = Q Id - J, and the matrix identity when a bundle is given.
    Matrix {
        #[arg(long = "Q")]
        q: i64,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Theorem value, legacy formula and their difference for a bundle;
    /// without a bundle, the Fermat closed forms.
    CompareLegacy {
        #[arg(long = "Q")]
        q: i64,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Run the fixture suite and print a pass/fail table.
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Canonical,
    Latex,
}

pub trait Render {
    fn render(&self, mode: OutputMode) -> String;
}

impl Render for RationalFunction {
    fn render(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Canonical => canonical(self, "s"),
            OutputMode::Latex => latex(self, "s"),
        }
    }
}

impl Render for MotivicExpression {
    fn render(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Canonical => self.to_string(),
            OutputMode::Latex => self.to_latex(),
        }
    }
}

pub fn format_output(x: &dyn Render, mode: OutputMode) -> String {
    x.render(mode)
}

enum Failure {
    Domain(String),
    /// Exit status 1 with the text on stdout.
    Report(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Ctx {
    mode: OutputMode,
    warnings: Vec<String>,
}

impl Ctx {
    fn resolution(&mut self, path: &PathBuf) -> Result<ResolutionData, Failure> {
        let text = read(path)?;
        let parsed = parse_resolution(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
        self.warnings.extend(parsed.warnings);
        Ok(parsed.value)
    }

    /// Loads a bundle and reports the twists it lacks among `required`.
    fn bundle(&mut self, path: &PathBuf, required: &BTreeSet<u64>) -> Result<ZetaBundle, Failure> {
        let text = read(path)?;
        let b = parse_bundle(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
        let missing = b.missing(required);
        if !missing.is_empty() {
            if !b.default_zero {
                return Err(Error::MissingTwist(missing[0]).into());
            }
            for e in missing {
                self.warnings.push(format!("bundle has no entry for twist {e}; using 0"));
            }
        }
        Ok(b)
    }

    fn show(&self, x: &dyn Render) -> String {
        format_output(x, self.mode)
    }

    fn parts(&self, z: &StratumZeta<impl Render>, total: &dyn Render) -> String {
        let mut out = String::new();
        for (name, x) in z.parts() {
            out.push_str(&format!("{name}: {}\n", self.show(x)));
        }
        out.push_str(&format!("total: {}", self.show(total)));
        out
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn profile(f: &ProfileFlags) -> Result<StratumProfile, Failure> {
    if f.n.len() != f.nu.len() {
        return Err(Failure::Usage(format!(
            "--N has {} entries but --nu has {}",
            f.n.len(),
            f.nu.len()
        )));
    }
    Ok(StratumProfile::new(f.n.clone(), f.nu.clone(), f.q, f.p, f.nuz)?)
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<String, Failure> {
    match cmd {
        Command::Top { resolution, susp } => {
            let res = ctx.resolution(resolution)?;
            let z = match susp.q {
                None => {
                    if susp.p != 0 || susp.nuz != 1 {
                        return Err(Failure::Usage("--p and --nuz need --Q".into()));
                    }
                    resolution_topological(&res, 1)?
                }
                Some(q) => stratified_topological(&res, q, susp.p, susp.nuz)?,
            };
            Ok(ctx.show(&z))
        }
        Command::Twisted { resolution, twist, q } => {
            let res = ctx.resolution(resolution)?;
            let z = match q {
                None => resolution_topological(&res, *twist)?,
                Some(_) if *twist == 1 => {
                    return Err(Failure::Usage("use `top --Q` for the untwisted suspension".into()))
                }
                Some(q) => stratified_twisted(&res, *q, *twist)?,
            };
            Ok(ctx.show(&z))
        }
        Command::Stratum { profile: f, twist } => {
            let p = profile(f)?;
            let z = match twist {
                None => stratum_topological(&p),
                Some(e) => stratum_twisted_topological(&p, *e)?,
            };
            Ok(ctx.parts(&z, &z.total()))
        }
        Command::MotivicStratum {
            profile: f,
            series_bound,
            l_floor,
        } => {
            let p = profile(f)?;
            let w = stratum_naive_motivic(&p)?;
            let Some(bound) = series_bound else {
                if l_floor.is_some() {
                    return Err(Failure::Usage("--l-floor needs --series-bound".into()));
                }
                return Ok(ctx.parts(&w, &w.total()));
            };
            let mut out = String::new();
            for (name, x) in w.parts() {
                let s = match l_floor {
                    None => x.series(*bound)?,
                    Some(fl) => x.series_truncated(*bound, *fl)?,
                };
                out.push_str(&format!("{name}:\n{s}\n"));
            }
            Ok(out.trim_end().to_string())
        }
        Command::SuspendF { bundle, q, twist } => {
            let b = ctx.bundle(bundle, &required_twists(*q, *twist)?)?;
            Ok(ctx.show(&suspend_f_twisted(&b, *q, *twist)?))
        }
        Command::SuspendG { bundle, q, p, nuz } => {
            let params = SuspensionParams::new(*q, *p, *nuz, 1)?;
            let b = ctx.bundle(bundle, &required_twists_untwisted(*q)?)?;
            Ok(ctx.show(&suspend_g(&b, &params)?))
        }
        Command::Matrix { q, bundle } => {
            let m = suspension_matrix(*q)?;
            let mut out = format!(
                "divisors: {}\nB:\n",
                m.divisors.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            );
            for row in &m.b {
                out.push_str(&row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
            if let Some(path) = bundle {
                let b = ctx.bundle(path, &required_twists_untwisted(*q)?)?;
                let id = suspension_matrix_identity(&b, *q)?;
                for ((l, lhs), rhs) in m.divisors.iter().zip(&id.lhs).zip(&id.rhs) {
                    out.push_str(&format!("row {l}: {} = {}\n", ctx.show(lhs), ctx.show(rhs)));
                }
                out.push_str(&format!("identity holds: {}", id.equal));
                if !id.equal {
                    return Err(Failure::Report(out));
                }
            }
            Ok(out.trim_end().to_string())
        }
        Command::CompareLegacy { q, bundle } => {
            let (theorem, legacy) = match bundle {
                Some(path) => {
                    let b = ctx.bundle(path, &required_twists_untwisted(*q)?)?;
                    (suspend_f_twisted(&b, *q, 1)?, legacy_formula(&b, *q)?)
                }
                None => {
                    let nd = fermat_nondegenerate(*q);
                    let diff = fermat_discrepancy(*q)?;
                    (nd.clone(), &nd - &diff)
                }
            };
            let diff = &theorem - &legacy;
            Ok(format!(
                "theorem: {}\nlegacy: {}\ndifference: {}",
                ctx.show(&theorem),
                ctx.show(&legacy),
                ctx.show(&diff)
            ))
        }
        Command::Verify => {
            let results = verify::run_all();
            let table = verify::render_table(&results);
            if results.iter().all(|r| r.passed) {
                Ok(table.trim_end().to_string())
            } else {
                Err(Failure::Report(table.trim_end().to_string()))
            }
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    result: Option<&'a str>,
    error: Option<&'a str>,
    warnings: &'a [String],
}

fn envelope(result: Option<&str>, error: Option<&str>, warnings: &[String]) -> String {
    let env = Envelope {
        result,
        error,
        warnings,
    };
    serde_json::to_string(&env).expect("serializable") + "\n"
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Ctx {
        mode: if cli.latex { OutputMode::Latex } else { OutputMode::Canonical },
        warnings: Vec::new(),
    };
    let outcome = execute(&cli.command, &mut ctx);
    let warn_text: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match outcome {
        Ok(text) if cli.json => RunOutput {
            code: 0,
            stdout: envelope(Some(&text), None, &ctx.warnings),
            stderr: String::new(),
        },
        Ok(text) => RunOutput {
            code: 0,
            stdout: text + "\n",
            stderr: warn_text,
        },
        Err(Failure::Domain(msg)) if cli.json => RunOutput {
            code: 1,
            stdout: envelope(None, Some(&msg), &ctx.warnings),
            stderr: String::new(),
        },
        Err(Failure::Domain(msg)) => RunOutput {
            code: 1,
            stdout: String::new(),
            stderr: format!("{warn_text}error: {msg}\n"),
        },
        Err(Failure::Report(text)) if cli.json => RunOutput {
            code: 1,
            stdout: envelope(Some(&text), Some("check failed"), &ctx.warnings),
            stderr: String::new(),
        },
        Err(Failure::Report(text)) => RunOutput {
            code: 1,
            stdout: text + "\n",
            stderr: warn_text,
        },
        Err(Failure::Usage(msg)) => RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
