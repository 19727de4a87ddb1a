//! Command-line front end of `xi-audit`.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::audit::report::ball_json;
use crate::audit::{render_text, run_audit, to_json, AuditConfig, Scope};
use crate::ball::{self, ComplexBall, Mag, RealBall, DEFAULT_PREC, PREC_CAP};
use crate::error::{Error, Result};
use crate::special::{gamma_at, psi_at, xi_at, zeta_at};
use crate::sums::{validate_envelope, MIN_TAIL_HEIGHT};
use crate::zeros::{
    count_vs_formula, load_catalog, parse_zero_table, refine_zero, save_catalog, ZeroCatalog, CATALOG_MAGIC,
    DEFAULT_TABLE_ACCURACY,
};

#[derive(Parser, Debug)]
#[command(
    name = "xi-audit",
    version,
    about = "Certified evaluation of zeta, Gamma, xi and psi, zero catalogs, and claim audits"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PREC)]
    pub prec_bits: u32,
    /// Upper limit for automatic precision escalation.
    #[arg(long, global = true, default_value_t = PREC_CAP)]
    pub prec_cap: u32,
    /// Zero table: plain ordinates, one per line, or a saved catalog.
    #[arg(long, global = true, env = "XIAUDIT_ZEROS")]
    pub zeros_file: Option<PathBuf>,
    /// Use only the first N zeros of the table.
    #[arg(long, global = true)]
    pub max_zeros: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Constant C in |N(T) - main term| <= C log T.
    #[arg(long, global = true, default_value_t = crate::sums::DEFAULT_SLACK)]
    pub tail_slack: f64,
    /// Radius attached to every plain-text ordinate.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_ACCURACY)]
    pub table_accuracy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a function at a point such as `2`, `0.5+14.1i` or `-3.5`.
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Validate, count and refine tabulated zeros
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Recompute printed claims.
    Audit {
        #[arg(value_enum)]
        scope: AuditScope,
        /// Small-argument point, a decimal literal.
        #[arg(long)]
        z1: Option<String>,
        /// Moderate-argument point, a decimal literal.
        #[arg(long)]
        z5: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Zeta,
    Gamma,
    Xi,
    Psi,
}

#[derive(Subcommand, Debug)]
pub enum ZerosCommand {
    /// Load the table and check ordering and the counting envelope.
    Validate,
    /// Refine one zero to a target radius.
    Refine {
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = "1e-30")]
        target: f64,
        /// Catalog cache that receives the refined entry; defaults to the
        /// zero file itself when it is a saved catalog, else `<zeros-file>.cache`.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Count tabulated ordinates below T.
    Count {
        #[arg(long = "T")]
        t: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AuditScope {
    Section4,
    Section5,
    All,
}

/// Parse arguments, run, print, and return the exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Run a parsed command, writing its report to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let g = &cli.global;
    ball::check_prec(g.prec_bits)?;
    ball::check_prec(g.prec_cap)?;
    if g.prec_bits > g.prec_cap {
        return Err(Error::InvalidArgument("--prec-bits exceeds --prec-cap".into()));
    }
    if g.max_zeros == Some(0) {
        return Err(Error::InvalidArgument("--max-zeros must be at least 1".into()));
    }
    if !(g.tail_slack > 0.0) || !(g.table_accuracy > 0.0) {
        return Err(Error::InvalidArgument(
            "tail slack and table accuracy must be positive".into(),
        ));
    }
    match &cli.command {
        Command::Eval { function, point } => eval(g, *function, point, out),
        Command::Zeros(z) => zeros(g, z, out),
        Command::Audit { scope, z1, z5 } => audit(g, *scope, z1.as_deref(), z5.as_deref(), out),
    }
}

fn emit<W: Write>(out: &mut W, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_json<W: Write>(out: &mut W, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    emit(out, &s)
}

/// `a`, `bi`, `a+bi` or `a-bi` with decimal parts.
pub fn parse_complex(text: &str, prec: u32) -> Result<ComplexBall> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot parse point {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let dec = |s: &str| RealBall::from_decimal(s, prec).map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ComplexBall::from_real(dec(&t)?));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (dec(&body[..i])?, &body[i..]),
        None => (RealBall::zero(prec), body),
    };
    let im = match im {
        "" | "+" => RealBall::one(prec),
        "-" => -RealBall::one(prec),
        s => dec(s)?,
    };
    Ok(ComplexBall::new(re, im))
}

fn eval<W: Write>(g: &GlobalOpts, f: Function, point: &str, out: &mut W) -> Result<i32> {
    let prec = g.prec_bits;
    let s = parse_complex(point, prec)?;
    let name = match f {
        Function::Zeta => "zeta",
        Function::Gamma => "gamma",
        Function::Xi => "xi",
        Function::Psi => "psi",
    };
    let value = match f {
        Function::Zeta => zeta_at(&s, prec)?,
        Function::Gamma => gamma_at(&s, prec)?,
        Function::Xi => xi_at(&s, prec)?,
        Function::Psi => {
            if !(s.im.is_exact() && s.im.mid().is_zero()) {
                return Err(Error::DomainViolation("psi takes a real argument".into()));
            }
            ComplexBall::from_real(psi_at(&s.re, prec)?)
        }
    };
    match g.format {
        Format::Json => emit_json(
            out,
            &json!({
                "function": name,
                "point": point,
                "prec_bits": prec.to_string(),
                "value": {"re": ball_json(&value.re), "im": ball_json(&value.im)},
            }),
        )?,
        Format::Text => {
            let digits = Some(((prec as f64) * std::f64::consts::LOG10_2).floor() as usize);
            emit(out, &format!("{name}({point})\n"))?;
            emit(
                out,
                &format!("re: {} +/- {}\n", value.re.mid_string(digits), value.re.rad()),
            )?;
            emit(
                out,
                &format!("im: {} +/- {}\n", value.im.mid_string(digits), value.im.rad()),
            )?;
            emit(out, &format!("prec_bits: {prec}\n"))?;
        }
    }
    Ok(0)
}

/// Load the configured zero table, detecting saved catalogs by their header.
pub fn load_zeros(g: &GlobalOpts) -> Result<ZeroCatalog> {
    let path = g
        .zeros_file
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("no zero table: pass --zeros-file or set XIAUDIT_ZEROS".into()))?;
    let cat = load_any(path, g.table_accuracy)?;
    Ok(match g.max_zeros {
        Some(n) if n < cat.len() => cat.truncated(n),
        _ => cat,
    })
}

fn load_any(path: &Path, accuracy: f64) -> Result<ZeroCatalog> {
    if is_saved_catalog(path)? {
        return load_catalog(path);
    }
    let reader = BufReader::new(File::open(path)?);
    let descriptor = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_zero_table(reader, &Mag::from_f64(accuracy), &descriptor)
}

fn default_cache(g: &GlobalOpts) -> Result<PathBuf> {
    let path = g
        .zeros_file
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("no zero table".into()))?;
    if is_saved_catalog(path)? {
        return Ok(path.to_path_buf());
    }
    let mut name = path.as_os_str().to_owned();
    name.push(".cache");
    Ok(PathBuf::from(name))
}

fn is_saved_catalog(path: &Path) -> Result<bool> {
    let mut reader = BufReader::new(File::open(path)?);
    Ok(reader.fill_buf()?.starts_with(CATALOG_MAGIC.as_bytes()))
}

fn zeros<W: Write>(g: &GlobalOpts, cmd: &ZerosCommand, out: &mut W) -> Result<i32> {
    let cat = load_zeros(g)?;
    match cmd {
        ZerosCommand::Validate => {
            let cutoff = cat.cutoff()?.clone();
            let off_line = cat.omega2().count();
            let envelope = if cutoff.lower() >= MIN_TAIL_HEIGHT {
                Some(validate_envelope(&cat, g.tail_slack)?)
            } else {
                None
            };
            match g.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "descriptor": cat.descriptor(),
                        "entries": cat.len().to_string(),
                        "off_line": off_line.to_string(),
                        "cutoff": ball_json(&cutoff),
                        "table_accuracy": cat.table_accuracy().to_string(),
                        "envelope": envelope.as_ref().map(|e| json!({
                            "from": e.checked_from.to_string(),
                            "to": e.checked_to.to_string(),
                            "jumps_checked": e.jumps_checked.to_string(),
                            "max_ratio": format!("{:.6}", e.max_ratio),
                        })),
                    }),
                )?,
                Format::Text => {
                    emit(out, &format!("entries: {}\n", cat.len()))?;
                    emit(out, &format!("off-line: {off_line}\n"))?;
                    emit(out, &format!("cutoff: {}\n", cutoff.mid_string(Some(20))))?;
                    emit(out, &format!("table accuracy: {}\n", cat.table_accuracy()))?;
                    match &envelope {
                        Some(e) => emit(
                            out,
                            &format!(
                                "envelope: held at {} jumps on [{}, {}], max |N - M| / log t = {:.6}\n",
                                e.jumps_checked, e.checked_from, e.checked_to, e.max_ratio
                            ),
                        )?,
                        None => emit(out, "envelope: catalog ends below the validated range\n")?,
                    }
                }
            }
            Ok(0)
        }
        ZerosCommand::Refine { index, target, cache } => {
            let entry = cat
                .get(*index)
                .ok_or_else(|| Error::InvalidArgument(format!("index {index} outside 1..={}", cat.len())))?;
            if !(*target > 0.0) {
                return Err(Error::InvalidArgument("target must be positive".into()));
            }
            let r = refine_zero(entry, &Mag::from_f64(*target))?;
            let cache = match cache {
                Some(p) => p.clone(),
                None => default_cache(g)?,
            };
            save_catalog(&cat.with_entry(r.entry.clone())?, &cache)?;
            let digits = Some(((r.prec as f64) * std::f64::consts::LOG10_2).floor() as usize);
            match g.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "index": index.to_string(),
                        "ordinate": ball_json(&r.entry.beta),
                        "xi_low": ball_json(&r.g_low),
                        "xi_high": ball_json(&r.g_high),
                        "source": r.entry.source.as_str(),
                        "cache": cache.display().to_string(),
                    }),
                )?,
                Format::Text => {
                    emit(out, &format!("index: {index}\n"))?;
                    emit(
                        out,
                        &format!(
                            "ordinate: {} +/- {}\n",
                            r.entry.beta.mid_string(digits),
                            r.entry.beta.rad()
                        ),
                    )?;
                    emit(out, &format!("xi at lower end: {}\n", r.g_low.mid_string(Some(6))))?;
                    emit(out, &format!("xi at upper end: {}\n", r.g_high.mid_string(Some(6))))?;
                    emit(out, &format!("cache: {}\n", cache.display()))?;
                }
            }
            Ok(0)
        }
        ZerosCommand::Count { t } => {
            let tb = RealBall::from_decimal(t, g.prec_bits)?;
            let c = count_vs_formula(&cat, &tb, g.tail_slack)?;
            match g.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "T": t,
                        "counted": c.counted.to_string(),
                        "main_term": ball_json(&c.main_term),
                        "allowed": ball_json(&c.allowed),
                        "within_slack": c.within_slack,
                    }),
                )?,
                Format::Text => {
                    emit(out, &format!("counted: {}\n", c.counted))?;
                    emit(out, &format!("main term: {}\n", c.main_term.mid_string(Some(12))))?;
                    emit(out, &format!("allowed: {}\n", c.allowed.mid_string(Some(12))))?;
                    emit(out, &format!("within slack: {}\n", c.within_slack))?;
                }
            }
            Ok(if c.within_slack { 0 } else { 5 })
        }
    }
}

fn audit<W: Write>(g: &GlobalOpts, scope: AuditScope, z1: Option<&str>, z5: Option<&str>, out: &mut W) -> Result<i32> {
    let mut cfg = AuditConfig {
        prec_cap: g.prec_cap,
        tail_slack: g.tail_slack,
        ..AuditConfig::default()
    };
    if let Some(z) = z1 {
        cfg.z1 = z.to_string();
    }
    if let Some(z) = z5 {
        cfg.z5 = z.to_string();
    }
    let scope = match scope {
        AuditScope::Section4 => Scope::Section4,
        AuditScope::Section5 => Scope::Section5,
        AuditScope::All => Scope::All,
    };
    let catalog = match scope {
        Scope::Section5 => None,
        _ => Some(load_zeros(g)?),
    };
    let report = run_audit(scope, catalog.as_ref(), &cfg)?;
    match g.format {
        Format::Json => emit(out, &to_json(&report))?,
        Format::Text => emit(out, &render_text(&report))?,
    }
    Ok(if report.exhausted.is_empty() { 0 } else { 4 })
}
