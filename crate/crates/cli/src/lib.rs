//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and writes the payload; `main` only wires up the process streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfsalem::bridges::grid_search;
use hopfsalem::plumbing::seifert_from_tree;
use hopfsalem::rootscope::{arg_walk, convergence_probe, DEFAULT_TOL};
use hopfsalem::salemboyd::{p_from_seifert, thresholds};
use hopfsalem::{
    alexander, classify, root_profile, Error, Execution, IntPoly, PlumbingTree, SalemBoydFamily,
    SeifertMatrix, Sign,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hopfsalem", version, about = "Alexander polynomials of plumbed fibered links and their Salem-Boyd sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalized Alexander polynomial of a tree or Seifert matrix.
    Alexander(SurfaceArgs),
    /// Seed family `{P, plumb_sign, r}` of a tree or Seifert matrix.
    Pseed {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
        /// Plumbing vector, comma separated (default: last basis vector).
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// `Δ_n` (or `Q_n` with `--q`) for one `n` or for `1..=n_max`.
    Sequence {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Emit `Q_n` with this star sign instead of `Δ_n`.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<Sign>,
        /// Attach `λ`, `M` and `N` to every row.
        #[arg(long)]
        profile: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Roots, `λ`, `N` and `M` of a polynomial.
    Profile {
        #[arg(long = "P", allow_hyphen_values = true)]
        p: IntPoly,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// PV / Salem-like / Perron classification of the stripped core.
    Classify {
        #[arg(long = "P", allow_hyphen_values = true)]
        p: IntPoly,
    },
    /// Thresholds `n0` and directions of `Q^±_n`.
    Thresholds {
        #[arg(long = "P", allow_hyphen_values = true)]
        p: IntPoly,
    },
    /// Argument residuals of the roots of `Q_n` converging to an outside root.
    Argwalk {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        star: Sign,
        #[arg(long, default_value_t = 0)]
        root_index: usize,
        #[arg(long, default_value_t = 1)]
        n_start: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Salem search over the two-bridge grid `1 < m < m_max`, `1 < n < n_max`.
    Grid {
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Convergence probe of `Q_n` for `1 <= n <= n_max`.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        star: Sign,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    /// Inline tree ("- + / 0 1") or a file in the tree text format.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seifert")]
    tree: Option<String>,
    /// Seifert matrix, rows separated by `;` ("-1,0;-1,1").
    #[arg(long, allow_hyphen_values = true)]
    seifert: Option<String>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Family descriptor JSON file.
    #[arg(long, conflicts_with_all = ["p", "tree", "seifert"])]
    family: Option<PathBuf>,
    #[arg(long = "P", allow_hyphen_values = true)]
    p: Option<IntPoly>,
    /// Plumbing sign (required with `--P`, `--tree` or `--seifert`).
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<Sign>,
    /// Number of link components; only its parity matters.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["p", "seifert"])]
    tree: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "p")]
    seifert: Option<String>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, conflicts_with = "n_max")]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
}

/// Failure of a command: bad input (exit 2) or a computation error (exit 3).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidTree(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

type CmdResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the command line `argv` (program name first). Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(&cli.command, cli.out.format).and_then(|payload| emit(&cli.out, &payload, stdout));
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "{}", json!({"error": "UsageError", "message": msg}));
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(stderr, "{}", json!({"error": e.kind(), "message": e.to_string()}));
            EXIT_COMPUTE
        }
    }
}

fn emit(out: &OutputArgs, payload: &str, stdout: &mut dyn Write) -> CmdResult<()> {
    match &out.out {
        Some(path) => std::fs::write(path, payload).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(payload.as_bytes()).map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn dispatch(cmd: &Command, format: Format) -> CmdResult<String> {
    match cmd {
        Command::Alexander(surface) => {
            let res = alexander(&surface.matrix()?)?;
            Ok(match format {
                Format::Json => to_json(&res),
                Format::Csv => poly_csv(&res.delta),
                Format::Text => format!("{}\n", res.delta.to_text()),
            })
        }
        Command::Pseed { surface, sign, v } => {
            let s = surface.matrix()?;
            let fam = match v {
                None => SalemBoydFamily::from_seifert(&s, *sign)?,
                Some(v) => {
                    let v = parse_ints(v)?;
                    SalemBoydFamily::new(p_from_seifert(&s, &v, *sign)?, *sign, Some(1 + s.dim() % 2))?
                }
            };
            Ok(match format {
                Format::Json => to_json(&fam),
                Format::Csv => poly_csv(fam.p()),
                Format::Text => format!("{}\n", fam.p().to_text()),
            })
        }
        Command::Sequence { family, range, q, profile, tol } => {
            check_tol(*tol)?;
            let fam = family.load()?;
            let ns = range.ns()?;
            sequence(&fam, &ns, *q, *profile, *tol, format)
        }
        Command::Profile { p, tol } => {
            check_tol(*tol)?;
            let prof = root_profile(p, *tol)?;
            Ok(match format {
                Format::Json => to_json(&prof),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["re", "im", "mult"]).map_err(csv_err)?;
                    for r in &prof.roots {
                        w.write_record([r.re.to_string(), r.im.to_string(), r.mult.to_string()]).map_err(csv_err)?;
                    }
                    finish(w)?
                }
                Format::Text => format!("lambda {}\nN {}\nM {}\n", prof.lambda, prof.n_outside, prof.mahler),
            })
        }
        Command::Classify { p } => {
            let c = classify(p)?;
            Ok(match format {
                Format::Json => to_json(&c),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["kind", "witness", "reciprocal_core", "n_outside"]).map_err(csv_err)?;
                    w.write_record([kind_name(&c)?, c.witness.to_string(), c.reciprocal_core.to_string(), c.n_outside.to_string()])
                        .map_err(csv_err)?;
                    finish(w)?
                }
                Format::Text => format!("{} {}\n", kind_name(&c)?, c.witness),
            })
        }
        Command::Thresholds { p } => {
            let rep = thresholds(p)?;
            Ok(match format {
                Format::Json => to_json(&rep),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["star", "n0", "direction"]).map_err(csv_err)?;
                    for star in [Sign::Plus, Sign::Minus] {
                        let dir = serde_json::to_value(rep.predicted_direction(star)).expect("serializable");
                        w.write_record([star.to_string(), rep.n0(star).to_string(), dir.as_str().unwrap_or_default().to_owned()])
                            .map_err(csv_err)?;
                    }
                    finish(w)?
                }
                Format::Text => format!("n0+ {}\nn0- {} ({})\n", rep.n0_plus, rep.n0_minus, rep.n0_minus_exact),
            })
        }
        Command::Argwalk { family, star, root_index, n_start, n_max } => {
            let fam = family.load()?;
            let walk = arg_walk(&fam, *star, *root_index, *n_start, *n_max, Execution::Parallel)?;
            Ok(match format {
                Format::Json => to_json(&walk),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["n", "residual"]).map_err(csv_err)?;
                    for pt in &walk.points {
                        w.write_record([pt.n.to_string(), pt.residual.to_string()]).map_err(csv_err)?;
                    }
                    finish(w)?
                }
                Format::Text => walk.points.iter().map(|pt| format!("{} {}\n", pt.n, pt.residual)).collect(),
            })
        }
        Command::Grid { m_max, n_max, sequential } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let rep = grid_search(*m_max, *n_max, exec)?;
            Ok(match format {
                Format::Json => to_json(&rep),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["m", "n", "salem_value", "half_coeffs"]).map_err(csv_err)?;
                    for h in &rep.hits {
                        w.write_record([h.m.to_string(), h.n.to_string(), format!("{:.5}", h.salem_value), join(&h.half_coeffs, " ")])
                            .map_err(csv_err)?;
                    }
                    finish(w)?
                }
                Format::Text => rep
                    .hits
                    .iter()
                    .map(|h| format!("({},{}) {:.5} [{}]\n", h.m, h.n, h.salem_value, join(&h.half_coeffs, ",")))
                    .collect(),
            })
        }
        Command::Family { family, star, n_max } => {
            let fam = family.load()?;
            let rows = convergence_probe(&fam, *star, *n_max, Execution::Parallel)?;
            Ok(match format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut w = csv_writer();
                    w.write_record(["n", "lambda", "M", "N"]).map_err(csv_err)?;
                    for r in &rows {
                        w.write_record([r.n.to_string(), r.lambda.to_string(), r.mahler.to_string(), r.n_outside.to_string()])
                            .map_err(csv_err)?;
                    }
                    finish(w)?
                }
                Format::Text => rows
                    .iter()
                    .map(|r| format!("{} {} {} {}\n", r.n, r.lambda, r.mahler, r.n_outside))
                    .collect(),
            })
        }
    }
}

fn sequence(fam: &SalemBoydFamily, ns: &[usize], q: Option<Sign>, profile: bool, tol: f64, format: Format) -> CmdResult<String> {
    if q.is_none() && fam.r().is_none() {
        return Err(usage("Δ_n needs --r (or pass --q to list Q_n)"));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let poly = match q {
            Some(star) => fam.q_n(n, star),
            None => fam.delta_n(n)?,
        };
        let prof = if profile { Some(root_profile(&poly, tol)?) } else { None };
        rows.push((n, poly, prof));
    }
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(n, poly, prof)| {
                    let mut row = json!({"n": n, "coeffs": serde_json::to_value(poly).expect("serializable")["coeffs"]});
                    if let Some(pr) = prof {
                        row["lambda"] = json!(pr.lambda);
                        row["M"] = json!(pr.mahler);
                        row["N"] = json!(pr.n_outside);
                    }
                    row
                })
                .collect();
            to_json(&rows)
        }
        Format::Csv => {
            let mut w = csv_writer();
            let mut header = vec!["n", "coeffs"];
            if profile {
                header.extend(["lambda", "M", "N"]);
            }
            w.write_record(&header).map_err(csv_err)?;
            for (n, poly, prof) in &rows {
                let mut rec = vec![n.to_string(), join(poly.coeffs(), " ")];
                if let Some(pr) = prof {
                    rec.extend([pr.lambda.to_string(), pr.mahler.to_string(), pr.n_outside.to_string()]);
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            finish(w)?
        }
        Format::Text => rows
            .iter()
            .map(|(n, poly, prof)| match prof {
                Some(pr) => format!("{n} {} lambda={} M={} N={}\n", poly.to_text(), pr.lambda, pr.mahler, pr.n_outside),
                None => format!("{n} {}\n", poly.to_text()),
            })
            .collect(),
    })
}

impl SurfaceArgs {
    fn matrix(&self) -> CmdResult<SeifertMatrix> {
        surface_matrix(self.tree.as_deref(), self.seifert.as_deref())
    }
}

fn surface_matrix(tree: Option<&str>, seifert: Option<&str>) -> CmdResult<SeifertMatrix> {
    match (tree, seifert) {
        (Some(t), None) => Ok(seifert_from_tree(&read_tree(t)?)),
        (None, Some(s)) => Ok(SeifertMatrix::parse_rows(s)?),
        _ => Err(usage("give exactly one of --tree or --seifert")),
    }
}

/// An existing file is read in the tree text format, anything else is
/// parsed inline.
fn read_tree(arg: &str) -> CmdResult<PlumbingTree> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {arg}: {e}")))?;
        Ok(text.parse()?)
    } else {
        Ok(PlumbingTree::parse_inline(arg)?)
    }
}

impl FamilyArgs {
    fn load(&self) -> CmdResult<SalemBoydFamily> {
        if let Some(path) = &self.family {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let fam: SalemBoydFamily =
                serde_json::from_str(&text).map_err(|e| usage(format!("bad family descriptor: {e}")))?;
            // Re-validate: deserialization bypasses the constructor.
            let r = self.r.or(fam.r());
            return Ok(SalemBoydFamily::new(fam.p().clone(), self.sign.unwrap_or(fam.plumb_sign()), r)?);
        }
        let sign = self.sign.ok_or_else(|| usage("--sign is required"))?;
        if let Some(p) = &self.p {
            return Ok(SalemBoydFamily::new(p.clone(), sign, self.r)?);
        }
        let s = surface_matrix(self.tree.as_deref(), self.seifert.as_deref())
            .map_err(|_| usage("give one of --family, --P, --tree or --seifert"))?;
        let fam = SalemBoydFamily::from_seifert(&s, sign)?;
        match self.r {
            Some(r) => Ok(SalemBoydFamily::new(fam.p().clone(), sign, Some(r))?),
            None => Ok(fam),
        }
    }
}

impl RangeArgs {
    fn ns(&self) -> CmdResult<Vec<usize>> {
        match (self.n, self.n_max) {
            (Some(0), _) | (_, Some(0)) => Err(usage("n must be >= 1")),
            (Some(n), None) => Ok(vec![n]),
            (None, Some(m)) => Ok((1..=m).collect()),
            _ => Err(usage("give --n or --n-max")),
        }
    }
}

fn check_tol(tol: f64) -> CmdResult<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--tol must be positive, got {tol}")))
    }
}

fn parse_ints(s: &str) -> CmdResult<Vec<BigInt>> {
    s.split(',')
        .map(|tok| tok.trim().parse::<BigInt>().map_err(|_| usage(format!("bad integer {tok:?}"))))
        .collect()
}

fn kind_name(c: &hopfsalem::rootscope::Classification) -> CmdResult<String> {
    Ok(serde_json::to_value(c.kind).expect("serializable").as_str().unwrap_or_default().to_owned())
}

fn join(v: &[BigInt], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads are serializable");
    s.push('\n');
    s
}

fn poly_csv(p: &IntPoly) -> String {
    let mut s = String::from("power,coeff\n");
    for (k, c) in p.coeffs().iter().enumerate() {
        s.push_str(&format!("{k},{c}\n"));
    }
    s
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

fn csv_err(e: csv::Error) -> Failure {
    usage(format!("csv: {e}"))
}

fn finish(w: csv::Writer<Vec<u8>>) -> CmdResult<String> {
    let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| usage(format!("csv: {e}")))
}
