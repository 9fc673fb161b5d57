//! JSON catalog files and the command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::braid::{admissible_bound, B3Rep};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Cyclotomic, Matrix, Rational, RationalTuple};
use crate::family::{
    assemble_member, build_family_member, certify, summand_list, Certificate, FamilySpec,
};
use crate::gamma0::{westbury_quiver, SummandLabel, Word};
use crate::quiver::{local_quiver, sigma_quiver, DimVec, Quiver};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const WORDLIST_ENV: &str = "BRAIDFORGE_WORDLIST";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CERTIFICATION: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: String,
    pub spec: FamilySpec,
    pub representation: B3Record,
    pub generated_at: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B3Record {
    pub n: usize,
    pub mu: RationalTuple,
    pub sigma1: Matrix,
    pub sigma2: Matrix,
    pub certificate: Certificate,
}

impl B3Record {
    pub fn new(b3: &B3Rep, certificate: Certificate) -> Self {
        Self {
            n: b3.n(),
            mu: RationalTuple(b3.mu.clone()),
            sigma1: b3.s1.clone(),
            sigma2: b3.s2.clone(),
            certificate,
        }
    }

    pub fn to_b3(&self) -> Result<B3Rep> {
        if self.sigma1.shape() != (self.n, self.n) {
            return Err(Error::ShapeMismatch(format!(
                "sigma1 is {}x{}, declared n = {}",
                self.sigma1.rows(),
                self.sigma1.cols(),
                self.n
            )));
        }
        B3Rep::new(self.sigma1.clone(), self.sigma2.clone(), self.mu.0.clone())
    }
}

impl CatalogFile {
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Default fingerprint words, extended by a comma-separated list in
/// `BRAIDFORGE_WORDLIST` when set.
pub fn configured_words() -> Result<Vec<Word>> {
    let mut words = Word::defaults();
    if let Ok(extra) = std::env::var(WORDLIST_ENV) {
        words.extend(Word::parse_list(&extra)?);
    }
    Ok(words)
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Exact irreducible B3 representations from quiver deformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, certify and write one family member.
    Gen(GenArgs),
    /// Re-certify a catalog file.
    Verify { path: PathBuf },
    /// Quiver calculators.
    #[command(subcommand)]
    Quiver(QuiverCommand),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated rationals, e.g. `2,3/2`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub lambdas: String,
    /// Comma-separated scalars such as `1`, `2/3` or `1+w`; defaults to all 1.
    #[arg(long, allow_hyphen_values = true)]
    pub arrow_scalars: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub mu: String,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Glue even when the arrow labels do not give a simple chain representation.
    #[arg(long)]
    pub no_simplicity_check: bool,
}

#[derive(Debug, Subcommand)]
pub enum QuiverCommand {
    /// Euler form of two dimension vectors (a1,a2,b1,b2,b3).
    Euler {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Local quiver of summands such as `S11,T1:2,T2:3`.
    Local {
        #[arg(long)]
        summands: String,
    },
    /// Chain quiver carrying the n-dimensional family.
    Sigma {
        #[arg(long)]
        n: usize,
    },
    /// 2 - chi(alpha, alpha).
    Admissible {
        #[arg(long)]
        alpha: String,
    },
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    split_list(s).map(parse_rational).collect()
}

pub fn parse_scalars(s: &str) -> Result<Vec<Cyclotomic>> {
    split_list(s).map(str::parse).collect()
}

pub fn parse_dimvec(s: &str) -> Result<DimVec> {
    let v: DimVec = split_list(s)
        .map(|x| {
            x.parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid dimension {x:?}")))
        })
        .collect::<Result<_>>()?;
    if v.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: v.len(),
        });
    }
    Ok(v)
}

/// Parses arguments and runs the command; returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(&args, out, err),
        Command::Verify { path } => cmd_verify(&path, out),
        Command::Quiver(q) => cmd_quiver(&q, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

pub fn spec_from_args(args: &GenArgs) -> Result<FamilySpec> {
    let lambdas = parse_rationals(&args.lambdas)?;
    let mu = parse_rational(&args.mu)?;
    let mut spec = FamilySpec::new(args.n, lambdas, mu);
    if let Some(s) = &args.arrow_scalars {
        spec.arrow_scalars = parse_scalars(s)?;
    }
    Ok(spec)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let spec = spec_from_args(args)?;
    let words = configured_words()?;
    // Invalid summands are spec errors; only a singular glued base change
    // counts as a certification failure.
    summand_list(spec.n, &spec.lambdas)?;
    let member = if args.no_simplicity_check {
        if spec.mu == Rational::from_integer(0.into()) {
            return Err(Error::ZeroMu);
        }
        assemble_member(
            spec.n,
            &spec.lambdas,
            &spec.arrow_scalars,
            &Cyclotomic::one(),
        )
    } else {
        build_family_member(&spec)
    };
    let member = match member {
        Ok(m) => m,
        Err(Error::DegenerateBaseChange) => {
            writeln!(err, "certification failed: glued base change is singular").map_err(io_err)?;
            return Ok(EXIT_CERTIFICATION);
        }
        Err(e) => return Err(e),
    };
    let certified = certify(&member, &spec.mu, &words);
    let Some(b3) = certified.b3 else {
        writeln!(err, "certification failed: no braid group lift").map_err(io_err)?;
        return Ok(EXIT_CERTIFICATION);
    };
    let accepted = certified.certificate.accepted();
    let catalog = CatalogFile {
        version: VERSION.to_string(),
        spec,
        representation: B3Record::new(&b3, certified.certificate),
        generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    let text = catalog.emit();
    match &args.out {
        Some(path) => {
            write_atomic(path, &text).map_err(io_err)?;
            writeln!(out, "wrote {}", path.display()).map_err(io_err)?;
        }
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    if accepted {
        Ok(EXIT_OK)
    } else {
        let c = &catalog.representation.certificate;
        writeln!(
            err,
            "certification failed: braid_ok={} irreducible={} central_ok={}",
            c.braid_ok, c.irreducible, c.central_ok
        )
        .map_err(io_err)?;
        Ok(EXIT_CERTIFICATION)
    }
}

/// Outcome of one re-certification check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Independently re-certifies a parsed catalog.
pub fn verify_catalog(cat: &CatalogFile) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };
    let b3 = match cat.representation.to_b3() {
        Ok(b) => b,
        Err(e) => {
            push("shape", false, e.to_string());
            return checks;
        }
    };
    push("shape", true, format!("n = {}", b3.n()));
    push(
        "braid_relation",
        b3.check_braid(),
        "s1 s2 s1 = s2 s1 s2".into(),
    );
    let expected = b3.expected_central();
    match b3.central_character() {
        Ok(c) => push(
            "central_character",
            c == expected,
            format!("(s1 s2)^3 = {c}, mu^6 = {expected}"),
        ),
        Err(e) => push("central_character", false, e.to_string()),
    }
    let g = b3.recover_gamma0();
    push(
        "order_relations",
        g.satisfies_relations(),
        "U^2 = I, V^3 = I".into(),
    );
    let irreducible = g.is_irreducible();
    push("irreducible", irreducible, "Burnside span is n^2".into());

    let stored = &cat.representation.certificate.fingerprint;
    let mut words = Word::defaults();
    words.extend(configured_words().unwrap_or_default().into_iter().skip(6));
    if stored.0.len() == words.len() {
        let fp = g.fingerprint_with(&words);
        push(
            "fingerprint",
            &fp == stored,
            format!("{} traces", fp.0.len()),
        );
    } else {
        let fp = g.fingerprint_with(&Word::defaults());
        let same = stored.0.len() >= 6 && stored.0[..6] == fp.0[..];
        push(
            "fingerprint",
            same,
            "default words only; word list differs".into(),
        );
    }

    let cert = &cat.representation.certificate;
    let consistent = cert.braid_ok == b3.check_braid()
        && cert.irreducible == irreducible
        && cert.parameter_count == cat.spec.parameter_count();
    push(
        "certificate_consistent",
        consistent,
        "stored flags match recomputation".into(),
    );

    let rebuilt = build_family_member(&cat.spec)
        .or_else(|_| {
            assemble_member(
                cat.spec.n,
                &cat.spec.lambdas,
                &cat.spec.arrow_scalars,
                &Cyclotomic::one(),
            )
        })
        .and_then(|r| r.to_gamma0())
        .and_then(|g| crate::braid::lift_to_b3(&g, &cat.spec.mu));
    match rebuilt {
        Ok(r) => push(
            "matches_spec",
            r == b3,
            "rebuilt from the recorded spec".into(),
        ),
        Err(e) => push("matches_spec", false, e.to_string()),
    }
    checks
}

pub fn cmd_verify(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let cat = CatalogFile::parse(&text)?;
    let checks = verify_catalog(&cat);
    for c in &checks {
        writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .map_err(io_err)?;
    }
    Ok(if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_CERTIFICATION
    })
}

#[derive(Serialize)]
struct SigmaReport {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    parameter_arrows: Vec<usize>,
    family_dimension: i64,
}

pub fn cmd_quiver(cmd: &QuiverCommand, out: &mut dyn Write) -> Result<i32> {
    let w = westbury_quiver();
    let text = match cmd {
        QuiverCommand::Euler { alpha, beta } => w
            .euler_form(&parse_dimvec(alpha)?, &parse_dimvec(beta)?)?
            .to_string(),
        QuiverCommand::Admissible { alpha } => admissible_bound(&parse_dimvec(alpha)?)?.to_string(),
        QuiverCommand::Local { summands } => {
            let dims = split_list(summands)
                .map(|s| Ok(s.parse::<SummandLabel>()?.build()?.dim().clone()))
                .collect::<Result<Vec<_>>>()?;
            let delta: Quiver = local_quiver(&w, &dims)?;
            serde_json::to_string(&delta).expect("quiver serializes")
        }
        QuiverCommand::Sigma { n } => {
            let s = sigma_quiver(*n)?;
            serde_json::to_string(&SigmaReport {
                vertices: s.quiver.vertex_count(),
                arrows: s.quiver.arrows().to_vec(),
                parameter_arrows: s.parameter_arrows.clone(),
                family_dimension: s.quiver.family_dimension(),
            })
            .expect("report serializes")
        }
    };
    writeln!(out, "{text}").map_err(io_err)?;
    Ok(EXIT_OK)
}
