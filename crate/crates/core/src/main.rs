//! Command-line front end: classification runs, verification suites, point
//! evaluation, seeded domain sampling, and plot-data emission.
//!
//! JSON outputs carry `"schema": "extremal-disc/1"` and print to stdout;
//! CSV outputs start with a header row; diagnostics go to stderr. Exit
//! codes: 0 for a successful run (any classification verdict, passing
//! verification), 1 for internal errors or failed verification, 2 for
//! invalid specs and parse errors.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use extremal_disc::classify::{
    admissible_omega_set, classify_e, classify_g2, reinhardt_classify, Classification, Verdict,
};
use extremal_disc::complex::{c, cr, unit, BlaschkeSpec, MoebiusSpec, I, ONE, ZERO};
use extremal_disc::domains::{sample, sample_coords, DomainTag, KExp, PointE, PointG2, SamplePoint};
use extremal_disc::error::{Error, Result};
use extremal_disc::geodesics::{EFormVAZ, EGeodesicSpec, G2GeodesicSpec};
use extremal_disc::leftinv::{phi_omega, phi_tilde, psi_omega, LeftInverseSpec, RIIMapSpec};
use extremal_disc::oracle::{distinct_maps, lambda_grid, verify_into_disc, verify_left_inverse};
use extremal_disc::selfmap::SelfMapSpec;

const SCHEMA: &str = "extremal-disc/1";

#[derive(Parser)]
#[command(
    name = "extremal-disc",
    version,
    about = "Complex geodesics and left inverses in the disc, bidisc, ball, \
             symmetrized bidisc, tetrablock, and 2x2 matrix ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide left-inverse uniqueness for a geodesic spec.
    Classify {
        #[command(subcommand)]
        target: ClassifyTarget,
    },
    /// Run a verification oracle and report pass or fail.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Evaluate a functional or geodesic at one point.
    Eval {
        #[command(subcommand)]
        what: EvalWhat,
    },
    /// Draw seeded samples from a domain as CSV.
    Sample(SampleArgs),
    /// Emit plot data as CSV.
    Plot {
        #[command(subcommand)]
        what: PlotWhat,
    },
}

#[derive(Subcommand)]
enum ClassifyTarget {
    /// Geodesic of the symmetrized bidisc.
    G2(ClassifyG2),
    /// Geodesic of the tetrablock.
    E(ClassifyE),
    /// The geodesic (lambda, 0) of the Reinhardt model |z| + b|w|^k < 1.
    Reinhardt(ClassifyReinhardt),
}

#[derive(Args)]
struct ClassifyG2 {
    /// Geodesic form: blaschke or auto.
    #[arg(long)]
    form: String,
    /// Center of the symmetric Blaschke form, or automorphism center (auto).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Automorphism multiplier (auto form only).
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
}

#[derive(Args)]
struct ClassifyE {
    /// Geodesic form: form0 or formva.
    #[arg(long)]
    form: String,
    /// Unimodular first phase (form0).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    omega1: String,
    /// Unimodular second phase (form0).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    omega2: String,
    /// Contact constant C in [0, 1] (form0).
    #[arg(long)]
    c: Option<f64>,
    /// Disc self-map with psi(0) = -C (form0); see selfmap grammar in help.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// Royal distance parameter beta in (0, 1) (formva).
    #[arg(long)]
    beta: Option<f64>,
    /// Unitary coefficients a,b,c,d; tokens like sqrt0.2 and expi(pi/3) work.
    #[arg(long, default_value = "1,0,0,1", allow_hyphen_values = true)]
    abcd: String,
    /// Inner part: identity, 0, strict, or strict:<selfmap> (formva).
    #[arg(long, default_value = "identity", allow_hyphen_values = true)]
    z: String,
}

#[derive(Args)]
struct ClassifyReinhardt {
    /// Exponent k: a positive integer or inf.
    #[arg(long)]
    k: String,
    /// Coefficient b > 0.
    #[arg(long)]
    b: f64,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Check that F composed with the geodesic f is the identity on a grid.
    Leftinv {
        /// Left-inverse spec, e.g. phitilde:1 or json:{...}.
        #[arg(long = "F")]
        big_f: String,
        /// Geodesic spec, e.g. formva:beta=0.5,z=0 or blaschke:alpha=0.3.
        #[arg(long = "f")]
        geodesic: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol_identity: f64,
    },
    /// Check that F maps domain samples into the closed unit disc.
    Range {
        #[arg(long = "F")]
        big_f: String,
        /// Domain tag: disc, bidisc, ball2, g2, tetrablock, rii,
        /// or reinhardt:k=2,b=1.
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Accept values on the closed disc boundary.
        #[arg(long)]
        closed: bool,
    },
    /// Check that two maps differ by more than the distinctness tolerance.
    Distinct {
        #[arg(long = "F")]
        big_f: String,
        #[arg(long = "G")]
        other: String,
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-3)]
        tol_distinct: f64,
    },
}

#[derive(Subcommand)]
enum EvalWhat {
    /// Slope functional (2p - omega s) / (2 - conj(omega) s).
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Slope functional (omega x3 - x1) / (omega x2 - 1).
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        #[arg(long, allow_hyphen_values = true)]
        x3: String,
        #[arg(long)]
        swapped: bool,
    },
    /// Square-root functional: the in-disc root t of
    /// omega x2 t^2 - (1 + omega x3) t + x1 = 0.
    Phitilde {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        #[arg(long, allow_hyphen_values = true)]
        x3: String,
        #[arg(long)]
        swapped: bool,
    },
    /// A geodesic spec at lambda.
    Geodesic {
        #[arg(long = "f")]
        geodesic: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// A left-inverse spec at the geodesic point f(lambda).
    Witness {
        #[arg(long = "F")]
        big_f: String,
        #[arg(long = "f")]
        geodesic: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Args)]
struct SampleArgs {
    /// Domain tag: disc, bidisc, ball2, g2, tetrablock, rii,
    /// or reinhardt:k=2,b=1.
    #[arg(long)]
    domain: String,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum PlotWhat {
    /// Admissible slope phases for the automorphism-form geodesic, one row
    /// per refined arc representative.
    AdmissibleOmega {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 4096)]
        omega_grid: usize,
    },
    /// Trace of a left inverse along the geodesic's radial grid.
    LeftinvTrace {
        #[arg(long = "F")]
        big_f: String,
        #[arg(long = "f")]
        geodesic: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_) | Error::DomainError(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Classify { target } => run_classify(target),
        Command::Verify { check } => run_verify(check),
        Command::Eval { what } => run_eval(what),
        Command::Sample(args) => run_sample(args),
        Command::Plot { what } => run_plot(what),
    }
}

// ---------------------------------------------------------------------------
// scalar token parsing

/// Real token: a decimal float, `pi`, or `sqrt<x>` / `sqrt(<x>)`, each with
/// an optional leading minus.
fn parse_real(tok: &str) -> Result<f64> {
    let t = tok.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let v = if let Some(rest) = t.strip_prefix("sqrt") {
        let inner = rest
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(rest);
        let x: f64 = inner
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("cannot parse sqrt argument in {tok:?}")))?;
        if x < 0.0 {
            return Err(Error::InvalidSpec(format!("sqrt of negative number in {tok:?}")));
        }
        x.sqrt()
    } else if t == "pi" {
        PI
    } else {
        t.parse()
            .map_err(|_| Error::InvalidSpec(format!("cannot parse real scalar from {tok:?}")))?
    };
    Ok(if neg { -v } else { v })
}

/// Angle for expi(...): `pi`, `2pi`, `pi/3`, `2pi/5`, or a plain float,
/// with an optional leading minus.
fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let atom = |u: &str| -> Result<f64> {
        if u == "pi" {
            Ok(PI)
        } else if let Some(k) = u.strip_suffix("pi") {
            let m: f64 = k
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse angle from {s:?}")))?;
            Ok(m * PI)
        } else {
            u.parse()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse angle from {s:?}")))
        }
    };
    let v = match t.split_once('/') {
        Some((num, den)) => {
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse angle from {s:?}")))?;
            if d == 0.0 {
                return Err(Error::InvalidSpec("zero denominator in angle".into()));
            }
            atom(num.trim())? / d
        }
        None => atom(t)?,
    };
    Ok(if neg { -v } else { v })
}

/// Complex token: real tokens, `i` forms (`0.5i`, `1+2i`, `-sqrt0.8i`), and
/// unit-circle tokens `expi(<angle>)` with an optional real multiplier.
fn parse_complex(tok: &str) -> Result<Complex64> {
    let t = tok.trim();
    if t.is_empty() {
        return Err(Error::InvalidSpec("empty complex scalar".into()));
    }
    if let Some(idx) = t.find("expi(") {
        let inner = t
            .strip_suffix(')')
            .map(|whole| &whole[idx + 5..])
            .ok_or_else(|| Error::InvalidSpec(format!("unclosed expi(...) in {tok:?}")))?;
        let phase = unit(parse_angle(inner)?);
        let pre = &t[..idx];
        let m = if pre.is_empty() {
            1.0
        } else if pre == "-" {
            -1.0
        } else if let Some(p) = pre.strip_suffix('*') {
            parse_real(p)?
        } else {
            return Err(Error::InvalidSpec(format!(
                "expected [<real>*]expi(<angle>), got {tok:?}"
            )));
        };
        return Ok(cr(m) * phase);
    }
    if t == "i" {
        return Ok(I);
    }
    if t == "-i" {
        return Ok(-I);
    }
    if let Ok(r) = parse_real(t) {
        return Ok(cr(r));
    }
    if let Some(rest) = t.strip_suffix('i') {
        let bytes = rest.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let ch = bytes[k] as char;
            if (ch == '+' || ch == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        if let Some(k) = split {
            let re = parse_real(&rest[..k])?;
            let sign = if bytes[k] as char == '-' { -1.0 } else { 1.0 };
            let rest_im = &rest[k + 1..];
            let im = if rest_im.is_empty() { 1.0 } else { parse_real(rest_im)? };
            return Ok(c(re, sign * im));
        }
        let im = if rest.is_empty() { 1.0 } else { parse_real(rest)? };
        return Ok(c(0.0, im));
    }
    Err(Error::InvalidSpec(format!("cannot parse complex scalar from {tok:?}")))
}

// ---------------------------------------------------------------------------
// spec mini-language

/// Self-map grammar: `const:<c>`, `json:{...}`, or `;`-separated pairs
/// `scale=<c>;zero_order=<n>;factors=<c>|<c>|...`.
fn parse_selfmap(s: &str) -> Result<SelfMapSpec> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("json:") {
        return serde_json::from_str(rest)
            .map_err(|e| Error::InvalidSpec(format!("bad selfmap json: {e}")));
    }
    if let Some(rest) = t.strip_prefix("const:") {
        return SelfMapSpec::constant(parse_complex(rest)?);
    }
    let mut scale = ONE;
    let mut zero_order = 0u32;
    let mut factors = Vec::new();
    for pair in t.split(';').filter(|p| !p.trim().is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidSpec(format!("expected key=value in selfmap, got {pair:?}")))?;
        match k.trim() {
            "scale" => scale = parse_complex(v)?,
            "zero_order" => {
                zero_order = v.trim().parse().map_err(|_| {
                    Error::InvalidSpec(format!("bad zero_order {v:?} in selfmap"))
                })?
            }
            "factors" => {
                factors = v
                    .split('|')
                    .filter(|f| !f.trim().is_empty())
                    .map(parse_complex)
                    .collect::<Result<Vec<_>>>()?
            }
            other => {
                return Err(Error::InvalidSpec(format!("unknown selfmap key {other:?}")));
            }
        }
    }
    SelfMapSpec::new(scale, zero_order, factors)
}

fn parse_z(s: &str) -> Result<EFormVAZ> {
    let t = s.trim();
    match t {
        "identity" | "id" => Ok(EFormVAZ::Identity),
        "0" | "strict" => Ok(EFormVAZ::Strict { w: SelfMapSpec::constant(ZERO)? }),
        _ => {
            if let Some(rest) = t.strip_prefix("strict:") {
                Ok(EFormVAZ::Strict { w: parse_selfmap(rest)? })
            } else {
                Err(Error::InvalidSpec(format!(
                    "inner part must be identity, 0, strict, or strict:<selfmap>, got {t:?}"
                )))
            }
        }
    }
}

fn parse_abcd(s: &str, sep: char) -> Result<[Complex64; 4]> {
    let parts: Vec<Complex64> =
        s.split(sep).map(parse_complex).collect::<Result<Vec<_>>>()?;
    if parts.len() != 4 {
        return Err(Error::InvalidSpec(format!(
            "expected four coefficients a,b,c,d, got {}",
            parts.len()
        )));
    }
    Ok([parts[0], parts[1], parts[2], parts[3]])
}

fn parse_kexp(s: &str) -> Result<KExp> {
    let t = s.trim();
    if t == "inf" || t == "infinity" {
        return Ok(KExp::Infinity);
    }
    let k: u32 = t
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("exponent must be a positive integer or inf, got {t:?}")))?;
    Ok(KExp::Finite(k))
}

fn parse_domain(s: &str) -> Result<DomainTag> {
    let t = s.trim();
    let tag = match t {
        "disc" => DomainTag::Disc,
        "bidisc" => DomainTag::Bidisc,
        "ball2" | "ball" => DomainTag::Ball2,
        "g2" => DomainTag::G2,
        "tetrablock" | "e" => DomainTag::Tetrablock,
        "rii" => DomainTag::Rii,
        _ => {
            let rest = t.strip_prefix("reinhardt:").ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "unknown domain {t:?} (expected disc, bidisc, ball2, g2, tetrablock, rii, \
                     or reinhardt:k=<k>,b=<b>)"
                ))
            })?;
            let mut k = None;
            let mut b = None;
            for pair in rest.split(',').filter(|p| !p.trim().is_empty()) {
                let (key, v) = pair.split_once('=').ok_or_else(|| {
                    Error::InvalidSpec(format!("expected key=value in domain, got {pair:?}"))
                })?;
                match key.trim() {
                    "k" => k = Some(parse_kexp(v)?),
                    "b" => {
                        b = Some(v.trim().parse::<f64>().map_err(|_| {
                            Error::InvalidSpec(format!("bad coefficient b {v:?}"))
                        })?)
                    }
                    other => {
                        return Err(Error::InvalidSpec(format!("unknown domain key {other:?}")))
                    }
                }
            }
            let tag = DomainTag::ReinhardtModel {
                k: k.ok_or_else(|| Error::InvalidSpec("reinhardt domain needs k=".into()))?,
                b: b.ok_or_else(|| Error::InvalidSpec("reinhardt domain needs b=".into()))?,
            };
            tag.validate()?;
            tag
        }
    };
    Ok(tag)
}

/// Key=value pairs split on commas, with a positional head allowed first.
fn split_pairs(s: &str) -> (Vec<String>, Vec<(String, String)>) {
    let mut positional = Vec::new();
    let mut pairs = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        match part.split_once('=') {
            Some((k, v)) => pairs.push((k.trim().to_string(), v.trim().to_string())),
            None => positional.push(part.trim().to_string()),
        }
    }
    (positional, pairs)
}

/// Left-inverse grammar, `family:args`:
/// `psi:<omega>[,scale=<c>]`, `phi:<omega>[,swapped][,scale=<c>]`,
/// `phitilde:<omega>[,swapped][,twist=<c>]`, `eproj:<coord>[,scale=<c>]`,
/// `ballgamma:<gamma>`, `reinhardt:beta=<f>,k=<k>`, `fh:beta=<f>[,swapped]`,
/// or `json:{...}` for the full serialized form.
fn parse_witness(s: &str) -> Result<LeftInverseSpec> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("json:") {
        let w: LeftInverseSpec = serde_json::from_str(rest)
            .map_err(|e| Error::InvalidSpec(format!("bad left-inverse json: {e}")))?;
        return Ok(w);
    }
    let (head, rest) = t.split_once(':').unwrap_or((t, ""));
    let (positional, pairs) = split_pairs(rest);
    let flag = |name: &str| positional.iter().any(|p| p == name);
    let get = |name: &str| pairs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str());
    let first = || -> Result<Complex64> {
        positional
            .first()
            .map(|p| parse_complex(p))
            .transpose()?
            .ok_or_else(|| Error::InvalidSpec(format!("{head} needs a leading scalar argument")))
    };
    match head {
        "psi" => Ok(LeftInverseSpec::PsiOmega {
            omega: first()?,
            scale: get("scale").map(parse_complex).transpose()?.unwrap_or(ONE),
            post: None,
        }),
        "phi" => Ok(LeftInverseSpec::PhiOmega {
            omega: first()?,
            swapped: flag("swapped"),
            scale: get("scale").map(parse_complex).transpose()?.unwrap_or(ONE),
            post: None,
        }),
        "phitilde" => Ok(LeftInverseSpec::PhiTilde {
            omega: first()?,
            swapped: flag("swapped"),
            twist: get("twist").map(parse_complex).transpose()?,
        }),
        "eproj" => {
            let coord: u8 = positional
                .first()
                .ok_or_else(|| Error::InvalidSpec("eproj needs a coordinate index".into()))?
                .parse()
                .map_err(|_| Error::InvalidSpec("bad eproj coordinate".into()))?;
            Ok(LeftInverseSpec::EProj {
                coord,
                scale: get("scale").map(parse_complex).transpose()?.unwrap_or(ONE),
            })
        }
        "ballgamma" => Ok(LeftInverseSpec::BallGamma { gamma: first()? }),
        "reinhardt" => {
            let beta = parse_real(
                get("beta").ok_or_else(|| Error::InvalidSpec("reinhardt needs beta=".into()))?,
            )?;
            let k = parse_kexp(
                get("k").ok_or_else(|| Error::InvalidSpec("reinhardt needs k=".into()))?,
            )?;
            Ok(LeftInverseSpec::ReinhardtBeta { beta, k })
        }
        "fh" => {
            let beta = parse_real(
                get("beta").ok_or_else(|| Error::InvalidSpec("fh needs beta=".into()))?,
            )?;
            Ok(LeftInverseSpec::TetraFh {
                beta,
                h: RIIMapSpec::canonical(beta)?,
                swapped: flag("swapped"),
                twist: get("twist").map(parse_complex).transpose()?,
            })
        }
        other => Err(Error::InvalidSpec(format!("unknown left-inverse family {other:?}"))),
    }
}

/// Parsed geodesic plus the domain its points live in.
enum GeoSpec {
    G2(G2GeodesicSpec),
    E(EGeodesicSpec),
    Bidisc(SelfMapSpec),
    Ball,
    ReinhardtCurve,
}

impl GeoSpec {
    fn validate(&self) -> Result<()> {
        match self {
            GeoSpec::G2(spec) => spec.validate(),
            GeoSpec::E(spec) => spec.validate(),
            GeoSpec::Bidisc(w) => w.validate(),
            GeoSpec::Ball | GeoSpec::ReinhardtCurve => Ok(()),
        }
    }

    fn eval(&self, lambda: Complex64) -> Result<SamplePoint> {
        match self {
            GeoSpec::G2(spec) => {
                let pt = spec.eval(lambda)?;
                Ok(SamplePoint::G2 { s: pt.s, p: pt.p })
            }
            GeoSpec::E(spec) => {
                let pt = spec.eval(lambda)?;
                Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
            }
            GeoSpec::Bidisc(w) => Ok(SamplePoint::Pair { z1: lambda, z2: w.eval(lambda) }),
            GeoSpec::Ball | GeoSpec::ReinhardtCurve => {
                Ok(SamplePoint::Pair { z1: lambda, z2: ZERO })
            }
        }
    }
}

/// Geodesic grammar, `form:args`:
/// `blaschke:alpha=<c>` (or `blaschke:<c>`), `auto:tau=<c>,alpha=<c>`,
/// `form0:omega1=<c>,omega2=<c>,c=<f>,psi=<selfmap>`,
/// `formva:beta=<f>[,abcd=<c>;<c>;<c>;<c>][,z=<inner>]`,
/// `bidisc:<selfmap>`, `ball`, `reinhardt`.
fn parse_geodesic(s: &str) -> Result<GeoSpec> {
    let t = s.trim();
    let (head, rest) = t.split_once(':').unwrap_or((t, ""));
    let (positional, pairs) = split_pairs(rest);
    let get = |name: &str| pairs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str());
    match head {
        "blaschke" => {
            let tok = get("alpha")
                .map(str::to_string)
                .or_else(|| positional.first().cloned())
                .ok_or_else(|| Error::InvalidSpec("blaschke needs alpha".into()))?;
            Ok(GeoSpec::G2(G2GeodesicSpec::BlaschkeForm {
                alpha: BlaschkeSpec::new(parse_complex(&tok)?)?,
            }))
        }
        "auto" => {
            let tau =
                parse_complex(get("tau").ok_or_else(|| Error::InvalidSpec("auto needs tau=".into()))?)?;
            let alpha = parse_complex(
                get("alpha").ok_or_else(|| Error::InvalidSpec("auto needs alpha=".into()))?,
            )?;
            Ok(GeoSpec::G2(G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(tau, alpha)? }))
        }
        "form0" => {
            let omega1 = get("omega1").map(parse_complex).transpose()?.unwrap_or(ONE);
            let omega2 = get("omega2").map(parse_complex).transpose()?.unwrap_or(ONE);
            let c: f64 = get("c")
                .ok_or_else(|| Error::InvalidSpec("form0 needs c=".into()))?
                .parse()
                .map_err(|_| Error::InvalidSpec("bad form0 contact constant".into()))?;
            let psi =
                parse_selfmap(get("psi").ok_or_else(|| Error::InvalidSpec("form0 needs psi=".into()))?)?;
            Ok(GeoSpec::E(EGeodesicSpec::Form0 { omega1, omega2, c, psi }))
        }
        "formva" => {
            let beta = parse_real(
                get("beta").ok_or_else(|| Error::InvalidSpec("formva needs beta=".into()))?,
            )?;
            let [a, b, cc, d] = match get("abcd") {
                Some(v) => parse_abcd(v, ';')?,
                None => [ONE, ZERO, ZERO, ONE],
            };
            let z = parse_z(get("z").unwrap_or("0"))?;
            Ok(GeoSpec::E(EGeodesicSpec::FormVa { beta, a, b, c: cc, d, z }))
        }
        "bidisc" => Ok(GeoSpec::Bidisc(parse_selfmap(rest)?)),
        "ball" => Ok(GeoSpec::Ball),
        "reinhardt" => Ok(GeoSpec::ReinhardtCurve),
        other => Err(Error::InvalidSpec(format!("unknown geodesic form {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// command handlers

fn print_flat(mut value: serde_json::Value, command: &str, extra: &[(&str, serde_json::Value)]) {
    let obj = value.as_object_mut().expect("flat JSON output must be an object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    for (k, v) in extra {
        obj.insert((*k).into(), v.clone());
    }
    println!("{}", serde_json::Value::Object(obj.clone()));
}

fn emit_classification(domain: &str, cl: &Classification) -> Result<u8> {
    let value = serde_json::to_value(cl)
        .map_err(|e| Error::Internal(format!("classification serialization failed: {e}")))?;
    print_flat(value, "classify", &[("domain", json!(domain))]);
    Ok(if matches!(cl.verdict, Verdict::InvalidSpec { .. }) { 2 } else { 0 })
}

fn run_classify(target: ClassifyTarget) -> Result<u8> {
    match target {
        ClassifyTarget::G2(args) => {
            let spec = match args.form.as_str() {
                "blaschke" => {
                    let alpha = parse_complex(args.alpha.as_deref().ok_or_else(|| {
                        Error::InvalidSpec("blaschke form needs --alpha".into())
                    })?)?;
                    G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(alpha)? }
                }
                "auto" => {
                    let tau = parse_complex(
                        args.tau
                            .as_deref()
                            .ok_or_else(|| Error::InvalidSpec("auto form needs --tau".into()))?,
                    )?;
                    let alpha = parse_complex(
                        args.alpha
                            .as_deref()
                            .ok_or_else(|| Error::InvalidSpec("auto form needs --alpha".into()))?,
                    )?;
                    G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(tau, alpha)? }
                }
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown g2 form {other:?} (expected blaschke or auto)"
                    )))
                }
            };
            emit_classification("g2", &classify_g2(&spec)?)
        }
        ClassifyTarget::E(args) => {
            let spec = match args.form.as_str() {
                "form0" => {
                    let c = args
                        .c
                        .ok_or_else(|| Error::InvalidSpec("form0 needs --c".into()))?;
                    let psi = parse_selfmap(
                        args.psi
                            .as_deref()
                            .ok_or_else(|| Error::InvalidSpec("form0 needs --psi".into()))?,
                    )?;
                    EGeodesicSpec::Form0 {
                        omega1: parse_complex(&args.omega1)?,
                        omega2: parse_complex(&args.omega2)?,
                        c,
                        psi,
                    }
                }
                "formva" => {
                    let beta = args
                        .beta
                        .ok_or_else(|| Error::InvalidSpec("formva needs --beta".into()))?;
                    let [a, b, cc, d] = parse_abcd(&args.abcd, ',')?;
                    EGeodesicSpec::FormVa { beta, a, b, c: cc, d, z: parse_z(&args.z)? }
                }
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown tetrablock form {other:?} (expected form0 or formva)"
                    )))
                }
            };
            emit_classification("tetrablock", &classify_e(&spec)?)
        }
        ClassifyTarget::Reinhardt(args) => {
            let k = parse_kexp(&args.k)?;
            emit_classification("reinhardt", &reinhardt_classify(k, args.b)?)
        }
    }
}

fn run_verify(check: VerifyCheck) -> Result<u8> {
    match check {
        VerifyCheck::Leftinv { big_f, geodesic, grid, tol_identity } => {
            let geo = parse_geodesic(&geodesic)?;
            geo.validate()?;
            let w = parse_witness(&big_f)?;
            w.validate()?;
            let report = verify_left_inverse(
                |lam| geo.eval(lam),
                |pt: &SamplePoint| w.eval(pt),
                grid,
                tol_identity,
            )?;
            let value = serde_json::to_value(&report)
                .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
            print_flat(value, "verify", &[("check", json!("leftinv"))]);
            Ok(if report.pass { 0 } else { 1 })
        }
        VerifyCheck::Range { big_f, domain, samples, seed, closed } => {
            let tag = parse_domain(&domain)?;
            let w = parse_witness(&big_f)?;
            w.validate()?;
            let report =
                verify_into_disc(|pt: &SamplePoint| w.eval(pt), &tag, samples, seed, closed)?;
            let value = serde_json::to_value(&report)
                .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
            print_flat(value, "verify", &[("check", json!("range"))]);
            Ok(if report.pass { 0 } else { 1 })
        }
        VerifyCheck::Distinct { big_f, other, domain, samples, seed, tol_distinct } => {
            let tag = parse_domain(&domain)?;
            let w1 = parse_witness(&big_f)?;
            let w2 = parse_witness(&other)?;
            w1.validate()?;
            w2.validate()?;
            let (distinct, sup) = distinct_maps(
                |pt: &SamplePoint| w1.eval(pt),
                |pt: &SamplePoint| w2.eval(pt),
                &tag,
                samples,
                seed,
                tol_distinct,
            )?;
            print_flat(
                json!({
                    "distinct": distinct,
                    "sup_difference": sup,
                    "sample_count": samples,
                    "seed": seed,
                    "threshold": tol_distinct,
                }),
                "verify",
                &[("check", json!("distinct"))],
            );
            Ok(if distinct { 0 } else { 1 })
        }
    }
}

fn complex_json(v: Complex64) -> serde_json::Value {
    json!({"re": v.re, "im": v.im})
}

fn run_eval(what: EvalWhat) -> Result<u8> {
    let (target, value) = match what {
        EvalWhat::Psi { omega, s, p } => {
            let pt = PointG2::new(parse_complex(&s)?, parse_complex(&p)?);
            ("psi", psi_omega(parse_complex(&omega)?, &pt)?)
        }
        EvalWhat::Phi { omega, x1, x2, x3, swapped } => {
            let pt = PointE::new(parse_complex(&x1)?, parse_complex(&x2)?, parse_complex(&x3)?);
            ("phi", phi_omega(parse_complex(&omega)?, &pt, swapped)?)
        }
        EvalWhat::Phitilde { omega, x1, x2, x3, swapped } => {
            let pt = PointE::new(parse_complex(&x1)?, parse_complex(&x2)?, parse_complex(&x3)?);
            ("phitilde", phi_tilde(parse_complex(&omega)?, &pt, swapped)?)
        }
        EvalWhat::Geodesic { geodesic, lambda } => {
            let geo = parse_geodesic(&geodesic)?;
            geo.validate()?;
            let pt = geo.eval(parse_complex(&lambda)?)?;
            let value = serde_json::to_value(&pt)
                .map_err(|e| Error::Internal(format!("point serialization failed: {e}")))?;
            print_flat(json!({ "point": value }), "eval", &[("target", json!("geodesic"))]);
            return Ok(0);
        }
        EvalWhat::Witness { big_f, geodesic, lambda } => {
            let geo = parse_geodesic(&geodesic)?;
            geo.validate()?;
            let w = parse_witness(&big_f)?;
            w.validate()?;
            let lam = parse_complex(&lambda)?;
            let value = w.eval(&geo.eval(lam)?)?;
            print_flat(
                json!({
                    "value": complex_json(value),
                    "residual": (value - lam).norm(),
                }),
                "eval",
                &[("target", json!("witness"))],
            );
            return Ok(0);
        }
    };
    print_flat(json!({ "value": complex_json(value) }), "eval", &[("target", json!(target))]);
    Ok(0)
}

fn csv_header(tag: &DomainTag) -> &'static str {
    match tag {
        DomainTag::Disc => "z_re,z_im",
        DomainTag::Bidisc | DomainTag::Ball2 | DomainTag::ReinhardtModel { .. } => {
            "z1_re,z1_im,z2_re,z2_im"
        }
        DomainTag::G2 => "s_re,s_im,p_re,p_im",
        DomainTag::Tetrablock => "x1_re,x1_im,x2_re,x2_im,x3_re,x3_im",
        DomainTag::Rii => "z1_re,z1_im,a_re,a_im,z2_re,z2_im",
    }
}

fn run_sample(args: SampleArgs) -> Result<u8> {
    let tag = parse_domain(&args.domain)?;
    let points = sample(&tag, args.n, args.seed)?;
    eprintln!("seed: {}", args.seed);
    println!("{}", csv_header(&tag));
    for pt in &points {
        let row: Vec<String> = sample_coords(pt)
            .into_iter()
            .flat_map(|z| [z.re.to_string(), z.im.to_string()])
            .collect();
        println!("{}", row.join(","));
    }
    Ok(0)
}

fn run_plot(what: PlotWhat) -> Result<u8> {
    match what {
        PlotWhat::AdmissibleOmega { tau, alpha, omega_grid } => {
            let set =
                admissible_omega_set(parse_complex(&tau)?, parse_complex(&alpha)?, omega_grid)?;
            println!("index,theta,omega_re,omega_im");
            for (i, w) in set.iter().enumerate() {
                println!("{i},{},{},{}", w.arg().rem_euclid(TAU), w.re, w.im);
            }
            Ok(0)
        }
        PlotWhat::LeftinvTrace { big_f, geodesic, grid } => {
            let geo = parse_geodesic(&geodesic)?;
            geo.validate()?;
            let w = parse_witness(&big_f)?;
            w.validate()?;
            println!("lambda_re,lambda_im,value_re,value_im,residual");
            for lam in lambda_grid(grid) {
                let value = w.eval(&geo.eval(lam)?)?;
                println!(
                    "{},{},{},{},{}",
                    lam.re,
                    lam.im,
                    value.re,
                    value.im,
                    (value - lam).norm()
                );
            }
            Ok(0)
        }
    }
}
