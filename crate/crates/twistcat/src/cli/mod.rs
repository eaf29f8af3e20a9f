//! Command-line front end. Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::catalogue::{self, CatalogueError};
use crate::clifford::{self, CliffordError, Sector, Spinor};
use crate::exactfield::{ExactMatrix, GaussianRational, Vector};
use crate::superlie::{self, SuperLieError};
use crate::susy::{self, AuxCount, Supercharge, SusyError};

mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: line {line}, column {column}: {message}")]
    Input { path: String, line: usize, column: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    SuperLie(#[from] SuperLieError),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Io { .. } => EXIT_USAGE,
            CliError::Susy(SusyError::BadAuxSpec(_) | SusyError::WrongLength { .. } | SusyError::ZeroSupercharge) => {
                EXIT_USAGE
            }
            CliError::Clifford(CliffordError::DimensionOutOfRange(_) | CliffordError::WrongLength { .. }) => EXIT_USAGE,
            CliError::Catalogue(CatalogueError::Unsupported { .. }) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "twistcat", version, about = "Exact classification of square-zero supercharges and their twists")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a supercharge read from a JSON file.
    Classify(ClassifyArgs),
    /// Sample every catalogued class and replay its invariants.
    VerifyCatalogue(VerifyArgs),
    /// Purity of one spinor, or agreement of the purity criteria on sampled spinors.
    PureSpinor(PureArgs),
    /// Construct and replay an abelian section for a supercharge.
    Section(AlgebraInput),
    /// Compatibility with a named twisting homomorphism, or the whole twisting table.
    TwistCompat(TwistArgs),
    /// Check the superconformal potentials in dimensions 2 and 3.
    Potential(PotentialArgs),
}

fn parse_aux(s: &str) -> Result<AuxCount, String> {
    s.parse().map_err(|e: SusyError| e.to_string())
}

fn parse_dim(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a dimension"))?;
    (1..=10).contains(&n).then_some(n).ok_or_else(|| format!("dimension {n} outside 1..=10"))
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(x @ (1 | -1)) => Ok(x),
        _ => Err(format!("{s:?} is not 1 or -1")),
    }
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct AlgebraInput {
    #[arg(long, value_parser = parse_dim)]
    dim: usize,
    /// `N=k` or `N=(a,b)`.
    #[arg(long, value_parser = parse_aux)]
    aux: AuxCount,
    /// Supercharge JSON file, `-` for standard input.
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    algebra: AlgebraInput,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Omit to verify every tabulated dimension.
    #[arg(long, value_parser = parse_dim)]
    dim: Option<usize>,
    /// Omit to verify every tabulated auxiliary space of the dimension.
    #[arg(long, value_parser = parse_aux)]
    aux: Option<AuxCount>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct PureArgs {
    #[arg(long, value_parser = parse_dim)]
    dim: usize,
    /// Spinor JSON file; omit to survey sampled spinors.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct TwistArgs {
    #[arg(long, value_parser = parse_dim)]
    dim: usize,
    #[arg(long, value_parser = parse_aux)]
    aux: AuxCount,
    /// Homomorphism name, e.g. `kapustin_witten`, `winding(1,1)`, `i1`.
    #[arg(long)]
    hom: Option<String>,
    /// Supercharge JSON file; omit to verify the twisting table.
    #[arg(long = "in", requires = "hom")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct PotentialArgs {
    /// 2 for the global (2,2) superconformal algebra, 3 for osp(4|4).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "3"]))]
    dim: String,
    /// Sign `±1` of the left-moving twist.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true, value_parser = parse_sign)]
    alpha: i64,
    /// Sign `±1` of the right-moving twist.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true, value_parser = parse_sign)]
    beta: i64,
    #[command(flatten)]
    format: FormatArg,
}

/// One entry of a coefficient list: a string such as `"1/2-3i"` or an integer.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn value(&self) -> Result<GaussianRational, String> {
        match self {
            Entry::Int(n) => Ok(GaussianRational::int(*n)),
            Entry::Text(s) => s.parse().map_err(|e| format!("{s:?}: {e}")),
        }
    }
}

/// Supercharge input: flat coordinates of Σ or one `spinor × aux` matrix per block.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperchargeInput {
    #[serde(default)]
    dim: Option<usize>,
    #[serde(default)]
    aux: Option<String>,
    #[serde(default)]
    coeffs: Option<Vec<Entry>>,
    #[serde(default)]
    blocks: Option<Vec<Vec<Vec<Entry>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinorInput {
    #[serde(default)]
    dim: Option<usize>,
    sector: Sector,
    coeffs: Vec<Entry>,
}

fn entries(xs: &[Entry]) -> Result<Vector, String> {
    xs.iter().map(Entry::value).collect()
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn input_error(path: &Path, message: String) -> CliError {
    CliError::Input { path: path.display().to_string(), line: 0, column: 0, message }
}

/// Build the supercharge described by `input` in the standard algebra `(dim, aux)`.
pub fn supercharge_from_input(
    dim: usize,
    aux: AuxCount,
    input: &SuperchargeInput,
    path: &Path,
) -> Result<Supercharge, CliError> {
    let bad = |m: String| input_error(path, m);
    if input.dim.is_some_and(|d| d != dim) {
        return Err(bad(format!("field dim = {} disagrees with --dim {dim}", input.dim.unwrap_or_default())));
    }
    if let Some(a) = &input.aux {
        let parsed = parse_aux(a).map_err(|e| bad(format!("field aux: {e}")))?;
        if parsed != aux {
            return Err(bad(format!("field aux = {parsed} disagrees with --aux {aux}")));
        }
    }
    let alg = susy::build_susy(dim, aux)?;
    match (&input.coeffs, &input.blocks) {
        (Some(c), None) => {
            let v = entries(c).map_err(|e| bad(format!("field coeffs: {e}")))?;
            alg.supercharge(v).map_err(|e| bad(format!("field coeffs: {e}")))
        }
        (None, Some(blocks)) => {
            if blocks.len() != alg.blocks().len() {
                return Err(bad(format!(
                    "field blocks: expected {} blocks, found {}",
                    alg.blocks().len(),
                    blocks.len()
                )));
            }
            let mut mats = Vec::new();
            for (b, (rows, blk)) in blocks.iter().zip(alg.blocks()).enumerate() {
                let shape_ok = rows.len() == blk.spinor_dim && rows.iter().all(|r| r.len() == blk.aux_dim);
                if !shape_ok {
                    return Err(bad(format!(
                        "field blocks[{b}]: expected a {} × {} matrix",
                        blk.spinor_dim, blk.aux_dim
                    )));
                }
                let flat: Vec<Entry> = rows.iter().flatten().cloned().collect();
                let v = entries(&flat).map_err(|e| bad(format!("field blocks[{b}]: {e}")))?;
                mats.push(ExactMatrix::from_entries(blk.spinor_dim, blk.aux_dim, v).map_err(|e| bad(e.to_string()))?);
            }
            Ok(alg.from_blocks(&mats))
        }
        _ => Err(bad("exactly one of the fields coeffs and blocks is required".into())),
    }
}

fn read_supercharge(dim: usize, aux: AuxCount, path: &Path) -> Result<Supercharge, CliError> {
    let input: SuperchargeInput = read_json(path)?;
    let q = supercharge_from_input(dim, aux, &input, path)?;
    if q.is_zero() {
        return Err(input_error(path, "the supercharge is zero".into()));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub dim: usize,
    pub aux: String,
    pub square_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<susy::TwistClass>,
    /// Key of the matching catalogue row; absent when the algebra is not tabulated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalogue_class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_gradable: Option<bool>,
    /// A fixed representative of the class, in the `coeffs` input format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<Vec<GaussianRational>>,
    pub passed: bool,
}

pub fn classify_supercharge(q: &Supercharge) -> Result<ClassifyOutput, CliError> {
    let (dim, aux) = (q.dim(), q.algebra().aux().count);
    let mut out = ClassifyOutput {
        dim,
        aux: aux.to_string(),
        square_zero: susy::is_square_zero(q),
        class: None,
        catalogue_class: None,
        z_gradable: None,
        normal_form: None,
        passed: false,
    };
    if !out.square_zero {
        return Ok(out);
    }
    let class = susy::classify(q)?;
    out.passed = true;
    if let Ok(table) = catalogue::expected_table(dim, aux) {
        match table.iter().position(|e| e.matches(&class)) {
            Some(i) => {
                let spec = catalogue::SampleSpec { dim, aux, class: i, seed: 0, bound: 2 };
                out.catalogue_class = Some(table[i].key());
                out.z_gradable = Some(table[i].z_gradable);
                out.normal_form = Some(catalogue::sample_square_zero(&spec)?.coeffs().to_vec());
            }
            None => out.passed = false,
        }
    }
    out.class = Some(class);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub reports: Vec<catalogue::CatalogueReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorOutput {
    pub dim: usize,
    pub sector: Sector,
    pub pure_by_nullspace: bool,
    pub pure_by_chevalley: bool,
    pub nullspace_dim: usize,
    pub image_dim: usize,
    pub image_is_complement: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionOutput {
    pub dim: usize,
    pub aux: String,
    pub covered: bool,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<susy::SectionMethod>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<Vector>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatOutput {
    pub dim: usize,
    pub aux: String,
    pub hom: String,
    pub compatible: bool,
    /// A `u(1)` direction giving `Q` weight one, by generator name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisting_datum: Option<superlie::NamedElement>,
    /// Whether some twisting datum also commutes with the image of the homomorphism.
    pub datum_commutes: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialOutput {
    pub algebra: String,
    pub hom: String,
    pub jacobi: bool,
    pub equations: [bool; 6],
    pub abelian: bool,
    /// Equation 1 with `ψ = 0`; must fail.
    pub zero_potential_equation_1: bool,
    pub passed: bool,
}

fn verify(args: &VerifyArgs) -> Result<VerifyOutput, CliError> {
    let pairs: Vec<(usize, AuxCount)> = catalogue::tabulated()
        .into_iter()
        .filter(|(d, a)| args.dim.is_none_or(|x| x == *d) && args.aux.is_none_or(|x| x == *a))
        .collect();
    if pairs.is_empty() {
        let what = match (args.dim, args.aux) {
            (Some(d), Some(a)) => format!("dimension {d} with {a}"),
            (Some(d), None) => format!("dimension {d}"),
            _ => "the requested algebras".into(),
        };
        return Err(CliError::Usage(format!("no catalogue entry for {what}")));
    }
    let reports = pairs
        .into_iter()
        .map(|(d, a)| catalogue::verify_catalogue(d, a, args.samples, args.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    Ok(VerifyOutput { reports, passed })
}

pub fn inspect_spinor(q: &Spinor) -> Result<SpinorOutput, CliError> {
    let m = clifford::model(q.dim)?;
    let weyl = m.to_weyl(q)?;
    let by_nullspace = m.is_pure_by_nullspace(&weyl)?;
    let by_chevalley = m.is_pure_by_chevalley(&weyl)?;
    let t = m.nullspace(&weyl)?;
    let image = m.spinor_image(&weyl)?;
    let complement = clifford::same_subspace(q.dim, &image, &clifford::orthogonal_complement(q.dim, &t));
    Ok(SpinorOutput {
        dim: q.dim,
        sector: weyl.sector,
        pure_by_nullspace: by_nullspace,
        pure_by_chevalley: by_chevalley,
        nullspace_dim: t.len(),
        image_dim: image.len(),
        image_is_complement: complement,
        passed: by_nullspace == by_chevalley && complement,
    })
}

fn read_spinor(dim: usize, path: &Path) -> Result<Spinor, CliError> {
    let input: SpinorInput = read_json(path)?;
    if input.dim.is_some_and(|d| d != dim) {
        return Err(input_error(path, format!("field dim disagrees with --dim {dim}")));
    }
    let coeffs = entries(&input.coeffs).map_err(|e| input_error(path, format!("field coeffs: {e}")))?;
    let q = clifford::model(dim)?.spinor(input.sector, coeffs).map_err(|e| input_error(path, e.to_string()))?;
    if q.is_zero() {
        return Err(input_error(path, "the spinor is zero".into()));
    }
    Ok(q)
}

pub fn section_of(q: &Supercharge) -> SectionOutput {
    let covered = susy::covered_by_hypotheses(q);
    let mut out = SectionOutput {
        dim: q.dim(),
        aux: q.algebra().aux().count.to_string(),
        covered,
        found: false,
        method: None,
        basis: Vec::new(),
        verified: false,
        reason: None,
        passed: !covered,
    };
    match susy::abelian_section(q) {
        Ok(s) => {
            out.found = true;
            out.verified = susy::verify_section(q, &s);
            out.passed = out.verified;
            out.method = Some(s.method);
            out.basis = s.basis;
        }
        Err(e) => out.reason = Some(e.to_string()),
    }
    out
}

fn compat(args: &TwistArgs, path: &Path, hom: &str) -> Result<CompatOutput, CliError> {
    let q = read_supercharge(args.dim, args.aux, path)?;
    let susy = q.algebra();
    let sl = superlie::build_susy_superlie(susy, superlie::RSymmetry::for_kind(susy.aux().kind))?;
    let phi = catalogue::named_hom(&sl, hom)?;
    let compatible = superlie::twist_compat(sl.algebra(), &sl.embed(&q), &phi);
    let datum = sl.twisting_datum(&q, None);
    let commuting = compatible && sl.twisting_datum(&q, Some(&phi)).is_some();
    Ok(CompatOutput {
        dim: args.dim,
        aux: args.aux.to_string(),
        hom: hom.to_string(),
        compatible,
        twisting_datum: datum.map(|d| d.to_named(sl.algebra())),
        datum_commutes: commuting,
        passed: true,
    })
}

fn potential(args: &PotentialArgs) -> Result<PotentialOutput, CliError> {
    let (algebra, l, q, phi, psi) = if args.dim == "2" {
        let t = superlie::superconformal_2d_twist(args.alpha, args.beta)?;
        ("global 2d N=(2,2) superconformal".to_string(), t.algebra, t.q, t.phi, t.psi)
    } else {
        let t = superlie::superconformal_3d()?;
        ("osp(4|4)".to_string(), t.osp.algebra, t.q, t.phi_i1, t.psi)
    };
    let jacobi = superlie::jacobi_check(&l).is_ok();
    let report = superlie::affine_potential_check(&l, &q, &phi, &psi)?;
    let zero = superlie::AffinePotential {
        rotations: vec![l.zero(); psi.rotations.len()],
        translations: vec![l.zero(); psi.translations.len()],
    };
    let control = superlie::affine_potential_check(&l, &q, &phi, &zero)?;
    Ok(PotentialOutput {
        algebra,
        hom: phi.source.clone(),
        jacobi,
        equations: report.equations,
        abelian: report.abelian,
        zero_potential_equation_1: control.equations[0],
        passed: jacobi && report.passed() && !control.equations[0],
    })
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    value: &T,
    md: impl FnOnce(&T) -> String,
) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value).map_err(std::io::Error::other)?),
        Format::Md => write!(out, "{}", md(value)),
    }
}

fn status(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    match cli.command {
        Command::Classify(ClassifyArgs { algebra: a }) => {
            let q = read_supercharge(a.dim, a.aux, &a.input)?;
            let r = classify_supercharge(&q)?;
            emit(out, a.format.format, &r, render::classify_md).map_err(io)?;
            Ok(status(r.passed))
        }
        Command::VerifyCatalogue(args) => {
            let r = verify(&args)?;
            emit(out, args.format.format, &r, |r| {
                r.reports.iter().map(catalogue::render_catalogue_md).collect::<Vec<_>>().join("\n")
            })
            .map_err(io)?;
            Ok(status(r.passed))
        }
        Command::PureSpinor(args) => match &args.input {
            Some(path) => {
                let r = inspect_spinor(&read_spinor(args.dim, path)?)?;
                emit(out, args.format.format, &r, render::spinor_md).map_err(io)?;
                Ok(status(r.passed))
            }
            None => {
                let r = clifford::purity_survey(args.dim, args.samples, args.seed)?;
                emit(out, args.format.format, &r, render::survey_md).map_err(io)?;
                Ok(status(r.passed()))
            }
        },
        Command::Section(a) => {
            let q = read_supercharge(a.dim, a.aux, &a.input)?;
            if !susy::is_square_zero(&q) {
                return Err(input_error(&a.input, "the supercharge does not square to zero".into()));
            }
            let r = section_of(&q);
            emit(out, a.format.format, &r, render::section_md).map_err(io)?;
            Ok(status(r.passed))
        }
        Command::TwistCompat(args) => match (&args.input, &args.hom) {
            (Some(path), Some(hom)) => {
                let r = compat(&args, path, hom)?;
                emit(out, args.format.format, &r, render::compat_md).map_err(io)?;
                Ok(status(r.passed))
            }
            _ => {
                if let Some(h) = &args.hom {
                    return Err(CliError::Usage(format!(
                        "--hom {h} needs --in; omit both to verify the twisting table"
                    )));
                }
                let r = catalogue::verify_twisting_table(args.dim, args.aux, args.seed)?;
                emit(out, args.format.format, &r, catalogue::render_twisting_md).map_err(io)?;
                Ok(status(r.passed))
            }
        },
        Command::Potential(args) => {
            let r = potential(&args)?;
            emit(out, args.format.format, &r, render::potential_md).map_err(io)?;
            Ok(status(r.passed))
        }
    }
}

/// Size the global thread pool from `TWISTCAT_THREADS`; ignored once the pool exists.
pub fn configure_threads() {
    if let Some(n) =
        std::env::var("TWISTCAT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parse `args` (including the program name) and run; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    configure_threads();
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests;
