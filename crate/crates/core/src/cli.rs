//! Command-line front end: `op`, `norm`, `weights`, `verify` and `corpus`.
//!
//! Exit status: 0 success, 2 usage or parameter error, 3 parse or I/O error,
//! 4 non-integrable weight, 5 numeric/oracle disagreement, 6 failed hypotheses,
//! 7 drift threshold exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{CubeFamily, DomainBox, Grid, GridFunction};
use crate::operators::{commutator, fractional_integral, maximal, FracIntConfig, MaximalConfig, MaximalVariant};
use crate::spaces::SpaceSpec;
use crate::verify::{
    check_hypotheses, check_prop_hypotheses, generate_corpus, require, verify_bound, verify_prop, BoundId, ParamSet,
    PropId, VerificationReport,
};
use crate::weights::{
    class_constant, numeric_finiteness, power_membership, Weight, WeightClass, WeightClassReport, WeightSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTEGRABILITY: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;
pub const EXIT_HYPOTHESES: i32 = 6;
pub const EXIT_DRIFT: i32 = 7;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
        Error::NotIntegrable(_) | Error::NotInClass { .. } => EXIT_INTEGRABILITY,
        Error::Hypotheses(_) => EXIT_HYPOTHESES,
        Error::Param(_) | Error::EmptyCube | Error::GridMismatch(_) | Error::FamilyExhausted(_) => EXIT_USAGE,
    }
}

#[derive(Debug, Parser)]
#[command(name = "morreylab", version, about = "Fractional integrals, maximal operators, weights and Morrey norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply an operator to a grid function.
    Op(OpArgs),
    /// Norm of a grid function in a Morrey or oscillation space.
    Norm(NormArgs),
    /// Characteristic constant of a weight.
    Weights(WeightsArgs),
    /// Run a bound or pointwise verification.
    Verify(VerifyArgs),
    /// Write a generated corpus to a directory.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct OpArgs {
    /// ialpha, commutator, m, mfrac, mw, mfracw, mdelta, msharp
    name: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Weight spec for mw / mfracw.
    #[arg(long)]
    w: Option<String>,
    /// Symbol CSV for the commutator.
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    shifts: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct NormArgs {
    #[arg(long)]
    space: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 3)]
    shifts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct WeightsArgs {
    #[arg(long)]
    w: String,
    /// ap, apq or rh
    #[arg(long)]
    class: String,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    level: u32,
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
    #[arg(long, default_value_t = 0.25)]
    margin: f64,
    #[arg(long, default_value_t = 3)]
    shifts: usize,
    /// Compare against exact power-weight membership.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// THM1..THM3, THME, L3.2..L5.1, P3.1, or a pointwise id P3.7, P4.4, P5.2.
    #[arg(long)]
    id: Option<String>,
    /// Flat `key = value` run configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    /// Comma-separated resolution exponents, coarse to fine.
    #[arg(long)]
    levels: Option<String>,
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    shifts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 9)]
    level: u32,
    #[arg(long, default_value_t = 2.0)]
    half_width: f64,
    #[arg(long, default_value_t = 0.5)]
    margin: f64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

/// Either kind of verification target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Bound(BoundId),
    Prop(PropId),
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BoundId>()
            .map(Target::Bound)
            .or_else(|_| s.parse::<PropId>().map(Target::Prop))
            .map_err(|_| Error::parse(format!("unknown verification id '{s}'")))
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Bound(b) => write!(f, "{b}"),
            Target::Prop(p) => write!(f, "{p}"),
        }
    }
}

/// A verification run as flat `key = value` text.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub id: Target,
    pub n: usize,
    pub levels: Vec<u32>,
    pub half_width: f64,
    pub margin: f64,
    pub shifts: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub delta: f64,
    pub r: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub weight: Option<WeightSpec>,
    pub space: Option<SpaceSpec>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: "verify".into(),
            id: Target::Bound(BoundId::Thm1),
            n: 1,
            levels: vec![9, 10],
            half_width: 2.0,
            margin: 0.5,
            shifts: 3,
            alpha: 0.25,
            beta: 0.0,
            p: 2.0,
            kappa: 0.25,
            gamma: -0.2,
            delta: 0.5,
            r: None,
            seed: 2024,
            count: 20,
            weight: None,
            space: None,
            out: None,
        }
    }
}

fn parse_levels(v: &str) -> Result<Vec<u32>> {
    let levels = v
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::parse(format!("bad level `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if levels.is_empty() {
        return Err(Error::parse("levels must not be empty"));
    }
    Ok(levels)
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::parse(format!("bad value `{v}` for {key}")))
}

impl RunConfig {
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let levels: Vec<String> = self.levels.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "command = {}", self.command);
        let _ = writeln!(s, "id = {}", self.id);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "levels = {}", levels.join(","));
        let _ = writeln!(s, "half_width = {}", self.half_width);
        let _ = writeln!(s, "margin = {}", self.margin);
        let _ = writeln!(s, "shifts = {}", self.shifts);
        let _ = writeln!(s, "alpha = {}", self.alpha);
        let _ = writeln!(s, "beta = {}", self.beta);
        let _ = writeln!(s, "p = {}", self.p);
        let _ = writeln!(s, "kappa = {}", self.kappa);
        let _ = writeln!(s, "gamma = {}", self.gamma);
        let _ = writeln!(s, "delta = {}", self.delta);
        if let Some(r) = self.r {
            let _ = writeln!(s, "r = {r}");
        }
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "count = {}", self.count);
        if let Some(w) = &self.weight {
            let _ = writeln!(s, "weight = {w}");
        }
        if let Some(sp) = &self.space {
            let _ = writeln!(s, "space = {sp}");
        }
        if let Some(o) = &self.out {
            let _ = writeln!(s, "out = {}", o.display());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "command" => c.command = v.to_string(),
                "id" => c.id = v.parse()?,
                "n" => c.n = num(k, v)?,
                "levels" => c.levels = parse_levels(v)?,
                "half_width" => c.half_width = num(k, v)?,
                "margin" => c.margin = num(k, v)?,
                "shifts" => c.shifts = num(k, v)?,
                "alpha" => c.alpha = num(k, v)?,
                "beta" => c.beta = num(k, v)?,
                "p" => c.p = num(k, v)?,
                "kappa" => c.kappa = num(k, v)?,
                "gamma" => c.gamma = num(k, v)?,
                "delta" => c.delta = num(k, v)?,
                "r" => c.r = Some(num(k, v)?),
                "seed" => c.seed = num(k, v)?,
                "count" => c.count = num(k, v)?,
                "weight" => c.weight = Some(v.parse()?),
                "space" => c.space = Some(v.parse()?),
                "out" => c.out = Some(PathBuf::from(v)),
                other => return Err(Error::parse(format!("line {}: unknown key `{other}`", lineno + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Files referenced by the configuration must exist.
    pub fn check_files(&self) -> Result<()> {
        if let Some(WeightSpec::Sampled(p)) = &self.weight {
            if !p.exists() {
                return Err(Error::Io(format!("{}: no such file", p.display())));
            }
        }
        Ok(())
    }

    pub fn param_set(&self) -> Result<ParamSet> {
        let ps = ParamSet::new(self.n, self.alpha, self.beta, self.p, self.kappa, self.gamma)?.with_delta(self.delta);
        Ok(match self.r {
            Some(r) => ps.with_r(r),
            None => ps,
        })
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

#[derive(Serialize)]
struct OpSummary {
    operator: String,
    min: f64,
    min_cell: usize,
    max: f64,
    max_cell: usize,
    hash: String,
}

fn cmd_op(a: OpArgs) -> Result<i32> {
    let known = ["ialpha", "commutator", "m", "mfrac", "mw", "mfracw", "mdelta", "msharp"];
    if !known.contains(&a.name.as_str()) {
        eprintln!("error: unknown operator '{}' (expected one of {})", a.name, known.join(", "));
        return Ok(EXIT_USAGE);
    }
    let f = GridFunction::read_csv(&a.input)?;
    let grid = *f.grid();
    let alpha = || a.alpha.ok_or_else(|| Error::param("--alpha is required"));
    let out = match a.name.as_str() {
        "ialpha" => fractional_integral(&f, &FracIntConfig::new(grid.dim(), alpha()?)?)?,
        "commutator" => {
            let path = a.b.as_ref().ok_or_else(|| Error::param("--b is required for the commutator"))?;
            let b = GridFunction::read_csv(path)?;
            commutator(&b, &f, &FracIntConfig::new(grid.dim(), alpha()?)?)?
        }
        name => {
            let variant: MaximalVariant = name.parse()?;
            let weight = match &a.w {
                Some(s) => Some(s.parse::<WeightSpec>()?.load()?),
                None => None,
            };
            let cfg = MaximalConfig { variant, beta: a.beta, r: a.r, delta: a.delta, weight };
            maximal(&f, &cfg, &CubeFamily::new(grid, a.shifts)?)?
        }
    };
    if let Some(p) = &a.out {
        out.write_csv(p)?;
    }
    let (min, min_cell, max, max_cell) = out.extrema();
    let summary = OpSummary { operator: a.name.clone(), min, min_cell, max, max_cell, hash: out.content_hash() };
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct NormOutput<'a> {
    space: String,
    input: &'a str,
    value: f64,
    cube: crate::grid::CubeRecord,
}

fn cmd_norm(a: NormArgs) -> Result<i32> {
    let spec: SpaceSpec = a.space.parse()?;
    let f = GridFunction::read_csv(&a.input)?;
    let space = spec.load()?;
    let family = CubeFamily::new(*f.grid(), a.shifts)?;
    let r = space.norm(&f, &family)?;
    let input = a.input.to_string_lossy();
    let text = to_json(&NormOutput { space: spec.to_string(), input: &input, value: r.value, cube: r.cube });
    write_or_print(a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn parse_class(a: &WeightsArgs) -> Result<WeightClass> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| Error::param(format!("--{flag} is required for class {}", a.class)));
    let class = match a.class.to_ascii_lowercase().as_str() {
        "ap" => WeightClass::Ap { p: need(a.p, "p")? },
        "a1" => WeightClass::a1(),
        "apq" => WeightClass::Apq { p: need(a.p, "p")?, q: need(a.q, "q")? },
        "rh" => WeightClass::Rh { r: need(a.r, "r")? },
        other => return Err(Error::param(format!("unknown class '{other}' (ap, apq, rh)"))),
    };
    Ok(class)
}

#[derive(Serialize)]
struct OracleOutput {
    class: String,
    weight: String,
    constant: Option<f64>,
    report: Option<WeightClassReport>,
    oracle: bool,
    numeric_finite: bool,
    detail: String,
    agree: bool,
}

fn cmd_weights(a: WeightsArgs) -> Result<i32> {
    let spec: WeightSpec = a.w.parse()?;
    let class = parse_class(&a)?;
    let w = spec.load()?;
    let grid = match &w {
        Weight::Sampled(f) => *f.grid(),
        Weight::Power(_) => Grid::new(DomainBox::new(a.n, a.half_width, a.margin)?, a.level)?,
    };
    if !a.oracle {
        let report = class_constant(&w, class, &CubeFamily::new(grid, a.shifts)?)?;
        write_or_print(a.out.as_deref(), &to_json(&report))?;
        return Ok(EXIT_OK);
    }
    let pw = w.as_power().ok_or_else(|| Error::param("--oracle requires a power weight"))?;
    let oracle = power_membership(grid.dim(), pw, class)?;
    let verdict = numeric_finiteness(&w, class, &grid, a.shifts)?;
    let report = match verdict.constant {
        Some(_) => Some(class_constant(&w, class, &CubeFamily::new(grid, a.shifts)?)?),
        None => None,
    };
    let agree = oracle == verdict.finite;
    let out = OracleOutput {
        class: class.label(),
        weight: spec.to_string(),
        constant: verdict.constant,
        report,
        oracle,
        numeric_finite: verdict.finite,
        detail: verdict.detail,
        agree,
    };
    write_or_print(a.out.as_deref(), &to_json(&out))?;
    if !agree {
        eprintln!("error: numeric constant and exact membership disagree for {}", class.label());
        return Ok(EXIT_ORACLE);
    }
    Ok(EXIT_OK)
}

fn merge(a: &VerifyArgs) -> Result<RunConfig> {
    let mut c = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(id) = &a.id {
        c.id = id.parse()?;
    }
    macro_rules! set {
        ($($f:ident),*) => { $( if let Some(v) = a.$f { c.$f = v; } )* };
    }
    set!(n, alpha, beta, p, kappa, gamma, delta, half_width, margin, shifts, seed, count);
    if a.r.is_some() {
        c.r = a.r;
    }
    if let Some(l) = &a.levels {
        c.levels = parse_levels(l)?;
    }
    if let Some(o) = &a.out {
        c.out = Some(o.clone());
    }
    c.check_files()?;
    Ok(c)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let cfg = merge(&a)?;
    let ps = cfg.param_set()?;
    let hypotheses = match cfg.id {
        Target::Bound(id) => check_hypotheses(&ps, id),
        Target::Prop(id) => check_prop_hypotheses(&ps, id),
    };
    if let Err(e) = require(&hypotheses) {
        eprintln!("error: {e}");
        return Ok(EXIT_HYPOTHESES);
    }
    let grid = Grid::new(DomainBox::new(cfg.n, cfg.half_width, cfg.margin)?, cfg.levels[0])?;
    let corpus = generate_corpus(grid, cfg.seed, cfg.count)?;
    let report: VerificationReport = match cfg.id {
        Target::Bound(id) => verify_bound(id, &ps, &corpus, &cfg.levels, cfg.shifts)?,
        Target::Prop(id) => verify_prop(id, &ps, &corpus, &cfg.levels, cfg.shifts)?,
    };
    write_or_print(cfg.out.as_deref(), &report.to_json())?;
    let drift = report.drift.map_or("n/a".to_string(), |d| format!("{d:.4}"));
    eprintln!("{}: sup ratio {:.6}, drift {drift}", report.id, report.sup_ratio);
    if !report.passed() {
        eprintln!("error: drift threshold {} exceeded or sup ratio not finite", report.drift_threshold);
        return Ok(EXIT_DRIFT);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ManifestEntry {
    name: String,
    file: String,
    hash: String,
    in_margin: bool,
}

#[derive(Serialize)]
struct Manifest<'a> {
    seed: u64,
    n: usize,
    level: u32,
    half_width: f64,
    margin: f64,
    profiles: &'a [crate::verify::Profile],
    symbol_profiles: &'a [crate::verify::SymbolProfile],
    inputs: Vec<ManifestEntry>,
    symbols: Vec<ManifestEntry>,
}

fn cmd_corpus(a: CorpusArgs) -> Result<i32> {
    let grid = Grid::new(DomainBox::new(a.n, a.half_width, a.margin)?, a.level)?;
    let corpus = generate_corpus(grid, a.seed, a.count)?;
    fs::create_dir_all(&a.out).map_err(|e| Error::Io(format!("{}: {e}", a.out.display())))?;
    let write = |prefix: &str, e: &crate::verify::Entry| -> Result<ManifestEntry> {
        let file = format!("{prefix}_{}.csv", e.name);
        e.values.write_csv(a.out.join(&file))?;
        Ok(ManifestEntry { name: e.name.clone(), file, hash: e.values.content_hash(), in_margin: e.in_margin })
    };
    let inputs = corpus.inputs.iter().map(|e| write("input", e)).collect::<Result<Vec<_>>>()?;
    let symbols = corpus.symbols.iter().map(|e| write("symbol", e)).collect::<Result<Vec<_>>>()?;
    let manifest = Manifest {
        seed: a.seed,
        n: a.n,
        level: a.level,
        half_width: a.half_width,
        margin: a.margin,
        profiles: corpus.profiles(),
        symbol_profiles: corpus.symbol_profiles(),
        inputs,
        symbols,
    };
    let path = a.out.join("corpus.json");
    fs::write(&path, to_json(&manifest)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    println!("{} inputs, {} symbols written to {}", corpus.inputs.len(), corpus.symbols.len(), a.out.display());
    Ok(EXIT_OK)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MORREYLAB_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Error::param(format!("MORREYLAB_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(Error::param("MORREYLAB_THREADS must be positive"));
        }
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Run the command line `args` (including the program name) and return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return exit_code(&e);
    }
    let result = match cli.command {
        Command::Op(a) => cmd_op(a),
        Command::Norm(a) => cmd_norm(a),
        Command::Weights(a) => cmd_weights(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Corpus(a) => cmd_corpus(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let mut c = RunConfig::default();
        c.id = Target::Prop(PropId::P52);
        c.r = Some(1.2);
        c.kappa = 0.1;
        c.weight = Some("power:x0=0.25,gamma=-0.1".parse().unwrap());
        c.space = Some("morrey:p=2,kappa=0.5,u=power:x0=0,gamma=0,v=power:x0=0,gamma=-0.2".parse().unwrap());
        c.out = Some(PathBuf::from("report.json"));
        let text = c.emit();
        assert_eq!(RunConfig::parse(&text).unwrap(), c);
        assert_eq!(RunConfig::parse(&RunConfig::default().emit()).unwrap(), RunConfig::default());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(RunConfig::parse("nonsense"), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::parse("colour = red"), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::parse("p = two"), Err(Error::Parse(_))));
        let c = RunConfig::parse("# comment\n\nid = L3.2\nlevels = 6, 7\n").unwrap();
        assert_eq!(c.id, Target::Bound(BoundId::L32));
        assert_eq!(c.levels, vec![6, 7]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::param("x")), 2);
        assert_eq!(exit_code(&Error::parse("x")), 3);
        assert_eq!(exit_code(&Error::NotInClass { class: "RH_3".into(), detail: String::new() }), 4);
        assert_eq!(exit_code(&Error::Hypotheses(String::new())), 6);
        assert_eq!(run(["morreylab", "frobnicate"]), 2);
    }
}
