//! Command-line surface. Every invocation prints exactly one JSON document.
//!
//! Exit codes: 0 when every verification passed, 1 when one failed, 2 on error.

mod doc;
pub mod spec;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{
    scheme_constants, verify_amorphic, verify_ds, verify_partition, verify_pds, verify_skew_hadamard, with_threads,
    AmorphicMode, CertKind, Certificate, PartitionReport,
};
use crate::error::{Error, Result};
use crate::groups::ElementSet;
use crate::products::{
    certify_product, combine3, combine3_sizes, paley_product, paley_product_size, recipe_extract, recipe_instantiate,
    stanton_sprott, stanton_sprott_size, Combine3Mode, ProductCheck, Target,
};
pub use doc::{Document, ErrorDocument, NamedElements, SCHEMA_VERSION};
use spec::{parse_artifact, parse_eps, parse_group, Artifact, SetKind};

#[derive(Debug, Parser)]
#[command(name = "pdsforge", version, about = "Construct and certify partial difference sets and difference sets")]
pub struct Cli {
    /// Worker threads for census computations (default: available parallelism).
    #[arg(long, global = true, env = "PDSFORGE_THREADS")]
    pub threads: Option<usize>,
    /// Write the document to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Omit raw element lists from the document.
    #[arg(long, global = true)]
    pub hash_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family member and certify it.
    Construct(FamilyArgs),
    /// Certify a set of element indices read from a JSON file.
    Verify(VerifyArgs),
    /// Association-scheme analysis of a constructed partition.
    Scheme {
        #[command(subcommand)]
        action: SchemeAction,
    },
    /// Product constructions on G × G'.
    Product {
        #[command(subcommand)]
        action: ProductAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    AffineG1,
    AffineG2,
    AffineAbelian,
    AffineSchemeQ4,
    AffinePaleyQ4,
    SemidirectScheme,
    SemidirectPaley,
    PaleyField,
    Latin3,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Construction family; alternatively give a full object spec with --spec.
    #[arg(long, value_enum, required_unless_present = "spec")]
    pub family: Option<Family>,
    /// Object spec string, e.g. `semidirect-paley:3:2:twisted`.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<String>,
    /// Field order (prime power).
    #[arg(long)]
    pub q: Option<u64>,
    /// Odd prime for the semidirect families.
    #[arg(long)]
    pub p: Option<u32>,
    /// Half the dimension of the quadratic space.
    #[arg(long)]
    pub m: Option<u32>,
    /// Exponent: the semidirect groups have order p^(2t).
    #[arg(long)]
    pub t: Option<u32>,
    /// +1 (hyperbolic) or -1 (elliptic).
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Use the nonabelian semidirect group instead of the abelian one.
    #[arg(long)]
    pub twisted: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VerifyKind {
    Pds,
    Ds,
    SkewHadamard,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Group spec, e.g. `semidirect:3:2` or `product:(abelian:9,9)x(abelian:83)`.
    #[arg(long)]
    pub group: String,
    /// JSON array of element indices, or a document whose first payload entry is used.
    #[arg(long)]
    pub set: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "pds")]
    pub kind: VerifyKind,
}

#[derive(Debug, Subcommand)]
pub enum SchemeAction {
    /// Structure constants p_ij^k with a symmetry flag.
    Constants(FamilyArgs),
    /// Fusion check: every union of classes is a PDS of the same family.
    Amorphic {
        #[command(flatten)]
        source: FamilyArgs,
        /// `all` or `sample:n:seed`.
        #[arg(long, default_value = "all")]
        mode: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "LC")]
    Lc,
    #[value(name = "LL")]
    Ll,
    #[value(name = "CC")]
    Cc,
}

#[derive(Debug, Subcommand)]
pub enum ProductAction {
    /// Paley-type product of two Paley-type PDSs of equal order.
    Paley(PairArgs),
    /// Paley-Hadamard difference set from a Paley-type PDS and a skew Hadamard DS of order v ± 2.
    StantonSprott(PairArgs),
    /// Rebuild a product over a partition with the same class parameters.
    Recipe {
        #[command(flatten)]
        pair: PairArgs,
        /// Object whose partition replaces the left partition.
        #[arg(long)]
        target: String,
    },
    /// Three-class combination of two three-class partitions.
    Combine3 {
        #[command(flatten)]
        pair: PairArgs,
        /// LC: Latin x negative Latin; LL: Latin x Latin; CC: negative Latin x negative Latin.
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Object spec for the factor G.
    #[arg(long)]
    pub left: String,
    /// Object spec for the factor G'.
    #[arg(long)]
    pub right: String,
}

fn family_spec(a: &FamilyArgs) -> Result<String> {
    if let Some(s) = &a.spec {
        return Ok(s.clone());
    }
    let need = |v: Option<u64>, name: &str| v.ok_or_else(|| Error::Parse(format!("--{name} is required")));
    let q = || need(a.q, "q");
    let p = || need(a.p.map(u64::from), "p");
    let t = || need(a.t.map(u64::from), "t");
    let m = || need(a.m.map(u64::from), "m");
    let eps = || -> Result<&str> {
        let e = a.eps.as_deref().ok_or_else(|| Error::Parse("--eps is required".into()))?;
        Ok(if parse_eps(e)? == 1 { "+1" } else { "-1" })
    };
    let tw = if a.twisted { ":twisted" } else { "" };
    let family = a.family.ok_or_else(|| Error::Parse("--family or --spec is required".into()))?;
    Ok(match family {
        Family::AffineG1 => format!("affine-g1:{}:{}:{}", q()?, m()?, eps()?),
        Family::AffineG2 => format!("affine-g2:{}:{}:{}", q()?, m()?, eps()?),
        Family::AffineAbelian => format!("affine-abelian:{}:{}:{}", q()?, m()?, eps()?),
        Family::AffineSchemeQ4 => format!("affine-scheme-q4:{}", q()?),
        Family::AffinePaleyQ4 => format!("affine-paley-q4:{}", q()?),
        Family::SemidirectScheme => format!("semidirect-scheme:{}:{}{tw}", p()?, t()?),
        Family::SemidirectPaley => format!("semidirect-paley:{}:{}{tw}", p()?, t()?),
        Family::PaleyField => format!("paley-field:{}", q()?),
        Family::Latin3 => "latin3".to_string(),
    })
}

#[derive(Debug, Serialize)]
struct SetResult {
    label: String,
    set_hash: String,
    certificate: Certificate,
}

#[derive(Debug, Serialize)]
struct AffineChecks {
    isometries: bool,
    additive: bool,
    closure: bool,
    anchor_fixed: bool,
    regular_action: bool,
}

impl AffineChecks {
    fn passed(&self) -> bool {
        self.isometries && self.additive && self.closure && self.anchor_fixed && self.regular_action
    }
}

#[derive(Debug, Serialize)]
struct ConstructResult {
    sets: Vec<SetResult>,
    partitions: Vec<PartitionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    affine_checks: Option<AffineChecks>,
}

#[derive(Debug, Serialize)]
struct FactorRef {
    spec: String,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    set_hash: Option<String>,
}

#[derive(Debug, Serialize)]
struct ProductResult {
    left: FactorRef,
    right: FactorRef,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<FactorRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recipe_fibers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    round_trip: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_check: Option<ProductCheck>,
    check: ProductCheck,
}

#[derive(Debug, Serialize)]
struct Combine3Class {
    label: String,
    expected_family: &'static str,
    family_ok: bool,
    check: ProductCheck,
}

#[derive(Debug, Serialize)]
struct Combine3Result {
    left: FactorRef,
    right: FactorRef,
    mode: &'static str,
    cover_ok: bool,
    classes: Vec<Combine3Class>,
}

/// Output of one command before serialization.
pub struct Outcome {
    pub json: String,
    pub passed: bool,
}

fn cert_set(g: &crate::groups::GroupHandle, s: &ElementSet, kind: SetKind) -> Result<Certificate> {
    match kind {
        SetKind::Pds => verify_pds(g, s),
        SetKind::Ds => verify_ds(g, s),
    }
}

fn factor(a: &Artifact) -> FactorRef {
    FactorRef {
        spec: a.spec.clone(),
        group: a.group.descriptor().to_string(),
        set_hash: a.sets.first().map(|s| crate::algebra::set_hash(&s.set)),
    }
}

fn finish<R: Serialize>(mut d: Document<R>, start: Instant, passed: bool) -> Result<Outcome> {
    d.passed = passed;
    d.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { json: d.to_json()?, passed })
}

fn run_construct(argv: &[String], hash_only: bool, a: &FamilyArgs, start: Instant) -> Result<Outcome> {
    let art = parse_artifact(&family_spec(a)?)?;
    let g = &art.group;
    let mut sets = Vec::new();
    for s in &art.sets {
        let certificate = cert_set(g, &s.set, s.kind)?;
        sets.push(SetResult { label: s.label.clone(), set_hash: certificate.set_hash.clone(), certificate });
    }
    let partitions = art.partitions.iter().map(|p| verify_partition(p.owner(), p)).collect::<Result<Vec<_>>>()?;
    let affine_checks = match &art.affine {
        Some(c) => Some(AffineChecks {
            isometries: c.check_isometries()?,
            additive: c.check_additive(),
            closure: c.check_closure(),
            anchor_fixed: c.check_anchor_fixed(),
            regular_action: c.check_regular_action(),
        }),
        None => None,
    };
    let passed = sets.iter().all(|s| s.certificate.passed())
        && partitions.iter().all(PartitionReport::passed)
        && affine_checks.as_ref().is_none_or(AffineChecks::passed);
    let mut payload = Vec::new();
    if !hash_only {
        payload.extend(art.sets.iter().map(|s| NamedElements::new(&s.label, &s.set)));
        for p in &art.partitions {
            payload.extend(p.classes().iter().zip(p.labels()).map(|(c, l)| NamedElements::new(l, c)));
        }
    }
    let result = ConstructResult { sets, partitions, affine_checks };
    let d = Document::new(argv, g.descriptor(), &art.provenance, payload, result);
    finish(d, start, passed)
}

fn read_set(g: &crate::groups::GroupHandle, path: &std::path::Path) -> Result<ElementSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let list = match &v {
        serde_json::Value::Array(_) => &v,
        serde_json::Value::Object(o) if o.contains_key("elements") => &o["elements"],
        serde_json::Value::Object(o) => o
            .get("payload")
            .and_then(|p| p.get(0))
            .and_then(|p| p.get("elements"))
            .ok_or_else(|| Error::Parse("document has no payload elements".into()))?,
        _ => return Err(Error::Parse("expected a JSON array of element indices".into())),
    };
    let ids = list
        .as_array()
        .ok_or_else(|| Error::Parse("elements must be an array".into()))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("bad element index {x}"))))
        .collect::<Result<Vec<u64>>>()?;
    ElementSet::from_indices(g, ids)
}

fn run_verify(argv: &[String], hash_only: bool, a: &VerifyArgs, start: Instant) -> Result<Outcome> {
    let g = parse_group(&a.group)?;
    let s = read_set(&g, &a.set)?;
    let payload = if hash_only { Vec::new() } else { vec![NamedElements::new("input", &s)] };
    match a.kind {
        VerifyKind::Pds | VerifyKind::Ds => {
            let kind = if matches!(a.kind, VerifyKind::Pds) { SetKind::Pds } else { SetKind::Ds };
            let cert = cert_set(&g, &s, kind)?;
            let passed = cert.passed();
            finish(Document::new(argv, g.descriptor(), "input", payload, cert), start, passed)
        }
        VerifyKind::SkewHadamard => {
            let r = verify_skew_hadamard(&g, &s)?;
            let passed = r.is_skew_hadamard;
            finish(Document::new(argv, g.descriptor(), "input", payload, r), start, passed)
        }
    }
}

fn parse_mode(s: &str) -> Result<AmorphicMode> {
    if s == "all" {
        return Ok(AmorphicMode::All);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        ["sample", n, seed] => Ok(AmorphicMode::Sample {
            n: n.parse().map_err(|_| Error::Parse(format!("bad sample size `{n}`")))?,
            seed: seed.parse().map_err(|_| Error::Parse(format!("bad seed `{seed}`")))?,
        }),
        _ => Err(Error::Parse(format!("mode must be `all` or `sample:n:seed`, got `{s}`"))),
    }
}

fn run_scheme(argv: &[String], action: &SchemeAction, start: Instant) -> Result<Outcome> {
    match action {
        SchemeAction::Constants(a) => {
            let art = parse_artifact(&family_spec(a)?)?;
            let p = art.main_partition()?;
            let r = scheme_constants(p.owner(), p)?;
            finish(Document::new(argv, art.group.descriptor(), &art.provenance, Vec::new(), r), start, true)
        }
        SchemeAction::Amorphic { source, mode } => {
            let art = parse_artifact(&family_spec(source)?)?;
            let p = art.main_partition()?;
            let r = verify_amorphic(p.owner(), p, parse_mode(mode)?)?;
            let passed = r.all_passed();
            finish(Document::new(argv, art.group.descriptor(), &art.provenance, Vec::new(), r), start, passed)
        }
    }
}

fn run_product(argv: &[String], hash_only: bool, action: &ProductAction, start: Instant) -> Result<Outcome> {
    let payload = |label: &str, s: &ElementSet| if hash_only { Vec::new() } else { vec![NamedElements::new(label, s)] };
    match action {
        ProductAction::Paley(pair) | ProductAction::StantonSprott(pair) => {
            let (l, r) = (parse_artifact(&pair.left)?, parse_artifact(&pair.right)?);
            let paley = matches!(action, ProductAction::Paley(_));
            let (ls, rs) = (&l.main_set()?.set, &r.main_set()?.set);
            let (gg, s) = if paley {
                paley_product(&l.group, ls, &r.group, rs)?
            } else {
                stanton_sprott(&l.group, ls, &r.group, rs)?
            };
            let check = if paley {
                certify_product(&gg, &s, Target::Pds, paley_product_size(l.group.order()))?
            } else {
                certify_product(&gg, &s, Target::Ds, stanton_sprott_size(gg.order()))?
            };
            let passed = check.passed();
            let res = ProductResult {
                left: factor(&l),
                right: factor(&r),
                target: None,
                recipe_fibers: None,
                round_trip: None,
                source_check: None,
                check,
            };
            let prov = if paley { "paley-product" } else { "skew-hadamard-product" };
            finish(Document::new(argv, gg.descriptor(), prov, payload("product", &s), res), start, passed)
        }
        ProductAction::Recipe { pair, target } => {
            let (l, r, t) = (parse_artifact(&pair.left)?, parse_artifact(&pair.right)?, parse_artifact(target)?);
            let (g0, d0) = paley_product(&l.group, &l.main_set()?.set, &r.group, &r.main_set()?.set)?;
            let expected = paley_product_size(l.group.order());
            let source_check = certify_product(&g0, &d0, Target::Pds, expected)?;
            let recipe = recipe_extract(l.main_partition()?, &r.group, &d0)?;
            let (_, back) = recipe_instantiate(&recipe, l.main_partition()?, &r.group)?;
            let (gg, s) = recipe_instantiate(&recipe, t.main_partition()?, &r.group)?;
            let check = certify_product(&gg, &s, Target::Pds, expected)?;
            let same_params = match (&source_check.certificate, &check.certificate) {
                (Some(a), Some(b)) => a.params == b.params,
                _ => true,
            };
            let round_trip = back == d0;
            let passed = source_check.passed() && check.passed() && same_params && round_trip;
            let res = ProductResult {
                left: factor(&l),
                right: factor(&r),
                target: Some(factor(&t)),
                recipe_fibers: Some(recipe.fibers.len()),
                round_trip: Some(round_trip),
                source_check: Some(source_check),
                check,
            };
            finish(
                Document::new(argv, gg.descriptor(), "recipe-substitution", payload("product", &s), res),
                start,
                passed,
            )
        }
        ProductAction::Combine3 { pair, mode } => {
            let (l, r) = (parse_artifact(&pair.left)?, parse_artifact(&pair.right)?);
            let (mode, name) = match mode {
                ModeArg::Lc => (Combine3Mode::LC, "LC"),
                ModeArg::Ll => (Combine3Mode::LL, "LL"),
                ModeArg::Cc => (Combine3Mode::CC, "CC"),
            };
            let (gg, scheme) = combine3(l.main_partition()?, r.main_partition()?, mode)?;
            let m = log9(l.group.order());
            let n = log9(r.group.order());
            let sizes = combine3_sizes(mode, m, n);
            let neg = mode == Combine3Mode::LC;
            let mut classes = Vec::new();
            for (i, c) in scheme.classes().iter().enumerate() {
                let check = certify_product(&gg, c, Target::Pds, sizes[i])?;
                let family_ok = check.certificate.as_ref().is_none_or(|cert| {
                    cert.kind == CertKind::Pds && cert.has_tag(|t| if neg { t.is_neg_latin() } else { t.is_latin() })
                });
                classes.push(Combine3Class {
                    label: scheme.labels()[i].clone(),
                    expected_family: if neg { "neg-latin" } else { "latin" },
                    family_ok,
                    check,
                });
            }
            let cover_ok = scheme.cover_problem().is_none();
            let passed = cover_ok && classes.iter().all(|c| c.family_ok && c.check.passed());
            let mut pl = Vec::new();
            if !hash_only {
                pl.extend(scheme.classes().iter().zip(scheme.labels()).map(|(c, lab)| NamedElements::new(lab, c)));
            }
            let res = Combine3Result { left: factor(&l), right: factor(&r), mode: name, cover_ok, classes };
            finish(Document::new(argv, gg.descriptor(), "three-class-combination", pl, res), start, passed)
        }
    }
}

fn log9(order: u64) -> u32 {
    let mut m = 0;
    let mut o = order;
    while o > 1 {
        o /= 9;
        m += 1;
    }
    m
}

pub fn execute(cli: &Cli, argv: &[String]) -> Result<Outcome> {
    let start = Instant::now();
    with_threads(cli.threads, || match &cli.command {
        Command::Construct(a) => run_construct(argv, cli.hash_only, a, start),
        Command::Verify(a) => run_verify(argv, cli.hash_only, a, start),
        Command::Scheme { action } => run_scheme(argv, action, start),
        Command::Product { action } => run_product(argv, cli.hash_only, action, start),
    })
}

/// Parses `args` (including the program name), runs the command and returns the
/// exit code with the document text.
pub fn run_capture<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return (0, e.to_string());
        }
        Err(e) => return (2, ErrorDocument::new(&argv, "Usage", &e.to_string()).to_json()),
    };
    match execute(&cli, &argv) {
        Ok(o) => {
            let code = if o.passed { 0 } else { 1 };
            match &cli.out {
                Some(path) => match std::fs::write(path, &o.json) {
                    Ok(()) => (code, String::new()),
                    Err(e) => (2, ErrorDocument::new(&argv, "Io", &e.to_string()).to_json()),
                },
                None => (code, o.json),
            }
        }
        Err(e) => (2, ErrorDocument::from_error(&argv, &e).to_json()),
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, text) = run_capture(args);
    if !text.is_empty() {
        println!("{text}");
    }
    code
}
