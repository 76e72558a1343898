//! Command-line frontend: braid-word evaluation, JSON input ingestion,
//! and orchestration of checks and closures. Every run emits exactly one
//! JSON document on stdout; diagnostics go to stderr.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bvs::{flip_bvs, BraidWord, Bvs};
use crate::closure::{
    closure_mod_scalars_with, dimino_closure_with, discussion_generators, monomial_certificate,
    ClosureStatus, DEFAULT_BUDGET,
};
use crate::cyclo::CycMatrix;
use crate::gaussian::{
    check_coprime_factorization, es_braid_relations, es_conjugation_check, gauss_sum,
    gaussian_bvs, jones_conditions,
};
use crate::grouptype::{
    cyclic_3cocycle, linearize, yd_braiding, FiniteGroup, PhaseTwist, SetSolution, YdModule,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_BUDGET_EXCEEDED: i32 = 3;
pub const EXIT_INPUT_ERROR: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "braidrep",
    about = "Exact braid group representations from braided vector spaces",
    version
)]
pub struct Cli {
    /// Emit the report as JSON (always on; accepted for compatibility).
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1)]
    pub json: bool,
    /// Element budget for closures (also via BRAIDREP_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Allow matrices beyond 256x256 / tensor spaces beyond 4096 /
    /// budgets beyond 10^7.
    #[arg(long, global = true, default_value_t = false)]
    pub override_size_guard: bool,
    /// RNG seed for sampling-based spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Checks on the Gaussian family at parameter m.
    Gaussian(GaussianArgs),
    /// Checks on a set-theoretic solution loaded from a file.
    Settheoretic(SetArgs),
    /// Checks on a conjugacy-class module over a finite group.
    Yd(YdArgs),
    /// Verify the standard 3-cocycle on Z/n.
    Cocycle(CocycleArgs),
    /// Braid-word evaluation.
    Braid(BraidArgs),
    /// Matrix-group closure of a representation's image.
    Image(ImageArgs),
}

#[derive(Args, Debug)]
pub struct GaussianArgs {
    #[arg(long)]
    pub m: u64,
    /// Strand count for the checks that need one.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub check: GaussianCheck,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GaussianCheck {
    Ybe,
    Unitary,
    Relations,
    Conjugation,
    GaussSum,
    Factorization,
    Jones,
}

#[derive(Args, Debug)]
pub struct SetArgs {
    /// Solution file (JSON: {"size": n, "S": [[[x',y'],...],...]}).
    #[arg(long)]
    pub file: PathBuf,
    /// Optional phase twist file (JSON: {"phases": [[{"k":k,"N":N},...],...]}).
    #[arg(long)]
    pub twist: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub check: SetCheck,
    /// Strand count for the image check.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SetCheck {
    Ybe,
    Image,
}

#[derive(Args, Debug)]
pub struct YdArgs {
    /// Group: a Cayley-table JSON file, or builtin `cyclic:N` / `s3`.
    #[arg(long)]
    pub group: String,
    /// Index of a conjugacy class representative.
    #[arg(long)]
    pub class: usize,
    #[arg(long, value_enum)]
    pub check: SetCheck,
    /// Strand count for the image check.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct CocycleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: i64,
    /// Run the exhaustive cocycle-identity check.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    #[command(subcommand)]
    pub action: BraidAction,
}

#[derive(Subcommand, Debug)]
pub enum BraidAction {
    /// Evaluate a braid word to its representing matrix.
    Eval(BraidEvalArgs),
}

#[derive(Args, Debug)]
pub struct BraidEvalArgs {
    /// Braid word, e.g. "s1 s2^-1 s1" or "1 -2 1".
    #[arg(long)]
    pub word: String,
    /// BVS spec: builtin `flip<d>` / `gaussian:M` / `discussion-example:<k>`,
    /// or a JSON file path.
    #[arg(long)]
    pub bvs: String,
}

#[derive(Args, Debug)]
pub struct ImageArgs {
    /// BVS spec, as for `braid eval`.
    #[arg(long)]
    pub bvs: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Close modulo scalar matrices.
    #[arg(long, default_value_t = false)]
    pub projective: bool,
}

/// Representation source: a braided vector space, or raw braid-generator
/// matrices (the builtin two-generator fixture).
enum RepSource {
    Braided(Box<Bvs>),
    RawGenerators(Vec<CycMatrix>),
}

impl RepSource {
    fn braid_generators(&self, n: usize, override_guard: bool) -> Result<Vec<CycMatrix>> {
        match self {
            RepSource::Braided(b) => b.braid_generators(n, override_guard),
            RepSource::RawGenerators(gens) => {
                if n != gens.len() + 1 {
                    return Err(Error::NotApplicable(format!(
                        "this fixture provides generators for {} strands only",
                        gens.len() + 1
                    )));
                }
                Ok(gens.clone())
            }
        }
    }
}

fn parse_bvs_spec(spec: &str, override_guard: bool) -> Result<RepSource> {
    if let Some(rest) = spec.strip_prefix("gaussian:") {
        let m: u64 = rest
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad parameter in `{spec}`") })?;
        return Ok(RepSource::Braided(Box::new(gaussian_bvs(m)?.bvs()?)));
    }
    if let Some(rest) = spec.strip_prefix("flip") {
        if let Ok(d) = rest.parse::<usize>() {
            if d == 0 {
                return Err(Error::Parse { pos: 0, msg: "flip dimension must be positive".into() });
            }
            return Ok(RepSource::Braided(Box::new(flip_bvs(d))));
        }
    }
    if let Some(rest) = spec.strip_prefix("discussion-example:") {
        let k: u64 = rest
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad parameter in `{spec}`") })?;
        if k == 0 {
            return Err(Error::Parse { pos: 0, msg: "root order must be positive".into() });
        }
        return Ok(RepSource::RawGenerators(discussion_generators(k).to_vec()));
    }
    // otherwise a file path with BVS JSON {"dim", "c", "unitary"}
    let _ = override_guard;
    load_bvs_file(std::path::Path::new(spec)).map(|b| RepSource::Braided(Box::new(b)))
}

// ---------------------------------------------------------------------------
// Typed file loaders (all type invariants run at load)
// ---------------------------------------------------------------------------

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(Error::from)
}

pub fn load_set_solution(path: &std::path::Path) -> Result<SetSolution> {
    read_json(path)
}

pub fn load_phase_twist(path: &std::path::Path) -> Result<PhaseTwist> {
    read_json(path)
}

pub fn load_group(path: &std::path::Path) -> Result<FiniteGroup> {
    read_json(path)
}

#[derive(serde::Deserialize)]
struct BvsFile {
    dim: usize,
    c: CycMatrix,
    #[allow(dead_code)]
    unitary: Option<bool>,
}

pub fn load_bvs_file(path: &std::path::Path) -> Result<Bvs> {
    let raw: BvsFile = read_json(path)?;
    Bvs::new(raw.dim, raw.c)
}

fn resolve_group(spec: &str) -> Result<FiniteGroup> {
    if let Some(rest) = spec.strip_prefix("cyclic:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad parameter in `{spec}`") })?;
        if n == 0 {
            return Err(Error::Parse { pos: 0, msg: "group order must be positive".into() });
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if spec == "s3" {
        return Ok(FiniteGroup::symmetric(3));
    }
    load_group(std::path::Path::new(spec))
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

struct Ctx {
    budget: u64,
    override_guard: bool,
    seed: u64,
}

fn budget_from(cli_budget: Option<u64>) -> u64 {
    cli_budget
        .or_else(|| std::env::var("BRAIDREP_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_BUDGET)
}

/// Run a parsed command; returns the JSON report and the exit code.
pub fn run(cli: Cli) -> (Value, i32) {
    let ctx = Ctx {
        budget: budget_from(cli.budget),
        override_guard: cli.override_size_guard,
        seed: cli.seed,
    };
    let outcome = match cli.command {
        Command::Gaussian(a) => run_gaussian(&a, &ctx),
        Command::Settheoretic(a) => run_settheoretic(&a, &ctx),
        Command::Yd(a) => run_yd(&a, &ctx),
        Command::Cocycle(a) => run_cocycle(&a),
        Command::Braid(a) => run_braid(&a, &ctx),
        Command::Image(a) => run_image(&a, &ctx),
    };
    match outcome {
        Ok(pair) => pair,
        Err(e) => {
            let code = exit_code_for(&e);
            (json!({ "error": e.to_string() }), code)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::TwistBreaksYbe(_)
        | Error::YbeFails(_)
        | Error::AxiomViolation(_)
        | Error::ConstructionCheckFailed(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT_ERROR,
    }
}

fn verdict(check: &str, holds: bool, extra: Value) -> (Value, i32) {
    let mut doc = json!({ "check": check, "holds": holds, "details": extra });
    if let Some(obj) = doc.as_object_mut() {
        obj.entry("details").or_insert(Value::Null);
    }
    (
        std::mem::take(&mut doc),
        if holds { EXIT_OK } else { EXIT_CHECK_FAILED },
    )
}

fn run_gaussian(a: &GaussianArgs, ctx: &Ctx) -> Result<(Value, i32)> {
    let with_mn = |mut v: (Value, i32), n: Option<usize>| {
        if let Some(obj) = v.0.as_object_mut() {
            obj.insert("m".into(), json!(a.m));
            if let Some(n) = n {
                obj.insert("n".into(), json!(n));
            }
        }
        v
    };
    Ok(match a.check {
        GaussianCheck::Ybe => {
            let b = gaussian_bvs(a.m)?.bvs()?;
            let rep = b.check_ybe()?;
            with_mn(verdict("ybe", rep.holds, serde_json::to_value(&rep)?), None)
        }
        GaussianCheck::Unitary => {
            let b = gaussian_bvs(a.m)?.bvs()?;
            let holds = b.check_unitary();
            with_mn(verdict("unitary", holds, Value::Null), None)
        }
        GaussianCheck::Relations => {
            let holds = es_braid_relations(a.m, a.n)?;
            with_mn(verdict("relations", holds, Value::Null), Some(a.n))
        }
        GaussianCheck::Conjugation => {
            let rep = es_conjugation_check(a.m, a.n)?;
            with_mn(
                verdict("conjugation", rep.holds, serde_json::to_value(&rep)?),
                Some(a.n),
            )
        }
        GaussianCheck::GaussSum => {
            let rep = gauss_sum(a.m);
            with_mn(
                verdict("gauss-sum", rep.closed_form_matches, serde_json::to_value(&rep)?),
                None,
            )
        }
        GaussianCheck::Factorization => {
            let rep = check_coprime_factorization(a.m, a.n, ctx.override_guard)?;
            with_mn(
                verdict("factorization", rep.holds_symbolically && rep.holds_under_localization, serde_json::to_value(&rep)?),
                Some(a.n),
            )
        }
        GaussianCheck::Jones => {
            let rep = jones_conditions(a.m)?;
            with_mn(verdict("jones", rep.holds, serde_json::to_value(&rep)?), None)
        }
    })
}

fn run_settheoretic(a: &SetArgs, ctx: &Ctx) -> Result<(Value, i32)> {
    let sol = load_set_solution(&a.file)?;
    let twist = match &a.twist {
        Some(p) => load_phase_twist(p)?,
        None => PhaseTwist::trivial(sol.size()),
    };
    match a.check {
        SetCheck::Ybe => {
            let set_rep = sol.check_set_theoretic();
            if !set_rep.holds {
                return Ok(verdict("ybe", false, serde_json::to_value(&set_rep)?));
            }
            match linearize(&sol, &twist) {
                Ok(_) => Ok(verdict("ybe", true, serde_json::to_value(&set_rep)?)),
                Err(Error::TwistBreaksYbe(t)) => {
                    Ok(verdict("ybe", false, json!({ "twist_breaks_at": t })))
                }
                Err(e) => Err(e),
            }
        }
        SetCheck::Image => {
            let bvs = linearize(&sol, &twist)?;
            image_report(&RepSource::Braided(Box::new(bvs)), a.n, false, ctx)
        }
    }
}

fn run_yd(a: &YdArgs, ctx: &Ctx) -> Result<(Value, i32)> {
    let group = resolve_group(&a.group)?;
    if a.class >= group.order() {
        return Err(Error::IndexOutOfRange(format!(
            "class representative {} in a group of order {}",
            a.class,
            group.order()
        )));
    }
    let module = YdModule::conjugation_module(&group, a.class);
    match a.check {
        SetCheck::Ybe => match yd_braiding(&module) {
            Ok(b) => Ok(verdict(
                "ybe",
                true,
                json!({ "dim": b.dim(), "class_size": module.dim() }),
            )),
            Err(Error::YbeFails(w)) => Ok(verdict("ybe", false, json!({ "witness": w }))),
            Err(e) => Err(e),
        },
        SetCheck::Image => {
            let bvs = yd_braiding(&module)?;
            image_report(&RepSource::Braided(Box::new(bvs)), a.n, false, ctx)
        }
    }
}

fn run_cocycle(a: &CocycleArgs) -> Result<(Value, i32)> {
    if a.n == 0 {
        return Err(Error::invariant("order", "n must be positive"));
    }
    if !a.check {
        return Ok(verdict("cocycle", true, json!({ "n": a.n, "s": a.s, "skipped": true })));
    }
    match cyclic_3cocycle(a.n, a.s) {
        Ok(w) => Ok(verdict(
            "cocycle",
            true,
            json!({ "n": a.n, "s": a.s, "trivial": w.is_trivial() }),
        )),
        Err(Error::Invariant { name, detail }) => Ok(verdict(
            "cocycle",
            false,
            json!({ "n": a.n, "s": a.s, "violated": name, "at": detail }),
        )),
        Err(e) => Err(e),
    }
}

fn run_braid(a: &BraidArgs, ctx: &Ctx) -> Result<(Value, i32)> {
    let BraidAction::Eval(e) = &a.action;
    let word = BraidWord::parse(&e.word)?;
    let source = parse_bvs_spec(&e.bvs, ctx.override_guard)?;
    let matrix = match &source {
        RepSource::Braided(b) => b.eval_braid_word(&word, ctx.override_guard)?,
        RepSource::RawGenerators(gens) => {
            let mut acc = CycMatrix::identity(gens[0].rows());
            for &letter in word.letters() {
                let idx = letter.unsigned_abs() as usize - 1;
                let g = gens.get(idx).ok_or_else(|| {
                    Error::IndexOutOfRange(format!(
                        "generator s{} in a {}-generator fixture",
                        idx + 1,
                        gens.len()
                    ))
                })?;
                let step = if letter > 0 { g.clone() } else { g.inverse()? };
                acc = acc.mul(&step)?;
            }
            acc
        }
    };
    let doc = json!({
        "word": e.word,
        "strands": word.strands(),
        "matrix": serde_json::to_value(&matrix)?,
    });
    Ok((doc, EXIT_OK))
}

fn run_image(a: &ImageArgs, ctx: &Ctx) -> Result<(Value, i32)> {
    let source = parse_bvs_spec(&a.bvs, ctx.override_guard)?;
    image_report(&source, a.n, a.projective, ctx)
}

fn image_report(
    source: &RepSource,
    n: usize,
    projective: bool,
    ctx: &Ctx,
) -> Result<(Value, i32)> {
    let gens = source.braid_generators(n, ctx.override_guard)?;
    let start = Instant::now();
    let result = if projective {
        closure_mod_scalars_with(&gens, ctx.budget, ctx.override_guard, ctx.seed)?
    } else {
        dimino_closure_with(&gens, ctx.budget, ctx.override_guard, ctx.seed)?
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let cert = monomial_certificate(&gens)?;
    let doc = json!({
        "status": result.status,
        "order": result.order,
        "budget": ctx.budget,
        "elapsed_ms": elapsed_ms,
        "witness_hashes": result.witness_hashes,
        "monomial_certificate": cert.map(|c| json!({
            "perm_quotient_order": c.perm_quotient_order,
            "diagonal_rank_note": c.diagonal_rank_note,
        })),
    });
    let code = match result.status {
        ClosureStatus::Finite => EXIT_OK,
        ClosureStatus::BudgetExceeded => EXIT_BUDGET_EXCEEDED,
    };
    Ok((doc, code))
}

/// Process entry point: parse argv, run, print the one JSON document.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version to stdout with success status
            if e.use_stderr() {
                eprintln!("{e}");
                return EXIT_INPUT_ERROR;
            }
            print!("{e}");
            return EXIT_OK;
        }
    };
    let (doc, code) = run(cli);
    println!("{}", serde_json::to_string(&doc).expect("report serializes"));
    code
}
