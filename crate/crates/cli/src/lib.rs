//! Command-line front end for `polysym`.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! with the rendered report, so the binary is a thin wrapper.

pub mod doc;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector, Vector3};
use polysym::discgauge::{self, cohomology, GaugeComplex};
use polysym::exactla::{self, Subspace, Vector};
use polysym::exec::Execution;
use polysym::liealg::{self, LieAlgebra, SamplingOptions};
use polysym::pointham::{self, ExactPatch, PointField, SampleOptions};
use polysym::polycore::{self, CoefficientMap, VForm};
use polysym::verify::{self, SuiteConfig};
use polysym::{Error, Result};

use doc::{ComplexDoc, Document, FormDoc, FunctionSpec, LieDoc, PatchDoc};
use report::{float, float_rows, floats, sci, vector, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRACT: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "polysym", version, about = "Vector-valued symplectic linear algebra, Hamiltonian checks and discrete gauge reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Problem document (JSON)
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Built-in problem instead of a file
    #[arg(long, global = true)]
    builtin: Option<String>,
    /// Seed for all sampling; overrides a seed in the document
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Trials (verify) or samples (sampling commands)
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Line-delimited `path<TAB>value` output
    #[arg(long, global = true)]
    machine: bool,
    /// Multiplies the numeric tolerances of numeric checks
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Run trials on one thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orthogonal of a subspace
    Orth(SubspaceArg),
    /// Isotropic / coisotropic / Lagrangian / polysymplectic flags
    Classify(SubspaceArg),
    /// Linear reduction by a subspace
    Reduce(SubspaceArg),
    /// Embedding into the canonical model
    Embed,
    /// Lie-algebraic reductions and SO(3) counterexamples
    Lie { verb: LieVerb, #[command(flatten)] sub: SubspaceArg },
    /// Pointwise Hamiltonian machinery on a coordinate patch
    Ham { verb: HamVerb },
    /// Discrete abelian gauge theory on a Δ-complex
    Gauge { verb: GaugeVerb },
    /// Randomized property suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct SubspaceArg {
    /// Basis vectors, e.g. `e1,e3` (1-based), overriding the document
    #[arg(long)]
    subspace: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Option<String>,
    /// List suites and exit
    #[arg(long)]
    list: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LieVerb {
    Center,
    Centralizer,
    Reduce,
    Arnold,
    Convexity,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum HamVerb {
    Omega,
    Field,
    Bracket,
    Moment,
    Embed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GaugeVerb {
    Betti,
    Omega,
    Moment,
    Reduce,
    Lagrangian,
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_VALIDATION, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut report = Report::new();
    report.value("command", args.iter().skip(1).cloned().collect::<Vec<_>>().join(" "));
    let ctx = Ctx::new(&cli.common);
    let result = match &cli.command {
        Command::Orth(s) => form_command(&ctx, s, FormVerb::Orth, &mut report),
        Command::Classify(s) => form_command(&ctx, s, FormVerb::Classify, &mut report),
        Command::Reduce(s) => form_command(&ctx, s, FormVerb::Reduce, &mut report),
        Command::Embed => form_command(&ctx, &SubspaceArg { subspace: None }, FormVerb::Embed, &mut report),
        Command::Lie { verb, sub } => lie_command(&ctx, *verb, sub, &mut report),
        Command::Ham { verb } => ham_command(&ctx, *verb, &mut report),
        Command::Gauge { verb } => gauge_command(&ctx, *verb, &mut report),
        Command::Verify(v) => verify_command(&ctx, v, &mut report),
    };
    let stdout = if cli.common.machine { report.render_machine() } else { report.render_text() };
    match result {
        Ok(Status::Ok) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Ok(Status::Failed(msg)) => Outcome { code: EXIT_CONTRACT, stdout, stderr: format!("failed: {msg}\n") },
        Err(e) => {
            let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_CONTRACT };
            Outcome { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

/// A command that ran to completion but whose check did not pass.
enum Status {
    Ok,
    Failed(String),
}

struct Ctx {
    common: Common,
}

impl Ctx {
    fn new(common: &Common) -> Self {
        Ctx { common: common.clone() }
    }

    fn load(&self, builtin: fn(&str) -> Result<Document>) -> Result<Document> {
        match (&self.common.file, &self.common.builtin) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
                Document::parse(&text)
            }
            (None, Some(name)) => builtin(name),
            (Some(_), Some(_)) => Err(Error::Malformed("give only one of --file and --builtin".into())),
            (None, None) => Err(Error::Malformed("one of --file or --builtin is required".into())),
        }
    }

    fn seed(&self, doc: &Document) -> u64 {
        self.common.seed.or(doc.seed()).unwrap_or(0)
    }

    fn execution(&self) -> Execution {
        if self.common.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    fn tolerance_scale(&self) -> Result<f64> {
        let s = self.common.tolerance_scale;
        if s.is_finite() && s > 0.0 {
            Ok(s)
        } else {
            Err(Error::Malformed("--tolerance-scale must be positive".into()))
        }
    }
}

fn wrong_kind(expected: &str, doc: &Document) -> Error {
    Error::Malformed(format!("expected a `{expected}` document, found `{}`", doc.kind()))
}

/// `e1,e3` (1-based) as coordinate vectors of `Q^n`.
fn parse_subspace_flag(text: &str, n: usize) -> Result<Vec<Vector>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let i: usize = tok
                .strip_prefix('e')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Malformed(format!("--subspace: `{tok}` is not of the form eN")))?;
            if i == 0 || i > n {
                return Err(Error::Malformed(format!("--subspace: e{i} out of range 1..={n}")));
            }
            Ok(exactla::unit_vector(n, i - 1))
        })
        .collect()
}

fn resolve_subspace(flag: &SubspaceArg, doc_subspace: &Option<Vec<Vector>>, n: usize) -> Result<Option<Subspace>> {
    let vectors = match (&flag.subspace, doc_subspace) {
        (Some(text), _) => parse_subspace_flag(text, n)?,
        (None, Some(vs)) => vs.clone(),
        (None, None) => return Ok(None),
    };
    Subspace::span(n, vectors).map(Some)
}

fn require_subspace(s: Option<Subspace>) -> Result<Subspace> {
    s.ok_or_else(|| Error::Malformed("no subspace given (document `subspace` or --subspace)".into()))
}

fn form_summary(w: &VForm) -> Report {
    let mut r = Report::new();
    r.value("dim_u", w.dim_u()).value("dim_v", w.dim_v()).value("nondegenerate", w.is_nondegenerate());
    r
}

// ---------------------------------------------------------------------------
// orth / classify / reduce / embed

#[derive(Clone, Copy, PartialEq)]
enum FormVerb {
    Orth,
    Classify,
    Reduce,
    Embed,
}

fn form_command(ctx: &Ctx, flag: &SubspaceArg, verb: FormVerb, out: &mut Report) -> Result<Status> {
    let doc = ctx.load(doc::builtin_form)?;
    let Document::Form(fd) = &doc else {
        return Err(wrong_kind("form", &doc));
    };
    let FormDoc { subspace, coefficient_map, .. } = fd;
    let mut w = fd.vform()?;
    out.section("form", form_summary(&w));
    if let Some(m) = coefficient_map {
        let f = CoefficientMap::new(m.clone())?;
        let (fw, ker) = polycore::apply_coefficient_map(&f, &w)?;
        let mut r = Report::new();
        r.value("rows", f.target_dim())
            .value("surjective", f.is_surjective())
            .value("injective", f.is_injective())
            .value("nondegenerate_after", fw.is_nondegenerate());
        r.subspace("degeneracy", &ker);
        out.section("coefficient_map", r);
        w = fw;
    }
    let n = w.dim_u();
    let a = resolve_subspace(flag, subspace, n)?;
    match verb {
        FormVerb::Orth => {
            let a = require_subspace(a)?;
            out.subspace("subspace", &a);
            out.subspace("orthogonal", &polycore::orthogonal(&w, &a)?);
        }
        FormVerb::Classify => {
            let a = require_subspace(a)?;
            let c = polycore::classify(&w, &a)?;
            out.subspace("subspace", &a);
            out.value("class", c.label())
                .value("isotropic", c.isotropic)
                .value("coisotropic", c.coisotropic)
                .value("lagrangian", c.lagrangian)
                .value("polysymplectic", c.polysymplectic);
        }
        FormVerb::Reduce => {
            let a = require_subspace(a)?;
            out.subspace("subspace", &a);
            reduction_report(&polycore::linear_reduce(&w, &a)?, out);
        }
        FormVerb::Embed => {
            let e = polycore::universal_embed(&w)?;
            let target = polycore::canonical_model(n, w.dim_v())?;
            let exact = target.pullback(&e)? == w;
            out.value("target_dim", e.rows());
            out.matrix("embedding", &e);
            out.value("pullback_equals_form", exact);
            if !exact {
                return Err(Error::Inconsistent("pullback differs from the form".into()));
            }
        }
    }
    Ok(Status::Ok)
}

fn reduction_report(red: &polycore::LinearReduction, out: &mut Report) {
    let mut r = Report::new();
    r.value("dim", red.dim());
    r.list("section", red.carrier.section_vectors().iter().map(|v| vector(v)).collect());
    out.section("carrier", r);
    for (i, c) in red.reduced_form.components().iter().enumerate() {
        out.matrix(&format!("reduced_component_{}", i + 1), c);
    }
    out.subspace("kernel", &red.kernel);
    out.value("nondegenerate", red.nondegenerate);
}

// ---------------------------------------------------------------------------
// lie

const DEFAULT_XI: [f64; 3] = [1.0, 0.0, 0.0];
const DEFAULT_GROUP_SAMPLES: usize = 1000;

fn lie_command(ctx: &Ctx, verb: LieVerb, flag: &SubspaceArg, out: &mut Report) -> Result<Status> {
    let doc = ctx.load(doc::builtin_lie)?;
    let seed = ctx.seed(&doc);
    let Document::Lie(ld) = &doc else {
        return Err(wrong_kind("lie", &doc));
    };
    let g = ld.algebra()?;
    out.value("dim", g.dim());
    let a = resolve_subspace(flag, &ld.subspace, g.dim())?;
    match verb {
        LieVerb::Center => {
            out.subspace("center", &liealg::center(&g));
        }
        LieVerb::Centralizer => {
            let a = require_subspace(a)?;
            out.subspace("subspace", &a);
            out.subspace("centralizer", &liealg::centralizer(&g, &a)?);
        }
        LieVerb::Reduce => {
            let a = require_subspace(a)?;
            out.subspace("subspace", &a);
            out.value("class", polycore::classify(&liealg::bracket_form(&g)?, &a)?.label());
            reduction_report(&liealg::lie_reduce(&g, &a)?, out);
        }
        LieVerb::Arnold | LieVerb::Convexity => return group_check(ctx, verb, ld, &g, seed, out),
    }
    Ok(Status::Ok)
}

fn group_check(ctx: &Ctx, verb: LieVerb, ld: &LieDoc, g: &LieAlgebra, seed: u64, out: &mut Report) -> Result<Status> {
    if *g != LieAlgebra::so3() {
        return Err(Error::Malformed("group checks need the so3 structure constants".into()));
    }
    let xi = Vector3::from(ld.xi.unwrap_or(DEFAULT_XI));
    let opts = SamplingOptions {
        samples: ctx.common.trials.unwrap_or(DEFAULT_GROUP_SAMPLES),
        seed,
        tolerance_scale: ctx.tolerance_scale()?,
        execution: ctx.execution(),
    };
    out.value("group", "SO(3)").value("xi", floats(xi.iter())).value("samples", opts.samples).value("seed", seed);
    if let LieVerb::Arnold = verb {
        let t = ld.t.unwrap_or(1.0);
        let r = liealg::arnold_counterexample(&xi, t, &opts)?;
        out.value("t", float(t))
            .value("fixed_points_found", r.fixed_points_found)
            .value("min_displacement", sci(r.min_displacement));
        if r.fixed_points_found > 0 {
            return Ok(Status::Failed(format!("{} fixed points", r.fixed_points_found)));
        }
        return Ok(Status::Ok);
    }
    let r = liealg::convexity_counterexample(&xi, &opts)?;
    out.value("on_sphere", r.on_sphere)
        .value("max_radius_defect", sci(r.max_radius_defect))
        .value("midpoint_gap", sci(r.midpoint_gap));
    if let Some((p, q)) = r.pair {
        out.list("pair", vec![floats(p.iter()), floats(q.iter())]);
    }
    out.value("nonconvex", r.certifies_nonconvexity());
    if !(r.on_sphere && r.certifies_nonconvexity()) {
        return Ok(Status::Failed("nonconvexity not certified".into()));
    }
    Ok(Status::Ok)
}

// ---------------------------------------------------------------------------
// ham

const DEFAULT_PATCH_SAMPLES: usize = 100;

fn to_field(func: &FunctionSpec, p: &ExactPatch) -> Result<PointField> {
    match func {
        FunctionSpec::Affine { linear, constant } => {
            let (k, m) = (p.dim_v(), p.dim_m());
            if linear.len() != k || linear.iter().any(|r| r.len() != m) {
                return Err(Error::Malformed(format!("function `linear` must be {k} × {m}")));
            }
            let a = DMatrix::from_fn(k, m, |i, j| linear[i][j]);
            let b = DVector::from_column_slice(constant);
            Ok(PointField::new(move |x| &a * x + &b))
        }
        FunctionSpec::Moment(xi) => {
            if p.dim_m() != 3 || p.dim_v() != 3 {
                return Err(Error::Malformed("`moment` functions need the so3 patch".into()));
            }
            let xi = Vector3::from(*xi);
            Ok(PointField::new(move |x| DVector::from_column_slice(pointham::so3_moment_exact(x, &xi).as_slice())))
        }
    }
}

fn patch_generators(pd: &PatchDoc, p: &ExactPatch) -> Vec<PointField> {
    if pd.patch == "so3" || pd.patch == "rigidbody" {
        return (0..3).map(|i| pointham::so3_generator(Vector3::ith(i, 1.0))).collect();
    }
    let k = p.dim_v();
    let n = p.dim_m() / (1 + k);
    let mut gens: Vec<PointField> = (0..n).map(|j| pointham::canonical_translation(n, k, j)).collect();
    if n == 2 {
        gens.push(pointham::canonical_rotation(k));
    }
    gens
}

fn ham_command(ctx: &Ctx, verb: HamVerb, out: &mut Report) -> Result<Status> {
    let doc = ctx.load(doc::builtin_patch)?;
    let seed = ctx.seed(&doc);
    let Document::Patch(pd) = &doc else {
        return Err(wrong_kind("patch", &doc));
    };
    let patch = pointham::builtin_patch(&pd.patch)?.with_tolerance_scale(ctx.tolerance_scale()?);
    let x = match &pd.point {
        Some(p) => {
            if p.len() != patch.dim_m() {
                return Err(Error::DimensionMismatch { expected: patch.dim_m(), found: p.len() });
            }
            DVector::from_column_slice(p)
        }
        None => patch.sample_points(1, seed).remove(0),
    };
    if !patch.contains(&x) {
        return Err(Error::Malformed("point lies outside the patch domain".into()));
    }
    out.value("patch", patch.name()).value("dim_m", patch.dim_m()).value("dim_v", patch.dim_v());
    out.value("point", floats(x.iter()));
    let function = |i: usize| -> Result<PointField> {
        let func = pd.functions.get(i).ok_or_else(|| Error::Malformed(format!("document needs at least {} functions", i + 1)))?;
        to_field(func, &patch)
    };
    match verb {
        HamVerb::Omega => {
            let w = patch.omega_at(&x)?;
            for (i, c) in w.components.iter().enumerate() {
                out.list(&format!("omega_{}", i + 1), float_rows(c));
            }
            out.value("symmetric_defect", sci(patch.symmetric_defect(&x)?));
            out.value("closedness_defect", sci(patch.closedness_defect(&x)?));
            let rank = w.stacked_rank(pointham::HESSIAN_RANK_TOL);
            out.value("nondegenerate", rank == patch.dim_m());
        }
        HamVerb::Field => {
            let s = pointham::hamiltonian_field(&patch, &function(0)?, &x)?;
            out.value("field", floats(s.field.iter()))
                .value("residual", sci(s.residual))
                .value("threshold", sci(s.threshold))
                .value("rank", s.rank)
                .value("hamiltonian", s.is_hamiltonian());
        }
        HamVerb::Bracket => {
            let b = pointham::poisson_bracket(&patch, &function(0)?, &function(1)?, &x)?;
            out.value("bracket", floats(b.iter()));
        }
        HamVerb::Moment => {
            let opts = SampleOptions {
                samples: ctx.common.trials.unwrap_or(DEFAULT_PATCH_SAMPLES),
                seed,
                execution: ctx.execution(),
            };
            let mu = pointham::moment_from_potential(&patch, patch_generators(pd, &patch), &opts)?;
            out.list("moment", float_rows(&mu.eval(&x)?));
            out.value("samples", opts.samples)
                .value("max_lie_derivative", sci(mu.max_lie_derivative))
                .value("max_identity_defect", sci(mu.max_identity_defect));
        }
        HamVerb::Embed => {
            let e = pointham::local_embed(&patch)?;
            out.value("target", e.target().name());
            out.value("image", floats(e.map(&x)?.iter()));
            let d = e.defect_at(&x)?;
            out.value("pullback_defect", sci(d));
            if d > pointham::MOMENT_TOL * ctx.tolerance_scale()? {
                return Ok(Status::Failed(format!("pullback defect {d:.3e}")));
            }
        }
    }
    Ok(Status::Ok)
}

// ---------------------------------------------------------------------------
// gauge

fn gauge_command(ctx: &Ctx, verb: GaugeVerb, out: &mut Report) -> Result<Status> {
    let doc = ctx.load(doc::builtin_complex)?;
    let Document::Complex(cd) = &doc else {
        return Err(wrong_kind("complex", &doc));
    };
    let c = cd.complex()?;
    out.value("simplices", join(&c.counts()));
    match verb {
        GaugeVerb::Betti => {
            out.value("betti", join(&discgauge::betti_numbers(&c)?));
        }
        GaugeVerb::Omega => {
            let g = GaugeComplex::new(&c)?;
            let (a, b) = cochain_pair(cd, &c)?;
            let w = g.omega(&a, &b)?;
            out.value("alpha", vector(&a)).value("beta", vector(&b));
            out.value("coset_dim", g.coset_dim());
            out.value("coset", vector(&w.coset)).value("representative", vector(&w.representative));
            out.value("skew_certified", w.skew_certified);
        }
        GaugeVerb::Moment => {
            let g = GaugeComplex::new(&c)?;
            let a = match &cd.alpha {
                Some(a) => a.clone(),
                None => cohomology(&c, 1)?.representatives().into_iter().next().unwrap_or_else(|| exactla::zero_vector(c.count(1))),
            };
            out.value("alpha", vector(&a));
            out.matrix("moment", &g.gauge_moment(&a)?);
            out.value("identity_holds", g.moment_identity_holds()?);
            let z = g.moment_zero_set()?;
            out.subspace("zero_set", &z.zero_set);
            out.value("cocycles_dim", z.cocycles.dim()).value("zero_set_equals_z1", z.equals_z1);
        }
        GaugeVerb::Reduce => {
            let red = GaugeComplex::new(&c)?.reduce()?;
            out.value("carrier_dim", red.carrier_dim());
            out.list("h1_basis", red.h1.representatives().iter().map(|v| vector(v)).collect());
            out.value("h2_dim", red.h2.as_ref().map_or(0, |h| h.betti()));
            for (i, m) in red.pairing.iter().enumerate() {
                out.matrix(&format!("pairing_{}", i + 1), m);
            }
        }
        GaugeVerb::Lagrangian => {
            let r = discgauge::lagrangian_check(&c)?;
            out.value("h2_trivial", r.h2_trivial).value("z1_dim", r.z1_dim);
            match (r.z1_is_lagrangian, r.orthogonal_dim) {
                (Some(l), Some(d)) => {
                    out.value("orthogonal_dim", d).value("z1_is_lagrangian", l);
                }
                _ => {
                    out.value("z1_is_lagrangian", "skipped (H² ≠ 0)");
                }
            }
        }
    }
    Ok(Status::Ok)
}

fn cochain_pair(cd: &ComplexDoc, c: &discgauge::DeltaComplex) -> Result<(Vector, Vector)> {
    if let (Some(a), Some(b)) = (&cd.alpha, &cd.beta) {
        return Ok((a.clone(), b.clone()));
    }
    let reps = cohomology(c, 1)?.representatives();
    match reps.as_slice() {
        [a, b, ..] => Ok((cd.alpha.clone().unwrap_or_else(|| a.clone()), cd.beta.clone().unwrap_or_else(|| b.clone()))),
        _ => Err(Error::Vacuous("H¹ has dimension below 2; give `alpha` and `beta`".into())),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// verify

const DEFAULT_TRIALS: usize = 100;

fn verify_command(ctx: &Ctx, v: &VerifyArgs, out: &mut Report) -> Result<Status> {
    if v.list {
        out.list("suites", verify::SUITES.iter().map(|s| s.name.to_string()).collect());
        return Ok(Status::Ok);
    }
    let name = v.suite.as_deref().ok_or_else(|| Error::Malformed("--suite is required".into()))?;
    let cfg = SuiteConfig {
        seed: ctx.common.seed.unwrap_or(0),
        trials: ctx.common.trials.unwrap_or(DEFAULT_TRIALS),
        execution: ctx.execution(),
        tolerance_scale: ctx.tolerance_scale()?,
    };
    let r = verify::run_suite(name, &cfg)?;
    out.value("suite", r.suite).value("seed", cfg.seed);
    out.list("identities", r.identities.iter().map(|s| s.to_string()).collect());
    out.list("failures", r.failures.iter().map(|(t, why)| format!("trial {t}: {why}")).collect());
    out.value("result", format!("{}/{} pass", r.passed, r.trials));
    if r.all_passed() {
        Ok(Status::Ok)
    } else {
        Ok(Status::Failed(format!("{} of {} trials failed", r.trials - r.passed, r.trials)))
    }
}
