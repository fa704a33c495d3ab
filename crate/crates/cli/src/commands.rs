//! The subcommands: each produces a typed result, rendered as JSON or text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use noloop_core::algebra::{AlgebraElement, BoundQuiverAlgebra, DEFAULT_CAP};
use noloop_core::field::{parse_rational, PrimeField, Rationals};
use noloop_core::hochschild::{left_multiplication, ETraceContext, HH0Space};
use noloop_core::lambda::{LambdaMatrix, ProjectiveSum};
use noloop_core::linalg::Subspace;
use noloop_core::module::{FdModule, ModuleHom};
use noloop_core::noloop::{
    self, AnalysisOptions, AnalysisReport, CycleReport, DimensionStatus, GlobalDimension, Hh0Summary, InfiniteReason, Period, Violation,
};
use noloop_core::quotient::lambda_e;
use noloop_core::resolution::{periodicity_in, resolve_simple};
use noloop_core::Field;

use crate::build;
use crate::description::{AlgebraDescription, FieldSpec};
use crate::dot;
use crate::error::CliError;
use crate::report::{CommandRecord, Provenance, ReportDocument, Tool};

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_CYCLE_MAX: usize = 6;

/// Command-line overrides; unset values fall back to the description's options.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub cap: Option<usize>,
    pub cycle_max: Option<usize>,
}

/// The resolved settings of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub depth: usize,
    pub cap: usize,
    pub cycle_max: usize,
}

impl Settings {
    pub fn resolve(d: &AlgebraDescription, o: &Overrides) -> Self {
        Settings {
            seed: o.seed.unwrap_or(0),
            depth: o.depth.or(d.options.depth).unwrap_or(DEFAULT_DEPTH),
            cap: o.cap.or(d.options.cap).unwrap_or(DEFAULT_CAP),
            cycle_max: o.cycle_max.or(d.options.cycles).unwrap_or(DEFAULT_CYCLE_MAX),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Graph {
    Quiver,
    Ext,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Extra vertex sets for `Λ_e` sections, on top of the description's.
    Analyze {
        lambda_e: Vec<String>,
    },
    Hh0 {
        e: Option<String>,
    },
    Resolve {
        simple: String,
        opposite: bool,
    },
    Trace {
        e: String,
        module: String,
        endo: String,
    },
    Cycles,
    Certify,
    Dot {
        graph: Graph,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Hh0 { .. } => "hh0",
            Command::Resolve { .. } => "resolve",
            Command::Trace { .. } => "trace",
            Command::Cycles => "cycles",
            Command::Certify => "certify",
            Command::Dot { .. } => "dot",
        }
    }

    fn arguments(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        match self {
            Command::Analyze { lambda_e } => put("lambda_e", lambda_e.clone().into()),
            Command::Hh0 { e } => put("e", e.clone().map_or(Value::Null, Value::from)),
            Command::Resolve { simple, opposite } => {
                put("simple", simple.clone().into());
                put("opposite", (*opposite).into());
            }
            Command::Trace { e, module, endo } => {
                put("e", e.clone().into());
                put("module", module.clone().into());
                put("endo", endo.clone().into());
            }
            Command::Cycles | Command::Certify => {}
            Command::Dot { graph } => put("graph", serde_json::to_value(graph).expect("serializes")),
        }
        m
    }
}

/// A finished run: the document and its human-readable rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: ReportDocument,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    pub report: AnalysisReport,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hh0Section {
    pub vertices: Vec<String>,
    pub summary: Hh0Summary,
    /// Basis paths whose classes form a basis of `HH₀`.
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hh0Result {
    pub algebra: Hh0Section,
    pub quotient: Option<Hh0Section>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveResult {
    pub vertex: String,
    pub opposite: bool,
    pub depth: usize,
    /// Vertex multisets of the terms `P_0, P_1, …`.
    pub terms: Vec<Vec<String>>,
    /// `differentials[i]` is the matrix of `P_{i+1} -> P_i`, rows indexed by summands of `P_i`.
    pub differentials: Vec<Vec<Vec<String>>>,
    pub terminated: bool,
    pub projective_dimension: Option<usize>,
    pub budget_exhausted: bool,
    pub ext_self: Vec<usize>,
    pub period: Option<Period>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceClass {
    /// Coordinates on the `HH₀(Λ_e)` basis.
    pub coordinates: Vec<String>,
    pub representative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceResult {
    pub e: Vec<String>,
    pub module: String,
    pub module_dims: Vec<usize>,
    pub endo: String,
    pub hh0_basis: Vec<String>,
    pub injective_bound: usize,
    pub horizon: usize,
    pub terms: Vec<Vec<String>>,
    pub trace: TraceClass,
    /// Trace of the same endomorphism taken directly on the projective, when the module is one.
    pub projective_trace: Option<TraceClass>,
    pub independent_lift_seed: u64,
    pub independent_lift_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesResult {
    pub max_length: usize,
    pub cycles: Vec<CycleReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Loop { vertex: String, arrows: Vec<String> },
    Periodicity { vertex: String, side: String, i: usize, j: usize },
    CyclicallyFree { cycle: String, support: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyResult {
    pub global_dimension: GlobalDimension,
    pub certificates: Vec<Certificate>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotResult {
    pub graphs: BTreeMap<String, String>,
}

/// Runs `cmd` on the described algebra.
pub fn run(d: &AlgebraDescription, input: &str, cmd: &Command, overrides: &Overrides) -> Result<Outcome, CliError> {
    let settings = Settings::resolve(d, overrides);
    let (result, text) = match d.field {
        FieldSpec::Rational => execute(&Rationals, d, cmd, &settings)?,
        FieldSpec::Prime(p) => execute(&PrimeField::new(p)?, d, cmd, &settings)?,
    };
    let document = ReportDocument {
        schema_version: crate::report::SCHEMA_VERSION,
        tool: Tool::current(),
        provenance: Provenance {
            input: input.to_string(),
            algebra: d.name.clone(),
            field: d.field.to_string(),
            seed: settings.seed,
            depth: settings.depth,
            cap: settings.cap,
            cycle_max: settings.cycle_max,
        },
        command: CommandRecord { name: cmd.name().to_string(), arguments: cmd.arguments() },
        result,
    };
    Ok(Outcome { document, text })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn execute<F: Field>(f: &F, d: &AlgebraDescription, cmd: &Command, s: &Settings) -> Result<(Value, String), CliError> {
    let alg = build::algebra(f, d, s.cap)?;
    Ok(match cmd {
        Command::Analyze { lambda_e } => {
            let r = analyze(&alg, d, lambda_e, s)?;
            (to_value(&r), render_analyze(&r))
        }
        Command::Hh0 { e } => {
            let r = hh0(&alg, e.as_deref())?;
            (to_value(&r), render_hh0(&r))
        }
        Command::Resolve { simple, opposite } => {
            let r = resolve(&alg, simple, *opposite, s.depth)?;
            (to_value(&r), render_resolve(&r))
        }
        Command::Trace { e, module, endo } => {
            let r = trace(&alg, d, e, module, endo, s)?;
            (to_value(&r), render_trace(&r))
        }
        Command::Cycles => {
            let cycles = noloop::enumerate_cycles(&alg, s.cycle_max).iter().map(|c| noloop::cycle_report(&alg, c)).collect();
            let r = CyclesResult { max_length: s.cycle_max, cycles };
            (to_value(&r), render_cycles(&r))
        }
        Command::Certify => {
            let r = certify(&analyze(&alg, d, &[], s)?);
            (to_value(&r), render_certify(&r))
        }
        Command::Dot { graph } => {
            let mut graphs = BTreeMap::new();
            if matches!(graph, Graph::Quiver | Graph::Both) {
                graphs.insert("quiver".to_string(), dot::quiver(alg.quiver(), "quiver"));
            }
            if matches!(graph, Graph::Ext | Graph::Both) {
                let ext = noloop::extension_quiver(&alg)?;
                graphs.insert("ext_quiver".to_string(), dot::extension_quiver(alg.quiver().vertices(), &ext, "ext_quiver"));
            }
            let text = graphs.values().cloned().collect::<Vec<_>>().join("\n");
            (to_value(&DotResult { graphs }), text)
        }
    })
}

fn analyze<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    d: &AlgebraDescription,
    extra: &[String],
    s: &Settings,
) -> Result<AnalyzeResult, CliError> {
    let mut quotients = d.options.lambda_e.clone();
    for set in extra {
        let e = build::vertex_set(alg, set)?;
        quotients.push(e.names(alg));
    }
    let options = AnalysisOptions { depth: s.depth, cycle_max: s.cycle_max, quotients };
    let report = noloop::analyze(alg, &options)?;
    let violations = noloop::consistency_audit(&report);
    Ok(AnalyzeResult { report, violations })
}

fn hh0_section<F: Field>(alg: &BoundQuiverAlgebra<F>, vertices: Vec<String>) -> Hh0Section {
    let space = HH0Space::new(alg);
    let q = alg.quiver();
    Hh0Section {
        vertices,
        summary: noloop::hh0_summary(alg),
        basis: space.complement().iter().map(|&i| q.format_path(&alg.basis()[i])).collect(),
    }
}

fn hh0<F: Field>(alg: &BoundQuiverAlgebra<F>, e: Option<&str>) -> Result<Hh0Result, CliError> {
    let algebra = hh0_section(alg, alg.quiver().vertices().to_vec());
    let quotient = match e {
        Some(text) => {
            let e = build::vertex_set(alg, text)?;
            let qe = lambda_e(alg, &e)?;
            Some(hh0_section(&qe.algebra, e.names(alg)))
        }
        None => None,
    };
    Ok(Hh0Result { algebra, quotient })
}

fn resolve<F: Field>(alg: &BoundQuiverAlgebra<F>, simple: &str, opposite: bool, depth: usize) -> Result<ResolveResult, CliError> {
    let v = build::vertex(alg, simple)?;
    let op;
    let a = if opposite {
        op = alg.opposite()?;
        &op
    } else {
        alg
    };
    let res = resolve_simple(a, v, depth)?;
    let names = |t: &ProjectiveSum| t.vertices.iter().map(|&w| a.quiver().vertex_name(w).to_string()).collect::<Vec<_>>();
    let differentials = res
        .differentials
        .iter()
        .map(|m| (0..m.rows()).map(|i| (0..m.cols()).map(|j| a.format_element(m.entry(i, j))).collect()).collect())
        .collect();
    let mult = res.multiplicities(v);
    let period = periodicity_in(a, &res, v, depth).map(|c| Period { i: c.i, j: c.j });
    let pd = res.projective_dimension();
    let note = match (pd, period, res.budget_exhausted) {
        (Some(d), _, _) => format!("resolution terminates: projective dimension {d}"),
        (None, Some(p), _) => format!(
            "no termination within depth {depth}; syzygies repeat with period ({},{}), so the resolution never terminates",
            p.i, p.j
        ),
        (None, None, true) => format!("stopped at the term size budget before depth {depth}"),
        (None, None, false) => format!("no termination within depth {depth} and no syzygy repetition found"),
    };
    Ok(ResolveResult {
        vertex: simple.to_string(),
        opposite,
        depth,
        terms: res.terms.iter().map(names).collect(),
        differentials,
        terminated: res.terminated,
        projective_dimension: pd,
        budget_exhausted: res.budget_exhausted,
        ext_self: (1..res.len()).map(|i| mult[i]).collect(),
        period,
        note,
    })
}

/// A module given as a quotient or submodule of a projective sum, so that
/// endomorphisms of the projective induce endomorphisms of it.
struct ModuleSpec<F: Field> {
    ambient: ProjectiveSum,
    sub: Vec<Subspace<F>>,
    /// True when the module is `sub` itself rather than `ambient / sub`.
    is_sub: bool,
    module: FdModule<F>,
}

fn module_spec<F: Field>(alg: &BoundQuiverAlgebra<F>, d: &AlgebraDescription, text: &str) -> Result<ModuleSpec<F>, CliError> {
    let f = alg.field();
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    let quotient_of = |p: ProjectiveSum, radical: bool| {
        let pm = p.module(alg);
        let sub = if radical { pm.radical(alg) } else { pm.dims().iter().map(|&n| Subspace::zero(f, n)).collect() };
        let module = pm.quotient(alg, &sub).0;
        ModuleSpec { ambient: p, sub, is_sub: false, module }
    };
    let vertices = |arg: &str| -> Result<Vec<usize>, CliError> { arg.split(',').map(|v| build::vertex(alg, v.trim())).collect() };
    Ok(match kind {
        "simple" => quotient_of(ProjectiveSum::new(vertices(arg)?), true),
        "projective" => quotient_of(ProjectiveSum::new(vertices(arg)?), false),
        "regular" => quotient_of(ProjectiveSum::regular(alg), false),
        "radical" | "ideal" => {
            let p = if kind == "radical" { ProjectiveSum::new(vertices(arg)?) } else { ProjectiveSum::regular(alg) };
            let pm = p.module(alg);
            let sub = if kind == "radical" {
                pm.radical(alg)
            } else {
                let a = build::element(alg, d, arg)?;
                pm.generated_subspaces(alg, &[p.element_to_flat(alg, &a)])
            };
            let module = pm.submodule(alg, &sub).0;
            ModuleSpec { ambient: p, sub, is_sub: true, module }
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown module `{text}`; expected simple:V,…, projective:V,…, regular, radical:V,… or ideal:ELEMENT"
            )))
        }
    })
}

fn endo_matrix<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    d: &AlgebraDescription,
    p: &ProjectiveSum,
    text: &str,
) -> Result<LambdaMatrix<F>, CliError> {
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    Ok(match kind {
        "identity" => LambdaMatrix::identity(alg, p),
        "zero" => LambdaMatrix::zero(alg, p.clone(), p.clone()),
        "scalar" => {
            let c = parse_rational(arg).ok_or_else(|| CliError::Usage(format!("scalar `{arg}` is not a rational number")))?;
            LambdaMatrix::identity(alg, p).scale(alg, &alg.field().from_rational(&c)?)
        }
        "left" => left_multiplication(alg, p, &build::element(alg, d, arg)?),
        _ => return Err(CliError::Usage(format!("unknown endomorphism `{text}`; expected identity, zero, scalar:C or left:ELEMENT"))),
    })
}

fn induced<F: Field>(spec: &ModuleSpec<F>, phi: &ModuleHom<F>) -> Result<ModuleHom<F>, CliError> {
    let preserved =
        phi.restrict(&spec.sub, &spec.sub).map_err(|_| CliError::Usage("the endomorphism does not preserve the module".into()))?;
    Ok(if spec.is_sub { preserved } else { phi.induced_on_quotient(&spec.sub, &spec.sub) })
}

fn trace_class<F: Field>(ctx: &ETraceContext<F>, f: &F, c: &noloop_core::hochschild::HH0Class<F>) -> TraceClass {
    let b = &ctx.quotient.algebra;
    TraceClass {
        coordinates: c.coords.iter().map(|x| f.format(x)).collect(),
        representative: b.format_element(&ctx.hh0_e.representative(b, c)),
    }
}

fn trace<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    d: &AlgebraDescription,
    e: &str,
    module: &str,
    endo: &str,
    s: &Settings,
) -> Result<TraceResult, CliError> {
    let f = alg.field();
    let idem = build::vertex_set(alg, e)?;
    let spec = module_spec(alg, d, module)?;
    let phi_p = endo_matrix(alg, d, &spec.ambient, endo)?;
    let phi = induced(&spec, &phi_p.to_hom(alg))?;
    let ctx = ETraceContext::new(alg, &idem, s.depth)?;
    let res = ctx.resolve(alg, &spec.module)?;
    let horizon = res.horizon(&idem, ctx.id_bound).ok_or(noloop_core::Error::HorizonNotReached { depth: s.depth })?;
    let t = ctx.trace_along(alg, &res, &phi, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let t2 = ctx.trace_along(alg, &res, &phi, Some(&mut rng))?;
    let is_projective = !spec.is_sub && spec.sub.iter().all(|x| x.dim() == 0);
    let bq = &ctx.quotient.algebra;
    Ok(TraceResult {
        e: idem.names(alg),
        module: module.to_string(),
        module_dims: spec.module.dims().to_vec(),
        endo: endo.to_string(),
        hh0_basis: ctx.hh0_e.complement().iter().map(|&i| bq.quiver().format_path(&bq.basis()[i])).collect(),
        injective_bound: ctx.required_depth()?,
        horizon,
        terms: res.terms.iter().map(|t| t.vertices.iter().map(|&w| alg.quiver().vertex_name(w).to_string()).collect()).collect(),
        trace: trace_class(&ctx, f, &t),
        projective_trace: is_projective.then(|| trace_class(&ctx, f, &ctx.trace_projective(alg, &phi_p))),
        independent_lift_seed: s.seed,
        independent_lift_agrees: t == t2,
    })
}

fn certify(a: &AnalyzeResult) -> CertifyResult {
    let mut certificates = Vec::new();
    for v in &a.report.vertices {
        if !v.loops.is_empty() {
            certificates.push(Certificate::Loop { vertex: v.vertex.clone(), arrows: v.loops.clone() });
        }
        for (side, p) in [("projective", v.projective_period), ("injective", v.injective_period)] {
            if let Some(Period { i, j }) = p {
                certificates.push(Certificate::Periodicity { vertex: v.vertex.clone(), side: side.to_string(), i, j });
            }
        }
    }
    for c in a.report.cycles.iter().filter(|c| c.cyclically_free) {
        certificates.push(Certificate::CyclicallyFree { cycle: c.cycle.clone(), support: c.support.clone() });
    }
    CertifyResult { global_dimension: a.report.global_dimension.clone(), certificates, violations: a.violations.clone() }
}

fn status(s: &DimensionStatus) -> String {
    match s {
        DimensionStatus::Finite { value } => value.to_string(),
        DimensionStatus::Infinite { reason: InfiniteReason::Loop { arrows } } => format!("inf (loop {})", arrows.join(",")),
        DimensionStatus::Infinite { reason: InfiniteReason::Periodicity { i, j } } => format!("inf (period {i},{j})"),
        DimensionStatus::Unknown { depth } => format!("unknown (depth {depth})"),
    }
}

fn gldim(g: &GlobalDimension) -> String {
    match g {
        GlobalDimension::Finite { value } => value.to_string(),
        GlobalDimension::Infinite { certificates } => format!("infinite: {}", certificates.join("; ")),
        GlobalDimension::Unknown { depth } => format!("unknown within depth {depth}"),
    }
}

fn hh0_line(h: &Hh0Summary) -> String {
    format!(
        "dim {} (commutators span {} of {}), {}",
        h.dim,
        h.commutator_dim,
        h.algebra_dim,
        if h.radical_trivial { "radical-trivial" } else { "not radical-trivial" }
    )
}

fn render_violations(out: &mut String, vs: &[Violation]) {
    if vs.is_empty() {
        out.push_str("audit: consistent\n");
    } else {
        for v in vs {
            let _ = writeln!(out, "audit violation [{}]: {}", v.rule, v.detail);
        }
    }
}

fn render_analyze(a: &AnalyzeResult) -> String {
    let r = &a.report;
    let mut s = String::new();
    let _ = writeln!(s, "algebra over {}: dim {}, J^{} = 0", r.algebra.field, r.algebra.dim, r.algebra.nilpotency_degree);
    let _ = writeln!(s, "global dimension: {}", gldim(&r.global_dimension));
    let _ = writeln!(s, "HH0: {}", hh0_line(&r.hh0));
    for v in &r.vertices {
        let _ = writeln!(s, "  S_{}: pd {}, id {}, Ext1(S,S) {}", v.vertex, status(&v.projective), status(&v.injective), v.ext1_self);
    }
    for c in &r.cycles {
        let _ = writeln!(
            s,
            "  cycle {}: {}, {}",
            c.cycle,
            if c.cyclically_free { "cyclically free" } else { "not cyclically free" },
            if c.cyclically_nonzero { "cyclically non-zero" } else { "some rotation in I" }
        );
    }
    for q in &r.quotients {
        let _ = writeln!(
            s,
            "Lambda_e for e = {{{}}}: dim {}, HH0 {}, gldim {}",
            q.vertices.join(","),
            q.dim,
            hh0_line(&q.hh0),
            gldim(&q.global_dimension)
        );
    }
    render_violations(&mut s, &a.violations);
    s
}

fn render_hh0(r: &Hh0Result) -> String {
    let mut s = format!("HH0: {}\n  basis: {}\n", hh0_line(&r.algebra.summary), r.algebra.basis.join(", "));
    if let Some(q) = &r.quotient {
        let _ = writeln!(s, "HH0 of Lambda_e, e = {{{}}}: {}\n  basis: {}", q.vertices.join(","), hh0_line(&q.summary), q.basis.join(", "));
    }
    s
}

fn render_resolve(r: &ResolveResult) -> String {
    let mut s = format!("minimal resolution of S_{}{}:\n", r.vertex, if r.opposite { " over the opposite algebra" } else { "" });
    for (i, t) in r.terms.iter().enumerate() {
        let _ = writeln!(s, "  P_{i} = {}", t.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join(" + "));
    }
    let _ = writeln!(s, "{}", r.note);
    s
}

fn render_trace(r: &TraceResult) -> String {
    let mut s = format!("e-trace over e = {{{}}} of {} on {}: {}\n", r.e.join(","), r.endo, r.module, r.trace.representative);
    let _ = writeln!(s, "  horizon {} (injective bound {}), {} terms", r.horizon, r.injective_bound, r.terms.len());
    if let Some(p) = &r.projective_trace {
        let _ = writeln!(s, "  direct projective trace: {}", p.representative);
    }
    let _ = writeln!(
        s,
        "  independent lift (seed {}): {}",
        r.independent_lift_seed,
        if r.independent_lift_agrees { "agrees" } else { "DISAGREES" }
    );
    s
}

fn render_cycles(r: &CyclesResult) -> String {
    let mut s = format!("{} primitive cycles up to length {}\n", r.cycles.len(), r.max_length);
    for c in &r.cycles {
        let _ = writeln!(s, "  {}: free {}, non-zero {}", c.cycle, c.cyclically_free, c.cyclically_nonzero);
    }
    s
}

fn render_certify(r: &CertifyResult) -> String {
    let mut s = format!("global dimension: {}\n", gldim(&r.global_dimension));
    for c in &r.certificates {
        let line = match c {
            Certificate::Loop { vertex, arrows } => format!("loop {} at {vertex}", arrows.join(",")),
            Certificate::Periodicity { vertex, side, i, j } => format!("{side} syzygies of S_{vertex} repeat: Omega^{i} = Omega^{j}"),
            Certificate::CyclicallyFree { cycle, support } => format!("cyclically free cycle {cycle} on {{{}}}", support.join(",")),
        };
        let _ = writeln!(s, "  {line}");
    }
    render_violations(&mut s, &r.violations);
    s
}

/// Element of the algebra from command-line syntax; exposed for the fuzzers.
pub fn parse_element<F: Field>(alg: &BoundQuiverAlgebra<F>, d: &AlgebraDescription, text: &str) -> Result<AlgebraElement<F>, CliError> {
    build::element(alg, d, text)
}
