//! Loops, cycles and minimal relations, and the analysis that turns them into
//! certified statements about projective and injective dimensions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::hochschild::{commutator_subspace, is_radical_trivial, HH0Space};
use crate::linalg::Subspace;
use crate::quiver::{Cycle, Path};
use crate::quotient::{lambda_e, Idempotent};
use crate::resolution::{periodicity_in, resolve_simple, Resolution};

/// `e_s I e_t` restricted to paths of length `2 … n-1`, in raw path coordinates.
#[derive(Debug, Clone)]
pub struct RelationSpace<F: Field> {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<Path>,
    pub space: Subspace<F>,
}

impl<F: Field> RelationSpace<F> {
    pub fn position(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|x| x == p)
    }

    /// True when some element of the space has a nonzero `p` coefficient.
    pub fn involves(&self, p: &Path) -> bool {
        let f = self.space.field();
        self.position(p).is_some_and(|i| self.space.basis().iter().any(|row| !f.is_zero(&row[i])))
    }
}

pub fn relation_space<F: Field>(alg: &BoundQuiverAlgebra<F>, s: usize, t: usize) -> RelationSpace<F> {
    let f = alg.field();
    let Some(pair) = alg.ideal_pairs().get(&(s, t)) else {
        return RelationSpace { source: s, target: t, paths: Vec::new(), space: Subspace::zero(f, 0) };
    };
    let keep: Vec<usize> = (0..pair.paths.len()).filter(|&i| pair.paths[i].len() >= 2).collect();
    let paths: Vec<Path> = keep.iter().map(|&i| pair.paths[i].clone()).collect();
    let rows = pair.space.basis().iter().map(|r| keep.iter().map(|&i| r[i].clone()).collect::<Vec<_>>());
    RelationSpace { source: s, target: t, space: Subspace::from_vectors(f, paths.len(), rows), paths }
}

/// Whether `q` occurs with nonzero coefficient in some minimal relation.
///
/// Paths of length at least the nilpotency degree are relations themselves;
/// arrows and trivial paths never occur since `I ⊆ J²`. Otherwise a
/// support-minimal element of the relation space containing `q` is a minimal
/// relation, so the test is whether the `q`-coordinate vanishes on the space.
pub fn is_minimal_relation_summand<F: Field>(alg: &BoundQuiverAlgebra<F>, q: &Path) -> bool {
    if q.len() >= alg.nilpotency_degree() {
        return true;
    }
    if q.len() <= 1 {
        return false;
    }
    relation_space(alg, q.source(), q.target()).involves(q)
}

pub fn is_cyclically_free<F: Field>(alg: &BoundQuiverAlgebra<F>, c: &Cycle) -> bool {
    c.cyclic_permutations(alg.quiver()).iter().all(|r| !is_minimal_relation_summand(alg, r.path()))
}

pub fn is_cyclically_nonzero<F: Field>(alg: &BoundQuiverAlgebra<F>, c: &Cycle) -> bool {
    c.cyclic_permutations(alg.quiver()).iter().all(|r| !alg.reduce_path(r.path()).coords.iter().all(|x| alg.field().is_zero(x)))
}

/// One representative (the least rotation) of each rotation class of
/// primitive cycles of length at most `max_len`.
pub fn enumerate_cycles<F: Field>(alg: &BoundQuiverAlgebra<F>, max_len: usize) -> Vec<Cycle> {
    let q = alg.quiver();
    let mut found = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(q: &crate::quiver::Quiver, start: usize, at: usize, max_len: usize, stack: &mut Vec<usize>, found: &mut BTreeSet<Cycle>) {
        for a in q.arrows_from(at) {
            let arr = q.arrow(a);
            stack.push(a);
            if arr.target == start {
                let c = Cycle::new(q.path(stack).expect("walk is composable")).expect("closed walk");
                if c.is_primitive() {
                    found.insert(c.canonical_rotation(q));
                }
            }
            if stack.len() < max_len {
                walk(q, start, arr.target, max_len, stack, found);
            }
            stack.pop();
        }
    }
    for v in 0..q.vertex_count() {
        walk(q, v, v, max_len, &mut stack, &mut found);
    }
    let mut out: Vec<Cycle> = found.into_iter().collect();
    out.sort_by(|a, b| a.path().cmp(b.path()));
    out
}

/// Commutativity of `ε_v (Λ/J²) ε_v`.
pub fn local_commutativity<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize) -> bool {
    let j2 = alg.radical_power(2);
    let corner: Vec<usize> = alg.peirce(v, v).into_iter().filter(|&i| alg.basis()[i].len() < 2).collect();
    corner.iter().all(|&i| {
        corner.iter().all(|&j| {
            let x = alg.from_sparse(alg.basis_product(i, j));
            let y = alg.from_sparse(alg.basis_product(j, i));
            j2.contains(&alg.sub(&x, &y).coords)
        })
    })
}

/// Why a dimension is known to be infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfiniteReason {
    /// A loop at the vertex: `Ext¹(S,S) ≠ 0`.
    Loop { arrows: Vec<String> },
    /// `Ωⁱ S ≅ Ωʲ S` with both nonzero.
    Periodicity { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DimensionStatus {
    Finite {
        value: usize,
    },
    Infinite {
        reason: InfiniteReason,
    },
    /// The resolution did not terminate within `depth` and no certificate was found.
    Unknown {
        depth: usize,
    },
}

impl DimensionStatus {
    pub fn finite(&self) -> Option<usize> {
        match self {
            DimensionStatus::Finite { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DimensionStatus::Infinite { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: String,
    pub loops: Vec<String>,
    pub ext1_self: usize,
    /// `dim Ext^i(S,S)` for `i = 1…` as far as the resolution was computed.
    pub ext_self: Vec<usize>,
    pub locally_commutative: bool,
    pub projective: DimensionStatus,
    pub injective: DimensionStatus,
    pub projective_period: Option<Period>,
    pub injective_period: Option<Period>,
    /// Vertex multisets of the computed terms of the minimal resolution of the simple.
    pub resolution_tops: Vec<Vec<String>>,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycle: String,
    pub length: usize,
    pub rotations: Vec<String>,
    pub support: Vec<String>,
    pub cyclically_free: bool,
    pub cyclically_nonzero: bool,
    /// Set when the cycle is cyclically free: both dimensions of `S_e` are infinite.
    pub consequence: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtArrow {
    pub source: String,
    pub target: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hh0Summary {
    pub algebra_dim: usize,
    pub commutator_dim: usize,
    pub dim: usize,
    pub radical_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite { value: usize },
    Infinite { certificates: Vec<String> },
    Unknown { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub vertices: Vec<String>,
    pub dim: usize,
    pub arrows: usize,
    pub nilpotency_degree: usize,
    pub hh0: Hh0Summary,
    /// Largest injective dimension of the simples in `e`, when all are finite.
    pub injective_bound: Option<usize>,
    pub global_dimension: GlobalDimension,
    pub periods: Vec<(String, Period)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub depth: usize,
    pub cycle_max: usize,
    pub quotients: Vec<Vec<String>>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { depth: 12, cycle_max: 6, quotients: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<String>,
    pub dim: usize,
    pub nilpotency_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub algebra: AlgebraSummary,
    pub options: AnalysisOptions,
    pub vertices: Vec<VertexReport>,
    pub cycles: Vec<CycleReport>,
    pub ext_quiver: Vec<ExtArrow>,
    pub hh0: Hh0Summary,
    pub quotients: Vec<QuotientReport>,
    pub global_dimension: GlobalDimension,
}

pub fn hh0_summary<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Hh0Summary {
    let space = HH0Space::new(alg);
    Hh0Summary {
        algebra_dim: alg.dim(),
        commutator_dim: space.commutator().dim(),
        dim: space.dim(),
        radical_trivial: is_radical_trivial(alg),
    }
}

struct SideResult {
    status: DimensionStatus,
    period: Option<Period>,
    tops: Vec<Vec<usize>>,
    ext_self: Vec<usize>,
    budget: bool,
}

fn side<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize, depth: usize) -> Result<SideResult> {
    let res: Resolution<F> = resolve_simple(alg, v, depth)?;
    let tops = res.terms.iter().map(|t| t.vertices.clone()).collect();
    let mult = res.multiplicities(v);
    let ext_self = (1..res.len()).map(|i| mult[i]).collect();
    if let Some(d) = res.projective_dimension() {
        return Ok(SideResult { status: DimensionStatus::Finite { value: d }, period: None, tops, ext_self, budget: false });
    }
    let loops: Vec<String> = alg.quiver().loops_at(v).into_iter().map(|a| alg.quiver().arrow(a).label.clone()).collect();
    let period = periodicity_in(alg, &res, v, depth).map(|c| Period { i: c.i, j: c.j });
    let status = if !loops.is_empty() {
        DimensionStatus::Infinite { reason: InfiniteReason::Loop { arrows: loops } }
    } else if let Some(p) = period {
        DimensionStatus::Infinite { reason: InfiniteReason::Periodicity { i: p.i, j: p.j } }
    } else {
        DimensionStatus::Unknown { depth }
    };
    Ok(SideResult { status, period, tops, ext_self, budget: res.budget_exhausted })
}

fn names<F: Field>(alg: &BoundQuiverAlgebra<F>, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| alg.quiver().vertex_name(v).to_string()).collect()
}

fn cycle_word<F: Field>(alg: &BoundQuiverAlgebra<F>, c: &Cycle) -> String {
    alg.quiver().format_path(c.path())
}

pub fn cycle_report<F: Field>(alg: &BoundQuiverAlgebra<F>, c: &Cycle) -> CycleReport {
    let q = alg.quiver();
    let free = is_cyclically_free(alg, c);
    let support = names(alg, c.support(q));
    CycleReport {
        cycle: cycle_word(alg, c),
        length: c.len(),
        rotations: c.cyclic_permutations(q).iter().map(|r| cycle_word(alg, r)).collect(),
        consequence: free.then(|| format!("pd and id of S_{{{}}} are infinite", support.join(","))),
        support,
        cyclically_free: free,
        cyclically_nonzero: is_cyclically_nonzero(alg, c),
    }
}

fn global_verdict(pds: &[DimensionStatus], extra: Vec<String>, depth: usize, names: &[String]) -> GlobalDimension {
    let mut certs = extra;
    for (st, n) in pds.iter().zip(names) {
        if let DimensionStatus::Infinite { reason } = st {
            certs.push(match reason {
                InfiniteReason::Loop { arrows } => format!("loop {} at {}", arrows.join(","), n),
                InfiniteReason::Periodicity { i, j } => format!("syzygy period ({i},{j}) at {n}"),
            });
        }
    }
    if !certs.is_empty() {
        return GlobalDimension::Infinite { certificates: certs };
    }
    match pds.iter().map(DimensionStatus::finite).collect::<Option<Vec<_>>>() {
        Some(v) => GlobalDimension::Finite { value: v.into_iter().max().unwrap_or(0) },
        None => GlobalDimension::Unknown { depth },
    }
}

/// Global dimension of an algebra from the projective side only.
pub fn global_dimension<F: Field>(alg: &BoundQuiverAlgebra<F>, depth: usize) -> Result<(GlobalDimension, Vec<Option<Period>>)> {
    let sides: Vec<SideResult> = (0..alg.vertex_count()).into_par_iter().map(|v| side(alg, v, depth)).collect::<Result<_>>()?;
    let statuses: Vec<DimensionStatus> = sides.iter().map(|s| s.status.clone()).collect();
    let vnames = names(alg, 0..alg.vertex_count());
    Ok((global_verdict(&statuses, Vec::new(), depth, &vnames), sides.iter().map(|s| s.period).collect()))
}

pub fn quotient_report<F: Field>(alg: &BoundQuiverAlgebra<F>, e: &Idempotent, depth: usize) -> Result<QuotientReport> {
    let qe = lambda_e(alg, e)?;
    let b = &qe.algebra;
    let (gd, periods) = global_dimension(b, depth)?;
    let injective_bound = crate::hochschild::injective_dimension_bound(alg, e, depth)?;
    Ok(QuotientReport {
        vertices: e.names(alg),
        dim: b.dim(),
        arrows: b.quiver().arrow_count(),
        nilpotency_degree: b.nilpotency_degree(),
        hh0: hh0_summary(b),
        injective_bound,
        global_dimension: gd,
        periods: periods.into_iter().enumerate().filter_map(|(v, p)| p.map(|p| (b.quiver().vertex_name(v).to_string(), p))).collect(),
    })
}

pub fn algebra_summary<F: Field>(alg: &BoundQuiverAlgebra<F>) -> AlgebraSummary {
    let q = alg.quiver();
    AlgebraSummary {
        field: alg.field().tag().to_string(),
        vertices: names(alg, 0..q.vertex_count()),
        arrows: q
            .arrows()
            .iter()
            .map(|a| (a.label.clone(), q.vertex_name(a.source).to_string(), q.vertex_name(a.target).to_string()))
            .collect(),
        relations: alg.relations().iter().map(|r| r.format(q)).collect(),
        dim: alg.dim(),
        nilpotency_degree: alg.nilpotency_degree(),
    }
}

/// Dimensions of `Ext¹(S_i, S_j)` as arrows of the extension quiver.
pub fn extension_quiver<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Result<Vec<ExtArrow>> {
    let m = crate::resolution::ext1_matrix(alg)?;
    let q = alg.quiver();
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d > 0 {
                out.push(ExtArrow { source: q.vertex_name(i).to_string(), target: q.vertex_name(j).to_string(), dim: d });
            }
        }
    }
    Ok(out)
}

/// Runs every check and assembles the report.
pub fn analyze<F: Field>(alg: &BoundQuiverAlgebra<F>, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let q = alg.quiver();
    let op = alg.opposite()?;
    let depth = options.depth;
    let per_vertex: Vec<(SideResult, SideResult)> =
        (0..q.vertex_count()).into_par_iter().map(|v| Ok((side(alg, v, depth)?, side(&op, v, depth)?))).collect::<Result<_>>()?;
    let ext_quiver = extension_quiver(alg)?;
    let vertices: Vec<VertexReport> = per_vertex
        .iter()
        .enumerate()
        .map(|(v, (p, i))| {
            let name = q.vertex_name(v).to_string();
            VertexReport {
                loops: q.loops_at(v).into_iter().map(|a| q.arrow(a).label.clone()).collect(),
                ext1_self: ext_quiver.iter().find(|x| x.source == name && x.target == name).map_or(0, |x| x.dim),
                ext_self: p.ext_self.clone(),
                locally_commutative: local_commutativity(alg, v),
                projective: p.status.clone(),
                injective: i.status.clone(),
                projective_period: p.period,
                injective_period: i.period,
                resolution_tops: p.tops.iter().map(|t| names(alg, t.iter().copied())).collect(),
                budget_exhausted: p.budget || i.budget,
                vertex: name,
            }
        })
        .collect();
    let cycles: Vec<CycleReport> = enumerate_cycles(alg, options.cycle_max).par_iter().map(|c| cycle_report(alg, c)).collect();
    let cycle_certs: Vec<String> =
        cycles.iter().filter(|c| c.cyclically_free).map(|c| format!("cyclically free cycle {}", c.cycle)).collect();
    let pds: Vec<DimensionStatus> = vertices.iter().map(|v| v.projective.clone()).collect();
    let vnames: Vec<String> = vertices.iter().map(|v| v.vertex.clone()).collect();
    let global_dimension = global_verdict(&pds, cycle_certs, depth, &vnames);
    let quotients = options
        .quotients
        .iter()
        .map(|names| quotient_report(alg, &Idempotent::from_names(alg, names)?, depth))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        algebra: algebra_summary(alg),
        options: options.clone(),
        vertices,
        cycles,
        ext_quiver,
        hh0: hh0_summary(alg),
        quotients,
        global_dimension,
    })
}

/// A failed consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

fn violation(rule: &str, detail: String) -> Violation {
    Violation { rule: rule.to_string(), detail }
}

/// Checks a report against the theorems it is supposed to illustrate.
pub fn consistency_audit(report: &AnalysisReport) -> Vec<Violation> {
    let mut out = Vec::new();
    for v in &report.vertices {
        if !v.loops.is_empty() {
            for (side, st) in [("projective", &v.projective), ("injective", &v.injective)] {
                if let Some(d) = st.finite() {
                    out.push(violation("loop-finite", format!("vertex {} has a loop but {side} dimension {d}", v.vertex)));
                }
            }
            if v.ext1_self == 0 {
                out.push(violation("loop-ext", format!("vertex {} has a loop but Ext¹(S,S) = 0", v.vertex)));
            }
        }
        for (side, st, per) in [("projective", &v.projective, v.projective_period), ("injective", &v.injective, v.injective_period)] {
            if let (Some(d), Some(p)) = (st.finite(), per) {
                out.push(violation("period-finite", format!("vertex {}: {side} dimension {d} with period ({},{})", v.vertex, p.i, p.j)));
            }
        }
    }
    let finite = |name: &String, f: fn(&VertexReport) -> &DimensionStatus| {
        report.vertices.iter().find(|v| &v.vertex == name).is_some_and(|v| f(v).finite().is_some())
    };
    for c in report.cycles.iter().filter(|c| c.cyclically_free) {
        for (side, f) in
            [("projective", (|v: &VertexReport| &v.projective) as fn(&VertexReport) -> &DimensionStatus), ("injective", |v| &v.injective)]
        {
            if c.support.iter().all(|n| finite(n, f)) {
                out.push(violation(
                    "cycle-finite",
                    format!("cyclically free cycle {} but {side} resolutions of its support terminate", c.cycle),
                ));
            }
        }
    }
    let max_pd = report.vertices.iter().map(|v| v.projective.finite()).collect::<Option<Vec<_>>>();
    match &report.global_dimension {
        GlobalDimension::Finite { value } => {
            if !report.hh0.radical_trivial {
                out.push(violation("finite-gldim-hh0", format!("global dimension {value} but HH₀ is not radical-trivial")));
            }
            match &max_pd {
                Some(pds) if pds.iter().max().copied().unwrap_or(0) == *value => {}
                _ => out.push(violation("gldim-mismatch", format!("global dimension {value} disagrees with the vertex statuses"))),
            }
            if report.cycles.iter().any(|c| c.cyclically_free) {
                out.push(violation("cycle-finite", "finite global dimension with a cyclically free cycle".into()));
            }
        }
        GlobalDimension::Infinite { certificates } => {
            if certificates.is_empty() {
                out.push(violation("uncertified-infinite", "infinite global dimension without a certificate".into()));
            }
        }
        GlobalDimension::Unknown { .. } => {
            if max_pd.is_some() {
                out.push(violation("gldim-mismatch", "every simple terminates but the global dimension is unknown".into()));
            }
        }
    }
    for qr in &report.quotients {
        if qr.injective_bound.is_some() && !qr.hh0.radical_trivial {
            out.push(violation(
                "quotient-hh0",
                format!("S_e has finite injective dimension for e = {{{}}} but HH₀(Λ_e) is not radical-trivial", qr.vertices.join(",")),
            ));
        }
    }
    out
}

/// `[Λ,Λ]` has the expected dimension `dim Λ - dim HH₀`.
pub fn hh0_dimension_check<F: Field>(alg: &BoundQuiverAlgebra<F>) -> bool {
    commutator_subspace(alg).dim() + HH0Space::new(alg).dim() == alg.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::fixtures;

    fn cycle(a: &BoundQuiverAlgebra<Rationals>, labels: &[&str]) -> Cycle {
        Cycle::new(a.quiver().path_from_labels(labels).unwrap()).unwrap()
    }

    #[test]
    fn fx3_relation_spaces() {
        let a = fixtures::fx3_q();
        let q = a.quiver();
        assert!(relation_space(&fixtures::fx1_q(), 0, 1).space.is_zero());
        let r = relation_space(&a, 1, 0);
        assert_eq!(r.space.dim(), 1);
        assert!(r.involves(&q.path_from_labels(&["beta", "epsilon"]).unwrap()));
        let r = relation_space(&a, 0, 2);
        assert_eq!(r.space.dim(), 1);
        assert!(r.involves(&q.path_from_labels(&["alpha", "beta"]).unwrap()));
        assert!(r.involves(&q.path_from_labels(&["gamma", "delta"]).unwrap()));
        assert!(is_minimal_relation_summand(&a, &q.path_from_labels(&["alpha", "beta"]).unwrap()));
        assert!(!is_minimal_relation_summand(&a, &q.path_from_labels(&["epsilon", "gamma"]).unwrap()));
        let fx4 = fixtures::fx4_q();
        assert!(is_minimal_relation_summand(&fx4, &fx4.quiver().path_from_labels(&["alpha", "beta", "alpha"]).unwrap()));
    }

    #[test]
    fn cycle_verdicts() {
        let fx2 = fixtures::fx2_q();
        let c = cycle(&fx2, &["alpha"]);
        assert!(is_cyclically_free(&fx2, &c) && is_cyclically_nonzero(&fx2, &c));
        let fx4 = fixtures::fx4_q();
        let c = cycle(&fx4, &["alpha", "beta"]);
        assert!(is_cyclically_free(&fx4, &c) && is_cyclically_nonzero(&fx4, &c));
        let fx3 = fixtures::fx3_q();
        let c = cycle(&fx3, &["alpha", "beta", "epsilon"]);
        assert!(!is_cyclically_free(&fx3, &c) && !is_cyclically_nonzero(&fx3, &c));
    }

    #[test]
    fn cycle_enumeration() {
        assert!(enumerate_cycles(&fixtures::fx1_q(), 6).is_empty());
        let fx4 = fixtures::fx4_q();
        let cs = enumerate_cycles(&fx4, 2);
        assert_eq!(cs.len(), 1);
        assert_eq!(fx4.quiver().format_path(cs[0].path()), "alpha*beta");
        let fx3 = fixtures::fx3_q();
        let words: Vec<String> = enumerate_cycles(&fx3, 3).iter().map(|c| fx3.quiver().format_path(c.path())).collect();
        assert_eq!(words, vec!["alpha*beta*epsilon", "gamma*delta*epsilon"]);
        assert_eq!(enumerate_cycles(&fixtures::fx2_q(), 4).len(), 1);
    }

    #[test]
    fn locally_commutative_everywhere() {
        for (_, a) in fixtures::all(&Rationals) {
            for v in 0..a.vertex_count() {
                assert!(local_commutativity(&a, v));
            }
        }
    }

    #[test]
    fn fx3_analysis() {
        let a = fixtures::fx3_q();
        let opts = AnalysisOptions { quotients: vec![vec!["1".into(), "2".into(), "3".into()]], ..Default::default() };
        let r = analyze(&a, &opts).unwrap();
        assert_eq!(r.global_dimension, GlobalDimension::Finite { value: 4 });
        let pds: Vec<_> = r.vertices.iter().map(|v| v.projective.finite().unwrap()).collect();
        assert_eq!(pds, vec![4, 3, 2, 3]);
        assert!(r.hh0.radical_trivial);
        assert_eq!(r.hh0.dim, 4);
        let qr = &r.quotients[0];
        assert_eq!((qr.dim, qr.hh0.dim, qr.hh0.radical_trivial), (6, 3, true));
        assert!(matches!(qr.global_dimension, GlobalDimension::Infinite { .. }));
        assert!(r.cycles.iter().all(|c| !c.cyclically_free));
        assert!(consistency_audit(&r).is_empty());
    }

    #[test]
    fn fx2_analysis_and_forged_report() {
        let a = fixtures::fx2_q();
        let mut r = analyze(&a, &AnalysisOptions::default()).unwrap();
        assert!(matches!(r.global_dimension, GlobalDimension::Infinite { .. }));
        assert_eq!(r.vertices[0].projective_period, Some(Period { i: 0, j: 1 }));
        assert!(consistency_audit(&r).is_empty());
        r.vertices[0].projective = DimensionStatus::Finite { value: 2 };
        let v = consistency_audit(&r);
        assert!(v.iter().any(|x| x.rule == "loop-finite"));
    }
}
