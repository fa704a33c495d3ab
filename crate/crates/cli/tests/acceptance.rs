//! Acceptance run: fixture regressions, trace-law suites, corpus audits and
//! negative cases. Every check prints one line. The run fails unless the set
//! of failing checks is exactly `EXPECTED_FAILURES`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Display;
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use noloop_cli::build;
use noloop_cli::description::{self, AlgebraDescription};
use noloop_core::algebra::{BoundQuiverAlgebra, DEFAULT_CAP};
use noloop_core::corpus::{self, CorpusOptions, RandomAlgebra};
use noloop_core::hochschild::{filtration_certificate, hs_trace, is_radical_trivial, left_multiplication, ETraceContext, HH0Class};
use noloop_core::lambda::{LambdaMatrix, ProjectiveSum};
use noloop_core::module::{FdModule, ModuleHom};
use noloop_core::noloop::{
    analyze, consistency_audit, cycle_report, enumerate_cycles, extension_quiver, hh0_summary, is_cyclically_free, is_cyclically_nonzero,
    quotient_report, AnalysisOptions, AnalysisReport, DimensionStatus, GlobalDimension, InfiniteReason,
};
use noloop_core::quotient::{lambda_e, Idempotent};
use noloop_core::resolution::{ext_self_dims, horseshoe, minimal_resolution, padded, periodicity_certificate, resolve_simple};
use noloop_core::{Error, Field, PathVector, PrimeField, Quiver, Rationals};

/// Checks known to fail. The periodicity pair demanded for the two-cycle
/// fixture is (0,2), but its second syzygy is the simple at the other vertex,
/// so the first repetition is (0,4).
const EXPECTED_FAILURES: &[usize] = &[3];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

trait OrMsg<T> {
    fn msg(self, what: &str) -> Result<T, String>;
}

impl<T, E: Display> OrMsg<T> for Result<T, E> {
    fn msg(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn description(name: &str) -> AlgebraDescription {
    let text = std::fs::read_to_string(root().join("fixtures").join(format!("{name}.quiver"))).unwrap();
    description::parse(&text).unwrap()
}

fn fixture<F: Field>(f: &F, name: &str) -> BoundQuiverAlgebra<F> {
    build::algebra(f, &description(name), DEFAULT_CAP).unwrap()
}

fn names<F: Field>(alg: &BoundQuiverAlgebra<F>, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| alg.quiver().vertex_name(v).to_string()).collect()
}

fn subsets(n: usize) -> Vec<Idempotent> {
    (0..1usize << n).map(|mask| Idempotent::new((0..n).filter(|i| mask >> i & 1 == 1))).collect()
}

/// Graded dimension count straight from a homogeneous presentation: paths of
/// each length minus the rank of the relations multiplied out on both sides.
/// Shares nothing with the normal-form machinery.
mod graded {
    use super::*;

    type Combination = BTreeMap<Vec<usize>, BigRational>;

    pub struct Presentation {
        pub vertices: Vec<String>,
        /// (source, target) per arrow.
        pub arrows: Vec<(usize, usize)>,
        pub relations: Vec<Vec<(BigRational, Vec<usize>)>>,
        /// Vertices whose idempotent is in the ideal.
        pub killed: BTreeSet<usize>,
    }

    impl Presentation {
        pub fn new(d: &AlgebraDescription) -> Self {
            let vertex = |n: &str| d.vertices.iter().position(|v| v == n).unwrap();
            let arrow = |l: &str| d.arrows.iter().position(|a| a.0 == l).unwrap();
            Presentation {
                vertices: d.vertices.clone(),
                arrows: d.arrows.iter().map(|(_, s, t)| (vertex(s), vertex(t))).collect(),
                relations: d
                    .relations
                    .iter()
                    .map(|r| r.iter().map(|t| (t.coefficient.clone(), t.word.iter().map(|l| arrow(l)).collect())).collect())
                    .collect(),
                killed: BTreeSet::new(),
            }
        }

        pub fn killing(mut self, names: &[&str]) -> Self {
            self.killed = names.iter().map(|n| self.vertices.iter().position(|v| v == n).unwrap()).collect();
            self
        }

        pub fn opposite(&self) -> Self {
            Presentation {
                vertices: self.vertices.clone(),
                arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
                relations: self
                    .relations
                    .iter()
                    .map(|r| r.iter().map(|(c, w)| (c.clone(), w.iter().rev().copied().collect())).collect())
                    .collect(),
                killed: self.killed.clone(),
            }
        }

        fn words(&self, len: usize) -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|w| {
                        (0..self.arrows.len())
                            .filter(|&a| w.last().is_none_or(|&b| self.arrows[b].1 == self.arrows[a].0))
                            .map(|a| {
                                let mut x = w.clone();
                                x.push(a);
                                x
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            out
        }

        fn ends(&self, w: &[usize]) -> (usize, usize) {
            (self.arrows[w[0]].0, self.arrows[*w.last().unwrap()].1)
        }

        /// `dim e_s Λ_k e_t` for paths of length `k`, keyed by (s, t).
        pub fn degree(&self, k: usize) -> BTreeMap<(usize, usize), usize> {
            if k == 0 {
                return (0..self.vertices.len()).filter(|v| !self.killed.contains(v)).map(|v| ((v, v), 1)).collect();
            }
            let words = self.words(k);
            let mut groups: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
            for w in &words {
                groups.entry(self.ends(w)).or_default().push(w.clone());
            }
            let mut gens: BTreeMap<(usize, usize), Vec<Combination>> = BTreeMap::new();
            for w in &words {
                let visits = std::iter::once(self.arrows[w[0]].0).chain(w.iter().map(|&a| self.arrows[a].1));
                if visits.into_iter().any(|v| self.killed.contains(&v)) {
                    gens.entry(self.ends(w)).or_default().push(BTreeMap::from([(w.clone(), BigRational::one())]));
                }
            }
            for r in &self.relations {
                let d = r[0].1.len();
                assert!(r.iter().all(|(_, w)| w.len() == d), "presentation is not homogeneous");
                if d > k {
                    continue;
                }
                let (rs, rt) = self.ends(&r[0].1);
                for a in 0..=k - d {
                    for u in self.words(a).into_iter().filter(|u| u.last().is_none_or(|&x| self.arrows[x].1 == rs)) {
                        for v in self.words(k - d - a).into_iter().filter(|v| v.first().is_none_or(|&x| self.arrows[x].0 == rt)) {
                            let mut g = Combination::new();
                            for (c, w) in r {
                                let full: Vec<usize> = u.iter().chain(w).chain(&v).copied().collect();
                                *g.entry(full).or_insert_with(BigRational::zero) += c;
                            }
                            g.retain(|_, c| !c.is_zero());
                            if let Some(first) = g.keys().next() {
                                let key = self.ends(first);
                                gens.entry(key).or_default().push(g);
                            }
                        }
                    }
                }
            }
            groups
                .into_iter()
                .map(|(key, ws)| {
                    let rows: Vec<Vec<BigRational>> = gens
                        .get(&key)
                        .map(|gs| {
                            gs.iter().map(|g| ws.iter().map(|w| g.get(w).cloned().unwrap_or_else(BigRational::zero)).collect()).collect()
                        })
                        .unwrap_or_default();
                    (key, ws.len() - rank(rows))
                })
                .collect()
        }

        /// Graded pieces up to the first vanishing one.
        pub fn pieces(&self) -> Vec<BTreeMap<(usize, usize), usize>> {
            let mut out = Vec::new();
            for k in 0..16 {
                let d = self.degree(k);
                if d.values().all(|&x| x == 0) {
                    return out;
                }
                out.push(d);
            }
            panic!("presentation does not vanish below degree 16");
        }

        pub fn dim(&self) -> usize {
            self.pieces().iter().flat_map(|p| p.values()).sum()
        }

        /// `cartan[s][t] = dim e_s Λ e_t`.
        pub fn cartan(&self) -> Vec<Vec<usize>> {
            let n = self.vertices.len();
            let mut c = vec![vec![0; n]; n];
            for p in self.pieces() {
                for ((s, t), d) in p {
                    c[s][t] += d;
                }
            }
            c
        }

        /// Nonzero closed paths of positive length.
        pub fn closed_paths(&self) -> usize {
            self.pieces().iter().skip(1).flat_map(|p| p.iter().filter(|((s, t), _)| s == t).map(|(_, d)| *d)).sum()
        }
    }

    pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let pivot = rows[r][c].clone();
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let k = &rows[i][c] / &pivot;
                    for j in c..cols {
                        let delta = &k * &rows[r][j];
                        rows[i][j] -= delta;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// Hand-computed syzygy chains of the commutative-square fixture, as vertex
/// names of the successive projective covers.
///
/// S1: rad P1 = αΛ + γΛ, kernel (β, -δ)Λ ≅ S3, then rad P3 = εΛ, then αΛ ≅ P2.
/// S2: rad P2 = βΛ ≅ S3, then εΛ, then αΛ.
/// S3: rad P3 = εΛ, kernel αΛ ≅ P2.
/// S4: rad P4 = δΛ ≅ S3, then εΛ, then αΛ.
const SQUARE_TOPS: [&[&[&str]]; 4] = [
    &[&["1"], &["2", "4"], &["3"], &["1"], &["2"]],
    &[&["2"], &["3"], &["1"], &["2"]],
    &[&["3"], &["1"], &["2"]],
    &[&["4"], &["3"], &["1"], &["2"]],
];

/// Injective dimensions of the simples of the same fixture, frozen after the
/// alternating Cartan check below accepted the opposite-side resolutions.
const SQUARE_INJECTIVE: [usize; 4] = [3, 4, 2, 1];

/// `Σ (-1)^i dim P_i` must equal the dimension vector of the simple.
fn alternating_matches_simple(cartan: &[Vec<usize>], tops: &[Vec<usize>], v: usize) -> bool {
    let n = cartan.len();
    let mut acc = vec![0i64; n];
    for (i, term) in tops.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &s in term {
            for t in 0..n {
                acc[t] += sign * cartan[s][t] as i64;
            }
        }
    }
    acc.iter().enumerate().all(|(t, &x)| x == i64::from(t == v))
}

fn criterion_1() -> Outcome {
    let d = description("fx3");
    let alg = fixture(&Rationals, "fx3");
    let oracle = graded::Presentation::new(&d);
    ensure!(oracle.dim() == 11 && alg.dim() == 11, "dim Λ: oracle {}, computed {}", oracle.dim(), alg.dim());

    let cartan = oracle.cartan();
    let mut pds = Vec::new();
    for v in 0..4 {
        let res = resolve_simple(&alg, v, 12).msg("resolution")?;
        let tops: Vec<Vec<String>> = res.terms.iter().map(|t| names(&alg, &t.vertices)).collect();
        let hand: Vec<Vec<String>> = SQUARE_TOPS[v].iter().map(|t| t.iter().map(|s| s.to_string()).collect()).collect();
        ensure!(res.terminated && tops == hand, "S{}: tops {tops:?}, hand chain {hand:?}", v + 1);
        let idx: Vec<Vec<usize>> = res.terms.iter().map(|t| t.vertices.clone()).collect();
        ensure!(alternating_matches_simple(&cartan, &idx, v), "S{}: alternating sum of covers is not the simple", v + 1);
        pds.push(res.projective_dimension().unwrap());
    }
    ensure!(pds == [4, 3, 2, 3], "pd = {pds:?}");

    let op = alg.opposite().msg("opposite")?;
    let cartan_op = oracle.opposite().cartan();
    let mut ids = Vec::new();
    for v in 0..4 {
        let res = resolve_simple(&op, v, 12).msg("opposite resolution")?;
        let idx: Vec<Vec<usize>> = res.terms.iter().map(|t| t.vertices.clone()).collect();
        ensure!(res.terminated && alternating_matches_simple(&cartan_op, &idx, v), "opposite S{} fails the Cartan check", v + 1);
        ids.push(res.projective_dimension().unwrap());
    }
    ensure!(ids == SQUARE_INJECTIVE, "id = {ids:?}");

    let report = analyze(&alg, &AnalysisOptions::default()).msg("analyze")?;
    ensure!(report.global_dimension == GlobalDimension::Finite { value: 4 }, "gldim {:?}", report.global_dimension);
    ensure!(ids.iter().max() == Some(&4), "injective side disagrees on gldim");

    // No nonzero closed path of positive length: every radical path p = e_s p - p e_s.
    ensure!(oracle.closed_paths() == 0, "square fixture has closed paths");
    let hh0 = hh0_summary(&alg);
    ensure!(hh0.dim == 4 && hh0.radical_trivial, "HH0 {hh0:?}");

    let e = build::vertex_set(&alg, "1,2,3").msg("vertex set")?;
    let quotient = lambda_e(&alg, &e).msg("quotient")?;
    let qa = &quotient.algebra;
    let q_oracle = graded::Presentation::new(&d).killing(&["4"]);
    let pieces = q_oracle.pieces();
    ensure!(qa.dim() == 6 && q_oracle.dim() == 6, "dim Λ_e: oracle {}, computed {}", q_oracle.dim(), qa.dim());
    ensure!(pieces.len() == 2 && qa.nilpotency_degree() == 2, "J² ≠ 0 in Λ_e");
    let qq = qa.quiver();
    let cyclic = qq.vertex_count() == 3
        && qq.arrow_count() == 3
        && (0..3).all(|v| qq.arrows_from(v).count() == 1 && qq.arrows_into(v).count() == 1 && qq.loops_at(v).is_empty());
    let connected = enumerate_cycles(qa, 3).iter().any(|c| c.len() == 3);
    ensure!(cyclic && connected, "Λ_e quiver is not a 3-cycle");
    ensure!(q_oracle.closed_paths() == 0, "Λ_e has closed paths");
    let qh = hh0_summary(qa);
    ensure!(qh.dim == 3 && qh.radical_trivial, "HH0(Λ_e) {qh:?}");

    let qr = quotient_report(&alg, &e, 6).msg("quotient report")?;
    ensure!(matches!(qr.global_dimension, GlobalDimension::Infinite { .. }), "gldim Λ_e {:?}", qr.global_dimension);
    let mut found = Vec::new();
    for v in 0..3 {
        if let Some(c) = periodicity_certificate(qa, v, 6).msg("periodicity")? {
            ensure!(c.iso.is_iso() && c.j <= 6, "bad certificate at {v}");
            found.push((c.vertex, c.i, c.j));
        }
    }
    ensure!(!found.is_empty(), "no periodicity certificate within depth 6");
    Ok(format!("dim 11, pd (4,3,2,3), id {ids:?}, HH0 4 radical-trivial; Λ_e dim 6, J²=0, HH0 3, periods {found:?}"))
}

fn vertex_report<'a>(r: &'a AnalysisReport, name: &str) -> &'a noloop_core::noloop::VertexReport {
    r.vertices.iter().find(|v| v.vertex == name).unwrap()
}

fn criterion_2() -> Outcome {
    let alg = fixture(&Rationals, "fx2");
    let report = analyze(&alg, &AnalysisOptions::default()).msg("analyze")?;
    let v = vertex_report(&report, "1");
    let loop_cert =
        |s: &DimensionStatus| matches!(s, DimensionStatus::Infinite { reason: InfiniteReason::Loop { arrows } } if arrows == &["alpha"]);
    ensure!(loop_cert(&v.projective) && loop_cert(&v.injective), "no loop certificate: {:?} / {:?}", v.projective, v.injective);
    let c = periodicity_certificate(&alg, 0, 12).msg("periodicity")?.ok_or("no periodicity certificate")?;
    ensure!((c.i, c.j) == (0, 1) && c.iso.is_iso(), "period ({},{})", c.i, c.j);
    let ext = ext_self_dims(&alg, 0, 10).msg("ext")?;
    ensure!(ext == vec![1; 10], "Ext^i(S,S) = {ext:?}");
    // Every cover is P1 and every differential is radical, so Ext^i is the multiplicity.
    let res = resolve_simple(&alg, 0, 10).msg("resolution")?;
    ensure!(res.multiplicities(0) == vec![1; 11] && res.is_minimal(&alg), "covers {:?}", res.multiplicities(0));
    let hh0 = hh0_summary(&alg);
    let oracle = graded::Presentation::new(&description("fx2"));
    // Commutative, so [Λ,Λ] = 0 and HH0 = Λ.
    ensure!(hh0.dim == 2 && oracle.dim() == 2 && !hh0.radical_trivial, "HH0 {hh0:?}");
    let cycles = enumerate_cycles(&alg, 6);
    ensure!(cycles.len() == 1, "cycles {}", cycles.len());
    let cr = cycle_report(&alg, &cycles[0]);
    ensure!(cr.cycle == "alpha" && cr.cyclically_free && cr.consequence.is_some(), "cycle {cr:?}");
    let op = alg.opposite().msg("opposite")?;
    let both_open = !resolve_simple(&alg, 0, 12).msg("resolution")?.terminated && !resolve_simple(&op, 0, 12).msg("resolution")?.terminated;
    ensure!(both_open, "a resolution of S1 terminates");
    ensure!(consistency_audit(&report).is_empty(), "audit fails");
    Ok("loop certificate, period (0,1), Ext^1..10 = 1, HH0 2 not radical-trivial, alpha cyclically free".into())
}

fn criterion_3() -> Outcome {
    let alg = fixture(&Rationals, "fx4");
    let cycles = enumerate_cycles(&alg, 6);
    ensure!(alg.relations().iter().all(|r| r.term_count() == 1), "not monomial");
    let two = cycles.iter().find(|c| c.len() == 2).ok_or("no 2-cycle")?;
    ensure!(cycles.iter().all(|c| is_cyclically_nonzero(&alg, c) == is_cyclically_free(&alg, c)), "non-zero and free disagree");
    ensure!(is_cyclically_free(&alg, two), "alpha*beta is not cyclically free");
    let report = analyze(&alg, &AnalysisOptions::default()).msg("analyze")?;
    ensure!(matches!(report.global_dimension, GlobalDimension::Infinite { .. }), "gldim {:?}", report.global_dimension);
    let c = periodicity_certificate(&alg, 0, 12).msg("periodicity")?.ok_or("no periodicity certificate")?;
    let res = resolve_simple(&alg, 0, 4).msg("resolution")?;
    let omega2 = res.syzygy_module(&alg, 2).ok_or("no second syzygy")?;
    ensure!(
        (c.i, c.j) == (0, 2),
        "cyclically free = non-zero, gldim ∞, but first period at vertex 1 is ({},{}) not (0,2); Ω²S1 has dims {:?}",
        c.i,
        c.j,
        omega2.dims()
    );
    Ok("period (0,2)".into())
}

fn criterion_4() -> Outcome {
    let mut dims = Vec::new();
    for name in ["fx1", "fx5"] {
        let alg = fixture(&Rationals, name);
        let report = analyze(&alg, &AnalysisOptions::default()).msg("analyze")?;
        ensure!(report.global_dimension == GlobalDimension::Finite { value: 1 }, "{name}: gldim {:?}", report.global_dimension);
        let oracle = graded::Presentation::new(&description(name));
        let hh0 = hh0_summary(&alg);
        ensure!(oracle.closed_paths() == 0 && hh0.dim == 2 && hh0.radical_trivial, "{name}: HH0 {hh0:?}");
        dims.push(hh0.dim);
    }
    let ext = extension_quiver(&fixture(&Rationals, "fx5")).msg("ext quiver")?;
    // No relations: dim Ext¹(S1,S2) is the number of arrows.
    ensure!(ext.len() == 1 && ext[0].dim == 2, "ext quiver {ext:?}");
    Ok(format!("gldim 1 and 1, HH0 dims {dims:?}, one ext arrow of dim 2"))
}

fn same<F: Field>(alg: &BoundQuiverAlgebra<F>, a: &LambdaMatrix<F>, b: &LambdaMatrix<F>) -> bool {
    a.source == b.source && a.target == b.target && a.add(alg, &b.neg(alg)).is_zero(alg)
}

fn random_radical_matrix<F: Field>(alg: &BoundQuiverAlgebra<F>, p: &ProjectiveSum, rng: &mut ChaCha8Rng) -> LambdaMatrix<F> {
    let radical: HashSet<usize> = alg.radical_basis().into_iter().collect();
    let mut m = LambdaMatrix::zero(alg, p.clone(), p.clone());
    for (i, &t) in p.vertices.iter().enumerate() {
        for (j, &s) in p.vertices.iter().enumerate() {
            let support: Vec<usize> = alg.peirce(t, s).into_iter().filter(|k| radical.contains(k)).collect();
            m.set_entry(i, j, corpus::random_element_on(alg, &support, rng));
        }
    }
    m
}

struct Traces<'a, F: Field> {
    alg: &'a BoundQuiverAlgebra<F>,
    ctx: &'a ETraceContext<F>,
}

impl<F: Field> Traces<'_, F> {
    fn both(&self, phi: &LambdaMatrix<F>) -> (HH0Class<F>, HH0Class<F>) {
        (hs_trace(self.alg, &self.ctx.hh0, phi), self.ctx.trace_projective(self.alg, phi))
    }

    fn sum(&self, a: &(HH0Class<F>, HH0Class<F>), b: &(HH0Class<F>, HH0Class<F>)) -> (HH0Class<F>, HH0Class<F>) {
        let f = self.alg.field();
        (a.0.add(f, &b.0), a.1.add(f, &b.1))
    }
}

fn trace_laws<F: Field>(alg: &BoundQuiverAlgebra<F>, instances: usize, seed: u64) -> Result<(usize, usize), String> {
    let n = alg.vertex_count();
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let contexts: Vec<ETraceContext<F>> =
        subsets(n).iter().filter(|e| !e.is_empty()).map(|e| ETraceContext::new(alg, e, 12)).collect::<Result<_, _>>().msg("context")?;
    let regular = ProjectiveSum::regular(alg);
    let everything: Vec<usize> = (0..alg.dim()).collect();
    for k in 0..instances {
        let ctx = &contexts[rng.gen_range(0..contexts.len())];
        let t = Traces { alg, ctx };
        let p = corpus::random_projective(n, 3, &mut rng);
        let q = corpus::random_projective(n, 3, &mut rng);
        let phi = corpus::random_lambda_matrix(alg, &p, &p, &mut rng);
        let psi = corpus::random_lambda_matrix(alg, &p, &p, &mut rng);
        let chi = corpus::random_lambda_matrix(alg, &q, &q, &mut rng);
        let a = corpus::random_lambda_matrix(alg, &p, &q, &mut rng);
        let b = corpus::random_lambda_matrix(alg, &q, &p, &mut rng);

        ensure!(t.both(&phi.add(alg, &psi)) == t.sum(&t.both(&phi), &t.both(&psi)), "instance {k}: additivity");
        ensure!(t.both(&a.compose(alg, &b)) == t.both(&b.compose(alg, &a)), "instance {k}: tr(ab) ≠ tr(ba)");
        let block = LambdaMatrix::blocks(&phi, &b, &a, &chi);
        ensure!(t.both(&block) == t.sum(&t.both(&phi), &t.both(&chi)), "instance {k}: block sum");

        let nil = random_radical_matrix(alg, &p, &mut rng);
        let id = LambdaMatrix::identity(alg, &p);
        let u = id.add(alg, &nil);
        let minus = nil.neg(alg);
        let (mut term, mut inv) = (id.clone(), id.clone());
        for _ in 0..=4 * alg.nilpotency_degree() * p.len() {
            term = term.compose(alg, &minus);
            if term.is_zero(alg) {
                break;
            }
            inv = inv.add(alg, &term);
        }
        ensure!(same(alg, &u.compose(alg, &inv), &id) && same(alg, &inv.compose(alg, &u), &id), "instance {k}: bad inverse");
        ensure!(t.both(&u.compose(alg, &phi).compose(alg, &inv)) == t.both(&phi), "instance {k}: conjugation");

        let x = corpus::random_element_on(alg, &everything, &mut rng);
        let expected = (ctx.hh0.class_of(&x), ctx.class_of(&x));
        ensure!(t.both(&left_multiplication(alg, &regular, &x)) == expected, "instance {k}: left multiplication on Λ");
        let s = rng.gen_range(0..n);
        let y = corpus::random_element_on(alg, &alg.peirce(s, s), &mut rng);
        let scalar = LambdaMatrix::scalar(alg, s, y.clone()).msg("scalar")?;
        ensure!(t.both(&scalar) == (ctx.hh0.class_of(&y), ctx.class_of(&y)), "instance {k}: corner multiplication");
    }

    // Endomorphisms of projectives whose tops avoid e.
    let proper: Vec<Idempotent> = subsets(n).into_iter().filter(|e| e.vertices().len() < n).collect();
    let mut vanishing = 0;
    for k in 0..instances / 2 {
        let e = &proper[rng.gen_range(0..proper.len())];
        let outside: Vec<usize> = (0..n).filter(|v| !e.contains(*v)).collect();
        let p = ProjectiveSum::new((0..rng.gen_range(1..=3)).map(|_| outside[rng.gen_range(0..outside.len())]).collect());
        let phi = corpus::random_lambda_matrix(alg, &p, &p, &mut rng);
        let tr = noloop_core::hochschild::e_trace_projective(alg, e, &phi).msg("e-trace")?;
        ensure!(tr.is_zero(f), "instance {k}: e-trace of an e-avoiding projective is nonzero");
        vanishing += 1;
    }
    Ok((instances, vanishing))
}

const FIXTURES: [&str; 5] = ["fx1", "fx2", "fx3", "fx4", "fx5"];

fn criterion_5() -> Outcome {
    let f3 = PrimeField::new(3).unwrap();
    let runs: Vec<Result<String, String>> = FIXTURES
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, name)| {
            let q = trace_laws(&fixture(&Rationals, name), 200, 100 + i as u64).map(|(a, b)| format!("{name}/Q {a}+{b}"));
            let p = trace_laws(&fixture(&f3, name), 200, 200 + i as u64).map(|(a, b)| format!("{name}/F3 {a}+{b}"));
            [q.map_err(|e| format!("{name}/Q: {e}")), p.map_err(|e| format!("{name}/F3: {e}"))]
        })
        .collect();
    let ok: Vec<String> = runs.into_iter().collect::<Result<_, _>>()?;
    Ok(format!("laws (1)-(5) + vanishing: {}", ok.join(", ")))
}

/// Idempotents of the fixture with an e-bounded horizon for every module.
fn bounded_contexts<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Result<Vec<ETraceContext<F>>, String> {
    let mut out = Vec::new();
    for e in subsets(alg.vertex_count()) {
        let ctx = ETraceContext::new(alg, &e, 12).msg("context")?;
        if ctx.required_depth().is_ok() {
            out.push(ctx);
        }
    }
    Ok(out)
}

fn well_defined<F: Field>(alg: &BoundQuiverAlgebra<F>, seed: u64, wanted: usize) -> Result<(usize, usize), String> {
    let contexts = bounded_contexts(alg)?;
    ensure!(!contexts.is_empty(), "no idempotent admits a horizon");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut nonzero = 0;
    while done < wanted {
        let ctx = &contexts[rng.gen_range(0..contexts.len())];
        let m = corpus::random_module(alg, 3, &mut rng);
        let phi = corpus::random_endomorphism(alg, &m, &mut rng);
        let base = ctx.trace_module(alg, &m, &phi).msg("trace")?;
        // One term longer than needed, so there is room to pad below the horizon.
        let res = minimal_resolution(alg, &m, ctx.required_depth().msg("depth")? + 1).msg("resolve")?;
        ensure!(ctx.trace_along(alg, &res, &phi, None).msg("trace")? == base, "module {done}: resolution length changes the trace");
        let (mut r1, mut r2) = (ChaCha8Rng::seed_from_u64(rng.gen()), ChaCha8Rng::seed_from_u64(rng.gen()));
        let t1 = ctx.trace_along(alg, &res, &phi, Some(&mut r1)).msg("trace")?;
        let t2 = ctx.trace_along(alg, &res, &phi, Some(&mut r2)).msg("trace")?;
        ensure!(t1 == base && t2 == base, "module {done}: independent lifts disagree");
        let top = if res.terminated { res.len() } else { res.len() - 1 };
        let k = rng.gen_range(0..top);
        let w = rng.gen_range(0..alg.vertex_count());
        let pad = padded(alg, &res, k, w).msg("padded")?;
        let tp = ctx.trace_along(alg, &pad, &phi, Some(&mut r1)).msg("trace")?;
        ensure!(tp == base, "module {done}: padded resolution at ({k},{w}) disagrees");
        if !base.is_zero(alg.field()) {
            nonzero += 1;
        }
        done += 1;
    }
    Ok((done, nonzero))
}

fn criterion_6() -> Outcome {
    let runs: Vec<String> = FIXTURES
        .par_iter()
        .enumerate()
        .map(|(i, name)| well_defined(&fixture(&Rationals, name), 600 + i as u64, 20).map(|(a, b)| format!("{name} {a} ({b} nonzero)")))
        .collect::<Result<_, _>>()?;
    Ok(runs.join(", "))
}

fn is_proper<F: Field>(m: &FdModule<F>, sub: &[noloop_core::Subspace<F>]) -> bool {
    let d: usize = sub.iter().map(|s| s.dim()).sum();
    d > 0 && d < m.total_dim()
}

fn additivity<F: Field>(alg: &BoundQuiverAlgebra<F>, seed: u64, wanted: usize) -> Result<usize, String> {
    let contexts = bounded_contexts(alg)?;
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    for _ in 0..50 * wanted {
        if done == wanted {
            break;
        }
        let ctx = &contexts[rng.gen_range(0..contexts.len())];
        let m = corpus::random_module(alg, 3, &mut rng);
        let phi = corpus::random_endomorphism(alg, &m, &mut rng);
        let sub = corpus::random_stable_submodule(alg, &m, &phi, &mut rng);
        if !is_proper(&m, &sub) {
            continue;
        }
        let (l, u) = m.submodule(alg, &sub);
        let (n, v) = m.quotient(alg, &sub);
        let phi_l = phi.restrict(&sub, &sub).msg("restrict")?;
        let phi_n = phi.induced_on_quotient(&sub, &sub);
        let commutes = |a: &ModuleHom<F>, b: &ModuleHom<F>| a.sub(b).is_zero();
        ensure!(
            commutes(&phi.compose(&u), &u.compose(&phi_l)) && commutes(&v.compose(&phi), &phi_n.compose(&v)),
            "diagram does not commute"
        );
        let depth = ctx.required_depth().msg("depth")?;
        let res_l = minimal_resolution(alg, &l, depth).msg("resolve L")?;
        let res_n = minimal_resolution(alg, &n, depth).msg("resolve N")?;
        let res_m = horseshoe(alg, &m, &u, &v, &res_l, &res_n).msg("horseshoe")?;
        let tm = ctx.trace_along(alg, &res_m, &phi, None).msg("trace M")?;
        let tl = ctx.trace_along(alg, &res_l, &phi_l, None).msg("trace L")?;
        let tn = ctx.trace_along(alg, &res_n, &phi_n, None).msg("trace N")?;
        ensure!(tm == tl.add(f, &tn), "sequence {done}: tr_M ≠ tr_L + tr_N");
        ensure!(tm == ctx.trace_module(alg, &m, &phi).msg("trace")?, "sequence {done}: horseshoe and minimal traces differ");
        done += 1;
    }
    ensure!(done == wanted, "only {done} proper stable submodules found");
    Ok(done)
}

fn criterion_7() -> Outcome {
    let runs: Vec<String> = FIXTURES
        .par_iter()
        .enumerate()
        .map(|(i, name)| additivity(&fixture(&Rationals, name), 700 + i as u64, 20).map(|a| format!("{name} {a}")))
        .collect::<Result<_, _>>()?;
    Ok(runs.join(", "))
}

/// (qualifying pairs, certificates checked) for one corpus algebra.
fn radical_trivial_quotients<F: Field>(alg: &BoundQuiverAlgebra<F>, seed: u64) -> Result<(usize, usize), String> {
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut pairs, mut certs) = (0, 0);
    for e in subsets(alg.vertex_count()).into_iter().filter(|e| !e.is_empty()) {
        let ctx = ETraceContext::new(alg, &e, 10).msg("context")?;
        if ctx.required_depth().is_err() {
            continue;
        }
        pairs += 1;
        ensure!(is_radical_trivial(&ctx.quotient.algebra), "seed {seed}, e {:?}: HH0(Λ_e) not radical-trivial", e.names(alg));
        for _ in 0..20 {
            let a = corpus::random_radical_element(alg, &mut rng);
            let cert = filtration_certificate(&ctx, alg, &a).msg("certificate")?;
            let direct = ctx.hh0_e.contains_commutator(&ctx.quotient.project(&a));
            ensure!(cert.holds(f) && direct, "seed {seed}, e {:?}: certificate fails", e.names(alg));
            certs += 1;
        }
    }
    Ok((pairs, certs))
}

fn criterion_8() -> Outcome {
    let opts = CorpusOptions { max_dim: 16, ..Default::default() };
    let runs: Vec<(usize, usize)> = (0..30u64)
        .into_par_iter()
        .map(|seed| {
            let spec = RandomAlgebra::generate(seed, opts);
            match spec.prime {
                None => radical_trivial_quotients(&spec.build(&Rationals).unwrap(), seed),
                Some(p) => radical_trivial_quotients(&spec.build(&PrimeField::new(p).unwrap()).unwrap(), seed),
            }
        })
        .collect::<Result<_, _>>()?;
    let pairs: usize = runs.iter().map(|r| r.0).sum();
    let certs: usize = runs.iter().map(|r| r.1).sum();
    ensure!(pairs > 0, "no qualifying (algebra, e) pair");
    Ok(format!("30 algebras, {pairs} qualifying (algebra, e) pairs, {certs} certificates"))
}

/// Direct restatement of the audit rules this criterion names.
fn sound(report: &AnalysisReport) -> Result<(), String> {
    for v in report.vertices.iter().filter(|v| !v.loops.is_empty()) {
        ensure!(v.projective.finite().is_none() && v.injective.finite().is_none(), "loop vertex {} terminates", v.vertex);
    }
    let side = |n: &String, inj: bool| {
        let v = report.vertices.iter().find(|v| &v.vertex == n).unwrap();
        if inj {
            v.injective.finite()
        } else {
            v.projective.finite()
        }
    };
    for c in report.cycles.iter().filter(|c| c.cyclically_free) {
        for inj in [false, true] {
            ensure!(c.support.iter().any(|n| side(n, inj).is_none()), "cycle {} has a terminating S_e", c.cycle);
        }
    }
    if matches!(report.global_dimension, GlobalDimension::Finite { .. }) {
        ensure!(report.hh0.radical_trivial, "finite gldim with HH0 not radical-trivial");
    }
    Ok(())
}

fn audited<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Result<bool, String> {
    let report = analyze(alg, &AnalysisOptions { depth: 12, cycle_max: 6, quotients: Vec::new() }).msg("analyze")?;
    let v = consistency_audit(&report);
    ensure!(v.is_empty(), "violations {v:?}");
    sound(&report)?;
    Ok(matches!(report.global_dimension, GlobalDimension::Finite { .. }))
}

fn criterion_9() -> Outcome {
    let runs: Vec<bool> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let spec = RandomAlgebra::generate(seed, CorpusOptions::default());
            match spec.prime {
                None => audited(&spec.build(&Rationals).unwrap()),
                Some(p) => audited(&spec.build(&PrimeField::new(p).unwrap()).unwrap()),
            }
            .map_err(|e| format!("seed {seed}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let finite = runs.iter().filter(|&&b| b).count();
    Ok(format!("100 algebras audited clean ({finite} of finite global dimension)"))
}

fn criterion_10() -> Outcome {
    let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2"), ("x", "2", "2")]).msg("quiver")?;
    let axx = PathVector::from_path(&Rationals, q.path_from_labels(&["a", "x", "x"]).msg("path")?);
    let built = BoundQuiverAlgebra::build(&Rationals, q, vec![axx], 10);
    ensure!(matches!(built, Err(Error::NotAdmissible { cap: 10 })), "unrelated loop accepted: {:?}", built.err());

    let negative = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/negative");
    let loop_file = negative.join("unrelated_loop.quiver");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = noloop_cli::main_with(["noloop", "analyze", loop_file.to_str().unwrap(), "--cap", "10"], &mut out, &mut err);
    ensure!(code == 2 && String::from_utf8_lossy(&err).contains("not admissible"), "cli exit {code}");

    let text = std::fs::read_to_string(negative.join("reversed_word.quiver")).unwrap();
    let e = description::parse(&text).err().ok_or("reversed word parsed")?;
    ensure!((e.line, e.column, e.token.as_str()) == (5, 15, "alpha") && e.message.contains("composable"), "parse error {e}");

    let alg = fixture(&Rationals, "fx2");
    let mut report = analyze(&alg, &AnalysisOptions::default()).msg("analyze")?;
    ensure!(consistency_audit(&report).is_empty(), "genuine report flagged");
    report.vertices[0].projective = DimensionStatus::Finite { value: 2 };
    let v = consistency_audit(&report);
    ensure!(v.iter().any(|x| x.rule == "loop-finite"), "forged report passes: {v:?}");
    Ok(format!("NotAdmissible at cap 10, parse error at 5:15, forged report flagged ({})", v[0].rule))
}

// Runs without the libtest harness so the per-check lines are never captured.
fn main() {
    let checks: [fn() -> Outcome; 10] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10];
    let results: Vec<(usize, Outcome, std::time::Duration)> = checks
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let start = std::time::Instant::now();
            let r = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
            (i + 1, r, start.elapsed())
        })
        .collect();
    let mut failing = Vec::new();
    for (n, r, t) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail}) [{:.1}s]", t.as_secs_f64()),
            Err(why) => {
                println!("criterion {n}: FAIL ({why}) [{:.1}s]", t.as_secs_f64());
                failing.push(*n);
            }
        }
    }
    if failing != EXPECTED_FAILURES {
        println!("acceptance: failing checks {failing:?}, expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
    println!("acceptance: failing checks match the expected set {EXPECTED_FAILURES:?}");
}
