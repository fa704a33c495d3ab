//! Projective resolutions.
//!
//! Syzygies are kept inside the previous projective term, vertex by vertex.
//! A cover of a closed submodule `K` picks, at each vertex, rows of `K_w`
//! extending a basis of `rad(K)_w`; those rows are the columns of the next
//! differential, so every differential of a minimal resolution is radical.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda::{LambdaMatrix, ProjectiveSum};
use crate::linalg::{kernel_basis, solve, EchelonBuilder, Matrix, Subspace};
use crate::module::{iso_test, FdModule, IsoOutcome, ModuleHom};
use crate::quotient::Idempotent;

/// Largest total dimension allowed for a single projective term.
pub const DEFAULT_TERM_BUDGET: usize = 300;

/// Syzygies larger than this are not compared in the periodicity search.
pub const PERIOD_MODULE_LIMIT: usize = 60;

/// What is known about the terms past the computed ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// The last syzygy is zero.
    Terminated,
    /// A minimal resolution computed to this many terms.
    Minimal { computed: usize },
    /// Terms repeat with this period from `start`; `window` lists the vertex
    /// multisets of one period.
    Periodic { start: usize, period: usize, window: Vec<Vec<usize>> },
    /// Direct sum of two resolutions term by term.
    Horseshoe(Box<Tail>, Box<Tail>),
    /// Nothing is known.
    Open,
}

impl Tail {
    /// True when every term past the computed ones is known to avoid `e`.
    /// `id_bound` is an upper bound on the injective dimension of `S_e`.
    pub fn beyond_avoids(&self, e: &Idempotent, id_bound: Option<usize>) -> bool {
        match self {
            Tail::Terminated => true,
            Tail::Minimal { computed } => id_bound.is_some_and(|d| *computed > d),
            Tail::Periodic { window, .. } => window.iter().flatten().all(|&v| !e.contains(v)),
            Tail::Horseshoe(a, b) => a.beyond_avoids(e, id_bound) && b.beyond_avoids(e, id_bound),
            Tail::Open => false,
        }
    }
}

#[derive(Clone)]
pub struct Resolution<F: Field> {
    pub module: FdModule<F>,
    pub terms: Vec<ProjectiveSum>,
    /// `differentials[i]` maps `terms[i + 1]` to `terms[i]`.
    pub differentials: Vec<LambdaMatrix<F>>,
    /// Images in the module of the generators of `terms[0]`, as flat vectors.
    pub generator_images: Vec<Vec<F::Elem>>,
    pub augmentation: ModuleHom<F>,
    concrete: Vec<ModuleHom<F>>,
    /// Kernel of the map out of `terms[i]` (the augmentation for `i = 0`).
    pub syzygies: Vec<Vec<Subspace<F>>>,
    pub terminated: bool,
    pub budget_exhausted: bool,
    pub tail: Tail,
}

impl<F: Field> std::fmt::Debug for Resolution<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<&Vec<usize>> = self.terms.iter().map(|t| &t.vertices).collect();
        write!(f, "Resolution(terms {:?}, terminated {})", terms, self.terminated)
    }
}

/// The homomorphism `⊕ e_{v_j}Λ -> M` sending generator `j` to `images[j]`.
pub fn hom_from_generators<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    p: &ProjectiveSum,
    target: &FdModule<F>,
    images: &[Vec<F::Elem>],
) -> ModuleHom<F> {
    let f = alg.field();
    let layout = p.layout(alg);
    let maps = (0..alg.vertex_count())
        .map(|w| {
            let mut m = Matrix::zeros(f, target.dim_at(w), layout.per_vertex[w].len());
            for (col, &(j, b)) in layout.per_vertex[w].iter().enumerate() {
                let path = &alg.basis()[b];
                let img = target.path_matrix(path).mul_vec(target.component(&images[j], path.source()));
                for (r, x) in img.into_iter().enumerate() {
                    m.set(r, col, x);
                }
            }
            m
        })
        .collect();
    ModuleHom::new(f, maps)
}

/// Minimal generators of a closed submodule: per vertex, rows of `K_w`
/// extending a basis of `rad(K)_w`.
pub fn top_generators<F: Field>(alg: &BoundQuiverAlgebra<F>, ambient: &FdModule<F>, k: &[Subspace<F>]) -> Vec<(usize, Vec<F::Elem>)> {
    let q = alg.quiver();
    let mut out = Vec::new();
    for w in 0..alg.vertex_count() {
        if k[w].is_zero() {
            continue;
        }
        let mut b = EchelonBuilder::new(alg.field(), ambient.dim_at(w));
        for a in q.arrows_into(w) {
            let u = q.arrow(a).source;
            for x in k[u].basis() {
                b.insert(ambient.action(a).mul_vec(x));
            }
        }
        for row in k[w].basis() {
            if b.insert(row.clone()) {
                out.push((w, row.clone()));
            }
        }
    }
    out
}

fn full_subspaces<F: Field>(m: &FdModule<F>) -> Vec<Subspace<F>> {
    m.dims().iter().map(|&d| Subspace::full(m.field(), d)).collect()
}

fn is_zero_subspaces<F: Field>(k: &[Subspace<F>]) -> bool {
    k.iter().all(Subspace::is_zero)
}

impl<F: Field> Resolution<F> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Projective dimension when the resolution terminated.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.terminated.then(|| self.terms.len().saturating_sub(1))
    }

    /// Concrete matrices of `differentials[i]`.
    pub fn concrete(&self, i: usize) -> &ModuleHom<F> {
        &self.concrete[i]
    }

    /// True when `terms[i]` has a summand at a vertex of `e`.
    pub fn term_meets(&self, i: usize, e: &Idempotent) -> bool {
        self.terms[i].vertices.iter().any(|&v| e.contains(v))
    }

    /// Least `m` such that every term from index `m` on has top killed by
    /// `e`, when the terms past the computed ones are known to do so.
    pub fn horizon(&self, e: &Idempotent, id_bound: Option<usize>) -> Option<usize> {
        if !self.tail.beyond_avoids(e, id_bound) {
            return None;
        }
        let mut m = self.terms.len();
        while m > 0 && !self.term_meets(m - 1, e) {
            m -= 1;
        }
        Some(m)
    }

    /// Multiplicity of `v` in each computed term.
    pub fn multiplicities(&self, v: usize) -> Vec<usize> {
        self.terms.iter().map(|t| t.vertices.iter().filter(|&&w| w == v).count()).collect()
    }

    /// The `i`-th syzygy as a module (`Ω⁰` is the resolved module).
    pub fn syzygy_module(&self, alg: &BoundQuiverAlgebra<F>, i: usize) -> Option<FdModule<F>> {
        if i == 0 {
            return Some(self.module.clone());
        }
        let k = self.syzygies.get(i - 1)?;
        let ambient = self.terms[i - 1].module(alg);
        Some(ambient.submodule(alg, k).0)
    }

    /// True when every differential entry is radical.
    pub fn is_minimal(&self, alg: &BoundQuiverAlgebra<F>) -> bool {
        self.differentials.iter().all(|d| d.is_radical(alg))
    }

    /// Exactness at every computed stage, from ranks of the concrete maps and
    /// vanishing of consecutive composites.
    pub fn verify_exact(&self, alg: &BoundQuiverAlgebra<F>) -> Result<()> {
        if self.terms.is_empty() {
            return if self.module.is_zero() { Ok(()) } else { Err(Error::NonExact("empty resolution of a nonzero module".into())) };
        }
        if !self.augmentation.is_surjective() {
            return Err(Error::NonExact("augmentation is not onto".into()));
        }
        for i in 0..self.terms.len() {
            let out = if i == 0 { &self.augmentation } else { &self.concrete[i - 1] };
            let inc = self.concrete.get(i);
            if let Some(d) = inc {
                if !out.compose(d).is_zero() {
                    return Err(Error::NonExact(format!("composite through term {i} is nonzero")));
                }
            }
            let dims = self.terms[i].dims(alg);
            for (w, &dim) in dims.iter().enumerate() {
                let kernel = dim - out.at(w).rank();
                let image = inc.map_or(0, |d| d.at(w).rank());
                let last = i + 1 == self.terms.len();
                if last && !self.terminated {
                    continue;
                }
                if kernel != image {
                    return Err(Error::NonExact(format!("homology at term {i}, vertex {w}")));
                }
            }
        }
        Ok(())
    }
}

/// Options bounding the size of a computed resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub term_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { term_budget: DEFAULT_TERM_BUDGET }
    }
}

/// Minimal projective resolution with terms `P_0 … P_depth` (fewer if it terminates).
pub fn minimal_resolution<F: Field>(alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>, depth: usize) -> Result<Resolution<F>> {
    minimal_resolution_with(alg, m, depth, Limits::default())
}

pub fn minimal_resolution_with<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    m: &FdModule<F>,
    depth: usize,
    limits: Limits,
) -> Result<Resolution<F>> {
    let gens = top_generators(alg, m, &full_subspaces(m));
    let p0 = ProjectiveSum::new(gens.iter().map(|(v, _)| *v).collect());
    let images: Vec<Vec<F::Elem>> = gens.iter().map(|(v, c)| m.embed(*v, c)).collect();
    let augmentation = hom_from_generators(alg, &p0, m, &images);
    let mut res = Resolution {
        module: m.clone(),
        terms: Vec::new(),
        differentials: Vec::new(),
        generator_images: images,
        augmentation,
        concrete: Vec::new(),
        syzygies: Vec::new(),
        terminated: false,
        budget_exhausted: false,
        tail: Tail::Open,
    };
    if m.is_zero() {
        res.terminated = true;
        res.tail = Tail::Terminated;
        return Ok(res);
    }
    if p0.total_dim(alg) > limits.term_budget {
        res.budget_exhausted = true;
        return Ok(res);
    }
    let mut kernel = res.augmentation.kernel();
    res.terms.push(p0);
    res.syzygies.push(kernel.clone());
    let mut ambient = res.terms[0].module(alg);
    for i in 1..=depth {
        if is_zero_subspaces(&kernel) {
            break;
        }
        let gens = top_generators(alg, &ambient, &kernel);
        let pi = ProjectiveSum::new(gens.iter().map(|(v, _)| *v).collect());
        if pi.total_dim(alg) > limits.term_budget {
            res.budget_exhausted = true;
            break;
        }
        let prev = &res.terms[i - 1];
        let layout = prev.layout(alg);
        let columns = gens.iter().map(|(v, c)| prev.component_to_column(alg, &layout, *v, c)).collect();
        let d = LambdaMatrix::from_columns(pi.clone(), prev.clone(), columns, alg);
        let dh = d.to_hom(alg);
        for (w, kw) in kernel.iter().enumerate() {
            if dh.at(w).rank() != kw.dim() {
                return Err(Error::NonExact(format!("cover of syzygy {i} misses vertex {w}")));
            }
        }
        kernel = dh.kernel();
        res.terms.push(pi);
        res.differentials.push(d);
        res.concrete.push(dh);
        res.syzygies.push(kernel.clone());
        ambient = res.terms[i].module(alg);
    }
    res.terminated = is_zero_subspaces(&kernel) && !res.budget_exhausted;
    res.tail = if res.terminated { Tail::Terminated } else { Tail::Minimal { computed: res.terms.len() } };
    Ok(res)
}

/// Minimal resolution of a simple module.
pub fn resolve_simple<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize, depth: usize) -> Result<Resolution<F>> {
    minimal_resolution(alg, &FdModule::simple(alg, v), depth)
}

fn random_kernel_element<F: Field>(m: &Matrix<F>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = m.field();
    let k = kernel_basis(m);
    let coeffs: Vec<F::Elem> = (0..k.dim()).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
    if k.dim() == 0 {
        return vec![f.zero(); m.cols()];
    }
    k.combine(&coeffs)
}

fn solve_or_nonexact<F: Field>(a: &Matrix<F>, b: &[F::Elem], what: &str) -> Result<Vec<F::Elem>> {
    solve(a, b).ok_or_else(|| Error::NonExact(format!("no solution while {what}")))
}

/// Lifts `f: M -> N` to maps `φ_i: src.terms[i] -> tgt.terms[i]` for `i < upto`.
///
/// Each generator image is found by a deterministic linear solve; with a
/// random source, a random kernel element is added, which still gives a lift.
pub fn lift_map<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    f: &ModuleHom<F>,
    src: &Resolution<F>,
    tgt: &Resolution<F>,
    upto: usize,
    mut perturb: Option<&mut ChaCha8Rng>,
) -> Result<Vec<LambdaMatrix<F>>> {
    let fld = alg.field();
    let mut lifts: Vec<LambdaMatrix<F>> = Vec::new();
    let count = upto.min(src.terms.len());
    for i in 0..count {
        let source = src.terms[i].clone();
        let target = tgt.terms.get(i).cloned().unwrap_or_default();
        let layout = target.layout(alg);
        let mut columns = Vec::with_capacity(source.len());
        for (j, &v) in source.vertices.iter().enumerate() {
            let (value, map) = if i == 0 {
                let img = f.apply(&src.module, &tgt.module, &src.generator_images[j]);
                (tgt.module.component(&img, v).to_vec(), tgt.augmentation.at(v))
            } else {
                let col = lifts[i - 1].apply(alg, &src.differentials[i - 1].column(j));
                let prev = &tgt.terms[i - 1];
                let comp = prev.column_to_component(alg, &prev.layout(alg), v, &col);
                if i > tgt.concrete.len() {
                    if comp.iter().any(|x| !fld.is_zero(x)) {
                        return Err(Error::NonExact(format!("lift at degree {i} has no target term")));
                    }
                    columns.push(vec![alg.zero(); target.len()]);
                    continue;
                }
                (comp, tgt.concrete[i - 1].at(v))
            };
            if target.is_empty() {
                if value.iter().any(|x| !fld.is_zero(x)) {
                    return Err(Error::NonExact(format!("lift at degree {i} has no target term")));
                }
                columns.push(Vec::new());
                continue;
            }
            let mut y = solve_or_nonexact(map, &value, "lifting a map")?;
            if let Some(rng) = perturb.as_deref_mut() {
                let k = random_kernel_element(map, rng);
                y = y.iter().zip(&k).map(|(a, b)| fld.add(a, b)).collect();
            }
            columns.push(target.component_to_column(alg, &layout, v, &y));
        }
        lifts.push(LambdaMatrix::from_columns(source, target, columns, alg));
    }
    Ok(lifts)
}

/// Lifts of an endomorphism along one resolution.
pub fn lift_endomorphism<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    phi: &ModuleHom<F>,
    res: &Resolution<F>,
    upto: usize,
    perturb: Option<&mut ChaCha8Rng>,
) -> Result<Vec<LambdaMatrix<F>>> {
    lift_map(alg, phi, res, res, upto, perturb)
}

fn term<F: Field>(res: &Resolution<F>, i: usize) -> ProjectiveSum {
    res.terms.get(i).cloned().unwrap_or_default()
}

fn differential<F: Field>(alg: &BoundQuiverAlgebra<F>, res: &Resolution<F>, i: usize) -> LambdaMatrix<F> {
    res.differentials.get(i).cloned().unwrap_or_else(|| LambdaMatrix::zero(alg, term(res, i + 1), term(res, i)))
}

/// Recomputes concrete maps and the final kernel of an assembled resolution.
fn finish<F: Field>(alg: &BoundQuiverAlgebra<F>, mut res: Resolution<F>) -> Result<Resolution<F>> {
    res.concrete = res.differentials.iter().map(|d| d.to_hom(alg)).collect();
    let last = res.terms.len();
    let kernel = if last == 0 {
        Vec::new()
    } else if last == 1 {
        res.augmentation.kernel()
    } else {
        res.concrete[last - 2].kernel()
    };
    res.syzygies = Vec::new();
    if res.terminated && !is_zero_subspaces(&kernel) {
        return Err(Error::NonExact("assembled resolution does not terminate".into()));
    }
    res.verify_exact(alg)?;
    Ok(res)
}

/// Resolution of the middle term of `0 -> L -u-> M -v-> N -> 0` with terms
/// `P_i ⊕ P'_i` and differentials `[[d_i, σ_i], [0, d'_i]]`.
#[allow(clippy::too_many_arguments)]
pub fn horseshoe<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    m: &FdModule<F>,
    u: &ModuleHom<F>,
    v: &ModuleHom<F>,
    res_l: &Resolution<F>,
    res_n: &Resolution<F>,
) -> Result<Resolution<F>> {
    let fld = alg.field();
    let (l, n) = (&res_l.module, &res_n.module);
    if !u.is_hom(alg, l, m) || !v.is_hom(alg, m, n) {
        return Err(Error::NonExact("sequence maps are not homomorphisms".into()));
    }
    if !u.is_injective() || !v.is_surjective() || !v.compose(u).is_zero() {
        return Err(Error::NonExact("sequence is not short exact".into()));
    }
    for w in 0..alg.vertex_count() {
        if l.dim_at(w) + n.dim_at(w) != m.dim_at(w) {
            return Err(Error::NonExact("dimensions do not add up".into()));
        }
    }
    let len = res_l.len().max(res_n.len());
    for r in [res_l, res_n] {
        if !r.terminated && r.len() < len {
            return Err(Error::ShapeMismatch("an unterminated side is shorter than the other".into()));
        }
    }

    // λ: P'_0 -> M with v λ = augmentation of N.
    let mut lambda_images = Vec::new();
    for (j, &w) in term(res_n, 0).vertices.iter().enumerate() {
        let target = n.component(&res_n.generator_images[j], w).to_vec();
        let y = solve_or_nonexact(v.at(w), &target, "lifting through the epimorphism")?;
        lambda_images.push(m.embed(w, &y));
    }
    let lambda = hom_from_generators(alg, &term(res_n, 0), m, &lambda_images);
    let u_aug = u.compose(&res_l.augmentation);

    let mut images: Vec<Vec<F::Elem>> = res_l.generator_images.iter().map(|x| u.apply(l, m, x)).collect();
    images.extend(lambda_images);
    let terms: Vec<ProjectiveSum> = (0..len).map(|i| term(res_l, i).concat(&term(res_n, i))).collect();
    let augmentation = hom_from_generators(alg, &terms[0], m, &images);

    let mut sigmas: Vec<LambdaMatrix<F>> = Vec::new();
    let mut differentials = Vec::new();
    for i in 1..len {
        let src = term(res_n, i);
        let tgt = term(res_l, i - 1);
        let layout = tgt.layout(alg);
        let dn = differential(alg, res_n, i - 1);
        let mut columns = Vec::new();
        for (j, &w) in src.vertices.iter().enumerate() {
            let col = dn.column(j);
            let (value, map) = if i == 1 {
                let p0 = term(res_n, 0);
                let comp = p0.column_to_component(alg, &p0.layout(alg), w, &col);
                let img = lambda.at(w).mul_vec(&comp);
                (img.iter().map(|x| fld.neg(x)).collect::<Vec<_>>(), u_aug.at(w).clone())
            } else {
                let img = sigmas[i - 2].apply(alg, &col);
                let p = term(res_l, i - 2);
                let comp = p.column_to_component(alg, &p.layout(alg), w, &img);
                let neg: Vec<F::Elem> = comp.iter().map(|x| fld.neg(x)).collect();
                let map = differential(alg, res_l, i - 2).to_hom(alg).at(w).clone();
                (neg, map)
            };
            if tgt.is_empty() {
                if value.iter().any(|x| !fld.is_zero(x)) {
                    return Err(Error::NonExact("connecting map has no target".into()));
                }
                columns.push(Vec::new());
                continue;
            }
            let y = solve_or_nonexact(&map, &value, "building a connecting map")?;
            columns.push(tgt.component_to_column(alg, &layout, w, &y));
        }
        let sigma = LambdaMatrix::from_columns(src.clone(), tgt, columns, alg);
        let dl = differential(alg, res_l, i - 1);
        let zero = LambdaMatrix::zero(alg, term(res_l, i), term(res_n, i - 1));
        differentials.push(LambdaMatrix::blocks(&dl, &sigma, &zero, &dn));
        sigmas.push(sigma);
    }
    let res = Resolution {
        module: m.clone(),
        terms,
        differentials,
        generator_images: images,
        augmentation,
        concrete: Vec::new(),
        syzygies: Vec::new(),
        terminated: res_l.terminated && res_n.terminated,
        budget_exhausted: false,
        tail: Tail::Horseshoe(Box::new(res_l.tail.clone()), Box::new(res_n.tail.clone())),
    };
    finish(alg, res)
}

fn hstack<F: Field>(alg: &BoundQuiverAlgebra<F>, a: &LambdaMatrix<F>, b: &LambdaMatrix<F>) -> LambdaMatrix<F> {
    let empty = ProjectiveSum::default();
    LambdaMatrix::blocks(a, b, &LambdaMatrix::zero(alg, a.source.clone(), empty.clone()), &LambdaMatrix::zero(alg, b.source.clone(), empty))
}

fn vstack<F: Field>(alg: &BoundQuiverAlgebra<F>, a: &LambdaMatrix<F>, c: &LambdaMatrix<F>) -> LambdaMatrix<F> {
    let empty = ProjectiveSum::default();
    LambdaMatrix::blocks(a, &LambdaMatrix::zero(alg, empty.clone(), a.target.clone()), c, &LambdaMatrix::zero(alg, empty, c.target.clone()))
}

/// The resolution with the acyclic pair `e_wΛ -id-> e_wΛ` added in degrees
/// `k + 1` and `k`.
pub fn padded<F: Field>(alg: &BoundQuiverAlgebra<F>, res: &Resolution<F>, k: usize, w: usize) -> Result<Resolution<F>> {
    if k + 1 > res.len() || (k + 1 == res.len() && !res.terminated) {
        return Err(Error::ShapeMismatch("padding position outside the computed resolution".into()));
    }
    let extra = ProjectiveSum::new(vec![w]);
    let mut terms = res.terms.clone();
    if k + 1 == terms.len() {
        terms.push(ProjectiveSum::default());
    }
    let old_k = terms[k].clone();
    let old_k1 = terms[k + 1].clone();
    terms[k] = old_k.concat(&extra);
    terms[k + 1] = old_k1.concat(&extra);

    let mut differentials = res.differentials.clone();
    if differentials.len() < terms.len() - 1 {
        differentials.push(LambdaMatrix::zero(alg, old_k1.clone(), old_k.clone()));
    }
    // d_{k+1} ⊕ id
    let dk1 = differentials[k].clone();
    differentials[k] = LambdaMatrix::blocks(
        &dk1,
        &LambdaMatrix::zero(alg, extra.clone(), old_k.clone()),
        &LambdaMatrix::zero(alg, old_k1.clone(), extra.clone()),
        &LambdaMatrix::identity(alg, &extra),
    );
    if k >= 1 {
        let dk = differentials[k - 1].clone();
        differentials[k - 1] = hstack(alg, &dk, &LambdaMatrix::zero(alg, extra.clone(), dk.target.clone()));
    }
    if k + 1 < differentials.len() {
        let dk2 = differentials[k + 1].clone();
        differentials[k + 1] = vstack(alg, &dk2, &LambdaMatrix::zero(alg, dk2.source.clone(), extra.clone()));
    }
    let mut images = res.generator_images.clone();
    if k == 0 {
        images.push(vec![alg.field().zero(); res.module.total_dim()]);
    }
    let augmentation = hom_from_generators(alg, &terms[0], &res.module, &images);
    let out = Resolution {
        module: res.module.clone(),
        terms,
        differentials,
        generator_images: images,
        augmentation,
        concrete: Vec::new(),
        syzygies: Vec::new(),
        terminated: res.terminated,
        budget_exhausted: false,
        tail: res.tail.clone(),
    };
    finish(alg, out)
}

/// `dim Ext^i(S_v, S_v)` for `i = 1..=depth`, read off the minimal resolution.
pub fn ext_self_dims<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize, depth: usize) -> Result<Vec<usize>> {
    let res = resolve_simple(alg, v, depth)?;
    let mult = res.multiplicities(v);
    Ok((1..=depth).map(|i| mult.get(i).copied().unwrap_or(0)).collect())
}

/// `dim Ext^1(S_i, S_j)` for all pairs: multiplicity of `j` in the first syzygy's cover.
pub fn ext1_matrix<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Result<Vec<Vec<usize>>> {
    (0..alg.vertex_count())
        .map(|i| {
            let res = resolve_simple(alg, i, 1)?;
            let m = res.terms.get(1).map(|t| t.multiplicities(alg.vertex_count())).unwrap_or_else(|| vec![0; alg.vertex_count()]);
            Ok(m)
        })
        .collect()
}

/// `Ω^i S_v ≅ Ω^j S_v` with both nonzero, witnessed by a verified isomorphism.
#[derive(Debug, Clone)]
pub struct PeriodicityCertificate<F: Field> {
    pub vertex: usize,
    pub i: usize,
    pub j: usize,
    pub iso: ModuleHom<F>,
}

/// Searches the syzygies of `S_v` up to `depth` for a repetition.
pub fn periodicity_certificate<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize, depth: usize) -> Result<Option<PeriodicityCertificate<F>>> {
    let res = resolve_simple(alg, v, depth)?;
    Ok(periodicity_in(alg, &res, v, depth))
}

/// Periodicity search on an already computed resolution of `S_v`.
pub fn periodicity_in<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    res: &Resolution<F>,
    v: usize,
    depth: usize,
) -> Option<PeriodicityCertificate<F>> {
    if res.terminated {
        return None;
    }
    let available = depth.min(res.syzygies.len());
    let dims = |i: usize| -> Vec<usize> {
        if i == 0 {
            res.module.dims().to_vec()
        } else {
            res.syzygies[i - 1].iter().map(Subspace::dim).collect()
        }
    };
    let all: Vec<Vec<usize>> = (0..=available).map(dims).collect();
    let len = all.iter().position(|d| d.iter().all(|&x| x == 0)).unwrap_or(all.len());
    let mut syz: Vec<Option<FdModule<F>>> = vec![None; len];
    for j in 1..len {
        for i in 0..j {
            if all[i] != all[j] || all[j].iter().sum::<usize>() > PERIOD_MODULE_LIMIT {
                continue;
            }
            for k in [i, j] {
                if syz[k].is_none() {
                    syz[k] = res.syzygy_module(alg, k);
                }
            }
            let (a, b) = (syz[i].as_ref().expect("built"), syz[j].as_ref().expect("built"));
            if let IsoOutcome::Found(iso) = iso_test(alg, a, b) {
                return Some(PeriodicityCertificate { vertex: v, i, j, iso });
            }
        }
    }
    None
}

impl<F: Field> Resolution<F> {
    /// Records a verified syzygy repetition `Ω^i ≅ Ω^j` in the tail.
    pub fn with_period(mut self, i: usize, j: usize) -> Self {
        if j <= self.terms.len() && !self.terminated {
            let window = self.terms[i..j].iter().map(|t| t.vertices.clone()).collect();
            self.tail = Tail::Periodic { start: i, period: j - i, window };
        }
        self
    }
}

/// Convenience: the element of `Λ` acting on `e_vΛ` as an endomorphism matrix.
pub fn left_multiplication<F: Field>(alg: &BoundQuiverAlgebra<F>, v: usize, x: AlgebraElement<F>) -> Result<LambdaMatrix<F>> {
    LambdaMatrix::scalar(alg, v, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn verts(res: &Resolution<crate::field::Rationals>) -> Vec<Vec<usize>> {
        res.terms.iter().map(|t| t.vertices.clone()).collect()
    }

    #[test]
    fn fx3_simple_resolutions() {
        let a = fixtures::fx3_q();
        let s4 = resolve_simple(&a, 3, 5).unwrap();
        assert_eq!(verts(&s4), vec![vec![3], vec![2], vec![0], vec![1]]);
        assert_eq!(s4.projective_dimension(), Some(3));
        let s3 = resolve_simple(&a, 2, 5).unwrap();
        assert_eq!(verts(&s3), vec![vec![2], vec![0], vec![1]]);
        let s1 = resolve_simple(&a, 0, 6).unwrap();
        assert_eq!(verts(&s1)[..3], [vec![0], vec![1, 3], vec![2]]);
        assert_eq!(s1.projective_dimension(), Some(4));
        let s2 = resolve_simple(&a, 1, 6).unwrap();
        assert_eq!(s2.projective_dimension(), Some(3));
        for r in [&s1, &s2, &s3, &s4] {
            r.verify_exact(&a).unwrap();
            assert!(r.is_minimal(&a));
        }
    }

    #[test]
    fn loop_algebra_never_terminates() {
        let a = fixtures::fx2_q();
        let r = resolve_simple(&a, 0, 4).unwrap();
        assert!(!r.terminated);
        assert_eq!(r.len(), 5);
        assert_eq!(ext_self_dims(&a, 0, 10).unwrap(), vec![1; 10]);
        let cert = periodicity_certificate(&a, 0, 4).unwrap().unwrap();
        assert_eq!((cert.i, cert.j), (0, 1));
    }

    #[test]
    fn fx4_period_two() {
        let a = fixtures::fx4_q();
        // Ω²S₁ is the socle of P₂, which is S₂; the first repeat is Ω⁴S₁ ≅ S₁.
        let cert = periodicity_certificate(&a, 0, 6).unwrap().unwrap();
        assert_eq!((cert.i, cert.j), (0, 4));
        let r = resolve_simple(&a, 0, 2).unwrap();
        let s2 = FdModule::simple(&a, 1);
        assert!(matches!(iso_test(&a, &r.syzygy_module(&a, 2).unwrap(), &s2), IsoOutcome::Found(_)));
        assert!(periodicity_certificate(&fixtures::fx1_q(), 0, 4).unwrap().is_none());
    }

    #[test]
    fn ext1_counts_arrows() {
        for (_, a) in fixtures::all(&crate::field::Rationals) {
            let ext = ext1_matrix(&a).unwrap();
            let q = a.quiver();
            for i in 0..q.vertex_count() {
                for j in 0..q.vertex_count() {
                    let arrows = q.arrows().iter().filter(|x| x.source == i && x.target == j).count();
                    assert_eq!(ext[i][j], arrows);
                }
            }
        }
    }

    #[test]
    fn lifts_commute() {
        let a = fixtures::fx3_q();
        let s1 = FdModule::simple(&a, 0);
        let r = minimal_resolution(&a, &s1, 6).unwrap();
        let id = ModuleHom::identity(&s1);
        let lifts = lift_endomorphism(&a, &id, &r, r.len(), None).unwrap();
        for (i, phi) in lifts.iter().enumerate().skip(1) {
            let lhs = r.differentials[i - 1].compose(&a, phi);
            let rhs = lifts[i - 1].compose(&a, &r.differentials[i - 1]);
            assert!(lhs == rhs);
        }
    }

    #[test]
    fn padding_keeps_exactness() {
        let a = fixtures::fx3_q();
        let r = resolve_simple(&a, 3, 5).unwrap();
        for k in 0..r.len() {
            let p = padded(&a, &r, k, 0).unwrap();
            assert_eq!(p.terms[k].len(), r.terms[k].len() + 1);
            assert!(p.terminated);
        }
    }

    #[test]
    fn horseshoe_of_radical_sequence() {
        let a = fixtures::fx3_q();
        let p1 = ProjectiveSum::new(vec![0]).module(&a);
        let rad = p1.radical(&a);
        let (l, u) = p1.submodule(&a, &rad);
        let (n, v) = p1.quotient(&a, &rad);
        let rl = minimal_resolution(&a, &l, 6).unwrap();
        let rn = minimal_resolution(&a, &n, 6).unwrap();
        let rm = horseshoe(&a, &p1, &u, &v, &rl, &rn).unwrap();
        assert!(rm.terminated);
        for (i, t) in rm.terms.iter().enumerate() {
            assert_eq!(t.len(), term(&rl, i).len() + term(&rn, i).len());
        }
    }
}
