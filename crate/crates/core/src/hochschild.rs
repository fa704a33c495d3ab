//! `HH₀ = Λ/[Λ,Λ]`, the Hattori–Stallings trace and the e-trace of module
//! endomorphisms along projective resolutions.

use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda::{LambdaMatrix, ProjectiveSum};
use crate::linalg::{EchelonBuilder, Subspace};
use crate::module::{right_ideal, FdModule, ModuleHom};
use crate::quotient::{lambda_e, Idempotent, QuotientAlgebra};
use crate::resolution::{horseshoe, lift_endomorphism, minimal_resolution, resolve_simple, Resolution};

/// Span of `b_i b_j - b_j b_i` over basis paths.
pub fn commutator_subspace<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Subspace<F> {
    let mut b = EchelonBuilder::new(alg.field(), alg.dim());
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            let x = alg.from_sparse(alg.basis_product(i, j));
            let y = alg.from_sparse(alg.basis_product(j, i));
            b.insert(alg.sub(&x, &y).coords);
        }
    }
    b.into_subspace()
}

/// A class in `HH₀`, as coordinates on the non-pivot basis paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HH0Class<F: Field> {
    pub coords: Vec<F::Elem>,
}

impl<F: Field> HH0Class<F> {
    pub fn is_zero(&self, f: &F) -> bool {
        self.coords.iter().all(|x| f.is_zero(x))
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        HH0Class { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        HH0Class { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self, f: &F) -> Self {
        HH0Class { coords: self.coords.iter().map(|a| f.neg(a)).collect() }
    }
}

#[derive(Debug, Clone)]
pub struct HH0Space<F: Field> {
    commutator: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Field> HH0Space<F> {
    pub fn new(alg: &BoundQuiverAlgebra<F>) -> Self {
        let commutator = commutator_subspace(alg);
        let complement = commutator.complement_indices();
        HH0Space { commutator, complement }
    }

    pub fn commutator(&self) -> &Subspace<F> {
        &self.commutator
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Basis indices whose classes form a basis of `HH₀`.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn class_of(&self, x: &AlgebraElement<F>) -> HH0Class<F> {
        let r = self.commutator.reduce(&x.coords);
        HH0Class { coords: self.complement.iter().map(|&i| r[i].clone()).collect() }
    }

    pub fn zero(&self, f: &F) -> HH0Class<F> {
        HH0Class { coords: vec![f.zero(); self.dim()] }
    }

    /// The canonical representative of a class.
    pub fn representative(&self, alg: &BoundQuiverAlgebra<F>, c: &HH0Class<F>) -> AlgebraElement<F> {
        let mut x = alg.zero();
        for (&i, v) in self.complement.iter().zip(&c.coords) {
            x.coords[i] = v.clone();
        }
        x
    }

    pub fn contains_commutator(&self, x: &AlgebraElement<F>) -> bool {
        self.commutator.contains(&x.coords)
    }
}

pub fn hh0<F: Field>(alg: &BoundQuiverAlgebra<F>) -> HH0Space<F> {
    HH0Space::new(alg)
}

/// `J ⊆ [Λ,Λ]`.
pub fn is_radical_trivial<F: Field>(alg: &BoundQuiverAlgebra<F>) -> bool {
    let c = commutator_subspace(alg);
    alg.radical_basis().into_iter().all(|i| c.contains(&alg.basis_element(i).coords))
}

/// Class of the sum of the diagonal entries.
pub fn hs_trace<F: Field>(alg: &BoundQuiverAlgebra<F>, space: &HH0Space<F>, phi: &LambdaMatrix<F>) -> HH0Class<F> {
    space.class_of(&phi.diagonal_sum(alg))
}

/// `H_e : HH₀(Λ) -> HH₀(Λ_e)`.
pub fn he_map<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    quotient: &QuotientAlgebra<F>,
    parent: &HH0Space<F>,
    child: &HH0Space<F>,
    c: &HH0Class<F>,
) -> HH0Class<F> {
    child.class_of(&quotient.project(&parent.representative(alg, c)))
}

/// Left multiplication by `a` on `⊕ e_{v_i} Λ`: entry `(i, j)` is `ε_{v_i} a ε_{v_j}`.
pub fn left_multiplication<F: Field>(alg: &BoundQuiverAlgebra<F>, p: &ProjectiveSum, a: &AlgebraElement<F>) -> LambdaMatrix<F> {
    let mut m = LambdaMatrix::zero(alg, p.clone(), p.clone());
    for (i, &s) in p.vertices.iter().enumerate() {
        for (j, &t) in p.vertices.iter().enumerate() {
            m.set_entry(i, j, alg.corner(s, t, a));
        }
    }
    m
}

/// Upper bound on the injective dimension of `S_e`: the largest projective
/// dimension of `S_v`, `v ∈ e`, over the opposite algebra, if all terminate
/// within `depth`.
pub fn injective_dimension_bound<F: Field>(alg: &BoundQuiverAlgebra<F>, e: &Idempotent, depth: usize) -> Result<Option<usize>> {
    let op = alg.opposite()?;
    let mut bound = 0;
    for &v in e.vertices() {
        match resolve_simple(&op, v, depth)?.projective_dimension() {
            Some(d) => bound = bound.max(d),
            None => return Ok(None),
        }
    }
    Ok(Some(bound))
}

/// Everything needed to take e-traces over a fixed algebra and idempotent.
#[derive(Debug, Clone)]
pub struct ETraceContext<F: Field> {
    pub idempotent: Idempotent,
    pub quotient: QuotientAlgebra<F>,
    pub hh0: HH0Space<F>,
    pub hh0_e: HH0Space<F>,
    /// Bound on `id S_e` when the opposite-side resolutions terminated.
    pub id_bound: Option<usize>,
    pub depth_cap: usize,
}

impl<F: Field> ETraceContext<F> {
    pub fn new(alg: &BoundQuiverAlgebra<F>, e: &Idempotent, depth_cap: usize) -> Result<Self> {
        let quotient = lambda_e(alg, e)?;
        let hh0_e = HH0Space::new(&quotient.algebra);
        Ok(ETraceContext {
            idempotent: e.clone(),
            hh0: HH0Space::new(alg),
            hh0_e,
            id_bound: injective_dimension_bound(alg, e, depth_cap)?,
            quotient,
            depth_cap,
        })
    }

    pub fn field<'a>(&'a self, alg: &'a BoundQuiverAlgebra<F>) -> &'a F {
        alg.field()
    }

    pub fn zero(&self, alg: &BoundQuiverAlgebra<F>) -> HH0Class<F> {
        self.hh0_e.zero(alg.field())
    }

    /// Class in `HH₀(Λ_e)` of the image of an element of `Λ`.
    pub fn class_of(&self, x: &AlgebraElement<F>) -> HH0Class<F> {
        self.hh0_e.class_of(&self.quotient.project(x))
    }

    pub fn he(&self, alg: &BoundQuiverAlgebra<F>, c: &HH0Class<F>) -> HH0Class<F> {
        he_map(alg, &self.quotient, &self.hh0, &self.hh0_e, c)
    }

    /// `tr_e(φ) = H_e(tr φ)` for an endomorphism of a projective.
    pub fn trace_projective(&self, alg: &BoundQuiverAlgebra<F>, phi: &LambdaMatrix<F>) -> HH0Class<F> {
        self.he(alg, &hs_trace(alg, &self.hh0, phi))
    }

    /// The resolution depth that guarantees a horizon, or `HorizonNotReached`.
    pub fn required_depth(&self) -> Result<usize> {
        match self.id_bound {
            Some(d) if d <= self.depth_cap => Ok(d),
            _ => Err(Error::HorizonNotReached { depth: self.depth_cap }),
        }
    }

    /// Minimal resolution long enough to reach its e-bounded horizon.
    pub fn resolve(&self, alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>) -> Result<Resolution<F>> {
        let d = self.required_depth()?;
        minimal_resolution(alg, m, d)
    }

    /// Alternating sum of e-traces of lifts of `phi` along `res`, up to its horizon.
    pub fn trace_along(
        &self,
        alg: &BoundQuiverAlgebra<F>,
        res: &Resolution<F>,
        phi: &ModuleHom<F>,
        perturb: Option<&mut ChaCha8Rng>,
    ) -> Result<HH0Class<F>> {
        let f = alg.field();
        let m = res.horizon(&self.idempotent, self.id_bound).ok_or(Error::HorizonNotReached { depth: self.depth_cap })?;
        let lifts = lift_endomorphism(alg, phi, res, m, perturb)?;
        let mut acc = self.zero(alg);
        for (i, l) in lifts.iter().enumerate() {
            let t = self.trace_projective(alg, l);
            acc = if i % 2 == 0 { acc.add(f, &t) } else { acc.sub(f, &t) };
        }
        Ok(acc)
    }

    /// `tr_e(φ)` for an endomorphism of a finite-dimensional module.
    pub fn trace_module(&self, alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>, phi: &ModuleHom<F>) -> Result<HH0Class<F>> {
        let res = self.resolve(alg, m)?;
        self.trace_along(alg, &res, phi, None)
    }
}

/// `tr_e(φ)` for a module endomorphism, resolving up to `depth_cap`.
pub fn e_trace_module<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    e: &Idempotent,
    m: &FdModule<F>,
    phi: &ModuleHom<F>,
    depth_cap: usize,
) -> Result<HH0Class<F>> {
    ETraceContext::new(alg, e, depth_cap)?.trace_module(alg, m, phi)
}

pub fn e_trace_projective<F: Field>(alg: &BoundQuiverAlgebra<F>, e: &Idempotent, phi: &LambdaMatrix<F>) -> Result<HH0Class<F>> {
    let quotient = lambda_e(alg, e)?;
    let child = HH0Space::new(&quotient.algebra);
    Ok(he_map(alg, &quotient, &HH0Space::new(alg), &child, &hs_trace(alg, &HH0Space::new(alg), phi)))
}

/// One step `0 -> M_{i+1} -> M_i -> M_i/M_{i+1} -> 0` of the certificate.
#[derive(Debug, Clone)]
pub struct FiltrationStep<F: Field> {
    pub index: usize,
    pub dims: Vec<usize>,
    /// `tr_e(φ_i)` along the minimal resolution of `M_i`.
    pub trace: HH0Class<F>,
    /// `tr_e(φ_i)` along the horseshoe resolution of the step.
    pub trace_horseshoe: HH0Class<F>,
}

/// Evidence that `ā ∈ [Λ_e, Λ_e]` obtained through the filtration `M_i = aⁱΛ`.
#[derive(Debug, Clone)]
pub struct FiltrationCertificate<F: Field> {
    /// Least `r` with `a^r = 0`.
    pub nilpotency: usize,
    pub steps: Vec<FiltrationStep<F>>,
    /// `tr_e` of left multiplication by `a` on `Λ_Λ`, i.e. `H_e` of the class of `a`.
    pub projective_trace: HH0Class<F>,
    /// Direct check that the image of `a` lies in `[Λ_e, Λ_e]`.
    pub in_commutator: bool,
}

impl<F: Field> FiltrationCertificate<F> {
    /// Every trace in the chain agrees, ends in zero, and matches the direct check.
    pub fn holds(&self, f: &F) -> bool {
        let chain = self.steps.iter().all(|s| s.trace == s.trace_horseshoe && s.trace == self.projective_trace);
        chain && self.projective_trace.is_zero(f) && self.in_commutator
    }
}

/// Runs the filtration argument for `a ∈ J`.
pub fn filtration_certificate<F: Field>(
    ctx: &ETraceContext<F>,
    alg: &BoundQuiverAlgebra<F>,
    a: &AlgebraElement<F>,
) -> Result<FiltrationCertificate<F>> {
    if !alg.in_radical(a) {
        return Err(Error::NotInRadical);
    }
    let f = alg.field();
    let mut r = 1;
    let mut power = a.clone();
    while !alg.is_zero(&power) {
        power = alg.mul(&power, a);
        r += 1;
    }
    let regular = ProjectiveSum::regular(alg);
    let lmul = left_multiplication(alg, &regular, a);
    let projective_trace = ctx.trace_projective(alg, &lmul);
    let lhom = lmul.to_hom(alg);
    let big = regular.module(alg);

    // M_i as closed subspaces of Λ_Λ, for i = 0..=r.
    let mut subs = Vec::with_capacity(r + 1);
    let mut p = alg.one();
    for _ in 0..=r {
        subs.push(big.generated_subspaces(alg, &[regular.element_to_flat(alg, &p)]));
        p = alg.mul(a, &p);
    }
    let mut steps = Vec::new();
    for i in 0..r {
        let (mi, _) = big.submodule(alg, &subs[i]);
        let phi = lhom.restrict(&subs[i], &subs[i])?;
        let trace = ctx.trace_module(alg, &mi, &phi)?;

        // M_{i+1} inside M_i, in M_i's coordinates.
        let inner: Vec<Subspace<F>> = (0..alg.vertex_count())
            .map(|w| {
                let vecs = subs[i + 1][w].basis().iter().map(|x| subs[i][w].membership(x).expect("M_{i+1} ⊆ M_i"));
                Subspace::from_vectors(f, subs[i][w].dim(), vecs)
            })
            .collect();
        let (l, u) = mi.submodule(alg, &inner);
        let (n, v) = mi.quotient(alg, &inner);
        let phi_n = phi.induced_on_quotient(&inner, &inner);
        if !phi_n.is_zero() {
            return Err(Error::InvalidHom("left multiplication does not vanish on the quotient".into()));
        }
        let d = ctx.required_depth()?;
        let res_l = minimal_resolution(alg, &l, d)?;
        let res_n = minimal_resolution(alg, &n, d)?;
        let res_m = horseshoe(alg, &mi, &u, &v, &res_l, &res_n)?;
        let trace_horseshoe = ctx.trace_along(alg, &res_m, &phi, None)?;
        let phi_l = phi.restrict(&inner, &inner)?;
        let tl = ctx.trace_along(alg, &res_l, &phi_l, None)?;
        let tn = ctx.trace_along(alg, &res_n, &phi_n, None)?;
        if tl.add(f, &tn) != trace_horseshoe {
            return Err(Error::NonExact(format!("traces are not additive at step {i}")));
        }
        steps.push(FiltrationStep { index: i, dims: mi.dims().to_vec(), trace, trace_horseshoe });
    }
    for w in steps.windows(2) {
        let (s, t) = (&w[0], &w[1]);
        if s.trace != t.trace {
            return Err(Error::NonExact(format!("trace changes between steps {} and {}", s.index, t.index)));
        }
    }
    let in_commutator = ctx.hh0_e.contains_commutator(&ctx.quotient.project(a));
    Ok(FiltrationCertificate { nilpotency: r, steps, projective_trace, in_commutator })
}

/// The right ideal `aΛ` with left multiplication by `b`, when it preserves it.
pub fn left_multiplication_on_ideal<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    a: &AlgebraElement<F>,
    b: &AlgebraElement<F>,
) -> Result<(FdModule<F>, ModuleHom<F>)> {
    let regular = ProjectiveSum::regular(alg);
    let big = regular.module(alg);
    let sub = big.generated_subspaces(alg, &[regular.element_to_flat(alg, a)]);
    let phi = left_multiplication(alg, &regular, b).to_hom(alg).restrict(&sub, &sub)?;
    let (m, _) = right_ideal(alg, std::slice::from_ref(a));
    Ok((m, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::fixtures;

    fn path(a: &BoundQuiverAlgebra<Rationals>, labels: &[&str]) -> AlgebraElement<Rationals> {
        a.reduce_path(&a.quiver().path_from_labels(labels).unwrap())
    }

    #[test]
    fn commutators_and_hh0() {
        assert!(commutator_subspace(&fixtures::fx2_q()).is_zero());
        let fx1 = fixtures::fx1_q();
        let c = commutator_subspace(&fx1);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&path(&fx1, &["alpha"]).coords));
        let fx3 = fixtures::fx3_q();
        assert_eq!(commutator_subspace(&fx3).dim(), 7);
        assert_eq!(hh0(&fx3).dim(), 4);
        assert_eq!(hh0(&fixtures::fx2_q()).dim(), 2);
        assert_eq!(hh0(&fixtures::fx5_q()).dim(), 2);
        assert!(is_radical_trivial(&fx3));
        assert!(!is_radical_trivial(&fixtures::fx2_q()));
        let qe = lambda_e(&fx3, &Idempotent::new([0, 1, 2])).unwrap();
        assert!(is_radical_trivial(&qe.algebra));
        assert_eq!(hh0(&qe.algebra).dim(), 3);
    }

    #[test]
    fn he_kills_paths_through_removed_vertices() {
        let a = fixtures::fx3_q();
        let ctx = ETraceContext::new(&a, &Idempotent::new([0, 1, 2]), 8).unwrap();
        let ab = path(&a, &["alpha", "beta"]);
        assert!(ctx.class_of(&ab).is_zero(&Rationals));
        assert!(ctx.class_of(&a.vertex_element(3)).is_zero(&Rationals));
        assert!(!ctx.class_of(&a.vertex_element(0)).is_zero(&Rationals));
        let phi = LambdaMatrix::scalar(&a, 0, a.corner(0, 0, &ab)).unwrap();
        assert!(ctx.trace_projective(&a, &phi).is_zero(&Rationals));
    }

    #[test]
    fn e_trace_of_identity_on_s4() {
        let a = fixtures::fx3_q();
        let e = Idempotent::new([0, 1, 2]);
        let ctx = ETraceContext::new(&a, &e, 8).unwrap();
        assert_eq!(ctx.id_bound, Some(4));
        let s4 = FdModule::simple(&a, 3);
        let t = ctx.trace_module(&a, &s4, &ModuleHom::identity(&s4)).unwrap();
        // P₄ ← P₃ ← P₁ ← P₂: tr_e = 0 - ε̄₃ + ε̄₁ - ε̄₂.
        let b = &ctx.quotient.algebra;
        let expected = b.sub(&b.sub(&b.vertex_element(0), &b.vertex_element(2)), &b.vertex_element(1));
        assert_eq!(t, ctx.hh0_e.class_of(&expected));
    }

    #[test]
    fn loop_has_no_horizon() {
        let a = fixtures::fx2_q();
        let ctx = ETraceContext::new(&a, &Idempotent::new([0]), 6).unwrap();
        assert_eq!(ctx.id_bound, None);
        let alpha = path(&a, &["alpha"]);
        assert_eq!(filtration_certificate(&ctx, &a, &alpha).unwrap_err(), Error::HorizonNotReached { depth: 6 });
    }

    #[test]
    fn fx3_filtration() {
        let a = fixtures::fx3_q();
        let ctx = ETraceContext::new(&a, &Idempotent::new([0, 1, 2]), 8).unwrap();
        for labels in [&["alpha"][..], &["alpha", "beta"], &["epsilon"], &["gamma"]] {
            let cert = filtration_certificate(&ctx, &a, &path(&a, labels)).unwrap();
            assert!(cert.holds(&Rationals));
        }
        let cert = filtration_certificate(&ctx, &a, &a.zero()).unwrap();
        assert_eq!(cert.nilpotency, 1);
        assert!(cert.holds(&Rationals));
    }
}
