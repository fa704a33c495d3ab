//! Seeded random algebras, modules and maps for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra, DEFAULT_CAP};
use crate::error::Result;
use crate::field::Field;
use crate::lambda::{LambdaMatrix, ProjectiveSum};
use crate::linalg::Subspace;
use crate::module::{combine_homs, hom_space, FdModule, ModuleHom};
use crate::quiver::{PathVector, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusOptions {
    pub max_vertices: usize,
    pub max_arrows: usize,
    /// Largest algebra dimension accepted; larger draws are redrawn.
    pub max_dim: usize,
    pub monomial: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { max_vertices: 5, max_arrows: 8, max_dim: 40, monomial: false }
    }
}

/// A random presentation: all paths of length `truncation` plus a few random
/// combinations of shorter paths with common endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomAlgebra {
    pub seed: u64,
    /// `None` for the rationals.
    pub prime: Option<u64>,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub truncation: usize,
    pub relations: Vec<Vec<(i64, Vec<usize>)>>,
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn nonzero_coefficient(rng: &mut ChaCha8Rng) -> i64 {
    *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")
}

impl RandomAlgebra {
    pub fn generate(seed: u64, opts: CorpusOptions) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            if let Some(a) = Self::draw(seed, &mut rng, opts) {
                return a;
            }
        }
    }

    fn draw(seed: u64, rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Option<Self> {
        let n = rng.gen_range(1..=opts.max_vertices);
        let m = rng.gen_range(1..=opts.max_arrows);
        let arrows: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let truncation = rng.gen_range(2..=4);
        let prime = if rng.gen_bool(0.5) { None } else { Some(*PRIMES.choose(rng).expect("nonempty")) };
        let mut draft = RandomAlgebra { seed, prime, vertices: n, arrows, truncation, relations: Vec::new() };
        let q = draft.quiver();
        let counts = q.path_counts(truncation);
        if counts[..truncation].iter().sum::<usize>() > opts.max_dim {
            return None;
        }
        for p in q.paths_of_length(truncation) {
            draft.relations.push(vec![(1, p.arrows().to_vec())]);
        }
        let short: Vec<_> = (2..truncation).flat_map(|l| q.paths_of_length(l)).collect();
        if !short.is_empty() {
            for _ in 0..rng.gen_range(0..=3) {
                let p = short.choose(rng).expect("nonempty");
                let mut rel = vec![(nonzero_coefficient(rng), p.arrows().to_vec())];
                if !opts.monomial {
                    let peers: Vec<_> = q.paths_between(p.source(), p.target(), 2, truncation - 1).into_iter().filter(|x| x != p).collect();
                    for _ in 0..rng.gen_range(0..=2) {
                        if let Some(x) = peers.choose(rng) {
                            if rel.iter().all(|(_, w)| w != x.arrows()) {
                                rel.push((nonzero_coefficient(rng), x.arrows().to_vec()));
                            }
                        }
                    }
                }
                draft.relations.push(rel);
            }
        }
        Some(draft)
    }

    pub fn quiver(&self) -> Quiver {
        let vertices: Vec<String> = (1..=self.vertices).map(|v| v.to_string()).collect();
        let arrows = self.arrows.iter().enumerate().map(|(i, &(s, t))| (format!("a{i}"), (s + 1).to_string(), (t + 1).to_string()));
        Quiver::new(vertices, arrows).expect("generated quiver is valid")
    }

    pub fn build<F: Field>(&self, f: &F) -> Result<BoundQuiverAlgebra<F>> {
        let q = self.quiver();
        let rels = self
            .relations
            .iter()
            .map(|terms| {
                let terms = terms.iter().map(|(c, w)| Ok((q.path(w)?, f.from_i64(*c)))).collect::<Result<Vec<_>>>()?;
                Ok(PathVector::from_terms(f, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        BoundQuiverAlgebra::build(f, q, rels, DEFAULT_CAP)
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.len() == 1)
    }
}

pub fn coefficient<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    f.from_i64(rng.gen_range(-3..=3))
}

/// Random element supported on the given basis indices.
pub fn random_element_on<F: Field>(alg: &BoundQuiverAlgebra<F>, support: &[usize], rng: &mut ChaCha8Rng) -> AlgebraElement<F> {
    let mut x = alg.zero();
    for &i in support {
        x.coords[i] = coefficient(alg.field(), rng);
    }
    x
}

pub fn random_radical_element<F: Field>(alg: &BoundQuiverAlgebra<F>, rng: &mut ChaCha8Rng) -> AlgebraElement<F> {
    random_element_on(alg, &alg.radical_basis(), rng)
}

pub fn random_projective(alg_vertices: usize, max_summands: usize, rng: &mut ChaCha8Rng) -> ProjectiveSum {
    let r = rng.gen_range(1..=max_summands);
    ProjectiveSum::new((0..r).map(|_| rng.gen_range(0..alg_vertices)).collect())
}

/// Random map between projective sums with entries in the right Peirce components.
pub fn random_lambda_matrix<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    source: &ProjectiveSum,
    target: &ProjectiveSum,
    rng: &mut ChaCha8Rng,
) -> LambdaMatrix<F> {
    let mut m = LambdaMatrix::zero(alg, source.clone(), target.clone());
    for (i, &t) in target.vertices.iter().enumerate() {
        for (j, &s) in source.vertices.iter().enumerate() {
            m.set_entry(i, j, random_element_on(alg, &alg.peirce(t, s), rng));
        }
    }
    m
}

/// A random quotient of a random projective sum, nonzero.
pub fn random_module<F: Field>(alg: &BoundQuiverAlgebra<F>, max_summands: usize, rng: &mut ChaCha8Rng) -> FdModule<F> {
    let p = random_projective(alg.vertex_count(), max_summands, rng);
    let pm = p.module(alg);
    let gens: Vec<Vec<F::Elem>> = (0..rng.gen_range(0..=2))
        .map(|_| {
            let w = rng.gen_range(0..alg.vertex_count());
            let comp: Vec<F::Elem> = (0..pm.dim_at(w)).map(|_| coefficient(alg.field(), rng)).collect();
            pm.embed(w, &comp)
        })
        .collect();
    let mut sub = pm.generated_subspaces(alg, &gens);
    if sub.iter().zip(pm.dims()).all(|(s, &d)| s.dim() == d) {
        sub = pm.dims().iter().map(|&d| Subspace::zero(alg.field(), d)).collect();
    }
    pm.quotient(alg, &sub).0
}

pub fn random_endomorphism<F: Field>(alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>, rng: &mut ChaCha8Rng) -> ModuleHom<F> {
    let basis = hom_space(alg, m, m);
    let coeffs: Vec<F::Elem> = basis.iter().map(|_| coefficient(alg.field(), rng)).collect();
    combine_homs(&basis, &coeffs, m, m)
}

/// A submodule stable under `phi`: generated by the `phi`-orbit of a random vector.
pub fn random_stable_submodule<F: Field>(
    alg: &BoundQuiverAlgebra<F>,
    m: &FdModule<F>,
    phi: &ModuleHom<F>,
    rng: &mut ChaCha8Rng,
) -> Vec<Subspace<F>> {
    let w = rng.gen_range(0..alg.vertex_count());
    let comp: Vec<F::Elem> = (0..m.dim_at(w)).map(|_| coefficient(alg.field(), rng)).collect();
    let mut x = m.embed(w, &comp);
    let mut gens = Vec::new();
    for _ in 0..=m.total_dim() {
        gens.push(x.clone());
        x = phi.apply(m, m, &x);
    }
    m.generated_subspaces(alg, &gens)
}
