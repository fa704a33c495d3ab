//! Finite-dimensional right modules stored vertex by vertex.
//!
//! An arrow `a: v -> w` acts by a `dims[w] x dims[v]` matrix on column
//! vectors, so a path `a₁…a_k` acts by `A_{a_k} ⋯ A_{a₁}`. Elements are flat
//! vectors: the component at vertex `v` occupies `offset(v)..offset(v)+dims[v]`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, EchelonBuilder, Matrix, Subspace};
use crate::quiver::Path;

#[derive(Clone, PartialEq)]
pub struct FdModule<F: Field> {
    field: F,
    dims: Vec<usize>,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for FdModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FdModule(dims {:?})", self.dims)
    }
}

impl<F: Field> FdModule<F> {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(alg: &BoundQuiverAlgebra<F>, dims: Vec<usize>, actions: Vec<Matrix<F>>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || actions.len() != q.arrow_count() {
            return Err(Error::InvalidModule("wrong number of vertices or arrows".into()));
        }
        for (a, m) in actions.iter().enumerate() {
            let arr = q.arrow(a);
            if m.rows() != dims[arr.target] || m.cols() != dims[arr.source] {
                return Err(Error::InvalidModule(format!("action of `{}` has the wrong shape", arr.label)));
            }
        }
        let module = FdModule { field: alg.field().clone(), dims, actions };
        for (i, rho) in alg.relations().iter().enumerate() {
            let (s, t) = rho.endpoints().expect("validated relation");
            let mut acc = Matrix::zeros(alg.field(), module.dims[t], module.dims[s]);
            for (p, c) in rho.terms() {
                acc = acc.add(&module.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {i} does not act as zero")));
            }
        }
        Ok(module)
    }

    pub(crate) fn from_parts_unchecked(field: &F, dims: Vec<usize>, actions: Vec<Matrix<F>>) -> Self {
        FdModule { field: field.clone(), dims, actions }
    }

    pub fn zero(alg: &BoundQuiverAlgebra<F>) -> Self {
        let q = alg.quiver();
        let actions = q.arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        FdModule { field: alg.field().clone(), dims: vec![0; q.vertex_count()], actions }
    }

    /// The simple module at `v`.
    pub fn simple(alg: &BoundQuiverAlgebra<F>, v: usize) -> Self {
        let q = alg.quiver();
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let actions = q.arrows().iter().map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source])).collect();
        FdModule { field: alg.field().clone(), dims, actions }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn action(&self, a: usize) -> &Matrix<F> {
        &self.actions[a]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn component<'a>(&self, x: &'a [F::Elem], v: usize) -> &'a [F::Elem] {
        let o = self.offset(v);
        &x[o..o + self.dims[v]]
    }

    /// Flat vector supported at `v` with the given component.
    pub fn embed(&self, v: usize, comp: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = vec![self.field.zero(); self.total_dim()];
        let o = self.offset(v);
        x[o..o + comp.len()].clone_from_slice(comp);
        x
    }

    /// Matrix of the action of a path, from its source to its target component.
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(&self.field, self.dims[p.source()]);
        for &a in p.arrows() {
            m = self.actions[a].mul(&m);
        }
        m
    }

    /// `x · y` for a flat vector `x` and an algebra element `y`.
    pub fn act(&self, alg: &BoundQuiverAlgebra<F>, x: &[F::Elem], y: &AlgebraElement<F>) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.total_dim()];
        for (i, c) in y.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let p = &alg.basis()[i];
            let comp = self.component(x, p.source());
            if comp.iter().all(|z| f.is_zero(z)) {
                continue;
            }
            let img = self.path_matrix(p).mul_vec(comp);
            let o = self.offset(p.target());
            for (k, z) in img.iter().enumerate() {
                f.add_mul_assign(&mut out[o + k], c, z);
            }
        }
        out
    }

    /// Radical `MJ` at each vertex: the sum of images of incoming arrows.
    pub fn radical(&self, alg: &BoundQuiverAlgebra<F>) -> Vec<Subspace<F>> {
        let q = alg.quiver();
        (0..self.dims.len())
            .map(|w| {
                let mut b = EchelonBuilder::new(&self.field, self.dims[w]);
                for a in q.arrows_into(w) {
                    let m = &self.actions[a];
                    for c in 0..m.cols() {
                        b.insert(m.column(c));
                    }
                }
                b.into_subspace()
            })
            .collect()
    }

    /// Multiplicities of the simples in `M/MJ`.
    pub fn top(&self, alg: &BoundQuiverAlgebra<F>) -> Vec<usize> {
        self.radical(alg).iter().zip(&self.dims).map(|(r, d)| d - r.dim()).collect()
    }

    /// Closure of a set of flat vectors under the action, as per-vertex subspaces.
    /// Isomorphism invariants: rank of every arrow action, then the top.
    pub fn invariants(&self, alg: &BoundQuiverAlgebra<F>) -> (Vec<usize>, Vec<usize>) {
        (self.actions.iter().map(Matrix::rank).collect(), self.top(alg))
    }

    pub fn generated_subspaces(&self, alg: &BoundQuiverAlgebra<F>, gens: &[Vec<F::Elem>]) -> Vec<Subspace<F>> {
        let q = alg.quiver();
        let mut builders: Vec<EchelonBuilder<F>> = self.dims.iter().map(|&d| EchelonBuilder::new(&self.field, d)).collect();
        let mut queue: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for g in gens {
            for v in 0..self.dims.len() {
                let c = self.component(g, v).to_vec();
                if builders[v].insert(c.clone()) {
                    queue.push((v, c));
                }
            }
        }
        while let Some((v, c)) = queue.pop() {
            for a in q.arrows_from(v) {
                let w = q.arrow(a).target;
                let img = self.actions[a].mul_vec(&c);
                if builders[w].insert(img.clone()) {
                    queue.push((w, img));
                }
            }
        }
        builders.into_iter().map(EchelonBuilder::into_subspace).collect()
    }

    /// True when the per-vertex subspaces are closed under every arrow.
    pub fn is_closed(&self, alg: &BoundQuiverAlgebra<F>, sub: &[Subspace<F>]) -> bool {
        alg.quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arr)| sub[arr.source].basis().iter().all(|x| sub[arr.target].contains(&self.actions[a].mul_vec(x))))
    }

    /// The submodule on closed per-vertex subspaces, in the coordinates of
    /// their row-reduced bases, with its inclusion.
    pub fn submodule(&self, alg: &BoundQuiverAlgebra<F>, sub: &[Subspace<F>]) -> (FdModule<F>, ModuleHom<F>) {
        let q = alg.quiver();
        let dims: Vec<usize> = sub.iter().map(Subspace::dim).collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(&self.field, dims[arr.target], dims[arr.source]);
                for (j, x) in sub[arr.source].basis().iter().enumerate() {
                    let coeffs = sub[arr.target].membership(&self.actions[a].mul_vec(x)).expect("subspaces are closed");
                    for (i, c) in coeffs.into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                m
            })
            .collect();
        let module = FdModule { field: self.field.clone(), dims, actions };
        let maps = sub.iter().map(|s| s.basis_matrix().transpose()).collect();
        let inc = ModuleHom { field: self.field.clone(), maps };
        (module, inc)
    }

    /// The quotient by closed per-vertex subspaces, with its projection.
    /// Quotient coordinates are the non-pivot coordinates of each subspace.
    pub fn quotient(&self, alg: &BoundQuiverAlgebra<F>, sub: &[Subspace<F>]) -> (FdModule<F>, ModuleHom<F>) {
        let f = &self.field;
        let q = alg.quiver();
        let keep: Vec<Vec<usize>> = sub.iter().map(Subspace::complement_indices).collect();
        let project = |v: usize, x: &[F::Elem]| -> Vec<F::Elem> {
            let r = sub[v].reduce(x);
            keep[v].iter().map(|&c| r[c].clone()).collect()
        };
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
                for (j, &c) in keep[arr.source].iter().enumerate() {
                    let img = project(arr.target, &self.actions[a].column(c));
                    for (i, z) in img.into_iter().enumerate() {
                        m.set(i, j, z);
                    }
                }
                m
            })
            .collect();
        let maps = (0..self.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(f, dims[v], self.dims[v]);
                for c in 0..self.dims[v] {
                    let mut unit = vec![f.zero(); self.dims[v]];
                    unit[c] = f.one();
                    for (i, z) in project(v, &unit).into_iter().enumerate() {
                        m.set(i, c, z);
                    }
                }
                m
            })
            .collect();
        (FdModule { field: f.clone(), dims, actions }, ModuleHom { field: f.clone(), maps })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(&self.field, x.rows() + y.rows(), x.cols() + y.cols());
                m.set_block(0, 0, x);
                m.set_block(x.rows(), x.cols(), y);
                m
            })
            .collect();
        FdModule { field: self.field.clone(), dims, actions }
    }

    /// The module of the opposite algebra given by the dual space.
    pub fn dual(&self) -> Self {
        FdModule { field: self.field.clone(), dims: self.dims.clone(), actions: self.actions.iter().map(Matrix::transpose).collect() }
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, PartialEq)]
pub struct ModuleHom<F: Field> {
    field: F,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for ModuleHom<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.maps.iter()).finish()
    }
}

impl<F: Field> ModuleHom<F> {
    pub fn new(field: &F, maps: Vec<Matrix<F>>) -> Self {
        ModuleHom { field: field.clone(), maps }
    }

    /// Checks shapes and commutation with every arrow.
    pub fn checked(alg: &BoundQuiverAlgebra<F>, src: &FdModule<F>, tgt: &FdModule<F>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let h = ModuleHom { field: alg.field().clone(), maps };
        if !h.is_hom(alg, src, tgt) {
            return Err(Error::InvalidHom("maps do not commute with the arrow actions".into()));
        }
        Ok(h)
    }

    pub fn is_hom(&self, alg: &BoundQuiverAlgebra<F>, src: &FdModule<F>, tgt: &FdModule<F>) -> bool {
        let shapes = self.maps.len() == src.dims.len()
            && self.maps.iter().enumerate().all(|(v, m)| m.rows() == tgt.dims[v] && m.cols() == src.dims[v]);
        shapes
            && alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .all(|(a, arr)| self.maps[arr.target].mul(src.action(a)) == tgt.action(a).mul(&self.maps[arr.source]))
    }

    pub fn zero(src: &FdModule<F>, tgt: &FdModule<F>) -> Self {
        let maps = (0..src.dims.len()).map(|v| Matrix::zeros(&src.field, tgt.dims[v], src.dims[v])).collect();
        ModuleHom { field: src.field.clone(), maps }
    }

    pub fn identity(m: &FdModule<F>) -> Self {
        ModuleHom { field: m.field.clone(), maps: m.dims.iter().map(|&d| Matrix::identity(&m.field, d)).collect() }
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix<F> {
        &self.maps[v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        ModuleHom { field: self.field.clone(), maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleHom { field: self.field.clone(), maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleHom { field: self.field.clone(), maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        ModuleHom { field: self.field.clone(), maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// Applies the map to a flat vector of the source.
    pub fn apply(&self, src: &FdModule<F>, tgt: &FdModule<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(tgt.total_dim());
        for v in 0..src.dims.len() {
            out.extend(self.maps[v].mul_vec(src.component(x, v)));
        }
        out
    }

    pub fn kernel(&self) -> Vec<Subspace<F>> {
        self.maps.iter().map(kernel_basis).collect()
    }

    pub fn image(&self) -> Vec<Subspace<F>> {
        self.maps.iter().map(|m| Subspace::row_space(&m.transpose())).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    /// Restriction to closed subspaces of source and target, in their basis coordinates.
    pub fn restrict(&self, src_sub: &[Subspace<F>], tgt_sub: &[Subspace<F>]) -> Result<Self> {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let mut r = Matrix::zeros(&self.field, tgt_sub[v].dim(), src_sub[v].dim());
                for (j, x) in src_sub[v].basis().iter().enumerate() {
                    let coeffs = tgt_sub[v]
                        .membership(&m.mul_vec(x))
                        .ok_or_else(|| Error::InvalidHom("map does not preserve the subspace".into()))?;
                    for (i, c) in coeffs.into_iter().enumerate() {
                        r.set(i, j, c);
                    }
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleHom { field: self.field.clone(), maps })
    }

    /// The induced map on quotients by closed subspaces (non-pivot coordinates).
    pub fn induced_on_quotient(&self, src_sub: &[Subspace<F>], tgt_sub: &[Subspace<F>]) -> Self {
        let f = &self.field;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let src_keep = src_sub[v].complement_indices();
                let tgt_keep = tgt_sub[v].complement_indices();
                let mut r = Matrix::zeros(f, tgt_keep.len(), src_keep.len());
                for (j, &c) in src_keep.iter().enumerate() {
                    let img = tgt_sub[v].reduce(&m.column(c));
                    for (i, &k) in tgt_keep.iter().enumerate() {
                        r.set(i, j, img[k].clone());
                    }
                }
                r
            })
            .collect();
        ModuleHom { field: f.clone(), maps }
    }
}

/// Basis of `Hom(M, N)` from the commuting-square equations.
pub fn hom_space<F: Field>(alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>, n: &FdModule<F>) -> Vec<ModuleHom<F>> {
    let f = alg.field();
    let nv = m.dims.len();
    let mut offsets = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offsets.push(unknowns);
        unknowns += m.dims[v] * n.dims[v];
    }
    // Unknown (v, r, c) is entry (r, c) of the map at v.
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (am, bn) = (m.action(a), n.action(a));
        // (X_t A)[r][c] - (B X_s)[r][c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..m.dims[t] {
                    let x = am.get(k, c);
                    if !f.is_zero(x) {
                        let i = var(t, r, k);
                        row[i] = f.add(&row[i], x);
                    }
                }
                for k in 0..n.dims[s] {
                    let x = bn.get(r, k);
                    if !f.is_zero(x) {
                        let i = var(s, k, c);
                        row[i] = f.sub(&row[i], x);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(f, unknowns, rows);
    let kernel = kernel_basis(&system);
    kernel
        .basis()
        .iter()
        .map(|sol| {
            let maps = (0..nv)
                .map(|v| {
                    let mut x = Matrix::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            x.set(r, c, sol[var(v, r, c)].clone());
                        }
                    }
                    x
                })
                .collect();
            ModuleHom { field: f.clone(), maps }
        })
        .collect()
}

pub fn combine_homs<F: Field>(basis: &[ModuleHom<F>], coeffs: &[F::Elem], src: &FdModule<F>, tgt: &FdModule<F>) -> ModuleHom<F> {
    let mut acc = ModuleHom::zero(src, tgt);
    for (h, c) in basis.iter().zip(coeffs) {
        acc = acc.add(&h.scale(c));
    }
    acc
}

/// Outcome of an isomorphism search.
#[derive(Debug, Clone, PartialEq)]
pub enum IsoOutcome<F: Field> {
    /// A verified isomorphism.
    Found(ModuleHom<F>),
    /// Dimension vectors or other invariants differ, so no isomorphism exists.
    Impossible,
    /// None found; not a proof of non-isomorphism.
    Inconclusive,
}

const RANDOM_ISO_TRIALS: usize = 24;
const PAIRWISE_LIMIT: usize = 12;

/// Searches `Hom(M, N)` for an invertible element.
///
/// Tries basis elements, then seeded random combinations, then pairwise
/// sums and differences of a small basis; over a prime field with a hom space
/// of dimension at most 2 the search is exhaustive. Every returned map is
/// verified.
pub fn iso_test<F: Field>(alg: &BoundQuiverAlgebra<F>, m: &FdModule<F>, n: &FdModule<F>) -> IsoOutcome<F> {
    if m.dims != n.dims || m.invariants(alg) != n.invariants(alg) {
        return IsoOutcome::Impossible;
    }
    let f = alg.field();
    let basis = hom_space(alg, m, n);
    let k = basis.len();
    let try_coeffs = |coeffs: &[F::Elem]| -> Option<ModuleHom<F>> {
        let h = combine_homs(&basis, coeffs, m, n);
        (h.is_iso() && h.is_hom(alg, m, n)).then_some(h)
    };
    if m.is_zero() {
        return IsoOutcome::Found(ModuleHom::zero(m, n));
    }
    for i in 0..k {
        let mut c = vec![f.zero(); k];
        c[i] = f.one();
        if let Some(h) = try_coeffs(&c) {
            return IsoOutcome::Found(h);
        }
    }
    if let crate::field::FieldTag::Prime(p) = f.tag() {
        if k <= 2 && p <= 1000 {
            let p = p as i64;
            for x in 0..p {
                for y in 0..if k == 2 { p } else { 1 } {
                    let c: Vec<F::Elem> = [x, y].iter().take(k).map(|&z| f.from_i64(z)).collect();
                    if let Some(h) = try_coeffs(&c) {
                        return IsoOutcome::Found(h);
                    }
                }
            }
            return IsoOutcome::Inconclusive;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..RANDOM_ISO_TRIALS {
        let c: Vec<F::Elem> = (0..k).map(|_| f.from_i64(rng.gen_range(-5..=5))).collect();
        if let Some(h) = try_coeffs(&c) {
            return IsoOutcome::Found(h);
        }
    }
    if k <= PAIRWISE_LIMIT {
        for i in 0..k {
            for j in i + 1..k {
                for sign in [1, -1] {
                    let mut c = vec![f.zero(); k];
                    c[i] = f.one();
                    c[j] = f.from_i64(sign);
                    if let Some(h) = try_coeffs(&c) {
                        return IsoOutcome::Found(h);
                    }
                }
            }
        }
    }
    IsoOutcome::Inconclusive
}

/// The submodule of the regular module `Λ_Λ` generated by the given elements.
/// The regular module is the projective sum over all vertices in order.
pub fn right_ideal<F: Field>(alg: &BoundQuiverAlgebra<F>, gens: &[AlgebraElement<F>]) -> (FdModule<F>, ModuleHom<F>) {
    let regular = crate::lambda::ProjectiveSum::regular(alg);
    let module = regular.module(alg);
    let flat: Vec<Vec<F::Elem>> = gens.iter().map(|g| regular.element_to_flat(alg, g)).collect();
    let sub = module.generated_subspaces(alg, &flat);
    module.submodule(alg, &sub)
}
