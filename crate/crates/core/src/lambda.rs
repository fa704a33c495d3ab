//! Direct sums of indecomposable projectives `⊕ e_{v_i}Λ` and maps between
//! them written as matrices with entries in the algebra.
//!
//! Entry `(i, j)` of a map `P -> Q` lies in `e_{t_i} Λ e_{s_j}`; the map sends
//! the generator of summand `j` to the column `j`, and acts on a general
//! element by left multiplication. Composition is the matrix product.

use std::collections::HashMap;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{FdModule, ModuleHom};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProjectiveSum {
    pub vertices: Vec<usize>,
}

/// Coordinates of a projective sum as a module: at vertex `w`, the pairs
/// `(summand, basis path)` whose path ends at `w`, ordered by summand then path.
#[derive(Debug, Clone)]
pub struct ProjectiveLayout {
    pub per_vertex: Vec<Vec<(usize, usize)>>,
    position: HashMap<(usize, usize), usize>,
}

impl ProjectiveLayout {
    /// Position inside the component at the path's target.
    pub fn position(&self, summand: usize, basis: usize) -> usize {
        self.position[&(summand, basis)]
    }
}

impl ProjectiveSum {
    pub fn new(vertices: Vec<usize>) -> Self {
        ProjectiveSum { vertices }
    }

    pub fn regular<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Self {
        ProjectiveSum { vertices: (0..alg.vertex_count()).collect() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices);
        ProjectiveSum { vertices }
    }

    /// Multiplicity of each vertex.
    pub fn multiplicities(&self, vertex_count: usize) -> Vec<usize> {
        let mut m = vec![0; vertex_count];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }

    pub fn layout<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> ProjectiveLayout {
        let mut per_vertex = vec![Vec::new(); alg.vertex_count()];
        let mut position = HashMap::new();
        for (j, &v) in self.vertices.iter().enumerate() {
            for &b in alg.basis_from(v) {
                let w = alg.basis()[b].target();
                position.insert((j, b), per_vertex[w].len());
                per_vertex[w].push((j, b));
            }
        }
        ProjectiveLayout { per_vertex, position }
    }

    pub fn dims<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> Vec<usize> {
        let mut dims = vec![0; alg.vertex_count()];
        for &v in &self.vertices {
            for &b in alg.basis_from(v) {
                dims[alg.basis()[b].target()] += 1;
            }
        }
        dims
    }

    pub fn total_dim<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> usize {
        self.vertices.iter().map(|&v| alg.basis_from(v).len()).sum()
    }

    pub fn module<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> FdModule<F> {
        let f = alg.field();
        let layout = self.layout(alg);
        let q = alg.quiver();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let (s, t) = (arr.source, arr.target);
                let mut m = Matrix::zeros(f, layout.per_vertex[t].len(), layout.per_vertex[s].len());
                for (col, &(j, b)) in layout.per_vertex[s].iter().enumerate() {
                    let arrow = alg.reduce_path(&q.arrow_path(a));
                    let img = alg.mul(&alg.basis_element(b), &arrow);
                    for (k, c) in img.coords.iter().enumerate() {
                        if !f.is_zero(c) {
                            m.set(layout.position(j, k), col, c.clone());
                        }
                    }
                }
                m
            })
            .collect();
        FdModule::from_parts_unchecked(f, layout.per_vertex.iter().map(Vec::len).collect(), actions)
    }

    /// Component at `w` of a column whose entry `i` lies in `e_{v_i} Λ e_w`.
    pub fn column_to_component<F: Field>(
        &self,
        alg: &BoundQuiverAlgebra<F>,
        layout: &ProjectiveLayout,
        w: usize,
        col: &[AlgebraElement<F>],
    ) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); layout.per_vertex[w].len()];
        for (pos, &(i, b)) in layout.per_vertex[w].iter().enumerate() {
            out[pos] = col[i].coords[b].clone();
        }
        out
    }

    /// Inverse of [`Self::column_to_component`].
    pub fn component_to_column<F: Field>(
        &self,
        alg: &BoundQuiverAlgebra<F>,
        layout: &ProjectiveLayout,
        w: usize,
        comp: &[F::Elem],
    ) -> Vec<AlgebraElement<F>> {
        let mut col = vec![alg.zero(); self.len()];
        for (pos, &(i, b)) in layout.per_vertex[w].iter().enumerate() {
            col[i].coords[b] = comp[pos].clone();
        }
        col
    }

    /// Flat module vector of an element of the regular module `Λ_Λ`.
    pub fn element_to_flat<F: Field>(&self, alg: &BoundQuiverAlgebra<F>, x: &AlgebraElement<F>) -> Vec<F::Elem> {
        let layout = self.layout(alg);
        let m = self.module(alg);
        let mut out = vec![alg.field().zero(); m.total_dim()];
        for (j, &v) in self.vertices.iter().enumerate() {
            for &b in alg.basis_from(v) {
                let w = alg.basis()[b].target();
                out[m.offset(w) + layout.position(j, b)] = x.coords[b].clone();
            }
        }
        out
    }
}

/// A map between projective sums with algebra entries.
#[derive(Clone, PartialEq)]
pub struct LambdaMatrix<F: Field> {
    pub source: ProjectiveSum,
    pub target: ProjectiveSum,
    entries: Vec<Vec<AlgebraElement<F>>>,
}

impl<F: Field> std::fmt::Debug for LambdaMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LambdaMatrix({:?} -> {:?})", self.source.vertices, self.target.vertices)
    }
}

impl<F: Field> LambdaMatrix<F> {
    /// Checks that entry `(i, j)` lies in `e_{t_i} Λ e_{s_j}`.
    pub fn new(
        alg: &BoundQuiverAlgebra<F>,
        source: ProjectiveSum,
        target: ProjectiveSum,
        entries: Vec<Vec<AlgebraElement<F>>>,
    ) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|r| r.len() != source.len()) {
            return Err(Error::ShapeMismatch("entry grid does not match the projective sums".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !alg.in_peirce(target.vertices[i], source.vertices[j], x) {
                    return Err(Error::MalformedEntry { row: i, col: j });
                }
            }
        }
        Ok(LambdaMatrix { source, target, entries })
    }

    /// Builds the map from the images of the source generators.
    pub fn from_columns(
        source: ProjectiveSum,
        target: ProjectiveSum,
        columns: Vec<Vec<AlgebraElement<F>>>,
        alg: &BoundQuiverAlgebra<F>,
    ) -> Self {
        let mut entries = vec![vec![alg.zero(); source.len()]; target.len()];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                entries[i][j] = x;
            }
        }
        LambdaMatrix { source, target, entries }
    }

    pub fn zero(alg: &BoundQuiverAlgebra<F>, source: ProjectiveSum, target: ProjectiveSum) -> Self {
        let entries = vec![vec![alg.zero(); source.len()]; target.len()];
        LambdaMatrix { source, target, entries }
    }

    pub fn identity(alg: &BoundQuiverAlgebra<F>, p: &ProjectiveSum) -> Self {
        let mut m = Self::zero(alg, p.clone(), p.clone());
        for (i, &v) in p.vertices.iter().enumerate() {
            m.entries[i][i] = alg.vertex_element(v);
        }
        m
    }

    /// Left multiplication by a scalar-free algebra element on `e_v Λ`, i.e.
    /// the `1 x 1` matrix with entry `x ∈ e_v Λ e_v`.
    pub fn scalar(alg: &BoundQuiverAlgebra<F>, v: usize, x: AlgebraElement<F>) -> Result<Self> {
        let p = ProjectiveSum::new(vec![v]);
        Self::new(alg, p.clone(), p, vec![vec![x]])
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }
    pub fn cols(&self) -> usize {
        self.source.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement<F> {
        &self.entries[i][j]
    }
    pub fn set_entry(&mut self, i: usize, j: usize, x: AlgebraElement<F>) {
        self.entries[i][j] = x;
    }
    pub fn column(&self, j: usize) -> Vec<AlgebraElement<F>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self, alg: &BoundQuiverAlgebra<F>) -> bool {
        self.entries.iter().flatten().all(|x| alg.is_zero(x))
    }

    /// True when every entry lies in the radical.
    pub fn is_radical(&self, alg: &BoundQuiverAlgebra<F>) -> bool {
        self.entries.iter().flatten().all(|x| alg.in_radical(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &BoundQuiverAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.source, other.target, "composition shape mismatch");
        let mut entries = vec![vec![alg.zero(); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                for k in 0..self.cols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if alg.is_zero(a) || alg.is_zero(b) {
                        continue;
                    }
                    *out = alg.add(out, &alg.mul(a, b));
                }
            }
        }
        LambdaMatrix { source: other.source.clone(), target: self.target.clone(), entries }
    }

    pub fn add(&self, alg: &BoundQuiverAlgebra<F>, other: &Self) -> Self {
        assert!(self.source == other.source && self.target == other.target, "sum shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(r, s)| r.iter().zip(s).map(|(a, b)| alg.add(a, b)).collect()).collect();
        LambdaMatrix { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn scale(&self, alg: &BoundQuiverAlgebra<F>, c: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|r| r.iter().map(|a| alg.scale(c, a)).collect()).collect();
        LambdaMatrix { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn neg(&self, alg: &BoundQuiverAlgebra<F>) -> Self {
        self.scale(alg, &alg.field().neg(&alg.field().one()))
    }

    /// Applies the map to an element of the source written as a column.
    pub fn apply(&self, alg: &BoundQuiverAlgebra<F>, col: &[AlgebraElement<F>]) -> Vec<AlgebraElement<F>> {
        (0..self.rows())
            .map(|i| {
                let mut acc = alg.zero();
                for (j, x) in col.iter().enumerate() {
                    if !alg.is_zero(x) && !alg.is_zero(&self.entries[i][j]) {
                        acc = alg.add(&acc, &alg.mul(&self.entries[i][j], x));
                    }
                }
                acc
            })
            .collect()
    }

    /// The `2 x 2` block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.target == b.target && c.target == d.target && a.source == c.source && b.source == d.source);
        let mut entries = Vec::new();
        for (ra, rb) in a.entries.iter().zip(&b.entries) {
            entries.push(ra.iter().chain(rb).cloned().collect());
        }
        for (rc, rd) in c.entries.iter().zip(&d.entries) {
            entries.push(rc.iter().chain(rd).cloned().collect());
        }
        LambdaMatrix { source: a.source.concat(&b.source), target: a.target.concat(&c.target), entries }
    }

    /// Sum of the diagonal entries of an endomorphism.
    pub fn diagonal_sum(&self, alg: &BoundQuiverAlgebra<F>) -> AlgebraElement<F> {
        assert!(self.is_endomorphism(), "trace of a non-endomorphism");
        (0..self.rows()).fold(alg.zero(), |acc, i| alg.add(&acc, &self.entries[i][i]))
    }

    /// The concrete module homomorphism between the projective modules.
    pub fn to_hom(&self, alg: &BoundQuiverAlgebra<F>) -> ModuleHom<F> {
        let f = alg.field();
        let src = self.source.layout(alg);
        let tgt = self.target.layout(alg);
        let maps = (0..alg.vertex_count())
            .map(|w| {
                let mut m = Matrix::zeros(f, tgt.per_vertex[w].len(), src.per_vertex[w].len());
                for (col, &(j, b)) in src.per_vertex[w].iter().enumerate() {
                    for i in 0..self.rows() {
                        let x = &self.entries[i][j];
                        for (k, xk) in x.coords.iter().enumerate() {
                            if f.is_zero(xk) {
                                continue;
                            }
                            for (r, c) in alg.basis_product(k, b) {
                                let row = tgt.position(i, *r);
                                let mut cur = m.get(row, col).clone();
                                f.add_mul_assign(&mut cur, xk, c);
                                m.set(row, col, cur);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleHom::new(f, maps)
    }
}
