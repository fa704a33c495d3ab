//! Bound quiver algebras `kQ/I` with a normal-path basis.
//!
//! The ideal is row-reduced degree by degree with columns in descending
//! length-lex order, so every pivot is the leading path of some ideal element
//! and the non-pivot paths form the basis. Products are computed one arrow at
//! a time, which keeps every intermediate path shorter than the nilpotency
//! degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{EchelonBuilder, Matrix, Subspace};
use crate::quiver::{Path, PathVector, Quiver};

pub const DEFAULT_CAP: usize = 30;

/// Upper bound on the number of paths the admissibility search may enumerate.
pub const PATH_LIMIT: usize = 40_000;

/// Sparse coordinate vector `(basis index, coefficient)`, indices ascending.
pub type Sparse<E> = Vec<(usize, E)>;

/// An element of the algebra in basis coordinates.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<F: Field> {
    pub coords: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement{:?}", self.coords)
    }
}

/// The ideal restricted to one `(source, target)` pair and to paths shorter
/// than the nilpotency degree.
#[derive(Clone, Debug)]
pub struct PairIdeal<F: Field> {
    /// Column labels, in descending length-lex order.
    pub paths: Vec<Path>,
    pub space: Subspace<F>,
}

#[derive(Clone)]
pub struct BoundQuiverAlgebra<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<PathVector<F>>,
    cap: usize,
    degree: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: BTreeMap<(usize, usize), PairIdeal<F>>,
    right_arrow: Vec<Vec<Option<Sparse<F::Elem>>>>,
    mult: Vec<Vec<Sparse<F::Elem>>>,
    from_vertex: Vec<Vec<usize>>,
    into_vertex: Vec<Vec<usize>>,
}

impl<F: Field> fmt::Debug for BoundQuiverAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BoundQuiverAlgebra(dim {}, degree {}, {} vertices, {} arrows, over {})",
            self.dim(),
            self.degree,
            self.quiver.vertex_count(),
            self.quiver.arrow_count(),
            self.field.tag()
        )
    }
}

/// Ideal generators `u * rho * v` grouped by endpoint pair.
fn sandwiches<F: Field>(
    q: &Quiver,
    rels: &[PathVector<F>],
    budget: impl Fn(&PathVector<F>) -> Option<usize>,
    keep_below: Option<usize>,
) -> BTreeMap<(usize, usize), Vec<PathVector<F>>> {
    let mut out: BTreeMap<(usize, usize), Vec<PathVector<F>>> = BTreeMap::new();
    for rho in rels {
        let Some((x, y)) = rho.endpoints() else { continue };
        let Some(room) = budget(rho) else { continue };
        let lefts = paths_into(q, x, room);
        for u in &lefts {
            for v in paths_from(q, y, room - u.len()) {
                let mut g = rho.sandwich(u, &v);
                if let Some(n) = keep_below {
                    g = PathVector::from_terms(g.field(), g.terms().filter(|(p, _)| p.len() < n).map(|(p, c)| (p.clone(), c.clone())));
                }
                if !g.is_zero() {
                    out.entry((u.source(), v.target())).or_default().push(g);
                }
            }
        }
    }
    out
}

/// Paths ending at `v` of length at most `max`.
fn paths_into(q: &Quiver, v: usize, max: usize) -> Vec<Path> {
    let mut out = vec![Path::trivial(v)];
    let mut frontier = vec![Path::trivial(v)];
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_into(p.source()) {
                next.push(q.arrow_path(a).compose(p).expect("arrow ends at path source"));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Paths starting at `v` of length at most `max`.
fn paths_from(q: &Quiver, v: usize, max: usize) -> Vec<Path> {
    let mut out = vec![Path::trivial(v)];
    let mut frontier = vec![Path::trivial(v)];
    for _ in 0..max {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                next.push(p.compose(&q.arrow_path(a)).expect("path ends at arrow source"));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn row_of<F: Field>(field: &F, g: &PathVector<F>, col: &HashMap<&Path, usize>, width: usize) -> Vec<F::Elem> {
    let mut row = vec![field.zero(); width];
    for (p, c) in g.terms() {
        row[col[p]] = c.clone();
    }
    row
}

fn validate_relations<F: Field>(rels: &[PathVector<F>]) -> Result<Vec<PathVector<F>>> {
    let mut kept = Vec::new();
    for (index, rho) in rels.iter().enumerate() {
        if rho.is_zero() {
            continue;
        }
        if rho.endpoints().is_none() {
            return Err(Error::MalformedRelation { index, reason: "terms have different endpoints".into() });
        }
        if rho.min_len().unwrap_or(0) < 2 {
            return Err(Error::MalformedRelation { index, reason: "a term has length below 2".into() });
        }
        kept.push(rho.clone());
    }
    Ok(kept)
}

/// True when every path of length `n` lies in the span of the ideal
/// generators whose terms all have length at most `n`.
fn degree_is_nilpotent<F: Field>(field: &F, q: &Quiver, rels: &[PathVector<F>], n: usize) -> bool {
    let top = q.paths_of_length(n);
    if top.is_empty() {
        return true;
    }
    let gens = sandwiches(q, rels, |rho| n.checked_sub(rho.max_len().expect("nonzero")), None);
    let mut by_pair: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in top {
        by_pair.entry((p.source(), p.target())).or_default().push(p);
    }
    for ((s, t), targets) in by_pair {
        let Some(gs) = gens.get(&(s, t)) else { return false };
        let mut cols: Vec<Path> = q.paths_between(s, t, 0, n);
        cols.reverse();
        let col: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let span = Subspace::from_vectors(field, cols.len(), gs.iter().map(|g| row_of(field, g, &col, cols.len())));
        for p in &targets {
            let mut unit = vec![field.zero(); cols.len()];
            unit[col[p]] = field.one();
            if !span.contains(&unit) {
                return false;
            }
        }
    }
    true
}

/// `I ∩ kQ_{<n}` per endpoint pair, valid once every length-`n` path lies in `I`.
fn truncated_ideal<F: Field>(field: &F, q: &Quiver, rels: &[PathVector<F>], n: usize) -> BTreeMap<(usize, usize), PairIdeal<F>> {
    let gens = sandwiches(
        q,
        rels,
        |rho| {
            let m = rho.min_len().expect("nonzero");
            (m < n).then(|| n - 1 - m)
        },
        Some(n),
    );
    let mut out = BTreeMap::new();
    for ((s, t), gs) in gens {
        let mut paths: Vec<Path> = q.paths_between(s, t, 0, n - 1);
        paths.reverse();
        let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let space = Subspace::from_vectors(field, paths.len(), gs.iter().map(|g| row_of(field, g, &col, paths.len())));
        if !space.is_zero() {
            out.insert((s, t), PairIdeal { paths, space });
        }
    }
    out
}

struct NormalForms<E> {
    basis: Vec<Path>,
    /// Leading paths of the ideal, mapped to their normal forms over `basis`.
    rewrite: HashMap<Path, Sparse<E>>,
}

fn normal_forms<F: Field>(q: &Quiver, ideal: &BTreeMap<(usize, usize), PairIdeal<F>>, n: usize, field: &F) -> NormalForms<F::Elem> {
    let mut leading: HashMap<Path, Vec<(Path, F::Elem)>> = HashMap::new();
    for pi in ideal.values() {
        for (row, &pc) in pi.space.basis().iter().zip(pi.space.pivots()) {
            let tail = row
                .iter()
                .enumerate()
                .filter(|&(c, x)| c != pc && !field.is_zero(x))
                .map(|(c, x)| (pi.paths[c].clone(), field.neg(x)))
                .collect();
            leading.insert(pi.paths[pc].clone(), tail);
        }
    }
    let basis: Vec<Path> = q.paths_up_to(n.saturating_sub(1)).into_iter().filter(|p| !leading.contains_key(p)).collect();
    let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rewrite = leading
        .into_iter()
        .map(|(p, tail)| {
            let mut sparse: Sparse<F::Elem> = tail.into_iter().map(|(t, c)| (index[&t], c)).collect();
            sparse.sort_by_key(|&(i, _)| i);
            (p, sparse)
        })
        .collect();
    NormalForms { basis, rewrite }
}

fn sparse_axpy<F: Field>(field: &F, acc: &mut BTreeMap<usize, F::Elem>, c: &F::Elem, v: &Sparse<F::Elem>) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(|| field.zero());
        field.add_mul_assign(e, c, x);
    }
}

fn sparse_from_map<F: Field>(field: &F, acc: BTreeMap<usize, F::Elem>) -> Sparse<F::Elem> {
    acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
}

impl<F: Field> BoundQuiverAlgebra<F> {
    /// Compiles `kQ/I` where `I` is generated by `relations`.
    pub fn build(field: &F, quiver: Quiver, relations: Vec<PathVector<F>>, cap: usize) -> Result<Self> {
        let rels = validate_relations(&relations)?;
        let counts = quiver.path_counts(cap);
        let mut found = None;
        for n in 1..=cap {
            let total = counts[..=n].iter().fold(0usize, |a, &b| a.saturating_add(b));
            if total > PATH_LIMIT {
                return Err(Error::PathExplosion { limit: PATH_LIMIT, length: n });
            }
            if degree_is_nilpotent(field, &quiver, &rels, n) {
                found = Some(n);
                break;
            }
        }
        let Some(bound) = found else {
            return Err(Error::NotAdmissible { cap });
        };

        // The search bound may overshoot when long terms cancel; the true
        // degree is the least length whose paths all rewrite to zero.
        let ideal = truncated_ideal(field, &quiver, &rels, bound);
        let forms = normal_forms(&quiver, &ideal, bound, field);
        let degree = (1..=bound).find(|&m| forms.basis.iter().all(|p| p.len() < m)).expect("bound itself qualifies");
        let ideal = if degree < bound { truncated_ideal(field, &quiver, &rels, degree) } else { ideal };
        let forms = if degree < bound { normal_forms(&quiver, &ideal, degree, field) } else { forms };

        let basis = forms.basis;
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut right_arrow = vec![vec![None; quiver.arrow_count()]; basis.len()];
        for (i, b) in basis.iter().enumerate() {
            for a in quiver.arrows_from(b.target()) {
                let p = b.compose(&quiver.arrow_path(a)).expect("composable");
                let image = if p.len() >= degree {
                    Vec::new()
                } else if let Some(&j) = index.get(&p) {
                    vec![(j, field.one())]
                } else {
                    forms.rewrite.get(&p).cloned().expect("non-basis short path is a leading path")
                };
                right_arrow[i][a] = Some(image);
            }
        }
        let mut from_vertex = vec![Vec::new(); quiver.vertex_count()];
        let mut into_vertex = vec![Vec::new(); quiver.vertex_count()];
        for (i, b) in basis.iter().enumerate() {
            from_vertex[b.source()].push(i);
            into_vertex[b.target()].push(i);
        }
        let mut alg = BoundQuiverAlgebra {
            field: field.clone(),
            quiver,
            relations: rels,
            cap,
            degree,
            basis,
            index,
            ideal,
            right_arrow,
            mult: Vec::new(),
            from_vertex,
            into_vertex,
        };
        alg.mult = alg.structure_constants();
        Ok(alg)
    }

    fn structure_constants(&self) -> Vec<Vec<Sparse<F::Elem>>> {
        let n = self.basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            let t = self.basis[i].target();
            for &j in &self.from_vertex[t] {
                row[j] = self.right_multiply_path(&vec![(i, self.field.one())], self.basis[j].arrows());
            }
        }
        table
    }

    /// Multiplies a sparse element on the right by a word of arrows.
    fn right_multiply_path(&self, x: &Sparse<F::Elem>, arrows: &[usize]) -> Sparse<F::Elem> {
        let f = &self.field;
        let mut cur = x.clone();
        for &a in arrows {
            let mut acc = BTreeMap::new();
            for (i, c) in &cur {
                if let Some(img) = &self.right_arrow[*i][a] {
                    sparse_axpy(f, &mut acc, c, img);
                }
            }
            cur = sparse_from_map(f, acc);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[PathVector<F>] {
        &self.relations
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    /// Least `n` with every path of length `n` in the ideal.
    pub fn nilpotency_degree(&self) -> usize {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    /// Basis indices of paths starting at `v`, ascending.
    pub fn basis_from(&self, v: usize) -> &[usize] {
        &self.from_vertex[v]
    }

    /// Basis indices of paths ending at `v`, ascending.
    pub fn basis_into(&self, v: usize) -> &[usize] {
        &self.into_vertex[v]
    }

    /// Truncated ideal data per endpoint pair.
    pub fn ideal_pairs(&self) -> &BTreeMap<(usize, usize), PairIdeal<F>> {
        &self.ideal
    }

    pub fn zero(&self) -> AlgebraElement<F> {
        AlgebraElement { coords: vec![self.field.zero(); self.dim()] }
    }

    pub fn one(&self) -> AlgebraElement<F> {
        let mut x = self.zero();
        for v in 0..self.vertex_count() {
            x.coords[self.trivial_index(v)] = self.field.one();
        }
        x
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<F> {
        let mut x = self.zero();
        x.coords[i] = self.field.one();
        x
    }

    pub fn vertex_element(&self, v: usize) -> AlgebraElement<F> {
        self.basis_element(self.trivial_index(v))
    }

    pub fn from_sparse(&self, s: &Sparse<F::Elem>) -> AlgebraElement<F> {
        let mut x = self.zero();
        for (i, c) in s {
            x.coords[*i] = c.clone();
        }
        x
    }

    pub fn to_sparse(&self, x: &AlgebraElement<F>) -> Sparse<F::Elem> {
        x.coords.iter().enumerate().filter(|(_, c)| !self.field.is_zero(c)).map(|(i, c)| (i, c.clone())).collect()
    }

    /// Normal form of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> AlgebraElement<F> {
        let start = vec![(self.trivial_index(p.source()), self.field.one())];
        self.from_sparse(&self.right_multiply_path(&start, p.arrows()))
    }

    pub fn reduce(&self, v: &PathVector<F>) -> AlgebraElement<F> {
        let mut x = self.zero();
        for (p, c) in v.terms() {
            let r = self.reduce_path(p);
            for (xi, ri) in x.coords.iter_mut().zip(&r.coords) {
                self.field.add_mul_assign(xi, c, ri);
            }
        }
        x
    }

    /// Structure constants of `basis[i] * basis[j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse<F::Elem> {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.coords.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            let t = self.basis[i].target();
            for &j in &self.from_vertex[t] {
                let yj = &y.coords[j];
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.mult[i][j] {
                    f.add_mul_assign(&mut out.coords[*k], &c, s);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
        AlgebraElement { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| self.field.add(a, b)).collect() }
    }

    pub fn sub(&self, x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
        AlgebraElement { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| self.field.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: &F::Elem, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        AlgebraElement { coords: x.coords.iter().map(|a| self.field.mul(c, a)).collect() }
    }

    pub fn neg(&self, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        AlgebraElement { coords: x.coords.iter().map(|a| self.field.neg(a)).collect() }
    }

    pub fn is_zero(&self, x: &AlgebraElement<F>) -> bool {
        x.coords.iter().all(|c| self.field.is_zero(c))
    }

    pub fn pow(&self, x: &AlgebraElement<F>, k: usize) -> AlgebraElement<F> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `e_s x e_t`.
    pub fn corner(&self, s: usize, t: usize, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut out = self.zero();
        for (i, c) in x.coords.iter().enumerate() {
            if self.basis[i].source() == s && self.basis[i].target() == t {
                out.coords[i] = c.clone();
            }
        }
        out
    }

    /// True when every nonzero coordinate lies in `e_s Λ e_t`.
    pub fn in_peirce(&self, s: usize, t: usize, x: &AlgebraElement<F>) -> bool {
        x.coords.iter().enumerate().all(|(i, c)| self.field.is_zero(c) || (self.basis[i].source() == s && self.basis[i].target() == t))
    }

    /// Basis indices of paths from `s` to `t`.
    pub fn peirce(&self, s: usize, t: usize) -> Vec<usize> {
        self.from_vertex[s].iter().copied().filter(|&i| self.basis[i].target() == t).collect()
    }

    /// Basis indices of nontrivial paths; they span the radical.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_trivial()).collect()
    }

    pub fn radical(&self) -> Subspace<F> {
        let f = &self.field;
        Subspace::from_vectors(f, self.dim(), self.radical_basis().into_iter().map(|i| self.basis_element(i).coords))
    }

    pub fn in_radical(&self, x: &AlgebraElement<F>) -> bool {
        (0..self.vertex_count()).all(|v| self.field.is_zero(&x.coords[self.trivial_index(v)]))
    }

    /// `J^k` as a subspace of basis coordinates, computed from products.
    pub fn radical_power(&self, k: usize) -> Subspace<F> {
        if k == 0 {
            return Subspace::full(&self.field, self.dim());
        }
        let rad = self.radical();
        let mut cur = rad.clone();
        for _ in 1..k {
            let mut b = EchelonBuilder::new(&self.field, self.dim());
            for x in cur.basis() {
                let x = AlgebraElement { coords: x.clone() };
                for y in rad.basis() {
                    b.insert(self.mul(&x, &AlgebraElement { coords: y.clone() }).coords);
                }
            }
            cur = b.into_subspace();
        }
        cur
    }

    /// Matrix of `y ↦ x y` on basis coordinates.
    pub fn left_mul_matrix(&self, x: &AlgebraElement<F>) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.dim(), self.dim());
        for j in 0..self.dim() {
            let col = self.mul(x, &self.basis_element(j));
            for (i, c) in col.coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Opposite algebra: reversed arrows and reversed relation words.
    pub fn opposite(&self) -> Result<Self> {
        let rels = self.relations.iter().map(PathVector::reversed).collect();
        Self::build(&self.field, self.quiver.opposite(), rels, self.cap)
    }

    /// Image of an element under the anti-isomorphism to the opposite algebra.
    pub fn to_opposite(&self, op: &Self, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut out = op.zero();
        for (i, c) in x.coords.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let r = op.reduce_path(&self.basis[i].reversed());
            for (o, ri) in out.coords.iter_mut().zip(&r.coords) {
                self.field.add_mul_assign(o, c, ri);
            }
        }
        out
    }

    pub fn format_element(&self, x: &AlgebraElement<F>) -> String {
        let f = &self.field;
        let terms =
            x.coords.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (f.format(c), self.quiver.format_path(&self.basis[i])));
        crate::quiver::format_combination(terms)
    }

    /// Vertices that paths of the basis pass through, per basis element.
    pub fn visits(&self, i: usize) -> BTreeSet<usize> {
        self.basis[i].vertices_visited(&self.quiver).into_iter().collect()
    }
}
