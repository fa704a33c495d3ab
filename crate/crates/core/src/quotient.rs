//! Idempotents supported on vertex sets and the quotient `Λ/Λ(1-e)Λ`.
//!
//! The quotient is again a bound quiver algebra: the full subquiver on `e`
//! modulo the images of the relations, where a path through a vertex outside
//! `e` maps to zero. The killed ideal is also computed directly inside the
//! parent and the two descriptions are checked against each other.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{EchelonBuilder, Matrix, Subspace};
use crate::quiver::{Path, PathVector};

/// Sum of the trivial paths at a set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Idempotent {
    vertices: BTreeSet<usize>,
}

impl Idempotent {
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        Idempotent { vertices: vertices.into_iter().collect() }
    }

    pub fn all<F: Field>(alg: &BoundQuiverAlgebra<F>) -> Self {
        Self::new(0..alg.vertex_count())
    }

    /// Resolves vertex names.
    pub fn from_names<F: Field, S: AsRef<str>>(alg: &BoundQuiverAlgebra<F>, names: &[S]) -> Result<Self> {
        let q = alg.quiver();
        Ok(Self::new(names.iter().map(|n| q.vertex(n.as_ref())).collect::<Result<Vec<_>>>()?))
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn element<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> AlgebraElement<F> {
        let mut x = alg.zero();
        for &v in &self.vertices {
            x.coords[alg.trivial_index(v)] = alg.field().one();
        }
        x
    }

    pub fn names<F: Field>(&self, alg: &BoundQuiverAlgebra<F>) -> Vec<String> {
        self.vertices.iter().map(|&v| alg.quiver().vertex_name(v).to_string()).collect()
    }
}

/// `Λ_e = Λ/Λ(1-e)Λ` together with the projection from `Λ`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Field> {
    pub idempotent: Idempotent,
    /// `Λ(1-e)Λ` in parent basis coordinates.
    pub killed: Subspace<F>,
    pub algebra: BoundQuiverAlgebra<F>,
    /// Parent vertex index for each quotient vertex.
    pub vertex_map: Vec<usize>,
    /// Parent basis index of each quotient basis path (a coset representative).
    pub representatives: Vec<usize>,
    projection: Matrix<F>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn project(&self, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        AlgebraElement { coords: self.projection.mul_vec(&x.coords) }
    }

    pub fn projection_matrix(&self) -> &Matrix<F> {
        &self.projection
    }

    /// Quotient vertex index of a parent vertex, if it survives.
    pub fn child_vertex(&self, v: usize) -> Option<usize> {
        self.vertex_map.iter().position(|&w| w == v)
    }

    pub fn lift(&self, x: &AlgebraElement<F>, parent: &BoundQuiverAlgebra<F>) -> AlgebraElement<F> {
        let mut out = parent.zero();
        for (i, c) in x.coords.iter().enumerate() {
            out.coords[self.representatives[i]] = c.clone();
        }
        out
    }
}

/// Span of `b₁ ε_v b₂` over basis paths and vertices `v` outside `e`.
pub fn killed_ideal<F: Field>(alg: &BoundQuiverAlgebra<F>, e: &Idempotent) -> Subspace<F> {
    let f = alg.field();
    let mut b = EchelonBuilder::new(f, alg.dim());
    for v in (0..alg.vertex_count()).filter(|&v| !e.contains(v)) {
        for &i in alg.basis_into(v) {
            for &j in alg.basis_from(v) {
                b.insert(alg.from_sparse(alg.basis_product(i, j)).coords);
            }
        }
    }
    b.into_subspace()
}

pub fn lambda_e<F: Field>(alg: &BoundQuiverAlgebra<F>, e: &Idempotent) -> Result<QuotientAlgebra<F>> {
    let f = alg.field();
    let q = alg.quiver();
    let (sub, vmap, amap) = q.full_subquiver(e.vertices());
    let translate = |p: &Path| -> Option<Path> {
        if p.is_trivial() {
            return vmap[p.source()].map(Path::trivial);
        }
        let arrows = p.arrows().iter().map(|&a| amap[a]).collect::<Option<Vec<_>>>()?;
        Some(sub.path(&arrows).expect("image of a path is a path"))
    };
    let rels: Vec<PathVector<F>> = alg
        .relations()
        .iter()
        .map(|rho| PathVector::from_terms(f, rho.terms().filter_map(|(p, c)| translate(p).map(|t| (t, c.clone())))))
        .filter(|r| !r.is_zero())
        .collect();
    let child = BoundQuiverAlgebra::build(f, sub.clone(), rels, alg.cap())?;

    let mut projection = Matrix::zeros(f, child.dim(), alg.dim());
    for (j, p) in alg.basis().iter().enumerate() {
        if let Some(t) = translate(p) {
            let img = child.reduce_path(&t);
            for (i, c) in img.coords.into_iter().enumerate() {
                projection.set(i, j, c);
            }
        }
    }
    let representatives = child
        .basis()
        .iter()
        .map(|p| {
            let parent_path = if p.is_trivial() {
                Path::trivial(e.vertices().iter().copied().nth(p.source()).expect("vertex survives"))
            } else {
                let arrows: Vec<usize> =
                    p.arrows().iter().map(|&a| amap.iter().position(|&x| x == Some(a)).expect("arrow survives")).collect();
                q.path(&arrows).expect("path lifts")
            };
            alg.basis_index(&parent_path).ok_or_else(|| Error::ShapeMismatch("quotient normal path is not a parent normal path".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let killed = killed_ideal(alg, e);
    if killed.dim() + child.dim() != alg.dim() {
        return Err(Error::ShapeMismatch(format!(
            "quotient dimension {} and killed ideal dimension {} do not add up to {}",
            child.dim(),
            killed.dim(),
            alg.dim()
        )));
    }
    Ok(QuotientAlgebra {
        idempotent: e.clone(),
        killed,
        algebra: child,
        vertex_map: e.vertices().iter().copied().collect(),
        representatives,
        projection,
    })
}
