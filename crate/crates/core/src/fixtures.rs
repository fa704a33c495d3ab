//! The five reference algebras used across the test suites.
//!
//! * `fx1`: `1 -alpha-> 2`, no relations.
//! * `fx2`: one vertex, a loop `alpha`, `alpha^2 = 0`.
//! * `fx3`: vertices 1..4, `alpha: 1->2`, `beta: 2->3`, `gamma: 1->4`,
//!   `delta: 4->3`, `epsilon: 3->1` with `alpha beta - gamma delta`,
//!   `beta epsilon`, `delta epsilon`, `epsilon alpha`.
//! * `fx4`: `alpha: 1->2`, `beta: 2->1`, all paths of length 3 zero.
//! * `fx5`: the Kronecker quiver, two arrows `1 -> 2`, no relations.

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_CAP};
use crate::field::{Field, Rationals};
use crate::quiver::{PathVector, Quiver};

/// Builds an algebra from vertex names, arrows and relations given as
/// `(coefficient, word)` term lists.
pub fn algebra<F: Field>(
    field: &F,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &[&str])]],
) -> BoundQuiverAlgebra<F> {
    let q = Quiver::from_strs(vertices, arrows).expect("fixture quiver is valid");
    let rels = relations
        .iter()
        .map(|terms| {
            let mut v = PathVector::zero(field);
            for (c, w) in terms.iter() {
                v.add_term(q.path_from_labels(w).expect("fixture word composes"), field.from_i64(*c));
            }
            v
        })
        .collect();
    BoundQuiverAlgebra::build(field, q, rels, DEFAULT_CAP).expect("fixture is admissible")
}

pub fn fx1<F: Field>(f: &F) -> BoundQuiverAlgebra<F> {
    algebra(f, &["1", "2"], &[("alpha", "1", "2")], &[])
}

pub fn fx2<F: Field>(f: &F) -> BoundQuiverAlgebra<F> {
    algebra(f, &["1"], &[("alpha", "1", "1")], &[&[(1, &["alpha", "alpha"])]])
}

pub fn fx3<F: Field>(f: &F) -> BoundQuiverAlgebra<F> {
    algebra(
        f,
        &["1", "2", "3", "4"],
        &[("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "1", "4"), ("delta", "4", "3"), ("epsilon", "3", "1")],
        &[
            &[(1, &["alpha", "beta"]), (-1, &["gamma", "delta"])],
            &[(1, &["beta", "epsilon"])],
            &[(1, &["delta", "epsilon"])],
            &[(1, &["epsilon", "alpha"])],
        ],
    )
}

pub fn fx4<F: Field>(f: &F) -> BoundQuiverAlgebra<F> {
    algebra(
        f,
        &["1", "2"],
        &[("alpha", "1", "2"), ("beta", "2", "1")],
        &[&[(1, &["alpha", "beta", "alpha"])], &[(1, &["beta", "alpha", "beta"])]],
    )
}

pub fn fx5<F: Field>(f: &F) -> BoundQuiverAlgebra<F> {
    algebra(f, &["1", "2"], &[("alpha", "1", "2"), ("beta", "1", "2")], &[])
}

pub fn fx1_q() -> BoundQuiverAlgebra<Rationals> {
    fx1(&Rationals)
}
pub fn fx2_q() -> BoundQuiverAlgebra<Rationals> {
    fx2(&Rationals)
}
pub fn fx3_q() -> BoundQuiverAlgebra<Rationals> {
    fx3(&Rationals)
}
pub fn fx4_q() -> BoundQuiverAlgebra<Rationals> {
    fx4(&Rationals)
}
pub fn fx5_q() -> BoundQuiverAlgebra<Rationals> {
    fx5(&Rationals)
}

/// All five fixtures with their names.
pub fn all<F: Field>(f: &F) -> Vec<(&'static str, BoundQuiverAlgebra<F>)> {
    vec![("fx1", fx1(f)), ("fx2", fx2(f)), ("fx3", fx3(f)), ("fx4", fx4(f)), ("fx5", fx5(f))]
}
