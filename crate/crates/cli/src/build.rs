//! Turning descriptions and command-line snippets into core objects.

use noloop_core::algebra::{AlgebraElement, BoundQuiverAlgebra};
use noloop_core::quotient::Idempotent;
use noloop_core::{Field, PathVector, Quiver};

use crate::description::{parse_element_terms, AlgebraDescription};
use crate::error::CliError;

pub fn quiver(d: &AlgebraDescription) -> Result<Quiver, CliError> {
    Ok(Quiver::new(d.vertices.iter().cloned(), d.arrows.iter().cloned())?)
}

fn combination<F: Field>(f: &F, q: &Quiver, terms: &[(num_rational::BigRational, Vec<String>)]) -> Result<PathVector<F>, CliError> {
    let mut v = PathVector::zero(f);
    for (c, word) in terms {
        let path = match trivial_vertex(q, word) {
            Some(t) => q.trivial(t),
            None => {
                let labels: Vec<&str> = word.iter().map(String::as_str).collect();
                q.path_from_labels(&labels)?
            }
        };
        v.add_term(path, f.from_rational(c)?);
    }
    Ok(v)
}

fn trivial_vertex(q: &Quiver, word: &[String]) -> Option<usize> {
    match word {
        [w] if q.arrow_by_label(w).is_err() => w.strip_prefix("e_").and_then(|v| q.vertex(v).ok()),
        _ => None,
    }
}

/// Compiles the described algebra over `f` with the given admissibility cap.
pub fn algebra<F: Field>(f: &F, d: &AlgebraDescription, cap: usize) -> Result<BoundQuiverAlgebra<F>, CliError> {
    let q = quiver(d)?;
    let rels = d
        .relations
        .iter()
        .map(|r| {
            let terms: Vec<_> = r.iter().map(|t| (t.coefficient.clone(), t.word.clone())).collect();
            combination(f, &q, &terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoundQuiverAlgebra::build(f, q, rels, cap)?)
}

/// Parses `2 alpha*beta - e_1` into an element of the algebra.
pub fn element<F: Field>(alg: &BoundQuiverAlgebra<F>, d: &AlgebraDescription, text: &str) -> Result<AlgebraElement<F>, CliError> {
    let terms = parse_element_terms(d, text).map_err(|e| CliError::Usage(format!("element `{text}`: {e}")))?;
    let v = combination(alg.field(), alg.quiver(), &terms)?;
    Ok(alg.reduce(&v))
}

/// Parses a comma-separated vertex list.
pub fn vertex_set<F: Field>(alg: &BoundQuiverAlgebra<F>, text: &str) -> Result<Idempotent, CliError> {
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Idempotent::from_names(alg, &names).map_err(|e| CliError::Usage(format!("vertex set `{text}`: {e}")))
}

pub fn vertex<F: Field>(alg: &BoundQuiverAlgebra<F>, name: &str) -> Result<usize, CliError> {
    alg.quiver().vertex(name).map_err(|e| CliError::Usage(e.to_string()))
}
