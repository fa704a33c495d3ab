//! Quivers, paths and formal linear combinations of paths.
//!
//! Paths compose left to right: `ab` means "first `a`, then `b`", so the
//! target of `a` must equal the source of `b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are addressed by declaration index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver { vertices: Vec::new(), arrows: Vec::new(), vertex_index: HashMap::new(), arrow_index: HashMap::new() };
        for v in vertices {
            let v = v.into();
            if q.vertex_index.contains_key(&v) {
                return Err(Error::DuplicateVertex(v));
            }
            q.vertex_index.insert(v.clone(), q.vertices.len());
            q.vertices.push(v);
        }
        for (label, s, t) in arrows {
            let source = q.vertex(&s)?;
            let target = q.vertex(&t)?;
            if q.arrow_index.contains_key(&label) {
                return Err(Error::DuplicateArrow(label));
            }
            q.arrow_index.insert(label.clone(), q.arrows.len());
            q.arrows.push(Arrow { label, source, target });
        }
        Ok(q)
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(vertices.iter().copied(), arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<usize> {
        self.arrow_index.get(label).copied().ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn loops_at(&self, v: usize) -> Vec<usize> {
        self.arrows_from(v).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn trivial(&self, v: usize) -> Path {
        assert!(v < self.vertices.len(), "vertex out of range");
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable(String::new()));
        };
        let mut p = self.arrow_path(first);
        for &a in &arrows[1..] {
            p = self.compose(&p, &self.arrow_path(a)).ok_or_else(|| Error::NotComposable(self.labels(arrows)))?;
        }
        Ok(p)
    }

    /// Builds a path from arrow labels.
    pub fn path_from_labels(&self, labels: &[&str]) -> Result<Path> {
        let idx = labels.iter().map(|l| self.arrow_by_label(l)).collect::<Result<Vec<_>>>()?;
        self.path(&idx)
    }

    fn labels(&self, arrows: &[usize]) -> String {
        arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }

    /// Concatenation `pq`, or `None` when the target of `p` is not the source of `q`.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        p.compose(q)
    }

    /// All paths of exactly `len` arrows, in length-lex order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        if len == 0 {
            return (0..self.vertices.len()).map(Path::trivial).collect();
        }
        let mut out: Vec<Path> = (0..self.arrows.len()).map(|a| self.arrow_path(a)).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &out {
                for a in self.arrows_from(p.target) {
                    next.push(p.extend(a, self.arrows[a].target));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Number of paths of each length `0..=len`, saturating.
    pub fn path_counts(&self, len: usize) -> Vec<usize> {
        let mut per_vertex = vec![1usize; self.vertices.len()];
        let mut counts = vec![self.vertices.len()];
        for _ in 0..len {
            let mut next = vec![0usize; self.vertices.len()];
            for arr in &self.arrows {
                next[arr.target] = next[arr.target].saturating_add(per_vertex[arr.source]);
            }
            counts.push(next.iter().fold(0usize, |a, &b| a.saturating_add(b)));
            per_vertex = next;
        }
        counts
    }

    /// All paths of length at most `max_len`, ordered length-first then by arrow index.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        (0..=max_len).flat_map(|l| self.paths_of_length(l)).collect()
    }

    /// Paths from `s` to `t` with length in `min..=max`, in length-lex order.
    pub fn paths_between(&self, s: usize, t: usize, min: usize, max: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier = vec![Path::trivial(s)];
        for len in 0..=max {
            if len >= min {
                out.extend(frontier.iter().filter(|p| p.target == t).cloned());
            }
            if len == max {
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.target) {
                    next.push(p.extend(a, self.arrows[a].target));
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// The same vertices with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self.arrows.iter().map(|a| (a.label.clone(), self.vertices[a.target].clone(), self.vertices[a.source].clone()));
        Quiver::new(self.vertices.iter().cloned(), arrows).expect("opposite of a valid quiver is valid")
    }

    /// The full subquiver on `keep`; returns it with the vertex and arrow index maps.
    pub fn full_subquiver(&self, keep: &BTreeSet<usize>) -> (Quiver, Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut vmap = vec![None; self.vertices.len()];
        let mut names = Vec::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if keep.contains(&i) {
                vmap[i] = Some(names.len());
                names.push(name.clone());
            }
        }
        let mut amap = vec![None; self.arrows.len()];
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if keep.contains(&a.source) && keep.contains(&a.target) {
                amap[i] = Some(arrows.len());
                arrows.push((a.label.clone(), a.source, a.target));
            }
        }
        let q = Quiver::new(names, arrows.into_iter().map(|(l, s, t)| (l, self.vertices[s].clone(), self.vertices[t].clone())))
            .expect("subquiver of a valid quiver is valid");
        (q, vmap, amap)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.source])
        } else {
            self.labels(&p.arrows)
        }
    }
}

/// A path in a quiver. The trivial path at `v` has no arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    /// Present for symmetry with `len`; a path is never empty as a set of vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.target != q.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { source: self.source, target: q.target, arrows })
    }

    fn extend(&self, a: usize, new_target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { source: self.source, target: new_target, arrows }
    }

    /// Vertices visited, including both endpoints.
    pub fn vertices_visited(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.source];
        out.extend(self.arrows.iter().map(|&a| q.arrow(a).target));
        out
    }

    /// The path read backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    /// Subpath of arrows `from..to`; `q` supplies the endpoints.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            let v = if from == 0 { self.source } else { q.arrow(self.arrows[from - 1]).target };
            return Path::trivial(v);
        }
        let arrows = self.arrows[from..to].to_vec();
        Path { source: q.arrow(arrows[0]).source, target: q.arrow(arrows[arrows.len() - 1]).target, arrows }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows.len().cmp(&other.arrows.len()).then_with(|| self.arrows.cmp(&other.arrows)).then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with no zero coefficients.
pub struct PathVector<F: Field> {
    field: F,
    terms: BTreeMap<Path, F::Elem>,
}

impl<F: Field> Clone for PathVector<F> {
    fn clone(&self) -> Self {
        PathVector { field: self.field.clone(), terms: self.terms.clone() }
    }
}

impl<F: Field> PartialEq for PathVector<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for PathVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{}*{:?}", self.field.format(c), p.arrows)).collect();
        write!(f, "PathVector[{}]", parts.join(" + "))
    }
}

impl<F: Field> PathVector<F> {
    pub fn zero(field: &F) -> Self {
        PathVector { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn from_path(field: &F, p: Path) -> Self {
        let mut v = Self::zero(field);
        v.add_term(p, field.one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, F::Elem)>>(field: &F, terms: I) -> Self {
        let mut v = Self::zero(field);
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn add_term(&mut self, p: Path, c: F::Elem) {
        let f = &self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&p);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> F::Elem {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Common `(source, target)` of every term, if there is one.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|p| (p.source, p.target) == ends).then_some(ends)
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    /// `u * self * v`, dropping terms that do not compose.
    pub fn sandwich(&self, u: &Path, v: &Path) -> Self {
        let mut out = Self::zero(&self.field);
        for (p, c) in &self.terms {
            if let Some(up) = u.compose(p) {
                if let Some(upv) = up.compose(v) {
                    out.add_term(upv, c.clone());
                }
            }
        }
        out
    }

    /// Each path read backwards.
    pub fn reversed(&self) -> Self {
        Self::from_terms(&self.field, self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Self::from_terms(&self.field, self.terms.iter().map(|(p, c)| (p.clone(), self.field.mul(c, s))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn format(&self, q: &Quiver) -> String {
        let terms = self.terms.iter().map(|(p, c)| (self.field.format(c), q.format_path(p)));
        format_combination(terms)
    }
}

/// Joins `(coefficient, path)` pairs as `a - 2 b + 1/3 c`, dropping unit coefficients.
pub fn format_combination<I: IntoIterator<Item = (String, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (c, p) in terms {
        let (neg, c) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if c != "1" {
            out.push_str(&c);
            out.push(' ');
        }
        out.push_str(&p);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An oriented cycle: a path of length at least one that returns to its source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    pub fn new(path: Path) -> Result<Self> {
        if path.is_trivial() || path.source != path.target {
            return Err(Error::NotACycle);
        }
        Ok(Cycle { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rotations starting at each arrow in turn, the cycle itself first.
    pub fn cyclic_permutations(&self, q: &Quiver) -> Vec<Cycle> {
        let arrows = &self.path.arrows;
        (0..arrows.len())
            .map(|i| {
                let mut rot = arrows[i..].to_vec();
                rot.extend_from_slice(&arrows[..i]);
                let v = q.arrow(rot[0]).source;
                Cycle { path: Path { source: v, target: v, arrows: rot } }
            })
            .collect()
    }

    /// Starting vertices of the cycle's arrows.
    pub fn support(&self, q: &Quiver) -> BTreeSet<usize> {
        self.path.arrows.iter().map(|&a| q.arrow(a).source).collect()
    }

    /// Shortest cycle whose power equals this one.
    pub fn primitive_root(&self) -> Cycle {
        let arrows = &self.path.arrows;
        let n = arrows.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| arrows[i] == arrows[i - d]) {
                let arrows = arrows[..d].to_vec();
                return Cycle { path: Path { source: self.path.source, target: self.path.source, arrows } };
            }
        }
        unreachable!("d = n always divides")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().len() == self.len()
    }

    /// Least rotation under the path order; used as the class representative.
    pub fn canonical_rotation(&self, q: &Quiver) -> Cycle {
        self.cyclic_permutations(q).into_iter().min().expect("cycles are nonempty")
    }
}
