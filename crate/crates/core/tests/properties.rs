use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use noloop_core::algebra::BoundQuiverAlgebra;
use noloop_core::corpus::{self, CorpusOptions, RandomAlgebra};
use noloop_core::field::{Field, PrimeField, Rationals};
use noloop_core::linalg::{kernel_basis, rref, solve, Matrix, Subspace};
use noloop_core::module::FdModule;
use noloop_core::noloop::{enumerate_cycles, is_cyclically_free, is_cyclically_nonzero};
use noloop_core::quotient::{lambda_e, Idempotent};
use noloop_core::resolution::{ext1_matrix, minimal_resolution, resolve_simple};

macro_rules! with_alg {
    ($spec:expr, $alg:ident => $body:expr) => {
        match $spec.prime {
            None => {
                let $alg = $spec.build(&Rationals).unwrap();
                $body
            }
            Some(p) => {
                let $alg = $spec.build(&PrimeField::new(p).unwrap()).unwrap();
                $body
            }
        }
    };
}

fn matrix<F: Field>(f: &F, cols: usize, entries: &[i64]) -> Matrix<F> {
    let rows: Vec<&[i64]> = entries.chunks(cols).collect();
    Matrix::from_i64_rows(f, &rows)
}

fn linalg_laws<F: Field>(f: &F, cols: usize, entries: &[i64], rhs: &[i64]) {
    let m = matrix(f, cols, entries);
    let (r, pivots) = rref(&m);
    let (rr, pivots2) = rref(&r);
    assert_eq!(r, rr);
    assert_eq!(pivots, pivots2);
    let k = kernel_basis(&m);
    assert_eq!(m.rank() + k.dim(), m.cols());
    for v in k.basis() {
        assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
    }
    let b: Vec<F::Elem> = rhs.iter().take(m.rows()).map(|&x| f.from_i64(x)).collect();
    if let Some(x) = solve(&m, &b) {
        assert_eq!(m.mul_vec(&x), b);
    }
    let rows = Subspace::row_space(&m);
    for row in m.row_vectors() {
        let c = rows.membership(&row).expect("row lies in its row space");
        assert_eq!(rows.combine(&c), row);
    }
}

fn algebra_laws<F: Field>(alg: &BoundQuiverAlgebra<F>, rng: &mut ChaCha8Rng) {
    let d = alg.dim();
    for _ in 0..20 {
        let (x, y, z) =
            (alg.basis_element(rng.gen_range(0..d)), alg.basis_element(rng.gen_range(0..d)), alg.basis_element(rng.gen_range(0..d)));
        assert_eq!(alg.mul(&x, &alg.mul(&y, &z)), alg.mul(&alg.mul(&x, &y), &z));
    }
    let one = alg.one();
    for v in 0..alg.vertex_count() {
        let ev = alg.vertex_element(v);
        assert_eq!(alg.mul(&ev, &ev), ev);
        for w in (0..alg.vertex_count()).filter(|&w| w != v) {
            assert!(alg.is_zero(&alg.mul(&ev, &alg.vertex_element(w))));
        }
    }
    for i in 0..d {
        let b = alg.basis_element(i);
        assert_eq!(alg.mul(&one, &b), b);
        assert_eq!(alg.mul(&b, &one), b);
    }
    for r in alg.relations() {
        assert!(alg.is_zero(&alg.reduce(r)));
    }
    let n = alg.nilpotency_degree();
    for p in alg.quiver().paths_of_length(n) {
        assert!(alg.is_zero(&alg.reduce_path(&p)));
    }
    assert_eq!(alg.radical_power(n).dim(), 0);
    let e = Idempotent::new((0..alg.vertex_count()).filter(|_| rng.gen_bool(0.5)));
    let qe = lambda_e(alg, &e).unwrap();
    assert_eq!(qe.algebra.dim() + qe.killed.dim(), d);
    for _ in 0..20 {
        let (x, y) = (alg.basis_element(rng.gen_range(0..d)), alg.basis_element(rng.gen_range(0..d)));
        assert_eq!(qe.project(&alg.mul(&x, &y)), qe.algebra.mul(&qe.project(&x), &qe.project(&y)));
    }
}

fn resolution_laws<F: Field>(alg: &BoundQuiverAlgebra<F>, rng: &mut ChaCha8Rng) {
    let m = corpus::random_module(alg, 2, rng);
    let res = minimal_resolution(alg, &m, 4).unwrap();
    res.verify_exact(alg).unwrap();
    assert!(res.is_minimal(alg));
    // The cover induces an isomorphism on tops.
    assert_eq!(res.terms[0].multiplicities(alg.vertex_count()), m.top(alg));
    let ext = ext1_matrix(alg).unwrap();
    let q = alg.quiver();
    for (i, row) in ext.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(x, q.arrows().iter().filter(|a| a.source == i && a.target == j).count());
        }
    }
    // The dual of a simple is the simple of the opposite algebra.
    let op = alg.opposite().unwrap();
    for v in 0..alg.vertex_count() {
        let d = FdModule::simple(alg, v).dual();
        let actions = (0..q.arrow_count()).map(|a| d.action(a).clone()).collect();
        let dual = FdModule::new(&op, d.dims().to_vec(), actions).unwrap();
        let a = minimal_resolution(&op, &dual, 6).unwrap();
        let b = resolve_simple(&op, v, 6).unwrap();
        assert_eq!(a.terms, b.terms);
    }
}

fn cycle_laws<F: Field>(alg: &BoundQuiverAlgebra<F>, monomial: bool) {
    let q = alg.quiver();
    for c in enumerate_cycles(alg, 4) {
        let free = is_cyclically_free(alg, &c);
        if monomial {
            assert_eq!(free, is_cyclically_nonzero(alg, &c));
        }
        for r in c.cyclic_permutations(q) {
            assert_eq!(is_cyclically_free(alg, &r), free);
            assert_eq!(r.support(q), c.support(q));
        }
        let square = noloop_core::quiver::Cycle::new(c.path().compose(c.path()).unwrap()).unwrap();
        assert_eq!(square.primitive_root(), c);
        if is_cyclically_free(alg, &square) {
            assert!(free);
        }
        assert_eq!(square.support(q), c.support(q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_algebra(cols in 1usize..6, entries in prop::collection::vec(-3i64..=3, 1..36), rhs in prop::collection::vec(-3i64..=3, 36)) {
        let len = entries.len() / cols * cols;
        prop_assume!(len > 0);
        linalg_laws(&Rationals, cols, &entries[..len], &rhs);
        linalg_laws(&PrimeField::new(5).unwrap(), cols, &entries[..len], &rhs);
    }

    #[test]
    fn random_algebras(seed in 0u64..100_000) {
        let spec = RandomAlgebra::generate(seed, CorpusOptions::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        with_alg!(spec, alg => algebra_laws(&alg, &mut rng));
    }

    #[test]
    fn random_resolutions(seed in 0u64..100_000) {
        let spec = RandomAlgebra::generate(seed, CorpusOptions { max_dim: 20, ..Default::default() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        with_alg!(spec, alg => resolution_laws(&alg, &mut rng));
    }

    #[test]
    fn random_cycles(seed in 0u64..100_000, monomial in any::<bool>()) {
        let spec = RandomAlgebra::generate(seed, CorpusOptions { monomial, ..Default::default() });
        with_alg!(spec, alg => cycle_laws(&alg, monomial));
    }
}
