//! Exact rank routes agree with each other and with sampled evaluation.

use algmat::exactlin::{
    rank_mod_p, rank_rational, rank_symbolic, rational_from_i64, FpMatrix, Matrix, PolyMatrix,
    PrimeField, Rational, SparsePolynomial,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(nvars: usize, terms: &[(Vec<u32>, i64)]) -> SparsePolynomial {
    SparsePolynomial::from_terms(
        nvars,
        terms
            .iter()
            .map(|(e, c)| (e.clone(), Rational::from_integer((*c).into()))),
    )
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = SparsePolynomial> {
    let term = (prop::collection::vec(0u32..=3, nvars), -3i64..=3)
        .prop_filter("degree at most 3", |(e, _)| e.iter().sum::<u32>() <= 3);
    prop::collection::vec(term, 0..=3).prop_map(move |t| poly(nvars, &t))
}

/// Matrices of sparse polynomials, some rows replaced by combinations of
/// earlier rows so that rank deficiency is common.
fn poly_matrix() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=4, 1usize..=6, 1usize..=8).prop_flat_map(|(nv, r, c)| {
        (
            prop::collection::vec(prop::collection::vec(poly_strategy(nv), c), r),
            prop::collection::vec((any::<bool>(), 0usize..6, -2i64..=2), r),
        )
            .prop_map(move |(mut rows, deps)| {
                for (i, (dep, src, k)) in deps.into_iter().enumerate() {
                    if dep && i > 0 {
                        let s = src % i;
                        let f = SparsePolynomial::var(nv, (i + s) % nv);
                        let scale = SparsePolynomial::from_int(nv, k);
                        let combo: Vec<SparsePolynomial> = (0..c)
                            .map(|j| &(&rows[s][j] * &f) + &(&rows[(s + 1) % i.max(1)][j] * &scale))
                            .collect();
                        rows[i] = combo;
                    }
                }
                Matrix::from_rows(rows).unwrap()
            })
    })
}

fn evaluate(m: &PolyMatrix, field: PrimeField, point: &[u64]) -> FpMatrix {
    let data = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j).eval_mod(field, point).unwrap()
    });
    FpMatrix::new(field, data)
}

fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let k = rng.gen_range(-2..=2);
            for j in 0..n {
                u[a][j] += k * u[b][j];
            }
        }
    }
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    u.swap(a, b);
    u
}

fn mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symbolic_rank_is_max_of_evaluations(m in poly_matrix(), seed in any::<u64>()) {
        let field = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = m.get(0, 0).nvars();
        let sampled = (0..20)
            .map(|_| {
                let pt: Vec<u64> = (0..nv).map(|_| rng.gen_range(1..field.modulus())).collect();
                rank_mod_p(&evaluate(&m, field, &pt))
            })
            .max()
            .unwrap();
        prop_assert_eq!(rank_symbolic(&m), sampled);
    }

    #[test]
    fn rank_invariant_under_unimodular_rows(
        rows in (1usize..=6, 1usize..=7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = unimodular(rows.len(), &mut rng);
        let moved = mul_i64(&u, &rows);
        let r = rank_rational(&rational_from_i64(&rows).unwrap());
        prop_assert_eq!(rank_rational(&rational_from_i64(&moved).unwrap()), r);
        let field = PrimeField::default();
        prop_assert_eq!(FpMatrix::from_i64_rows(field, rows.clone()).unwrap().rank(), r);
        prop_assert_eq!(FpMatrix::from_i64_rows(field, moved).unwrap().rank(), r);
        let mut permuted = rows.clone();
        permuted.reverse();
        prop_assert_eq!(rank_rational(&rational_from_i64(&permuted).unwrap()), r);
    }
}

#[test]
fn symbolic_rank_examples() {
    let one = |e: Vec<u32>| poly(2, &[(e, 1)]);
    let m = Matrix::from_rows(vec![vec![one(vec![2, 1])]]).unwrap();
    assert_eq!(rank_symbolic(&m), 1);
    let z = Matrix::from_fn(3, 3, |_, _| SparsePolynomial::zero(2));
    assert_eq!(rank_symbolic(&z), 0);
    let id = FpMatrix::identity(PrimeField::default(), 2);
    assert_eq!(rank_mod_p(&id), 2);
    assert_eq!(rank_mod_p(&FpMatrix::zeros(PrimeField::default(), 0, 0)), 0);
}

#[test]
fn partial_derivative_examples() {
    let vars = ["s".to_string(), "t".into(), "u".into(), "v".into()];
    let su = algmat::exactlin::parse_poly("s*u", &vars).unwrap();
    assert_eq!(
        su.partial(0).unwrap(),
        algmat::exactlin::parse_poly("u", &vars).unwrap()
    );
    assert!(algmat::exactlin::parse_poly("7", &vars)
        .unwrap()
        .partial(1)
        .unwrap()
        .is_zero());
    let xy = ["x".to_string(), "y".into()];
    let sq = algmat::exactlin::parse_poly("(x-y)^2", &xy).unwrap();
    assert_eq!(
        sq.partial(0).unwrap(),
        algmat::exactlin::parse_poly("2*x-2*y", &xy).unwrap()
    );
    assert!(sq.partial(2).is_err());
}
