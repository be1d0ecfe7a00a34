//! Invariants of specifications, Jacobians and joins.

use algmat::exactlin::{FpMatrix, Matrix, PrimeField};
use algmat::geometry::{
    builtin, compose_linear, lines, monomial_2x2, table1_x1, JoinSpec, LinearChangeSpec, Sampler,
    SpecTarget, ToricSpec, VarietySpec, BUILTINS, DEFAULT_CHANGE_HEIGHT,
};
use algmat::matroid::{ElementSet, Matroid};
use algmat::terracini::{algebraic_matroid, jacobian_matroid, MatroidComputationConfig};
use proptest::prelude::*;

fn toric_builtins() -> Vec<(String, ToricSpec)> {
    BUILTINS
        .iter()
        .filter_map(
            |(name, _, _)| match builtin(name, &Default::default()).unwrap() {
                SpecTarget::Variety(VarietySpec::Toric(t)) => Some((name.to_string(), t)),
                _ => None,
            },
        )
        .collect()
}

fn column_matroid_of(m: &FpMatrix, like: &Matroid) -> Vec<usize> {
    (0..1u64 << like.len().min(12))
        .map(|b| m.column_rank(ElementSet::from_bits(b).iter()))
        .collect()
}

#[test]
fn toric_exact_and_jacobian_routes_agree() {
    let cfg = MatroidComputationConfig::default();
    for (name, t) in toric_builtins() {
        let exact = t.column_matroid().unwrap();
        let sampled =
            jacobian_matroid(&JoinSpec::from(VarietySpec::Toric(t.clone())), &cfg).unwrap();
        if t.coordinate_count() <= 16 {
            assert!(exact.same_as(&sampled).unwrap(), "{name}");
        } else {
            // too large to enumerate: compare on many random subsets
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..2000 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let set = ElementSet::from_bits(state & ((1u64 << t.coordinate_count()) - 1));
                assert_eq!(
                    exact.rank(set).unwrap(),
                    sampled.rank(set).unwrap(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn join_rank_monotone_and_bounded() {
    let cfg = MatroidComputationConfig::default();
    for (name, t) in toric_builtins() {
        let v = VarietySpec::Toric(t);
        let n = v.coordinate_count();
        let dim = algebraic_matroid(&v, &cfg).unwrap().full_rank();
        let mut last = 0;
        for s in 1..=4 {
            let r = jacobian_matroid(&JoinSpec::secant(v.clone(), s).unwrap(), &cfg)
                .unwrap()
                .full_rank();
            assert!(r >= last, "{name}: rank drops at s={s}");
            assert!(
                r <= n.min(s * dim),
                "{name}: rank {r} above the expected bound"
            );
            last = r;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn torus_scaling_preserves_column_matroid(
        point in prop::collection::vec(1u64..1_000_000, 3),
        scale in prop::collection::vec(1u64..1_000_000, 3),
    ) {
        let f = PrimeField::default();
        let t = algmat::geometry::veronese(2, 3).unwrap();
        let a = t.jacobian_at(f, &point).unwrap();
        let scaled: Vec<u64> = point.iter().zip(&scale).map(|(p, s)| f.mul(*p, *s)).collect();
        let b = t.jacobian_at(f, &scaled).unwrap();
        let m = t.column_matroid().unwrap();
        prop_assert_eq!(column_matroid_of(&a, &m), column_matroid_of(&b, &m));
    }
}

#[test]
fn monomial_map_matroid_is_rank_three() {
    // The displayed circuit uses all four coordinates: the ideal is one
    // quadric, so every 3-subset is independent.
    let m = algebraic_matroid(
        &monomial_2x2().unwrap().into(),
        &MatroidComputationConfig::default(),
    )
    .unwrap();
    assert!(m
        .same_as(
            &Matroid::uniform(4, 3)
                .unwrap()
                .relabel(m.ground().clone())
                .unwrap()
        )
        .unwrap());
    let f = PrimeField::default();
    let spec: VarietySpec = monomial_2x2().unwrap().into();
    let special = spec.jacobian_at(f, &[1, 0, 1, 0]).unwrap();
    assert_eq!(special.rank(), 3);
    assert_eq!(special.column_rank([3]), 0);
    let at_ones = spec.jacobian_at(f, &[1, 1, 1, 1]).unwrap();
    assert_eq!(at_ones.rank(), 3);
}

#[test]
fn lines_join_to_a_plane() {
    let cfg = MatroidComputationConfig::default();
    let j = lines().unwrap();
    for s in j.summands() {
        let m = algebraic_matroid(s, &cfg).unwrap();
        assert!(m
            .same_as(
                &Matroid::uniform(3, 1)
                    .unwrap()
                    .relabel(m.ground().clone())
                    .unwrap()
            )
            .unwrap());
    }
    let m = jacobian_matroid(&j, &cfg).unwrap();
    assert!(m
        .same_as(
            &Matroid::uniform(3, 2)
                .unwrap()
                .relabel(m.ground().clone())
                .unwrap()
        )
        .unwrap());
    // the same join after composing both lines with one coordinate change
    let change =
        algmat::exactlin::rational_from_i64(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
    let moved = JoinSpec::new(
        j.summands()
            .iter()
            .map(|s| compose_linear(s, &change).unwrap().into())
            .collect(),
    )
    .unwrap();
    assert_eq!(jacobian_matroid(&moved, &cfg).unwrap().full_rank(), 2);
}

#[test]
fn generic_change_of_quadric_veronese_is_uniform() {
    let x1: VarietySpec = table1_x1().unwrap().into();
    let x3: VarietySpec = LinearChangeSpec::seeded(x1, 0, DEFAULT_CHANGE_HEIGHT)
        .unwrap()
        .into();
    let m = algebraic_matroid(&x3, &MatroidComputationConfig::default()).unwrap();
    assert_eq!(m.base_count().unwrap(), 210);
}

#[test]
fn stacked_jacobian_of_sym_rank_one() {
    let s: VarietySpec = algmat::geometry::sym_rank_one(8).unwrap().into();
    let j = JoinSpec::secant(s, 2).unwrap();
    let f = PrimeField::default();
    let pts = Sampler::generic(5).sample_points(f, &j, 0).unwrap();
    assert_eq!(j.join_jacobian_at(f, &pts).unwrap().rank(), 15);
}

#[test]
fn constant_map_jacobian_is_zero() {
    let c = algmat::geometry::PolyMapSpec::parse(&["s", "t"], &["1", "2", "-3"], None).unwrap();
    let j = c.jacobian_at(PrimeField::default(), &[4, 9]).unwrap();
    assert_eq!(
        j,
        FpMatrix::new(PrimeField::default(), Matrix::from_fn(2, 3, |_, _| 0))
    );
}
