//! Named specifications reproducing the coordinates of the worked examples.

use serde_json::{Map, Value};

use super::{
    JoinSpec, LinearChangeSpec, PolyMapSpec, SpecTarget, ToricSpec, VarietySpec,
    DEFAULT_CHANGE_HEIGHT,
};
use crate::error::{arg_err, Error, Result};
use crate::exactlin::{rational_from_i64, Rational, SparsePolynomial};
use crate::matroid::GroundSet;
use crate::polytope::{dilated_simplex, grid, hull_points, toric_from_points};

/// Threefold polytope points in the order listed with its exponent matrix.
pub const THREEFOLD_POINTS: [[i64; 3]; 8] = [
    [0, 0, 1],
    [1, 0, 2],
    [0, 2, 1],
    [2, 2, 1],
    [1, 1, 0],
    [1, 1, 1],
    [1, 2, 1],
    [0, 1, 1],
];

/// Vertices of the threefold polytope.
pub const THREEFOLD_VERTICES: [[i64; 3]; 5] =
    [[0, 0, 1], [1, 0, 2], [0, 2, 1], [2, 2, 1], [1, 1, 0]];

/// `(name, parameters, summary)` for every builtin.
pub const BUILTINS: &[(&str, &str, &str)] = &[
    (
        "veronese",
        "n=2, d=3",
        "Veronese cone of degree d over P^n, lattice points of dΔ",
    ),
    (
        "table1-X1",
        "",
        "quadratic Veronese of P^3 in monomial coordinates z12..z45",
    ),
    (
        "table1-X2",
        "",
        "the same variety as the Cayley-Menger variety CM_{1,5}",
    ),
    (
        "table1-X3",
        "seed=0",
        "the quadratic Veronese of P^3 in seeded generic coordinates",
    ),
    (
        "cayley_menger",
        "d=1, n=5",
        "squared pairwise distances of n points in dimension d",
    ),
    (
        "sym_rank_one",
        "n=8",
        "symmetric n x n matrices of rank one, coordinates a{i}_{j}, i<=j",
    ),
    (
        "segre",
        "m=4, n=4",
        "m x n matrices of rank one, coordinates b{i}_{j}",
    ),
    (
        "rational_normal_curve",
        "degree=4, seed (optional)",
        "rational normal curve, optionally in generic coordinates",
    ),
    (
        "coloop_extension",
        "seed=0",
        "cone over a generic rational normal quartic, coloop z6",
    ),
    (
        "p1xp2_12",
        "",
        "P^1 x P^2 embedded by O(1,2), columns as in the displayed matrix",
    ),
    (
        "p1xp1_23",
        "",
        "P^1 x P^1 embedded by O(2,3), the 3x2 lattice rectangle",
    ),
    (
        "threefold_P",
        "",
        "toric threefold of the 8 listed lattice points, columns z1..z8",
    ),
    (
        "threefold_Q",
        "",
        "hull of the threefold points and (1,0,1); the 8 points come first",
    ),
    ("lines", "", "join of two lines in K^3"),
    ("monomial_2x2", "", "the map (s,t,u,v) -> (su, sv, tu, tv)"),
];

fn param_u64(params: &Map<String, Value>, key: &str, default: Option<u64>) -> Result<u64> {
    match params.get(key) {
        None => default.ok_or_else(|| Error::Argument(format!("missing parameter {key}"))),
        Some(v) => v
            .as_u64()
            .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
            .ok_or_else(|| {
                Error::Argument(format!("parameter {key} must be a nonnegative integer"))
            }),
    }
}

fn param_opt_u64(params: &Map<String, Value>, key: &str) -> Result<Option<u64>> {
    if params.contains_key(key) {
        param_u64(params, key, None).map(Some)
    } else {
        Ok(None)
    }
}

fn check_params(name: &str, params: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return arg_err(format!("builtin {name} has no parameter {k}"));
        }
    }
    Ok(())
}

fn small(v: u64, what: &str, lo: u64, hi: u64) -> Result<usize> {
    if v < lo || v > hi {
        return arg_err(format!("{what} must lie in [{lo}, {hi}]"));
    }
    Ok(v as usize)
}

fn pair_label(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n <= 9 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

/// Veronese cone of degree `d` over `P^n`.
pub fn veronese(n: usize, d: u32) -> Result<ToricSpec> {
    toric_from_points(&dilated_simplex(n, d)?)
}

/// `x_i x_j` for `1 <= i <= j <= 4`, labelled so that `z_{i5}` is the
/// square `x_i^2` and `z_{ij}` (j < 5) is `x_i x_j`.
pub fn table1_x1() -> Result<ToricSpec> {
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=4usize {
        for j in i + 1..=5usize {
            let mut e = vec![0i64; 4];
            if j == 5 {
                e[i - 1] = 2;
            } else {
                e[i - 1] = 1;
                e[j - 1] = 1;
            }
            cols.push(e);
            labels.push(format!("z{i}{j}"));
        }
    }
    ToricSpec::from_columns(&cols, false, Some(GroundSet::new(labels)?))
}

/// The change `w_{i5} = z_{i5}`, `w_{ij} = z_{i5} + z_{j5} - 2 z_{ij}` taking
/// monomial coordinates to squared distances (with the fifth point at the origin).
pub fn table1_distance_change() -> Result<Vec<Vec<i64>>> {
    let spec = table1_x1()?;
    let g = spec.labels();
    let n = g.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 1..=4usize {
        for j in i + 1..=5usize {
            let r = g.index_of(&format!("z{i}{j}"))?;
            if j == 5 {
                rows[r][r] = 1;
            } else {
                rows[r][g.index_of(&format!("z{i}5"))?] = 1;
                rows[r][g.index_of(&format!("z{j}5"))?] = 1;
                rows[r][r] = -2;
            }
        }
    }
    Ok(rows)
}

/// `z_{ij} = sum_k (p_{ik} - p_{jk})^2` for `i < j`, in variables `p{i}_{k}`.
pub fn cayley_menger(d: usize, n: usize) -> Result<PolyMapSpec> {
    if d == 0 || n < 2 {
        return arg_err("Cayley-Menger needs d >= 1 and n >= 2");
    }
    let m = d * n;
    let var = |i: usize, k: usize| SparsePolynomial::var(m, (i - 1) * d + (k - 1));
    let vars: Vec<String> = (1..=n)
        .flat_map(|i| (1..=d).map(move |k| format!("p{i}_{k}")))
        .collect();
    let mut comps = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut f = SparsePolynomial::zero(m);
            for k in 1..=d {
                f = &f + &(&var(i, k) - &var(j, k)).pow(2);
            }
            comps.push(f);
            labels.push(pair_label("z", i, j, n));
        }
    }
    PolyMapSpec::new(vars, comps, Some(GroundSet::new(labels)?))
}

/// `a_{ij} = x_i x_j`, `i <= j`, upper triangle in row-major order.
pub fn sym_rank_one(n: usize) -> Result<ToricSpec> {
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mut e = vec![0i64; n];
            e[i - 1] += 1;
            e[j - 1] += 1;
            cols.push(e);
            labels.push(format!("a{i}_{j}"));
        }
    }
    ToricSpec::from_columns(&cols, false, Some(GroundSet::new(labels)?))
}

/// `b_{ij} = x_i y_j`, row-major.
pub fn segre(m: usize, n: usize) -> Result<ToricSpec> {
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            let mut e = vec![0i64; m + n];
            e[i - 1] = 1;
            e[m + j - 1] = 1;
            cols.push(e);
            labels.push(format!("b{i}_{j}"));
        }
    }
    ToricSpec::from_columns(&cols, false, Some(GroundSet::new(labels)?))
}

/// `z_{i+1} = s^{deg-i} t^i`, labels `z1..`.
pub fn rational_normal_curve(degree: usize) -> Result<ToricSpec> {
    if degree == 0 {
        return arg_err("degree must be positive");
    }
    let deg = degree as i64;
    let cols: Vec<Vec<i64>> = (0..=deg).map(|i| vec![deg - i, i]).collect();
    ToricSpec::from_columns(&cols, false, Some(GroundSet::numbered("z", 1, degree + 1)?))
}

/// The quartic curve `z1..z5` in generic coordinates with a free sixth coordinate.
pub fn coloop_extension(seed: u64) -> Result<LinearChangeSpec> {
    let mut cols: Vec<Vec<i64>> = (0..=4).map(|i| vec![4 - i, i, 0]).collect();
    cols.push(vec![0, 0, 1]);
    let inner = ToricSpec::from_columns(&cols, false, Some(GroundSet::numbered("z", 1, 6)?))?;
    let g = super::generic_integer_matrix(5, seed, DEFAULT_CHANGE_HEIGHT)?;
    let mut rows = vec![vec![0i64; 6]; 6];
    for i in 0..5 {
        rows[i][..5].copy_from_slice(&g[i]);
    }
    rows[5][5] = 1;
    LinearChangeSpec::new(inner.into(), rational_from_i64(&rows)?)
}

/// Columns `(a; b, c)` in the displayed order: `a` slowest, then `(b, c)` by
/// degree as `1, x, y, x^2, xy, y^2`.
pub fn p1xp2_12() -> Result<ToricSpec> {
    let quad = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
    let cols: Vec<Vec<i64>> = (0..=1)
        .flat_map(|a| quad.iter().map(move |q| vec![a, q[0], q[1]]))
        .collect();
    ToricSpec::from_columns(&cols, true, Some(GroundSet::numbered("z", 1, 12)?))
}

pub fn p1xp1_23() -> Result<ToricSpec> {
    toric_from_points(&grid(&[3, 2])?)
}

pub fn threefold_p() -> Result<ToricSpec> {
    let cols: Vec<Vec<i64>> = THREEFOLD_POINTS.iter().map(|p| p.to_vec()).collect();
    ToricSpec::from_columns(&cols, true, Some(GroundSet::numbered("z", 1, 8)?))
}

/// Lattice points of the hull of the threefold vertices and `extra`, with
/// the eight threefold points first and the rest in colex order.
pub fn threefold_containing(extra: &[[i64; 3]]) -> Result<ToricSpec> {
    let mut verts: Vec<Vec<i64>> = THREEFOLD_VERTICES.iter().map(|p| p.to_vec()).collect();
    verts.extend(extra.iter().map(|p| p.to_vec()));
    let hull = hull_points(&verts)?;
    let mut cols: Vec<Vec<i64>> = THREEFOLD_POINTS.iter().map(|p| p.to_vec()).collect();
    for p in hull.points() {
        if !cols.contains(p) {
            cols.push(p.clone());
        }
    }
    if cols.len() != hull.len() {
        return arg_err("hull does not contain the threefold points");
    }
    let n = cols.len();
    ToricSpec::from_columns(&cols, true, Some(GroundSet::numbered("z", 1, n)?))
}

/// The lines `t(1,1,1)` and `t(1,-1,2)` in `K^3` and their join.
pub fn lines() -> Result<JoinSpec> {
    let labels = GroundSet::numbered("z", 1, 3)?;
    let a = PolyMapSpec::parse(&["t"], &["t", "t", "t"], Some(labels.clone()))?;
    let b = PolyMapSpec::parse(&["t"], &["t", "-t", "2*t"], Some(labels))?;
    JoinSpec::new(vec![a.into(), b.into()])
}

pub fn monomial_2x2() -> Result<PolyMapSpec> {
    PolyMapSpec::parse(&["s", "t", "u", "v"], &["s*u", "s*v", "t*u", "t*v"], None)
}

/// Looks up a builtin by name.
pub fn builtin(name: &str, params: &Map<String, Value>) -> Result<SpecTarget> {
    let variety = |v: VarietySpec| Ok(SpecTarget::Variety(v));
    match name {
        "veronese" => {
            check_params(name, params, &["n", "d"])?;
            let n = small(param_u64(params, "n", Some(2))?, "n", 1, 6)?;
            let d = small(param_u64(params, "d", Some(3))?, "d", 1, 12)?;
            variety(veronese(n, d as u32)?.into())
        }
        "table1-X1" => {
            check_params(name, params, &[])?;
            variety(table1_x1()?.into())
        }
        "table1-X2" => {
            check_params(name, params, &[])?;
            variety(cayley_menger(1, 5)?.into())
        }
        "table1-X3" => {
            check_params(name, params, &["seed"])?;
            let seed = param_u64(params, "seed", Some(0))?;
            variety(
                LinearChangeSpec::seeded(table1_x1()?.into(), seed, DEFAULT_CHANGE_HEIGHT)?.into(),
            )
        }
        "cayley_menger" => {
            check_params(name, params, &["d", "n"])?;
            let d = small(param_u64(params, "d", Some(1))?, "d", 1, 8)?;
            let n = small(param_u64(params, "n", Some(5))?, "n", 2, 11)?;
            variety(cayley_menger(d, n)?.into())
        }
        "sym_rank_one" => {
            check_params(name, params, &["n"])?;
            let n = small(param_u64(params, "n", Some(8))?, "n", 1, 10)?;
            variety(sym_rank_one(n)?.into())
        }
        "segre" => {
            check_params(name, params, &["m", "n"])?;
            let m = small(param_u64(params, "m", Some(4))?, "m", 1, 32)?;
            let n = small(param_u64(params, "n", Some(4))?, "n", 1, 32)?;
            variety(segre(m, n)?.into())
        }
        "rational_normal_curve" => {
            check_params(name, params, &["degree", "seed"])?;
            let deg = small(param_u64(params, "degree", Some(4))?, "degree", 1, 63)?;
            let curve = rational_normal_curve(deg)?;
            match param_opt_u64(params, "seed")? {
                Some(seed) => variety(
                    LinearChangeSpec::seeded(curve.into(), seed, DEFAULT_CHANGE_HEIGHT)?.into(),
                ),
                None => variety(curve.into()),
            }
        }
        "coloop_extension" => {
            check_params(name, params, &["seed"])?;
            variety(coloop_extension(param_u64(params, "seed", Some(0))?)?.into())
        }
        "p1xp2_12" => {
            check_params(name, params, &[])?;
            variety(p1xp2_12()?.into())
        }
        "p1xp1_23" => {
            check_params(name, params, &[])?;
            variety(p1xp1_23()?.into())
        }
        "threefold_P" => {
            check_params(name, params, &[])?;
            variety(threefold_p()?.into())
        }
        "threefold_Q" => {
            check_params(name, params, &[])?;
            variety(threefold_containing(&[[1, 0, 1]])?.into())
        }
        "lines" => {
            check_params(name, params, &[])?;
            Ok(SpecTarget::Join(lines()?))
        }
        "monomial_2x2" => {
            check_params(name, params, &[])?;
            variety(monomial_2x2()?.into())
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// `A_2` entries as linear forms in the `w` coordinates: `2 w_{i5}` on the
/// diagonal and `w_{i5} + w_{j5} - w_{ij}` off it.
pub fn table1_a2_entry(i: usize, j: usize, labels: &GroundSet) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::from_integer(0.into()); labels.len()];
    let one = Rational::from_integer(1.into());
    if i == j {
        v[labels.index_of(&format!("z{i}5"))?] = Rational::from_integer(2.into());
    } else {
        let (i, j) = (i.min(j), i.max(j));
        v[labels.index_of(&format!("z{i}5"))?] += &one;
        v[labels.index_of(&format!("z{j}5"))?] += &one;
        v[labels.index_of(&format!("z{i}{j}"))?] -= &one;
    }
    Ok(v)
}
