//! Lattice-point sets of small polytopes, their toric embeddings and
//! translate scans.
//!
//! Points are kept in colex order: the last coordinate is the most
//! significant. For the dilated triangle this lists the monomials as
//! `1, s, s^2, .., t, st, .., t^d`, matching the usual Veronese order.

use std::cmp::Ordering;
use std::collections::HashSet;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Error, Result};
use crate::exactlin::Rational;
use crate::geometry::ToricSpec;
use crate::matroid::{ElementSet, GroundSet};

/// Colex comparison of equal-length integer vectors.
pub fn colex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl LatticePointSet {
    /// Sorts and deduplicates `points`.
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return arg_err("lattice points need positive dimension");
        }
        if points.iter().any(|p| p.len() != dim) {
            return arg_err(format!("every point must have {dim} coordinates"));
        }
        points.sort_by(|a, b| colex_cmp(a, b));
        points.dedup();
        Ok(LatticePointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|q| colex_cmp(q, p)).ok()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.index_of(p).is_some()
    }

    pub fn translate(&self, offset: &[i64]) -> Result<Self> {
        if offset.len() != self.dim {
            return arg_err("offset dimension mismatch");
        }
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(offset).map(|(a, b)| a + b).collect())
            .collect();
        LatticePointSet::new(self.dim, pts)
    }

    /// Union with another set of the same dimension.
    pub fn union(&self, other: &LatticePointSet) -> Result<Self> {
        if other.dim != self.dim {
            return arg_err("dimension mismatch");
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        LatticePointSet::new(self.dim, pts)
    }
}

/// Nonnegative integer vectors of length `n` with coordinate sum at most `d`.
pub fn dilated_simplex(n: usize, d: u32) -> Result<LatticePointSet> {
    if n == 0 || d == 0 {
        return arg_err("simplex dimension and degree must be positive");
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[k] = v;
            rec(k + 1, left - v, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, i64::from(d), &mut cur, &mut out);
    LatticePointSet::new(n, out)
}

/// The integer box `[0, b_1] x .. x [0, b_k]`.
pub fn grid(bounds: &[u32]) -> Result<LatticePointSet> {
    if bounds.is_empty() {
        return arg_err("grid needs at least one bound");
    }
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=i64::from(b)).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    LatticePointSet::new(bounds.len(), out)
}

/// Cartesian product; coordinates of `a` come first.
pub fn product(a: &LatticePointSet, b: &LatticePointSet) -> Result<LatticePointSet> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a.points() {
        for q in b.points() {
            let mut r = p.clone();
            r.extend_from_slice(q);
            out.push(r);
        }
    }
    LatticePointSet::new(a.dim + b.dim, out)
}

/// Solves `a x = b` for a full-column-rank system; `None` when inconsistent.
fn solve_full_column_rank(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let p = (pivot_row..rows).find(|&r| !m[r][c].is_zero())?;
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].recip();
        for v in m[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=cols {
                    let t = &f * &m[pivot_row][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

fn in_hull_of(x: &[i64], vertices: &[&Vec<i64>]) -> bool {
    // barycentric system: sum l_i v_i = x, sum l_i = 1
    let d = x.len();
    let a: Vec<Vec<Rational>> = (0..=d)
        .map(|row| {
            vertices
                .iter()
                .map(|v| Rational::from_integer((if row < d { v[row] } else { 1 }).into()))
                .collect()
        })
        .collect();
    let b: Vec<Rational> = (0..=d)
        .map(|row| Rational::from_integer((if row < d { x[row] } else { 1 }).into()))
        .collect();
    solve_full_column_rank(&a, &b).is_some_and(|l| l.iter().all(|v| !v.is_negative()))
}

fn affinely_independent(vertices: &[&Vec<i64>]) -> bool {
    let rows: Vec<Vec<i64>> = vertices
        .iter()
        .map(|v| {
            let mut r = (*v).clone();
            r.push(1);
            r
        })
        .collect();
    match crate::exactlin::rational_from_i64(&rows) {
        Ok(m) => crate::exactlin::rank_rational(&m) == vertices.len(),
        Err(_) => false,
    }
}

/// Lattice points of the convex hull of `vertices` (dimension at most 3).
/// Membership uses Carathéodory: a point is in the hull iff it is a convex
/// combination of some affinely independent subset of the vertices.
pub fn hull_points(vertices: &[Vec<i64>]) -> Result<LatticePointSet> {
    let Some(first) = vertices.first() else {
        return arg_err("hull of an empty vertex list");
    };
    let d = first.len();
    if d == 0 || vertices.iter().any(|v| v.len() != d) {
        return arg_err("vertices must share a positive dimension");
    }
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "hulls in dimension {d} are not supported"
        )));
    }
    let mut verts = vertices.to_vec();
    verts.sort_by(|a, b| colex_cmp(a, b));
    verts.dedup();
    let mut simplices: Vec<Vec<&Vec<i64>>> = Vec::new();
    let n = verts.len();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() as usize > d + 1 {
            continue;
        }
        let s: Vec<&Vec<i64>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &verts[i])
            .collect();
        if affinely_independent(&s) {
            simplices.push(s);
        }
    }
    let lo: Vec<i64> = (0..d)
        .map(|k| verts.iter().map(|v| v[k]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|k| verts.iter().map(|v| v[k]).max().unwrap())
        .collect();
    let bounds: Vec<u32> = (0..d).map(|k| (hi[k] - lo[k]) as u32).collect();
    let mut out = Vec::new();
    for rel in grid(&bounds)?.points() {
        let x: Vec<i64> = rel.iter().zip(&lo).map(|(a, b)| a + b).collect();
        if simplices.iter().any(|s| in_hull_of(&x, s)) {
            out.push(x);
        }
    }
    LatticePointSet::new(d, out)
}

/// A translate of a pattern found inside a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMatch {
    pub offset: Vec<i64>,
    /// Indices into the scanned set, listed in pattern order (which is also
    /// ascending, since translation preserves colex order).
    pub indices: Vec<usize>,
}

impl PatternMatch {
    pub fn element_set(&self) -> Result<ElementSet> {
        if self.indices.iter().any(|&i| i >= 64) {
            return Err(Error::GroundTooLarge(
                self.indices.iter().max().unwrap() + 1,
            ));
        }
        Ok(ElementSet::from_indices(self.indices.iter().copied()))
    }
}

/// Every integer offset `o` with `o + pattern` inside `points`, in colex
/// order of the offsets.
pub fn scan_pattern(
    points: &LatticePointSet,
    pattern: &LatticePointSet,
) -> Result<Vec<PatternMatch>> {
    if points.dim != pattern.dim {
        return arg_err("point set and pattern dimensions differ");
    }
    let Some(anchor) = pattern.points.first() else {
        return Ok(Vec::new());
    };
    let mut offsets: Vec<Vec<i64>> = points
        .points
        .iter()
        .map(|p| p.iter().zip(anchor).map(|(a, b)| a - b).collect())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    offsets.sort_by(|a, b| colex_cmp(a, b));
    let mut out = Vec::new();
    for o in offsets {
        let indices: Option<Vec<usize>> = pattern
            .points
            .iter()
            .map(|q| {
                let t: Vec<i64> = q.iter().zip(&o).map(|(a, b)| a + b).collect();
                points.index_of(&t)
            })
            .collect();
        if let Some(indices) = indices {
            out.push(PatternMatch { offset: o, indices });
        }
    }
    Ok(out)
}

/// The toric cone of a lattice point set: one coordinate per point in
/// colex order, labelled `z0, z1, ..`, with the homogenizing row appended.
pub fn toric_from_points(points: &LatticePointSet) -> Result<ToricSpec> {
    if points.is_empty() {
        return arg_err("no lattice points");
    }
    let labels = GroundSet::numbered("z", 0, points.len())?;
    ToricSpec::from_columns(&points.points, true, Some(labels))
}

/// Polytope input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PolytopeInput {
    Points {
        dim: usize,
        points: Vec<Vec<i64>>,
    },
    Simplex {
        dim: usize,
        degree: u32,
    },
    Grid {
        #[serde(rename = "box")]
        bounds: Vec<u32>,
    },
    Hull {
        vertices: Vec<Vec<i64>>,
    },
    Product {
        factors: Vec<PolytopeInput>,
    },
}

impl PolytopeInput {
    pub fn to_points(&self) -> Result<LatticePointSet> {
        match self {
            PolytopeInput::Points { dim, points } => LatticePointSet::new(*dim, points.clone()),
            PolytopeInput::Simplex { dim, degree } => dilated_simplex(*dim, *degree),
            PolytopeInput::Grid { bounds } => grid(bounds),
            PolytopeInput::Hull { vertices } => hull_points(vertices),
            PolytopeInput::Product { factors } => {
                let mut it = factors.iter();
                let Some(first) = it.next() else {
                    return arg_err("product of no factors");
                };
                it.try_fold(first.to_points()?, |acc, f| product(&acc, &f.to_points()?))
            }
        }
    }
}

/// The pattern `2Δ`: lattice points of the triangle with vertices
/// `(0,0), (2,0), (0,2)`.
pub fn double_triangle() -> LatticePointSet {
    dilated_simplex(2, 2).expect("valid simplex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts_and_order() {
        let p = dilated_simplex(2, 3).unwrap();
        assert_eq!(p.len(), 10);
        // 1, s, s^2, s^3, t, st, s^2t, t^2, st^2, t^3
        let expected: Vec<Vec<i64>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![3, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![0, 2],
            vec![1, 2],
            vec![0, 3],
        ];
        assert_eq!(p.points(), expected.as_slice());
        assert_eq!(dilated_simplex(2, 2).unwrap().len(), 6);
        assert_eq!(dilated_simplex(1, 1).unwrap().len(), 2);
        assert_eq!(dilated_simplex(3, 2).unwrap().len(), 10);
        assert!(dilated_simplex(0, 2).is_err());
    }

    #[test]
    fn grid_counts() {
        assert_eq!(grid(&[3, 2]).unwrap().len(), 12);
        assert_eq!(grid(&[1]).unwrap().len(), 2);
        let g = grid(&[3, 2]).unwrap();
        assert_eq!(g.points()[4], vec![0, 1]);
    }

    #[test]
    fn threefold_hull() {
        let verts = vec![
            vec![0, 0, 1],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 2, 1],
            vec![1, 1, 0],
        ];
        let h = hull_points(&verts).unwrap();
        let mut listed = vec![
            vec![0, 0, 1],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 2, 1],
            vec![1, 1, 0],
            vec![1, 1, 1],
            vec![1, 2, 1],
            vec![0, 1, 1],
        ];
        listed.sort_by(|a, b| colex_cmp(a, b));
        assert_eq!(h.points(), listed.as_slice());
    }

    #[test]
    fn small_hulls() {
        assert_eq!(hull_points(&[vec![0], vec![1]]).unwrap().len(), 2);
        assert_eq!(hull_points(&[vec![0, 0], vec![1, 1]]).unwrap().len(), 2);
        let tri = hull_points(&[vec![2, 0], vec![0, 2], vec![0, 0]]).unwrap();
        assert_eq!(tri, dilated_simplex(2, 2).unwrap());
        assert_eq!(hull_points(&[vec![0, 0], vec![2, 2]]).unwrap().len(), 3);
        assert!(hull_points(&[vec![0, 0, 0, 0]]).is_err());
        assert!(hull_points(&[]).is_err());
    }

    #[test]
    fn double_triangle_scans() {
        let tri = double_triangle();
        assert_eq!(
            scan_pattern(&dilated_simplex(2, 3).unwrap(), &tri)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            scan_pattern(&dilated_simplex(2, 4).unwrap(), &tri)
                .unwrap()
                .len(),
            6
        );
        let m = scan_pattern(&dilated_simplex(2, 3).unwrap(), &tri).unwrap();
        // the three projections of the cubic Veronese to the quadratic one
        let sets: Vec<Vec<usize>> = m.iter().map(|x| x.indices.clone()).collect();
        assert_eq!(
            sets,
            vec![
                vec![0, 1, 2, 4, 5, 7],
                vec![1, 2, 3, 5, 6, 8],
                vec![4, 5, 6, 7, 8, 9]
            ]
        );
        let origin = LatticePointSet::new(2, vec![vec![0, 0]]).unwrap();
        let g = grid(&[3, 2]).unwrap();
        assert_eq!(scan_pattern(&g, &origin).unwrap().len(), g.len());
        assert!(!scan_pattern(&g, &tri).unwrap().is_empty());
        assert!(scan_pattern(&g, &dilated_simplex(3, 1).unwrap()).is_err());
    }

    #[test]
    fn product_matches_nonnormal_columns() {
        let p = product(&grid(&[1]).unwrap(), &dilated_simplex(2, 2).unwrap()).unwrap();
        assert_eq!(p.len(), 12);
        let listed: Vec<[i64; 3]> = vec![
            [0, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [0, 2, 0],
            [0, 1, 1],
            [0, 0, 2],
            [1, 0, 0],
            [1, 1, 0],
            [1, 0, 1],
            [1, 2, 0],
            [1, 1, 1],
            [1, 0, 2],
        ];
        for q in listed {
            assert!(p.contains(&q));
        }
    }

    #[test]
    fn toric_from_simplex() {
        let spec = toric_from_points(&dilated_simplex(2, 3).unwrap()).unwrap();
        assert_eq!(spec.coordinate_count(), 10);
        assert_eq!(spec.exponent_matrix().len(), 3);
        assert_eq!(spec.dimension().unwrap(), 3);
        let single =
            toric_from_points(&LatticePointSet::new(2, vec![vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(single.dimension().unwrap(), 1);
    }

    #[test]
    fn input_documents() {
        let doc: PolytopeInput = serde_json::from_str(
            r#"{"type":"product","factors":[{"type":"grid","box":[1]},{"type":"simplex","dim":2,"degree":2}]}"#,
        )
        .unwrap();
        assert_eq!(doc.to_points().unwrap().len(), 12);
        let doc: PolytopeInput =
            serde_json::from_str(r#"{"type":"points","dim":1,"points":[[2],[0],[2]]}"#).unwrap();
        assert_eq!(doc.to_points().unwrap().points(), &[vec![0], vec![2]]);
    }
}
