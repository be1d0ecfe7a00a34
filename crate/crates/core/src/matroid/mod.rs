//! Rank-oracle matroids.
//!
//! A [`Matroid`] is a labelled ground set together with a memoized rank
//! oracle. Bases are enumerated on demand in lexicographic order of their
//! sorted index lists. Matroid union runs the matroid-partition augmenting
//! path algorithm over the summands' oracles.

mod oracle;
mod subset;
mod union;

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

pub use oracle::{
    BasesOracle, GraphicOracle, RankOracle, RationalColumnOracle, SampledLinearOracle,
    UniformOracle,
};
pub use subset::ElementSet;
pub use union::{
    matroid_union, partition, partition_certificate, PartitionCertificate, PartitionOutcome,
};

use crate::error::{arg_err, Error, Result};
use crate::exactlin::RationalMatrix;

/// Default bound on the ground-set size for full base enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Labelled ground set `z_1, .., z_N`, addressed internally by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return arg_err("ground set must be nonempty");
        }
        if labels.len() > ElementSet::MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return arg_err(format!("duplicate label `{dup}`"));
        }
        Ok(GroundSet { labels })
    }

    /// Labels `{prefix}{start}`, `{prefix}{start+1}`, ...
    pub fn numbered(prefix: &str, start: usize, n: usize) -> Result<Self> {
        GroundSet::new((start..start + n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Argument(format!("unknown label `{label}`")))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let mut s = ElementSet::empty();
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn names(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|e| self.labels[e].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenanceKind {
    ColumnMatroid,
    Jacobian,
    Union,
    Uniform,
    Graphic,
    Explicit,
}

/// Where a matroid's rank function comes from.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub params: serde_json::Value,
}

struct Inner {
    ground: GroundSet,
    oracle: Box<dyn RankOracle>,
    memo: DashMap<u64, usize>,
    full_rank: OnceLock<usize>,
    provenance: Provenance,
}

/// A matroid on a labelled ground set. Cloning shares the memo cache.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.len())
            .field("provenance", &self.inner.provenance.kind)
            .finish()
    }
}

impl Matroid {
    pub fn from_oracle(
        ground: GroundSet,
        oracle: impl RankOracle + 'static,
        provenance: Provenance,
    ) -> Self {
        Matroid {
            inner: Arc::new(Inner {
                ground,
                oracle: Box::new(oracle),
                memo: DashMap::new(),
                full_rank: OnceLock::new(),
                provenance,
            }),
        }
    }

    /// `U_{r,N}`.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return arg_err(format!("uniform rank {r} exceeds ground size {n}"));
        }
        Ok(Self::from_oracle(
            GroundSet::numbered("z", 1, n)?,
            UniformOracle { rank: r },
            Provenance {
                kind: ProvenanceKind::Uniform,
                params: serde_json::json!({ "n": n, "r": r }),
            },
        ))
    }

    /// Cycle matroid of a graph given as an edge list over `vertices` vertices.
    pub fn graphic(
        vertices: usize,
        edges: &[(usize, usize)],
        ground: Option<GroundSet>,
    ) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return arg_err(format!("edge ({u}, {v}) leaves the vertex set"));
        }
        let ground = match ground {
            Some(g) if g.len() != edges.len() => return arg_err("one label per edge required"),
            Some(g) => g,
            None => GroundSet::new(edges.iter().map(|(u, v)| format!("e{u}_{v}")).collect())?,
        };
        Ok(Self::from_oracle(
            ground,
            GraphicOracle {
                vertices,
                edges: edges.to_vec(),
            },
            Provenance {
                kind: ProvenanceKind::Graphic,
                params: serde_json::json!({ "vertices": vertices, "edges": edges }),
            },
        ))
    }

    /// Cycle matroid of the complete graph `K_n`, edges in lexicographic order.
    pub fn complete_graph(n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::graphic(n, &edges, None)
    }

    /// Column matroid of a rational matrix.
    pub fn column_matroid(m: &RationalMatrix, ground: Option<GroundSet>) -> Result<Self> {
        let ground = match ground {
            Some(g) if g.len() != m.cols() => return arg_err("one label per column required"),
            Some(g) => g,
            None => GroundSet::numbered("z", 1, m.cols())?,
        };
        Ok(Self::from_oracle(
            ground,
            RationalColumnOracle::new(m),
            Provenance {
                kind: ProvenanceKind::ColumnMatroid,
                params: serde_json::json!({ "rows": m.rows(), "cols": m.cols() }),
            },
        ))
    }

    /// Matroid given by an explicit list of bases.
    pub fn from_bases(ground: GroundSet, bases: Vec<ElementSet>) -> Result<Self> {
        let all = ground.all();
        if bases.is_empty() {
            return arg_err("a matroid has at least one basis");
        }
        if bases
            .iter()
            .any(|b| !b.is_subset(all) || b.len() != bases[0].len())
        {
            return arg_err("bases must be equicardinal subsets of the ground set");
        }
        let count = bases.len();
        Ok(Self::from_oracle(
            ground,
            BasesOracle { bases },
            Provenance {
                kind: ProvenanceKind::Explicit,
                params: serde_json::json!({ "bases": count }),
            },
        ))
    }

    /// The same matroid on a relabelled ground set (sharing nothing).
    pub fn relabel(&self, ground: GroundSet) -> Result<Matroid> {
        if ground.len() != self.len() {
            return arg_err("relabelling must preserve the ground size");
        }
        struct Shared(Matroid);
        impl RankOracle for Shared {
            fn rank(&self, set: ElementSet) -> usize {
                self.0.rank_unchecked(set)
            }
        }
        Ok(Self::from_oracle(
            ground,
            Shared(self.clone()),
            self.provenance().clone(),
        ))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.inner.ground
    }

    pub fn len(&self) -> usize {
        self.inner.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.ground.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.inner.provenance
    }

    /// Rank of a subset of the ground set.
    pub fn rank(&self, set: ElementSet) -> Result<usize> {
        if !set.is_subset(self.ground().all()) {
            return arg_err(format!(
                "subset {set:?} leaves the ground set of size {}",
                self.len()
            ));
        }
        Ok(self.rank_unchecked(set))
    }

    pub(crate) fn rank_unchecked(&self, set: ElementSet) -> usize {
        if let Some(r) = self.inner.memo.get(&set.bits()) {
            return *r;
        }
        let r = self.inner.oracle.rank(set);
        self.inner.memo.insert(set.bits(), r);
        r
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        *self
            .inner
            .full_rank
            .get_or_init(|| self.rank_unchecked(self.ground().all()))
    }

    pub fn rank_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        self.rank(self.ground().subset(labels)?)
    }

    pub fn is_independent(&self, set: ElementSet) -> Result<bool> {
        Ok(self.rank(set)? == set.len())
    }

    pub(crate) fn independent_unchecked(&self, set: ElementSet) -> bool {
        self.rank_unchecked(set) == set.len()
    }

    pub fn is_basis(&self, set: ElementSet) -> Result<bool> {
        Ok(set.len() == self.full_rank() && self.is_independent(set)?)
    }

    /// All bases in lexicographic order, refusing ground sets above `cap`.
    pub fn enumerate_bases_capped(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let n = self.len();
        if n > cap {
            return Err(Error::CapExceeded { size: n, cap });
        }
        let r = self.full_rank();
        if r == 0 {
            return Ok(vec![ElementSet::empty()]);
        }
        let chunks: Vec<Vec<ElementSet>> = (0..=n - r)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let start = ElementSet::singleton(first);
                if self.independent_unchecked(start) {
                    self.extend_bases(start, first + 1, r, &mut out);
                }
                out
            })
            .collect();
        Ok(chunks.into_iter().flatten().collect())
    }

    pub fn enumerate_bases(&self) -> Result<Vec<ElementSet>> {
        self.enumerate_bases_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn base_count(&self) -> Result<usize> {
        Ok(self.enumerate_bases()?.len())
    }

    pub fn base_count_capped(&self, cap: usize) -> Result<usize> {
        Ok(self.enumerate_bases_capped(cap)?.len())
    }

    fn extend_bases(&self, current: ElementSet, next: usize, r: usize, out: &mut Vec<ElementSet>) {
        let have = current.len();
        if have == r {
            out.push(current);
            return;
        }
        let n = self.len();
        let need = r - have;
        if n - next < need {
            return;
        }
        let reachable = current.union(ElementSet::full(n).difference(ElementSet::full(next)));
        if self.rank_unchecked(reachable) < r {
            return;
        }
        for e in next..=n - need {
            let cand = current.with(e);
            if self.independent_unchecked(cand) {
                self.extend_bases(cand, e + 1, r, out);
            }
        }
    }

    /// Elements forming rank-zero singletons, and elements whose deletion drops the rank.
    pub fn loops_and_coloops(&self) -> (ElementSet, ElementSet) {
        let all = self.ground().all();
        let r = self.full_rank();
        let loops = all
            .iter()
            .filter(|&e| self.rank_unchecked(ElementSet::singleton(e)) == 0)
            .collect();
        let coloops = all
            .iter()
            .filter(|&e| self.rank_unchecked(all.without(e)) + 1 == r)
            .collect();
        (loops, coloops)
    }

    /// `s`-fold union of the matroid with itself.
    pub fn self_union(&self, s: usize) -> Result<Matroid> {
        matroid_union(&vec![self.clone(); s])
    }

    /// Whether both matroids have exactly the same bases.
    pub fn same_as(&self, other: &Matroid) -> Result<bool> {
        check_same_ground(self, other)?;
        Ok(self.full_rank() == other.full_rank()
            && weak_order_leq(self, other)?
            && weak_order_leq(other, self)?)
    }

    pub fn to_document(&self, with_bases: bool, cap: usize) -> Result<MatroidDocument> {
        let ground = self.ground().labels().to_vec();
        let rank = self.full_rank();
        if with_bases {
            let bases = self
                .enumerate_bases_capped(cap)?
                .into_iter()
                .map(ElementSet::to_vec)
                .collect();
            Ok(MatroidDocument::Enumerated {
                ground,
                rank,
                bases,
            })
        } else {
            Ok(MatroidDocument::Oracle {
                ground,
                rank,
                provenance: self.provenance().clone(),
            })
        }
    }
}

/// JSON form of a matroid.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum MatroidDocument {
    Enumerated {
        ground: Vec<String>,
        rank: usize,
        bases: Vec<Vec<usize>>,
    },
    Oracle {
        ground: Vec<String>,
        rank: usize,
        provenance: Provenance,
    },
}

pub(crate) fn check_same_ground(a: &Matroid, b: &Matroid) -> Result<()> {
    if a.ground() != b.ground() {
        return arg_err("matroids live on different ground sets");
    }
    Ok(())
}

/// `m1 ⪯ m2`: every basis of `m1` (hence every `m1`-independent set) is
/// independent in `m2`; equivalently every `m2`-dependent set is `m1`-dependent.
pub fn weak_order_leq(m1: &Matroid, m2: &Matroid) -> Result<bool> {
    check_same_ground(m1, m2)?;
    let bases = m1.enumerate_bases()?;
    Ok(bases.par_iter().all(|&b| m2.independent_unchecked(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational_from_i64;

    #[test]
    fn uniform_ranks() {
        let u = Matroid::uniform(10, 6).unwrap();
        assert_eq!(u.rank(ElementSet::from_indices(0..7)).unwrap(), 6);
        assert_eq!(u.base_count().unwrap(), 210);
        assert!(Matroid::uniform(3, 4).is_err());
        assert!(u.rank(ElementSet::singleton(10)).is_err());
    }

    #[test]
    fn complete_graph_counts() {
        let k5 = Matroid::complete_graph(5).unwrap();
        assert_eq!(k5.full_rank(), 4);
        assert_eq!(k5.base_count().unwrap(), 125);
        let k4 = Matroid::complete_graph(4).unwrap();
        assert_eq!(k4.full_rank(), 3);
        assert_eq!(k4.base_count().unwrap(), 16);
        // 5-cycle 0-1-2-3-4-0
        let cycle = k5
            .ground()
            .subset(&["e0_1", "e1_2", "e2_3", "e3_4", "e0_4"])
            .unwrap();
        assert_eq!(k5.rank(cycle).unwrap(), 4);
    }

    #[test]
    fn column_matroid_is_uniform() {
        let m = rational_from_i64(&[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        let cm = Matroid::column_matroid(&m, None).unwrap();
        assert!(cm.same_as(&Matroid::uniform(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn bases_are_lexicographic() {
        let u = Matroid::uniform(5, 2).unwrap();
        let bases = u.enumerate_bases().unwrap();
        let mut sorted = bases.clone();
        sorted.sort_by(|a, b| a.lex_cmp(*b));
        assert_eq!(bases, sorted);
        assert_eq!(bases[0].to_vec(), vec![0, 1]);
        assert_eq!(bases[9].to_vec(), vec![3, 4]);
    }

    #[test]
    fn rank_zero_matroid_has_empty_basis() {
        let z = Matroid::uniform(3, 0).unwrap();
        assert_eq!(z.enumerate_bases().unwrap(), vec![ElementSet::empty()]);
        let (loops, coloops) = z.loops_and_coloops();
        assert_eq!(loops.len(), 3);
        assert!(coloops.is_empty());
    }

    #[test]
    fn enumeration_cap() {
        let u = Matroid::uniform(30, 2).unwrap();
        assert_eq!(
            u.enumerate_bases(),
            Err(Error::CapExceeded { size: 30, cap: 24 })
        );
        assert_eq!(u.enumerate_bases_capped(30).unwrap().len(), 435);
    }

    #[test]
    fn loops_coloops_of_uniform() {
        let (l, c) = Matroid::uniform(5, 2).unwrap().loops_and_coloops();
        assert!(l.is_empty() && c.is_empty());
        let (l, c) = Matroid::uniform(4, 4).unwrap().loops_and_coloops();
        assert!(l.is_empty());
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn weak_order_examples() {
        let u26 = Matroid::uniform(6, 2).unwrap();
        let u36 = Matroid::uniform(6, 3).unwrap();
        assert!(weak_order_leq(&u26, &u36).unwrap());
        assert!(!weak_order_leq(&u36, &u26).unwrap());
        assert!(weak_order_leq(&u36, &u36).unwrap());
        let other = Matroid::uniform(5, 2).unwrap();
        assert!(weak_order_leq(&u26, &other).is_err());
    }

    #[test]
    fn explicit_bases_roundtrip() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let bases = k4.enumerate_bases().unwrap();
        let m = Matroid::from_bases(k4.ground().clone(), bases).unwrap();
        assert!(m.same_as(&k4).unwrap());
        let doc = serde_json::to_value(m.to_document(true, 24).unwrap()).unwrap();
        assert_eq!(doc["rank"], 3);
        assert_eq!(doc["bases"].as_array().unwrap().len(), 16);
        let doc = serde_json::to_value(k4.to_document(false, 24).unwrap()).unwrap();
        assert_eq!(doc["provenance"]["kind"], "graphic");
    }

    #[test]
    fn ground_set_validation() {
        assert!(GroundSet::new(vec!["a".into(), "a".into()]).is_err());
        assert!(GroundSet::new(vec![]).is_err());
        assert!(matches!(
            GroundSet::numbered("z", 0, 65),
            Err(Error::GroundTooLarge(65))
        ));
        let g = GroundSet::numbered("z", 1, 3).unwrap();
        assert_eq!(g.subset(&["z3", "z1"]).unwrap().to_vec(), vec![0, 2]);
        assert!(g.subset(&["q"]).is_err());
    }
}
