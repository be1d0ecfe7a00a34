//! Rank oracles backing [`Matroid`](super::Matroid).

use num::{BigInt, Integer, One};

use super::ElementSet;
use crate::exactlin::{bareiss_rank, rank_symbolic, FpMatrix, Matrix, PolyMatrix, RationalMatrix};

/// A total rank function on subsets of `{0, .., n-1}`.
///
/// Implementations must satisfy the matroid rank axioms; the wrapper takes
/// care of memoization.
pub trait RankOracle: Send + Sync {
    fn rank(&self, set: ElementSet) -> usize;
}

/// `rank(S) = min(|S|, r)`.
pub struct UniformOracle {
    pub rank: usize,
}

impl RankOracle for UniformOracle {
    fn rank(&self, set: ElementSet) -> usize {
        set.len().min(self.rank)
    }
}

/// Cycle matroid of a multigraph; element `i` is edge `edges[i]`.
pub struct GraphicOracle {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl RankOracle for GraphicOracle {
    fn rank(&self, set: ElementSet) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut rank = 0;
        for e in set.iter() {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
        rank
    }
}

/// Column matroid of a rational matrix. Columns are scaled to integers once;
/// ranks come from fraction-free elimination.
pub struct RationalColumnOracle {
    columns: Vec<Vec<BigInt>>,
    rows: usize,
}

impl RationalColumnOracle {
    pub fn new(m: &RationalMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                let l = (0..m.rows()).fold(BigInt::one(), |acc, i| acc.lcm(m.get(i, j).denom()));
                (0..m.rows())
                    .map(|i| {
                        let q = m.get(i, j);
                        q.numer() * (&l / q.denom())
                    })
                    .collect()
            })
            .collect();
        RationalColumnOracle {
            columns,
            rows: m.rows(),
        }
    }
}

impl RankOracle for RationalColumnOracle {
    fn rank(&self, set: ElementSet) -> usize {
        let cols: Vec<usize> = set.to_vec();
        let m = Matrix::from_fn(self.rows, cols.len(), |i, j| {
            self.columns[cols[j]][i].clone()
        });
        bareiss_rank(&m)
    }
}

/// Column matroid read off one or more sampled matrices over a prime field.
///
/// The rank of a set is the maximum over the samples. When a symbolic
/// matrix is attached, any set that the samples declare dependent is
/// re-certified by fraction-free symbolic rank.
pub struct SampledLinearOracle {
    samples: Vec<FpMatrix>,
    symbolic: Option<PolyMatrix>,
}

impl SampledLinearOracle {
    pub fn new(samples: Vec<FpMatrix>, symbolic: Option<PolyMatrix>) -> Self {
        assert!(!samples.is_empty(), "at least one sample is required");
        SampledLinearOracle { samples, symbolic }
    }

    pub fn samples(&self) -> &[FpMatrix] {
        &self.samples
    }
}

impl RankOracle for SampledLinearOracle {
    fn rank(&self, set: ElementSet) -> usize {
        let rows = self.samples[0].rows();
        let ceiling = set.len().min(rows);
        let mut best = 0;
        for m in &self.samples {
            best = best.max(m.column_rank(set.iter()));
            if best == ceiling {
                return best;
            }
        }
        match &self.symbolic {
            Some(sym) => rank_symbolic(&sym.select_columns(&set.to_vec())),
            None => best,
        }
    }
}

/// Matroid given by its list of bases.
pub struct BasesOracle {
    pub bases: Vec<ElementSet>,
}

impl RankOracle for BasesOracle {
    fn rank(&self, set: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(set).len())
            .max()
            .unwrap_or(0)
    }
}
