//! Matroid union through matroid partition.
//!
//! Elements are inserted one at a time. For each new element a breadth-first
//! search over the exchange graph looks for a shortest path ending in an
//! element that some part can absorb outright; the exchanges along a
//! shortest path keep every part independent in its summand.

use std::collections::VecDeque;

use serde::Serialize;

use super::{check_same_ground, ElementSet, Matroid, Provenance, ProvenanceKind, RankOracle};
use crate::error::{arg_err, Result};

/// A splitting of `subset` into parts, part `i` independent in summand `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub subset: ElementSet,
    pub parts: Vec<ElementSet>,
}

impl PartitionCertificate {
    /// Re-checks disjointness, coverage and per-part independence.
    pub fn verify(&self, summands: &[Matroid]) -> bool {
        if self.parts.len() != summands.len() {
            return false;
        }
        let mut seen = ElementSet::empty();
        for (part, m) in self.parts.iter().zip(summands) {
            if !part.intersection(seen).is_empty() || !m.independent_unchecked(*part) {
                return false;
            }
            seen = seen.union(*part);
        }
        seen == self.subset
    }
}

/// Result of asking for a partition certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PartitionOutcome {
    Certificate(PartitionCertificate),
    /// The set is dependent in the union: its union rank is below its size.
    Dependent {
        union_rank: usize,
        size: usize,
    },
}

/// Greedily partitions a maximum union-independent subset of `set`.
/// Returns the parts; their union has size `rank_∨(set)`.
pub fn partition(summands: &[Matroid], set: ElementSet) -> Vec<ElementSet> {
    let mut parts = vec![ElementSet::empty(); summands.len()];
    for x in set.iter() {
        augment(summands, &mut parts, x);
    }
    parts
}

fn part_of(parts: &[ElementSet], e: usize) -> Option<usize> {
    parts.iter().position(|p| p.contains(e))
}

/// Tries to add `x` to the partition; returns whether it succeeded.
fn augment(summands: &[Matroid], parts: &mut [ElementSet], x: usize) -> bool {
    let mut parent = [usize::MAX; 64];
    let mut visited = ElementSet::singleton(x);
    let mut queue = VecDeque::from([x]);
    let mut sink: Option<(usize, usize)> = None;

    'search: while let Some(z) = queue.pop_front() {
        for (i, m) in summands.iter().enumerate() {
            if parts[i].contains(z) {
                continue;
            }
            let grown = parts[i].with(z);
            if m.independent_unchecked(grown) {
                sink = Some((z, i));
                break 'search;
            }
            for y in parts[i].iter() {
                if visited.contains(y) {
                    continue;
                }
                if m.independent_unchecked(grown.without(y)) {
                    visited.insert(y);
                    parent[y] = z;
                    queue.push_back(y);
                }
            }
        }
    }

    let Some((mut current, mut target)) = sink else {
        return false;
    };
    loop {
        let from = part_of(parts, current);
        parts[target].insert(current);
        match from {
            Some(j) => {
                parts[j].remove(current);
                target = j;
                current = parent[current];
            }
            None => {
                debug_assert_eq!(current, x);
                return true;
            }
        }
    }
}

struct UnionOracle {
    summands: Vec<Matroid>,
}

impl RankOracle for UnionOracle {
    fn rank(&self, set: ElementSet) -> usize {
        partition(&self.summands, set).iter().map(|p| p.len()).sum()
    }
}

/// `M_1 ∨ .. ∨ M_s` on the common ground set.
pub fn matroid_union(summands: &[Matroid]) -> Result<Matroid> {
    let Some(first) = summands.first() else {
        return arg_err("matroid union needs at least one summand");
    };
    for m in &summands[1..] {
        check_same_ground(first, m)?;
    }
    Ok(Matroid::from_oracle(
        first.ground().clone(),
        UnionOracle {
            summands: summands.to_vec(),
        },
        Provenance {
            kind: ProvenanceKind::Union,
            params: serde_json::json!({ "summands": summands.len() }),
        },
    ))
}

/// Splits `set` into summand-independent parts, or reports its union rank.
pub fn partition_certificate(summands: &[Matroid], set: ElementSet) -> Result<PartitionOutcome> {
    let Some(first) = summands.first() else {
        return arg_err("partition needs at least one summand");
    };
    for m in &summands[1..] {
        check_same_ground(first, m)?;
    }
    if !set.is_subset(first.ground().all()) {
        return arg_err("subset leaves the ground set");
    }
    let parts = partition(summands, set);
    let placed: usize = parts.iter().map(|p| p.len()).sum();
    if placed == set.len() {
        Ok(PartitionOutcome::Certificate(PartitionCertificate {
            subset: set,
            parts,
        }))
    } else {
        Ok(PartitionOutcome::Dependent {
            union_rank: placed,
            size: set.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rank_two_uniforms() {
        let u = Matroid::uniform(5, 2).unwrap();
        let un = u.self_union(2).unwrap();
        assert!(un.same_as(&Matroid::uniform(5, 4).unwrap()).unwrap());
    }

    #[test]
    fn union_with_rank_zero_is_identity() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let zero = Matroid::from_bases(k4.ground().clone(), vec![ElementSet::empty()]).unwrap();
        let un = matroid_union(&[k4.clone(), zero]).unwrap();
        assert!(un.same_as(&k4).unwrap());
    }

    #[test]
    fn empty_set_certificate() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let out = partition_certificate(&[k4.clone(), k4.clone()], ElementSet::empty()).unwrap();
        match out {
            PartitionOutcome::Certificate(c) => {
                assert_eq!(c.parts, vec![ElementSet::empty(); 2]);
            }
            _ => panic!("empty set is always independent"),
        }
    }

    #[test]
    fn k4_splits_into_two_spanning_trees() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let summands = vec![k4.clone(), k4.clone()];
        let all = k4.ground().all();
        match partition_certificate(&summands, all).unwrap() {
            PartitionOutcome::Certificate(c) => assert!(c.verify(&summands)),
            other => panic!("unexpected {other:?}"),
        }
        // K_4 plus a parallel edge exceeds 2 * 3
        let k4p = Matroid::graphic(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 1)],
            Some(crate::matroid::GroundSet::numbered("e", 0, 7).unwrap()),
        )
        .unwrap();
        let out = partition_certificate(&[k4p.clone(), k4p.clone()], k4p.ground().all()).unwrap();
        assert_eq!(
            out,
            PartitionOutcome::Dependent {
                union_rank: 6,
                size: 7
            }
        );
    }

    #[test]
    fn mismatched_grounds() {
        let a = Matroid::uniform(4, 2).unwrap();
        let b = Matroid::uniform(5, 2).unwrap();
        assert!(matroid_union(&[a.clone(), b]).is_err());
        assert!(matroid_union(&[]).is_err());
        assert!(partition_certificate(&[a], ElementSet::singleton(7)).is_err());
    }
}
