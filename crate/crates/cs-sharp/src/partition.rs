//! Index partitions: finite sigma-algebras over sample positions.
//!
//! A partition labels every index of a sample with a group. Group-mean
//! averaging over a partition is an orthogonal projection, and realizes
//! conditional expectation under the empirical measure.

use crate::error::{Error, Result};
use crate::series::Series;

/// A labeling of `n` sample indices into nonempty groups.
///
/// Arbitrary integer labels are accepted and normalized internally to dense
/// group ids `0..group_count`, assigned in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    group_ids: Vec<usize>,
    group_count: usize,
}

impl Partition {
    /// Builds a partition from raw integer labels, one per index.
    pub fn new(labels: &[i64]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("no labels".into()));
        }
        let mut seen: Vec<i64> = Vec::new();
        let group_ids = labels
            .iter()
            .map(|&label| match seen.iter().position(|&s| s == label) {
                Some(id) => id,
                None => {
                    seen.push(label);
                    seen.len() - 1
                }
            })
            .collect();
        Ok(Partition {
            group_ids,
            group_count: seen.len(),
        })
    }

    /// The single-group partition (trivial sigma-algebra) on `n` indices.
    pub fn trivial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("no labels".into()));
        }
        Ok(Partition {
            group_ids: vec![0; n],
            group_count: 1,
        })
    }

    /// The partition of `n` indices into `n` singleton groups.
    pub fn singletons(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("no labels".into()));
        }
        Ok(Partition {
            group_ids: (0..n).collect(),
            group_count: n,
        })
    }

    /// Partitions indices into `groups` rank bins of `values` of near-equal
    /// size. Ties are split by index order, so every group is nonempty
    /// whenever `groups <= n`.
    pub fn by_quantiles(values: &Series, groups: usize) -> Result<Self> {
        let n = values.len();
        if groups == 0 || groups > n {
            return Err(Error::InvalidPartition(format!(
                "cannot split {n} observations into {groups} quantile groups"
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            values[i]
                .partial_cmp(&values[j])
                .expect("series entries are finite")
                .then(i.cmp(&j))
        });
        let mut group_ids = vec![0usize; n];
        for (rank, &idx) in order.iter().enumerate() {
            group_ids[idx] = rank * groups / n;
        }
        Ok(Partition {
            group_ids,
            group_count: groups,
        })
    }

    pub fn len(&self) -> usize {
        self.group_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn group_count(&self) -> usize {
        self.group_count
    }

    /// Dense group id per index.
    pub fn group_ids(&self) -> &[usize] {
        &self.group_ids
    }

    /// Member indices of each group, in ascending index order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.group_count];
        for (i, &g) in self.group_ids.iter().enumerate() {
            members[g].push(i);
        }
        members
    }
}
