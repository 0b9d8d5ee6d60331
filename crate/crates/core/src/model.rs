//! Record identifiers, clusterings, and universe alignment.
//!
//! Record tokens are interned once per clustering: every record gets a dense
//! `u32` index, and cluster membership is a flat `Vec<u32>`. Two clusterings
//! brought onto a common universe by [`align`] share the same interned record
//! table, so the contingency pass in [`crate::overlap`] is a single indexed scan.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::ModelError;

/// Maximum number of sample ids reported per side in a universe mismatch.
const MISMATCH_SAMPLE: usize = 10;

/// An opaque, non-empty record token.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordId(Arc<str>);

impl RecordId {
    /// Trims surrounding whitespace; the trimmed token must be non-empty.
    pub fn new(token: &str) -> Result<Self, ModelError> {
        let token = token.trim();
        if token.is_empty() {
            return Err(ModelError::EmptyRecordId);
        }
        Ok(Self(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for RecordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for RecordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for RecordId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s)
    }
}

/// Interned record table shared between clusterings over one universe.
#[derive(Clone, Debug, Default)]
struct Universe {
    records: Vec<RecordId>,
    index: HashMap<RecordId, u32>,
}

impl Universe {
    fn position(&self, id: &RecordId) -> Option<u32> {
        self.index.get(id).copied()
    }
}

/// A partition of records into disjoint, non-empty clusters.
///
/// Cluster order is the order in which clusters were first seen; it carries
/// no meaning for any metric and exists only so that reports and
/// perturbation logs can refer to clusters by position.
#[derive(Clone, Debug, Default)]
pub struct Clustering {
    universe: Arc<Universe>,
    membership: Vec<u32>,
    clusters: Vec<Vec<u32>>,
    labels: Vec<Option<String>>,
}

impl Clustering {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a clustering from explicit member lists. Empty member lists are
    /// dropped; a record listed twice in one cluster counts once.
    pub fn from_clusters<I, M>(clusters: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (Option<String>, M)>,
        M: IntoIterator<Item = RecordId>,
    {
        let mut universe = Universe::default();
        let mut membership = Vec::new();
        let mut labels: Vec<Option<String>> = Vec::new();
        for (label, members) in clusters {
            let cluster = labels.len() as u32;
            let mut any = false;
            for record in members {
                match universe.position(&record) {
                    Some(existing) if membership[existing as usize] == cluster => {}
                    Some(existing) => {
                        let first = membership[existing as usize] as usize;
                        let name = |c: usize, l: &Option<String>| {
                            l.clone().unwrap_or_else(|| format!("#{c}"))
                        };
                        return Err(ModelError::ConflictingAssignment {
                            record: record.to_string(),
                            first: name(first, &labels[first]),
                            second: name(cluster as usize, &label),
                        });
                    }
                    None => {
                        universe.index.insert(record.clone(), universe.records.len() as u32);
                        universe.records.push(record);
                        membership.push(cluster);
                        any = true;
                    }
                }
            }
            if any {
                labels.push(label);
            }
        }
        Ok(Self::from_membership(Arc::new(universe), membership, labels))
    }

    fn from_membership(
        universe: Arc<Universe>,
        membership: Vec<u32>,
        labels: Vec<Option<String>>,
    ) -> Self {
        let mut clusters: Vec<Vec<u32>> = vec![Vec::new(); labels.len()];
        for (record, &cluster) in membership.iter().enumerate() {
            clusters[cluster as usize].push(record as u32);
        }
        debug_assert!(clusters.iter().all(|c| !c.is_empty()));
        Self {
            universe,
            membership,
            clusters,
            labels,
        }
    }

    /// Number of records.
    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    /// Records in dense-index order.
    pub fn records(&self) -> &[RecordId] {
        &self.universe.records
    }

    pub fn record(&self, index: usize) -> &RecordId {
        &self.universe.records[index]
    }

    /// Dense record index → cluster position.
    pub fn membership(&self) -> &[u32] {
        &self.membership
    }

    /// Member record indices per cluster.
    pub fn clusters(&self) -> &[Vec<u32>] {
        &self.clusters
    }

    pub fn cluster_sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.clusters.iter().map(|c| c.len() as u64)
    }

    pub fn label(&self, cluster: usize) -> Option<&str> {
        self.labels[cluster].as_deref()
    }

    pub fn contains(&self, id: &RecordId) -> bool {
        self.universe.position(id).is_some()
    }

    /// Cluster position of a record, if the record is present.
    pub fn cluster_of(&self, id: &RecordId) -> Option<usize> {
        self.universe
            .position(id)
            .map(|i| self.membership[i as usize] as usize)
    }

    /// Clusters as sorted lists of tokens, themselves sorted. Two clusterings
    /// are equal as partitions iff their canonical forms are equal.
    pub fn canonical(&self) -> Vec<Vec<&str>> {
        let mut out: Vec<Vec<&str>> = self
            .clusters
            .iter()
            .map(|members| {
                let mut tokens: Vec<&str> = members
                    .iter()
                    .map(|&r| self.universe.records[r as usize].as_str())
                    .collect();
                tokens.sort_unstable();
                tokens
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// True when both clusterings partition the same records the same way.
    pub fn same_partition(&self, other: &Clustering) -> bool {
        self.len() == other.len()
            && self.num_clusters() == other.num_clusters()
            && self.canonical() == other.canonical()
    }

    /// Re-expresses this clustering over `universe`. Records of `universe`
    /// that this clustering lacks become fresh singletons when
    /// `add_singletons` is set (otherwise they must not exist). Records of
    /// this clustering outside `universe` are dropped, along with any
    /// cluster left empty.
    fn project(&self, universe: &Arc<Universe>, add_singletons: bool) -> Clustering {
        if Arc::ptr_eq(universe, &self.universe) {
            return self.clone();
        }
        let lookup: Vec<Option<u32>> = universe
            .records
            .iter()
            .map(|id| self.cluster_of(id).map(|c| c as u32))
            .collect();
        self.relabel(universe, lookup, add_singletons)
    }

    /// Re-expresses this clustering over `universe`, where `lookup[i]` is
    /// the cluster of the universe's `i`-th record, if this clustering has it.
    fn relabel(&self, universe: &Arc<Universe>, lookup: Vec<Option<u32>>, add_singletons: bool) -> Clustering {
        let mut surviving = vec![false; self.clusters.len()];
        for c in lookup.iter().flatten() {
            surviving[*c as usize] = true;
        }
        let mut renumber = vec![u32::MAX; self.clusters.len()];
        let mut labels = Vec::new();
        for (old, _) in surviving.iter().enumerate().filter(|(_, &s)| s) {
            renumber[old] = labels.len() as u32;
            labels.push(self.labels[old].clone());
        }

        let mut membership = Vec::with_capacity(lookup.len());
        for slot in lookup {
            match slot {
                Some(old) => membership.push(renumber[old as usize]),
                None => {
                    assert!(add_singletons, "record missing from projected clustering");
                    membership.push(labels.len() as u32);
                    labels.push(None);
                }
            }
        }
        Clustering::from_membership(Arc::clone(universe), membership, labels)
    }
}

/// Incremental construction from `(record, label)` rows.
#[derive(Debug, Default)]
pub struct ClusteringBuilder {
    universe: Universe,
    membership: Vec<u32>,
    label_index: HashMap<String, u32>,
    labels: Vec<Option<String>>,
}

impl ClusteringBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one assignment. Repeating an identical row is a no-op; giving a
    /// record a second, different label is an error.
    pub fn add(&mut self, record: RecordId, label: &str) -> Result<(), ModelError> {
        let cluster = match self.label_index.get(label) {
            Some(&c) => c,
            None => {
                let c = self.labels.len() as u32;
                self.label_index.insert(label.to_owned(), c);
                self.labels.push(Some(label.to_owned()));
                c
            }
        };
        match self.universe.position(&record) {
            Some(existing) => {
                let current = self.membership[existing as usize];
                if current != cluster {
                    return Err(ModelError::ConflictingAssignment {
                        record: record.to_string(),
                        first: self.labels[current as usize].clone().unwrap_or_default(),
                        second: label.to_owned(),
                    });
                }
            }
            None => {
                let position = self.universe.records.len() as u32;
                self.universe.index.insert(record.clone(), position);
                self.universe.records.push(record);
                self.membership.push(cluster);
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Clustering {
        // Labels can be registered by a row that then fails, leaving an
        // empty cluster; drop those.
        let mut used = vec![false; self.labels.len()];
        for &c in &self.membership {
            used[c as usize] = true;
        }
        let mut renumber = vec![u32::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (old, label) in self.labels.into_iter().enumerate() {
            if used[old] {
                renumber[old] = labels.len() as u32;
                labels.push(label);
            }
        }
        let membership = self
            .membership
            .into_iter()
            .map(|c| renumber[c as usize])
            .collect();
        Clustering::from_membership(Arc::new(self.universe), membership, labels)
    }
}

/// One cluster per distinct label, from `(record, label)` rows.
pub fn build_clustering<I, L>(assignments: I) -> Result<Clustering, ModelError>
where
    I: IntoIterator<Item = (RecordId, L)>,
    L: AsRef<str>,
{
    let mut builder = ClusteringBuilder::new();
    for (record, label) in assignments {
        builder.add(record, label.as_ref())?;
    }
    Ok(builder.finish())
}

/// How to reconcile two clusterings that may not cover the same records.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum UniversePolicy {
    /// Universes must already be equal.
    #[default]
    Strict,
    /// Keep only records present on both sides.
    Intersection,
    /// Records present on one side only become singletons on the other.
    UnionSingletons,
}

impl UniversePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Strict => "strict",
            Self::Intersection => "intersection",
            Self::UnionSingletons => "union-singletons",
        }
    }
}

impl fmt::Display for UniversePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UniversePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Self::Strict),
            "intersection" => Ok(Self::Intersection),
            "union-singletons" => Ok(Self::UnionSingletons),
            other => Err(format!(
                "unknown universe policy `{other}` (expected strict, intersection or union-singletons)"
            )),
        }
    }
}

/// A prediction and a gold clustering over one shared record universe.
#[derive(Clone, Debug)]
pub struct AlignedPair {
    left: Clustering,
    right: Clustering,
    policy: UniversePolicy,
}

impl AlignedPair {
    /// The predicted clustering, R.
    pub fn left(&self) -> &Clustering {
        &self.left
    }

    /// The gold clustering, S.
    pub fn right(&self) -> &Clustering {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn policy(&self) -> UniversePolicy {
        self.policy
    }

    /// The same pair with the roles of prediction and gold exchanged.
    pub fn swapped(&self) -> AlignedPair {
        AlignedPair {
            left: self.right.clone(),
            right: self.left.clone(),
            policy: self.policy,
        }
    }
}

/// Brings `left` (R) and `right` (S) onto a common universe under `policy`.
pub fn align(
    left: &Clustering,
    right: &Clustering,
    policy: UniversePolicy,
) -> Result<AlignedPair, ModelError> {
    if Arc::ptr_eq(&left.universe, &right.universe) {
        return Ok(AlignedPair {
            left: left.clone(),
            right: right.clone(),
            policy,
        });
    }
    // One lookup per left record decides the common case: both sides hold
    // exactly the same records.
    let lookup: Vec<Option<u32>> = left
        .records()
        .iter()
        .map(|id| right.universe.position(id).map(|p| right.membership[p as usize]))
        .collect();
    let shared = lookup.iter().flatten().count();
    if shared == left.len() && shared == right.len() {
        let universe = Arc::clone(&left.universe);
        return Ok(AlignedPair {
            left: left.clone(),
            right: right.relabel(&universe, lookup, false),
            policy,
        });
    }

    let left_only: Vec<&RecordId> = left
        .records()
        .iter()
        .filter(|id| !right.contains(id))
        .collect();
    let right_only: Vec<&RecordId> = right
        .records()
        .iter()
        .filter(|id| !left.contains(id))
        .collect();

    let sample = |ids: &[&RecordId]| -> Vec<String> {
        ids.iter()
            .take(MISMATCH_SAMPLE)
            .map(|id| id.to_string())
            .collect()
    };

    let records: Vec<RecordId> = match policy {
        UniversePolicy::Strict => {
            return Err(ModelError::UniverseMismatch {
                left_only: left_only.len(),
                right_only: right_only.len(),
                left_sample: sample(&left_only),
                right_sample: sample(&right_only),
            })
        }
        UniversePolicy::Intersection => left
            .records()
            .iter()
            .filter(|id| right.contains(id))
            .cloned()
            .collect(),
        UniversePolicy::UnionSingletons => left
            .records()
            .iter()
            .chain(right_only.iter().copied())
            .cloned()
            .collect(),
    };
    let index = records
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), i as u32))
        .collect();
    let universe = Arc::new(Universe { records, index });
    let add_singletons = policy == UniversePolicy::UnionSingletons;
    Ok(AlignedPair {
        left: left.project(&universe, add_singletons),
        right: right.project(&universe, add_singletons),
        policy,
    })
}

pub(crate) fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Number of unordered record pairs that share a cluster.
pub fn intra_pair_count(c: &Clustering) -> u64 {
    c.cluster_sizes().map(choose2).sum()
}

/// Number of unordered record pairs split across clusters. Diagnostic only;
/// no metric in this crate uses it.
pub fn inter_pair_count(c: &Clustering) -> u64 {
    choose2(c.len() as u64) - intra_pair_count(c)
}
