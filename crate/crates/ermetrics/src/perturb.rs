//! Seeded random edits of a clustering, with a replayable log.
//!
//! Cluster positions in logged operations refer to the working clustering
//! at the moment the operation is applied:
//!
//! * `split` moves the listed records out of cluster `cluster` into a new
//!   cluster appended at the end;
//! * `merge` appends cluster `from` to cluster `into`, then removes `from`;
//! * `move` appends `record` to cluster `to`, then removes its former
//!   cluster if that left it empty.

use std::fmt;
use std::str::FromStr;

use ermetrics_core::{Clustering, RecordId};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum PerturbOp {
    Split { cluster: usize, part: Vec<String> },
    Merge { into: usize, from: usize },
    Move { record: String, to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationLog {
    pub seed: u64,
    pub ops: Vec<PerturbOp>,
    /// Where the perturbed clustering was written, when it was.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
}

/// Relative weights of the three operation kinds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpMix {
    pub split: f64,
    pub merge: f64,
    pub moves: f64,
}

impl OpMix {
    pub const SPLIT_ONLY: OpMix = OpMix { split: 1.0, merge: 0.0, moves: 0.0 };
    pub const MERGE_ONLY: OpMix = OpMix { split: 0.0, merge: 1.0, moves: 0.0 };
}

impl Default for OpMix {
    fn default() -> Self {
        Self { split: 1.0, merge: 1.0, moves: 1.0 }
    }
}

impl FromStr for OpMix {
    type Err = String;

    /// `split:a,merge:b,move:c`; omitted kinds get weight 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut mix = OpMix { split: 0.0, merge: 0.0, moves: 0.0 };
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (kind, weight) = item
                .split_once(':')
                .ok_or_else(|| format!("expected kind:weight, got `{item}`"))?;
            let weight: f64 = weight
                .trim()
                .parse()
                .ok()
                .filter(|w: &f64| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| format!("invalid weight in `{item}`"))?;
            match kind.trim() {
                "split" => mix.split = weight,
                "merge" => mix.merge = weight,
                "move" => mix.moves = weight,
                other => return Err(format!("unknown operation `{other}`")),
            }
        }
        if mix.split + mix.merge + mix.moves <= 0.0 {
            return Err("operation mix has no positive weight".into());
        }
        Ok(mix)
    }
}

impl fmt::Display for OpMix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "split:{},merge:{},move:{}", self.split, self.merge, self.moves)
    }
}

type Working = Vec<(Option<String>, Vec<RecordId>)>;

fn working_copy(c: &Clustering) -> Working {
    c.clusters()
        .iter()
        .enumerate()
        .map(|(i, members)| {
            (
                c.label(i).map(str::to_owned),
                members.iter().map(|&r| c.record(r as usize).clone()).collect(),
            )
        })
        .collect()
}

fn finish(work: Working) -> Clustering {
    Clustering::from_clusters(work).expect("perturbation keeps clusters disjoint")
}

fn bad_op(op: &PerturbOp, why: &str) -> HarnessError {
    HarnessError::InvalidArgument(format!("cannot replay {op:?}: {why}"))
}

fn apply(work: &mut Working, op: &PerturbOp) -> Result<(), HarnessError> {
    match op {
        PerturbOp::Split { cluster, part } => {
            let (_, members) = work.get_mut(*cluster).ok_or_else(|| bad_op(op, "no such cluster"))?;
            let mut moved = Vec::with_capacity(part.len());
            for token in part {
                let pos = members
                    .iter()
                    .position(|r| r.as_str() == token)
                    .ok_or_else(|| bad_op(op, "record not in cluster"))?;
                moved.push(members.remove(pos));
            }
            if members.is_empty() || moved.is_empty() {
                return Err(bad_op(op, "both parts of a split must be non-empty"));
            }
            work.push((None, moved));
        }
        PerturbOp::Merge { into, from } => {
            if into == from || *into >= work.len() || *from >= work.len() {
                return Err(bad_op(op, "needs two distinct existing clusters"));
            }
            let (_, absorbed) = std::mem::take(&mut work[*from]);
            work[*into].1.extend(absorbed);
            work.remove(*from);
        }
        PerturbOp::Move { record, to } => {
            let source = work
                .iter()
                .position(|(_, m)| m.iter().any(|r| r.as_str() == record))
                .ok_or_else(|| bad_op(op, "unknown record"))?;
            if *to >= work.len() || *to == source {
                return Err(bad_op(op, "target must be another existing cluster"));
            }
            let pos = work[source].1.iter().position(|r| r.as_str() == record).unwrap();
            let id = work[source].1.remove(pos);
            work[*to].1.push(id);
            if work[source].1.is_empty() {
                work.remove(source);
            }
        }
    }
    Ok(())
}

/// Re-applies a log to the clustering it was drawn from.
pub fn replay(source: &Clustering, log: &PerturbationLog) -> Result<Clustering, HarnessError> {
    let mut work = working_copy(source);
    for op in &log.ops {
        apply(&mut work, op)?;
    }
    Ok(finish(work))
}

#[derive(Clone, Copy)]
enum Kind {
    Split,
    Merge,
    Move,
}

fn draw(work: &Working, mix: &OpMix, rng: &mut ChaCha8Rng) -> Option<PerturbOp> {
    let splittable: Vec<usize> = (0..work.len()).filter(|&i| work[i].1.len() >= 2).collect();
    let many = work.len() >= 2;
    let options: Vec<(Kind, f64)> = [
        (Kind::Split, mix.split, !splittable.is_empty()),
        (Kind::Merge, mix.merge, many),
        (Kind::Move, mix.moves, many),
    ]
    .into_iter()
    .filter(|&(_, w, feasible)| feasible && w > 0.0)
    .map(|(k, w, _)| (k, w))
    .collect();
    let &(kind, _) = options.choose_weighted(rng, |(_, w)| *w).ok()?;

    Some(match kind {
        Kind::Split => {
            let cluster = *splittable.choose(rng).unwrap();
            let mut members: Vec<&RecordId> = work[cluster].1.iter().collect();
            members.shuffle(rng);
            let cut = rng.random_range(1..members.len());
            PerturbOp::Split {
                cluster,
                part: members[cut..].iter().map(|r| r.to_string()).collect(),
            }
        }
        Kind::Merge => {
            let into = rng.random_range(0..work.len());
            let mut from = rng.random_range(0..work.len() - 1);
            if from >= into {
                from += 1;
            }
            PerturbOp::Merge { into, from }
        }
        Kind::Move => {
            let total: usize = work.iter().map(|(_, m)| m.len()).sum();
            let mut pick = rng.random_range(0..total);
            let mut source = 0;
            while pick >= work[source].1.len() {
                pick -= work[source].1.len();
                source += 1;
            }
            let mut to = rng.random_range(0..work.len() - 1);
            if to >= source {
                to += 1;
            }
            PerturbOp::Move {
                record: work[source].1[pick].to_string(),
                to,
            }
        }
    })
}

/// Applies `n_ops` random operations drawn from `mix`. Kinds that are
/// impossible in the current state are not drawn; if no kind with positive
/// weight is possible, the run fails.
pub fn perturb(
    c: &Clustering,
    n_ops: usize,
    mix: &OpMix,
    seed: u64,
) -> Result<(Clustering, PerturbationLog), HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = working_copy(c);
    let mut ops = Vec::with_capacity(n_ops);
    for step in 0..n_ops {
        let op = draw(&work, mix, &mut rng).ok_or_else(|| {
            HarnessError::Unsatisfiable(format!(
                "step {step}: no operation in mix {mix} applies to {} cluster(s) over {} record(s)",
                work.len(),
                c.len()
            ))
        })?;
        apply(&mut work, &op)?;
        ops.push(op);
    }
    Ok((
        finish(work),
        PerturbationLog {
            seed,
            ops,
            result: None,
        },
    ))
}
