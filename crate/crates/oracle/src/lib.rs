//! Brute-force reference implementations for cross-checking `ermetrics`.
//!
//! Everything here works on explicit sets built from a label vector
//! (`labels[i]` is the cluster of record `i`). Nothing is shared with the
//! contingency-table code paths in `ermetrics-core`; the point is to be
//! slow and obviously correct.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

/// A partition as a list of clusters, each an ordered set of record indices.
pub type Sets = Vec<BTreeSet<usize>>;

pub fn clusters(labels: &[usize]) -> Sets {
    let mut by_label: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (record, &label) in labels.iter().enumerate() {
        by_label.entry(label).or_default().insert(record);
    }
    let mut out: Sets = by_label.into_values().collect();
    out.sort();
    out
}

/// All unordered intra-cluster pairs, materialized.
pub fn pairs(labels: &[usize]) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] == labels[j] {
                out.insert((i, j));
            }
        }
    }
    out
}

pub fn inter_pairs(labels: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] != labels[j] {
                count += 1;
            }
        }
    }
    count
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Pairwise precision, recall, F1 with the vacuous-truth conventions.
pub fn pairwise(pred: &[usize], gold: &[usize]) -> (f64, f64, f64) {
    let pr = pairs(pred);
    let pg = pairs(gold);
    let shared = pr.intersection(&pg).count() as f64;
    let p = if pr.is_empty() { 1.0 } else { shared / pr.len() as f64 };
    let r = if pg.is_empty() { 1.0 } else { shared / pg.len() as f64 };
    (p, r, harmonic(p, r))
}

pub fn shared_pairs(pred: &[usize], gold: &[usize]) -> usize {
    pairs(pred).intersection(&pairs(gold)).count()
}

pub fn exact_cluster(pred: &[usize], gold: &[usize]) -> (f64, f64, f64) {
    let r = clusters(pred);
    let s = clusters(gold);
    if r.is_empty() {
        return (1.0, 1.0, 1.0);
    }
    let s_set: HashSet<&BTreeSet<usize>> = s.iter().collect();
    let common = r.iter().filter(|c| s_set.contains(c)).count() as f64;
    let p = common / r.len() as f64;
    let rec = common / s.len() as f64;
    (p, rec, harmonic(p, rec))
}

pub fn jaccard(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> f64 {
    let inter = a.intersection(b).count() as f64;
    let union = a.union(b).count() as f64;
    inter / union
}

pub fn closest_cluster(pred: &[usize], gold: &[usize]) -> (f64, f64, f64) {
    let r = clusters(pred);
    let s = clusters(gold);
    let best = |from: &Sets, to: &Sets| -> f64 {
        from.iter()
            .map(|a| to.iter().map(|b| jaccard(a, b)).fold(0.0, f64::max))
            .sum::<f64>()
            / from.len() as f64
    };
    let p = best(&r, &s);
    let rec = best(&s, &r);
    (p, rec, harmonic(p, rec))
}

/// (ACP, AAP, K, Manning purity) by a dense double loop over all cluster pairs.
pub fn purity(pred: &[usize], gold: &[usize]) -> (f64, f64, f64, f64) {
    let r = clusters(pred);
    let s = clusters(gold);
    let n = pred.len() as f64;
    let mut acp = 0.0;
    let mut aap = 0.0;
    let mut manning = 0.0;
    for rc in &r {
        let mut best = 0usize;
        for sc in &s {
            let inter = rc.intersection(sc).count();
            let sq = (inter * inter) as f64;
            acp += sq / rc.len() as f64;
            aap += sq / sc.len() as f64;
            best = best.max(inter);
        }
        manning += best as f64;
    }
    acp /= n;
    aap /= n;
    (acp, aap, (acp * aap).sqrt(), manning / n)
}

fn dense_table(pred: &[usize], gold: &[usize]) -> (Sets, Sets, Vec<Vec<f64>>) {
    let r = clusters(pred);
    let s = clusters(gold);
    let table = r
        .iter()
        .map(|rc| s.iter().map(|sc| rc.intersection(sc).count() as f64).collect())
        .collect();
    (r, s, table)
}

fn xlogy_ratio(count: f64, total: f64) -> f64 {
    if count == 0.0 {
        0.0
    } else {
        count * (count / total).ln()
    }
}

/// Marginal entropy in nats of a clustering.
pub fn entropy(labels: &[usize]) -> f64 {
    let n = labels.len() as f64;
    -clusters(labels)
        .iter()
        .map(|c| xlogy_ratio(c.len() as f64, n) / n)
        .sum::<f64>()
}

/// H(gold | pred) in nats, dense over every table cell including zeros.
pub fn conditional_entropy(gold: &[usize], given: &[usize]) -> f64 {
    let (_, _, table) = dense_table(given, gold);
    let n = gold.len() as f64;
    let mut h = 0.0;
    for row in &table {
        let row_total: f64 = row.iter().sum();
        for &cell in row {
            h -= xlogy_ratio(cell, row_total) / n;
        }
    }
    h
}

/// (homogeneity, completeness, V-measure with weight beta, VI).
pub fn info(pred: &[usize], gold: &[usize], beta: f64) -> (f64, f64, f64, f64) {
    let hs = entropy(gold);
    let hr = entropy(pred);
    let hs_r = conditional_entropy(gold, pred);
    let hr_s = conditional_entropy(pred, gold);
    let hom = if hs == 0.0 { 1.0 } else { 1.0 - hs_r / hs };
    let comp = if hr == 0.0 { 1.0 } else { 1.0 - hr_s / hr };
    let b2 = beta * beta;
    let v = if b2 * hom + comp == 0.0 {
        0.0
    } else {
        (1.0 + b2) * hom * comp / (b2 * hom + comp)
    };
    (hom, comp, v, hs_r + hr_s)
}

/// Which split/merge sequences the lattice search may take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveRule {
    /// Any split of any cluster, any merge of two clusters.
    Unrestricted,
    /// A cluster produced by a merge may never be split again.
    NoSplitAfterMerge,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    /// Clusters as bitmasks, sorted, each paired with a "was produced by a merge" flag.
    clusters: Vec<(u32, bool)>,
}

impl State {
    fn normalized(mut clusters: Vec<(u32, bool)>) -> Self {
        clusters.sort_unstable();
        Self { clusters }
    }

    fn masks(&self) -> BTreeSet<u32> {
        self.clusters.iter().map(|&(m, _)| m).collect()
    }
}

struct Frontier {
    cost: f64,
    state: State,
}

impl PartialEq for Frontier {
    fn eq(&self, other: &Self) -> bool {
        self.cost == other.cost
    }
}
impl Eq for Frontier {}
impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other.cost.total_cmp(&self.cost)
    }
}

fn masks_of(labels: &[usize]) -> Vec<u32> {
    clusters(labels)
        .into_iter()
        .map(|c| c.into_iter().fold(0u32, |m, i| m | (1 << i)))
        .collect()
}

/// Minimum total cost of turning `from` into `to` by binary splits and merges,
/// found by uniform-cost search over the partition lattice. `split(x, y)` and
/// `merge(x, y)` receive the sizes of the two parts. Records must number ≤ 16.
pub fn lattice_distance(
    from: &[usize],
    to: &[usize],
    split: &dyn Fn(usize, usize) -> f64,
    merge: &dyn Fn(usize, usize) -> f64,
    rule: MoveRule,
) -> f64 {
    assert_eq!(from.len(), to.len());
    assert!(from.len() <= 16);
    let goal: BTreeSet<u32> = masks_of(to).into_iter().collect();
    let start = State::normalized(masks_of(from).into_iter().map(|m| (m, false)).collect());

    let mut best: HashMap<State, f64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(start.clone(), 0.0);
    heap.push(Frontier { cost: 0.0, state: start });

    while let Some(Frontier { cost, state }) = heap.pop() {
        if best.get(&state).is_some_and(|&b| cost > b) {
            continue;
        }
        if state.masks() == goal {
            return cost;
        }
        let cl = &state.clusters;
        let mut push = |next: Vec<(u32, bool)>, step: f64| {
            let next = State::normalized(next);
            let c = cost + step;
            if best.get(&next).is_none_or(|&b| c < b) {
                best.insert(next.clone(), c);
                heap.push(Frontier { cost: c, state: next });
            }
        };
        // splits
        for (idx, &(mask, merged)) in cl.iter().enumerate() {
            if merged && rule == MoveRule::NoSplitAfterMerge {
                continue;
            }
            if mask.count_ones() < 2 {
                continue;
            }
            let low = mask & mask.wrapping_neg();
            // enumerate proper non-empty submasks containing the lowest bit
            let rest = mask ^ low;
            let mut sub = rest;
            loop {
                let part = sub | low;
                if part != mask {
                    let other = mask ^ part;
                    let mut next = cl.clone();
                    next[idx] = (part, merged);
                    next.push((other, merged));
                    push(
                        next,
                        split(part.count_ones() as usize, other.count_ones() as usize),
                    );
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        // merges
        for i in 0..cl.len() {
            for j in (i + 1)..cl.len() {
                let (a, _) = cl[i];
                let (b, _) = cl[j];
                let mut next: Vec<(u32, bool)> = cl
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &c)| c)
                    .collect();
                next.push((a | b, true));
                push(next, merge(a.count_ones() as usize, b.count_ones() as usize));
            }
        }
    }
    unreachable!("the goal partition is always reachable")
}
