#![allow(dead_code)]

use ermetrics_core::{align, build_clustering, overlap, Clustering, Overlap, RecordId, UniversePolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Clustering with records `r0..r{n-1}`, record `i` in cluster `labels[i]`.
pub fn from_labels(labels: &[usize]) -> Clustering {
    build_clustering(
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| (RecordId::new(&format!("r{i}")).unwrap(), l.to_string())),
    )
    .unwrap()
}

pub fn table(pred: &[usize], gold: &[usize]) -> Overlap {
    let pair = align(&from_labels(pred), &from_labels(gold), UniversePolicy::Strict).unwrap();
    overlap(&pair)
}

/// Random labels over `n` records with at most `max_clusters` distinct values.
pub fn random_labels(rng: &mut impl Rng, n: usize, max_clusters: usize) -> Vec<usize> {
    let k = rng.random_range(1..=max_clusters.max(1));
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// Every set partition of `n` records as restricted-growth label vectors.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            go(prefix, max.max(label), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut prefix = vec![0];
        go(&mut prefix, 0, n, &mut out);
    }
    out
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
