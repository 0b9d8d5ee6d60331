//! Seeded synthetic clusterings.
//!
//! Every profile keeps the mean cluster size bounded, so the number of
//! clusters grows linearly with the number of records, as it does in
//! entity-resolution workloads.

use std::fmt;
use std::str::FromStr;

use ermetrics_core::{Clustering, RecordId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

/// Largest cluster a Zipf profile will draw.
pub const ZIPF_MAX_SIZE: u64 = 100;
/// Probability that a singleton-heavy cluster has one record.
pub const SINGLETON_SHARE: f64 = 0.7;
/// Non-singleton clusters in the singleton-heavy profile have 2..=this records.
pub const SINGLETON_HEAVY_MAX: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SizeProfile {
    /// Clusters of exactly `k` records; the last one takes the remainder.
    Uniform(u64),
    /// Sizes drawn from a Zipf law with exponent `s` over `1..=ZIPF_MAX_SIZE`.
    Zipf(f64),
    SingletonHeavy,
}

impl fmt::Display for SizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform(k) => write!(f, "uniform:{k}"),
            Self::Zipf(s) => write!(f, "zipf:{s}"),
            Self::SingletonHeavy => f.write_str("singleton-heavy"),
        }
    }
}

impl FromStr for SizeProfile {
    type Err = String;

    /// `uniform:k`, `zipf:s` (s > 0) or `singleton-heavy`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid size profile `{s}` (expected uniform:k, zipf:s or singleton-heavy)");
        match s.split_once(':') {
            None if s == "singleton-heavy" => Ok(Self::SingletonHeavy),
            Some(("uniform", k)) => match k.parse::<u64>() {
                Ok(k) if k >= 1 => Ok(Self::Uniform(k)),
                _ => Err(bad()),
            },
            Some(("zipf", e)) => match e.parse::<f64>() {
                Ok(e) if e.is_finite() && e > 0.0 => Ok(Self::Zipf(e)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

fn cluster_sizes(n: u64, profile: SizeProfile, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut sizes = Vec::new();
    let mut left = n;
    let zipf = match profile {
        SizeProfile::Zipf(s) => Some(Zipf::new(ZIPF_MAX_SIZE as f64, s).expect("valid zipf parameters")),
        _ => None,
    };
    while left > 0 {
        let want = match profile {
            SizeProfile::Uniform(k) => k,
            SizeProfile::Zipf(_) => zipf.as_ref().unwrap().sample(rng) as u64,
            SizeProfile::SingletonHeavy => {
                if rng.random_bool(SINGLETON_SHARE) {
                    1
                } else {
                    rng.random_range(2..=SINGLETON_HEAVY_MAX)
                }
            }
        };
        let size = want.clamp(1, left);
        sizes.push(size);
        left -= size;
    }
    sizes
}

/// A random partition of records `r0 .. r{n-1}`, reproducible from `seed`.
pub fn random_partition(n: u64, profile: SizeProfile, seed: u64) -> Clustering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = cluster_sizes(n, profile, &mut rng);
    let mut order: Vec<u64> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut rest = &order[..];
    let clusters = sizes.iter().enumerate().map(|(i, &size)| {
        let (members, tail) = rest.split_at(size as usize);
        rest = tail;
        let ids: Vec<RecordId> = members
            .iter()
            .map(|r| RecordId::new(&format!("r{r}")).expect("non-empty"))
            .collect();
        (Some(format!("c{i}")), ids)
    });
    Clustering::from_clusters(clusters.collect::<Vec<_>>()).expect("generated clusters are disjoint")
}

/// All-singleton clustering over the records of `c`.
pub fn singletons_of(c: &Clustering) -> Clustering {
    Clustering::from_clusters(
        c.records()
            .iter()
            .map(|r| (None, vec![r.clone()]))
            .collect::<Vec<_>>(),
    )
    .expect("one record per cluster")
}
