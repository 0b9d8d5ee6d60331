//! Generalized merge distance.
//!
//! GMD is the cheapest legal sequence of binary splits and merges that turns
//! the prediction R into the gold clustering S. A legal sequence never splits
//! a cluster that a merge produced, so every path can be reordered into
//! "all splits, then all merges" without changing its cost. With
//! order-independent, non-negative costs the cheapest such path splits each
//! R-cluster into its intersections with S and then merges those pieces into
//! S-clusters; [`gmd`] charges exactly that path in one scan of the
//! contingency table.
//!
//! Cost families are restricted to `k1 + k2·x·y` (with constant and product
//! as special cases) and the entropy-delta family that reproduces VI. All of
//! them are order-independent by construction: splitting a set into fixed
//! pieces costs the same whatever binary split order is used.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::MetricError;
use crate::overlap::Overlap;
use crate::pairwise::{pairwise, PrecisionRecall};

/// An order-independent split or merge cost `f(x, y)`, where `x` and `y` are
/// the sizes of the two record sets being separated or joined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CostFamily {
    /// `k`
    Constant { k: f64 },
    /// `k·x·y`
    Product { k: f64 },
    /// `k1 + k2·x·y`
    Affine { k1: f64, k2: f64 },
    /// `[(x+y)·ln(x+y) − x·ln x − y·ln y] / n`. With `n: None` the record
    /// count of the table being scored is used.
    ViInfo { n: Option<u64> },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostSpecError {
    #[error("unknown cost family `{0}` (expected constant:k, product:k, affine:k1,k2 or vi)")]
    UnknownFamily(String),
    #[error("cost family `{family}` expects {expected} parameter(s), got `{given}`")]
    Arity {
        family: &'static str,
        expected: usize,
        given: String,
    },
    #[error("invalid cost parameter `{0}`: must be a finite non-negative number")]
    BadParameter(String),
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

impl CostFamily {
    pub fn constant(k: f64) -> Self {
        Self::Constant { k }
    }

    pub fn product(k: f64) -> Self {
        Self::Product { k }
    }

    pub fn affine(k1: f64, k2: f64) -> Self {
        Self::Affine { k1, k2 }
    }

    pub fn vi() -> Self {
        Self::ViInfo { n: None }
    }

    /// Fills in the record count of a `ViInfo` family that has none.
    pub fn bind(self, n: u64) -> Self {
        match self {
            Self::ViInfo { n: None } => Self::ViInfo { n: Some(n) },
            other => other,
        }
    }

    /// # Panics
    ///
    /// On an unbound `ViInfo` family; see [`CostFamily::bind`].
    pub fn cost(&self, x: u64, y: u64) -> f64 {
        let xy = (x as f64) * (y as f64);
        match *self {
            Self::Constant { k } => k,
            Self::Product { k } => k * xy,
            Self::Affine { k1, k2 } => k1 + k2 * xy,
            Self::ViInfo { n } => {
                let n = n.expect("vi cost family must be bound to a record count");
                let (x, y) = (x as f64, y as f64);
                (xlnx(x + y) - xlnx(x) - xlnx(y)) / n as f64
            }
        }
    }
}

/// `f(x, y)` for a cost family.
pub fn family_cost(family: &CostFamily, x: u64, y: u64) -> f64 {
    family.cost(x, y)
}

impl fmt::Display for CostFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant { k } => write!(f, "constant:{k}"),
            Self::Product { k } => write!(f, "product:{k}"),
            Self::Affine { k1, k2 } => write!(f, "affine:{k1},{k2}"),
            Self::ViInfo { .. } => f.write_str("vi"),
        }
    }
}

fn parse_param(raw: &str) -> Result<f64, CostSpecError> {
    let value: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CostSpecError::BadParameter(raw.to_owned()))?;
    if !value.is_finite() || value < 0.0 {
        return Err(CostSpecError::BadParameter(raw.to_owned()));
    }
    Ok(value)
}

fn parse_params<const N: usize>(
    family: &'static str,
    raw: &str,
) -> Result<[f64; N], CostSpecError> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != N {
        return Err(CostSpecError::Arity {
            family,
            expected: N,
            given: raw.to_owned(),
        });
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = parse_param(part)?;
    }
    Ok(out)
}

impl FromStr for CostFamily {
    type Err = CostSpecError;

    /// Accepts `constant:k`, `product:k`, `affine:k1,k2` and `vi`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "vi" {
            return Ok(Self::vi());
        }
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| CostSpecError::UnknownFamily(s.to_owned()))?;
        match name {
            "constant" => parse_params::<1>("constant", params).map(|[k]| Self::constant(k)),
            "product" => parse_params::<1>("product", params).map(|[k]| Self::product(k)),
            "affine" => parse_params::<2>("affine", params).map(|[a, b]| Self::affine(a, b)),
            _ => Err(CostSpecError::UnknownFamily(s.to_owned())),
        }
    }
}

/// Split and merge cost families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GmdConfig {
    pub split: CostFamily,
    pub merge: CostFamily,
}

impl GmdConfig {
    pub fn new(split: CostFamily, merge: CostFamily) -> Self {
        Self { split, merge }
    }
}

impl Default for GmdConfig {
    fn default() -> Self {
        Self::new(CostFamily::product(1.0), CostFamily::product(1.0))
    }
}

/// Generalized merge distance from the prediction (rows) to gold (columns).
///
/// Each row is split by peeling its nonzero cells off one at a time; each
/// column then absorbs its cells one at a time. Runs in O(rows + cols + nnz).
pub fn gmd(o: &Overlap, cfg: &GmdConfig) -> f64 {
    let split = cfg.split.bind(o.n());
    let merge = cfg.merge.bind(o.n());

    let mut cost = 0.0;
    let mut absorbed = vec![0u64; o.num_cols()];
    for (row, cells) in o.rows().enumerate() {
        let mut remaining = o.row_sizes()[row];
        for c in cells {
            if remaining > c.count {
                cost += split.cost(c.count, remaining - c.count);
                remaining -= c.count;
            }
            let acc = &mut absorbed[c.col as usize];
            if *acc > 0 {
                cost += merge.cost(*acc, c.count);
            }
            *acc += c.count;
        }
    }
    cost
}

/// Pairwise scores recovered from GMD: with split cost `x·y` and free merges,
/// GMD counts predicted pairs that are broken; with the roles exchanged it
/// counts gold pairs that must be created. Degenerate denominators follow the
/// same conventions as [`crate::pairwise::pairwise`].
pub fn pairwise_via_gmd(o: &Overlap) -> PrecisionRecall {
    let counts = pairwise(o);
    let free = CostFamily::constant(0.0);
    let per_pair = CostFamily::product(1.0);

    let precision = if counts.predicted_pairs == 0 {
        1.0
    } else {
        let broken = gmd(o, &GmdConfig::new(per_pair, free));
        1.0 - broken / counts.predicted_pairs as f64
    };
    let recall = if counts.true_pairs == 0 {
        1.0
    } else {
        let created = gmd(o, &GmdConfig::new(free, per_pair));
        1.0 - created / counts.true_pairs as f64
    };
    PrecisionRecall::new(precision, recall)
}

/// Variation of information as GMD under the entropy-delta cost for both
/// splits and merges.
pub fn vi_via_gmd(o: &Overlap) -> Result<f64, MetricError> {
    if o.n() == 0 {
        return Err(MetricError::EmptyClustering);
    }
    Ok(gmd(o, &GmdConfig::new(CostFamily::vi(), CostFamily::vi())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::Cell;

    fn table(rows: usize, cols: usize, cells: &[(u32, u32, u64)]) -> Overlap {
        Overlap::from_cells(
            rows,
            cols,
            cells.iter().map(|&(row, col, count)| Cell { row, col, count }),
        )
    }

    fn example() -> Overlap {
        table(2, 2, &[(0, 0, 2), (0, 1, 1), (1, 1, 2)])
    }

    #[test]
    fn family_costs() {
        assert_eq!(family_cost(&CostFamily::product(1.0), 2, 1), 2.0);
        assert_eq!(family_cost(&CostFamily::affine(3.0, 0.5), 2, 2), 5.0);
        assert_eq!(family_cost(&CostFamily::constant(4.0), 7, 9), 4.0);
        let vi = CostFamily::vi().bind(5);
        assert!((family_cost(&vi, 1, 1) - 0.277_258_872_223_978_1).abs() < 1e-12);
    }

    #[test]
    #[should_panic(expected = "bound")]
    fn unbound_vi_cost_panics() {
        CostFamily::vi().cost(1, 1);
    }

    #[test]
    fn special_cases_of_affine() {
        for (x, y) in [(1, 1), (2, 5), (7, 3)] {
            assert_eq!(
                CostFamily::constant(2.5).cost(x, y),
                CostFamily::affine(2.5, 0.0).cost(x, y)
            );
            assert_eq!(
                CostFamily::product(1.5).cost(x, y),
                CostFamily::affine(0.0, 1.5).cost(x, y)
            );
        }
    }

    #[test]
    fn parses_textual_specs() {
        assert_eq!("constant:1".parse(), Ok(CostFamily::constant(1.0)));
        assert_eq!("product:2.5".parse(), Ok(CostFamily::product(2.5)));
        assert_eq!("affine:3, 0.5".parse(), Ok(CostFamily::affine(3.0, 0.5)));
        assert_eq!("vi".parse(), Ok(CostFamily::vi()));
        assert!(matches!(
            "affine:1".parse::<CostFamily>(),
            Err(CostSpecError::Arity { .. })
        ));
        assert!(matches!(
            "product:-1".parse::<CostFamily>(),
            Err(CostSpecError::BadParameter(_))
        ));
        assert!(matches!(
            "square:1".parse::<CostFamily>(),
            Err(CostSpecError::UnknownFamily(_))
        ));
        for spec in ["constant:1", "product:0.25", "affine:3,0.5", "vi"] {
            let f: CostFamily = spec.parse().unwrap();
            assert_eq!(f.to_string(), spec);
        }
    }

    #[test]
    fn worked_example_distances() {
        let o = example();
        let unit = GmdConfig::new(CostFamily::constant(1.0), CostFamily::constant(1.0));
        assert_eq!(gmd(&o, &unit), 2.0);
        let pairs_broken = GmdConfig::new(CostFamily::product(1.0), CostFamily::constant(0.0));
        assert_eq!(gmd(&o, &pairs_broken), 2.0);
    }

    #[test]
    fn identity_costs_nothing() {
        let o = table(2, 2, &[(0, 0, 3), (1, 1, 2)]);
        for cfg in [
            GmdConfig::default(),
            GmdConfig::new(CostFamily::constant(1.0), CostFamily::affine(2.0, 3.0)),
            GmdConfig::new(CostFamily::vi(), CostFamily::vi()),
        ] {
            assert_eq!(gmd(&o, &cfg), 0.0);
        }
    }

    #[test]
    fn pairwise_route_matches_example() {
        let pr = pairwise_via_gmd(&example());
        assert_eq!((pr.precision, pr.recall, pr.f1), (0.5, 0.5, 0.5));
    }

    #[test]
    fn pairwise_route_degenerate() {
        // five singletons predicted, gold one cluster of five
        let o = table(5, 1, &[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1), (4, 0, 1)]);
        let pr = pairwise_via_gmd(&o);
        assert_eq!((pr.precision, pr.recall), (1.0, 0.0));
    }

    #[test]
    fn vi_route_values() {
        let vi = vi_via_gmd(&example()).unwrap();
        assert!((vi - 0.763_817_001_953_775_6).abs() < 1e-12);
        let o = table(1, 4, &[(0, 0, 1), (0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        assert!((vi_via_gmd(&o).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert_eq!(vi_via_gmd(&table(0, 0, &[])), Err(MetricError::EmptyClustering));
    }
}
