//! Exact-cluster, closest-cluster (Jaccard) and purity metrics.
//!
//! Everything is read off the nonzero cells of the contingency table; a
//! zero cell contributes nothing to any sum here, so the sparse scans are
//! exact.

use crate::error::MetricError;
use crate::overlap::Overlap;
use crate::pairwise::PrecisionRecall;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Purity {
    /// Average cluster purity.
    pub acp: f64,
    /// Average author purity.
    pub aap: f64,
    /// Geometric mean of ACP and AAP.
    pub k: f64,
    /// Fraction of records in the dominant gold cluster of their predicted cluster.
    pub manning: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterScores {
    pub exact: PrecisionRecall,
    pub closest: PrecisionRecall,
    pub purity: Purity,
}

/// Precision and recall over clusters matched exactly as sets.
///
/// A cell whose count equals both its row size and its column size is a
/// cluster present in both clusterings. With no clusters at all the result
/// is vacuously perfect.
pub fn exact_cluster(o: &Overlap) -> PrecisionRecall {
    if o.num_rows() == 0 || o.num_cols() == 0 {
        return PrecisionRecall::new(1.0, 1.0);
    }
    let matched = o
        .cells()
        .iter()
        .filter(|c| {
            c.count == o.row_sizes()[c.row as usize] && c.count == o.col_sizes()[c.col as usize]
        })
        .count() as f64;
    PrecisionRecall::new(
        matched / o.num_rows() as f64,
        matched / o.num_cols() as f64,
    )
}

/// `|r ∩ s| / |r ∪ s|` from the two cluster sizes and their overlap.
///
/// # Panics
///
/// When a size is zero or the overlap exceeds either size.
pub fn jaccard(r_size: u64, s_size: u64, overlap: u64) -> f64 {
    assert!(r_size >= 1 && s_size >= 1, "cluster sizes must be positive");
    assert!(
        overlap <= r_size.min(s_size),
        "overlap {overlap} exceeds cluster sizes ({r_size}, {s_size})"
    );
    overlap as f64 / (r_size + s_size - overlap) as f64
}

/// Mean best-Jaccard of each predicted cluster against gold (precision) and
/// of each gold cluster against the prediction (recall).
pub fn closest_cluster(o: &Overlap) -> Result<PrecisionRecall, MetricError> {
    if o.num_rows() == 0 || o.num_cols() == 0 {
        return Err(MetricError::EmptyClustering);
    }
    let rows = o.row_sizes();
    let cols = o.col_sizes();
    let mut row_best = vec![0.0f64; rows.len()];
    let mut col_best = vec![0.0f64; cols.len()];
    for c in o.cells() {
        let j = jaccard(rows[c.row as usize], cols[c.col as usize], c.count);
        let (r, s) = (c.row as usize, c.col as usize);
        row_best[r] = row_best[r].max(j);
        col_best[s] = col_best[s].max(j);
    }
    let precision = row_best.iter().sum::<f64>() / rows.len() as f64;
    let recall = col_best.iter().sum::<f64>() / cols.len() as f64;
    Ok(PrecisionRecall::new(precision, recall))
}

pub fn purity_family(o: &Overlap) -> Result<Purity, MetricError> {
    if o.n() == 0 {
        return Err(MetricError::EmptyClustering);
    }
    let n = o.n() as f64;
    let rows = o.row_sizes();
    let cols = o.col_sizes();
    let mut acp = 0.0;
    let mut aap = 0.0;
    let mut dominant = 0u64;
    for row in o.rows() {
        let mut best = 0u64;
        for c in row {
            let sq = (c.count * c.count) as f64;
            acp += sq / rows[c.row as usize] as f64;
            aap += sq / cols[c.col as usize] as f64;
            best = best.max(c.count);
        }
        dominant += best;
    }
    let acp = (acp / n).min(1.0);
    let aap = (aap / n).min(1.0);
    Ok(Purity {
        acp,
        aap,
        k: (acp * aap).sqrt(),
        manning: dominant as f64 / n,
    })
}

pub fn cluster_scores(o: &Overlap) -> Result<ClusterScores, MetricError> {
    Ok(ClusterScores {
        exact: exact_cluster(o),
        closest: closest_cluster(o)?,
        purity: purity_family(o)?,
    })
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

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn exact_worked_example() {
        let e = exact_cluster(&example());
        assert_eq!((e.precision, e.recall, e.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn exact_partial_match() {
        // R = <a,b>,<c>,<d>; S = <a,b>,<c,d>
        let o = table(3, 2, &[(0, 0, 2), (1, 1, 1), (2, 1, 1)]);
        let e = exact_cluster(&o);
        assert!(close(e.precision, 1.0 / 3.0));
        assert!(close(e.recall, 0.5));
    }

    #[test]
    fn exact_identity() {
        let e = exact_cluster(&table(2, 2, &[(0, 0, 3), (1, 1, 2)]));
        assert_eq!((e.precision, e.recall, e.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn jaccard_values() {
        assert!(close(jaccard(3, 2, 2), 2.0 / 3.0));
        assert_eq!(jaccard(4, 4, 4), 1.0);
        assert_eq!(jaccard(3, 2, 0), 0.0);
    }

    #[test]
    #[should_panic]
    fn jaccard_rejects_impossible_overlap() {
        jaccard(2, 3, 3);
    }

    #[test]
    fn closest_worked_example() {
        let cc = closest_cluster(&example()).unwrap();
        assert!(close(cc.precision, 2.0 / 3.0));
        assert!(close(cc.recall, 2.0 / 3.0));
        assert!(close(cc.f1, 2.0 / 3.0));
    }

    #[test]
    fn closest_one_cluster_vs_singletons() {
        let n = 6u32;
        let cells: Vec<_> = (0..n).map(|i| (0, i, 1)).collect();
        let cc = closest_cluster(&table(1, n as usize, &cells)).unwrap();
        assert!(close(cc.precision, 1.0 / n as f64));
        assert!(close(cc.recall, 1.0 / n as f64));
    }

    #[test]
    fn closest_requires_clusters() {
        assert_eq!(
            closest_cluster(&table(0, 0, &[])),
            Err(MetricError::EmptyClustering)
        );
    }

    #[test]
    fn purity_worked_example() {
        let p = purity_family(&example()).unwrap();
        assert!(close(p.acp, 11.0 / 15.0));
        assert!(close(p.aap, 11.0 / 15.0));
        assert!(close(p.k, 11.0 / 15.0));
        assert!(close(p.manning, 0.8));
    }

    #[test]
    fn singleton_prediction_has_perfect_manning_purity() {
        let o = table(5, 2, &[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 1, 1), (4, 1, 1)]);
        let p = purity_family(&o).unwrap();
        assert_eq!(p.manning, 1.0);
        assert_eq!(p.acp, 1.0);
        assert!(p.k < 1.0);
    }

    #[test]
    fn purity_identity_and_empty() {
        let p = purity_family(&table(2, 2, &[(0, 0, 3), (1, 1, 2)])).unwrap();
        assert_eq!((p.acp, p.aap, p.k, p.manning), (1.0, 1.0, 1.0, 1.0));
        assert_eq!(
            purity_family(&table(0, 0, &[])),
            Err(MetricError::EmptyClustering)
        );
    }
}
