//! Sparse contingency table between a prediction and a gold clustering.

use crate::model::AlignedPair;

/// A nonzero cell `|r ∩ s|` of the contingency table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    /// Cluster position in the prediction (R).
    pub row: u32,
    /// Cluster position in the gold clustering (S).
    pub col: u32,
    pub count: u64,
}

/// Intersection counts between every pair of clusters that share a record.
///
/// Cells are stored row-major, sorted by `(row, col)`, and never hold a zero
/// count. All metrics in this crate are computed from this one structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    cells: Vec<Cell>,
    row_offsets: Vec<usize>,
    row_sizes: Vec<u64>,
    col_sizes: Vec<u64>,
    n: u64,
}

impl Overlap {
    /// Builds the table in one pass over each prediction cluster's members,
    /// using a dense scratch counter indexed by gold cluster.
    pub fn from_aligned(pair: &AlignedPair) -> Self {
        let left = pair.left();
        let right = pair.right();
        let gold_of = right.membership();

        let mut scratch = vec![0u64; right.num_clusters()];
        let mut touched: Vec<u32> = Vec::new();
        let mut cells = Vec::new();
        let mut row_offsets = Vec::with_capacity(left.num_clusters() + 1);
        row_offsets.push(0);

        for (row, members) in left.clusters().iter().enumerate() {
            for &record in members {
                let col = gold_of[record as usize];
                if scratch[col as usize] == 0 {
                    touched.push(col);
                }
                scratch[col as usize] += 1;
            }
            touched.sort_unstable();
            for col in touched.drain(..) {
                cells.push(Cell {
                    row: row as u32,
                    col,
                    count: std::mem::take(&mut scratch[col as usize]),
                });
            }
            row_offsets.push(cells.len());
        }

        Self {
            cells,
            row_offsets,
            row_sizes: left.cluster_sizes().collect(),
            col_sizes: right.cluster_sizes().collect(),
            n: pair.n() as u64,
        }
    }

    /// Builds a table directly from cells. Cells with equal `(row, col)` are
    /// summed and zero counts discarded; sizes are derived from the cells.
    pub fn from_cells(num_rows: usize, num_cols: usize, cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut cells: Vec<Cell> = cells.into_iter().filter(|c| c.count > 0).collect();
        cells.sort_unstable_by_key(|c| (c.row, c.col));
        cells.dedup_by(|next, kept| {
            if next.row == kept.row && next.col == kept.col {
                kept.count += next.count;
                true
            } else {
                false
            }
        });
        let mut row_sizes = vec![0u64; num_rows];
        let mut col_sizes = vec![0u64; num_cols];
        let mut row_offsets = vec![0usize; num_rows + 1];
        for c in &cells {
            row_sizes[c.row as usize] += c.count;
            col_sizes[c.col as usize] += c.count;
            row_offsets[c.row as usize + 1] += 1;
        }
        for i in 0..num_rows {
            row_offsets[i + 1] += row_offsets[i];
        }
        let n = row_sizes.iter().sum();
        Self {
            cells,
            row_offsets,
            row_sizes,
            col_sizes,
            n,
        }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Nonzero cells of one prediction cluster.
    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[self.row_offsets[row]..self.row_offsets[row + 1]]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cell]> + '_ {
        (0..self.num_rows()).map(move |r| self.row(r))
    }

    /// `|r|` for each prediction cluster.
    pub fn row_sizes(&self) -> &[u64] {
        &self.row_sizes
    }

    /// `|s|` for each gold cluster.
    pub fn col_sizes(&self) -> &[u64] {
        &self.col_sizes
    }

    pub fn num_rows(&self) -> usize {
        self.row_sizes.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_sizes.len()
    }

    /// Total record count N.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The table of the swapped pair (gold as prediction and vice versa).
    pub fn transpose(&self) -> Overlap {
        Overlap::from_cells(
            self.num_cols(),
            self.num_rows(),
            self.cells.iter().map(|c| Cell {
                row: c.col,
                col: c.row,
                count: c.count,
            }),
        )
    }
}

/// Contingency table of an aligned pair.
pub fn overlap(pair: &AlignedPair) -> Overlap {
    Overlap::from_aligned(pair)
}
