//! Young diagrams and the box statistics used by the weight formulas.
//!
//! A partition is stored by its row lengths `rows[0] >= rows[1] >= ... > 0`.
//! Cells are addressed as `(column i, row j)`, both 1-based, with row 1 at
//! the bottom. The length of column `i` is the number of rows of length
//! `>= i`. The arm of a cell counts the cells above it in its column, the
//! leg counts the cells to its right in its row.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub column: usize,
    pub row: usize,
}

impl Cell {
    pub fn new(column: usize, row: usize) -> Self {
        Cell { column, row }
    }
}

fn conjugate_rows(rows: &[usize]) -> Vec<usize> {
    let width = rows.first().copied().unwrap_or(0);
    (1..=width)
        .map(|i| rows.iter().take_while(|&&r| r >= i).count())
        .collect()
}

impl Partition {
    pub fn empty() -> Self {
        Partition {
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    /// Builds a partition from row lengths, rejecting zero or increasing parts.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        let valid = rows.iter().all(|&r| r > 0) && rows.windows(2).all(|w| w[0] >= w[1]);
        if !valid {
            return Err(Error::InvalidPartition(rows));
        }
        let cols = conjugate_rows(&rows);
        Ok(Partition { rows, cols })
    }

    fn from_valid_rows(rows: Vec<usize>) -> Self {
        let cols = conjugate_rows(&rows);
        Partition { rows, cols }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Column lengths, i.e. the rows of the conjugate partition.
    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        Partition {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Length of column `i` (1-based); zero past the last column.
    pub fn column_length(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.cols.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of row `j` (1-based); zero past the last row.
    pub fn row_length(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.rows.get(j - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, s: Cell) -> bool {
        s.column >= 1 && s.row >= 1 && s.row <= self.column_length(s.column)
    }

    /// All cells, column by column, bottom to top.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// Number of cells above `s` in its column.
    pub fn arm(&self, s: Cell) -> Result<usize> {
        if !self.contains(s) {
            return Err(Error::CellOutside(s));
        }
        Ok(self.column_length(s.column) - s.row)
    }

    /// Number of cells to the right of `s` in its row, measured in `self`.
    /// Negative when `s` lies outside the diagram.
    pub fn leg(&self, s: Cell) -> i64 {
        self.row_length(s.row) as i64 - s.column as i64
    }

    /// `l(Y)`: the number of columns, equal to the largest part.
    pub fn num_columns(&self) -> usize {
        self.cols.len()
    }

    /// `m_i`: how many columns have length exactly `i`. Zero entries omitted.
    pub fn column_multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &len in &self.cols {
            *out.entry(len).or_insert(0) += 1;
        }
        out
    }

    /// Number of columns whose length is strictly greater than `threshold`.
    pub fn columns_longer_than(&self, threshold: Rational) -> usize {
        self.cols
            .iter()
            .filter(|&&len| Rational::from_integer(len as i64) > threshold)
            .count()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every partition of `n`, in lexicographically decreasing order of parts.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_valid_rows(prefix.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

static PARTITION_CACHE: OnceLock<RwLock<Vec<Arc<Vec<Partition>>>>> = OnceLock::new();

/// Memoized [`enumerate_partitions`], shared across threads.
pub fn partitions_of(n: usize) -> Arc<Vec<Partition>> {
    let cache = PARTITION_CACHE.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(list) = cache.read().unwrap().get(n) {
        return Arc::clone(list);
    }
    let mut guard = cache.write().unwrap();
    while guard.len() <= n {
        let m = guard.len();
        guard.push(Arc::new(enumerate_partitions(m)));
    }
    Arc::clone(&guard[n])
}

/// Weak compositions of `total` into `slots` parts, lexicographically decreasing.
pub fn compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, slots_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots_left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            go(remaining - first, slots_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if slots == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, slots, &mut Vec::new(), &mut out);
    out
}

/// All `slots`-tuples of partitions whose sizes add up to `total`.
///
/// Ordered first by the size composition (decreasing), then by the
/// canonical order of each slot's partition list.
pub fn partition_tuples(total: usize, slots: usize) -> Vec<Vec<Partition>> {
    fn product(lists: &[Arc<Vec<Partition>>], prefix: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        match lists.split_first() {
            None => out.push(prefix.clone()),
            Some((head, rest)) => {
                for part in head.iter() {
                    prefix.push(part.clone());
                    product(rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    for sizes in compositions(total, slots) {
        let lists: Vec<Arc<Vec<Partition>>> = sizes.iter().map(|&s| partitions_of(s)).collect();
        product(&lists, &mut Vec::with_capacity(slots), &mut out);
    }
    out
}
