//! Plain longest common subsequence by dynamic programming, arcs ignored.

use crate::error::{Error, Result};
use crate::model::{Assignment, Solution};

/// Longest sequence accepted by [`DpTable::new`]; bounds the table at 10^8 cells.
pub const MAX_DP_LEN: usize = 10_000;

/// Full `(|x|+1) x (|y|+1)` table of prefix LCS lengths.
#[derive(Debug, Clone)]
pub struct DpTable {
    rows: usize,
    cols: usize,
    cells: Vec<u16>,
}

impl DpTable {
    pub fn new(x: &[u8], y: &[u8]) -> Result<Self> {
        for len in [x.len(), y.len()] {
            if len > MAX_DP_LEN {
                return Err(Error::TooLong {
                    len,
                    max: MAX_DP_LEN,
                });
            }
        }
        let rows = x.len() + 1;
        let cols = y.len() + 1;
        let mut cells = vec![0u16; rows * cols];
        for i in 1..rows {
            let (prev, cur) = cells[(i - 1) * cols..(i + 1) * cols].split_at_mut(cols);
            let xi = x[i - 1];
            for j in 1..cols {
                cur[j] = if xi == y[j - 1] {
                    prev[j - 1] + 1
                } else {
                    prev[j].max(cur[j - 1])
                };
            }
        }
        Ok(Self { rows, cols, cells })
    }

    /// LCS length of `x[..i]` and `y[..j]`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.cells[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn length(&self) -> usize {
        self.get(self.rows - 1, self.cols - 1) as usize
    }

    /// Walks back from the bottom-right cell. A match is taken whenever the
    /// letters agree; otherwise the walk steps in x unless that loses length.
    pub fn traceback(&self, x: &[u8], y: &[u8]) -> Solution {
        let (mut i, mut j) = (self.rows - 1, self.cols - 1);
        let mut out = Vec::with_capacity(self.length());
        while i > 0 && j > 0 {
            if x[i - 1] == y[j - 1] {
                out.push(Assignment::new(i as u32, j as u32));
                i -= 1;
                j -= 1;
            } else if self.get(i - 1, j) >= self.get(i, j - 1) {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        out.reverse();
        Solution::new(out)
    }
}

/// LCS length in linear memory; no length limit.
pub fn lcs_length(x: &[u8], y: &[u8]) -> usize {
    let (x, y) = if x.len() < y.len() { (y, x) } else { (x, y) };
    let mut prev = vec![0u32; y.len() + 1];
    let mut cur = vec![0u32; y.len() + 1];
    for &xi in x {
        for j in 1..=y.len() {
            cur[j] = if xi == y[j - 1] {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()] as usize
}

/// One longest common subsequence as an assignment set, strictly increasing
/// in both coordinates. Arc preservation is not considered.
pub fn lcs_traceback(x: &[u8], y: &[u8]) -> Result<Solution> {
    let table = DpTable::new(x, y)?;
    Ok(table.traceback(x, y))
}
