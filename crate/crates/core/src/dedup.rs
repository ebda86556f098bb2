//! Tolerant lookup of real vectors by quantized hashing.

use std::collections::HashMap;

/// Buckets vectors on a fixed grid. A query also probes the neighbouring
/// bucket in every coordinate that lies within `tol` of a cell boundary, so
/// two vectors closer than `tol` are always found as long as `tol < grid`.
#[derive(Debug, Clone)]
pub struct TolerantIndex {
    grid: f64,
    tol: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl TolerantIndex {
    pub fn new(grid: f64, tol: f64) -> Self {
        assert!(tol < grid, "probe tolerance must be below the grid size");
        TolerantIndex { grid, tol, buckets: HashMap::new() }
    }

    fn cell(&self, x: f64) -> i64 {
        (x / self.grid).floor() as i64
    }

    pub fn insert(&mut self, key: &[f64], id: usize) {
        let cell: Vec<i64> = key.iter().map(|&x| self.cell(x)).collect();
        self.buckets.entry(cell).or_default().push(id);
    }

    /// First stored id (in insertion order within each bucket) accepted by `matches`.
    pub fn find(&self, key: &[f64], mut matches: impl FnMut(usize) -> bool) -> Option<usize> {
        let base: Vec<i64> = key.iter().map(|&x| self.cell(x)).collect();
        let mut offsets: Vec<(usize, i64)> = Vec::new();
        for (i, &x) in key.iter().enumerate() {
            let lo = self.cell(x - self.tol);
            let hi = self.cell(x + self.tol);
            if lo != base[i] {
                offsets.push((i, lo - base[i]));
            } else if hi != base[i] {
                offsets.push((i, hi - base[i]));
            }
        }
        let mut best: Option<usize> = None;
        for mask in 0u64..(1u64 << offsets.len()) {
            let mut cell = base.clone();
            for (bit, &(i, delta)) in offsets.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    cell[i] += delta;
                }
            }
            if let Some(ids) = self.buckets.get(&cell) {
                for &id in ids {
                    if best.is_none_or(|b| id < b) && matches(id) {
                        best = Some(id);
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_across_cell_boundary() {
        let mut idx = TolerantIndex::new(1e-6, 1e-7);
        idx.insert(&[0.99999999e-6, 5.0], 0);
        let hit = idx.find(&[1.00000001e-6, 5.0], |_| true);
        assert_eq!(hit, Some(0));
        assert_eq!(idx.find(&[3e-6, 5.0], |_| true), None);
    }
}
