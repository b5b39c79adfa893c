//! The graded Betti data of a Jacobian algebra.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("n must be at least 2 (got {0})")]
    SmallN(usize),
    #[error("d must be at least 3 (got {0})")]
    SmallD(u64),
    #[error("{got} columns given but n = {n}")]
    TooManyColumns { n: usize, got: usize },
}

/// Degrees `d_{k,i}` of the free modules `E_k = ⊕ S(1 - d - d_{k,i})`,
/// `k = 1..=n`, in a minimal resolution
/// `0 -> E_n -> ... -> E_1 -> S^{n+1}(1-d) -> S` of `M(f) = S/J_f`.
///
/// Columns are kept sorted; `m_k` is the length of column `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiTable {
    n: usize,
    d: u64,
    columns: Vec<Vec<u64>>,
}

impl BettiTable {
    /// `columns[k-1]` holds the multiset for `E_k`; missing trailing columns
    /// are empty.
    pub fn new(n: usize, d: u64, columns: Vec<Vec<u64>>) -> Result<Self, TableError> {
        if n < 2 {
            return Err(TableError::SmallN(n));
        }
        if d < 3 {
            return Err(TableError::SmallD(d));
        }
        if columns.len() > n {
            return Err(TableError::TooManyColumns { n, got: columns.len() });
        }
        let mut columns = columns;
        columns.resize(n, Vec::new());
        for c in &mut columns {
            c.sort_unstable();
        }
        Ok(BettiTable { n, d, columns })
    }

    /// Builds from `(value, multiplicity)` runs per column, e.g. `2_9, 3`.
    pub fn from_runs(n: usize, d: u64, runs: &[&[(u64, usize)]]) -> Result<Self, TableError> {
        let cols = runs
            .iter()
            .map(|col| col.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m)).collect())
            .collect();
        BettiTable::new(n, d, cols)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Column `k` for `1 <= k <= n`.
    pub fn column(&self, k: usize) -> &[u64] {
        assert!((1..=self.n).contains(&k), "column index {k} out of 1..={}", self.n);
        &self.columns[k - 1]
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    /// `m_k`.
    pub fn rank(&self, k: usize) -> usize {
        self.column(k).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.columns.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_pads() {
        let t = BettiTable::new(3, 3, vec![vec![2, 1, 2, 1, 2], vec![3, 3]]).unwrap();
        assert_eq!(t.column(1), &[1, 1, 2, 2, 2]);
        assert_eq!(t.column(3), &[] as &[u64]);
        assert_eq!(t.ranks(), vec![5, 2, 0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(BettiTable::new(1, 3, vec![]), Err(TableError::SmallN(1)));
        assert_eq!(BettiTable::new(2, 2, vec![]), Err(TableError::SmallD(2)));
        assert!(matches!(
            BettiTable::new(2, 3, vec![vec![], vec![], vec![]]),
            Err(TableError::TooManyColumns { .. })
        ));
    }

    #[test]
    fn runs() {
        let t = BettiTable::from_runs(4, 3, &[&[(2, 9), (3, 1)], &[(4, 7), (5, 3)], &[(6, 2), (7, 3)], &[(9, 1)]]).unwrap();
        assert_eq!(t.ranks(), vec![10, 10, 5, 1]);
    }
}
