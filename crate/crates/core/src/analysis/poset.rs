//! Comparison matrices of partial orders and the disagreement metric `d_c`.

use crate::error::{DepthError, Result};

/// `n × n` 0/1 matrix with entry `(i, j)` set when `x_i ⪯ x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl ComparisonMatrix {
    /// Validates a square 0/1 matrix with a unit diagonal.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(DepthError::LengthMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if value > 1 {
                    return Err(DepthError::InvalidMatrixEntry { row: i, col: j, value });
                }
                entries.push(value == 1);
            }
            if row[i] != 1 {
                return Err(DepthError::NonReflexive(i));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n)
                .filter(|&j| self.get(i, j))
                .all(|j| (0..n).all(|t| !self.get(j, t) || self.get(i, t)))
        })
    }

    /// Every pair is comparable (the order is a chain).
    pub fn is_total(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) || self.get(j, i)))
    }

    /// Number of entries where the two matrices differ.
    pub fn disagreements(&self, other: &Self) -> Result<u64> {
        if self.n != other.n {
            return Err(DepthError::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }
}

/// Chain induced by depth values: `x_i ⪯ x_j` iff `values[i] ≤ values[j]`.
pub fn depth_poset(values: &[f64]) -> ComparisonMatrix {
    let n = values.len();
    let mut entries = Vec::with_capacity(n * n);
    for vi in values {
        entries.extend(values.iter().map(|vj| vi <= vj));
    }
    ComparisonMatrix { n, entries }
}

/// `d_c(A, B) = Σ_ij |A_ij − B_ij| / (n² − n)`.
pub fn d_c(a: &ComparisonMatrix, b: &ComparisonMatrix) -> Result<f64> {
    let diff = a.disagreements(b)?;
    let n = a.n as u64;
    if n < 2 {
        return Err(DepthError::TooFewPoints {
            required: 2,
            found: a.n,
        });
    }
    Ok(diff as f64 / (n * n - n) as f64)
}

/// `d_c` between the chains induced by two depth vectors over the same points.
pub fn d_c_depths(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(DepthError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    d_c(&depth_poset(u), &depth_poset(v))
}

/// Number of unordered pairs with equal depth.
pub fn tie_count(values: &[f64]) -> u64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| {
            let k = run.len() as u64;
            k * (k - 1) / 2
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_chain_is_upper_triangular() {
        let m = depth_poset(&[0.1, 0.2, 0.3]);
        assert_eq!(m.rows(), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert!(m.is_reflexive() && m.is_transitive() && m.is_total());
    }

    #[test]
    fn equal_values_are_mutually_related() {
        assert_eq!(depth_poset(&[0.4; 3]).rows(), vec![vec![1; 3]; 3]);
        let m = depth_poset(&[0.2, 0.1, 0.2]);
        assert_eq!(m.rows(), vec![vec![1, 0, 1], vec![1, 1, 1], vec![1, 0, 1]]);
        assert_eq!(tie_count(&[0.2, 0.1, 0.2]), 1);
        assert_eq!(tie_count(&[0.4; 4]), 6);
    }

    #[test]
    fn reversed_chain_is_at_distance_one() {
        let up: Vec<f64> = (0..7).map(f64::from).collect();
        let down: Vec<f64> = up.iter().rev().copied().collect();
        assert_eq!(d_c_depths(&up, &down).unwrap(), 1.0);
        assert_eq!(d_c_depths(&up, &up).unwrap(), 0.0);
    }

    #[test]
    fn from_rows_validation() {
        assert!(ComparisonMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).is_ok());
        assert_eq!(
            ComparisonMatrix::from_rows(&[vec![0, 0], vec![1, 1]]),
            Err(DepthError::NonReflexive(0))
        );
        assert!(matches!(
            ComparisonMatrix::from_rows(&[vec![1, 2], vec![1, 1]]),
            Err(DepthError::InvalidMatrixEntry { .. })
        ));
        assert!(ComparisonMatrix::from_rows(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn antichain_is_not_total() {
        let anti = ComparisonMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!anti.is_total());
        assert!(anti.is_transitive());
        let chain = depth_poset(&[1.0, 2.0]);
        assert_eq!(d_c(&anti, &chain).unwrap(), 0.5);
    }

    #[test]
    fn size_checks() {
        let a = depth_poset(&[1.0]);
        assert!(d_c(&a, &a).is_err());
        assert!(d_c(&depth_poset(&[1.0, 2.0]), &depth_poset(&[1.0, 2.0, 3.0])).is_err());
    }
}
