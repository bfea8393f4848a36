use std::sync::Arc;

use super::vars::same_table;
use super::{PolyError, Polynomial, VarTable};

/// Square matrix of polynomials over one shared variable table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    vars: Arc<VarTable>,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(vars: &Arc<VarTable>, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix, PolyError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(PolyError::NotSquare);
            }
            for e in row {
                if !same_table(e.vars(), vars) {
                    return Err(PolyError::VarTableMismatch);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            n,
            vars: vars.clone(),
            entries,
        })
    }

    pub fn from_fn(
        vars: &Arc<VarTable>,
        n: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> PolyMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            n,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn identity(vars: &Arc<VarTable>, n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(vars, n, |i, j| {
            if i == j {
                Polynomial::one(vars)
            } else {
                Polynomial::zero(vars)
            }
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(PolyError::VarTableMismatch);
        }
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Polynomial::zero(&self.vars);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            n,
            vars: self.vars.clone(),
            entries,
        })
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Result<Polynomial, PolyError>) -> Result<PolyMatrix, PolyError> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        let vars = entries.first().map_or(self.vars.clone(), |e| e.vars().clone());
        Ok(PolyMatrix {
            n: self.n,
            vars,
            entries,
        })
    }

    pub fn rebase(&self, target: &Arc<VarTable>) -> Result<PolyMatrix, PolyError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.rebase(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            n: self.n,
            vars: target.clone(),
            entries,
        })
    }

    /// Exact determinant by dynamic programming over column subsets.
    ///
    /// `minors[S]` holds the minor built from the first `|S|` rows and the
    /// columns in `S`; each layer extends by one row using Laplace expansion
    /// along that row. This needs `2^n * n` polynomial products and no
    /// division, which suits sparse multivariate entries.
    pub fn determinant(&self) -> Polynomial {
        let n = self.n;
        assert!(n >= 1, "determinant of an empty matrix");
        assert!(n <= 20, "subset determinant limited to order 20");
        let mut layer: Vec<(u32, Polynomial)> = vec![(0, Polynomial::one(&self.vars))];
        for row in 0..n {
            let mut next: Vec<(u32, Polynomial)> = Vec::new();
            // Iterate supersets in a fixed order so that the accumulation
            // order is reproducible.
            let mut targets: Vec<u32> = Vec::new();
            for (mask, _) in &layer {
                for col in 0..n {
                    let bit = 1u32 << col;
                    if mask & bit == 0 && !self.get(row, col).is_zero() {
                        targets.push(mask | bit);
                    }
                }
            }
            targets.sort_unstable();
            targets.dedup();
            let prev: rustc_hash::FxHashMap<u32, &Polynomial> =
                layer.iter().map(|(m, p)| (*m, p)).collect();
            for target in targets {
                let mut acc = Polynomial::zero(&self.vars);
                for col in 0..n {
                    let bit = 1u32 << col;
                    if target & bit == 0 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    let Some(minor) = prev.get(&(target & !bit)) else {
                        continue;
                    };
                    if entry.is_zero() || minor.is_zero() {
                        continue;
                    }
                    // Column `col` sits at position `pos` among the columns of
                    // `target`, and this row is the last of the minor.
                    let pos = (target & (bit - 1)).count_ones() as usize;
                    if (row + pos).is_multiple_of(2) {
                        acc.add_product(minor, entry).expect("shared table");
                    } else {
                        acc.add_product(minor, &-entry).expect("shared table");
                    }
                }
                if !acc.is_zero() {
                    next.push((target, acc));
                }
            }
            layer = next;
            if layer.is_empty() {
                return Polynomial::zero(&self.vars);
            }
        }
        layer
            .pop()
            .map(|(_, p)| p)
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }
}
