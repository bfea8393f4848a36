//! Matrices whose entries are linear forms in a few coordinate variables.
//!
//! A [`LinearStructure`] stores the coefficient tensor `L[i][j][r]`, whose
//! entries are polynomials in named parameters, so that entry `(i, j)` of the
//! matrix is `sum_r L[i][j][r] * x_r`. Closure under products of two or three
//! such matrices is decided symbolically, and [`block_compose`] lifts a pair of
//! structures to one of order `n * m`.

mod closure;
mod json;
mod recipe;

pub use closure::{
    verify_pair_closure, verify_triple_closure, NotClosed, PairCertificate, PairOutcome,
    TripleCertificate,
};
pub use json::StructureJson;
pub use recipe::ExtractionRecipe;

use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{Int, PolyError, PolyMatrix, Polynomial, VarTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("coordinate name `{0}` is repeated or clashes with a parameter")]
    NameCollision(String),
    #[error("parameter `{0}` occurs in both structures")]
    ParameterCollision(String),
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("coefficient tensor has {found} entries, expected {expected}")]
    TensorShape { expected: usize, found: usize },
    #[error("matrix of order {found} given to a structure of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) is not a linear combination of the structure")]
    NotInSpan {
        row: usize,
        col: usize,
        residual: Polynomial,
    },
    #[error("entry ({row}, {col}) is not divisible by its extraction divisor")]
    NonExactDivision { row: usize, col: usize },
    #[error("invalid extraction recipe: {0}")]
    BadRecipe(String),
}

/// Order-`n` matrix family linear in `h` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearStructure {
    n: usize,
    h: usize,
    params: Arc<VarTable>,
    // L[i][j][r] at index (i * n + j) * h + r, every entry over `params`.
    coeff: Vec<Polynomial>,
}

impl LinearStructure {
    pub fn new(
        n: usize,
        h: usize,
        params: &Arc<VarTable>,
        coeff: Vec<Polynomial>,
    ) -> Result<LinearStructure, LinError> {
        if coeff.len() != n * n * h {
            return Err(LinError::TensorShape {
                expected: n * n * h,
                found: coeff.len(),
            });
        }
        let coeff = coeff
            .into_iter()
            .map(|c| c.rebase(params))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearStructure {
            n,
            h,
            params: params.clone(),
            coeff,
        })
    }

    /// Builds the tensor from a closure returning `L[i][j][r]`.
    pub fn from_fn(
        n: usize,
        h: usize,
        params: &Arc<VarTable>,
        mut f: impl FnMut(usize, usize, usize) -> Polynomial,
    ) -> Result<LinearStructure, LinError> {
        let mut coeff = Vec::with_capacity(n * n * h);
        for i in 0..n {
            for j in 0..n {
                for r in 0..h {
                    coeff.push(f(i, j, r));
                }
            }
        }
        LinearStructure::new(n, h, params, coeff)
    }

    /// Builds the structure from one matrix of entries over `params` plus
    /// the coordinate names, reading `L[i][j][r]` off as the coefficient of
    /// coordinate `r`. Entries must be linear in the coordinates.
    pub fn from_matrix(
        params: &Arc<VarTable>,
        coords: &[&str],
        m: &PolyMatrix,
    ) -> Result<LinearStructure, LinError> {
        let n = m.order();
        let h = coords.len();
        let idx: Vec<usize> = coords
            .iter()
            .map(|c| {
                m.vars()
                    .index_of(c)
                    .ok_or_else(|| LinError::Poly(PolyError::UnknownVariable(c.to_string())))
            })
            .collect::<Result<_, _>>()?;
        let mut coeff = Vec::with_capacity(n * n * h);
        for i in 0..n {
            for j in 0..n {
                let entry = m.get(i, j);
                if !entry.is_homogeneous_in(&idx, 1) {
                    return Err(LinError::BadRecipe(format!(
                        "entry ({i}, {j}) is not linear in the coordinates"
                    )));
                }
                let parts = entry.split_by(&idx);
                for &r in &idx {
                    let key = crate::polyring::Monomial::var(r, 1);
                    let part = parts
                        .iter()
                        .find(|(k, _)| *k == key)
                        .map(|(_, c)| c.rebase(params))
                        .transpose()?
                        .unwrap_or_else(|| Polynomial::zero(params));
                    coeff.push(part);
                }
            }
        }
        LinearStructure::new(n, h, params, coeff)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> usize {
        self.h
    }

    pub fn params(&self) -> &Arc<VarTable> {
        &self.params
    }

    pub fn coeff(&self, i: usize, j: usize, r: usize) -> &Polynomial {
        &self.coeff[(i * self.n + j) * self.h + r]
    }

    /// The constant-coefficient matrix `L[.][.][r]` as a column-major-free
    /// view: all `n * n` entries for coordinate `r`, row-major.
    pub fn slice(&self, r: usize) -> Vec<&Polynomial> {
        (0..self.n * self.n)
            .map(|k| &self.coeff[k * self.h + r])
            .collect()
    }

    /// Matrix over `params ∪ coord_names` with entry `(i, j) = sum_r L[i][j][r] * coord_r`.
    pub fn instantiate(&self, coord_names: &[&str]) -> Result<PolyMatrix, LinError> {
        if coord_names.len() != self.h {
            return Err(LinError::CoordinateCount {
                expected: self.h,
                found: coord_names.len(),
            });
        }
        let mut names: Vec<String> = self.params.names().to_vec();
        for c in coord_names {
            if names.iter().any(|n| n == c) {
                return Err(LinError::NameCollision(c.to_string()));
            }
            names.push(c.to_string());
        }
        let table = VarTable::new(names)?;
        let coords = coord_names
            .iter()
            .map(|c| Polynomial::var(&table, c))
            .collect::<Result<Vec<_>, _>>()?;
        self.instantiate_at(&table, &coords)
    }

    /// Matrix with coordinate `r` replaced by the polynomial `coords[r]`, all
    /// over `table`, which must contain the parameters.
    pub fn instantiate_at(
        &self,
        table: &Arc<VarTable>,
        coords: &[Polynomial],
    ) -> Result<PolyMatrix, LinError> {
        if coords.len() != self.h {
            return Err(LinError::CoordinateCount {
                expected: self.h,
                found: coords.len(),
            });
        }
        let lifted = self
            .coeff
            .iter()
            .map(|c| c.rebase(table))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let mut e = Polynomial::zero(table);
                for (r, x) in coords.iter().enumerate() {
                    let l = &lifted[(i * self.n + j) * self.h + r];
                    if !l.is_zero() && !x.is_zero() {
                        e.add_product(l, x)?;
                    }
                }
                row.push(e);
            }
            rows.push(row);
        }
        Ok(PolyMatrix::from_rows(table, rows)?)
    }

    /// Substitutes integer values for some parameters. The result keeps the
    /// remaining parameters, in their original order.
    pub fn specialize(&self, values: &[(String, Int)]) -> Result<LinearStructure, LinError> {
        let map: std::collections::HashMap<String, Int> = values.iter().cloned().collect();
        let rest: Vec<String> = self
            .params
            .names()
            .iter()
            .filter(|n| !map.contains_key(*n))
            .cloned()
            .collect();
        let table = VarTable::new(rest)?;
        let coeff = self
            .coeff
            .iter()
            .map(|c| c.specialize(&map)?.rebase(&table))
            .collect::<Result<Vec<_>, _>>()?;
        LinearStructure::new(self.n, self.h, &table, coeff)
    }

    /// Renames parameters; names absent from `renames` are kept.
    pub fn rename_params(&self, renames: &[(String, String)]) -> Result<LinearStructure, LinError> {
        let names: Vec<String> = self
            .params
            .names()
            .iter()
            .map(|n| {
                renames
                    .iter()
                    .find(|(from, _)| from == n)
                    .map_or_else(|| n.clone(), |(_, to)| to.clone())
            })
            .collect();
        let table = VarTable::new(names)?;
        let coeff = self
            .coeff
            .iter()
            .map(|c| c.with_table(&table))
            .collect::<Result<Vec<_>, _>>()?;
        LinearStructure::new(self.n, self.h, &table, coeff)
    }

    /// Determinant of the generic member, over `params ∪ coord_names`.
    pub fn determinant(&self, coord_names: &[&str]) -> Result<Polynomial, LinError> {
        Ok(self.instantiate(coord_names)?.determinant())
    }
}

/// Coordinate names `prefix1 .. prefixh`.
pub fn coord_names(prefix: &str, h: usize) -> Vec<String> {
    (1..=h).map(|i| format!("{prefix}{i}")).collect()
}

/// Block lifting: entry block `(I, J)` of the result is
/// `sum_r L_outer[I][J][r] * A_r`, where `A_r` is the inner structure on the
/// `r`-th slice of coordinates. Coordinate `r * h_inner + s` is inner
/// coordinate `s` of slice `r`, and row `I * m + a` is row `a` of block row
/// `I`.
pub fn block_compose(
    outer: &LinearStructure,
    inner: &LinearStructure,
) -> Result<LinearStructure, LinError> {
    for name in inner.params.names() {
        if outer.params.contains(name) {
            return Err(LinError::ParameterCollision(name.clone()));
        }
    }
    let params = outer.params.union(&inner.params)?;
    let lift = |s: &LinearStructure| {
        s.coeff
            .iter()
            .map(|c| c.rebase(&params))
            .collect::<Result<Vec<_>, _>>()
    };
    let (lo, li) = (lift(outer)?, lift(inner)?);
    let (n, m, h, hi) = (outer.n, inner.n, outer.h, inner.h);
    let order = n * m;
    let coords = h * hi;
    let mut coeff = Vec::with_capacity(order * order * coords);
    for row in 0..order {
        let (bi, a) = (row / m, row % m);
        for col in 0..order {
            let (bj, b) = (col / m, col % m);
            for r in 0..h {
                let o = &lo[(bi * n + bj) * h + r];
                for s in 0..hi {
                    let i = &li[(a * m + b) * hi + s];
                    coeff.push(if o.is_zero() || i.is_zero() {
                        Polynomial::zero(&params)
                    } else {
                        o * i
                    });
                }
            }
        }
    }
    LinearStructure::new(order, coords, &params, coeff)
}

/// The structure `x_1 I + x_2 M + ... + x_n M^(n-1)` for the companion matrix
/// `M` of `x^n + a_1 x^(n-1) + ... + a_n`, given `[a_1, ..., a_n]`.
pub fn companion_structure(monic_coeffs: &[Int]) -> Result<LinearStructure, LinError> {
    let n = monic_coeffs.len();
    let params = VarTable::new(Vec::<String>::new())?;
    // Companion matrix with ones on the subdiagonal and the negated
    // coefficients in the last column: M e_j = e_(j+1) for j < n - 1.
    let mut comp = vec![vec![Int::ZERO; n]; n];
    for j in 0..n.saturating_sub(1) {
        comp[j + 1][j] = Int::ONE;
    }
    for i in 0..n {
        comp[i][n - 1] = monic_coeffs[n - 1 - i].neg();
    }
    let mut powers = Vec::with_capacity(n);
    let mut cur: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect();
    for _ in 0..n {
        powers.push(cur.clone());
        let mut next = vec![vec![Int::ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Int::ZERO;
                for k in 0..n {
                    acc.add_product(&cur[i][k], &comp[k][j]);
                }
                next[i][j] = acc;
            }
        }
        cur = next;
    }
    LinearStructure::from_fn(n, n, &params, |i, j, r| {
        Polynomial::constant(&params, powers[r][i][j].clone())
    })
}
