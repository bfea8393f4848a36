use crate::polyring::{Int, Monomial, PolyMatrix, Polynomial};

use super::{LinError, LinearStructure};

/// Where each coordinate can be read back from a member matrix.
///
/// Position `r` names an entry whose coefficient vector is `d_r * e_r`, with
/// `d_r` a single term in the parameters; coordinate `r` is that entry divided
/// by `d_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionRecipe {
    positions: Vec<(usize, usize)>,
    divisors: Vec<Polynomial>,
}

impl ExtractionRecipe {
    /// Checks that every position isolates its coordinate with a one-term
    /// divisor.
    pub fn new(
        s: &LinearStructure,
        positions: Vec<(usize, usize)>,
    ) -> Result<ExtractionRecipe, LinError> {
        if positions.len() != s.coords() {
            return Err(LinError::BadRecipe(format!(
                "{} positions for {} coordinates",
                positions.len(),
                s.coords()
            )));
        }
        let mut divisors = Vec::with_capacity(positions.len());
        for (r, &(i, j)) in positions.iter().enumerate() {
            if i >= s.order() || j >= s.order() {
                return Err(LinError::BadRecipe(format!("position ({i}, {j}) out of range")));
            }
            match isolated_divisor(s, i, j) {
                Some((k, d)) if k == r => divisors.push(d),
                _ => {
                    return Err(LinError::BadRecipe(format!(
                        "position ({i}, {j}) does not isolate coordinate {r}"
                    )))
                }
            }
        }
        Ok(ExtractionRecipe {
            positions,
            divisors,
        })
    }

    /// First position in row-major order isolating each coordinate.
    pub fn find(s: &LinearStructure) -> Result<ExtractionRecipe, LinError> {
        let mut found: Vec<Option<(usize, usize)>> = vec![None; s.coords()];
        for i in 0..s.order() {
            for j in 0..s.order() {
                if let Some((r, _)) = isolated_divisor(s, i, j) {
                    found[r].get_or_insert((i, j));
                }
            }
        }
        let positions = found
            .into_iter()
            .enumerate()
            .map(|(r, p)| {
                p.ok_or_else(|| {
                    LinError::BadRecipe(format!("no entry isolates coordinate {r}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ExtractionRecipe::new(s, positions)
    }

    /// Recipe for `block_compose(outer, inner)` built from recipes of the two
    /// factors: positions combine blockwise and divisors multiply.
    pub fn block(
        outer: &ExtractionRecipe,
        inner: &ExtractionRecipe,
        lifted: &LinearStructure,
        inner_order: usize,
    ) -> Result<ExtractionRecipe, LinError> {
        let mut positions = Vec::new();
        for &(bi, bj) in &outer.positions {
            for &(a, b) in &inner.positions {
                positions.push((bi * inner_order + a, bj * inner_order + b));
            }
        }
        ExtractionRecipe::new(lifted, positions)
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn divisors(&self) -> &[Polynomial] {
        &self.divisors
    }

    /// Reads the coordinates off `m` and confirms that the structure
    /// instantiated at them reproduces `m` exactly.
    ///
    /// With `D` the product of the divisors, `m` lies in the span over the
    /// fraction field exactly when `D * m` equals the structure instantiated
    /// at `entry_r * D / d_r`; only then is divisibility by each `d_r`
    /// examined.
    pub fn extract(&self, s: &LinearStructure, m: &PolyMatrix) -> Result<Vec<Polynomial>, LinError> {
        if m.order() != s.order() {
            return Err(LinError::OrderMismatch {
                expected: s.order(),
                found: m.order(),
            });
        }
        let table = m.vars();
        let divisors: Vec<(Int, Monomial)> = self
            .divisors
            .iter()
            .map(|d| {
                d.rebase(table)
                    .map(|d| {
                        let (m, c) = d.as_single_term().expect("divisors are single terms");
                        (c, m)
                    })
            })
            .collect::<Result<_, _>>()?;
        let unit = divisors
            .iter()
            .all(|(c, mono)| mono.is_one() && c.abs().is_one());
        let mut big_c = Int::ONE;
        let mut big_m = Monomial::ONE;
        for (c, mono) in &divisors {
            big_c = big_c.mul(c);
            big_m = big_m.mul(mono);
        }

        let entries: Vec<&Polynomial> = self.positions.iter().map(|&(i, j)| m.get(i, j)).collect();
        let scaled: Vec<Polynomial> = if unit {
            Vec::new()
        } else {
            entries
                .iter()
                .zip(&divisors)
                .map(|(e, (c, mono))| {
                    let cof_c = big_c.div_exact(c).expect("divisor of product");
                    let cof_m = big_m.div(mono).expect("divisor of product");
                    e.mul_term(&cof_c, &cof_m)
                })
                .collect()
        };

        let quotients: Option<Vec<Polynomial>> = entries
            .iter()
            .zip(&divisors)
            .map(|(e, (c, mono))| e.div_exact_term(c, mono))
            .collect();

        // Span check on the scaled system.
        let rebuilt = if unit {
            s.instantiate_at(table, quotients.as_ref().expect("unit divisors divide"))?
        } else {
            s.instantiate_at(table, &scaled)?
        };
        for i in 0..s.order() {
            for j in 0..s.order() {
                let target = if unit {
                    m.get(i, j).clone()
                } else {
                    m.get(i, j).mul_term(&big_c, &big_m)
                };
                if rebuilt.get(i, j) != &target {
                    return Err(LinError::NotInSpan {
                        row: i,
                        col: j,
                        residual: &target - rebuilt.get(i, j),
                    });
                }
            }
        }
        match quotients {
            Some(z) => Ok(z),
            None => {
                let k = entries
                    .iter()
                    .zip(&divisors)
                    .position(|(e, (c, mono))| e.div_exact_term(c, mono).is_none())
                    .expect("some division failed");
                let (row, col) = self.positions[k];
                Err(LinError::NonExactDivision { row, col })
            }
        }
    }
}

/// `(r, L[i][j][r])` when entry `(i, j)` involves only coordinate `r` and its
/// coefficient is a single term.
fn isolated_divisor(s: &LinearStructure, i: usize, j: usize) -> Option<(usize, Polynomial)> {
    let mut hit = None;
    for r in 0..s.coords() {
        let c = s.coeff(i, j, r);
        if c.is_zero() {
            continue;
        }
        if hit.is_some() || c.as_single_term().is_none() {
            return None;
        }
        hit = Some((r, c.clone()));
    }
    hit
}
