use std::sync::Arc;

use crate::polyring::{PolyMatrix, Polynomial, VarTable};

use super::{coord_names, ExtractionRecipe, LinError, LinearStructure};

/// Bilinear coordinates of `A(x) A(y)`, over the table `params, x.., y..`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCertificate {
    pub table: Arc<VarTable>,
    pub z: Vec<Polynomial>,
    /// Set when the structure has a single coordinate, a degenerate case
    /// where closure says little about composition of forms.
    pub degenerate: bool,
}

/// Evidence that a product left the structure.
#[derive(Clone, Debug, PartialEq)]
pub struct NotClosed {
    pub row: usize,
    pub col: usize,
    /// Nonzero difference at the offending entry; `None` when the product is
    /// in the span but a coordinate is not divisible by its divisor.
    pub residual: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairOutcome {
    Closed(PairCertificate),
    NotClosed(NotClosed),
}

/// Trilinear coordinates of `A(x) A(y) A(z)` over `params, x.., y.., z..`,
/// together with the outcome of the pairwise check.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCertificate {
    pub table: Arc<VarTable>,
    pub w: Vec<Polynomial>,
    pub pair: PairOutcome,
    pub degenerate: bool,
}

impl TripleCertificate {
    /// True when three factors close but two do not.
    pub fn is_triple_only(&self) -> bool {
        matches!(self.pair, PairOutcome::NotClosed(_))
    }
}

fn closure_table(s: &LinearStructure, prefixes: &[&str]) -> Result<Arc<VarTable>, LinError> {
    let mut names = s.params().names().to_vec();
    for p in prefixes {
        for c in coord_names(p, s.coords()) {
            if names.contains(&c) {
                return Err(LinError::NameCollision(c));
            }
            names.push(c);
        }
    }
    Ok(VarTable::new(names)?)
}

fn member(s: &LinearStructure, table: &Arc<VarTable>, prefix: &str) -> Result<PolyMatrix, LinError> {
    let coords = coord_names(prefix, s.coords())
        .iter()
        .map(|c| Polynomial::var(table, c))
        .collect::<Result<Vec<_>, _>>()?;
    s.instantiate_at(table, &coords)
}

fn classify(err: LinError) -> Result<NotClosed, LinError> {
    match err {
        LinError::NotInSpan { row, col, residual } => Ok(NotClosed {
            row,
            col,
            residual: Some(residual),
        }),
        LinError::NonExactDivision { row, col } => Ok(NotClosed {
            row,
            col,
            residual: None,
        }),
        other => Err(other),
    }
}

/// Multiplies two generic members and extracts the product's coordinates.
///
/// `Ok(PairOutcome::NotClosed(_))` is a result, not a failure; `Err` is
/// reserved for malformed input.
pub fn verify_pair_closure(
    s: &LinearStructure,
    recipe: &ExtractionRecipe,
) -> Result<PairOutcome, LinError> {
    let table = closure_table(s, &["x", "y"])?;
    let a = member(s, &table, "x")?;
    let b = member(s, &table, "y")?;
    let prod = a.checked_mul(&b)?;
    match recipe.extract(s, &prod) {
        Ok(z) => Ok(PairOutcome::Closed(PairCertificate {
            table,
            z,
            degenerate: s.coords() == 1,
        })),
        Err(e) => classify(e).map(PairOutcome::NotClosed),
    }
}

/// Multiplies three generic members and extracts trilinear coordinates.
/// Returns `Ok(Err(_))` when even the triple product leaves the structure.
pub fn verify_triple_closure(
    s: &LinearStructure,
    recipe: &ExtractionRecipe,
) -> Result<Result<TripleCertificate, NotClosed>, LinError> {
    let pair = verify_pair_closure(s, recipe)?;
    let table = closure_table(s, &["x", "y", "z"])?;
    let a = member(s, &table, "x")?;
    let b = member(s, &table, "y")?;
    let c = member(s, &table, "z")?;
    let prod = a.checked_mul(&b)?.checked_mul(&c)?;
    match recipe.extract(s, &prod) {
        Ok(w) => Ok(Ok(TripleCertificate {
            table,
            w,
            pair,
            degenerate: s.coords() == 1,
        })),
        Err(e) => classify(e).map(Err),
    }
}
