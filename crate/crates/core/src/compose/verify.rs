use std::collections::HashMap;
use std::sync::Arc;

use crate::catalog::{FormFamily, FormLink, Kind, ARG_ORDERS};
use crate::linstruct::{
    coord_names, verify_pair_closure, ExtractionRecipe, LinearStructure, NotClosed, PairOutcome,
};
use crate::polyring::{Polynomial, VarTable};

use super::{map_table, ComposeError, MultilinearMap, ARG_PREFIXES};

/// Direct expansion is used while the estimated product size `T^k` stays
/// below this many terms.
pub const DIRECT_TERM_BUDGET: f64 = 1.0e5;

#[derive(Clone, Debug, PartialEq)]
pub enum IdentityCheck {
    Zero,
    Residual(Polynomial),
}

impl IdentityCheck {
    pub fn is_zero(&self) -> bool {
        matches!(self, IdentityCheck::Zero)
    }

    fn of(p: Polynomial) -> IdentityCheck {
        if p.is_zero() {
            IdentityCheck::Zero
        } else {
            IdentityCheck::Residual(p)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `f(x) f(y) - f(z)` expanded in full.
    Direct,
    /// `P(x) P(y) - P(z)` checked entrywise, with `f = det P`.
    Structural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Direct,
    Structural,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub outcome: IdentityCheck,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub family: String,
    pub arity: usize,
    pub method: Method,
    pub checks: Vec<Check>,
    /// For three-fold families: the entry where the pairwise product leaves
    /// the structure.
    pub pair_witness: Option<NotClosed>,
    maps: Vec<MultilinearMap>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_zero())
    }

    pub fn certificate(&self) -> Option<CompositionCertificate> {
        self.passed().then(|| CompositionCertificate {
            family: self.family.clone(),
            arity: self.arity,
            method: self.method,
            maps: self.maps.clone(),
        })
    }
}

/// A map (or several argument orders of one) proven to compose the family.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionCertificate {
    pub family: String,
    pub arity: usize,
    pub method: Method,
    pub maps: Vec<MultilinearMap>,
}

/// Parameter table holding the map's parameters followed by any other
/// non-coordinate variables of `f`.
fn joint_params(f: &Polynomial, map: &MultilinearMap) -> Result<Arc<VarTable>, ComposeError> {
    let mut names = map.params().names().to_vec();
    let reserved: Vec<String> = ARG_PREFIXES[..map.arity()]
        .iter()
        .flat_map(|p| coord_names(p, map.dim()))
        .collect();
    for n in f.vars().names() {
        if !names.contains(n) && !reserved.contains(n) {
            names.push(n.clone());
        }
    }
    Ok(VarTable::new(names)?)
}

fn arg_vars(table: &Arc<VarTable>, k: usize, h: usize) -> Result<Vec<Vec<Polynomial>>, ComposeError> {
    ARG_PREFIXES[..k]
        .iter()
        .map(|p| {
            coord_names(p, h)
                .iter()
                .map(|c| Ok(Polynomial::var(table, c)?))
                .collect()
        })
        .collect()
}

fn substitute_coords(
    f: &Polynomial,
    table: &Arc<VarTable>,
    images: &[Polynomial],
) -> Result<Polynomial, ComposeError> {
    let assign: HashMap<String, Polynomial> = coord_names("x", images.len())
        .into_iter()
        .zip(images.iter().cloned())
        .filter(|(n, _)| f.vars().contains(n))
        .collect();
    Ok(f.rebase(table)?.substitute(table, &assign)?)
}

/// Expands `f(x) f(y) - f(map(x, y))`, or the three-argument analogue, and
/// reports the residual. `f` is written in `x1..xh` and any parameters.
pub fn verify_identity(f: &Polynomial, map: &MultilinearMap) -> Result<IdentityCheck, ComposeError> {
    let h = map.dim();
    let k = map.arity();
    let params = joint_params(f, map)?;
    let table = map_table(&params, k, h)?;
    let args = arg_vars(&table, k, h)?;
    let fx = f.rebase(&table)?;
    let mut lhs = fx.clone();
    for a in &args[1..] {
        lhs = lhs.checked_mul(&substitute_coords(&fx, &table, a)?)?;
    }
    let refs: Vec<&[Polynomial]> = args.iter().map(Vec::as_slice).collect();
    let out = map.apply_symbolic(&table, &refs)?;
    let rhs = substitute_coords(&fx, &table, &out)?;
    Ok(IdentityCheck::of(lhs.checked_sub(&rhs)?))
}

/// Checks `P(x) P(y) = P(map(x, y))` (or the triple analogue) entrywise,
/// returning the first nonzero entry difference. `order` lists which
/// argument supplies each factor of the product; `None` means `0, 1, ..`.
pub fn verify_structural(
    s: &LinearStructure,
    map: &MultilinearMap,
    order: Option<&[usize]>,
) -> Result<IdentityCheck, ComposeError> {
    let h = map.dim();
    let k = map.arity();
    if s.coords() != h {
        return Err(ComposeError::DimensionMismatch {
            expected: s.coords(),
            found: h,
        });
    }
    let mut names = map.params().names().to_vec();
    for n in s.params().names() {
        if !names.contains(n) {
            names.push(n.clone());
        }
    }
    let table = map_table(&VarTable::new(names)?, k, h)?;
    let args = arg_vars(&table, k, h)?;
    let identity: Vec<usize> = (0..k).collect();
    let order = order.unwrap_or(&identity);
    if order.len() != k || order.iter().any(|&a| a >= k) {
        return Err(ComposeError::DimensionMismatch {
            expected: k,
            found: order.len(),
        });
    }
    let mut lhs = s.instantiate_at(&table, &args[order[0]])?;
    for &a in &order[1..] {
        lhs = lhs.checked_mul(&s.instantiate_at(&table, &args[a])?)?;
    }
    let refs: Vec<&[Polynomial]> = args.iter().map(Vec::as_slice).collect();
    let out = map.apply_symbolic(&table, &refs)?;
    let rhs = s.instantiate_at(&table, &out)?;
    for i in 0..s.order() {
        for j in 0..s.order() {
            let d = lhs.get(i, j).checked_sub(rhs.get(i, j))?;
            if !d.is_zero() {
                return Ok(IdentityCheck::Residual(d));
            }
        }
    }
    Ok(IdentityCheck::Zero)
}

fn direct_cost(fam: &FormFamily, k: usize) -> f64 {
    fam.components
        .iter()
        .map(|c| (c.term_count() as f64).powi(k as i32))
        .fold(0.0, f64::max)
}

/// Proves that the family composes under its pairwise map (`arity = 2`) or
/// under each of its triple maps (`arity = 3`).
pub fn verify_family(
    fam: &FormFamily,
    arity: usize,
    choice: MethodChoice,
) -> Result<FamilyReport, ComposeError> {
    let maps: Vec<MultilinearMap> = match arity {
        2 => fam.pair_map.iter().cloned().collect(),
        3 => fam.triple_maps.clone(),
        _ => Vec::new(),
    };
    if maps.is_empty() {
        return Err(ComposeError::WrongFamilyKind(fam.name().to_string()));
    }
    let structural_ok = fam.structure.is_some() && fam.link == FormLink::Determinant;
    let method = match choice {
        MethodChoice::Direct => Method::Direct,
        MethodChoice::Structural if structural_ok => Method::Structural,
        MethodChoice::Structural => return Err(ComposeError::NoStructure),
        MethodChoice::Auto => {
            if structural_ok && direct_cost(fam, arity) > DIRECT_TERM_BUDGET {
                Method::Structural
            } else {
                Method::Direct
            }
        }
    };

    let mut checks = Vec::new();
    if fam.components.len() > 1 {
        let mut prod = fam.components[0].clone();
        for c in &fam.components[1..] {
            prod = prod.checked_mul(c)?;
        }
        checks.push(Check {
            label: "form = product of components".into(),
            outcome: IdentityCheck::of(fam.form.checked_sub(&prod)?),
        });
    }
    for (v, map) in maps.iter().enumerate() {
        let suffix = if maps.len() > 1 {
            format!(" (argument order {})", v + 1)
        } else {
            String::new()
        };
        match method {
            Method::Direct => {
                for (i, c) in fam.components.iter().enumerate() {
                    let name = if fam.components.len() > 1 {
                        format!("f{}", i + 1)
                    } else {
                        "f".to_string()
                    };
                    checks.push(Check {
                        label: format!("{name} composes{suffix}"),
                        outcome: verify_identity(c, map)?,
                    });
                }
            }
            Method::Structural => {
                let s = fam.structure.as_ref().ok_or(ComposeError::NoStructure)?;
                checks.push(Check {
                    label: format!("matrix product closes{suffix}"),
                    outcome: verify_structural(s, map, Some(&ARG_ORDERS[v % 3][..arity]))?,
                });
            }
        }
    }

    let pair_witness = match (fam.kind(), &fam.structure) {
        (Kind::ThreeFold, Some(s)) => {
            let recipe = match &fam.recipe {
                Some(r) => r.clone(),
                None => ExtractionRecipe::find(s)?,
            };
            match verify_pair_closure(s, &recipe)? {
                PairOutcome::NotClosed(nc) => Some(nc),
                PairOutcome::Closed(_) => None,
            }
        }
        _ => None,
    };

    Ok(FamilyReport {
        family: fam.name().to_string(),
        arity,
        method,
        checks,
        pair_witness,
        maps,
    })
}
