use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalog::{family, FormFamily, Kind, ParamSpec};
use crate::linstruct::coord_names;
use crate::polyring::{Int, Polynomial, VarTable};

use super::verify::IdentityCheck;
use super::{map_table, ComposeError, MultilinearMap, ARG_PREFIXES};

fn pair_map(fam: &FormFamily) -> Result<&MultilinearMap, ComposeError> {
    fam.pair_map
        .as_ref()
        .ok_or_else(|| ComposeError::WrongFamilyKind(fam.name().to_string()))
}

fn unit_vector(h: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); h];
    e[0] = BigInt::one();
    e
}

/// The neutral element `(1, 0, .., 0)`, after checking symbolically that
/// `map(x, e) = map(e, x) = x`.
pub fn identity_element(fam: &FormFamily) -> Result<Vec<BigInt>, ComposeError> {
    let map = pair_map(fam)?;
    let h = map.dim();
    let table = map_table(map.params(), 2, h)?;
    let x: Vec<Polynomial> = coord_names("x", h)
        .iter()
        .map(|c| Polynomial::var(&table, c))
        .collect::<Result<_, _>>()?;
    let e: Vec<Polynomial> = unit_vector(h)
        .iter()
        .map(|v| Polynomial::constant(&table, Int::from(v)))
        .collect();
    for args in [[&x[..], &e[..]], [&e[..], &x[..]]] {
        if map.apply_symbolic(&table, &args)? != x {
            return Err(ComposeError::NoIdentity(fam.name().to_string()));
        }
    }
    Ok(unit_vector(h))
}

fn numeric_form(fam: &FormFamily) -> Result<&Polynomial, ComposeError> {
    if !fam.params.is_empty() {
        return Err(ComposeError::UnboundParameters(fam.params.names().to_vec()));
    }
    Ok(&fam.form)
}

/// The `y` with `map(x, y) = e`, for a unit `x` of a specialized family.
pub fn invert(fam: &FormFamily, x: &[BigInt]) -> Result<Vec<BigInt>, ComposeError> {
    let map = pair_map(fam)?;
    let f = numeric_form(fam)?;
    if x.len() != fam.dim() {
        return Err(ComposeError::DimensionMismatch {
            expected: fam.dim(),
            found: x.len(),
        });
    }
    let value = f.eval_slice(x);
    if value.abs() != BigInt::one() {
        return Err(ComposeError::NotAUnit(value.to_string()));
    }
    let m = map.last_argument_matrix(&[x])?;
    let y = solve_rational(&m, &unit_vector(fam.dim())).ok_or(ComposeError::SingularMap)?;
    if y.iter().any(|v| !v.is_integer()) {
        return Err(ComposeError::NonIntegralInverse(
            y.iter().map(|v| v.to_string()).collect(),
        ));
    }
    Ok(y.into_iter().map(|v| v.to_integer()).collect())
}

/// Gaussian elimination over the rationals; `None` if `m` is singular.
fn solve_rational(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .chain(std::iter::once(bi))
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= p * &factor;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// `map(map(x, y), z) - map(x, map(y, z))`, first nonzero coordinate.
pub fn check_associativity(map: &MultilinearMap) -> Result<IdentityCheck, ComposeError> {
    if map.arity() != 2 {
        return Err(ComposeError::DimensionMismatch {
            expected: 2,
            found: map.arity(),
        });
    }
    let h = map.dim();
    let table = map_table(map.params(), 3, h)?;
    let args: Vec<Vec<Polynomial>> = ARG_PREFIXES
        .iter()
        .map(|p| {
            coord_names(p, h)
                .iter()
                .map(|c| Polynomial::var(&table, c))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let xy = map.apply_symbolic(&table, &[&args[0], &args[1]])?;
    let left = map.apply_symbolic(&table, &[&xy, &args[2]])?;
    let yz = map.apply_symbolic(&table, &[&args[1], &args[2]])?;
    let right = map.apply_symbolic(&table, &[&args[0], &yz])?;
    for (l, r) in left.iter().zip(&right) {
        let d = l.checked_sub(r)?;
        if !d.is_zero() {
            return Ok(IdentityCheck::Residual(d));
        }
    }
    Ok(IdentityCheck::Zero)
}

/// Three points with equal values of `a x1^2 + b x1 x2 + c x2^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineChain {
    pub points: [Vec<BigInt>; 3],
    /// The common value `Q(x) Q(y) Q(z)`.
    pub value: BigInt,
}

/// Applies the three argument orders of the triple map of the binary
/// quadratic to `(x, y, z)`, so that `Q(u) = Q(v) = Q(w) = Q(x) Q(y) Q(z)`.
pub fn diophantine_chain(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    x: &[BigInt],
    y: &[BigInt],
    z: &[BigInt],
) -> Result<DiophantineChain, ComposeError> {
    let values = vec![Int::from(a), Int::from(b), Int::from(c)];
    let fam = family("threefold_quadratic", &ParamSpec::Values(values))
        .map_err(|e| ComposeError::Catalog(e.to_string()))?;
    let f = numeric_form(&fam)?;
    for v in [x, y, z] {
        if v.len() != 2 {
            return Err(ComposeError::DimensionMismatch {
                expected: 2,
                found: v.len(),
            });
        }
    }
    let value = f.eval_slice(x) * f.eval_slice(y) * f.eval_slice(z);
    let mut points: Vec<Vec<BigInt>> = Vec::with_capacity(3);
    for m in &fam.triple_maps {
        let p = m.apply(&[x, y, z])?;
        if f.eval_slice(&p) != value {
            return Err(ComposeError::NoIdentity(fam.name().to_string()));
        }
        points.push(p);
    }
    let [u, v, w]: [Vec<BigInt>; 3] = points.try_into().expect("three argument orders");
    Ok(DiophantineChain {
        points: [u, v, w],
        value,
    })
}

/// The form of a symbolic three-fold family at the parameter values
/// `witness`, over the coordinates only.
pub fn verify_threefold_genuineness(
    fam: &FormFamily,
    witness: &[Int],
) -> Result<Polynomial, ComposeError> {
    if fam.kind() != Kind::ThreeFold || !fam.is_symbolic() {
        return Err(ComposeError::WrongFamilyKind(fam.name().to_string()));
    }
    if witness.len() != fam.info.params.len() {
        return Err(ComposeError::DimensionMismatch {
            expected: fam.info.params.len(),
            found: witness.len(),
        });
    }
    let values: HashMap<String, Int> = fam
        .info
        .params
        .iter()
        .map(|s| s.to_string())
        .zip(witness.iter().cloned())
        .collect();
    let coords = VarTable::new(fam.coord_names())?;
    Ok(fam.form.specialize(&values)?.rebase(&coords)?)
}
