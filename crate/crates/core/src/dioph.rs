//! Integer solutions of `f(x) = 1`: membership, sequences generated by the
//! composition maps, and an exhaustive search used as an oracle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{family, CatalogError, FormFamily, Kind, ParamSpec};
use crate::compose::{ComposeError, MultilinearMap};
use crate::polyring::Int;

/// Largest box `brute_force_search` will enumerate.
pub const SEARCH_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiophError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("family `{0}` still has symbolic parameters")]
    SymbolicParams(String),
    #[error("seed {0} is not a solution")]
    SeedNotSolution(SolutionVec),
    #[error("step {0} is not a solution")]
    StepNotSolution(SolutionVec),
    #[error("iterate {index} ({vector}) is not a solution")]
    IterateNotSolution { index: usize, vector: SolutionVec },
    #[error("search box has {points} points, more than the limit of {SEARCH_LIMIT}")]
    SearchSpaceTooLarge { points: u128 },
    #[error("argument order must be a permutation of `xyz`, got `{0}`")]
    BadOrder(String),
}

/// An integer vector; serialized as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionVec {
    pub coords: Vec<BigInt>,
}

impl SolutionVec {
    pub fn new(coords: Vec<BigInt>) -> SolutionVec {
        SolutionVec { coords }
    }

    pub fn from_i64(v: &[i64]) -> SolutionVec {
        SolutionVec::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `(1, 0, .., 0)`.
    pub fn unit(h: usize) -> SolutionVec {
        let mut v = vec![BigInt::zero(); h];
        if h > 0 {
            v[0] = BigInt::one();
        }
        SolutionVec::new(v)
    }
}

impl fmt::Display for SolutionVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for SolutionVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SolutionVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(SolutionVec::new)
    }
}

fn check_dim(fam: &FormFamily, v: &SolutionVec) -> Result<(), DiophError> {
    if v.len() != fam.dim() {
        return Err(DiophError::DimensionMismatch {
            expected: fam.dim(),
            found: v.len(),
        });
    }
    if !fam.params.is_empty() {
        return Err(DiophError::SymbolicParams(fam.name().to_string()));
    }
    Ok(())
}

fn attains(fam: &FormFamily, v: &[BigInt], target: &BigInt) -> bool {
    if fam.simultaneous {
        fam.components.iter().all(|c| &c.eval_slice(v) == target)
    } else {
        &fam.form.eval_slice(v) == target
    }
}

/// `f(v) = 1`, or every component equal to one for a simultaneous system.
pub fn is_solution(fam: &FormFamily, v: &SolutionVec) -> Result<bool, DiophError> {
    check_dim(fam, v)?;
    Ok(attains(fam, &v.coords, &BigInt::one()))
}

/// Both equations of the two-form system with parameter `q`.
pub fn simultaneous_is_solution(q: &BigInt, v: &SolutionVec) -> Result<bool, DiophError> {
    let fam = family("sextic_uv", &ParamSpec::Values(vec![Int::from(q)]))?;
    is_solution(&fam, v)
}

/// Which of `x, y, z` receives the current iterate and the two fixed vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArgOrder {
    pub current: usize,
    pub fixed1: usize,
    pub fixed2: usize,
}

impl ArgOrder {
    /// `x` = current, `y` = first fixed, `z` = second fixed.
    pub const XYZ: ArgOrder = ArgOrder {
        current: 0,
        fixed1: 1,
        fixed2: 2,
    };

    /// Parses a permutation of `xyz` naming the slots of current, first
    /// fixed and second fixed vector in turn.
    pub fn parse(s: &str) -> Result<ArgOrder, DiophError> {
        let slots: Vec<usize> = s
            .chars()
            .map(|c| "xyz".find(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DiophError::BadOrder(s.to_string()))?;
        let mut seen = [false; 3];
        if slots.len() != 3 || slots.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
            return Err(DiophError::BadOrder(s.to_string()));
        }
        Ok(ArgOrder {
            current: slots[0],
            fixed1: slots[1],
            fixed2: slots[2],
        })
    }

    pub fn label(&self) -> String {
        [self.current, self.fixed1, self.fixed2]
            .iter()
            .map(|&i| ['x', 'y', 'z'][i])
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `next = z(current, step)`.
    Pairwise { step: SolutionVec },
    /// `next = w(..)` with the arguments placed according to `order`.
    Triple {
        fixed1: SolutionVec,
        fixed2: SolutionVec,
        order: ArgOrder,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub family: String,
    pub params: Vec<Int>,
    pub seed: SolutionVec,
    pub mode: Mode,
    pub count: usize,
}

/// A verified sequence, in the shape written out as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequence {
    pub family: String,
    pub params: Vec<String>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<String>,
    pub solutions: Vec<SolutionVec>,
    pub verified: bool,
}

pub fn generate_sequence(spec: &SequenceSpec) -> Result<Sequence, DiophError> {
    let fam = family(&spec.family, &ParamSpec::Values(spec.params.clone()))?;
    generate_with(&fam, &spec.seed, &spec.mode, spec.count)
}

/// As [`generate_sequence`] for an already specialized family.
pub fn generate_with(
    fam: &FormFamily,
    seed: &SolutionVec,
    mode: &Mode,
    count: usize,
) -> Result<Sequence, DiophError> {
    if !is_solution(fam, seed)? {
        return Err(DiophError::SeedNotSolution(seed.clone()));
    }
    let (map, label, order) = match mode {
        Mode::Pairwise { step } => {
            if !is_solution(fam, step)? {
                return Err(DiophError::StepNotSolution(step.clone()));
            }
            let map = fam
                .pair_map
                .as_ref()
                .ok_or_else(|| ComposeError::WrongFamilyKind(fam.name().to_string()))?;
            (map, "pairwise", None)
        }
        Mode::Triple {
            fixed1,
            fixed2,
            order,
        } => {
            for f in [fixed1, fixed2] {
                if !is_solution(fam, f)? {
                    return Err(DiophError::StepNotSolution(f.clone()));
                }
            }
            let map = fam
                .triple_maps
                .first()
                .ok_or_else(|| ComposeError::WrongFamilyKind(fam.name().to_string()))?;
            (map, "triple", Some(order.label()))
        }
    };
    let mut solutions = Vec::with_capacity(count);
    let mut current = seed.clone();
    for index in 0..count {
        if index > 0 {
            current = SolutionVec::new(step_once(map, mode, &current)?);
            if !is_solution(fam, &current)? {
                return Err(DiophError::IterateNotSolution {
                    index,
                    vector: current,
                });
            }
        }
        solutions.push(current.clone());
    }
    Ok(Sequence {
        family: fam.name().to_string(),
        params: fam
            .values
            .iter()
            .flatten()
            .map(|v| v.to_string())
            .collect(),
        mode: label.to_string(),
        order,
        solutions,
        verified: true,
    })
}

fn step_once(map: &MultilinearMap, mode: &Mode, current: &SolutionVec) -> Result<Vec<BigInt>, DiophError> {
    Ok(match mode {
        Mode::Pairwise { step } => map.apply(&[&current.coords, &step.coords])?,
        Mode::Triple {
            fixed1,
            fixed2,
            order,
        } => {
            let mut args: [&[BigInt]; 3] = [&[], &[], &[]];
            args[order.current] = &current.coords;
            args[order.fixed1] = &fixed1.coords;
            args[order.fixed2] = &fixed2.coords;
            map.apply(&args)?
        }
    })
}

/// Integer matrix `U` with `next = U * current` for the given mode.
pub fn update_matrix(fam: &FormFamily, mode: &Mode) -> Result<Vec<Vec<BigInt>>, DiophError> {
    match mode {
        Mode::Pairwise { step } => {
            let map = fam
                .pair_map
                .as_ref()
                .ok_or_else(|| ComposeError::WrongFamilyKind(fam.name().to_string()))?;
            Ok(map.reorder_args(&[1, 0]).last_argument_matrix(&[&step.coords])?)
        }
        Mode::Triple {
            fixed1,
            fixed2,
            order,
        } => {
            let map = fam
                .triple_maps
                .first()
                .ok_or_else(|| ComposeError::WrongFamilyKind(fam.name().to_string()))?;
            // Move the current slot last and keep the other two in order.
            let mut rest: Vec<(usize, &SolutionVec)> =
                vec![(order.fixed1, fixed1), (order.fixed2, fixed2)];
            rest.sort_by_key(|(slot, _)| *slot);
            let src = [rest[0].0, rest[1].0, order.current];
            let moved = map.reorder_args(&inverse_perm(&src));
            Ok(moved.last_argument_matrix(&[&rest[0].1.coords, &rest[1].1.coords])?)
        }
    }
}

/// `p` with `p[src[a]] = a`.
fn inverse_perm(src: &[usize; 3]) -> [usize; 3] {
    let mut p = [0; 3];
    for (a, &s) in src.iter().enumerate() {
        p[s] = a;
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotIncreasing { index: usize, coord: usize },
    NotPositive { index: usize, coord: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneReport {
    pub increasing: Vec<usize>,
    pub positive: Vec<usize>,
    pub violation: Option<Violation>,
}

impl MonotoneReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Coordinates checked for growth and for positivity: the first two for the
/// two-form system, otherwise the first for growth and all for positivity.
pub fn designated_coords(fam_name: &str, h: usize) -> (Vec<usize>, Vec<usize>) {
    if fam_name == "sextic_uv" {
        (vec![0, 1], vec![0, 1])
    } else {
        (vec![0], (0..h).collect())
    }
}

/// Strict growth of `increasing` and positivity of `positive`, reporting
/// the first failure in sequence order.
pub fn check_monotone_positive(
    seq: &[SolutionVec],
    increasing: &[usize],
    positive: &[usize],
) -> MonotoneReport {
    let mut violation = None;
    'outer: for (index, v) in seq.iter().enumerate() {
        for &c in positive {
            if !v.coords[c].is_positive() {
                violation = Some(Violation::NotPositive { index, coord: c });
                break 'outer;
            }
        }
        if index > 0 {
            for &c in increasing {
                if v.coords[c] <= seq[index - 1].coords[c] {
                    violation = Some(Violation::NotIncreasing { index, coord: c });
                    break 'outer;
                }
            }
        }
    }
    MonotoneReport {
        increasing: increasing.to_vec(),
        positive: positive.to_vec(),
        violation,
    }
}

/// Every `v` with `max |v_i| <= bound` and `f(v) = target`, in
/// lexicographic order.
pub fn brute_force_search(
    fam: &FormFamily,
    bound: u64,
    target: &BigInt,
) -> Result<Vec<SolutionVec>, DiophError> {
    let h = fam.dim();
    check_dim(fam, &SolutionVec::unit(h))?;
    let side = 2 * bound as u128 + 1;
    let points = side.checked_pow(h as u32).unwrap_or(u128::MAX);
    if points > SEARCH_LIMIT {
        return Err(DiophError::SearchSpaceTooLarge { points });
    }
    let lo = -(bound as i64);
    let mut cur = vec![lo; h];
    let mut found = Vec::new();
    let mut v: Vec<BigInt> = cur.iter().map(|&c| BigInt::from(c)).collect();
    loop {
        if attains(fam, &v, target) {
            found.push(SolutionVec::new(v.clone()));
        }
        // Odometer increment, last coordinate fastest.
        let mut i = h;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            if cur[i] < bound as i64 {
                cur[i] += 1;
                v[i] = BigInt::from(cur[i]);
                break;
            }
            cur[i] = lo;
            v[i] = BigInt::from(lo);
        }
    }
}

/// The mode used to extend a solution of a three-fold family with the
/// identity in the middle: `next = w(current, e, step)`.
pub fn triple_with_identity(fam: &FormFamily, step: SolutionVec) -> Mode {
    debug_assert_eq!(fam.kind(), Kind::ThreeFold);
    Mode::Triple {
        fixed1: SolutionVec::unit(fam.dim()),
        fixed2: step,
        order: ArgOrder::XYZ,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_parsing() {
        assert_eq!(ArgOrder::parse("xyz").unwrap(), ArgOrder::XYZ);
        let o = ArgOrder::parse("zxy").unwrap();
        assert_eq!((o.current, o.fixed1, o.fixed2), (2, 0, 1));
        assert_eq!(o.label(), "zxy");
        assert!(ArgOrder::parse("xxz").is_err());
        assert!(ArgOrder::parse("xy").is_err());
    }

    #[test]
    fn inverse_perm_roundtrip() {
        let p = inverse_perm(&[2, 0, 1]);
        assert_eq!(p, [1, 2, 0]);
    }

    #[test]
    fn solution_vec_json_uses_strings() {
        let v = SolutionVec::from_i64(&[1, -2]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1","-2"]"#);
        let back: SolutionVec = serde_json::from_str(r#"["1","-2"]"#).unwrap();
        assert_eq!(back, v);
    }
}
