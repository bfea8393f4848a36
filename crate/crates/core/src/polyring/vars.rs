use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::PolyError;

/// Largest number of variables a single table may hold.
///
/// Three-fold verification of an octic family needs 3 * 8 coordinates plus
/// seven parameters, which sets the practical floor.
pub const MAX_VARS: usize = 40;

/// Ordered set of distinct variable names. Indices are stable for the
/// lifetime of the table.
#[derive(Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: FxHashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<VarTable>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        let mut index = FxHashMap::default();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Table holding `self`'s names followed by the names of `other` that are
    /// not already present.
    pub fn union(&self, other: &VarTable) -> Result<Arc<VarTable>, PolyError> {
        let mut names = self.names.clone();
        names.extend(other.names.iter().filter(|n| !self.contains(n)).cloned());
        VarTable::new(names)
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Exponent vector. Slots past the owning table's length are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(exps.len()));
        }
        let mut m = [0u8; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| PolyError::DegreeOverflow)?;
        }
        Ok(Monomial(m))
    }

    /// The monomial `x_i^e`.
    pub fn var(i: usize, e: u8) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    #[inline]
    pub fn set_exponent(&mut self, i: usize, e: u8) {
        self.0[i] = e;
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i] as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials. Panics if an exponent exceeds 255, which no
    /// computation in this crate approaches.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *o = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *o = a.checked_sub(*b)?;
        }
        Some(Monomial(out))
    }

    /// Graded lexicographic comparison: total degree first, then exponents
    /// lexicographically in table order.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}
