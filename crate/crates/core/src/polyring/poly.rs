use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::vars::same_table;
use super::{Int, Monomial, PolyError, VarTable};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms live in a hash map keyed by exponent vector; zero coefficients are
/// never stored, so two polynomials over the same table are equal exactly
/// when their term maps are.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    terms: FxHashMap<Monomial, Int>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial {
            vars: vars.clone(),
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<Int>) -> Polynomial {
        let c = c.into();
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Polynomial, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var_index(vars, i))
    }

    pub fn var_index(vars: &Arc<VarTable>, i: usize) -> Polynomial {
        Polynomial::term(vars, Int::ONE, Monomial::var(i, 1))
    }

    pub fn term(vars: &Arc<VarTable>, c: Int, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(vars: &Arc<VarTable>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Int)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Int {
        self.coefficient_of(&Monomial::ONE)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Int {
        self.terms.get(m).cloned().unwrap_or(Int::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Int)> {
        let mut v: Vec<(Monomial, Int)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        v
    }

    /// The single term of a one-term polynomial.
    pub fn as_single_term(&self) -> Option<(Monomial, Int)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        Ok(out)
    }

    /// In-place `self += other`.
    pub fn add_assign_poly(&mut self, other: &Polynomial) -> Result<(), PolyError> {
        self.check_same(other)?;
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut acc = FxHashMap::default();
        mul_into(&mut acc, self, other);
        acc.retain(|_, c: &mut Int| !c.is_zero());
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    /// `self += a * b`, accumulating without building the product first.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) -> Result<(), PolyError> {
        self.check_same(a)?;
        self.check_same(b)?;
        mul_into(&mut self.terms, a, b);
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn scale(&self, c: &Int) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, c: &Int, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Exact division by a single term `c * m`; `None` unless every term of
    /// `self` is divisible.
    pub fn div_exact_term(&self, c: &Int, m: &Monomial) -> Option<Polynomial> {
        let mut terms = FxHashMap::default();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.div_exact(c)?);
        }
        Some(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Re-expresses the polynomial over another table, matching variables by
    /// name. Fails if a variable that actually occurs is missing from
    /// `target`.
    pub fn rebase(&self, target: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
        if same_table(&self.vars, target) {
            return Ok(Polynomial {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.exponent(i) > 0);
            map.push(match target.index_of(name) {
                Some(j) => Some(j),
                None if !used => None,
                None => return Err(PolyError::UnknownVariable(name.clone())),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::ONE;
                for (i, slot) in map.iter().enumerate() {
                    if let Some(j) = slot {
                        out.set_exponent(*j, m.exponent(i) as u8);
                    }
                }
                (out, c.clone())
            })
            .collect();
        Ok(Polynomial {
            vars: target.clone(),
            terms,
        })
    }

    /// Moves the polynomial onto a table of the same length, keeping
    /// variable positions (a positional rename).
    pub fn with_table(&self, target: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
        if target.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                found: target.len(),
            });
        }
        Ok(Polynomial {
            vars: target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Sets the named variables to integer values, keeping the same table.
    pub fn specialize(&self, values: &HashMap<String, Int>) -> Result<Polynomial, PolyError> {
        let mut slots = Vec::new();
        for (name, v) in values {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            slots.push((i, v));
        }
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m = *m;
            let mut c = c.clone();
            for &(i, v) in &slots {
                let e = m.exponent(i);
                if e > 0 {
                    c = c.mul(&v.pow(e));
                    m.set_exponent(i, 0);
                }
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    /// Exact integer value at a point assigning every variable of the table.
    pub fn eval_int(&self, point: &HashMap<String, BigInt>) -> Result<BigInt, PolyError> {
        for name in point.keys() {
            if !self.vars.contains(name) {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
        }
        let mut values = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            values.push(
                point
                    .get(name)
                    .ok_or_else(|| PolyError::UnassignedVariable(name.clone()))?
                    .clone(),
            );
        }
        Ok(self.eval_slice(&values))
    }

    /// Evaluation with values given in table order.
    pub fn eval_slice(&self, values: &[BigInt]) -> BigInt {
        let n = self.vars.len();
        assert_eq!(values.len(), n, "point dimension must match the table");
        let maxdeg: Vec<u32> = (0..n)
            .map(|i| self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut p = vec![BigInt::one()];
                for k in 1..=maxdeg[i] as usize {
                    let next = &p[k - 1] * &values[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut sum = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.to_bigint();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            sum += t;
        }
        sum
    }

    /// Replaces variables by polynomials over `target`. Variables without an
    /// assignment are mapped to the variable of the same name in `target`.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for (name, img) in assignment {
            if !self.vars.contains(name) {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
            if !same_table(img.vars(), target) {
                return Err(PolyError::VarTableMismatch);
            }
        }
        let support = self.support();
        let mut images: Vec<Option<Polynomial>> = vec![None; self.vars.len()];
        for &i in &support {
            let name = self.vars.name(i);
            images[i] = Some(match assignment.get(name) {
                Some(p) => p.clone(),
                None => Polynomial::var(target, name)?,
            });
        }
        substitute_impl(self, target, &images)
    }

    /// Splits into parts keyed by the exponents of `vars`: returns pairs
    /// `(m, c)` with `self = sum m * c`, where `m` only involves `vars` and no
    /// `c` involves them.
    pub fn split_by(&self, vars: &[usize]) -> Vec<(Monomial, Polynomial)> {
        let mut groups: FxHashMap<Monomial, Polynomial> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut key = Monomial::ONE;
            let mut rest = *m;
            for &i in vars {
                key.set_exponent(i, m.exponent(i) as u8);
                rest.set_exponent(i, 0);
            }
            groups
                .entry(key)
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(rest, c);
        }
        let mut out: Vec<_> = groups.into_iter().collect();
        out.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        out
    }

    /// Largest degree in the variables `vars` over all terms.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| m.degree_in(vars)).max().unwrap_or(0)
    }

    /// True when every term has degree exactly `d` in `vars`.
    pub fn is_homogeneous_in(&self, vars: &[usize], d: u32) -> bool {
        self.terms.keys().all(|m| m.degree_in(vars) == d)
    }
}

fn mul_into(acc: &mut FxHashMap<Monomial, Int>, a: &Polynomial, b: &Polynomial) {
    let (outer, inner) = if a.terms.len() <= b.terms.len() {
        (a, b)
    } else {
        (b, a)
    };
    acc.reserve(outer.terms.len().saturating_mul(inner.terms.len()).min(1 << 20));
    let inner: Vec<(&Monomial, &Int)> = inner.terms.iter().collect();
    for (ma, ca) in &outer.terms {
        for &(mb, cb) in &inner {
            acc.entry(ma.mul(mb)).or_default().add_product(ca, cb);
        }
    }
}

fn substitute_impl(
    p: &Polynomial,
    target: &Arc<VarTable>,
    images: &[Option<Polynomial>],
) -> Result<Polynomial, PolyError> {
    // Variables whose image is a single term are folded directly into each
    // term; the rest go through a Horner-style recursion with cached powers.
    let mut simple: Vec<(usize, Monomial, Int)> = Vec::new();
    let mut complex: Vec<usize> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(img) = img {
            match img.as_single_term() {
                Some((m, c)) => simple.push((i, m, c)),
                None if img.is_zero() => simple.push((i, Monomial::ONE, Int::ZERO)),
                None => complex.push(i),
            }
        }
    }

    let mut groups: FxHashMap<Vec<u8>, Polynomial> = FxHashMap::default();
    for (m, c) in &p.terms {
        let mut coeff = c.clone();
        let mut mono = Monomial::ONE;
        for (i, im, ic) in &simple {
            let e = m.exponent(*i);
            if e == 0 {
                continue;
            }
            coeff = coeff.mul(&ic.pow(e));
            for _ in 0..e {
                mono = mono.mul(im);
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let key: Vec<u8> = complex.iter().map(|&i| m.exponent(i) as u8).collect();
        groups
            .entry(key)
            .or_insert_with(|| Polynomial::zero(target))
            .add_term(mono, &coeff);
    }

    let mut entries: Vec<(Vec<u8>, Polynomial)> = groups.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut powers: Vec<Vec<Polynomial>> = complex
        .iter()
        .map(|&i| vec![Polynomial::one(target), images[i].clone().unwrap()])
        .collect();
    Ok(horner(&entries, 0, &mut powers, target))
}

fn horner(
    entries: &[(Vec<u8>, Polynomial)],
    level: usize,
    powers: &mut [Vec<Polynomial>],
    target: &Arc<VarTable>,
) -> Polynomial {
    if level == powers.len() {
        let mut out = Polynomial::zero(target);
        for (_, p) in entries {
            out.add_assign_poly(p).expect("same target table");
        }
        return out;
    }
    let mut out = Polynomial::zero(target);
    let mut start = 0;
    while start < entries.len() {
        let e = entries[start].0[level];
        let mut end = start;
        while end < entries.len() && entries[end].0[level] == e {
            end += 1;
        }
        let sub = horner(&entries[start..end], level + 1, powers, target);
        let e = e as usize;
        while powers[level].len() <= e {
            let next = &powers[level][powers[level].len() - 1] * &powers[level][1];
            powers[level].push(next);
        }
        if e == 0 {
            out.add_assign_poly(&sub).expect("same target table");
        } else {
            out.add_product(&powers[level][e], &sub)
                .expect("same target table");
        }
        start = end;
    }
    out
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials over different variable tables")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Int::from(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let negative = c.signum() < 0;
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for i in 0..self.vars.len() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
