//! Wire form: `{"vars":[...], "terms":[{"c":"<decimal>","e":[...]}]}` with
//! terms in descending graded-lex order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Int, Monomial, PolyError, Polynomial, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

impl From<&Polynomial> for PolyJson {
    fn from(p: &Polynomial) -> Self {
        let n = p.vars().len();
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents(n),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    /// Decodes onto a fresh table built from `vars`.
    pub fn to_polynomial(&self) -> Result<Polynomial, PolyError> {
        let table = VarTable::new(self.vars.iter().cloned())?;
        self.to_polynomial_in(&table)
    }

    /// Decodes onto an existing table whose names must match `vars`.
    pub fn to_polynomial_in(&self, table: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
        if table.names() != self.vars.as_slice() {
            return Err(PolyError::VarTableMismatch);
        }
        let mut p = Polynomial::zero(table);
        for t in &self.terms {
            if t.e.len() != self.vars.len() {
                return Err(PolyError::Json(format!(
                    "exponent vector of length {} for {} variables",
                    t.e.len(),
                    self.vars.len()
                )));
            }
            let c: Int = t
                .c
                .parse()
                .map_err(|_| PolyError::Json(format!("bad coefficient `{}`", t.c)))?;
            p.add_term(Monomial::from_exponents(&t.e)?, &c);
        }
        Ok(p)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PolyJson::deserialize(d)?
            .to_polynomial()
            .map_err(serde::de::Error::custom)
    }
}
