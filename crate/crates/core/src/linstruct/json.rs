//! Wire form: `{"n":.., "h":.., "params":[..], "coeff":[[[poly per r]]]}`,
//! each polynomial over the parameter list.

use serde::{Deserialize, Serialize};

use crate::polyring::{PolyJson, VarTable};

use super::{LinError, LinearStructure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub h: usize,
    pub params: Vec<String>,
    pub coeff: Vec<Vec<Vec<PolyJson>>>,
}

impl From<&LinearStructure> for StructureJson {
    fn from(s: &LinearStructure) -> Self {
        let n = s.order();
        let h = s.coords();
        StructureJson {
            n,
            h,
            params: s.params().names().to_vec(),
            coeff: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..h).map(|r| PolyJson::from(s.coeff(i, j, r))).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

impl StructureJson {
    pub fn to_structure(&self) -> Result<LinearStructure, LinError> {
        let table = VarTable::new(self.params.iter().cloned())?;
        let shape_err = || LinError::TensorShape {
            expected: self.n * self.n * self.h,
            found: self.coeff.iter().flatten().map(Vec::len).sum(),
        };
        if self.coeff.len() != self.n {
            return Err(shape_err());
        }
        let mut coeff = Vec::with_capacity(self.n * self.n * self.h);
        for row in &self.coeff {
            if row.len() != self.n {
                return Err(shape_err());
            }
            for cell in row {
                if cell.len() != self.h {
                    return Err(shape_err());
                }
                for p in cell {
                    coeff.push(p.to_polynomial_in(&table)?);
                }
            }
        }
        LinearStructure::new(self.n, self.h, &table, coeff)
    }
}

impl Serialize for LinearStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StructureJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        StructureJson::deserialize(d)?
            .to_structure()
            .map_err(serde::de::Error::custom)
    }
}
