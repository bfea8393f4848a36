use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyring::{Int, Monomial, PolyJson, Polynomial, VarTable};

use super::ComposeError;

/// Argument prefixes: argument `a` of a map uses coordinates `<prefix>1..`.
pub const ARG_PREFIXES: [&str; 3] = ["x", "y", "z"];

/// `out_i = sum c_(i, j1..jk) * arg1[j1] * ... * argk[jk]` with coefficients
/// polynomial in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearMap {
    k: usize,
    h: usize,
    params: Arc<VarTable>,
    // Per output, index tuple -> coefficient over `params`.
    outputs: Vec<BTreeMap<Vec<usize>, Polynomial>>,
}

impl MultilinearMap {
    /// Reads a map off `h` output polynomials over a table holding the
    /// parameters and the coordinates `x1..`, `y1..` (and `z1..` for
    /// `k = 3`). Every term must carry exactly one coordinate of each
    /// argument.
    pub fn from_forms(
        params: &Arc<VarTable>,
        k: usize,
        forms: &[Polynomial],
    ) -> Result<MultilinearMap, ComposeError> {
        if !(2..=3).contains(&k) {
            return Err(ComposeError::NotMultilinear(format!("arity {k} unsupported")));
        }
        let h = forms.len();
        let mut outputs = Vec::with_capacity(h);
        for (i, f) in forms.iter().enumerate() {
            let table = f.vars();
            let slots: Vec<Vec<Option<usize>>> = ARG_PREFIXES[..k]
                .iter()
                .map(|p| (1..=h).map(|j| table.index_of(&format!("{p}{j}"))).collect())
                .collect();
            let mut out: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
            for (m, c) in f.terms() {
                let mut idx = Vec::with_capacity(k);
                let mut rest = *m;
                for arg in &slots {
                    let hits: Vec<usize> = arg
                        .iter()
                        .enumerate()
                        .filter_map(|(j, s)| s.filter(|&v| m.exponent(v) > 0).map(|v| (j, v)))
                        .map(|(j, v)| {
                            rest.set_exponent(v, 0);
                            if m.exponent(v) == 1 {
                                j
                            } else {
                                usize::MAX
                            }
                        })
                        .collect();
                    match hits.as_slice() {
                        [j] if *j != usize::MAX => idx.push(*j),
                        _ => {
                            return Err(ComposeError::NotMultilinear(format!(
                                "output {} has a term that is not multilinear",
                                i + 1
                            )))
                        }
                    }
                }
                let coeff = Polynomial::term(table, c.clone(), rest).rebase(params)?;
                let slot = out
                    .entry(idx)
                    .or_insert_with(|| Polynomial::zero(params));
                slot.add_assign_poly(&coeff)?;
            }
            out.retain(|_, c| !c.is_zero());
            outputs.push(out);
        }
        Ok(MultilinearMap {
            k,
            h,
            params: params.clone(),
            outputs,
        })
    }

    /// Parses one output expression per coordinate, written in the
    /// parameters and `x1..`, `y1..`, `z1..`.
    pub fn parse(
        params: &Arc<VarTable>,
        k: usize,
        texts: &[&str],
    ) -> Result<MultilinearMap, ComposeError> {
        let table = map_table(params, k, texts.len())?;
        let forms = texts
            .iter()
            .map(|t| Polynomial::parse(&table, t))
            .collect::<Result<Vec<_>, _>>()?;
        MultilinearMap::from_forms(params, k, &forms)
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.h
    }

    pub fn params(&self) -> &Arc<VarTable> {
        &self.params
    }

    /// Nonzero coefficients of output `i`, keyed by argument indices.
    pub fn coefficients(&self, i: usize) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.outputs[i].iter()
    }

    /// Output polynomials over `params, x.., y.. (, z..)`.
    pub fn to_forms(&self) -> Result<(Arc<VarTable>, Vec<Polynomial>), ComposeError> {
        let table = map_table(&self.params, self.k, self.h)?;
        let args: Vec<Vec<Polynomial>> = ARG_PREFIXES[..self.k]
            .iter()
            .map(|p| {
                (1..=self.h)
                    .map(|j| Polynomial::var(&table, &format!("{p}{j}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let refs: Vec<&[Polynomial]> = args.iter().map(Vec::as_slice).collect();
        let forms = self.apply_symbolic(&table, &refs)?;
        Ok((table, forms))
    }

    /// Applies the map to polynomial vectors over `table`, which must contain
    /// the parameters.
    pub fn apply_symbolic(
        &self,
        table: &Arc<VarTable>,
        args: &[&[Polynomial]],
    ) -> Result<Vec<Polynomial>, ComposeError> {
        self.check_args(args.iter().map(|a| a.len()))?;
        let mut out = Vec::with_capacity(self.h);
        for coeffs in &self.outputs {
            let mut acc = Polynomial::zero(table);
            for (idx, c) in coeffs {
                let mut term = c.rebase(table)?;
                for (a, &j) in idx.iter().enumerate() {
                    let v = &args[a][j];
                    if v.is_zero() {
                        term = Polynomial::zero(table);
                        break;
                    }
                    term = term.checked_mul(v)?;
                }
                acc.add_assign_poly(&term)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Numeric application; every parameter must already be specialized.
    pub fn apply(&self, args: &[&[BigInt]]) -> Result<Vec<BigInt>, ComposeError> {
        self.check_args(args.iter().map(|a| a.len()))?;
        let mut out = Vec::with_capacity(self.h);
        for coeffs in &self.outputs {
            let mut acc = BigInt::zero();
            for (idx, c) in coeffs {
                let mut t = self.constant(c)?.to_bigint();
                for (a, &j) in idx.iter().enumerate() {
                    t *= &args[a][j];
                }
                acc += t;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// The integer matrix of `y -> map(x, y)` for a pairwise map, or of
    /// `v -> map(args[0], .., v)` with every argument but the last fixed.
    pub fn last_argument_matrix(&self, fixed: &[&[BigInt]]) -> Result<Vec<Vec<BigInt>>, ComposeError> {
        if fixed.len() + 1 != self.k {
            return Err(ComposeError::DimensionMismatch {
                expected: self.k - 1,
                found: fixed.len(),
            });
        }
        self.check_args(fixed.iter().map(|a| a.len()).chain([self.h]))?;
        let mut m = vec![vec![BigInt::zero(); self.h]; self.h];
        for (i, coeffs) in self.outputs.iter().enumerate() {
            for (idx, c) in coeffs {
                let mut t = self.constant(c)?.to_bigint();
                for (a, v) in fixed.iter().enumerate() {
                    t *= &v[idx[a]];
                }
                m[i][idx[self.k - 1]] += t;
            }
        }
        Ok(m)
    }

    fn constant(&self, c: &Polynomial) -> Result<Int, ComposeError> {
        if c.is_constant() {
            Ok(c.constant_term())
        } else {
            Err(ComposeError::UnboundParameters(
                c.support().iter().map(|&i| c.vars().name(i).to_string()).collect(),
            ))
        }
    }

    fn check_args(&self, lens: impl Iterator<Item = usize>) -> Result<(), ComposeError> {
        let lens: Vec<usize> = lens.collect();
        if lens.len() != self.k {
            return Err(ComposeError::DimensionMismatch {
                expected: self.k,
                found: lens.len(),
            });
        }
        for l in lens {
            if l != self.h {
                return Err(ComposeError::DimensionMismatch {
                    expected: self.h,
                    found: l,
                });
            }
        }
        Ok(())
    }

    /// Sets some parameters to integers; the rest stay symbolic.
    pub fn specialize(&self, values: &[(String, Int)]) -> Result<MultilinearMap, ComposeError> {
        let map: std::collections::HashMap<String, Int> = values
            .iter()
            .filter(|(n, _)| self.params.contains(n))
            .cloned()
            .collect();
        let rest: Vec<String> = self
            .params
            .names()
            .iter()
            .filter(|n| !map.contains_key(*n))
            .cloned()
            .collect();
        let table = VarTable::new(rest)?;
        let outputs = self
            .outputs
            .iter()
            .map(|o| {
                let mut out = BTreeMap::new();
                for (idx, c) in o {
                    let c = c.specialize(&map)?.rebase(&table)?;
                    if !c.is_zero() {
                        out.insert(idx.clone(), c);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, ComposeError>>()?;
        Ok(MultilinearMap {
            k: self.k,
            h: self.h,
            params: table,
            outputs,
        })
    }

    /// The map `(a_0, .., a_(k-1)) -> self(a_src[0], .., a_src[k-1])`.
    pub fn reorder_args(&self, src: &[usize]) -> MultilinearMap {
        assert_eq!(src.len(), self.k, "one source per argument");
        let outputs = self
            .outputs
            .iter()
            .map(|o| {
                o.iter()
                    .map(|(idx, c)| {
                        let mut new = vec![0; self.k];
                        for (a, &j) in idx.iter().enumerate() {
                            new[src[a]] = j;
                        }
                        (new, c.clone())
                    })
                    .collect()
            })
            .collect();
        MultilinearMap {
            k: self.k,
            h: self.h,
            params: self.params.clone(),
            outputs,
        }
    }

    /// Moves coefficients onto a parameter table with the same names in a
    /// possibly different order, or a superset.
    pub fn rebase_params(&self, params: &Arc<VarTable>) -> Result<MultilinearMap, ComposeError> {
        let outputs = self
            .outputs
            .iter()
            .map(|o| {
                o.iter()
                    .map(|(idx, c)| Ok((idx.clone(), c.rebase(params)?)))
                    .collect::<Result<BTreeMap<_, _>, ComposeError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultilinearMap {
            k: self.k,
            h: self.h,
            params: params.clone(),
            outputs,
        })
    }

    /// Adds `delta` to one coefficient; used to build deliberately broken
    /// maps in tests and demonstrations.
    pub fn perturbed(&self, output: usize, idx: &[usize], delta: i64) -> MultilinearMap {
        let mut out = self.clone();
        let slot = out.outputs[output]
            .entry(idx.to_vec())
            .or_insert_with(|| Polynomial::zero(&self.params));
        slot.add_term(Monomial::ONE, &Int::from(delta));
        out.outputs[output].retain(|_, c| !c.is_zero());
        out
    }
}

/// Table `params, x1..xh, y1..yh (, z1..zh)`.
pub fn map_table(params: &Arc<VarTable>, k: usize, h: usize) -> Result<Arc<VarTable>, ComposeError> {
    let mut names = params.names().to_vec();
    for p in &ARG_PREFIXES[..k] {
        for j in 1..=h {
            let name = format!("{p}{j}");
            if names.contains(&name) {
                return Err(ComposeError::NotMultilinear(format!(
                    "parameter `{name}` clashes with a coordinate"
                )));
            }
            names.push(name);
        }
    }
    Ok(VarTable::new(names)?)
}

/// Wire form `{"k":.., "h":.., "coeff":[{"i":.., "j":[..], "c":poly}]}` with
/// 1-based `i` and `j` and each `c` over the parameter list.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MapJson {
    pub k: usize,
    pub h: usize,
    pub coeff: Vec<CoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CoeffJson {
    pub i: usize,
    pub j: Vec<usize>,
    pub c: PolyJson,
}

impl From<&MultilinearMap> for MapJson {
    fn from(m: &MultilinearMap) -> Self {
        let mut coeff = Vec::new();
        for (i, o) in m.outputs.iter().enumerate() {
            for (idx, c) in o {
                coeff.push(CoeffJson {
                    i: i + 1,
                    j: idx.iter().map(|j| j + 1).collect(),
                    c: PolyJson::from(c),
                });
            }
        }
        MapJson {
            k: m.k,
            h: m.h,
            coeff,
        }
    }
}

impl MapJson {
    pub fn to_map(&self) -> Result<MultilinearMap, ComposeError> {
        let names = self.coeff.first().map(|c| c.c.vars.clone()).unwrap_or_default();
        let params = VarTable::new(names)?;
        let mut outputs = vec![BTreeMap::new(); self.h];
        for e in &self.coeff {
            if e.i == 0 || e.i > self.h || e.j.len() != self.k || e.j.iter().any(|&j| j == 0 || j > self.h) {
                return Err(ComposeError::NotMultilinear(format!(
                    "coefficient index out of range for output {}",
                    e.i
                )));
            }
            let c = e.c.to_polynomial_in(&params)?;
            outputs[e.i - 1].insert(e.j.iter().map(|j| j - 1).collect(), c);
        }
        Ok(MultilinearMap {
            k: self.k,
            h: self.h,
            params,
            outputs,
        })
    }
}

impl serde::Serialize for MultilinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapJson::from(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for MultilinearMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        <MapJson as serde::Deserialize>::deserialize(d)?
            .to_map()
            .map_err(serde::de::Error::custom)
    }
}
