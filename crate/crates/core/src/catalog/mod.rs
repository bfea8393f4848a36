//! Named families of composable forms.
//!
//! Each determinant-backed family is assembled from the small structures in
//! [`structures`] by block lifting; its form is the symbolic determinant.
//! Explicit forms and maps transcribed by hand live in [`printed`] and are
//! used wherever a family exposes a map, so the tests can compare them with
//! what the matrices produce.

pub mod printed;
pub mod structures;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::compose::{ComposeError, MultilinearMap};
use crate::linstruct::{
    coord_names, verify_triple_closure, ExtractionRecipe, LinError, LinearStructure,
};
use crate::polyring::{Int, Monomial, PolyError, Polynomial, VarTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` takes {expected} parameters, got {found}")]
    ParamArity {
        family: String,
        expected: usize,
        found: usize,
    },
    #[error("expected a ternary cubic form")]
    NotTernaryCubic,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Pairwise,
    ThreeFold,
}

/// How the stored form relates to the determinant of the structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormLink {
    /// `form = det(instantiate(structure))`.
    Determinant,
    /// `form = -det(instantiate(structure))` with `t^2` renamed to `a`.
    NegatedDeterminantTSquared,
    /// No structure; the form is given directly.
    Direct,
}

#[derive(Clone, Debug)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub coords: usize,
    pub kind: Kind,
    pub description: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo {
        name: "quad2x2",
        params: &["p", "q"],
        coords: 2,
        kind: Kind::Pairwise,
        description: "binary quadratic x1^2 + p x1 x2 + q x2^2 from the 2x2 companion-type matrix",
    },
    FamilyInfo {
        name: "cubic3x3",
        params: &["lambda1", "lambda2", "lambda3", "lambda4", "lambda5"],
        coords: 3,
        kind: Kind::Pairwise,
        description: "ternary cubic, determinant of the five-parameter 3x3 structure",
    },
    FamilyInfo {
        name: "quartic4x4",
        params: &["m", "n", "p", "q"],
        coords: 4,
        kind: Kind::Pairwise,
        description: "quaternary quartic from lifting a 2x2 quadratic structure into another",
    },
    FamilyInfo {
        name: "sextic6x6",
        params: &["lambda1", "lambda2", "lambda3", "lambda4", "lambda5", "p", "q"],
        coords: 6,
        kind: Kind::Pairwise,
        description: "senary sextic from lifting the cubic structure into a 2x2 quadratic one",
    },
    FamilyInfo {
        name: "sextic_circulant",
        params: &["q"],
        coords: 6,
        kind: Kind::Pairwise,
        description: "senary sextic built from 3x3 circulants; factors as a quadratic times a quartic",
    },
    FamilyInfo {
        name: "sextic_uv",
        params: &["q"],
        coords: 6,
        kind: Kind::Pairwise,
        description: "pair f1 = x1^2 - q x2^2 and a quartic f2 sharing one composition map",
    },
    FamilyInfo {
        name: "octic8x8",
        params: &["m", "n", "p", "q", "r", "s"],
        coords: 8,
        kind: Kind::Pairwise,
        description: "octonary octic from lifting the quartic structure into a 2x2 quadratic one",
    },
    FamilyInfo {
        name: "threefold_quadratic",
        params: &["a", "b", "c"],
        coords: 2,
        kind: Kind::ThreeFold,
        description: "binary quadratic a x1^2 + b x1 x2 + c x2^2 with a trilinear triple law",
    },
    FamilyInfo {
        name: "threefold4x4",
        params: &["m", "n", "p", "q", "s", "t"],
        coords: 4,
        kind: Kind::ThreeFold,
        description: "quartic from two trace-free 2x2 structures, closed under triple products only",
    },
    FamilyInfo {
        name: "threefold8x8",
        params: &["m", "n", "p", "q", "r", "s", "t"],
        coords: 8,
        kind: Kind::ThreeFold,
        description: "octic from a trace-free structure lifted twice, closed under triple products only",
    },
];

pub fn info(name: &str) -> Result<&'static FamilyInfo, CatalogError> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| CatalogError::UnknownFamily(name.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSpec {
    Symbolic,
    Values(Vec<Int>),
}

/// A catalog entry with every parameter either symbolic or fixed.
#[derive(Clone, Debug)]
pub struct FormFamily {
    pub info: &'static FamilyInfo,
    /// Parameter values when specialized, in declaration order.
    pub values: Option<Vec<Int>>,
    /// Parameters that are still symbolic.
    pub params: Arc<VarTable>,
    /// `params` followed by `x1..xh`.
    pub table: Arc<VarTable>,
    pub form: Polynomial,
    /// Factors that compose individually under the same map; a single entry
    /// equal to `form` unless the family is a simultaneous system.
    pub components: Vec<Polynomial>,
    /// True when solutions must make every component equal to one.
    pub simultaneous: bool,
    pub structure: Option<LinearStructure>,
    pub recipe: Option<ExtractionRecipe>,
    pub link: FormLink,
    pub pair_map: Option<MultilinearMap>,
    /// Triple maps; the first is the default, the others permute arguments.
    pub triple_maps: Vec<MultilinearMap>,
}

impl FormFamily {
    pub fn name(&self) -> &'static str {
        self.info.name
    }

    pub fn kind(&self) -> Kind {
        self.info.kind
    }

    pub fn dim(&self) -> usize {
        self.info.coords
    }

    pub fn coord_names(&self) -> Vec<String> {
        coord_names("x", self.dim())
    }

    pub fn is_symbolic(&self) -> bool {
        self.values.is_none()
    }

    /// Numeric value of the form at `v`, once all parameters are fixed.
    pub fn eval(&self, v: &[num_bigint::BigInt]) -> Result<num_bigint::BigInt, CatalogError> {
        eval_poly(&self.form, v)
    }

    pub fn eval_components(
        &self,
        v: &[num_bigint::BigInt],
    ) -> Result<Vec<num_bigint::BigInt>, CatalogError> {
        self.components.iter().map(|c| eval_poly(c, v)).collect()
    }
}

fn eval_poly(p: &Polynomial, v: &[num_bigint::BigInt]) -> Result<num_bigint::BigInt, CatalogError> {
    let table = p.vars();
    if table.len() != v.len() {
        if table.len() > v.len() {
            let missing = table.names()[..table.len() - v.len()].to_vec();
            return Err(ComposeError::UnboundParameters(missing).into());
        }
        return Err(PolyError::DimensionMismatch {
            expected: table.len(),
            found: v.len(),
        }
        .into());
    }
    Ok(p.eval_slice(v))
}

/// Builds a family, specializing its parameters when values are given.
pub fn family(name: &str, spec: &ParamSpec) -> Result<FormFamily, CatalogError> {
    let info = info(name)?;
    if let ParamSpec::Values(v) = spec {
        if v.len() != info.params.len() {
            return Err(CatalogError::ParamArity {
                family: name.to_string(),
                expected: info.params.len(),
                found: v.len(),
            });
        }
    }
    let symbolic = build_symbolic(info)?;
    match spec {
        ParamSpec::Symbolic => Ok(symbolic),
        ParamSpec::Values(v) => specialize(&symbolic, v),
    }
}

fn table_for(params: &Arc<VarTable>, h: usize) -> Result<Arc<VarTable>, PolyError> {
    let mut names = params.names().to_vec();
    names.extend(coord_names("x", h));
    VarTable::new(names)
}

fn build_symbolic(info: &'static FamilyInfo) -> Result<FormFamily, CatalogError> {
    use printed::*;
    use structures::*;

    let params = VarTable::new(info.params.iter().copied())?;
    let table = table_for(&params, info.coords)?;
    let order = info.params;
    let l = ["lambda1", "lambda2", "lambda3", "lambda4", "lambda5"];

    let mut structure = None;
    let mut link = FormLink::Determinant;
    let mut pair_map = None;
    let mut triple_maps = Vec::new();
    let mut components = Vec::new();
    let mut simultaneous = false;
    let mut form = None;

    match info.name {
        "quad2x2" => {
            structure = Some(reorder(&quadratic("p", "q")?, order)?);
            pair_map = Some(parse_map(&params, 2, &QUAD_MAP)?);
        }
        "cubic3x3" => {
            structure = Some(cubic(l)?);
            pair_map = Some(parse_map(&params, 2, &CUBIC_MAP)?);
        }
        "quartic4x4" => {
            structure = Some(lift(&quadratic("p", "q")?, &quadratic("m", "n")?, order)?);
            pair_map = Some(parse_map(&params, 2, &QUARTIC_MAP)?);
        }
        "sextic6x6" => {
            structure = Some(lift(&quadratic("p", "q")?, &cubic(l)?, order)?);
            pair_map = Some(parse_map(&params, 2, &SEXTIC_MAP)?);
        }
        "sextic_circulant" => {
            structure = Some(lift(&split_quadratic("q")?, &circulant3()?, order)?);
            pair_map = Some(parse_map(&params, 2, &CIRCULANT_MAP)?);
            components = vec![
                parse_form(&table, CIRCULANT_F1)?,
                parse_form(&table, CIRCULANT_F2)?,
            ];
        }
        "sextic_uv" => {
            link = FormLink::Direct;
            pair_map = Some(parse_map(&params, 2, &UV_MAP)?);
            let f1 = parse_form(&table, UV_F1)?;
            let f2 = parse_form(&table, UV_F2)?;
            form = Some(f1.checked_mul(&f2)?);
            components = vec![f1, f2];
            simultaneous = true;
        }
        "octic8x8" => {
            let quartic = lift(&quadratic("p", "q")?, &quadratic("m", "n")?, &["m", "n", "p", "q"])?;
            structure = Some(lift(&quadratic("r", "s")?, &quartic, order)?);
            pair_map = Some(parse_map(&params, 2, &OCTIC_MAP)?);
        }
        "threefold_quadratic" => {
            structure = Some(trace_free("t", "b", "c")?);
            link = FormLink::NegatedDeterminantTSquared;
            form = Some(parse_form(&table, THREEFOLD_QUADRATIC_FORM)?);
            let phi = parse_map(&params, 3, &THREEFOLD_QUADRATIC_MAP)?;
            triple_maps = cyclic_variants(&phi);
        }
        "threefold4x4" => {
            structure = Some(lift(
                &trace_free("t", "p", "q")?,
                &trace_free("s", "m", "n")?,
                order,
            )?);
            let w = parse_map(&params, 3, &THREEFOLD4_MAP)?;
            triple_maps = cyclic_variants(&w);
        }
        "threefold8x8" => {
            let inner = lift(&quadratic("p", "q")?, &trace_free("t", "m", "n")?, &["m", "n", "p", "q", "t"])?;
            let s = lift(&quadratic("r", "s")?, &inner, order)?;
            let w = derived_triple_map(&s, &params)?;
            triple_maps = cyclic_variants(&w);
            structure = Some(s);
        }
        other => return Err(CatalogError::UnknownFamily(other.to_string())),
    }

    let recipe = match &structure {
        Some(s) => Some(ExtractionRecipe::find(s)?),
        None => None,
    };
    let form = match form {
        Some(f) => f,
        None => {
            let s = structure.as_ref().expect("determinant families have a structure");
            let coords = coord_names("x", info.coords);
            let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
            s.determinant(&refs)?.rebase(&table)?
        }
    };
    if components.is_empty() {
        components.push(form.clone());
    }
    Ok(FormFamily {
        info,
        values: None,
        params,
        table,
        form,
        components,
        simultaneous,
        structure,
        recipe,
        link,
        pair_map,
        triple_maps,
    })
}

/// Argument orders of the triple maps: `w(x, y, z)`, `w(y, z, x)`,
/// `w(z, x, y)`.
pub const ARG_ORDERS: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

pub fn cyclic_variants(w: &MultilinearMap) -> Vec<MultilinearMap> {
    ARG_ORDERS.iter().map(|o| w.reorder_args(o)).collect()
}

/// Trilinear map read off `A(x) A(y) A(z)` with coefficients over `params`.
pub fn derived_triple_map(
    s: &LinearStructure,
    params: &Arc<VarTable>,
) -> Result<MultilinearMap, CatalogError> {
    let recipe = ExtractionRecipe::find(s)?;
    match verify_triple_closure(s, &recipe)? {
        Ok(cert) => Ok(MultilinearMap::from_forms(params, 3, &cert.w)?),
        Err(nc) => Err(LinError::NotInSpan {
            row: nc.row,
            col: nc.col,
            residual: nc.residual.unwrap_or_else(|| Polynomial::zero(params)),
        }
        .into()),
    }
}

fn specialize(sym: &FormFamily, values: &[Int]) -> Result<FormFamily, CatalogError> {
    let pairs: Vec<(String, Int)> = sym
        .info
        .params
        .iter()
        .map(|p| p.to_string())
        .zip(values.iter().cloned())
        .collect();
    let map: HashMap<String, Int> = pairs.iter().cloned().collect();
    let params = VarTable::new(Vec::<String>::new())?;
    let table = table_for(&params, sym.dim())?;
    let fix = |p: &Polynomial| -> Result<Polynomial, CatalogError> {
        Ok(p.specialize(&map)?.rebase(&table)?)
    };
    let form = fix(&sym.form)?;
    let components = sym.components.iter().map(fix).collect::<Result<Vec<_>, _>>()?;

    // The trace-free structure is parametrized by `t` with `t^2 = a`, which
    // has no integer counterpart in general, so it is dropped here.
    let (structure, recipe) = match (&sym.structure, sym.link) {
        (Some(s), FormLink::Determinant) => {
            let s = s.specialize(&pairs)?;
            let recipe = sym
                .recipe
                .as_ref()
                .and_then(|r| ExtractionRecipe::new(&s, r.positions().to_vec()).ok());
            (Some(s), recipe)
        }
        _ => (None, None),
    };
    let pair_map = match &sym.pair_map {
        Some(m) => Some(m.specialize(&pairs)?),
        None => None,
    };
    let triple_maps = sym
        .triple_maps
        .iter()
        .map(|m| m.specialize(&pairs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FormFamily {
        info: sym.info,
        values: Some(values.to_vec()),
        params,
        table,
        form,
        components,
        simultaneous: sym.simultaneous,
        structure,
        recipe,
        link: if sym.link == FormLink::Determinant {
            FormLink::Determinant
        } else {
            FormLink::Direct
        },
        pair_map,
        triple_maps,
    })
}

/// Renames `t^2` to `a` and negates: the form of the trace-free 2x2
/// determinant. `None` if `t` occurs to an odd power.
pub fn fold_t_squared(det: &Polynomial, target: &Arc<VarTable>) -> Option<Polynomial> {
    let src = det.vars();
    let t = src.index_of("t");
    let a = target.index_of("a")?;
    let mut out = Polynomial::zero(target);
    for (m, c) in det.terms() {
        let mut exps = vec![0u32; target.len()];
        for i in 0..src.len() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            if Some(i) == t {
                if e % 2 == 1 {
                    return None;
                }
                exps[a] += e / 2;
            } else {
                exps[target.index_of(src.name(i))?] += e;
            }
        }
        out.add_term(Monomial::from_exponents(&exps).ok()?, &c.neg());
    }
    Some(out)
}

/// Coefficients of `x1^3`, `x2^3`, `x3^3`, and whether they are in
/// geometric progression (a necessary condition for a norm form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionTest {
    pub coefficients: [Int; 3],
    pub geometric: bool,
}

pub fn cubic_norm_progression_test(f: &Polynomial) -> Result<ProgressionTest, CatalogError> {
    let table = f.vars();
    let idx: Vec<usize> = (1..=3)
        .map(|i| table.index_of(&format!("x{i}")))
        .collect::<Option<Vec<_>>>()
        .ok_or(CatalogError::NotTernaryCubic)?;
    if table.len() != 3 || !f.is_homogeneous_in(&idx, 3) || f.is_zero() {
        return Err(CatalogError::NotTernaryCubic);
    }
    let c: Vec<Int> = idx
        .iter()
        .map(|&i| f.coefficient_of(&Monomial::var(i, 3)))
        .collect();
    let geometric = c[0].mul(&c[2]) == c[1].mul(&c[1]);
    Ok(ProgressionTest {
        coefficients: [c[0].clone(), c[1].clone(), c[2].clone()],
        geometric,
    })
}

/// Outcome of the circulant checks: the first failing step with its
/// residual, or success.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorCheck {
    Holds,
    Fails { step: String, residual: Polynomial },
}

/// Checks `det P = f1 f2` for the circulant family, that `f1` and `f2`
/// compose under the circulant map, and that the two-variable pair of the
/// `sextic_uv` family composes under its own map. `q` may be symbolic.
pub fn circulant_factor_check(q: Option<Int>) -> Result<FactorCheck, CatalogError> {
    let f2 = printed::CIRCULANT_F2.to_string();
    circulant_factor_check_with(q, &f2)
}

/// As [`circulant_factor_check`] with a caller-supplied transcription of
/// the quartic factor.
pub fn circulant_factor_check_with(q: Option<Int>, f2_text: &str) -> Result<FactorCheck, CatalogError> {
    use crate::compose::{verify_identity, IdentityCheck};

    let spec = match &q {
        Some(v) => ParamSpec::Values(vec![v.clone()]),
        None => ParamSpec::Symbolic,
    };
    let circ = family("sextic_circulant", &spec)?;
    let f1 = circ.components[0].clone();
    let f2 = specialize_text(&circ, f2_text)?;
    let product = f1.checked_mul(&f2)?;
    let diff = circ.form.checked_sub(&product)?;
    if !diff.is_zero() {
        return Ok(FactorCheck::Fails {
            step: "det = f1*f2".into(),
            residual: diff,
        });
    }
    let map = circ.pair_map.as_ref().expect("circulant family has a map");
    for (label, f) in [("circulant f1", &f1), ("circulant f2", &f2)] {
        if let IdentityCheck::Residual(r) = verify_identity(f, map)? {
            return Ok(FactorCheck::Fails {
                step: label.into(),
                residual: r,
            });
        }
    }
    let uv = family("sextic_uv", &spec)?;
    let map = uv.pair_map.as_ref().expect("uv family has a map");
    for (label, f) in [("uv f1", &uv.components[0]), ("uv f2", &uv.components[1])] {
        if let IdentityCheck::Residual(r) = verify_identity(f, map)? {
            return Ok(FactorCheck::Fails {
                step: label.into(),
                residual: r,
            });
        }
    }
    Ok(FactorCheck::Holds)
}

fn specialize_text(fam: &FormFamily, text: &str) -> Result<Polynomial, CatalogError> {
    let sym_params = VarTable::new(fam.info.params.iter().copied())?;
    let sym_table = table_for(&sym_params, fam.dim())?;
    let p = printed::parse_form(&sym_table, text)?;
    match &fam.values {
        None => Ok(p.rebase(&fam.table)?),
        Some(v) => {
            let map: HashMap<String, Int> = fam
                .info
                .params
                .iter()
                .map(|s| s.to_string())
                .zip(v.iter().cloned())
                .collect();
            Ok(p.specialize(&map)?.rebase(&fam.table)?)
        }
    }
}

/// Parses a transcription written over the family's declared parameters and
/// coordinates, then applies the family's parameter values if any.
pub fn parse_for(fam: &FormFamily, text: &str) -> Result<Polynomial, CatalogError> {
    specialize_text(fam, text)
}
