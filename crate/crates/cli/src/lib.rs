//! Argument handling and output for the `compforms` binary.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage
//! error. With `--format json` every byte on stdout is one JSON document.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use compforms::catalog::{family, info, CatalogError, FormFamily, Kind, ParamSpec, FAMILIES};
use compforms::compose::{
    invert, verify_family, ComposeError, IdentityCheck, Method, MethodChoice,
};
use compforms::dioph::{
    brute_force_search, generate_with, ArgOrder, DiophError, Mode, Sequence, SolutionVec,
};
use compforms::linstruct::{
    block_compose, coord_names, verify_pair_closure, verify_triple_closure, ExtractionRecipe,
    LinError, LinearStructure, NotClosed, PairOutcome, StructureJson,
};
use compforms::polyring::{Int, PolyError, PolyJson, Polynomial};

#[derive(Parser, Debug)]
#[command(name = "compforms", version, about = "Composition identities of forms and their integer solutions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; accepted for compatibility, computation is sequential.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosureOrder {
    Pair,
    Triple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Direct,
    Structural,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog.
    ListFamilies,
    /// Print the form of a family.
    EmitForm {
        #[arg(long)]
        family: String,
        /// Comma-separated integers or `symbolic`.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        params: String,
    },
    /// Check the composition identity symbolically.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        params: String,
        /// Check the triple identity instead of the pairwise one.
        #[arg(long)]
        threefold: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Decide closure of the family's structure under products.
    Closure {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        params: String,
        #[arg(long, value_enum)]
        order: ClosureOrder,
    },
    /// Generate a sequence of solutions of f = 1.
    Solve {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        /// Pairwise mode: `next = z(current, step)`. Triple mode: the second
        /// fixed vector.
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        /// First fixed vector; selects triple mode.
        #[arg(long, allow_hyphen_values = true)]
        fixed: Option<String>,
        /// Slots of current, fixed and step in the triple map.
        #[arg(long, default_value = "xyz")]
        order: String,
        #[arg(long)]
        count: usize,
    },
    /// List all solutions in the box max |v_i| <= bound.
    Search {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        target: String,
    },
    /// Inverse of a unit under the composition map.
    Invert {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Lift the inner family's structure into the outer one.
    Block {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
}

/// Failure kinds mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Compose(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ComposeError> for CliError {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::NotAUnit(_)
            | ComposeError::SingularMap
            | ComposeError::NonIntegralInverse(_)
            | ComposeError::NoIdentity(_) => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<DiophError> for CliError {
    fn from(e: DiophError) -> Self {
        match e {
            DiophError::Catalog(c) => c.into(),
            DiophError::Compose(c) => c.into(),
            DiophError::SeedNotSolution(_)
            | DiophError::StepNotSolution(_)
            | DiophError::IterateNotSolution { .. } => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<LinError> for CliError {
    fn from(e: LinError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs the program and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", message(&e));
            e.code()
        }
    }
}

fn message(e: &CliError) -> &str {
    match e {
        CliError::Usage(m) | CliError::Failed(m) => m,
    }
}

fn parse_ints(what: &str, s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("{what}: `{t}` is not an integer")))
        })
        .collect()
}

fn param_spec(s: &str) -> Result<ParamSpec, CliError> {
    if s == "symbolic" {
        Ok(ParamSpec::Symbolic)
    } else {
        Ok(ParamSpec::Values(
            parse_ints("--params", s)?.into_iter().map(Int::from).collect(),
        ))
    }
}

fn load(name: &str, params: &str) -> Result<FormFamily, CliError> {
    info(name)?;
    Ok(family(name, &param_spec(params)?)?)
}

fn load_numeric(name: &str, params: &str) -> Result<FormFamily, CliError> {
    if params == "symbolic" {
        return Err(CliError::Usage(format!(
            "`{name}` needs integer parameters here"
        )));
    }
    load(name, params)
}

fn vector(fam: &FormFamily, what: &str, s: &str) -> Result<SolutionVec, CliError> {
    let v = parse_ints(what, s)?;
    if v.len() != fam.dim() {
        return Err(CliError::Usage(format!(
            "{what}: expected {} integers, got {}",
            fam.dim(),
            v.len()
        )));
    }
    Ok(SolutionVec::new(v))
}

fn params_json(fam: &FormFamily) -> Value {
    match &fam.values {
        Some(v) => json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        None => json!("symbolic"),
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Failed(e.to_string()))?;
    writeln!(out, "{s}").map_err(|e| CliError::Failed(e.to_string()))
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| CliError::Failed(e.to_string()))
}

fn summary(p: &Polynomial) -> String {
    const LIMIT: usize = 400;
    let s = p.to_string();
    if s.len() <= LIMIT {
        s
    } else {
        let cut = (0..=LIMIT).rev().find(|&i| s.is_char_boundary(i)).unwrap_or(0);
        format!("{} ... ({} terms)", &s[..cut], p.term_count())
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::ListFamilies => list_families(json, out),
        Command::EmitForm { family, params } => emit_form(&load(family, params)?, json, out),
        Command::Verify {
            family,
            params,
            threefold,
            method,
        } => {
            let fam = load(family, params)?;
            verify(&fam, *threefold, *method, json, out)
        }
        Command::Closure {
            family,
            params,
            order,
        } => closure(&load(family, params)?, *order, json, out),
        Command::Solve {
            family,
            params,
            seed,
            step,
            fixed,
            order,
            count,
        } => {
            let fam = load_numeric(family, params)?;
            let seed = vector(&fam, "--seed", seed)?;
            let step = vector(&fam, "--step", step)?;
            let mode = match fixed {
                Some(f) => Mode::Triple {
                    fixed1: vector(&fam, "--fixed", f)?,
                    fixed2: step,
                    order: ArgOrder::parse(order)?,
                },
                None if fam.kind() == Kind::ThreeFold => {
                    return Err(CliError::Usage(format!(
                        "`{}` composes triples only; pass --fixed",
                        fam.name()
                    )))
                }
                None => Mode::Pairwise { step },
            };
            let seq = generate_with(&fam, &seed, &mode, *count)?;
            solve_output(&seq, json, out)
        }
        Command::Search {
            family,
            params,
            bound,
            target,
        } => {
            let fam = load_numeric(family, params)?;
            let target: BigInt = target
                .parse()
                .map_err(|_| CliError::Usage(format!("--target: `{target}` is not an integer")))?;
            let found = brute_force_search(&fam, *bound, &target)?;
            if json {
                emit(
                    out,
                    &json!({
                        "family": fam.name(),
                        "params": params_json(&fam),
                        "bound": bound,
                        "target": target.to_string(),
                        "solutions": found,
                    }),
                )?;
            } else {
                for v in &found {
                    line(out, v.to_string())?;
                }
                line(out, format!("{} solutions", found.len()))?;
            }
            Ok(0)
        }
        Command::Invert {
            family,
            params,
            point,
        } => {
            let fam = load_numeric(family, params)?;
            let p = vector(&fam, "--point", point)?;
            let inv = SolutionVec::new(invert(&fam, &p.coords)?);
            if json {
                emit(
                    out,
                    &json!({"family": fam.name(), "point": p, "inverse": inv}),
                )?;
            } else {
                line(out, inv.to_string())?;
            }
            Ok(0)
        }
        Command::Block { outer, inner } => block(outer, inner, json, out),
    }
}

fn list_families(json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if json {
        let v: Vec<Value> = FAMILIES
            .iter()
            .map(|f| {
                json!({
                    "name": f.name,
                    "params": f.params,
                    "coords": f.coords,
                    "kind": kind_label(f.kind),
                    "description": f.description,
                })
            })
            .collect();
        emit(out, &Value::Array(v))?;
    } else {
        for f in FAMILIES {
            line(
                out,
                format!(
                    "{:<20} {:<9} h={} ({})  {}",
                    f.name,
                    kind_label(f.kind),
                    f.coords,
                    f.params.join(","),
                    f.description
                ),
            )?;
        }
    }
    Ok(0)
}

fn kind_label(k: Kind) -> &'static str {
    match k {
        Kind::Pairwise => "pairwise",
        Kind::ThreeFold => "threefold",
    }
}

fn emit_form(fam: &FormFamily, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if json {
        let mut v = json!({
            "family": fam.name(),
            "params": params_json(fam),
            "form": PolyJson::from(&fam.form),
            "text": fam.form.to_string(),
            "terms": fam.form.term_count(),
        });
        if fam.components.len() > 1 {
            v["components"] = json!(fam
                .components
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>());
        }
        emit(out, &v)?;
    } else {
        line(out, fam.form.to_string())?;
    }
    Ok(0)
}

fn verify(
    fam: &FormFamily,
    threefold: bool,
    method: MethodArg,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let arity = if threefold { 3 } else { 2 };
    if arity == 2 && fam.kind() == Kind::ThreeFold {
        return Err(CliError::Usage(format!(
            "`{}` has no pairwise map; pass --threefold",
            fam.name()
        )));
    }
    let choice = match method {
        MethodArg::Auto => MethodChoice::Auto,
        MethodArg::Direct => MethodChoice::Direct,
        MethodArg::Structural => MethodChoice::Structural,
    };
    let report = verify_family(fam, arity, choice)?;
    let verdict = if report.passed() {
        "ZERO-RESIDUAL"
    } else {
        "NONZERO-RESIDUAL"
    };
    let method = match report.method {
        Method::Direct => "direct",
        Method::Structural => "structural",
    };
    if json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| match &c.outcome {
                IdentityCheck::Zero => json!({"label": c.label, "zero": true}),
                IdentityCheck::Residual(r) => json!({
                    "label": c.label,
                    "zero": false,
                    "residual_terms": r.term_count(),
                    "residual": summary(r),
                }),
            })
            .collect();
        emit(
            out,
            &json!({
                "family": fam.name(),
                "params": params_json(fam),
                "arity": arity,
                "method": method,
                "checks": checks,
                "result": verdict,
            }),
        )?;
    } else {
        for c in &report.checks {
            match &c.outcome {
                IdentityCheck::Zero => line(out, format!("{}: zero", c.label))?,
                IdentityCheck::Residual(r) => line(out, format!("{}: {}", c.label, summary(r)))?,
            }
        }
        line(out, format!("method: {method}"))?;
        line(out, verdict)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn structure_of(fam: &FormFamily) -> Result<(&LinearStructure, ExtractionRecipe), CliError> {
    let s = fam.structure.as_ref().ok_or_else(|| {
        CliError::Usage(format!("`{}` has no matrix structure", fam.name()))
    })?;
    let recipe = match &fam.recipe {
        Some(r) => r.clone(),
        None => ExtractionRecipe::find(s)?,
    };
    Ok((s, recipe))
}

fn not_closed_json(nc: &NotClosed) -> Value {
    json!({
        "closed": false,
        "row": nc.row + 1,
        "col": nc.col + 1,
        "reason": if nc.residual.is_some() { "not in span" } else { "non-exact division" },
        "residual": nc.residual.as_ref().map(summary),
    })
}

fn not_closed_text(nc: &NotClosed) -> String {
    match &nc.residual {
        Some(r) => format!(
            "NotInSpan at ({}, {}): residual {}",
            nc.row + 1,
            nc.col + 1,
            summary(r)
        ),
        None => format!("NonExactDivision at ({}, {})", nc.row + 1, nc.col + 1),
    }
}

fn closure(
    fam: &FormFamily,
    order: ClosureOrder,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (s, recipe) = structure_of(fam)?;
    let (coords, pair) = match order {
        ClosureOrder::Pair => match verify_pair_closure(s, &recipe)? {
            PairOutcome::Closed(c) => (Ok(c.z), None),
            PairOutcome::NotClosed(nc) => (Err(nc), None),
        },
        ClosureOrder::Triple => match verify_triple_closure(s, &recipe)? {
            Ok(c) => (Ok(c.w), Some(c.pair)),
            Err(nc) => (Err(nc), None),
        },
    };
    let pair_witness = match &pair {
        Some(PairOutcome::NotClosed(nc)) => Some(nc.clone()),
        _ => None,
    };
    match coords {
        Ok(z) => {
            if json {
                let mut v = json!({
                    "family": fam.name(),
                    "closed": true,
                    "coordinates": z.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                });
                if let Some(nc) = &pair_witness {
                    v["pair"] = not_closed_json(nc);
                }
                emit(out, &v)?;
            } else {
                line(out, "closed")?;
                let name = if order == ClosureOrder::Pair { "z" } else { "w" };
                for (i, p) in z.iter().enumerate() {
                    line(out, format!("{name}{} = {}", i + 1, p))?;
                }
                if let Some(nc) = &pair_witness {
                    line(out, format!("pairwise: {}", not_closed_text(nc)))?;
                }
            }
            Ok(0)
        }
        Err(nc) => {
            if json {
                let mut v = not_closed_json(&nc);
                v["family"] = json!(fam.name());
                emit(out, &v)?;
            } else {
                line(out, not_closed_text(&nc))?;
            }
            Ok(1)
        }
    }
}

/// Renames inner parameters that clash with outer ones to `<name>_in`.
fn disjoint_inner(outer: &LinearStructure, inner: &LinearStructure) -> Result<LinearStructure, CliError> {
    let taken: Vec<String> = outer.params().names().to_vec();
    let renames: Vec<(String, String)> = inner
        .params()
        .names()
        .iter()
        .filter(|n| taken.contains(n))
        .map(|n| {
            let mut new = format!("{n}_in");
            while taken.contains(&new) || inner.params().contains(&new) {
                new.push('_');
            }
            (n.clone(), new)
        })
        .collect();
    Ok(inner.rename_params(&renames)?)
}

fn block(outer: &str, inner: &str, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let o = load(outer, "symbolic")?;
    let i = load(inner, "symbolic")?;
    let (os, _) = structure_of(&o)?;
    let (is, _) = structure_of(&i)?;
    let lifted = block_compose(os, &disjoint_inner(os, is)?)?;
    if json {
        let v = serde_json::to_value(StructureJson::from(&lifted))
            .map_err(|e| CliError::Failed(e.to_string()))?;
        emit(out, &v)?;
    } else {
        let names = coord_names("x", lifted.coords());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let m = lifted.instantiate(&refs)?;
        for row in m.rows() {
            line(
                out,
                format!(
                    "[{}]",
                    row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                ),
            )?;
        }
    }
    Ok(0)
}

fn solve_output(seq: &Sequence, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if json {
        let v = serde_json::to_value(seq).map_err(|e| CliError::Failed(e.to_string()))?;
        emit(out, &v)?;
    } else {
        for v in &seq.solutions {
            line(out, v.to_string())?;
        }
    }
    Ok(0)
}
