use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use tpalg::catalog::schrodinger_rank;
use tpalg::format::{parse_graded_algebra, parse_map, parse_product, render_vector};
use tpalg::{
    build_catalog, check_grading, check_hom_lie, check_transposed_poisson, decompose_derivation_space,
    derivation_space, format_scalar, parse_scalar, search_structures, standard_grading, Grading, LieAlgebra, LinearMap,
    Scalar, SearchStatus,
};

use crate::report::{check_json, map_json, product_json, Report};

/// Input problems; the process exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    Violation = 1,
    Unresolved = 3,
}

pub type CommandResult = Result<(Report, Outcome), InputError>;

#[derive(Args, Debug)]
pub struct AlgebraSpec {
    /// Catalog name: sl2, heisenberg, so, schrodinger (optionally with `_n`).
    pub name: Option<String>,
    /// Size parameter for heisenberg, so and schrodinger.
    #[arg(long)]
    pub n: Option<usize>,
    /// Read the algebra from a file instead of the catalog.
    #[arg(long, conflicts_with_all = ["name", "n"])]
    pub file: Option<PathBuf>,
}

pub struct Resolved {
    pub algebra: LieAlgebra,
    pub file_grading: Option<Grading>,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

impl AlgebraSpec {
    pub fn resolve(&self, report: &mut Report) -> Result<Resolved, InputError> {
        let resolved = match (&self.name, &self.file) {
            (Some(name), None) => {
                report.input("algebra", name.as_str());
                if let Some(n) = self.n {
                    report.input("n", n);
                }
                Resolved { algebra: build_catalog(name, self.n)?, file_grading: None }
            }
            (None, Some(path)) => {
                report.input("file", path.display().to_string());
                let text = read(path)?;
                let (algebra, file_grading) =
                    parse_graded_algebra(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                Resolved { algebra, file_grading }
            }
            _ => return Err(InputError("give a catalog name or --file".into())),
        };
        report.input("resolved", resolved.algebra.name());
        Ok(resolved)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradingChoice {
    /// The ℤ₂ grading of a Schrödinger algebra (x's and y's odd).
    Standard,
    /// No decomposition.
    None,
    /// Degrees given in the algebra file.
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Basis,
    Dimension,
}

fn pick_grading(choice: GradingChoice, r: &Resolved) -> Result<Option<Grading>, InputError> {
    match choice {
        GradingChoice::None => Ok(None),
        GradingChoice::Standard => Ok(Some(standard_grading(&r.algebra)?)),
        GradingChoice::File => r
            .file_grading
            .clone()
            .map(Some)
            .ok_or_else(|| InputError("the algebra file declares no basis degrees".into())),
    }
}

fn bracket_table(alg: &LieAlgebra) -> Value {
    Value::Array(
        alg.brackets()
            .map(|((i, j), v)| {
                Value::String(format!("[{}, {}] = {}", alg.label(i), alg.label(j), render_vector(alg, v)))
            })
            .collect(),
    )
}

fn grading_json(alg: &LieAlgebra, g: &Grading) -> Value {
    let degrees: serde_json::Map<String, Value> =
        (0..alg.dim()).map(|i| (alg.label(i).to_string(), Value::String(g.degree(i).to_string()))).collect();
    json!({ "group": g.group().to_string(), "degrees": degrees })
}

pub fn algebra(spec: &AlgebraSpec, show: bool, check_jacobi: bool, check_grade: bool) -> CommandResult {
    let mut report = Report::new("algebra");
    let r = spec.resolve(&mut report)?;
    report.input("show", show);
    report.input("check_jacobi", check_jacobi);
    report.input("check_grading", check_grade);
    let alg = &r.algebra;
    let mut outcome = Outcome::Ok;

    report.set("name", alg.name());
    report.set("dim", alg.dim());
    report.set("basis", alg.labels().to_vec());
    report.set("nonzero_brackets", alg.brackets().count());
    if show {
        report.set("brackets", bracket_table(alg));
    }
    if check_jacobi {
        let jacobi = alg.check_jacobi();
        let anti = alg.check_antisymmetry();
        if !jacobi.is_ok() || !anti.is_ok() {
            outcome = Outcome::Violation;
        }
        report.set("antisymmetry", check_json(alg, &anti, |&(i, j)| [i, j]));
        report.set("jacobi", check_json(alg, &jacobi, |&(i, j, k)| [i, j, k]));
    }
    if check_grade {
        let g = match &r.file_grading {
            Some(g) => g.clone(),
            None => standard_grading(alg)?,
        };
        let rep = check_grading(alg, &g)?;
        if !rep.is_ok() {
            outcome = Outcome::Violation;
        }
        let mut out = grading_json(alg, &g);
        let check = check_json(alg, &rep, |&(i, j)| [i, j]);
        for (k, v) in check.as_object().expect("object") {
            out[k] = v.clone();
        }
        report.set("grading", out);
    }
    Ok((report, outcome))
}

/// Reads the identity coefficient θ and the `s12 ↦ z` coefficient β of a
/// ½-derivation of 𝒮₂.
fn recognize_s2(alg: &LieAlgebra, phi: &LinearMap) -> Value {
    let s = alg.index_of("s12").expect("𝒮₂ has s12");
    let z = alg.index_of("z").expect("𝒮₂ has z");
    let theta = phi.entry(0, 0).clone();
    let beta = phi.entry(z, s).clone();
    let zero = Scalar::from_integer(0.into());
    let label = match (theta == zero, beta == zero) {
        (false, true) => "id-direction",
        (true, false) => "ℜ-direction",
        _ => "mixed",
    };
    json!({ "theta": format_scalar(&theta), "beta": format_scalar(&beta), "direction": label })
}

pub fn derivations(
    spec: &AlgebraSpec,
    delta: &str,
    grading: GradingChoice,
    emit: Emit,
    verbose: bool,
) -> CommandResult {
    let mut report = Report::new("derivations");
    let r = spec.resolve(&mut report)?;
    let delta: Scalar = parse_scalar(delta).map_err(|e| InputError(format!("--delta: {}", e.message)))?;
    report.input("delta", format_scalar(&delta));
    report.input("grading", format!("{grading:?}").to_lowercase());
    report.input("emit", format!("{emit:?}").to_lowercase());
    let grading = pick_grading(grading, &r)?;
    let alg = &r.algebra;
    let d = alg.dim();
    if verbose {
        eprintln!("constraint system: {} rows × {} unknowns", d * d * d.saturating_sub(1) / 2, d * d);
    }
    let ds = derivation_space(alg, &delta);
    if verbose {
        eprintln!("constraint rank {}, solution dimension {}", ds.constraint_rank, ds.dim());
    }
    report.set("dimension", ds.dim());
    report.set("unknowns", d * d);
    report.set("constraint_rank", ds.constraint_rank);
    report.set("trivial", ds.is_trivial());
    if emit == Emit::Basis {
        let is_s2 = schrodinger_rank(alg) == Some(2) && format_scalar(&delta) == "1/2";
        let basis: Vec<Value> = ds
            .basis
            .iter()
            .map(|m| {
                let mut entry = json!({ "map": map_json(alg, m) });
                if is_s2 {
                    entry["recognized"] = recognize_s2(alg, m);
                }
                entry
            })
            .collect();
        report.set("basis", basis);
    }
    if let Some(g) = grading {
        let pieces = decompose_derivation_space(&ds, &g)?;
        let mut out = serde_json::Map::new();
        for (deg, maps) in &pieces {
            let mut piece = json!({ "dimension": maps.len() });
            if emit == Emit::Basis {
                piece["basis"] = Value::Array(maps.iter().map(|m| map_json(alg, m)).collect());
            }
            out.insert(deg.to_string(), piece);
        }
        report.set("decomposition", json!({ "group": g.group().to_string(), "degrees": out }));
    }
    Ok((report, Outcome::Ok))
}

/// Annotation for families on 𝒮ₙ supported on a single `s·s ↦ z` entry: the
/// automorphism scaling x's and y's by `a` and z by `a²` multiplies the
/// parameter by `a²`.
fn normalization(alg: &LieAlgebra, fam: &tpalg::ProductFamily) -> Value {
    let z = alg.index_of("z");
    let single_z = fam.dim() == 1
        && fam.base.is_zero()
        && schrodinger_rank(alg).is_some()
        && fam.directions[0].entries().all(|(_, v)| v.nonzeros().map(|(k, _)| Some(k)).eq([z]));
    if !single_z {
        return json!({ "available": false });
    }
    let one = Scalar::from_integer(1.into());
    let member = fam.member(&[one]).expect("one parameter");
    json!({
        "available": true,
        "representative": product_json(alg, &member),
        "note": "x_i ↦ a·x_i, y_i ↦ a·y_i, z ↦ a²·z is an automorphism and scales c1 by a²; over ℂ every c1 ≠ 0 gives the representative, over ℚ c1 is determined up to squares",
    })
}

pub fn tp(spec: &AlgebraSpec, check: Option<&Path>, search: bool, normalize: bool, verbose: bool) -> CommandResult {
    let mut report = Report::new("tp");
    let r = spec.resolve(&mut report)?;
    let alg = &r.algebra;
    match (check, search) {
        (Some(path), false) => {
            report.input("check", path.display().to_string());
            let text = read(path)?;
            let product =
                parse_product(&text, alg.dim()).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let rep = check_transposed_poisson(alg, &product)?;
            report.set("product", product_json(alg, &product));
            report.set("commutative", json!({ "ok": rep.commutative }));
            report.set("associative", check_json(alg, &rep.associative, |&(i, j, k)| [i, j, k]));
            report.set("compatible", check_json(alg, &rep.compatible, |&(i, j, k)| [i, j, k]));
            report.set("ok", rep.is_ok());
            Ok((report, if rep.is_ok() { Outcome::Ok } else { Outcome::Violation }))
        }
        (None, true) => {
            report.input("search", true);
            report.input("normalize", normalize);
            let ds = derivation_space(alg, &tpalg::derivation::half());
            if verbose {
                eprintln!("½-derivations: dimension {}; ansatz unknowns {}", ds.dim(), ds.dim() * alg.dim());
            }
            let res = search_structures(alg, &ds)?;
            if verbose {
                eprintln!(
                    "commutative candidates: {} parameters, {} associativity equations",
                    res.parameters.len(),
                    res.residual_constraints.len()
                );
            }
            report.set("half_derivation_dimension", ds.dim());
            report.set(
                "commutative_candidates",
                json!({
                    "parameters": res.parameters,
                    "base": product_json(alg, &res.base),
                    "directions": res.directions.iter().map(|p| product_json(alg, p)).collect::<Vec<_>>(),
                }),
            );
            report.set(
                "residual_constraints",
                res.residual_constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
            );
            let families: Vec<Value> = res
                .classified
                .iter()
                .map(|(desc, fam)| {
                    let mut entry = json!({
                        "description": desc,
                        "dimension": fam.dim(),
                        "nontrivial": fam.is_nontrivial(),
                        "parameters": fam.parameters,
                    });
                    if normalize && fam.is_nontrivial() {
                        entry["normalized"] = normalization(alg, fam);
                    }
                    entry
                })
                .collect();
            report.set("families", families);
            report.set("only_zero_product", res.only_zero_product());
            report.set("status", res.status.as_str());
            let outcome = match res.status {
                SearchStatus::Complete => Outcome::Ok,
                SearchStatus::Unresolved => Outcome::Unresolved,
            };
            Ok((report, outcome))
        }
        _ => Err(InputError("give exactly one of --check <file> or --search".into())),
    }
}

pub fn homlie(spec: &AlgebraSpec, map: Option<&Path>, from_derivation: Option<usize>) -> CommandResult {
    let mut report = Report::new("homlie");
    let r = spec.resolve(&mut report)?;
    let alg = &r.algebra;
    let phi = match (map, from_derivation) {
        (Some(path), None) => {
            report.input("map", path.display().to_string());
            let text = read(path)?;
            parse_map(&text, alg.dim()).map_err(|e| InputError(format!("{}: {e}", path.display())))?
        }
        (None, Some(idx)) => {
            report.input("from_derivation", idx);
            let ds = derivation_space(alg, &tpalg::derivation::half());
            if idx == 0 || idx > ds.dim() {
                return Err(InputError(format!(
                    "--from-derivation {idx}: the ½-derivation basis has {} element(s), numbered from 1",
                    ds.dim()
                )));
            }
            ds.basis[idx - 1].clone()
        }
        _ => return Err(InputError("give exactly one of --map <file> or --from-derivation <index>".into())),
    };
    let rep = check_hom_lie(alg, &phi)?;
    report.set("map", map_json(alg, &phi));
    report.set("identity", "[φx,[y,z]] + [φy,[z,x]] + [φz,[x,y]] = 0");
    let check = check_json(alg, &rep, |&(i, j, k)| [i, j, k]);
    for (k, v) in check.as_object().expect("object") {
        report.set(k, v.clone());
    }
    Ok((report, if rep.is_ok() { Outcome::Ok } else { Outcome::Violation }))
}
