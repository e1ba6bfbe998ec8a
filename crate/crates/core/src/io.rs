//! JSON formats for algebras, modules and complexes, and the bundled
//! fixture packs.
//!
//! Relation paths are written in composition order: `["b", "a"]` is `b∘a`,
//! the path that traverses `a` first.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{build_algebra, AlgebraError, BasedAlgebra, QuiverPresentation};
use crate::complex::{ComplexError, ProjComplex};
use crate::linalg::{Field, LinalgError, Matrix, Scalar};
use crate::module::{Module, ModuleError};
use crate::pmap::PMap;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("cannot read {path}: {message}")]
    File { path: String, message: String },
}

fn invalid(s: impl Into<String>) -> IoError {
    IoError::Invalid(s.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Fp(u32),
    Q,
}

impl FieldSpec {
    pub fn field(self) -> Result<Field, IoError> {
        match self {
            FieldSpec::Fp(p) => Ok(Field::prime(p as u64)?),
            FieldSpec::Q => Ok(Field::Rationals),
        }
    }

    pub fn of(f: Field) -> FieldSpec {
        match f {
            Field::Prime(p) => FieldSpec::Fp(p),
            Field::Rationals => FieldSpec::Q,
        }
    }

    /// `"Q"` or `"Fp:<p>"`.
    pub fn parse(s: &str) -> Result<FieldSpec, IoError> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u32>().ok())
            .ok_or_else(|| invalid(format!("field must be Q or Fp:<p>, got {s:?}")))?;
        Field::prime(p as u64)?;
        Ok(FieldSpec::Fp(p))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    pub relations: Vec<Vec<TermSpec>>,
    pub nilpotency_bound: usize,
}

impl AlgebraSpec {
    /// The presentation over `field`, or over the declared field.
    pub fn presentation(&self, field: Option<Field>) -> Result<QuiverPresentation, IoError> {
        let f = match field {
            Some(f) => f,
            None => self.field.field()?,
        };
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone()))
            .collect();
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for t in r {
                terms.push((f.parse(&t.coeff)?, t.path.clone()));
            }
            rels.push(terms);
        }
        Ok(QuiverPresentation::new(
            f,
            self.quiver.vertices.clone(),
            arrows,
            rels,
            self.nilpotency_bound,
        )?)
    }

    pub fn build(&self, field: Option<Field>) -> Result<Arc<BasedAlgebra>, IoError> {
        Ok(Arc::new(build_algebra(&self.presentation(field)?)?))
    }

    pub fn from_presentation(q: &QuiverPresentation) -> AlgebraSpec {
        AlgebraSpec {
            field: FieldSpec::of(q.field),
            quiver: QuiverSpec {
                vertices: q.vertices.clone(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowSpec {
                        name: a.name.clone(),
                        src: q.vertices[a.src].clone(),
                        tgt: q.vertices[a.tgt].clone(),
                    })
                    .collect(),
            },
            relations: q
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| TermSpec {
                            coeff: t.coeff.to_string(),
                            path: t.path.iter().map(|&a| q.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound: q.nilpotency_bound,
        }
    }
}

pub fn parse_algebra(text: &str, field: Option<Field>) -> Result<Arc<BasedAlgebra>, IoError> {
    let spec: AlgebraSpec = serde_json::from_str(text)?;
    spec.build(field)
}

fn scalar_of(field: Field, v: &Value) -> Result<Scalar, IoError> {
    match v {
        Value::String(s) => Ok(field.parse(s)?),
        Value::Number(n) => Ok(field.parse(&n.to_string())?),
        _ => Err(invalid(format!("matrix entries must be strings or integers, got {v}"))),
    }
}

fn matrix_of(field: Field, v: &Value, rows: usize, cols: usize) -> Result<Matrix, IoError> {
    let rs = v.as_array().ok_or_else(|| invalid("a matrix must be a list of rows"))?;
    if rs.len() != rows && !(rows == 0 && rs.is_empty()) {
        return Err(invalid(format!("expected {rows} rows, got {}", rs.len())));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, r) in rs.iter().enumerate() {
        let es = r.as_array().ok_or_else(|| invalid("a matrix row must be a list"))?;
        if es.len() != cols {
            return Err(invalid(format!("expected {cols} columns, got {}", es.len())));
        }
        for (j, e) in es.iter().enumerate() {
            m.set(i, j, scalar_of(field, e)?);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Value>,
}

impl ModuleSpec {
    /// Needs an algebra built from a presentation: generators are its arrows.
    pub fn build(&self, alg: &Arc<BasedAlgebra>) -> Result<Module, IoError> {
        let field = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        for (label, d) in &self.dim {
            let v = alg
                .vertex_index(label)
                .ok_or_else(|| invalid(format!("unknown vertex {label:?}")))?;
            dims[v] = *d;
        }
        let names: Vec<String> = alg.generators().iter().map(|&g| alg.label(g).to_string()).collect();
        for k in self.arrows.keys() {
            if !names.contains(k) {
                return Err(invalid(format!("unknown arrow {k:?}")));
            }
        }
        let mut blocks = Vec::new();
        for (k, &g) in alg.generators().iter().enumerate() {
            let (t, s) = alg.grading(g);
            blocks.push(match self.arrows.get(&names[k]) {
                Some(v) => matrix_of(field, v, dims[t], dims[s])?,
                None => Matrix::zeros(field, dims[t], dims[s]),
            });
        }
        Ok(Module::from_generators(alg.clone(), dims, &blocks)?)
    }

    pub fn of(m: &Module) -> ModuleSpec {
        let alg = m.algebra();
        let dim = alg.vertex_labels().iter().cloned().zip(m.dims().iter().copied()).collect();
        let arrows = alg
            .generators()
            .iter()
            .zip(m.generator_blocks())
            .filter(|(_, b)| !b.is_zero())
            .map(|(&g, b)| (alg.label(g).to_string(), serde_json::json!(b.to_string_rows())))
            .collect();
        ModuleSpec { dim, arrows }
    }
}

pub fn parse_module(text: &str, alg: &Arc<BasedAlgebra>) -> Result<Module, IoError> {
    let spec: ModuleSpec = serde_json::from_str(text)?;
    spec.build(alg)
}

pub fn module_to_json(m: &Module) -> String {
    serde_json::to_string_pretty(&ModuleSpec::of(m)).expect("serializable")
}

/// `diffs[k]` holds `blocks[t][s]` as coordinate vectors over the algebra basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub lo: i64,
    pub terms: Vec<Vec<String>>,
    pub diffs: Vec<Vec<Vec<Vec<String>>>>,
}

impl ComplexSpec {
    pub fn build(&self, alg: &Arc<BasedAlgebra>) -> Result<ProjComplex, IoError> {
        let field = alg.field();
        let terms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|l| alg.vertex_index(l).ok_or_else(|| invalid(format!("unknown vertex {l:?}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        if self.diffs.len() + 1 != terms.len() && !(terms.is_empty() && self.diffs.is_empty()) {
            return Err(invalid("need one differential between consecutive terms"));
        }
        let mut diffs = Vec::new();
        for (k, d) in self.diffs.iter().enumerate() {
            let mut p = PMap::zero(alg, &terms[k], &terms[k + 1]);
            if d.len() != terms[k + 1].len() {
                return Err(invalid(format!("differential {k} needs one row per target summand")));
            }
            for (t, row) in d.iter().enumerate() {
                if row.len() != terms[k].len() {
                    return Err(invalid(format!("differential {k} needs one block per source summand")));
                }
                for (s, coords) in row.iter().enumerate() {
                    if coords.len() != alg.dim() {
                        return Err(invalid(format!("blocks need {} coordinates", alg.dim())));
                    }
                    p.blocks[t][s] = coords.iter().map(|c| field.parse(c)).collect::<Result<_, _>>()?;
                }
            }
            diffs.push(p);
        }
        Ok(ProjComplex::new(alg.clone(), self.lo, terms, diffs)?)
    }

    pub fn of(c: &ProjComplex) -> ComplexSpec {
        let alg = c.algebra();
        let labels = alg.vertex_labels();
        ComplexSpec {
            lo: c.lo,
            terms: c.terms.iter().map(|t| t.iter().map(|&v| labels[v].clone()).collect()).collect(),
            diffs: c
                .diffs
                .iter()
                .map(|d| {
                    d.blocks
                        .iter()
                        .map(|row| row.iter().map(|x| x.iter().map(ToString::to_string).collect()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn parse_complex(text: &str, alg: &Arc<BasedAlgebra>) -> Result<ProjComplex, IoError> {
    let spec: ComplexSpec = serde_json::from_str(text)?;
    spec.build(alg)
}

/// An algebra with named modules.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSpec {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub modules: BTreeMap<String, ModuleSpec>,
    /// module names in presentation order
    pub order: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub algebra: Arc<BasedAlgebra>,
    pub presentation: QuiverPresentation,
    pub modules: Vec<(String, Module)>,
}

impl Fixture {
    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// A named module, or `P(v)`, `I(v)`, `S(v)` computed on the fly.
    pub fn resolve(&self, name: &str) -> Result<Module, IoError> {
        if let Some(m) = self.module(name) {
            return Ok(m.clone());
        }
        let standard = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix)?
                .strip_suffix(')')
                .and_then(|l| self.algebra.vertex_index(l))
        };
        if let Some(v) = standard("P(") {
            return Ok(Module::projective(&self.algebra, v));
        }
        if let Some(v) = standard("I(") {
            return Ok(Module::injective(&self.algebra, v));
        }
        if let Some(v) = standard("S(") {
            return Ok(Module::simple(&self.algebra, v));
        }
        if name == "A" {
            return Ok(Module::regular(&self.algebra));
        }
        Err(IoError::UnknownFixture(format!("{}/{name}", self.name)))
    }
}

pub const FIXTURE_NAMES: [&str; 4] = ["eximp", "ejp1", "radsq3", "gamma-eximp"];

fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "eximp" => Some(include_str!("../fixtures/eximp.json")),
        "ejp1" => Some(include_str!("../fixtures/ejp1.json")),
        "radsq3" => Some(include_str!("../fixtures/radsq3.json")),
        "gamma-eximp" => Some(include_str!("../fixtures/gamma-eximp.json")),
        _ => None,
    }
}

pub fn parse_fixture(text: &str, field: Option<Field>) -> Result<Fixture, IoError> {
    let spec: FixtureSpec = serde_json::from_str(text)?;
    let presentation = spec.algebra.presentation(field)?;
    let algebra = Arc::new(build_algebra(&presentation)?);
    let mut modules = Vec::new();
    for name in &spec.order {
        let m = spec
            .modules
            .get(name)
            .ok_or_else(|| invalid(format!("order names a missing module {name:?}")))?;
        modules.push((name.clone(), m.build(&algebra)?));
    }
    if modules.len() != spec.modules.len() {
        return Err(invalid("every module must appear in the order list"));
    }
    Ok(Fixture {
        name: spec.name,
        algebra,
        presentation,
        modules,
    })
}

/// A bundled fixture pack, over `field` (default `F_2`).
pub fn fixture(name: &str, field: Option<Field>) -> Result<Fixture, IoError> {
    let text = fixture_text(name).ok_or_else(|| IoError::UnknownFixture(name.to_string()))?;
    let f = field.unwrap_or(Field::Prime(2));
    parse_fixture(text, Some(f))
}

/// Parses every bundled pack; run at startup by the CLI.
pub fn validate_fixtures(field: Option<Field>) -> Result<(), IoError> {
    for n in FIXTURE_NAMES {
        fixture(n, field)?;
    }
    Ok(())
}

fn read(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// `fixture:<pack>` or an algebra JSON file.
pub fn load_algebra(arg: &str, field: Option<Field>) -> Result<Arc<BasedAlgebra>, IoError> {
    match arg.strip_prefix("fixture:") {
        Some(name) => Ok(fixture(name, field)?.algebra),
        None => parse_algebra(&read(arg)?, field),
    }
}

/// `fixture:<pack>/<module>` or a module JSON file over `alg`.
pub fn load_module(arg: &str, alg: &Arc<BasedAlgebra>, field: Option<Field>) -> Result<Module, IoError> {
    match arg.strip_prefix("fixture:") {
        Some(rest) => {
            let (pack, name) = rest.split_once('/').ok_or_else(|| invalid("use fixture:<pack>/<module>"))?;
            let fx = fixture(pack, field)?;
            let m = fx.resolve(name)?;
            if *fx.algebra != **alg {
                return Err(invalid(format!("module {rest} lives over a different algebra")));
            }
            Ok(m.with_algebra(alg.clone()))
        }
        None => parse_module(&read(arg)?, alg),
    }
}

pub fn load_complex(arg: &str, alg: &Arc<BasedAlgebra>) -> Result<ProjComplex, IoError> {
    parse_complex(&read(arg)?, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_iso;

    #[test]
    fn fixtures_parse_over_several_fields() {
        for f in [Field::Prime(2), Field::Prime(3), Field::Rationals] {
            validate_fixtures(Some(f)).unwrap();
        }
    }

    #[test]
    fn module_round_trip() {
        let fx = fixture("eximp", None).unwrap();
        for (_, m) in &fx.modules {
            let back = parse_module(&module_to_json(m), &fx.algebra).unwrap();
            assert_eq!(&back, m);
        }
    }

    #[test]
    fn algebra_round_trip() {
        let fx = fixture("ejp1", Some(Field::Rationals)).unwrap();
        let spec = AlgebraSpec::from_presentation(&fx.presentation);
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"field\":\"Q\""));
        let alg = parse_algebra(&text, None).unwrap();
        assert_eq!(*alg, *fx.algebra);
    }

    #[test]
    fn standard_names_resolve() {
        let fx = fixture("eximp", None).unwrap();
        let p1 = fx.resolve("P(1)").unwrap();
        assert!(is_iso(&p1, fx.module("P1").unwrap()).unwrap());
        assert!(fx.resolve("X(9)").is_err());
    }

    #[test]
    fn complex_round_trip() {
        let fx = fixture("ejp1", None).unwrap();
        let res = crate::homology::min_resolution(&fx.resolve("I(3)").unwrap(), 2);
        let c = ProjComplex::from_resolution(&res, 2);
        let text = serde_json::to_string(&ComplexSpec::of(&c)).unwrap();
        let back = parse_complex(&text, &fx.algebra).unwrap();
        assert_eq!(back.shape(), c.shape());
    }

    #[test]
    fn rejects_bad_input() {
        let fx = fixture("eximp", None).unwrap();
        assert!(parse_module(r#"{"dim": {"9": 1}}"#, &fx.algebra).is_err());
        assert!(parse_module(r#"{"dim": {"1": 1, "2": 1}, "arrows": {"zz": [["1"]]}}"#, &fx.algebra).is_err());
        assert!(parse_module(r#"{"dim": {"1": 1, "2": 1}, "arrows": {"a": [["1", "0"]]}}"#, &fx.algebra).is_err());
        assert!(FieldSpec::parse("Fp:4").is_err());
        assert_eq!(FieldSpec::parse("Fp:5").unwrap(), FieldSpec::Fp(5));
    }
}
