//! Brute-force enumeration of small modules over a finite field.
//!
//! Every arrow-matrix assignment with total dimension up to a bound is
//! tried, up to putting the largest non-loop generator block in rank normal
//! form. Survivors of the relation check are certified indecomposable and
//! deduplicated up to isomorphism inside dimension-vector buckets.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::BasedAlgebra;
use crate::decompose::{is_iso, local_test, DecomposeConfig, DecomposeError, LocalTest};
use crate::homology::{is_tau_n_rigid, pd_up_to, ProjDim};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::Module;

pub const DEFAULT_WORK_BOUND: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs a finite prime field")]
    InfiniteField,
    #[error("enumeration would try {needed} assignments, over the work bound {bound}")]
    WorkBoundExceeded { needed: u64, bound: u64 },
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub alg: Arc<BasedAlgebra>,
    pub max_dim: usize,
    /// cap on `p^d` in the exhaustive part of the local test
    pub budget: u64,
    pub seed: u64,
    pub work_bound: u64,
}

impl EnumerationConfig {
    /// Reads the work bound from `SILT_WORK_BOUND` when set.
    pub fn new(alg: Arc<BasedAlgebra>, max_dim: usize) -> EnumerationConfig {
        let work_bound = std::env::var("SILT_WORK_BOUND")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_WORK_BOUND);
        EnumerationConfig {
            alg,
            max_dim,
            budget: 1 << 16,
            seed: crate::decompose::DEFAULT_SEED,
            work_bound,
        }
    }
}

/// An enumerated indecomposable with its certificate.
#[derive(Clone, Debug)]
pub struct Indecomposable {
    pub module: Module,
    pub radical_dim: usize,
    pub residue_dim: usize,
}

impl Indecomposable {
    /// SHA-256 over the arrow matrices and the local-ring data.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{:?}|", self.module.dims()));
        for b in self.module.generator_blocks() {
            for row in b.to_string_rows() {
                h.update(row.join(","));
                h.update(";");
            }
            h.update("|");
        }
        h.update(format!("local:{}:{}", self.radical_dim, self.residue_dim));
        hex::encode(h.finalize())
    }
}

/// Dimension vectors with `1 <= total <= max`, by total then lexicographically.
pub fn dimension_vectors(vertices: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; vertices];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[i] = d;
            rec(i + 1, left - d, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max, &mut cur, &mut out);
    out.retain(|d| d.iter().sum::<usize>() > 0);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then(a.cmp(b)));
    out
}

struct Plan {
    dims: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    normal: Option<usize>,
    free: usize,
}

impl Plan {
    fn new(alg: &BasedAlgebra, dims: &[usize]) -> Plan {
        let shapes: Vec<(usize, usize)> = alg
            .generators()
            .iter()
            .map(|&g| {
                let (t, s) = alg.grading(g);
                (dims[t], dims[s])
            })
            .collect();
        let normal = alg
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, &g)| {
                let (t, s) = alg.grading(g);
                t != s
            })
            .max_by_key(|(k, _)| (shapes[*k].0 * shapes[*k].1, std::cmp::Reverse(*k)))
            .map(|(k, _)| k)
            .filter(|&k| shapes[k].0 * shapes[k].1 > 0);
        let free = shapes
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != normal)
            .map(|(_, (r, c))| r * c)
            .sum();
        Plan {
            dims: dims.to_vec(),
            shapes,
            normal,
            free,
        }
    }

    fn ranks(&self) -> usize {
        match self.normal {
            Some(k) => self.shapes[k].0.min(self.shapes[k].1) + 1,
            None => 1,
        }
    }

    fn work(&self, p: u64) -> u64 {
        (self.ranks() as u64).saturating_mul(p.saturating_pow(self.free as u32))
    }
}

fn rank_normal_form(field: Field, rows: usize, cols: usize, r: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..r {
        m.set(i, i, field.one());
    }
    m
}

/// Composable generator pairs `(h, g)` with `h g = 0` in the algebra.
fn zero_pairs(alg: &BasedAlgebra) -> Vec<(usize, usize)> {
    let gens = alg.generators();
    let mut out = Vec::new();
    for (i, &h) in gens.iter().enumerate() {
        for (j, &g) in gens.iter().enumerate() {
            if alg.grading(h).1 == alg.grading(g).0 && alg.product(h, g).is_empty() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Iso-invariant: ranks of every basis element's action.
fn invariant(m: &Module) -> Vec<usize> {
    (0..m.algebra().dim()).map(|b| m.action(b).rank()).collect()
}

fn connected_support(m: &Module) -> bool {
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let support: Vec<usize> = (0..nv).filter(|&v| m.dims()[v] > 0).collect();
    if support.len() <= 1 {
        return true;
    }
    let blocks = m.generator_blocks();
    let mut adj = vec![Vec::new(); nv];
    for (k, &g) in alg.generators().iter().enumerate() {
        if !blocks[k].is_zero() {
            let (t, s) = alg.grading(g);
            adj[t].push(s);
            adj[s].push(t);
        }
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![support[0]];
    seen[support[0]] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

fn enumerate_dims(cfg: &EnumerationConfig, plan: &Plan, zero: &[(usize, usize)]) -> Result<Vec<Indecomposable>, OracleError> {
    let alg = &cfg.alg;
    let field = alg.field();
    let elems = field.elements().ok_or(OracleError::InfiniteField)?;
    let p = elems.len();
    let dcfg = DecomposeConfig {
        seed: cfg.seed,
        exhaustive_budget: cfg.budget,
        ..DecomposeConfig::default()
    };
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut found: Vec<Indecomposable> = Vec::new();
    let total = (p as u64).pow(plan.free as u32);
    for r in 0..plan.ranks() {
        for code in 0..total {
            let mut c = code;
            let mut blocks = Vec::with_capacity(plan.shapes.len());
            for (k, &(rows, cols)) in plan.shapes.iter().enumerate() {
                if Some(k) == plan.normal {
                    blocks.push(rank_normal_form(field, rows, cols, r));
                    continue;
                }
                let mut entries: Vec<Scalar> = Vec::with_capacity(rows * cols);
                for _ in 0..rows * cols {
                    entries.push(elems[(c % p as u64) as usize].clone());
                    c /= p as u64;
                }
                blocks.push(Matrix::from_vector(field, rows, cols, entries));
            }
            if zero.iter().any(|&(h, g)| !blocks[h].mul(&blocks[g]).is_zero()) {
                continue;
            }
            let Ok(m) = Module::from_generators(alg.clone(), plan.dims.clone(), &blocks) else {
                continue;
            };
            if !connected_support(&m) {
                continue;
            }
            let inv = invariant(&m);
            let reps = buckets.entry(inv).or_default();
            let mut seen = false;
            for &i in reps.iter() {
                if is_iso(&found[i].module, &m)? {
                    seen = true;
                    break;
                }
            }
            if seen {
                continue;
            }
            let endo = m.hom(&m).map_err(DecomposeError::from)?;
            match local_test(&m, &endo, &dcfg) {
                LocalTest::Local {
                    radical_dim, residue_dim, ..
                } => {
                    reps.push(found.len());
                    found.push(Indecomposable {
                        module: m,
                        radical_dim,
                        residue_dim,
                    });
                }
                LocalTest::Split(_) => {}
                LocalTest::Inconclusive => {
                    return Err(DecomposeError::Inconclusive {
                        trials: dcfg.trials,
                        split: 0,
                        stuck: m.dim(),
                    }
                    .into())
                }
            }
        }
    }
    Ok(found)
}

/// Iso-class representatives of all indecomposables of total dimension at
/// most `cfg.max_dim`, with their locality certificates.
pub fn enumerate_certified(cfg: &EnumerationConfig) -> Result<Vec<Indecomposable>, OracleError> {
    let field = cfg.alg.field();
    let p = field.order().ok_or(OracleError::InfiniteField)?;
    let plans: Vec<Plan> = dimension_vectors(cfg.alg.num_vertices(), cfg.max_dim)
        .iter()
        .map(|d| Plan::new(&cfg.alg, d))
        .collect();
    let needed = plans.iter().fold(0u64, |acc, pl| acc.saturating_add(pl.work(p)));
    if needed > cfg.work_bound {
        return Err(OracleError::WorkBoundExceeded {
            needed,
            bound: cfg.work_bound,
        });
    }
    let zero = zero_pairs(&cfg.alg);
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(plans.len().max(1));
    let mut results: Vec<Option<Result<Vec<Indecomposable>, OracleError>>> = (0..plans.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let plans = &plans;
            let zero = &zero;
            handles.push(scope.spawn(move || {
                plans
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i % threads == t)
                    .map(|(i, pl)| (i, enumerate_dims(cfg, pl, zero)))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            for (i, r) in h.join().expect("enumeration worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r.expect("every dimension vector was assigned")?);
    }
    Ok(out)
}

pub fn enumerate_indecomposables(cfg: &EnumerationConfig) -> Result<Vec<Module>, OracleError> {
    Ok(enumerate_certified(cfg)?.into_iter().map(|x| x.module).collect())
}

pub fn classify_tau_n_rigid(cfg: &EnumerationConfig, n: usize) -> Result<Vec<Module>, OracleError> {
    Ok(enumerate_indecomposables(cfg)?
        .into_iter()
        .filter(|m| is_tau_n_rigid(m, n).is_holds())
        .collect())
}

/// Largest finite projective dimension (at most `pd_bound`) among the
/// enumerated indecomposables; a lower bound for the finitistic dimension.
pub fn findim_lower_bound(cfg: &EnumerationConfig, pd_bound: usize) -> Result<usize, OracleError> {
    Ok(enumerate_indecomposables(cfg)?
        .iter()
        .filter_map(|m| match pd_up_to(m, pd_bound) {
            ProjDim::Finite(d) => Some(d),
            ProjDim::ExceedsBound { .. } => None,
        })
        .max()
        .unwrap_or(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub dims: BTreeMap<String, usize>,
    pub certificate: String,
    pub tau_rigid: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Catalog {
    pub field: String,
    pub max_dim: usize,
    pub count: usize,
    pub modules: Vec<CatalogEntry>,
}

pub fn catalog(cfg: &EnumerationConfig, ns: &[usize]) -> Result<Catalog, OracleError> {
    let found = enumerate_certified(cfg)?;
    let labels = cfg.alg.vertex_labels();
    let modules = found
        .iter()
        .map(|x| CatalogEntry {
            dims: labels.iter().cloned().zip(x.module.dims().iter().copied()).collect(),
            certificate: x.digest(),
            tau_rigid: ns
                .iter()
                .map(|&n| (format!("tau_{n}"), is_tau_n_rigid(&x.module, n).is_holds()))
                .collect(),
        })
        .collect();
    Ok(Catalog {
        field: cfg.alg.field().to_string(),
        max_dim: cfg.max_dim,
        count: found.len(),
        modules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverPresentation};
    use crate::decompose::is_iso;
    use crate::homology::describe;

    fn cycle(f: Field) -> Arc<BasedAlgebra> {
        let q = QuiverPresentation::new(
            f,
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "1".into()),
            ],
            vec![
                vec![(f.one(), vec!["b".into(), "a".into()])],
                vec![(f.one(), vec!["c".into(), "b".into()])],
                vec![(f.one(), vec!["a".into(), "c".into()])],
            ],
            2,
        );
        Arc::new(build_algebra(&q.unwrap()).unwrap())
    }

    #[test]
    fn dimension_vectors_are_ordered() {
        let d = dimension_vectors(2, 2);
        assert_eq!(d, vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn selfinjective_nakayama_has_six() {
        let alg = cycle(Field::prime(2).unwrap());
        let cfg = EnumerationConfig::new(alg.clone(), 2);
        let found = enumerate_indecomposables(&cfg).unwrap();
        assert_eq!(found.len(), 6);
        for v in 0..3 {
            assert!(found.iter().any(|m| is_iso(m, &Module::simple(&alg, v)).unwrap()));
            assert!(found.iter().any(|m| is_iso(m, &Module::projective(&alg, v)).unwrap()));
        }
        assert_eq!(findim_lower_bound(&cfg, 6).unwrap(), 0);
        let bigger = enumerate_indecomposables(&EnumerationConfig::new(alg, 4)).unwrap();
        assert_eq!(bigger.len(), 6);
    }

    #[test]
    fn refuses_infinite_fields_and_big_work() {
        let alg = cycle(Field::Rationals);
        let cfg = EnumerationConfig::new(alg, 2);
        assert_eq!(enumerate_indecomposables(&cfg).unwrap_err(), OracleError::InfiniteField);
        let mut cfg = EnumerationConfig::new(cycle(Field::prime(2).unwrap()), 3);
        cfg.work_bound = 10;
        assert!(matches!(
            enumerate_indecomposables(&cfg),
            Err(OracleError::WorkBoundExceeded { .. })
        ));
    }

    #[test]
    fn catalog_is_deterministic() {
        let cfg = EnumerationConfig::new(cycle(Field::prime(3).unwrap()), 2);
        let a = serde_json::to_string(&catalog(&cfg, &[1, 2]).unwrap()).unwrap();
        let b = serde_json::to_string(&catalog(&cfg, &[1, 2]).unwrap()).unwrap();
        assert_eq!(a, b);
        let names: Vec<String> = enumerate_indecomposables(&cfg).unwrap().iter().map(describe).collect();
        assert_eq!(names, ["S(3)", "S(2)", "S(1)", "P(2)", "P(3)", "P(1)"]);
    }
}
