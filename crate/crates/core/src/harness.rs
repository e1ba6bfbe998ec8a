//! Claim suites over the bundled fixtures. Each claim is a pure function
//! returning a [`Verdict`] whose outcome is Holds when the computed value
//! matches the expected one; a run produces one [`Record`] per claim.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::BasedAlgebra;
use crate::complex::{cone, has_nontrivial_idempotent, hom_homotopy, is_presilting, minimal_model, ChainMap, ProjComplex};
use crate::decisions::*;
use crate::decompose::{basic_summands, is_indecomposable, is_iso, rank_of_algebra, DecomposeError};
use crate::homology::{describe, ext, in_perp_tau_n, is_tau_n_rigid, min_resolution, pd_up_to, support, tau_n, HomologyError, ProjDim};
use crate::io::{fixture, Fixture, IoError};
use crate::linalg::Field;
use crate::module::Module;
use crate::oracle::{classify_tau_n_rigid, enumerate_indecomposables, findim_lower_bound, EnumerationConfig, OracleError};
use crate::verdict::{Check, NamedVerdict, Outcome, Verdict, Witness};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Decision(#[from] DecisionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Nair34,
    P4,
    Teo,
    Nair22,
    C1,
    Corfindim,
    ExamplesAll,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Nair34,
        Suite::P4,
        Suite::Teo,
        Suite::Nair22,
        Suite::C1,
        Suite::Corfindim,
        Suite::ExamplesAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nair34 => "nair34",
            Suite::P4 => "p4",
            Suite::Teo => "teo",
            Suite::Nair22 => "nair22",
            Suite::C1 => "c1",
            Suite::Corfindim => "corfindim",
            Suite::ExamplesAll => "examples-all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, HarnessError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    #[serde(rename = "check-id")]
    pub check_id: String,
    pub inputs: Vec<String>,
    pub outcome: Outcome,
    #[serde(rename = "certificate-digest")]
    pub certificate_digest: String,
    /// `None` unless timings were requested, so reports stay byte-stable
    #[serde(rename = "runtime-ms")]
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub field: String,
    pub outcome: Outcome,
    pub records: Vec<Record>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub field: Field,
    pub timings: bool,
    pub certificates: bool,
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            field: Field::Prime(2),
            timings: false,
            certificates: false,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

type ClaimFn = Box<dyn Fn(Field) -> Result<Verdict, HarnessError> + Send + Sync>;

pub struct Claim {
    pub id: String,
    pub inputs: Vec<String>,
    run: ClaimFn,
}

impl Claim {
    fn new(id: impl Into<String>, inputs: &[&str], run: impl Fn(Field) -> Result<Verdict, HarnessError> + Send + Sync + 'static) -> Claim {
        Claim {
            id: id.into(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            run: Box::new(run),
        }
    }

    /// Errors become Inconclusive verdicts naming the error.
    pub fn evaluate(&self, field: Field) -> Verdict {
        match (self.run)(field) {
            Ok(v) => v,
            Err(e) => Verdict::inconclusive(0, e.to_string(), "claim"),
        }
    }
}

pub fn digest(v: &Verdict) -> String {
    let text = serde_json::to_string(v).expect("verdicts serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn expect(observed: Verdict, want: Outcome) -> Verdict {
    let outcome = match observed.outcome {
        o if o == want => Outcome::Holds,
        Outcome::Inconclusive => Outcome::Inconclusive,
        _ => Outcome::Fails,
    };
    let name = format!("expected {want:?}");
    Verdict::new(
        outcome,
        Witness::Parts {
            parts: vec![NamedVerdict { name, verdict: observed }],
        },
        "claim",
    )
}

fn fact(ok: bool, text: impl Into<String>) -> Verdict {
    Verdict::new(Outcome::from_bool(ok), Witness::Note { text: text.into() }, "claim")
}

fn parts(parts: Vec<(String, Verdict)>) -> Verdict {
    Verdict::all(parts, "claim")
}

/// Named fixture modules, then the projectives, simples and injectives not
/// already present up to isomorphism.
pub fn fixture_modules(fx: &Fixture) -> Result<Vec<(String, Module)>, HarnessError> {
    let mut out = fx.modules.clone();
    let labels = fx.algebra.vertex_labels().to_vec();
    for kind in ["P", "S", "I"] {
        for l in &labels {
            let name = format!("{kind}({l})");
            let m = fx.resolve(&name)?;
            let mut seen = false;
            for (_, x) in &out {
                if is_iso(x, &m)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push((name, m));
            }
        }
    }
    Ok(out)
}

/// Indecomposables up to total dimension `bound`: the oracle over a finite
/// field, the indecomposable fixture modules otherwise.
fn test_modules(fx: &Fixture, bound: usize) -> Result<Vec<Module>, HarnessError> {
    if fx.algebra.field().order().is_some() {
        return Ok(enumerate_indecomposables(&EnumerationConfig::new(fx.algebra.clone(), bound))?);
    }
    let mut out = Vec::new();
    for (_, m) in fixture_modules(fx)? {
        if m.dim() <= bound && is_indecomposable(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

fn standard_indecomposables(alg: &Arc<BasedAlgebra>) -> Vec<Module> {
    let n = alg.num_vertices();
    (0..n)
        .map(|v| Module::projective(alg, v))
        .chain((0..n).map(|v| Module::simple(alg, v)))
        .collect()
}

fn load(name: &str, field: Field) -> Result<Fixture, HarnessError> {
    Ok(fixture(name, Some(field))?)
}

fn get(fx: &Fixture, name: &str) -> Result<Module, HarnessError> {
    Ok(fx.resolve(name)?)
}

fn in_add_of(x: &Module, summands: &[Module]) -> Result<bool, HarnessError> {
    for s in summands {
        if is_iso(x, s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

const PACKS: [&str; 3] = ["eximp", "ejp1", "radsq3"];

/// Module names per pack, resolved once over `F_2`; claims rebuild them
/// over the requested field.
fn pack_module_names(pack: &str) -> Vec<String> {
    let fx = fixture(pack, None).expect("bundled fixtures parse");
    fixture_modules(&fx)
        .expect("bundled fixtures decompose")
        .into_iter()
        .map(|(n, _)| n)
        .collect()
}

fn nair34_claims() -> Vec<Claim> {
    let mut out = Vec::new();
    for pack in PACKS {
        for name in pack_module_names(pack) {
            for n in 1..=3usize {
                let (p, nm) = (pack.to_string(), name.clone());
                let input = format!("{pack}/{name}");
                out.push(Claim::new(format!("nair34/{pack}/{name}/n={n}"), &[&input], move |f| {
                    let fx = load(&p, f)?;
                    let m = get(&fx, &nm)?;
                    let res_m = min_resolution(&m, n);
                    let pm = ProjComplex::from_resolution(&res_m, n);
                    let mut ps = vec![named_verdict(
                        "module route vs presilting",
                        agreement(
                            is_tau_n_rigid(&m, n).is_holds(),
                            is_presilting(&pm).is_holds(),
                            "tau_n-rigid vs presilting",
                        ),
                    )];
                    for (other, x) in fixture_modules(&fx)? {
                        ps.push(named_verdict(&format!("N = {other}"), check_nair34(&m, &x, n)));
                        let px = ProjComplex::from_resolution(&min_resolution(&x, n), n);
                        for j in 1..n {
                            let h = hom_homotopy(&pm, &px, j as i64);
                            let e = res_m.ext_dim(&x, j);
                            ps.push(named_verdict(
                                &format!("N = {other}, j = {j}"),
                                agreement(h == 0, e == 0, &format!("hom_K = {h}, ext = {e}")),
                            ));
                        }
                    }
                    Ok(parts(ps))
                }));
            }
        }
    }
    out
}

fn named_verdict(name: &str, v: Verdict) -> (String, Verdict) {
    (name.to_string(), v)
}

fn agreement(left: bool, right: bool, detail: &str) -> Verdict {
    let w = Witness::Agreement {
        left,
        right,
        detail: detail.to_string(),
    };
    Verdict::new(Outcome::from_bool(left == right), w, "cross-route")
}

fn p4_claims() -> Vec<Claim> {
    vec![
        Claim::new("p4/eximp/M/n=2", &["eximp/M", "six indecomposables"], |f| {
            let fx = load("eximp", f)?;
            let six = standard_indecomposables(&fx.algebra);
            Ok(check_p4(&get(&fx, "M")?, 2, &six)?)
        }),
        Claim::new("p4/ejp1/M/n=4", &["ejp1/M", "indecomposables of dim <= 4"], |f| {
            let fx = load("ejp1", f)?;
            let tests = test_modules(&fx, 4)?;
            Ok(check_p4(&get(&fx, "M")?, 4, &tests)?)
        }),
    ]
}

fn teo_claims() -> Vec<Claim> {
    let mut out = vec![
        Claim::new("teo/eximp/M/n=2", &["eximp/M"], |f| {
            let fx = load("eximp", f)?;
            let v = check_teo(&get(&fx, "M")?, 2)?;
            let all_false = clause_values(&v).iter().all(|o| *o == Outcome::Fails);
            Ok(parts(vec![
                named_verdict("clauses agree", v),
                named_verdict("every clause false", fact(all_false, "pd infinite, not faithful")),
            ]))
        }),
        Claim::new("teo/ejp1/M/n=4", &["ejp1/M"], |f| {
            let fx = load("ejp1", f)?;
            let v = check_teo(&get(&fx, "M")?, 4)?;
            let all_true = clause_values(&v).iter().all(|o| *o == Outcome::Holds);
            Ok(parts(vec![
                named_verdict("clauses agree", v),
                named_verdict("every clause true", fact(all_true, "M is 4-tilting")),
            ]))
        }),
    ];
    for pack in ["eximp", "ejp1", "radsq3", "gamma-eximp"] {
        out.push(Claim::new(format!("teo/{pack}/A/n=1"), &[&format!("{pack}/A")], move |f| {
            let fx = load(pack, f)?;
            let v = check_teo(&Module::regular(&fx.algebra), 1)?;
            let all_true = clause_values(&v).iter().all(|o| *o == Outcome::Holds);
            Ok(parts(vec![
                named_verdict("clauses agree", v),
                named_verdict("every clause true", fact(all_true, "the regular module")),
            ]))
        }));
    }
    out
}

fn clause_values(v: &Verdict) -> Vec<Outcome> {
    match &v.witness {
        Witness::Parts { parts } => parts.iter().map(|p| p.verdict.outcome).collect(),
        _ => vec![],
    }
}

fn nair22_claims() -> Vec<Claim> {
    let mut out = vec![
        Claim::new("nair22/eximp/M/(2,2)", &["eximp/M"], |f| {
            let fx = load("eximp", f)?;
            let r = is_tau_nm_tilting(&get(&fx, "M")?, 2, 2)?;
            Ok(parts(vec![
                named_verdict("tau_{2,2}-tilting", expect(r.verdict(), Outcome::Holds)),
                named_verdict("2-tilting over Gamma", expect(r.m_tilting_over_gamma.clone(), Outcome::Holds)),
                named_verdict("consistent", fact(r.consistent, "implications between parts")),
            ]))
        }),
        Claim::new("nair22/eximp/M/(1,1)", &["eximp/M"], |f| {
            let fx = load("eximp", f)?;
            let r = is_tau_nm_tilting(&get(&fx, "M")?, 1, 1)?;
            Ok(expect(r.verdict(), Outcome::Fails))
        }),
    ];
    for pack in PACKS {
        for name in pack_module_names(pack) {
            for n in 1..=2usize {
                let nm = name.clone();
                out.push(Claim::new(
                    format!("nair22/{pack}/{name}/n={n}"),
                    &[&format!("{pack}/{name}")],
                    move |f| {
                        let fx = load(pack, f)?;
                        let m = get(&fx, &nm)?;
                        let r = is_tau_nm_tilting(&m, n, n)?;
                        let mut ps = vec![named_verdict(
                            "consistent",
                            fact(r.consistent, "tau_{n,m}-tilting implies m-tilting over Gamma"),
                        )];
                        let right = [r.tau_n_rigid.outcome, r.m_tilting_over_gamma.outcome];
                        if right.contains(&Outcome::Inconclusive) || r.outcome == Outcome::Inconclusive {
                            ps.push(named_verdict(
                                "biconditional",
                                Verdict::inconclusive(n, "a part was inconclusive", "claim"),
                            ));
                        } else {
                            let rhs = r.sincere && right.iter().all(|o| *o == Outcome::Holds);
                            ps.push(named_verdict(
                                "biconditional",
                                agreement(
                                    r.outcome == Outcome::Holds,
                                    rhs,
                                    "tau_{n,n}-tilting vs sincere, tau_n-rigid, n-tilting over Gamma",
                                ),
                            ));
                        }
                        if n == 1 && r.silting.is_holds() {
                            ps.push(named_verdict(
                                "tau-tilting is tau_{1,1}-tilting",
                                expect(r.verdict(), Outcome::Holds),
                            ));
                        }
                        Ok(parts(ps))
                    },
                ));
            }
        }
    }
    out
}

fn c1_claims() -> Vec<Claim> {
    let mut out = Vec::new();
    for pack in PACKS {
        for name in pack_module_names(pack) {
            let nm = name.clone();
            out.push(Claim::new(format!("c1/{pack}/{name}"), &[&format!("{pack}/{name}")], move |f| {
                let fx = load(pack, f)?;
                let m = get(&fx, &nm)?;
                structural(&m)
            }));
        }
    }
    out
}

/// Sincerity and rank for tau_n-tilting, disjoint supports for tau_n-rigid,
/// the annihilator for sincere modules, and indecomposability of the
/// truncated resolution of an indecomposable.
fn structural(m: &Module) -> Result<Verdict, HarnessError> {
    let alg = m.algebra();
    let rk_alg = rank_of_algebra(alg)?;
    let mut ps = Vec::new();
    for n in 1..=3usize {
        let t = is_tau_n_tilting(m, n)?;
        if t.is_holds() {
            let ok = m.is_sincere() && basic_summands(m)?.len() == rk_alg;
            ps.push(named_verdict(
                &format!("tau_{n}-tilting: sincere, rk"),
                fact(ok, "sincere and rk(M) = rk(A)"),
            ));
        }
        if is_tau_n_rigid(m, n).is_holds() {
            let res = min_resolution(m, n);
            let (p0, pn) = (support(&res, 0), support(&res, n));
            let disjoint = p0.iter().all(|v| !pn.contains(v));
            ps.push(named_verdict(
                &format!("tau_{n}-rigid: add P_0 and add P_{n} disjoint"),
                fact(disjoint, format!("{p0:?} vs {pn:?}")),
            ));
        }
    }
    if m.is_sincere() {
        let ann = m.annihilator();
        let in_rad = ann.iter().all(|x| (0..alg.dim()).all(|b| alg.is_radical(b) || x[b].is_zero()));
        let r = restriction(m)?;
        let rk_gamma = rank_of_algebra(&r.gamma)?;
        ps.push(named_verdict(
            "ann(M) in rad(A), rk(A) = rk(Gamma)",
            fact(
                in_rad && rk_gamma == rk_alg,
                format!("dim ann = {}, rk = {rk_alg}/{rk_gamma}", ann.len()),
            ),
        ));
    }
    if is_indecomposable(m)? {
        for n in 1..=2usize {
            let c = minimal_model(&ProjComplex::from_resolution(&min_resolution(m, n), n)).complex;
            let v = match has_nontrivial_idempotent(&c, 1 << 16) {
                Some(split) => fact(!split, "no nontrivial idempotent in End_K"),
                None => Verdict::inconclusive(1 << 16, "idempotent search out of budget", "claim"),
            };
            ps.push(named_verdict(&format!("rk of P_(>=-{n}) is 1"), v));
        }
    }
    if ps.is_empty() {
        ps.push(named_verdict("nothing applies", fact(true, "no structural statement applies")));
    }
    Ok(parts(ps))
}

fn corfindim_claims() -> Vec<Claim> {
    vec![
        Claim::new("corfindim/eximp/M/(2,2)", &["eximp/M", "dim <= 3"], |f| {
            let fx = load("eximp", f)?;
            Ok(check_findim_bound(&get(&fx, "M")?, 2, 2, 3)?)
        }),
        Claim::new("corfindim/ejp1/M/(4,4)", &["ejp1/M", "dim <= 5"], |f| {
            let fx = load("ejp1", f)?;
            Ok(check_findim_bound(&get(&fx, "M")?, 4, 4, 5)?)
        }),
    ]
}

fn example_claims() -> Vec<Claim> {
    let mut c = Vec::new();
    c.push(Claim::new("eximp/tau2-rigid", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        Ok(expect(is_tau_n_rigid(&get(&fx, "M")?, 2), Outcome::Holds))
    }));
    c.push(Claim::new("eximp/not-tau-rigid", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        Ok(expect(is_tau_n_rigid(&get(&fx, "M")?, 1), Outcome::Fails))
    }));
    c.push(Claim::new("eximp/tau-M", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        let t = tau_n(&get(&fx, "M")?, 1);
        Ok(fact(is_iso(&t, &get(&fx, "tauM")?)?, format!("tau M = {}", describe(&t))))
    }));
    c.push(Claim::new("eximp/pd-S1-periodic", &["eximp/S1"], |f| {
        let fx = load("eximp", f)?;
        let pd = pd_up_to(&get(&fx, "S1")?, 10);
        let ok = matches!(
            pd,
            ProjDim::ExceedsBound {
                periodic: Some((0, 3)),
                ..
            }
        );
        Ok(fact(ok, format!("{pd:?}")))
    }));
    c.push(Claim::new("eximp/tau2-tilting", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        Ok(expect(is_tau_n_tilting(&get(&fx, "M")?, 2)?, Outcome::Holds))
    }));
    c.push(Claim::new("eximp/gamma", &["eximp/M", "gamma-eximp"], |f| {
        let fx = load("eximp", f)?;
        let g = load("gamma-eximp", f)?;
        let r = restriction(&get(&fx, "M")?)?;
        let ok = r.gamma.dim() == 5 && r.gamma.matches_presentation(&g.presentation);
        Ok(fact(
            ok,
            format!(
                "dim Gamma = {}, ann spanned by {}",
                r.gamma.dim(),
                fx.algebra.format_element(&r.annihilator[0])
            ),
        ))
    }));
    c.push(Claim::new("eximp/restriction-2-tilting", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        let r = restriction(&get(&fx, "M")?)?;
        Ok(expect(is_n_tilting(&r.module, 2)?, Outcome::Holds))
    }));
    c.push(Claim::new("eximp/tau22-tilting", &["eximp/M"], |f| {
        let fx = load("eximp", f)?;
        Ok(expect(is_tau_nm_tilting(&get(&fx, "M")?, 2, 2)?.verdict(), Outcome::Holds))
    }));
    c.push(Claim::new("eximp/perp-is-add-M", &["eximp/M", "six indecomposables"], |f| {
        let fx = load("eximp", f)?;
        let m = get(&fx, "M")?;
        let summands = basic_summands(&m)?;
        let mut ps = Vec::new();
        for x in standard_indecomposables(&fx.algebra) {
            let perp = in_perp_tau_n(&x, &m, 2);
            ps.push(named_verdict(
                &describe(&x),
                agreement(perp, in_add_of(&x, &summands)?, "perp vs add(M)"),
            ));
        }
        Ok(parts(ps))
    }));
    c.push(Claim::new("eximp/six-indecomposables", &["eximp", "dim <= 2"], |f| {
        let fx = load("eximp", f)?;
        let found = enumerate_indecomposables(&EnumerationConfig::new(fx.algebra.clone(), 2))?;
        let std = standard_indecomposables(&fx.algebra);
        let mut ok = found.len() == 6;
        for x in &std {
            ok &= in_add_of(x, &found)?;
        }
        Ok(fact(ok, format!("{} iso classes", found.len())))
    }));
    c.push(Claim::new("ejp1/pd-S1", &["ejp1/S(1)"], |f| {
        let fx = load("ejp1", f)?;
        let pd = pd_up_to(&get(&fx, "S(1)")?, 5);
        Ok(fact(pd == ProjDim::Finite(2), format!("{pd:?}")))
    }));
    c.push(Claim::new("ejp1/S1-self-orthogonal", &["ejp1/S(1)"], |f| {
        let fx = load("ejp1", f)?;
        let s = get(&fx, "S(1)")?;
        let checks: Vec<Check> = (1..=2).map(|i| Check::new(format!("ext^{i}(S(1),S(1))"), ext(&s, &s, i))).collect();
        let ok = checks.iter().all(|c| c.dim == 0);
        Ok(Verdict::new(Outcome::from_bool(ok), Witness::Vanishing { checks }, "claim"))
    }));
    c.push(Claim::new("ejp1/S1-tau2-rigid", &["ejp1/S(1)"], |f| {
        let fx = load("ejp1", f)?;
        Ok(expect(is_tau_n_rigid(&get(&fx, "S(1)")?, 2), Outcome::Holds))
    }));
    c.push(Claim::new("ejp1/S1-not-tau2-tilting", &["ejp1/S(1)"], |f| {
        let fx = load("ejp1", f)?;
        Ok(expect(is_tau_n_tilting(&get(&fx, "S(1)")?, 2)?, Outcome::Fails))
    }));
    c.push(Claim::new(
        "ejp1/S1-no-complement",
        &["ejp1/S(1)", "indecomposables of dim <= 4"],
        |f| {
            let fx = load("ejp1", f)?;
            let s = get(&fx, "S(1)")?;
            let found = enumerate_indecomposables(&EnumerationConfig::new(fx.algebra.clone(), 4))?;
            let mut ps = Vec::new();
            for x in found.iter().filter(|x| !is_iso(x, &s).unwrap_or(false)) {
                let sum = Module::direct_sum(&[x.clone(), s.clone()]).module;
                ps.push(named_verdict(&describe(x), expect(is_tau_n_rigid(&sum, 2), Outcome::Fails)));
            }
            Ok(parts(ps))
        },
    ));
    c.push(Claim::new("ejp1/findim", &["ejp1", "dim <= 4"], |f| {
        let fx = load("ejp1", f)?;
        let cfg = EnumerationConfig::new(fx.algebra.clone(), 4);
        let d = findim_lower_bound(&cfg, 10)?;
        let pds: Vec<usize> = enumerate_indecomposables(&cfg)?
            .iter()
            .filter_map(|m| pd_up_to(m, 10).finite())
            .collect();
        let pd_m = pd_up_to(&get(&fx, "M")?, 10).finite();
        let ok = pds.contains(&2) && Some(d) == pd_m;
        Ok(fact(ok, format!("finite pds {pds:?}, bound {d}, pd(M) = {pd_m:?}")))
    }));
    c.push(Claim::new("injectives/resolutions", &["ejp1/I1", "ejp1/I2", "ejp1/I3"], |f| {
        let fx = load("ejp1", f)?;
        let want = [
            ("I1", "P(2) <- P(3) <- P(1) <- P(2) <- P(3)"),
            ("I2", "P(1) <- P(3) <- P(1) <- P(2) <- P(3)"),
            ("I3", "P(1)+P(2) <- P(3)^2 <- P(1) <- P(2) <- P(3)"),
        ];
        let mut ps = Vec::new();
        for (name, shape) in want {
            let got = min_resolution(&get(&fx, name)?, 5).shape();
            ps.push(named_verdict(name, fact(got == shape, got)));
        }
        Ok(parts(ps))
    }));
    c.push(Claim::new("injectives/4-tilting", &["ejp1/M"], |f| {
        let fx = load("ejp1", f)?;
        Ok(expect(is_n_tilting(&get(&fx, "M")?, 4)?, Outcome::Holds))
    }));
    c.push(Claim::new("injectives/coresolution", &["ejp1/M"], |f| {
        let fx = load("ejp1", f)?;
        let co = add_coresolution(&get(&fx, "M")?, 4)?;
        let want = ["I(1)^2+I(3)^2", "I(2)^4", "I(1)^3", "I(3)^3", "I(2)^3 lies in add(M)"];
        let ok = co.length == Some(4) && co.steps.iter().zip(want).all(|(s, w)| s.ends_with(w));
        Ok(Verdict::new(Outcome::from_bool(ok), Witness::Chain { steps: co.steps }, "claim"))
    }));
    c.push(Claim::new("injectives/tau4-tilting", &["ejp1/M"], |f| {
        let fx = load("ejp1", f)?;
        Ok(expect(is_tau_n_tilting(&get(&fx, "M")?, 4)?, Outcome::Holds))
    }));
    c.push(Claim::new("injectives/teo", &["ejp1/M"], |f| {
        let fx = load("ejp1", f)?;
        Ok(expect(check_teo(&get(&fx, "M")?, 4)?, Outcome::Holds))
    }));
    c.push(Claim::new("injectives/cone", &["ejp1/I3", "ejp1/I1", "ejp1/X23"], |f| {
        let fx = load("ejp1", f)?;
        let (i3, i1, x23, i2) = (get(&fx, "I3")?, get(&fx, "I1")?, get(&fx, "X23")?, get(&fx, "I2")?);
        let hs = i3.hom(&i1).map_err(DecisionError::from)?;
        if hs.len() != 1 {
            return Ok(fact(false, format!("hom(I(3), I(1)) = {}", hs.len())));
        }
        let ch = ChainMap::lift(&hs[0], &min_resolution(&i3, 4), &min_resolution(&i1, 4), 4);
        let h0 = cone(&ch).cohomology(0);
        Ok(parts(vec![
            named_verdict("H^0 of the cone is [2;3]", fact(is_iso(&h0, &x23)?, describe(&h0))),
            named_verdict("ext^1(I(2), [2;3]) != 0", fact(ext(&i2, &x23, 1) > 0, "nonzero")),
            named_verdict(
                "[2;3] not in perp",
                fact(!in_perp_tau_n(&x23, &get(&fx, "M")?, 4), "hom or ext nonzero"),
            ),
        ]))
    }));
    c.push(Claim::new("injectives/preenvelope", &["ejp1/X23", "ejp1/M"], |f| {
        let fx = load("ejp1", f)?;
        let m = get(&fx, "M")?;
        let x = get(&fx, "X23")?;
        let tests = fixture_modules(&fx)?.into_iter().map(|(_, y)| y).collect::<Vec<_>>();
        let r = relative_preenvelope(&x, &m, 4, &tests)?;
        let ok = in_perp_tau_n(&r.target, &m, 4);
        let mut steps = r.steps.clone();
        steps.push(format!("target {}", describe(&r.target)));
        Ok(Verdict::new(Outcome::from_bool(ok), Witness::Chain { steps }, "claim"))
    }));
    c.push(Claim::new("radsq3/tau3-S2", &["radsq3/S(2)", "radsq3/J2"], |f| {
        let fx = load("radsq3", f)?;
        let t = tau_n(&get(&fx, "S(2)")?, 3);
        Ok(fact(is_iso(&t, &get(&fx, "J2")?)?, describe(&t)))
    }));
    c.push(Claim::new("radsq3/tau3-S3", &["radsq3/S(3)"], |f| {
        let fx = load("radsq3", f)?;
        let s3 = get(&fx, "S(3)")?;
        let t = tau_n(&s3, 3);
        Ok(fact(is_iso(&t, &s3.power(2))?, format!("dim {}", t.dim())))
    }));
    c.push(Claim::new("radsq3/tau3-rigid", &["radsq3", "dim <= 6"], |f| {
        let fx = load("radsq3", f)?;
        let found = classify_tau_n_rigid(&EnumerationConfig::new(fx.algebra.clone(), 6), 3)?;
        let ps: Vec<Module> = (0..3).map(|v| Module::projective(&fx.algebra, v)).collect();
        let mut ok = found.len() == 3;
        for p in &ps {
            ok &= in_add_of(p, &found)?;
        }
        Ok(fact(ok, found.iter().map(describe).collect::<Vec<_>>().join(", ")))
    }));
    c.push(Claim::new("radsq3/families", &["radsq3", "dim <= 4"], |f| {
        let fx = load("radsq3", f)?;
        let found = enumerate_indecomposables(&EnumerationConfig::new(fx.algebra.clone(), 4))?;
        let mut ps = Vec::new();
        for (name, m) in &fx.modules {
            if m.dim() <= 4 {
                ps.push(named_verdict(name, fact(in_add_of(m, &found)?, "found by the oracle")));
            }
        }
        Ok(parts(ps))
    }));
    c.push(Claim::new("radsq3/irreducible-count", &["radsq3", "dim <= 6"], |f| {
        let fx = load("radsq3", f)?;
        let found = enumerate_indecomposables(&EnumerationConfig::new(fx.algebra.clone(), 6))?;
        let want = if f == Field::Prime(2) { Some(21) } else { None };
        match want {
            Some(w) => Ok(fact(found.len() == w, format!("{} iso classes", found.len()))),
            None => Ok(Verdict::inconclusive(6, "count only recorded over F_2", "claim")),
        }
    }));
    c
}

pub fn claims(suite: Suite) -> Vec<Claim> {
    match suite {
        Suite::Nair34 => nair34_claims(),
        Suite::P4 => p4_claims(),
        Suite::Teo => teo_claims(),
        Suite::Nair22 => nair22_claims(),
        Suite::C1 => c1_claims(),
        Suite::Corfindim => corfindim_claims(),
        Suite::ExamplesAll => {
            let mut c = example_claims();
            c.extend(p4_claims());
            c.extend(corfindim_claims());
            c.push(Claim::new("eximp/compatible-class", &["eximp/M", "six indecomposables"], |f| {
                let fx = load("eximp", f)?;
                Ok(check_compatible_class(
                    &get(&fx, "M")?,
                    2,
                    2,
                    &standard_indecomposables(&fx.algebra),
                )?)
            }));
            c
        }
    }
}

/// Evaluates claims across threads; records keep claim order.
pub fn run_claims(claims: &[Claim], opts: &RunOptions) -> Vec<Record> {
    let threads = opts.threads.max(1);
    let mut slots: Vec<Option<Record>> = vec![None; claims.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let done = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= claims.len() {
                    break;
                }
                let start = Instant::now();
                let v = claims[i].evaluate(opts.field);
                let ms = start.elapsed().as_millis() as u64;
                let rec = Record {
                    check_id: claims[i].id.clone(),
                    inputs: claims[i].inputs.clone(),
                    outcome: v.outcome,
                    certificate_digest: digest(&v),
                    runtime_ms: opts.timings.then_some(ms),
                    certificate: opts.certificates.then_some(v),
                };
                done.lock().unwrap().push((i, rec));
            });
        }
    });
    for (i, r) in done.into_inner().unwrap() {
        slots[i] = Some(r);
    }
    slots.into_iter().map(|r| r.expect("every claim ran")).collect()
}

pub fn aggregate(records: &[Record]) -> Outcome {
    if records.iter().any(|r| r.outcome == Outcome::Fails) {
        Outcome::Fails
    } else if records.iter().any(|r| r.outcome == Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else {
        Outcome::Holds
    }
}

pub fn run_suite(suite: Suite, opts: &RunOptions) -> Report {
    let records = run_claims(&claims(suite), opts);
    Report {
        suite: suite.name().to_string(),
        field: opts.field.to_string(),
        outcome: aggregate(&records),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn expectation_wrapping() {
        let f = Verdict::fails(Witness::Note { text: "x".into() }, "t");
        assert_eq!(expect(f.clone(), Outcome::Fails).outcome, Outcome::Holds);
        assert_eq!(expect(f, Outcome::Holds).outcome, Outcome::Fails);
        let i = Verdict::inconclusive(1, "x", "t");
        assert_eq!(expect(i, Outcome::Holds).outcome, Outcome::Inconclusive);
    }

    #[test]
    fn teo_suite_is_stable() {
        let opts = RunOptions::default();
        let a = run_suite(Suite::Teo, &opts);
        let b = run_suite(Suite::Teo, &RunOptions { threads: 1, ..opts });
        assert_eq!(a.outcome, Outcome::Holds, "{}", serde_json::to_string_pretty(&a).unwrap());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn errors_become_inconclusive() {
        let c = Claim::new("x", &[], |_| Err(HarnessError::UnknownSuite("y".into())));
        assert_eq!(c.evaluate(Field::Prime(2)).outcome, Outcome::Inconclusive);
    }
}
