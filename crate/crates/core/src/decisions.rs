//! Decision procedures for tilting-type properties of modules, each
//! returning a [`Verdict`] with its certificate.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BasedAlgebra};
use crate::complex::{add_precover, cone, cone_inclusion, hom_homotopy, is_silting, minimal_model, ChainMap, ProjComplex};
use crate::decompose::{basic_summands, end_algebra, iso_classes, rank_of_algebra, rk, DecomposeError};
use crate::homology::{describe, describe_sum, in_perp_tau_n, is_tau_n_rigid, min_resolution, pd_from, pd_up_to, ProjDim};
use crate::linalg::{Matrix, Scalar};
use crate::module::{gen_chain, in_add, in_span, left_approximation, trace_precover, GenChain, Module, ModuleError};
use crate::oracle::{findim_lower_bound, EnumerationConfig, OracleError};
use crate::verdict::{Check, NamedVerdict, Outcome, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecisionError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("factorization check failed: {0}")]
    FactorizationCheckFailed(String),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn note(text: impl Into<String>) -> Witness {
    Witness::Note { text: text.into() }
}

fn named(name: &str, v: Verdict) -> (String, Verdict) {
    (name.to_string(), v)
}

/// `X ∈ gen_n(M)` through the chain of minimal right `add(M)`-approximations.
/// A stop at the first stage is decisive (`X ∉ gen(M)`); later stops are not.
pub fn in_gen_n(x: &Module, m: &Module, n: usize) -> Result<Verdict, DecisionError> {
    let summands = basic_summands(m)?;
    Ok(match gen_chain(&summands, x, n) {
        GenChain::Complete => Verdict::holds(note(format!("{n} onto approximations")), "module"),
        GenChain::StoppedAt(1) => Verdict::fails(
            Witness::Violation {
                check: Check::new("trace of M in X (codim)", x.dim() - trace_precover(m, x).map.rank()),
                detail: "X is not generated by M".into(),
            },
            "module",
        ),
        GenChain::StoppedAt(k) => Verdict::inconclusive(n, format!("canonical approximation chain stopped at stage {k}"), "module"),
    })
}

/// The per-summand complexes `P_{>=-n}(X)` for the basic summands of `m`.
pub fn truncated_summands(m: &Module, n: usize) -> Result<Vec<ProjComplex>, DecisionError> {
    Ok(basic_summands(m)?
        .iter()
        .map(|x| ProjComplex::from_resolution(&min_resolution(x, n), n))
        .collect())
}

/// `P_{>=-n}(M)` is silting; sincerity and `rk(M) = rk(A)` are tested first.
pub fn is_tau_n_tilting(m: &Module, n: usize) -> Result<Verdict, DecisionError> {
    if n == 0 {
        return Err(DecisionError::PreconditionViolated("n must be at least 1".into()));
    }
    let alg = m.algebra();
    if !m.is_sincere() {
        let v = m.dims().iter().position(|&d| d == 0).unwrap();
        return Ok(Verdict::fails(
            Witness::Violation {
                check: Check::new(format!("[M:S({})]", alg.vertex_labels()[v]), 0),
                detail: "M is not sincere".into(),
            },
            "rank",
        ));
    }
    let (r, ra) = (rk(m)?, rank_of_algebra(alg)?);
    if r != ra {
        return Ok(Verdict::fails(note(format!("rk(M) = {r} but rk(A) = {ra}")), "rank"));
    }
    let v = is_silting(&truncated_summands(m, n)?, n, true);
    debug_assert!(!v.is_holds() || (m.is_sincere() && r == ra));
    Ok(v)
}

/// Outcome of the module-level `add(M)`-coresolution of the regular module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCoresolution {
    /// length of the exact sequence, when it ends within the bound
    pub length: Option<usize>,
    pub steps: Vec<String>,
}

/// `0 -> A -> M_0 -> ... -> M_k -> 0` from minimal left approximations,
/// each of which must be injective.
pub fn add_coresolution(m: &Module, bound: usize) -> Result<ModuleCoresolution, DecisionError> {
    let summands = basic_summands(m)?;
    let mut cur = Module::regular(m.algebra());
    let mut steps = Vec::new();
    for k in 0..=bound {
        if in_add(&summands, &cur) {
            steps.push(format!("C_{k} = {} lies in add(M)", describe_sum(&cur)));
            return Ok(ModuleCoresolution { length: Some(k), steps });
        }
        if k == bound {
            break;
        }
        let env = left_approximation(&summands, &cur);
        let mono = env.map.rank() == cur.dim();
        steps.push(format!(
            "C_{k} = {} -> M_{k} = {}{}",
            describe_sum(&cur),
            describe_sum(&env.object),
            if mono { "" } else { " (not injective)" }
        ));
        if !mono {
            return Ok(ModuleCoresolution { length: None, steps });
        }
        cur = cur.cokernel(&env.object, &env.map).0;
    }
    Ok(ModuleCoresolution { length: None, steps })
}

/// Miyashita `n`-tilting: `pd <= n`, `Ext^i(M, M) = 0` for `1 <= i <= n`, and
/// an `add(M)`-coresolution of `A` of length `<= n`.
pub fn is_n_tilting(m: &Module, n: usize) -> Result<Verdict, DecisionError> {
    let res = min_resolution(m, n);
    let pd = pd_from(&res, n);
    let pd_v = match &pd {
        ProjDim::Finite(d) => Verdict::holds(
            Witness::Vanishing {
                checks: vec![Check::new(format!("P_{}(M)", d + 1), 0)],
            },
            "module",
        ),
        ProjDim::ExceedsBound { periodic, .. } => Verdict::fails(
            note(match periodic {
                Some((i, j)) => format!("pd(M) is infinite: syzygy {i} is isomorphic to syzygy {j}"),
                None => format!("pd(M) > {n}"),
            }),
            "module",
        ),
    };
    if !pd_v.is_holds() {
        return Ok(Verdict::all(vec![named("pd", pd_v)], "module"));
    }
    let mut checks = Vec::new();
    let mut ext_v = None;
    for i in 1..=n {
        let c = Check::new(format!("ext^{i}(M,M)"), res.ext_dim(m, i));
        if c.dim > 0 {
            ext_v = Some(Verdict::fails(
                Witness::Violation {
                    check: c,
                    detail: "M is not self-orthogonal".into(),
                },
                "module",
            ));
            break;
        }
        checks.push(c);
    }
    let ext_v = ext_v.unwrap_or_else(|| Verdict::holds(Witness::Vanishing { checks }, "module"));
    let cores = add_coresolution(m, n)?;
    let cores_v = match cores.length {
        Some(_) => Verdict::holds(Witness::Chain { steps: cores.steps }, "module"),
        None => Verdict::fails(Witness::Chain { steps: cores.steps }, "module"),
    };
    Ok(Verdict::all(
        vec![named("pd", pd_v), named("self-orthogonal", ext_v), named("coresolution", cores_v)],
        "module",
    ))
}

/// `Γ_M = A / ann(M)` with the projection and `M` restricted to it.
pub struct Restriction {
    pub annihilator: Vec<Vec<Scalar>>,
    pub gamma: Arc<BasedAlgebra>,
    pub proj: Matrix,
    pub module: Module,
}

pub fn restriction(m: &Module) -> Result<Restriction, DecisionError> {
    let annihilator = m.annihilator();
    let (gamma, proj) = m.algebra().quotient(&annihilator)?;
    let gamma = Arc::new(gamma);
    let module = m.restrict(&gamma, &proj)?;
    Ok(Restriction {
        annihilator,
        gamma,
        proj,
        module,
    })
}

/// A `Γ`-module viewed as an `A`-module along the projection `A -> Γ`.
pub fn inflate(x: &Module, alg: &Arc<BasedAlgebra>, proj: &Matrix) -> Result<Module, DecisionError> {
    let gamma = x.algebra();
    let mut dims = vec![0; alg.num_vertices()];
    for (u, label) in gamma.vertex_labels().iter().enumerate() {
        let v = alg
            .vertex_index(label)
            .ok_or_else(|| DecisionError::PreconditionViolated(format!("vertex {label} is not a vertex of the algebra")))?;
        dims[v] = x.dims()[u];
    }
    let actions = (0..alg.dim()).map(|b| x.act(&proj.column(b))).collect();
    Ok(Module::from_actions(alg.clone(), dims, actions)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TauNMReport {
    pub module: String,
    pub n: usize,
    pub m: usize,
    pub outcome: Outcome,
    pub tau_n_rigid: Verdict,
    pub silting: Verdict,
    pub sincere: bool,
    pub rk_equal: bool,
    pub annihilator_dim: usize,
    pub gamma_dim: usize,
    pub gamma_vertices: Vec<String>,
    pub tau_m_rigid_over_gamma: Verdict,
    pub m_tilting_over_gamma: Verdict,
    /// every implication that must hold between the parts did hold
    pub consistent: bool,
}

pub fn is_tau_nm_tilting(m: &Module, n: usize, mm: usize) -> Result<TauNMReport, DecisionError> {
    if n == 0 || mm == 0 {
        return Err(DecisionError::PreconditionViolated("n and m must be at least 1".into()));
    }
    let tau_n_rigid = is_tau_n_rigid(m, n);
    let silting = is_tau_n_tilting(m, n)?;
    let sincere = m.is_sincere();
    let rk_equal = rk(m)? == rank_of_algebra(m.algebra())?;
    let r = restriction(m)?;
    let tau_m = is_tau_n_rigid(&r.module, mm);
    let m_tilting = is_n_tilting(&r.module, mm)?;
    let outcome = match (silting.outcome, tau_m.outcome) {
        (Outcome::Holds, Outcome::Holds) => Outcome::Holds,
        (Outcome::Fails, _) | (_, Outcome::Fails) => Outcome::Fails,
        _ => Outcome::Inconclusive,
    };
    let mut consistent = true;
    if silting.is_holds() {
        consistent &= sincere && rk_equal && tau_n_rigid.is_holds();
    }
    if outcome == Outcome::Holds {
        consistent &= m_tilting.is_holds();
    }
    Ok(TauNMReport {
        module: describe_sum(m),
        n,
        m: mm,
        outcome,
        tau_n_rigid,
        silting,
        sincere,
        rk_equal,
        annihilator_dim: r.annihilator.len(),
        gamma_dim: r.gamma.dim(),
        gamma_vertices: r.gamma.vertex_labels().to_vec(),
        tau_m_rigid_over_gamma: tau_m,
        m_tilting_over_gamma: m_tilting,
        consistent,
    })
}

impl TauNMReport {
    pub fn verdict(&self) -> Verdict {
        let v = Verdict::all(
            vec![
                named("tau_n-tilting", self.silting.clone()),
                named("tau_m-rigid over Gamma", self.tau_m_rigid_over_gamma.clone()),
            ],
            "report",
        );
        Verdict {
            outcome: self.outcome,
            ..v
        }
    }
}

/// Compares `N ∈ M^{⊥τ_n}` with `Hom_K(P_M, P_N[j]) = 0` for `1 <= j <= n`.
pub fn check_nair34(m: &Module, nmod: &Module, n: usize) -> Verdict {
    let left = in_perp_tau_n(nmod, m, n);
    let pm = ProjComplex::from_resolution(&min_resolution(m, n), n);
    let pn = ProjComplex::from_resolution(&min_resolution(nmod, n), n);
    let mut first = None;
    for j in 1..=n as i64 {
        let d = hom_homotopy(&pm, &pn, j);
        if d > 0 {
            first = Some((j, d));
            break;
        }
    }
    let right = first.is_none();
    let detail = match first {
        None => format!("hom_K(P_M, P_N[j]) = 0 for 1 <= j <= {n}"),
        Some((j, d)) => format!("hom_K(P_M, P_N[{j}]) = {d}"),
    };
    let w = Witness::Agreement { left, right, detail };
    if left == right {
        Verdict::holds(w, "cross-route")
    } else {
        Verdict::fails(w, "cross-route")
    }
}

fn require_tau_n_tilting(m: &Module, n: usize) -> Result<(), DecisionError> {
    let v = is_tau_n_tilting(m, n)?;
    if v.is_holds() {
        Ok(())
    } else {
        Err(DecisionError::PreconditionViolated(format!(
            "{} is not tau_{n}-tilting",
            describe_sum(m)
        )))
    }
}

fn clause(value: bool, w: Witness) -> Verdict {
    Verdict::new(Outcome::from_bool(value), w, "clause")
}

/// Quotients of `M` used to probe `M ∈ ^{⊥k} gen(M)`: the summands, their
/// tops, and the images of a basis of `End(M)`.
pub fn gen_probe(m: &Module) -> Result<Vec<Module>, DecisionError> {
    let mut out = Vec::new();
    for x in basic_summands(m)? {
        out.push(x.top().0);
        out.push(x);
    }
    for f in m.hom(m)? {
        let img = m.image(m, &f).0;
        if !img.is_zero() {
            out.push(img);
        }
    }
    Ok(iso_classes(&out)?.into_iter().map(|(x, _)| x).collect())
}

/// Evaluates the clauses equivalent to `n`-tilting for a `τ_n`-tilting
/// module; Holds iff they all carry the same truth value. The clauses over
/// all of `gen(M)` use `hom(M, τ_k M) = 0`, cross-checked against
/// `Ext^k(M, G)` on [`gen_probe`]; the one quantifying over every `k >= n`
/// stops at `k = n + 3`.
pub fn check_teo(m: &Module, n: usize) -> Result<Verdict, DecisionError> {
    require_tau_n_tilting(m, n)?;
    let depth = n + 4;
    let res = min_resolution(m, depth);
    let a = is_n_tilting(m, n)?;
    let b = add_coresolution(m, n)?;
    let faithful = m.annihilator().is_empty();
    let probe = gen_probe(m)?;
    let mut homs = Vec::new();
    for k in n..=n + 3 {
        homs.push((k, m.hom_dim(&res.tau_n(k))));
    }
    let mut surrogate_ok = true;
    for &(k, h) in &homs {
        if h == 0 && probe.iter().any(|g| res.ext_dim(g, k) > 0) {
            surrogate_ok = false;
        }
    }
    if !surrogate_ok {
        return Ok(Verdict::inconclusive(
            n + 3,
            "hom(M, tau_k M) = 0 disagrees with an Ext computation on the gen probe",
            "clauses",
        ));
    }
    let hom_checks =
        |ks: &[(usize, usize)]| -> Vec<Check> { ks.iter().map(|(k, h)| Check::new(format!("hom(M,tau_{k} M)"), *h)).collect() };
    let d_val = homs.iter().all(|&(_, h)| h == 0);
    let e_val = homs[1].1 == 0;
    let f = is_tau_n_rigid(m, n + 1);
    let pd = pd_from(&res, n);
    let g_val = pd.finite().is_some();
    let h_dim = res.ext_dim(m, n + 1);
    let clauses = vec![
        named("a: n-tilting", clause(a.is_holds(), a.witness.clone())),
        named(
            "b: coresdim add(M) of A <= n",
            clause(b.length.is_some(), Witness::Chain { steps: b.steps }),
        ),
        named(
            "c: faithful",
            clause(
                faithful,
                Witness::Vanishing {
                    checks: vec![Check::new("ann(M)", m.annihilator().len())],
                },
            ),
        ),
        named(
            "d: M in perp_{n+i} gen(M), i <= 3",
            clause(d_val, Witness::Vanishing { checks: hom_checks(&homs) }),
        ),
        named(
            "e: M in perp_{n+1} gen(M)",
            clause(
                e_val,
                Witness::Vanishing {
                    checks: hom_checks(&homs[1..2]),
                },
            ),
        ),
        named("f: tau_{n+1}-rigid", clause(f.is_holds(), f.witness.clone())),
        named(
            "g: pd <= n",
            clause(
                g_val,
                note(match pd {
                    ProjDim::Finite(d) => format!("pd(M) = {d}"),
                    ProjDim::ExceedsBound {
                        periodic: Some((i, j)), ..
                    } => format!("pd(M) infinite: syzygy {i} is isomorphic to syzygy {j}"),
                    ProjDim::ExceedsBound { bound, .. } => format!("pd(M) > {bound}"),
                }),
            ),
        ),
        named(
            "h: ext^{n+1}(M,M) = 0",
            clause(
                h_dim == 0,
                Witness::Vanishing {
                    checks: vec![Check::new(format!("ext^{}(M,M)", n + 1), h_dim)],
                },
            ),
        ),
    ];
    let agree = clauses.iter().all(|(_, v)| v.outcome == clauses[0].1.outcome);
    let parts = clauses.into_iter().map(|(name, verdict)| NamedVerdict { name, verdict }).collect();
    Ok(Verdict::new(Outcome::from_bool(agree), Witness::Parts { parts }, "clauses").with_probe(probe.iter().map(describe).collect()))
}

/// On each probe module: `X ∈ M^{⊥τ_n}` iff `X ∈ gen_n(M)`.
pub fn check_p4(m: &Module, n: usize, testset: &[Module]) -> Result<Verdict, DecisionError> {
    require_tau_n_tilting(m, n)?;
    let summands = basic_summands(m)?;
    let res = min_resolution(m, n);
    let tau = res.tau_n(n);
    let mut parts = Vec::new();
    for x in testset {
        let perp = x.hom_dim(&tau) == 0 && (1..n).all(|i| res.ext_dim(x, i) == 0);
        let gen = gen_chain(&summands, x, n) == GenChain::Complete;
        let w = Witness::Agreement {
            left: perp,
            right: gen,
            detail: "perp vs gen_n".into(),
        };
        let v = if perp == gen {
            Verdict::holds(w, "probe")
        } else {
            Verdict::fails(w, "probe")
        };
        parts.push((describe(x), v));
    }
    let names = testset.iter().map(describe).collect();
    Ok(Verdict::all(parts, "probe").with_probe(names))
}

/// Conditions (C1)-(C4) for `add(M)` on a probe set of modules annihilated
/// by `ann(M)`; a Holds means Holds on the probe.
pub fn check_compatible_class(m: &Module, n: usize, mm: usize, probe: &[Module]) -> Result<Verdict, DecisionError> {
    if !(n >= mm && mm >= 1) {
        return Err(DecisionError::PreconditionViolated("need n >= m >= 1".into()));
    }
    let names: Vec<String> = probe.iter().map(describe).collect();
    let alg = m.algebra();
    let r = restriction(m)?;
    let ann = &r.annihilator;
    let in_perp = |x: &Module| in_perp_tau_n(x, m, n);
    let perp: Vec<&Module> = probe.iter().filter(|x| in_perp(x)).collect();

    let c1 = if !m.is_sincere() {
        Verdict::fails(note("M is not sincere"), "probe")
    } else if !in_perp(m) {
        Verdict::fails(note("M is not in its own perpendicular class"), "probe")
    } else {
        let mut bad = None;
        for x in &perp {
            let p = trace_precover(m, x);
            if p.map.rank() < x.dim() {
                bad = Some(format!("{} is not generated by M", describe(x)));
                break;
            }
            let k = p.object.kernel(&p.map).0;
            if !in_perp(&k) {
                bad = Some(format!("the kernel of the trace precover of {} leaves the class", describe(x)));
                break;
            }
        }
        match bad {
            None => Verdict::holds(
                note(format!(
                    "{} perpendicular probe modules generated with kernels in the class",
                    perp.len()
                )),
                "probe",
            ),
            Some(d) => Verdict::fails(note(d), "probe"),
        }
    };

    let mut c2_bad = None;
    for v in 0..r.gamma.num_vertices() {
        let i = inflate(&Module::injective(&r.gamma, v), alg, &r.proj)?;
        if !in_perp(&i) {
            c2_bad = Some(format!(
                "the injective Gamma-module at vertex {} is not in the class",
                r.gamma.vertex_labels()[v]
            ));
            break;
        }
    }
    if c2_bad.is_none() {
        for x in &perp {
            if ann.iter().any(|a| !x.act(a).is_zero()) {
                c2_bad = Some(format!("{} is not a Gamma-module", describe(x)));
                break;
            }
        }
    }
    let c2 = match c2_bad {
        None => Verdict::holds(note("Gamma-injectives in the class; class members are Gamma-modules"), "probe"),
        Some(d) => Verdict::fails(note(d), "probe"),
    };

    let targets: Vec<Module> = perp.iter().map(|x| (*x).clone()).collect();
    let mut c3_bad = None;
    for x in probe {
        if targets.is_empty() {
            break;
        }
        let env = left_approximation(&targets, x);
        if !env.object.is_zero() && !in_perp(&env.object) {
            c3_bad = Some(format!("the approximation of {} leaves the class", describe(x)));
            break;
        }
        for y in &targets {
            let via: Vec<Matrix> = env.object.hom(y)?.iter().map(|h| h.mul(&env.map)).collect();
            if !x.hom(y)?.iter().all(|f| in_span(x.field(), &via, f)) {
                c3_bad = Some(format!("a map {} -> {} does not factor", describe(x), describe(y)));
                break;
            }
        }
        if c3_bad.is_some() {
            break;
        }
    }
    let c3 = match c3_bad {
        None => Verdict::holds(note("left approximations by the class factor every probe map"), "probe"),
        Some(d) => Verdict::fails(note(d), "probe"),
    };

    let c4 = match pd_up_to(&r.module, mm) {
        ProjDim::Finite(d) => Verdict::holds(note(format!("pd over Gamma = {d}")), "module"),
        ProjDim::ExceedsBound { .. } => Verdict::fails(note(format!("pd over Gamma > {mm}")), "module"),
    };
    Ok(Verdict::all(vec![named("C1", c1), named("C2", c2), named("C3", c3), named("C4", c4)], "probe").with_probe(names))
}

/// `fin.dim(A) <= fin.dim(End_Γ(M)^op) + pd(M) + m`, with both finitistic
/// dimensions estimated from below by enumeration up to `dim_bound`. A Holds
/// is consistency, not proof.
pub fn check_findim_bound(m: &Module, n: usize, mm: usize, dim_bound: usize) -> Result<Verdict, DecisionError> {
    let rep = is_tau_nm_tilting(m, n, mm)?;
    if rep.outcome != Outcome::Holds {
        return Err(DecisionError::PreconditionViolated(format!(
            "{} is not tau_{{{n},{mm}}}-tilting",
            rep.module
        )));
    }
    let alg = m.algebra();
    let pd_bound = 2 * alg.dim() + n;
    let pd = match pd_up_to(m, pd_bound) {
        ProjDim::Finite(d) => d,
        ProjDim::ExceedsBound {
            periodic: Some((i, j)), ..
        } => {
            return Ok(Verdict::holds(
                note(format!("vacuous: pd(M) is infinite, syzygy {i} is isomorphic to syzygy {j}")),
                "oracle",
            ));
        }
        ProjDim::ExceedsBound { bound, .. } => {
            return Ok(Verdict::inconclusive(bound, "pd(M) not determined", "oracle"));
        }
    };
    let r = restriction(m)?;
    let e = Arc::new(end_algebra(&r.module)?.opposite());
    let estimate = |a: &Arc<BasedAlgebra>| -> Result<usize, OracleError> {
        findim_lower_bound(&EnumerationConfig::new(a.clone(), dim_bound), pd_bound)
    };
    let (left, right) = match (estimate(alg), estimate(&e)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(err), _) | (_, Err(err)) => return Ok(Verdict::inconclusive(dim_bound, err.to_string(), "oracle")),
    };
    let text = format!("fin.dim(A) >= {left}; fin.dim(End(M)^op) >= {right}; pd(M) = {pd}; m = {mm}");
    if left <= right + pd + mm {
        Ok(Verdict::holds(note(text), "oracle"))
    } else {
        Ok(Verdict::inconclusive(dim_bound, text, "oracle"))
    }
}

/// A map `N -> H^0(P)` with `P ∈ P_{>=-n}(M)^{⊥>0}`, from the triangle
/// `Q -> P_{>=-n}(N) -> P`.
#[derive(Clone, Debug)]
pub struct RelativePreenvelope {
    pub complex: ProjComplex,
    pub target: Module,
    pub map: Matrix,
    pub steps: Vec<String>,
}

/// Kills `Hom_K(T, X[i])` for `i` from the top down by cones of
/// `add(T[-i])`-precovers, `T = P_{>=-n}(M)`; then checks that every map
/// `N -> K` factors through the result, for the `K` in `perp_tests` that
/// lie in `M^{⊥τ_n}`.
pub fn relative_preenvelope(nmod: &Module, m: &Module, n: usize, perp_tests: &[Module]) -> Result<RelativePreenvelope, DecisionError> {
    require_tau_n_tilting(m, n)?;
    let ts = truncated_summands(m, n)?;
    let t = ProjComplex::direct_sum(&ts);
    let x0 = ProjComplex::from_resolution(&min_resolution(nmod, n), n);
    let mut cur = x0.clone();
    let mut g = ChainMap::identity(&x0);
    let mut steps = Vec::new();
    let top = if x0.is_zero() { 0 } else { x0.hi() + n as i64 };
    for i in (1..=top).rev() {
        let d = hom_homotopy(&t, &cur, i);
        if d == 0 {
            continue;
        }
        let shifted: Vec<ProjComplex> = ts.iter().map(|s| s.shift(-i)).collect();
        let pc = add_precover(&cur, &shifted);
        let c = cone(&pc.map);
        let inc = cone_inclusion(&pc.map, &c);
        let mm = minimal_model(&c);
        g = g.then(&inc).then(&mm.to);
        cur = mm.complex;
        steps.push(format!("kill hom_K(T, X[{i}]) = {d}: X -> {}", cur.shape()));
    }
    for i in 1..=(cur.hi().max(0) + n as i64) {
        if hom_homotopy(&t, &cur, i) != 0 {
            return Err(DecisionError::FactorizationCheckFailed(format!(
                "hom_K(T, P[{i}]) != 0 after the chain"
            )));
        }
    }
    let (h0n, target, map) = g.cohomology_map(0);
    let field = nmod.field();
    // H^0 of the truncated resolution is N up to the basis of the quotient
    let iso = crate::decompose::find_iso(nmod, &h0n)?
        .ok_or_else(|| DecisionError::FactorizationCheckFailed("H^0 of the truncation is not N".into()))?;
    let map = map.mul(&iso);
    for k in perp_tests.iter().filter(|k| in_perp_tau_n(k, m, n)) {
        let via: Vec<Matrix> = target.hom(k)?.iter().map(|h| h.mul(&map)).collect();
        for f in nmod.hom(k)? {
            if !in_span(field, &via, &f) {
                return Err(DecisionError::FactorizationCheckFailed(format!(
                    "a map N -> {} does not factor",
                    describe(k)
                )));
            }
        }
    }
    Ok(RelativePreenvelope {
        complex: cur,
        target,
        map,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ChainMap;
    use crate::decompose::is_iso;
    use crate::io::fixture;
    use crate::linalg::Field;

    fn small_modules(alg: &Arc<BasedAlgebra>) -> Vec<Module> {
        (0..alg.num_vertices())
            .flat_map(|v| [Module::projective(alg, v), Module::simple(alg, v), Module::injective(alg, v)])
            .collect()
    }

    #[test]
    fn eximp_tilting_type() {
        for f in [Field::Prime(2), Field::Rationals] {
            let fx = fixture("eximp", Some(f)).unwrap();
            let m = fx.module("M").unwrap();
            assert!(is_tau_n_tilting(m, 2).unwrap().is_holds());
            assert!(is_tau_n_tilting(m, 1).unwrap().is_fails());
            let r = is_tau_nm_tilting(m, 2, 2).unwrap();
            assert_eq!(r.outcome, Outcome::Holds);
            assert_eq!(r.gamma_dim, 5);
            assert!(r.consistent);
            assert_eq!(is_tau_nm_tilting(m, 1, 1).unwrap().outcome, Outcome::Fails);
            assert!(is_n_tilting(m, 2).unwrap().is_fails());
        }
    }

    #[test]
    fn eximp_clauses_agree() {
        let fx = fixture("eximp", None).unwrap();
        let m = fx.module("M").unwrap();
        let v = check_teo(m, 2).unwrap();
        assert!(v.is_holds());
        assert!(v.part("a: n-tilting").unwrap().is_fails());
        assert!(matches!(check_teo(m, 1), Err(DecisionError::PreconditionViolated(_))));
    }

    #[test]
    fn eximp_probe_checks() {
        let fx = fixture("eximp", None).unwrap();
        let m = fx.module("M").unwrap();
        let mods = small_modules(&fx.algebra);
        for x in &mods {
            assert!(check_nair34(m, x, 2).is_holds());
        }
        assert!(check_p4(m, 2, &mods).unwrap().is_holds());
        assert!(check_compatible_class(m, 2, 2, &mods).unwrap().is_holds());
        assert!(check_compatible_class(m, 1, 2, &mods).is_err());
        assert!(check_findim_bound(m, 2, 2, 3).unwrap().is_holds());
    }

    #[test]
    fn gen_membership() {
        let fx = fixture("eximp", None).unwrap();
        let m = fx.module("M").unwrap();
        let p1 = fx.module("P1").unwrap();
        let s3 = Module::simple(&fx.algebra, 2);
        assert!(in_gen_n(p1, m, 3).unwrap().is_holds());
        assert!(in_gen_n(&s3, m, 1).unwrap().is_fails());
    }

    #[test]
    fn injectives_of_a_gentle_algebra() {
        let fx = fixture("ejp1", None).unwrap();
        let m = fx.module("M").unwrap();
        assert!(is_n_tilting(m, 4).unwrap().is_holds());
        assert!(is_n_tilting(m, 3).unwrap().is_fails());
        let co = add_coresolution(m, 4).unwrap();
        assert_eq!(co.length, Some(4));
        assert!(co.steps[0].ends_with("I(1)^2+I(3)^2"));
    }

    #[test]
    fn cone_of_a_lifted_map() {
        let fx = fixture("ejp1", None).unwrap();
        let i3 = fx.module("I3").unwrap();
        let i1 = fx.module("I1").unwrap();
        let hs = i3.hom(i1).unwrap();
        assert_eq!(hs.len(), 1);
        let (img, _) = i3.image(i1, &hs[0]);
        assert!(is_iso(&img, &Module::simple(&fx.algebra, 0)).unwrap());
        let ch = ChainMap::lift(&hs[0], &min_resolution(i3, 4), &min_resolution(i1, 4), 4);
        assert!(ch.is_chain_map());
        let h0 = cone(&ch).cohomology(0);
        assert!(is_iso(&h0, fx.module("X23").unwrap()).unwrap());
    }

    #[test]
    fn preenvelopes_land_in_the_class() {
        let fx = fixture("eximp", None).unwrap();
        let m = fx.module("M").unwrap();
        let mods = small_modules(&fx.algebra);
        for x in &mods {
            let r = relative_preenvelope(x, m, 2, &mods).unwrap();
            assert!(in_perp_tau_n(&r.target, m, 2));
            assert!(x.is_homomorphism(&r.target, &r.map));
        }
        let s3 = Module::simple(&fx.algebra, 2);
        assert_eq!(relative_preenvelope(&s3, m, 2, &mods).unwrap().steps.len(), 2);
    }

    #[test]
    fn restriction_of_eximp() {
        let fx = fixture("eximp", None).unwrap();
        let r = restriction(fx.module("M").unwrap()).unwrap();
        assert_eq!(r.annihilator.len(), 1);
        assert_eq!(r.gamma.dim(), 5);
        let back = inflate(&r.module, &fx.algebra, &r.proj).unwrap();
        assert_eq!(&back, fx.module("M").unwrap());
    }
}
