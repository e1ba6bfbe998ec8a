//! Minimal projective resolutions and what is read off them: syzygies, the
//! Nakayama functor, `τ` and `τ_n`, Ext groups and projective dimension.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BasedAlgebra;
use crate::decompose;
use crate::linalg::{Matrix, Scalar};
use crate::module::Module;
use crate::pmap::{format_terms, InjSum, PMap, ProjSum};
use crate::verdict::{Check, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("module is not projective")]
    NotProjective,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// A minimal projective resolution computed down to `P_depth`.
///
/// `terms[i]` lists the indecomposable summands of `P_i` (written
/// `P^{-i}`), `diffs[i]: P_{i+1} -> P_i`, `syzygies[i] = Ω^i` for
/// `i = 0..=depth+1` and `inclusions[i-1]: Ω^i -> P_{i-1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub depth: usize,
    pub terms: Vec<Vec<usize>>,
    pub sums: Vec<ProjSum>,
    pub diffs: Vec<PMap>,
    pub augmentation: Matrix,
    pub syzygies: Vec<Module>,
    pub inclusions: Vec<Matrix>,
}

/// Projective cover of `x`: the summand list, the realized sum, the cover map.
pub fn projective_cover(x: &Module) -> (ProjSum, Matrix) {
    let alg = x.algebra();
    let field = x.field();
    let (_, rad) = x.radical();
    let gens = rad.complement_indices();
    let terms: Vec<usize> = gens.iter().map(|&i| x.vertex_of(i)).collect();
    let sum = ProjSum::new(alg, &terms);
    let mut cover = Matrix::zeros(field, x.dim(), sum.module.dim());
    for (k, &g) in gens.iter().enumerate() {
        for &b in sum.cells(k) {
            let col = sum.position(k, b);
            let a = x.action(b);
            for r in 0..x.dim() {
                let y = a.get(r, g);
                if !y.is_zero() {
                    cover.set(r, col, y.clone());
                }
            }
        }
    }
    (sum, cover)
}

/// Minimal resolution of `m` with terms `P_0 .. P_depth`.
pub fn min_resolution(m: &Module, depth: usize) -> Resolution {
    let alg = m.algebra().clone();
    let (p0, aug) = projective_cover(m);
    let (om1, inc1) = p0.module.kernel(&aug);
    let mut terms = vec![p0.terms.clone()];
    let mut sums = vec![p0];
    let mut diffs = Vec::new();
    let mut syzygies = vec![m.clone(), om1];
    let mut inclusions = vec![inc1];
    for i in 1..=depth {
        let om = &syzygies[i];
        let (pi, cover) = projective_cover(om);
        // images of the generators of P_i inside P_{i-1}
        let composite = inclusions[i - 1].mul(&cover);
        let images: Vec<Vec<Scalar>> = (0..pi.terms.len())
            .map(|k| composite.column(pi.position(k, alg.idempotent(pi.terms[k]))))
            .collect();
        let d = pi.pmap_from_images(&images, &sums[i - 1]);
        let (next, inc) = pi.module.kernel(&cover);
        terms.push(pi.terms.clone());
        sums.push(pi);
        diffs.push(d);
        syzygies.push(next);
        inclusions.push(inc);
    }
    Resolution {
        module: m.clone(),
        depth,
        terms,
        sums,
        diffs,
        augmentation: aug,
        syzygies,
        inclusions,
    }
}

impl Resolution {
    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        self.module.algebra()
    }

    /// Did the resolution reach zero within the computed range?
    pub fn is_complete(&self) -> bool {
        self.syzygies.iter().any(Module::is_zero)
    }

    /// Projective dimension if the resolution stopped within range.
    pub fn pd(&self) -> Option<usize> {
        let k = self.syzygies.iter().position(Module::is_zero)?;
        Some(k.saturating_sub(1))
    }

    /// `"P(1)+P(2) <- P(3)^2 <- ..."`, trailing zero terms omitted.
    pub fn shape(&self) -> String {
        let alg = self.algebra();
        let mut parts: Vec<String> = Vec::new();
        for t in &self.terms {
            if t.is_empty() {
                break;
            }
            parts.push(format_terms(alg, t));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" <- ")
    }

    /// Every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        let alg = self.algebra();
        self.diffs.iter().all(|d| d.is_radical(alg))
    }

    /// Checks `d∘d = 0`, exactness at each computed degree, and surjectivity
    /// of the augmentation.
    pub fn check(&self) -> Result<(), String> {
        let alg = self.algebra();
        if self.augmentation.rank() != self.module.dim() {
            return Err("augmentation is not onto".into());
        }
        let mats: Vec<Matrix> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| self.sums[i + 1].matrix_of(d, &self.sums[i]))
            .collect();
        if let Some(d0) = mats.first() {
            if !self.augmentation.mul(d0).is_zero() {
                return Err("augmentation does not kill the image of d_1".into());
            }
            let ker = self.sums[0].module.dim() - self.augmentation.rank();
            if d0.rank() != ker {
                return Err("not exact at degree 0".into());
            }
        }
        for i in 1..mats.len() {
            if !mats[i - 1].mul(&mats[i]).is_zero() {
                return Err(format!("d^2 != 0 at degree {i}"));
            }
            let ker = mats[i - 1].cols() - mats[i - 1].rank();
            if mats[i].rank() != ker {
                return Err(format!("not exact at degree {i}"));
            }
        }
        if !self.diffs.iter().all(|d| d.is_graded(alg)) {
            return Err("differential blocks leave their corners".into());
        }
        Ok(())
    }

    /// Cochain map `Hom(P_j, N) -> Hom(P_{j+1}, N)` in the bases
    /// `⊕ e_v N` of the summands.
    fn coboundary(&self, n: &Module, j: usize) -> Matrix {
        let field = n.field();
        let src = self.terms.get(j).cloned().unwrap_or_default();
        let tgt = self.terms.get(j + 1).cloned().unwrap_or_default();
        let src_dim: usize = src.iter().map(|&v| n.dims()[v]).sum();
        let tgt_dim: usize = tgt.iter().map(|&v| n.dims()[v]).sum();
        let mut m = Matrix::zeros(field, tgt_dim, src_dim);
        if src_dim == 0 || tgt_dim == 0 || j >= self.diffs.len() {
            return m;
        }
        let d = &self.diffs[j];
        let mut col = 0;
        for (k, &vk) in src.iter().enumerate() {
            let mut row = 0;
            for (l, &vl) in tgt.iter().enumerate() {
                let c = &d.blocks[k][l];
                if c.iter().any(|x| !x.is_zero()) {
                    let blk = n.act(c).block(n.offset(vl), n.dims()[vl], n.offset(vk), n.dims()[vk]);
                    m.set_block(row, col, &blk);
                }
                row += n.dims()[vl];
            }
            col += n.dims()[vk];
        }
        m
    }

    /// `dim Ext^i(M, n)`; needs `i + 1 <= depth` unless the resolution stopped.
    pub fn ext_dim(&self, n: &Module, i: usize) -> usize {
        assert!(
            i < self.depth || self.is_complete() && self.pd().is_some_and(|p| p <= self.depth),
            "resolution too short for Ext^{i}"
        );
        let d = self.coboundary(n, i);
        let ker = d.cols() - d.rank();
        if i == 0 {
            return ker;
        }
        ker - self.coboundary(n, i - 1).rank()
    }

    /// Cocycles representing a basis of `Ext^i(M, n)`.
    pub fn ext_cocycles(&self, n: &Module, i: usize) -> Vec<Vec<Scalar>> {
        let d = self.coboundary(n, i);
        let z = d.nullspace();
        if i == 0 {
            return z.columns();
        }
        let b = self.coboundary(n, i - 1);
        let mut span = b.column_space();
        let mut out = Vec::new();
        for c in z.columns() {
            let col = Matrix::from_columns(n.field(), c.len(), std::slice::from_ref(&c));
            let trial = span.hstack(&col);
            if trial.rank() > span.cols() {
                span = trial;
                out.push(c);
            }
        }
        out
    }

    /// `τ_n M = ker ν(P_n -> P_{n-1})`.
    pub fn tau_n(&self, n: usize) -> Module {
        assert!(n >= 1 && n <= self.depth, "resolution too short for tau_{n}");
        let alg = self.algebra();
        let src = InjSum::new(alg, &self.terms[n]);
        if src.terms.is_empty() {
            return Module::zero(alg.clone());
        }
        let tgt = InjSum::new(alg, &self.terms[n - 1]);
        let f = src.nakayama(&self.diffs[n - 1], &tgt);
        src.module.kernel(&f).0
    }
}

pub fn syzygy(m: &Module, i: usize) -> Module {
    if i == 0 {
        return m.clone();
    }
    min_resolution(m, i - 1).syzygies[i].clone()
}

/// `ν(P)` for a projective `P`.
pub fn nakayama(p: &Module) -> Result<Module, HomologyError> {
    let (sum, cover) = projective_cover(p);
    if sum.module.dim() != p.dim() || cover.rank() != p.dim() {
        return Err(HomologyError::NotProjective);
    }
    Ok(InjSum::new(p.algebra(), &sum.terms).module)
}

pub fn tau(m: &Module) -> Module {
    tau_n(m, 1)
}

pub fn tau_n(m: &Module, n: usize) -> Module {
    min_resolution(m, n).tau_n(n)
}

pub fn ext(m: &Module, n: &Module, i: usize) -> usize {
    min_resolution(m, i + 1).ext_dim(n, i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjDim {
    Finite(usize),
    /// no zero syzygy within the bound; `periodic = Some((i, j))` certifies
    /// `Ω^i ≅ Ω^j` with `Ω^i ≠ 0`, so the dimension is infinite
    ExceedsBound {
        bound: usize,
        periodic: Option<(usize, usize)>,
    },
}

impl ProjDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            ProjDim::Finite(d) => Some(*d),
            _ => None,
        }
    }
}

pub fn pd_up_to(m: &Module, bound: usize) -> ProjDim {
    pd_from(&min_resolution(m, bound), bound)
}

/// Projective dimension read off an existing resolution of depth `>= bound`.
pub fn pd_from(res: &Resolution, bound: usize) -> ProjDim {
    if let Some(d) = res.pd() {
        if d <= bound {
            return ProjDim::Finite(d);
        }
    }
    let syz = &res.syzygies;
    for j in 1..=bound.min(syz.len() - 1) {
        for i in 0..j {
            if syz[i].dims() == syz[j].dims() && !syz[i].is_zero() {
                if let Ok(true) = decompose::is_iso(&syz[i], &syz[j]) {
                    return ProjDim::ExceedsBound {
                        bound,
                        periodic: Some((i, j)),
                    };
                }
            }
        }
    }
    ProjDim::ExceedsBound { bound, periodic: None }
}

/// Human-readable name: `P(v)`, `I(v)`, `S(v)`, or the dimension vector.
pub fn describe(m: &Module) -> String {
    let alg = m.algebra();
    let labels = alg.vertex_labels();
    if m.is_zero() {
        return "0".into();
    }
    if m.dim() == 1 {
        let v = m.dims().iter().position(|&d| d == 1).unwrap();
        return format!("S({})", labels[v]);
    }
    for v in 0..alg.num_vertices() {
        let p = Module::projective(alg, v);
        if p.dims() == m.dims() && decompose::is_iso(&p, m).unwrap_or(false) {
            return format!("P({})", labels[v]);
        }
    }
    for v in 0..alg.num_vertices() {
        let i = Module::injective(alg, v);
        if i.dims() == m.dims() && decompose::is_iso(&i, m).unwrap_or(false) {
            return format!("I({})", labels[v]);
        }
    }
    let dv: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    format!("({})", dv.join(","))
}

/// Names of the indecomposable summands, joined with `+`.
pub fn describe_sum(m: &Module) -> String {
    if m.is_zero() {
        return "0".into();
    }
    match decompose::iso_classes(&decompose::decompose(m).unwrap_or_else(|_| vec![m.clone()])) {
        Ok(classes) => classes
            .iter()
            .map(|(x, c)| if *c == 1 { describe(x) } else { format!("{}^{}", describe(x), c) })
            .collect::<Vec<_>>()
            .join("+"),
        Err(_) => describe(m),
    }
}

/// The vanishing tests defining `N ∈ M^{⊥τ_n}`, from a resolution of `M`
/// of depth at least `n`.
pub fn perp_checks(res: &Resolution, tau: &Module, nmod: &Module, n: usize) -> Vec<Check> {
    let mut checks = vec![Check::new(format!("hom(N,tau_{n} M)"), nmod.hom_dim(tau))];
    for i in 1..n {
        checks.push(Check::new(format!("ext^{i}(M,N)"), res.ext_dim(nmod, i)));
    }
    checks
}

pub fn in_perp_tau_n(nmod: &Module, m: &Module, n: usize) -> bool {
    let res = min_resolution(m, n);
    let t = res.tau_n(n);
    perp_checks(&res, &t, nmod, n).iter().all(|c| c.dim == 0)
}

/// `M ∈ M^{⊥τ_n}`, with the first violated vanishing as witness.
pub fn is_tau_n_rigid(m: &Module, n: usize) -> Verdict {
    let res = min_resolution(m, n);
    let t = res.tau_n(n);
    rigidity_verdict(&res, &t, n)
}

pub(crate) fn rigidity_verdict(res: &Resolution, t: &Module, n: usize) -> Verdict {
    let m = &res.module;
    let checks = perp_checks(res, t, m, n);
    let route = "module";
    match checks.iter().find(|c| c.dim > 0) {
        None => Verdict::holds(Witness::Vanishing { checks }, route),
        Some(bad) => {
            let detail = if bad.quantity.starts_with("hom") {
                hom_witness(m, t)
            } else {
                format!("{} = {}", bad.quantity, bad.dim)
            };
            Verdict::fails(
                Witness::Violation {
                    check: bad.clone(),
                    detail,
                },
                route,
            )
        }
    }
}

/// Names an indecomposable summand pair `(X, Y)` with `hom(X, Y) ≠ 0`.
fn hom_witness(m: &Module, t: &Module) -> String {
    let (Ok(xs), Ok(ys)) = (decompose::decompose(m), decompose::decompose(t)) else {
        return format!("hom({}, {}) != 0", describe(m), describe(t));
    };
    for x in &xs {
        for y in &ys {
            let h = x.hom_dim(y);
            if h > 0 {
                return format!("hom({}, {}) = {}", describe(x), describe(y), h);
            }
        }
    }
    format!("hom({}, {}) != 0", describe(m), describe(t))
}

/// For `M` already `τ_{n+1}`-rigid: `M` is `τ_n`-rigid iff `hom(P_{n+1}, M) = 0`.
pub fn descend_rigidity(m: &Module, n: usize) -> Result<Verdict, HomologyError> {
    if !is_tau_n_rigid(m, n + 1).is_holds() {
        return Err(HomologyError::PreconditionViolated(format!("module is not tau_{}-rigid", n + 1)));
    }
    let res = min_resolution(m, n + 1);
    let h: usize = res.terms[n + 1].iter().map(|&v| m.dims()[v]).sum();
    let check = Check::new(format!("hom(P_{},M)", n + 1), h);
    let alg = m.algebra();
    let v = if h == 0 {
        Verdict::holds(Witness::Vanishing { checks: vec![check] }, "descent")
    } else {
        Verdict::fails(
            Witness::Violation {
                detail: format!("P_{} = {}", n + 1, format_terms(alg, &res.terms[n + 1])),
                check,
            },
            "descent",
        )
    };
    Ok(v)
}

/// Indecomposable projectives occurring in `P_i`, without multiplicity.
pub fn support(res: &Resolution, i: usize) -> Vec<usize> {
    let mut s: Vec<usize> = res.terms.get(i).cloned().unwrap_or_default();
    s.sort_unstable();
    s.dedup();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverPresentation};
    use crate::linalg::Field;

    fn quiver(f: Field, arrows: &[(&str, &str, &str)], rels: &[&[&str]], l: usize) -> Arc<BasedAlgebra> {
        let q = QuiverPresentation::new(
            f,
            vec!["1".into(), "2".into(), "3".into()],
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            rels.iter()
                .map(|p| vec![(f.one(), p.iter().map(|s| s.to_string()).collect())])
                .collect(),
            l,
        )
        .unwrap();
        Arc::new(build_algebra(&q).unwrap())
    }

    fn cycle(f: Field) -> Arc<BasedAlgebra> {
        quiver(
            f,
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
            &[&["b", "a"], &["c", "b"], &["a", "c"]],
            2,
        )
    }

    fn ejp1(f: Field) -> Arc<BasedAlgebra> {
        quiver(
            f,
            &[("a", "1", "2"), ("b", "2", "3"), ("g", "2", "3"), ("d", "3", "1")],
            &[&["b", "a"], &["a", "d"], &["d", "g"]],
            3,
        )
    }

    #[test]
    fn projective_has_trivial_resolution() {
        let a = cycle(Field::Prime(2));
        let r = min_resolution(&Module::projective(&a, 1), 3);
        assert_eq!(r.pd(), Some(0));
        assert_eq!(r.shape(), "P(2)");
        assert!(tau(&Module::projective(&a, 0)).is_zero());
    }

    #[test]
    fn simple_over_cycle_is_periodic() {
        for f in [Field::Prime(2), Field::Rationals] {
            let a = cycle(f);
            let s1 = Module::simple(&a, 0);
            let r = min_resolution(&s1, 3);
            r.check().unwrap();
            assert!(r.is_minimal());
            assert_eq!(r.shape(), "P(1) <- P(2) <- P(3) <- P(1)");
            assert_eq!(describe(&r.syzygies[1]), "S(2)");
            assert!(decompose::is_iso(&r.syzygies[3], &s1).unwrap());
            assert_eq!(
                pd_up_to(&s1, 10),
                ProjDim::ExceedsBound {
                    bound: 10,
                    periodic: Some((0, 3))
                }
            );
            assert_eq!(describe(&tau(&s1)), "S(2)");
        }
    }

    #[test]
    fn nakayama_sends_projectives_to_injectives() {
        let a = cycle(Field::Prime(3));
        for v in 0..3 {
            let nu = nakayama(&Module::projective(&a, v)).unwrap();
            assert!(decompose::is_iso(&nu, &Module::injective(&a, v)).unwrap());
        }
        assert_eq!(nakayama(&Module::projective(&a, 0)).unwrap().dims(), &[1, 0, 1]);
        assert_eq!(nakayama(&Module::simple(&a, 0)), Err(HomologyError::NotProjective));
    }

    #[test]
    fn ext_reads_off_dimension_vectors_for_projectives() {
        let a = ejp1(Field::Rationals);
        let n = Module::regular(&a);
        for v in 0..3 {
            let p = Module::projective(&a, v);
            assert_eq!(ext(&p, &n, 0), n.dims()[v]);
            assert_eq!(ext(&p, &n, 1), 0);
        }
    }

    #[test]
    fn ext_zero_is_hom() {
        let a = ejp1(Field::Prime(2));
        let s = Module::simple(&a, 0);
        let i3 = Module::injective(&a, 2);
        for x in [&s, &i3] {
            for y in [&s, &i3] {
                assert_eq!(ext(x, y, 0), x.hom_dim(y));
            }
        }
    }

    #[test]
    fn simple_one_over_ejp1() {
        let a = ejp1(Field::Prime(2));
        let s1 = Module::simple(&a, 0);
        assert_eq!(pd_up_to(&s1, 5), ProjDim::Finite(2));
        assert_eq!(ext(&s1, &s1, 1), 0);
        assert_eq!(ext(&s1, &s1, 2), 0);
        assert!(is_tau_n_rigid(&s1, 2).is_holds());
        assert!(syzygy(&s1, 3).is_zero());
    }

    #[test]
    fn injective_three_over_ejp1() {
        let a = ejp1(Field::Prime(2));
        let r = min_resolution(&Module::injective(&a, 2), 5);
        r.check().unwrap();
        assert!(r.is_minimal());
        assert_eq!(r.shape(), "P(1)+P(2) <- P(3)^2 <- P(1) <- P(2) <- P(3)");
        assert_eq!(r.pd(), Some(4));
    }

    #[test]
    fn rigidity_witness_names_summands() {
        let a = cycle(Field::Prime(2));
        let m = Module::direct_sum(&[Module::projective(&a, 1), Module::projective(&a, 0), Module::simple(&a, 0)]).module;
        assert!(is_tau_n_rigid(&m, 2).is_holds());
        let v = is_tau_n_rigid(&m, 1);
        assert!(v.is_fails());
        match v.witness {
            Witness::Violation { detail, .. } => assert_eq!(detail, "hom(P(2), S(2)) = 1"),
            w => panic!("unexpected witness {w:?}"),
        }
        assert_eq!(describe(&tau_n(&m, 2)), "S(3)");
        assert!(descend_rigidity(&m, 1).unwrap().is_fails());
    }

    #[test]
    fn ext_cocycles_count_matches_dimension() {
        let a = cycle(Field::Prime(2));
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        let r = min_resolution(&s1, 3);
        for i in 0..3 {
            assert_eq!(r.ext_cocycles(&s2, i).len(), r.ext_dim(&s2, i));
        }
        assert_eq!(r.ext_dim(&s2, 1), 1);
    }
}
