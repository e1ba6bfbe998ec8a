//! Bounded complexes of projectives and the homotopy category `K^b(proj A)`.
//!
//! Differentials go up in degree: `d^i: P^i -> P^{i+1}`. Terms and maps use
//! the block conventions of [`crate::pmap`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::BasedAlgebra;
use crate::homology::Resolution;
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{left_inverse, Module};
use crate::pmap::{format_terms, PMap, ProjSum};
use crate::verdict::{Check, Verdict, Witness};

#[derive(Clone, Debug)]
pub struct ProjComplex {
    alg: Arc<BasedAlgebra>,
    /// lowest degree; meaningless for the zero complex
    pub lo: i64,
    pub terms: Vec<Vec<usize>>,
    /// `diffs[k]: terms[k] -> terms[k+1]`
    pub diffs: Vec<PMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    Shape(String),
    NotGraded,
    NotAComplex(i64),
}

impl std::fmt::Display for ComplexError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexError::Shape(s) => write!(f, "malformed complex: {s}"),
            ComplexError::NotGraded => write!(f, "differential block outside its corner"),
            ComplexError::NotAComplex(i) => write!(f, "d^2 != 0 at degree {i}"),
        }
    }
}

impl std::error::Error for ComplexError {}

impl ProjComplex {
    pub fn new(alg: Arc<BasedAlgebra>, lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<PMap>) -> Result<ProjComplex, ComplexError> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(ComplexError::Shape("need one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.src != terms[k] || d.tgt != terms[k + 1] {
                return Err(ComplexError::Shape(format!("differential {k} has the wrong shape")));
            }
            if d.blocks.len() != d.tgt.len()
                || d.blocks
                    .iter()
                    .any(|r| r.len() != d.src.len() || r.iter().any(|x| x.len() != alg.dim()))
            {
                return Err(ComplexError::Shape(format!("differential {k} has malformed blocks")));
            }
        }
        let c = ProjComplex { alg, lo, terms, diffs }.trimmed();
        c.check()?;
        Ok(c)
    }

    pub fn zero(alg: &Arc<BasedAlgebra>) -> ProjComplex {
        ProjComplex {
            alg: alg.clone(),
            lo: 0,
            terms: vec![],
            diffs: vec![],
        }
    }

    /// `P[-deg]`: the sum of `P(v)` for `v` in `terms`, in degree `deg`.
    pub fn stalk(alg: &Arc<BasedAlgebra>, terms: &[usize], deg: i64) -> ProjComplex {
        ProjComplex {
            alg: alg.clone(),
            lo: deg,
            terms: vec![terms.to_vec()],
            diffs: vec![],
        }
        .trimmed()
    }

    /// `A[0]`.
    pub fn regular(alg: &Arc<BasedAlgebra>) -> ProjComplex {
        let all: Vec<usize> = (0..alg.num_vertices()).collect();
        ProjComplex::stalk(alg, &all, 0)
    }

    /// `P_{>= -n}(M)`, needs a resolution of depth `>= n`.
    pub fn from_resolution(res: &Resolution, n: usize) -> ProjComplex {
        assert!(res.depth >= n, "resolution too short");
        let terms: Vec<Vec<usize>> = (0..=n).rev().map(|k| res.terms[k].clone()).collect();
        let diffs: Vec<PMap> = (0..n).rev().map(|k| res.diffs[k].clone()).collect();
        ProjComplex {
            alg: res.algebra().clone(),
            lo: -(n as i64),
            terms,
            diffs,
        }
        .trimmed()
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// Number of degrees in the window `[lo, hi]`.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, i: i64) -> &[usize] {
        let k = i - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            return &[];
        }
        &self.terms[k as usize]
    }

    pub fn diff(&self, i: i64) -> PMap {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            return self.diffs[k as usize].clone();
        }
        PMap::zero(&self.alg, self.term(i), self.term(i + 1))
    }

    /// Removes empty terms at both ends.
    fn trimmed(mut self) -> ProjComplex {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    /// Rebuilds a complex from a degree window, trimming empty ends.
    fn from_window(alg: &Arc<BasedAlgebra>, lo: i64, hi: i64, term: impl Fn(i64) -> Vec<usize>, diff: impl Fn(i64) -> PMap) -> ProjComplex {
        if hi < lo {
            return ProjComplex::zero(alg);
        }
        let terms: Vec<Vec<usize>> = (lo..=hi).map(&term).collect();
        let diffs: Vec<PMap> = (lo..hi).map(diff).collect();
        ProjComplex {
            alg: alg.clone(),
            lo,
            terms,
            diffs,
        }
        .trimmed()
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        for d in &self.diffs {
            if !d.is_graded(&self.alg) {
                return Err(ComplexError::NotGraded);
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].then(&self.alg, &self.diffs[k]).is_zero() {
                return Err(ComplexError::NotAComplex(self.lo + k as i64));
            }
        }
        Ok(())
    }

    /// No differential block has an invertible component.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical(&self.alg))
    }

    /// `X[j]`: `X[j]^i = X^{i+j}` with differential `(-1)^j d`.
    pub fn shift(&self, j: i64) -> ProjComplex {
        let mut c = self.clone();
        if c.is_zero() {
            return c;
        }
        c.lo -= j;
        if j.rem_euclid(2) == 1 {
            c.diffs = c.diffs.iter().map(PMap::neg).collect();
        }
        c
    }

    /// Stupid truncation keeping degrees `>= k`.
    pub fn truncate_ge(&self, k: i64) -> ProjComplex {
        ProjComplex::from_window(&self.alg, self.lo.max(k), self.hi(), |i| self.term(i).to_vec(), |i| self.diff(i))
    }

    pub fn direct_sum(parts: &[ProjComplex]) -> ProjComplex {
        let alg = parts[0].alg.clone();
        let live: Vec<&ProjComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        if live.is_empty() {
            return ProjComplex::zero(&alg);
        }
        let lo = live.iter().map(|p| p.lo).min().unwrap();
        let hi = live.iter().map(|p| p.hi()).max().unwrap();
        ProjComplex::from_window(
            &alg,
            lo,
            hi,
            |i| live.iter().flat_map(|p| p.term(i).to_vec()).collect(),
            |i| block_diagonal(&alg, &live.iter().map(|p| p.diff(i)).collect::<Vec<_>>()),
        )
    }

    pub fn power(&self, r: usize) -> ProjComplex {
        if r == 0 {
            return ProjComplex::zero(&self.alg);
        }
        ProjComplex::direct_sum(&vec![self.clone(); r])
    }

    /// `"[-2] P(3) -> P(2) -> P(1)"`.
    pub fn shape(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let body: Vec<String> = self.terms.iter().map(|t| format_terms(&self.alg, t)).collect();
        format!("[{}] {}", self.lo, body.join(" -> "))
    }

    /// `H^i` as a module, with the cycle inclusion into `P^i` and the
    /// projection from cycles onto `H^i`.
    pub fn cohomology_data(&self, i: i64) -> (Module, Matrix, Matrix) {
        let here = ProjSum::new(&self.alg, self.term(i));
        let next = ProjSum::new(&self.alg, self.term(i + 1));
        let prev = ProjSum::new(&self.alg, self.term(i - 1));
        let out = here.matrix_of(&self.diff(i), &next);
        let inc_map = prev.matrix_of(&self.diff(i - 1), &here);
        let (cycles, inc) = here.module.kernel(&out);
        let back = left_inverse(&inc);
        let bounds: Vec<Vec<Scalar>> = back.mul(&inc_map).columns();
        let (h, proj) = cycles.quotient(&bounds).expect("boundaries lie in the cycles");
        (h, inc, proj)
    }

    pub fn cohomology(&self, i: i64) -> Module {
        self.cohomology_data(i).0
    }

    pub fn is_zero_object(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let id = ChainMap::identity(self);
        hom_k(self, self).null_homotopy(&id).is_some()
    }
}

fn block_diagonal(alg: &BasedAlgebra, parts: &[PMap]) -> PMap {
    let src: Vec<usize> = parts.iter().flat_map(|p| p.src.clone()).collect();
    let tgt: Vec<usize> = parts.iter().flat_map(|p| p.tgt.clone()).collect();
    let mut m = PMap::zero(alg, &src, &tgt);
    let (mut r0, mut c0) = (0, 0);
    for p in parts {
        for (r, row) in p.blocks.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.blocks[r0 + r][c0 + c] = x.clone();
            }
        }
        r0 += p.tgt.len();
        c0 += p.src.len();
    }
    m
}

/// Stacks maps with a common source into the sum of their targets.
fn vstack(alg: &BasedAlgebra, src: &[usize], parts: &[PMap]) -> PMap {
    let tgt: Vec<usize> = parts.iter().flat_map(|p| p.tgt.clone()).collect();
    let mut m = PMap::zero(alg, src, &tgt);
    let mut r0 = 0;
    for p in parts {
        for (r, row) in p.blocks.iter().enumerate() {
            m.blocks[r0 + r] = row.clone();
        }
        r0 += p.tgt.len();
    }
    m
}

/// A degree-zero chain map, stored on the union of both windows.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub src: ProjComplex,
    pub tgt: ProjComplex,
    pub maps: HashMap<i64, PMap>,
}

impl ChainMap {
    pub fn at(&self, i: i64) -> PMap {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PMap::zero(&self.src.alg, self.src.term(i), self.tgt.term(i)))
    }

    fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.src.lo.min(self.tgt.lo);
        let hi = self.src.hi().max(self.tgt.hi());
        lo..=hi
    }

    pub fn zero(src: &ProjComplex, tgt: &ProjComplex) -> ChainMap {
        ChainMap {
            src: src.clone(),
            tgt: tgt.clone(),
            maps: HashMap::new(),
        }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let maps = (x.lo..=x.hi()).map(|i| (i, PMap::identity(&x.alg, x.term(i)))).collect();
        ChainMap {
            src: x.clone(),
            tgt: x.clone(),
            maps,
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let alg = &self.src.alg;
        let mut maps = HashMap::new();
        for i in self.degrees() {
            if self.src.term(i).is_empty() || g.tgt.term(i).is_empty() {
                continue;
            }
            maps.insert(i, self.at(i).then(alg, &g.at(i)));
        }
        ChainMap {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            maps,
        }
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        let mut maps = HashMap::new();
        for i in self.degrees() {
            maps.insert(i, self.at(i).add(&o.at(i)));
        }
        ChainMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps,
        }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            maps: self.maps.iter().map(|(i, m)| (*i, m.scale(c))).collect(),
        }
    }

    pub fn is_chain_map(&self) -> bool {
        let alg = &self.src.alg;
        let lo = self.src.lo.min(self.tgt.lo) - 1;
        let hi = self.src.hi().max(self.tgt.hi()) + 1;
        (lo..=hi).all(|i| {
            let left = self.at(i).then(alg, &self.tgt.diff(i));
            let right = self.src.diff(i).then(alg, &self.at(i + 1));
            left == right
        })
    }

    /// The module map `H^i(src) -> H^i(tgt)`.
    pub fn cohomology_map(&self, i: i64) -> (Module, Module, Matrix) {
        let alg = &self.src.alg;
        let (hx, incx, projx) = self.src.cohomology_data(i);
        let (hy, incy, projy) = self.tgt.cohomology_data(i);
        let field = alg.field();
        let sx = ProjSum::new(alg, self.src.term(i));
        let sy = ProjSum::new(alg, self.tgt.term(i));
        let fi = sx.matrix_of(&self.at(i), &sy);
        let section = projx
            .solve(&Matrix::identity(field, hx.dim()))
            .expect("field")
            .expect("projection is onto");
        let m = projy.mul(&left_inverse(&incy)).mul(&fi).mul(&incx).mul(&section);
        (hx, hy, m)
    }
}

impl ChainMap {
    /// Lifts a module map `f: M -> N` to `P_{>=-n}(M) -> P_{>=-n}(N)`.
    pub fn lift(f: &Matrix, rx: &Resolution, ry: &Resolution, n: usize) -> ChainMap {
        let alg = rx.algebra().clone();
        let src = ProjComplex::from_resolution(rx, n);
        let tgt = ProjComplex::from_resolution(ry, n);
        let mut maps = HashMap::new();
        // matrix of the previous component P^x_{i-1} -> P^y_{i-1}
        let mut prev: Option<Matrix> = None;
        for i in 0..=n {
            let sx = &rx.sums[i];
            let sy = &ry.sums[i];
            let (along, onto) = if i == 0 {
                (f.mul(&rx.augmentation), ry.augmentation.clone())
            } else {
                let dx = rx.sums[i].matrix_of(&rx.diffs[i - 1], &rx.sums[i - 1]);
                let dy = ry.sums[i].matrix_of(&ry.diffs[i - 1], &ry.sums[i - 1]);
                (prev.as_ref().expect("previous component").mul(&dx), dy)
            };
            let images: Vec<Vec<Scalar>> = (0..sx.terms.len())
                .map(|k| {
                    let y = along.mul(&Matrix::from_columns(alg.field(), sx.module.dim(), &[sx.generator(k)]));
                    let z = onto
                        .solve(&y)
                        .expect("field")
                        .expect("the image lies in the image of the differential");
                    sy.module.action(alg.idempotent(sx.terms[k])).mul(&z).column(0)
                })
                .collect();
            let g = sx.pmap_from_images(&images, sy);
            prev = Some(sx.matrix_of(&g, sy));
            if !sx.terms.is_empty() && !sy.terms.is_empty() {
                maps.insert(-(i as i64), g);
            }
        }
        ChainMap { src, tgt, maps }
    }
}

/// The canonical map `Y -> Cone(f)` for `f: X -> Y`.
pub fn cone_inclusion(f: &ChainMap, c: &ProjComplex) -> ChainMap {
    let alg = &f.src.alg;
    let y = &f.tgt;
    let mut maps = HashMap::new();
    if !y.is_zero() {
        for i in y.lo..=y.hi() {
            let off = f.src.term(i + 1).len();
            let mut m = PMap::zero(alg, y.term(i), c.term(i));
            for (r, &v) in y.term(i).iter().enumerate() {
                m.blocks[off + r][r] = alg.unit_vec(alg.idempotent(v));
            }
            maps.insert(i, m);
        }
    }
    ChainMap {
        src: y.clone(),
        tgt: c.clone(),
        maps,
    }
}

/// `Cone(f)^i = X^{i+1} ⊕ Y^i` with `d = [[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> ProjComplex {
    let (x, y) = (&f.src, &f.tgt);
    let alg = x.alg.clone();
    if x.is_zero() {
        return y.clone();
    }
    let lo = if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
    let hi = if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    ProjComplex::from_window(
        &alg,
        lo,
        hi,
        |i| {
            let mut t = x.term(i + 1).to_vec();
            t.extend(y.term(i));
            t
        },
        |i| {
            let a = x.diff(i + 1).neg();
            let b = PMap::zero(&alg, y.term(i), x.term(i + 2));
            PMap::block2(&a, &b, &f.at(i + 1), &y.diff(i))
        },
    )
}

/// Coordinates for graded maps `X^i -> Y^{i+shift}`, one per basis element
/// of each corner `e_s A e_t`.
struct HomBasis {
    entries: Vec<(i64, usize, usize, usize)>,
    index: HashMap<(i64, usize, usize, usize), usize>,
}

impl HomBasis {
    fn new(x: &ProjComplex, y: &ProjComplex, shift: i64) -> HomBasis {
        let alg = &x.alg;
        let mut entries = Vec::new();
        if !x.is_zero() {
            for i in x.lo..=x.hi() {
                let xs = x.term(i);
                let yt = y.term(i + shift);
                for u in 0..yt.len() {
                    for s in 0..xs.len() {
                        for b in alg.block_basis(xs[s], yt[u]) {
                            entries.push((i, u, s, b));
                        }
                    }
                }
            }
        }
        let index = entries.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        HomBasis { entries, index }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    /// The single-entry map for coordinate `k`, with its degree.
    fn unit(&self, x: &ProjComplex, y: &ProjComplex, shift: i64, k: usize) -> (i64, PMap) {
        let (i, u, s, b) = self.entries[k];
        let mut m = PMap::zero(&x.alg, x.term(i), y.term(i + shift));
        m.blocks[u][s] = x.alg.unit_vec(b);
        (i, m)
    }

    /// Adds the coordinates of a map `X^i -> Y^{i+shift}` into `out`.
    fn accumulate(&self, i: i64, m: &PMap, out: &mut [Scalar]) {
        for (u, row) in m.blocks.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                for (b, c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = self.index[&(i, u, s, b)];
                    out[k] = out[k].add(c);
                }
            }
        }
    }
}

/// `Hom_K(X, Y)`: cycles and boundaries of the Hom complex in degree zero.
pub struct HomK {
    x: ProjComplex,
    y: ProjComplex,
    basis: HomBasis,
    /// columns spanning the null-homotopic maps
    bounds: Matrix,
    /// homotopy map `s ↦ s d + d s` as a matrix
    homotopy: Matrix,
    homotopy_basis: HomBasis,
    /// coordinates of chain maps representing a basis of the quotient
    reps: Vec<Vec<Scalar>>,
}

pub fn hom_k(x: &ProjComplex, y: &ProjComplex) -> HomK {
    let alg = &x.alg;
    let field = alg.field();
    let zero_b = HomBasis::new(x, y, 0);
    let up = HomBasis::new(x, y, 1);
    let down = HomBasis::new(x, y, -1);
    let n = zero_b.len();
    // chain condition f ↦ (d_Y f^i - f^{i+1} d_X^i)
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let (i, f) = zero_b.unit(x, y, 0, k);
        let mut v = vec![field.zero(); up.len()];
        up.accumulate(i, &f.then(alg, &y.diff(i)), &mut v);
        let g = x.diff(i - 1).then(alg, &f).neg();
        up.accumulate(i - 1, &g, &mut v);
        cols.push(v);
    }
    let chain = Matrix::from_columns(field, up.len(), &cols);
    let cycles = if n == 0 {
        Matrix::zeros(field, 0, 0)
    } else if up.len() == 0 {
        Matrix::identity(field, n)
    } else {
        chain.nullspace()
    };
    // homotopies s ↦ s^{i+1} d_X^i + d_Y^{i-1} s^i
    let mut hcols = Vec::with_capacity(down.len());
    for k in 0..down.len() {
        let (i, s) = down.unit(x, y, -1, k);
        let mut v = vec![field.zero(); n];
        zero_b.accumulate(i - 1, &x.diff(i - 1).then(alg, &s), &mut v);
        zero_b.accumulate(i, &s.then(alg, &y.diff(i - 1)), &mut v);
        hcols.push(v);
    }
    let homotopy = Matrix::from_columns(field, n, &hcols);
    let bounds = if down.len() == 0 {
        Matrix::zeros(field, n, 0)
    } else {
        homotopy.column_space()
    };
    let mut span = bounds.clone();
    let mut reps = Vec::new();
    for c in cycles.columns() {
        let trial = span.hstack(&Matrix::from_columns(field, n, std::slice::from_ref(&c)));
        if trial.rank() > span.cols() {
            span = trial;
            reps.push(c);
        }
    }
    HomK {
        x: x.clone(),
        y: y.clone(),
        basis: zero_b,
        bounds,
        homotopy,
        homotopy_basis: down,
        reps,
    }
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn field(&self) -> Field {
        self.x.alg.field()
    }

    pub fn coords(&self, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.basis.len()];
        for i in self.x.lo..=self.x.hi() {
            if self.x.is_zero() {
                break;
            }
            self.basis.accumulate(i, &f.at(i), &mut v);
        }
        v
    }

    fn from_coords(&self, v: &[Scalar]) -> ChainMap {
        let alg = &self.x.alg;
        let mut maps: HashMap<i64, PMap> = HashMap::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, u, s, b) = self.basis.entries[k];
            let m = maps.entry(i).or_insert_with(|| PMap::zero(alg, self.x.term(i), self.y.term(i)));
            m.blocks[u][s][b] = m.blocks[u][s][b].add(c);
        }
        ChainMap {
            src: self.x.clone(),
            tgt: self.y.clone(),
            maps,
        }
    }

    /// Chain maps whose classes form a basis.
    pub fn basis(&self) -> Vec<ChainMap> {
        self.reps.iter().map(|r| self.from_coords(r)).collect()
    }

    /// Coordinates of the class of `f` in the basis of [`HomK::basis`].
    pub fn class(&self, f: &ChainMap) -> Vec<Scalar> {
        let field = self.field();
        let n = self.basis.len();
        if self.reps.is_empty() {
            return vec![];
        }
        let reps = Matrix::from_columns(field, n, &self.reps);
        let a = self.bounds.hstack(&reps);
        let b = Matrix::from_columns(field, n, &[self.coords(f)]);
        let sol = a.solve(&b).expect("field").expect("a chain map");
        (0..self.reps.len()).map(|k| sol.get(self.bounds.cols() + k, 0).clone()).collect()
    }

    /// A homotopy `s` with `f = s d + d s`, as maps `X^i -> Y^{i-1}`.
    pub fn null_homotopy(&self, f: &ChainMap) -> Option<HashMap<i64, PMap>> {
        let field = self.field();
        let n = self.basis.len();
        let target = self.coords(f);
        if target.iter().all(Scalar::is_zero) {
            return Some(HashMap::new());
        }
        if self.homotopy.cols() == 0 {
            return None;
        }
        let sol = self.homotopy.solve(&Matrix::from_columns(field, n, &[target])).expect("field")?;
        let mut out: HashMap<i64, PMap> = HashMap::new();
        for k in 0..self.homotopy_basis.len() {
            let c = sol.get(k, 0);
            if c.is_zero() {
                continue;
            }
            let (i, s) = self.homotopy_basis.unit(&self.x, &self.y, -1, k);
            let e = out
                .entry(i)
                .or_insert_with(|| PMap::zero(&self.x.alg, self.x.term(i), self.y.term(i - 1)));
            *e = e.add(&s.scale(c));
        }
        Some(out)
    }

    /// Rank of the span of the classes of `maps`.
    pub fn class_rank(&self, maps: &[ChainMap]) -> usize {
        if self.reps.is_empty() || maps.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Scalar>> = maps.iter().map(|m| self.class(m)).collect();
        Matrix::from_rows(self.field(), rows, self.reps.len()).rank()
    }

    /// Is the class of `target` in the span of the classes of `maps`?
    pub fn in_class_span(&self, maps: &[ChainMap], target: &ChainMap) -> bool {
        let t = self.class(target);
        if t.iter().all(Scalar::is_zero) {
            return true;
        }
        if maps.is_empty() {
            return false;
        }
        let cols: Vec<Vec<Scalar>> = maps.iter().map(|m| self.class(m)).collect();
        let a = Matrix::from_columns(self.field(), t.len(), &cols);
        a.solve(&Matrix::from_columns(self.field(), t.len(), &[t]))
            .map(|s| s.is_some())
            .unwrap_or(false)
    }
}

/// `dim Hom_K(X, Y[j])`.
pub fn hom_homotopy(x: &ProjComplex, y: &ProjComplex, j: i64) -> usize {
    hom_k(x, &y.shift(j)).dim()
}

/// Verifies `f - (s d + d s) = 0` degree by degree.
pub fn check_homotopy(f: &ChainMap, s: &HashMap<i64, PMap>) -> bool {
    let alg = &f.src.alg;
    let get = |i: i64| {
        s.get(&i)
            .cloned()
            .unwrap_or_else(|| PMap::zero(alg, f.src.term(i), f.tgt.term(i - 1)))
    };
    f.degrees().all(|i| {
        let a = f.src.diff(i).then(alg, &get(i + 1));
        let b = get(i).then(alg, &f.tgt.diff(i - 1));
        f.at(i) == a.add(&b)
    })
}

/// A minimal complex homotopy equivalent to the input, with `to ∘ from = id`.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub complex: ProjComplex,
    pub to: ChainMap,
    pub from: ChainMap,
}

/// Splits off contractible summands `P(v) --u--> P(v)` until every
/// differential is radical.
pub fn minimal_model(x: &ProjComplex) -> MinimalModel {
    let alg = x.alg.clone();
    if x.is_zero() {
        return MinimalModel {
            complex: x.clone(),
            to: ChainMap::identity(x),
            from: ChainMap::identity(x),
        };
    }
    let lo = x.lo;
    let mut terms = x.terms.clone();
    let mut diffs = x.diffs.clone();
    // to[k]: X^k -> cur^k, from[k]: cur^k -> X^k
    let mut to: Vec<PMap> = terms.iter().map(|t| PMap::identity(&alg, t)).collect();
    let mut from = to.clone();
    'outer: loop {
        for k in 0..diffs.len() {
            let d = &diffs[k];
            for (u, &vu) in d.tgt.iter().enumerate() {
                for (s, &vs) in d.src.iter().enumerate() {
                    if vu != vs || d.blocks[u][s][alg.idempotent(vs)].is_zero() {
                        continue;
                    }
                    let v = vs;
                    let inv = alg.corner_inverse(&d.blocks[u][s], v).expect("unit of a local corner");
                    let rest_src: Vec<usize> = (0..d.src.len()).filter(|&i| i != s).collect();
                    let rest_tgt: Vec<usize> = (0..d.tgt.len()).filter(|&i| i != u).collect();
                    let ainv = PMap {
                        src: vec![v],
                        tgt: vec![v],
                        blocks: vec![vec![inv]],
                    };
                    let b = d.select(&[u], &rest_src);
                    let c = d.select(&rest_tgt, &[s]);
                    let dd = d.select(&rest_tgt, &rest_src);
                    let ainv_c = ainv.then(&alg, &c);
                    let new_d = dd.add(&b.then(&alg, &ainv_c).neg());
                    // to^k ← [0 1] to^k ; to^{k+1} ← [-c a^{-1}, 1] to^{k+1}
                    let to_k = to[k].select(&rest_src, &(0..to[k].src.len()).collect::<Vec<_>>());
                    let tk1_all: Vec<usize> = (0..to[k + 1].src.len()).collect();
                    let to_u = to[k + 1].select(&[u], &tk1_all);
                    let to_k1 = to[k + 1].select(&rest_tgt, &tk1_all).add(&to_u.then(&alg, &ainv_c).neg());
                    // from^k ← from^k [-a^{-1} b; 1] ; from^{k+1} ← from^{k+1} [0; 1]
                    let mut e = PMap::zero(&alg, &b.src, &d.src);
                    let neg_ab = b.then(&alg, &ainv).neg();
                    for (col, &orig) in rest_src.iter().enumerate() {
                        e.blocks[orig][col] = alg.unit_vec(alg.idempotent(d.src[orig]));
                        e.blocks[s][col] = neg_ab.blocks[0][col].clone();
                    }
                    let from_k = e.then(&alg, &from[k]);
                    let fk1_all: Vec<usize> = (0..from[k + 1].tgt.len()).collect();
                    let from_k1 = from[k + 1].select(&fk1_all, &rest_tgt);
                    if k > 0 {
                        diffs[k - 1] = diffs[k - 1].select(&rest_src, &(0..diffs[k - 1].src.len()).collect::<Vec<_>>());
                    }
                    if k + 1 < diffs.len() {
                        diffs[k + 1] = diffs[k + 1].select(&(0..diffs[k + 1].tgt.len()).collect::<Vec<_>>(), &rest_tgt);
                    }
                    diffs[k] = new_d;
                    terms[k] = rest_src.iter().map(|&i| terms[k][i]).collect();
                    terms[k + 1] = rest_tgt.iter().map(|&i| terms[k + 1][i]).collect();
                    to[k] = to_k;
                    to[k + 1] = to_k1;
                    from[k] = from_k;
                    from[k + 1] = from_k1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let raw = ProjComplex {
        alg: alg.clone(),
        lo,
        terms: terms.clone(),
        diffs,
    };
    let complex = raw.clone().trimmed();
    let to_maps = (0..terms.len())
        .filter(|&k| !terms[k].is_empty())
        .map(|k| (lo + k as i64, to[k].clone()))
        .collect();
    let from_maps = (0..terms.len())
        .filter(|&k| !terms[k].is_empty())
        .map(|k| (lo + k as i64, from[k].clone()))
        .collect();
    MinimalModel {
        to: ChainMap {
            src: x.clone(),
            tgt: complex.clone(),
            maps: to_maps,
        },
        from: ChainMap {
            src: complex.clone(),
            tgt: x.clone(),
            maps: from_maps,
        },
        complex,
    }
}

/// A left `add(summands)`-approximation `X -> ⊕ summands[copies[k]]` in
/// `K^b(proj)`, minimal when the summands are indecomposable.
#[derive(Clone, Debug)]
pub struct Preenvelope {
    pub copies: Vec<usize>,
    pub map: ChainMap,
}

pub fn add_preenvelope(x: &ProjComplex, summands: &[ProjComplex]) -> Preenvelope {
    let alg = &x.alg;
    let homs: Vec<HomK> = summands.iter().map(|s| hom_k(x, s)).collect();
    let mut pieces: Vec<(usize, ChainMap)> = Vec::new();
    for (k, h) in homs.iter().enumerate() {
        for f in h.basis() {
            pieces.push((k, f));
        }
    }
    let inner: Vec<Vec<Vec<ChainMap>>> = summands
        .iter()
        .map(|a| summands.iter().map(|b| hom_k(a, b).basis()).collect())
        .collect();
    let factors = |keep: &[(usize, ChainMap)]| -> bool {
        homs.iter().enumerate().all(|(j, h)| {
            let mut img = Vec::new();
            for (k, f) in keep {
                for phi in &inner[*k][j] {
                    img.push(f.then(phi));
                }
            }
            h.class_rank(&img) == h.dim()
        })
    };
    let mut i = 0;
    while i < pieces.len() {
        let mut trial = pieces.clone();
        trial.remove(i);
        if factors(&trial) {
            pieces = trial;
        } else {
            i += 1;
        }
    }
    let parts: Vec<ProjComplex> = pieces.iter().map(|(k, _)| summands[*k].clone()).collect();
    let target = if parts.is_empty() {
        ProjComplex::zero(alg)
    } else {
        ProjComplex::direct_sum(&parts)
    };
    let mut stacked = HashMap::new();
    if !x.is_zero() {
        for i in x.lo..=x.hi() {
            let maps: Vec<PMap> = pieces
                .iter()
                .map(|(k, f)| {
                    let m = f.at(i);
                    if summands[*k].term(i).is_empty() {
                        PMap::zero(alg, x.term(i), &[])
                    } else {
                        m
                    }
                })
                .collect();
            stacked.insert(i, vstack(alg, x.term(i), &maps));
        }
    }
    Preenvelope {
        copies: pieces.iter().map(|(k, _)| *k).collect(),
        map: ChainMap {
            src: x.clone(),
            tgt: target,
            maps: stacked,
        },
    }
}

/// A right `add(summands)`-approximation `⊕ summands[copies[k]] -> X` from
/// a basis of each `Hom_K(summand, X)`.
pub fn add_precover(x: &ProjComplex, summands: &[ProjComplex]) -> Preenvelope {
    let alg = &x.alg;
    let mut pieces: Vec<(usize, ChainMap)> = Vec::new();
    for (k, s) in summands.iter().enumerate() {
        for f in hom_k(s, x).basis() {
            pieces.push((k, f));
        }
    }
    let parts: Vec<ProjComplex> = pieces.iter().map(|(k, _)| summands[*k].clone()).collect();
    let source = if parts.is_empty() {
        ProjComplex::zero(alg)
    } else {
        ProjComplex::direct_sum(&parts)
    };
    let mut maps = HashMap::new();
    if !source.is_zero() && !x.is_zero() {
        for i in source.lo.max(x.lo)..=source.hi().min(x.hi()) {
            let mut m = PMap::zero(alg, source.term(i), x.term(i));
            let mut c0 = 0;
            for (k, f) in &pieces {
                let w = summands[*k].term(i).len();
                if w > 0 {
                    let fi = f.at(i);
                    for (r, row) in fi.blocks.iter().enumerate() {
                        for (c, e) in row.iter().enumerate() {
                            m.blocks[r][c0 + c] = e.clone();
                        }
                    }
                }
                c0 += w;
            }
            maps.insert(i, m);
        }
    }
    Preenvelope {
        copies: pieces.iter().map(|(k, _)| *k).collect(),
        map: ChainMap {
            src: source,
            tgt: x.clone(),
            maps,
        },
    }
}

/// Is there `g` with `g ∘ f ≃ id`?
pub fn is_split_mono_in_k(f: &ChainMap) -> bool {
    if f.src.is_zero_object() {
        return true;
    }
    let back = hom_k(&f.tgt, &f.src).basis();
    let comps: Vec<ChainMap> = back.iter().map(|g| f.then(g)).collect();
    hom_k(&f.src, &f.src).in_class_span(&comps, &ChainMap::identity(&f.src))
}

/// Is there `g` with `f ∘ g ≃ id`?
pub fn is_split_epi_in_k(f: &ChainMap) -> bool {
    if f.tgt.is_zero_object() {
        return true;
    }
    let back = hom_k(&f.tgt, &f.src).basis();
    let comps: Vec<ChainMap> = back.iter().map(|g| g.then(f)).collect();
    hom_k(&f.tgt, &f.tgt).in_class_span(&comps, &ChainMap::identity(&f.tgt))
}

/// Is the cone of `f` contractible?
pub fn is_iso_in_k(f: &ChainMap) -> bool {
    cone(f).is_zero_object()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coresolution {
    /// the chain reached `add(P)` after this many triangles
    Finite {
        steps: usize,
        chain: Vec<String>,
    },
    NotWithinBound {
        chain: Vec<String>,
    },
}

/// Builds `X_0 = X`, `X_{i+1} = Cone(X_i -> P_i)` from minimal `add(P)`
/// preenvelopes until some `X_i` lies in `add(P)`.
pub fn coresdim_within(x: &ProjComplex, summands: &[ProjComplex], bound: usize) -> Coresolution {
    let mut cur = minimal_model(x).complex;
    let mut chain = Vec::new();
    for step in 0..=bound {
        let env = add_preenvelope(&cur, summands);
        let split = is_split_mono_in_k(&env.map);
        chain.push(format!(
            "X_{step} = {} -> {} ({})",
            cur.shape(),
            copies_label(&env.copies),
            if split { "split" } else { "not split" }
        ));
        if split {
            return Coresolution::Finite { steps: step, chain };
        }
        if step == bound {
            break;
        }
        cur = minimal_model(&cone(&env.map)).complex;
    }
    Coresolution::NotWithinBound { chain }
}

fn copies_label(copies: &[usize]) -> String {
    if copies.is_empty() {
        return "0".into();
    }
    copies.iter().map(|k| format!("T{k}")).collect::<Vec<_>>().join("+")
}

/// `Hom_K(P, P[i]) = 0` for `i = 1..length(P)`.
pub fn is_presilting(p: &ProjComplex) -> Verdict {
    let mut checks = Vec::new();
    for i in 1..=p.length().max(1) as i64 {
        let d = hom_homotopy(p, p, i);
        let c = Check::new(format!("hom_K(P,P[{i}])"), d);
        if d > 0 {
            return Verdict::fails(
                Witness::Violation {
                    detail: format!("nonzero homotopy class of degree {i}"),
                    check: c,
                },
                "complex",
            );
        }
        checks.push(c);
    }
    Verdict::holds(Witness::Vanishing { checks }, "complex")
}

/// Presilting plus `A[0]` in the thick closure, certified by a coresolution
/// of length `<= bound` by sums of `summands` (whose sum is `P`). `exact`
/// says the bound is known to be sufficient.
pub fn is_silting(summands: &[ProjComplex], bound: usize, exact: bool) -> Verdict {
    let alg = summands[0].alg.clone();
    let p = ProjComplex::direct_sum(summands);
    let pre = is_presilting(&p);
    if !pre.is_holds() {
        return pre;
    }
    match coresdim_within(&ProjComplex::regular(&alg), summands, bound) {
        Coresolution::Finite { chain, .. } => Verdict::all(
            vec![
                ("presilting".into(), pre),
                ("generates".into(), Verdict::holds(Witness::Chain { steps: chain }, "complex")),
            ],
            "complex",
        ),
        Coresolution::NotWithinBound { chain } => {
            let gen = if exact {
                Verdict::fails(Witness::Chain { steps: chain }, "complex")
            } else {
                Verdict::inconclusive(bound, "no coresolution of the regular complex within the bound", "complex")
            };
            Verdict::all(vec![("presilting".into(), pre), ("generates".into(), gen)], "complex")
        }
    }
}

/// Exhaustive search for an idempotent class other than `0` and `1` in
/// `End_K(X)`; `None` when the field is infinite or the space too large.
pub fn has_nontrivial_idempotent(x: &ProjComplex, limit: u64) -> Option<bool> {
    let field = x.alg.field();
    let q = field.order()?;
    let h = hom_k(x, x);
    let m = h.dim();
    if m == 0 {
        return Some(false);
    }
    let total = q.checked_pow(m as u32)?;
    if total > limit {
        return None;
    }
    let basis = h.basis();
    // structure constants of composition in the class basis
    let mut table = vec![vec![Vec::new(); m]; m];
    for a in 0..m {
        for b in 0..m {
            table[a][b] = h.class(&basis[a].then(&basis[b]));
        }
    }
    let one = h.class(&ChainMap::identity(x));
    let elems = field.elements()?;
    let mut c = vec![0usize; m];
    for _ in 0..total {
        let v: Vec<Scalar> = c.iter().map(|&i| elems[i].clone()).collect();
        let nonzero = v.iter().any(|s| !s.is_zero());
        if nonzero && v != one {
            let mut sq = vec![field.zero(); m];
            for a in 0..m {
                if v[a].is_zero() {
                    continue;
                }
                for b in 0..m {
                    if v[b].is_zero() {
                        continue;
                    }
                    let w = v[a].mul(&v[b]);
                    for (k, t) in table[a][b].iter().enumerate() {
                        sq[k] = sq[k].add(&w.mul(t));
                    }
                }
            }
            if sq == v {
                return Some(true);
            }
        }
        for d in c.iter_mut() {
            *d += 1;
            if *d < elems.len() {
                break;
            }
            *d = 0;
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverPresentation};
    use crate::homology::min_resolution;

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
        )
        .unwrap();
        Arc::new(build_algebra(&q).unwrap())
    }

    fn contractible(alg: &Arc<BasedAlgebra>, v: usize, deg: i64) -> ProjComplex {
        ProjComplex::new(alg.clone(), deg, vec![vec![v], vec![v]], vec![PMap::identity(alg, &[v])]).unwrap()
    }

    fn eximp_m(alg: &Arc<BasedAlgebra>) -> Module {
        Module::direct_sum(&[Module::projective(alg, 1), Module::projective(alg, 0), Module::simple(alg, 0)]).module
    }

    #[test]
    fn stalk_homs_are_module_homs() {
        let a = cycle(Field::Prime(2));
        for s in 0..3 {
            for t in 0..3 {
                let x = ProjComplex::stalk(&a, &[s], 0);
                let y = ProjComplex::stalk(&a, &[t], 0);
                let want = Module::projective(&a, s).hom_dim(&Module::projective(&a, t));
                assert_eq!(hom_homotopy(&x, &y, 0), want);
            }
        }
    }

    #[test]
    fn contractible_complexes_vanish() {
        let a = cycle(Field::Rationals);
        let c = contractible(&a, 1, 3);
        assert!(c.is_zero_object());
        assert!(minimal_model(&c).complex.is_zero());
        let l = ProjComplex::regular(&a);
        assert!(cone(&ChainMap::identity(&l)).is_zero_object());
        assert_eq!(l.shift(1).lo, -1);
    }

    #[test]
    fn truncated_resolution_cohomology() {
        let a = cycle(Field::Prime(2));
        let s1 = Module::simple(&a, 0);
        let r = min_resolution(&s1, 3);
        let p = ProjComplex::from_resolution(&r, 2);
        assert_eq!((p.lo, p.hi()), (-2, 0));
        p.check().unwrap();
        assert!(p.is_minimal());
        assert!(crate::decompose::is_iso(&p.cohomology(0), &s1).unwrap());
        assert!(p.cohomology(-1).is_zero());
        assert!(!p.cohomology(-2).is_zero());
    }

    #[test]
    fn hom_from_stalk_reads_cohomology() {
        let a = cycle(Field::Prime(3));
        let m = eximp_m(&a);
        let p = ProjComplex::from_resolution(&min_resolution(&m, 2), 2);
        for v in 0..3 {
            let pv = ProjComplex::stalk(&a, &[v], 0);
            for n in -2..=0 {
                let h = p.cohomology(n);
                assert_eq!(hom_homotopy(&pv, &p, n), h.dims()[v], "v={v} n={n}");
            }
        }
    }

    #[test]
    fn minimal_model_certificates() {
        let a = cycle(Field::Prime(2));
        let s1 = Module::simple(&a, 0);
        let p = ProjComplex::from_resolution(&min_resolution(&s1, 2), 2);
        let sum = ProjComplex::direct_sum(&[p.clone(), contractible(&a, 2, -1), contractible(&a, 0, -2)]);
        // mix the contractible part in with a change of basis: still equivalent
        let mm = minimal_model(&sum);
        assert!(mm.complex.is_minimal());
        mm.complex.check().unwrap();
        assert_eq!(mm.complex.shape(), p.shape());
        assert!(mm.to.is_chain_map());
        assert!(mm.from.is_chain_map());
        let back = mm.from.then(&mm.to);
        let h = hom_k(&mm.complex, &mm.complex);
        let diff = back.add(&ChainMap::identity(&mm.complex).scale(&Field::Prime(2).from_i64(-1)));
        assert!(h.null_homotopy(&diff).is_some());
        let round = mm.to.then(&mm.from);
        let hs = hom_k(&sum, &sum);
        let d2 = round.add(&ChainMap::identity(&sum).scale(&Field::Prime(2).from_i64(-1)));
        let s = hs.null_homotopy(&d2).unwrap();
        assert!(check_homotopy(&d2, &s));
    }

    #[test]
    fn cone_of_chain_map_is_complex() {
        let a = cycle(Field::Prime(2));
        let m = eximp_m(&a);
        let p = ProjComplex::from_resolution(&min_resolution(&m, 2), 2);
        let l = ProjComplex::regular(&a);
        let env = add_preenvelope(&l, &[p]);
        assert!(env.map.is_chain_map());
        let c = cone(&env.map);
        c.check().unwrap();
    }

    #[test]
    fn presilting_matches_rigidity_on_eximp() {
        let a = cycle(Field::Prime(2));
        let m = eximp_m(&a);
        let r = min_resolution(&m, 2);
        assert!(is_presilting(&ProjComplex::from_resolution(&r, 2)).is_holds());
        assert!(is_presilting(&ProjComplex::from_resolution(&r, 1)).is_fails());
        let parts: Vec<ProjComplex> = [Module::projective(&a, 1), Module::projective(&a, 0), Module::simple(&a, 0)]
            .iter()
            .map(|x| ProjComplex::from_resolution(&min_resolution(x, 2), 2))
            .collect();
        assert!(is_silting(&parts, 2, true).is_holds());
        assert!(is_silting(&parts[2..], 2, true).is_fails());
    }

    #[test]
    fn regular_is_silting() {
        let a = cycle(Field::Rationals);
        let l = ProjComplex::regular(&a);
        let parts: Vec<ProjComplex> = (0..3).map(|v| ProjComplex::stalk(&a, &[v], 0)).collect();
        assert!(is_silting(&parts, 0, true).is_holds());
        match coresdim_within(&l, &parts, 0) {
            Coresolution::Finite { steps, chain } => {
                assert_eq!(steps, 0);
                assert_eq!(chain, vec![format!("X_0 = {} -> T0+T1+T2 (split)", l.shape())]);
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn split_tests() {
        let a = cycle(Field::Prime(2));
        let p = ProjComplex::stalk(&a, &[0], 0);
        let q = ProjComplex::stalk(&a, &[1], 0);
        let id = ChainMap::identity(&p);
        assert!(is_split_mono_in_k(&id));
        assert!(is_split_epi_in_k(&id));
        let sum = ProjComplex::direct_sum(&[p.clone(), q]);
        let mut inc = ChainMap::zero(&p, &sum);
        inc.maps
            .insert(0, vstack(&a, &[0], &[PMap::identity(&a, &[0]), PMap::zero(&a, &[0], &[1])]));
        assert!(is_split_mono_in_k(&inc));
        assert!(!is_split_mono_in_k(&ChainMap::zero(&p, &ProjComplex::zero(&a))));
    }

    #[test]
    fn indecomposable_truncation_has_local_endomorphisms() {
        let a = cycle(Field::Prime(2));
        let s1 = Module::simple(&a, 0);
        let p = ProjComplex::from_resolution(&min_resolution(&s1, 2), 2);
        assert_eq!(has_nontrivial_idempotent(&p, 1 << 12), Some(false));
        let two = ProjComplex::direct_sum(&[p.clone(), ProjComplex::stalk(&a, &[1], 0)]);
        assert_eq!(has_nontrivial_idempotent(&two, 1 << 12), Some(true));
    }
}
