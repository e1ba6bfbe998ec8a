//! Based finite-dimensional algebras: quiver algebras `kQ/I`, quotients by
//! two-sided ideals, and opposites.
//!
//! Every algebra keeps a basis in which the complete set of primitive
//! idempotents are basis vectors, every basis vector lies in one block
//! `e_i A e_j`, and the radical is spanned by a subset of the basis. Non
//! idempotent basis vectors also carry a word in the generators so that a
//! module can be specified by generator matrices alone.
//!
//! Paths compose right to left: the word `[b, a]` is "first `a`, then `b`"
//! and lies in `e_t A e_s` where `s` is the source of `a` and `t` the target
//! of `b`.

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::{combine, Field, LinalgError, Matrix, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("admissibility failure: {0}")]
    AdmissibilityFailure(String),
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// One summand `coeff * path` of a relation; `path` lists arrow indices in
/// composition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<Term>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    src: usize,
    tgt: usize,
    // arrows in traversal order (first arrow first)
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

impl QuiverPresentation {
    pub fn new(
        field: Field,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<(Scalar, Vec<String>)>>,
        nilpotency_bound: usize,
    ) -> Result<Self, AlgebraError> {
        let vidx = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| AlgebraError::BadPresentation(format!("unknown vertex {v:?}")))
        };
        let mut arr = Vec::new();
        for (name, s, t) in &arrows {
            if arr.iter().any(|a: &Arrow| &a.name == name) {
                return Err(AlgebraError::BadPresentation(format!("duplicate arrow {name:?}")));
            }
            arr.push(Arrow {
                name: name.clone(),
                src: vidx(s)?,
                tgt: vidx(t)?,
            });
        }
        let aidx = |n: &str| {
            arr.iter()
                .position(|a| a.name == n)
                .ok_or_else(|| AlgebraError::BadPresentation(format!("unknown arrow {n:?}")))
        };
        let mut rels = Vec::new();
        for rel in &relations {
            let mut terms = Vec::new();
            for (c, p) in rel {
                let path = p.iter().map(|n| aidx(n)).collect::<Result<Vec<_>, _>>()?;
                terms.push(Term { coeff: c.clone(), path });
            }
            rels.push(terms);
        }
        let q = QuiverPresentation {
            field,
            vertices,
            arrows: arr,
            relations: rels,
            nilpotency_bound,
        };
        q.validate()?;
        Ok(q)
    }

    fn term_path(&self, t: &Term) -> Result<Path, AlgebraError> {
        let trav: Vec<usize> = t.path.iter().rev().copied().collect();
        let bad = |m: &str| AlgebraError::BadPresentation(m.to_string());
        let first = *trav.first().ok_or_else(|| bad("empty path in relation"))?;
        for w in trav.windows(2) {
            if self.arrows[w[0]].tgt != self.arrows[w[1]].src {
                return Err(bad("relation path does not compose"));
            }
        }
        Ok(Path {
            src: self.arrows[first].src,
            tgt: self.arrows[*trav.last().unwrap()].tgt,
            arrows: trav,
        })
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.vertices.is_empty() {
            return Err(AlgebraError::EmptyQuiver);
        }
        if self.nilpotency_bound < 2 {
            return Err(AlgebraError::BadPresentation("nilpotency bound must be at least 2".into()));
        }
        for rel in &self.relations {
            let mut ends = None;
            for t in rel {
                if t.coeff.field() != self.field {
                    return Err(AlgebraError::BadPresentation("coefficient field mismatch".into()));
                }
                let p = self.term_path(t)?;
                if p.len() < 2 {
                    return Err(AlgebraError::BadPresentation("relation paths must have length at least 2".into()));
                }
                match ends {
                    None => ends = Some((p.src, p.tgt)),
                    Some(e) if e != (p.src, p.tgt) => {
                        return Err(AlgebraError::BadPresentation(
                            "relation mixes paths with different endpoints".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len())
            .map(|v| Path {
                src: v,
                tgt: v,
                arrows: vec![],
            })
            .collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.src == p.tgt {
                        let mut arrows = p.arrows.clone();
                        arrows.push(k);
                        next.push(Path {
                            src: p.src,
                            tgt: a.tgt,
                            arrows,
                        });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Spanning set of `I + R^{cut}` truncated to paths of length `< cut`,
    /// as sparse rows over `paths`.
    fn ideal_rows(&self, paths: &[Path], index: &HashMap<Path, usize>, cut: usize) -> Result<Vec<Vec<(usize, Scalar)>>, AlgebraError> {
        let mut rows = Vec::new();
        for rel in &self.relations {
            let terms: Vec<(Scalar, Path)> = rel
                .iter()
                .map(|t| Ok((t.coeff.clone(), self.term_path(t)?)))
                .collect::<Result<_, AlgebraError>>()?;
            let Some((_, p0)) = terms.first() else { continue };
            let (s, t) = (p0.src, p0.tgt);
            let minlen = terms.iter().map(|(_, p)| p.len()).min().unwrap();
            for q in paths.iter().filter(|q| q.tgt == s) {
                for p in paths.iter().filter(|p| p.src == t) {
                    if q.len() + p.len() + minlen >= cut {
                        continue;
                    }
                    let mut row: Vec<(usize, Scalar)> = Vec::new();
                    for (c, m) in &terms {
                        if q.len() + m.len() + p.len() >= cut {
                            continue;
                        }
                        let mut arrows = q.arrows.clone();
                        arrows.extend(&m.arrows);
                        arrows.extend(&p.arrows);
                        let key = Path {
                            src: q.src,
                            tgt: p.tgt,
                            arrows,
                        };
                        let i = index[&key];
                        match row.iter_mut().find(|(j, _)| *j == i) {
                            Some((_, x)) => *x = x.add(c),
                            None => row.push((i, c.clone())),
                        }
                    }
                    row.retain(|(_, x)| !x.is_zero());
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        Ok(rows)
    }
}

/// Dense RREF of sparse rows over columns reordered by `order` (position in
/// `order` = column position). Returns reduced rows in original column
/// indexing together with each row's pivot column.
fn reduce_rows(field: Field, ncols: usize, order: &[usize], rows: &[Vec<(usize, Scalar)>]) -> Vec<(usize, Vec<Scalar>)> {
    let mut pos = vec![0; ncols];
    for (k, &c) in order.iter().enumerate() {
        pos[c] = k;
    }
    let mut m = Matrix::zeros(field, rows.len(), ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            m.set(r, pos[*c], x.clone());
        }
    }
    let (rr, pivots) = m.rref();
    pivots
        .iter()
        .enumerate()
        .map(|(r, &pc)| {
            let mut v = vec![field.zero(); ncols];
            for k in 0..ncols {
                v[order[k]] = rr.get(r, k).clone();
            }
            (order[pc], v)
        })
        .collect()
}

/// A finite-dimensional algebra with an adapted basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedAlgebra {
    field: Field,
    labels: Vec<String>,
    vertices: Vec<String>,
    idempotents: Vec<usize>,
    grading: Vec<(usize, usize)>,
    radical: Vec<usize>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

/// Everything except generators and words; input to [`BasedAlgebra::rebase`].
pub(crate) struct RawAlgebra {
    pub field: Field,
    pub labels: Vec<String>,
    pub vertices: Vec<String>,
    pub idempotents: Vec<usize>,
    pub grading: Vec<(usize, usize)>,
    pub radical: Vec<usize>,
    pub table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

pub fn build_algebra(q: &QuiverPresentation) -> Result<BasedAlgebra, AlgebraError> {
    q.validate()?;
    let field = q.field;
    let big_l = q.nilpotency_bound;
    let paths = q.paths_up_to(big_l);
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(paths[i].len()), i));

    // admissibility: each length-L path lies in I + R^{L+1}
    let wide = reduce_rows(field, paths.len(), &order, &q.ideal_rows(&paths, &index, big_l + 1)?);
    for (i, p) in paths.iter().enumerate().filter(|(_, p)| p.len() == big_l) {
        let mut v = vec![field.zero(); paths.len()];
        v[i] = field.one();
        for (pc, row) in &wide {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            let names: Vec<&str> = p.arrows.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect();
            return Err(AlgebraError::AdmissibilityFailure(format!(
                "path {} of length {} does not vanish",
                names.join("*"),
                big_l
            )));
        }
    }

    let reduced = reduce_rows(field, paths.len(), &order, &q.ideal_rows(&paths, &index, big_l)?);
    let pivot_of: HashMap<usize, usize> = reduced.iter().enumerate().map(|(r, (c, _))| (*c, r)).collect();
    let mut basis: Vec<usize> = (0..paths.len())
        .filter(|i| paths[*i].len() < big_l && !pivot_of.contains_key(i))
        .collect();
    basis.sort_by_key(|&i| (paths[i].len(), i));
    let bpos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();

    let reduce = |pi: usize| -> Vec<(usize, Scalar)> {
        if paths[pi].len() >= big_l {
            return vec![];
        }
        if let Some(&k) = bpos.get(&pi) {
            return vec![(k, field.one())];
        }
        let row = &reduced[pivot_of[&pi]].1;
        basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| !row[b].is_zero())
            .map(|(k, &b)| (k, row[b].neg()))
            .collect()
    };

    let n = basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for (ka, &a) in basis.iter().enumerate() {
        for (kb, &b) in basis.iter().enumerate() {
            let (pa, pb) = (&paths[a], &paths[b]);
            if pb.tgt != pa.src {
                continue;
            }
            let len = pa.len() + pb.len();
            if len >= big_l {
                continue;
            }
            let mut arrows = pb.arrows.clone();
            arrows.extend(&pa.arrows);
            let key = Path {
                src: pb.src,
                tgt: pa.tgt,
                arrows,
            };
            table[ka][kb] = reduce(index[&key]);
        }
    }

    let label = |p: &Path| -> String {
        if p.arrows.is_empty() {
            format!("e{}", q.vertices[p.src])
        } else {
            let names: Vec<&str> = p.arrows.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect();
            names.join("*")
        }
    };
    let idempotents: Vec<usize> = (0..q.vertices.len())
        .map(|v| {
            bpos[&index[&Path {
                src: v,
                tgt: v,
                arrows: vec![],
            }]]
        })
        .collect();
    let generators: Vec<usize> = (0..q.arrows.len())
        .map(|k| {
            let a = &q.arrows[k];
            bpos[&index[&Path {
                src: a.src,
                tgt: a.tgt,
                arrows: vec![k],
            }]]
        })
        .collect();
    let alg = BasedAlgebra {
        field,
        labels: basis.iter().map(|&i| label(&paths[i])).collect(),
        vertices: q.vertices.clone(),
        idempotents,
        grading: basis.iter().map(|&i| (paths[i].tgt, paths[i].src)).collect(),
        radical: (0..n).filter(|&k| paths[basis[k]].len() > 0).collect(),
        generators,
        words: basis.iter().map(|&i| paths[i].arrows.iter().rev().copied().collect()).collect(),
        table,
    };
    Ok(alg)
}

impl BasedAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// `(i, j)` with `b` in `e_i A e_j`.
    pub fn grading(&self, b: usize) -> (usize, usize) {
        self.grading[b]
    }

    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    pub fn is_radical(&self, b: usize) -> bool {
        self.radical.contains(&b)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The word of basis element `b` as positions into [`Self::generators`],
    /// leftmost factor first. Empty for idempotents.
    pub fn word(&self, b: usize) -> &[usize] {
        &self.words[b]
    }

    pub fn product(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a][b]
    }

    /// Basis elements of `e_i A e_j`.
    pub fn block_basis(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.grading[b] == (i, j)).collect()
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit_vec(&self, b: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[b] = self.field.one();
        v
    }

    pub fn one_vec(&self) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa.mul(yb);
                for (k, s) in &self.table[a][b] {
                    out[*k] = out[*k].add(&c.mul(s));
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`, columns indexed by basis.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.mul(a, &self.unit_vec(b))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn right_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.mul(&self.unit_vec(b), a)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(&self.unit_vec(a), &self.unit_vec(b));
                for c in 0..n {
                    let uc = self.unit_vec(c);
                    let lhs = self.mul(&ab, &uc);
                    let rhs = self.mul(&self.unit_vec(a), &self.mul(&self.unit_vec(b), &uc));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks the structural invariants: associativity, orthogonal
    /// idempotents summing to one, homogeneous products, nilpotent radical.
    pub fn check_invariants(&self) -> Result<(), String> {
        if !self.is_associative() {
            return Err("multiplication is not associative".into());
        }
        let one = self.one_vec();
        for b in 0..self.dim() {
            let u = self.unit_vec(b);
            if self.mul(&one, &u) != u || self.mul(&u, &one) != u {
                return Err(format!("sum of idempotents is not a unit on {}", self.labels[b]));
            }
        }
        for (i, &ei) in self.idempotents.iter().enumerate() {
            for (j, &ej) in self.idempotents.iter().enumerate() {
                let p = self.mul(&self.unit_vec(ei), &self.unit_vec(ej));
                let want = if i == j { self.unit_vec(ei) } else { self.zero_vec() };
                if p != want {
                    return Err("idempotents are not orthogonal".into());
                }
            }
        }
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let (i, j) = self.grading[a];
                let (k, l) = self.grading[b];
                for (c, _) in &self.table[a][b] {
                    if j != k || self.grading[*c] != (i, l) {
                        return Err("product breaks the bigrading".into());
                    }
                }
            }
        }
        if self.radical_power_dims().last() != Some(&0) {
            return Err("radical is not nilpotent".into());
        }
        Ok(())
    }

    /// Basis (as coordinate vectors) of the span of all products `x y`
    /// with `x` in `xs`, `y` in `ys`.
    pub fn span_products(&self, xs: &[Vec<Scalar>], ys: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut vs = Vec::new();
        for x in xs {
            for y in ys {
                let p = self.mul(x, y);
                if p.iter().any(|s| !s.is_zero()) {
                    vs.push(p);
                }
            }
        }
        span_basis(self.field, self.dim(), &vs)
    }

    fn radical_vectors(&self) -> Vec<Vec<Scalar>> {
        self.radical.iter().map(|&r| self.unit_vec(r)).collect()
    }

    /// Dimensions of `rad, rad^2, ...` up to and including the first zero.
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let rad = self.radical_vectors();
        let mut cur = rad.clone();
        let mut dims = vec![cur.len()];
        while !cur.is_empty() && dims.len() <= self.dim() + 1 {
            cur = self.span_products(&cur, &rad);
            dims.push(cur.len());
        }
        dims
    }

    /// Smallest `L` with `rad^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.radical_power_dims().iter().position(|&d| d == 0).map_or(0, |k| k + 1)
    }

    /// Number of arrows between each ordered pair of vertices:
    /// `q[i][j] = dim e_j (rad/rad^2) e_i`, i.e. arrows `i -> j`.
    pub fn gabriel_quiver(&self) -> Vec<Vec<usize>> {
        let rad = self.radical_vectors();
        let rad2 = self.span_products(&rad, &rad);
        let nv = self.num_vertices();
        let mut q = vec![vec![0; nv]; nv];
        for (i, row) in q.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let blk: Vec<Vec<Scalar>> = self
                    .radical
                    .iter()
                    .filter(|&&r| self.grading[r] == (j, i))
                    .map(|&r| self.unit_vec(r))
                    .collect();
                let r2: Vec<Vec<Scalar>> = rad2
                    .iter()
                    .map(|v| restrict_block(self, v, j, i))
                    .filter(|v| v.iter().any(|s| !s.is_zero()))
                    .collect();
                let mut all = r2.clone();
                all.extend(blk);
                *cell = span_basis(self.field, self.dim(), &all).len() - span_basis(self.field, self.dim(), &r2).len();
            }
        }
        q
    }

    pub fn opposite(&self) -> BasedAlgebra {
        let n = self.dim();
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = self.table[b][a].clone();
            }
        }
        BasedAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            vertices: self.vertices.clone(),
            idempotents: self.idempotents.clone(),
            grading: self.grading.iter().map(|&(i, j)| (j, i)).collect(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
            words: self.words.iter().map(|w| w.iter().rev().copied().collect()).collect(),
            table,
        }
    }

    /// Quotient by the two-sided ideal spanned by `ideal`; returns the
    /// quotient and the projection matrix (quotient dim x dim).
    pub fn quotient(&self, ideal: &[Vec<Scalar>]) -> Result<(BasedAlgebra, Matrix), AlgebraError> {
        let n = self.dim();
        let ib = span_basis(self.field, n, ideal);
        let imat = Matrix::from_columns(self.field, n, &ib);
        let in_ideal = |v: &[Scalar]| -> bool {
            let b = Matrix::from_columns(self.field, n, &[v.to_vec()]);
            imat.solve(&b).map(|x| x.is_some()).unwrap_or(false)
        };
        for v in &ib {
            for b in 0..n {
                let u = self.unit_vec(b);
                if !in_ideal(&self.mul(&u, v)) || !in_ideal(&self.mul(v, &u)) {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        // complement chosen greedily from the basis, idempotents first
        let mut cand: Vec<usize> = self.idempotents.clone();
        cand.extend((0..n).filter(|b| !self.idempotents.contains(b)));
        let mut kept = Vec::new();
        let mut span = ib.clone();
        for b in cand {
            let mut trial = span.clone();
            trial.push(self.unit_vec(b));
            if span_basis(self.field, n, &trial).len() > span.len() {
                span.push(self.unit_vec(b));
                kept.push(b);
            }
        }
        // projection: coordinates of each basis vector in [ideal | kept]
        let mut cols = ib.clone();
        cols.extend(kept.iter().map(|&b| self.unit_vec(b)));
        let full = Matrix::from_columns(self.field, n, &cols);
        let inv = full.inverse().expect("ideal plus complement spans");
        let proj = inv.block(ib.len(), kept.len(), 0, n);

        let m = kept.len();
        let project = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
            let col = Matrix::from_columns(self.field, n, &[v.to_vec()]);
            let c = proj.mul(&col);
            (0..m)
                .filter(|&k| !c.get(k, 0).is_zero())
                .map(|k| (k, c.get(k, 0).clone()))
                .collect()
        };
        let mut table = vec![vec![Vec::new(); m]; m];
        for (ka, &a) in kept.iter().enumerate() {
            for (kb, &b) in kept.iter().enumerate() {
                let p = self.mul(&self.unit_vec(a), &self.unit_vec(b));
                table[ka][kb] = project(&p);
            }
        }
        let kept_vertices: Vec<usize> = (0..self.num_vertices()).filter(|&v| kept.contains(&self.idempotents[v])).collect();
        let vmap: HashMap<usize, usize> = kept_vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut grading = Vec::new();
        for &b in &kept {
            let (i, j) = self.grading[b];
            match (vmap.get(&i), vmap.get(&j)) {
                (Some(&x), Some(&y)) => grading.push((x, y)),
                _ => return Err(AlgebraError::NotAnIdeal),
            }
        }
        let raw = RawAlgebra {
            field: self.field,
            labels: kept.iter().map(|&b| self.labels[b].clone()).collect(),
            vertices: kept_vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            idempotents: kept_vertices
                .iter()
                .map(|&v| kept.iter().position(|&b| b == self.idempotents[v]).unwrap())
                .collect(),
            grading,
            radical: (0..m).filter(|&k| !self.idempotents.contains(&kept[k])).collect(),
            table,
        };
        let (q, change) = BasedAlgebra::rebase(raw)?;
        // rows of `change` express new basis in kept-basis coordinates
        let to_new = change.inverse().expect("change of basis");
        Ok((q, to_new.mul(&proj)))
    }

    /// Chooses arrows spanning a complement of `rad^2` inside `rad` and a
    /// basis of words in them. Returns the algebra in the new basis and the
    /// change-of-basis matrix whose columns are the new basis vectors in old
    /// coordinates.
    pub(crate) fn rebase(raw: RawAlgebra) -> Result<(BasedAlgebra, Matrix), AlgebraError> {
        let n = raw.labels.len();
        let field = raw.field;
        let tmp = BasedAlgebra {
            field,
            labels: raw.labels.clone(),
            vertices: raw.vertices.clone(),
            idempotents: raw.idempotents.clone(),
            grading: raw.grading.clone(),
            radical: raw.radical.clone(),
            generators: vec![],
            words: vec![vec![]; n],
            table: raw.table,
        };
        let rad = tmp.radical_vectors();
        let rad2 = tmp.span_products(&rad, &rad);
        let mut arrows: Vec<usize> = Vec::new();
        let mut span = rad2.clone();
        for &r in &tmp.radical {
            let mut trial = span.clone();
            trial.push(tmp.unit_vec(r));
            if span_basis(field, n, &trial).len() > span.len() {
                span.push(tmp.unit_vec(r));
                arrows.push(r);
            }
        }
        if span.len() != rad.len() {
            return Err(AlgebraError::NotSplitBasic("radical is not nilpotent modulo its square".into()));
        }
        // breadth-first words; a word extends only an already kept word
        let mut vecs: Vec<Vec<Scalar>> = tmp.idempotents.iter().map(|&e| tmp.unit_vec(e)).collect();
        let mut words: Vec<Vec<usize>> = vec![vec![]; vecs.len()];
        let mut grades: Vec<(usize, usize)> = tmp.idempotents.iter().map(|&e| tmp.grading[e]).collect();
        let mut frontier: Vec<usize> = Vec::new();
        for (k, &a) in arrows.iter().enumerate() {
            vecs.push(tmp.unit_vec(a));
            words.push(vec![k]);
            grades.push(tmp.grading[a]);
            frontier.push(vecs.len() - 1);
        }
        while !frontier.is_empty() && vecs.len() < n {
            let mut next = Vec::new();
            for &w in &frontier {
                for (k, &a) in arrows.iter().enumerate() {
                    if tmp.grading[a].1 != grades[w].0 {
                        continue;
                    }
                    let v = tmp.mul(&tmp.unit_vec(a), &vecs[w]);
                    if v.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let mut trial = vecs.clone();
                    trial.push(v.clone());
                    if span_basis(field, n, &trial).len() > vecs.len() {
                        let mut word = vec![k];
                        word.extend(&words[w]);
                        grades.push((tmp.grading[a].0, grades[w].1));
                        vecs.push(v);
                        words.push(word);
                        next.push(vecs.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        if vecs.len() != n {
            return Err(AlgebraError::NotSplitBasic("arrows do not generate the radical".into()));
        }
        let change = Matrix::from_columns(field, n, &vecs);
        let inv = change.inverse().expect("independent words");
        let coords = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
            let c = inv.mul(&Matrix::from_columns(field, n, &[v.to_vec()]));
            (0..n)
                .filter(|&k| !c.get(k, 0).is_zero())
                .map(|k| (k, c.get(k, 0).clone()))
                .collect()
        };
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = coords(&tmp.mul(&vecs[a], &vecs[b]));
            }
        }
        let nv = tmp.idempotents.len();
        let labels: Vec<String> = words
            .iter()
            .enumerate()
            .map(|(k, w)| {
                if k < nv {
                    tmp.labels[tmp.idempotents[k]].clone()
                } else {
                    w.iter().map(|&g| tmp.labels[arrows[g]].as_str()).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        let alg = BasedAlgebra {
            field,
            labels,
            vertices: tmp.vertices.clone(),
            idempotents: (0..nv).collect(),
            grading: grades,
            radical: (nv..n).collect(),
            generators: (nv..nv + arrows.len()).collect(),
            words,
            table,
        };
        Ok((alg, change))
    }

    /// Builds an algebra from structure constants where generators are all
    /// non-idempotent basis vectors (no arrow presentation attempted).
    pub(crate) fn from_raw_unpresented(raw: RawAlgebra) -> BasedAlgebra {
        let n = raw.labels.len();
        let generators: Vec<usize> = (0..n).filter(|b| !raw.idempotents.contains(b)).collect();
        let mut words = vec![vec![]; n];
        for (k, &g) in generators.iter().enumerate() {
            words[g] = vec![k];
        }
        BasedAlgebra {
            field: raw.field,
            labels: raw.labels,
            vertices: raw.vertices,
            idempotents: raw.idempotents,
            grading: raw.grading,
            radical: raw.radical,
            generators,
            words,
            table: raw.table,
        }
    }

    /// The same algebra re-expressed through a minimal set of arrows.
    pub fn presentation(&self) -> Result<BasedAlgebra, AlgebraError> {
        let raw = RawAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            vertices: self.vertices.clone(),
            idempotents: self.idempotents.clone(),
            grading: self.grading.clone(),
            radical: self.radical.clone(),
            table: self.table.clone(),
        };
        Ok(BasedAlgebra::rebase(raw)?.0)
    }

    /// `A / rad A`.
    pub fn semisimple_quotient(&self) -> Result<(BasedAlgebra, Matrix), AlgebraError> {
        self.quotient(&self.radical_vectors())
    }

    /// Rank of left-multiplication by `x`: used for invertibility checks.
    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        self.left_matrix(x).is_invertible()
    }

    /// Inverse of a unit, if it is one.
    pub fn inverse(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let l = self.left_matrix(x);
        let b = Matrix::from_columns(self.field, self.dim(), &[self.one_vec()]);
        let sol = l.solve(&b).ok()??;
        let y = sol.column(0);
        if self.mul(&y, x) == self.one_vec() {
            Some(y)
        } else {
            None
        }
    }

    /// Inverse of `x` in the corner ring `e_v A e_v`, where `x` lies.
    pub fn corner_inverse(&self, x: &[Scalar], v: usize) -> Option<Vec<Scalar>> {
        let e = self.unit_vec(self.idempotents[v]);
        let blk = self.block_basis(v, v);
        // solve y x = e with y supported on blk
        let cols: Vec<Vec<Scalar>> = blk.iter().map(|&b| self.mul(&self.unit_vec(b), x)).collect();
        let a = Matrix::from_columns(self.field, self.dim(), &cols);
        let rhs = Matrix::from_columns(self.field, self.dim(), std::slice::from_ref(&e));
        let sol = a.solve(&rhs).ok()??;
        let mut y = self.zero_vec();
        for (k, &b) in blk.iter().enumerate() {
            y[b] = sol.get(k, 0).clone();
        }
        if self.mul(x, &y) == e {
            Some(y)
        } else {
            None
        }
    }

    /// Human-readable rendering of a coordinate vector.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| {
                if c.is_one() {
                    self.labels[b].clone()
                } else {
                    format!("{}*{}", c, self.labels[b])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn restrict_block(a: &BasedAlgebra, v: &[Scalar], i: usize, j: usize) -> Vec<Scalar> {
    v.iter()
        .enumerate()
        .map(|(b, x)| if a.grading[b] == (i, j) { x.clone() } else { a.field.zero() })
        .collect()
}

impl BasedAlgebra {
    /// Whether `q` presents this algebra, matching vertices by label and
    /// arrows to generators by grading. Only decides when each arrow's
    /// corner holds exactly one generator; otherwise returns `false`.
    pub fn matches_presentation(&self, q: &QuiverPresentation) -> bool {
        if q.field != self.field || q.vertices.len() != self.num_vertices() || q.arrows.len() != self.generators.len() {
            return false;
        }
        let mut vmap = Vec::new();
        for l in &q.vertices {
            match self.vertex_index(l) {
                Some(v) => vmap.push(v),
                None => return false,
            }
        }
        let mut images = Vec::new();
        for a in &q.arrows {
            let corner = (vmap[a.tgt], vmap[a.src]);
            let cands: Vec<usize> = self.generators.iter().copied().filter(|&g| self.grading(g) == corner).collect();
            if cands.len() != 1 || images.contains(&cands[0]) {
                return false;
            }
            images.push(cands[0]);
        }
        for rel in &q.relations {
            let mut total = self.zero_vec();
            for t in rel {
                let mut x = self.unit_vec(images[t.path[0]]);
                for &a in &t.path[1..] {
                    x = self.mul(&x, &self.unit_vec(images[a]));
                }
                let scaled: Vec<Scalar> = x.iter().map(|c| c.mul(&t.coeff)).collect();
                total = total.iter().zip(&scaled).map(|(a, b)| a.add(b)).collect();
            }
            if total.iter().any(|c| !c.is_zero()) {
                return false;
            }
        }
        match build_algebra(q) {
            Ok(b) => b.dim() == self.dim(),
            Err(_) => false,
        }
    }
}

/// Basis of the span of `vs` (a subset of linear combinations, returned as
/// RREF rows).
pub fn span_basis(field: Field, n: usize, vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vs.is_empty() {
        return vec![];
    }
    let m = Matrix::from_rows(field, vs.to_vec(), n);
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// `sum c_k e_k` over basis indices.
pub fn element(field: Field, n: usize, terms: &[(usize, Scalar)]) -> Vec<Scalar> {
    let units: Vec<Vec<Scalar>> = terms
        .iter()
        .map(|(b, _)| {
            let mut v = vec![field.zero(); n];
            v[*b] = field.one();
            v
        })
        .collect();
    let pairs: Vec<(Scalar, &[Scalar])> = terms.iter().zip(&units).map(|((_, c), u)| (c.clone(), u.as_slice())).collect();
    combine(field, n, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::Prime(2)
    }

    fn one(f: Field) -> Scalar {
        f.one()
    }

    fn cycle3(f: Field) -> BasedAlgebra {
        let q = QuiverPresentation::new(
            f,
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "1".into()),
            ],
            vec![
                vec![(one(f), vec!["b".into(), "a".into()])],
                vec![(one(f), vec!["c".into(), "b".into()])],
                vec![(one(f), vec!["a".into(), "c".into()])],
            ],
            2,
        )
        .unwrap();
        build_algebra(&q).unwrap()
    }

    #[test]
    fn cycle_with_zero_square_radical() {
        let a = cycle3(f2());
        assert_eq!(a.dim(), 6);
        assert!(a.check_invariants().is_ok());
        assert_eq!(a.loewy_length(), 2);
        let q = a.gabriel_quiver();
        assert_eq!(q[0][1], 1);
        assert_eq!(q[1][0], 0);
    }

    #[test]
    fn single_vertex_is_the_field() {
        let q = QuiverPresentation::new(f2(), vec!["1".into()], vec![], vec![], 2).unwrap();
        let a = build_algebra(&q).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.radical().is_empty());
    }

    #[test]
    fn too_small_bound_is_rejected() {
        let f = f2();
        let q = QuiverPresentation::new(f, vec!["1".into()], vec![("x".into(), "1".into(), "1".into())], vec![], 3).unwrap();
        assert!(matches!(build_algebra(&q), Err(AlgebraError::AdmissibilityFailure(_))));
    }

    #[test]
    fn commutativity_relation() {
        // square 1 -> 2 -> 4, 1 -> 3 -> 4 with ba = dc
        let f = Field::Rationals;
        let q = QuiverPresentation::new(
            f,
            ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("d".into(), "3".into(), "4".into()),
            ],
            vec![vec![
                (f.one(), vec!["b".into(), "a".into()]),
                (f.from_i64(-1), vec!["d".into(), "c".into()]),
            ]],
            3,
        )
        .unwrap();
        let a = build_algebra(&q).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.check_invariants().is_ok());
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let a = cycle3(f2());
        let (q, p) = a.quotient(&[]).unwrap();
        assert_eq!(q.dim(), a.dim());
        assert!(p.is_invertible());
        assert!(q.check_invariants().is_ok());
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let a = cycle3(f2());
        let (q, _) = a.semisimple_quotient().unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.radical().is_empty());
        assert!(q.check_invariants().is_ok());
    }

    #[test]
    fn non_ideal_rejected() {
        let a = cycle3(f2());
        // the span of e_1 alone misses the arrows through vertex 1
        let only = a.quotient(&[a.unit_vec(a.idempotent(0))]);
        assert_eq!(only.err(), Some(AlgebraError::NotAnIdeal));
    }

    #[test]
    fn opposite_is_involutive() {
        let a = cycle3(f2());
        assert_eq!(a.opposite().opposite(), a);
        assert!(a.opposite().check_invariants().is_ok());
    }

    #[test]
    fn presentation_recovers_dimensions() {
        let a = cycle3(Field::Rationals);
        let p = a.presentation().unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(p.generators().len(), 3);
        assert!(p.check_invariants().is_ok());
    }
}
