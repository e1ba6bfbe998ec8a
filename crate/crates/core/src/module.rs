//! Finite-dimensional left modules over a [`BasedAlgebra`].
//!
//! A module stores its basis vertex by vertex (all of `e_1 M`, then `e_2 M`,
//! ...) and the full action matrix of every algebra basis element. Module
//! maps are plain block-diagonal matrices in these bases.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BasedAlgebra;
use crate::linalg::{Field, LinalgError, Matrix, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidAction(String),
    #[error("subspace is not a submodule")]
    NotASubmodule,
    #[error("module is not annihilated by the kernel of the projection")]
    NotAnnihilated,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<BasedAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.actions == other.actions
    }
}

pub fn same_algebra(a: &Arc<BasedAlgebra>, b: &Arc<BasedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    o.push(0);
    for d in dims {
        acc += d;
        o.push(acc);
    }
    o
}

impl Module {
    /// Builds a module from one block matrix per generator (`dims[t] x
    /// dims[s]` for a generator in `e_t A e_s`), checking every relation.
    pub fn from_generators(alg: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: &[Matrix]) -> Result<Module, ModuleError> {
        let field = alg.field();
        if dims.len() != alg.num_vertices() {
            return Err(ModuleError::InvalidAction("dimension vector has the wrong length".into()));
        }
        if blocks.len() != alg.generators().len() {
            return Err(ModuleError::InvalidAction("one matrix per generator is required".into()));
        }
        let off = offsets(&dims);
        let n = off[dims.len()];
        let mut gens = Vec::new();
        for (k, &g) in alg.generators().iter().enumerate() {
            let (t, s) = alg.grading(g);
            let b = &blocks[k];
            if b.field() != field {
                return Err(ModuleError::InvalidAction("field mismatch".into()));
            }
            if b.rows() != dims[t] || b.cols() != dims[s] {
                return Err(ModuleError::InvalidAction(format!(
                    "generator {} needs a {}x{} block, got {}x{}",
                    alg.label(g),
                    dims[t],
                    dims[s],
                    b.rows(),
                    b.cols()
                )));
            }
            let mut full = Matrix::zeros(field, n, n);
            full.set_block(off[t], off[s], b);
            gens.push(full);
        }
        let mut actions = Vec::with_capacity(alg.dim());
        for b in 0..alg.dim() {
            if let Some(v) = alg.idempotents().iter().position(|&e| e == b) {
                actions.push(projector(field, &off, v, n));
                continue;
            }
            let word = alg.word(b);
            let mut m = Matrix::identity(field, n);
            for &g in word {
                m = m.mul(&gens[g]);
            }
            actions.push(m);
        }
        let module = Module { alg, dims, actions };
        module.check_generator_relations()?;
        Ok(module)
    }

    /// Builds a module from full action matrices, checking the whole
    /// multiplication table.
    pub fn from_actions(alg: Arc<BasedAlgebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Module, ModuleError> {
        let m = Module::from_actions_unchecked(alg, dims, actions);
        m.check_all_relations()?;
        Ok(m)
    }

    pub(crate) fn from_actions_unchecked(alg: Arc<BasedAlgebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Module {
        Module { alg, dims, actions }
    }

    fn check_generator_relations(&self) -> Result<(), ModuleError> {
        for &g in self.alg.generators() {
            for b in 0..self.alg.dim() {
                self.check_product(g, b)?;
            }
        }
        Ok(())
    }

    fn check_all_relations(&self) -> Result<(), ModuleError> {
        let n = self.dim();
        let off = offsets(&self.dims);
        for (v, &e) in self.alg.idempotents().iter().enumerate() {
            if self.actions[e] != projector(self.field(), &off, v, n) {
                return Err(ModuleError::InvalidAction("idempotent does not act as a block projector".into()));
            }
        }
        for a in 0..self.alg.dim() {
            for b in 0..self.alg.dim() {
                self.check_product(a, b)?;
            }
        }
        Ok(())
    }

    fn check_product(&self, a: usize, b: usize) -> Result<(), ModuleError> {
        let lhs = self.actions[a].mul(&self.actions[b]);
        let rhs = self.act_terms(self.alg.product(a, b));
        if lhs != rhs {
            return Err(ModuleError::InvalidAction(format!(
                "action does not respect {} * {}",
                self.alg.label(a),
                self.alg.label(b)
            )));
        }
        Ok(())
    }

    fn act_terms(&self, terms: &[(usize, Scalar)]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (k, c) in terms {
            m = m.add(&self.actions[*k].scale(c));
        }
        m
    }

    pub fn zero(alg: Arc<BasedAlgebra>) -> Module {
        let field = alg.field();
        let nv = alg.num_vertices();
        let actions = (0..alg.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Module {
            alg,
            dims: vec![0; nv],
            actions,
        }
    }

    /// Module with basis indexed by `(vertex, key)` pairs and action given
    /// by `act(a, col) -> [(row, coeff)]`.
    fn from_rule<F>(alg: Arc<BasedAlgebra>, cells: Vec<Vec<usize>>, act: F) -> Module
    where
        F: Fn(usize, usize) -> Vec<(usize, Scalar)>,
    {
        let field = alg.field();
        let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
        let keys: Vec<usize> = cells.into_iter().flatten().collect();
        let n = keys.len();
        let pos = |key: usize| keys.iter().position(|&k| k == key);
        let mut actions = Vec::with_capacity(alg.dim());
        for a in 0..alg.dim() {
            let mut m = Matrix::zeros(field, n, n);
            for (c, &key) in keys.iter().enumerate() {
                for (row_key, x) in act(a, key) {
                    let r = pos(row_key).expect("action stays inside the module");
                    let y = m.get(r, c).add(&x);
                    m.set(r, c, y);
                }
            }
            actions.push(m);
        }
        Module { alg, dims, actions }
    }

    /// `P(v) = A e_v`.
    pub fn projective(alg: &Arc<BasedAlgebra>, v: usize) -> Module {
        let cells: Vec<Vec<usize>> = (0..alg.num_vertices()).map(|k| alg.block_basis(k, v)).collect();
        let a2 = alg.clone();
        Module::from_rule(alg.clone(), cells, move |a, b| a2.product(a, b).to_vec())
    }

    /// `I(v) = D(e_v A)`; the dual basis vector of `b` in `e_v A e_k` sits at vertex `k`.
    pub fn injective(alg: &Arc<BasedAlgebra>, v: usize) -> Module {
        let cells: Vec<Vec<usize>> = (0..alg.num_vertices()).map(|k| alg.block_basis(v, k)).collect();
        let a2 = alg.clone();
        let right: Vec<usize> = (0..alg.num_vertices()).flat_map(|k| alg.block_basis(v, k)).collect();
        Module::from_rule(alg.clone(), cells, move |a, c| {
            // (a . delta_c)(x) = delta_c(x a): coefficient on delta_b is [c](b a)
            right
                .iter()
                .filter_map(|&b| a2.product(b, a).iter().find(|(k, _)| *k == c).map(|(_, x)| (b, x.clone())))
                .collect()
        })
    }

    pub fn simple(alg: &Arc<BasedAlgebra>, v: usize) -> Module {
        let field = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let actions = (0..alg.dim())
            .map(|b| {
                if b == alg.idempotent(v) {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, 1, 1)
                }
            })
            .collect();
        Module {
            alg: alg.clone(),
            dims,
            actions,
        }
    }

    pub fn regular(alg: &Arc<BasedAlgebra>) -> Module {
        let cells: Vec<Vec<usize>> = (0..alg.num_vertices())
            .map(|k| (0..alg.dim()).filter(|&b| alg.grading(b).0 == k).collect())
            .collect();
        let a2 = alg.clone();
        Module::from_rule(alg.clone(), cells, move |a, b| a2.product(a, b).to_vec())
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// Basis indices belonging to vertex `v`.
    pub fn vertex_range(&self, v: usize) -> std::ops::Range<usize> {
        let o = self.offset(v);
        o..o + self.dims[v]
    }

    pub fn vertex_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (v, d) in self.dims.iter().enumerate() {
            acc += d;
            if i < acc {
                return v;
            }
        }
        panic!("basis index out of range")
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of an algebra element given by coordinates.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let terms: Vec<(usize, Scalar)> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b, c.clone()))
            .collect();
        self.act_terms(&terms)
    }

    /// Block of the action of basis element `b` in `e_t A e_s`, as a map `M_s -> M_t`.
    pub fn action_block(&self, b: usize) -> Matrix {
        let (t, s) = self.alg.grading(b);
        self.actions[b].block(self.offset(t), self.dims[t], self.offset(s), self.dims[s])
    }

    pub fn generator_blocks(&self) -> Vec<Matrix> {
        self.alg.generators().iter().map(|&g| self.action_block(g)).collect()
    }

    pub fn is_sincere(&self) -> bool {
        self.dims.iter().all(|&d| d > 0)
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// The same module over another (structurally equal) algebra handle.
    pub fn with_algebra(&self, alg: Arc<BasedAlgebra>) -> Module {
        Module {
            alg,
            dims: self.dims.clone(),
            actions: self.actions.clone(),
        }
    }

    fn check_same(&self, other: &Module) -> Result<(), ModuleError> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(ModuleError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Checks that `f: self -> n` is a module map.
    pub fn is_homomorphism(&self, n: &Module, f: &Matrix) -> bool {
        if f.rows() != n.dim() || f.cols() != self.dim() {
            return false;
        }
        self.alg
            .generators()
            .iter()
            .chain(self.alg.idempotents())
            .all(|&g| n.actions[g].mul(f) == f.mul(&self.actions[g]))
    }

    /// Basis of the `e_v`-component of `self`: rows of `x` restricted to vertex `v`.
    pub fn component(&self, x: &[Scalar], v: usize) -> Vec<Scalar> {
        let r = self.vertex_range(v);
        x.iter()
            .enumerate()
            .map(|(i, s)| if r.contains(&i) { s.clone() } else { self.field().zero() })
            .collect()
    }

    /// Graded span of the given vectors: per-vertex RREF basis of their components.
    fn graded_span(&self, vecs: &[Vec<Scalar>]) -> Vec<Vec<Vec<Scalar>>> {
        let field = self.field();
        (0..self.dims.len())
            .map(|v| {
                let r = self.vertex_range(v);
                let rows: Vec<Vec<Scalar>> = vecs
                    .iter()
                    .map(|x| x[r.clone()].to_vec())
                    .filter(|x| x.iter().any(|s| !s.is_zero()))
                    .collect();
                if rows.is_empty() {
                    return vec![];
                }
                let m = Matrix::from_rows(field, rows, self.dims[v]);
                let (rr, piv) = m.rref();
                (0..piv.len()).map(|i| rr.row(i).to_vec()).collect()
            })
            .collect()
    }

    /// The submodule spanned by the graded components of `vecs`, with its
    /// inclusion. Fails if that span is not closed under the action.
    pub fn submodule(&self, vecs: &[Vec<Scalar>]) -> Result<(Module, Matrix), ModuleError> {
        let field = self.field();
        let n = self.dim();
        let span = self.graded_span(vecs);
        let dims: Vec<usize> = span.iter().map(Vec::len).collect();
        let mut cols = Vec::new();
        for (v, blk) in span.iter().enumerate() {
            let o = self.offset(v);
            for x in blk {
                let mut full = vec![field.zero(); n];
                for (i, s) in x.iter().enumerate() {
                    full[o + i] = s.clone();
                }
                cols.push(full);
            }
        }
        let u = Matrix::from_columns(field, n, &cols);
        let linv = left_inverse(&u);
        let mut actions = Vec::with_capacity(self.alg.dim());
        for a in &self.actions {
            let au = a.mul(&u);
            let c = linv.mul(&au);
            if u.mul(&c) != au {
                return Err(ModuleError::NotASubmodule);
            }
            actions.push(c);
        }
        Ok((
            Module {
                alg: self.alg.clone(),
                dims,
                actions,
            },
            u,
        ))
    }

    /// `self / U` for the submodule spanned by `vecs`, with the projection.
    pub fn quotient(&self, vecs: &[Vec<Scalar>]) -> Result<(Module, Matrix), ModuleError> {
        let field = self.field();
        let n = self.dim();
        let (_, u) = self.submodule(vecs)?;
        // standard basis vectors completing U, vertex by vertex
        let comp = u.complement_indices();
        let e = Matrix::from_columns(
            field,
            n,
            &comp
                .iter()
                .map(|&i| {
                    let mut x = vec![field.zero(); n];
                    x[i] = field.one();
                    x
                })
                .collect::<Vec<_>>(),
        );
        let full = u.hstack(&e);
        let inv = full.inverse().expect("submodule plus complement spans");
        let proj = inv.block(u.cols(), comp.len(), 0, n);
        let mut dims = vec![0; self.dims.len()];
        for &i in &comp {
            dims[self.vertex_of(i)] += 1;
        }
        let actions = self.actions.iter().map(|a| proj.mul(&a.mul(&e))).collect();
        Ok((
            Module {
                alg: self.alg.clone(),
                dims,
                actions,
            },
            proj,
        ))
    }

    pub fn radical_vectors(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for &r in self.alg.generators() {
            out.extend(self.actions[r].columns());
        }
        out
    }

    /// `rad M` with its inclusion.
    pub fn radical(&self) -> (Module, Matrix) {
        self.submodule(&self.radical_vectors()).expect("radical is a submodule")
    }

    /// `M / rad M` with the projection.
    pub fn top(&self) -> (Module, Matrix) {
        self.quotient(&self.radical_vectors()).expect("radical is a submodule")
    }

    /// Socle: common kernel of the generator actions.
    pub fn socle(&self) -> (Module, Matrix) {
        let field = self.field();
        let n = self.dim();
        let mut stacked = Matrix::zeros(field, 0, n);
        for &g in self.alg.generators() {
            stacked = stacked.vstack(&self.actions[g]);
        }
        let k = stacked.nullspace();
        self.submodule(&k.columns()).expect("socle is a submodule")
    }

    /// Kernel of `f: self -> n`.
    pub fn kernel(&self, f: &Matrix) -> (Module, Matrix) {
        let k = f.nullspace();
        self.submodule(&k.columns()).expect("kernel of a module map")
    }

    /// Image of `f: self -> n` inside `n`.
    pub fn image(&self, n: &Module, f: &Matrix) -> (Module, Matrix) {
        n.submodule(&f.columns()).expect("image of a module map")
    }

    /// Cokernel of `f: self -> n`.
    pub fn cokernel(&self, n: &Module, f: &Matrix) -> (Module, Matrix) {
        n.quotient(&f.columns()).expect("image of a module map")
    }

    /// Action matrices of the dual module `D M` over the opposite algebra.
    pub fn dual_over(&self, op: Arc<BasedAlgebra>) -> Module {
        Module {
            alg: op,
            dims: self.dims.clone(),
            actions: self.actions.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn dual(&self) -> Module {
        self.dual_over(Arc::new(self.alg.opposite()))
    }

    /// Basis of `{a : a M = 0}` as coordinate vectors in the algebra.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let cols: Vec<Vec<Scalar>> = self.actions.iter().map(|a| a.vectorize()).collect();
        let n2 = self.dim() * self.dim();
        let m = Matrix::from_columns(field, n2, &cols);
        m.nullspace().columns()
    }

    /// Restriction along a surjection `A -> B` whose kernel annihilates `self`;
    /// `proj` is `dim B x dim A`.
    pub fn restrict(&self, target: &Arc<BasedAlgebra>, proj: &Matrix) -> Result<Module, ModuleError> {
        let field = self.field();
        for k in proj.nullspace().columns() {
            if !self.act(&k).is_zero() {
                return Err(ModuleError::NotAnnihilated);
            }
        }
        let mut dims = vec![0; target.num_vertices()];
        for (v, label) in self.alg.vertex_labels().iter().enumerate() {
            match target.vertex_index(label) {
                Some(u) => dims[u] = self.dims[v],
                None if self.dims[v] == 0 => {}
                None => return Err(ModuleError::NotAnnihilated),
            }
        }
        let mut actions = Vec::with_capacity(target.dim());
        for g in 0..target.dim() {
            let mut rhs = vec![field.zero(); target.dim()];
            rhs[g] = field.one();
            let pre = proj
                .solve(&Matrix::from_columns(field, target.dim(), &[rhs]))?
                .ok_or(ModuleError::NotAnnihilated)?;
            actions.push(self.act(&pre.column(0)));
        }
        Module::from_actions(target.clone(), dims, actions)
    }

    /// Direct sum with inclusions and projections; the basis stays vertex-major.
    pub fn direct_sum(parts: &[Module]) -> DirectSum {
        let alg = parts.first().expect("at least one summand").alg.clone();
        let field = alg.field();
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let n: usize = dims.iter().sum();
        // position of (part k, local index i) in the sum
        let mut place: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.dim()]).collect();
        let mut next = 0;
        for v in 0..nv {
            for (k, p) in parts.iter().enumerate() {
                for i in p.vertex_range(v) {
                    place[k][i] = next;
                    next += 1;
                }
            }
        }
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let mut inc = Matrix::zeros(field, n, p.dim());
            for i in 0..p.dim() {
                inc.set(place[k][i], i, field.one());
            }
            projections.push(inc.transpose());
            inclusions.push(inc);
        }
        let actions = (0..alg.dim())
            .map(|b| {
                let mut m = Matrix::zeros(field, n, n);
                for (k, p) in parts.iter().enumerate() {
                    m = m.add(&inclusions[k].mul(&p.actions[b]).mul(&projections[k]));
                }
                m
            })
            .collect();
        DirectSum {
            module: Module { alg, dims, actions },
            inclusions,
            projections,
        }
    }

    pub fn power(&self, r: usize) -> Module {
        if r == 0 {
            return Module::zero(self.alg.clone());
        }
        Module::direct_sum(&vec![self.clone(); r]).module
    }

    /// Basis of `Hom(self, n)` as block-diagonal matrices.
    pub fn hom(&self, n: &Module) -> Result<Vec<Matrix>, ModuleError> {
        self.check_same(n)?;
        Ok(hom_basis(self, n))
    }

    pub fn hom_dim(&self, n: &Module) -> usize {
        hom_basis(self, n).len()
    }
}

pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<Matrix>,
    pub projections: Vec<Matrix>,
}

fn projector(field: Field, off: &[usize], v: usize, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in off[v]..off[v + 1] {
        m.set(i, i, field.one());
    }
    m
}

/// A left inverse of a matrix with independent columns.
pub fn left_inverse(u: &Matrix) -> Matrix {
    let field = u.field();
    if u.cols() == 0 {
        return Matrix::zeros(field, 0, u.rows());
    }
    let (_, rows) = u.transpose().rref();
    let all: Vec<usize> = (0..u.cols()).collect();
    let sq = u.select(&rows, &all);
    let inv = sq.inverse().expect("independent columns");
    let mut l = Matrix::zeros(field, u.cols(), u.rows());
    for (k, &r) in rows.iter().enumerate() {
        for i in 0..u.cols() {
            l.set(i, r, inv.get(i, k).clone());
        }
    }
    l
}

fn hom_basis(m: &Module, n: &Module) -> Vec<Matrix> {
    let alg = m.algebra();
    let field = m.field();
    let nv = alg.num_vertices();
    // variable offsets: f_v is n_v x m_v, row-major
    let mut voff = vec![0; nv + 1];
    for v in 0..nv {
        voff[v + 1] = voff[v] + n.dims[v] * m.dims[v];
    }
    let nvars = voff[nv];
    if nvars == 0 {
        return vec![];
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in alg.generators() {
        let (t, s) = alg.grading(g);
        let ng = n.action_block(g);
        let mg = m.action_block(g);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![field.zero(); nvars];
                // (N_g f_s)[r][c] = sum_k N_g[r][k] f_s[k][c]
                for k in 0..n.dims[s] {
                    let x = ng.get(r, k);
                    if !x.is_zero() {
                        let idx = voff[s] + k * m.dims[s] + c;
                        row[idx] = row[idx].add(x);
                    }
                }
                // - (f_t M_g)[r][c] = - sum_k f_t[r][k] M_g[k][c]
                for k in 0..m.dims[t] {
                    let x = mg.get(k, c);
                    if !x.is_zero() {
                        let idx = voff[t] + r * m.dims[t] + k;
                        row[idx] = row[idx].sub(x);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        Matrix::identity(field, nvars)
    } else {
        Matrix::from_rows(field, rows, nvars).nullspace()
    };
    (0..sol.cols())
        .map(|j| {
            let mut f = Matrix::zeros(field, n.dim(), m.dim());
            for v in 0..nv {
                let (ro, co) = (n.offset(v), m.offset(v));
                for r in 0..n.dims[v] {
                    for c in 0..m.dims[v] {
                        f.set(ro + r, co + c, sol.get(voff[v] + r * m.dims[v] + c, j).clone());
                    }
                }
            }
            f
        })
        .collect()
}

/// Rank of a family of equally-shaped matrices viewed as vectors.
pub fn span_rank(field: Field, maps: &[Matrix]) -> usize {
    if maps.is_empty() {
        return 0;
    }
    let len = maps[0].rows() * maps[0].cols();
    if len == 0 {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = maps.iter().map(Matrix::vectorize).collect();
    Matrix::from_rows(field, rows, len).rank()
}

/// Is `target` in the span of `maps` (all the same shape)?
pub fn in_span(field: Field, maps: &[Matrix], target: &Matrix) -> bool {
    let len = target.rows() * target.cols();
    if len == 0 || target.is_zero() {
        return true;
    }
    if maps.is_empty() {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = maps.iter().map(Matrix::vectorize).collect();
    let a = Matrix::from_columns(field, len, &cols);
    let b = Matrix::from_columns(field, len, &[target.vectorize()]);
    a.solve(&b).map(|x| x.is_some()).unwrap_or(false)
}

/// An approximation by direct sums of copies of fixed modules.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// which entry of the summand list each copy is
    pub copies: Vec<usize>,
    /// the assembled object
    pub object: Module,
    /// the map (into `X` for right approximations, out of `X` for left ones)
    pub map: Matrix,
}

/// Minimal right `add(summands)`-approximation `p: Q -> x`.
pub fn right_approximation(summands: &[Module], x: &Module) -> Approximation {
    let field = x.field();
    let targets: Vec<Vec<Matrix>> = summands.iter().map(|s| hom_basis(s, x)).collect();
    let mut pieces: Vec<(usize, Matrix)> = Vec::new();
    for (k, hs) in targets.iter().enumerate() {
        for h in hs {
            pieces.push((k, h.clone()));
        }
    }
    let inner: Vec<Vec<Vec<Matrix>>> = summands
        .iter()
        .map(|a| summands.iter().map(|b| hom_basis(a, b)).collect())
        .collect();
    // drop copies while every map from every summand still factors
    let factors_all = |keep: &[(usize, Matrix)]| -> bool {
        summands.iter().enumerate().all(|(j, _)| {
            let mut img = Vec::new();
            for (k, p) in keep {
                for phi in &inner[j][*k] {
                    img.push(p.mul(phi));
                }
            }
            span_rank(field, &img) == targets[j].len()
        })
    };
    let mut i = 0;
    while i < pieces.len() {
        let mut trial = pieces.clone();
        trial.remove(i);
        if factors_all(&trial) {
            pieces = trial;
        } else {
            i += 1;
        }
    }
    assemble_right(summands, x, &pieces)
}

fn assemble_right(summands: &[Module], x: &Module, pieces: &[(usize, Matrix)]) -> Approximation {
    if pieces.is_empty() {
        return Approximation {
            copies: vec![],
            object: Module::zero(x.algebra().clone()),
            map: Matrix::zeros(x.field(), x.dim(), 0),
        };
    }
    let parts: Vec<Module> = pieces.iter().map(|(k, _)| summands[*k].clone()).collect();
    let ds = Module::direct_sum(&parts);
    let mut map = Matrix::zeros(x.field(), x.dim(), ds.module.dim());
    for (i, (_, p)) in pieces.iter().enumerate() {
        map = map.add(&p.mul(&ds.projections[i]));
    }
    Approximation {
        copies: pieces.iter().map(|(k, _)| *k).collect(),
        object: ds.module,
        map,
    }
}

/// Minimal left `add(summands)`-approximation `f: x -> Q`.
pub fn left_approximation(summands: &[Module], x: &Module) -> Approximation {
    let field = x.field();
    let sources: Vec<Vec<Matrix>> = summands.iter().map(|s| hom_basis(x, s)).collect();
    let mut pieces: Vec<(usize, Matrix)> = Vec::new();
    for (k, hs) in sources.iter().enumerate() {
        for h in hs {
            pieces.push((k, h.clone()));
        }
    }
    let inner: Vec<Vec<Vec<Matrix>>> = summands
        .iter()
        .map(|a| summands.iter().map(|b| hom_basis(a, b)).collect())
        .collect();
    let factors_all = |keep: &[(usize, Matrix)]| -> bool {
        summands.iter().enumerate().all(|(j, _)| {
            let mut img = Vec::new();
            for (k, f) in keep {
                for phi in &inner[*k][j] {
                    img.push(phi.mul(f));
                }
            }
            span_rank(field, &img) == sources[j].len()
        })
    };
    let mut i = 0;
    while i < pieces.len() {
        let mut trial = pieces.clone();
        trial.remove(i);
        if factors_all(&trial) {
            pieces = trial;
        } else {
            i += 1;
        }
    }
    if pieces.is_empty() {
        return Approximation {
            copies: vec![],
            object: Module::zero(x.algebra().clone()),
            map: Matrix::zeros(field, 0, x.dim()),
        };
    }
    let parts: Vec<Module> = pieces.iter().map(|(k, _)| summands[*k].clone()).collect();
    let ds = Module::direct_sum(&parts);
    let mut map = Matrix::zeros(field, ds.module.dim(), x.dim());
    for (i, (_, f)) in pieces.iter().enumerate() {
        map = map.add(&ds.inclusions[i].mul(f));
    }
    Approximation {
        copies: pieces.iter().map(|(k, _)| *k).collect(),
        object: ds.module,
        map,
    }
}

/// `p: M^r -> X` assembled from the whole hom basis.
pub fn trace_precover(m: &Module, x: &Module) -> Approximation {
    let pieces: Vec<(usize, Matrix)> = hom_basis(m, x).into_iter().map(|h| (0, h)).collect();
    assemble_right(std::slice::from_ref(m), x, &pieces)
}

/// Does `f: a -> b` have a left inverse that is a module map?
pub fn is_split_mono(a: &Module, b: &Module, f: &Matrix) -> bool {
    if a.is_zero() {
        return true;
    }
    let back = hom_basis(b, a);
    let comps: Vec<Matrix> = back.iter().map(|g| g.mul(f)).collect();
    in_span(a.field(), &comps, &a.identity())
}

/// Does `g: b -> a` have a right inverse that is a module map?
pub fn is_split_epi(b: &Module, a: &Module, g: &Matrix) -> bool {
    if a.is_zero() {
        return true;
    }
    let back = hom_basis(a, b);
    let comps: Vec<Matrix> = back.iter().map(|s| g.mul(s)).collect();
    in_span(a.field(), &comps, &a.identity())
}

/// Is `x` a direct summand of a finite sum of the given modules?
pub fn in_add(summands: &[Module], x: &Module) -> bool {
    let f = left_approximation(summands, x);
    is_split_mono(x, &f.object, &f.map)
}

/// Outcome of the stagewise `gen_n` chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenChain {
    /// all `n` stages were surjective
    Complete,
    /// the approximation at this (1-based) stage was not onto
    StoppedAt(usize),
}

/// `X_1 = x`, `X_{i+1} = ker(p_i)` with `p_i` a minimal right
/// `add(summands)`-approximation; every `p_i` for `i <= n` must be onto.
pub fn gen_chain(summands: &[Module], x: &Module, n: usize) -> GenChain {
    let mut cur = x.clone();
    for stage in 1..=n {
        if cur.is_zero() {
            return GenChain::Complete;
        }
        let p = right_approximation(summands, &cur);
        if p.map.rank() < cur.dim() {
            return GenChain::StoppedAt(stage);
        }
        cur = p.object.kernel(&p.map).0;
    }
    GenChain::Complete
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverPresentation};

    fn cycle3(f: Field) -> Arc<BasedAlgebra> {
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

    #[test]
    fn projective_dimension_vectors() {
        let a = cycle3(Field::Prime(2));
        assert_eq!(Module::projective(&a, 0).dims(), &[1, 1, 0]);
        assert_eq!(Module::injective(&a, 0).dims(), &[1, 0, 1]);
        let total: usize = (0..3).map(|v| Module::projective(&a, v).dim()).sum();
        assert_eq!(total, a.dim());
    }

    #[test]
    fn hom_from_projective_reads_dimension() {
        let a = cycle3(Field::Rationals);
        let x = Module::regular(&a);
        for v in 0..3 {
            assert_eq!(Module::projective(&a, v).hom_dim(&x), x.dims()[v]);
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let a = cycle3(Field::Prime(2));
        let p = Module::projective(&a, 0);
        assert!(p.kernel(&p.identity()).0.is_zero());
    }

    #[test]
    fn top_and_radical_of_projective() {
        let a = cycle3(Field::Prime(2));
        let p = Module::projective(&a, 0);
        let (top, _) = p.top();
        assert_eq!(top.dims(), &[1, 0, 0]);
        let (rad, _) = p.radical();
        assert_eq!(rad.dims(), &[0, 1, 0]);
    }

    #[test]
    fn annihilator_of_regular_is_zero() {
        let a = cycle3(Field::Prime(3));
        assert!(Module::regular(&a).annihilator().is_empty());
        assert_eq!(Module::simple(&a, 0).annihilator().len(), 5);
    }

    #[test]
    fn bad_generator_matrices_rejected() {
        let f = Field::Prime(2);
        let a = cycle3(f);
        let one = Matrix::identity(f, 1);
        // a and b both nonzero on a module with support everywhere violates ba = 0
        let r = Module::from_generators(a, vec![1, 1, 1], &[one.clone(), one.clone(), Matrix::zeros(f, 1, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn dual_twice_is_original() {
        let a = cycle3(Field::Prime(2));
        let p = Module::projective(&a, 1);
        let op = Arc::new(a.opposite());
        let dd = p.dual_over(op).dual_over(a.clone());
        assert_eq!(dd, p);
    }
}
