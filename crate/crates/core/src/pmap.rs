//! Maps between finite direct sums of indecomposable projectives.
//!
//! A summand is named by its vertex `v` (standing for `P(v) = A e_v`). A map
//! `P(s) -> P(t)` is right multiplication by an element of `e_s A e_t`, so a
//! map between sums is a matrix of such elements: `blocks[t][s]` goes from
//! source summand `s` to target summand `t`.

use std::sync::Arc;

use crate::algebra::BasedAlgebra;
use crate::linalg::{Matrix, Scalar};
use crate::module::Module;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMap {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub blocks: Vec<Vec<Vec<Scalar>>>,
}

impl PMap {
    pub fn zero(alg: &BasedAlgebra, src: &[usize], tgt: &[usize]) -> PMap {
        PMap {
            src: src.to_vec(),
            tgt: tgt.to_vec(),
            blocks: vec![vec![alg.zero_vec(); src.len()]; tgt.len()],
        }
    }

    pub fn identity(alg: &BasedAlgebra, terms: &[usize]) -> PMap {
        let mut m = PMap::zero(alg, terms, terms);
        for (k, &v) in terms.iter().enumerate() {
            m.blocks[k][k] = alg.unit_vec(alg.idempotent(v));
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(Scalar::is_zero)
    }

    /// `g ∘ self`.
    pub fn then(&self, alg: &BasedAlgebra, g: &PMap) -> PMap {
        assert_eq!(self.tgt, g.src, "composable maps");
        let mut out = PMap::zero(alg, &self.src, &g.tgt);
        for u in 0..g.tgt.len() {
            for s in 0..self.src.len() {
                let mut acc = alg.zero_vec();
                for t in 0..self.tgt.len() {
                    let f = &self.blocks[t][s];
                    let h = &g.blocks[u][t];
                    if f.iter().all(Scalar::is_zero) || h.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let p = alg.mul(f, h);
                    for (a, b) in acc.iter_mut().zip(&p) {
                        *a = a.add(b);
                    }
                }
                out.blocks[u][s] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &PMap) -> PMap {
        assert_eq!((&self.src, &self.tgt), (&o.src, &o.tgt));
        let blocks = self
            .blocks
            .iter()
            .zip(&o.blocks)
            .map(|(r1, r2)| {
                r1.iter()
                    .zip(r2)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                    .collect()
            })
            .collect();
        PMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks,
        }
    }

    pub fn scale(&self, c: &Scalar) -> PMap {
        let blocks = self
            .blocks
            .iter()
            .map(|r| r.iter().map(|a| a.iter().map(|x| x.mul(c)).collect()).collect())
            .collect();
        PMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks,
        }
    }

    pub fn neg(&self) -> PMap {
        let f = self
            .blocks
            .first()
            .and_then(|r| r.first())
            .and_then(|b| b.first())
            .map(Scalar::field);
        match f {
            Some(f) => self.scale(&f.from_i64(-1)),
            None => self.clone(),
        }
    }

    /// Sub-map on chosen target rows and source columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMap {
        PMap {
            src: cols.iter().map(|&c| self.src[c]).collect(),
            tgt: rows.iter().map(|&r| self.tgt[r]).collect(),
            blocks: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| self.blocks[r][c].clone()).collect())
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]` with sources `(a.src ++ b.src)` and
    /// targets `(a.tgt ++ c.tgt)`.
    pub fn block2(a: &PMap, b: &PMap, c: &PMap, d: &PMap) -> PMap {
        let mut src = a.src.clone();
        src.extend(&b.src);
        let mut tgt = a.tgt.clone();
        tgt.extend(&c.tgt);
        let mut blocks = Vec::new();
        for r in 0..a.tgt.len() {
            let mut row = a.blocks[r].clone();
            row.extend(b.blocks[r].iter().cloned());
            blocks.push(row);
        }
        for r in 0..c.tgt.len() {
            let mut row = c.blocks[r].clone();
            row.extend(d.blocks[r].iter().cloned());
            blocks.push(row);
        }
        PMap { src, tgt, blocks }
    }

    /// True when every block lies in the radical.
    pub fn is_radical(&self, alg: &BasedAlgebra) -> bool {
        self.blocks
            .iter()
            .flatten()
            .all(|x| alg.idempotents().iter().all(|&e| x[e].is_zero()))
    }

    /// Checks that every block lies in the right corner `e_s A e_t`.
    pub fn is_graded(&self, alg: &BasedAlgebra) -> bool {
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                for (b, c) in x.iter().enumerate() {
                    if !c.is_zero() && alg.grading(b) != (self.src[s], self.tgt[t]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coordinates of all blocks, concatenated (for span computations).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flatten().flatten().cloned().collect()
    }

    /// The transposed data of a map between sums over the opposite algebra:
    /// `Hom(P(s), P(t))` over `A` corresponds to `Hom(P(t), P(s))` over `A^op`.
    pub fn transpose(&self) -> PMap {
        let blocks = (0..self.src.len())
            .map(|s| (0..self.tgt.len()).map(|t| self.blocks[t][s].clone()).collect())
            .collect();
        PMap {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            blocks,
        }
    }
}

/// `P(v_1) ⊕ ... ⊕ P(v_r)` realized as a module.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub terms: Vec<usize>,
    pub module: Module,
    pub inclusions: Vec<Matrix>,
    pub projections: Vec<Matrix>,
    /// algebra basis indices spanning `P(v)`, in module basis order
    local: Vec<Vec<usize>>,
    /// `place[k][i]`: module basis position of local cell `i` of summand `k`
    place: Vec<Vec<usize>>,
}

fn projective_cells(alg: &BasedAlgebra, v: usize) -> Vec<usize> {
    (0..alg.num_vertices()).flat_map(|k| alg.block_basis(k, v)).collect()
}

fn injective_cells(alg: &BasedAlgebra, v: usize) -> Vec<usize> {
    (0..alg.num_vertices()).flat_map(|k| alg.block_basis(v, k)).collect()
}

impl ProjSum {
    pub fn new(alg: &Arc<BasedAlgebra>, terms: &[usize]) -> ProjSum {
        let local: Vec<Vec<usize>> = (0..alg.num_vertices()).map(|v| projective_cells(alg, v)).collect();
        if terms.is_empty() {
            return ProjSum {
                terms: vec![],
                module: Module::zero(alg.clone()),
                inclusions: vec![],
                projections: vec![],
                local,
                place: vec![],
            };
        }
        let parts: Vec<Module> = terms.iter().map(|&v| Module::projective(alg, v)).collect();
        let ds = Module::direct_sum(&parts);
        let place = ds.inclusions.iter().map(placement).collect();
        ProjSum {
            terms: terms.to_vec(),
            module: ds.module,
            inclusions: ds.inclusions,
            projections: ds.projections,
            local,
            place,
        }
    }

    /// Module basis position of the algebra cell `b` of summand `k`.
    pub fn position(&self, k: usize, b: usize) -> usize {
        let i = self.local[self.terms[k]].iter().position(|&c| c == b).expect("cell of P(v)");
        self.place[k][i]
    }

    /// Algebra cells of summand `k`, in local order.
    pub fn cells(&self, k: usize) -> &[usize] {
        &self.local[self.terms[k]]
    }

    pub fn alg(&self) -> &Arc<BasedAlgebra> {
        self.module.algebra()
    }

    /// Module coordinates of the algebra element `x ∈ A e_v` placed in summand `k`.
    pub fn embed(&self, k: usize, x: &[Scalar]) -> Vec<Scalar> {
        let v = self.terms[k];
        let loc: Vec<Scalar> = self.local[v].iter().map(|&b| x[b].clone()).collect();
        let col = Matrix::from_columns(self.module.field(), loc.len(), &[loc]);
        self.inclusions[k].mul(&col).column(0)
    }

    /// Algebra coordinates of the summand-`k` component of a module vector.
    pub fn component(&self, k: usize, y: &[Scalar]) -> Vec<Scalar> {
        let alg = self.alg();
        let col = Matrix::from_columns(self.module.field(), y.len(), &[y.to_vec()]);
        let loc = self.projections[k].mul(&col).column(0);
        let mut x = alg.zero_vec();
        for (i, &b) in self.local[self.terms[k]].iter().enumerate() {
            x[b] = loc[i].clone();
        }
        x
    }

    /// Module coordinates of the generator `e_v` of summand `k`.
    pub fn generator(&self, k: usize) -> Vec<Scalar> {
        let alg = self.alg();
        self.embed(k, &alg.unit_vec(alg.idempotent(self.terms[k])))
    }

    /// The module map of `f: self -> tgt`.
    pub fn matrix_of(&self, f: &PMap, tgt: &ProjSum) -> Matrix {
        let alg = self.alg();
        let field = alg.field();
        let mut m = Matrix::zeros(field, tgt.module.dim(), self.module.dim());
        for k in 0..self.terms.len() {
            for (i, &b) in self.local[self.terms[k]].iter().enumerate() {
                let col = self.place[k][i];
                for t in 0..tgt.terms.len() {
                    let c = &f.blocks[t][k];
                    if c.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let img = alg.mul(&alg.unit_vec(b), c);
                    for (j, &bt) in tgt.local[tgt.terms[t]].iter().enumerate() {
                        if !img[bt].is_zero() {
                            let r = tgt.place[t][j];
                            let y = m.get(r, col).add(&img[bt]);
                            m.set(r, col, y);
                        }
                    }
                }
            }
        }
        m
    }

    /// The map `self -> tgt` sending generator `k` to the module vector `images[k]`,
    /// read back as blocks.
    pub fn pmap_from_images(&self, images: &[Vec<Scalar>], tgt: &ProjSum) -> PMap {
        let alg = self.alg();
        let mut f = PMap::zero(alg, &self.terms, &tgt.terms);
        for (k, y) in images.iter().enumerate() {
            for t in 0..tgt.terms.len() {
                f.blocks[t][k] = tgt.component(t, y);
            }
        }
        f
    }
}

fn placement(inc: &Matrix) -> Vec<usize> {
    (0..inc.cols())
        .map(|i| (0..inc.rows()).find(|&r| !inc.get(r, i).is_zero()).expect("inclusion column"))
        .collect()
}

/// `I(v_1) ⊕ ... ⊕ I(v_r)` realized as a module, for the Nakayama functor.
#[derive(Clone, Debug)]
pub struct InjSum {
    pub terms: Vec<usize>,
    pub module: Module,
    inclusions: Vec<Matrix>,
    local: Vec<Vec<usize>>,
}

impl InjSum {
    pub fn new(alg: &Arc<BasedAlgebra>, terms: &[usize]) -> InjSum {
        let local: Vec<Vec<usize>> = (0..alg.num_vertices()).map(|v| injective_cells(alg, v)).collect();
        if terms.is_empty() {
            return InjSum {
                terms: vec![],
                module: Module::zero(alg.clone()),
                inclusions: vec![],
                local,
            };
        }
        let parts: Vec<Module> = terms.iter().map(|&v| Module::injective(alg, v)).collect();
        let ds = Module::direct_sum(&parts);
        InjSum {
            terms: terms.to_vec(),
            module: ds.module,
            inclusions: ds.inclusions,
            local,
        }
    }

    /// `ν(f)`: on a block `c ∈ e_s A e_t`, `δ_{b'} ↦ Σ_b [b'](c b) δ_b`.
    pub fn nakayama(&self, f: &PMap, tgt: &InjSum) -> Matrix {
        let alg = self.module.algebra();
        let field = alg.field();
        let mut m = Matrix::zeros(field, tgt.module.dim(), self.module.dim());
        for s in 0..self.terms.len() {
            let src_cells = &self.local[self.terms[s]];
            for t in 0..tgt.terms.len() {
                let c = &f.blocks[t][s];
                if c.iter().all(Scalar::is_zero) {
                    continue;
                }
                let tgt_cells = &tgt.local[tgt.terms[t]];
                let mut blk = Matrix::zeros(field, tgt_cells.len(), src_cells.len());
                for (i, &b) in tgt_cells.iter().enumerate() {
                    let cb = alg.mul(c, &alg.unit_vec(b));
                    for (j, &bp) in src_cells.iter().enumerate() {
                        if !cb[bp].is_zero() {
                            blk.set(i, j, cb[bp].clone());
                        }
                    }
                }
                let piece = tgt.inclusions[t].mul(&blk).mul(&self.inclusions[s].transpose());
                m = m.add(&piece);
            }
        }
        m
    }
}

/// Human-readable multiset of projectives, e.g. `P(2)+P(3)^2`.
pub fn format_terms(alg: &BasedAlgebra, terms: &[usize]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &v in terms {
        match counts.iter_mut().find(|(w, _)| *w == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v, 1)),
        }
    }
    counts
        .iter()
        .map(|&(v, c)| {
            let l = &alg.vertex_labels()[v];
            if c == 1 {
                format!("P({l})")
            } else {
                format!("P({l})^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}
