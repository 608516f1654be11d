//! The finite bigraded bidifferential model `A = H_B ⊗ Λ⟨u, ū⟩`.
//!
//! Differentials come from the generator values `∂u = 0 = ∂̄ū`,
//! `∂̄u = ω = -∂ū`, zero on `H_B`, extended by the graded Leibniz rule
//! `d(xy) = dx·y + (-1)^{|x|} x·dy`. Basis elements are written `e⊗σ` with
//! the basic element first.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::ring::{BasicCohomologyRing, Bidegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sector {
    One,
    U,
    UBar,
    UUBar,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::One, Sector::U, Sector::UBar, Sector::UUBar];

    pub fn shift(self) -> (usize, usize) {
        match self {
            Sector::One => (0, 0),
            Sector::U => (1, 0),
            Sector::UBar => (0, 1),
            Sector::UUBar => (1, 1),
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Sector::U | Sector::UBar)
    }
}

/// Linear map of a fixed bidegree, one matrix per source bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    pub shift: (usize, usize),
    blocks: BTreeMap<Bidegree, Matrix>,
}

impl BlockOperator {
    pub fn new(shift: (usize, usize)) -> Self {
        BlockOperator { shift, blocks: BTreeMap::new() }
    }

    pub fn block(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.blocks.get(&Bidegree::new(p, q))
    }

    pub fn block_mut(&mut self, p: usize, q: usize) -> Option<&mut Matrix> {
        self.blocks.get_mut(&Bidegree::new(p, q))
    }

    pub fn insert(&mut self, src: Bidegree, m: Matrix) {
        self.blocks.insert(src, m);
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Bidegree, &Matrix)> {
        self.blocks.iter()
    }

    pub fn target(&self, src: Bidegree) -> Bidegree {
        Bidegree::new(src.p + self.shift.0, src.q + self.shift.1)
    }
}

#[derive(Clone, Debug)]
pub struct VaismanCBBA {
    n: usize,
    ring_dim: usize,
    basis: BTreeMap<Bidegree, Vec<(usize, Sector)>>,
    pub del: BlockOperator,
    pub delbar: BlockOperator,
}

impl VaismanCBBA {
    /// Complex dimension of the manifold, `m + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring_dim(&self) -> usize {
        self.ring_dim
    }

    pub fn dims(&self, p: usize, q: usize) -> usize {
        self.basis.get(&Bidegree::new(p, q)).map_or(0, Vec::len)
    }

    pub fn dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// Ordered basis of `A^{p,q}` as (ring basis index, sector) pairs.
    pub fn basis(&self, p: usize, q: usize) -> &[(usize, Sector)] {
        self.basis.get(&Bidegree::new(p, q)).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, p: usize, q: usize, element: usize, sector: Sector) -> Option<usize> {
        self.basis(p, q).iter().position(|&b| b == (element, sector))
    }

    /// The `(p,q)` block of `op`, or a zero matrix of the right shape when absent.
    pub fn block_or_zero(&self, op: &BlockOperator, p: usize, q: usize) -> Matrix {
        let t = op.target(Bidegree::new(p, q));
        op.block(p, q).cloned().unwrap_or_else(|| Matrix::zeros(self.dims(t.p, t.q), self.dims(p, q)))
    }

    pub fn del_block(&self, p: usize, q: usize) -> Matrix {
        self.block_or_zero(&self.del, p, q)
    }

    pub fn delbar_block(&self, p: usize, q: usize) -> Matrix {
        self.block_or_zero(&self.delbar, p, q)
    }
}

/// Builds the model of `r` and checks its axioms.
pub fn build_model(r: &BasicCohomologyRing) -> Result<VaismanCBBA> {
    let a = assemble(r);
    let violations = verify_cbba(&a);
    if violations.is_empty() {
        Ok(a)
    } else {
        Err(Error::Cbba(violations))
    }
}

fn assemble(r: &BasicCohomologyRing) -> VaismanCBBA {
    let n = r.m() + 1;
    let mut basis: BTreeMap<Bidegree, Vec<(usize, Sector)>> = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let mut elems = Vec::new();
            for sector in Sector::ALL {
                let (sp, sq) = sector.shift();
                if p >= sp && q >= sq {
                    elems.extend(r.block(p - sp, q - sq).map(|e| (e, sector)));
                }
            }
            if !elems.is_empty() {
                basis.insert(Bidegree::new(p, q), elems);
            }
        }
    }

    let mut a = VaismanCBBA {
        n,
        ring_dim: r.dim(),
        basis,
        del: BlockOperator::new((1, 0)),
        delbar: BlockOperator::new((0, 1)),
    };

    for p in 0..=n {
        for q in 0..=n {
            let src = a.basis(p, q).to_vec();
            let mut del = (p < n).then(|| Matrix::zeros(a.dims(p + 1, q), src.len()));
            let mut delbar = (q < n).then(|| Matrix::zeros(a.dims(p, q + 1), src.len()));
            for (col, &(e, sector)) in src.iter().enumerate() {
                let s = if r.degree(e) % 2 == 1 { -Rational::one() } else { Rational::one() };
                let e_omega = r.times_kaehler(e);
                let write = |m: &mut Option<Matrix>, tp: usize, tq: usize, target: Sector, coeff: &Rational| {
                    let Some(m) = m.as_mut() else { return };
                    for (k, c) in &e_omega {
                        let row = a
                            .position(tp, tq, *k, target)
                            .expect("e·ω lies in the target block by the bidegree invariant");
                        m[(row, col)] += coeff * c;
                    }
                };
                match sector {
                    Sector::One => {}
                    Sector::U => write(&mut delbar, p, q + 1, Sector::One, &s),
                    Sector::UBar => write(&mut del, p + 1, q, Sector::One, &-&s),
                    Sector::UUBar => {
                        write(&mut del, p + 1, q, Sector::U, &s);
                        write(&mut delbar, p, q + 1, Sector::UBar, &s);
                    }
                }
            }
            if let Some(m) = del {
                a.del.insert(Bidegree::new(p, q), m);
            }
            if let Some(m) = delbar {
                a.delbar.insert(Bidegree::new(p, q), m);
            }
        }
    }
    a
}

/// Checks the bidifferential algebra axioms block by block.
pub fn verify_cbba(a: &VaismanCBBA) -> Vec<String> {
    let mut out = Vec::new();
    if a.dim() != 4 * a.ring_dim() {
        out.push(format!("total dimension {} is not 4 × {}", a.dim(), a.ring_dim()));
    }
    for (name, op) in [("del", &a.del), ("delbar", &a.delbar)] {
        for (src, m) in op.blocks() {
            let t = op.target(*src);
            if m.cols() != a.dims(src.p, src.q) || m.rows() != a.dims(t.p, t.q) {
                out.push(format!(
                    "{name} block at {src} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    a.dims(t.p, t.q),
                    a.dims(src.p, src.q)
                ));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    let n = a.n();
    for p in 0..=n {
        for q in 0..=n {
            if a.dims(p, q) == 0 {
                continue;
            }
            let d = a.del_block(p, q);
            let db = a.delbar_block(p, q);
            if p + 2 <= n && !(&a.del_block(p + 1, q) * &d).is_zero() {
                out.push(format!("del∘del ≠ 0 on block ({p},{q})"));
            }
            if q + 2 <= n && !(&a.delbar_block(p, q + 1) * &db).is_zero() {
                out.push(format!("delbar∘delbar ≠ 0 on block ({p},{q})"));
            }
            if p < n && q < n {
                let anti = &(&a.del_block(p, q + 1) * &db) + &(&a.delbar_block(p + 1, q) * &d);
                if !anti.is_zero() {
                    out.push(format!("del∘delbar + delbar∘del ≠ 0 on block ({p},{q})"));
                }
            }
            for (col, (e, sector)) in a.basis(p, q).iter().enumerate() {
                if *sector != Sector::One {
                    continue;
                }
                let nonzero = |m: &Matrix| (0..m.rows()).any(|i| !m[(i, col)].is_zero());
                if nonzero(&d) || nonzero(&db) {
                    out.push(format!("differential nonzero on sector-1 element {e} in block ({p},{q})"));
                }
            }
        }
    }
    out
}
