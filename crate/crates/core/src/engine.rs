//! Cohomology dimensions of a finite bidifferential algebra by exact rank counts.

use serde::{Deserialize, Serialize};

use crate::lefschetz::Grid;
use crate::linalg::{nullity, rank, stacked_nullity, Matrix};
use crate::model::VaismanCBBA;

/// Bigraded dimension table over `0 ≤ p, q ≤ n` and its antidiagonal sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub bigraded: Grid,
    pub totalized: Vec<usize>,
}

impl DimensionTable {
    pub fn from_grid(bigraded: Grid) -> Self {
        let n = bigraded.size().saturating_sub(1);
        let totalized = (0..=2 * n as isize).map(|k| bigraded.antidiagonal(k)).collect();
        DimensionTable { bigraded, totalized }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> usize) -> Self {
        Self::from_grid(Grid::from_fn(n + 1, f))
    }

    pub fn n(&self) -> usize {
        self.bigraded.size().saturating_sub(1)
    }

    pub fn at(&self, p: isize, q: isize) -> usize {
        self.bigraded.at(p, q)
    }

    pub fn total(&self, k: isize) -> usize {
        usize::try_from(k).ok().and_then(|k| self.totalized.get(k)).copied().unwrap_or(0)
    }
}

fn rank_or_zero(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        rank(m)
    }
}

/// `h^{p,q} = dim ker ∂̄|_{(p,q)} − rank ∂̄|_{(p,q-1)}`.
pub fn dolbeault_dims(a: &VaismanCBBA) -> DimensionTable {
    DimensionTable::from_fn(a.n(), |p, q| {
        if a.dims(p, q) == 0 {
            return 0;
        }
        let kernel = nullity(&a.delbar_block(p, q));
        let image = if q == 0 { 0 } else { rank_or_zero(&a.delbar_block(p, q - 1)) };
        kernel - image
    })
}

/// Total-degree differential `d = ∂ + ∂̄` from `A^k` to `A^{k+1}`, with
/// summands ordered by increasing `p`.
pub fn total_differential(a: &VaismanCBBA, k: usize) -> Matrix {
    let n = a.n();
    let summands = |deg: usize| -> Vec<(usize, usize, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for p in 0..=deg.min(n) {
            let q = deg - p;
            if q > n {
                continue;
            }
            out.push((p, q, offset));
            offset += a.dims(p, q);
        }
        out
    };
    let src = summands(k);
    let tgt = summands(k + 1);
    let cols: usize = src.iter().map(|&(p, q, _)| a.dims(p, q)).sum();
    let rows: usize = tgt.iter().map(|&(p, q, _)| a.dims(p, q)).sum();
    let mut d = Matrix::zeros(rows, cols);
    let offset_of = |p: usize, q: usize| tgt.iter().find(|&&(tp, tq, _)| (tp, tq) == (p, q)).map(|&(_, _, o)| o);
    for &(p, q, col0) in &src {
        for (block, tp, tq) in [(a.del.block(p, q), p + 1, q), (a.delbar.block(p, q), p, q + 1)] {
            let (Some(block), Some(row0)) = (block, offset_of(tp, tq)) else { continue };
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    d[(row0 + i, col0 + j)] += &block[(i, j)];
                }
            }
        }
    }
    d
}

/// Betti numbers `b_0 … b_{2n}` of the total complex.
pub fn de_rham_dims(a: &VaismanCBBA) -> Vec<usize> {
    let top = 2 * a.n();
    let ranks: Vec<usize> = (0..=top).map(|k| rank_or_zero(&total_differential(a, k))).collect();
    (0..=top)
        .map(|k| {
            let dim: usize = (0..=k).map(|p| a.dims(p, k - p)).sum();
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            dim - ranks[k] - incoming
        })
        .collect()
}

/// `h_BC^{p,q} = dim(ker ∂ ∩ ker ∂̄) − rank(∂∂̄ from (p-1,q-1))`.
pub fn bott_chern_dims(a: &VaismanCBBA) -> DimensionTable {
    DimensionTable::from_fn(a.n(), |p, q| {
        if a.dims(p, q) == 0 {
            return 0;
        }
        let closed = stacked_nullity(&[a.del_block(p, q), a.delbar_block(p, q)])
            .expect("both blocks have the source dimension as column count");
        let exact = if p == 0 || q == 0 || a.dims(p - 1, q - 1) == 0 {
            0
        } else {
            rank_or_zero(&(&a.del_block(p - 1, q) * &a.delbar_block(p - 1, q - 1)))
        };
        closed - exact
    })
}
