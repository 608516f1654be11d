//! Lefschetz dimension tables: primitive numbers, `ker L`, `ker Λ²`, and the
//! basic and primitive Betti numbers.

use serde::{Deserialize, Serialize};

use crate::linalg::nullity;
use crate::ring::BasicCohomologyRing;

/// Square table indexed by bidegree; negative or too-large indices read as 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid(pub Vec<Vec<usize>>);

impl Grid {
    pub fn new(size: usize) -> Self {
        Grid(vec![vec![0; size]; size])
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        Grid((0..size).map(|p| (0..size).map(|q| f(p, q)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, p: isize, q: isize) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.0.get(p as usize).and_then(|row| row.get(q as usize)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, q: usize, v: usize) {
        self.0[p][q] = v;
    }

    /// Sum along the antidiagonal `p + q = k`.
    pub fn antidiagonal(&self, k: isize) -> usize {
        (0..=k.max(-1)).map(|p| self.at(p, k - p)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzData {
    pub m: usize,
    pub h0: Grid,
    pub ker_l: Grid,
    pub ker_lambda2: Grid,
    /// Primitive Betti numbers `b₀ₖ`, `k = 0..=2m`.
    pub b0: Vec<usize>,
    /// Basic Betti numbers `b_{k,B}`, `k = 0..=2m`.
    pub b_basic: Vec<usize>,
}

impl LefschetzData {
    pub fn h0(&self, p: isize, q: isize) -> usize {
        self.h0.at(p, q)
    }

    pub fn ker_l(&self, p: isize, q: isize) -> usize {
        self.ker_l.at(p, q)
    }

    pub fn ker_lambda2(&self, p: isize, q: isize) -> usize {
        self.ker_lambda2.at(p, q)
    }

    pub fn b0(&self, k: isize) -> usize {
        usize::try_from(k).ok().and_then(|k| self.b0.get(k)).copied().unwrap_or(0)
    }

    pub fn b_basic(&self, k: isize) -> usize {
        usize::try_from(k).ok().and_then(|k| self.b_basic.get(k)).copied().unwrap_or(0)
    }

    /// `Σ_{a+b=j} dim ker L` on `H^{a,b}`.
    pub fn ker_l_total(&self, j: isize) -> usize {
        self.ker_l.antidiagonal(j)
    }

    /// Violations of the table invariants against the source ring.
    pub fn check(&self, r: &BasicCohomologyRing) -> Vec<String> {
        let m = self.m as isize;
        let mut out = Vec::new();
        for p in 0..=m {
            for q in 0..=m {
                let h0 = self.h0(p, q);
                if p + q > m && h0 != 0 {
                    out.push(format!("h0{:?} = {h0} above the middle degree", (p, q)));
                }
                if h0 != self.h0(q, p) {
                    out.push(format!("h0 not symmetric at {:?}", (p, q)));
                }
                let expected_ker_l = if p + q >= m { self.h0(m - p, m - q) } else { 0 };
                if self.ker_l(p, q) != expected_ker_l {
                    out.push(format!(
                        "ker L at {:?} is {} but the Lefschetz decomposition predicts {expected_ker_l}",
                        (p, q),
                        self.ker_l(p, q)
                    ));
                }
                if p + q <= m {
                    let total: usize = (0..=p.min(q)).map(|j| self.h0(p - j, q - j)).sum();
                    if total != r.dims(p as usize, q as usize) {
                        out.push(format!(
                            "Lefschetz decomposition at {:?} sums to {total}, not {}",
                            (p, q),
                            r.dims(p as usize, q as usize)
                        ));
                    }
                }
            }
        }
        out
    }
}

/// `h₀^{p,q}` = nullity of `L^{m-p-q+1}` on `H^{p,q}` for `p + q ≤ m`, else 0.
pub fn primitive_dims(r: &BasicCohomologyRing) -> Grid {
    let m = r.m();
    Grid::from_fn(m + 1, |p, q| {
        if p + q > m {
            0
        } else {
            nullity(&r.lefschetz_power_block(p, q, m - p - q + 1))
        }
    })
}

/// Nullity of each `L: H^{a,b} → H^{a+1,b+1}` block.
pub fn ker_l_dims(r: &BasicCohomologyRing) -> Grid {
    Grid::from_fn(r.m() + 1, |a, b| nullity(&r.lefschetz_block(a, b)))
}

/// `dim H^{p,q} ∩ ker Λ²`, read off the Lefschetz decomposition: Λ² kills the
/// primitive part and `L·P^{p-1,q-1}`, and the latter is nonzero exactly when
/// `p + q ≤ m + 1`.
pub fn ker_lambda2_dims(r: &BasicCohomologyRing, h0: &Grid) -> Grid {
    let m = r.m();
    Grid::from_fn(m + 1, |p, q| {
        let (pi, qi) = (p as isize, q as isize);
        if p + q <= m + 1 {
            h0.at(pi, qi) + h0.at(pi - 1, qi - 1)
        } else {
            h0.at(pi, qi)
        }
    })
}

pub fn lefschetz_data(r: &BasicCohomologyRing) -> LefschetzData {
    let m = r.m();
    let h0 = primitive_dims(r);
    let ker_l = ker_l_dims(r);
    let ker_lambda2 = ker_lambda2_dims(r, &h0);
    let b0 = (0..=2 * m as isize).map(|k| h0.antidiagonal(k)).collect();
    let b_basic = (0..=2 * m).map(|k| r.degree_dim(k)).collect();
    LefschetzData { m, h0, ker_l, ker_lambda2, b0, b_basic }
}
