//! Finite bigraded graded-commutative rings standing in for the basic
//! cohomology of the transverse Kähler structure, with a marked Kähler class.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{rank, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub const fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Sparse vector over the global basis: sorted by index, no zero coefficients.
pub type SparseVec = Vec<(usize, Rational)>;

fn collect_sparse(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub bidegree: Bidegree,
}

/// A finite graded-commutative ring with a (1,1) Kähler class.
///
/// The basis is ordered lexicographically by bidegree and then by declaration
/// order, so every bidegree occupies a contiguous index range.
#[derive(Clone, Debug)]
pub struct BasicCohomologyRing {
    m: usize,
    basis: Vec<BasisElement>,
    /// Row-major `len × len` table of structure constants.
    mult: Vec<SparseVec>,
    kaehler: SparseVec,
    blocks: BTreeMap<Bidegree, Range<usize>>,
}

impl BasicCohomologyRing {
    /// Assembles a ring from basis, structure constants and Kähler class.
    ///
    /// `products` maps ordered pairs of indices into `basis` to the product;
    /// missing pairs are zero. The basis is re-sorted by bidegree (stable), and
    /// all indices are remapped accordingly. No validation is performed.
    pub fn from_parts(
        m: usize,
        basis: Vec<BasisElement>,
        products: BTreeMap<(usize, usize), SparseVec>,
        kaehler: SparseVec,
    ) -> Self {
        let n = basis.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| basis[i].bidegree);
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let remap = |v: SparseVec| -> SparseVec {
            let mut acc = BTreeMap::new();
            for (k, c) in v {
                *acc.entry(new_index[k]).or_insert_with(Rational::zero) += c;
            }
            collect_sparse(acc)
        };
        let mut mult = vec![SparseVec::new(); n * n];
        for ((i, j), v) in products {
            mult[new_index[i] * n + new_index[j]] = remap(v);
        }
        let basis: Vec<BasisElement> = order.iter().map(|&i| basis[i].clone()).collect();
        let mut blocks: BTreeMap<Bidegree, Range<usize>> = BTreeMap::new();
        for (i, e) in basis.iter().enumerate() {
            blocks.entry(e.bidegree).and_modify(|r| r.end = i + 1).or_insert(i..i + 1);
        }
        BasicCohomologyRing { m, basis, mult, kaehler: remap(kaehler), blocks }
    }

    /// Transverse complex dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Total dimension over all bidegrees.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn bidegree(&self, i: usize) -> Bidegree {
        self.basis[i].bidegree
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].bidegree.total()
    }

    /// Global index range of the basis of `H^{p,q}`; empty when the block is zero.
    pub fn block(&self, p: usize, q: usize) -> Range<usize> {
        self.blocks.get(&Bidegree::new(p, q)).cloned().unwrap_or(0..0)
    }

    pub fn dims(&self, p: usize, q: usize) -> usize {
        self.block(p, q).len()
    }

    /// `dims` with out-of-range (negative) indices reading as zero.
    pub fn dims_at(&self, p: isize, q: isize) -> usize {
        if p < 0 || q < 0 {
            0
        } else {
            self.dims(p as usize, q as usize)
        }
    }

    /// Dimension of total degree `k`.
    pub fn degree_dim(&self, k: usize) -> usize {
        (0..=k).map(|p| self.dims(p, k - p)).sum()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    pub fn kaehler(&self) -> &SparseVec {
        &self.kaehler
    }

    /// Index of the (0,0) basis element, if there is exactly one.
    pub fn unit_index(&self) -> Option<usize> {
        let b = self.block(0, 0);
        (b.len() == 1).then_some(b.start)
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    *acc.entry(*k).or_insert_with(Rational::zero) += &ab * c;
                }
            }
        }
        collect_sparse(acc)
    }

    pub fn times_kaehler(&self, i: usize) -> SparseVec {
        self.mul(&vec![(i, Rational::one())], &self.kaehler)
    }

    /// Matrix of `L = ω·` from `H^{p,q}` to `H^{p+1,q+1}`.
    pub fn lefschetz_block(&self, p: usize, q: usize) -> Matrix {
        let src = self.block(p, q);
        let tgt = self.block(p + 1, q + 1);
        let mut mat = Matrix::zeros(tgt.len(), src.len());
        for (col, i) in src.enumerate() {
            for (k, c) in self.times_kaehler(i) {
                if tgt.contains(&k) {
                    mat[(k - tgt.start, col)] = c;
                }
            }
        }
        mat
    }

    /// Matrix of `L^k` from `H^{p,q}` to `H^{p+k,q+k}`.
    pub fn lefschetz_power_block(&self, p: usize, q: usize, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.dims(p, q));
        for j in 0..k {
            acc = &self.lefschetz_block(p + j, q + j) * &acc;
        }
        acc
    }
}

/// Genus-`g` curve: `1`, `a_1..a_g` in (1,0), `b_1..b_g` in (0,1), `t` in (1,1),
/// with `a_i b_i = t` and Kähler class `t`.
pub fn curve_ring(g: usize) -> BasicCohomologyRing {
    let mut basis = vec![BasisElement { label: "1".into(), bidegree: Bidegree::new(0, 0) }];
    let a = |i: usize| 1 + i;
    let b = |i: usize| 1 + g + i;
    let t = 1 + 2 * g;
    basis.extend((1..=g).map(|i| BasisElement { label: format!("a{i}"), bidegree: Bidegree::new(1, 0) }));
    basis.extend((1..=g).map(|i| BasisElement { label: format!("b{i}"), bidegree: Bidegree::new(0, 1) }));
    basis.push(BasisElement { label: "t".into(), bidegree: Bidegree::new(1, 1) });

    let one = Rational::one;
    let mut products = BTreeMap::new();
    for x in 0..basis.len() {
        products.insert((0, x), vec![(x, one())]);
        products.insert((x, 0), vec![(x, one())]);
    }
    for i in 0..g {
        products.insert((a(i), b(i)), vec![(t, one())]);
        products.insert((b(i), a(i)), vec![(t, -one())]);
    }
    BasicCohomologyRing::from_parts(1, basis, products, vec![(t, one())])
}

/// Complex projective space: `1, h, …, h^m` with truncated products and class `h`.
pub fn projective_space_ring(m: usize) -> BasicCohomologyRing {
    let label = |i: usize| match i {
        0 => "1".to_string(),
        1 => "h".to_string(),
        _ => format!("h^{i}"),
    };
    let basis = (0..=m).map(|i| BasisElement { label: label(i), bidegree: Bidegree::new(i, i) }).collect();
    let mut products = BTreeMap::new();
    for i in 0..=m {
        for j in 0..=m - i {
            products.insert((i, j), vec![(i + j, Rational::one())]);
        }
    }
    let kaehler = if m >= 1 { vec![(1, Rational::one())] } else { vec![] };
    BasicCohomologyRing::from_parts(m, basis, products, kaehler)
}

/// Künneth product with Koszul signs and Kähler class `ω₁⊗1 + 1⊗ω₂`.
pub fn product_ring(r1: &BasicCohomologyRing, r2: &BasicCohomologyRing) -> BasicCohomologyRing {
    let (n1, n2) = (r1.dim(), r2.dim());
    let pair = |i: usize, j: usize| i * n2 + j;
    let mut basis = Vec::with_capacity(n1 * n2);
    for x in r1.basis() {
        for y in r2.basis() {
            basis.push(BasisElement {
                label: format!("{}⊗{}", x.label, y.label),
                bidegree: Bidegree::new(x.bidegree.p + y.bidegree.p, x.bidegree.q + y.bidegree.q),
            });
        }
    }
    let mut products = BTreeMap::new();
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            for y1 in 0..n1 {
                let left = r1.product(x1, y1);
                if left.is_empty() {
                    continue;
                }
                let s = sign(r2.degree(x2) * r1.degree(y1) % 2 == 1);
                for y2 in 0..n2 {
                    let right = r2.product(x2, y2);
                    if right.is_empty() {
                        continue;
                    }
                    let mut v = SparseVec::new();
                    for (k1, c1) in left {
                        for (k2, c2) in right {
                            v.push((pair(*k1, *k2), &s * c1 * c2));
                        }
                    }
                    products.insert((pair(x1, x2), pair(y1, y2)), v);
                }
            }
        }
    }
    let mut kaehler = SparseVec::new();
    if let Some(u2) = r2.unit_index() {
        kaehler.extend(r1.kaehler().iter().map(|(k, c)| (pair(*k, u2), c.clone())));
    }
    if let Some(u1) = r1.unit_index() {
        kaehler.extend(r2.kaehler().iter().map(|(k, c)| (pair(u1, *k), c.clone())));
    }
    BasicCohomologyRing::from_parts(r1.m() + r2.m(), basis, products, kaehler)
}

const MAX_ALGEBRA_REPORTS: usize = 8;

/// Checks every ring invariant; returns one description per violation.
pub fn validate_ring(r: &BasicCohomologyRing) -> Vec<String> {
    let mut out = Vec::new();
    let m = r.m();
    if m == 0 {
        out.push("transverse dimension m must be at least 1".to_string());
    }
    for e in r.basis() {
        if e.bidegree.p > m || e.bidegree.q > m {
            out.push(format!("basis element {} has bidegree {} out of range for m={m}", e.label, e.bidegree));
        }
    }
    if r.dims(0, 0) != 1 {
        out.push(format!("unit class not 1-dimensional at (0,0): dimension {}", r.dims(0, 0)));
    }
    if r.dims(m, m) != 1 {
        out.push(format!("top class not 1-dimensional at ({m},{m}): dimension {}", r.dims(m, m)));
    }
    for p in 0..=m {
        for q in p + 1..=m {
            if r.dims(p, q) != r.dims(q, p) {
                out.push(format!(
                    "Hodge symmetry fails at ({p},{q}): dims {} vs {}",
                    r.dims(p, q),
                    r.dims(q, p)
                ));
            }
        }
    }
    let n = r.dim();
    for i in 0..n {
        for j in 0..n {
            let target = Bidegree::new(r.bidegree(i).p + r.bidegree(j).p, r.bidegree(i).q + r.bidegree(j).q);
            if let Some((k, _)) = r.product(i, j).iter().find(|(k, _)| r.bidegree(*k) != target) {
                out.push(format!(
                    "product {}·{} has a component {} in bidegree {}, expected {target}",
                    r.label(i),
                    r.label(j),
                    r.label(*k),
                    r.bidegree(*k)
                ));
            }
        }
    }
    if let Some((k, _)) = r.kaehler().iter().find(|(k, _)| r.bidegree(*k) != Bidegree::new(1, 1)) {
        out.push(format!("Kähler class has a component {} in bidegree {}, expected (1,1)", r.label(*k), r.bidegree(*k)));
    }
    if !out.is_empty() {
        // structure constants cannot be trusted past this point
        return out;
    }

    let unit = r.unit_index().expect("dims(0,0) = 1 was checked");
    for x in 0..n {
        let ex = vec![(x, Rational::one())];
        if r.product(unit, x) != &ex || r.product(x, unit) != &ex {
            out.push(format!("(0,0) basis element {} is not a two-sided unit on {}", r.label(unit), r.label(x)));
        }
    }

    let mut comm = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = sign(r.degree(i) * r.degree(j) % 2 == 1);
            let flipped: SparseVec = r.product(j, i).iter().map(|(k, c)| (*k, &s * c)).collect();
            if r.product(i, j) != &flipped {
                comm.push(format!("graded commutativity fails for ({}, {})", r.label(i), r.label(j)));
            }
        }
    }
    push_capped(&mut out, comm);

    let mut assoc = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = r.product(i, j);
            for k in 0..n {
                let (a, b, c) = (r.bidegree(i), r.bidegree(j), r.bidegree(k));
                if a.p + b.p + c.p > m || a.q + b.q + c.q > m {
                    // both sides are forced to vanish by the bidegree check
                    continue;
                }
                let left = r.mul(ij, &vec![(k, Rational::one())]);
                let right = r.mul(&vec![(i, Rational::one())], r.product(j, k));
                if left != right {
                    assoc.push(format!(
                        "associativity fails for ({}, {}, {})",
                        r.label(i),
                        r.label(j),
                        r.label(k)
                    ));
                }
            }
        }
    }
    push_capped(&mut out, assoc);

    for k in 0..m {
        for p in 0..=k {
            let q = k - p;
            let power = m - k;
            let src = r.dims(p, q);
            let tgt = r.dims(p + power, q + power);
            let rk = rank(&r.lefschetz_power_block(p, q, power));
            if src != tgt || rk != src {
                out.push(format!(
                    "hard Lefschetz fails in degree k={k} at bidegree ({p},{q}): L^{power} has rank {rk} from dimension {src} to dimension {tgt}"
                ));
            }
        }
    }
    out
}

fn push_capped(out: &mut Vec<String>, found: Vec<String>) {
    let extra = found.len().saturating_sub(MAX_ALGEBRA_REPORTS);
    out.extend(found.into_iter().take(MAX_ALGEBRA_REPORTS));
    if extra > 0 {
        out.push(format!("... and {extra} more of the same kind"));
    }
}
