//! Closed-form cohomology numbers assembled from Lefschetz data.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::DimensionTable;
use crate::lefschetz::LefschetzData;
use crate::ring::Bidegree;

/// Four-summand decomposition of Dolbeault cohomology:
/// `h0(p,q) + h0(p,q-1) + kerL(p-1,q) + kerL(p-1,q-1)`.
pub fn hodge_closed_form(ld: &LefschetzData, n: usize) -> DimensionTable {
    DimensionTable::from_fn(n, |p, q| {
        let (p, q) = (p as isize, q as isize);
        ld.h0(p, q) + ld.h0(p, q - 1) + ld.ker_l(p - 1, q) + ld.ker_l(p - 1, q - 1)
    })
}

/// `kerΛ²(p,q) + kerL(p,q-1) + kerL(p-1,q) + kerL(p-1,q-1)`.
pub fn bott_chern_closed_form(ld: &LefschetzData, n: usize) -> DimensionTable {
    DimensionTable::from_fn(n, |p, q| {
        let (p, q) = (p as isize, q as isize);
        ld.ker_lambda2(p, q) + ld.ker_l(p, q - 1) + ld.ker_l(p - 1, q) + ld.ker_l(p - 1, q - 1)
    })
}

/// `b_k = b0(k) + b0(k-1) + kerL(k-1) + kerL(k-2)` with `kerL` totalized.
pub fn de_rham_closed_form(ld: &LefschetzData, n: usize) -> Vec<usize> {
    (0..=2 * n as isize)
        .map(|k| ld.b0(k) + ld.b0(k - 1) + ld.ker_l_total(k - 1) + ld.ker_l_total(k - 2))
        .collect()
}

/// Three-case Dolbeault table exactly as printed, kept for discrepancy reporting.
pub fn printed_hodge_table(ld: &LefschetzData, n: usize) -> DimensionTable {
    let n_i = n as isize;
    DimensionTable::from_fn(n, |p, q| {
        let (p, q) = (p as isize, q as isize);
        match (p + q).cmp(&n_i) {
            std::cmp::Ordering::Less => ld.h0(p, q) + ld.h0(p, q - 1),
            std::cmp::Ordering::Equal => ld.h0(p, q - 1) + ld.h0(p - 1, q),
            std::cmp::Ordering::Greater => ld.h0(n_i - p, n_i - q) + ld.h0(n_i - p - 1, n_i - q),
        }
    })
}

/// Three-case Bott-Chern table exactly as printed.
pub fn printed_bc_table(ld: &LefschetzData, n: usize) -> DimensionTable {
    let n_i = n as isize;
    DimensionTable::from_fn(n, |p, q| {
        let (p, q) = (p as isize, q as isize);
        match (p + q).cmp(&n_i) {
            std::cmp::Ordering::Less => ld.h0(p, q) + ld.h0(p - 1, q - 1),
            std::cmp::Ordering::Equal => ld.h0(p - 1, q - 1) + ld.h0(p, q - 1) + ld.h0(p - 1, q),
            std::cmp::Ordering::Greater => {
                let (a, b) = (n_i - p, n_i - q);
                ld.h0(a, b) + ld.h0(a - 1, b) + ld.h0(a, b - 1)
            }
        }
    })
}

/// `Δᵏ = Σ_{p+q=k} (h_BC^{p,q} + h_BC^{n-p,n-q}) − 2 b_k` for `0 ≤ k ≤ 2n`.
pub fn delta_invariants(bc: &DimensionTable, betti: &[usize], n: usize) -> Vec<i64> {
    let n_i = n as isize;
    (0..=2 * n_i)
        .map(|k| {
            let sum: usize = (0..=k).map(|p| bc.at(p, k - p) + bc.at(n_i - p, n_i - k + p)).sum();
            sum as i64 - 2 * betti.get(k as usize).copied().unwrap_or(0) as i64
        })
        .collect()
}

pub fn delta_closed_form(ld: &LefschetzData, n: usize) -> Vec<i64> {
    let n_i = n as isize;
    (0..=2 * n_i)
        .map(|k| {
            let v = match k.cmp(&n_i) {
                std::cmp::Ordering::Less => ld.b0(k - 2),
                std::cmp::Ordering::Equal => 2 * ld.b0(k - 2),
                std::cmp::Ordering::Greater => ld.b0(2 * n_i - k - 2),
            };
            v as i64
        })
        .collect()
}

/// `h0(p,q) = Σ_{k=0}^{q} (-1)^k h^{p,q-k}` for `p + q < n`.
pub fn primitive_from_dolbeault(h: &DimensionTable, n: usize) -> BTreeMap<Bidegree, i64> {
    below_middle(n)
        .map(|(p, q)| {
            let v = (0..=q).map(|k| alternate(k) * h.at(p as isize, (q - k) as isize) as i64).sum();
            (Bidegree::new(p, q), v)
        })
        .collect()
}

/// `h0(p,q) = Σ_{k=0}^{min(p,q)} (-1)^k h_BC^{p-k,q-k}` for `p + q < n`.
pub fn primitive_from_bc(bc: &DimensionTable, n: usize) -> BTreeMap<Bidegree, i64> {
    below_middle(n)
        .map(|(p, q)| {
            let v = (0..=p.min(q)).map(|k| alternate(k) * bc.at((p - k) as isize, (q - k) as isize) as i64).sum();
            (Bidegree::new(p, q), v)
        })
        .collect()
}

fn alternate(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn below_middle(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |p| (0..n - p).map(move |q| (p, q)))
}

/// Betti numbers of a Hopf manifold: `b₀ = b₁ = b_{2n-1} = b_{2n} = 1`, the rest 0.
pub fn is_cohomologically_hopf(betti: &[usize], n: usize) -> bool {
    betti.len() == 2 * n + 1
        && betti.iter().enumerate().all(|(k, &b)| {
            let expected = usize::from(k <= 1 || k + 1 >= 2 * n);
            b == expected
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BottChernVerdict {
    Formal,
    NotFormal,
    /// Surface with the Betti numbers of a Hopf surface.
    HopfLike,
    /// Surface with `b₁ = 3`.
    KodairaLike,
    /// Surface with `b₁ ∉ {1, 3}`; no Bott-Chern formal Vaisman metric.
    None,
}

impl fmt::Display for BottChernVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BottChernVerdict::Formal => "formal",
            BottChernVerdict::NotFormal => "not-formal",
            BottChernVerdict::HopfLike => "hopf-like",
            BottChernVerdict::KodairaLike => "kodaira-like",
            BottChernVerdict::None => "none",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalityVerdict {
    pub formal: bool,
    pub dolbeault_formal: bool,
    pub bott_chern: BottChernVerdict,
}

/// Cohomological formality criterion: every notion is equivalent to being
/// cohomologically Hopf, except Bott-Chern formality on surfaces, which is
/// keyed on `b₁`.
pub fn formality_report(betti: &[usize], n: usize) -> FormalityVerdict {
    let hopf = is_cohomologically_hopf(betti, n);
    let bott_chern = if n == 2 {
        match betti.get(1) {
            _ if hopf => BottChernVerdict::HopfLike,
            Some(3) => BottChernVerdict::KodairaLike,
            _ => BottChernVerdict::None,
        }
    } else if hopf {
        BottChernVerdict::Formal
    } else {
        BottChernVerdict::NotFormal
    };
    FormalityVerdict { formal: hopf, dolbeault_formal: hopf, bott_chern }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::lefschetz_data;
    use crate::ring::{curve_ring, product_ring, projective_space_ring};

    #[test]
    fn hopf_surface_hodge() {
        let ld = lefschetz_data(&projective_space_ring(1));
        let h = hodge_closed_form(&ld, 2);
        let nonzero: Vec<(usize, usize)> =
            (0..=2).flat_map(|p| (0..=2).map(move |q| (p, q))).filter(|&(p, q)| h.at(p as isize, q as isize) > 0).collect();
        assert_eq!(nonzero, vec![(0, 0), (0, 1), (2, 1), (2, 2)]);
        assert!(nonzero.iter().all(|&(p, q)| h.at(p as isize, q as isize) == 1));
    }

    #[test]
    fn kodaira_hodge() {
        let ld = lefschetz_data(&curve_ring(1));
        let h = hodge_closed_form(&ld, 2);
        let expect = [((1, 0), 1), ((0, 1), 2), ((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((2, 1), 2), ((1, 2), 1)];
        for ((p, q), v) in expect {
            assert_eq!(h.at(p, q), v, "({p},{q})");
        }
        assert_eq!(h.at(0, 0), 1);
    }

    #[test]
    fn bott_chern_forms() {
        let ld = lefschetz_data(&projective_space_ring(1));
        assert_eq!(bott_chern_closed_form(&ld, 2).at(1, 1), 1);
        let ld = lefschetz_data(&curve_ring(1));
        assert_eq!(bott_chern_closed_form(&ld, 2).at(1, 1), 3);
    }

    #[test]
    fn de_rham_forms() {
        let ld = lefschetz_data(&projective_space_ring(1));
        assert_eq!(de_rham_closed_form(&ld, 2), vec![1, 1, 0, 1, 1]);
        let ld = lefschetz_data(&curve_ring(1));
        assert_eq!(de_rham_closed_form(&ld, 2), vec![1, 3, 4, 3, 1]);
    }

    #[test]
    fn printed_tables_on_hopf_surface() {
        let ld = lefschetz_data(&projective_space_ring(1));
        assert_eq!(printed_hodge_table(&ld, 2).at(2, 1), 0);
        assert_eq!(printed_bc_table(&ld, 2).at(2, 1), 1);
    }

    #[test]
    fn printed_rows_below_middle_agree() {
        for r in [curve_ring(2), projective_space_ring(3), product_ring(&curve_ring(1), &projective_space_ring(2))] {
            let ld = lefschetz_data(&r);
            let n = r.m() + 1;
            let (h, ph) = (hodge_closed_form(&ld, n), printed_hodge_table(&ld, n));
            let (bc, pbc) = (bott_chern_closed_form(&ld, n), printed_bc_table(&ld, n));
            for p in 0..=n as isize {
                for q in 0..=n as isize - p {
                    assert_eq!(h.at(p, q), ph.at(p, q));
                    assert_eq!(bc.at(p, q), pbc.at(p, q));
                }
            }
        }
    }

    #[test]
    fn delta_closed_forms() {
        let ld = lefschetz_data(&projective_space_ring(1));
        assert_eq!(delta_closed_form(&ld, 2), vec![0, 0, 2, 0, 0]);
        let ld = lefschetz_data(&projective_space_ring(2));
        assert_eq!(delta_closed_form(&ld, 3)[2], 1);
        for g in 1..4 {
            let ld = lefschetz_data(&product_ring(&curve_ring(g), &projective_space_ring(1)));
            assert_eq!(delta_closed_form(&ld, 3)[3], 4 * g as i64);
        }
    }

    #[test]
    fn delta_from_tables() {
        let ld = lefschetz_data(&projective_space_ring(1));
        let bc = bott_chern_closed_form(&ld, 2);
        let b = de_rham_closed_form(&ld, 2);
        assert_eq!(delta_invariants(&bc, &b, 2), vec![0, 0, 2, 0, 0]);
    }

    #[test]
    fn primitive_round_trips() {
        let ld = lefschetz_data(&projective_space_ring(1));
        let h = hodge_closed_form(&ld, 2);
        let p = primitive_from_dolbeault(&h, 2);
        assert_eq!(p[&Bidegree::new(0, 1)], 0);
        assert_eq!(p[&Bidegree::new(0, 0)], 1);

        let ld = lefschetz_data(&curve_ring(1));
        let p = primitive_from_dolbeault(&hodge_closed_form(&ld, 2), 2);
        assert_eq!(p[&Bidegree::new(0, 1)], 1);
        let p = primitive_from_bc(&bott_chern_closed_form(&ld, 2), 2);
        assert_eq!(p[&Bidegree::new(1, 0)], 1);

        let ld = lefschetz_data(&projective_space_ring(2));
        let p = primitive_from_bc(&bott_chern_closed_form(&ld, 3), 3);
        assert_eq!(p[&Bidegree::new(1, 1)], 0);
        assert_eq!(p[&Bidegree::new(0, 0)], 1);
    }

    #[test]
    fn hopf_criterion() {
        assert!(is_cohomologically_hopf(&[1, 1, 0, 1, 1], 2));
        assert!(!is_cohomologically_hopf(&[1, 3, 4, 3, 1], 2));
        assert!(is_cohomologically_hopf(&[1, 1, 0, 0, 0, 1, 1], 3));
        assert!(!is_cohomologically_hopf(&[1, 1, 0, 1, 1], 3));
    }

    #[test]
    fn formality_verdicts() {
        let v = formality_report(&[1, 1, 0, 1, 1], 2);
        assert!(v.formal && v.dolbeault_formal);
        assert_eq!(v.bott_chern, BottChernVerdict::HopfLike);
        let v = formality_report(&[1, 3, 4, 3, 1], 2);
        assert!(!v.formal && !v.dolbeault_formal);
        assert_eq!(v.bott_chern, BottChernVerdict::KodairaLike);
        let v = formality_report(&[1, 5, 8, 5, 1], 2);
        assert_eq!(v.bott_chern, BottChernVerdict::None);
        let v = formality_report(&[1, 1, 0, 0, 0, 1, 1], 3);
        assert_eq!(v.bott_chern, BottChernVerdict::Formal);
        assert_eq!(v.bott_chern.to_string(), "formal");
    }
}
