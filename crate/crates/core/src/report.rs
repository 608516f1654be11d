//! End-to-end pipeline: ring, model, engine and closed forms side by side.

use serde::{Deserialize, Serialize};

use crate::engine::{bott_chern_dims, de_rham_dims, dolbeault_dims, DimensionTable};
use crate::error::Result;
use crate::formulas::{
    bott_chern_closed_form, de_rham_closed_form, delta_closed_form, delta_invariants, formality_report,
    hodge_closed_form, is_cohomologically_hopf, printed_bc_table, printed_hodge_table, FormalityVerdict,
};
use crate::input::{build_ring, ManifoldSpec};
use crate::lefschetz::{lefschetz_data, LefschetzData};
use crate::model::build_model;
use crate::ring::BasicCohomologyRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedTable {
    Dolbeault,
    BottChern,
}

impl PrintedTable {
    pub fn name(self) -> &'static str {
        match self {
            PrintedTable::Dolbeault => "dolbeault",
            PrintedTable::BottChern => "bott_chern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub table: PrintedTable,
    pub p: usize,
    pub q: usize,
    pub model: usize,
    pub printed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub cohomologically_hopf: bool,
    pub froelicher_equality: bool,
    pub serre_duality: bool,
    pub cross_checks_passed: bool,
    pub printed_table_discrepancies: Vec<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub name: String,
    pub n: usize,
    pub lefschetz: LefschetzData,
    pub hodge_model: DimensionTable,
    pub hodge_formula: DimensionTable,
    pub bc_model: DimensionTable,
    pub bc_formula: DimensionTable,
    pub betti_model: Vec<usize>,
    pub betti_formula: Vec<usize>,
    pub printed_hodge_table: DimensionTable,
    pub printed_bc_table: DimensionTable,
    pub delta: Vec<i64>,
    pub delta_formula: Vec<i64>,
    pub flags: Flags,
    pub formality: FormalityVerdict,
}

/// First disagreement between a model-computed and a closed-form table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub table: &'static str,
    pub index: String,
    pub model: i64,
    pub formula: i64,
}

impl CohomologyReport {
    pub fn first_mismatch(&self) -> Option<Mismatch> {
        let grid = |table: &'static str, a: &DimensionTable, b: &DimensionTable| {
            let n = a.n() as isize;
            (0..=n)
                .flat_map(|p| (0..=n).map(move |q| (p, q)))
                .find(|&(p, q)| a.at(p, q) != b.at(p, q))
                .map(|(p, q)| Mismatch {
                    table,
                    index: format!("({p},{q})"),
                    model: a.at(p, q) as i64,
                    formula: b.at(p, q) as i64,
                })
        };
        let seq = |table: &'static str, a: Vec<i64>, b: Vec<i64>| {
            let len = a.len().max(b.len());
            (0..len).find(|&k| a.get(k) != b.get(k)).map(|k| Mismatch {
                table,
                index: k.to_string(),
                model: a.get(k).copied().unwrap_or(0),
                formula: b.get(k).copied().unwrap_or(0),
            })
        };
        let widen = |v: &[usize]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        grid("hodge", &self.hodge_model, &self.hodge_formula)
            .or_else(|| grid("bott_chern", &self.bc_model, &self.bc_formula))
            .or_else(|| seq("betti", widen(&self.betti_model), widen(&self.betti_formula)))
            .or_else(|| seq("delta", self.delta.clone(), self.delta_formula.clone()))
    }
}

pub fn assemble_report(spec: &ManifoldSpec) -> Result<CohomologyReport> {
    let ring = build_ring(spec)?;
    report_for_ring(&spec.name, &ring)
}

/// Runs the pipeline on an already validated ring.
pub fn report_for_ring(name: &str, ring: &BasicCohomologyRing) -> Result<CohomologyReport> {
    let n = ring.m() + 1;
    let ld = lefschetz_data(ring);
    let model = build_model(ring)?;

    let hodge_model = dolbeault_dims(&model);
    let bc_model = bott_chern_dims(&model);
    let betti_model = de_rham_dims(&model);

    let hodge_formula = hodge_closed_form(&ld, n);
    let bc_formula = bott_chern_closed_form(&ld, n);
    let betti_formula = de_rham_closed_form(&ld, n);
    let printed_hodge = printed_hodge_table(&ld, n);
    let printed_bc = printed_bc_table(&ld, n);

    let delta = delta_invariants(&bc_model, &betti_model, n);
    let delta_formula = delta_closed_form(&ld, n);

    let mut discrepancies = Vec::new();
    for (table, printed, model_table) in
        [(PrintedTable::Dolbeault, &printed_hodge, &hodge_model), (PrintedTable::BottChern, &printed_bc, &bc_model)]
    {
        for p in 0..=n {
            for q in 0..=n {
                let (a, b) = (model_table.at(p as isize, q as isize), printed.at(p as isize, q as isize));
                if a != b {
                    discrepancies.push(Discrepancy { table, p, q, model: a, printed: b });
                }
            }
        }
    }

    let n_i = n as isize;
    let serre_duality = (0..=n_i)
        .all(|p| (0..=n_i).all(|q| hodge_model.at(p, q) == hodge_model.at(n_i - p, n_i - q)));
    let froelicher_equality = betti_model.iter().enumerate().all(|(k, &b)| b == hodge_model.total(k as isize));
    let cross_checks_passed = hodge_model == hodge_formula
        && bc_model == bc_formula
        && betti_model == betti_formula
        && delta == delta_formula;

    Ok(CohomologyReport {
        name: name.to_string(),
        n,
        flags: Flags {
            cohomologically_hopf: is_cohomologically_hopf(&betti_model, n),
            froelicher_equality,
            serre_duality,
            cross_checks_passed,
            printed_table_discrepancies: discrepancies,
        },
        formality: formality_report(&betti_model, n),
        lefschetz: ld,
        hodge_model,
        hodge_formula,
        bc_model,
        bc_formula,
        betti_model,
        betti_formula,
        printed_hodge_table: printed_hodge,
        printed_bc_table: printed_bc,
        delta,
        delta_formula,
    })
}
