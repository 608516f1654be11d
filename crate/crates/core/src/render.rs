//! Text, JSON and CSV renderings of a [`CohomologyReport`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lefschetz::Grid;
use crate::report::CohomologyReport;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Square table with `p` across and `q` down.
fn grid_text(out: &mut String, title: &str, grid: &Grid) {
    let size = grid.size();
    let width = grid.0.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1).max(size.to_string().len());
    let _ = writeln!(out, "{title}  [columns: p = 0..{} left to right; rows: q = 0..{} top to bottom]", size - 1, size - 1);
    let _ = write!(out, "  q\\p");
    for p in 0..size {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    for q in 0..size {
        let _ = write!(out, "  {q:>3}");
        for p in 0..size {
            let _ = write!(out, " {:>width$}", grid.0[p][q]);
        }
        out.push('\n');
    }
    out.push('\n');
}

pub fn text(r: &CohomologyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Vaisman manifold: {}", r.name);
    let _ = writeln!(out, "complex dimension n = {}, transverse dimension m = {}", r.n, r.lefschetz.m);
    out.push('\n');

    let _ = writeln!(out, "Betti numbers (k = 0..{}):", 2 * r.n);
    let _ = writeln!(out, "b: {}", join(&r.betti_model));
    let _ = writeln!(out, "Δ: {}", join(&r.delta));
    let _ = writeln!(out, "basic Betti b_B: {}", join(&r.lefschetz.b_basic));
    let _ = writeln!(out, "primitive Betti b_0: {}", join(&r.lefschetz.b0));
    out.push('\n');

    grid_text(&mut out, "Dolbeault numbers h^{p,q}", &r.hodge_model.bigraded);
    grid_text(&mut out, "Bott-Chern numbers h_BC^{p,q}", &r.bc_model.bigraded);
    grid_text(&mut out, "Primitive basic numbers h0^{p,q}", &r.lefschetz.h0);

    let f = &r.flags;
    let _ = writeln!(out, "cohomologically Hopf: {}", f.cohomologically_hopf);
    let _ = writeln!(out, "Frölicher degeneration (b_k = Σ h^{{p,q}}): {}", f.froelicher_equality);
    let _ = writeln!(out, "Serre duality: {}", f.serre_duality);
    let _ = writeln!(
        out,
        "formality: formal = {}, Dolbeault formal = {}, Bott-Chern = {}",
        r.formality.formal, r.formality.dolbeault_formal, r.formality.bott_chern
    );
    let _ = writeln!(out, "cross-checks (model vs closed form): {}", if f.cross_checks_passed { "passed" } else { "FAILED" });
    if let Some(m) = r.first_mismatch() {
        let _ = writeln!(out, "  first difference: {} at {}: model {}, formula {}", m.table, m.index, m.model, m.formula);
    }
    if f.printed_table_discrepancies.is_empty() {
        let _ = writeln!(out, "printed case tables: consistent with the model");
    } else {
        let _ = writeln!(out, "printed case tables: {} entries differ from the model", f.printed_table_discrepancies.len());
        for d in &f.printed_table_discrepancies {
            let _ = writeln!(out, "  {} at ({},{}): model {}, printed {}", d.table.name(), d.p, d.q, d.model, d.printed);
        }
    }
    out
}

pub fn json(r: &CohomologyReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(r).map_err(|e| Error::Io(e.into()))?;
    s.push('\n');
    Ok(s)
}

/// One row per bidegree or degree: `table,p,q,k,value`.
pub fn csv(r: &CohomologyReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["table", "p", "q", "k", "value"]).map_err(csv_err)?;

    let bigraded: [(&str, &Grid); 9] = [
        ("hodge_model", &r.hodge_model.bigraded),
        ("hodge_formula", &r.hodge_formula.bigraded),
        ("bc_model", &r.bc_model.bigraded),
        ("bc_formula", &r.bc_formula.bigraded),
        ("printed_hodge", &r.printed_hodge_table.bigraded),
        ("printed_bc", &r.printed_bc_table.bigraded),
        ("h0", &r.lefschetz.h0),
        ("ker_l", &r.lefschetz.ker_l),
        ("ker_lambda2", &r.lefschetz.ker_lambda2),
    ];
    for (name, g) in bigraded {
        for p in 0..g.size() {
            for q in 0..g.size() {
                w.write_record([name, &p.to_string(), &q.to_string(), "", &g.0[p][q].to_string()]).map_err(csv_err)?;
            }
        }
    }
    let widen = |v: &[usize]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let graded: [(&str, Vec<i64>); 6] = [
        ("betti_model", widen(&r.betti_model)),
        ("betti_formula", widen(&r.betti_formula)),
        ("delta", r.delta.clone()),
        ("delta_formula", r.delta_formula.clone()),
        ("b_basic", widen(&r.lefschetz.b_basic)),
        ("b0", widen(&r.lefschetz.b0)),
    ];
    for (name, v) in &graded {
        for (k, x) in v.iter().enumerate() {
            w.write_record([*name, "", "", &k.to_string(), &x.to_string()]).map_err(csv_err)?;
        }
    }
    let f = &r.flags;
    for (name, v) in [
        ("cohomologically_hopf", f.cohomologically_hopf),
        ("froelicher_equality", f.froelicher_equality),
        ("serre_duality", f.serre_duality),
        ("cross_checks_passed", f.cross_checks_passed),
        ("formal", r.formality.formal),
        ("dolbeault_formal", r.formality.dolbeault_formal),
    ] {
        w.write_record([name, "", "", "", if v { "true" } else { "false" }]).map_err(csv_err)?;
    }
    w.write_record(["bott_chern_formality", "", "", "", &r.formality.bott_chern.to_string()]).map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{ManifoldSpec, Transversal};
    use crate::report::assemble_report;

    fn hopf() -> CohomologyReport {
        assemble_report(&ManifoldSpec::new("hopf2", Transversal::projective(1))).unwrap()
    }

    #[test]
    fn text_contains_rows() {
        let t = text(&hopf());
        assert!(t.contains("b: 1 1 0 1 1"), "{t}");
        assert!(t.contains("Δ: 0 0 2 0 0"), "{t}");
        assert!(t.contains("q\\p"));
        assert!(t.contains("dolbeault at (2,1): model 1, printed 0"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let s = json(&hopf()).unwrap();
        let back: CohomologyReport = serde_json::from_str(&s).unwrap();
        assert_eq!(json(&back).unwrap(), s);
    }

    #[test]
    fn csv_rows() {
        let s = csv(&hopf()).unwrap();
        assert!(s.starts_with("table,p,q,k,value\n"));
        assert!(s.contains("hodge_model,2,1,,1\n"));
        assert!(s.contains("delta,,,2,2\n"));
        assert!(s.contains("bott_chern_formality,,,,hopf-like\n"));
    }

    #[test]
    fn formats_share_values() {
        let r = hopf();
        let t = text(&r);
        let c = csv(&r).unwrap();
        for (k, b) in r.betti_model.iter().enumerate() {
            assert!(c.contains(&format!("betti_model,,,{k},{b}\n")));
        }
        assert!(t.contains(&format!("b: {}", join(&r.betti_model))));
        assert_eq!(r.hodge_model.totalized, r.betti_model);
    }
}
