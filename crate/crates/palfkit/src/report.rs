//! Deterministic plain-text report assembly for the command-line tools.

use crate::ainfcat::AInfCategory;
use crate::diagram::{BraneAssignment, CurveDiagram};
use crate::exactalg::{Field, IntMatrix};
use crate::fscat::FsBuildResult;
use crate::hochschild::{CrosscheckOutcome, HhTableRow};
use crate::invariants::MilnorLattice;

pub fn render_validation(diagram_errors: &[String], brane_errors: &[String]) -> String {
    let mut out = String::new();
    if diagram_errors.is_empty() && brane_errors.is_empty() {
        out.push_str("validation: ok\n");
    } else {
        out.push_str("validation: FAILED\n");
        for e in diagram_errors {
            out.push_str(&format!("  diagram: {e}\n"));
        }
        for e in brane_errors {
            out.push_str(&format!("  branes: {e}\n"));
        }
    }
    out
}

pub fn render_surface(d: &CurveDiagram) -> String {
    let curves: Vec<&str> = d.curves.iter().map(|c| c.name.as_str()).collect();
    format!(
        "surface: genus {}, boundary circles {}\ncurves: {}\ncells: {} vertices, {} arcs, {} faces\n",
        d.genus,
        d.boundary_count,
        curves.join(" "),
        d.vertices.len(),
        d.arcs.len(),
        d.faces.len()
    )
}

pub fn render_category<F: Field>(d: &CurveDiagram, res: &FsBuildResult<F>) -> String {
    let cat = &res.category;
    let mut out = String::new();
    for i in 0..cat.object_count() {
        for j in i + 1..cat.object_count() {
            let gens = cat.hom_gens(i, j);
            if gens.is_empty() {
                continue;
            }
            let pieces: Vec<String> = gens
                .iter()
                .map(|&g| format!("{} (degree {})", cat.gen_info(g).label, cat.gen_info(g).degree))
                .collect();
            out.push_str(&format!(
                "hom({}, {}): {}\n",
                cat.objects()[i],
                cat.objects()[j],
                pieces.join(", ")
            ));
        }
    }
    let table = cat.mu_table();
    if table.is_empty() {
        out.push_str("higher compositions: all zero\n");
    } else {
        for (args, value) in table {
            let labels: Vec<&str> =
                args.iter().map(|&g| cat.gen_info(g).label.as_str()).collect();
            let terms: Vec<String> = value
                .0
                .iter()
                .map(|(&g, c)| {
                    if c.is_one() {
                        cat.gen_info(g).label.clone()
                    } else {
                        format!("({c}) {}", cat.gen_info(g).label)
                    }
                })
                .collect();
            out.push_str(&format!(
                "mu^{}({}) = {}\n",
                args.len(),
                labels.join(", "),
                terms.join(" + ")
            ));
        }
    }
    out.push_str(&format!(
        "enumeration: {}\n",
        if res.complete { "complete" } else { "INCOMPLETE (multiplicity cap reached)" }
    ));
    out.push_str("polygon log:\n");
    if res.polygon_log.is_empty() {
        out.push_str("  (no nonempty moduli spaces)\n");
    }
    for entry in &res.polygon_log {
        let inputs: Vec<&str> = entry
            .corner_seq
            .inputs
            .iter()
            .rev()
            .map(|&v| d.vertices[v].name.as_str())
            .collect();
        out.push_str(&format!(
            "  M({}; {}): {} element(s)\n",
            inputs.join(", "),
            d.vertices[entry.corner_seq.output].name,
            entry.domains.len()
        ));
        for (dom, sign) in &entry.domains {
            let faces: Vec<String> = dom
                .multiplicities
                .iter()
                .map(|(&f, &m)| {
                    if m == 1 {
                        d.faces[f].name.clone()
                    } else {
                        format!("{}x{}", d.faces[f].name, m)
                    }
                })
                .collect();
            out.push_str(&format!(
                "    sign {} domain [{}]\n",
                if *sign > 0 { "+" } else { "-" },
                faces.join(", ")
            ));
        }
    }
    out
}

pub fn render_hh_table(field: &str, range: (i64, i64), rows: &[HhTableRow]) -> String {
    let mut out = format!("hochschild cohomology over {field}, degrees {}..{}\n", range.0, range.1);
    out.push_str("degree | dim CC | rank M1 | dim HH | representatives\n");
    for r in rows {
        let reps = if r.representatives.is_empty() {
            String::new()
        } else {
            r.representatives.join(" ; ")
        };
        out.push_str(&format!(
            "{:>6} | {:>6} | {:>7} | {:>6} | {}{}\n",
            r.degree,
            r.cc_dim,
            r.rank,
            r.hh_dim,
            reps,
            if r.truncated { "  (lengths capped)" } else { "" }
        ));
    }
    out
}

pub fn render_crosscheck(outcome: &CrosscheckOutcome) -> String {
    match outcome {
        CrosscheckOutcome::Agree { global_sign } => {
            format!("differential crosscheck: agree, global sign {global_sign:+}\n")
        }
        CrosscheckOutcome::Skipped(reason) => {
            format!("differential crosscheck: skipped ({reason})\n")
        }
        CrosscheckOutcome::Mismatch(detail) => {
            format!("differential crosscheck: MISMATCH ({detail})\n")
        }
    }
}

fn render_int_matrix(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&format!("  [{}]\n", cells.join(", ")));
    }
    out
}

pub fn render_invariants(
    lattice: &MilnorLattice,
    euler: &IntMatrix,
    eps: &Option<Vec<i64>>,
    h1: &str,
) -> String {
    let mut out = format!("milnor lattice: rank {}\n", lattice.rank);
    out.push_str(&render_int_matrix(&lattice.pairing));
    out.push_str("euler pairing:\n");
    out.push_str(&render_int_matrix(euler));
    match eps {
        Some(signs) => {
            let s: Vec<&str> = signs.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
            out.push_str(&format!("comparison: match with orientation signs [{}]\n", s.join(" ")));
        }
        None => out.push_str("comparison: NO orientation signs reconcile the pairings\n"),
    }
    out.push_str(&format!("H1(total space) = {h1}\n"));
    out
}

pub fn render_relation_status<F: Field>(cat: &AInfCategory<F>, complete: bool) -> String {
    if !complete {
        return "associativity check: skipped (incomplete enumeration)\n".to_string();
    }
    match cat.check_ainf_relation(cat.default_chain_length()).first_failure {
        None => "associativity check: pass\n".to_string(),
        Some((chain, _)) => {
            let labels: Vec<&str> =
                chain.iter().map(|&g| cat.gen_info(g).label.as_str()).collect();
            format!("associativity check: FAIL at chain ({})\n", labels.join(", "))
        }
    }
}

/// Index-formula status line over enumerated polygons and declared walks.
pub fn render_index_consistency(
    d: &CurveDiagram,
    b: &BraneAssignment,
    polygons: &[crate::moduli::PolygonDomain],
) -> String {
    let errors = crate::moduli::check_index_consistency(d, b, polygons);
    if errors.is_empty() {
        format!("index formula: holds on {} polygon(s) and all declared walks\n", polygons.len())
    } else {
        let mut out = String::from("index formula: VIOLATIONS\n");
        for e in errors {
            out.push_str(&format!("  {e}\n"));
        }
        out
    }
}

pub fn section(title: &str) -> String {
    format!("== {title}\n")
}

/// Hochschild section of a report: table plus crosscheck line.
pub fn hh_section<F: Field>(
    cat: &AInfCategory<F>,
    range: (i64, i64),
    cap: Option<usize>,
    field: &str,
) -> String {
    let rows = crate::hochschild::hh_table(cat, range, cap);
    let crosscheck = crate::hochschild::simplified_differential_crosscheck(cat, range, cap);
    let mut out = render_hh_table(field, range, &rows);
    out.push_str(&render_crosscheck(&crosscheck));
    out
}

/// Invariants section: lattice, Euler pairing, comparison and total-space
/// homology.
pub fn invariants_section(d: &CurveDiagram, b: &BraneAssignment) -> Result<String, String> {
    let lattice = crate::invariants::milnor_lattice(d).map_err(|e| e.to_string())?;
    let cat = crate::fscat::build_fs_category::<crate::exactalg::Rat>(
        d,
        b,
        crate::moduli::DEFAULT_MULT_CAP,
    )
    .map_err(|e| e.to_string())?;
    let euler = crate::invariants::euler_pairing(&cat.category);
    let eps = crate::invariants::compare_lattices(&lattice, &euler).map_err(|e| e.to_string())?;
    let h1 = crate::invariants::total_space_h1(d).map_err(|e| e.to_string())?;
    Ok(render_invariants(&lattice, &euler, &eps, &h1.to_string()))
}

/// The consolidated report document; `title` names the input. Returns the
/// text and whether every enumeration was complete.
pub fn full_report(
    title: &str,
    d: &CurveDiagram,
    b: &BraneAssignment,
    field: crate::format::FieldSpec,
    range: (i64, i64),
    max_mult: usize,
) -> Result<(String, bool), String> {
    let mut text = String::new();
    text.push_str(&section(&format!("diagram: {title}")));
    text.push_str(&render_surface(d));
    let derr = d.validate();
    let berr = if derr.is_empty() { d.validate_branes(b) } else { Vec::new() };
    text.push_str(&render_validation(&derr, &berr));
    if !derr.is_empty() || !berr.is_empty() {
        return Err(text);
    }
    let res = crate::fscat::build_fs_category::<crate::exactalg::Rat>(d, b, max_mult)
        .map_err(|e| e.to_string())?;
    text.push_str(&section("category"));
    text.push_str(&render_category(d, &res));
    text.push_str(&render_relation_status(&res.category, res.complete));
    let all_domains: Vec<crate::moduli::PolygonDomain> = res
        .polygon_log
        .iter()
        .flat_map(|e| e.domains.iter().map(|(p, _)| p.clone()))
        .collect();
    text.push_str(&render_index_consistency(d, b, &all_domains));
    match crate::fscat::floer_differential_squared_check(&res.category) {
        Ok(()) => text.push_str("differential squared: zero on every hom space\n"),
        Err(e) => text.push_str(&format!("differential squared: FAIL ({e})\n")),
    }
    text.push_str(&section("hochschild cohomology"));
    match field {
        crate::format::FieldSpec::Rational => {
            text.push_str(&hh_section(&res.category, range, None, "q"))
        }
        crate::format::FieldSpec::Prime(p) => {
            // Round the category through its file form so coefficients are
            // reduced consistently.
            let file = crate::format::category_to_file(&res.category, &format!("fp:{p}"));
            let json = crate::format::to_json_pretty(&file);
            let cat = crate::format::parse_category_fp(&json, p).map_err(|e| e.to_string())?;
            text.push_str(&hh_section(&cat, range, None, &format!("fp:{p}")));
        }
    }
    text.push_str(&section("invariants"));
    text.push_str(&invariants_section(d, b)?);
    Ok((text, res.complete))
}
