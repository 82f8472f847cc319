//! Assembly of the directed A-infinity category of a curve diagram: objects
//! are the curves in their distinguished order, hom spaces are spanned by
//! crossings graded by their indices, and the higher compositions are
//! signed polygon counts.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainfcat::{AInfCategory, CategoryError};
use crate::diagram::{BraneAssignment, CurveDiagram, CurveId, VertexId};
use crate::exactalg::Field;
use crate::moduli::{
    all_corner_sequences, enumerate_polygons, polygon_sign, CornerSequence, ModuliError,
    PolygonDomain,
};

#[derive(Debug, Error)]
pub enum FsError {
    #[error("diagram invalid: {0:?}")]
    InvalidDiagram(Vec<String>),
    #[error("brane data invalid: {0:?}")]
    InvalidBranes(Vec<String>),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("associativity relation fails on a complete enumeration: chain {0:?}")]
    RelationFailure(Vec<String>),
}

/// One moduli-space entry of the build log.
#[derive(Clone, Debug)]
pub struct PolygonLogEntry {
    pub corner_seq: CornerSequence,
    pub domains: Vec<(PolygonDomain, i64)>,
}

#[derive(Clone, Debug)]
pub struct FsBuildResult<F: Field> {
    pub category: AInfCategory<F>,
    pub polygon_log: Vec<PolygonLogEntry>,
    /// False when some enumeration may have been cut by the multiplicity
    /// cap; the associativity check is skipped (reported, not enforced).
    pub complete: bool,
    /// Generator id in the category for each crossing.
    pub generator_of: BTreeMap<VertexId, usize>,
}

/// Thread budget from the environment; single-threaded by default.
pub fn thread_budget() -> usize {
    std::env::var("PALFKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Build the category of a validated diagram with brane data.
pub fn build_fs_category<F: Field + Send>(
    d: &CurveDiagram,
    b: &BraneAssignment,
    mult_cap: usize,
) -> Result<FsBuildResult<F>, FsError> {
    let diagram_errors = d.validate();
    if !diagram_errors.is_empty() {
        return Err(FsError::InvalidDiagram(diagram_errors));
    }
    let brane_errors = d.validate_branes(b);
    if !brane_errors.is_empty() {
        return Err(FsError::InvalidBranes(brane_errors));
    }
    let objects: Vec<String> = d.curves.iter().map(|c| c.name.clone()).collect();
    // Non-unit generators: one per crossing, ordered by (pair, vertex).
    let mut homs: Vec<(String, usize, usize, i64)> = Vec::new();
    let mut gen_index: BTreeMap<VertexId, usize> = BTreeMap::new();
    for i in 0..d.curves.len() {
        for j in i + 1..d.curves.len() {
            for (v, degree) in d.intersection_generators(b, i, j).map_err(fs_diag)? {
                gen_index.insert(v, homs.len());
                homs.push((d.vertices[v].name.clone(), i, j, degree));
            }
        }
    }
    // Moduli spaces over all composable corner sequences, fanned out over
    // the thread budget; results keyed by the sequence for determinism.
    let sequences = all_corner_sequences(d);
    let spaces = enumerate_spaces(d, &sequences, mult_cap)?;
    let mut complete = true;
    let mut polygon_log = Vec::new();
    let mut mu_entries: Vec<(Vec<usize>, Vec<(usize, F)>)> = Vec::new();
    for (corners, result) in sequences.iter().zip(spaces) {
        complete &= result.complete;
        if result.polygons.is_empty() {
            continue;
        }
        let domains: Vec<(PolygonDomain, i64)> =
            result.polygons.into_iter().map(|p| (polygon_sign(d, b, &p), p)).map(|(s, p)| (p, s)).collect();
        let total: i64 = domains.iter().map(|(_, s)| s).sum();
        // Arguments in display order: y_d, ..., y_1.
        let args: Vec<usize> =
            corners.inputs.iter().rev().map(|y| gen_index[y]).collect();
        if total != 0 {
            mu_entries.push((args, vec![(gen_index[&corners.output], F::from_i64(total))]));
        }
        polygon_log.push(PolygonLogEntry { corner_seq: corners.clone(), domains });
    }
    // Distinct outputs of one argument tuple merge into a single table row.
    let mut merged: BTreeMap<Vec<usize>, Vec<(usize, F)>> = BTreeMap::new();
    for (args, out) in mu_entries {
        merged.entry(args).or_default().extend(out);
    }
    let category = AInfCategory::new(objects, homs, merged.into_iter().collect())?;
    if complete {
        let report = category.check_ainf_relation(category.default_chain_length());
        if let Some((chain, _)) = report.first_failure {
            return Err(FsError::RelationFailure(
                chain.iter().map(|&g| category.gen_info(g).label.clone()).collect(),
            ));
        }
    }
    Ok(FsBuildResult { category, polygon_log, complete, generator_of: gen_index })
}

fn fs_diag(e: crate::diagram::DiagramError) -> FsError {
    FsError::InvalidDiagram(vec![e.to_string()])
}

fn enumerate_spaces(
    d: &CurveDiagram,
    sequences: &[CornerSequence],
    mult_cap: usize,
) -> Result<Vec<crate::moduli::EnumerationResult>, ModuliError> {
    let threads = thread_budget().min(sequences.len().max(1));
    if threads <= 1 {
        return sequences.iter().map(|c| enumerate_polygons(d, c, mult_cap)).collect();
    }
    let chunk = sequences.len().div_ceil(threads);
    let mut slots: Vec<Option<Result<crate::moduli::EnumerationResult, ModuliError>>> =
        Vec::new();
    slots.resize_with(sequences.len(), || None);
    let slot_chunks: Vec<&mut [Option<_>]> = slots.chunks_mut(chunk).collect();
    std::thread::scope(|scope| {
        for (ci, out) in slot_chunks.into_iter().enumerate() {
            let seqs = &sequences[ci * chunk..(ci * chunk + out.len())];
            scope.spawn(move || {
                for (s, slot) in seqs.iter().zip(out.iter_mut()) {
                    *slot = Some(enumerate_polygons(d, s, mult_cap));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("filled by worker")).collect()
}

/// Check that the differential squares to zero on every hom space of a
/// built category, by explicit matrix squaring.
pub fn floer_differential_squared_check<F: Field>(cat: &AInfCategory<F>) -> Result<(), String> {
    use crate::exactalg::ExactMatrix;
    let n = cat.object_count();
    for i in 0..n {
        for j in i..n {
            let gens = cat.hom_gens(i, j);
            if gens.is_empty() {
                continue;
            }
            let index: BTreeMap<usize, usize> =
                gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
            let mut mat = ExactMatrix::<F>::new(gens.len(), gens.len());
            for (col, &g) in gens.iter().enumerate() {
                for (&h, c) in &cat.mu(&[g]).0 {
                    mat.set(index[&h], col, c.clone());
                }
            }
            if !mat.mul(&mat).is_zero() {
                return Err(format!("differential fails to square to zero on hom({i},{j})"));
            }
        }
    }
    Ok(())
}

/// Shift the grading of one curve by `n`: its alpha function drops by `n`,
/// so indices at its crossings move by `n` with the antisymmetry rule.
pub fn shift_brane_grading(
    d: &CurveDiagram,
    b: &BraneAssignment,
    curve: CurveId,
    n: i64,
) -> BraneAssignment {
    let mut out = b.clone();
    for v in d.crossings() {
        let (lo, hi) = d.crossing_curves(v).unwrap();
        if lo == curve {
            *out.indices.get_mut(&v).unwrap() += n;
        } else if hi == curve {
            *out.indices.get_mut(&v).unwrap() -= n;
        }
    }
    // Declared writhes reference indices through the formula; shifting a
    // grading changes index sums and base indices coherently, so the
    // declarations stay valid without adjustment.
    out
}

/// Compare two categories through the canonical generator matching: object
/// order, per-pair generators sorted by (degree, label), equal degrees and
/// identical composition tables.
pub fn categories_match_canonically<F: Field>(
    a: &AInfCategory<F>,
    b: &AInfCategory<F>,
) -> bool {
    if a.object_count() != b.object_count() {
        return false;
    }
    let n = a.object_count();
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let mut ga = a.hom_gens(i, j);
            let mut gb = b.hom_gens(i, j);
            if ga.len() != gb.len() {
                return false;
            }
            let keyed = |cat: &AInfCategory<F>, g: usize| {
                (cat.gen_info(g).degree, cat.gen_info(g).label.clone())
            };
            ga.sort_by_key(|&g| keyed(a, g));
            gb.sort_by_key(|&g| keyed(b, g));
            for (&x, &y) in ga.iter().zip(gb.iter()) {
                if a.gen_info(x).degree != b.gen_info(y).degree {
                    return false;
                }
                map.insert(x, y);
            }
        }
    }
    if a.mu_table().len() != b.mu_table().len() {
        return false;
    }
    for (args, out) in a.mu_table() {
        let margs: Vec<usize> = args.iter().map(|g| map[g]).collect();
        let Some(bout) = b.mu_table().get(&margs) else {
            return false;
        };
        for (g, c) in &out.0 {
            if &bout.coeff(map[g]) != c {
                return false;
            }
        }
        if bout.0.len() != out.0.len() {
            return false;
        }
    }
    true
}
