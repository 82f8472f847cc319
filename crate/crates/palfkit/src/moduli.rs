//! Enumeration of immersed-polygon moduli spaces as face-multiplicity
//! domains, with the vertex/edge sign rules.
//!
//! A candidate domain is a nonnegative multiplicity vector over the disc
//! faces satisfying linear necessary conditions (zero jumps across arcs of
//! uninvolved curves, endpoint-compatible boundary chains on the corner
//! curves, the Euler-measure identity, and local sector realizability at
//! every crossing). Each candidate is then certified by development:
//! explicitly gluing face copies back into a surface and checking the
//! result is a disc whose boundary realizes the prescribed corner pattern.
//! A candidate can develop in more than one way; each certified development
//! is one moduli element, deduplicated by a canonical labelling rooted at
//! the output corner.
//!
//! On surfaces, immersed polygons with convex corners correspond to the
//! domains this procedure certifies; if a discrepancy with the structural
//! identities (differential squaring to zero, the associativity relation)
//! ever surfaces, suspect the certification, not the identities.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagram::{
    BraneAssignment, CurveDiagram, CurveId, DirectedArc, FaceId, VertexId, VertexKind,
};
use crate::exactalg::{ExactMatrix, Rat};

/// The corner data of a would-be polygon: strictly increasing curve indices
/// `i_0 < ... < i_d`, inputs `y_1 .. y_d` with `y_k` on the pair
/// `(i_{k-1}, i_k)`, and the output `y_0` on `(i_0, i_d)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CornerSequence {
    pub curves: Vec<CurveId>,
    pub inputs: Vec<VertexId>,
    pub output: VertexId,
}

impl CornerSequence {
    /// Corners in boundary order: `y_0, y_1, ..., y_d`. The boundary edge
    /// after the k-th corner lies on `curves[k]`.
    pub fn corners_cyclic(&self) -> Vec<VertexId> {
        let mut v = vec![self.output];
        v.extend_from_slice(&self.inputs);
        v
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Check corner membership and monotone curve indices.
    pub fn composable(&self, d: &CurveDiagram) -> bool {
        let k = self.curves.len();
        if k < 2 || self.inputs.len() + 1 != k {
            return false;
        }
        if !self.curves.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        for (idx, &y) in self.inputs.iter().enumerate() {
            let pair = (self.curves[idx], self.curves[idx + 1]);
            if d.crossing_curves(y) != Some(pair) {
                return false;
            }
        }
        d.crossing_curves(self.output) == Some((self.curves[0], self.curves[k - 1]))
    }
}

/// A certified immersed-polygon domain.
#[derive(Clone, Debug)]
pub struct PolygonDomain {
    pub multiplicities: BTreeMap<FaceId, usize>,
    pub corner_seq: CornerSequence,
    /// For each boundary edge k (from corner y_k to y_{k+1}, on
    /// `curves[k]`): the directed arcs traversed, in order.
    pub edge_paths: Vec<Vec<DirectedArc>>,
    /// Whether edge k travels with (+1) or against (-1) the brane
    /// orientation of its curve.
    pub edge_directions: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub polygons: Vec<PolygonDomain>,
    /// False when the multiplicity cap may have cut off candidates.
    pub complete: bool,
}

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error("corner sequence is not composable")]
    NotComposable,
    #[error("{0}")]
    Diagram(String),
    #[error("oracle refused: {0}")]
    OracleRefused(String),
}

/// Default per-face multiplicity cap.
pub const DEFAULT_MULT_CAP: usize = 4;

struct Geometry {
    /// For each face: its single disc walk, when the face is a disc.
    disc_walk: Vec<Option<Vec<DirectedArc>>>,
    /// left_face[(arc, forward)] and the walk position there.
    side: BTreeMap<DirectedArc, (FaceId, usize)>,
    /// Corner sector after each walk step: corners[(face, step)] = (vertex, sector).
    corner_at: BTreeMap<(FaceId, usize), (VertexId, usize)>,
    /// Owner face of each (vertex, sector).
    sector_face: BTreeMap<(VertexId, usize), FaceId>,
}

impl Geometry {
    fn new(d: &CurveDiagram) -> Result<Geometry, ModuliError> {
        let mut disc_walk = vec![None; d.faces.len()];
        let mut side = BTreeMap::new();
        let mut corner_at = BTreeMap::new();
        let mut sector_face = BTreeMap::new();
        for (fi, f) in d.faces.iter().enumerate() {
            for walk in &f.walks {
                for (pos, step) in walk.iter().enumerate() {
                    let darc = (step.arc, step.forward);
                    side.insert(darc, (fi, pos));
                    let (_, v, sector) =
                        d.left_face_step(darc).map_err(|e| ModuliError::Diagram(e.to_string()))?;
                    sector_face.insert((v, sector), fi);
                    if f.is_disc() {
                        corner_at.insert((fi, pos), (v, sector));
                    }
                }
            }
            if f.is_disc() {
                disc_walk[fi] =
                    Some(f.walks[0].iter().map(|s| (s.arc, s.forward)).collect());
            }
        }
        Ok(Geometry { disc_walk, side, corner_at, sector_face })
    }
}

/// Enumerate the moduli space of `(d+1)`-gons with the given corner
/// sequence.
pub fn enumerate_polygons(
    d: &CurveDiagram,
    corners: &CornerSequence,
    cap: usize,
) -> Result<EnumerationResult, ModuliError> {
    if !corners.composable(d) {
        return Err(ModuliError::NotComposable);
    }
    let geo = Geometry::new(d)?;
    let candidates = candidate_domains(d, &geo, corners, cap);
    let mut polygons = Vec::new();
    let mut signatures = BTreeSet::new();
    for m in candidates {
        for dev in develop(d, &geo, corners, &m) {
            if signatures.insert(dev.signature.clone()) {
                polygons.push(PolygonDomain {
                    multiplicities: m
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v > 0)
                        .map(|(f, &v)| (f, v))
                        .collect(),
                    corner_seq: corners.clone(),
                    edge_paths: dev.edge_paths,
                    edge_directions: dev.edge_directions,
                });
            }
        }
    }
    let complete = enumeration_is_complete(d, &geo, corners);
    Ok(EnumerationResult { polygons, complete })
}

/// Bigon spaces: the arity-1 case with `p` the input and `q` the output.
pub fn enumerate_bigons(
    d: &CurveDiagram,
    p: VertexId,
    q: VertexId,
    cap: usize,
) -> Result<EnumerationResult, ModuliError> {
    let (i, j) = d.crossing_curves(p).ok_or(ModuliError::NotComposable)?;
    if d.crossing_curves(q) != Some((i, j)) {
        return Err(ModuliError::NotComposable);
    }
    enumerate_polygons(
        d,
        &CornerSequence { curves: vec![i, j], inputs: vec![p], output: q },
        cap,
    )
}

/// Candidate multiplicity vectors: nonnegative on disc faces, zero
/// elsewhere, satisfying the linear necessary conditions.
fn candidate_domains(
    d: &CurveDiagram,
    geo: &Geometry,
    corners: &CornerSequence,
    cap: usize,
) -> Vec<Vec<usize>> {
    let nfaces = d.faces.len();
    let disc_faces: Vec<FaceId> = (0..nfaces).filter(|&f| d.faces[f].is_disc()).collect();
    let mut out = Vec::new();
    let mut m = vec![0usize; nfaces];
    search(d, geo, corners, cap, &disc_faces, 0, &mut m, &mut out);
    out
}

fn search(
    d: &CurveDiagram,
    geo: &Geometry,
    corners: &CornerSequence,
    cap: usize,
    disc_faces: &[FaceId],
    idx: usize,
    m: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if idx == disc_faces.len() {
        if m.iter().any(|&x| x > 0) && admissible(d, geo, corners, m) {
            out.push(m.clone());
        }
        return;
    }
    for v in 0..=cap {
        m[disc_faces[idx]] = v;
        search(d, geo, corners, cap, disc_faces, idx + 1, m, out);
    }
    m[disc_faces[idx]] = 0;
}

/// Net boundary coefficient of an arc: multiplicity on its left minus its
/// right side.
fn jump(geo: &Geometry, m: &[usize], arc: usize) -> i64 {
    let l = geo.side[&(arc, true)].0;
    let r = geo.side[&(arc, false)].0;
    m[l] as i64 - m[r] as i64
}

fn admissible(d: &CurveDiagram, geo: &Geometry, corners: &CornerSequence, m: &[usize]) -> bool {
    let involved: BTreeSet<CurveId> = corners.curves.iter().copied().collect();
    // Arcs of uninvolved curves cannot appear in the boundary.
    for (ai, a) in d.arcs.iter().enumerate() {
        if !involved.contains(&a.curve) && jump(geo, m, ai) != 0 {
            return false;
        }
    }
    // Boundary chain on each involved curve runs from y_k to y_{k+1}.
    let cyc = corners.corners_cyclic();
    let n = cyc.len();
    for (k, &c) in corners.curves.iter().enumerate() {
        let from = cyc[k];
        let to = cyc[(k + 1) % n];
        let mut boundary: BTreeMap<VertexId, i64> = BTreeMap::new();
        for (ai, a) in d.arcs.iter().enumerate() {
            if a.curve != c {
                continue;
            }
            let j = jump(geo, m, ai);
            if j != 0 {
                *boundary.entry(a.to).or_insert(0) += j;
                *boundary.entry(a.from).or_insert(0) -= j;
            }
        }
        boundary.retain(|_, v| *v != 0);
        let mut expected: BTreeMap<VertexId, i64> = BTreeMap::new();
        *expected.entry(to).or_insert(0) += 1;
        *expected.entry(from).or_insert(0) -= 1;
        expected.retain(|_, v| *v != 0);
        if boundary != expected {
            return false;
        }
    }
    // Euler measure: sum m_f (4 chi(f) - corners(f)) = 4 - (d+1).
    let mut measure: i64 = 0;
    for (f, &mult) in m.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let c_f = d.faces[f].walks.iter().map(Vec::len).sum::<usize>() as i64;
        measure += mult as i64 * (4 * d.faces[f].euler() - c_f);
    }
    if measure != 4 - (corners.arity() as i64 + 1) {
        return false;
    }
    // Local sector realizability at every crossing.
    let corner_set: BTreeSet<VertexId> = corners.corners_cyclic().into_iter().collect();
    for v in d.crossings() {
        let sectors: Vec<usize> = (0..4)
            .map(|s| geo.sector_face.get(&(v, s)).map_or(0, |&f| m[f]))
            .collect();
        if !sectors_realizable(&sectors, corner_set.contains(&v)) {
            return false;
        }
    }
    true
}

/// Can the four sector multiplicities around a crossing be written as
/// interior sheets, straight boundary passes, and (optionally) one convex
/// corner?
fn sectors_realizable(n: &[usize], corner_here: bool) -> bool {
    let try_pattern = |n: &[i64]| -> bool {
        if n.iter().any(|&x| x < 0) {
            return false;
        }
        let max_i = *n.iter().min().unwrap();
        for interior in 0..=max_i {
            let r: Vec<i64> = n.iter().map(|&x| x - interior).collect();
            // r0 = pa + pd, r1 = pa + pb, r2 = pc + pb, r3 = pc + pd
            for pa in 0..=r[0].min(r[1]) {
                let pd = r[0] - pa;
                let pb = r[1] - pa;
                let pc = r[2] - pb;
                if pc >= 0 && pc + pd == r[3] {
                    return true;
                }
            }
        }
        false
    };
    let base: Vec<i64> = n.iter().map(|&x| x as i64).collect();
    if !corner_here {
        return try_pattern(&base);
    }
    // One corner occupies exactly one sector; try all four.
    (0..4).any(|s| {
        let mut r = base.clone();
        r[s] -= 1;
        try_pattern(&r)
    })
}

/// Is the candidate search provably exhaustive within any finite cap?
/// Solutions to the linear conditions differ by vectors in the homogeneous
/// space; the set is unbounded exactly when that space meets the positive
/// orthant nontrivially. A zero-dimensional space (the usual case: some
/// non-disc face touches every region) is certain; one-dimensional spaces
/// are decided by inspecting the basis vector; anything larger is reported
/// as possibly incomplete.
fn enumeration_is_complete(d: &CurveDiagram, geo: &Geometry, corners: &CornerSequence) -> bool {
    let nfaces = d.faces.len();
    let disc: Vec<FaceId> = (0..nfaces).filter(|&f| d.faces[f].is_disc()).collect();
    if disc.is_empty() {
        return true;
    }
    let col_of: BTreeMap<FaceId, usize> = disc.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let involved: BTreeSet<CurveId> = corners.curves.iter().copied().collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    // Jump rows: zero on uninvolved arcs; vertex-balance rows per involved
    // curve (the homogeneous boundary chain must be a cycle); the Euler row.
    for (ai, a) in d.arcs.iter().enumerate() {
        let l = geo.side[&(ai, true)].0;
        let r = geo.side[&(ai, false)].0;
        let mut row = vec![0i64; disc.len()];
        if let Some(&cl) = col_of.get(&l) {
            row[cl] += 1;
        }
        if let Some(&cr) = col_of.get(&r) {
            row[cr] -= 1;
        }
        if !involved.contains(&a.curve) {
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        } else {
            // Balance at each vertex of the curve: sum of jumps in equals
            // sum out.
            // handled below per vertex
        }
    }
    for &c in &involved {
        let verts: BTreeSet<VertexId> = d
            .arcs
            .iter()
            .filter(|a| a.curve == c)
            .flat_map(|a| [a.from, a.to])
            .collect();
        for v in verts {
            let mut row = vec![0i64; disc.len()];
            for (ai, a) in d.arcs.iter().enumerate() {
                if a.curve != c {
                    continue;
                }
                let l = geo.side[&(ai, true)].0;
                let r = geo.side[&(ai, false)].0;
                let mut add = |f: FaceId, s: i64| {
                    if let Some(&cf) = col_of.get(&f) {
                        row[cf] += s;
                    }
                };
                if a.to == v {
                    add(l, 1);
                    add(r, -1);
                }
                if a.from == v {
                    add(l, -1);
                    add(r, 1);
                }
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    let mut euler = vec![0i64; disc.len()];
    for (i, &f) in disc.iter().enumerate() {
        let c_f = d.faces[f].walks.iter().map(Vec::len).sum::<usize>() as i64;
        euler[i] = 4 * d.faces[f].euler() - c_f;
    }
    rows.push(euler);
    let mat = ExactMatrix::<Rat>::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| crate::exactalg::Field::from_i64(x)).collect())
            .collect(),
    );
    let kernel = mat.kernel_basis();
    match kernel.len() {
        0 => true,
        1 => {
            use num_traits::Signed;
            let v = &kernel[0];
            let nonneg = v.iter().all(|x| !x.0.is_negative());
            let nonpos = v.iter().all(|x| !x.0.is_positive());
            // A mixed-sign line cannot meet the positive orthant.
            !(nonneg || nonpos)
        }
        _ => false,
    }
}

/// One certified development of a candidate domain.
struct Development {
    signature: Vec<(FaceId, Vec<Option<(usize, usize)>>)>,
    edge_paths: Vec<Vec<DirectedArc>>,
    edge_directions: Vec<i64>,
}

/// All ways the candidate develops into a disc realizing the corner
/// pattern.
fn develop(
    d: &CurveDiagram,
    geo: &Geometry,
    corners: &CornerSequence,
    m: &[usize],
) -> Vec<Development> {
    // Copies of each positive face.
    let mut copies: Vec<FaceId> = Vec::new();
    let mut copy_range: BTreeMap<FaceId, (usize, usize)> = BTreeMap::new();
    for (f, &mult) in m.iter().enumerate() {
        if mult > 0 {
            let start = copies.len();
            for _ in 0..mult {
                copies.push(f);
            }
            copy_range.insert(f, (start, copies.len()));
        }
    }
    if copies.is_empty() {
        return Vec::new();
    }
    let involved: BTreeSet<CurveId> = corners.curves.iter().copied().collect();
    // Arcs with sheets on either side.
    let mut glue_arcs: Vec<(usize, Vec<usize>, Vec<usize>, bool)> = Vec::new();
    for ai in 0..d.arcs.len() {
        let (lf, _) = geo.side[&(ai, true)];
        let (rf, _) = geo.side[&(ai, false)];
        let left_copies: Vec<usize> = copy_range
            .get(&lf)
            .map(|&(a, b)| (a..b).collect())
            .unwrap_or_default();
        let right_copies: Vec<usize> = copy_range
            .get(&rf)
            .map(|&(a, b)| (a..b).collect())
            .unwrap_or_default();
        if left_copies.is_empty() && right_copies.is_empty() {
            continue;
        }
        let on_boundary_curve = involved.contains(&d.arcs[ai].curve);
        glue_arcs.push((ai, left_copies, right_copies, on_boundary_curve));
    }
    // Backtrack over gluing schemes: per arc, a partial matching between
    // left and right copies; full on interior curves.
    let mut schemes: Vec<BTreeMap<usize, Vec<(usize, usize)>>> = Vec::new();
    let mut current: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    enumerate_matchings(&glue_arcs, 0, &mut current, &mut schemes);
    let mut developments = Vec::new();
    for scheme in schemes {
        if let Some(dev) = check_development(d, geo, corners, &copies, &scheme) {
            developments.push(dev);
        }
    }
    developments
}

fn enumerate_matchings(
    arcs: &[(usize, Vec<usize>, Vec<usize>, bool)],
    idx: usize,
    current: &mut BTreeMap<usize, Vec<(usize, usize)>>,
    out: &mut Vec<BTreeMap<usize, Vec<(usize, usize)>>>,
) {
    if idx == arcs.len() {
        out.push(current.clone());
        return;
    }
    let (arc, left, right, boundary_allowed) = &arcs[idx];
    let mut matchings = Vec::new();
    all_matchings(left, right, *boundary_allowed, &mut Vec::new(), &mut matchings);
    for matching in matchings {
        current.insert(*arc, matching);
        enumerate_matchings(arcs, idx + 1, current, out);
    }
    current.remove(arc);
}

/// All injective partial matchings between left and right copy sets; when
/// the arc is on an interior (uninvolved) curve the matching must be
/// perfect.
fn all_matchings(
    left: &[usize],
    right: &[usize],
    partial_allowed: bool,
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if left.is_empty() {
        if partial_allowed || right.is_empty() {
            out.push(acc.clone());
        }
        return;
    }
    let l = left[0];
    let rest = &left[1..];
    if partial_allowed {
        // l stays on the boundary.
        all_matchings(rest, right, partial_allowed, acc, out);
    }
    for (i, &r) in right.iter().enumerate() {
        let mut remaining: Vec<usize> = right.to_vec();
        remaining.remove(i);
        acc.push((l, r));
        all_matchings(rest, &remaining, partial_allowed, acc, out);
        acc.pop();
    }
}

/// Verify one gluing scheme develops into a disc with the prescribed
/// boundary pattern; extract the boundary data.
fn check_development(
    d: &CurveDiagram,
    geo: &Geometry,
    corners: &CornerSequence,
    copies: &[FaceId],
    scheme: &BTreeMap<usize, Vec<(usize, usize)>>,
) -> Option<Development> {
    let walk_of = |copy: usize| geo.disc_walk[copies[copy]].as_ref().unwrap();
    let walk_len = |copy: usize| walk_of(copy).len();
    // Slot gluing map: (copy, step) -> (copy', step').
    let mut glued: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut glue_count = 0usize;
    for (&arc, pairs) in scheme {
        let (lf, lpos) = geo.side[&(arc, true)];
        let (rf, rpos) = geo.side[&(arc, false)];
        let _ = (lf, rf);
        for &(lc, rc) in pairs {
            glued.insert((lc, lpos), (rc, rpos));
            glued.insert((rc, rpos), (lc, lpos));
            glue_count += 1;
        }
    }
    // Connectivity over copies.
    {
        let mut seen = vec![false; copies.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for s in 0..walk_len(c) {
                if let Some(&(c2, _)) = glued.get(&(c, s)) {
                    if !seen[c2] {
                        seen[c2] = true;
                        stack.push(c2);
                    }
                }
            }
        }
        if seen.iter().any(|&x| !x) {
            return None;
        }
    }
    // Sector-instance fans. Corner c of a copy sits after step c; its
    // arriving flank is step c, departing flank step c+1.
    let corner_info = |copy: usize, c: usize| geo.corner_at[&(copies[copy], c)];
    let neighbor = |copy: usize, c: usize, departing: bool| -> Option<(usize, usize)> {
        let len = walk_len(copy);
        if departing {
            let step = (c + 1) % len;
            let &(c2, s2) = glued.get(&(copy, step))?;
            let _ = s2;
            // Across the departing flank the neighbour's corner is the one
            // after its matching step.
            Some((c2, s2))
        } else {
            let step = c;
            let &(c2, s2) = glued.get(&(copy, step))?;
            let len2 = walk_len(c2);
            Some((c2, (s2 + len2 - 1) % len2))
        }
    };
    // Walk every fan once.
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut corner_fans: Vec<(usize, usize, VertexId)> = Vec::new(); // (copy, corner, vertex)
    let mut vertex_count = 0usize;
    for copy in 0..copies.len() {
        for c in 0..walk_len(copy) {
            if visited.contains(&(copy, c)) {
                continue;
            }
            // Collect the component containing (copy, c).
            let mut comp = vec![(copy, c)];
            visited.insert((copy, c));
            let mut frontier = vec![(copy, c)];
            while let Some((fc, fcor)) = frontier.pop() {
                for departing in [false, true] {
                    if let Some(nb) = neighbor(fc, fcor, departing) {
                        if visited.insert(nb) {
                            comp.push(nb);
                            frontier.push(nb);
                        }
                    }
                }
            }
            vertex_count += 1;
            // All instances over one diagram vertex.
            let (v0, _) = corner_info(comp[0].0, comp[0].1);
            if comp.iter().any(|&(cc, cr)| corner_info(cc, cr).0 != v0) {
                return None;
            }
            let sectors: BTreeSet<usize> =
                comp.iter().map(|&(cc, cr)| corner_info(cc, cr).1).collect();
            if sectors.len() != comp.len() {
                return None; // revisited sector: not locally injective
            }
            let open_ends: Vec<(usize, usize)> = comp
                .iter()
                .copied()
                .filter(|&(cc, cr)| {
                    neighbor(cc, cr, false).is_none() || neighbor(cc, cr, true).is_none()
                })
                .collect();
            let valence = d.vertices[v0].rotation.len();
            let is_cycle = open_ends.is_empty();
            if is_cycle {
                // Interior developed vertex: exactly one full turn.
                if comp.len() != valence {
                    return None;
                }
            } else {
                match (comp.len(), valence) {
                    (1, 4) => {
                        // Convex corner; must be one of the prescribed ones.
                        corner_fans.push((comp[0].0, comp[0].1, v0));
                    }
                    (2, 4) => {} // straight pass at a crossing
                    (1, 2) => {} // straight pass at a marked point
                    _ => return None,
                }
            }
        }
    }
    // Euler characteristic of the development.
    let slots: usize = (0..copies.len()).map(walk_len).sum();
    let boundary_slots = slots - 2 * glue_count;
    let chi = vertex_count as i64 - (glue_count + boundary_slots) as i64 + copies.len() as i64;
    if chi != 1 {
        return None;
    }
    // The corner fans must biject with the prescribed corners.
    let cyc = corners.corners_cyclic();
    if corner_fans.len() != cyc.len() {
        return None;
    }
    // Boundary traversal starting from the output corner.
    let output_fan = corner_fans
        .iter()
        .find(|&&(_, _, v)| v == corners.output)?
        .to_owned();
    let mut edge_paths: Vec<Vec<DirectedArc>> = Vec::new();
    let mut corner_order: Vec<VertexId> = vec![output_fan.2];
    let mut path: Vec<DirectedArc> = Vec::new();
    // Depart from the output corner.
    let mut cur_slot = {
        let (copy, c, _) = output_fan;
        let len = walk_len(copy);
        let step = (c + 1) % len;
        if glued.contains_key(&(copy, step)) {
            return None;
        }
        (copy, step)
    };
    let total_boundary = boundary_slots;
    let mut steps_taken = 0usize;
    loop {
        let (copy, step) = cur_slot;
        let darc = walk_of(copy)[step];
        path.push(darc);
        steps_taken += 1;
        if steps_taken > total_boundary {
            return None;
        }
        // Enter the fan at the corner after this step and walk to its open
        // departing end.
        let mut fan = (copy, step);
        let mut fan_len = 1usize;
        loop {
            match neighbor(fan.0, fan.1, true) {
                Some(nb) => {
                    fan = nb;
                    fan_len += 1;
                    if fan_len > 4 {
                        return None;
                    }
                }
                None => break,
            }
        }
        let (v, _) = corner_info(fan.0, fan.1);
        let vertex_kind_crossing =
            matches!(d.vertices[v].kind, VertexKind::Crossing { .. });
        if fan_len == 1 && vertex_kind_crossing {
            // Corner turn.
            edge_paths.push(std::mem::take(&mut path));
            if edge_paths.len() == cyc.len() {
                // Must close at the output corner.
                if v != corners.output {
                    return None;
                }
                break;
            }
            corner_order.push(v);
        }
        let len = walk_len(fan.0);
        let next_step = (fan.1 + 1) % len;
        if glued.contains_key(&(fan.0, next_step)) {
            return None;
        }
        cur_slot = (fan.0, next_step);
    }
    if steps_taken != total_boundary {
        return None;
    }
    if corner_order != cyc {
        return None;
    }
    // Edge curves and coherent directions.
    let mut edge_directions = Vec::new();
    for (k, path) in edge_paths.iter().enumerate() {
        let curve = corners.curves[k];
        let mut dir: Option<i64> = None;
        for &(arc, fwd) in path {
            if d.arcs[arc].curve != curve {
                return None;
            }
            let along = if fwd == d.curves[curve].forward { 1 } else { -1 };
            match dir {
                None => dir = Some(along),
                Some(x) if x == along => {}
                _ => return None,
            }
        }
        edge_directions.push(dir.expect("nonempty edge"));
    }
    // Canonical signature: BFS from the output corner's copy.
    let root = output_fan.0;
    let mut order: Vec<usize> = vec![root];
    let mut index: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut qi = 0;
    while qi < order.len() {
        let c = order[qi];
        qi += 1;
        for s in 0..walk_len(c) {
            if let Some(&(c2, _)) = glued.get(&(c, s)) {
                if !index.contains_key(&c2) {
                    index.insert(c2, order.len());
                    order.push(c2);
                }
            }
        }
    }
    let signature: Vec<(FaceId, Vec<Option<(usize, usize)>>)> = order
        .iter()
        .map(|&c| {
            let slots: Vec<Option<(usize, usize)>> = (0..walk_len(c))
                .map(|s| glued.get(&(c, s)).map(|&(c2, s2)| (index[&c2], s2)))
                .collect();
            (copies[c], slots)
        })
        .collect();
    Some(Development { signature, edge_paths, edge_directions })
}

/// The sign of a certified polygon from brane data: vertex contributions
/// (boundary orientation against the brane orientation at odd index) and
/// edge contributions (one minus sign per switching point traversed).
pub fn polygon_sign(_d: &CurveDiagram, b: &BraneAssignment, dom: &PolygonDomain) -> i64 {
    let cyc = dom.corner_seq.corners_cyclic();
    let n = cyc.len();
    let mut sign = 1i64;
    // Vertex rule: corner y_k (k >= 1) looks at the edge leaving it (edge k,
    // on curves[k]); the output corner looks at the edge arriving (the last
    // edge, also on the top curve).
    for k in 0..n {
        let (edge, vertex) = if k == 0 { (n - 1, cyc[0]) } else { (k, cyc[k]) };
        let against = dom.edge_directions[edge] < 0;
        let idx = b.indices[&vertex];
        if against && idx.rem_euclid(2) == 1 {
            sign = -sign;
        }
    }
    // Edge rule: -1 per traversal of the switching arc of the edge's curve.
    for (k, path) in dom.edge_paths.iter().enumerate() {
        let curve = dom.corner_seq.curves[k];
        let sw = b.switching_points[&curve];
        for &(arc, _) in path {
            if arc == sw {
                sign = -sign;
            }
        }
    }
    sign
}

/// The degree identity on a certified polygon: the output index equals the
/// sum of input indices plus `2 - d`.
pub fn degree_identity_holds(
    d: &CurveDiagram,
    b: &BraneAssignment,
    dom: &PolygonDomain,
) -> bool {
    let arity = dom.corner_seq.arity() as i64;
    let out = d.index_between(
        b,
        dom.corner_seq.output,
        dom.corner_seq.curves[0],
        *dom.corner_seq.curves.last().unwrap(),
    );
    let mut sum = 0i64;
    for (k, &y) in dom.corner_seq.inputs.iter().enumerate() {
        match d.index_between(b, y, dom.corner_seq.curves[k], dom.corner_seq.curves[k + 1]) {
            Some(i) => sum += i,
            None => return false,
        }
    }
    out == Some(sum + 2 - arity)
}

/// Check the index formula on every enumerated polygon and every declared
/// writhe walk; violations are reported.
pub fn check_index_consistency(
    d: &CurveDiagram,
    b: &BraneAssignment,
    polygons: &[PolygonDomain],
) -> Vec<String> {
    let mut errors = Vec::new();
    for (i, dom) in polygons.iter().enumerate() {
        if !degree_identity_holds(d, b, dom) {
            errors.push(format!(
                "polygon {i} with output {} violates the index identity",
                d.vertices[dom.corner_seq.output].name
            ));
        }
    }
    errors.extend(d.validate_branes(b).into_iter().filter(|e| e.contains("index formula")));
    errors
}

/// Exhaustive independent check over 0/1 multiplicity vectors: embedded
/// disc domains satisfying every invariant directly. Refuses on diagrams
/// with more faces than the cap.
pub fn oracle_embedded_polygons(
    d: &CurveDiagram,
    corners: &CornerSequence,
    face_cap: usize,
) -> Result<Vec<PolygonDomain>, ModuliError> {
    if d.faces.len() > face_cap {
        return Err(ModuliError::OracleRefused(format!(
            "{} faces exceeds the cap of {face_cap}",
            d.faces.len()
        )));
    }
    if !corners.composable(d) {
        return Err(ModuliError::NotComposable);
    }
    let geo = Geometry::new(d)?;
    let disc: Vec<FaceId> = (0..d.faces.len()).filter(|&f| d.faces[f].is_disc()).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1 << disc.len()) {
        let mut m = vec![0usize; d.faces.len()];
        for (i, &f) in disc.iter().enumerate() {
            if mask & (1 << i) != 0 {
                m[f] = 1;
            }
        }
        if let Some(dom) = oracle_check_subset(d, &geo, corners, &m) {
            out.push(dom);
        }
    }
    Ok(out)
}

/// Direct verification that the closed union of the chosen faces is an
/// embedded disc realizing the corner pattern.
fn oracle_check_subset(
    d: &CurveDiagram,
    geo: &Geometry,
    corners: &CornerSequence,
    m: &[usize],
) -> Option<PolygonDomain> {
    let chosen: BTreeSet<FaceId> =
        m.iter().enumerate().filter(|(_, &v)| v > 0).map(|(f, _)| f).collect();
    // Fans at every vertex.
    let corner_set: BTreeSet<VertexId> = corners.corners_cyclic().into_iter().collect();
    let mut corner_vertices = BTreeSet::new();
    for (vi, v) in d.vertices.iter().enumerate() {
        let valence = v.rotation.len();
        let covered: Vec<bool> = (0..valence)
            .map(|s| geo.sector_face.get(&(vi, s)).map_or(false, |f| chosen.contains(f)))
            .collect();
        let count = covered.iter().filter(|&&x| x).count();
        match (count, valence) {
            (0, _) => {}
            (c, va) if c == va => {} // interior vertex
            (1, 4) => {
                if !corner_set.contains(&vi) {
                    return None;
                }
                corner_vertices.insert(vi);
            }
            (2, 4) => {
                // Straight pass: the two sectors must be adjacent.
                let s0 = covered.iter().position(|&x| x).unwrap();
                let s1 = covered.iter().rposition(|&x| x).unwrap();
                let adjacent = (s1 - s0 == 1) || (s0 == 0 && s1 == 3);
                if !adjacent {
                    return None;
                }
            }
            (1, 2) => {}
            _ => return None,
        }
    }
    if corner_vertices != corner_set {
        return None;
    }
    // Connectivity through interior arcs and Euler characteristic of the
    // closure.
    let mut touched_arcs = BTreeSet::new();
    let mut touched_vertices = BTreeSet::new();
    let mut interior_arcs = BTreeSet::new();
    for ai in 0..d.arcs.len() {
        let l = chosen.contains(&geo.side[&(ai, true)].0);
        let r = chosen.contains(&geo.side[&(ai, false)].0);
        if l || r {
            touched_arcs.insert(ai);
            touched_vertices.insert(d.arcs[ai].from);
            touched_vertices.insert(d.arcs[ai].to);
        }
        if l && r {
            interior_arcs.insert(ai);
        }
    }
    let chi = touched_vertices.len() as i64 - touched_arcs.len() as i64 + chosen.len() as i64;
    if chi != 1 {
        return None;
    }
    {
        let list: Vec<FaceId> = chosen.iter().copied().collect();
        let pos: BTreeMap<FaceId, usize> =
            list.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut seen = vec![false; list.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &ai in &interior_arcs {
                let lf = geo.side[&(ai, true)].0;
                let rf = geo.side[&(ai, false)].0;
                if lf == list[i] || rf == list[i] {
                    for f in [lf, rf] {
                        let j = pos[&f];
                        if !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        if seen.iter().any(|&x| !x) {
            return None;
        }
    }
    // Trace the boundary with the region on the left, starting after the
    // output corner.
    let boundary_darcs: BTreeSet<DirectedArc> = (0..d.arcs.len())
        .flat_map(|ai| [(ai, true), (ai, false)])
        .filter(|&(ai, fwd)| {
            chosen.contains(&geo.side[&(ai, fwd)].0) && !chosen.contains(&geo.side[&(ai, !fwd)].0)
        })
        .collect();
    if boundary_darcs.is_empty() {
        return None;
    }
    // Find the directed arc leaving the output corner along the bottom
    // curve: at the output corner the covered sector's departing end.
    let start = {
        let v = corners.output;
        let valence = d.vertices[v].rotation.len();
        let sector = (0..valence).find(|&s| {
            geo.sector_face.get(&(v, s)).map_or(false, |f| chosen.contains(f))
        })?;
        // The sector between rotation[s] and rotation[s+1]: its departing
        // flank is rotation[s].
        let dep = d.vertices[v].rotation[sector];
        (dep.arc, dep.end == crate::diagram::EndKind::Tail)
    };
    if !boundary_darcs.contains(&start) {
        return None;
    }
    let cyc = corners.corners_cyclic();
    let mut edge_paths: Vec<Vec<DirectedArc>> = Vec::new();
    let mut corner_order = vec![corners.output];
    let mut path = Vec::new();
    let mut cur = start;
    let mut steps = 0usize;
    loop {
        path.push(cur);
        steps += 1;
        if steps > boundary_darcs.len() {
            return None;
        }
        // Cross the head vertex: sweep clockwise over covered sectors.
        let (v, e) = d.head_of(cur);
        let valence = d.vertices[v].rotation.len();
        let pos = d.rotation_position(v, e)?;
        // Sector below the arrival end (clockwise side) is the first the
        // region occupies.
        let mut s = (pos + valence - 1) % valence;
        let mut swept = 0usize;
        loop {
            let covered =
                geo.sector_face.get(&(v, s)).map_or(false, |f| chosen.contains(f));
            if !covered {
                return None;
            }
            swept += 1;
            if swept > valence {
                return None;
            }
            // Next sector clockwise; stop when the flank end leads out of
            // the region.
            let flank = d.vertices[v].rotation[s];
            let out_dir = (flank.arc, flank.end == crate::diagram::EndKind::Tail);
            if boundary_darcs.contains(&out_dir) {
                // Corner count: swept == 1 at a crossing corner.
                let is_crossing = matches!(d.vertices[v].kind, VertexKind::Crossing { .. });
                if swept == 1 && is_crossing {
                    edge_paths.push(std::mem::take(&mut path));
                    if edge_paths.len() == cyc.len() {
                        if v != corners.output || out_dir != start {
                            return None;
                        }
                    } else {
                        corner_order.push(v);
                    }
                } else if swept == 1 && !is_crossing {
                    // straight through a marked point
                } else if swept != 2 || !is_crossing {
                    return None;
                }
                cur = out_dir;
                break;
            }
            s = (s + valence - 1) % valence;
        }
        if edge_paths.len() == cyc.len() {
            break;
        }
    }
    if steps != boundary_darcs.len() || corner_order != cyc {
        return None;
    }
    let mut edge_directions = Vec::new();
    for (k, path) in edge_paths.iter().enumerate() {
        let curve = corners.curves[k];
        let mut dir: Option<i64> = None;
        for &(arc, fwd) in path {
            if d.arcs[arc].curve != curve {
                return None;
            }
            let along = if fwd == d.curves[curve].forward { 1 } else { -1 };
            match dir {
                None => dir = Some(along),
                Some(x) if x == along => {}
                _ => return None,
            }
        }
        edge_directions.push(dir?);
    }
    Some(PolygonDomain {
        multiplicities: chosen.iter().map(|&f| (f, 1)).collect(),
        corner_seq: corners.clone(),
        edge_paths,
        edge_directions,
    })
}

/// Every composable corner sequence of a diagram: strictly increasing curve
/// subsets with one crossing chosen per consecutive pair and per the outer
/// pair.
pub fn all_corner_sequences(d: &CurveDiagram) -> Vec<CornerSequence> {
    let n = d.curves.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let curves: Vec<CurveId> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if curves.len() < 2 {
            continue;
        }
        let mut choices: Vec<Vec<VertexId>> = Vec::new();
        for w in curves.windows(2) {
            choices.push(d.crossings_of(w[0], w[1]));
        }
        let outputs = d.crossings_of(curves[0], *curves.last().unwrap());
        if choices.iter().any(Vec::is_empty) || outputs.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let inputs: Vec<VertexId> =
                idx.iter().enumerate().map(|(i, &j)| choices[i][j]).collect();
            for &output in &outputs {
                out.push(CornerSequence { curves: curves.clone(), inputs: inputs.clone(), output });
            }
            let mut carry = idx.len();
            while carry > 0 {
                idx[carry - 1] += 1;
                if idx[carry - 1] < choices[carry - 1].len() {
                    break;
                }
                idx[carry - 1] = 0;
                carry -= 1;
            }
            if carry == 0 {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as fx;

    fn seq(d: &CurveDiagram, curves: &[&str], inputs: &[&str], output: &str) -> CornerSequence {
        CornerSequence {
            curves: curves.iter().map(|c| d.curve_by_name(c).unwrap()).collect(),
            inputs: inputs.iter().map(|v| d.vertex_by_name(v).unwrap()).collect(),
            output: d.vertex_by_name(output).unwrap(),
        }
    }

    #[test]
    fn triangle_count_two_one_zero() {
        let cases = [(fx::pi1(), 2usize), (fx::pi2(), 1), (fx::pi3(), 0)];
        for ((d, _), expect) in cases {
            let corners = seq(&d, &["L1", "L2", "L3"], &["p12", "p23"], "p13");
            let res = enumerate_polygons(&d, &corners, DEFAULT_MULT_CAP).unwrap();
            assert!(res.complete);
            assert_eq!(res.polygons.len(), expect);
        }
    }

    #[test]
    fn triangle_signs_cancel_on_the_two_disc_configuration() {
        let (d, b) = fx::pi1();
        let corners = seq(&d, &["L1", "L2", "L3"], &["p12", "p23"], "p13");
        let res = enumerate_polygons(&d, &corners, DEFAULT_MULT_CAP).unwrap();
        let signs: Vec<i64> =
            res.polygons.iter().map(|p| polygon_sign(&d, &b, p)).collect();
        assert_eq!(signs.iter().sum::<i64>(), 0);
        assert_eq!(signs.len(), 2);
    }

    #[test]
    fn single_triangle_is_positive() {
        let (d, b) = fx::pi2();
        let corners = seq(&d, &["L1", "L2", "L3"], &["p12", "p23"], "p13");
        let res = enumerate_polygons(&d, &corners, DEFAULT_MULT_CAP).unwrap();
        assert_eq!(res.polygons.len(), 1);
        assert_eq!(polygon_sign(&d, &b, &res.polygons[0]), 1);
    }

    #[test]
    fn annulus_bigons_pair_with_opposite_signs() {
        let (d, b) = fx::annulus_bigons();
        let p = d.vertex_by_name("q").unwrap();
        let q = d.vertex_by_name("p").unwrap();
        // Input q (index 0), output p (index 1).
        let res = enumerate_bigons(&d, p, q, DEFAULT_MULT_CAP).unwrap();
        assert_eq!(res.polygons.len(), 2);
        let signs: Vec<i64> =
            res.polygons.iter().map(|dom| polygon_sign(&d, &b, dom)).collect();
        assert_eq!(signs.iter().sum::<i64>(), 0);
        // The reverse-ordered space is empty.
        let rev = enumerate_bigons(&d, q, p, DEFAULT_MULT_CAP).unwrap();
        assert!(rev.polygons.is_empty());
    }

    #[test]
    fn pants_bigon_is_single_and_positive() {
        let (d, b) = fx::pants_bigon();
        let input = d.vertex_by_name("q").unwrap();
        let output = d.vertex_by_name("p").unwrap();
        let res = enumerate_bigons(&d, input, output, DEFAULT_MULT_CAP).unwrap();
        assert_eq!(res.polygons.len(), 1);
        assert_eq!(polygon_sign(&d, &b, &res.polygons[0]), 1);
    }

    #[test]
    fn degree_identity_on_all_enumerated_polygons() {
        for (d, b) in [fx::pi1(), fx::pi2(), fx::annulus_bigons(), fx::pants_bigon()] {
            for domains in all_spaces(&d) {
                for dom in &domains {
                    assert!(degree_identity_holds(&d, &b, dom));
                }
            }
        }
    }

    fn all_spaces(d: &CurveDiagram) -> Vec<Vec<PolygonDomain>> {
        all_corner_sequences(d)
            .iter()
            .map(|c| enumerate_polygons(d, c, DEFAULT_MULT_CAP).unwrap().polygons)
            .collect()
    }

    #[test]
    fn oracle_matches_enumeration_at_cap_one() {
        let diagrams = [
            fx::pi1().0,
            fx::pi2().0,
            fx::pi3().0,
            fx::annulus_bigons().0,
            fx::pants_bigon().0,
            fx::torus_double().0,
        ];
        for d in &diagrams {
            for corners in all_corner_sequences(d) {
                let fast = enumerate_polygons(d, &corners, 1).unwrap();
                let slow = oracle_embedded_polygons(d, &corners, 12).unwrap();
                assert_eq!(
                    fast.polygons.len(),
                    slow.len(),
                    "mismatch on corner sequence {corners:?}"
                );
                let fast_m: BTreeSet<Vec<(FaceId, usize)>> = fast
                    .polygons
                    .iter()
                    .map(|p| p.multiplicities.iter().map(|(&f, &m)| (f, m)).collect())
                    .collect();
                let slow_m: BTreeSet<Vec<(FaceId, usize)>> = slow
                    .iter()
                    .map(|p| p.multiplicities.iter().map(|(&f, &m)| (f, m)).collect())
                    .collect();
                assert_eq!(fast_m, slow_m);
            }
        }
    }

    #[test]
    fn moving_a_switching_point_across_a_corner_flips_the_sign() {
        let (d, mut b) = fx::pi2();
        let corners = seq(&d, &["L1", "L2", "L3"], &["p12", "p23"], "p13");
        let dom =
            enumerate_polygons(&d, &corners, 1).unwrap().polygons.pop().unwrap();
        let before = polygon_sign(&d, &b, &dom);
        // L1's switching point moves from a2 (off the triangle) to a1 (on it).
        b.switching_points.insert(0, d.arc_by_name("a1").unwrap());
        let after = polygon_sign(&d, &b, &dom);
        assert_eq!(before, -after);
    }
}
