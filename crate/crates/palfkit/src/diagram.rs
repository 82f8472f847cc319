//! Combinatorial model of an ordered system of oriented curves in general
//! position on an oriented surface with boundary.
//!
//! The surface is presented as a ribbon structure: vertices (transverse
//! crossings of two curves, plus artificial marked points that split
//! crossing-free curves), arcs between vertices, and a counterclockwise
//! cyclic order of arc-ends at every vertex. Complementary faces are part of
//! the input and are re-derived during validation: walking a face keeps it
//! on the left, so arriving at an end we depart from its clockwise
//! neighbour. Faces carry their genus and the number of surface boundary
//! circles they contain, since complementary regions of a small curve system
//! on a large surface need not be discs.
//!
//! Crossing signs: a crossing of curves `i < j` counts `+1` when the
//! outgoing direction of the later curve is the clockwise neighbour of the
//! outgoing direction of the earlier curve, `-1` otherwise. This is the
//! orientation convention under which the intersection pairing of the
//! shipped configurations matches the Euler pairing of their categories up
//! to per-curve orientation reversals.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exactalg::IntMatrix;

pub type CurveId = usize;
pub type ArcId = usize;
pub type VertexId = usize;
pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Transverse crossing of two distinct curves, recorded lower-first.
    Crossing { lower: CurveId, higher: CurveId },
    /// Artificial valence-2 point on one curve.
    Marked { curve: CurveId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndKind {
    Tail,
    Head,
}

/// One arc-end in a vertex rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArcEnd {
    pub arc: ArcId,
    pub end: EndKind,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
    /// Counterclockwise cyclic order of incident arc-ends: length 4 at a
    /// crossing, 2 at a marked point.
    pub rotation: Vec<ArcEnd>,
}

#[derive(Clone, Debug)]
pub struct Arc {
    pub name: String,
    pub curve: CurveId,
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub name: String,
    /// True: the brane orientation traverses arcs from tail to head.
    pub forward: bool,
    /// Class in H1 of the fibre, length 2g + k - 1.
    pub homology: Vec<i64>,
}

/// One step of a face walk: an arc traversed forward or backward with the
/// face on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WalkStep {
    pub arc: ArcId,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub name: String,
    /// Boundary walks; a disc has one, a region between nested components
    /// has several.
    pub walks: Vec<Vec<WalkStep>>,
    pub genus: usize,
    /// Number of surface boundary circles inside this region.
    pub boundary_circles: usize,
}

impl Face {
    /// Euler characteristic of the compact region.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.walks.len() as i64 - self.boundary_circles as i64
    }

    pub fn is_disc(&self) -> bool {
        self.genus == 0 && self.boundary_circles == 0 && self.walks.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct CurveDiagram {
    pub genus: usize,
    pub boundary_count: usize,
    pub curves: Vec<Curve>,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
    pub faces: Vec<Face>,
}

/// Grading and switching-point data attached to a diagram.
#[derive(Clone, Debug, Default)]
pub struct BraneAssignment {
    /// Index of each crossing, recorded for the (lower, higher) curve pair.
    pub indices: BTreeMap<VertexId, i64>,
    /// Switching point of each curve: the arc carrying it.
    pub switching_points: BTreeMap<CurveId, ArcId>,
    pub declared_writhes: Vec<DeclaredWrithe>,
}

/// A closed left-turning walk along the curve system with a user-declared
/// writhe of its smoothing, in half-turn units: the tangent line of a
/// smoothed simple positively-oriented polygon boundary makes two half
/// turns. Correctness of the declared value (including concatenation
/// corrections) is the responsibility of whoever prepares the data; the
/// validator checks the index-formula identity against it.
#[derive(Clone, Debug)]
pub struct DeclaredWrithe {
    pub name: String,
    /// Legs `(at, along)`: start at crossing `at`, travel along curve
    /// `along` to the next leg's crossing.
    pub legs: Vec<(VertexId, CurveId)>,
    pub writhe: i64,
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("{0}")]
    Structure(String),
}

/// A directed arc: traversing `arc` forward or backward.
pub type DirectedArc = (ArcId, bool);

impl CurveDiagram {
    pub fn crossings(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len())
            .filter(|&v| matches!(self.vertices[v].kind, VertexKind::Crossing { .. }))
    }

    pub fn crossing_curves(&self, v: VertexId) -> Option<(CurveId, CurveId)> {
        match self.vertices[v].kind {
            VertexKind::Crossing { lower, higher } => Some((lower, higher)),
            VertexKind::Marked { .. } => None,
        }
    }

    /// Crossings of the (unordered) curve pair, in vertex order.
    pub fn crossings_of(&self, a: CurveId, b: CurveId) -> Vec<VertexId> {
        let key = (a.min(b), a.max(b));
        self.crossings().filter(|&v| self.crossing_curves(v) == Some(key)).collect()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn arc_by_name(&self, name: &str) -> Option<ArcId> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn curve_by_name(&self, name: &str) -> Option<CurveId> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn face_by_name(&self, name: &str) -> Option<FaceId> {
        self.faces.iter().position(|f| f.name == name)
    }

    /// Head of a directed arc: the vertex it runs into and the end there.
    pub fn head_of(&self, d: DirectedArc) -> (VertexId, ArcEnd) {
        let (arc, fwd) = d;
        if fwd {
            (self.arcs[arc].to, ArcEnd { arc, end: EndKind::Head })
        } else {
            (self.arcs[arc].from, ArcEnd { arc, end: EndKind::Tail })
        }
    }

    pub fn rotation_position(&self, v: VertexId, e: ArcEnd) -> Option<usize> {
        self.vertices[v].rotation.iter().position(|&x| x == e)
    }

    /// Next directed arc of the left-face walk through `d`, with the turning
    /// vertex and the sector index occupied by the face corner there.
    pub fn left_face_step(
        &self,
        d: DirectedArc,
    ) -> Result<(DirectedArc, VertexId, usize), DiagramError> {
        let (v, e) = self.head_of(d);
        let rot = &self.vertices[v].rotation;
        let pos = self.rotation_position(v, e).ok_or_else(|| {
            DiagramError::Structure(format!(
                "arc end {:?} missing from rotation of vertex {}",
                e, self.vertices[v].name
            ))
        })?;
        let dep_pos = (pos + rot.len() - 1) % rot.len();
        let dep = rot[dep_pos];
        let next = (dep.arc, dep.end == EndKind::Tail);
        Ok((next, v, dep_pos))
    }

    /// Trace the face walk containing the directed arc.
    pub fn trace_walk(&self, start: DirectedArc) -> Result<Vec<WalkStep>, DiagramError> {
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            walk.push(WalkStep { arc: cur.0, forward: cur.1 });
            let (next, _, _) = self.left_face_step(cur)?;
            cur = next;
            if cur == start {
                break;
            }
            if walk.len() > 4 * self.arcs.len() + 4 {
                return Err(DiagramError::Structure("face walk fails to close".into()));
            }
        }
        Ok(walk)
    }

    /// All face walks; every directed arc is visited exactly once.
    pub fn trace_all_walks(&self) -> Result<Vec<Vec<WalkStep>>, DiagramError> {
        let mut seen: BTreeSet<DirectedArc> = BTreeSet::new();
        let mut walks = Vec::new();
        for arc in 0..self.arcs.len() {
            for fwd in [true, false] {
                if seen.contains(&(arc, fwd)) {
                    continue;
                }
                let walk = self.trace_walk((arc, fwd))?;
                for s in &walk {
                    if !seen.insert((s.arc, s.forward)) {
                        return Err(DiagramError::Structure(format!(
                            "directed arc {} visited by two walks",
                            self.arcs[s.arc].name
                        )));
                    }
                }
                walks.push(walk);
            }
        }
        Ok(walks)
    }

    /// Face on the left of a directed arc.
    pub fn left_face(&self, d: DirectedArc) -> FaceId {
        let step = WalkStep { arc: d.0, forward: d.1 };
        self.faces
            .iter()
            .position(|f| f.walks.iter().any(|w| w.contains(&step)))
            .expect("validated diagram covers every directed arc")
    }

    /// Cyclic successor arc of the same curve through the head of `arc`.
    fn next_arc_on_curve(&self, arc: ArcId) -> Result<ArcId, DiagramError> {
        let v = self.arcs[arc].to;
        let curve = self.arcs[arc].curve;
        let candidates: Vec<ArcId> = self.vertices[v]
            .rotation
            .iter()
            .filter(|e| e.end == EndKind::Tail && self.arcs[e.arc].curve == curve)
            .map(|e| e.arc)
            .collect();
        match candidates.as_slice() {
            [one] => Ok(*one),
            _ => Err(DiagramError::Structure(format!(
                "arcs of curve {} do not chain tail-to-head at vertex {}",
                self.curves[curve].name, self.vertices[v].name
            ))),
        }
    }

    /// Arcs of the curve in traversal (tail-to-head) cyclic order.
    pub fn curve_cycle(&self, curve: CurveId) -> Result<Vec<ArcId>, DiagramError> {
        let first = self.arcs.iter().position(|a| a.curve == curve).ok_or_else(|| {
            DiagramError::Structure(format!("curve {} has no arcs", self.curves[curve].name))
        })?;
        let mut cycle = vec![first];
        let mut cur = first;
        loop {
            cur = self.next_arc_on_curve(cur)?;
            if cur == first {
                break;
            }
            cycle.push(cur);
            if cycle.len() > self.arcs.len() {
                return Err(DiagramError::Structure("curve cycle fails to close".into()));
            }
        }
        Ok(cycle)
    }

    /// The curve's outgoing arc-end at a vertex, following the brane
    /// orientation.
    pub fn outgoing_end(&self, v: VertexId, curve: CurveId) -> Result<ArcEnd, DiagramError> {
        let fwd = self.curves[curve].forward;
        let hits: Vec<ArcEnd> = self.vertices[v]
            .rotation
            .iter()
            .copied()
            .filter(|e| {
                self.arcs[e.arc].curve == curve
                    && ((fwd && e.end == EndKind::Tail) || (!fwd && e.end == EndKind::Head))
            })
            .collect();
        match hits.as_slice() {
            [one] => Ok(*one),
            _ => Err(DiagramError::Structure(format!(
                "curve {} has no unique outgoing end at vertex {}",
                self.curves[curve].name, self.vertices[v].name
            ))),
        }
    }

    /// Sign of a crossing: `+1` when the later curve's outgoing direction is
    /// the clockwise neighbour of the earlier curve's outgoing direction.
    pub fn crossing_sign(&self, v: VertexId) -> Result<i64, DiagramError> {
        let (lo, hi) = self.crossing_curves(v).ok_or_else(|| {
            DiagramError::Structure(format!("vertex {} is not a crossing", self.vertices[v].name))
        })?;
        let out_lo = self.outgoing_end(v, lo)?;
        let out_hi = self.outgoing_end(v, hi)?;
        let p_lo = self.rotation_position(v, out_lo).unwrap();
        let p_hi = self.rotation_position(v, out_hi).unwrap();
        if (p_lo + 4 - 1) % 4 == p_hi {
            Ok(1)
        } else if (p_lo + 1) % 4 == p_hi {
            Ok(-1)
        } else {
            Err(DiagramError::Structure(format!(
                "transversality violated at {}",
                self.vertices[v].name
            )))
        }
    }

    /// Signed intersection matrix over the curve order.
    pub fn intersection_matrix(&self) -> Result<IntMatrix, DiagramError> {
        let n = self.curves.len();
        let mut m = IntMatrix::new(n, n);
        for v in self.crossings() {
            let (lo, hi) = self.crossing_curves(v).unwrap();
            let s = self.crossing_sign(v)?;
            let cur = m.get(lo, hi).clone();
            m.set(lo, hi, cur + s);
            let cur = m.get(hi, lo).clone();
            m.set(hi, lo, cur - s);
        }
        Ok(m)
    }

    /// Validate all structural invariants; every violation is reported.
    pub fn validate(&self) -> Vec<String> {
        let mut errors = Vec::new();
        let dim = 2 * self.genus + self.boundary_count.saturating_sub(1);
        if self.boundary_count == 0 {
            errors.push("surface must have at least one boundary circle".into());
        }
        let mut end_count: BTreeMap<ArcEnd, usize> = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            match &v.kind {
                VertexKind::Crossing { lower, higher } => {
                    if lower >= higher {
                        errors.push(format!(
                            "crossing {} must name two distinct curves in order",
                            v.name
                        ));
                        continue;
                    }
                    if *higher >= self.curves.len() {
                        errors.push(format!("crossing {} names an unknown curve", v.name));
                        continue;
                    }
                    if v.rotation.len() != 4 {
                        errors.push(format!("crossing {} needs 4 arc-ends", v.name));
                        continue;
                    }
                    let curves_at: Vec<Option<CurveId>> =
                        v.rotation.iter().map(|e| self.arcs.get(e.arc).map(|a| a.curve)).collect();
                    let named = |c: &Option<CurveId>| *c == Some(*lower) || *c == Some(*higher);
                    if !curves_at.iter().all(named) {
                        errors.push(format!(
                            "crossing {} rotation lists an arc on neither named curve",
                            v.name
                        ));
                    } else if !(curves_at[0] == curves_at[2]
                        && curves_at[1] == curves_at[3]
                        && curves_at[0] != curves_at[1])
                    {
                        errors.push(format!(
                            "crossing {} rotation does not alternate between its two curves",
                            v.name
                        ));
                    }
                }
                VertexKind::Marked { curve } => {
                    if *curve >= self.curves.len() {
                        errors.push(format!("marked point {} names an unknown curve", v.name));
                        continue;
                    }
                    if v.rotation.len() != 2 {
                        errors.push(format!("marked point {} needs 2 arc-ends", v.name));
                    }
                    for e in &v.rotation {
                        if self.arcs.get(e.arc).map(|a| a.curve) != Some(*curve) {
                            errors
                                .push(format!("marked point {} rotation lists a foreign arc", v.name));
                        }
                    }
                }
            }
            for e in &v.rotation {
                *end_count.entry(*e).or_insert(0) += 1;
                let ok = match e.end {
                    EndKind::Tail => self.arcs.get(e.arc).map(|a| a.from) == Some(vi),
                    EndKind::Head => self.arcs.get(e.arc).map(|a| a.to) == Some(vi),
                };
                if !ok {
                    errors.push(format!("rotation of {} lists an arc-end not incident to it", v.name));
                }
            }
        }
        for (ai, a) in self.arcs.iter().enumerate() {
            for end in [EndKind::Tail, EndKind::Head] {
                if end_count.get(&ArcEnd { arc: ai, end }).copied().unwrap_or(0) != 1 {
                    errors.push(format!(
                        "arc {} {:?} end must appear in exactly one rotation",
                        a.name, end
                    ));
                }
            }
            if a.curve >= self.curves.len() {
                errors.push(format!("arc {} names an unknown curve", a.name));
            }
        }
        if !errors.is_empty() {
            return errors;
        }
        for c in 0..self.curves.len() {
            match self.curve_cycle(c) {
                Ok(cycle) => {
                    let total = self.arcs.iter().filter(|a| a.curve == c).count();
                    if cycle.len() != total {
                        errors.push(format!(
                            "curve {} splits into more than one cycle",
                            self.curves[c].name
                        ));
                    }
                }
                Err(e) => errors.push(e.to_string()),
            }
            if self.curves[c].homology.len() != dim {
                errors.push(format!(
                    "curve {} homology class must have length {dim}",
                    self.curves[c].name
                ));
            }
        }
        // Faces: the declared walks must be exactly the traced orbits.
        match self.trace_all_walks() {
            Ok(traced) => {
                let mut traced_keys: BTreeMap<Vec<WalkStep>, usize> =
                    traced.iter().map(|w| (canonical_walk(w), 0)).collect();
                for f in &self.faces {
                    for w in &f.walks {
                        match traced_keys.get_mut(&canonical_walk(w)) {
                            Some(count) => *count += 1,
                            None => errors
                                .push(format!("face {} declares a walk that does not close up", f.name)),
                        }
                    }
                }
                for (walk, count) in &traced_keys {
                    if *count != 1 {
                        errors.push(format!(
                            "traced walk through arc {} declared {count} times",
                            self.arcs[walk[0].arc].name
                        ));
                    }
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
        // Euler characteristic with honest per-face contributions.
        let v_cells = self.vertices.len() as i64;
        let e_cells = self.arcs.len() as i64;
        let f_euler: i64 = self.faces.iter().map(Face::euler).sum();
        let chi = 2 - 2 * self.genus as i64 - self.boundary_count as i64;
        if v_cells - e_cells + f_euler != chi {
            errors.push(format!(
                "Euler characteristic mismatch: V - E + sum chi(f) = {} but the surface needs {chi}",
                v_cells - e_cells + f_euler
            ));
        }
        let bnd_total: usize = self.faces.iter().map(|f| f.boundary_circles).sum();
        if bnd_total != self.boundary_count {
            errors.push(format!(
                "{} boundary circles distributed over faces, surface has {}",
                bnd_total, self.boundary_count
            ));
        }
        // Homology classes against crossing parity.
        for i in 0..self.curves.len() {
            for j in i + 1..self.curves.len() {
                if self.curves[i].homology.len() != dim || self.curves[j].homology.len() != dim {
                    continue;
                }
                let pairing =
                    symplectic_pairing(&self.curves[i].homology, &self.curves[j].homology, self.genus);
                let crossings = self.crossings_of(i, j).len() as i64;
                if (pairing - crossings).rem_euclid(2) != 0 {
                    errors.push(format!(
                        "homology classes of {} and {} disagree with their crossing count mod 2",
                        self.curves[i].name, self.curves[j].name
                    ));
                }
            }
        }
        errors
    }

    /// Validate brane data against the diagram.
    pub fn validate_branes(&self, b: &BraneAssignment) -> Vec<String> {
        let mut errors = Vec::new();
        for v in self.crossings() {
            if !b.indices.contains_key(&v) {
                errors.push(format!("crossing {} has no index", self.vertices[v].name));
            }
        }
        for (&v, _) in &b.indices {
            if v >= self.vertices.len() || self.crossing_curves(v).is_none() {
                errors.push(format!("index assigned to non-crossing vertex {v}"));
            }
        }
        for (c, curve) in self.curves.iter().enumerate() {
            match b.switching_points.get(&c) {
                None => errors.push(format!("curve {} has no switching point", curve.name)),
                Some(&arc) => {
                    if self.arcs.get(arc).map(|a| a.curve) != Some(c) {
                        errors.push(format!("switching point of {} sits on a foreign arc", curve.name));
                    }
                }
            }
        }
        for w in &b.declared_writhes {
            if let Err(e) = self.check_declared_writhe(b, w) {
                errors.push(e);
            }
        }
        errors
    }

    /// Index of a crossing generator viewed as a morphism `from -> to`;
    /// reversing the curve order replaces `i` by `1 - i`.
    pub fn index_between(
        &self,
        b: &BraneAssignment,
        v: VertexId,
        from: CurveId,
        to: CurveId,
    ) -> Option<i64> {
        let (lo, hi) = self.crossing_curves(v)?;
        if (from, to) != (lo, hi) && (to, from) != (lo, hi) {
            return None;
        }
        let i = *b.indices.get(&v)?;
        Some(if from < to { i } else { 1 - i })
    }

    /// The index-formula identity on a declared walk: the base index equals
    /// the sum of the other indices plus `writhe - n`.
    fn check_declared_writhe(&self, b: &BraneAssignment, w: &DeclaredWrithe) -> Result<(), String> {
        let legs = w.legs.len();
        if legs < 2 {
            return Err(format!("walk {} needs at least two legs", w.name));
        }
        let mut indices = Vec::new();
        for k in 0..legs {
            let (y, depart) = w.legs[k];
            let arrive = w.legs[(k + legs - 1) % legs].1;
            let idx = if k == 0 {
                // Base point: degree as a morphism depart -> arrive.
                self.index_between(b, y, depart, arrive)
            } else {
                self.index_between(b, y, arrive, depart)
            };
            let idx = idx.ok_or_else(|| {
                format!("walk {}: leg {k} does not join its two curves", w.name)
            })?;
            indices.push(idx);
        }
        let n = legs as i64 - 1;
        let rhs: i64 = indices[1..].iter().sum::<i64>() + w.writhe - n;
        if indices[0] != rhs {
            return Err(format!("walk {}: index formula fails ({} vs {rhs})", w.name, indices[0]));
        }
        Ok(())
    }

    /// Floer generators of the ordered pair `(i, j)`: one per crossing, with
    /// its brane index as the degree.
    pub fn intersection_generators(
        &self,
        b: &BraneAssignment,
        i: CurveId,
        j: CurveId,
    ) -> Result<Vec<(VertexId, i64)>, DiagramError> {
        if i >= j {
            return Err(DiagramError::Structure(
                "generators exist for strictly increasing curve pairs only".into(),
            ));
        }
        Ok(self
            .crossings_of(i, j)
            .into_iter()
            .map(|v| (v, *b.indices.get(&v).expect("validated brane data")))
            .collect())
    }

    /// Sub-diagram spanned by a subset of curves. Crossings with removed
    /// curves disappear, arcs concatenate through them, crossing-free
    /// leftovers get a marked point, and faces merge with honest genus and
    /// boundary bookkeeping.
    pub fn remove_curves(&self, keep: &[CurveId]) -> Result<CurveDiagram, DiagramError> {
        let keep_set: BTreeSet<CurveId> = keep.iter().copied().collect();
        let curve_map: BTreeMap<CurveId, usize> =
            keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let vertex_kept = |v: &Vertex| match v.kind {
            VertexKind::Crossing { lower, higher } => {
                keep_set.contains(&lower) && keep_set.contains(&higher)
            }
            VertexKind::Marked { curve } => keep_set.contains(&curve),
        };
        let mut old_to_new: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut new_arcs: Vec<Arc> = Vec::new();
        let mut new_vertices: Vec<Vertex> = Vec::new();
        let mut vertex_map: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if vertex_kept(v) {
                vertex_map.insert(vi, new_vertices.len());
                let kind = match v.kind {
                    VertexKind::Crossing { lower, higher } => VertexKind::Crossing {
                        lower: curve_map[&lower],
                        higher: curve_map[&higher],
                    },
                    VertexKind::Marked { curve } => VertexKind::Marked { curve: curve_map[&curve] },
                };
                new_vertices.push(Vertex { name: v.name.clone(), kind, rotation: Vec::new() });
            }
        }
        for &c in keep {
            let cycle = self.curve_cycle(c)?;
            let kept_positions: Vec<usize> = cycle
                .iter()
                .enumerate()
                .filter(|(_, &a)| vertex_kept(&self.vertices[self.arcs[a].from]))
                .map(|(i, _)| i)
                .collect();
            if kept_positions.is_empty() {
                let mv = new_vertices.len();
                let na = new_arcs.len();
                new_vertices.push(Vertex {
                    name: format!("m_{}", self.curves[c].name),
                    kind: VertexKind::Marked { curve: curve_map[&c] },
                    rotation: vec![
                        ArcEnd { arc: na, end: EndKind::Tail },
                        ArcEnd { arc: na, end: EndKind::Head },
                    ],
                });
                new_arcs.push(Arc {
                    name: format!("loop_{}", self.curves[c].name),
                    curve: curve_map[&c],
                    from: mv,
                    to: mv,
                });
                for &a in &cycle {
                    old_to_new.insert(a, na);
                }
                continue;
            }
            for (ki, &start_pos) in kept_positions.iter().enumerate() {
                let end_pos = kept_positions[(ki + 1) % kept_positions.len()];
                let na = new_arcs.len();
                let first_old = cycle[start_pos];
                let mut run = vec![first_old];
                let mut p = start_pos;
                loop {
                    let next = (p + 1) % cycle.len();
                    if next == end_pos {
                        break;
                    }
                    run.push(cycle[next]);
                    p = next;
                    if run.len() > cycle.len() {
                        return Err(DiagramError::Structure("arc run fails to close".into()));
                    }
                }
                let last_old = *run.last().unwrap();
                new_arcs.push(Arc {
                    name: self.arcs[first_old].name.clone(),
                    curve: curve_map[&c],
                    from: vertex_map[&self.arcs[first_old].from],
                    to: vertex_map[&self.arcs[last_old].to],
                });
                for &a in &run {
                    old_to_new.insert(a, na);
                }
            }
        }
        // Rotations at surviving vertices keep their cyclic order; only arc
        // names change. A run starts at its first old arc (tail end) and
        // finishes at its last (head end), so end kinds carry over.
        for (vi, v) in self.vertices.iter().enumerate() {
            if !vertex_kept(v) {
                continue;
            }
            let mut rot = Vec::new();
            for e in &v.rotation {
                let Some(&na) = old_to_new.get(&e.arc) else {
                    return Err(DiagramError::Structure("kept vertex touches a removed arc".into()));
                };
                rot.push(ArcEnd { arc: na, end: e.end });
            }
            new_vertices[vertex_map[&vi]].rotation = rot;
        }
        let curves = keep
            .iter()
            .map(|&c| Curve {
                name: self.curves[c].name.clone(),
                forward: self.curves[c].forward,
                homology: self.curves[c].homology.clone(),
            })
            .collect();
        let mut out = CurveDiagram {
            genus: self.genus,
            boundary_count: self.boundary_count,
            curves,
            vertices: new_vertices,
            arcs: new_arcs,
            faces: Vec::new(),
        };
        out.faces = self.merged_faces(&out, keep, &old_to_new)?;
        Ok(out)
    }

    /// Group old faces into new regions after curve removal and compute each
    /// region's genus and boundary content from Euler counts.
    fn merged_faces(
        &self,
        reduced: &CurveDiagram,
        keep: &[CurveId],
        old_to_new: &BTreeMap<ArcId, usize>,
    ) -> Result<Vec<Face>, DiagramError> {
        let keep_set: BTreeSet<CurveId> = keep.iter().copied().collect();
        let mut parent: Vec<usize> = (0..self.faces.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let mut removed_arcs: Vec<ArcId> = Vec::new();
        for (ai, a) in self.arcs.iter().enumerate() {
            if !keep_set.contains(&a.curve) {
                removed_arcs.push(ai);
                let f1 = self.left_face((ai, true));
                let f2 = self.left_face((ai, false));
                let r1 = find(&mut parent, f1);
                let r2 = find(&mut parent, f2);
                parent[r1] = r2;
            }
        }
        #[derive(Default)]
        struct ClassData {
            chi: i64,
            bnd: usize,
            removed_arcs: i64,
            removed_vertices: i64,
            walks: Vec<Vec<WalkStep>>,
        }
        let mut classes: BTreeMap<usize, ClassData> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            let r = find(&mut parent, fi);
            let c = classes.entry(r).or_default();
            c.chi += f.euler();
            c.bnd += f.boundary_circles;
        }
        for &ai in &removed_arcs {
            let r = find(&mut parent, self.left_face((ai, true)));
            classes.get_mut(&r).expect("face class").removed_arcs += 1;
        }
        for v in self.vertices.iter() {
            // A vertex becomes interior to a merged region only when every
            // curve through it is removed; a crossing on one kept curve is
            // absorbed into the concatenated arc instead.
            let interior = match v.kind {
                VertexKind::Crossing { lower, higher } => {
                    !keep_set.contains(&lower) && !keep_set.contains(&higher)
                }
                VertexKind::Marked { curve } => !keep_set.contains(&curve),
            };
            if interior {
                // Every sector at such a vertex lies in one class: its
                // incident removed arcs connect them.
                let e = v.rotation[0];
                let d = (e.arc, e.end == EndKind::Tail);
                let r = find(&mut parent, self.left_face(d));
                classes.get_mut(&r).expect("face class").removed_vertices += 1;
            }
        }
        let new_walks = reduced.trace_all_walks()?;
        for walk in new_walks {
            let mut owner = None;
            'outer: for step in &walk {
                for (old, &new) in old_to_new {
                    if new == step.arc && keep_set.contains(&self.arcs[*old].curve) {
                        let d = (*old, step.forward);
                        owner = Some(find(&mut parent, self.left_face(d)));
                        break 'outer;
                    }
                }
            }
            let Some(r) = owner else {
                return Err(DiagramError::Structure(
                    "reduced walk has no surviving ancestor arc".into(),
                ));
            };
            classes.get_mut(&r).expect("face class").walks.push(walk);
        }
        let mut faces = Vec::new();
        for (i, (_, c)) in classes.into_iter().enumerate() {
            let chi = c.chi - c.removed_arcs + c.removed_vertices;
            if c.walks.is_empty() {
                return Err(DiagramError::Structure("a merged region lost all boundary walks".into()));
            }
            let two_g = 2 - chi - c.walks.len() as i64 - c.bnd as i64;
            if two_g < 0 || two_g % 2 != 0 {
                return Err(DiagramError::Structure(format!(
                    "merged region has impossible Euler characteristic {chi}"
                )));
            }
            faces.push(Face {
                name: format!("f{i}"),
                walks: c.walks,
                genus: (two_g / 2) as usize,
                boundary_circles: c.bnd,
            });
        }
        Ok(faces)
    }
}

/// Rotate a cyclic walk to its lexicographically least phase, so walks can
/// be compared independently of the starting step.
pub fn canonical_walk(w: &[WalkStep]) -> Vec<WalkStep> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<WalkStep>> = None;
    for s in 0..w.len() {
        let mut rotated: Vec<WalkStep> = w[s..].to_vec();
        rotated.extend_from_slice(&w[..s]);
        if best.as_ref().map_or(true, |b| &rotated < b) {
            best = Some(rotated);
        }
    }
    best.unwrap()
}

/// Pairing of H1 classes: symplectic on the first 2g coordinates (x1 y1 x2
/// y2 ...), zero on the k-1 boundary coordinates.
pub fn symplectic_pairing(a: &[i64], b: &[i64], genus: usize) -> i64 {
    let mut s = 0;
    for h in 0..genus {
        s += a[2 * h] * b[2 * h + 1] - a[2 * h + 1] * b[2 * h];
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as fx;

    #[test]
    fn annulus_core_curve_validates() {
        let d = fx::annulus_core();
        assert!(d.validate().is_empty(), "{:?}", d.validate());
        assert_eq!(d.faces.len(), 2);
        assert_eq!(d.intersection_matrix().unwrap().get(0, 0).to_string(), "0");
    }

    #[test]
    fn self_crossing_rejected() {
        let (mut d, _) = fx::annulus_bigons();
        if let VertexKind::Crossing { lower, higher } = &mut d.vertices[0].kind {
            *higher = *lower;
        }
        assert!(d.validate().iter().any(|e| e.contains("distinct curves")));
    }

    #[test]
    fn euler_mismatch_detected() {
        let (mut d, _) = fx::annulus_bigons();
        d.faces[0].genus += 1;
        assert!(d.validate().iter().any(|e| e.contains("Euler characteristic")));
    }

    #[test]
    fn annulus_bigon_fixture_validates() {
        let (d, b) = fx::annulus_bigons();
        let errs = d.validate();
        assert!(errs.is_empty(), "{errs:?}");
        assert!(d.validate_branes(&b).is_empty(), "{:?}", d.validate_branes(&b));
        // Two crossings with opposite local signs: zero pairing.
        let m = d.intersection_matrix().unwrap();
        assert_eq!(m.get(0, 1).to_string(), "0");
    }

    #[test]
    fn torus_double_crossing_has_pairing_two() {
        let (d, b) = fx::torus_double();
        assert!(d.validate().is_empty(), "{:?}", d.validate());
        assert!(d.validate_branes(&b).is_empty());
        let m = d.intersection_matrix().unwrap();
        assert_eq!(m.get(0, 1).to_string(), "-2");
        assert_eq!(m.get(1, 0).to_string(), "2");
    }

    #[test]
    fn index_antisymmetry() {
        let (d, b) = fx::annulus_bigons();
        for v in d.crossings() {
            let i_fwd = d.index_between(&b, v, 0, 1).unwrap();
            let i_rev = d.index_between(&b, v, 1, 0).unwrap();
            assert_eq!(i_fwd + i_rev, 1);
        }
    }

    #[test]
    fn reversing_one_orientation_negates_its_row_and_column() {
        let (mut d, _) = fx::torus_double();
        let before = d.intersection_matrix().unwrap();
        d.curves[1].forward = false;
        let after = d.intersection_matrix().unwrap();
        assert_eq!(after.get(0, 1), &(-before.get(0, 1).clone()));
        assert_eq!(after.get(1, 0), &(-before.get(1, 0).clone()));
    }

    #[test]
    fn declared_writhe_violation_is_reported() {
        let (d, mut b) = fx::annulus_bigons();
        b.declared_writhes[0].writhe += 1;
        assert!(d.validate_branes(&b).iter().any(|e| e.contains("index formula")));
    }
}
