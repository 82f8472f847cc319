//! Programmatic constructors for the shipped diagrams.
//!
//! The JSON files under `fixtures/` are serialized from these builders; the
//! tests cross-check the two. Faces are traced from the vertex rotations,
//! then each traced walk is assigned to a named region with its genus and
//! boundary content.

use std::collections::BTreeMap;

use crate::diagram::{
    canonical_walk, Arc, ArcEnd, BraneAssignment, Curve, CurveDiagram, DeclaredWrithe, EndKind,
    Face, Vertex, VertexKind, WalkStep,
};

struct FaceSpec {
    name: &'static str,
    genus: usize,
    boundary_circles: usize,
    /// One representative directed arc (name, forward) per walk of the face.
    reps: Vec<(&'static str, bool)>,
}

struct Builder {
    genus: usize,
    boundary_count: usize,
    curves: Vec<Curve>,
    vertices: Vec<(String, VertexKind, Vec<(String, EndKind)>)>,
    arcs: Vec<(String, usize, String, String)>,
}

impl Builder {
    fn finish(self, face_specs: Vec<FaceSpec>) -> CurveDiagram {
        let arc_index: BTreeMap<&str, usize> =
            self.arcs.iter().enumerate().map(|(i, a)| (a.0.as_str(), i)).collect();
        let vertex_index: BTreeMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.0.as_str(), i)).collect();
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|(name, curve, from, to)| Arc {
                name: name.clone(),
                curve: *curve,
                from: vertex_index[from.as_str()],
                to: vertex_index[to.as_str()],
            })
            .collect();
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|(name, kind, rot)| Vertex {
                name: name.clone(),
                kind: kind.clone(),
                rotation: rot
                    .iter()
                    .map(|(a, e)| ArcEnd { arc: arc_index[a.as_str()], end: *e })
                    .collect(),
            })
            .collect();
        let mut diagram = CurveDiagram {
            genus: self.genus,
            boundary_count: self.boundary_count,
            curves: self.curves,
            vertices,
            arcs,
            faces: Vec::new(),
        };
        let traced = diagram.trace_all_walks().expect("fixture rotations trace");
        let mut by_key: BTreeMap<Vec<WalkStep>, Vec<WalkStep>> =
            traced.into_iter().map(|w| (canonical_walk(&w), w)).collect();
        let mut faces = Vec::new();
        for spec in face_specs {
            let mut walks = Vec::new();
            for (arc_name, forward) in &spec.reps {
                let step = WalkStep { arc: arc_index[arc_name], forward: *forward };
                let key = by_key
                    .iter()
                    .find(|(_, w)| w.contains(&step))
                    .map(|(k, _)| k.clone())
                    .unwrap_or_else(|| panic!("no traced walk through {arc_name}"));
                walks.push(by_key.remove(&key).unwrap());
            }
            faces.push(Face {
                name: spec.name.to_string(),
                walks,
                genus: spec.genus,
                boundary_circles: spec.boundary_circles,
            });
        }
        assert!(by_key.is_empty(), "unassigned face walks remain");
        diagram.faces = faces;
        diagram
    }
}

fn curve(name: &str, homology: Vec<i64>) -> Curve {
    Curve { name: name.into(), forward: true, homology }
}

fn ends(list: &[(&str, EndKind)]) -> Vec<(String, EndKind)> {
    list.iter().map(|(a, e)| (a.to_string(), *e)).collect()
}

use EndKind::{Head, Tail};

/// Shared 1-skeleton of the three-curve configurations on the genus-3 fibre:
/// three curves pairwise crossing once, with two triangular walks `u1`, `u2`
/// and one six-step walk.
fn three_curve_skeleton(hom: [Vec<i64>; 3]) -> Builder {
    let [h1, h2, h3] = hom;
    Builder {
        genus: 3,
        boundary_count: 1,
        curves: vec![curve("L1", h1), curve("L2", h2), curve("L3", h3)],
        vertices: vec![
            (
                "p12".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("b1", Tail), ("a1", Head), ("b2", Head), ("a2", Tail)]),
            ),
            (
                "p13".into(),
                VertexKind::Crossing { lower: 0, higher: 2 },
                ends(&[("a1", Tail), ("c1", Head), ("a2", Head), ("c2", Tail)]),
            ),
            (
                "p23".into(),
                VertexKind::Crossing { lower: 1, higher: 2 },
                ends(&[("c1", Tail), ("b1", Head), ("c2", Head), ("b2", Tail)]),
            ),
        ],
        arcs: vec![
            ("a1".into(), 0, "p13".into(), "p12".into()),
            ("a2".into(), 0, "p12".into(), "p13".into()),
            ("b1".into(), 1, "p12".into(), "p23".into()),
            ("b2".into(), 1, "p23".into(), "p12".into()),
            ("c1".into(), 2, "p23".into(), "p13".into()),
            ("c2".into(), 2, "p13".into(), "p23".into()),
        ],
    }
}

fn three_curve_branes(
    d: &CurveDiagram,
    indices: [(&str, i64); 3],
    switching: [(&str, &str); 3],
    writhes: Vec<(&'static str, Vec<(&'static str, &'static str)>, i64)>,
) -> BraneAssignment {
    BraneAssignment {
        indices: indices
            .iter()
            .map(|(v, i)| (d.vertex_by_name(v).unwrap(), *i))
            .collect(),
        switching_points: switching
            .iter()
            .map(|(c, a)| (d.curve_by_name(c).unwrap(), d.arc_by_name(a).unwrap()))
            .collect(),
        declared_writhes: writhes
            .into_iter()
            .map(|(name, legs, writhe)| DeclaredWrithe {
                name: name.into(),
                legs: legs
                    .iter()
                    .map(|(v, c)| (d.vertex_by_name(v).unwrap(), d.curve_by_name(c).unwrap()))
                    .collect(),
                writhe,
            })
            .collect(),
    }
}

/// Both triangles are discs; the remaining region carries all the genus.
/// The two triangle contributions cancel, so the binary composition of the
/// short generators vanishes.
pub fn pi1() -> (CurveDiagram, BraneAssignment) {
    let d = three_curve_skeleton([
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
    ])
    .finish(vec![
        FaceSpec { name: "u1", genus: 0, boundary_circles: 0, reps: vec![("a1", true)] },
        FaceSpec { name: "u2", genus: 0, boundary_circles: 0, reps: vec![("a2", false)] },
        FaceSpec { name: "out", genus: 2, boundary_circles: 1, reps: vec![("a1", false)] },
    ]);
    let b = three_curve_branes(
        &d,
        [("p12", 0), ("p13", 0), ("p23", 0)],
        [("L1", "a1"), ("L2", "b1"), ("L3", "c1")],
        vec![("tri", vec![("p13", "L1"), ("p12", "L2"), ("p23", "L3")], 2)],
    );
    (d, b)
}

/// One triangle survives as a disc; the other region acquired genus, so a
/// single polygon contributes and the composition is the long generator.
pub fn pi2() -> (CurveDiagram, BraneAssignment) {
    let d = three_curve_skeleton([
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
    ])
    .finish(vec![
        FaceSpec { name: "u1", genus: 0, boundary_circles: 0, reps: vec![("a1", true)] },
        FaceSpec { name: "u2", genus: 1, boundary_circles: 0, reps: vec![("a2", false)] },
        FaceSpec { name: "out", genus: 1, boundary_circles: 1, reps: vec![("a1", false)] },
    ]);
    // Switching points off the boundary of u1 keep its sign positive.
    let b = three_curve_branes(
        &d,
        [("p12", 0), ("p13", 0), ("p23", 0)],
        [("L1", "a2"), ("L2", "b2"), ("L3", "c2")],
        vec![("tri", vec![("p13", "L1"), ("p12", "L2"), ("p23", "L3")], 2)],
    );
    (d, b)
}

/// Both triangular regions carry genus: no polygons at all, and the long
/// generator sits in degree -2, pinned by the declared writhe of the walk
/// homotopic to the fifth skeleton circle.
pub fn pi3() -> (CurveDiagram, BraneAssignment) {
    let d = three_curve_skeleton([
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![1, 1, 2, 0, 0, 0],
    ])
    .finish(vec![
        FaceSpec { name: "u1", genus: 1, boundary_circles: 0, reps: vec![("a1", true)] },
        FaceSpec { name: "u2", genus: 1, boundary_circles: 0, reps: vec![("a2", false)] },
        FaceSpec { name: "out", genus: 0, boundary_circles: 1, reps: vec![("a1", false)] },
    ]);
    let b = three_curve_branes(
        &d,
        [("p12", 0), ("p13", -2), ("p23", 0)],
        [("L1", "a1"), ("L2", "b1"), ("L3", "c1")],
        vec![("S5", vec![("p12", "L2"), ("p23", "L3"), ("p13", "L1")], 0)],
    );
    (d, b)
}

/// Two isotopic core curves on an annulus crossing twice: two lens discs,
/// both mapping the degree-0 generator to the degree-1 one with opposite
/// signs.
pub fn annulus_bigons() -> (CurveDiagram, BraneAssignment) {
    let b = Builder {
        genus: 0,
        boundary_count: 2,
        curves: vec![curve("L1", vec![1]), curve("L2", vec![1])],
        vertices: vec![
            (
                "p".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("al1", Tail), ("be1", Tail), ("al2", Head), ("be2", Head)]),
            ),
            (
                "q".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("al2", Tail), ("be1", Head), ("al1", Head), ("be2", Tail)]),
            ),
        ],
        arcs: vec![
            ("al1".into(), 0, "p".into(), "q".into()),
            ("al2".into(), 0, "q".into(), "p".into()),
            ("be1".into(), 1, "p".into(), "q".into()),
            ("be2".into(), 1, "q".into(), "p".into()),
        ],
    };
    let d = b.finish(vec![
        FaceSpec { name: "lens1", genus: 0, boundary_circles: 0, reps: vec![("al1", true)] },
        FaceSpec { name: "lens2", genus: 0, boundary_circles: 0, reps: vec![("be2", true)] },
        FaceSpec { name: "top", genus: 0, boundary_circles: 1, reps: vec![("be1", true)] },
        FaceSpec { name: "bottom", genus: 0, boundary_circles: 1, reps: vec![("al1", false)] },
    ]);
    let branes = BraneAssignment {
        indices: BTreeMap::from([
            (d.vertex_by_name("q").unwrap(), 0),
            (d.vertex_by_name("p").unwrap(), 1),
        ]),
        switching_points: BTreeMap::from([
            (0, d.arc_by_name("al1").unwrap()),
            (1, d.arc_by_name("be1").unwrap()),
        ]),
        declared_writhes: vec![DeclaredWrithe {
            name: "lens2_boundary".into(),
            legs: vec![
                (d.vertex_by_name("q").unwrap(), 1),
                (d.vertex_by_name("p").unwrap(), 0),
            ],
            writhe: 2,
        }],
    };
    (d, branes)
}

/// The same two-crossing pattern on a three-holed sphere, with one lens
/// swallowing a hole: a single bigon survives and the differential is
/// nonzero.
pub fn pants_bigon() -> (CurveDiagram, BraneAssignment) {
    let b = Builder {
        genus: 0,
        boundary_count: 3,
        curves: vec![curve("L1", vec![1, 1]), curve("L2", vec![1, 1])],
        vertices: vec![
            (
                "p".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("al1", Tail), ("be1", Tail), ("al2", Head), ("be2", Head)]),
            ),
            (
                "q".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("al2", Tail), ("be1", Head), ("al1", Head), ("be2", Tail)]),
            ),
        ],
        arcs: vec![
            ("al1".into(), 0, "p".into(), "q".into()),
            ("al2".into(), 0, "q".into(), "p".into()),
            ("be1".into(), 1, "p".into(), "q".into()),
            ("be2".into(), 1, "q".into(), "p".into()),
        ],
    };
    let d = b.finish(vec![
        FaceSpec { name: "lens1", genus: 0, boundary_circles: 1, reps: vec![("al1", true)] },
        FaceSpec { name: "lens2", genus: 0, boundary_circles: 0, reps: vec![("be2", true)] },
        FaceSpec { name: "top", genus: 0, boundary_circles: 1, reps: vec![("be1", true)] },
        FaceSpec { name: "bottom", genus: 0, boundary_circles: 1, reps: vec![("al1", false)] },
    ]);
    let branes = BraneAssignment {
        indices: BTreeMap::from([
            (d.vertex_by_name("q").unwrap(), 0),
            (d.vertex_by_name("p").unwrap(), 1),
        ]),
        switching_points: BTreeMap::from([
            (0, d.arc_by_name("al1").unwrap()),
            (1, d.arc_by_name("be1").unwrap()),
        ]),
        declared_writhes: vec![DeclaredWrithe {
            name: "lens2_boundary".into(),
            legs: vec![
                (d.vertex_by_name("q").unwrap(), 1),
                (d.vertex_by_name("p").unwrap(), 0),
            ],
            writhe: 2,
        }],
    };
    (d, branes)
}

/// Two curves on a one-holed torus crossing twice with the same local sign:
/// intersection number two, quadrilateral complement, no polygons.
pub fn torus_double() -> (CurveDiagram, BraneAssignment) {
    let b = Builder {
        genus: 1,
        boundary_count: 1,
        curves: vec![curve("L1", vec![1, 0]), curve("L2", vec![1, 2])],
        vertices: vec![
            (
                "p".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("a1", Tail), ("b1", Tail), ("a2", Head), ("b2", Head)]),
            ),
            (
                "q".into(),
                VertexKind::Crossing { lower: 0, higher: 1 },
                ends(&[("a2", Tail), ("b2", Tail), ("a1", Head), ("b1", Head)]),
            ),
        ],
        arcs: vec![
            ("a1".into(), 0, "p".into(), "q".into()),
            ("a2".into(), 0, "q".into(), "p".into()),
            ("b1".into(), 1, "p".into(), "q".into()),
            ("b2".into(), 1, "q".into(), "p".into()),
        ],
    };
    let d = b.finish(vec![
        FaceSpec { name: "q1", genus: 0, boundary_circles: 0, reps: vec![("a1", true)] },
        FaceSpec { name: "q2", genus: 0, boundary_circles: 1, reps: vec![("a1", false)] },
    ]);
    let branes = BraneAssignment {
        indices: BTreeMap::from([
            (d.vertex_by_name("p").unwrap(), 1),
            (d.vertex_by_name("q").unwrap(), 1),
        ]),
        switching_points: BTreeMap::from([
            (0, d.arc_by_name("a1").unwrap()),
            (1, d.arc_by_name("b1").unwrap()),
        ]),
        declared_writhes: Vec::new(),
    };
    (d, branes)
}

/// A single crossing-free core curve on the annulus, split by two marked
/// points.
pub fn annulus_core() -> CurveDiagram {
    let b = Builder {
        genus: 0,
        boundary_count: 2,
        curves: vec![curve("L1", vec![1])],
        vertices: vec![
            (
                "m1".into(),
                VertexKind::Marked { curve: 0 },
                ends(&[("g1", Tail), ("g2", Head)]),
            ),
            (
                "m2".into(),
                VertexKind::Marked { curve: 0 },
                ends(&[("g2", Tail), ("g1", Head)]),
            ),
        ],
        arcs: vec![
            ("g1".into(), 0, "m1".into(), "m2".into()),
            ("g2".into(), 0, "m2".into(), "m1".into()),
        ],
    };
    b.finish(vec![
        FaceSpec { name: "inner", genus: 0, boundary_circles: 1, reps: vec![("g1", true)] },
        FaceSpec { name: "outer", genus: 0, boundary_circles: 1, reps: vec![("g1", false)] },
    ])
}

/// Two disjoint parallel curves on a twice-holed torus; each complementary
/// region is a pair of pants with one hole.
pub fn disjoint_pair() -> (CurveDiagram, BraneAssignment) {
    let b = Builder {
        genus: 1,
        boundary_count: 2,
        curves: vec![curve("L1", vec![1, 0, 0]), curve("L2", vec![1, 0, 0])],
        vertices: vec![
            ("m1".into(), VertexKind::Marked { curve: 0 }, ends(&[("g1", Tail), ("g1", Head)])),
            ("m2".into(), VertexKind::Marked { curve: 1 }, ends(&[("g2", Tail), ("g2", Head)])),
        ],
        arcs: vec![
            ("g1".into(), 0, "m1".into(), "m1".into()),
            ("g2".into(), 1, "m2".into(), "m2".into()),
        ],
    };
    let d = b.finish(vec![
        FaceSpec {
            name: "between",
            genus: 0,
            boundary_circles: 1,
            reps: vec![("g1", true), ("g2", false)],
        },
        FaceSpec {
            name: "outside",
            genus: 0,
            boundary_circles: 1,
            reps: vec![("g1", false), ("g2", true)],
        },
    ]);
    let branes = BraneAssignment {
        indices: BTreeMap::new(),
        switching_points: BTreeMap::from([
            (0, d.arc_by_name("g1").unwrap()),
            (1, d.arc_by_name("g2").unwrap()),
        ]),
        declared_writhes: Vec::new(),
    };
    (d, branes)
}

/// Three-object directed category with one degree-0 generator per pair and
/// vanishing binary composition of the outer pair.
pub fn model_category_a1() -> crate::ainfcat::AInfCategory<crate::exactalg::Rat> {
    crate::ainfcat::AInfCategory::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("e12".to_string(), 0, 1, 0),
            ("e13".to_string(), 0, 2, 0),
            ("e23".to_string(), 1, 2, 0),
        ],
        vec![],
    )
    .expect("valid model category")
}

/// Same hom spaces as [`model_category_a1`] but the outer composition is the
/// long generator.
pub fn model_category_a2() -> crate::ainfcat::AInfCategory<crate::exactalg::Rat> {
    crate::ainfcat::AInfCategory::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("e12".to_string(), 0, 1, 0),
            ("e13".to_string(), 0, 2, 0),
            ("e23".to_string(), 1, 2, 0),
        ],
        vec![(vec![2, 0], vec![(1, crate::exactalg::Field::from_i64(1))])],
    )
    .expect("valid model category")
}

/// Vanishing outer composition with the long generator in degree -2.
pub fn model_category_a3() -> crate::ainfcat::AInfCategory<crate::exactalg::Rat> {
    crate::ainfcat::AInfCategory::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("e12".to_string(), 0, 1, 0),
            ("f13".to_string(), 0, 2, -2),
            ("e23".to_string(), 1, 2, 0),
        ],
        vec![],
    )
    .expect("valid model category")
}
