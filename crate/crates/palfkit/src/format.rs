//! File formats: diagram and category documents as UTF-8 JSON.
//!
//! Serialization is canonical: sections keep declaration order, generators
//! are sorted by (source, target, degree, label), composition entries by
//! (arity, inputs). Saving a loaded document is byte-stable.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ainfcat::{AInfCategory, GenId};
use crate::diagram::{
    Arc, ArcEnd, BraneAssignment, Curve, CurveDiagram, DeclaredWrithe, EndKind, Face, Vertex,
    VertexKind, WalkStep,
};
use crate::exactalg::{Field, Fp, Rat};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("bad document: {0}")]
    Bad(String),
}

// ---------------------------------------------------------------- diagrams

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramFile {
    pub surface: SurfaceSection,
    pub curves: Vec<CurveSection>,
    pub crossings: Vec<CrossingSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked_points: Vec<MarkedPointSection>,
    pub arcs: Vec<ArcSection>,
    pub faces: Vec<FaceSection>,
    pub branes: BraneSection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceSection {
    pub genus: usize,
    pub boundary_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSection {
    pub name: String,
    pub orientation: String,
    pub homology_class: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossingSection {
    pub id: String,
    /// The two curves, lower distinguished-basis position first.
    pub curves: [String; 2],
    /// Counterclockwise arc-ends: `{"arc": <id>, "end": "from" | "to"}`.
    pub cyclic_order: Vec<EndRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarkedPointSection {
    pub id: String,
    pub curve: String,
    pub cyclic_order: Vec<EndRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndRef {
    pub arc: String,
    pub end: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcSection {
    pub id: String,
    pub curve: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceSection {
    pub id: String,
    /// One or more closed walks, each a list of `{"arc", "dir"}` steps with
    /// the face on the left.
    pub boundary_walk: Vec<Vec<StepRef>>,
    pub touches_boundary: bool,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub genus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_circles: Option<usize>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepRef {
    pub arc: String,
    pub dir: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BraneSection {
    pub indices: BTreeMap<String, i64>,
    pub switching_points: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_writhes: Vec<WritheSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WritheSection {
    pub name: String,
    pub walk: Vec<LegRef>,
    pub writhe: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LegRef {
    pub at: String,
    pub along: String,
}

pub fn parse_diagram(text: &str) -> Result<(CurveDiagram, BraneAssignment), FormatError> {
    let file: DiagramFile = serde_json::from_str(text)?;
    diagram_from_file(&file)
}

pub fn load_diagram(path: &std::path::Path) -> Result<(CurveDiagram, BraneAssignment), FormatError> {
    parse_diagram(&std::fs::read_to_string(path)?)
}

pub fn diagram_from_file(file: &DiagramFile) -> Result<(CurveDiagram, BraneAssignment), FormatError> {
    let curve_idx: BTreeMap<&str, usize> =
        file.curves.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect();
    let curve = |name: &str| {
        curve_idx.get(name).copied().ok_or_else(|| FormatError::Unresolved(format!("curve {name}")))
    };
    let arc_idx: BTreeMap<&str, usize> =
        file.arcs.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    let arc = |name: &str| {
        arc_idx.get(name).copied().ok_or_else(|| FormatError::Unresolved(format!("arc {name}")))
    };
    let mut vertex_idx: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, x) in file.crossings.iter().enumerate() {
        vertex_idx.insert(x.id.as_str(), i);
    }
    for (i, m) in file.marked_points.iter().enumerate() {
        vertex_idx.insert(m.id.as_str(), file.crossings.len() + i);
    }
    let vertex = |name: &str| {
        vertex_idx
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::Unresolved(format!("vertex {name}")))
    };
    let rotation = |ends: &[EndRef]| -> Result<Vec<ArcEnd>, FormatError> {
        ends.iter()
            .map(|e| {
                let end = match e.end.as_str() {
                    "from" => EndKind::Tail,
                    "to" => EndKind::Head,
                    other => return Err(FormatError::Bad(format!("end must be from/to, got {other}"))),
                };
                Ok(ArcEnd { arc: arc(&e.arc)?, end })
            })
            .collect()
    };
    let mut vertices = Vec::new();
    for x in &file.crossings {
        let lo = curve(&x.curves[0])?;
        let hi = curve(&x.curves[1])?;
        vertices.push(Vertex {
            name: x.id.clone(),
            kind: VertexKind::Crossing { lower: lo, higher: hi },
            rotation: rotation(&x.cyclic_order)?,
        });
    }
    for m in &file.marked_points {
        vertices.push(Vertex {
            name: m.id.clone(),
            kind: VertexKind::Marked { curve: curve(&m.curve)? },
            rotation: rotation(&m.cyclic_order)?,
        });
    }
    let arcs = file
        .arcs
        .iter()
        .map(|a| {
            Ok(Arc {
                name: a.id.clone(),
                curve: curve(&a.curve)?,
                from: vertex(&a.from)?,
                to: vertex(&a.to)?,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let curves = file
        .curves
        .iter()
        .map(|c| {
            let forward = match c.orientation.as_str() {
                "+" => true,
                "-" => false,
                other => {
                    return Err(FormatError::Bad(format!("orientation must be +/-, got {other}")))
                }
            };
            Ok(Curve { name: c.name.clone(), forward, homology: c.homology_class.clone() })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let faces = file
        .faces
        .iter()
        .map(|f| {
            let walks = f
                .boundary_walk
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|s| {
                            let forward = match s.dir.as_str() {
                                "+" => true,
                                "-" => false,
                                other => {
                                    return Err(FormatError::Bad(format!(
                                        "dir must be +/-, got {other}"
                                    )))
                                }
                            };
                            Ok(WalkStep { arc: arc(&s.arc)?, forward })
                        })
                        .collect::<Result<Vec<_>, FormatError>>()
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            let boundary_circles =
                f.boundary_circles.unwrap_or(usize::from(f.touches_boundary));
            if f.touches_boundary != (boundary_circles > 0) {
                return Err(FormatError::Bad(format!(
                    "face {}: touches_boundary disagrees with boundary_circles",
                    f.id
                )));
            }
            Ok(Face { name: f.id.clone(), walks, genus: f.genus, boundary_circles })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let diagram = CurveDiagram {
        genus: file.surface.genus,
        boundary_count: file.surface.boundary_count,
        curves,
        vertices,
        arcs,
        faces,
    };
    let branes = BraneAssignment {
        indices: file
            .branes
            .indices
            .iter()
            .map(|(name, &i)| Ok((vertex(name)?, i)))
            .collect::<Result<BTreeMap<_, _>, FormatError>>()?,
        switching_points: file
            .branes
            .switching_points
            .iter()
            .map(|(c, a)| Ok((curve(c)?, arc(a)?)))
            .collect::<Result<BTreeMap<_, _>, FormatError>>()?,
        declared_writhes: file
            .branes
            .declared_writhes
            .iter()
            .map(|w| {
                Ok(DeclaredWrithe {
                    name: w.name.clone(),
                    legs: w
                        .walk
                        .iter()
                        .map(|l| Ok((vertex(&l.at)?, curve(&l.along)?)))
                        .collect::<Result<Vec<_>, FormatError>>()?,
                    writhe: w.writhe,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?,
    };
    Ok((diagram, branes))
}

pub fn diagram_to_file(d: &CurveDiagram, b: &BraneAssignment) -> DiagramFile {
    let end_name = |e: EndKind| match e {
        EndKind::Tail => "from".to_string(),
        EndKind::Head => "to".to_string(),
    };
    let steps = |w: &[WalkStep]| {
        w.iter()
            .map(|s| StepRef {
                arc: d.arcs[s.arc].name.clone(),
                dir: if s.forward { "+".into() } else { "-".into() },
            })
            .collect()
    };
    DiagramFile {
        surface: SurfaceSection { genus: d.genus, boundary_count: d.boundary_count },
        curves: d
            .curves
            .iter()
            .map(|c| CurveSection {
                name: c.name.clone(),
                orientation: if c.forward { "+".into() } else { "-".into() },
                homology_class: c.homology.clone(),
            })
            .collect(),
        crossings: d
            .vertices
            .iter()
            .filter_map(|v| match v.kind {
                VertexKind::Crossing { lower, higher } => Some(CrossingSection {
                    id: v.name.clone(),
                    curves: [d.curves[lower].name.clone(), d.curves[higher].name.clone()],
                    cyclic_order: v
                        .rotation
                        .iter()
                        .map(|e| EndRef { arc: d.arcs[e.arc].name.clone(), end: end_name(e.end) })
                        .collect(),
                }),
                VertexKind::Marked { .. } => None,
            })
            .collect(),
        marked_points: d
            .vertices
            .iter()
            .filter_map(|v| match v.kind {
                VertexKind::Marked { curve } => Some(MarkedPointSection {
                    id: v.name.clone(),
                    curve: d.curves[curve].name.clone(),
                    cyclic_order: v
                        .rotation
                        .iter()
                        .map(|e| EndRef { arc: d.arcs[e.arc].name.clone(), end: end_name(e.end) })
                        .collect(),
                }),
                VertexKind::Crossing { .. } => None,
            })
            .collect(),
        arcs: d
            .arcs
            .iter()
            .map(|a| ArcSection {
                id: a.name.clone(),
                curve: d.curves[a.curve].name.clone(),
                from: d.vertices[a.from].name.clone(),
                to: d.vertices[a.to].name.clone(),
            })
            .collect(),
        faces: d
            .faces
            .iter()
            .map(|f| FaceSection {
                id: f.name.clone(),
                boundary_walk: f.walks.iter().map(|w| steps(w)).collect(),
                touches_boundary: f.boundary_circles > 0,
                genus: f.genus,
                boundary_circles: Some(f.boundary_circles),
            })
            .collect(),
        branes: BraneSection {
            indices: b
                .indices
                .iter()
                .map(|(&v, &i)| (d.vertices[v].name.clone(), i))
                .collect(),
            switching_points: b
                .switching_points
                .iter()
                .map(|(&c, &a)| (d.curves[c].name.clone(), d.arcs[a].name.clone()))
                .collect(),
            declared_writhes: b
                .declared_writhes
                .iter()
                .map(|w| WritheSection {
                    name: w.name.clone(),
                    walk: w
                        .legs
                        .iter()
                        .map(|&(v, c)| LegRef {
                            at: d.vertices[v].name.clone(),
                            along: d.curves[c].name.clone(),
                        })
                        .collect(),
                    writhe: w.writhe,
                })
                .collect(),
        },
    }
}

// -------------------------------------------------------------- categories

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub field: String,
    pub hom_generators: Vec<GenSection>,
    pub mu: Vec<MuSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenSection {
    pub label: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuSection {
    /// Display order: the rightmost input is composed first.
    pub inputs: Vec<String>,
    pub output: Vec<TermSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSection {
    pub gen: String,
    pub coeff: String,
}

/// The ground field requested by a document or a command line: `q` or
/// `fp:P` with `P` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FromStr for FieldSpec {
    type Err = FormatError;
    fn from_str(s: &str) -> Result<Self, FormatError> {
        if s == "q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 =
                p.parse().map_err(|_| FormatError::Bad(format!("bad field spec {s}")))?;
            if !crate::exactalg::is_prime_u64(p) {
                return Err(FormatError::Bad(format!("{p} is not prime")));
            }
            return Ok(FieldSpec::Prime(p));
        }
        Err(FormatError::Bad(format!("field must be q or fp:P, got {s}")))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FormatError> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad_coeff(s))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad_coeff(s))?;
        if d == BigInt::from(0) {
            return Err(bad_coeff(s));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s.trim()).map_err(|_| bad_coeff(s))?;
        Ok(BigRational::from_integer(n))
    }
}

fn bad_coeff(s: &str) -> FormatError {
    FormatError::Bad(format!("bad coefficient {s}"))
}

pub trait CoeffField: Field {
    fn parse_coeff(s: &str) -> Result<Self, FormatError>;
    fn render_coeff(&self) -> String;
}

impl CoeffField for Rat {
    fn parse_coeff(s: &str) -> Result<Self, FormatError> {
        Ok(Rat(parse_rational(s)?))
    }
    fn render_coeff(&self) -> String {
        self.to_string()
    }
}

/// Prime-field coefficients parse through the rationals; denominators are
/// inverted mod P.
pub struct FpLoader;

pub fn parse_fp_coeff(s: &str, p: u64) -> Result<Fp, FormatError> {
    let r = parse_rational(s)?;
    let to_i64 = |x: &BigInt| -> Result<i64, FormatError> {
        let m = BigInt::from(p);
        let red = ((x % &m) + &m) % &m;
        red.try_into().map_err(|_| bad_coeff(s))
    };
    let num = Fp::new(to_i64(r.numer())?, p);
    let den = Fp::new(to_i64(r.denom())?, p);
    if den.is_zero() {
        return Err(bad_coeff(s));
    }
    Ok(num.mul(&den.inv()))
}

pub fn parse_category_rat(text: &str) -> Result<AInfCategory<Rat>, FormatError> {
    let file: CategoryFile = serde_json::from_str(text)?;
    category_from_file(&file, Rat::parse_coeff)
}

pub fn parse_category_fp(text: &str, p: u64) -> Result<AInfCategory<Fp>, FormatError> {
    let file: CategoryFile = serde_json::from_str(text)?;
    category_from_file(&file, |s| parse_fp_coeff(s, p))
}

pub fn category_from_file<F: Field>(
    file: &CategoryFile,
    parse: impl Fn(&str) -> Result<F, FormatError>,
) -> Result<AInfCategory<F>, FormatError> {
    let obj_idx: BTreeMap<&str, usize> =
        file.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let obj = |name: &str| {
        obj_idx.get(name).copied().ok_or_else(|| FormatError::Unresolved(format!("object {name}")))
    };
    let mut homs = Vec::new();
    let mut gen_idx: BTreeMap<&str, GenId> = BTreeMap::new();
    for g in &file.hom_generators {
        if gen_idx.contains_key(g.label.as_str()) {
            return Err(FormatError::Bad(format!("duplicate generator label {}", g.label)));
        }
        gen_idx.insert(g.label.as_str(), homs.len());
        homs.push((g.label.clone(), obj(&g.source)?, obj(&g.target)?, g.degree));
    }
    let gen = |name: &str| {
        gen_idx
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::Unresolved(format!("generator {name}")))
    };
    let mut mu_entries = Vec::new();
    for m in &file.mu {
        let args =
            m.inputs.iter().map(|s| gen(s)).collect::<Result<Vec<_>, FormatError>>()?;
        let out = m
            .output
            .iter()
            .map(|t| Ok((gen(&t.gen)?, parse(&t.coeff)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        mu_entries.push((args, out));
    }
    AInfCategory::new(file.objects.clone(), homs, mu_entries)
        .map_err(|e| FormatError::Bad(e.to_string()))
}

/// Serialize with the canonical generator and entry order.
pub fn category_to_file<F: CoeffField>(cat: &AInfCategory<F>, field: &str) -> CategoryFile {
    let mut gens: Vec<GenId> = cat.morphism_gens().collect();
    gens.sort_by_key(|&g| {
        let info = cat.gen_info(g);
        (info.src, info.dst, info.degree, info.label.clone())
    });
    let mu = cat
        .mu_table()
        .iter()
        .map(|(args, out)| MuSection {
            inputs: args.iter().map(|&g| cat.gen_info(g).label.clone()).collect(),
            output: out
                .0
                .iter()
                .map(|(&g, c)| TermSection {
                    gen: cat.gen_info(g).label.clone(),
                    coeff: c.render_coeff(),
                })
                .collect(),
        })
        .collect();
    CategoryFile {
        objects: cat.objects().to_vec(),
        field: field.to_string(),
        hom_generators: gens
            .into_iter()
            .map(|g| {
                let info = cat.gen_info(g);
                GenSection {
                    label: info.label.clone(),
                    source: cat.objects()[info.src].clone(),
                    target: cat.objects()[info.dst].clone(),
                    degree: info.degree,
                }
            })
            .collect(),
        mu,
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as fx;

    #[test]
    fn diagram_round_trip() {
        for (d, b) in [fx::pi1(), fx::pi2(), fx::pi3(), fx::annulus_bigons(), fx::disjoint_pair()]
        {
            let file = diagram_to_file(&d, &b);
            let text = to_json_pretty(&file);
            let (d2, b2) = parse_diagram(&text).unwrap();
            assert!(d2.validate().is_empty());
            assert!(d2.validate_branes(&b2).is_empty());
            let text2 = to_json_pretty(&diagram_to_file(&d2, &b2));
            assert_eq!(text, text2, "serialization is not stable");
        }
    }

    #[test]
    fn category_round_trip() {
        use crate::fscat::{build_fs_category, categories_match_canonically};
        let (d, b) = fx::pi2();
        let cat = build_fs_category::<Rat>(&d, &b, 4).unwrap().category;
        let file = category_to_file(&cat, "q");
        let text = to_json_pretty(&file);
        let back = parse_category_rat(&text).unwrap();
        assert!(categories_match_canonically(&cat, &back));
        let text2 = to_json_pretty(&category_to_file(&back, "q"));
        assert_eq!(text, text2);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("fp:6".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn fp_coefficients_invert_denominators() {
        let x = parse_fp_coeff("3/2", 7).unwrap();
        assert_eq!(x.value(), 5); // 3 * inverse(2) = 3 * 4 = 12 = 5 mod 7
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(parse_diagram("{").is_err());
        assert!(parse_category_rat("{\"objects\":[]}").is_err());
    }
}
