//! The combinatorial shadow of a toric degeneration: orbits of cells of the
//! intersection complex, each with its dual lattice polytope, plus the number
//! of ordinary double points resolved in the central fiber.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::series::LPolynomial;
use crate::triangulation::simplex_profile;

/// One orbit of cells of the intersection complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrbit {
    pub label: String,
    /// Dimension of the cell; its codimension is `2 - dim`.
    pub dim: usize,
    pub multiplicity: u64,
    /// Dual polytope of dimension `2 - dim`; the rank-0 point for 2-cells.
    pub dual: LatticePolytope,
}

impl CellOrbit {
    pub fn vertex(label: &str, multiplicity: u64, dual: LatticePolytope) -> Self {
        Self {
            label: label.into(),
            dim: 0,
            multiplicity,
            dual,
        }
    }

    pub fn edge(label: &str, multiplicity: u64, length: u64) -> Result<Self> {
        Ok(Self {
            label: label.into(),
            dim: 1,
            multiplicity,
            dual: LatticePolytope::segment_of_length(length)?,
        })
    }

    pub fn face(label: &str, multiplicity: u64) -> Self {
        Self {
            label: label.into(),
            dim: 2,
            multiplicity,
            dual: LatticePolytope::origin(0),
        }
    }

    pub fn codim(&self) -> usize {
        2 - self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationComplex {
    pub name: String,
    pub orbits: Vec<CellOrbit>,
    /// Number `m` of ordinary double points resolved by small resolutions.
    pub odp_count: u64,
    /// Free-form provenance; not persisted by [`save`].
    pub notes: String,
}

impl DegenerationComplex {
    /// The same data without notes, which is what survives a save/load cycle.
    pub fn without_notes(&self) -> Self {
        Self {
            notes: String::new(),
            ..self.clone()
        }
    }

    pub fn orbit(&self, label: &str) -> Option<&CellOrbit> {
        self.orbits.iter().find(|o| o.label == label)
    }

    pub fn orbit_mut(&mut self, label: &str) -> Option<&mut CellOrbit> {
        self.orbits.iter_mut().find(|o| o.label == label)
    }
}

/// Class of the open torus stratum of a cell of codimension `codim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumClass {
    pub codim: usize,
    pub class: LPolynomial,
}

impl StratumClass {
    /// `(L-1)^(2-codim)`: every stratum of these degenerations is a torus.
    pub fn for_codim(codim: usize) -> Self {
        assert!(codim <= 2, "surfaces have strata of codimension at most 2");
        Self {
            codim,
            class: LPolynomial::torus((2 - codim) as u32),
        }
    }
}

/// Triangle, edge and vertex counts of the unimodular refinement of the
/// dual complex, and whether they describe a triangulated sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub f: u64,
    pub e: u64,
    pub v: u64,
    pub ok: bool,
    pub messages: Vec<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F={} E={} V={} {}",
            self.f,
            self.e,
            self.v,
            if self.ok { "OK" } else { "FAILED" }
        )
    }
}

struct Counts {
    f: u64,
    e: u64,
    v: u64,
}

fn counts(c: &DegenerationComplex, messages: &mut Vec<String>) -> Counts {
    let (mut f, mut e, mut v) = (0u64, 0u64, 0u64);
    for o in &c.orbits {
        if o.multiplicity == 0 {
            messages.push(format!(
                "orbit {}: multiplicity must be at least 1",
                o.label
            ));
        }
        if o.dim > 2 {
            messages.push(format!(
                "orbit {}: cell dimension {} exceeds 2",
                o.label, o.dim
            ));
            continue;
        }
        if o.dual.dim() + o.dim != 2 {
            messages.push(format!(
                "orbit {}: dual has dimension {} but a {}-cell needs {}",
                o.label,
                o.dual.dim(),
                o.dim,
                2 - o.dim
            ));
            continue;
        }
        let profile = match simplex_profile(&o.dual) {
            Ok(p) => p,
            Err(err) => {
                messages.push(format!("orbit {}: {err}", o.label));
                continue;
            }
        };
        let m = o.multiplicity;
        f += m * profile.c2;
        e += m * profile.c1;
        v += m * profile.c0;
    }
    Counts { f, e, v }
}

/// Sphere checks on the unimodular refinement: `V - E + F = 2` and `2E = 3F`.
pub fn validate(c: &DegenerationComplex) -> ValidationReport {
    let mut messages = Vec::new();
    let Counts { f, e, v } = counts(c, &mut messages);
    let euler = v as i128 - e as i128 + f as i128;
    if euler != 2 {
        messages.push(format!("V - E + F = {euler}, expected 2"));
    }
    if 2 * e as u128 != 3 * f as u128 {
        messages.push(format!(
            "2E = {} differs from 3F = {}",
            2 * e as u128,
            3 * f as u128
        ));
    }
    ValidationReport {
        name: c.name.clone(),
        f,
        e,
        v,
        ok: messages.is_empty(),
        messages,
    }
}

/// Multiplicities of the edge orbits forced by the sphere identities, when
/// the complex has exactly two edge orbits of distinct lattice lengths. The
/// stored edge multiplicities are ignored.
pub fn forced_edge_multiplicities(c: &DegenerationComplex) -> Result<Vec<(String, u64)>> {
    let edges: Vec<&CellOrbit> = c.orbits.iter().filter(|o| o.dim == 1).collect();
    if edges.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "need exactly two edge orbits, found {}",
            edges.len()
        )));
    }
    let la = edges[0].dual.lattice_length()? as i128;
    let lb = edges[1].dual.lattice_length()? as i128;
    if la == lb {
        return Err(Error::InvalidArgument(
            "edge orbits have equal lengths; system is singular".into(),
        ));
    }
    let mut rest = c.clone();
    rest.orbits.retain(|o| o.dim != 1);
    let mut msgs = Vec::new();
    let Counts { f, e: e0, v: v0 } = counts(&rest, &mut msgs);
    if !msgs.is_empty() {
        return Err(Error::InvalidArgument(msgs.join("; ")));
    }
    let f = f as i128;
    if f % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "odd triangle count {f} cannot satisfy 2E = 3F"
        )));
    }
    let e_target = 3 * f / 2;
    let v_target = e_target - f + 2;
    // na*la + nb*lb = e_target - e0 ; na*(la-1) + nb*(lb-1) = v_target - v0
    let r1 = e_target - e0 as i128;
    let r2 = v_target - v0 as i128;
    let det = la * (lb - 1) - lb * (la - 1);
    let na_num = r1 * (lb - 1) - lb * r2;
    let nb_num = la * r2 - r1 * (la - 1);
    if na_num % det != 0 || nb_num % det != 0 {
        return Err(Error::Inconsistent(
            "edge multiplicities are not integral".into(),
        ));
    }
    let (na, nb) = (na_num / det, nb_num / det);
    if na < 1 || nb < 1 {
        return Err(Error::Inconsistent(format!(
            "forced edge multiplicities ({na}, {nb}) are not positive"
        )));
    }
    Ok(vec![
        (edges[0].label.clone(), na as u64),
        (edges[1].label.clone(), nb as u64),
    ])
}

pub const BUILTIN_NAMES: [&str; 2] = ["quartic", "quartic-mirror"];

fn poly(v: &[(i64, i64)]) -> LatticePolytope {
    LatticePolytope::polygon_from_xy(v).expect("built-in polygon is valid")
}

/// Dual polygons of the four vertex types of the quartic's subdivision.
pub fn quartic_vertex_duals() -> [(&'static str, LatticePolytope); 4] {
    [
        ("a1", poly(&[(0, 0), (-1, 0), (0, -1)])),
        (
            "a2",
            poly(&[(0, 0), (-1, 1), (-1, 2), (0, 3), (1, 3), (1, 0)]),
        ),
        (
            "a3",
            poly(&[(0, 0), (-1, 0), (-1, 3), (0, 4), (1, 4), (1, 1)]),
        ),
        (
            "a4",
            poly(&[(0, 0), (-1, 0), (-1, 1), (0, 2), (1, 2), (1, 1)]),
        ),
    ]
}

fn quartic() -> DegenerationComplex {
    let [a1, a2, a3, a4] = quartic_vertex_duals();
    DegenerationComplex {
        name: "quartic".into(),
        orbits: vec![
            CellOrbit::vertex(a1.0, 4, a1.1),
            CellOrbit::vertex(a2.0, 12, a2.1),
            CellOrbit::vertex(a3.0, 6, a3.1),
            CellOrbit::vertex(a4.0, 12, a4.1),
            CellOrbit::edge("b1", 12, 3).expect("valid"),
            CellOrbit::edge("b2", 84, 1).expect("valid"),
            CellOrbit::face("c", 64),
        ],
        odp_count: 24,
        notes: "Boundary of 4x the standard 3-simplex, each facet cut into 16 unimodular \
                triangles; b1 are the a2-a3 edges along tetrahedron edges, b2 all others."
            .into(),
    }
}

fn quartic_mirror() -> DegenerationComplex {
    let mut orbits = vec![
        CellOrbit::vertex("c", 64, poly(&[(0, 0), (1, 0), (0, 1)])),
        CellOrbit::edge("b", 96, 1).expect("valid"),
    ];
    for (label, m) in [("a1", 4), ("a2", 12), ("a3", 6), ("a4", 12)] {
        orbits.push(CellOrbit::face(label, m));
    }
    DegenerationComplex {
        name: "quartic-mirror".into(),
        orbits,
        odp_count: 24,
        notes: "Legendre dual of the quartic: every vertex has the fan of P^2.".into(),
    }
}

pub fn builtin(name: &str) -> Result<DegenerationComplex> {
    match name {
        "quartic" => Ok(quartic()),
        "quartic-mirror" => Ok(quartic_mirror()),
        other => Err(Error::UnknownDataset(other.to_string())),
    }
}

#[derive(Serialize)]
struct FileComplex<'a> {
    name: &'a str,
    dimension: u8,
    odp_count: u64,
    orbits: Vec<FileOrbit<'a>>,
}

#[derive(Serialize)]
struct FileOrbit<'a> {
    label: &'a str,
    dim: usize,
    multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<FileDual>,
}

#[derive(Serialize)]
struct FileDual {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

/// The JSON text of a complex, pretty-printed with a trailing newline.
pub fn to_json(c: &DegenerationComplex) -> String {
    let file = FileComplex {
        name: &c.name,
        dimension: 2,
        odp_count: c.odp_count,
        orbits: c
            .orbits
            .iter()
            .map(|o| FileOrbit {
                label: &o.label,
                dim: o.dim,
                multiplicity: o.multiplicity,
                dual: (o.dim != 2).then(|| FileDual {
                    dim: o.dual.dim(),
                    vertices: o
                        .dual
                        .vertices()
                        .iter()
                        .map(|v| v.coords().to_vec())
                        .collect(),
                }),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializing plain data cannot fail");
    s.push('\n');
    s
}

pub fn save(c: &DegenerationComplex, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(c))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<DegenerationComplex> {
    from_json(&std::fs::read_to_string(path)?)
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn object<'a>(v: &'a Value, path: &str, keys: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(schema(path, format!("unexpected key `{k}`")));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing key `{key}`")))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

pub fn from_json(text: &str) -> Result<DegenerationComplex> {
    let root: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    let obj = object(&root, "$", &["name", "dimension", "odp_count", "orbits"])?;
    let name = field(obj, "$", "name")?
        .as_str()
        .ok_or_else(|| schema("$.name", "expected a string"))?
        .to_string();
    let dimension = uint(field(obj, "$", "dimension")?, "$.dimension")?;
    if dimension != 2 {
        return Err(schema(
            "$.dimension",
            format!("only dimension 2 is supported, got {dimension}"),
        ));
    }
    let odp_count = uint(field(obj, "$", "odp_count")?, "$.odp_count")?;
    let list = field(obj, "$", "orbits")?
        .as_array()
        .ok_or_else(|| schema("$.orbits", "expected an array"))?;
    let mut orbits = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let base = format!("$.orbits[{i}]");
        let o = object(item, &base, &["label", "dim", "multiplicity", "dual"])?;
        let label = field(o, &base, "label")?
            .as_str()
            .ok_or_else(|| schema(&format!("{base}.label"), "expected a string"))?
            .to_string();
        let here = format!("{base} (orbit `{label}`)");
        let dim = uint(field(o, &here, "dim")?, &format!("{here}.dim"))? as usize;
        if dim > 2 {
            return Err(schema(
                &format!("{here}.dim"),
                format!("cell dimension must be 0, 1 or 2, got {dim}"),
            ));
        }
        let multiplicity = uint(
            field(o, &here, "multiplicity")?,
            &format!("{here}.multiplicity"),
        )?;
        if multiplicity == 0 {
            return Err(schema(
                &format!("{here}.multiplicity"),
                "multiplicity must be at least 1",
            ));
        }
        let dual = match (dim, o.get("dual")) {
            (2, None) => LatticePolytope::origin(0),
            (2, Some(_)) => {
                return Err(schema(
                    &format!("{here}.dual"),
                    "a 2-cell has no dual polytope entry",
                ))
            }
            (_, None) => return Err(schema(&here, "missing key `dual`")),
            (_, Some(d)) => parse_dual(d, &format!("{here}.dual"), 2 - dim)?,
        };
        orbits.push(CellOrbit {
            label,
            dim,
            multiplicity,
            dual,
        });
    }
    Ok(DegenerationComplex {
        name,
        orbits,
        odp_count,
        notes: String::new(),
    })
}

fn parse_dual(v: &Value, path: &str, expected_dim: usize) -> Result<LatticePolytope> {
    let d = object(v, path, &["dim", "vertices"])?;
    let dim = uint(field(d, path, "dim")?, &format!("{path}.dim"))? as usize;
    if dim != expected_dim {
        return Err(schema(
            &format!("{path}.dim"),
            format!("dual dimension {dim} does not equal 2 - cell dimension = {expected_dim}"),
        ));
    }
    let raw = field(d, path, "vertices")?
        .as_array()
        .ok_or_else(|| schema(&format!("{path}.vertices"), "expected an array"))?;
    let mut vertices = Vec::with_capacity(raw.len());
    for (k, pt) in raw.iter().enumerate() {
        let p = format!("{path}.vertices[{k}]");
        let coords = pt
            .as_array()
            .ok_or_else(|| schema(&p, "expected an array of integers"))?
            .iter()
            .map(|c| {
                c.as_i64()
                    .ok_or_else(|| schema(&p, "expected integer coordinates"))
            })
            .collect::<Result<Vec<i64>>>()?;
        if coords.len() != dim {
            return Err(schema(
                &p,
                format!("expected {dim} coordinates, got {}", coords.len()),
            ));
        }
        vertices.push(LatticePoint::new(coords));
    }
    let polytope = match dim {
        1 => {
            if vertices.len() != 2 {
                return Err(schema(
                    &format!("{path}.vertices"),
                    "a segment needs exactly 2 endpoints",
                ));
            }
            let b = vertices.pop().expect("two vertices");
            let a = vertices.pop().expect("two vertices");
            LatticePolytope::segment(a, b)
        }
        _ => LatticePolytope::polygon(vertices),
    };
    polytope.map_err(|e| schema(&format!("{path}.vertices"), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> DegenerationComplex {
        DegenerationComplex {
            name: "tetrahedron".into(),
            orbits: vec![
                CellOrbit::vertex("v", 4, poly(&[(0, 0), (1, 0), (0, 1)])),
                CellOrbit::edge("e", 6, 1).unwrap(),
                CellOrbit::face("f", 4),
            ],
            odp_count: 24,
            notes: String::new(),
        }
    }

    #[test]
    fn builtin_counts() {
        let q = validate(&builtin("quartic").unwrap());
        assert!(q.ok, "{:?}", q.messages);
        assert_eq!((q.f, q.e, q.v), (280, 420, 142));
        let m = validate(&builtin("quartic-mirror").unwrap());
        assert!(m.ok);
        assert_eq!((m.f, m.e, m.v), (64, 96, 34));
        assert_eq!(m.to_string(), "F=64 E=96 V=34 OK");
        assert!(matches!(builtin("cubic"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn corrupted_multiplicity_fails() {
        let mut q = builtin("quartic").unwrap();
        q.orbit_mut("a2").unwrap().multiplicity = 11;
        assert!(!validate(&q).ok);
    }

    #[test]
    fn tetrahedron_sphere() {
        let r = validate(&tetrahedron());
        assert!(r.ok);
        assert_eq!((r.f, r.e, r.v), (4, 6, 4));
    }

    #[test]
    fn forced_edges_of_quartic() {
        let q = builtin("quartic").unwrap();
        let forced = forced_edge_multiplicities(&q).unwrap();
        assert_eq!(forced, vec![("b1".to_string(), 12), ("b2".to_string(), 84)]);
    }

    #[test]
    fn stratum_classes() {
        assert_eq!(
            StratumClass::for_codim(0).class,
            LPolynomial::new(vec![1, -2, 1])
        );
        assert_eq!(
            StratumClass::for_codim(1).class,
            LPolynomial::new(vec![-1, 1])
        );
        assert_eq!(StratumClass::for_codim(2).class, LPolynomial::constant(1));
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            assert_eq!(from_json(&to_json(&c)).unwrap(), c.without_notes());
        }
    }

    #[test]
    fn wrong_dual_dimension_names_orbit() {
        let text = r#"{"name":"x","dimension":2,"odp_count":0,"orbits":[
            {"label":"bad","dim":1,"multiplicity":1,"dual":{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}}]}"#;
        match from_json(text) {
            Err(Error::Schema { path, message }) => {
                assert!(path.contains("orbit `bad`"), "{path}");
                assert!(path.ends_with(".dual.dim"));
                assert!(message.contains("2 - cell dimension"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_paths() {
        let cases = [
            (r#"[]"#, "$"),
            (
                r#"{"name":"x","dimension":3,"odp_count":0,"orbits":[]}"#,
                "$.dimension",
            ),
            (
                r#"{"name":"x","dimension":2,"odp_count":-1,"orbits":[]}"#,
                "$.odp_count",
            ),
            (
                r#"{"name":"x","dimension":2,"odp_count":0,"orbits":[{"label":"f","dim":2,"multiplicity":0}]}"#,
                "$.orbits[0] (orbit `f`).multiplicity",
            ),
            (
                r#"{"name":"x","dimension":2,"odp_count":0,"orbits":[{"label":"f","dim":2,"multiplicity":1,"dual":{"dim":0,"vertices":[]}}]}"#,
                "$.orbits[0] (orbit `f`).dual",
            ),
            (
                r#"{"name":"x","dimension":2,"odp_count":0,"orbits":[{"label":"s","dim":1,"multiplicity":1,"dual":{"dim":1,"vertices":[[0],[0]]}}]}"#,
                "$.orbits[0] (orbit `s`).dual.vertices",
            ),
            (
                r#"{"name":"x","dimension":2,"odp_count":0,"orbits":[],"extra":1}"#,
                "$",
            ),
        ];
        for (text, want) in cases {
            match from_json(text) {
                Err(Error::Schema { path, .. }) => assert_eq!(path, want, "{text}"),
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
    }
}
