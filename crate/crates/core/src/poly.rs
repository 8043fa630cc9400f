//! Incidence model of a 3-dimensional combinatorial polyhedron.
//!
//! A polyhedron is stored as its list of 2-faces, each a cyclic sequence of
//! vertex ids, plus the set of vertices that are ideal (cusps). The embedding
//! is implicit in the face cycles: every edge must be traversed once in each
//! direction by the two faces that contain it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::map::PlaneMap;

/// An undirected edge, always stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("face {face}: vertex {vertex} appears more than once")]
    DuplicateVertex { face: usize, vertex: usize },
    #[error("face {face}: vertex id {vertex} out of range (vertex count {count})")]
    VertexOutOfRange {
        face: usize,
        vertex: usize,
        count: usize,
    },
    #[error("ideal vertex {vertex} is not a declared vertex (vertex count {count})")]
    UndeclaredIdeal { vertex: usize, count: usize },
    #[error("face {face} has {len} vertices; at least 3 are required")]
    ShortFace { face: usize, len: usize },
    #[error("invalid polyhedron: {0}")]
    Invalid(String),
    #[error("edge {edge}: {reason}")]
    Contraction { edge: Edge, reason: String },
}

/// Required edge-degrees of finite and ideal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub finite_degree: usize,
    pub ideal_degree: usize,
}

impl DegreeProfile {
    /// Finite vertices are simple (degree 3), cusps have four faces and edges.
    pub const RIGHT_ANGLED: DegreeProfile = DegreeProfile {
        finite_degree: 3,
        ideal_degree: 4,
    };

    pub fn new(finite_degree: usize, ideal_degree: usize) -> Option<Self> {
        (finite_degree > 0 && ideal_degree > 0).then_some(DegreeProfile {
            finite_degree,
            ideal_degree,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron3 {
    vertex_count: usize,
    ideal: BTreeSet<usize>,
    faces: Vec<Vec<usize>>,
}

impl Polyhedron3 {
    /// Builds a polyhedron from raw parts, checking only the local
    /// well-formedness of each face (ids in range, no repeats, length >= 3).
    pub fn new(
        vertex_count: usize,
        ideal: impl IntoIterator<Item = usize>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self, PolyError> {
        let ideal: BTreeSet<usize> = ideal.into_iter().collect();
        if let Some(&v) = ideal.iter().find(|&&v| v >= vertex_count) {
            return Err(PolyError::UndeclaredIdeal {
                vertex: v,
                count: vertex_count,
            });
        }
        for (i, face) in faces.iter().enumerate() {
            check_face(i, face, vertex_count)?;
        }
        Ok(Polyhedron3 {
            vertex_count,
            ideal,
            faces,
        })
    }

    pub(crate) fn from_parts_unchecked(
        vertex_count: usize,
        ideal: BTreeSet<usize>,
        faces: Vec<Vec<usize>>,
    ) -> Self {
        Polyhedron3 {
            vertex_count,
            ideal,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn ideal_vertices(&self) -> &BTreeSet<usize> {
        &self.ideal
    }

    pub fn is_ideal(&self, v: usize) -> bool {
        self.ideal.contains(&v)
    }

    pub fn cusp_count(&self) -> usize {
        self.ideal.len()
    }

    pub fn finite_vertex_count(&self) -> usize {
        self.vertex_count - self.ideal.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Same embedding with a different set of ideal marks.
    pub fn with_ideal(&self, ideal: impl IntoIterator<Item = usize>) -> Result<Self, PolyError> {
        Polyhedron3::new(self.vertex_count, ideal, self.faces.clone())
    }

    /// Directed edges of face `f` in cyclic order.
    pub fn face_darts(&self, f: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let face = &self.faces[f];
        (0..face.len()).map(move |i| (face[i], face[(i + 1) % face.len()]))
    }

    /// Sorted list of distinct undirected edges.
    pub fn edges(&self) -> Vec<Edge> {
        let set: BTreeSet<Edge> = (0..self.faces.len())
            .flat_map(|f| self.face_darts(f))
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        set.into_iter().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Faces containing each edge, in face order.
    pub fn edge_faces(&self) -> BTreeMap<Edge, Vec<usize>> {
        let mut map: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for f in 0..self.faces.len() {
            for (a, b) in self.face_darts(f) {
                map.entry(Edge::new(a, b)).or_default().push(f);
            }
        }
        map
    }

    /// Number of distinct neighbours of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in self.edges() {
            deg[e.0] += 1;
            deg[e.1] += 1;
        }
        deg
    }

    /// For each vertex, the sorted list of faces containing it.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut vf = vec![Vec::new(); self.vertex_count];
        for (f, face) in self.faces.iter().enumerate() {
            for &v in face {
                vf[v].push(f);
            }
        }
        vf
    }

    /// Euler characteristic `V - E + F`, ideal vertices included in `V`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Errors unless the structural invariants hold.
    pub fn ensure_valid(&self) -> Result<(), PolyError> {
        let report = validate(self, None);
        if report.is_valid() {
            Ok(())
        } else {
            Err(PolyError::Invalid(report.summary()))
        }
    }

    /// Rotation system of the embedding. Only meaningful on valid input.
    pub(crate) fn plane_map(&self) -> PlaneMap {
        PlaneMap::from_faces(self.vertex_count, &self.faces)
            .expect("valid polyhedron has a well-defined rotation system")
    }

    /// Renders the polyhedron in the POLY3 format.
    pub fn to_poly3(&self) -> String {
        let mut out = String::from("poly3 v1\n");
        out.push_str(&format!("vertices: {}\n", self.vertex_count));
        out.push_str("ideal:");
        for v in &self.ideal {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for face in &self.faces {
            out.push_str("face:");
            for v in face {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn check_face(index: usize, face: &[usize], count: usize) -> Result<(), PolyError> {
    if face.len() < 3 {
        return Err(PolyError::ShortFace {
            face: index,
            len: face.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for &v in face {
        if v >= count {
            return Err(PolyError::VertexOutOfRange {
                face: index,
                vertex: v,
                count,
            });
        }
        if !seen.insert(v) {
            return Err(PolyError::DuplicateVertex {
                face: index,
                vertex: v,
            });
        }
    }
    Ok(())
}

/// Parses a POLY3 document. Faces and ideal marks are kept exactly as written.
pub fn parse_poly3(text: &str) -> Result<Polyhedron3, PolyError> {
    #[derive(PartialEq)]
    enum Stage {
        Header,
        Vertices,
        Ideal,
        Faces,
    }
    let mut stage = Stage::Header;
    let mut count = 0usize;
    let mut ideal: Vec<usize> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let indent = content.len() - content.trim_start().len();
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| PolyError::Syntax {
            line: line_no,
            column: column + 1,
            message,
        };
        match stage {
            Stage::Header => {
                if line.split_whitespace().collect::<Vec<_>>() != ["poly3", "v1"] {
                    return Err(syntax(
                        indent,
                        format!("expected `poly3 v1`, found `{line}`"),
                    ));
                }
                stage = Stage::Vertices;
            }
            Stage::Vertices => {
                let rest = keyword(line, "vertices:")
                    .ok_or_else(|| syntax(indent, "expected `vertices: <N>`".into()))?;
                let ids = parse_ids(rest, indent + "vertices:".len(), line, &syntax)?;
                if ids.len() != 1 {
                    return Err(syntax(indent, "expected exactly one vertex count".into()));
                }
                count = ids[0].0;
                stage = Stage::Ideal;
            }
            Stage::Ideal => {
                let rest = keyword(line, "ideal:")
                    .ok_or_else(|| syntax(indent, "expected `ideal:` line".into()))?;
                for (v, col) in parse_ids(rest, indent + "ideal:".len(), line, &syntax)? {
                    if v >= count {
                        return Err(PolyError::UndeclaredIdeal { vertex: v, count });
                    }
                    if ideal.contains(&v) {
                        return Err(syntax(col, format!("ideal vertex {v} listed twice")));
                    }
                    ideal.push(v);
                }
                stage = Stage::Faces;
            }
            Stage::Faces => {
                let rest = keyword(line, "face:").ok_or_else(|| {
                    syntax(indent, format!("expected `face:` line, found `{line}`"))
                })?;
                let face: Vec<usize> = parse_ids(rest, indent + "face:".len(), line, &syntax)?
                    .into_iter()
                    .map(|(v, _)| v)
                    .collect();
                check_face(faces.len(), &face, count)?;
                faces.push(face);
            }
        }
    }
    match stage {
        Stage::Faces => Polyhedron3::new(count, ideal, faces),
        _ => Err(PolyError::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "unexpected end of document".into(),
        }),
    }
}

fn keyword<'a>(line: &'a str, kw: &str) -> Option<&'a str> {
    line.strip_prefix(kw)
}

fn parse_ids(
    rest: &str,
    offset: usize,
    _line: &str,
    syntax: &dyn Fn(usize, String) -> PolyError,
) -> Result<Vec<(usize, usize)>, PolyError> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in rest.split_whitespace() {
        let at = rest[pos..].find(tok).map(|i| i + pos).unwrap_or(pos);
        pos = at + tok.len();
        let col = offset + at;
        let v = tok
            .parse::<usize>()
            .map_err(|_| syntax(col, format!("`{tok}` is not a non-negative integer")))?;
        out.push((v, col));
    }
    Ok(out)
}

/// One violated structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    /// The edge is not contained in exactly two face cycles.
    EdgeMultiplicity {
        edge: Edge,
        faces: Vec<usize>,
    },
    /// Both faces of the edge traverse it in the same direction.
    EdgeOrientation {
        edge: Edge,
        faces: Vec<usize>,
    },
    IsolatedVertex {
        vertex: usize,
    },
    /// The faces around the vertex form more than one cycle.
    VertexLink {
        vertex: usize,
        cycles: usize,
    },
    Euler {
        v: usize,
        e: usize,
        f: usize,
    },
    Disconnected {
        components: usize,
    },
    NoFaces,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EdgeMultiplicity { edge, faces } => {
                write!(f, "edge {edge} lies on {} faces {:?}", faces.len(), faces)
            }
            Issue::EdgeOrientation { edge, faces } => {
                write!(
                    f,
                    "edge {edge} traversed in the same direction by faces {faces:?}"
                )
            }
            Issue::IsolatedVertex { vertex } => write!(f, "vertex {vertex} lies on no face"),
            Issue::VertexLink { vertex, cycles } => {
                write!(f, "faces around vertex {vertex} form {cycles} cycles")
            }
            Issue::Euler { v, e, f: faces } => {
                write!(
                    f,
                    "Euler relation fails: V - E + F = {v} - {e} + {faces} != 2"
                )
            }
            Issue::Disconnected { components } => {
                write!(f, "incidence graph has {components} components")
            }
            Issue::NoFaces => write!(f, "no faces"),
        }
    }
}

/// Two faces sharing more than one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiAdjacency {
    pub faces: (usize, usize),
    pub shared: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub ideal: bool,
    pub degree: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    pub multi_adjacent: Vec<MultiAdjacency>,
    pub degree_violations: Vec<DegreeViolation>,
}

impl ValidationReport {
    /// Structural invariants hold. Multi-adjacent face pairs and degree
    /// deviations do not affect validity.
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// Valid and every vertex matches the requested degree profile.
    pub fn conforms(&self) -> bool {
        self.is_valid() && self.degree_violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.issues
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub fn validate(p: &Polyhedron3, profile: Option<DegreeProfile>) -> ValidationReport {
    let mut report = ValidationReport::default();
    if p.faces.is_empty() {
        report.issues.push(Issue::NoFaces);
        return report;
    }

    let mut darts: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for f in 0..p.faces.len() {
        for d in p.face_darts(f) {
            darts.entry(d).or_default().push(f);
        }
    }
    let edge_faces = p.edge_faces();
    let mut edges_ok = true;
    for (edge, faces) in &edge_faces {
        if faces.len() != 2 {
            edges_ok = false;
            report.issues.push(Issue::EdgeMultiplicity {
                edge: *edge,
                faces: faces.clone(),
            });
            continue;
        }
        let fwd = darts.get(&(edge.0, edge.1)).map_or(0, Vec::len);
        let bwd = darts.get(&(edge.1, edge.0)).map_or(0, Vec::len);
        if fwd != 1 || bwd != 1 {
            edges_ok = false;
            report.issues.push(Issue::EdgeOrientation {
                edge: *edge,
                faces: faces.clone(),
            });
        }
    }

    let vertex_faces = p.vertex_faces();
    for (v, vf) in vertex_faces.iter().enumerate() {
        if vf.is_empty() {
            report.issues.push(Issue::IsolatedVertex { vertex: v });
        }
    }

    // Link cycles are only well defined once every edge is properly paired.
    if edges_ok {
        if let Ok(map) = PlaneMap::from_faces(p.vertex_count, &p.faces) {
            for v in 0..p.vertex_count {
                let cycles = map.link_cycles(v);
                if cycles > 1 {
                    report.issues.push(Issue::VertexLink { vertex: v, cycles });
                }
            }
        }
    }

    let (v, e, f) = (p.vertex_count, edge_faces.len(), p.faces.len());
    if v as i64 - e as i64 + f as i64 != 2 {
        report.issues.push(Issue::Euler { v, e, f });
    }

    let components = incidence_components(p, &vertex_faces);
    if components > 1 {
        report.issues.push(Issue::Disconnected { components });
    }

    let mut pair_edges: BTreeMap<(usize, usize), Vec<Edge>> = BTreeMap::new();
    for (edge, faces) in &edge_faces {
        if let [a, b] = faces[..] {
            if a != b {
                pair_edges
                    .entry((a.min(b), a.max(b)))
                    .or_default()
                    .push(*edge);
            }
        }
    }
    for (faces, shared) in pair_edges {
        if shared.len() > 1 {
            report.multi_adjacent.push(MultiAdjacency { faces, shared });
        }
    }

    if let Some(profile) = profile {
        for (vertex, &degree) in p.degrees().iter().enumerate() {
            let ideal = p.is_ideal(vertex);
            let required = if ideal {
                profile.ideal_degree
            } else {
                profile.finite_degree
            };
            if degree != required {
                report.degree_violations.push(DegreeViolation {
                    vertex,
                    ideal,
                    degree,
                    required,
                });
            }
        }
    }
    report
}

/// Components of the vertex/face incidence graph.
fn incidence_components(p: &Polyhedron3, vertex_faces: &[Vec<usize>]) -> usize {
    let n = p.vertex_count + p.faces.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            let next: Vec<usize> = if x < p.vertex_count {
                vertex_faces[x]
                    .iter()
                    .map(|&f| p.vertex_count + f)
                    .collect()
            } else {
                p.faces[x - p.vertex_count].clone()
            };
            for y in next {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

/// Exchanges faces and vertices.
///
/// Face `i` of the dual surrounds vertex `i` of the input and vertex `j` of
/// the dual sits in face `j` of the input, so applying `dual` twice returns
/// the original vertex numbering. The dual carries no ideal marks.
pub fn dual(p: &Polyhedron3) -> Result<Polyhedron3, PolyError> {
    p.ensure_valid()?;
    Ok(dual_unchecked(p))
}

pub(crate) fn dual_unchecked(p: &Polyhedron3) -> Polyhedron3 {
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for f in 0..p.faces.len() {
        for d in p.face_darts(f) {
            dart_face.insert(d, f);
        }
    }
    let map = p.plane_map();
    let faces = (0..p.vertex_count)
        .map(|v| {
            // Walk the rotation at v backwards so the dual faces come out
            // consistently oriented.
            let rot = map.rotation(v);
            rot.iter()
                .rev()
                .map(|&w| dart_face[&(v, w)])
                .collect::<Vec<_>>()
        })
        .collect();
    Polyhedron3::from_parts_unchecked(p.faces.len(), BTreeSet::new(), faces)
}

/// Merges the endpoints of `edge` into a single new ideal vertex.
///
/// The merged vertex keeps the smaller id; ids above the larger endpoint
/// shift down by one.
pub fn contract_edge(p: &Polyhedron3, edge: Edge) -> Result<Polyhedron3, PolyError> {
    p.ensure_valid()?;
    let Edge(u, v) = Edge::new(edge.0, edge.1);
    let fail = |reason: &str| PolyError::Contraction {
        edge: Edge(u, v),
        reason: reason.to_string(),
    };
    let edge_faces = p.edge_faces();
    let containing = edge_faces
        .get(&Edge(u, v))
        .ok_or_else(|| fail("not an edge of the polyhedron"))?;
    if p.is_ideal(u) || p.is_ideal(v) {
        return Err(fail("edge touches an ideal vertex"));
    }
    let deg = p.degrees();
    if deg[u] != 3 || deg[v] != 3 {
        return Err(fail("both endpoints must be finite vertices of degree 3"));
    }
    if containing.iter().any(|&f| p.faces[f].len() < 4) {
        return Err(fail("a face containing the edge is a triangle"));
    }
    let relabel = |x: usize| -> usize {
        if x == v {
            u
        } else if x > v {
            x - 1
        } else {
            x
        }
    };
    let faces = p
        .faces
        .iter()
        .map(|face| {
            let mut out: Vec<usize> = Vec::with_capacity(face.len());
            for &x in face {
                let y = relabel(x);
                if out.last() != Some(&y) {
                    out.push(y);
                }
            }
            if out.len() > 1 && out.first() == out.last() {
                out.pop();
            }
            out
        })
        .collect();
    let mut ideal: BTreeSet<usize> = p.ideal.iter().map(|&x| relabel(x)).collect();
    ideal.insert(u);
    Ok(Polyhedron3::from_parts_unchecked(
        p.vertex_count - 1,
        ideal,
        faces,
    ))
}
