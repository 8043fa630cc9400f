//! Andreev-type conditions on dihedral angles.
//!
//! Angles are given as rational multiples of pi, keyed by edge. The angle
//! between two adjacent faces is the angle of the lowest-numbered edge they
//! share.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, rational, Rational};
use crate::canon::unmarked_code;
use crate::fixtures;
use crate::poly::{Edge, PolyError, Polyhedron3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AndreevError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("vertex {vertex} ({kind}) has degree {degree}; the polyhedron is not almost simple")]
    NotAlmostSimple {
        vertex: usize,
        kind: &'static str,
        degree: usize,
    },
    #[error("no angle given for edge {0}")]
    MissingAngle(Edge),
    #[error("angle given for {0}, which is not an edge")]
    UnknownEdge(Edge),
    #[error("edge {0} has more than one angle")]
    DuplicateAngle(Edge),
    #[error("angle {value} at edge {edge} is outside (0, 1/2]")]
    AngleRange { edge: Edge, value: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Dihedral angles in units of pi.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AngleAssignment {
    angles: BTreeMap<Edge, Rational>,
}

impl AngleAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `p` at pi/2.
    pub fn right_angled(p: &Polyhedron3) -> Self {
        AngleAssignment {
            angles: p.edges().into_iter().map(|e| (e, rational(1, 2))).collect(),
        }
    }

    pub fn insert(&mut self, edge: Edge, value: Rational) -> Result<(), AndreevError> {
        let edge = Edge::new(edge.0, edge.1);
        if value <= Rational::zero() || value > rational(1, 2) {
            return Err(AndreevError::AngleRange {
                edge,
                value: format_rational(&value),
            });
        }
        if self.angles.insert(edge, value).is_some() {
            return Err(AndreevError::DuplicateAngle(edge));
        }
        Ok(())
    }

    pub fn get(&self, edge: Edge) -> Option<&Rational> {
        self.angles.get(&Edge::new(edge.0, edge.1))
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &Rational)> {
        self.angles.iter()
    }
}

/// Parses an angle file: one `angle: u v p q` line per edge, meaning the
/// angle `(p/q) pi`; `angle: u v p/q` is accepted too. `#` starts a comment.
pub fn parse_angles(text: &str) -> Result<AngleAssignment, AndreevError> {
    let mut out = AngleAssignment::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| AndreevError::Syntax {
            line: ln + 1,
            message: message.to_string(),
        };
        let rest = line
            .strip_prefix("angle:")
            .ok_or_else(|| syntax("expected `angle: u v p q`"))?;
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let value = match parts.len() {
            4 => format!("{}/{}", parts[2], parts[3]),
            3 => parts[2].to_string(),
            _ => return Err(syntax("expected two vertex ids and an angle p q")),
        };
        let u: usize = parts[0].parse().map_err(|_| syntax("bad vertex id"))?;
        let v: usize = parts[1].parse().map_err(|_| syntax("bad vertex id"))?;
        let q = parse_rational(&value).ok_or_else(|| syntax("bad angle"))?;
        out.insert(Edge::new(u, v), q)?;
    }
    Ok(out)
}

/// Edges shared by each pair of faces.
#[derive(Debug, Clone)]
pub struct FaceAdjacency {
    shared: Vec<Vec<Vec<Edge>>>,
    neighbours: Vec<Vec<usize>>,
}

impl FaceAdjacency {
    pub fn new(p: &Polyhedron3) -> Self {
        let n = p.face_count();
        let mut shared = vec![vec![Vec::new(); n]; n];
        for (edge, faces) in p.edge_faces() {
            if let [f, g] = faces[..] {
                if f != g {
                    shared[f][g].push(edge);
                    shared[g][f].push(edge);
                }
            }
        }
        let neighbours = (0..n)
            .map(|f| (0..n).filter(|&g| !shared[f][g].is_empty()).collect())
            .collect();
        FaceAdjacency { shared, neighbours }
    }

    pub fn face_count(&self) -> usize {
        self.shared.len()
    }

    /// Sorted shared edges of faces `f` and `g`.
    pub fn shared(&self, f: usize, g: usize) -> &[Edge] {
        &self.shared[f][g]
    }

    pub fn adjacent(&self, f: usize, g: usize) -> bool {
        !self.shared[f][g].is_empty()
    }

    pub fn neighbours(&self, f: usize) -> &[usize] {
        &self.neighbours[f]
    }
}

#[derive(Debug, Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn meets3(&self, b: &Bits, c: &Bits) -> bool {
        self.0
            .iter()
            .zip(&b.0)
            .zip(&c.0)
            .any(|((x, y), z)| x & y & z != 0)
    }

    fn meets_outside(&self, b: &Bits, not: &Bits, mask: &Bits) -> bool {
        (0..self.0.len()).any(|i| self.0[i] & b.0[i] & mask.0[i] & !not.0[i] != 0)
    }
}

struct Context {
    adj: FaceAdjacency,
    face_bits: Vec<Bits>,
    ideal_bits: Bits,
}

impl Context {
    fn new(p: &Polyhedron3) -> Self {
        let face_bits = p
            .faces()
            .iter()
            .map(|face| {
                let mut b = Bits::new(p.vertex_count());
                face.iter().for_each(|&v| b.set(v));
                b
            })
            .collect();
        let mut ideal_bits = Bits::new(p.vertex_count());
        p.ideal_vertices().iter().for_each(|&v| ideal_bits.set(v));
        Context {
            adj: FaceAdjacency::new(p),
            face_bits,
            ideal_bits,
        }
    }

    fn common3(&self, a: usize, b: usize, c: usize) -> bool {
        self.face_bits[a].meets3(&self.face_bits[b], &self.face_bits[c])
    }

    /// Visits prismatic 3-circuits `a < b < c`; stops when `visit` is false.
    fn circuits3(&self, mut visit: impl FnMut([usize; 3]) -> bool) {
        let n = self.adj.face_count();
        for a in 0..n {
            for &b in self.adj.neighbours(a).iter().filter(|&&b| b > a) {
                for &c in self.adj.neighbours(b).iter().filter(|&&c| c > b) {
                    if self.adj.adjacent(a, c) && !self.common3(a, b, c) && !visit([a, b, c]) {
                        return;
                    }
                }
            }
        }
    }

    /// Visits prismatic 4-circuits in cyclic order `a b c d`, with `a` the
    /// smallest face and `b < d`.
    fn circuits4(&self, mut visit: impl FnMut([usize; 4]) -> bool) {
        let n = self.adj.face_count();
        for a in 0..n {
            for &b in self.adj.neighbours(a).iter().filter(|&&b| b > a) {
                for &c in self.adj.neighbours(b).iter().filter(|&&c| c > a) {
                    for &d in self.adj.neighbours(c).iter().filter(|&&d| d > b) {
                        if !self.adj.adjacent(d, a) {
                            continue;
                        }
                        let prismatic = !self.common3(a, b, c)
                            && !self.common3(b, c, d)
                            && !self.common3(c, d, a)
                            && !self.common3(d, a, b);
                        if prismatic && !visit([a, b, c, d]) {
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Visits triples `(i, j, k)`, `j < k`: `F_i` meets both `F_j` and
    /// `F_k`, which are not adjacent but share a cusp outside `F_i`.
    fn cusp_triples(&self, mut visit: impl FnMut([usize; 3]) -> bool) {
        let n = self.adj.face_count();
        for i in 0..n {
            let nb = self.adj.neighbours(i);
            for (x, &j) in nb.iter().enumerate() {
                for &k in &nb[x + 1..] {
                    if self.adj.adjacent(j, k) {
                        continue;
                    }
                    if self.face_bits[j].meets_outside(
                        &self.face_bits[k],
                        &self.face_bits[i],
                        &self.ideal_bits,
                    ) && !visit([i, j, k])
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// Prismatic circuits of length 3 or 4 (faces in cyclic order).
///
/// A prismatic k-circuit is a cyclic sequence of k distinct faces, each
/// adjacent to the next, such that no vertex (finite or ideal) lies on three
/// cyclically consecutive members.
pub fn prismatic_circuits(p: &Polyhedron3, len: usize) -> Result<Vec<Vec<usize>>, PolyError> {
    p.ensure_valid()?;
    let ctx = Context::new(p);
    let mut out = Vec::new();
    match len {
        3 => ctx.circuits3(|c| {
            out.push(c.to_vec());
            true
        }),
        4 => ctx.circuits4(|c| {
            out.push(c.to_vec());
            true
        }),
        _ => {
            return Err(PolyError::Invalid(format!(
                "prismatic circuits of length {len} are not supported"
            )))
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    VertexSum,
    CuspFour,
    Circuit3,
    CuspTriple,
    Circuit4,
    FaceSize,
    SingleEdge,
    VertexDegree,
    CuspDegree,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::VertexSum => "(a) angle sum at vertices",
            Condition::CuspFour => "(b) right angles at 4-valent cusps",
            Condition::Circuit3 => "(c) prismatic 3-circuits",
            Condition::CuspTriple => "(d) faces meeting at a cusp",
            Condition::Circuit4 => "(e) prismatic 4-circuits",
            Condition::FaceSize => "(1) edges plus cusps of each face >= 5",
            Condition::SingleEdge => "(2) adjacent faces share one edge",
            Condition::VertexDegree => "(3) finite vertices have degree 3",
            Condition::CuspDegree => "cusps have degree 4",
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Condition::VertexSum => "a",
            Condition::CuspFour => "b",
            Condition::Circuit3 => "c",
            Condition::CuspTriple => "d",
            Condition::Circuit4 => "e",
            Condition::FaceSize => "face_size",
            Condition::SingleEdge => "single_edge",
            Condition::VertexDegree => "vertex_degree",
            Condition::CuspDegree => "cusp_degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    /// Offending face tuples; empty when the condition holds.
    pub witnesses: Vec<Vec<usize>>,
}

impl ConditionResult {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedFamily {
    Tetrahedron,
    TriangularPrism,
}

impl fmt::Display for ExcludedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExcludedFamily::Tetrahedron => "tetrahedron",
            ExcludedFamily::TriangularPrism => "triangular prism",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    OutsideScope,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::OutsideScope => "outside-scope",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub results: Vec<ConditionResult>,
    pub excluded: Option<ExcludedFamily>,
}

impl ConditionReport {
    /// Any violation fails; otherwise the excluded families are out of scope.
    pub fn verdict(&self) -> Verdict {
        if self.results.iter().any(|r| !r.holds()) {
            Verdict::Fail
        } else if self.excluded.is_some() {
            Verdict::OutsideScope
        } else {
            Verdict::Pass
        }
    }

    pub fn result(&self, condition: Condition) -> Option<&ConditionResult> {
        self.results.iter().find(|r| r.condition == condition)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            if r.holds() {
                out.push_str(&format!("{}: ok\n", r.condition.label()));
            } else {
                out.push_str(&format!(
                    "{}: {} violation(s)\n",
                    r.condition.label(),
                    r.witnesses.len()
                ));
                for w in &r.witnesses {
                    let faces: Vec<String> = w.iter().map(|f| format!("F{f}")).collect();
                    out.push_str(&format!("  {}\n", faces.join(" ")));
                }
            }
        }
        if let Some(family) = self.excluded {
            out.push_str(&format!("combinatorial type: {family}\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict()));
        out
    }
}

fn excluded_family(p: &Polyhedron3) -> Option<ExcludedFamily> {
    let (v, f) = (p.vertex_count(), p.face_count());
    let code = || unmarked_code(p).ok();
    if v == 4 && f == 4 && code() == unmarked_code(&fixtures::tetrahedron()).ok() {
        Some(ExcludedFamily::Tetrahedron)
    } else if v == 6 && f == 5 && code() == unmarked_code(&fixtures::prism()).ok() {
        Some(ExcludedFamily::TriangularPrism)
    } else {
        None
    }
}

fn vertex_witnesses(p: &Polyhedron3, bad: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let vf = p.vertex_faces();
    (0..p.vertex_count())
        .filter(|&v| bad(v))
        .map(|v| vf[v].clone())
        .collect()
}

/// Checks conditions (a)-(e) for the given angles.
pub fn check_andreev(
    p: &Polyhedron3,
    angles: &AngleAssignment,
) -> Result<ConditionReport, AndreevError> {
    p.ensure_valid()?;
    let deg = p.degrees();
    for (v, &d) in deg.iter().enumerate() {
        let ok = if p.is_ideal(v) {
            d == 3 || d == 4
        } else {
            d == 3
        };
        if !ok {
            return Err(AndreevError::NotAlmostSimple {
                vertex: v,
                kind: if p.is_ideal(v) { "ideal" } else { "finite" },
                degree: deg[v],
            });
        }
    }
    let edges: BTreeSet<Edge> = p.edges().into_iter().collect();
    if let Some(e) = edges.iter().find(|e| angles.get(**e).is_none()) {
        return Err(AndreevError::MissingAngle(*e));
    }
    if let Some((e, _)) = angles.iter().find(|(e, _)| !edges.contains(e)) {
        return Err(AndreevError::UnknownEdge(*e));
    }
    for (e, q) in angles.iter() {
        if *q <= Rational::zero() || *q > rational(1, 2) {
            return Err(AndreevError::AngleRange {
                edge: *e,
                value: format_rational(q),
            });
        }
    }

    let ctx = Context::new(p);
    let half = rational(1, 2);
    let one = Rational::one();
    let angle = |f: usize, g: usize| -> &Rational {
        angles
            .get(ctx.adj.shared(f, g)[0])
            .expect("every edge has an angle")
    };
    let vertex_sum = |v: usize| -> Rational {
        edges
            .iter()
            .filter(|e| e.contains(v))
            .fold(Rational::zero(), |acc, e| acc + angles.get(*e).unwrap())
    };

    let a = vertex_witnesses(p, |v| {
        let s = vertex_sum(v);
        if p.is_ideal(v) {
            deg[v] == 3 && s != one
        } else {
            s < one
        }
    });
    let b = vertex_witnesses(p, |v| {
        p.is_ideal(v)
            && deg[v] == 4
            && edges
                .iter()
                .filter(|e| e.contains(v))
                .any(|e| *angles.get(*e).unwrap() != half)
    });
    let mut c = Vec::new();
    ctx.circuits3(|[x, y, z]| {
        if angle(x, y) + angle(y, z) + angle(z, x) >= one {
            c.push(vec![x, y, z]);
        }
        true
    });
    let mut d = Vec::new();
    ctx.cusp_triples(|[i, j, k]| {
        if *angle(i, j) == half && *angle(i, k) == half {
            d.push(vec![i, j, k]);
        }
        true
    });
    let mut e = Vec::new();
    ctx.circuits4(|[w, x, y, z]| {
        if [angle(w, x), angle(x, y), angle(y, z), angle(z, w)]
            .iter()
            .all(|q| **q == half)
        {
            e.push(vec![w, x, y, z]);
        }
        true
    });

    let results = [
        (Condition::VertexSum, a),
        (Condition::CuspFour, b),
        (Condition::Circuit3, c),
        (Condition::CuspTriple, d),
        (Condition::Circuit4, e),
    ]
    .into_iter()
    .map(|(condition, witnesses)| ConditionResult {
        condition,
        witnesses,
    })
    .collect();
    Ok(ConditionReport {
        results,
        excluded: excluded_family(p),
    })
}

/// Right-angled specialisation, evaluated combinatorially.
///
/// With every angle pi/2 any prismatic 3- or 4-circuit and any cusp triple
/// is a violation. On top of that each face needs edges plus cusps at least
/// 5, adjacent faces share exactly one edge, finite vertices have degree 3
/// and cusps degree 4.
pub fn check_right_angled(p: &Polyhedron3) -> Result<ConditionReport, AndreevError> {
    p.ensure_valid()?;
    let ctx = Context::new(p);
    let deg = p.degrees();
    let n = p.face_count();

    let face_size = (0..n)
        .filter(|&f| face_weight(p, f) < 5)
        .map(|f| vec![f])
        .collect();
    let single_edge = (0..n)
        .flat_map(|f| (f + 1..n).map(move |g| (f, g)))
        .filter(|&(f, g)| ctx.adj.shared(f, g).len() > 1)
        .map(|(f, g)| vec![f, g])
        .collect();
    let vertex_degree = vertex_witnesses(p, |v| !p.is_ideal(v) && deg[v] != 3);
    let cusp_degree = vertex_witnesses(p, |v| p.is_ideal(v) && deg[v] != 4);
    let mut c = Vec::new();
    ctx.circuits3(|w| {
        c.push(w.to_vec());
        true
    });
    let mut d = Vec::new();
    ctx.cusp_triples(|w| {
        d.push(w.to_vec());
        true
    });
    let mut e = Vec::new();
    ctx.circuits4(|w| {
        e.push(w.to_vec());
        true
    });

    let results = [
        (Condition::FaceSize, face_size),
        (Condition::SingleEdge, single_edge),
        (Condition::VertexDegree, vertex_degree),
        (Condition::CuspDegree, cusp_degree),
        (Condition::Circuit3, c),
        (Condition::CuspTriple, d),
        (Condition::Circuit4, e),
    ]
    .into_iter()
    .map(|(condition, witnesses)| ConditionResult {
        condition,
        witnesses,
    })
    .collect();
    Ok(ConditionReport {
        results,
        excluded: excluded_family(p),
    })
}

fn face_weight(p: &Polyhedron3, f: usize) -> usize {
    let face = &p.faces()[f];
    face.len() + face.iter().filter(|&&v| p.is_ideal(v)).count()
}

/// Same verdict as `check_right_angled(p)` being a pass, with early exit.
/// `p` must be valid.
pub(crate) fn passes_right_angled(p: &Polyhedron3) -> bool {
    let deg = p.degrees();
    let degrees_ok = (0..p.vertex_count()).all(|v| deg[v] == if p.is_ideal(v) { 4 } else { 3 });
    if !degrees_ok || (0..p.face_count()).any(|f| face_weight(p, f) < 5) {
        return false;
    }
    let ctx = Context::new(p);
    let n = p.face_count();
    if (0..n).any(|f| (f + 1..n).any(|g| ctx.adj.shared(f, g).len() > 1)) {
        return false;
    }
    let mut clean = true;
    ctx.circuits3(|_| {
        clean = false;
        false
    });
    if clean {
        ctx.cusp_triples(|_| {
            clean = false;
            false
        });
    }
    if clean {
        ctx.circuits4(|_| {
            clean = false;
            false
        });
    }
    clean && excluded_family(p).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::contract_edge;

    fn right(p: &Polyhedron3) -> ConditionReport {
        check_andreev(p, &AngleAssignment::right_angled(p)).unwrap()
    }

    #[test]
    fn circuit_counts_of_fixtures() {
        let count = |p: &Polyhedron3, k| prismatic_circuits(p, k).unwrap().len();
        let cube = fixtures::cube();
        assert_eq!(count(&cube, 3), 0);
        assert_eq!(count(&cube, 4), 3);
        let d = fixtures::dodecahedron();
        assert_eq!(count(&d, 3), 0);
        assert_eq!(count(&d, 4), 0);
        assert_eq!(count(&fixtures::prism(), 3), 1);
        assert_eq!(count(&fixtures::tetrahedron(), 3), 0);
    }

    #[test]
    fn dodecahedron_is_right_angled() {
        let d = fixtures::dodecahedron();
        assert_eq!(right(&d).verdict(), Verdict::Pass);
        assert_eq!(check_right_angled(&d).unwrap().verdict(), Verdict::Pass);
        assert!(passes_right_angled(&d));
    }

    #[test]
    fn cube_fails_on_four_circuits() {
        let cube = fixtures::cube();
        let report = right(&cube);
        assert_eq!(report.verdict(), Verdict::Fail);
        let e = report.result(Condition::Circuit4).unwrap();
        assert_eq!(e.witnesses.len(), 3);
        for cond in [
            Condition::VertexSum,
            Condition::CuspFour,
            Condition::Circuit3,
            Condition::CuspTriple,
        ] {
            assert!(report.result(cond).unwrap().holds());
        }
    }

    #[test]
    fn excluded_families_are_outside_scope() {
        let t = fixtures::tetrahedron();
        let q = rational(1, 3);
        let mut angles = AngleAssignment::new();
        for e in t.edges() {
            angles.insert(e, q.clone()).unwrap();
        }
        let report = check_andreev(&t, &angles).unwrap();
        assert_eq!(report.excluded, Some(ExcludedFamily::Tetrahedron));
        assert_eq!(report.verdict(), Verdict::OutsideScope);

        let prism = fixtures::prism();
        let report = right(&prism);
        assert_eq!(report.excluded, Some(ExcludedFamily::TriangularPrism));
        // The triangular faces form a prismatic 3-circuit at right angles.
        assert_eq!(report.verdict(), Verdict::Fail);
    }

    #[test]
    fn one_cusp_dodecahedron_is_right_angled() {
        let q = fixtures::one_cusp_dodecahedron();
        assert_eq!(right(&q).verdict(), Verdict::Pass);
        assert_eq!(check_right_angled(&q).unwrap().verdict(), Verdict::Pass);
        assert!(passes_right_angled(&q));
    }

    #[test]
    fn angle_at_three_valent_cusp_must_sum_to_one() {
        // A cusp of degree 3 with right angles has angle sum 3/2.
        let cube = fixtures::cube().with_ideal([0]).unwrap();
        let report = right(&cube);
        assert_eq!(
            report.result(Condition::VertexSum).unwrap().witnesses.len(),
            1
        );
    }

    #[test]
    fn non_simple_vertex_is_rejected() {
        let pyramid = fixtures::pyramid();
        let err = check_andreev(&pyramid, &AngleAssignment::right_angled(&pyramid)).unwrap_err();
        assert!(matches!(
            err,
            AndreevError::NotAlmostSimple { vertex: 4, .. }
        ));
    }

    #[test]
    fn missing_and_foreign_angles() {
        let cube = fixtures::cube();
        let mut partial = AngleAssignment::new();
        for e in cube.edges().into_iter().skip(1) {
            partial.insert(e, rational(1, 2)).unwrap();
        }
        assert!(matches!(
            check_andreev(&cube, &partial),
            Err(AndreevError::MissingAngle(_))
        ));
        let mut extra = AngleAssignment::right_angled(&cube);
        extra.insert(Edge(0, 7), rational(1, 2)).unwrap();
        assert_eq!(
            check_andreev(&cube, &extra),
            Err(AndreevError::UnknownEdge(Edge(0, 7)))
        );
    }

    #[test]
    fn angle_range_is_checked() {
        let mut a = AngleAssignment::new();
        assert!(a.insert(Edge(0, 1), rational(2, 3)).is_err());
        assert!(a.insert(Edge(0, 1), Rational::zero()).is_err());
        a.insert(Edge(0, 1), rational(1, 2)).unwrap();
        assert_eq!(
            a.insert(Edge(1, 0), rational(1, 3)),
            Err(AndreevError::DuplicateAngle(Edge(0, 1)))
        );
    }

    #[test]
    fn angle_file_parsing() {
        let a = parse_angles("# c\nangle: 1 0 1 3\nangle: 2 3 1/2 # t\n").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.get(Edge(0, 1)), Some(&rational(1, 3)));
        assert!(matches!(
            parse_angles("angle: 1 x 1 2"),
            Err(AndreevError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_angles("edge 0 1"),
            Err(AndreevError::Syntax { .. })
        ));
    }

    #[test]
    fn cusp_triple_condition() {
        // Contracting a cube edge leaves a 4-valent cusp whose two opposite
        // squares are both adjacent to the two remaining belt faces.
        let cube = fixtures::cube();
        let q = contract_edge(&cube, cube.edges()[0]).unwrap();
        let report = right(&q);
        let d = report.result(Condition::CuspTriple).unwrap();
        assert_eq!(d.witnesses.len(), 2);
        for w in &d.witnesses {
            assert_eq!(q.faces()[w[0]].len(), 4);
            assert!(w[1..].iter().all(|&f| q.faces()[f].len() == 4));
        }
        assert_eq!(report.verdict(), Verdict::Fail);

        // In the contracted dodecahedron the faces at the cusp have no such
        // common neighbour.
        let d = fixtures::one_cusp_dodecahedron();
        assert!(right(&d).result(Condition::CuspTriple).unwrap().holds());
    }
}
