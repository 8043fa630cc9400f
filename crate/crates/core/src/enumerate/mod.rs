//! Exhaustive enumeration of almost-simple 3-polyhedra with at most two
//! cusps, up to combinatorial equivalence.
//!
//! The search runs on the dual side: a polyhedron whose finite vertices are
//! simple and whose cusps have degree 4 is dual to a plane map whose faces
//! are triangles, one quadrilateral per cusp. Such maps are triangulations
//! with one independent edge deleted per quadrilateral.

mod near;
mod triangulations;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::andreev::passes_right_angled;
use crate::canon::{canonical_code_unchecked, CanonicalCode};
use crate::fixtures;
use crate::poly::{contract_edge, Polyhedron3};

pub const DEFAULT_CAP: usize = 13;
/// Connectivity checks use one machine word per vertex.
const HARD_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("face budget {max_faces} exceeds the cap {cap}")]
    OverCap { max_faces: usize, cap: usize },
    #[error("cap {0} exceeds the supported maximum {HARD_CAP}")]
    Cap(usize),
    #[error("at most two cusps are supported, not {0}")]
    Cusps(usize),
    #[error("thread pool: {0}")]
    Workers(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    AllAlmostSimple,
    RightAngled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub max_faces: usize,
    pub num_cusps: usize,
    pub filter: Filter,
    pub cap: usize,
    /// Worker threads; `None` uses the global pool. Does not affect output.
    pub workers: Option<usize>,
}

impl EnumSpec {
    pub fn new(max_faces: usize, num_cusps: usize, filter: Filter) -> Self {
        EnumSpec {
            max_faces,
            num_cusps,
            filter,
            cap: DEFAULT_CAP,
            workers: None,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn check(&self) -> Result<(), EnumError> {
        if self.cap > HARD_CAP {
            return Err(EnumError::Cap(self.cap));
        }
        if self.max_faces > self.cap {
            return Err(EnumError::OverCap {
                max_faces: self.max_faces,
                cap: self.cap,
            });
        }
        if self.num_cusps > 2 {
            return Err(EnumError::Cusps(self.num_cusps));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedType {
    pub code: CanonicalCode,
    pub polyhedron: Polyhedron3,
    /// With two cusps: number of faces containing both.
    pub shared_faces: Option<usize>,
}

impl EnumeratedType {
    pub fn face_count(&self) -> usize {
        self.polyhedron.face_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumReport {
    pub spec: EnumSpec,
    /// Accepted types, sorted by canonical code.
    pub types: Vec<EnumeratedType>,
    /// Dual maps that are not 3-connected, by face count, after the same
    /// pruning as the accepted ones (for the right-angled filter, only the
    /// face-size condition is applied to them).
    pub non_polyhedral: BTreeMap<usize, usize>,
}

impl EnumReport {
    /// Accepted types per face count, zero counts included.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out: BTreeMap<usize, usize> = (4..=self.spec.max_faces).map(|f| (f, 0)).collect();
        for t in &self.types {
            *out.entry(t.face_count()).or_default() += 1;
        }
        out
    }

    pub fn count_at(&self, faces: usize) -> usize {
        self.types
            .iter()
            .filter(|t| t.face_count() == faces)
            .count()
    }

    pub fn codes(&self) -> Vec<&CanonicalCode> {
        self.types.iter().map(|t| &t.code).collect()
    }

    /// Two-cusp types per number of shared faces, then per face count.
    pub fn by_shared_faces(&self) -> BTreeMap<usize, BTreeMap<usize, usize>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for t in &self.types {
            if let Some(s) = t.shared_faces {
                *out.entry(s).or_default().entry(t.face_count()).or_default() += 1;
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let filter = match self.spec.filter {
            Filter::AllAlmostSimple => "all",
            Filter::RightAngled => "right-angled",
        };
        let _ = writeln!(
            out,
            "faces<={} cusps={} filter={}",
            self.spec.max_faces, self.spec.num_cusps, filter
        );
        for (f, c) in self.counts() {
            let np = self.non_polyhedral.get(&f).copied().unwrap_or(0);
            let _ = writeln!(out, "F={f} types={c} non-polyhedral={np}");
        }
        for (s, per) in self.by_shared_faces() {
            let list: Vec<String> = per.iter().map(|(f, c)| format!("F={f}:{c}")).collect();
            let _ = writeln!(out, "t={s} {}", list.join(" "));
        }
        let _ = writeln!(out, "total={}", self.types.len());
        out
    }
}

fn shared_faces(p: &Polyhedron3) -> Option<usize> {
    let cusps: Vec<usize> = p.ideal_vertices().iter().copied().collect();
    let [a, b] = cusps[..] else {
        return None;
    };
    Some(
        p.faces()
            .iter()
            .filter(|f| f.contains(&a) && f.contains(&b))
            .count(),
    )
}

fn run(spec: &EnumSpec) -> EnumReport {
    let prune = spec.filter == Filter::RightAngled;
    let levels = triangulations::triangulations(spec.max_faces);
    let mut types = Vec::new();
    let mut non_polyhedral = BTreeMap::new();
    for (n, level) in levels.iter().enumerate().skip(4) {
        let near = near::near_triangulations(level, spec.num_cusps, prune);
        non_polyhedral.insert(n, near.non_polyhedral);
        let accepted: Vec<EnumeratedType> = near
            .polyhedral
            .par_iter()
            .filter_map(|(_, map)| {
                let p = near::to_primal(map);
                if prune && !passes_right_angled(&p) {
                    return None;
                }
                Some(EnumeratedType {
                    code: canonical_code_unchecked(&p),
                    shared_faces: shared_faces(&p),
                    polyhedron: p,
                })
            })
            .collect();
        types.extend(accepted);
    }
    types.sort_by(|a, b| a.code.cmp(&b.code));
    EnumReport {
        spec: spec.clone(),
        types,
        non_polyhedral,
    }
}

/// Every polyhedron with at most `max_faces` faces, `num_cusps` cusps of
/// degree 4 and simple finite vertices, up to equivalence, optionally
/// restricted to those passing the right-angled conditions.
pub fn enumerate(spec: &EnumSpec) -> Result<EnumReport, EnumError> {
    spec.check()?;
    match spec.workers {
        None => Ok(run(spec)),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| EnumError::Workers(e.to_string()))
            .map(|pool| pool.install(|| run(spec))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma31Report {
    /// Accepted one-cusp types with fewer than 12 faces.
    pub below_twelve: usize,
    pub at_twelve: usize,
    /// Sorted face sizes of the 12-face type.
    pub face_sizes: Vec<usize>,
    /// Sizes of the faces around the cusp in cyclic order, from a smallest.
    pub cusp_face_sizes: Vec<usize>,
    /// The two quadrilaterals at the cusp share an edge.
    pub quads_adjacent: bool,
    pub matches_contracted_dodecahedron: bool,
    pub right_angled: bool,
}

impl Lemma31Report {
    pub fn ok(&self) -> bool {
        let mut expected = vec![4, 4];
        expected.extend([5; 10]);
        self.below_twelve == 0
            && self.at_twelve == 1
            && self.face_sizes == expected
            && self.cusp_face_sizes == [4, 5, 4, 5]
            && !self.quads_adjacent
            && self.matches_contracted_dodecahedron
            && self.right_angled
    }

    pub fn render(&self) -> String {
        let sizes: Vec<String> = self.cusp_face_sizes.iter().map(usize::to_string).collect();
        format!(
            "{} types @ <=11; {} type @ 12; cusp-face sizes ({})",
            self.below_twelve,
            self.at_twelve,
            sizes.join(",")
        )
    }
}

fn cusp_cycle(p: &Polyhedron3, cusp: usize) -> Vec<usize> {
    let map = p.plane_map();
    let mut dart_face = BTreeMap::new();
    for f in 0..p.face_count() {
        for d in p.face_darts(f) {
            dart_face.insert(d, f);
        }
    }
    map.rotation(cusp)
        .iter()
        .map(|&w| dart_face[&(cusp, w)])
        .collect()
}

/// One-cusp right-angled polyhedra have at least 12 faces, and the only one
/// with 12 is the dodecahedron with an edge contracted.
pub fn verify_lemma31() -> Result<Lemma31Report, EnumError> {
    let report = enumerate(&EnumSpec::new(12, 1, Filter::RightAngled))?;
    let below_twelve = report.types.iter().filter(|t| t.face_count() < 12).count();
    let twelve: Vec<&EnumeratedType> = report
        .types
        .iter()
        .filter(|t| t.face_count() == 12)
        .collect();
    let d = fixtures::dodecahedron();
    let contracted = contract_edge(&d, d.edges()[0]).expect("dodecahedron edges contract");
    let contracted_code = canonical_code_unchecked(&contracted);
    let (face_sizes, cusp_face_sizes, quads_adjacent, matches, right_angled) = match twelve.first()
    {
        Some(t) => {
            let p = &t.polyhedron;
            let mut sizes = p.face_sizes();
            sizes.sort_unstable();
            let cusp = *p.ideal_vertices().iter().next().expect("one cusp");
            let cycle = cusp_cycle(p, cusp);
            let mut cyc: Vec<usize> = cycle.iter().map(|&f| p.faces()[f].len()).collect();
            let start = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap_or(0);
            cyc.rotate_left(start);
            let quads: Vec<usize> = cycle
                .iter()
                .copied()
                .filter(|&f| p.faces()[f].len() == 4)
                .collect();
            let adjacent = quads.len() == 2 && {
                let edges = p.edge_faces();
                edges
                    .values()
                    .any(|fs| fs.contains(&quads[0]) && fs.contains(&quads[1]))
            };
            (
                sizes,
                cyc,
                adjacent,
                t.code == contracted_code,
                passes_right_angled(p),
            )
        }
        None => (Vec::new(), Vec::new(), false, false, false),
    };
    Ok(Lemma31Report {
        below_twelve,
        at_twelve: twelve.len(),
        face_sizes,
        cusp_face_sizes,
        quads_adjacent,
        matches_contracted_dodecahedron: matches,
        right_angled,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaClass {
    /// Faces containing both cusps.
    pub shared: usize,
    pub floor: usize,
    /// Budget up to which this class is checked.
    pub budget: usize,
    /// Smallest face count among accepted types of this class, if any.
    pub smallest: Option<usize>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaReport {
    pub budget: usize,
    pub classes: Vec<MinimaClass>,
    pub counts: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl MinimaReport {
    pub fn ok(&self) -> bool {
        self.classes.iter().all(|c| c.violations == 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let smallest = c.smallest.map_or("none".to_string(), |s| s.to_string());
            let _ = writeln!(
                out,
                "t={} floor={} budget={} smallest={} violations={}",
                c.shared, c.floor, c.budget, smallest, c.violations
            );
        }
        out
    }
}

/// Two-cusp right-angled polyhedra: a face through both cusps raises the
/// minimum number of faces from 8 (none) to 9 (one) and 10 (two, i.e. the
/// cusps are joined by an edge).
pub fn two_cusp_minima(budget: usize) -> Result<MinimaReport, EnumError> {
    let report = enumerate(&EnumSpec::new(budget, 2, Filter::RightAngled))?;
    let counts = report.by_shared_faces();
    let classes = [(0, 8), (1, 9), (2, 10)]
        .into_iter()
        .map(|(shared, floor)| {
            let sizes: Vec<usize> = report
                .types
                .iter()
                .filter(|t| t.shared_faces == Some(shared))
                .map(EnumeratedType::face_count)
                .collect();
            MinimaClass {
                shared,
                floor,
                budget,
                smallest: sizes.iter().copied().min(),
                violations: sizes.iter().filter(|&&f| f < floor).count(),
            }
        })
        .collect();
    Ok(MinimaReport {
        budget,
        classes,
        counts,
    })
}
