//! Near-triangulations: plane maps whose faces are triangles except for a
//! few quadrilaterals, obtained by deleting independent edges from
//! triangulations, and their conversion to polyhedra.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::triangulations::Coded;
use crate::canon::CanonicalCode;
use crate::map::PlaneMap;
use crate::poly::Polyhedron3;

/// Third vertices of the two triangles on edge `a-b`.
fn wings(map: &PlaneMap, a: usize, b: usize) -> (usize, usize) {
    let (_, x) = map.next_in_face(a, b);
    let (_, y) = map.next_in_face(b, a);
    (x, y)
}

pub(crate) fn delete_edges(map: &PlaneMap, edges: &[(usize, usize)]) -> PlaneMap {
    let mut rot = map.rotations().to_vec();
    for &(a, b) in edges {
        rot[a].retain(|&w| w != b);
        rot[b].retain(|&w| w != a);
    }
    PlaneMap::from_rotation(rot)
}

/// Edge sets whose deletion leaves `quads` quadrilaterals: single edges, or
/// pairs of edges not lying on a common triangle.
fn deletions(map: &PlaneMap, quads: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = (0..map.vertex_count())
        .flat_map(|a| {
            map.rotation(a)
                .iter()
                .filter(move |&&b| b > a)
                .map(move |&b| (a, b))
        })
        .collect();
    match quads {
        0 => vec![Vec::new()],
        1 => edges.into_iter().map(|e| vec![e]).collect(),
        _ => {
            let mut out = Vec::new();
            for (i, &(a, b)) in edges.iter().enumerate() {
                let (x, y) = wings(map, a, b);
                let touching: BTreeSet<(usize, usize)> = [(a, x), (b, x), (a, y), (b, y)]
                    .into_iter()
                    .map(|(p, q)| (p.min(q), p.max(q)))
                    .collect();
                for &e in &edges[i + 1..] {
                    if !touching.contains(&e) {
                        out.push(vec![(a, b), e]);
                    }
                }
            }
            out
        }
    }
}

/// Each dual vertex becomes a face whose size plus cusp count must be at
/// least 5 in a right-angled polyhedron.
fn right_angle_feasible(map: &PlaneMap, quads: &[[usize; 4]]) -> bool {
    (0..map.vertex_count()).all(|v| {
        let q = quads.iter().filter(|f| f.contains(&v)).count();
        map.degree(v) + q >= 5
    })
}

pub(crate) struct NearMaps {
    pub polyhedral: Vec<(CanonicalCode, PlaneMap)>,
    pub non_polyhedral: usize,
}

/// Distinct near-triangulations with `quads` quadrilaterals derived from
/// `tris`, sorted by code. With `prune`, maps that cannot dualise to a
/// right-angled polyhedron are skipped.
pub(crate) fn near_triangulations(tris: &[Coded], quads: usize, prune: bool) -> NearMaps {
    // (code, 3-connected, source triangulation, deleted edges)
    type Found = (CanonicalCode, bool, usize, Vec<(usize, usize)>);
    let found: Vec<Found> = tris
        .par_iter()
        .enumerate()
        .flat_map_iter(|(t, (_, map))| {
            let mut local = Vec::new();
            for del in deletions(map, quads) {
                let quad_faces: Vec<[usize; 4]> = del
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = wings(map, a, b);
                        [a, x, b, y]
                    })
                    .collect();
                let near = delete_edges(map, &del);
                if prune && !right_angle_feasible(&near, &quad_faces) {
                    continue;
                }
                let polyhedral = near.is_three_connected();
                let code = CanonicalCode::from_words(&near.canonical_code(None));
                local.push((code, polyhedral, t, del));
            }
            local
        })
        .collect();
    let mut found = found;
    found.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    let non_polyhedral = found.iter().filter(|c| !c.1).count();
    let polyhedral = found
        .into_iter()
        .filter(|c| c.1)
        .map(|(code, _, t, del)| (code, delete_edges(&tris[t].1, &del)))
        .collect();
    NearMaps {
        polyhedral,
        non_polyhedral,
    }
}

/// Polyhedron dual to a plane map: one vertex per face (ideal when the face
/// is a quadrilateral) and one face per vertex.
pub(crate) fn to_primal(map: &PlaneMap) -> Polyhedron3 {
    let faces = map.faces();
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, face) in faces.iter().enumerate() {
        for k in 0..face.len() {
            dart_face.insert((face[k], face[(k + 1) % face.len()]), f);
        }
    }
    let primal_faces = (0..map.vertex_count())
        .map(|v| {
            map.rotation(v)
                .iter()
                .rev()
                .map(|&w| dart_face[&(v, w)])
                .collect()
        })
        .collect();
    let ideal = (0..faces.len()).filter(|&f| faces[f].len() == 4).collect();
    Polyhedron3::from_parts_unchecked(faces.len(), ideal, primal_faces)
}
