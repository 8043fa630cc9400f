//! Isomorph-free generation of plane triangulations by vertex splitting.
//!
//! Every triangulation on n+1 >= 5 vertices arises from one on n vertices by
//! splitting a vertex, the inverse of contracting an edge that lies on no
//! separating triangle. A child is kept only if its new edge is in the orbit
//! of its canonical contractible edge, so each isomorphism class has a
//! unique parent class; children of one parent are deduplicated by code.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::map::{PlaneMap, Start};

/// A triangulation with its canonical code.
pub(crate) type Coded = (Vec<u32>, PlaneMap);

fn k4() -> PlaneMap {
    // Faces 012, 031, 023, 132 oriented consistently.
    PlaneMap::from_faces(
        4,
        &[vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
    )
    .expect("K4 faces are consistent")
}

/// Splits `v`: a new vertex takes over the neighbours `rot[v][i..=j]`, and
/// both `v` and the new vertex keep the arc ends.
pub(crate) fn split(map: &PlaneMap, v: usize, i: usize, j: usize) -> PlaneMap {
    let n = map.vertex_count();
    let nv = n;
    let w = map.rotation(v);
    let d = w.len();
    let len = (j + d - i) % d;
    let mut rot: Vec<Vec<usize>> = map.rotations().to_vec();

    let mut new_rot: Vec<usize> = (0..=len).map(|k| w[(i + k) % d]).collect();
    new_rot.push(v);
    let mut v_rot: Vec<usize> = (0..=d - len).map(|k| w[(j + k) % d]).collect();
    v_rot.push(nv);

    for k in 1..len {
        let x = w[(i + k) % d];
        for y in rot[x].iter_mut() {
            if *y == v {
                *y = nv;
            }
        }
    }
    let insert_towards = |r: &mut Vec<usize>, toward: usize| {
        let dv = r.len();
        let p = r.iter().position(|&y| y == v).expect("v is a neighbour");
        if r[(p + 1) % dv] == toward {
            r.insert(p + 1, nv);
        } else {
            r.insert(p, nv);
        }
    };
    let (wi, wj) = (w[i], w[j]);
    insert_towards(&mut rot[wi], w[(i + 1) % d]);
    insert_towards(&mut rot[wj], w[(j + d - 1) % d]);
    rot[v] = v_rot;
    rot.push(new_rot);
    PlaneMap::from_rotation(rot)
}

fn masks(map: &PlaneMap) -> Vec<u64> {
    map.rotations()
        .iter()
        .map(|r| r.iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Canonical code of `child` if the edge `a-b` is its canonical
/// contractible edge (up to automorphism), else `None`.
fn accept(child: &PlaneMap, a: usize, b: usize) -> Option<Vec<u32>> {
    let mask = masks(child);
    let deg = |x: usize| child.degree(x);
    let inv = |x: usize, y: usize| {
        let common = mask[x] & mask[y];
        if common.count_ones() != 2 {
            return None;
        }
        let mut s = 0;
        let mut c = common;
        while c != 0 {
            s += deg(c.trailing_zeros() as usize);
            c &= c - 1;
        }
        Some((deg(x).min(deg(y)), deg(x).max(deg(y)), s))
    };
    let target = inv(a, b)?;
    let mut best = Vec::new();
    for x in 0..child.vertex_count() {
        for &y in child.rotation(x) {
            if y <= x {
                continue;
            }
            match inv(x, y) {
                Some(k) if k < target => return None,
                Some(k) if k == target => best.push((x, y)),
                _ => {}
            }
        }
    }
    let mut starts = Vec::with_capacity(4 * best.len());
    for (x, y) in best {
        for (p, q) in [(x, y), (y, x)] {
            let index = child.index_of(p, q);
            for mirrored in [false, true] {
                starts.push(Start {
                    vertex: p,
                    index,
                    mirrored,
                });
            }
        }
    }
    let (code, winners) = child.min_code_over(&starts, None)?;
    winners
        .iter()
        .any(|s| {
            let w = child.rotation(s.vertex)[s.index];
            (s.vertex, w) == (a, b) || (s.vertex, w) == (b, a)
        })
        .then_some(code)
}

fn children(parent: &PlaneMap) -> Vec<Coded> {
    let n = parent.vertex_count();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in 0..n {
        let d = parent.degree(v);
        for i in 0..d {
            for j in i + 1..d {
                let child = split(parent, v, i, j);
                if let Some(code) = accept(&child, v, n) {
                    if seen.insert(code.clone()) {
                        out.push((code, child));
                    }
                }
            }
        }
    }
    out
}

fn grow(node: Coded, max_n: usize, out: &mut [Vec<Coded>]) {
    let n = node.1.vertex_count();
    if n < max_n {
        for child in children(&node.1) {
            grow(child, max_n, out);
        }
    }
    out[n].push(node);
}

/// All triangulations with 4..=max_n vertices, indexed by vertex count and
/// sorted by canonical code. Subtrees below a fixed depth run in parallel.
pub(crate) fn triangulations(max_n: usize) -> Vec<Vec<Coded>> {
    let mut levels: Vec<Vec<Coded>> = vec![Vec::new(); max_n.max(3) + 1];
    if max_n < 4 {
        return levels;
    }
    let root = k4();
    let root_code = root.canonical_code(None);
    let split_at = max_n.min(8);
    let mut frontier = vec![(root_code, root)];
    for level in &mut levels[4..split_at] {
        let next: Vec<Coded> = frontier.iter().flat_map(|(_, m)| children(m)).collect();
        *level = frontier;
        frontier = next;
    }
    let subtrees: Vec<Vec<Vec<Coded>>> = frontier
        .into_par_iter()
        .map(|node| {
            let mut local = vec![Vec::new(); max_n + 1];
            grow(node, max_n, &mut local);
            local
        })
        .collect();
    for local in subtrees {
        for (n, mut items) in local.into_iter().enumerate() {
            levels[n].append(&mut items);
        }
    }
    for level in &mut levels {
        level.sort_by(|a, b| a.0.cmp(&b.0));
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_triangulation(m: &PlaneMap) -> bool {
        let n = m.vertex_count();
        let faces = m.faces();
        faces.iter().all(|f| f.len() == 3)
            && faces.len() == 2 * n - 4
            && m.edge_count() == 3 * n - 6
            && m.is_three_connected()
    }

    #[test]
    fn every_split_is_a_triangulation() {
        let mut maps = vec![k4()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for m in &maps {
                for v in 0..m.vertex_count() {
                    let d = m.degree(v);
                    for i in 0..d {
                        for j in i + 1..d {
                            let c = split(m, v, i, j);
                            assert!(is_triangulation(&c));
                            next.push(c);
                        }
                    }
                }
            }
            next.truncate(40);
            maps = next;
        }
    }

    #[test]
    fn counts_match_known_sequence() {
        // Triangulations of the sphere with 4..=11 vertices.
        let levels = triangulations(11);
        let counts: Vec<usize> = (4..=11).map(|n| levels[n].len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 50, 233, 1249]);
        for level in &levels {
            for w in level.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            let generic: HashSet<Vec<u32>> =
                level.iter().map(|(_, m)| m.canonical_code(None)).collect();
            assert_eq!(generic.len(), level.len());
            assert!(level.iter().all(|(_, m)| is_triangulation(m)));
        }
    }
}
