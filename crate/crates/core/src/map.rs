//! Rotation systems of connected plane maps and their canonical codes.
//!
//! `rot[u]` lists the neighbours of `u` in cyclic order. The convention shared
//! with the face-cycle representation is: if a face traverses `t -> u -> w`,
//! then `t` directly follows `w` in `rot[u]`. Consequently the face to the
//! left of dart `a -> b` continues with `b -> rot[b][pos(a) - 1]`.

use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    rot: Vec<Vec<usize>>,
    link_cycles: Vec<usize>,
}

/// A starting point for a canonical traversal: dart `u -> rot[u][index]`,
/// walked clockwise or mirrored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Start {
    pub vertex: usize,
    pub index: usize,
    pub mirrored: bool,
}

impl PlaneMap {
    /// Builds the rotation system from consistently oriented face cycles.
    /// Fails if some dart has no reverse. Vertices whose faces form more than
    /// one cycle keep only the cycle through their smallest neighbour; the
    /// number of cycles is reported by [`PlaneMap::link_cycles`].
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<PlaneMap, String> {
        let mut pred_in_face: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (t, u, w) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
                if pred_in_face.insert((u, w), t).is_some() {
                    return Err(format!("dart {u}->{w} appears twice"));
                }
                out[u].push(w);
            }
        }
        let mut rot = vec![Vec::new(); n];
        let mut link_cycles = vec![0; n];
        for u in 0..n {
            let mut targets = out[u].clone();
            targets.sort_unstable();
            let mut used = vec![false; targets.len()];
            let slot = |w: usize| targets.binary_search(&w).ok();
            for s in 0..targets.len() {
                if used[s] {
                    continue;
                }
                link_cycles[u] += 1;
                let mut cycle = Vec::new();
                let mut w = targets[s];
                loop {
                    let j = slot(w).ok_or_else(|| format!("dart {u}->{w} has no face"))?;
                    if used[j] {
                        break;
                    }
                    used[j] = true;
                    cycle.push(w);
                    w = *pred_in_face
                        .get(&(u, w))
                        .ok_or_else(|| format!("dart {u}->{w} has no face"))?;
                    if !pred_in_face.contains_key(&(w, u)) {
                        return Err(format!("dart {w}->{u} has no face"));
                    }
                }
                if rot[u].is_empty() {
                    rot[u] = cycle;
                }
            }
        }
        Ok(PlaneMap { rot, link_cycles })
    }

    pub fn from_rotation(rot: Vec<Vec<usize>>) -> PlaneMap {
        let link_cycles = rot.iter().map(|r| usize::from(!r.is_empty())).collect();
        PlaneMap { rot, link_cycles }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rot[u].len()
    }

    pub fn rotation(&self, u: usize) -> &[usize] {
        &self.rot[u]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn link_cycles(&self, u: usize) -> usize {
        self.link_cycles[u]
    }

    pub fn index_of(&self, u: usize, w: usize) -> usize {
        self.rot[u]
            .iter()
            .position(|&x| x == w)
            .unwrap_or_else(|| panic!("{w} is not a neighbour of {u}"))
    }

    pub fn adjacent(&self, u: usize, w: usize) -> bool {
        self.rot[u].contains(&w)
    }

    /// Dart following `a -> b` along the face on its left.
    pub fn next_in_face(&self, a: usize, b: usize) -> (usize, usize) {
        let d = self.rot[b].len();
        let i = self.index_of(b, a);
        (b, self.rot[b][(i + d - 1) % d])
    }

    /// All faces as vertex cycles; the face containing dart `a -> b` lists
    /// `a` then `b`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        let mut faces = Vec::new();
        for a in 0..self.rot.len() {
            for &b in &self.rot[a] {
                if seen.contains_key(&(a, b)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut x, mut y) = (a, b);
                loop {
                    seen.insert((x, y), ());
                    face.push(x);
                    let (nx, ny) = self.next_in_face(x, y);
                    x = nx;
                    y = ny;
                    if (x, y) == (a, b) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// All darts as starting points in both orientations.
    pub fn all_starts(&self) -> Vec<Start> {
        let mut starts = Vec::with_capacity(4 * self.edge_count());
        for vertex in 0..self.rot.len() {
            for index in 0..self.rot[vertex].len() {
                for mirrored in [false, true] {
                    starts.push(Start {
                        vertex,
                        index,
                        mirrored,
                    });
                }
            }
        }
        starts
    }

    /// Breadth-first code of the map seen from `start`. Returns `None` as
    /// soon as the code is known to exceed `bound`.
    ///
    /// Layout: vertex count, then for each vertex in discovery order its mark,
    /// the labels of its neighbours in rotation order, and a terminating 0.
    /// Labels start at 1. Two maps have equal codes from some pair of starts
    /// iff there is an isomorphism (possibly orientation reversing) carrying
    /// one start to the other and preserving marks.
    pub fn code_from(
        &self,
        start: Start,
        marks: Option<&[bool]>,
        bound: Option<&[u32]>,
    ) -> Option<Vec<u32>> {
        let n = self.rot.len();
        let mut label = vec![0u32; n];
        let mut first = vec![0usize; n];
        let mut queue = Vec::with_capacity(n);
        let mut code: Vec<u32> = Vec::with_capacity(2 * n + 2 * self.edge_count() + 1);
        let mut state = if bound.is_some() {
            Ordering::Equal
        } else {
            Ordering::Less
        };

        macro_rules! emit {
            ($x:expr) => {{
                let x: u32 = $x;
                if state == Ordering::Equal {
                    match bound.and_then(|b| b.get(code.len())) {
                        Some(&y) if x > y => return None,
                        Some(&y) if x < y => state = Ordering::Less,
                        Some(_) => {}
                        None => return None,
                    }
                }
                code.push(x);
            }};
        }

        emit!(n as u32);
        label[start.vertex] = 1;
        first[start.vertex] = start.index;
        queue.push(start.vertex);
        let mut next_label = 2u32;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            emit!(u32::from(marks.is_some_and(|m| m[u])));
            let d = self.rot[u].len();
            for k in 0..d {
                let i = if start.mirrored {
                    (first[u] + d - k) % d
                } else {
                    (first[u] + k) % d
                };
                let w = self.rot[u][i];
                if label[w] == 0 {
                    label[w] = next_label;
                    next_label += 1;
                    first[w] = self.index_of(w, u);
                    queue.push(w);
                }
                emit!(label[w]);
            }
            emit!(0);
        }
        if queue.len() != n {
            // Disconnected maps have no code; treat as worse than anything.
            return None;
        }
        Some(code)
    }

    /// Smallest code over `starts`, together with every start attaining it.
    pub fn min_code_over(
        &self,
        starts: &[Start],
        marks: Option<&[bool]>,
    ) -> Option<(Vec<u32>, Vec<Start>)> {
        let mut best: Option<Vec<u32>> = None;
        let mut winners = Vec::new();
        for &s in starts {
            if let Some(code) = self.code_from(s, marks, best.as_deref()) {
                match best.as_ref().map(|b| code.cmp(b)) {
                    Some(Ordering::Equal) => winners.push(s),
                    Some(Ordering::Greater) => {}
                    _ => {
                        best = Some(code);
                        winners.clear();
                        winners.push(s);
                    }
                }
            }
        }
        best.map(|b| (b, winners))
    }

    /// Canonical code: minimum over all starts whose dart carries the
    /// smallest local invariant.
    pub fn canonical_code(&self, marks: Option<&[bool]>) -> Vec<u32> {
        let mark = |u: usize| marks.is_some_and(|m| m[u]);
        let key = |s: &Start| {
            let w = self.rot[s.vertex][s.index];
            (
                !mark(s.vertex),
                self.degree(s.vertex),
                !mark(w),
                self.degree(w),
            )
        };
        let starts = self.all_starts();
        let Some(min_key) = starts.iter().map(key).min() else {
            return vec![self.rot.len() as u32];
        };
        let starts: Vec<Start> = starts.into_iter().filter(|s| key(s) == min_key).collect();
        self.min_code_over(&starts, marks)
            .map(|(code, _)| code)
            .unwrap_or_default()
    }

    /// Every pair of vertices can be removed without disconnecting the graph.
    pub fn is_three_connected(&self) -> bool {
        let n = self.rot.len();
        if n < 4 {
            return false;
        }
        if n > 64 {
            return self.is_three_connected_slow();
        }
        let adj: Vec<u64> = self
            .rot
            .iter()
            .map(|r| r.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for a in 0..n {
            for b in a + 1..n {
                let alive = all & !(1 << a) & !(1 << b);
                let seed = alive.trailing_zeros() as usize;
                let mut reached = 1u64 << seed;
                let mut frontier = reached;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let fresh = adj[v] & alive & !reached;
                    reached |= fresh;
                    frontier |= fresh;
                }
                if reached != alive {
                    return false;
                }
            }
        }
        true
    }

    fn is_three_connected_slow(&self) -> bool {
        let n = self.rot.len();
        for a in 0..n {
            for b in a + 1..n {
                let seed = (0..n).find(|&v| v != a && v != b).unwrap();
                let mut seen = vec![false; n];
                seen[a] = true;
                seen[b] = true;
                seen[seed] = true;
                let mut stack = vec![seed];
                let mut count = 1;
                while let Some(v) = stack.pop() {
                    for &w in &self.rot[v] {
                        if !seen[w] {
                            seen[w] = true;
                            count += 1;
                            stack.push(w);
                        }
                    }
                }
                if count != n - 2 {
                    return false;
                }
            }
        }
        true
    }
}
