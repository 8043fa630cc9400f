//! Brute-force counter for 3-connected plane graphs whose faces are all
//! triangles except for a given number of quadrilaterals.
//!
//! Deliberately shares nothing with the library generator. Graphs are built
//! as adjacency matrices from non-increasing degree sequences; faces are
//! recovered as peripheral cycles (induced, non-separating), which for a
//! 3-connected graph are exactly the faces of its unique embedding, and the
//! graph is planar iff every edge lies on exactly two of them. Isomorphism
//! classes are separated by a backtracking isomorphism test against one
//! representative per class.

type Adj = Vec<Vec<bool>>;

fn degree_sequences(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = n - cur.len();
        for d in (3..=max).rev() {
            if d > left || left - d < 3 * (slots - 1) || left - d > d * (slots - 1) {
                continue;
            }
            cur.push(d);
            rec(n, left - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, n - 1, &mut Vec::new(), &mut out);
    out
}

/// Every labelled simple graph with exactly the given degrees.
fn realisations(degrees: &[usize], mut visit: impl FnMut(&Adj)) {
    let n = degrees.len();
    let mut adj = vec![vec![false; n]; n];
    let mut left = degrees.to_vec();

    fn row(
        v: usize,
        from: usize,
        n: usize,
        adj: &mut Adj,
        left: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Adj),
    ) {
        if v == n {
            visit(adj);
            return;
        }
        if left[v] == 0 {
            row(v + 1, v + 2, n, adj, left, visit);
            return;
        }
        for w in from..n {
            if left[w] == 0 {
                continue;
            }
            adj[v][w] = true;
            adj[w][v] = true;
            left[v] -= 1;
            left[w] -= 1;
            let capacity = (w + 1..n).filter(|&x| left[x] > 0).count();
            if left[v] <= capacity {
                row(v, w + 1, n, adj, left, visit);
            }
            left[v] += 1;
            left[w] += 1;
            adj[v][w] = false;
            adj[w][v] = false;
        }
    }
    row(0, 1, n, &mut adj, &mut left, &mut visit);
}

fn connected_without(adj: &Adj, removed: u32) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| removed >> v & 1 == 0) else {
        return true;
    };
    let mut seen = removed | 1 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (w, &edge) in adj[v].iter().enumerate().take(n) {
            if edge && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == (1u32 << n) - 1
}

fn three_connected(adj: &Adj) -> bool {
    let n = adj.len();
    if !connected_without(adj, 0) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !connected_without(adj, 1 << a | 1 << b) {
                return false;
            }
        }
    }
    true
}

/// Vertex sets of the induced, non-separating cycles.
fn peripheral_cycles(adj: &Adj) -> Vec<u32> {
    let n = adj.len();
    let mut out = Vec::new();
    for s in 1u32..(1 << n) {
        if s.count_ones() < 3 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let induced_degree_two = members
            .iter()
            .all(|&v| members.iter().filter(|&&w| adj[v][w]).count() == 2);
        if !induced_degree_two {
            continue;
        }
        // A 2-regular graph is a single cycle iff it is connected.
        let mut seen = 1u32 << members[0];
        let mut stack = vec![members[0]];
        while let Some(v) = stack.pop() {
            for &w in &members {
                if adj[v][w] && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        if seen != s {
            continue;
        }
        if connected_without(adj, s) {
            out.push(s);
        }
    }
    out
}

fn has_required_faces(adj: &Adj, quads: usize) -> bool {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adj[a][b])
        .collect();
    let cycles = peripheral_cycles(adj);
    if cycles.len() + n != edges.len() + 2 {
        return false;
    }
    for &(a, b) in &edges {
        let m = 1u32 << a | 1 << b;
        if cycles.iter().filter(|&&c| c & m == m).count() != 2 {
            return false;
        }
    }
    let fours = cycles.iter().filter(|c| c.count_ones() == 4).count();
    let threes = cycles.iter().filter(|c| c.count_ones() == 3).count();
    fours == quads && threes + fours == cycles.len()
}

/// Backtracking search for a degree-preserving bijection `a -> b` that
/// preserves adjacency, extending the partial map one vertex at a time.
fn isomorphic(a: &Adj, b: &Adj, degrees: &[usize]) -> bool {
    let n = a.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        k: usize,
        a: &Adj,
        b: &Adj,
        degrees: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if k == n {
            return true;
        }
        for x in 0..n {
            if used[x] || degrees[x] != degrees[k] {
                continue;
            }
            if (0..k).any(|p| a[k][p] != b[x][image[p]]) {
                continue;
            }
            image[k] = x;
            used[x] = true;
            if extend(k + 1, a, b, degrees, image, used) {
                return true;
            }
            used[x] = false;
        }
        false
    }
    extend(0, a, b, degrees, &mut image, &mut used)
}

/// Number of isomorphism classes of 3-connected plane graphs on `n`
/// vertices with `quads` quadrilateral faces and all other faces triangles.
pub fn count(n: usize, quads: usize) -> usize {
    let edges = 3 * n - 6 - quads;
    let mut total = 0;
    for degrees in degree_sequences(n, 2 * edges) {
        // Graphs with different degree sequences are never isomorphic.
        let mut reps: Vec<Adj> = Vec::new();
        realisations(&degrees, |adj| {
            if three_connected(adj)
                && has_required_faces(adj, quads)
                && !reps.iter().any(|r| isomorphic(adj, r, &degrees))
            {
                reps.push(adj.clone());
            }
        });
        total += reps.len();
    }
    total
}
