//! Graded face posets of arbitrary dimension.
//!
//! Faces are numbered in insertion order. Only covering relations (a k-face
//! below a (k+1)-face) are stored; counts of lower faces use the transitive
//! closure. Cusps are 0-faces carrying a flag: they are not counted in `a_0`,
//! and `c` counts them instead.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::poly::{PolyError, Polyhedron3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("face dimension {dim} outside 0..{n}")]
    Dimension { dim: usize, n: usize },
    #[error("only 0-faces can be cusps")]
    CuspDimension,
    #[error("face {0} does not exist")]
    UnknownFace(usize),
    #[error(
        "face {lower} (dim {lower_dim}) cannot lie directly below face {upper} (dim {upper_dim})"
    )]
    Grading {
        lower: usize,
        lower_dim: usize,
        upper: usize,
        upper_dim: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeFace {
    pub dim: usize,
    pub cusp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    n: usize,
    faces: Vec<LatticeFace>,
    below: Vec<Vec<usize>>,
}

impl FaceLattice {
    /// Empty lattice of a polyhedron of dimension `n` (faces of dims 0..n-1).
    pub fn new(n: usize) -> Self {
        FaceLattice {
            n,
            faces: Vec::new(),
            below: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn add_face(&mut self, dim: usize, cusp: bool) -> Result<usize, LatticeError> {
        if dim >= self.n {
            return Err(LatticeError::Dimension { dim, n: self.n });
        }
        if cusp && dim != 0 {
            return Err(LatticeError::CuspDimension);
        }
        self.faces.push(LatticeFace { dim, cusp });
        self.below.push(Vec::new());
        Ok(self.faces.len() - 1)
    }

    /// Declares `lower` a facet of `upper`; dimensions must differ by one.
    pub fn add_incidence(&mut self, lower: usize, upper: usize) -> Result<(), LatticeError> {
        let lo = *self
            .faces
            .get(lower)
            .ok_or(LatticeError::UnknownFace(lower))?;
        let up = *self
            .faces
            .get(upper)
            .ok_or(LatticeError::UnknownFace(upper))?;
        if lo.dim + 1 != up.dim {
            return Err(LatticeError::Grading {
                lower,
                lower_dim: lo.dim,
                upper,
                upper_dim: up.dim,
            });
        }
        if !self.below[upper].contains(&lower) {
            self.below[upper].push(lower);
        }
        Ok(())
    }

    pub fn face(&self, id: usize) -> LatticeFace {
        self.faces[id]
    }

    pub fn face_total(&self) -> usize {
        self.faces.len()
    }

    /// Ids of the non-cusp faces of dimension `k`.
    pub fn faces_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].dim == k && !self.faces[i].cusp)
            .collect()
    }

    /// `a_k`: number of k-dimensional faces (cusps excluded).
    pub fn count(&self, k: usize) -> usize {
        self.faces.iter().filter(|f| f.dim == k && !f.cusp).count()
    }

    /// `c`: number of cusps.
    pub fn cusp_count(&self) -> usize {
        self.faces.iter().filter(|f| f.cusp).count()
    }

    /// `(a_0, ..., a_{n-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.n).map(|k| self.count(k)).collect()
    }

    /// Every dimension 0..n-1 has at least one face.
    pub fn is_graded_nonempty(&self) -> bool {
        self.f_vector().iter().all(|&a| a >= 1)
    }

    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    fn closure_below(&self, id: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for &y in &self.below[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// `a_l(F)`: number of non-cusp l-faces below face `id`.
    pub fn count_below(&self, id: usize, l: usize) -> usize {
        self.closure_below(id)
            .into_iter()
            .filter(|&y| self.faces[y].dim == l && !self.faces[y].cusp)
            .count()
    }

    /// Number of cusps below face `id`.
    pub fn cusps_below(&self, id: usize) -> usize {
        self.closure_below(id)
            .into_iter()
            .filter(|&y| self.faces[y].cusp)
            .count()
    }
}

/// Face lattice of a 3-polyhedron: vertices (cusps flagged), edges, 2-faces.
pub fn to_face_lattice(p: &Polyhedron3) -> Result<FaceLattice, PolyError> {
    p.ensure_valid()?;
    let mut lattice = FaceLattice::new(3);
    let add =
        |lattice: &mut FaceLattice, dim, cusp| lattice.add_face(dim, cusp).expect("dims in range");
    let vertex_ids: Vec<usize> = (0..p.vertex_count())
        .map(|v| add(&mut lattice, 0, p.is_ideal(v)))
        .collect();
    let edge_faces = p.edge_faces();
    let mut edge_ids = std::collections::BTreeMap::new();
    for edge in edge_faces.keys() {
        let id = add(&mut lattice, 1, false);
        lattice
            .add_incidence(vertex_ids[edge.0], id)
            .expect("graded");
        lattice
            .add_incidence(vertex_ids[edge.1], id)
            .expect("graded");
        edge_ids.insert(*edge, id);
    }
    for f in 0..p.face_count() {
        let id = add(&mut lattice, 2, false);
        for (a, b) in p.face_darts(f) {
            let e = edge_ids[&crate::poly::Edge::new(a, b)];
            lattice.add_incidence(e, id).expect("graded");
        }
    }
    Ok(lattice)
}

/// Lattice of a single polygon with `edges` sides, `cusps` of whose corners
/// are ideal.
pub fn polygon_lattice(edges: usize, cusps: usize) -> FaceLattice {
    let mut lattice = FaceLattice::new(2);
    let corners: Vec<usize> = (0..edges)
        .map(|i| lattice.add_face(0, i < cusps).expect("dim 0"))
        .collect();
    for i in 0..edges {
        let e = lattice.add_face(1, false).expect("dim 1");
        lattice.add_incidence(corners[i], e).expect("graded");
        lattice
            .add_incidence(corners[(i + 1) % edges], e)
            .expect("graded");
    }
    lattice
}
