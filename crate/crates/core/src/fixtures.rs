//! Small reference polyhedra used by tests and by `verify all`.

use crate::poly::{parse_poly3, Polyhedron3};

pub const CUBE: &str = include_str!("../fixtures/cube.poly3");
pub const DODECAHEDRON: &str = include_str!("../fixtures/dodecahedron.poly3");
pub const ICOSAHEDRON: &str = include_str!("../fixtures/icosahedron.poly3");
pub const OCTAHEDRON: &str = include_str!("../fixtures/octahedron.poly3");
pub const TETRAHEDRON: &str = include_str!("../fixtures/tetrahedron.poly3");
pub const PRISM: &str = include_str!("../fixtures/prism.poly3");
pub const PYRAMID: &str = include_str!("../fixtures/pyramid.poly3");
/// Valid but degenerate: every pair of its three faces shares two edges.
pub const THETA: &str = include_str!("../fixtures/theta.poly3");

/// Name and document of every shipped fixture.
pub const ALL: [(&str, &str); 8] = [
    ("cube", CUBE),
    ("dodecahedron", DODECAHEDRON),
    ("icosahedron", ICOSAHEDRON),
    ("octahedron", OCTAHEDRON),
    ("tetrahedron", TETRAHEDRON),
    ("prism", PRISM),
    ("pyramid", PYRAMID),
    ("theta", THETA),
];

fn load(doc: &str) -> Polyhedron3 {
    parse_poly3(doc).expect("shipped fixture parses")
}

pub fn cube() -> Polyhedron3 {
    load(CUBE)
}

pub fn dodecahedron() -> Polyhedron3 {
    load(DODECAHEDRON)
}

pub fn icosahedron() -> Polyhedron3 {
    load(ICOSAHEDRON)
}

pub fn octahedron() -> Polyhedron3 {
    load(OCTAHEDRON)
}

pub fn tetrahedron() -> Polyhedron3 {
    load(TETRAHEDRON)
}

pub fn prism() -> Polyhedron3 {
    load(PRISM)
}

pub fn pyramid() -> Polyhedron3 {
    load(PYRAMID)
}

pub fn theta() -> Polyhedron3 {
    load(THETA)
}

/// The 3-connected fixtures (everything except `theta`).
pub fn all() -> Vec<Polyhedron3> {
    vec![
        cube(),
        dodecahedron(),
        icosahedron(),
        octahedron(),
        tetrahedron(),
        prism(),
        pyramid(),
    ]
}

/// The dodecahedron with one edge contracted to a cusp.
pub fn one_cusp_dodecahedron() -> Polyhedron3 {
    let d = dodecahedron();
    let e = d.edges()[0];
    crate::poly::contract_edge(&d, e).expect("dodecahedron edges are contractible")
}
