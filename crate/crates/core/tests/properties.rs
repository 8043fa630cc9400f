use std::sync::OnceLock;

use orthocusp_core::andreev::{
    check_andreev, check_right_angled, prismatic_circuits, AngleAssignment, Condition, Verdict,
};
use orthocusp_core::enumerate::{enumerate, EnumSpec, EnumeratedType, Filter};
use orthocusp_core::nikulin::{face_average, face_total};
use orthocusp_core::poly::{contract_edge, dual};
use orthocusp_core::{canonical_code, fixtures, parse_poly3, to_face_lattice, Polyhedron3};
use proptest::prelude::*;

fn corpus() -> &'static [EnumeratedType] {
    static CORPUS: OnceLock<Vec<EnumeratedType>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (0..=2)
            .flat_map(|c| {
                enumerate(&EnumSpec::new(9, c, Filter::AllAlmostSimple))
                    .unwrap()
                    .types
            })
            .collect()
    })
}

fn relabel(
    p: &Polyhedron3,
    perm: &[usize],
    face_shift: usize,
    rotate: usize,
    reflect: bool,
) -> Polyhedron3 {
    let mut faces: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            let r = rotate % g.len();
            g.rotate_left(r);
            if reflect {
                g.reverse();
            }
            g
        })
        .collect();
    let len = faces.len();
    faces.rotate_left(face_shift % len);
    let ideal = p.ideal_vertices().iter().map(|&v| perm[v]);
    Polyhedron3::new(p.vertex_count(), ideal, faces).unwrap()
}

fn fixture_and_perm() -> impl Strategy<Value = (Polyhedron3, Vec<usize>)> {
    let fixtures = vec![
        fixtures::cube(),
        fixtures::dodecahedron(),
        fixtures::icosahedron(),
        fixtures::prism(),
        fixtures::one_cusp_dodecahedron(),
    ];
    proptest::sample::select(fixtures).prop_flat_map(|p| {
        let ids: Vec<usize> = (0..p.vertex_count()).collect();
        (Just(p), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn code_ignores_labels_and_reflection(
        (p, perm) in fixture_and_perm(),
        face_shift in 0usize..20,
        rotate in 0usize..6,
        reflect: bool,
    ) {
        let q = relabel(&p, &perm, face_shift, rotate, reflect);
        prop_assert_eq!(canonical_code(&q).unwrap(), canonical_code(&p).unwrap());
    }

    #[test]
    fn double_dual_preserves_code(index in 0usize..10_000) {
        let t = &corpus()[index % corpus().len()];
        let p = &t.polyhedron;
        let dd = dual(&dual(p).unwrap()).unwrap()
            .with_ideal(p.ideal_vertices().iter().copied())
            .unwrap();
        prop_assert_eq!(canonical_code(&dd).unwrap(), t.code.clone());
    }

    #[test]
    fn poly3_round_trip(index in 0usize..10_000) {
        let p = &corpus()[index % corpus().len()].polyhedron;
        prop_assert_eq!(&parse_poly3(&p.to_poly3()).unwrap(), p);
    }

    #[test]
    fn face_totals_are_integers(index in 0usize..10_000, k in 1usize..3) {
        let p = &corpus()[index % corpus().len()].polyhedron;
        let lattice = to_face_lattice(p).unwrap();
        let total = face_total(&lattice, k, k - 1).unwrap();
        // Cusps are not counted as vertices, and each cusp ends four edges.
        let sizes: usize = if k == 2 {
            p.face_sizes().iter().sum()
        } else {
            2 * p.edge_count() - 4 * p.cusp_count()
        };
        prop_assert_eq!(total, sizes.into());
    }
}

#[test]
fn right_angled_check_matches_general_check() {
    for t in corpus() {
        let p = &t.polyhedron;
        let special = check_right_angled(p).unwrap();
        let general = check_andreev(p, &AngleAssignment::right_angled(p)).unwrap();
        let extras_hold = [Condition::FaceSize, Condition::CuspDegree]
            .iter()
            .all(|c| special.result(*c).unwrap().holds());
        let general_pass = general.verdict() == Verdict::Pass;
        assert_eq!(
            special.verdict() == Verdict::Pass,
            general_pass && extras_hold
        );
        for c in [
            Condition::Circuit3,
            Condition::CuspTriple,
            Condition::Circuit4,
        ] {
            assert_eq!(special.result(c), general.result(c));
        }
    }
}

#[test]
fn contracting_dodecahedron_edges_keeps_validity() {
    let d = fixtures::dodecahedron();
    for e in d.edges() {
        let q = contract_edge(&d, e).unwrap();
        assert!(q.ensure_valid().is_ok());
        assert_eq!(check_right_angled(&q).unwrap().verdict(), Verdict::Pass);
    }
}

#[test]
fn compact_right_angled_faces_have_five_sides() {
    let r = enumerate(&EnumSpec::new(12, 0, Filter::RightAngled)).unwrap();
    for t in &r.types {
        assert!(t.polyhedron.face_sizes().iter().all(|&s| s >= 5));
        let avg = face_average(&to_face_lattice(&t.polyhedron).unwrap(), 2, 1).unwrap();
        assert!(avg >= orthocusp_core::arith::int(5));
    }
}

#[test]
fn accepted_types_have_no_prismatic_circuits() {
    for cusps in 0..=2 {
        let r = enumerate(&EnumSpec::new(12, cusps, Filter::RightAngled)).unwrap();
        for t in &r.types {
            assert!(prismatic_circuits(&t.polyhedron, 3).unwrap().is_empty());
            assert!(prismatic_circuits(&t.polyhedron, 4).unwrap().is_empty());
        }
    }
}

#[test]
fn dual_of_one_cusp_type_has_one_quadrilateral() {
    let d = dual(&fixtures::one_cusp_dodecahedron()).unwrap();
    let mut sizes = d.face_sizes();
    sizes.sort_unstable();
    assert_eq!(sizes[..], [[3; 18].as_slice(), &[4]].concat());
}
