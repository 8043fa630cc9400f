//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always appear in `cargo test` output.
//!
//! Criterion 2 is red by construction: its "equality only at n=5" clause
//! does not hold (the bound is also exactly 5 at n=6). It is listed in
//! `KNOWN_RED` so that the target still fails on any other red line, and
//! also fails if criterion 2 ever turns green.

#[path = "../../core/tests/support/naive.rs"]
mod naive;

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orthocusp_core::andreev::{check_right_angled, Verdict};
use orthocusp_core::arith::{binomial, int, Rational};
use orthocusp_core::bounds::{lemma61, main_bounds, n7_certificate, n7_polynomial, n7_preform};
use orthocusp_core::cusplink::{
    builtin_rows, count_cusp_faces, enumerate_cusp_faces, faces_through_edge, verify_table,
    CuspFace, SecondCuspCase,
};
use orthocusp_core::enumerate::{enumerate, EnumSpec, Filter};
use orthocusp_core::nikulin::nikulin_rhs;
use orthocusp_core::poly::contract_edge;
use orthocusp_core::{canonical_code, fixtures, Polyhedron3};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const KNOWN_RED: [usize; 1] = [2];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn cli(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_orthocusp"))
        .args(args)
        .env_remove("ORTHOCUSP_CACHE")
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

fn nikulin_pins() -> Outcome {
    let t = Instant::now();
    let six = nikulin_rhs(6, 3, 2).unwrap();
    let seven = nikulin_rhs(7, 3, 2).unwrap();
    let elapsed = t.elapsed();
    let (c6, out6) = cli(&["nikulin", "--n", "6", "--k", "3", "--l", "2"]);
    let (c7, out7) = cli(&["nikulin", "--n", "7", "--k", "3", "--l", "2"]);
    let pass = six == int(12)
        && seven == int(9)
        && (c6, out6.as_str()) == (0, "12\n")
        && (c7, out7.as_str()) == (0, "9\n")
        && elapsed < Duration::from_millis(1);
    outcome(
        pass,
        format!(
            "cli prints {:?} and {:?}; library {}",
            out6.trim(),
            out7.trim(),
            ms(elapsed)
        ),
    )
}

fn compact_exclusion() -> Outcome {
    let t = Instant::now();
    let five = int(5);
    let mut above = Vec::new();
    let mut equal = Vec::new();
    for n in 5..=100 {
        let r = nikulin_rhs(n, 2, 1).unwrap();
        if r > five {
            above.push(n);
        } else if r == five {
            equal.push(n);
        }
    }
    let elapsed = t.elapsed();
    let bounded = above.is_empty();
    let only_five = equal == [5];
    outcome(
        bounded && only_five && elapsed < Duration::from_secs(1),
        format!(
            "<= 5 for all 5..=100: {}; equality at n in {:?} (criterion expects only [5]); {}",
            bounded,
            equal,
            ms(elapsed)
        ),
    )
}

fn cusp_link_counts() -> Outcome {
    let t = Instant::now();
    let formula = |n: u64, k: u64| u64::try_from(binomial(n - 1, n - k)).unwrap() << (n - k);
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, k, want) in [(6, 3, 80), (7, 3, 240), (6, 5, 10)] {
        let lib = count_cusp_faces(n, k).unwrap();
        let listed = enumerate_cusp_faces(n, k).unwrap().len() as u64;
        pass &= lib == want && listed == want && formula(n as u64, k as u64) == want;
        parts.push(format!("({n},{k})={lib}/{listed}"));
    }
    // An arbitrary edge, rather than the one the library fixes.
    let edges = enumerate_cusp_faces(7, 1).unwrap();
    let edge = &edges[edges.len() / 2];
    let through = enumerate_cusp_faces(7, 3)
        .unwrap()
        .iter()
        .filter(|f| f.is_within(edge.ids()))
        .count() as u64;
    let lib = faces_through_edge(7).unwrap();
    pass &= lib == 15 && through == 15;
    parts.push(format!("edge(7)={lib}/{through}"));
    let elapsed = t.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    outcome(pass, format!("{}; {}", parts.join(" "), ms(elapsed)))
}

/// Sizes of the faces around `cusp`, in cyclic order, starting at a smallest.
fn cusp_cycle_sizes(p: &Polyhedron3, cusp: usize) -> Vec<usize> {
    let around: Vec<usize> = (0..p.face_count())
        .filter(|&f| p.faces()[f].contains(&cusp))
        .collect();
    let shares_cusp_edge = |f: usize, g: usize| {
        let edges = |h: usize| -> BTreeSet<(usize, usize)> {
            let face = &p.faces()[h];
            (0..face.len())
                .map(|i| (face[i], face[(i + 1) % face.len()]))
                .filter(|&(a, b)| a == cusp || b == cusp)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect()
        };
        !edges(f).is_disjoint(&edges(g))
    };
    let mut order = vec![around[0]];
    while order.len() < around.len() {
        let last = *order.last().unwrap();
        match around
            .iter()
            .find(|&&g| !order.contains(&g) && shares_cusp_edge(last, g))
        {
            Some(&g) => order.push(g),
            None => break,
        }
    }
    let mut sizes: Vec<usize> = order.iter().map(|&f| p.faces()[f].len()).collect();
    let start = (0..sizes.len()).min_by_key(|&i| sizes[i]).unwrap_or(0);
    sizes.rotate_left(start);
    sizes
}

fn lemma31_exhaustion() -> Outcome {
    let t = Instant::now();
    let eleven = enumerate(&EnumSpec::new(11, 1, Filter::RightAngled)).unwrap();
    let twelve = enumerate(&EnumSpec::new(12, 1, Filter::RightAngled)).unwrap();
    let elapsed = t.elapsed();
    let at12: Vec<_> = twelve
        .types
        .iter()
        .filter(|t| t.face_count() == 12)
        .collect();
    let below = twelve.types.len() - at12.len();
    let mut detail = format!(
        "{} types @ <=11, {} below 12, {} @ 12",
        eleven.types.len(),
        below,
        at12.len()
    );
    let mut pass = eleven.types.is_empty() && below == 0 && at12.len() == 1;
    if let [t] = at12[..] {
        let p = &t.polyhedron;
        let mut sizes = p.face_sizes();
        sizes.sort_unstable();
        let mut want = vec![4, 4];
        want.extend([5; 10]);
        let cusp = *p.ideal_vertices().iter().next().unwrap();
        let cycle = cusp_cycle_sizes(p, cusp);
        let d = fixtures::dodecahedron();
        let contracted: BTreeSet<_> = d
            .edges()
            .into_iter()
            .map(|e| canonical_code(&contract_edge(&d, e).unwrap()).unwrap())
            .collect();
        let same_code = contracted.len() == 1 && contracted.contains(&t.code);
        let realizable = check_right_angled(p).map(|r| r.verdict()) == Ok(Verdict::Pass);
        pass &= sizes == want && cycle == [4, 5, 4, 5] && same_code && realizable;
        detail.push_str(&format!(
            "; sizes {{4,4,5^10}}: {}; around cusp {:?}; contracted dodecahedron code: {}; right-angled: {}",
            sizes == want,
            cycle,
            same_code,
            realizable
        ));
    }
    outcome(pass, format!("{detail}; {}", ms(elapsed)))
}

fn compact_extremal() -> Outcome {
    let t = Instant::now();
    let r = enumerate(&EnumSpec::new(12, 0, Filter::RightAngled)).unwrap();
    let elapsed = t.elapsed();
    let below = r.types.iter().filter(|t| t.face_count() < 12).count();
    let dodeca = canonical_code(&fixtures::dodecahedron()).unwrap();
    let is_dodeca = r.types.len() == 1 && r.types[0].code == dodeca;
    outcome(
        below == 0 && is_dodeca,
        format!(
            "{below} types @ <=11; only the dodecahedron @ 12: {is_dodeca}; {}",
            ms(elapsed)
        ),
    )
}

fn two_cusp_minima() -> Outcome {
    let t = Instant::now();
    let r = enumerate(&EnumSpec::new(10, 2, Filter::RightAngled)).unwrap();
    let elapsed = t.elapsed();
    // (shared faces, floor, budget)
    let classes = [(0, 8, 9), (1, 9, 9), (2, 10, 10)];
    let mut smallest: BTreeMap<usize, usize> = BTreeMap::new();
    let mut violations = 0;
    for ty in &r.types {
        let p = &ty.polyhedron;
        let cusps: Vec<usize> = p.ideal_vertices().iter().copied().collect();
        let shared = p
            .faces()
            .iter()
            .filter(|f| f.contains(&cusps[0]) && f.contains(&cusps[1]))
            .count();
        let faces = p.face_count();
        let e = smallest.entry(shared).or_insert(faces);
        *e = (*e).min(faces);
        if let Some(&(_, floor, budget)) = classes.iter().find(|c| c.0 == shared) {
            if faces <= budget && faces < floor {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{violations} below floor; smallest by shared faces {smallest:?}; {}",
            ms(elapsed)
        ),
    )
}

fn tables() -> Outcome {
    let t = Instant::now();
    let parallel = |a: u8, b: u8| a + b == 11;
    let adjacent = |f: &CuspFace, g: &CuspFace| {
        let union: BTreeSet<u8> = f.ids().iter().chain(g.ids()).copied().collect();
        union.len() == 4 && !union.iter().any(|&a| union.iter().any(|&b| parallel(a, b)))
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for (case, rows, faces, carrier) in [
        (SecondCuspCase::Face2, 12, 36, &[1u8, 2, 3, 4][..]),
        (SecondCuspCase::Edge, 20, 60, &[1, 2, 3, 4, 5][..]),
        (SecondCuspCase::Face3, 4, 12, &[1, 2, 3][..]),
    ] {
        let built = builtin_rows(case);
        let report = verify_table(case, &built).unwrap();
        let distinct: BTreeSet<&CuspFace> = built.iter().flatten().collect();
        let own = built.len() == rows
            && distinct.len() == faces
            && case.carrier() == carrier
            && built
                .iter()
                .flatten()
                .all(|f| f.n() == 6 && f.ids().len() == 3)
            && distinct
                .iter()
                .all(|f| !f.ids().iter().all(|id| carrier.contains(id)))
            && built.iter().all(|r| {
                adjacent(&r[0], &r[1]) && adjacent(&r[0], &r[2]) && adjacent(&r[1], &r[2])
            });
        pass &= own && report.ok() && report.rows == rows && report.distinct_faces == faces;
        parts.push(format!(
            "{} {}/{}",
            case.name(),
            report.rows,
            report.distinct_faces
        ));
    }
    let elapsed = t.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    outcome(pass, format!("{}; {}", parts.join(", "), ms(elapsed)))
}

fn n7() -> Outcome {
    let t = Instant::now();
    let steps = (1..=16).all(|m: i64| {
        240 - 15 * (m - 1) > 0 && Rational::from_integer(n7_polynomial(2, m)) >= int(0)
    });
    let mut identity = true;
    for m in 2..=40 {
        for l in 2..=m {
            let lhs = n7_preform(l, m).unwrap() * int(2);
            identity &= lhs == Rational::from_integer(n7_polynomial(l, m));
        }
    }
    let cert = n7_certificate();
    let elapsed = t.elapsed();
    let pass =
        steps && identity && cert.ok() && cert.bound == 17 && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "m=1..16 ruled out: {steps}; identity on 2<=l<=m<=40: {identity}; bound {}; {}",
            cert.bound,
            ms(elapsed)
        ),
    )
}

fn bounds_table() -> Outcome {
    let expected = [
        (6, 3),
        (7, 17),
        (8, 36),
        (9, 91),
        (10, 254),
        (11, 741),
        (12, 2200),
    ];
    let t = Instant::now();
    let b = main_bounds();
    let elapsed = t.elapsed();
    let golden: String = expected
        .iter()
        .map(|(n, c)| format!("n={n} c>={c}\n"))
        .collect();
    let (code, out) = cli(&["bounds"]);
    let table = expected.iter().all(|&(n, c)| b.bound(n) == Some(c));
    let recursion = expected.windows(2).skip(1).all(|w| {
        let ((_, prev), (n, c)) = (w[0], w[1]);
        lemma61(n, prev) == Ok(c) && 3 * prev - 2 * n as i64 + 1 == c
    });
    outcome(
        code == 0
            && out == golden
            && table
            && recursion
            && b.recheck()
            && elapsed < Duration::from_millis(1),
        format!(
            "bounds output byte-exact: {}; recursion n=8..12: {recursion}; {}",
            out == golden,
            ms(elapsed)
        ),
    )
}

fn relabel(p: &Polyhedron3, rng: &mut StdRng) -> Polyhedron3 {
    let mut perm: Vec<usize> = (0..p.vertex_count()).collect();
    perm.shuffle(rng);
    let reflect = rng.gen_bool(0.5);
    let mut faces: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            let r = rng.gen_range(0..g.len());
            g.rotate_left(r);
            if reflect {
                g.reverse();
            }
            g
        })
        .collect();
    faces.shuffle(rng);
    Polyhedron3::new(
        p.vertex_count(),
        p.ideal_vertices().iter().map(|&v| perm[v]),
        faces,
    )
    .unwrap()
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut mismatches = Vec::new();
    for cusps in 0..=2 {
        let r = enumerate(&EnumSpec::new(8, cusps, Filter::AllAlmostSimple)).unwrap();
        for faces in 4..=8 {
            let (ours, naive) = (r.count_at(faces), naive::count(faces, cusps));
            if ours != naive {
                mismatches.push(format!("F={faces} c={cusps}: {ours} vs {naive}"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let fixtures = [
        fixtures::cube(),
        fixtures::dodecahedron(),
        fixtures::icosahedron(),
        fixtures::prism(),
        fixtures::one_cusp_dodecahedron(),
    ];
    let mut unstable = 0;
    for p in &fixtures {
        let code = canonical_code(p).unwrap();
        for _ in 0..100 {
            if canonical_code(&relabel(p, &mut rng)).unwrap() != code {
                unstable += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    outcome(
        mismatches.is_empty() && unstable == 0 && elapsed < Duration::from_secs(60),
        format!(
            "count mismatches {:?}; {} of 500 relabelings changed a code; {}",
            mismatches,
            unstable,
            ms(elapsed)
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Nikulin pins", nikulin_pins),
        ("compact exclusion", compact_exclusion),
        ("cusp-link counts", cusp_link_counts),
        ("one-cusp exhaustion", lemma31_exhaustion),
        ("compact extremal case", compact_extremal),
        ("two-cusp minima", two_cusp_minima),
        ("table verification", tables),
        ("n=7 certificate", n7),
        ("bounds table", bounds_table),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut unexpected = 0;
    let mut red = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let o = check();
        let known = KNOWN_RED.contains(&id);
        let mark = if o.pass { "PASS" } else { "FAIL" };
        let note = match (o.pass, known) {
            (false, true) => " [known: criterion text does not hold]",
            (true, true) => " [expected FAIL; update KNOWN_RED]",
            _ => "",
        };
        println!("acceptance #{id:<2} {mark} {name}: {}{note}", o.detail);
        if !o.pass {
            red += 1;
        }
        if o.pass == known {
            unexpected += 1;
        }
    }
    println!(
        "acceptance: {} passed, {red} failed, {unexpected} unexpected",
        criteria.len() - red
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
