use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use orthocusp_core::andreev::{
    check_andreev, check_right_angled, parse_angles, AngleAssignment, ConditionReport, Verdict,
};
use orthocusp_core::arith::{format_rational, int};
use orthocusp_core::bounds::{main_bounds, n7_certificate};
use orthocusp_core::cusplink::{builtin_rows, verify_table, SecondCuspCase};
use orthocusp_core::enumerate::{
    enumerate, two_cusp_minima, verify_lemma31, EnumError, EnumSpec, Filter,
};
use orthocusp_core::fixtures;
use orthocusp_core::nikulin::{audit, check_small, compact_exclusion, nikulin_rhs};
use orthocusp_core::{
    canonical_code, parse_poly3, to_face_lattice, validate, DegreeProfile, Polyhedron3,
};

use crate::cache;
use crate::report::{status, yes_no, List, Report};

pub const CACHE_ENV: &str = "ORTHOCUSP_CACHE";

/// The expected `bounds` table.
pub const MAIN_TABLE: [(usize, i64); 7] = [
    (6, 3),
    (7, 17),
    (8, 36),
    (9, 91),
    (10, 254),
    (11, 741),
    (12, 2200),
];

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit 2.
    Usage(String),
    /// Input that cannot be checked at all (malformed file, out-of-scope
    /// polyhedron); exit 1.
    Input(String),
    /// Exit 3.
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 1,
            CliError::Io { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn load(path: &Path) -> Result<Polyhedron3, CliError> {
    parse_poly3(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn enum_error(e: EnumError) -> CliError {
    match e {
        EnumError::Workers(m) => CliError::Input(m),
        other => CliError::Usage(other.to_string()),
    }
}

pub fn validate_file(path: &Path, profile: Option<DegreeProfile>) -> Result<Report, CliError> {
    let p = load(path)?;
    let v = validate(&p, profile);
    let mut r = Report::new();
    r.line(format!(
        "V={} E={} F={} cusps={}",
        p.vertex_count(),
        p.edge_count(),
        p.face_count(),
        p.cusp_count()
    ));
    r.kv("vertices", p.vertex_count());
    r.kv("edges", p.edge_count());
    r.kv("faces", p.face_count());
    r.kv("cusps", p.cusp_count());
    r.line(format!("valid: {}", yes_no(v.is_valid())));
    r.kv("valid", v.is_valid());
    for issue in &v.issues {
        r.line(format!("  {issue}"));
        r.kv("issue", issue);
    }
    for m in &v.multi_adjacent {
        let shared: Vec<String> = m.shared.iter().map(ToString::to_string).collect();
        r.line(format!(
            "multi-adjacent: F{} F{} share {}",
            m.faces.0,
            m.faces.1,
            List(&shared)
        ));
        r.kv("multi_adjacent", format!("{},{}", m.faces.0, m.faces.1));
    }
    if let Some(profile) = profile {
        r.line(format!(
            "profile: finite degree {}, ideal degree {}",
            profile.finite_degree, profile.ideal_degree
        ));
        for d in &v.degree_violations {
            let kind = if d.ideal { "ideal" } else { "finite" };
            r.line(format!(
                "  {kind} vertex {} has degree {}, expected {}",
                d.vertex, d.degree, d.required
            ));
            r.kv(
                "degree_violation",
                format!("{},{},{}", d.vertex, d.degree, d.required),
            );
        }
    }
    if v.is_valid() {
        if let Ok(code) = canonical_code(&p) {
            r.line(format!("code: {code}"));
            r.kv("code", code);
        }
    }
    r.check(v.conforms());
    Ok(r)
}

fn condition_report(r: &mut Report, c: &ConditionReport) {
    r.block(&c.render());
    for res in &c.results {
        r.kv(
            format!("condition.{}", res.condition.key()),
            res.witnesses.len(),
        );
    }
    if let Some(family) = c.excluded {
        r.kv("excluded", family);
    }
    let verdict = c.verdict();
    r.kv("verdict", verdict);
    r.check(verdict == Verdict::Pass);
}

pub fn andreev(path: &Path, angles: Option<&Path>) -> Result<Report, CliError> {
    let p = load(path)?;
    let assignment = match angles {
        Some(a) => {
            parse_angles(&read(a)?).map_err(|e| CliError::Input(format!("{}: {e}", a.display())))?
        }
        None => AngleAssignment::right_angled(&p),
    };
    let c = check_andreev(&p, &assignment).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new();
    condition_report(&mut r, &c);
    Ok(r)
}

pub fn right_angled(path: &Path) -> Result<Report, CliError> {
    let p = load(path)?;
    let c = check_right_angled(&p).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new();
    condition_report(&mut r, &c);
    Ok(r)
}

pub fn nikulin_bound(n: usize, k: usize, l: usize) -> Result<Report, CliError> {
    let bound = nikulin_rhs(n, k, l).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut r = Report::new();
    r.line(format_rational(&bound));
    r.kv("bound", format_rational(&bound));
    Ok(r)
}

/// Face averages are informational; the exit status follows the
/// necessary inequalities of `check_small`.
pub fn nikulin_file(path: &Path) -> Result<Report, CliError> {
    let p = load(path)?;
    let lattice = to_face_lattice(&p).map_err(|e| CliError::Input(e.to_string()))?;
    let a = audit(&lattice);
    let small = check_small(&lattice).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new();
    r.line(format!("n={} cusps={}", a.n, lattice.cusp_count()));
    r.line("k l average bound strict");
    for rec in &a.records {
        let avg = rec
            .average
            .as_ref()
            .map_or("-".to_string(), format_rational);
        let bound = format_rational(&rec.bound);
        r.line(format!(
            "{} {} {} {} {}",
            rec.k,
            rec.l,
            avg,
            bound,
            yes_no(rec.strict_ok)
        ));
        r.kv(format!("average.{}.{}", rec.k, rec.l), avg);
        r.kv(format!("bound.{}.{}", rec.k, rec.l), bound);
        r.kv(format!("strict.{}.{}", rec.k, rec.l), rec.strict_ok);
    }
    for (i, c) in small.checks.iter().enumerate() {
        r.line(format!(
            "{}: {} >= {} {}",
            c.name,
            c.value,
            c.bound,
            status(c.ok())
        ));
        r.kv(
            format!("check.{i}"),
            format!("{}; {}; {}", c.name, c.value, c.bound),
        );
    }
    r.check(small.ok());
    Ok(r)
}

pub struct EnumerateArgs {
    pub faces: usize,
    pub cusps: usize,
    pub realizable: bool,
    pub out: Option<PathBuf>,
    pub check_cache: bool,
    pub workers: Option<usize>,
    pub cap: usize,
}

/// `--out` wins over the environment; with neither, nothing is written.
fn cache_dir(out: Option<&Path>) -> Option<PathBuf> {
    out.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

pub fn enumerate_types(args: &EnumerateArgs) -> Result<Report, CliError> {
    let filter = if args.realizable {
        Filter::RightAngled
    } else {
        Filter::AllAlmostSimple
    };
    let mut spec = EnumSpec::new(args.faces, args.cusps, filter).with_cap(args.cap);
    if let Some(w) = args.workers {
        spec = spec.with_workers(w);
    }
    let dir = cache_dir(args.out.as_deref());
    if args.check_cache && dir.is_none() {
        return Err(CliError::Usage(format!(
            "--check-cache needs --out or {CACHE_ENV}"
        )));
    }
    let report = enumerate(&spec).map_err(enum_error)?;

    let mut r = Report::new();
    r.block(&report.render());
    r.kv("max_faces", args.faces);
    r.kv("cusps", args.cusps);
    r.kv(
        "filter",
        if args.realizable {
            "right-angled"
        } else {
            "all"
        },
    );
    for (f, c) in report.counts() {
        r.kv(format!("types.{f}"), c);
    }
    for (f, c) in &report.non_polyhedral {
        r.kv(format!("non_polyhedral.{f}"), c);
    }
    for (s, per) in report.by_shared_faces() {
        for (f, c) in per {
            r.kv(format!("shared.{s}.{f}"), c);
        }
    }
    r.kv("total", report.types.len());

    if let Some(dir) = dir {
        if args.check_cache {
            let problems = cache::check(&dir, &report).map_err(io_err(&dir))?;
            for p in &problems {
                r.line(format!("cache: {p}"));
                r.kv("cache_problem", p);
            }
            r.line(format!(
                "cache: {} entries {}",
                report.types.len(),
                status(problems.is_empty())
            ));
            r.kv("cache", status(problems.is_empty()));
            r.check(problems.is_empty());
        } else {
            let n = cache::write(&dir, &report).map_err(io_err(&dir))?;
            r.line(format!("wrote {n} type files and {}", cache::INDEX));
            r.kv("written", n);
        }
    }
    Ok(r)
}

fn tables(r: &mut Report) {
    for case in [
        SecondCuspCase::Face2,
        SecondCuspCase::Edge,
        SecondCuspCase::Face3,
    ] {
        let name = case.name();
        match verify_table(case, &builtin_rows(case)) {
            Ok(t) => {
                r.line(format!("{name}: {} rows {}", t.rows, status(t.ok())));
                for p in &t.problems {
                    r.line(format!("  {p}"));
                }
                r.kv(format!("{name}.rows"), t.rows);
                r.kv(format!("{name}.distinct_faces"), t.distinct_faces);
                r.kv(format!("{name}.problems"), t.problems.len());
                r.check(t.ok());
            }
            Err(e) => {
                r.line(format!("{name}: {e}"));
                r.kv(format!("{name}.error"), e);
                r.fail();
            }
        }
    }
}

fn lemma31(r: &mut Report, prefix: &str) -> Result<(), CliError> {
    let l = verify_lemma31().map_err(enum_error)?;
    r.line(format!("{prefix}{} {}", l.render(), status(l.ok())));
    r.kv("lemma31.below_twelve", l.below_twelve);
    r.kv("lemma31.at_twelve", l.at_twelve);
    r.kv("lemma31.cusp_face_sizes", List(&l.cusp_face_sizes));
    r.kv(
        "lemma31.matches_contracted_dodecahedron",
        l.matches_contracted_dodecahedron,
    );
    r.check(l.ok());
    Ok(())
}

fn minima(r: &mut Report, budget: usize) -> Result<(), CliError> {
    let m = two_cusp_minima(budget).map_err(enum_error)?;
    r.block(&m.render());
    for c in &m.classes {
        let smallest = c.smallest.map_or("none".to_string(), |s| s.to_string());
        r.kv(format!("minima.t{}.smallest", c.shared), smallest);
        r.kv(format!("minima.t{}.violations", c.shared), c.violations);
    }
    r.line(format!("minima: budget {budget} {}", status(m.ok())));
    r.check(m.ok());
    Ok(())
}

fn n7(r: &mut Report) {
    let c = n7_certificate();
    for s in &c.steps {
        r.line(format!(
            "m={}: one-cusp 3-faces {} > 0, polynomial {} >= 0",
            s.m, s.one_cusp_faces, s.polynomial
        ));
        r.kv(format!("n7.m{}.polynomial", s.m), &s.polynomial);
    }
    r.line(format!("n7: c>={} {}", c.bound, status(c.ok())));
    r.kv("n7.bound", c.bound);
    r.check(c.ok());
}

fn fixtures_stage(r: &mut Report) {
    let mut bad = Vec::new();
    for (name, doc) in fixtures::ALL {
        match parse_poly3(doc) {
            Ok(p) if validate(&p, None).is_valid() => {}
            _ => bad.push(name),
        }
    }
    let contracted = fixtures::one_cusp_dodecahedron();
    if !validate(&contracted, Some(DegreeProfile::RIGHT_ANGLED)).conforms() {
        bad.push("one-cusp dodecahedron");
    }
    let total = fixtures::ALL.len() + 1;
    r.line(format!(
        "fixtures: {} of {total} valid {}",
        total - bad.len(),
        status(bad.is_empty())
    ));
    for b in &bad {
        r.line(format!("  invalid: {b}"));
    }
    r.kv("fixtures.invalid", bad.len());
    r.check(bad.is_empty());
}

fn nikulin_pins(r: &mut Report) {
    let pins = [(6, 3, 2, 12), (7, 3, 2, 9)];
    let mut ok = true;
    for (n, k, l, want) in pins {
        let got = nikulin_rhs(n, k, l).expect("admissible");
        ok &= got == int(want);
        r.kv(format!("nikulin.{n}.{k}.{l}"), format_rational(&got));
    }
    let excluded = (5..=100).all(|n| compact_exclusion(n).map(|c| c.excluded).unwrap_or(false));
    ok &= excluded;
    r.line(format!(
        "nikulin: rhs(6,3,2)=12, rhs(7,3,2)=9, compact exclusion for 5<=n<=100 {}",
        status(ok)
    ));
    r.check(ok);
}

fn bounds_stage(r: &mut Report) {
    let b = main_bounds();
    let table_ok = MAIN_TABLE.iter().all(|&(n, c)| b.bound(n) == Some(c));
    let ok = b.recheck() && table_ok;
    r.line(format!("bounds: n=6..12 rechecked {}", status(ok)));
    r.kv("bounds.recheck", ok);
    r.check(ok);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Lemma31,
    Tables,
    Minima,
    N7,
    All,
}

pub fn verify(target: Target, budget: usize) -> Result<Report, CliError> {
    let mut r = Report::new();
    match target {
        Target::Lemma31 => lemma31(&mut r, "")?,
        Target::Tables => tables(&mut r),
        Target::Minima => minima(&mut r, budget)?,
        Target::N7 => n7(&mut r),
        Target::All => {
            fixtures_stage(&mut r);
            tables(&mut r);
            lemma31(&mut r, "lemma31: ")?;
            minima(&mut r, budget)?;
            nikulin_pins(&mut r);
            bounds_stage(&mut r);
            r.line(format!("all: {}", status(r.ok())));
        }
    }
    Ok(r)
}

pub fn bounds(certificate: bool) -> Report {
    let b = main_bounds();
    let mut r = Report::new();
    if certificate {
        r.block(&b.render_certificate());
    } else {
        r.block(&b.render_table());
    }
    for e in &b.entries {
        r.kv(format!("c.{}", e.n), e.bound);
    }
    r.check(b.recheck());
    r
}
