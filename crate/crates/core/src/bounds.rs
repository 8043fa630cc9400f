//! Lower bounds on the number of cusps of right-angled polyhedra of finite
//! volume in dimensions 6 to 12, with the arithmetic behind each one.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{format_rational, int, Rational};
use crate::cusplink::{
    averaging_contradiction, builtin_rows, two_cusp_faces, verify_table, AveragingVerdict,
    SecondCuspCase,
};
use crate::nikulin::nikulin_rhs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("need 2 <= l <= m, got l={l}, m={m}")]
    Range { l: i64, m: i64 },
    #[error("the recursion is only established for 8 <= n <= 12, not {0}")]
    Scope(usize),
    #[error("m={m} is below 2(n-1)={min}; the recursion needs m >= 2(n-1)")]
    Sign { m: i64, min: i64 },
}

fn c2(x: i64) -> BigInt {
    BigInt::from(x) * BigInt::from(x - 1) / 2
}

/// Weighted count of 2-faces over the 3-faces of a 7-dimensional polyhedron
/// with `m` cusps, around a 3-face with `l` cusps, before simplification.
pub fn n7_preform(l: i64, m: i64) -> Result<Rational, BoundsError> {
    if l < 2 || l > m {
        return Err(BoundsError::Range { l, m });
    }
    let mut total = -BigInt::from(45) * c2(m - l)
        - BigInt::from(45 * l) * BigInt::from(m - l)
        - BigInt::from(28) * c2(l);
    for j in 1..m {
        total += BigInt::from(3 * (240 - 15 * j));
    }
    Ok(Rational::from_integer(total))
}

/// `17l^2 - 17l - 90m^2 + 1530m - 1440`.
pub fn n7_polynomial(l: i64, m: i64) -> BigInt {
    let (l, m) = (BigInt::from(l), BigInt::from(m));
    BigInt::from(17) * &l * &l - BigInt::from(17) * &l - BigInt::from(90) * &m * &m
        + BigInt::from(1530) * &m
        - BigInt::from(1440)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N7Step {
    pub m: i64,
    /// One-cusp 3-faces left after removing those at the other cusps.
    pub one_cusp_faces: i64,
    pub polynomial: BigInt,
}

impl N7Step {
    fn new(m: i64) -> Self {
        N7Step {
            m,
            one_cusp_faces: 240 - 15 * (m - 1),
            polynomial: n7_polynomial(2, m),
        }
    }

    /// The counting argument applies.
    pub fn applies(&self) -> bool {
        self.one_cusp_faces > 0
    }

    /// The polynomial should be negative; it is not, so `m` cusps is
    /// impossible.
    pub fn impossible(&self) -> bool {
        self.polynomial >= BigInt::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N7Certificate {
    pub steps: Vec<N7Step>,
    pub bound: i64,
}

impl N7Certificate {
    pub fn ok(&self) -> bool {
        self.steps.len() as i64 == self.bound - 1
            && self
                .steps
                .iter()
                .enumerate()
                .all(|(i, s)| s.m == i as i64 + 1 && s.applies() && s.impossible())
    }
}

/// Rules out 1..=16 cusps in dimension 7.
pub fn n7_certificate() -> N7Certificate {
    N7Certificate {
        steps: (1..=16).map(N7Step::new).collect(),
        bound: 17,
    }
}

/// If every facet of a polyhedron in dimension `n` has at least `m` cusps,
/// the polyhedron has at least `3m - 2n + 1`.
pub fn lemma61(n: usize, m: i64) -> Result<i64, BoundsError> {
    if !(8..=12).contains(&n) {
        return Err(BoundsError::Scope(n));
    }
    let min = 2 * (n as i64 - 1);
    if m < min {
        return Err(BoundsError::Sign { m, min });
    }
    Ok(3 * m - 2 * n as i64 + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma61Params {
    pub n: usize,
    pub m: i64,
    /// Cusps on neither `L` nor `L'`.
    pub k: i64,
    pub c_l: i64,
    pub c_l_prime: i64,
}

/// `(m-1-k)(m-1) <= (2(n-1)-1)(c(L')-1)`.
pub fn eq2_check(p: &Lemma61Params) -> bool {
    let n = p.n as i64;
    (p.m - 1 - p.k) * (p.m - 1) <= (2 * (n - 1) - 1) * (p.c_l_prime - 1)
}

/// `2m - 2 + (2n-3)/(m-1) + (m-2(n-1))/(m-1) * c(L')`.
pub fn chained_bound(n: usize, m: i64, c_l_prime: i64) -> Rational {
    let n = n as i64;
    int(2 * m - 2)
        + Rational::new(BigInt::from(2 * n - 3), BigInt::from(m - 1))
        + Rational::new(
            BigInt::from((m - 2 * (n - 1)) * c_l_prime),
            BigInt::from(m - 1),
        )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N6Case {
    pub case: SecondCuspCase,
    /// 3-faces through both cusps, each short of 12 by `12 - floor`.
    pub two_cusp_faces: usize,
    pub floor: i64,
    /// Table rows; each forces a distinct 3-face above 12.
    pub rows: usize,
    pub table_ok: bool,
    pub verdict: AveragingVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N6Certificate {
    /// Every 3-face has at least this many 2-faces when there is one cusp.
    pub one_cusp_floor: i64,
    /// Strict upper bound on the mean number of 2-faces of a 3-face.
    pub average_bound: Rational,
    pub cases: Vec<N6Case>,
}

impl N6Certificate {
    pub fn one_cusp_contradiction(&self) -> bool {
        int(self.one_cusp_floor) >= self.average_bound
    }

    pub fn ok(&self) -> bool {
        self.one_cusp_contradiction()
            && self.cases.len() == 3
            && self
                .cases
                .iter()
                .all(|c| c.table_ok && c.verdict.contradiction)
    }
}

fn n6_certificate() -> N6Certificate {
    let average_bound = nikulin_rhs(6, 3, 2).expect("admissible");
    let cases = SecondCuspCase::ALL
        .iter()
        .map(|&case| {
            let faces = two_cusp_faces(case).len();
            let floor = case.face_floor();
            let rows = builtin_rows(case);
            let table_ok = verify_table(case, &rows).map(|r| r.ok()).unwrap_or(false);
            let deficits = vec![12 - floor; faces];
            let verdict = averaging_contradiction(&average_bound, &deficits, rows.len() as i64)
                .expect("non-negative deficits");
            N6Case {
                case,
                two_cusp_faces: faces,
                floor,
                rows: rows.len(),
                table_ok,
                verdict,
            }
        })
        .collect();
    N6Certificate {
        one_cusp_floor: 12,
        average_bound,
        cases,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trail {
    N6(N6Certificate),
    N7(N7Certificate),
    Recursion { previous: i64, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub n: usize,
    pub bound: i64,
    pub trail: Trail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsCertificate {
    pub entries: Vec<BoundEntry>,
}

impl BoundsCertificate {
    pub fn bound(&self, n: usize) -> Option<i64> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.bound)
    }

    /// Recomputes every recorded value.
    pub fn recheck(&self) -> bool {
        self.entries.iter().all(|e| match &e.trail {
            Trail::N6(c) => c.ok() && *c == n6_certificate() && e.bound == 3,
            Trail::N7(c) => c.ok() && *c == n7_certificate() && e.bound == c.bound,
            Trail::Recursion { previous, value } => {
                self.bound(e.n - 1) == Some(*previous)
                    && lemma61(e.n, *previous) == Ok(*value)
                    && e.bound == *value
            }
        })
    }

    pub fn render_table(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("n={} c>={}\n", e.n, e.bound))
            .collect()
    }

    pub fn render_certificate(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "n={} c>={}", e.n, e.bound);
            match &e.trail {
                Trail::N6(c) => {
                    let _ = writeln!(
                        out,
                        "  one cusp: every 3-face has >= {} 2-faces, mean bound {} (strict): {}",
                        c.one_cusp_floor,
                        format_rational(&c.average_bound),
                        yes(c.one_cusp_contradiction())
                    );
                    for case in &c.cases {
                        let v = &case.verdict;
                        let _ = writeln!(
                            out,
                            "  {}: {} two-cusp 3-faces with >= {} 2-faces, deficit {}; {} rows, surplus {}; margin {}: {}",
                            case.case.name(),
                            case.two_cusp_faces,
                            case.floor,
                            v.deficit_sum,
                            case.rows,
                            v.surplus,
                            v.margin,
                            yes(case.table_ok && v.contradiction)
                        );
                    }
                }
                Trail::N7(c) => {
                    for s in &c.steps {
                        let _ = writeln!(
                            out,
                            "  m={}: one-cusp 3-faces {} > 0, polynomial {} >= 0: {}",
                            s.m,
                            s.one_cusp_faces,
                            s.polynomial,
                            yes(s.applies() && s.impossible())
                        );
                    }
                }
                Trail::Recursion { previous, value } => {
                    let _ = writeln!(out, "  3*{} - 2*{} + 1 = {}", previous, e.n, value);
                }
            }
        }
        out
    }
}

fn yes(ok: bool) -> &'static str {
    if ok {
        "contradiction"
    } else {
        "NOT ESTABLISHED"
    }
}

pub fn main_bounds() -> BoundsCertificate {
    let mut entries = vec![
        BoundEntry {
            n: 6,
            bound: 3,
            trail: Trail::N6(n6_certificate()),
        },
        BoundEntry {
            n: 7,
            bound: 17,
            trail: Trail::N7(n7_certificate()),
        },
    ];
    let mut previous = 17;
    for n in 8..=12 {
        let value = lemma61(n, previous).expect("bounds grow fast enough");
        entries.push(BoundEntry {
            n,
            bound: value,
            trail: Trail::Recursion { previous, value },
        });
        previous = value;
    }
    BoundsCertificate { entries }
}

#[cfg(test)]
fn preform_direct(l: i64, m: i64) -> i64 {
    let choose2 = |x: i64| x * (x - 1) / 2;
    let mut s = -3 * 15 * choose2(m - l) - 3 * 15 * l * (m - l) - 2 * 14 * choose2(l);
    let mut j = m - 1;
    while j >= 1 {
        s += 3 * (240 - 15 * j);
        j -= 1;
    }
    s
}
