//! Face averages and the Nikulin upper bound on them.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{binomial, int, Rational};
use crate::lattice::FaceLattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NikulinError {
    #[error("parameters (n={n}, k={k}, l={l}) outside 0 <= l < k <= {max}")]
    Range {
        n: usize,
        k: usize,
        l: usize,
        max: usize,
    },
    #[error("the lattice has no faces of dimension {0}")]
    EmptyDimension(usize),
    #[error("small-dimension inequalities need dimension 2 or 3, not {0}")]
    Dimension(usize),
    #[error("compact exclusion is only claimed for n >= 5, not {0}")]
    SmallN(usize),
}

/// `a_k^l`: mean number of l-faces of a k-face.
pub fn face_average(lattice: &FaceLattice, k: usize, l: usize) -> Result<Rational, NikulinError> {
    let n = lattice.dimension();
    if l >= k || k + 1 > n {
        return Err(NikulinError::Range {
            n,
            k,
            l,
            max: n.saturating_sub(1),
        });
    }
    let faces = lattice.faces_of_dim(k);
    if faces.is_empty() {
        return Err(NikulinError::EmptyDimension(k));
    }
    let total: usize = faces.iter().map(|&f| lattice.count_below(f, l)).sum();
    Ok(Rational::new(
        BigInt::from(total),
        BigInt::from(faces.len()),
    ))
}

/// Upper bound on `a_k^l` for acute-angled polyhedra of finite volume in
/// hyperbolic n-space.
pub fn nikulin_rhs(n: usize, k: usize, l: usize) -> Result<Rational, NikulinError> {
    let max = n / 2;
    if l >= k || k > max {
        return Err(NikulinError::Range { n, k, l, max });
    }
    let (n, k, l) = (n as u64, k as u64, l as u64);
    let (lo, hi) = (n / 2, n.div_ceil(2));
    let num = binomial(n - l, n - k) * (binomial(lo, l) + binomial(hi, l));
    let den = binomial(lo, k) + binomial(hi, k);
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub k: usize,
    pub l: usize,
    /// `None` when the lattice has no k-faces.
    pub average: Option<Rational>,
    pub bound: Rational,
    /// `average < bound`; vacuously true without k-faces.
    pub strict_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NikulinAudit {
    pub n: usize,
    pub records: Vec<AuditRecord>,
}

impl NikulinAudit {
    pub fn all_ok(&self) -> bool {
        self.records.iter().all(|r| r.strict_ok)
    }

    pub fn record(&self, k: usize, l: usize) -> Option<&AuditRecord> {
        self.records.iter().find(|r| r.k == k && r.l == l)
    }
}

/// Compares every admissible face average with its bound.
pub fn audit(lattice: &FaceLattice) -> NikulinAudit {
    let n = lattice.dimension();
    let mut records = Vec::new();
    for k in 1..=n / 2 {
        for l in 0..k {
            let bound = nikulin_rhs(n, k, l).expect("admissible pair");
            let average = face_average(lattice, k, l).ok();
            let strict_ok = average.as_ref().is_none_or(|a| *a < bound);
            records.push(AuditRecord {
                k,
                l,
                average,
                bound,
                strict_ok,
            });
        }
    }
    NikulinAudit { n, records }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCheck {
    /// Human-readable inequality, e.g. `a2 + 2c >= 12`.
    pub name: String,
    pub value: usize,
    pub bound: usize,
}

impl SmallCheck {
    fn new(name: impl Into<String>, value: usize, bound: usize) -> Self {
        SmallCheck {
            name: name.into(),
            value,
            bound,
        }
    }

    pub fn ok(&self) -> bool {
        self.value >= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallReport {
    pub dimension: usize,
    pub checks: Vec<SmallCheck>,
}

impl SmallReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(SmallCheck::ok)
    }
}

/// Necessary inequalities for right-angled polygons and 3-polyhedra of
/// finite volume.
pub fn check_small(lattice: &FaceLattice) -> Result<SmallReport, NikulinError> {
    let dimension = lattice.dimension();
    let c = lattice.cusp_count();
    let mut checks = Vec::new();
    match dimension {
        2 => {
            let a1 = lattice.count(1);
            checks.push(SmallCheck::new("a1 + c >= 5", a1 + c, 5));
            if c == 0 {
                checks.push(SmallCheck::new("a1 >= 5", a1, 5));
            }
        }
        3 => {
            let a2 = lattice.count(2);
            checks.push(SmallCheck::new("a2 >= 6", a2, 6));
            checks.push(SmallCheck::new("a2 + 2c >= 12", a2 + 2 * c, 12));
            // Numbered in lattice order, which for `to_face_lattice` is the
            // order of the POLY3 faces.
            for (i, f) in lattice.faces_of_dim(2).into_iter().enumerate() {
                let edges = lattice.count_below(f, 1);
                let cusps = lattice.cusps_below(f);
                checks.push(SmallCheck::new(
                    format!("face {i}: a1 + c >= 5"),
                    edges + cusps,
                    5,
                ));
            }
        }
        d => return Err(NikulinError::Dimension(d)),
    }
    Ok(SmallReport { dimension, checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactExclusion {
    pub n: usize,
    /// Bound on the mean number of edges of a 2-face.
    pub rhs: Rational,
    /// Minimum number of edges of a compact right-angled polygon.
    pub floor: usize,
    pub excluded: bool,
}

/// Compact right-angled polyhedra in dimension `n` have only 2-faces with at
/// least 5 edges, which is impossible once the edge-average bound is <= 5.
pub fn compact_exclusion(n: usize) -> Result<CompactExclusion, NikulinError> {
    if n < 5 {
        return Err(NikulinError::SmallN(n));
    }
    let rhs = nikulin_rhs(n, 2, 1)?;
    let floor = 5;
    let excluded = rhs <= int(floor as i64);
    Ok(CompactExclusion {
        n,
        rhs,
        floor,
        excluded,
    })
}

/// `a_k^l * a_k`, an integer for every lattice.
pub fn face_total(lattice: &FaceLattice, k: usize, l: usize) -> Result<BigInt, NikulinError> {
    let avg = face_average(lattice, k, l)?;
    Ok((avg * int(lattice.count(k) as i64)).to_integer())
}
