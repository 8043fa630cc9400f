//! Faces through a single cusp of an n-dimensional right-angled polyhedron.
//!
//! The link of a cusp is a Euclidean cube, so the cusp lies on 2(n-1)
//! hyperfaces that split into n-1 parallel pairs. Hyperfaces are numbered
//! 1..=2(n-1) and `i` is parallel to `2(n-1)+1-i`. A k-face through the
//! cusp is the intersection of n-k hyperfaces, no two of them parallel.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::arith::{binomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspError {
    #[error("dimension {0} outside the supported range 2..=12")]
    Dimension(usize),
    #[error("face dimension {k} outside 1..={max}")]
    FaceDimension { k: usize, max: usize },
    #[error("hyperface {id} outside 1..={max}")]
    Hyperface { id: u8, max: u8 },
    #[error("hyperfaces {0} and {1} are parallel")]
    Parallel(u8, u8),
    #[error("hyperface {0} listed twice")]
    Repeated(u8),
    #[error("faces of different dimensions cannot be compared")]
    DimensionMismatch,
    #[error("malformed triple: {0}")]
    Malformed(String),
    #[error("deficit {0} is negative")]
    NegativeDeficit(i64),
    #[error("closed form {formula} disagrees with enumeration {enumerated}")]
    CountMismatch { formula: u64, enumerated: u64 },
}

const MAX_N: usize = 12;

fn check_n(n: usize) -> Result<(), CuspError> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(CuspError::Dimension(n))
    }
}

fn hyperfaces(n: usize) -> u8 {
    2 * (n as u8 - 1)
}

/// The hyperface parallel to `id` in dimension `n`.
pub fn partner(n: usize, id: u8) -> u8 {
    hyperfaces(n) + 1 - id
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspFace {
    n: usize,
    ids: Vec<u8>,
}

impl CuspFace {
    pub fn new(n: usize, ids: impl IntoIterator<Item = u8>) -> Result<Self, CuspError> {
        check_n(n)?;
        let max = hyperfaces(n);
        let mut set = BTreeSet::new();
        for id in ids {
            if id == 0 || id > max {
                return Err(CuspError::Hyperface { id, max });
            }
            if !set.insert(id) {
                return Err(CuspError::Repeated(id));
            }
        }
        if set.is_empty() || set.len() >= n {
            return Err(CuspError::FaceDimension {
                k: n.saturating_sub(set.len()),
                max: n - 1,
            });
        }
        if let Some(&id) = set.iter().find(|&&id| set.contains(&partner(n, id))) {
            return Err(CuspError::Parallel(id, partner(n, id)));
        }
        Ok(CuspFace {
            n,
            ids: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.ids.len()
    }

    pub fn ids(&self) -> &[u8] {
        &self.ids
    }

    pub fn is_within(&self, carrier: &[u8]) -> bool {
        self.ids.iter().all(|id| carrier.contains(id))
    }
}

impl fmt::Display for CuspFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.ids.iter().map(u8::to_string).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// Every k-face through the cusp, by filtering all subsets of hyperfaces.
pub fn enumerate_cusp_faces(n: usize, k: usize) -> Result<Vec<CuspFace>, CuspError> {
    check_n(n)?;
    if k == 0 || k >= n {
        return Err(CuspError::FaceDimension { k, max: n - 1 });
    }
    let m = hyperfaces(n) as u32;
    let size = (n - k) as u32;
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() != size {
            continue;
        }
        let ids: Vec<u8> = (0..m)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b as u8 + 1)
            .collect();
        if let Ok(face) = CuspFace::new(n, ids) {
            out.push(face);
        }
    }
    Ok(out)
}

/// `C(n-1, n-k) * 2^(n-k)`, cross-checked against the enumeration.
pub fn count_cusp_faces(n: usize, k: usize) -> Result<u64, CuspError> {
    let enumerated = enumerate_cusp_faces(n, k)?.len() as u64;
    let formula = u64::try_from(binomial(n as u64 - 1, (n - k) as u64)).expect("small") << (n - k);
    if formula != enumerated {
        return Err(CuspError::CountMismatch {
            formula,
            enumerated,
        });
    }
    Ok(formula)
}

/// Number of 3-faces through a fixed edge at the cusp: `C(n-1, n-3)`,
/// cross-checked against the 3-faces whose hyperfaces lie in the edge's.
pub fn faces_through_edge(n: usize) -> Result<u64, CuspError> {
    check_n(n)?;
    if n < 4 {
        return Err(CuspError::FaceDimension { k: 3, max: n - 1 });
    }
    let edge: Vec<u8> = (1..n as u8).collect();
    let enumerated = enumerate_cusp_faces(n, 3)?
        .iter()
        .filter(|f| f.is_within(&edge))
        .count() as u64;
    let formula = u64::try_from(binomial(n as u64 - 1, n as u64 - 3)).expect("small");
    if formula != enumerated {
        return Err(CuspError::CountMismatch {
            formula,
            enumerated,
        });
    }
    Ok(formula)
}

/// Two k-faces are adjacent when they meet in a (k-1)-face: they share all
/// but one hyperface and their union has no parallel pair.
pub fn is_adjacent(f: &CuspFace, g: &CuspFace) -> Result<bool, CuspError> {
    if f.n != g.n || f.ids.len() != g.ids.len() {
        return Err(CuspError::DimensionMismatch);
    }
    let common = f.ids.iter().filter(|id| g.ids.contains(id)).count();
    if common + 1 != f.ids.len() {
        return Ok(false);
    }
    let union: BTreeSet<u8> = f.ids.iter().chain(&g.ids).copied().collect();
    Ok(!union.iter().any(|&id| union.contains(&partner(f.n, id))))
}

/// Where the second cusp sits relative to the first, in dimension 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondCuspCase {
    /// On a 3-face through the first cusp, and on no 2-face with it.
    Face3,
    /// On exactly one 2-face with the first cusp.
    Face2,
    /// On an edge with the first cusp.
    Edge,
}

impl SecondCuspCase {
    pub const ALL: [SecondCuspCase; 3] = [
        SecondCuspCase::Face3,
        SecondCuspCase::Face2,
        SecondCuspCase::Edge,
    ];

    /// Hyperfaces through both cusps.
    pub fn carrier(&self) -> &'static [u8] {
        match self {
            SecondCuspCase::Face3 => &[1, 2, 3],
            SecondCuspCase::Face2 => &[1, 2, 3, 4],
            SecondCuspCase::Edge => &[1, 2, 3, 4, 5],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SecondCuspCase::Face3 => "case41",
            SecondCuspCase::Face2 => "table1",
            SecondCuspCase::Edge => "table2",
        }
    }

    /// Lower bound on the 2-faces of a 3-face through both cusps.
    pub fn face_floor(&self) -> i64 {
        match self {
            SecondCuspCase::Face3 => 8,
            SecondCuspCase::Face2 => 9,
            SecondCuspCase::Edge => 10,
        }
    }
}

/// 3-faces through both cusps: the 3-subsets of the carrier.
pub fn two_cusp_faces(case: SecondCuspCase) -> Vec<CuspFace> {
    let c = case.carrier();
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            for k in j + 1..c.len() {
                out.push(CuspFace::new(6, [c[i], c[j], c[k]]).expect("carrier is parallel-free"));
            }
        }
    }
    out
}

/// Three 3-faces of the dimension-6 link.
pub type TripleRow = [CuspFace; 3];

pub fn triple_row(ids: [[u8; 3]; 3]) -> Result<TripleRow, CuspError> {
    let mk = |t: [u8; 3]| CuspFace::new(6, t);
    Ok([mk(ids[0])?, mk(ids[1])?, mk(ids[2])?])
}

const CASE41: [[[u8; 3]; 3]; 4] = [
    [[1, 2, 4], [1, 2, 5], [1, 2, 8]],
    [[1, 4, 5], [2, 4, 5], [4, 5, 8]],
    [[1, 4, 6], [2, 4, 6], [4, 6, 8]],
    [[1, 3, 9], [1, 4, 9], [1, 5, 9]],
];

const TABLE1: [[[u8; 3]; 3]; 12] = [
    [[1, 2, 6], [1, 2, 7], [1, 2, 8]],
    [[1, 3, 6], [1, 3, 7], [1, 3, 9]],
    [[1, 4, 6], [1, 4, 8], [1, 4, 9]],
    [[1, 5, 7], [1, 5, 8], [1, 5, 9]],
    [[2, 3, 6], [2, 3, 7], [2, 3, 10]],
    [[2, 4, 6], [2, 4, 8], [2, 4, 10]],
    [[2, 5, 7], [2, 5, 8], [2, 5, 10]],
    [[3, 4, 6], [3, 4, 9], [3, 4, 10]],
    [[3, 5, 7], [3, 5, 9], [3, 5, 10]],
    [[4, 5, 8], [4, 5, 9], [4, 5, 10]],
    [[2, 6, 10], [2, 7, 10], [2, 8, 10]],
    [[3, 6, 10], [3, 7, 10], [3, 9, 10]],
];

const TABLE2_EXTRA: [[[u8; 3]; 3]; 8] = [
    [[4, 6, 10], [4, 8, 10], [4, 9, 10]],
    [[5, 7, 10], [5, 8, 10], [5, 9, 10]],
    [[1, 6, 9], [1, 7, 9], [1, 8, 9]],
    [[6, 9, 10], [7, 9, 10], [8, 9, 10]],
    [[1, 7, 8], [2, 7, 8], [5, 7, 8]],
    [[6, 7, 8], [7, 8, 9], [7, 8, 10]],
    [[1, 6, 7], [2, 6, 7], [3, 6, 7]],
    [[2, 6, 8], [4, 6, 8], [6, 8, 10]],
];

/// Built-in rows of pairwise adjacent one-cusp 3-faces for each case.
pub fn builtin_rows(case: SecondCuspCase) -> Vec<TripleRow> {
    let raw: Vec<[[u8; 3]; 3]> = match case {
        SecondCuspCase::Face3 => CASE41.to_vec(),
        SecondCuspCase::Face2 => TABLE1.to_vec(),
        SecondCuspCase::Edge => TABLE1.iter().chain(&TABLE2_EXTRA).copied().collect(),
    };
    raw.into_iter()
        .map(|r| triple_row(r).expect("built-in rows are well formed"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub case: SecondCuspCase,
    pub rows: usize,
    pub distinct_faces: usize,
    pub problems: Vec<String>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks that each row consists of pairwise adjacent 3-faces with exactly
/// one cusp, and that no face is used twice.
pub fn verify_table(case: SecondCuspCase, rows: &[TripleRow]) -> Result<TableReport, CuspError> {
    let carrier = case.carrier();
    let mut problems = Vec::new();
    let mut seen = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        for f in row {
            if f.n() != 6 || f.dim() != 3 {
                return Err(CuspError::Malformed(format!(
                    "row {}: {f} is not a 3-face in dimension 6",
                    r + 1
                )));
            }
            if f.is_within(carrier) {
                problems.push(format!("row {}: {f} contains the second cusp", r + 1));
            }
            if !seen.insert(f.clone()) {
                problems.push(format!("row {}: {f} already used", r + 1));
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if !is_adjacent(&row[i], &row[j])? {
                    problems.push(format!(
                        "row {}: {} and {} are not adjacent",
                        r + 1,
                        row[i],
                        row[j]
                    ));
                }
            }
        }
    }
    Ok(TableReport {
        case,
        rows: rows.len(),
        distinct_faces: seen.len(),
        problems,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragingVerdict {
    pub total_bound: Rational,
    pub deficit_sum: i64,
    pub surplus: i64,
    pub contradiction: bool,
    /// `surplus - deficit_sum`.
    pub margin: i64,
}

/// Faces below the strict average bound contribute `deficits`; each face
/// above it contributes at least one unit of `surplus`. If the surplus
/// covers the deficits the average cannot stay strictly below the bound.
pub fn averaging_contradiction(
    total_bound: &Rational,
    deficits: &[i64],
    surplus: i64,
) -> Result<AveragingVerdict, CuspError> {
    if let Some(&d) = deficits.iter().find(|d| d.is_negative()) {
        return Err(CuspError::NegativeDeficit(d));
    }
    let deficit_sum: i64 = deficits.iter().sum();
    Ok(AveragingVerdict {
        total_bound: total_bound.clone(),
        deficit_sum,
        surplus,
        contradiction: surplus >= deficit_sum,
        margin: surplus - deficit_sum,
    })
}
