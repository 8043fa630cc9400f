//! Canonical codes of embedded polyhedra.
//!
//! Two valid polyhedra get the same code iff some relabelling of vertices and
//! faces, possibly combined with a reflection of the embedding, carries one
//! onto the other together with its ideal marks.

use std::fmt;

use crate::poly::{PolyError, Polyhedron3};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    /// Packs code words at the narrowest width (1, 2 or 4 bytes, big endian)
    /// that holds the largest word; the width is the first byte.
    pub(crate) fn from_words(words: &[u32]) -> Self {
        let max = words.iter().copied().max().unwrap_or(0);
        let width: u8 = if max < 0x100 {
            1
        } else if max < 0x1_0000 {
            2
        } else {
            4
        };
        let mut bytes = Vec::with_capacity(1 + words.len() * width as usize);
        bytes.push(width);
        for &w in words {
            let be = w.to_be_bytes();
            bytes.extend_from_slice(&be[4 - width as usize..]);
        }
        CanonicalCode(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        if !hex.len().is_multiple_of(2) || hex.is_empty() {
            return None;
        }
        (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_code(p: &Polyhedron3) -> Result<CanonicalCode, PolyError> {
    p.ensure_valid()?;
    Ok(canonical_code_unchecked(p))
}

pub(crate) fn canonical_code_unchecked(p: &Polyhedron3) -> CanonicalCode {
    let marks: Vec<bool> = (0..p.vertex_count()).map(|v| p.is_ideal(v)).collect();
    let words = p.plane_map().canonical_code(Some(&marks));
    CanonicalCode::from_words(&words)
}

/// Code of the embedding with ideal marks ignored.
pub fn unmarked_code(p: &Polyhedron3) -> Result<CanonicalCode, PolyError> {
    p.ensure_valid()?;
    Ok(CanonicalCode::from_words(
        &p.plane_map().canonical_code(None),
    ))
}
