//! File cache for enumeration results: one POLY3 file per type plus an
//! `index.txt` listing the canonical codes in sorted order.

use std::fs;
use std::io;
use std::path::Path;

use orthocusp_core::enumerate::EnumReport;
use orthocusp_core::{canonical_code, parse_poly3, CanonicalCode};
use sha2::{Digest, Sha256};

pub const INDEX: &str = "index.txt";

/// 16 hex digits of the SHA-256 of the code bytes.
pub fn file_name(code: &CanonicalCode) -> String {
    let digest = Sha256::digest(code.as_bytes());
    format!("{}.poly3", &hex::encode(digest)[..16])
}

fn sorted_hex(report: &EnumReport) -> Vec<String> {
    let mut codes: Vec<String> = report.types.iter().map(|t| t.code.to_hex()).collect();
    codes.sort();
    codes
}

pub fn write(dir: &Path, report: &EnumReport) -> io::Result<usize> {
    fs::create_dir_all(dir)?;
    for t in &report.types {
        fs::write(dir.join(file_name(&t.code)), t.polyhedron.to_poly3())?;
    }
    let mut index = String::new();
    for code in sorted_hex(report) {
        index.push_str(&code);
        index.push('\n');
    }
    fs::write(dir.join(INDEX), index)?;
    Ok(report.types.len())
}

/// Compares the cache against a fresh enumeration. Returns the problems
/// found; an unreadable index is an I/O error.
pub fn check(dir: &Path, report: &EnumReport) -> io::Result<Vec<String>> {
    let text = fs::read_to_string(dir.join(INDEX))?;
    let cached: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let expected = sorted_hex(report);
    let mut problems = Vec::new();

    if cached.windows(2).any(|w| w[0] >= w[1]) {
        problems.push("index is not strictly sorted".to_string());
    }
    for code in &expected {
        if !cached.contains(&code.as_str()) {
            problems.push(format!("missing from index: {code}"));
        }
    }
    for &code in &cached {
        if !expected.iter().any(|c| c == code) {
            problems.push(format!("not produced by this enumeration: {code}"));
        }
        let Some(parsed) = CanonicalCode::from_hex(code) else {
            problems.push(format!("malformed code: {code}"));
            continue;
        };
        let name = file_name(&parsed);
        let doc = match fs::read_to_string(dir.join(&name)) {
            Ok(doc) => doc,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                problems.push(format!("{name}: missing"));
                continue;
            }
            Err(e) => return Err(e),
        };
        match parse_poly3(&doc).and_then(|p| canonical_code(&p)) {
            Ok(c) if c == parsed => {}
            Ok(_) => problems.push(format!("{name}: content does not match {code}")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    Ok(problems)
}
