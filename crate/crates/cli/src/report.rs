use std::fmt::{self, Display, Write};

/// A rendered result: human-readable text plus the equivalent `key=value`
/// records for `--machine`.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
    records: Vec<(String, String)>,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn line(&mut self, s: impl Display) {
        let _ = writeln!(self.text, "{s}");
    }

    /// Appends already newline-terminated text.
    pub fn block(&mut self, s: &str) {
        self.text.push_str(s);
    }

    pub fn kv(&mut self, key: impl Into<String>, value: impl Display) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn fail(&mut self) {
        self.failed = true;
    }

    pub fn check(&mut self, ok: bool) {
        if !ok {
            self.failed = true;
        }
    }

    pub fn ok(&self) -> bool {
        !self.failed
    }

    pub fn render(&self, machine: bool) -> String {
        if !machine {
            return self.text.clone();
        }
        let mut out = String::new();
        for (k, v) in &self.records {
            let _ = writeln!(out, "{k}={v}");
        }
        let _ = writeln!(out, "ok={}", self.ok());
        out
    }
}

/// `yes`/`no` for text reports.
pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn status(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAILED"
    }
}

/// Space-separated list, `-` when empty.
pub struct List<'a, T>(pub &'a [T]);

impl<T: Display> Display for List<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
