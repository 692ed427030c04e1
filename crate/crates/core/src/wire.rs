//! File formats: JSON matrix documents and plain-text word files.

use serde::{Deserialize, Serialize};

use crate::arith::ChiFraction;
use crate::error::Error;
use crate::gates::{Gate, GateWord};
use crate::matrix::Mat3;

/// A 3×3 matrix over ℤ[χ⁻¹], entries written as `(p+qw)/chi^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub entries: [[String; 3]; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Mat3<ChiFraction>, comment: Option<String>) -> Self {
        MatrixDocument {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| m.e[i][j].to_string())),
            comment,
        }
    }

    pub fn to_matrix(&self) -> Result<Mat3<ChiFraction>, Error> {
        let mut m = Mat3::<ChiFraction>::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.e[i][j] = self.entries[i][j].parse()?;
            }
        }
        Ok(m)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Header fields written above the gate letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordHeader {
    pub sde: Option<i64>,
    pub steps: Option<usize>,
}

/// `# length: N`, optional `# sde:` and `# steps:` lines, then one letter per line.
pub fn format_word_file(w: &GateWord, header: &WordHeader) -> String {
    let mut s = format!("# length: {}\n", w.len());
    if let Some(sde) = header.sde {
        s.push_str(&format!("# sde: {sde}\n"));
    }
    if let Some(steps) = header.steps {
        s.push_str(&format!("# steps: {steps}\n"));
    }
    for g in w.gates() {
        s.push(g.letter());
        s.push('\n');
    }
    s
}

/// Reads a word file, ignoring comments and blank lines. A `# length:` header,
/// when present, must match.
pub fn parse_word_file(text: &str) -> Result<GateWord, Error> {
    let mut gates = Vec::new();
    let mut declared = None;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("length:") {
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad length", n + 1)))?;
                declared = Some(v);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut chars = line.chars();
        match (chars.next().and_then(Gate::from_letter), chars.next()) {
            (Some(g), None) => gates.push(g),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected H, S or R, got `{line}`",
                    n + 1
                )))
            }
        }
    }
    if let Some(d) = declared {
        if d != gates.len() {
            return Err(Error::Parse(format!(
                "header says length {d}, found {}",
                gates.len()
            )));
        }
    }
    Ok(GateWord::new(gates))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_document() {
        let doc = MatrixDocument::from_matrix(&Mat3::identity(), None);
        assert_eq!(doc.entries[0][0], "(1+0w)");
        assert_eq!(doc.entries[0][1], "(0+0w)");
        let text = doc.to_json();
        assert!(!text.contains("comment"));
        let back = MatrixDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.to_matrix().unwrap().is_identity());
    }

    #[test]
    fn h_document_round_trips() {
        let h = Gate::H.matrix();
        let doc = MatrixDocument::from_matrix(h.matrix(), Some("H".into()));
        assert!(doc.entries.iter().flatten().all(|e| e.ends_with("/chi^1")));
        let back = MatrixDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.to_matrix().unwrap(), *h.matrix());
        assert_eq!(back.comment.as_deref(), Some("H"));
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(MatrixDocument::parse("{}"), Err(Error::Parse(_))));
        let mut doc = MatrixDocument::from_matrix(&Mat3::identity(), None);
        doc.entries[1][2] = "1/3".into();
        assert!(matches!(doc.to_matrix(), Err(Error::Parse(_))));
    }

    #[test]
    fn word_files() {
        let w: GateWord = "HSRH".parse().unwrap();
        let text = format_word_file(
            &w,
            &WordHeader {
                sde: Some(2),
                steps: Some(1),
            },
        );
        assert_eq!(text, "# length: 4\n# sde: 2\n# steps: 1\nH\nS\nR\nH\n");
        assert_eq!(parse_word_file(&text).unwrap(), w);
        assert_eq!(parse_word_file("# length: 0\n").unwrap(), GateWord::empty());
        assert!(parse_word_file("# length: 2\nH\n").is_err());
        assert!(parse_word_file("X\n").is_err());
        assert!(parse_word_file("HS\n").is_err());
    }
}
