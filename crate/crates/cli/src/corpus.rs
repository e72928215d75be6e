//! Corpus files: CSV with columns `name, pd, aliases, expected_jones, expected_homfly`
//! (aliases separated by `|`, empty cells allowed) or a JSON array of entries.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thetaknot_core::poly::LaurentPoly;
use thetaknot_core::{parse_pd, LinkDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    /// Keys `jones` (unreduced, in `q`) and `homfly` (in `a`, `z`).
    #[serde(default)]
    pub expected: BTreeMap<String, String>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> thetaknot_core::Result<LinkDiagram> {
        parse_pd(&self.pd)
    }

    pub fn alias_diagrams(&self) -> thetaknot_core::Result<Vec<LinkDiagram>> {
        self.aliases.iter().map(|a| parse_pd(a)).collect()
    }

    pub fn expected_poly(&self, key: &str) -> Option<LaurentPoly> {
        self.expected.get(key).and_then(|s| LaurentPoly::parse(s).ok())
    }

    /// Every PD text parses and every expectation is a polynomial in its variables.
    pub fn validate(&self) -> Result<(), String> {
        if self.name.trim().is_empty() {
            return Err("empty name".into());
        }
        self.diagram().map_err(|e| format!("pd: {e}"))?;
        for (i, a) in self.aliases.iter().enumerate() {
            parse_pd(a).map_err(|e| format!("alias {}: {e}", i + 1))?;
        }
        for (key, text) in &self.expected {
            let allowed: &[&str] = match key.as_str() {
                "jones" => &["q"],
                "homfly" => &["a", "z"],
                _ => return Err(format!("unknown expectation {key:?}")),
            };
            let p = LaurentPoly::parse(text).map_err(|e| format!("expected {key}: {e}"))?;
            if let Some(v) = p.variables().into_iter().find(|v| !allowed.contains(&v.name().as_str())) {
                return Err(format!("expected {key}: unexpected variable {}", v.name()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug)]
pub enum CorpusError {
    Io(std::io::Error),
    Format(String),
    Row(RowError),
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Io(e) => write!(f, "cannot read corpus: {e}"),
            CorpusError::Format(m) => write!(f, "malformed corpus: {m}"),
            CorpusError::Row(r) => write!(f, "malformed corpus row, {r}"),
        }
    }
}

impl std::error::Error for CorpusError {}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Rows skipped under `lenient`.
    pub errors: Vec<RowError>,
}

/// Reads a corpus; `.json` files (or text starting with `[`) are JSON, anything else CSV.
pub fn load_corpus(path: &Path, lenient: bool) -> Result<Corpus, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(CorpusError::Io)?;
    let json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('[');
    if json {
        parse_corpus_json(&text, lenient)
    } else {
        parse_corpus_csv(&text, lenient)
    }
}

fn accept(corpus: &mut Corpus, entry: CorpusEntry, line: usize, lenient: bool) -> Result<(), CorpusError> {
    match entry.validate() {
        Ok(()) => {
            corpus.entries.push(entry);
            Ok(())
        }
        Err(message) => reject(corpus, RowError { line, message: format!("{}: {message}", entry.name) }, lenient),
    }
}

fn reject(corpus: &mut Corpus, err: RowError, lenient: bool) -> Result<(), CorpusError> {
    if lenient {
        corpus.errors.push(err);
        Ok(())
    } else {
        Err(CorpusError::Row(err))
    }
}

pub fn parse_corpus_csv(text: &str, lenient: bool) -> Result<Corpus, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| CorpusError::Format(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (name_col, pd_col) = match (col("name"), col("pd")) {
        (Some(n), Some(p)) => (n, p),
        _ => return Err(CorpusError::Format("header must contain name and pd".into())),
    };
    let (alias_col, jones_col, homfly_col) = (col("aliases"), col("expected_jones"), col("expected_homfly"));
    let mut corpus = Corpus::default();
    for rec in rdr.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line() as usize);
                reject(&mut corpus, RowError { line, message: e.to_string() }, lenient)?;
                continue;
            }
        };
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let cell = |c: Option<usize>| c.and_then(|c| rec.get(c)).map(str::trim).unwrap_or("");
        let (name, pd) = (cell(Some(name_col)), cell(Some(pd_col)));
        if name.is_empty() && pd.is_empty() {
            continue;
        }
        let aliases = cell(alias_col).split('|').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        let mut expected = BTreeMap::new();
        for (key, c) in [("jones", jones_col), ("homfly", homfly_col)] {
            if !cell(c).is_empty() {
                expected.insert(key.to_string(), cell(c).to_string());
            }
        }
        let entry = CorpusEntry { name: name.to_string(), pd: pd.to_string(), aliases, expected };
        accept(&mut corpus, entry, line, lenient)?;
    }
    Ok(corpus)
}

pub fn parse_corpus_json(text: &str, lenient: bool) -> Result<Corpus, CorpusError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| CorpusError::Format(e.to_string()))?;
    let mut corpus = Corpus::default();
    for (i, value) in raw.into_iter().enumerate() {
        // JSON entries are numbered from 1 in place of lines
        match serde_json::from_value::<CorpusEntry>(value) {
            Ok(entry) => accept(&mut corpus, entry, i + 1, lenient)?,
            Err(e) => reject(&mut corpus, RowError { line: i + 1, message: e.to_string() }, lenient)?,
        }
    }
    Ok(corpus)
}

/// The corpus shipped with the crate.
pub fn bundled_corpus() -> Corpus {
    parse_corpus_csv(include_str!("../data/corpus.csv"), false).expect("bundled corpus is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "name,pd,aliases,expected_jones,expected_homfly\n";

    #[test]
    fn unknot_row() {
        let c = parse_corpus_csv(&format!("{HEADER}unknot,U,,,\n"), false).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert!(c.entries[0].aliases.is_empty() && c.entries[0].expected.is_empty());
    }

    #[test]
    fn aliases_and_expectations() {
        let text = format!("{HEADER}kink,\"X[1,1,2,2]\",\"U|X[1,2,2,1]\",q + q^-1,1\n");
        let c = parse_corpus_csv(&text, false).unwrap();
        assert_eq!(c.entries[0].aliases, vec!["U".to_string(), "X[1,2,2,1]".to_string()]);
        assert_eq!(c.entries[0].expected["jones"], "q + q^-1");
    }

    #[test]
    fn malformed_pd_reports_line() {
        let text = format!("{HEADER}ok,U,,,\nbad,\"X[1,2,3]\",,,\n");
        match parse_corpus_csv(&text, false) {
            Err(CorpusError::Row(r)) => assert_eq!(r.line, 3),
            other => panic!("{other:?}"),
        }
        let c = parse_corpus_csv(&text, true).unwrap();
        assert_eq!((c.entries.len(), c.errors.len()), (1, 1));
        assert_eq!(c.errors[0].line, 3);
    }

    #[test]
    fn json_entries() {
        let c = parse_corpus_json(r#"[{"name":"u","pd":"U"},{"name":"x","pd":"X[1"}]"#, true).unwrap();
        assert_eq!((c.entries.len(), c.errors.len()), (1, 1));
        assert_eq!(c.errors[0].line, 2);
    }

    #[test]
    fn bad_expectation_variable() {
        let text = format!("{HEADER}u,U,,t + 1,\n");
        assert!(parse_corpus_csv(&text, false).is_err());
    }
}
