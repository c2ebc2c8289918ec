//! File formats: integer lists, group documents, JSON reports and CSV tables.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::adjudicate::{Finding, SearchSummary};
use crate::error::{Error, Result};
use crate::group::{GroupSequence, GroupSpec};
use crate::integers::IntegerExtraction;
use crate::scan::{InequalityRow, SCHEMA_VERSION};

/// One integer per line; `#` starts a comment; blank lines are skipped.
pub fn parse_integers(text: &str) -> Result<Vec<i64>> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: i64 = content.parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            message: format!("{content:?}: {e}"),
        })?;
        if v == 0 {
            return Err(Error::ZeroElement(values.len()));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(values)
}

/// `{schema: 1, n, s, elements: [[...], ...]}`; `schema` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub schema: Option<u32>,
    pub n: u64,
    pub s: u32,
    pub elements: Vec<Vec<i64>>,
}

impl GroupDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: GroupDocument = serde_json::from_str(text)?;
        match doc.schema {
            None | Some(SCHEMA_VERSION) => Ok(doc),
            Some(other) => Err(Error::InvalidArgument(format!(
                "unsupported schema {other}"
            ))),
        }
    }

    pub fn from_sequence(seq: &GroupSequence) -> Self {
        Self {
            schema: Some(SCHEMA_VERSION),
            n: seq.spec().n,
            s: seq.spec().s,
            elements: seq
                .elements()
                .iter()
                .map(|e| e.coords.iter().map(|&c| c as i64).collect())
                .collect(),
        }
    }

    pub fn to_sequence(&self) -> Result<GroupSequence> {
        let spec = GroupSpec::new(self.n, self.s)?;
        GroupSequence::from_coords(spec, &self.elements)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerWitnessRecord {
    pub schema: u32,
    pub n: usize,
    pub p: u64,
    pub k: u64,
    pub x: u64,
    pub indices: Vec<usize>,
    pub values: Vec<i64>,
    pub size: usize,
    pub verified: bool,
    pub image_in_window: bool,
    pub injective: bool,
    pub exceeds_third: bool,
}

impl IntegerWitnessRecord {
    pub fn new(input: &[i64], extraction: &IntegerExtraction) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            n: input.len(),
            p: extraction.choice.p,
            k: extraction.choice.k,
            x: extraction.column.x,
            indices: extraction.witness.indices.clone(),
            values: extraction
                .witness
                .select(input)
                .into_iter()
                .copied()
                .collect(),
            size: extraction.witness.size,
            verified: extraction.verified,
            image_in_window: extraction.image_in_window,
            injective: extraction.injective,
            exceeds_third: extraction.exceeds_third,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Columns `n,d,lhs_num,lhs_den,pass`.
pub fn write_inequality_csv<W: Write>(rows: &[InequalityRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "d", "lhs_num", "lhs_den", "pass"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.d.to_string(),
            r.lhs.numer().to_string(),
            r.lhs.denom().to_string(),
            r.pass.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One compact JSON object per line.
pub fn write_findings_jsonl<W: Write>(findings: &[Finding], mut out: W) -> Result<()> {
    for f in findings {
        serde_json::to_writer(&mut out, f)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_search_summary_csv<W: Write>(summary: &SearchSummary, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(out);
    w.serialize(SummaryRow::from(summary))?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SummaryRow {
    n: u64,
    s: u32,
    m: u64,
    mode: &'static str,
    seed: String,
    space_size: u64,
    instances: u64,
    complete: bool,
    theorem_counterexamples: u64,
    method_failures: u64,
    method_failures_oracle_checked: u64,
}

impl From<&SearchSummary> for SummaryRow {
    fn from(s: &SearchSummary) -> Self {
        Self {
            n: s.n,
            s: s.s,
            m: s.m,
            mode: match s.mode {
                crate::adjudicate::SearchMode::Exhaustive => "exhaustive",
                crate::adjudicate::SearchMode::Randomized => "randomized",
            },
            seed: s.seed.map(|v| v.to_string()).unwrap_or_default(),
            space_size: s.space_size,
            instances: s.instances,
            complete: s.complete,
            theorem_counterexamples: s.theorem_counterexamples,
            method_failures: s.method_failures,
            method_failures_oracle_checked: s.method_failures_oracle_checked,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integers::extract_sum_free_integers;
    use crate::scan::weighted_inequality_sweep;

    #[test]
    fn integer_parsing() {
        assert_eq!(parse_integers("1\n2\n3\n").unwrap(), vec![1, 2, 3]);
        assert_eq!(
            parse_integers("# header\n 5 # five\n\n-7\n").unwrap(),
            vec![5, -7]
        );
        assert!(matches!(
            parse_integers("1\n0\n"),
            Err(Error::ZeroElement(1))
        ));
        assert!(matches!(parse_integers(""), Err(Error::EmptyInput)));
        assert!(matches!(parse_integers("# only\n"), Err(Error::EmptyInput)));
        assert!(matches!(
            parse_integers("1\nabc\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn group_document() {
        let doc = GroupDocument::parse(r#"{"n":7,"s":1,"elements":[[1],[2],[-1]]}"#).unwrap();
        let seq = doc.to_sequence().unwrap();
        assert_eq!(seq.elements()[2].coords, vec![6]);
        let back = GroupDocument::from_sequence(&seq);
        assert_eq!(back.to_sequence().unwrap(), seq);
        assert!(GroupDocument::parse(r#"{"schema":2,"n":7,"s":1,"elements":[]}"#).is_err());
        assert!(matches!(
            GroupDocument::parse(r#"{"n":1,"s":1,"elements":[]}"#)
                .unwrap()
                .to_sequence(),
            Err(Error::InvalidModulus(1))
        ));
        assert!(matches!(
            GroupDocument::parse(r#"{"n":5,"s":2,"elements":[[1]]}"#)
                .unwrap()
                .to_sequence(),
            Err(Error::RankMismatch { .. })
        ));
        assert!(GroupDocument::parse(r#"{"n":5,"s":1,"elements":[[1]],"x":1}"#).is_err());
    }

    #[test]
    fn witness_record_fields() {
        let input = [1, 2, 3];
        let rec = IntegerWitnessRecord::new(&input, &extract_sum_free_integers(&input).unwrap());
        let json: serde_json::Value = serde_json::from_str(&to_json(&rec).unwrap()).unwrap();
        for key in ["p", "k", "x", "indices", "size", "verified"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["p"], 11);
        assert_eq!(json["verified"], true);
    }

    #[test]
    fn inequality_csv_layout() {
        let mut buf = Vec::new();
        write_inequality_csv(&weighted_inequality_sweep(4).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,d,lhs_num,lhs_den,pass");
        assert_eq!(lines[1], "2,1,2,7,true");
        assert_eq!(lines.len(), 1 + 4);
    }
}
