//! File formats: pair files, extension files and Cayley tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::AbelianGroup;
use crate::error::{ForgeError, Result};
use crate::loops::LoopTable;
use crate::maps::{bimap_from_generators, BiAddMap, PermTable};
use crate::pair::ConstructionPair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorValue {
    pub s: usize,
    pub t: usize,
    pub value: usize,
}

/// Exactly one of `table` and `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorValue>>,
}

/// `{"group": "2,2,2", "g": [...], "gamma": {...}}`; `f` is accepted for `g`
/// and a missing `gamma` means the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub group: String,
    #[serde(alias = "f")]
    pub g: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSpec>,
}

/// Parsed but unverified pair data.
#[derive(Clone, Debug)]
pub struct RawPair {
    pub group: AbelianGroup,
    pub g: PermTable,
    pub gamma: BiAddMap,
}

impl RawPair {
    pub fn into_construction_pair(self) -> Result<ConstructionPair> {
        ConstructionPair::new(self.g, self.gamma)
    }
}

impl PairFile {
    pub fn from_pair(p: &ConstructionPair) -> Self {
        PairFile {
            group: p.group().to_string(),
            g: p.g().images().to_vec(),
            gamma: (!p.gamma().is_zero()).then(|| GammaSpec {
                table: Some(p.gamma().rows()),
                generators: None,
            }),
        }
    }

    pub fn resolve(&self) -> Result<RawPair> {
        let group: AbelianGroup = self.group.parse()?;
        let g = PermTable::new(group.clone(), self.g.clone())?;
        let gamma = match &self.gamma {
            None => BiAddMap::zero(group.clone()),
            Some(GammaSpec {
                table: Some(rows),
                generators: None,
            }) => BiAddMap::from_rows(group.clone(), rows)?,
            Some(GammaSpec {
                table: None,
                generators: Some(gens),
            }) => {
                let mut vals = BTreeMap::new();
                for gv in gens {
                    if vals.insert((gv.s, gv.t), gv.value).is_some() {
                        return Err(ForgeError::Parse(format!(
                            "gamma.generators lists the pair ({},{}) twice",
                            gv.s, gv.t
                        )));
                    }
                }
                bimap_from_generators(&group, &vals)?
            }
            Some(_) => {
                return Err(ForgeError::Parse(
                    "gamma must have exactly one of \"table\" or \"generators\"".into(),
                ))
            }
        };
        Ok(RawPair { group, g, gamma })
    }
}

pub fn parse_pair(text: &str) -> Result<RawPair> {
    let pf: PairFile = serde_json::from_str(text)?;
    pf.resolve()
}

/// `{"cyclic": n, "pair": <pair file>}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub cyclic: u64,
    pub pair: PairFile,
}

pub fn parse_spec(text: &str) -> Result<(u64, RawPair)> {
    let sf: SpecFile = serde_json::from_str(text)?;
    Ok((sf.cyclic, sf.pair.resolve()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableFormat {
    Text,
    Json,
    Gap,
}

impl std::str::FromStr for TableFormat {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "json" => Ok(TableFormat::Json),
            "gap" => Ok(TableFormat::Gap),
            other => Err(ForgeError::Parse(format!("unknown table format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTable {
    n: usize,
    id: usize,
    table: Vec<Vec<usize>>,
}

/// First line `n id`, then `n` rows of 0-based indices.
pub fn table_to_text(t: &LoopTable) -> String {
    let n = t.order();
    let mut out = String::with_capacity(n * n * 3 + 16);
    let _ = writeln!(out, "{} {}", n, t.identity());
    for x in 0..n {
        for y in 0..n {
            if y > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", t.mul(x, y));
        }
        out.push('\n');
    }
    out
}

pub fn table_to_json(t: &LoopTable) -> String {
    let jt = JsonTable {
        n: t.order(),
        id: t.identity(),
        table: t.rows(),
    };
    serde_json::to_string(&jt).expect("table serializes") + "\n"
}

/// Relabeling that moves the identity to label 0 (a swap with 0; identity map if already there).
fn identity_first(t: &LoopTable) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..t.order()).collect();
    sigma.swap(0, t.identity());
    sigma
}

/// `LoopByCayleyTable([[...], ...]);` with 1-based labels and the identity first.
pub fn table_to_gap(t: &LoopTable) -> String {
    let n = t.order();
    let sigma = identity_first(t);
    // sigma is an involution, so it is its own inverse
    let mut out = String::from("LoopByCayleyTable([\n");
    for a in 0..n {
        out.push_str("  [");
        for b in 0..n {
            if b > 0 {
                out.push(',');
            }
            let v = sigma[t.mul(sigma[a], sigma[b])] + 1;
            let _ = write!(out, "{v}");
        }
        out.push(']');
        if a + 1 < n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]);\n");
    out
}

pub fn export_table(t: &LoopTable, fmt: TableFormat) -> String {
    match fmt {
        TableFormat::Text => table_to_text(t),
        TableFormat::Json => table_to_json(t),
        TableFormat::Gap => table_to_gap(t),
    }
}

/// SHA-256 of the text export, hex encoded.
pub fn table_hash(t: &LoopTable) -> String {
    hex::encode(Sha256::digest(table_to_text(t).as_bytes()))
}

fn parse_numbers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| ForgeError::Parse(format!("not a table entry: {w:?}")))
        })
        .collect()
}

fn parse_text(s: &str) -> Result<LoopTable> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| ForgeError::Parse("empty table file".into()))?;
    let h = parse_numbers(header)?;
    if h.len() != 2 {
        return Err(ForgeError::Parse("first line must be `n id`".into()));
    }
    let (n, id) = (h[0], h[1]);
    let mut rows = Vec::with_capacity(n);
    for (k, line) in lines.enumerate() {
        let row = parse_numbers(line)?;
        if row.len() != n {
            return Err(ForgeError::Parse(format!(
                "row {k} has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ForgeError::Parse(format!("found {} rows, expected {n}", rows.len())));
    }
    LoopTable::new(&rows, id)
}

fn parse_gap(s: &str) -> Result<LoopTable> {
    let start = s
        .find('(')
        .ok_or_else(|| ForgeError::Parse("missing `(` after LoopByCayleyTable".into()))?;
    let end = s
        .rfind(')')
        .ok_or_else(|| ForgeError::Parse("missing closing `)`".into()))?;
    let body = s[start + 1..end].trim();
    let rows_text = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| ForgeError::Parse("table must be a list of lists".into()))?;
    let mut rows = Vec::new();
    for chunk in rows_text.split(']') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let row: Vec<usize> = parse_numbers(chunk)?;
        if row.contains(&0) {
            return Err(ForgeError::Parse("GAP tables use 1-based labels; found 0".into()));
        }
        rows.push(row.into_iter().map(|v| v - 1).collect::<Vec<_>>());
    }
    let n = rows.len();
    if let Some((k, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(ForgeError::Parse(format!("row {k} has {} entries, expected {n}", r.len())));
    }
    LoopTable::new(&rows, 0)
}

/// Reads a table in any supported format, detected from the first token.
pub fn parse_table(s: &str) -> Result<LoopTable> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('{') {
        let jt: JsonTable = serde_json::from_str(trimmed)?;
        if jt.table.len() != jt.n {
            return Err(ForgeError::Parse(format!(
                "\"n\" is {} but the table has {} rows",
                jt.n,
                jt.table.len()
            )));
        }
        LoopTable::new(&jt.table, jt.id)
    } else if trimmed.starts_with("LoopByCayleyTable") {
        parse_gap(trimmed)
    } else {
        parse_text(trimmed)
    }
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| ForgeError::Io(format!("{}: {e}", path.display())))
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| ForgeError::Io(format!("{}: {e}", path.display())))
}
