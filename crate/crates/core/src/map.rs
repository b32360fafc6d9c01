//! Cognitive maps: validated square weight matrices with optional vertex
//! labels, plus the reachability pre-step and elementwise scaling.
//!
//! Vertex indices are 0-based throughout the library. The file formats and
//! the CLI present them 1-based.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weighted signed digraph given by its adjacency matrix.
///
/// `weight(i, j)` is the weight of the directed edge `i -> j`; zero means no
/// edge. The matrix is square, finite and has a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CognitiveMap {
    n: usize,
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl CognitiveMap {
    /// Builds a map from rows, validating squareness, finiteness and the
    /// zero diagonal.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut weights = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &w) in row.iter().enumerate() {
                if !w.is_finite() {
                    return Err(Error::NonFinite {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if i == j && w != 0.0 {
                    return Err(Error::SelfLoop { vertex: i + 1 });
                }
            }
            weights.extend(row);
        }
        // -0.0 and 0.0 both mean "no edge"; keep a single representation.
        for w in &mut weights {
            if *w == 0.0 {
                *w = 0.0;
            }
        }
        Ok(Self {
            n,
            weights,
            labels: None,
        })
    }

    /// Builds a map from a row-major slice of `n * n` weights.
    pub fn from_row_major(n: usize, weights: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if weights.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} weights for a {n}x{n} map, got {}",
                n * n,
                weights.len()
            )));
        }
        Self::new(weights.chunks(n).map(<[f64]>::to_vec).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.weights[from * self.n + to]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks(self.n)
    }

    pub fn row_major(&self) -> &[f64] {
        &self.weights
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of vertex `i`, falling back to its 1-based number.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    /// Out-neighbours of `i` in ascending index order.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(j, _)| j)
    }

    pub fn edge_count(&self) -> usize {
        self.weights.iter().filter(|w| **w != 0.0).count()
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex, n: self.n })
        }
    }

    /// `mu = max |w_ij|`, the normalisation constant shared by every path.
    pub fn max_abs_weight(&self) -> NormalizationConstant {
        NormalizationConstant(self.weights.iter().fold(0.0, |m, w| m.max(w.abs())))
    }

    /// Transitive closure of the nonzero pattern (Warshall).
    pub fn reachability(&self) -> ReachabilityMatrix {
        let n = self.n;
        let mut reach: Vec<bool> = self.weights.iter().map(|w| *w != 0.0).collect();
        for k in 0..n {
            for i in 0..n {
                if !reach[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
        ReachabilityMatrix { n, reach }
    }

    /// Multiplies every weight by the matching reachability entry.
    ///
    /// An edge is itself a path, so this never removes an edge; pair-level
    /// skipping through [`ReachabilityMatrix::is_reachable`] is what prunes
    /// work in the influence computation.
    pub fn sparsify(&self, reach: &ReachabilityMatrix) -> CognitiveMap {
        assert_eq!(reach.n, self.n, "reachability matrix size mismatch");
        let weights = self
            .weights
            .iter()
            .zip(&reach.reach)
            .map(|(w, a)| if *a { *w } else { 0.0 })
            .collect();
        CognitiveMap {
            n: self.n,
            weights,
            labels: self.labels.clone(),
        }
    }

    /// Multiplies every weight by `eta > 0`.
    pub fn scale(&self, eta: f64) -> Result<CognitiveMap> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive and finite, got {eta}"
            )));
        }
        Ok(CognitiveMap {
            n: self.n,
            weights: self.weights.iter().map(|w| w * eta).collect(),
            labels: self.labels.clone(),
        })
    }
}

/// `mu = max |w_ij|`. Zero exactly when the map has no edges.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NormalizationConstant(pub f64);

impl NormalizationConstant {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for NormalizationConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `is_reachable(i, j)` holds iff a directed path of at least one edge
/// leads from `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    n: usize,
    reach: Vec<bool>,
}

impl ReachabilityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_reachable(&self, from: usize, to: usize) -> bool {
        self.reach[from * self.n + to]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.reach[i * self.n..(i + 1) * self.n]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MapFormat {
    Json,
    #[default]
    Csv,
}

impl MapFormat {
    /// Picks the format from a file name: `.json` is JSON, anything else CSV.
    pub fn from_path(path: &std::path::Path) -> MapFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => MapFormat::Json,
            _ => MapFormat::Csv,
        }
    }
}

impl FromStr for MapFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(MapFormat::Json),
            "csv" => Ok(MapFormat::Csv),
            other => Err(Error::InvalidArgument(format!(
                "unknown map format {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// CSV cells use `,` as the decimal separator and `;` between cells.
    pub decimal_comma: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonMap {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    weights: Vec<Vec<serde_json::Value>>,
}

#[derive(Serialize)]
struct JsonMapOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
    weights: Vec<Vec<f64>>,
}

/// Decodes and validates a map.
pub fn load_map<R: Read>(
    mut source: R,
    format: MapFormat,
    opts: LoadOptions,
) -> Result<CognitiveMap> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    match format {
        MapFormat::Json => parse_json(&text),
        MapFormat::Csv => parse_csv(&text, opts),
    }
}

pub fn load_map_file(path: &std::path::Path, opts: LoadOptions) -> Result<CognitiveMap> {
    let file = std::fs::File::open(path)?;
    load_map(file, MapFormat::from_path(path), opts)
}

fn parse_json(text: &str) -> Result<CognitiveMap> {
    if text.trim().is_empty() {
        return Err(Error::Empty);
    }
    let raw: JsonMap = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let n = raw.weights.len();
    let mut rows = Vec::with_capacity(n);
    for (i, row) in raw.weights.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquare {
                row: i + 1,
                expected: n,
                found: row.len(),
            });
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let w = cell.as_f64().ok_or_else(|| Error::NonNumeric {
                row: i + 1,
                col: j + 1,
                text: cell.to_string(),
            })?;
            parsed.push(w);
        }
        rows.push(parsed);
    }
    let map = CognitiveMap::new(rows)?;
    match raw.labels {
        Some(labels) => map.with_labels(labels),
        None => Ok(map),
    }
}

fn parse_number(cell: &str, decimal_comma: bool) -> Option<f64> {
    let cell = cell.trim();
    let parsed = if decimal_comma {
        cell.replace(',', ".").parse::<f64>()
    } else {
        cell.parse::<f64>()
    };
    parsed.ok()
}

fn parse_csv(text: &str, opts: LoadOptions) -> Result<CognitiveMap> {
    let delimiter = if opts.decimal_comma { b';' } else { b',' };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(delimiter)
        .from_reader(text.as_bytes());

    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::InvalidArgument(format!("malformed CSV: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        records.push(record.iter().map(str::to_owned).collect::<Vec<_>>());
    }
    if records.is_empty() {
        return Err(Error::Empty);
    }

    let labels = if records[0]
        .iter()
        .all(|cell| parse_number(cell, opts.decimal_comma).is_none())
    {
        Some(records.remove(0))
    } else {
        None
    };
    if records.is_empty() {
        return Err(Error::Empty);
    }

    let n = records.len();
    let mut rows = Vec::with_capacity(n);
    for (i, record) in records.iter().enumerate() {
        if record.len() != n {
            return Err(Error::NonSquare {
                row: i + 1,
                expected: n,
                found: record.len(),
            });
        }
        let mut row = Vec::with_capacity(n);
        for (j, cell) in record.iter().enumerate() {
            let w = parse_number(cell, opts.decimal_comma).ok_or_else(|| Error::NonNumeric {
                row: i + 1,
                col: j + 1,
                text: cell.clone(),
            })?;
            row.push(w);
        }
        rows.push(row);
    }
    let map = CognitiveMap::new(rows)?;
    match labels {
        Some(labels) => map.with_labels(labels),
        None => Ok(map),
    }
}

/// Shortest decimal representation that parses back to the same `f64`.
pub(crate) fn format_weight(w: f64) -> String {
    if w == 0.0 {
        "0".to_owned()
    } else {
        format!("{w}")
    }
}

/// Writes a map in the given format; `load_map` reads it back unchanged.
pub fn save_map<W: Write>(map: &CognitiveMap, mut sink: W, format: MapFormat) -> Result<()> {
    match format {
        MapFormat::Json => {
            let doc = JsonMapOut {
                labels: map.labels(),
                weights: map.to_rows(),
            };
            serde_json::to_writer(&mut sink, &doc).map_err(|e| Error::Json(e.to_string()))?;
            writeln!(sink)?;
        }
        MapFormat::Csv => {
            let mut writer = csv::WriterBuilder::new().from_writer(&mut sink);
            let io_err = |e: csv::Error| Error::Io(e.into());
            if let Some(labels) = map.labels() {
                writer.write_record(labels).map_err(io_err)?;
            }
            for row in map.rows() {
                writer
                    .write_record(row.iter().map(|w| format_weight(*w)))
                    .map_err(io_err)?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}
