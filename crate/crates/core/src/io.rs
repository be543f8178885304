//! JSON file formats for graphs, vertex functions, special pairs and
//! reduction contexts.
//!
//! Output is byte-deterministic: object keys are sorted and every real is
//! written with 17 significant digits.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel, VertexMap};
use crate::reduction::{Partition, ReductionContext, SpecialPair};
use crate::spectral::{Spectrum, VertexFunction};

/// `{"q", "n", "vertices", "edges"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub q: u8,
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn from_graph(g: &LabeledGraph) -> Result<Self> {
        if g.q() > 10 {
            return Err(Error::usage(format!(
                "graph files need q <= 10, got q={}",
                g.q()
            )));
        }
        Ok(GraphDoc {
            q: g.q(),
            n: g.n(),
            vertices: g.vertices().iter().map(ToString::to_string).collect(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        })
    }

    pub fn to_graph(&self) -> Result<LabeledGraph> {
        if self.q > 10 {
            return Err(Error::usage(format!(
                "graph files need q <= 10, got q={}",
                self.q
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|s| VertexLabel::parse(s, self.q))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&[a, b]) = self.edges.iter().find(|&&[a, b]| a >= b) {
            return Err(Error::usage(format!("edge [{a}, {b}] must have i < j")));
        }
        if self.edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::usage("edge list must be sorted without duplicates"));
        }
        LabeledGraph::new(
            self.q,
            self.n,
            vertices,
            self.edges.iter().map(|&[a, b]| (a, b)),
        )
    }
}

/// A graph given inline or as a path relative to the referencing file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(String),
    Inline(GraphDoc),
}

impl GraphRef {
    pub fn resolve(&self, base_dir: &Path) -> Result<LabeledGraph> {
        match self {
            GraphRef::Inline(doc) => doc.to_graph(),
            GraphRef::Path(p) => read_graph(&base_dir.join(p)),
        }
    }
}

/// `{"graph": <graph or path>, "values": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub graph: GraphRef,
    pub values: Vec<f64>,
}

/// A pair file; the three trailing fields turn it into a context file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    pub graph: GraphRef,
    pub phi: Vec<usize>,
    #[serde(rename = "V1")]
    pub v1: Vec<usize>,
    #[serde(rename = "V2")]
    pub v2: Vec<usize>,
    #[serde(rename = "V3")]
    pub v3: Vec<usize>,
    #[serde(rename = "G0", default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<GraphRef>,
    /// `phi1[k]` is the `G₀` id of the `k`-th vertex of `V1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi1: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi2: Option<Vec<usize>>,
}

impl ContextDoc {
    pub fn from_context(ctx: &ReductionContext, graph: GraphRef, g0: GraphRef) -> Self {
        let parts = ctx.pair().parts();
        ContextDoc {
            graph,
            phi: ctx.pair().phi().image().to_vec(),
            v1: parts.v1().to_vec(),
            v2: parts.v2().to_vec(),
            v3: parts.v3().to_vec(),
            g0: Some(g0),
            phi1: Some(ctx.phi1().image().to_vec()),
            phi2: Some(ctx.phi2().image().to_vec()),
        }
    }
}

/// The reduced-graph part of a loaded context file.
#[derive(Debug, Clone)]
pub struct ReducedParts {
    pub g0: LabeledGraph,
    pub phi1: VertexMap,
    pub phi2: VertexMap,
}

/// A pair or context file with its graphs resolved but nothing verified
/// beyond shape: the map is in range and the parts form a partition.
#[derive(Debug, Clone)]
pub struct LoadedPair {
    pub graph: LabeledGraph,
    pub phi: VertexMap,
    pub parts: Partition,
    pub reduced: Option<ReducedParts>,
}

impl LoadedPair {
    /// Verifies everything and builds the context; failures are usage errors.
    pub fn into_context(self) -> Result<ReductionContext> {
        let reduced = self.reduced.ok_or_else(|| {
            Error::usage("file has no G0/phi1/phi2; it is a pair file, not a context")
        })?;
        let pair = SpecialPair::new(self.graph, self.phi, self.parts)?;
        ReductionContext::new(pair, reduced.g0, reduced.phi1, reduced.phi2)
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn read_doc<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<LabeledGraph> {
    read_doc::<GraphDoc>(path)?.to_graph()
}

/// Reads a function file, returning the function and the graph it lives on.
pub fn read_function(path: &Path) -> Result<(VertexFunction, LabeledGraph)> {
    let doc: FunctionDoc = read_doc(path)?;
    let graph = doc.graph.resolve(&base_dir(path))?;
    if doc.values.len() != graph.order() {
        return Err(Error::usage(format!(
            "{} has {} values for {} vertices",
            path.display(),
            doc.values.len(),
            graph.order()
        )));
    }
    Ok((VertexFunction::new(doc.values), graph))
}

pub fn read_pair(path: &Path) -> Result<LoadedPair> {
    let doc: ContextDoc = read_doc(path)?;
    let dir = base_dir(path);
    let graph = doc.graph.resolve(&dir)?;
    let phi = VertexMap::new(doc.phi, graph.order())?;
    if phi.source_order() != graph.order() {
        return Err(Error::usage(format!(
            "phi has {} entries for {} vertices",
            phi.source_order(),
            graph.order()
        )));
    }
    let parts = Partition::new(graph.order(), doc.v1, doc.v2, doc.v3)?;
    let reduced = match (doc.g0, doc.phi1, doc.phi2) {
        (None, None, None) => None,
        (Some(g0), Some(phi1), Some(phi2)) => {
            let g0 = g0.resolve(&dir)?;
            let phi1 = VertexMap::new(phi1, g0.order())?;
            let phi2 = VertexMap::new(phi2, g0.order())?;
            Some(ReducedParts { g0, phi1, phi2 })
        }
        _ => return Err(Error::usage("G0, phi1 and phi2 must be given together")),
    };
    Ok(LoadedPair {
        graph,
        phi,
        parts,
        reduced,
    })
}

/// `[{"lambda", "multiplicity"}]`, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub multiplicity: usize,
}

pub fn spectrum_report(s: &Spectrum) -> Vec<SpectrumEntry> {
    s.eigenspaces()
        .iter()
        .map(|e| SpectrumEntry {
            lambda: e.lambda,
            multiplicity: e.multiplicity(),
        })
        .collect()
}

/// Writes reals as `{:.16e}`, i.e. 17 significant digits.
struct FixedPrecision;

impl Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Canonical single-line JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // `Value` objects are BTreeMaps, which sorts the keys.
    let value: Value = serde_json::to_value(value).expect("in-memory documents serialize");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedPrecision);
    value
        .serialize(&mut ser)
        .expect("writing to a Vec cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_canonical_json(value))
}

pub fn write_graph(path: &Path, g: &LabeledGraph) -> Result<()> {
    write_json(path, &GraphDoc::from_graph(g)?)
}

/// `vertex,label,value` rows.
pub fn function_csv(f: &VertexFunction, g: &LabeledGraph) -> String {
    let mut out = String::from("vertex,label,value\n");
    for (v, value) in f.values().iter().enumerate() {
        out.push_str(&format!("{v},{},{value:.16e}\n", g.label(v)));
    }
    out
}
