//! Instance files and decision reports.
//!
//! Two instance formats are accepted, told apart by the first non-blank
//! character:
//!
//! * a JSON document (`{` first):
//!   `{"vertex_count": 3, "edges": [{"u": 0, "v": 1, "planar": true}]}`
//!   with optional `name`, `seed` and `generator` fields;
//! * a plain edge list, one `u v fixed|free` per line, where `fixed` marks a
//!   constrained edge. Blank lines and `#` comments are skipped and the
//!   vertex count is one more than the largest endpoint.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::decider::{decide, verify_certificate, Answer, DecideError, Decision, MoveSet};
use crate::drawing::{ConvexDrawing, DrawingError};
use crate::graph::{build_graph, EdgeSubset, Graph, GraphError};

pub const TOOL_NAME: &str = "partplan";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    InvalidEdgeLine { line: usize, source: GraphError },
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Invalid(#[from] GraphError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentEdge {
    pub u: usize,
    pub v: usize,
    /// Whether the edge must be drawn crossing-free.
    pub planar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub vertex_count: usize,
    pub edges: Vec<DocumentEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl InstanceDocument {
    pub fn from_instance(g: &Graph, f: &EdgeSubset) -> Self {
        InstanceDocument {
            vertex_count: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| DocumentEdge {
                    u: edge.lo,
                    v: edge.hi,
                    planar: f.contains(e),
                })
                .collect(),
            name: None,
            seed: None,
            generator: None,
        }
    }

    pub fn to_instance(&self) -> Result<(Graph, EdgeSubset), GraphError> {
        let list: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let flags: Vec<_> = self.edges.iter().map(|e| e.planar).collect();
        build_graph(self.vertex_count, &list, &flags)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance documents always serialize");
        s.push('\n');
        s
    }
}

/// Parses either instance format into a document, without graph validation.
pub fn parse_document(text: &str) -> Result<InstanceDocument, ParseError> {
    if text.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [u, v, kind] = fields[..] else {
            return Err(ParseError::Syntax {
                line,
                message: format!("expected `u v fixed|free`, found {} fields", fields.len()),
            });
        };
        let vertex = |t: &str| {
            t.parse::<usize>().map_err(|_| ParseError::Syntax {
                line,
                message: format!("`{t}` is not a vertex index"),
            })
        };
        let planar = match kind {
            "fixed" => true,
            "free" => false,
            other => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("`{other}` is neither `fixed` nor `free`"),
                })
            }
        };
        edges.push(DocumentEdge {
            u: vertex(u)?,
            v: vertex(v)?,
            planar,
        });
        lines.push(line);
    }
    let vertex_count = edges.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0);
    let doc = InstanceDocument {
        vertex_count,
        edges,
        name: None,
        seed: None,
        generator: None,
    };
    // attach edge-list line numbers to validation failures
    if let Err(source) = doc.to_instance() {
        if let Some(e) = source.edge() {
            return Err(ParseError::InvalidEdgeLine { line: lines[e], source });
        }
        return Err(source.into());
    }
    Ok(doc)
}

pub fn parse_instance(text: &str) -> Result<(Graph, EdgeSubset), ParseError> {
    Ok(parse_document(text)?.to_instance()?)
}

/// Plain edge-list form of an instance.
pub fn emit_edge_list(g: &Graph, f: &EdgeSubset) -> String {
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| format!("{} {} {}\n", edge.lo, edge.hi, if f.contains(e) { "fixed" } else { "free" }))
        .collect()
}

/// `sha256:` digest of the instance content (vertex count, edges in order,
/// constraint flags); metadata does not contribute.
pub fn instance_digest(g: &Graph, f: &EdgeSubset) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("{}\n", g.vertex_count()));
    for (e, edge) in g.edges().iter().enumerate() {
        hasher.update(format!("{} {} {}\n", edge.lo, edge.hi, u8::from(f.contains(e))));
    }
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    pub num_equations: usize,
    pub num_variables_used: usize,
    pub num_variables_nominal: usize,
    pub rank: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateMove {
    pub edge: [usize; 2],
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionReport {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub answer: String,
    /// Cyclic vertex order of the starting drawing the certificate refers to.
    pub order: Vec<usize>,
    pub stats: ReportStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateMove>>,
}

impl DecisionReport {
    pub fn new(g: &Graph, f: &EdgeSubset, d: &Decision) -> Self {
        DecisionReport {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            input_digest: instance_digest(g, f),
            answer: d.answer.to_string(),
            order: d.drawing.cyclic_order().to_vec(),
            stats: ReportStats {
                num_equations: d.stats.num_equations,
                num_variables_used: d.stats.num_variables_used,
                num_variables_nominal: d.stats.num_variables_nominal,
                rank: d.stats.rank,
                elapsed_ms: d.stats.elapsed.as_secs_f64() * 1e3,
            },
            certificate: d.certificate.as_ref().map(|moves| {
                moves
                    .iter()
                    .map(|(e, v)| {
                        let edge = g.edge(e);
                        CertificateMove {
                            edge: [edge.lo, edge.hi],
                            vertex: v,
                        }
                    })
                    .collect()
            }),
        }
    }
}

pub fn emit_report(report: &DecisionReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<DecisionReport, ParseError> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("report belongs to a different instance ({report}, instance is {instance})")]
    DigestMismatch { report: String, instance: String },
    #[error("unknown answer `{0}`")]
    UnknownAnswer(String),
    #[error("answer and certificate disagree: {0}")]
    Malformed(&'static str),
    #[error("certificate names edge {{{0}, {1}}}, which is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("invalid order: {0}")]
    Order(#[from] DrawingError),
    #[error("invalid certificate: {0}")]
    Certificate(#[from] crate::decider::CertificateError),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// Re-checks a report against its instance. YES reports are confirmed by
/// checking the certificate; NO reports by deciding again from the recorded
/// order. Returns whether the recorded answer holds.
pub fn verify_report(g: &Graph, f: &EdgeSubset, report: &DecisionReport) -> Result<bool, VerifyError> {
    let digest = instance_digest(g, f);
    if report.input_digest != digest {
        return Err(VerifyError::DigestMismatch {
            report: report.input_digest.clone(),
            instance: digest,
        });
    }
    let drawing = ConvexDrawing::new(g.vertex_count(), report.order.clone())?;
    match (report.answer.as_str(), &report.certificate) {
        ("YES", Some(moves)) => {
            let set = moves
                .iter()
                .map(|mv| {
                    g.find_edge(mv.edge[0], mv.edge[1])
                        .map(|e| (e, mv.vertex))
                        .ok_or(VerifyError::UnknownEdge(mv.edge[0], mv.edge[1]))
                })
                .collect::<Result<MoveSet, _>>()?;
            Ok(verify_certificate(g, f, &drawing, &set)?)
        }
        ("YES", None) => Err(VerifyError::Malformed("YES without a certificate")),
        ("NO", Some(_)) => Err(VerifyError::Malformed("NO with a certificate")),
        ("NO", None) => Ok(decide(g, f, Some(&drawing))?.answer == Answer::No),
        (other, _) => Err(VerifyError::UnknownAnswer(other.to_string())),
    }
}
