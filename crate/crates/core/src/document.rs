//! Interchange formats: the JSON partition document, the plain-text block
//! listing, and combinatorial OFF facet lists.
//!
//! JSON is canonical. The text table is rendered from the same
//! [`PartitionDocument`] value, so both carry identical data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::DifferenceCycle;
use crate::decompose::{verify_partition, Coverage, Method, Partition, Policy};
use crate::error::{Error, Result};
use crate::skeleton::{SkeletonKind, SkeletonSpec};
use crate::surface::ComponentRecord;
use crate::symmetry::SymmetryAttestation;

pub const TOOL_VERSION: &str = concat!("xpoly ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub kind: SkeletonKind,
    pub k: u32,
    pub modulus: u32,
    pub labeling: String,
    pub policy: Policy,
    pub method: Method,
    pub tool: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSummary {
    pub classification: String,
    pub euler_characteristic: i64,
    pub closed: bool,
    pub open_edge_classes: Vec<u32>,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub cycles: Vec<DifferenceCycle>,
    pub triangles: usize,
    pub certificate: CertificateSummary,
    pub symmetry: SymmetryAttestation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Totals {
    pub triangles: u64,
    pub blocks: usize,
    pub blocks_by_class: BTreeMap<String, usize>,
    pub coverage: Coverage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub header: Header,
    pub blocks: Vec<BlockEntry>,
    pub totals: Totals,
}

/// The minimal verify input: a skeleton and its blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockList {
    pub kind: SkeletonKind,
    pub k: u32,
    #[serde(default)]
    pub policy: Option<Policy>,
    pub blocks: Vec<Vec<DifferenceCycle>>,
}

impl BlockList {
    pub fn spec(&self) -> Result<SkeletonSpec> {
        SkeletonSpec::new(self.kind, self.k)
    }

    pub fn policy(&self) -> Policy {
        self.policy.unwrap_or_else(|| Policy::default_for(self.kind))
    }

    pub fn verify(&self) -> Result<Partition> {
        verify_partition(&self.spec()?, self.policy(), &self.blocks)
    }
}

impl PartitionDocument {
    pub fn from_partition(p: &Partition) -> Self {
        let blocks = p
            .blocks
            .iter()
            .map(|b| BlockEntry {
                cycles: b.cycles.clone(),
                triangles: b.triangle_count(),
                certificate: CertificateSummary {
                    classification: b.certificate.summary(),
                    euler_characteristic: b.certificate.euler_characteristic(),
                    closed: b.certificate.is_closed(),
                    open_edge_classes: b.certificate.open_edge_classes.clone(),
                    components: b.certificate.components.clone(),
                },
                symmetry: b.symmetry,
            })
            .collect();
        PartitionDocument {
            header: Header {
                kind: p.spec.kind(),
                k: p.spec.k(),
                modulus: p.spec.modulus().get(),
                labeling: p.spec.labeling(),
                policy: p.policy,
                method: p.method,
                tool: TOOL_VERSION.to_string(),
            },
            blocks,
            totals: Totals {
                triangles: p.triangle_count() as u64,
                blocks: p.blocks.len(),
                blocks_by_class: p.blocks_by_class(),
                coverage: p.coverage,
            },
        }
    }

    pub fn block_list(&self) -> BlockList {
        BlockList {
            kind: self.header.kind,
            k: self.header.k,
            policy: Some(self.header.policy),
            blocks: self.blocks.iter().map(|b| b.cycles.clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    /// Plain-text listing, one paragraph per block.
    pub fn to_table(&self) -> String {
        let h = &self.header;
        let spec = SkeletonSpec::new(h.kind, h.k)
            .map(|s| s.to_string())
            .unwrap_or_default();
        let mut out = String::new();
        let _ = writeln!(out, "# {} (k = {}), Z_{} action", spec, h.k, h.modulus);
        let _ = writeln!(out, "# {}", h.labeling);
        let _ = writeln!(
            out,
            "# policy {}, method {}, {}",
            h.policy,
            method_name(h.method),
            h.tool
        );
        for (i, b) in self.blocks.iter().enumerate() {
            let cycles: Vec<String> = b.cycles.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out);
            let _ = writeln!(out, "Block {}: {}", i + 1, cycles.join(", "));
            let _ = writeln!(
                out,
                "  triangles {}, chi {}, {}: {}",
                b.triangles,
                b.certificate.euler_characteristic,
                if b.certificate.closed {
                    "closed"
                } else {
                    "with boundary"
                },
                b.certificate.classification
            );
            for (j, c) in b.certificate.components.iter().enumerate() {
                let orient = match c.orientable {
                    Some(true) => "orientable",
                    Some(false) => "nonorientable",
                    None => "not a surface",
                };
                let genus = c.genus.map_or("-".to_string(), |g| g.to_string());
                let _ = writeln!(
                    out,
                    "  component {}: V={} E={} F={} chi={} {} boundary={} genus={} {}",
                    j + 1,
                    c.vertices,
                    c.edges,
                    c.triangles,
                    c.euler_characteristic,
                    orient,
                    c.boundary_components,
                    genus,
                    c.classification
                );
            }
            let s = &b.symmetry;
            let _ = writeln!(
                out,
                "  symmetry: Z_{} shift-invariant={} vertex-transitive={} full-vertex-set={}",
                s.order, s.shift_invariant, s.vertex_transitive, s.vertex_set_full
            );
        }
        let t = &self.totals;
        let _ = writeln!(out);
        let by_class: Vec<String> = t.blocks_by_class.iter().map(|(c, n)| format!("{}: {}", c, n)).collect();
        let _ = writeln!(
            out,
            "Totals: {} triangles, {} blocks ({})",
            t.triangles,
            t.blocks,
            by_class.join(", ")
        );
        let _ = writeln!(
            out,
            "Coverage: {} of {} skeleton triangles, disjoint={}, complete={}",
            t.coverage.covered_triangles, t.coverage.skeleton_triangles, t.coverage.disjoint, t.coverage.complete
        );
        out
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed-form",
        Method::Search => "search",
        Method::Verified => "verified",
    }
}

/// One combinatorial OFF facet list per block.
///
/// Each block is written as `OFF`, a `V F 0` count line, and one `3 x y z`
/// line per triangle, with vertices keeping their `Z_n` labels
/// (`V = n`). No coordinate section is emitted.
pub fn to_off(p: &Partition) -> String {
    let mut out = String::new();
    let n = p.spec.modulus().get();
    let _ = writeln!(out, "# {} ; {}", p.spec, p.spec.labeling());
    for (i, b) in p.blocks.iter().enumerate() {
        let cycles: Vec<String> = b.cycles.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "# block {}: {} ; {}",
            i + 1,
            cycles.join(", "),
            b.certificate.summary()
        );
        let _ = writeln!(out, "OFF");
        let _ = writeln!(out, "{} {} 0", n, b.triangle_count());
        for t in b.complex.triangles() {
            let [x, y, z] = t.vertices();
            let _ = writeln!(out, "3 {} {} {}", x, y, z);
        }
    }
    out
}

/// Input accepted by `verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyInput {
    Document(Box<PartitionDocument>),
    Blocks(BlockList),
}

impl VerifyInput {
    pub fn block_list(&self) -> BlockList {
        match self {
            VerifyInput::Document(d) => d.block_list(),
            VerifyInput::Blocks(b) => b.clone(),
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("{} (line {}, column {})", e, e.line(), e.column()))
}

/// Parses a full partition document or a bare block list.
pub fn parse_verify_input(text: &str) -> Result<VerifyInput> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
    if value.get("header").is_some() {
        let doc: PartitionDocument = serde_json::from_str(text).map_err(parse_error)?;
        Ok(VerifyInput::Document(Box::new(doc)))
    } else {
        let list: BlockList = serde_json::from_str(text).map_err(parse_error)?;
        Ok(VerifyInput::Blocks(list))
    }
}
