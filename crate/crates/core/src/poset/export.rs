use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::complexes::ComplexJson;
use crate::session::Session;
use crate::silting::{to_stau_pair, SiltingObject};
use crate::Result;

use super::{HasseEdge, HassePoset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StauJson {
    pub module_dimvec: Vec<usize>,
    pub proj_part: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectJson {
    pub summands: Vec<usize>,
    pub stau: StauJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseJson {
    pub algebra: String,
    pub fingerprint: String,
    pub prime: u32,
    pub truncated: bool,
    /// Defining data of every summand ID used below.
    pub complexes: BTreeMap<usize, ComplexJson>,
    pub vertices: Vec<ObjectJson>,
    pub edges: Vec<HasseEdge>,
}

pub fn object_json(s: &Session, t: &SiltingObject) -> Result<ObjectJson> {
    let p = to_stau_pair(s, t)?;
    let mut dims = vec![0; s.rank()];
    for &m in &p.modules {
        for (d, x) in dims.iter_mut().zip(s.modules().get(m).dims()) {
            *d += x;
        }
    }
    Ok(ObjectJson {
        summands: t.summands().to_vec(),
        stau: StauJson {
            module_dimvec: dims,
            proj_part: p.projectives,
        },
    })
}

pub fn hasse_json(s: &Session, h: &HassePoset) -> Result<HasseJson> {
    let a = s.algebra();
    let mut complexes = BTreeMap::new();
    for t in &h.vertices {
        for &id in t.summands() {
            complexes
                .entry(id)
                .or_insert_with(|| ComplexJson::from_complex(a, &s.complex(id)));
        }
    }
    Ok(HasseJson {
        algebra: a.name().to_string(),
        fingerprint: a.fingerprint(),
        prime: a.field().modulus(),
        truncated: h.truncated,
        complexes,
        vertices: h.vertices.iter().map(|t| object_json(s, t)).collect::<Result<_>>()?,
        edges: h.edges.clone(),
    })
}

fn dimvec(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Graphviz rendering; vertices are labelled by the dimension vector of the
/// module part and the projective part of the support τ-tilting pair.
pub fn hasse_dot(s: &Session, h: &HassePoset) -> Result<String> {
    let a = s.algebra();
    let mut out = String::new();
    writeln!(out, "digraph hasse {{").unwrap();
    writeln!(
        out,
        "  graph [algebra=\"{}\", fingerprint=\"{}\", prime={}, truncated={}];",
        a.name(),
        a.fingerprint(),
        a.field().modulus(),
        h.truncated
    )
    .unwrap();
    for (i, t) in h.vertices.iter().enumerate() {
        let o = object_json(s, t)?;
        let proj: Vec<String> = o.stau.proj_part.iter().map(|&q| a.vertex_labels()[q].clone()).collect();
        writeln!(
            out,
            "  n{i} [label=\"{} | P[{}]\"];",
            dimvec(&o.stau.module_dimvec),
            proj.join(",")
        )
        .unwrap();
    }
    for e in &h.edges {
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.removed).unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
