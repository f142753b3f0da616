//! File formats: the graph text format, instance JSON, and sequence JSON
//! (classic and relaxed).

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Condition, Configuration, Hypergraph};
use crate::rules::{Move, ReconfSequence, RelaxedStep, Rule};

/// Parses the graph text format:
///
/// ```text
/// graph <n> <m>        (or: hypergraph <n> <m>)
/// e <u> <v>            (rank-2 edge)
/// h <s> <v1> ... <vs>  (hyperedge, hypergraph headers only)
/// ```
///
/// `#` starts a comment; blank lines are skipped. Self-loops and duplicate
/// edges are rejected with the offending line number.
pub fn parse_graph_text(text: &str) -> Result<Hypergraph> {
    let perr = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing header line"))?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or("");
    let hyper = match kind {
        "graph" => false,
        "hypergraph" => true,
        other => {
            return Err(perr(
                header_line,
                &format!("expected 'graph' or 'hypergraph', found '{other}'"),
            ))
        }
    };
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(header_line, "missing or invalid vertex count"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(header_line, "missing or invalid edge count"))?;
    if parts.next().is_some() {
        return Err(perr(header_line, "trailing tokens after the header"));
    }

    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut seen: std::collections::BTreeSet<Vec<usize>> = Default::default();
    for (line, text) in lines {
        let mut toks = text.split_whitespace();
        let tag = toks.next().unwrap_or("");
        let edge: Vec<usize> = match tag {
            "e" => {
                let vals: Vec<usize> = toks
                    .map(|t| t.parse().map_err(|_| perr(line, "invalid vertex id")))
                    .collect::<Result<_>>()?;
                if vals.len() != 2 {
                    return Err(perr(line, "'e' lines take exactly two vertices"));
                }
                vals
            }
            "h" => {
                if !hyper {
                    return Err(perr(line, "'h' lines need a 'hypergraph' header"));
                }
                let mut vals: Vec<usize> = toks
                    .map(|t| t.parse().map_err(|_| perr(line, "invalid vertex id")))
                    .collect::<Result<_>>()?;
                if vals.is_empty() {
                    return Err(perr(line, "'h' lines need a size and the vertices"));
                }
                let size = vals.remove(0);
                if vals.len() != size {
                    return Err(perr(
                        line,
                        &format!("declared size {size} but found {} vertices", vals.len()),
                    ));
                }
                if size == 0 {
                    return Err(perr(line, "empty hyperedge"));
                }
                vals
            }
            other => return Err(perr(line, &format!("unknown line tag '{other}'"))),
        };
        for &v in &edge {
            if v >= n {
                return Err(perr(line, &format!("vertex {v} out of range (n = {n})")));
            }
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(perr(line, "self-loop"));
        }
        if !seen.insert(sorted.clone()) {
            return Err(perr(line, "duplicate edge"));
        }
        edges.push(sorted);
        if edges.len() > m {
            return Err(perr(line, "more edges than declared"));
        }
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    Hypergraph::new(n, edges)
}

/// Serializes a hypergraph in the text format; rank-2-only graphs use the
/// `graph` header.
pub fn graph_to_text(h: &Hypergraph) -> String {
    let simple = h.edges().iter().all(|e| e.len() == 2);
    let mut out = String::new();
    let kind = if simple { "graph" } else { "hypergraph" };
    out.push_str(&format!("{kind} {} {}\n", h.n(), h.edge_count()));
    for e in h.edges() {
        if e.len() == 2 {
            out.push_str(&format!("e {} {}\n", e[0], e[1]));
        } else {
            let verts: Vec<String> = e.iter().map(usize::to_string).collect();
            out.push_str(&format!("h {} {}\n", e.len(), verts.join(" ")));
        }
    }
    out
}

/// Where an instance finds its graph: inline text or a file path.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum GraphSource {
    Inline(String),
    Path { path: String },
}

/// An instance file: graph, condition, rule, endpoints, optional bound.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: GraphSource,
    pub condition: String,
    pub rule: String,
    pub start: Vec<usize>,
    pub target: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<usize>,
}

impl InstanceFile {
    pub fn new(
        h: &Hypergraph,
        condition: Condition,
        rule: &Rule,
        start: &Configuration,
        target: &Configuration,
        bound: Option<usize>,
    ) -> Self {
        Self {
            graph: GraphSource::Inline(graph_to_text(h)),
            condition: condition.tag().to_string(),
            rule: rule.to_string(),
            start: start.vertices().to_vec(),
            target: target.vertices().to_vec(),
            bound,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.canonical_json()?)?;
        Ok(())
    }

    /// The canonical serialized form; reparsing and reserializing is the
    /// identity on it.
    pub fn canonical_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Resolves the graph, reading path sources relative to `base`.
    pub fn resolve_graph(&self, base: &Path) -> Result<Hypergraph> {
        match &self.graph {
            GraphSource::Inline(text) => parse_graph_text(text),
            GraphSource::Path { path } => {
                let text = std::fs::read_to_string(base.join(path))?;
                parse_graph_text(&text)
            }
        }
    }

    pub fn condition(&self) -> Result<Condition> {
        Condition::parse(&self.condition)
    }

    pub fn rule(&self) -> Result<Rule> {
        Rule::parse(&self.rule)
    }

    pub fn start_config(&self) -> Result<Configuration> {
        Configuration::new(self.start.clone())
    }

    pub fn target_config(&self) -> Result<Configuration> {
        Configuration::new(self.target.clone())
    }
}

/// A classic sequence file: configurations plus full move pair lists
/// (stationary tokens included), so files are self-describing.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub condition: String,
    pub rule: String,
    pub configs: Vec<Vec<usize>>,
    pub moves: Vec<Vec<[usize; 2]>>,
}

impl SequenceFile {
    pub fn new(condition: Condition, rule: &Rule, seq: &ReconfSequence) -> Self {
        Self {
            condition: condition.tag().to_string(),
            rule: rule.to_string(),
            configs: seq
                .configurations
                .iter()
                .map(|c| c.vertices().to_vec())
                .collect(),
            moves: seq
                .moves
                .iter()
                .map(|m| m.pairs().iter().map(|&(a, b)| [a, b]).collect())
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        std::fs::write(path, s)?;
        Ok(())
    }

    pub fn to_sequence(&self) -> Result<ReconfSequence> {
        if self.configs.is_empty() {
            return Err(Error::SequenceStructure(
                "a sequence needs at least one configuration".into(),
            ));
        }
        let configurations = self
            .configs
            .iter()
            .map(|c| Configuration::new(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        let moves = self
            .moves
            .iter()
            .map(|m| Move::new(m.iter().map(|&[a, b]| (a, b)).collect()))
            .collect::<Result<Vec<_>>>()?;
        if moves.len() + 1 != configurations.len() {
            return Err(Error::SequenceStructure(format!(
                "{} configurations with {} moves",
                configurations.len(),
                moves.len()
            )));
        }
        Ok(ReconfSequence {
            configurations,
            moves,
        })
    }
}

/// A relaxed sequence file: endpoints plus per-move step lists, each step
/// `["J", u, v]`, `["A", v]`, or `["R", v]`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RelaxedSequenceFile {
    pub condition: String,
    pub rule: String,
    pub start: Vec<usize>,
    pub target: Vec<usize>,
    pub moves: Vec<RelaxedMoveFile>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RelaxedMoveFile {
    pub steps: Vec<Value>,
}

pub fn step_to_json(step: &RelaxedStep) -> Value {
    match *step {
        RelaxedStep::Jump(u, v) => json!(["J", u, v]),
        RelaxedStep::Add(v) => json!(["A", v]),
        RelaxedStep::Remove(v) => json!(["R", v]),
    }
}

pub fn step_from_json(value: &Value) -> Result<RelaxedStep> {
    let bad = || Error::SequenceStructure(format!("malformed relaxed step {value}"));
    let arr = value.as_array().ok_or_else(bad)?;
    let tag = arr.first().and_then(Value::as_str).ok_or_else(bad)?;
    let num = |i: usize| -> Result<usize> {
        arr.get(i)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(bad)
    };
    match (tag, arr.len()) {
        ("J", 3) => Ok(RelaxedStep::Jump(num(1)?, num(2)?)),
        ("A", 2) => Ok(RelaxedStep::Add(num(1)?)),
        ("R", 2) => Ok(RelaxedStep::Remove(num(1)?)),
        _ => Err(bad()),
    }
}

impl RelaxedSequenceFile {
    pub fn new(
        start: &Configuration,
        target: &Configuration,
        moves: &[Vec<RelaxedStep>],
    ) -> Self {
        Self {
            condition: Condition::VertexCover.tag().to_string(),
            rule: Rule::Relaxed.to_string(),
            start: start.vertices().to_vec(),
            target: target.vertices().to_vec(),
            moves: moves
                .iter()
                .map(|m| RelaxedMoveFile {
                    steps: m.iter().map(step_to_json).collect(),
                })
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        std::fs::write(path, s)?;
        Ok(())
    }

    pub fn to_moves(&self) -> Result<Vec<Vec<RelaxedStep>>> {
        self.moves
            .iter()
            .map(|m| m.steps.iter().map(step_from_json).collect())
            .collect()
    }
}
