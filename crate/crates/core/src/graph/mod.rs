//! Finite functional graphs modelling preperiodic structures of `x^2 + c`.
//!
//! Every vertex has exactly one successor and at most two predecessors. Two
//! vertices with a common successor are each other's negation; a vertex whose
//! successor has a single predecessor is treated as its own negation.

mod aut;
mod classify;
mod generators;
mod level;

pub use aut::{aut_brute, aut_order, count_isomorphisms, AUT_BRUTE_CAP};
pub use classify::{classify, classify_with_warnings, max_cycles, Classification, InvalidReason};
pub use generators::{
    generator_data_for, generator_image_tuples, is_isomorphic, iso_with_generators, minimal_generating_set, minimal_generating_set_by,
    satisfies_conditions, Attachment, GeneratorData,
};
pub use level::{full_level_graph, is_normal, normal_closure, FULL_LEVEL_CAP};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Preperiod `m` and eventual period `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Portrait {
    pub m: u32,
    pub n: u32,
}

impl Portrait {
    pub fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl Serialize for Portrait {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.m, self.n].serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortraitGraph {
    names: Vec<String>,
    index: BTreeMap<String, Vertex>,
    succ: Vec<Vertex>,
    preds: Vec<Vec<Vertex>>,
    portraits: Vec<Portrait>,
}

/// `-?[A-Za-z0-9_]+(/[0-9]+)?`
fn valid_name(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (head, tail) = match body.split_once('/') {
        Some((h, t)) => (h, Some(t)),
        None => (body, None),
    };
    !head.is_empty()
        && head.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && tail.is_none_or(|t| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()))
}

impl PortraitGraph {
    pub fn empty() -> Self {
        Self::from_edges(Vec::<(String, String)>::new()).unwrap()
    }

    /// Builds a graph from `(source, target)` pairs. Each vertex must occur
    /// exactly once as a source; in-degrees may not exceed 2.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let edges: Vec<(String, String)> = edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let mut names: Vec<String> = edges.iter().map(|(a, _)| a.clone()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Graph(format!("vertex {} has out-degree greater than 1", w[0])));
        }
        let index: BTreeMap<String, Vertex> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut succ = vec![0; names.len()];
        let mut preds = vec![Vec::new(); names.len()];
        for (a, b) in &edges {
            let &j = index
                .get(b)
                .ok_or_else(|| Error::Graph(format!("vertex {b} has out-degree 0")))?;
            let i = index[a];
            succ[i] = j;
            preds[j].push(i);
        }
        for (v, p) in preds.iter_mut().enumerate() {
            if p.len() > 2 {
                return Err(Error::Graph(format!("vertex {} has in-degree {}", names[v], p.len())));
            }
            p.sort();
        }
        let portraits = compute_portraits(&succ);
        Ok(Self { names, index, succ, preds, portraits })
    }

    /// Parses the edge-list format: one `name -> name` per line, `#` comments.
    pub fn parse_dsl(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once("->")
                .ok_or_else(|| Error::Graph(format!("line {}: expected `name -> name`", lineno + 1)))?;
            let (a, b) = (a.trim(), b.trim());
            for name in [a, b] {
                if !valid_name(name) {
                    return Err(Error::Graph(format!("line {}: bad vertex name {name:?}", lineno + 1)));
                }
            }
            edges.push((a.to_string(), b.to_string()));
        }
        Self::from_edges(edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn succ(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }

    pub fn preds(&self, v: Vertex) -> &[Vertex] {
        &self.preds[v]
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.preds[v].len()
    }

    /// The other preimage of `succ(v)`, if there is one.
    pub fn neg(&self, v: Vertex) -> Option<Vertex> {
        self.preds[self.succ[v]].iter().copied().find(|&u| u != v)
    }

    /// `neg(v)`, or `v` itself at a collapsed preimage pair.
    pub fn neg_or_self(&self, v: Vertex) -> Vertex {
        self.neg(v).unwrap_or(v)
    }

    pub fn iterate(&self, mut v: Vertex, k: u32) -> Vertex {
        for _ in 0..k {
            v = self.succ[v];
        }
        v
    }

    pub fn portrait(&self, v: Vertex) -> Portrait {
        self.portraits[v]
    }

    /// `v, f(v), ...` up to and excluding the first repeated vertex.
    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let p = self.portraits[v];
        let mut out = Vec::with_capacity((p.m + p.n) as usize);
        let mut w = v;
        for _ in 0..p.m + p.n {
            out.push(w);
            w = self.succ[w];
        }
        out
    }

    /// Cycles, each listed from its smallest vertex along the edges, sorted.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let p = self.portraits[v];
            if p.m != 0 {
                continue;
            }
            let cyc: Vec<Vertex> = std::iter::successors(Some(v), |&w| Some(self.succ[w])).take(p.n as usize).collect();
            if cyc.iter().all(|&w| w >= v) {
                out.push(cyc);
            }
        }
        out
    }

    /// The vertex set of the smallest subgraph containing `seeds` and closed
    /// under successor and negation. Sorted.
    pub fn closure(&self, seeds: &[Vertex]) -> Vec<Vertex> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<Vertex> = seeds.to_vec();
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            stack.push(self.succ[v]);
            stack.push(self.neg_or_self(v));
        }
        self.vertices().filter(|&v| seen[v]).collect()
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for start in self.vertices() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = Vec::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in std::iter::once(&self.succ[v]).chain(&self.preds[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Subgraph on a successor-closed vertex set.
    pub fn induced(&self, vs: &[Vertex]) -> Result<Self> {
        let mut inside = vec![false; self.len()];
        for &v in vs {
            inside[v] = true;
        }
        if let Some(&v) = vs.iter().find(|&&v| !inside[self.succ[v]]) {
            return Err(Error::Graph(format!("vertex set is not closed under successor at {}", self.names[v])));
        }
        Self::from_edges(vs.iter().map(|&v| (self.names[v].clone(), self.names[self.succ[v]].clone())))
    }

    /// Disjoint union with vertex names prefixed to keep them apart.
    pub fn disjoint_union(&self, prefix: &str, other: &Self, other_prefix: &str) -> Result<Self> {
        let a = self.edges().into_iter().map(|(u, v)| (format!("{prefix}{u}"), format!("{prefix}{v}")));
        let b = other
            .edges()
            .into_iter()
            .map(|(u, v)| (format!("{other_prefix}{u}"), format!("{other_prefix}{v}")));
        Self::from_edges(a.chain(b))
    }

    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.vertices().map(|v| (self.name(v), self.name(self.succ[v]))).collect()
    }

    /// Unordered negation pairs `(p, q)` with `p < q`.
    pub fn negation_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices().filter_map(|v| self.neg(v).filter(|&w| v < w).map(|w| (v, w))).collect()
    }

    pub fn to_dsl(&self) -> String {
        self.edges().into_iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
    }

    pub fn to_json_value(&self) -> Value {
        let portraits: BTreeMap<&str, [u32; 2]> = self
            .vertices()
            .map(|v| (self.name(v), [self.portraits[v].m, self.portraits[v].n]))
            .collect();
        json!({
            "vertices": self.names,
            "edges": self.edges().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "negation": self.negation_pairs().into_iter().map(|(p, q)| [self.name(p), self.name(q)]).collect::<Vec<_>>(),
            "classification": classify(self).to_string(),
            "portraits": portraits,
        })
    }
}

impl FromStr for PortraitGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_dsl(s)
    }
}

fn compute_portraits(succ: &[Vertex]) -> Vec<Portrait> {
    let n = succ.len();
    let mut out = vec![Portrait::new(0, 0); n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 on current path, 2 done
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] == 2 {
            continue;
        }
        path.clear();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = succ[v];
        }
        let mut rest = path.len();
        if state[v] == 1 {
            let at = path.iter().position(|&w| w == v).unwrap();
            let len = (path.len() - at) as u32;
            for &w in &path[at..] {
                out[w] = Portrait::new(0, len);
                state[w] = 2;
            }
            rest = at;
        }
        for k in (0..rest).rev() {
            let w = path[k];
            let next = out[succ[w]];
            out[w] = Portrait::new(next.m + 1, next.n);
            state[w] = 2;
        }
    }
    out
}
