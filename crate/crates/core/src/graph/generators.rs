use std::cmp::Reverse;

use serde::Serialize;
use serde_json::{json, Value};

use super::{classify, count_isomorphisms, Portrait, PortraitGraph, Vertex};
use crate::error::{Error, Result};

/// How generator `P_i` meets the subgraph generated by `P_1 .. P_{i-1}`.
///
/// For `Attach`, `f^kappa(P_i) = -f^lambda(P_j)`, with `j` counted from 1 like
/// the variables `x_1, x_2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Attachment {
    Disjoint,
    Attach { kappa: u32, j: usize, lambda: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorData {
    pub generators: Vec<Vertex>,
    pub portraits: Vec<Portrait>,
    pub attachments: Vec<Attachment>,
}

impl GeneratorData {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json_value(&self, g: &PortraitGraph) -> Value {
        let rows: Vec<Value> = (0..self.len())
            .map(|i| {
                json!({
                    "vertex": g.name(self.generators[i]),
                    "portrait": self.portraits[i],
                    "attachment": self.attachments[i],
                })
            })
            .collect();
        Value::Array(rows)
    }

    pub fn describe(&self, g: &PortraitGraph) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            let att = match self.attachments[i] {
                Attachment::Disjoint => "disjoint".to_string(),
                Attachment::Attach { kappa, j, lambda } => format!("attach kappa={kappa} j={j} lambda={lambda}"),
            };
            out.push_str(&format!("P{} = {} {} {}\n", i + 1, g.name(self.generators[i]), self.portraits[i], att));
        }
        out
    }
}

/// Generator data for an explicit vertex list, which must generate `g` with
/// no vertex lying in the subgraph generated by the earlier ones.
pub fn generator_data_for(g: &PortraitGraph, list: &[Vertex]) -> Result<GeneratorData> {
    let mut owner: Vec<Option<usize>> = vec![None; g.len()];
    let mut out = GeneratorData { generators: Vec::new(), portraits: Vec::new(), attachments: Vec::new() };
    for (i, &p) in list.iter().enumerate() {
        if owner[p].is_some() {
            return Err(Error::NotGenerating(format!(
                "{} is generated by the vertices before it",
                g.name(p)
            )));
        }
        let orbit = g.orbit(p);
        let attachment = match orbit.iter().position(|&v| owner[v].is_some()) {
            None => Attachment::Disjoint,
            Some(kappa) => {
                let hit = orbit[kappa];
                let j = owner[hit].unwrap();
                let target = g.neg_or_self(hit);
                let lambda = g
                    .orbit(list[j])
                    .iter()
                    .position(|&v| v == target)
                    .ok_or_else(|| Error::Inconsistent(format!("no lambda for generator {}", g.name(p))))?;
                Attachment::Attach { kappa: kappa as u32, j: j + 1, lambda: lambda as u32 }
            }
        };
        for v in g.closure(&[p]) {
            if owner[v].is_none() {
                owner[v] = Some(i);
            }
        }
        out.generators.push(p);
        out.portraits.push(g.portrait(p));
        out.attachments.push(attachment);
    }
    if let Some(v) = g.vertices().find(|&v| owner[v].is_none()) {
        return Err(Error::NotGenerating(format!("{} is not covered", g.name(v))));
    }
    Ok(out)
}

/// The canonical candidate order: period ascending, then preperiod descending
/// with periodic vertices ranked together with preperiod 1 (they generate the
/// same subgraph, and the periodic one is preferred), then name.
fn canonical_order(g: &PortraitGraph) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = g.vertices().collect();
    vs.sort_by_key(|&v| {
        let p = g.portrait(v);
        (p.n, Reverse(p.m.max(1)), p.m, g.name(v).to_string())
    });
    vs
}

pub fn minimal_generating_set(g: &PortraitGraph) -> Result<GeneratorData> {
    minimal_generating_set_by(g, &canonical_order(g))
}

/// Greedy selection along `order` (a permutation of the vertices), then
/// pruning of redundant generators from the back.
pub fn minimal_generating_set_by(g: &PortraitGraph, order: &[Vertex]) -> Result<GeneratorData> {
    let class = classify(g);
    if !class.is_valid() {
        return Err(Error::NotAdmissible(class.to_string()));
    }
    let mut covered = vec![false; g.len()];
    let mut gens = Vec::new();
    for &v in order {
        if !covered[v] {
            gens.push(v);
            for w in g.closure(&[v]) {
                covered[w] = true;
            }
        }
    }
    let mut k = gens.len();
    while k > 0 {
        k -= 1;
        let rest: Vec<Vertex> = gens.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
        if g.closure(&rest).len() == g.len() {
            gens = rest;
        }
    }
    generator_data_for(g, &gens)
}

/// Conditions (A) and (B): generator images in `h` must reproduce the
/// disjointness pattern, portraits of disjoint generators, and the
/// attachment relations of `gens`.
pub fn satisfies_conditions(gens: &GeneratorData, h: &PortraitGraph, images: &[Vertex]) -> bool {
    let mut inside = vec![false; h.len()];
    for (i, &p) in images.iter().enumerate() {
        if !condition_holds(gens, h, images, &inside, i, p) {
            return false;
        }
        for w in h.closure(&[p]) {
            inside[w] = true;
        }
    }
    true
}

fn condition_holds(gens: &GeneratorData, h: &PortraitGraph, images: &[Vertex], inside: &[bool], i: usize, p: Vertex) -> bool {
    let meets = h.orbit(p).iter().any(|&v| inside[v]);
    match gens.attachments[i] {
        Attachment::Disjoint => !meets && h.portrait(p) == gens.portraits[i],
        Attachment::Attach { kappa, j, lambda } => {
            meets && h.iterate(p, kappa) == h.neg_or_self(h.iterate(images[j - 1], lambda))
        }
    }
}

/// Whether `P_i -> images[i]` extends to an isomorphism (or, when `h` is
/// nearly admissible, a near-isomorphism) from `g` onto `h`.
pub fn iso_with_generators(g: &PortraitGraph, gens: &GeneratorData, h: &PortraitGraph, images: &[Vertex]) -> Result<bool> {
    if images.len() != gens.len() {
        return Err(Error::Arity { expected: gens.len(), got: images.len() });
    }
    let class = classify(h);
    if !class.is_valid() {
        return Err(Error::NotAdmissible(class.to_string()));
    }
    let _ = g;
    Ok(satisfies_conditions(gens, h, images) && h.closure(images).len() == h.len())
}

/// Every vertex list of `h` satisfying (A) and (B) for `gens`, without
/// requiring the list to generate all of `h`. Lexicographic in vertex index.
pub fn generator_image_tuples(gens: &GeneratorData, h: &PortraitGraph) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    let mut inside = vec![false; h.len()];
    collect_images(gens, h, &mut images, &mut inside, &mut out);
    out
}

fn collect_images(gens: &GeneratorData, h: &PortraitGraph, images: &mut Vec<Vertex>, inside: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
    let i = images.len();
    if i == gens.len() {
        out.push(images.clone());
        return;
    }
    for p in h.vertices() {
        if !condition_holds(gens, h, images, inside, i, p) {
            continue;
        }
        let added: Vec<Vertex> = h.closure(&[p]).into_iter().filter(|&w| !inside[w]).collect();
        for &w in &added {
            inside[w] = true;
        }
        images.push(p);
        collect_images(gens, h, images, inside, out);
        images.pop();
        for &w in &added {
            inside[w] = false;
        }
    }
}

fn invariants_match(g: &PortraitGraph, h: &PortraitGraph) -> bool {
    let profile = |x: &PortraitGraph| {
        let mut v: Vec<(Portrait, usize)> = x.vertices().map(|v| (x.portrait(v), x.in_degree(v))).collect();
        v.sort();
        v
    };
    g.len() == h.len() && profile(g) == profile(h)
}

/// Isomorphism test. For admissible pairs this searches for generator images
/// satisfying (A) and (B); otherwise it falls back to direct enumeration.
pub fn is_isomorphic(g: &PortraitGraph, h: &PortraitGraph) -> bool {
    if !invariants_match(g, h) {
        return false;
    }
    if classify(g).is_admissible() && classify(h).is_admissible() {
        let gens = minimal_generating_set(g).expect("admissible graph has a generating set");
        let mut images = Vec::with_capacity(gens.len());
        let mut inside = vec![false; h.len()];
        search_images(&gens, h, &mut images, &mut inside)
    } else {
        count_isomorphisms(g, h, true) > 0u32.into()
    }
}

fn search_images(gens: &GeneratorData, h: &PortraitGraph, images: &mut Vec<Vertex>, inside: &mut [bool]) -> bool {
    let i = images.len();
    if i == gens.len() {
        return inside.iter().all(|&b| b);
    }
    for p in h.vertices() {
        if inside[p] || !condition_holds(gens, h, images, inside, i, p) {
            continue;
        }
        let added: Vec<Vertex> = h.closure(&[p]).into_iter().filter(|&w| !inside[w]).collect();
        for &w in &added {
            inside[w] = true;
        }
        images.push(p);
        if search_images(gens, h, images, inside) {
            return true;
        }
        images.pop();
        for &w in &added {
            inside[w] = false;
        }
    }
    false
}
