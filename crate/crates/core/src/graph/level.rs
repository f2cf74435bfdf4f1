use std::collections::BTreeMap;

use super::PortraitGraph;
use crate::dynatomic::{cycle_count, formal_count};
use crate::error::{Error, Result};

pub const FULL_LEVEL_CAP: u64 = 65536;

/// The maximal graph whose cycles all have length `n` and whose vertices have
/// preperiod at most `m`: R(n) cycles, every vertex of preperiod below `m`
/// carrying a pair of preimages.
///
/// Names: cycle vertices `c{r}_{k}` with `c{r}_{k} -> c{r}_{k+1}`, the
/// preperiodic preimage of `c{r}_{k+1}` is `t{r}_{k}`, and deeper preimages of
/// `v` are `v_0` and `v_1`.
pub fn full_level_graph(m: u32, n: u32) -> Result<PortraitGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let size = if n >= 64 || m >= 48 {
        u64::MAX
    } else {
        formal_count(n).saturating_mul(1u64 << m)
    };
    if size > FULL_LEVEL_CAP {
        return Err(Error::SizeLimit { what: "full level graph vertices", size, limit: FULL_LEVEL_CAP });
    }
    let mut edges: Vec<(String, String)> = Vec::with_capacity(size as usize);
    for r in 0..cycle_count(n) {
        let mut layer = Vec::new();
        for k in 0..n {
            let c = format!("c{r}_{k}");
            let next = format!("c{r}_{}", (k + 1) % n);
            edges.push((c.clone(), next.clone()));
            if m >= 1 {
                let t = format!("t{r}_{k}");
                edges.push((t.clone(), next));
                layer.push(t);
            }
        }
        for _ in 1..m {
            let mut deeper = Vec::with_capacity(layer.len() * 2);
            for v in &layer {
                for b in 0..2 {
                    let w = format!("{v}_{b}");
                    edges.push((w.clone(), v.clone()));
                    deeper.push(w);
                }
            }
            layer = deeper;
        }
    }
    PortraitGraph::from_edges(edges)
}

/// Largest preperiod per eventual period.
fn max_preperiods(g: &PortraitGraph) -> BTreeMap<u32, u32> {
    let mut out = BTreeMap::new();
    for v in g.vertices() {
        let p = g.portrait(v);
        let e = out.entry(p.n).or_insert(0);
        *e = (*e).max(p.m);
    }
    out
}

/// A disjoint union of full level structures with distinct cycle lengths.
pub fn is_normal(g: &PortraitGraph) -> bool {
    let levels = max_preperiods(g);
    let mut cycles: BTreeMap<u32, u64> = BTreeMap::new();
    for c in g.cycles() {
        *cycles.entry(c.len() as u32).or_default() += 1;
    }
    for (&n, &m) in &levels {
        if cycles.get(&n).copied() != Some(cycle_count(n)) {
            return false;
        }
        let want_below = if m == 0 { 1 } else { 2 };
        let ok = g.vertices().filter(|&v| g.portrait(v).n == n).all(|v| {
            let p = g.portrait(v);
            if p.m < m || (m == 0 && p.m == 0) {
                g.in_degree(v) == want_below
            } else {
                g.in_degree(v) == 0
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Union of `full_level_graph(M_i, N_i)` over the cycle lengths `N_i` of `g`,
/// with `M_i` the largest preperiod over vertices of eventual period `N_i`.
/// Vertices of the part for period `N` are prefixed `n{N}_`.
pub fn normal_closure(g: &PortraitGraph) -> Result<PortraitGraph> {
    let mut edges: Vec<(String, String)> = Vec::new();
    for (n, m) in max_preperiods(g) {
        let part = full_level_graph(m, n)?;
        edges.extend(part.edges().into_iter().map(|(a, b)| (format!("n{n}_{a}"), format!("n{n}_{b}"))));
    }
    PortraitGraph::from_edges(edges)
}
