use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{is_normal, PortraitGraph, Vertex};
use crate::dynatomic::{cycle_count, formal_count};
use crate::error::{Error, Result};

pub const AUT_BRUTE_CAP: usize = 16;

/// Search order: each cycle walked from its smallest vertex, then the rest by
/// increasing preperiod, so every non-initial vertex has its successor placed
/// before it. `free[i]` marks the first vertex of each cycle.
fn search_order(g: &PortraitGraph) -> (Vec<Vertex>, Vec<bool>) {
    let mut order = Vec::with_capacity(g.len());
    let mut free = Vec::with_capacity(g.len());
    for cyc in g.cycles() {
        for (k, &v) in cyc.iter().enumerate() {
            order.push(v);
            free.push(k == 0);
        }
    }
    let mut rest: Vec<Vertex> = g.vertices().filter(|&v| g.portrait(v).m > 0).collect();
    rest.sort_by_key(|&v| (g.portrait(v).m, v));
    free.extend(std::iter::repeat_n(false, rest.len()));
    order.extend(rest);
    (order, free)
}

/// Number of bijections `g -> h` commuting with the successor maps. With
/// `first_only` the search stops at the first one found.
pub fn count_isomorphisms(g: &PortraitGraph, h: &PortraitGraph, first_only: bool) -> BigUint {
    if g.len() != h.len() {
        return BigUint::zero();
    }
    let (order, free) = search_order(g);
    let mut image = vec![usize::MAX; g.len()];
    let mut used = vec![false; h.len()];
    let mut count = BigUint::zero();
    extend(g, h, &order, &free, 0, &mut image, &mut used, first_only, &mut count);
    count
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &PortraitGraph,
    h: &PortraitGraph,
    order: &[Vertex],
    free: &[bool],
    i: usize,
    image: &mut [Vertex],
    used: &mut [bool],
    first_only: bool,
    count: &mut BigUint,
) -> bool {
    if i == order.len() {
        *count += 1u32;
        return first_only;
    }
    let v = order[i];
    let want = g.portrait(v);
    let candidates: Vec<Vertex> = if free[i] {
        h.vertices().filter(|&w| h.portrait(w) == want).collect()
    } else if want.m == 0 {
        // next vertex on a cycle: forced by its predecessor on the cycle
        vec![h.succ(image[order[i - 1]])]
    } else {
        h.preds(image[g.succ(v)]).to_vec()
    };
    for w in candidates {
        if used[w] || h.portrait(w) != want || h.in_degree(w) != g.in_degree(v) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        let stop = extend(g, h, order, free, i + 1, image, used, first_only, count);
        used[w] = false;
        image[v] = usize::MAX;
        if stop {
            return true;
        }
    }
    false
}

/// Order of Aut(g) by enumeration, for graphs of at most `AUT_BRUTE_CAP` vertices.
pub fn aut_brute(g: &PortraitGraph) -> Result<BigUint> {
    if g.len() > AUT_BRUTE_CAP {
        return Err(Error::SizeLimit { what: "vertices for brute-force automorphisms", size: g.len() as u64, limit: AUT_BRUTE_CAP as u64 });
    }
    Ok(count_isomorphisms(g, g, false))
}

/// Order of Aut(g). Normal graphs use the closed form
/// `prod R! N^R (2^(2^(M-1) - 1))^D(N)`; anything else is enumerated.
pub fn aut_order(g: &PortraitGraph) -> Result<BigUint> {
    if !is_normal(g) {
        return aut_brute(g);
    }
    let mut levels: BTreeMap<u32, u32> = BTreeMap::new();
    for v in g.vertices() {
        let p = g.portrait(v);
        let e = levels.entry(p.n).or_insert(0);
        *e = (*e).max(p.m);
    }
    let mut out = BigUint::one();
    for (n, m) in levels {
        let r = cycle_count(n);
        for k in 2..=r {
            out *= k;
        }
        out *= BigUint::from(n).pow(r as u32);
        if m >= 2 {
            let swaps = ((1u64 << (m - 1)) - 1) * formal_count(n);
            out <<= swaps as usize;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::full_level_graph;

    #[test]
    fn small_orders() {
        assert_eq!(aut_order(&full_level_graph(0, 3).unwrap()).unwrap(), 18u32.into());
        assert_eq!(aut_order(&full_level_graph(0, 2).unwrap()).unwrap(), 2u32.into());
        assert_eq!(aut_brute(&full_level_graph(1, 3).unwrap()).unwrap(), 18u32.into());
        assert_eq!(aut_brute(&full_level_graph(3, 1).unwrap()).unwrap(), 128u32.into());
        assert_eq!(aut_order(&full_level_graph(3, 1).unwrap()).unwrap(), 128u32.into());
        let odd: PortraitGraph = "a -> a\nma -> a\nb -> ma\nc -> ma".parse().unwrap();
        assert_eq!(aut_order(&odd).unwrap(), 2u32.into());
        assert!(aut_brute(&full_level_graph(2, 3).unwrap()).is_err());
    }
}
