//! Equation systems for dynamical modular curves of portrait graphs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{fmt_rational, Assignment, MultiPoly, Rational, Var};
use crate::dynamics::preper_set;
use crate::dynatomic::{cycle_count, divisors, DynatomicCache};
use crate::error::{Error, Result};
use crate::graph::{
    classify, generator_image_tuples, iso_with_generators, minimal_generating_set, Attachment, GeneratorData,
    PortraitGraph,
};

/// Where an inequation comes from. Indices `i`, `j` are 1-based, matching
/// the variables `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InequationTag {
    /// `f^{M_i}(x_i) - f^{M_j + k}(x_j)`.
    DisjointOrbit { i: usize, j: usize, k: u32 },
    /// `Phi_{M_i, n}(x_i)` for a proper divisor `n` of `N_i`.
    RightPeriod { i: usize, n: u32 },
    /// `Phi_{m, N_i}(x_i)` for `m < M_i`.
    RightPreperiod { i: usize, m: u32 },
}

impl fmt::Display for InequationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DisjointOrbit { i, j, k } => write!(f, "disjoint_orbit(i={i}, j={j}, k={k})"),
            Self::RightPeriod { i, n } => write!(f, "right_period(i={i}, n={n})"),
            Self::RightPreperiod { i, m } => write!(f, "right_preperiod(i={i}, m={m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequation {
    pub tag: InequationTag,
    pub poly: MultiPoly,
}

/// Equations `Psi_i = 0` and inequations `poly != 0` in `t, x_1, .., x_n`.
/// Deserializes from the JSON emitted by [`CurveSystem::to_json_value`].
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct EquationSystem {
    pub variables: Vec<String>,
    pub equations: Vec<MultiPoly>,
    pub inequations: Vec<Inequation>,
}

impl EquationSystem {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { offset: e.column(), msg: e.to_string() })
    }

    /// Product of `deg_{x_i} Psi_i`.
    pub fn degree_product(&self) -> BigUint {
        self.equations
            .iter()
            .enumerate()
            .map(|(k, e)| BigUint::from(e.degree(Var::x(k as u32 + 1))))
            .product()
    }
}

pub const IRREDUCIBILITY_NOTE: &str = "irreducible over fields of characteristic zero (not decided here)";

#[derive(Clone, Debug)]
pub struct CurveSystem {
    pub graph: PortraitGraph,
    pub gens: GeneratorData,
    pub system: EquationSystem,
    pub pi_degree: BigUint,
    pub note: &'static str,
}

impl CurveSystem {
    pub fn to_json_value(&self) -> Value {
        json!({
            "generators": self.gens.to_json_value(&self.graph),
            "variables": self.system.variables,
            "equations": self.system.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "inequations": self.system.inequations.iter().map(|q| json!({
                "tag": q.tag,
                "poly": q.poly.to_string(),
            })).collect::<Vec<_>>(),
            "pi_degree": self.pi_degree.to_string(),
            "note": self.note,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.gens.describe(&self.graph);
        out.push_str(&format!("variables: {}\n", self.system.variables.join(", ")));
        for (k, e) in self.system.equations.iter().enumerate() {
            out.push_str(&format!("Psi_{} = {e} = 0\n", k + 1));
        }
        for q in &self.system.inequations {
            out.push_str(&format!("{} != 0    # {}\n", q.poly, q.tag));
        }
        out.push_str(&format!("deg pi = {}\n", self.pi_degree));
        out
    }
}

fn require_admissible(g: &PortraitGraph) -> Result<()> {
    let class = classify(g);
    if class.is_admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(class.to_string()))
    }
}

fn in_x(p: &MultiPoly, i: usize) -> MultiPoly {
    p.rename(Var::x(1), Var::x(i as u32))
}

/// The system for the canonical minimal generating set of `g`.
pub fn curve_system(cache: &DynatomicCache, g: &PortraitGraph) -> Result<CurveSystem> {
    require_admissible(g)?;
    let gens = minimal_generating_set(g)?;
    let system = equation_system(cache, &gens)?;
    let pi_degree = pi_degree(g)?;
    Ok(CurveSystem { graph: g.clone(), gens, system, pi_degree, note: IRREDUCIBILITY_NOTE })
}

/// Equations and tagged inequations for explicit generator data.
pub fn equation_system(cache: &DynatomicCache, gens: &GeneratorData) -> Result<EquationSystem> {
    let n = gens.len();
    let mut variables = vec![Var::T.to_string()];
    variables.extend((1..=n).map(|i| Var::x(i as u32).to_string()));
    let mut equations = Vec::with_capacity(n);
    for i in 1..=n {
        let p = gens.portraits[i - 1];
        let eq = match gens.attachments[i - 1] {
            Attachment::Disjoint => in_x(&cache.gen_dynatomic(p.m, p.n)?, i),
            Attachment::Attach { kappa, j, lambda } => {
                &in_x(cache.iterate(kappa)?.as_ref(), i) + &in_x(cache.iterate(lambda)?.as_ref(), j)
            }
        };
        equations.push(eq);
    }
    let mut inequations = Vec::new();
    let disjoint: Vec<usize> = (1..=n).filter(|&i| gens.attachments[i - 1] == Attachment::Disjoint).collect();
    for &i in &disjoint {
        for &j in disjoint.iter().filter(|&&j| j < i) {
            let (pi, pj) = (gens.portraits[i - 1], gens.portraits[j - 1]);
            if pi.n != pj.n {
                continue;
            }
            let left = in_x(cache.iterate(pi.m)?.as_ref(), i);
            for k in 0..pi.n {
                let right = in_x(cache.iterate(pj.m + k)?.as_ref(), j);
                inequations.push(Inequation { tag: InequationTag::DisjointOrbit { i, j, k }, poly: &left - &right });
            }
        }
    }
    for &i in &disjoint {
        let p = gens.portraits[i - 1];
        for d in divisors(p.n as u64).into_iter().filter(|&d| d < p.n as u64) {
            let d = d as u32;
            let poly = in_x(&cache.gen_dynatomic(p.m, d)?, i);
            inequations.push(Inequation { tag: InequationTag::RightPeriod { i, n: d }, poly });
        }
        for m in 0..p.m {
            let poly = in_x(&cache.gen_dynatomic(m, p.n)?, i);
            inequations.push(Inequation { tag: InequationTag::RightPreperiod { i, m }, poly });
        }
    }
    Ok(EquationSystem { variables, equations, inequations })
}

/// Degree of `t` on the curve of `g`, built up from the empty graph: each new
/// `N`-cycle (with its preperiod-1 preimages) contributes `N (R(N) - r)` where
/// `r` cycles of length `N` are already present, and each further pair of
/// preimages contributes 2.
pub fn pi_degree(g: &PortraitGraph) -> Result<BigUint> {
    require_admissible(g)?;
    let mut by_len: BTreeMap<u32, u64> = BTreeMap::new();
    for c in g.cycles() {
        *by_len.entry(c.len() as u32).or_default() += 1;
    }
    let mut out = BigUint::one();
    for (n, count) in by_len {
        for r in 0..count {
            out *= cycle_step(n, r)?;
        }
    }
    let deep = g.vertices().filter(|&v| g.portrait(v).m >= 2).count();
    out <<= deep / 2;
    Ok(out)
}

fn cycle_step(n: u32, r: u64) -> Result<u64> {
    let max = cycle_count(n);
    if r >= max {
        return Err(Error::NotAdmissible(format!("more than R({n}) = {max} cycles of length {n}")));
    }
    Ok(n as u64 * (max - r))
}

/// The same tower, following the generators of `gens` in order: disjoint
/// generators add a cycle and the pairs above it, attached ones add pairs.
pub fn pi_degree_via(g: &PortraitGraph, gens: &GeneratorData) -> Result<BigUint> {
    require_admissible(g)?;
    let mut inside = vec![false; g.len()];
    let mut cycles: HashMap<u32, u64> = HashMap::new();
    let mut out = BigUint::one();
    for (i, &p) in gens.generators.iter().enumerate() {
        let added: Vec<usize> = g.closure(&[p]).into_iter().filter(|&v| !inside[v]).collect();
        if gens.attachments[i] == Attachment::Disjoint {
            let n = gens.portraits[i].n;
            let r = cycles.entry(n).or_default();
            out *= cycle_step(n, *r)?;
            *r += 1;
        }
        let deep = added.iter().filter(|&&v| g.portrait(v).m >= 2).count();
        out <<= deep / 2;
        for v in added {
            inside[v] = true;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FiberDecomposition {
    /// `(cycle length, subgraph)`, by increasing cycle length.
    pub blocks: Vec<(u32, PortraitGraph)>,
    /// Blocks pairwise share no cycle length; true by construction.
    pub applicable: bool,
}

/// Groups the components of `g` by cycle length.
pub fn fiber_decomposition(g: &PortraitGraph) -> Result<FiberDecomposition> {
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for comp in g.components() {
        let n = g.portrait(comp[0]).n;
        groups.entry(n).or_default().extend(comp);
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for (n, mut vs) in groups {
        vs.sort();
        blocks.push((n, g.induced(&vs)?));
    }
    let mut lens: Vec<u32> = blocks.iter().map(|b| b.0).collect();
    lens.dedup();
    let applicable = lens.len() == blocks.len();
    Ok(FiberDecomposition { blocks, applicable })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointStatus {
    OnU1,
    OnYGOnly,
    NotOnYG,
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::OnU1 => "OnU1",
            Self::OnYGOnly => "OnYGOnly",
            Self::NotOnYG => "NotOnYG",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub status: PointStatus,
    /// 1-based indices of equations that do not vanish.
    pub nonzero_equations: Vec<usize>,
    pub vanishing_inequations: Vec<InequationTag>,
}

/// Classifies `point = (x_1, .., x_n, t)`.
pub fn check_point(sys: &EquationSystem, point: &[Rational]) -> Result<PointCheck> {
    if point.len() != sys.variables.len() {
        return Err(Error::Arity { expected: sys.variables.len(), got: point.len() });
    }
    let mut a = Assignment::new();
    let mut xs = point.iter();
    for name in &sys.variables {
        let v = Var::parse(name).ok_or_else(|| Error::UnboundVariable(name.clone()))?;
        if v != Var::T {
            a.insert(v, xs.next().unwrap().clone());
        }
    }
    a.insert(Var::T, point[point.len() - 1].clone());
    let mut nonzero_equations = Vec::new();
    for (k, e) in sys.equations.iter().enumerate() {
        if !e.eval(&a)?.is_zero() {
            nonzero_equations.push(k + 1);
        }
    }
    let mut vanishing_inequations = Vec::new();
    for q in &sys.inequations {
        if q.poly.eval(&a)?.is_zero() {
            vanishing_inequations.push(q.tag);
        }
    }
    let status = if !nonzero_equations.is_empty() {
        PointStatus::NotOnYG
    } else if !vanishing_inequations.is_empty() {
        PointStatus::OnYGOnly
    } else {
        PointStatus::OnU1
    };
    Ok(PointCheck { status, nonzero_equations, vanishing_inequations })
}

/// Rational points `(x_1, .., x_n)` over `t = c` of the open curve of `g`:
/// generator images among the rational preperiodic points that satisfy the
/// isomorphism conditions on the subgraph they generate. Every tuple is
/// re-checked against the equation system.
pub fn rational_fiber(cache: &DynatomicCache, g: &PortraitGraph, c: &Rational) -> Result<Vec<Vec<Rational>>> {
    let sys = curve_system(cache, g)?;
    let preper = preper_set(c)?;
    let h = &preper.graph;
    let value: HashMap<&str, &Rational> = preper.points.iter().map(|p| (h.name(h.vertex(&fmt_rational(&p.point)).unwrap()), &p.point)).collect();
    let mut out = Vec::new();
    for tuple in generator_image_tuples(&sys.gens, h) {
        let sub = h.induced(&h.closure(&tuple))?;
        let images: Vec<usize> = tuple.iter().map(|&v| sub.vertex(h.name(v)).unwrap()).collect();
        if !iso_with_generators(g, &sys.gens, &sub, &images)? {
            continue;
        }
        let xs: Vec<Rational> = tuple.iter().map(|&v| value[h.name(v)].clone()).collect();
        let mut point = xs.clone();
        point.push(c.clone());
        let check = check_point(&sys.system, &point)?;
        if check.status != PointStatus::OnU1 {
            return Err(Error::Inconsistent(format!(
                "fiber tuple ({}) over {} is {}",
                xs.iter().map(fmt_rational).collect::<Vec<_>>().join(", "),
                fmt_rational(c),
                check.status
            )));
        }
        out.push(xs);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::dynatomic::default_cache;

    fn g(s: &str) -> PortraitGraph {
        s.parse().unwrap()
    }

    const THREE: &str = "a -> b\nb -> c\nc -> a\nma -> b\nmb -> c\nmc -> a";

    #[test]
    fn attach_example() {
        let h = g("p -> q\nq -> p\nmp -> q\nmq -> p\nu -> mq\nmu -> mq\nv -> mp\nmv -> mp");
        let sys = curve_system(default_cache(), &h).unwrap();
        assert_eq!(sys.gens.attachments[0], Attachment::Disjoint);
        assert_eq!(sys.gens.attachments[1], Attachment::Attach { kappa: 1, j: 1, lambda: 2 });
        let f2 = default_cache().iterate(2).unwrap();
        let expected = &in_x(&MultiPoly::var(Var::x(1)).pow(2).unwrap(), 2) + &MultiPoly::var(Var::T);
        assert_eq!(sys.system.equations[1], &expected + f2.as_ref());
        assert_eq!(sys.pi_degree, BigUint::from(8u32));
        assert_eq!(pi_degree_via(&h, &sys.gens).unwrap(), sys.pi_degree);
    }

    #[test]
    fn three_cycle_fiber() {
        let h = g(THREE);
        let pts = rational_fiber(default_cache(), &h, &rat(-29, 16)).unwrap();
        assert_eq!(pts, vec![vec![rat(-7, 4)], vec![rat(-1, 4)], vec![rat(5, 4)]]);
        assert!(rational_fiber(default_cache(), &h, &rat(0, 1)).unwrap().is_empty());
        assert_eq!(pi_degree(&h).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn check_point_arity() {
        let sys = curve_system(default_cache(), &g(THREE)).unwrap();
        assert!(check_point(&sys.system, &[rat(1, 1)]).is_err());
        let on = check_point(&sys.system, &[rat(-7, 4), rat(-29, 16)]).unwrap();
        assert_eq!(on.status, PointStatus::OnU1);
        let off = check_point(&sys.system, &[rat(1, 4), rat(-29, 16)]).unwrap();
        assert_eq!(off.status, PointStatus::NotOnYG);
    }
}
