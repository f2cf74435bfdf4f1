//! Exact dynamics of `f_c(x) = x^2 + c` over the rationals.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{exact_sqrt, fmt_rational, Assignment, Rational, Var};
use crate::dynatomic::DynatomicCache;
use crate::error::{Error, Result};
use crate::graph::{Portrait, PortraitGraph};

/// Largest candidate range `preper_set` will scan.
pub const PREPER_CANDIDATE_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub point: Rational,
    pub portrait: Portrait,
    /// `point, f(point), ...` up to and excluding the first repeated value.
    pub orbit: Vec<Rational>,
}

impl OrbitRecord {
    fn new(c: &Rational, point: Rational) -> Self {
        let mut orbit = vec![point.clone()];
        let mut seen: HashMap<Rational, usize> = HashMap::from([(point.clone(), 0)]);
        let mut x = point.clone();
        loop {
            x = f(c, &x);
            if let Some(&k) = seen.get(&x) {
                let portrait = Portrait::new(k as u32, (orbit.len() - k) as u32);
                return Self { point, portrait, orbit };
            }
            seen.insert(x.clone(), orbit.len());
            orbit.push(x.clone());
        }
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "point": fmt_rational(&self.point),
            "portrait": self.portrait,
            "orbit": self.orbit.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPreperSet {
    pub c: Rational,
    /// Sorted by value.
    pub points: Vec<OrbitRecord>,
    pub graph: PortraitGraph,
}

impl RationalPreperSet {
    pub fn to_json_value(&self) -> Value {
        json!({
            "c": fmt_rational(&self.c),
            "points": self.points.iter().map(OrbitRecord::to_json_value).collect::<Vec<_>>(),
            "graph": self.graph.to_json_value(),
        })
    }
}

pub fn f(c: &Rational, x: &Rational) -> Rational {
    x * x + c
}

/// `|x|` beyond the escape radius `1/2 + sqrt(1/4 + |c|)`, decided exactly:
/// equivalent to `x^2 - |x| > |c|`.
pub fn escapes(c: &Rational, x: &Rational) -> bool {
    x * x - x.abs() > c.abs()
}

/// All rational preperiodic points of `f_c`.
///
/// A point whose denominator `q` has `q^2` not dividing the denominator `b`
/// of `c` has strictly decreasing valuation at some prime along its orbit, so
/// every preperiodic point has denominator exactly `sqrt(b)`. Numerators are
/// then bounded by the escape radius.
pub fn preper_set(c: &Rational) -> Result<RationalPreperSet> {
    let Some(s) = exact_sqrt(c.denom()) else {
        return Ok(RationalPreperSet { c: c.clone(), points: Vec::new(), graph: PortraitGraph::empty() });
    };
    let a = c.numer();
    let r = (&s * &s + a.abs() * 4u32).sqrt();
    let k: BigInt = (&s + r) / 2u32;
    let span = &k * 2u32 + 1u32;
    if span > BigInt::from(PREPER_CANDIDATE_CAP) {
        return Err(Error::SizeLimit {
            what: "preperiodic candidates",
            size: u64::try_from(&span).unwrap_or(u64::MAX),
            limit: PREPER_CANDIDATE_CAP,
        });
    }
    let k = i64::try_from(&k).expect("bounded by the candidate cap");
    let mut status = vec![0u8; (2 * k + 1) as usize]; // 0 unknown, 1 preperiodic, 2 not
    let mut path: Vec<i64> = Vec::new();
    let mut on_path: HashMap<i64, ()> = HashMap::new();
    for n0 in -k..=k {
        if status[(n0 + k) as usize] != 0 {
            continue;
        }
        path.clear();
        on_path.clear();
        let mut n = BigInt::from(n0);
        let verdict = loop {
            let Some(small) = i64::try_from(&n).ok().filter(|v| v.abs() <= k) else {
                break 2;
            };
            match status[(small + k) as usize] {
                0 => {}
                known => break known,
            }
            if on_path.insert(small, ()).is_some() {
                break 1;
            }
            path.push(small);
            let (q, rem) = (&n * &n + a).div_rem(&s);
            if !rem.is_zero() {
                break 2;
            }
            n = q;
        };
        for &v in &path {
            status[(v + k) as usize] = verdict;
        }
    }
    let points: Vec<OrbitRecord> = (-k..=k)
        .filter(|&n| status[(n + k) as usize] == 1)
        .map(|n| OrbitRecord::new(c, Rational::new(n.into(), s.clone())))
        .collect();
    let graph = PortraitGraph::from_edges(points.iter().map(|p| (fmt_rational(&p.point), fmt_rational(&f(c, &p.point)))))?;
    Ok(RationalPreperSet { c: c.clone(), points, graph })
}

/// Independent search without the denominator restriction or the numerator
/// bound: every `n/d` with `1 <= d <= max_den`, `|n| <= max_num`, iterated
/// exactly. Used to cross-check [`preper_set`].
pub fn preper_points_brute(c: &Rational, max_den: u64, max_num: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=max_den {
        for n in -(max_num as i64)..=(max_num as i64) {
            if n.gcd(&(d as i64)) != 1 && !(n == 0 && d == 1) {
                continue;
            }
            let x = Rational::new(n.into(), d.into());
            if orbit_is_finite(c, &x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Whether the orbit of `x` repeats. Orbits are cut off once they leave the
/// escape radius or reach a denominator whose square does not divide that of
/// `c`; otherwise they stay in a finite set.
fn orbit_is_finite(c: &Rational, x: &Rational) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut x = x.clone();
    loop {
        let q = x.denom();
        if escapes(c, &x) || !(c.denom() % (q * q)).is_zero() {
            return false;
        }
        if !seen.insert(x.clone()) {
            return true;
        }
        x = f(c, &x);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcfCertificate {
    /// The critical orbit repeats.
    Preperiodic { portrait: Portrait, orbit: Vec<Rational> },
    /// `f^step(0)` lies beyond the escape radius.
    Escape { step: u32, value: Rational },
    /// `f^step(0)` has a denominator whose square does not divide the
    /// denominator of `c`, so some prime valuation decreases forever.
    DenominatorGrowth { step: u32, value: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcfResult {
    pub c: Rational,
    pub pcf: bool,
    pub certificate: PcfCertificate,
}

impl PcfResult {
    pub fn to_json_value(&self) -> Value {
        let cert = match &self.certificate {
            PcfCertificate::Preperiodic { portrait, orbit } => json!({
                "kind": "preperiodic",
                "portrait": portrait,
                "orbit": orbit.iter().map(fmt_rational).collect::<Vec<_>>(),
            }),
            PcfCertificate::Escape { step, value } => {
                json!({"kind": "escape", "step": step, "value": fmt_rational(value)})
            }
            PcfCertificate::DenominatorGrowth { step, value } => {
                json!({"kind": "denominator_growth", "step": step, "value": fmt_rational(value)})
            }
        };
        json!({"c": fmt_rational(&self.c), "pcf": self.pcf, "certificate": cert})
    }
}

/// Decides whether 0 is preperiodic for `f_c`. Always terminates: either the
/// denominator test fires, or all iterates are integers confined to the
/// escape radius.
pub fn is_pcf(c: &Rational) -> PcfResult {
    let b = c.denom();
    let mut orbit: Vec<Rational> = Vec::new();
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut x = Rational::zero();
    for step in 0u32.. {
        if let Some(&k) = seen.get(&x) {
            let portrait = Portrait::new(k as u32, (orbit.len() - k) as u32);
            return PcfResult { c: c.clone(), pcf: true, certificate: PcfCertificate::Preperiodic { portrait, orbit } };
        }
        let q = x.denom();
        if !(b % (q * q)).is_zero() {
            return PcfResult { c: c.clone(), pcf: false, certificate: PcfCertificate::DenominatorGrowth { step, value: x } };
        }
        if escapes(c, &x) {
            return PcfResult { c: c.clone(), pcf: false, certificate: PcfCertificate::Escape { step, value: x } };
        }
        seen.insert(x.clone(), orbit.len());
        orbit.push(x.clone());
        x = f(c, &x);
    }
    unreachable!()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PcfKind {
    /// 0 is periodic.
    Gleason,
    /// 0 is strictly preperiodic.
    Misiurewicz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcfParameter {
    pub c: Rational,
    pub kind: PcfKind,
    /// Portrait of 0 under `f_c`.
    pub portrait: Portrait,
}

/// Rational `c` that are roots of `Phi_{m,n}(0, t)` for some `m <= max_m`,
/// `n <= max_n`, each confirmed by [`is_pcf`]. Sorted by `c`.
pub fn pcf_parameters(cache: &DynatomicCache, max_m: u32, max_n: u32) -> Result<Vec<PcfParameter>> {
    let at_zero: Assignment = [(Var::x(1), Rational::zero())].into_iter().collect();
    let mut found: Vec<PcfParameter> = Vec::new();
    for n in 1..=max_n {
        for m in 0..=max_m {
            let phi = cache.gen_dynatomic(m, n)?;
            let poly = phi.to_unipoly(Var::T, &at_zero)?;
            if poly.is_zero() {
                return Err(Error::Inconsistent(format!("Phi_{{{m},{n}}}(0, t) vanishes identically")));
            }
            for c in poly.rational_roots()? {
                if found.iter().any(|p| p.c == c) {
                    continue;
                }
                let res = is_pcf(&c);
                let PcfCertificate::Preperiodic { portrait, .. } = res.certificate else {
                    return Err(Error::Inconsistent(format!("root {} of Phi_{{{m},{n}}}(0, t) is not PCF", fmt_rational(&c))));
                };
                let kind = if portrait.m == 0 { PcfKind::Gleason } else { PcfKind::Misiurewicz };
                found.push(PcfParameter { c, kind, portrait });
            }
        }
    }
    found.sort_by(|a, b| a.c.cmp(&b.c));
    Ok(found)
}

/// Smallest prime dividing `q`, provided `q` is a prime power.
fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodBound {
    pub value: BigUint,
    /// The two norms share a residue characteristic, so the bound is not
    /// guaranteed to apply.
    pub same_characteristic: bool,
}

/// `(norm_p^2 - 1)(norm_q^2 - 1)`, a bound on the exact period of a
/// periodic point for maps with good reduction at two primes of these norms.
pub fn period_bound(norm_p: u64, norm_q: u64) -> Result<PeriodBound> {
    let mut chars = [0u64; 2];
    for (slot, norm) in chars.iter_mut().zip([norm_p, norm_q]) {
        if norm < 2 {
            return Err(Error::InvalidArgument(format!("norm {norm} is less than 2")));
        }
        *slot = prime_power_base(norm)
            .ok_or_else(|| Error::InvalidArgument(format!("norm {norm} is not a prime power")))?;
    }
    let term = |q: u64| BigUint::from(q).pow(2) - 1u32;
    Ok(PeriodBound { value: term(norm_p) * term(norm_q), same_characteristic: chars[0] == chars[1] })
}

/// `(2^(2d) - 1)(3^(2d) - 1)`.
pub fn realize_bound(deg_pi: u64) -> Result<BigUint> {
    if deg_pi == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let e = u32::try_from(2 * deg_pi).map_err(|_| Error::InvalidArgument("degree too large".into()))?;
    let two = BigUint::from(2u32).pow(e) - BigUint::one();
    let three = BigUint::from(3u32).pow(e) - BigUint::one();
    Ok(two * three)
}
