use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, UniPoly, Var};
use crate::error::{Error, Result};

pub type Assignment = BTreeMap<Var, Rational>;

/// Largest dense scratch array used by exact division.
const DENSE_DIVISION_LIMIT: usize = 1 << 21;

/// Products with fewer term pairs than this use the direct method.
const KRONECKER_MIN_WORK: usize = 1 << 14;

/// Largest packed operand, in 32-bit digits.
const KRONECKER_MAX_DIGITS: u128 = 1 << 27;

/// Sparse polynomial in the variables `t, x1, x2, ...` with integer coefficients.
///
/// Exponent vectors are indexed by position in `vars`, which is strictly
/// increasing. Two polynomials over different variable lists compare equal
/// when they agree after padding with zero exponents.
#[derive(Clone, Debug, Default)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Lex order with the last (highest) variable most significant.
fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn merge_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut v: Vec<Var> = a.iter().chain(b).copied().collect();
    v.sort();
    v.dedup();
    v
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigInt::one());
        Self { vars: vec![v], terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(vars: Vec<Var>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        if vars.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("variables must be strictly increasing".into()));
        }
        let mut out = Self { vars, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != out.vars.len() {
                return Err(Error::Arity { expected: out.vars.len(), got: e.len() });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Terms in display order (descending lex, highest variable first).
    pub fn terms(&self) -> Vec<(&[u32], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| lex_cmp(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no variable occurring, if it is one.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn position(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff(&self, monomial: &[(Var, u32)]) -> BigInt {
        let mut e = vec![0u32; self.vars.len()];
        for &(v, k) in monomial {
            match self.position(v) {
                Some(i) => e[i] += k,
                None if k == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: Var) -> u32 {
        match self.position(v) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Same polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &[Var]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("with_vars needs a superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0u32; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    f[map[i]] = k;
                }
                (f, c.clone())
            })
            .collect();
        Self { vars: vars.to_vec(), terms }
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> Self {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let vars = keep.iter().map(|&i| self.vars[i]).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        Self { vars, terms }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = merge_vars(&a.vars, &b.vars);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        Self { vars: self.vars.clone(), terms }
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        let (mut a, b) = if self.vars == other.vars {
            (self.clone(), std::borrow::Cow::Borrowed(other))
        } else {
            let (a, b) = Self::unify(self, other);
            (a, std::borrow::Cow::Owned(b))
        };
        for (e, c) in b.terms.iter() {
            let c = if sign { c.clone() } else { -c };
            a.add_term(e.clone(), c);
        }
        a
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        if a.is_zero() || b.is_zero() {
            return Self { vars: a.vars, terms: BTreeMap::new() };
        }
        if let Some(p) = a.mul_kronecker(&b) {
            return p;
        }
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity((a.terms.len() * b.terms.len()).min(1 << 16));
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { vars: a.vars, terms }
    }

    /// Multiplication by Kronecker substitution: both operands are packed into
    /// single integers, multiplied, and unpacked. Used only when the product
    /// is large and dense enough to benefit.
    fn mul_kronecker(&self, b: &Self) -> Option<Self> {
        let (la, lb) = (self.terms.len(), b.terms.len());
        let work = la.checked_mul(lb)?;
        if work < KRONECKER_MIN_WORK {
            return None;
        }
        let n = self.vars.len();
        let exps = || self.terms.keys().chain(b.terms.keys());
        // common exponent gcd per variable, so x^2-only polynomials pack densely
        let step: Vec<u32> = (0..n).map(|i| exps().fold(0, |g, e| g.gcd(&e[i])).max(1)).collect();
        let max_deg = |p: &Self, i: usize| p.terms.keys().map(|e| e[i] / step[i]).max().unwrap_or(0) as u128;
        let mut stride = vec![0u128; n];
        let mut slots: u128 = 1;
        for (i, st) in stride.iter_mut().enumerate() {
            *st = slots;
            slots = slots.checked_mul(max_deg(self, i) + max_deg(b, i) + 1)?;
        }
        if slots > 4 * work as u128 {
            return None;
        }
        let bits = |p: &Self| p.terms.values().map(|c| c.bits()).max().unwrap_or(0);
        let guard = 64 - (la.min(lb) as u64).leading_zeros() as u64;
        let width = (bits(self) + bits(b) + guard + 2).div_ceil(32) as usize;
        let total = slots.checked_mul(width as u128)?;
        if total > KRONECKER_MAX_DIGITS {
            return None;
        }
        let index = |e: &[u32]| -> usize { (0..n).map(|i| (e[i] / step[i]) as u128 * stride[i]).sum::<u128>() as usize };
        let pack = |p: &Self| -> BigInt {
            let len = p.terms.keys().map(|e| index(e)).max().unwrap() + 1;
            let mut pos = vec![0u32; len * width];
            let mut neg = vec![0u32; len * width];
            for (e, c) in &p.terms {
                let (sign, digits) = c.to_u32_digits();
                let dst = if sign == Sign::Minus { &mut neg } else { &mut pos };
                let at = index(e) * width;
                dst[at..at + digits.len()].copy_from_slice(&digits);
            }
            BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
        };
        let prod = pack(self) * pack(b);
        let (sign, mut digits) = prod.to_u32_digits();
        digits.resize(total as usize, 0);
        let half = BigUint::one() << (32 * width - 1);
        let full = BigInt::one() << (32 * width);
        let mut carry = false;
        let mut terms = BTreeMap::new();
        for slot in 0..slots as usize {
            let mut v = BigUint::from_slice(&digits[slot * width..(slot + 1) * width]);
            if carry {
                v += 1u32;
            }
            let d = if v >= half {
                carry = true;
                BigInt::from(v) - &full
            } else {
                carry = false;
                BigInt::from(v)
            };
            if d.is_zero() {
                continue;
            }
            let mut e = vec![0u32; n];
            let mut rem = slot as u128;
            for i in (0..n).rev() {
                e[i] = (rem / stride[i]) as u32 * step[i];
                rem %= stride[i];
            }
            terms.insert(e, if sign == Sign::Minus { -d } else { d });
        }
        Some(Self { vars: self.vars.clone(), terms })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        let mut base = self.clone();
        let mut out = Self::one().with_vars(&self.vars);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self` in Z[vars].
    pub fn divexact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (p, d) = Self::unify(self, d);
        if p.is_zero() {
            return Ok(p);
        }
        let n = p.vars.len();
        let deg_p: Vec<u32> = (0..n).map(|i| p.terms.keys().map(|e| e[i]).max().unwrap()).collect();
        let deg_d: Vec<u32> = (0..n).map(|i| d.terms.keys().map(|e| e[i]).max().unwrap()).collect();
        if deg_d.iter().zip(&deg_p).any(|(a, b)| a > b) {
            return Err(Error::NotDivisible);
        }
        let qbox: Vec<u32> = deg_p.iter().zip(&deg_d).map(|(a, b)| a - b).collect();
        let lead = d.terms.keys().max_by(|a, b| lex_cmp(a, b)).unwrap().clone();
        let lc = d.terms[&lead].clone();

        let size = deg_p.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k as usize + 1));
        let terms = match size {
            Some(size) if size <= DENSE_DIVISION_LIMIT => p.divexact_dense(&d, &deg_p, &qbox, &lead, &lc, size)?,
            _ => p.divexact_sparse(&d, &qbox, &lead, &lc)?,
        };
        Ok(Self { vars: p.vars, terms })
    }

    fn divexact_dense(
        &self,
        d: &Self,
        deg_p: &[u32],
        qbox: &[u32],
        lead: &[u32],
        lc: &BigInt,
        size: usize,
    ) -> Result<BTreeMap<Vec<u32>, BigInt>> {
        let n = deg_p.len();
        // mixed radix, last variable most significant, so flat order is lex order
        let mut stride = vec![1usize; n];
        for i in 1..n {
            stride[i] = stride[i - 1] * (deg_p[i - 1] as usize + 1);
        }
        let flat = |e: &[u32]| -> usize { e.iter().zip(&stride).map(|(&k, &s)| k as usize * s).sum() };
        let mut r: Vec<BigInt> = vec![BigInt::zero(); size];
        for (e, c) in &self.terms {
            r[flat(e)] = c.clone();
        }
        let lead_flat = flat(lead);
        let rest: Vec<(usize, &BigInt)> = d
            .terms
            .iter()
            .filter(|(e, _)| e.as_slice() != lead)
            .map(|(e, c)| (flat(e), c))
            .collect();
        let mut quot = BTreeMap::new();
        let mut s = vec![0u32; n];
        for idx in (0..size).rev() {
            if r[idx].is_zero() {
                continue;
            }
            let mut rem = idx;
            for i in (0..n).rev() {
                let k = (rem / stride[i]) as u32;
                rem %= stride[i];
                if k < lead[i] || k - lead[i] > qbox[i] {
                    return Err(Error::NotDivisible);
                }
                s[i] = k - lead[i];
            }
            let c = std::mem::take(&mut r[idx]);
            let (q, m) = c.div_rem(lc);
            if !m.is_zero() {
                return Err(Error::NotDivisible);
            }
            let base = idx - lead_flat;
            for &(off, dc) in &rest {
                r[base + off] -= &q * dc;
            }
            quot.insert(s.clone(), q);
        }
        Ok(quot)
    }

    fn divexact_sparse(&self, d: &Self, qbox: &[u32], lead: &[u32], lc: &BigInt) -> Result<BTreeMap<Vec<u32>, BigInt>> {
        let rev = |e: &[u32]| -> Vec<u32> { e.iter().rev().copied().collect() };
        let mut r: BTreeMap<Vec<u32>, BigInt> = self.terms.iter().map(|(e, c)| (rev(e), c.clone())).collect();
        let rest: Vec<(&Vec<u32>, &BigInt)> = d.terms.iter().filter(|(e, _)| e.as_slice() != lead).collect();
        let mut quot = BTreeMap::new();
        while let Some((key, c)) = r.pop_last() {
            let e = rev(&key);
            let mut s = vec![0u32; e.len()];
            for i in 0..e.len() {
                if e[i] < lead[i] || e[i] - lead[i] > qbox[i] {
                    return Err(Error::NotDivisible);
                }
                s[i] = e[i] - lead[i];
            }
            let (q, m) = c.div_rem(lc);
            if !m.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (de, dc) in &rest {
                let m: Vec<u32> = s.iter().zip(de.iter()).map(|(a, b)| a + b).rev().collect();
                let slot = r.entry(m.clone()).or_default();
                *slot -= &q * *dc;
                if slot.is_zero() {
                    r.remove(&m);
                }
            }
            quot.insert(s, q);
        }
        Ok(quot)
    }

    /// Splits into coefficients of `v^0, v^1, ...`, each free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let Some(i) = self.position(v) else {
            return vec![self.clone()];
        };
        let vars: Vec<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        let deg = self.degree(v) as usize;
        let mut out = vec![MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }; deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f.remove(i) as usize;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    /// Replaces `v` by `q`.
    pub fn substitute(&self, v: Var, q: &Self) -> Self {
        let coeffs = self.coefficients_in(v);
        let mut acc = coeffs.last().unwrap().clone();
        for c in coeffs.iter().rev().skip(1) {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Renames variable `from` to `to`.
    pub fn rename(&self, from: Var, to: Var) -> Self {
        if from == to || self.position(from).is_none() {
            return self.clone();
        }
        if self.position(to).is_some() {
            return self.substitute(from, &Self::var(to));
        }
        let mut vars = self.vars.clone();
        let i = self.position(from).unwrap();
        vars[i] = to;
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        perm.sort_by_key(|&k| vars[k]);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (perm.iter().map(|&k| e[k]).collect(), c.clone()))
            .collect();
        Self { vars: perm.iter().map(|&k| vars[k]).collect(), terms }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let Some(i) = self.position(v) else {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        };
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.terms.insert(f, c * BigInt::from(e[i]));
            }
        }
        out
    }

    fn power_table(&self, a: &Assignment, skip: Option<usize>) -> Result<Vec<Vec<Rational>>> {
        let mut tables = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            if Some(i) == skip {
                tables.push(Vec::new());
                continue;
            }
            let deg = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
            if deg == 0 {
                tables.push(vec![Rational::one()]);
                continue;
            }
            let x = a.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            let mut row = Vec::with_capacity(deg + 1);
            row.push(Rational::one());
            for k in 0..deg {
                let next = &row[k] * x;
                row.push(next);
            }
            tables.push(row);
        }
        Ok(tables)
    }

    pub fn eval(&self, a: &Assignment) -> Result<Rational> {
        let tables = self.power_table(a, None)?;
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= &tables[i][k as usize];
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Univariate polynomial in `v` after substituting the other variables.
    pub fn to_unipoly(&self, v: Var, a: &Assignment) -> Result<UniPoly> {
        let i = self.position(v);
        let tables = self.power_table(a, i)?;
        let deg = self.degree(v) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (j, &k) in e.iter().enumerate() {
                if Some(j) != i && k > 0 {
                    term *= &tables[j][k as usize];
                }
            }
            coeffs[i.map_or(0, |i| e[i] as usize)] += term;
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { offset: e.column(), msg: e.to_string() })
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = Self::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                parts.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(self.vars[i].to_string()),
                    _ => parts.push(format!("{}^{}", self.vars[i], k)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            super::parse::parse_poly(s)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
    variables: Vec<String>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms()
                .into_iter()
                .map(|(e, c)| TermJson { coeff: c.to_string(), exps: e.to_vec() })
                .collect(),
            variables: self.vars.iter().map(|v| v.to_string()).collect(),
        }
        .serialize(ser)
    }
}

/// Deserialization also accepts the text form as a plain string.
#[derive(Deserialize)]
#[serde(untagged)]
enum PolyRepr {
    Text(String),
    Json(PolyJson),
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = match PolyRepr::deserialize(de)? {
            PolyRepr::Text(s) => return super::parse::parse_poly(&s).map_err(D::Error::custom),
            PolyRepr::Json(raw) => raw,
        };
        let mut vars = Vec::with_capacity(raw.variables.len());
        for name in &raw.variables {
            vars.push(Var::parse(name).ok_or_else(|| D::Error::custom(format!("unknown variable {name}")))?);
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| D::Error::custom(format!("bad coefficient {}", t.coeff)))?;
            terms.push((t.exps, c));
        }
        MultiPoly::from_terms(vars, terms).map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $body(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &MultiPoly, b: &MultiPoly| a.add_impl(b, true));
forward_binop!(Sub, sub, |a: &MultiPoly, b: &MultiPoly| a.add_impl(b, false));
forward_binop!(Mul, mul, |a: &MultiPoly, b: &MultiPoly| a.mul_impl(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
