use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_rational, MultiPoly, Rational, Var};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        self.scale(&self.lc().recip())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic squarefree part and whether the input was already squarefree.
    pub fn squarefree_part(&self) -> (Self, bool) {
        if self.is_zero() {
            return (Self::default(), false);
        }
        let g = self.gcd(&self.derivative());
        let part = self.div_rem(&g).expect("gcd is nonzero").0.monic();
        (part, g.degree() == Some(0))
    }

    /// Discriminant, with the convention that a linear polynomial has discriminant 1.
    pub fn discriminant(&self) -> Result<Rational> {
        let (ints, scale) = self.clear_denominators()?;
        let d = ints.len() - 1;
        if d == 0 {
            return Err(Error::InvalidArgument("discriminant of a constant".into()));
        }
        let x = Var(1);
        let p = MultiPoly::from_terms(vec![x], ints.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)))?;
        let disc = super::discriminant(&p, x)?.as_constant().expect("univariate discriminant is constant");
        // disc(k p) = k^(2d-2) disc(p)
        let k = num_traits::pow(scale, 2 * d - 2);
        Ok(Rational::from_integer(disc) / k)
    }

    /// Integer coefficient vector of `k * self` for the least positive `k`
    /// making it primitive in Z[x]. Returns the vector and `k`.
    fn clear_denominators(&self) -> Result<(Vec<BigInt>, Rational)> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("zero polynomial".into()));
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in &mut ints {
            *c /= &g;
        }
        Ok((ints, Rational::new(l, g)))
    }

    /// The set of rational roots, ascending. Fails on the zero polynomial.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("zero polynomial has every rational as a root".into()));
        }
        let (sf, _) = self.squarefree_part();
        let (mut ints, _) = sf.clear_denominators()?;
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            ints.remove(0);
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let small = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
            let found = if a0 < small && an < small {
                roots_by_candidates(&ints)
            } else {
                None
            };
            match found {
                Some(r) => roots.extend(r),
                None => roots.extend(roots_by_lifting(&ints)?),
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_CANDIDATES: usize = 200_000;

fn eval_int(ints: &[BigInt], x: &Rational) -> bool {
    let mut acc = Rational::zero();
    for c in ints.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc.is_zero()
}

/// Positive divisors of `n`, assuming every prime factor is below `TRIAL_LIMIT`
/// or `n` is below its square.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Rational-root theorem: candidates ±p/q with p | a0, q | an.
fn roots_by_candidates(ints: &[BigInt]) -> Option<Vec<Rational>> {
    let ps = divisors(&ints[0]);
    let qs = divisors(ints.last().unwrap());
    if ps.len().saturating_mul(qs.len()) > MAX_CANDIDATES {
        return None;
    }
    let mut out = Vec::new();
    for q in &qs {
        for p in ps.iter() {
            if !p.gcd(q).is_one() {
                continue;
            }
            for s in [p.clone(), -p] {
                let x = Rational::new(s, q.clone());
                if eval_int(ints, &x) {
                    out.push(x);
                }
            }
        }
    }
    Some(out)
}

fn mod_poly(ints: &[BigInt], l: u64) -> Vec<u64> {
    let bl = BigInt::from(l);
    let mut v: Vec<u64> = ints.iter().map(|c| c.mod_floor(&bl).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn gcd_degree_mod(a: &[u64], b: &[u64], l: u64) -> usize {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), l - 2, l);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % l;
            let k = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[k + i] = (a[k + i] + l - c * bc % l) % l;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Lifts the roots of the primitive squarefree `ints` modulo a good prime
/// and reads off the rational roots; every candidate is checked exactly.
pub(crate) fn roots_by_lifting(ints: &[BigInt]) -> Result<Vec<Rational>> {
    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let an = ints.last().unwrap().clone();
    let deg = ints.len() - 1;
    let l = (3u64..200_000)
        .filter(|&l| is_prime_u64(l))
        .find(|&l| {
            let pm = mod_poly(ints, l);
            pm.len() == deg + 1 && gcd_degree_mod(&pm, &mod_poly(&deriv, l), l) == 0
        })
        .ok_or_else(|| Error::Inconsistent("no good prime for root lifting".into()))?;
    let pm = mod_poly(ints, l);
    let residues: Vec<u64> = (0..l)
        .filter(|&r| pm.iter().rev().fold(0u64, |acc, &c| (acc * r + c) % l) == 0)
        .collect();

    // a rational root p/q has |an * p/q| <= |an| + max |a_i|
    let bound = &an.abs() + ints.iter().map(|c| c.abs()).max().unwrap();
    let target = bound * 2u32 + 1u32;
    let horner = |coeffs: &[BigInt], x: &BigInt, m: &BigInt| -> BigInt {
        coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    };
    let mut out = Vec::new();
    for r in residues {
        let mut m = BigInt::from(l);
        let mut x = BigInt::from(r);
        while m < target {
            m = &m * &m;
            let fx = horner(ints, &x, &m);
            let dfx = horner(&deriv, &x, &m);
            let g = dfx.extended_gcd(&m);
            if !g.gcd.is_one() {
                return Err(Error::Inconsistent("derivative not invertible while lifting".into()));
            }
            x = (x - fx * g.x).mod_floor(&m);
        }
        let mut y = (&an * &x).mod_floor(&m);
        if &y * 2u32 > m {
            y -= &m;
        }
        let cand = Rational::new(y, an.clone());
        if eval_int(ints, &cand) {
            out.push(cand);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    #[test]
    fn root_examples() {
        assert_eq!(UniPoly::from_ints(&[1, -4]).rational_roots().unwrap(), vec![rat(1, 4)]);
        assert_eq!(UniPoly::from_ints(&[0, 1, 1]).rational_roots().unwrap(), vec![rat_int(-1), rat_int(0)]);
        assert!(UniPoly::from_ints(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        assert!(UniPoly::from_ints(&[5]).rational_roots().unwrap().is_empty());
        assert!(UniPoly::default().rational_roots().is_err());
    }

    #[test]
    fn squarefree_examples() {
        let p = UniPoly::new(vec![rat(1, 4), rat_int(1), rat_int(1)]);
        assert_eq!(p.squarefree_part(), (UniPoly::new(vec![rat(1, 2), rat_int(1)]), false));
        let p = UniPoly::from_ints(&[0, -1, 1]);
        assert_eq!(p.squarefree_part(), (p.clone(), true));
        let cube = UniPoly::from_ints(&[-1, 3, -3, 1]);
        assert_eq!(cube.squarefree_part(), (UniPoly::from_ints(&[-1, 1]), false));
    }

    #[test]
    fn lifting_handles_large_coefficients() {
        // (10^15 x - 7)(x + 3 * 10^14) (x^2 + 1)
        let big = BigInt::from(10u64).pow(15);
        let a = UniPoly::new(vec![rat_int(-7), Rational::from_integer(big.clone())]);
        let b = UniPoly::new(vec![Rational::from_integer(big / 10 * 3), rat_int(1)]);
        let p = a.mul(&b).mul(&UniPoly::from_ints(&[1, 0, 1]));
        let roots = p.rational_roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| p.eval(r).is_zero()));
    }

    #[test]
    fn discriminants() {
        assert_eq!(UniPoly::from_ints(&[1, 1, 1]).discriminant().unwrap(), rat_int(-3));
        let half = UniPoly::new(vec![rat(1, 4), rat_int(1), rat_int(1)]);
        assert_eq!(half.discriminant().unwrap(), rat_int(0));
        assert_eq!(UniPoly::new(vec![rat_int(1), rat(1, 2)]).discriminant().unwrap(), rat_int(1));
    }

    #[test]
    fn display() {
        let p = UniPoly::new(vec![rat(-1, 2), rat_int(0), rat_int(-3)]);
        assert_eq!(p.display_in("t"), "-3*t^2 - 1/2");
        assert_eq!(UniPoly::from_ints(&[2, 0, 1]).to_string(), "x^2 + 2");
    }
}
