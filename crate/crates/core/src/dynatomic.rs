//! Iterates of `f_t(x) = x^2 + t`, dynatomic polynomials and their
//! preperiodic generalizations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{discriminant, Assignment, MultiPoly, Rational, UniPoly, Var};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: u64 = 1024;

/// Moebius function; rejects 0.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::InvalidArgument("mobius(0) is undefined".into()));
    }
    Ok(mu(n))
}

fn mu(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// D(N): the number of points of formal period N for a generic `x^2 + c`,
/// which is also `deg_x Phi_N`. Valid for `1 <= n <= 63`.
pub fn formal_count(n: u32) -> u64 {
    assert!((1..64).contains(&n), "period out of range");
    let s: i128 = divisors(n as u64)
        .into_iter()
        .map(|d| mu(n as u64 / d) as i128 * (1i128 << d))
        .sum();
    s as u64
}

/// R(N) = D(N)/N, the number of N-cycles for a generic `x^2 + c`.
pub fn cycle_count(n: u32) -> u64 {
    formal_count(n) / n as u64
}

/// `deg_x Phi_{M,N}`.
pub fn gen_degree(m: u32, n: u32) -> u64 {
    let d = formal_count(n);
    if m == 0 {
        d
    } else {
        d << (m - 1)
    }
}

/// `Phi_N` with its degree bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynatomicTable {
    pub n: u32,
    pub phi: MultiPoly,
    /// D(N)
    pub degree_x: u64,
    /// R(N)
    pub cycles: u64,
}

fn x() -> MultiPoly {
    MultiPoly::var(Var(1))
}

fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

fn check_cap(needed: u64, cap: u64) -> Result<()> {
    if needed > cap {
        Err(Error::DegreeCap { needed, cap })
    } else {
        Ok(())
    }
}

fn pow2(n: u32) -> u64 {
    1u64.checked_shl(n).unwrap_or(u64::MAX)
}

/// Memoizes iterates and dynatomic polynomials, refusing any computation whose
/// intermediate x-degree exceeds `max_degree`.
#[derive(Debug)]
pub struct DynatomicCache {
    max_degree: u64,
    iterates: Mutex<Vec<Arc<MultiPoly>>>,
    phi: Mutex<HashMap<u32, Arc<MultiPoly>>>,
}

impl Default for DynatomicCache {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

impl DynatomicCache {
    pub fn new(max_degree: u64) -> Self {
        Self {
            max_degree,
            iterates: Mutex::new(vec![Arc::new(x())]),
            phi: Mutex::new(HashMap::new()),
        }
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    /// `f_t^n(x)` over `[t, x1]`.
    pub fn iterate(&self, n: u32) -> Result<Arc<MultiPoly>> {
        check_cap(pow2(n), self.max_degree)?;
        let mut its = self.iterates.lock().unwrap();
        while its.len() <= n as usize {
            let last = its.last().unwrap();
            let next = &(last.as_ref() * last.as_ref()) + &t();
            its.push(Arc::new(next));
        }
        Ok(its[n as usize].clone())
    }

    /// `Phi_N(x, t) = prod_{n | N} (f^n(x) - x)^{mu(N/n)}`.
    pub fn dynatomic(&self, n: u32) -> Result<Arc<MultiPoly>> {
        if n == 0 {
            return Err(Error::InvalidArgument("period must be at least 1".into()));
        }
        check_cap(pow2(n), self.max_degree)?;
        if let Some(p) = self.phi.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let mut num = MultiPoly::one();
        let mut den = Vec::new();
        for d in divisors(n as u64) {
            let factor = self.iterate(d as u32)?.as_ref() - &x();
            match mu(n as u64 / d) {
                1 => num = &num * &factor,
                -1 => den.push(factor),
                _ => {}
            }
        }
        // largest divisor factor first keeps intermediate quotients small
        for factor in den.iter().rev() {
            num = num.divexact(factor)?;
        }
        let out = Arc::new(num);
        self.phi.lock().unwrap().insert(n, out.clone());
        Ok(out)
    }

    pub fn table(&self, n: u32) -> Result<DynatomicTable> {
        let phi = self.dynatomic(n)?.as_ref().clone();
        Ok(DynatomicTable { n, phi, degree_x: formal_count(n), cycles: cycle_count(n) })
    }

    /// `Phi_{M,N}(x, t)`: `Phi_N` for `M = 0`, `Phi_N(-f^{M-1}(x), t)` otherwise.
    pub fn gen_dynatomic(&self, m: u32, n: u32) -> Result<MultiPoly> {
        if n == 0 {
            return Err(Error::InvalidArgument("period must be at least 1".into()));
        }
        let phi = self.dynatomic(n)?;
        if m == 0 {
            return Ok(phi.as_ref().clone());
        }
        check_cap(gen_degree(m, n), self.max_degree)?;
        let inner = -self.iterate(m - 1)?.as_ref();
        Ok(phi.substitute(Var(1), &inner))
    }

    /// `Phi_N(f^M(x)) / Phi_N(f^{M-1}(x))`, the defining quotient. Slower than
    /// [`gen_dynatomic`](Self::gen_dynatomic); kept as an independent check.
    pub fn gen_dynatomic_quotient(&self, m: u32, n: u32) -> Result<MultiPoly> {
        let phi = self.dynatomic(n)?;
        if m == 0 {
            return Ok(phi.as_ref().clone());
        }
        check_cap(gen_degree(m, n).saturating_mul(2), self.max_degree)?;
        let top = phi.substitute(Var(1), self.iterate(m)?.as_ref());
        let bottom = phi.substitute(Var(1), self.iterate(m - 1)?.as_ref());
        top.divexact(&bottom)
    }

    /// Checks `f^N(x) - x = prod_{n | N} Phi_n` exactly.
    pub fn verify_cycle_factorization(&self, n: u32) -> Result<bool> {
        let lhs = self.iterate(n)?.as_ref() - &x();
        let mut rhs = MultiPoly::one();
        for d in divisors(n as u64) {
            rhs = &rhs * self.dynatomic(d as u32)?.as_ref();
        }
        Ok(lhs == rhs)
    }

    /// Checks `f^{M+N}(x) - f^M(x) = prod_{m <= M} prod_{n | N} Phi_{m,n}` exactly.
    pub fn verify_preper_factorization(&self, m: u32, n: u32) -> Result<bool> {
        check_cap(pow2(m + n), self.max_degree)?;
        let lhs = self.iterate(m + n)?.as_ref() - self.iterate(m)?.as_ref();
        let mut rhs = MultiPoly::one();
        for mm in 0..=m {
            for d in divisors(n as u64) {
                rhs = &rhs * &self.gen_dynatomic(mm, d as u32)?;
            }
        }
        Ok(lhs == rhs)
    }

    /// `Phi_{M,N}(x, c)` as a polynomial in `x` over Q.
    pub fn specialize(&self, m: u32, n: u32, c: &Rational) -> Result<UniPoly> {
        let mut a = Assignment::new();
        a.insert(Var::T, c.clone());
        self.gen_dynatomic(m, n)?.to_unipoly(Var(1), &a)
    }

    /// `disc_x Phi_{M,N}(x, t)`, a polynomial in `t`.
    pub fn branch_poly(&self, m: u32, n: u32) -> Result<MultiPoly> {
        discriminant(&self.gen_dynatomic(m, n)?, Var(1)).map(|d| d.trim_vars())
    }
}

/// Process-wide cache at the default degree cap.
pub fn default_cache() -> &'static DynatomicCache {
    static CACHE: OnceLock<DynatomicCache> = OnceLock::new();
    CACHE.get_or_init(DynatomicCache::default)
}

pub fn iterate_poly(n: u32) -> Result<MultiPoly> {
    default_cache().iterate(n).map(|p| p.as_ref().clone())
}

pub fn dynatomic(n: u32) -> Result<MultiPoly> {
    default_cache().dynatomic(n).map(|p| p.as_ref().clone())
}

pub fn gen_dynatomic(m: u32, n: u32) -> Result<MultiPoly> {
    default_cache().gen_dynatomic(m, n)
}

pub fn branch_poly(m: u32, n: u32) -> Result<MultiPoly> {
    default_cache().branch_poly(m, n)
}

pub fn specialize(m: u32, n: u32, c: &Rational) -> Result<UniPoly> {
    default_cache().specialize(m, n, c)
}
