use super::{MultiPoly, Var};
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination. Every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.divexact(&prev)?;
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Resultant of `p` and `q` with respect to `v`, as the Sylvester determinant.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let a = p.coefficients_in(v);
    let b = q.coefficients_in(v);
    let (dm, dn) = (a.len() - 1, b.len() - 1);
    let size = dm + dn;
    let mut rows = vec![vec![MultiPoly::zero(); size]; size];
    for i in 0..dn {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..dm {
        for (k, c) in b.iter().rev().enumerate() {
            rows[dn + i][i + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// `(-1)^(d(d-1)/2) Res(p, dp/dv) / lc(p)`.
pub fn discriminant(p: &MultiPoly, v: Var) -> Result<MultiPoly> {
    let d = p.degree(v) as u64;
    if d == 0 {
        return Err(Error::InvalidArgument(format!("polynomial has degree 0 in {v}")));
    }
    let lc = p.coefficients_in(v).pop().unwrap();
    let r = resultant(p, &p.derivative(v), v)?.divexact(&lc)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}
