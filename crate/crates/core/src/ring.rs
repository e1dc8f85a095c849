//! Exact arithmetic in the cyclotomic integers `Z[ζ]`, `ζ` a primitive `N`-th
//! root of unity, stored as coefficient vectors modulo the cyclotomic
//! polynomial `Φ_N`.
//!
//! Only the operations needed to act with simple reflections on the
//! contragredient geometric representation are provided.

use crate::error::Error;

/// `Z[x] / Φ_N(x)` with `Φ_N` monic of degree `φ(N)`.
#[derive(Debug, Clone)]
pub(crate) struct CyclotomicRing {
    order: usize,
    /// Coefficients of `Φ_N`, lowest degree first, leading 1 included.
    modulus: Vec<i64>,
}

impl CyclotomicRing {
    pub(crate) fn new(order: usize) -> Self {
        assert!(order >= 1);
        Self {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub(crate) fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// `ζ^k` reduced modulo `Φ_N`.
    pub(crate) fn root_power(&self, k: usize) -> Vec<i64> {
        let mut poly = vec![0i64; k % self.order + 1];
        poly[k % self.order] = 1;
        self.reduce(poly)
    }

    pub(crate) fn constant(&self, c: i64) -> Vec<i64> {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        v
    }

    fn reduce(&self, mut poly: Vec<i64>) -> Vec<i64> {
        let d = self.degree();
        for top in (d..poly.len()).rev() {
            let c = poly[top];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                poly[top - d + j] -= c * m;
            }
        }
        poly.resize(d, 0);
        poly
    }

    /// `acc += a * b` in the ring, with overflow detection.
    pub(crate) fn mul_add(&self, acc: &mut [i64], a: &[i64], b: &[i64]) -> Result<(), Error> {
        let d = self.degree();
        let mut prod = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as i128 * y as i128;
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                prod[top - d + j] -= c * m as i128;
            }
        }
        for (slot, &p) in acc.iter_mut().zip(&prod[..d]) {
            let v = *slot as i128 + p;
            *slot = i64::try_from(v).map_err(|_| Error::CoefficientOverflow)?;
        }
        Ok(())
    }

    /// Numerical value of an element, taking `ζ = exp(2πi/N)`. The result is
    /// real for the elements this crate produces.
    #[cfg(test)]
    pub(crate) fn evaluate(&self, a: &[i64]) -> f64 {
        let step = 2.0 * std::f64::consts::PI / self.order as f64;
        a.iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * (step * k as f64).cos())
            .sum()
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &m) in den.iter().enumerate() {
            rem[i + j] -= c * m;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients of `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n - 1 divided by every Φ_d, d | n, d < n
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
    }
    poly
}
