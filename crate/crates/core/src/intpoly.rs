//! Integer and rational polynomials in one variable.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.
//! This module also provides the two polynomial families everything
//! else is built from: cyclotomic polynomials and the rescaled
//! Chebyshev (Dickson) family `D_m` with `D_m(z + 1/z) = z^m + z^-m`,
//! equivalently `2 cos(m t) = D_m(2 cos t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Polynomial with arbitrary-precision integer coefficients,
/// lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree -1 by convention.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division; panics if `other` does not divide `self`.
    /// Used for the cyclotomic recursion where divisibility is known.
    pub fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = QPoly::from_int(self).divrem(&QPoly::from_int(other));
        assert!(r.is_zero(), "div_exact: remainder nonzero");
        q.to_int_exact().expect("div_exact: quotient not integral")
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Reduce all coefficients modulo `p` into `0..p`.
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        let pp = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let mut r = c % &pp;
                if r.is_negative() {
                    r += &pp;
                }
                u64::try_from(r).unwrap()
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::new(vec![c.clone()]));
        }
        acc
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        QPoly {
            coeffs: p.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect(),
        }
    }

    pub fn to_int_exact(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Euclidean division: returns `(q, r)` with `self = q*other + r`.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let dd = other.degree();
        let lead = other.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); (self.degree() - dd + 1).max(0) as usize];
        while rem.len() as i64 - 1 >= dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd as usize;
            let factor = rem.last().unwrap() / &lead;
            if factor.is_zero() {
                rem.pop();
                continue;
            }
            quo[k] = factor.clone();
            for (i, c) in other.coeffs.iter().enumerate() {
                let v = &factor * c;
                rem[k + i] -= v;
            }
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    // x^n - 1 divided by the product of cyclotomic polynomials of the
    // proper divisors of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut num = IntPoly::new(num);
    for d in 1..n {
        if n % d == 0 {
            num = num.div_exact(&cyclotomic(d));
        }
    }
    num
}

/// Rescaled Chebyshev polynomial `D_m`, monic of degree `m` for `m >= 1`,
/// satisfying `D_m(z + 1/z) = z^m + z^-m` and the recurrence
/// `D_{m+1} = x*D_m - D_{m-1}` with `D_0 = 2`, `D_1 = x`.
pub fn dickson(m: u32) -> IntPoly {
    let mut prev = IntPoly::from_i64(&[2]);
    if m == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    for _ in 1..m {
        let next = IntPoly::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `2 cos(pi/n)` over the rationals, monic with
/// integer coefficients of degree `phi(2n)/2`.  Requires `n >= 2`.
///
/// Computed by folding the palindromic cyclotomic polynomial:
/// `Phi_{2n}(z) = z^d * g(z + 1/z)` with `d = phi(2n)/2`, and `g` is the
/// minimal polynomial of `zeta_{2n} + zeta_{2n}^{-1} = 2 cos(pi/n)`.
pub fn min_poly_2cos(n: u64) -> IntPoly {
    assert!(n >= 2, "min_poly_2cos requires n >= 2");
    let phi = cyclotomic(2 * n);
    let deg2 = phi.degree() as usize;
    assert!(deg2 % 2 == 0);
    let d = deg2 / 2;
    // Work with coefficients of z^(d+k) for k = -d..d.
    let mut sym: Vec<BigInt> = phi.coeffs.clone(); // index i <-> z^i
    let mut g = vec![BigInt::zero(); d + 1];
    for k in (0..=d).rev() {
        let gk = sym[d + k].clone();
        g[k] = gk.clone();
        if gk.is_zero() {
            continue;
        }
        // subtract gk * z^d * (z + 1/z)^k
        let mut binom = BigInt::one();
        for j in 0..=k {
            // coefficient C(k, j) at z^(d + k - 2j)
            sym[d + k - 2 * j] -= &gk * &binom;
            binom = binom * BigInt::from((k - j) as u64) / BigInt::from(j as u64 + 1);
        }
    }
    assert!(sym.iter().all(|c| c.is_zero()), "cyclotomic fold left a remainder");
    IntPoly::new(g)
}

/// Euler's totient function.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Prime factorization by trial division (small inputs only).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dickson_small() {
        assert_eq!(dickson(1), IntPoly::from_i64(&[0, 1]));
        assert_eq!(dickson(2), IntPoly::from_i64(&[-2, 0, 1]));
        // D_3 = x*D_2 - D_1 = x^3 - 3x
        assert_eq!(dickson(3), IntPoly::from_i64(&[0, -3, 0, 1]));
    }

    #[test]
    fn dickson_laurent_identity() {
        // D_m(z + 1/z) = z^m + z^-m as Laurent polynomials, m <= 12.
        // Multiply through by z^m: D_m(z + 1/z) * z^m = z^2m + 1.
        for m in 0..=12u32 {
            let d = dickson(m);
            // compute D_m(z + 1/z) * z^m as a plain polynomial in z
            let zz1 = IntPoly::from_i64(&[1, 0, 1]); // 1 + z^2 = z*(z + 1/z)
            let mut acc = IntPoly::zero();
            // sum c_k (z^2+1)^k z^(m-k)
            for (k, c) in d.coeffs.iter().enumerate() {
                let mut term = IntPoly::new(vec![c.clone()]);
                for _ in 0..k {
                    term = term.mul(&zz1);
                }
                let mut shifted = vec![BigInt::zero(); m as usize - k];
                shifted.extend(term.coeffs);
                acc = acc.add(&IntPoly::new(shifted));
            }
            let mut expect = vec![BigInt::zero(); 2 * m as usize + 1];
            expect[0] = BigInt::one();
            expect[2 * m as usize] += BigInt::one();
            assert_eq!(acc, IntPoly::new(expect), "m = {m}");
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(14), IntPoly::from_i64(&[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn min_poly_2cos_examples() {
        assert_eq!(min_poly_2cos(2), IntPoly::from_i64(&[0, 1]));
        assert_eq!(min_poly_2cos(3), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(min_poly_2cos(7), IntPoly::from_i64(&[1, -2, -1, 1]));
        assert_eq!(min_poly_2cos(10), IntPoly::from_i64(&[5, 0, -5, 0, 1]));
    }

    #[test]
    fn min_poly_2cos_degrees() {
        for n in 2..=50 {
            let p = min_poly_2cos(n);
            assert_eq!(p.degree() as u64, euler_phi(2 * n) / 2, "n = {n}");
            assert!(p.is_monic());
        }
    }

    #[test]
    fn qpoly_divrem_roundtrip() {
        let a = QPoly::from_int(&IntPoly::from_i64(&[3, 1, -2, 0, 5]));
        let b = QPoly::from_int(&IntPoly::from_i64(&[1, 2, 1]));
        let (q, r) = a.divrem(&b);
        let back = q.mul(&b).sub(&r.neg().neg()); // q*b + r
        let sum = QPoly::new(
            (0..a.coeffs.len())
                .map(|i| q.mul(&b).coeff(i) + r.coeff(i))
                .collect(),
        );
        assert_eq!(sum, a);
        assert!(r.degree() < b.degree());
        let _ = back;
    }
}
