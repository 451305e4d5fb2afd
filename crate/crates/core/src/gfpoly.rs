//! Polynomials over prime fields F_p (odd p) and their factorization.
//!
//! Degrees here are tiny (at most the field degree, <= 12), so the
//! factorization uses distinct-degree splitting followed by a
//! deterministic equal-degree search: candidate splitting polynomials
//! are enumerated in a fixed order instead of sampled, which keeps
//! every downstream object reproducible.

/// Arithmetic modulo a prime that fits comfortably in 64 bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }
}

/// Polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(mut coeffs: Vec<u64>, fp: Fp) -> Self {
        for c in coeffs.iter_mut() {
            *c %= fp.p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs }
    }

    pub fn zero() -> Self {
        ModPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ModPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        ModPoly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, fp: Fp) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| fp.add(self.coeff(i), other.coeff(i))).collect(), fp)
    }

    pub fn sub(&self, other: &Self, fp: Fp) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| fp.sub(self.coeff(i), other.coeff(i))).collect(), fp)
    }

    pub fn mul(&self, other: &Self, fp: Fp) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(a, b));
            }
        }
        Self::new(out, fp)
    }

    pub fn divrem(&self, other: &Self, fp: Fp) -> (Self, Self) {
        assert!(!other.is_zero());
        let dd = other.degree();
        let lead_inv = fp.inv(*other.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let qlen = (self.degree() - dd + 1).max(0) as usize;
        let mut quo = vec![0u64; qlen];
        while rem.len() as i64 - 1 >= dd {
            let k = rem.len() - 1 - dd as usize;
            let factor = fp.mul(*rem.last().unwrap(), lead_inv);
            if factor != 0 {
                quo[k] = factor;
                for (i, &c) in other.coeffs.iter().enumerate() {
                    rem[k + i] = fp.sub(rem[k + i], fp.mul(factor, c));
                }
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() as i64 - 1 < dd {
                break;
            }
        }
        (Self::new(quo, fp), ModPoly { coeffs: rem })
    }

    pub fn rem(&self, other: &Self, fp: Fp) -> Self {
        self.divrem(other, fp).1
    }

    pub fn monic(&self, fp: Fp) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead_inv = fp.inv(*self.coeffs.last().unwrap());
        Self::new(self.coeffs.iter().map(|&c| fp.mul(c, lead_inv)).collect(), fp)
    }

    pub fn gcd(&self, other: &Self, fp: Fp) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, fp);
            a = b;
            b = r;
        }
        a.monic(fp)
    }

    pub fn derivative(&self, fp: Fp) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| fp.mul(c, (i as u64 + 1) % fp.p))
                .collect(),
            fp,
        )
    }

    pub fn eval(&self, x: u64, fp: Fp) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = fp.add(fp.mul(acc, x), c);
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self, fp: Fp) -> Self {
        let mut base = self.rem(m, fp);
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fp).rem(m, fp);
            }
            base = base.mul(&base, fp).rem(m, fp);
            e >>= 1;
        }
        acc
    }

    /// Deterministic ordering key: degree, then coefficients from the
    /// constant term up.
    pub fn order_key(&self) -> (usize, Vec<u64>) {
        (self.coeffs.len(), self.coeffs.clone())
    }
}

/// Is the polynomial squarefree over F_p?
pub fn is_squarefree(f: &ModPoly, fp: Fp) -> bool {
    let d = f.derivative(fp);
    if d.is_zero() {
        return f.degree() == 0;
    }
    f.gcd(&d, fp).degree() == 0
}

/// Full factorization into monic irreducibles with multiplicities,
/// sorted by the deterministic ordering key.  Requires odd `p`.
pub fn factor(f: &ModPoly, fp: Fp) -> Vec<(ModPoly, u32)> {
    assert!(fp.p % 2 == 1, "factorization implemented for odd p only");
    assert!(f.degree() >= 1);
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic(fp), fp) {
        for irred in factor_squarefree(&part, fp) {
            out.push((irred, mult));
        }
    }
    out.sort_by(|a, b| a.0.order_key().cmp(&b.0.order_key()));
    out
}

/// Squarefree decomposition `f = prod part_i^i` (Yun's algorithm with
/// the characteristic-p fallback for p-th powers).
fn squarefree_decomposition(f: &ModPoly, fp: Fp) -> Vec<(ModPoly, u32)> {
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    collect_squarefree(f, fp, 1, &mut out);
    out
}

fn collect_squarefree(f: &ModPoly, fp: Fp, scale: u32, out: &mut Vec<(ModPoly, u32)>) {
    if f.degree() == 0 {
        return;
    }
    let deriv = f.derivative(fp);
    if deriv.is_zero() {
        // f = g(x^p); over F_p the p-th root just decimates coefficients
        let p = fp.p as usize;
        let coeffs: Vec<u64> = f.coeffs.iter().step_by(p).copied().collect();
        let g = ModPoly::new(coeffs, fp);
        collect_squarefree(&g, fp, scale * fp.p as u32, out);
        return;
    }
    let mut c = f.gcd(&deriv, fp);
    let mut w = f.divrem(&c, fp).0;
    let mut i = 1u32;
    while w.degree() > 0 {
        let y = w.gcd(&c, fp);
        let part = w.divrem(&y, fp).0;
        if part.degree() > 0 {
            out.push((part.monic(fp), i * scale));
        }
        w = y.clone();
        c = c.divrem(&y, fp).0;
        i += 1;
    }
    if c.degree() > 0 {
        // remaining p-th power content
        collect_squarefree(&c, fp, scale * fp.p as u32, out);
    }
}

/// Factors a squarefree monic polynomial into irreducibles.
fn factor_squarefree(f: &ModPoly, fp: Fp) -> Vec<ModPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    // distinct-degree
    let mut xq = ModPoly::x(); // x^(p^d) mod rest, iterated
    let mut d = 0u32;
    while rest.degree() > 0 {
        d += 1;
        if (rest.degree() as u32) < 2 * d {
            out.push(rest.monic(fp));
            break;
        }
        xq = xq.pow_mod(fp.p, &rest, fp);
        let diff = xq.sub(&ModPoly::x(), fp);
        let g = rest.gcd(&diff, fp);
        if g.degree() > 0 {
            split_equal_degree(&g, d as usize, fp, &mut out);
            rest = rest.divrem(&g, fp).0;
            xq = xq.rem(&rest, fp);
        }
    }
    out
}

/// Splits a product of distinct irreducibles of known equal degree `d`
/// by enumerating candidate polynomials in a fixed order.
fn split_equal_degree(f: &ModPoly, d: usize, fp: Fp, out: &mut Vec<ModPoly>) {
    if f.degree() as usize == d {
        out.push(f.monic(fp));
        return;
    }
    let exp = (pow_u64(fp.p, d as u32) - 1) / 2;
    // enumerate candidates deterministically: x+c, then higher degrees
    let mut counter: u64 = 0;
    loop {
        counter += 1;
        let cand = nth_poly(counter, d + 1, fp);
        if cand.degree() < 1 {
            continue;
        }
        let h = cand.pow_mod(exp, f, fp).sub(&ModPoly::one(), fp);
        let g = f.gcd(&h, fp);
        if g.degree() > 0 && g.degree() < f.degree() {
            let other = f.divrem(&g, fp).0;
            split_equal_degree(&g, d, fp, out);
            split_equal_degree(&other, d, fp, out);
            return;
        }
        assert!(counter < 1_000_000, "equal-degree split failed to terminate");
    }
}

/// The `n`-th polynomial in base-p counting, truncated to `max_len`
/// coefficients.
fn nth_poly(n: u64, max_len: usize, fp: Fp) -> ModPoly {
    let mut coeffs = Vec::with_capacity(max_len);
    let mut n = n;
    while n > 0 && coeffs.len() < max_len + 1 {
        coeffs.push(n % fp.p);
        n /= fp.p;
    }
    ModPoly::new(coeffs, fp)
}

pub fn pow_u64(base: u64, e: u32) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base).expect("norm overflow");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::{min_poly_2cos, IntPoly};

    fn from_int(p: &IntPoly, fp: Fp) -> ModPoly {
        ModPoly::new(p.mod_p(fp.p), fp)
    }

    #[test]
    fn hurwitz_mod_7_is_a_cube() {
        // x^3 - x^2 - 2x + 1 = (x + 2)^3 mod 7
        let fp = Fp::new(7);
        let f = from_int(&min_poly_2cos(7), fp);
        let factors = factor(&f, fp);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0, ModPoly::new(vec![2, 1], fp));
        assert_eq!(factors[0].1, 3);
    }

    #[test]
    fn hurwitz_mod_13_splits() {
        let fp = Fp::new(13);
        let f = from_int(&min_poly_2cos(7), fp);
        let factors = factor(&f, fp);
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|(g, e)| g.degree() == 1 && *e == 1));
        // product reassembles f
        let prod = factors
            .iter()
            .fold(ModPoly::one(), |acc, (g, _)| acc.mul(g, fp));
        assert_eq!(prod, f.monic(fp));
    }

    #[test]
    fn hurwitz_mod_3_inert() {
        let fp = Fp::new(3);
        let f = from_int(&min_poly_2cos(7), fp);
        let factors = factor(&f, fp);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.degree(), 3);
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn squarefree_detection() {
        let fp = Fp::new(7);
        assert!(!is_squarefree(&from_int(&min_poly_2cos(7), fp), fp));
        assert!(is_squarefree(&from_int(&min_poly_2cos(7), Fp::new(11)), Fp::new(11)));
    }

    #[test]
    fn quartic_3310_mod_3_irreducible() {
        let fp = Fp::new(3);
        let f = from_int(&min_poly_2cos(10), fp);
        let factors = factor(&f, fp);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.degree(), 4);
    }

    #[test]
    fn deterministic_order() {
        let fp = Fp::new(13);
        let f = from_int(&min_poly_2cos(7), fp);
        let a = factor(&f, fp);
        let b = factor(&f, fp);
        assert_eq!(a, b);
        for w in a.windows(2) {
            assert!(w[0].0.order_key() <= w[1].0.order_key());
        }
    }
}
