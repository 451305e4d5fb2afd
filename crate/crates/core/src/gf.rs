//! Finite fields `F_q = F_p[x]/(g)` of odd characteristic, with `q` at
//! most a few thousand.  Elements are fixed-size coefficient arrays;
//! square roots and subfield embeddings are found by deterministic
//! enumeration, which is exact and plenty fast at these sizes.

use crate::gfpoly::{pow_u64, Fp, ModPoly};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub const MAX_DEG: usize = 4;

static GF_ID: AtomicU64 = AtomicU64::new(1);

/// A finite field of odd characteristic `p` and degree `f <= MAX_DEG`.
#[derive(Debug)]
pub struct GFq {
    pub fp: Fp,
    pub f: usize,
    /// Monic irreducible defining polynomial over `F_p`.
    pub defining: ModPoly,
    pub q: u64,
    pub id: u64,
}

/// Element of a `GFq`, as coefficients of `1, x, .., x^(f-1)` padded
/// with zeros.  The owning field is passed to operations explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GFqElem {
    pub c: [u64; MAX_DEG],
}

impl GFq {
    pub fn new(p: u64, defining: ModPoly) -> Arc<Self> {
        assert!(p % 2 == 1 && p > 2, "odd characteristic required");
        let f = defining.degree().max(1) as usize;
        assert!(f <= MAX_DEG, "field degree {f} exceeds the supported maximum");
        assert_eq!(*defining.coeffs.last().unwrap(), 1, "defining polynomial must be monic");
        Arc::new(GFq {
            fp: Fp::new(p),
            f,
            defining,
            q: pow_u64(p, f as u32),
            id: GF_ID.fetch_add(1, Ordering::Relaxed),
        })
    }

    /// Prime field `F_p`.
    pub fn prime_field(p: u64) -> Arc<Self> {
        Self::new(p, ModPoly { coeffs: vec![0, 1] })
    }

    pub fn zero(&self) -> GFqElem {
        GFqElem::default()
    }

    pub fn one(&self) -> GFqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> GFqElem {
        let mut e = GFqElem::default();
        e.c[0] = n % self.fp.p;
        e
    }

    pub fn is_zero(&self, a: &GFqElem) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        let mut out = GFqElem::default();
        for i in 0..self.f {
            out.c[i] = self.fp.add(a.c[i], b.c[i]);
        }
        out
    }

    pub fn sub(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        let mut out = GFqElem::default();
        for i in 0..self.f {
            out.c[i] = self.fp.sub(a.c[i], b.c[i]);
        }
        out
    }

    pub fn neg(&self, a: &GFqElem) -> GFqElem {
        let mut out = GFqElem::default();
        for i in 0..self.f {
            out.c[i] = self.fp.neg(a.c[i]);
        }
        out
    }

    pub fn mul(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        let f = self.f;
        if f == 1 {
            let mut out = GFqElem::default();
            out.c[0] = self.fp.mul(a.c[0], b.c[0]);
            return out;
        }
        let mut conv = [0u64; 2 * MAX_DEG - 1];
        for i in 0..f {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..f {
                if b.c[j] != 0 {
                    conv[i + j] = self.fp.add(conv[i + j], self.fp.mul(a.c[i], b.c[j]));
                }
            }
        }
        // reduce by the monic defining polynomial
        for k in (f..2 * f - 1).rev() {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            conv[k] = 0;
            for i in 0..f {
                let gi = self.defining.coeff(i);
                if gi != 0 {
                    conv[k - f + i] = self.fp.sub(conv[k - f + i], self.fp.mul(c, gi));
                }
            }
        }
        let mut out = GFqElem::default();
        out.c[..f].copy_from_slice(&conv[..f]);
        out
    }

    pub fn pow(&self, a: &GFqElem, mut e: u64) -> GFqElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GFqElem) -> GFqElem {
        assert!(!self.is_zero(a), "inverse of zero");
        // q is tiny; a^(q-2) is simplest and branch-free
        self.pow(a, self.q - 2)
    }

    /// Canonical ordering key: coefficients from the highest power down.
    pub fn key(&self, a: &GFqElem) -> [u64; MAX_DEG] {
        let mut k = [0u64; MAX_DEG];
        for i in 0..self.f {
            k[i] = a.c[self.f - 1 - i];
        }
        k
    }

    /// The canonical representative of `{a, -a}` (smaller key).
    pub fn canon_sign(&self, a: &GFqElem) -> GFqElem {
        let n = self.neg(a);
        if self.key(&n) < self.key(a) {
            n
        } else {
            *a
        }
    }

    /// Packs an element into a single integer `sum c_i p^i`.
    pub fn encode(&self, a: &GFqElem) -> u64 {
        let mut acc = 0;
        for i in (0..self.f).rev() {
            acc = acc * self.fp.p + a.c[i];
        }
        acc
    }

    pub fn decode(&self, mut n: u64) -> GFqElem {
        let mut e = GFqElem::default();
        for i in 0..self.f {
            e.c[i] = n % self.fp.p;
            n /= self.fp.p;
        }
        e
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = GFqElem> + '_ {
        (0..self.q).map(move |n| self.decode(n))
    }

    /// Deterministic square root: the canonical representative of the
    /// two roots, or `None` for a non-residue.
    pub fn sqrt(&self, a: &GFqElem) -> Option<GFqElem> {
        if self.is_zero(a) {
            return Some(*a);
        }
        for z in self.elements() {
            if self.mul(&z, &z) == *a {
                return Some(self.canon_sign(&z));
            }
        }
        None
    }

    /// Embeds an element of this field as a polynomial evaluated at a
    /// fixed root of the defining polynomial in a larger field.
    pub fn eval_in(&self, a: &GFqElem, big: &GFq, root: &GFqElem) -> GFqElem {
        let mut acc = big.zero();
        for i in (0..self.f).rev() {
            acc = big.mul(&acc, root);
            acc = big.add(&acc, &big.from_u64(a.c[i]));
        }
        acc
    }

    /// Finds the canonical root of this field's defining polynomial in
    /// a larger field, giving the embedding `F_q -> F_Q`.
    pub fn embedding_root(&self, big: &GFq) -> Option<GFqElem> {
        assert_eq!(self.fp.p, big.fp.p);
        big.elements().find(|z| {
            let mut acc = big.zero();
            for i in (0..=self.f).rev() {
                acc = big.mul(&acc, z);
                acc = big.add(&acc, &big.from_u64(self.defining.coeff(i)));
            }
            big.is_zero(&acc)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::factor;

    #[test]
    fn f7_sqrt() {
        let gf = GFq::prime_field(7);
        // sqrt(4) = 2 canonically (2 vs 5; 2 has the smaller key)
        let four = gf.from_u64(4);
        assert_eq!(gf.sqrt(&four), Some(gf.from_u64(2)));
        // 3 is a non-residue mod 7
        assert_eq!(gf.sqrt(&gf.from_u64(3)), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let fp = Fp::new(5);
        // x^2 - 2 is irreducible mod 5
        let gf = GFq::new(5, ModPoly::new(vec![3, 0, 1], fp));
        assert_eq!(gf.q, 25);
        for a in gf.elements().skip(1) {
            let inv = gf.inv(&a);
            assert_eq!(gf.mul(&a, &inv), gf.one());
        }
    }

    #[test]
    fn extension_arithmetic_f81() {
        let fp = Fp::new(3);
        // x^4 + x^2 + 2 irreducible mod 3 (the (3,3,10) residue field)
        let defining = ModPoly::new(
            crate::intpoly::min_poly_2cos(10).mod_p(3),
            fp,
        );
        let gf = GFq::new(3, defining);
        assert_eq!(gf.q, 81);
        // Fermat: a^81 = a for a sample of elements
        for n in [1u64, 5, 17, 42, 80] {
            let a = gf.decode(n);
            assert_eq!(gf.pow(&a, 81), a);
        }
    }

    #[test]
    fn embedding_into_extension() {
        // F_9 inside F_81.
        let fp = Fp::new(3);
        let f9 = GFq::new(3, ModPoly::new(vec![1, 0, 1], fp)); // x^2+1
        let f81 = GFq::new(
            3,
            ModPoly::new(crate::intpoly::min_poly_2cos(10).mod_p(3), fp),
        );
        let root = f9.embedding_root(&f81).expect("F_9 embeds in F_81");
        // the embedding is a ring homomorphism on a sample
        for (m, n) in [(2u64, 7u64), (4, 8), (3, 5)] {
            let a = f9.decode(m);
            let b = f9.decode(n);
            let lhs = f9.eval_in(&f9.mul(&a, &b), &f81, &root);
            let rhs = f81.mul(&f9.eval_in(&a, &f81, &root), &f9.eval_in(&b, &f81, &root));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn every_element_is_a_square_in_the_quadratic_extension() {
        let fp = Fp::new(7);
        let f7 = GFq::prime_field(7);
        // x^2 - 3 irreducible mod 7 (3 is a non-residue)
        let f49 = GFq::new(7, ModPoly::new(vec![4, 0, 1], fp));
        let root = f7.embedding_root(&f49).unwrap();
        for a in f7.elements() {
            let img = f7.eval_in(&a, &f49, &root);
            assert!(f49.sqrt(&img).is_some());
        }
    }

    #[test]
    fn factor_consistency_with_gfq() {
        // the defining polynomials produced by factor() are usable here
        let fp = Fp::new(11);
        let f = ModPoly::new(crate::intpoly::min_poly_2cos(12).mod_p(11), fp);
        for (g, _) in factor(&f, fp) {
            let gf = GFq::new(11, g.clone());
            assert_eq!(gf.q, 11u64.pow(g.degree() as u32));
        }
    }
}
