//! Elements of `PSL_2(F_q)` as canonicalized 2x2 matrices of
//! determinant one: each coset `{m, -m}` is stored as the
//! representative whose first nonzero entry has the smaller ordering
//! key, so projective equality is plain entry-wise equality.

use crate::gf::{GFq, GFqElem};
use crate::gfpoly::pow_u64;
use crate::intpoly::factorize;
use std::collections::{HashMap, VecDeque};

/// A canonicalized element of `PSL_2(F_q)`; entries row-major
/// `[a, b, c, d]` with `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjMat {
    pub m: [GFqElem; 4],
}

impl ProjMat {
    /// Canonicalizes a determinant-one matrix into its coset
    /// representative.
    pub fn new(m: [GFqElem; 4], gf: &GFq) -> Self {
        debug_assert!(gf.is_zero(&gf.sub(&det(&m, gf), &gf.one())), "determinant must be 1");
        Self::canon(m, gf)
    }

    fn canon(m: [GFqElem; 4], gf: &GFq) -> Self {
        for i in 0..4 {
            if !gf.is_zero(&m[i]) {
                let v = m[i];
                let n = gf.neg(&v);
                if gf.key(&n) < gf.key(&v) {
                    return ProjMat {
                        m: [gf.neg(&m[0]), gf.neg(&m[1]), gf.neg(&m[2]), gf.neg(&m[3])],
                    };
                }
                return ProjMat { m };
            }
        }
        unreachable!("zero matrix cannot be canonicalized")
    }

    pub fn identity(gf: &GFq) -> Self {
        ProjMat { m: [gf.one(), gf.zero(), gf.zero(), gf.one()] }
    }

    pub fn is_identity(&self, gf: &GFq) -> bool {
        *self == Self::identity(gf)
    }

    pub fn mul(&self, other: &Self, gf: &GFq) -> Self {
        let a = &self.m;
        let b = &other.m;
        let m = [
            gf.add(&gf.mul(&a[0], &b[0]), &gf.mul(&a[1], &b[2])),
            gf.add(&gf.mul(&a[0], &b[1]), &gf.mul(&a[1], &b[3])),
            gf.add(&gf.mul(&a[2], &b[0]), &gf.mul(&a[3], &b[2])),
            gf.add(&gf.mul(&a[2], &b[1]), &gf.mul(&a[3], &b[3])),
        ];
        Self::canon(m, gf)
    }

    pub fn inv(&self, gf: &GFq) -> Self {
        let m = [self.m[3], gf.neg(&self.m[1]), gf.neg(&self.m[2]), self.m[0]];
        Self::canon(m, gf)
    }

    pub fn pow(&self, mut e: u64, gf: &GFq) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(gf);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, gf);
            }
            base = base.mul(&base, gf);
            e >>= 1;
        }
        acc
    }

    /// Trace up to sign, canonicalized.
    pub fn trace_up_to_sign(&self, gf: &GFq) -> GFqElem {
        gf.canon_sign(&gf.add(&self.m[0], &self.m[3]))
    }

    /// Exact order as an element of `PSL_2(F_q)`, by descending through
    /// the prime factors of the group order.
    pub fn order(&self, gf: &GFq) -> u64 {
        let group = psl2_order(gf.q);
        let mut ord = group;
        for (r, _) in factorize(group) {
            while ord % r == 0 && self.pow(ord / r, gf).is_identity(gf) {
                ord /= r;
            }
        }
        debug_assert!(self.pow(ord, gf).is_identity(gf));
        ord
    }

    /// Compact hash key.
    pub fn key(&self, gf: &GFq) -> [u64; 4] {
        [
            gf.encode(&self.m[0]),
            gf.encode(&self.m[1]),
            gf.encode(&self.m[2]),
            gf.encode(&self.m[3]),
        ]
    }
}

pub fn det(m: &[GFqElem; 4], gf: &GFq) -> GFqElem {
    gf.sub(&gf.mul(&m[0], &m[3]), &gf.mul(&m[1], &m[2]))
}

/// `|PSL_2(F_q)| = q(q^2-1)/2` for odd `q`.
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / 2
}

/// `|PGL_2(F_q)| = q(q^2-1)`.
pub fn pgl2_order(q: u64) -> u64 {
    q * (q * q - 1)
}

/// The embedding `PGL_2(F_q) -> PSL_2(F_{q^2})`, `g -> +-g/sqrt(det g)`.
pub struct PglEmbedding {
    pub small_q: u64,
    pub root: GFqElem,
}

impl PglEmbedding {
    /// Requires `big` to be the quadratic extension of `small`
    /// (as abstract fields: `big.q == small.q^2`).
    pub fn new(small: &GFq, big: &GFq) -> Self {
        assert_eq!(big.q, small.q * small.q, "need the quadratic extension");
        let root = small
            .embedding_root(big)
            .expect("defining polynomial has a root in the quadratic extension");
        PglEmbedding { small_q: small.q, root }
    }

    /// Maps an invertible matrix over the small field into
    /// `PSL_2` of the big field.
    pub fn map(&self, g: &[GFqElem; 4], small: &GFq, big: &GFq) -> ProjMat {
        let d = det(g, small);
        assert!(!small.is_zero(&d), "singular matrix");
        let d_big = small.eval_in(&d, big, &self.root);
        let s = big.sqrt(&d_big).expect("every small-field element is a square upstairs");
        let s_inv = big.inv(&s);
        let m = [
            big.mul(&small.eval_in(&g[0], big, &self.root), &s_inv),
            big.mul(&small.eval_in(&g[1], big, &self.root), &s_inv),
            big.mul(&small.eval_in(&g[2], big, &self.root), &s_inv),
            big.mul(&small.eval_in(&g[3], big, &self.root), &s_inv),
        ];
        ProjMat::new(m, big)
    }
}

/// Closure of a generating set under multiplication, capped.
pub fn subgroup_closure(
    gens: &[ProjMat],
    gf: &GFq,
    cap: usize,
) -> Result<Vec<ProjMat>, crate::Error> {
    let mut seen: HashMap<[u64; 4], u32> = HashMap::new();
    let mut elems = Vec::new();
    let id = ProjMat::identity(gf);
    seen.insert(id.key(gf), 0);
    elems.push(id);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let cur = elems[i];
        for g in gens {
            let next = cur.mul(g, gf);
            let key = next.key(gf);
            if !seen.contains_key(&key) {
                if elems.len() >= cap {
                    return Err(crate::Error::CapExceeded { cap });
                }
                seen.insert(key, elems.len() as u32);
                elems.push(next);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    Ok(elems)
}

/// Enumerates all of `SL_2(F_q)` as raw (non-projective) matrices.
pub fn enumerate_sl2(gf: &GFq) -> Vec<[GFqElem; 4]> {
    let mut out = Vec::with_capacity((gf.q * gf.q * gf.q) as usize);
    for a in gf.elements() {
        for b in gf.elements() {
            for c in gf.elements() {
                if gf.is_zero(&a) {
                    // bc = -1; d arbitrary
                    if gf.is_zero(&b) {
                        continue;
                    }
                    let c_needed = gf.neg(&gf.inv(&b));
                    if c != c_needed {
                        continue;
                    }
                    for d in gf.elements() {
                        out.push([a, b, c, d]);
                    }
                } else {
                    // d = (1 + bc)/a
                    let d = gf.mul(&gf.add(&gf.one(), &gf.mul(&b, &c)), &gf.inv(&a));
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}
