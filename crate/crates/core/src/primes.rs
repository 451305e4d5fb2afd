//! Prime ideals of the integer rings of the trace fields, represented
//! by a rational prime together with an irreducible factor of the
//! field's minimal polynomial modulo that prime.

use crate::error::Error;
use crate::field::{FieldDesc, FieldElem, TriangleFields};
use crate::gfpoly::{self, Fp, ModPoly};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Which field a prime ideal lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    F,
    E,
}

/// A prime ideal `(p, g(xi))` of the ring of integers, where `g` is an
/// irreducible factor of the minimal polynomial modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Monic irreducible factor of the minimal polynomial mod p.
    pub factor: ModPoly,
    /// Residue degree.
    pub f: u32,
    /// Ramification exponent.
    pub e: u32,
    /// Absolute norm `p^f`.
    pub norm: u64,
    pub level: Level,
    /// Identity of the field the factor refers to.
    pub field_id: u64,
}

impl PrimeIdeal {
    pub fn fp(&self) -> Fp {
        Fp::new(self.p)
    }
}

/// Decomposes a rational prime in the field described by `desc`.
///
/// Supported cases: `p` odd and either the minimal polynomial is
/// squarefree mod `p` (then all ramification exponents are 1), or the
/// power basis is certified to span the maximal order, in which case
/// factorization multiplicities give the exponents.
pub fn prime_decompose(desc: &FieldDesc, p: u64, level: Level) -> Result<Vec<PrimeIdeal>> {
    if p == 2 {
        return Err(Error::UnsupportedPrime { p, reason: "residue characteristic 2".into() });
    }
    let fp = Fp::new(p);
    let reduced = ModPoly::new(desc.min_poly.mod_p(p), fp);
    if reduced.degree() != desc.min_poly.degree() {
        return Err(Error::Internal("minimal polynomial not monic mod p".into()));
    }
    if !gfpoly::is_squarefree(&reduced, fp) && !desc.monogenic_certified {
        return Err(Error::UnsupportedPrime {
            p,
            reason: "ramified prime outside a certified monogenic field".into(),
        });
    }
    let factors = gfpoly::factor(&reduced, fp);
    let mut out = Vec::with_capacity(factors.len());
    let mut check: u64 = 0;
    for (g, e) in factors {
        let f = g.degree() as u32;
        check += (e as u64) * (f as u64);
        out.push(PrimeIdeal {
            p,
            factor: g,
            f,
            e,
            norm: gfpoly::pow_u64(p, f),
            level,
            field_id: desc.id,
        });
    }
    if check != desc.degree as u64 {
        return Err(Error::Internal("sum of e_i f_i does not match the degree".into()));
    }
    Ok(out)
}

/// Reduces a field element modulo a prime ideal, as coefficients in
/// `F_p[x]/(factor)`.  Fails if a denominator is divisible by `p`.
pub fn reduce_mod(x: &FieldElem, ideal: &PrimeIdeal) -> Result<ModPoly> {
    debug_assert_eq!(x.field.id, ideal.field_id, "element reduced modulo a foreign ideal");
    let fp = ideal.fp();
    let p = BigInt::from(ideal.p);
    let den = &x.den % &p;
    if den.is_zero() {
        return Err(Error::DenominatorCollision { p: ideal.p });
    }
    let den_u = to_fp(&den, ideal.p);
    let den_inv = fp.inv(den_u);
    let coeffs: Vec<u64> = x
        .num
        .iter()
        .map(|n| fp.mul(to_fp(&(n % &p), ideal.p), den_inv))
        .collect();
    Ok(ModPoly::new(coeffs, fp).rem(&ideal.factor, fp))
}

fn to_fp(r: &BigInt, p: u64) -> u64 {
    let mut r = r.clone();
    if r.is_negative() {
        r += BigInt::from(p);
    }
    u64::try_from(r).unwrap()
}

/// Does the element reduce to zero in the residue field?
pub fn element_in_ideal(x: &FieldElem, ideal: &PrimeIdeal) -> Result<bool> {
    Ok(reduce_mod(x, ideal)?.is_zero())
}

/// The prime of `E` lying under a prime of `F`: the residue of the
/// subfield generator is a root of exactly one irreducible factor of
/// the subfield minimal polynomial.
pub fn subfield_ideal_under(tf: &TriangleFields, prime_f: &PrimeIdeal) -> Result<PrimeIdeal> {
    assert_eq!(prime_f.level, Level::F);
    if tf.e.same_as_parent {
        let mut p = prime_f.clone();
        p.level = Level::E;
        return Ok(p);
    }
    let theta_res = reduce_mod(&tf.e.theta, prime_f)?;
    let candidates = prime_decompose(&tf.e.desc, prime_f.p, Level::E)?;
    let fp = prime_f.fp();
    let mut hit = None;
    for cand in candidates {
        // evaluate cand.factor at theta_res inside F_p[x]/(factor_F)
        let mut acc = ModPoly::zero();
        for &c in cand.factor.coeffs.iter().rev() {
            acc = acc
                .mul(&theta_res, fp)
                .add(&ModPoly::new(vec![c], fp), fp)
                .rem(&prime_f.factor, fp);
        }
        if acc.is_zero() {
            if hit.is_some() {
                return Err(Error::Internal("theta is a root of two subfield factors".into()));
            }
            hit = Some(cand);
        }
    }
    let found = hit.ok_or_else(|| Error::Internal("no subfield prime under the given prime".into()))?;
    if prime_f.f % found.f != 0 {
        return Err(Error::Internal("residue degrees not compatible".into()));
    }
    Ok(found)
}

/// All primes of `F` lying above a given prime of `E`.
pub fn primes_above(tf: &TriangleFields, prime_e: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
    assert_eq!(prime_e.level, Level::E);
    let all = prime_decompose(&tf.f, prime_e.p, Level::F)?;
    let mut out = Vec::new();
    for cand in all {
        if subfield_ideal_under(tf, &cand)? == *prime_e {
            out.push(cand);
        }
    }
    if out.is_empty() {
        return Err(Error::Internal("no prime of F above the given prime of E".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TriangleFields;
    use crate::Triple;

    fn hurwitz() -> TriangleFields {
        TriangleFields::build(Triple::new(2, 3, 7).unwrap()).unwrap()
    }

    #[test]
    fn hurwitz_decompositions() {
        let tf = hurwitz();
        // 7 is totally ramified: one ideal with e = 3, f = 1, norm 7.
        let p7 = prime_decompose(&tf.f, 7, Level::F).unwrap();
        assert_eq!(p7.len(), 1);
        assert_eq!((p7[0].e, p7[0].f, p7[0].norm), (3, 1, 7));
        // 13 = +-1 mod 7 splits completely: three ideals of norm 13.
        let p13 = prime_decompose(&tf.f, 13, Level::F).unwrap();
        assert_eq!(p13.len(), 3);
        assert!(p13.iter().all(|q| q.f == 1 && q.norm == 13));
        // 3 is inert: one ideal of norm 27.
        let p3 = prime_decompose(&tf.f, 3, Level::F).unwrap();
        assert_eq!(p3.len(), 1);
        assert_eq!((p3[0].e, p3[0].f, p3[0].norm), (1, 3, 27));
    }

    #[test]
    fn characteristic_two_rejected() {
        let tf = hurwitz();
        assert!(matches!(
            prime_decompose(&tf.f, 2, Level::F),
            Err(Error::UnsupportedPrime { p: 2, .. })
        ));
    }

    #[test]
    fn membership_basics() {
        let tf = hurwitz();
        let p7 = &prime_decompose(&tf.f, 7, Level::F).unwrap()[0];
        let mu = tf.f.gen_pow(1);
        let mu_plus_2 = mu.add(&tf.f.one().mul_i64(2));
        assert!(element_in_ideal(&mu_plus_2, p7).unwrap());
        assert!(!element_in_ideal(&tf.f.one(), p7).unwrap());
        assert!(element_in_ideal(&tf.f.zero(), p7).unwrap());
        // denominator collision
        let x = mu.div_i64(7);
        assert!(matches!(
            element_in_ideal(&x, p7),
            Err(Error::DenominatorCollision { p: 7 })
        ));
    }

    #[test]
    fn ideal_under_identity_when_e_equals_f() {
        let tf = hurwitz();
        let p13 = prime_decompose(&tf.f, 13, Level::F).unwrap();
        for q in &p13 {
            let under = subfield_ideal_under(&tf, q).unwrap();
            assert_eq!(under.factor, q.factor);
            assert_eq!(under.level, Level::E);
        }
    }

    #[test]
    fn residue_degrees_2_3_12_at_11() {
        // Both primes of E = Q(sqrt3) above 11 have f = 1 while the
        // primes of F above them have f = 2.
        let tf = TriangleFields::build(Triple::new(2, 3, 12).unwrap()).unwrap();
        let e_primes = prime_decompose(&tf.e.desc, 11, Level::E).unwrap();
        assert_eq!(e_primes.len(), 2);
        assert!(e_primes.iter().all(|q| q.f == 1));
        let f_primes = prime_decompose(&tf.f, 11, Level::F).unwrap();
        assert_eq!(f_primes.len(), 2);
        assert!(f_primes.iter().all(|q| q.f == 2));
        for q in &f_primes {
            let under = subfield_ideal_under(&tf, q).unwrap();
            assert!(e_primes.contains(&under));
        }
        // and the fibers partition: each e-prime has exactly one f-prime
        for e in &e_primes {
            assert_eq!(primes_above(&tf, e).unwrap().len(), 1);
        }
    }

    #[test]
    fn ramified_at_3_rejected_for_2_3_12_subfield() {
        let tf = TriangleFields::build(Triple::new(2, 3, 12).unwrap()).unwrap();
        assert!(prime_decompose(&tf.e.desc, 3, Level::E).is_err());
    }

    #[test]
    fn residue_degree_divisibility_sample() {
        // f(under) divides f(over) across several triples and primes.
        for (a, b, c) in [(2u32, 3u32, 12u32), (2, 3, 8), (2, 3, 7), (3, 3, 10)] {
            let tf = TriangleFields::build(Triple::new(a, b, c).unwrap()).unwrap();
            for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
                let Ok(f_primes) = prime_decompose(&tf.f, p, Level::F) else { continue };
                for q in &f_primes {
                    let Ok(under) = subfield_ideal_under(&tf, q) else { continue };
                    assert_eq!(q.f % under.f, 0, "tau=({a},{b},{c}), p={p}");
                }
            }
        }
    }
}
