//! Conjugacy classes of `PSL_2(F_q)` by element order, trace triples,
//! and the resulting bound on the number of normal subgroups of a
//! triangle group with a prescribed finite quotient.

use crate::error::Error;
use crate::field::TriangleFields;
use crate::gf::{GFq, GFqElem};
use crate::gfpoly::{pow_u64, ModPoly};
use crate::intpoly::{euler_phi, min_poly_2cos};
use crate::primes::{self, Level};
use crate::projmat::{det, enumerate_sl2, pgl2_order, psl2_order, subgroup_closure, ProjMat};
use crate::Result;
use std::collections::HashMap;

/// Number of conjugacy classes of `PSL_2(F_q)` whose elements have
/// order `n`, for `p` odd and `gcd(n, p) = 1`.
///
/// An element of order `n >= 3` exists exactly when a torus contains
/// it: `n | q - 1` or `n | q + 1` for odd `n`, and `2n | q - 1` or
/// `2n | q + 1` for even `n`.  (The weaker congruence `q^2 = 1 mod 2n`
/// admits composite orders split across the two tori which are not
/// realized by any single element; the brute-force suite pins this.)
pub fn kappa(n: u64, q: u64, p: u64) -> Result<u64> {
    if n % p == 0 && n > 0 {
        return Err(Error::UnsupportedPrime { p, reason: format!("kappa({n}, {q}) with p | n") });
    }
    Ok(match n {
        0 => 0,
        1 | 2 => 1,
        _ if n % 2 == 1 => {
            if (q - 1) % n == 0 || (q + 1) % n == 0 {
                euler_phi(n) / 2
            } else {
                0
            }
        }
        _ => {
            if (q - 1) % (2 * n) == 0 || (q + 1) % (2 * n) == 0 {
                euler_phi(2 * n) / 4
            } else {
                0
            }
        }
    })
}

/// The set of traces-up-to-sign of order-`n` elements of
/// `PSL_2(F_q)`: the roots in `F_q` of the minimal polynomial of
/// `2cos(pi/n)` reduced mod `p`, folded by sign.  Its size equals
/// `kappa(n, q)`.
pub fn order_class_traces(n: u64, gf: &GFq) -> Result<Vec<GFqElem>> {
    let p = gf.fp.p;
    let expected = kappa(n, gf.q, p)?;
    if n == 1 {
        return Ok(vec![gf.canon_sign(&gf.from_u64(2))]);
    }
    let poly = min_poly_2cos(n).mod_p(p);
    let mut out: Vec<GFqElem> = Vec::new();
    for z in gf.elements() {
        // evaluate the reduced polynomial at z
        let mut acc = gf.zero();
        for &c in poly.iter().rev() {
            acc = gf.mul(&acc, &z);
            acc = gf.add(&acc, &gf.from_u64(c));
        }
        if gf.is_zero(&acc) {
            let canon = gf.canon_sign(&z);
            if !out.contains(&canon) {
                out.push(canon);
            }
        }
    }
    if out.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "trace set size {} does not match kappa({n}, {}) = {expected}",
            out.len(),
            gf.q
        )));
    }
    out.sort_by_key(|e| gf.key(e));
    Ok(out)
}

/// Macbeath's commutativity criterion for a trace triple:
/// `t1^2 + t2^2 + t3^2 - t1 t2 t3 - 4 = 0`.
pub fn commutative_test(t: &[GFqElem; 3], gf: &GFq) -> bool {
    let sq = |x: &GFqElem| gf.mul(x, x);
    let mut acc = gf.add(&gf.add(&sq(&t[0]), &sq(&t[1])), &sq(&t[2]));
    acc = gf.sub(&acc, &gf.mul(&gf.mul(&t[0], &t[1]), &t[2]));
    acc = gf.sub(&acc, &gf.from_u64(4));
    gf.is_zero(&acc)
}

/// Commutativity of a trace triple up to signs: some sign lift
/// satisfies the criterion.  Only the sign of the product matters, so
/// two lifts suffice.
pub fn commutative_up_to_sign(t: &[GFqElem; 3], gf: &GFq) -> bool {
    let flipped = [gf.neg(&t[0]), t[1], t[2]];
    commutative_test(t, gf) || commutative_test(&flipped, gf)
}

/// Membership of a sorted order triple in Macbeath's exceptional list.
pub fn exceptional_test(orders: [u64; 3]) -> bool {
    let [a, b, c] = orders;
    debug_assert!(a <= b && b <= c, "order triple must be sorted");
    if a == 2 && b == 2 && c >= 2 {
        return true;
    }
    const LIST: [[u64; 3]; 9] = [
        [2, 3, 3],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 5],
        [3, 3, 3],
        [3, 3, 5],
        [3, 4, 4],
        [3, 5, 5],
        [5, 5, 5],
    ];
    LIST.contains(&orders)
}

/// Degree of an element over the prime field: the size of its
/// Frobenius orbit.
fn frobenius_degree(x: &GFqElem, gf: &GFq) -> usize {
    let mut deg = 1;
    let mut acc = gf.pow(x, gf.fp.p);
    while acc != *x {
        acc = gf.pow(&acc, gf.fp.p);
        deg += 1;
        debug_assert!(deg <= gf.f);
    }
    deg
}

/// Result of the normal-subgroup counting bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountBound {
    Bound(u64),
    Unavailable(String),
}

/// Upper bound on the number of normal subgroups `H` of the triangle
/// group with quotient isomorphic to `K(tau; p)`, by summing
/// `kappa(a')kappa(b')kappa(c')` over admissible order triples, doubled
/// when the smallest order exceeds 2.
///
/// The admissible set is computed conservatively: divisor triples of
/// `(a,b,c)` with all components > 1, minus spherical and Euclidean
/// triples (their triangle groups are solvable and cannot surject onto
/// `K`), minus exceptional triples when `|K| > 60` (no exceptional
/// image is that large).  Remaining hypotheses are verified per trace
/// combination and failures make the bound unavailable.
pub fn count_bound(tf: &TriangleFields, p: u64) -> CountBound {
    let tau = tf.tau;
    if p == 2 {
        return CountBound::Unavailable("residue characteristic 2".into());
    }
    if (tau.a as u64 * tau.b as u64 * tau.c as u64) % p == 0 {
        return CountBound::Unavailable(format!("p = {p} divides abc"));
    }
    let e_primes = match primes::prime_decompose(&tf.e.desc, p, Level::E) {
        Ok(v) => v,
        Err(e) => return CountBound::Unavailable(e.to_string()),
    };
    let prime_e = &e_primes[0];
    let f_primes = match primes::primes_above(tf, prime_e) {
        Ok(v) => v,
        Err(e) => return CountBound::Unavailable(e.to_string()),
    };
    let prime_f = &f_primes[0];
    let split_completely = prime_f.f == prime_e.f;
    let k_order = if split_completely {
        psl2_order(prime_e.norm)
    } else {
        pgl2_order(prime_e.norm)
    };
    // K sits inside PSL_2 of the residue field of the F-prime.
    let gf = GFq::new(p, prime_f.factor.clone());
    let q_amb = gf.q;

    let mut total: u64 = 0;
    for a2 in divisors_gt1(tau.a as u64) {
        for b2 in divisors_gt1(tau.b as u64) {
            'triple: for c2 in divisors_gt1(tau.c as u64) {
                let mut sorted = [a2, b2, c2];
                sorted.sort_unstable();
                // solvable images cannot be K
                let (x, y, z) = (sorted[0], sorted[1], sorted[2]);
                if y * z + x * z + x * y >= x * y * z {
                    continue; // spherical or Euclidean
                }
                if exceptional_test(sorted) {
                    if k_order > 60 {
                        continue; // exceptional images have order <= 60
                    }
                    return CountBound::Unavailable(format!(
                        "exceptional order triple {sorted:?} with small quotient"
                    ));
                }
                let traces: Vec<Vec<GFqElem>> = match sorted
                    .iter()
                    .map(|&n| order_class_traces(n, &gf))
                    .collect::<Result<_>>()
                {
                    Ok(v) => v,
                    Err(e) => return CountBound::Unavailable(e.to_string()),
                };
                let product: u64 = traces.iter().map(|s| s.len() as u64).product();
                if product == 0 {
                    continue 'triple;
                }
                // verify the counting proposition's hypotheses on every
                // trace combination
                for t1 in &traces[0] {
                    for t2 in &traces[1] {
                        for t3 in &traces[2] {
                            let t = [*t1, *t2, *t3];
                            if commutative_up_to_sign(&t, &gf) {
                                return CountBound::Unavailable(format!(
                                    "commutative trace triple for orders {sorted:?}"
                                ));
                            }
                            let deg = t
                                .iter()
                                .map(|x| frobenius_degree(x, &gf))
                                .fold(1usize, num_integer::lcm);
                            if pow_u64(p, deg as u32) != q_amb {
                                return CountBound::Unavailable(format!(
                                    "traces for orders {sorted:?} generate a proper subfield"
                                ));
                            }
                        }
                    }
                }
                total += if sorted[0] == 2 { product } else { 2 * product };
            }
        }
    }
    CountBound::Bound(total)
}

fn divisors_gt1(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// All solutions `(g1, g2, g3)` in `SL_2(F_q)^3` with `g1 g2 g3 = 1`
/// and the prescribed traces, up to the given output cap.  Exhaustive;
/// intended as an oracle for small `q`.
pub fn solve_trace_triple(
    t: &[GFqElem; 3],
    gf: &GFq,
    limit: usize,
) -> Vec<[[GFqElem; 4]; 3]> {
    let all = enumerate_sl2(gf);
    let trace = |m: &[GFqElem; 4]| gf.add(&m[0], &m[3]);
    let with_t1: Vec<_> = all.iter().filter(|m| trace(m) == t[0]).cloned().collect();
    let with_t2: Vec<_> = all.iter().filter(|m| trace(m) == t[1]).cloned().collect();
    let mut out = Vec::new();
    for g1 in &with_t1 {
        for g2 in &with_t2 {
            let prod = mat_mul(g1, g2, gf);
            // g3 = (g1 g2)^-1 has the same trace as g1 g2
            if trace(&prod) == t[2] {
                let g3 = [prod[3], gf.neg(&prod[1]), gf.neg(&prod[2]), prod[0]];
                out.push([*g1, *g2, g3]);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

pub fn mat_mul(a: &[GFqElem; 4], b: &[GFqElem; 4], gf: &GFq) -> [GFqElem; 4] {
    [
        gf.add(&gf.mul(&a[0], &b[0]), &gf.mul(&a[1], &b[2])),
        gf.add(&gf.mul(&a[0], &b[1]), &gf.mul(&a[1], &b[3])),
        gf.add(&gf.mul(&a[2], &b[0]), &gf.mul(&a[3], &b[2])),
        gf.add(&gf.mul(&a[2], &b[1]), &gf.mul(&a[3], &b[3])),
    ]
}

/// Brute-force census of `PSL_2(F_q)`: conjugacy class count per
/// element order.  Exhaustive; test oracle for small `q`.
pub fn brute_class_counts(gf: &GFq) -> HashMap<u64, u64> {
    let elems = all_psl2(gf);
    let index: HashMap<[u64; 4], usize> =
        elems.iter().enumerate().map(|(i, m)| (m.key(gf), i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for i in 0..elems.len() {
        if seen[i] {
            continue;
        }
        let rep = elems[i];
        let ord = rep.order(gf);
        *counts.entry(ord).or_insert(0) += 1;
        for g in &elems {
            let conj = g.mul(&rep, gf).mul(&g.inv(gf), gf);
            seen[index[&conj.key(gf)]] = true;
        }
    }
    counts
}

/// Every element of `PSL_2(F_q)`, via canonicalized `SL_2`.
pub fn all_psl2(gf: &GFq) -> Vec<ProjMat> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for m in enumerate_sl2(gf) {
        debug_assert!(gf.is_zero(&gf.sub(&det(&m, gf), &gf.one())));
        let pm = ProjMat::new(m, gf);
        if seen.insert(pm.key(gf)) {
            out.push(pm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Triple};

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(2, 13, 13).unwrap(), 1);
        assert_eq!(kappa(7, 13, 13).unwrap(), 3);
        assert_eq!(kappa(7, 11, 11).unwrap(), 0); // 7 divides neither 10 nor 12
        assert_eq!(kappa(12, 121, 11).unwrap(), 2);
        // composite order split across the two tori is not realized
        assert_eq!(kappa(15, 11, 11).unwrap(), 0);
    }

    #[test]
    fn kappa_matches_brute_force_f5_f7() {
        for p in [5u64, 7] {
            let gf = GFq::prime_field(p);
            let counts = brute_class_counts(&gf);
            let group = psl2_order(p);
            for n in 1..=group {
                if group % n != 0 || n % p == 0 {
                    continue;
                }
                let brute = counts.get(&n).copied().unwrap_or(0);
                assert_eq!(kappa(n, p, p).unwrap(), brute, "n = {n}, q = {p}");
            }
        }
    }

    #[test]
    fn traces_of_order_7_in_f13() {
        let gf = GFq::prime_field(13);
        let traces = order_class_traces(7, &gf).unwrap();
        assert_eq!(traces.len(), 3);
        // cross-check against the brute-force trace census
        let mut expected: Vec<GFqElem> = Vec::new();
        for m in all_psl2(&gf) {
            if m.order(&gf) == 7 {
                let t = m.trace_up_to_sign(&gf);
                if !expected.contains(&t) {
                    expected.push(t);
                }
            }
        }
        expected.sort_by_key(|e| gf.key(e));
        assert_eq!(traces, expected);
    }

    #[test]
    fn order_two_trace_is_zero() {
        let gf = GFq::prime_field(11);
        assert_eq!(order_class_traces(2, &gf).unwrap(), vec![gf.zero()]);
        // order 3: traces +-1
        let t3 = order_class_traces(3, &gf).unwrap();
        assert_eq!(t3, vec![gf.one()]);
    }

    #[test]
    fn commutative_examples() {
        let gf = GFq::prime_field(11);
        let t = [gf.from_u64(2), gf.from_u64(2), gf.from_u64(2)];
        assert!(commutative_test(&t, &gf));
        let t = [gf.zero(), gf.one(), gf.from_u64(3)];
        assert!(!commutative_test(&t, &gf)); // value 6 != 0
    }

    #[test]
    fn exceptional_examples() {
        assert!(exceptional_test([2, 2, 5]));
        assert!(exceptional_test([3, 5, 5]));
        assert!(!exceptional_test([2, 3, 7]));
        assert!(!exceptional_test([2, 3, 12]));
    }

    #[test]
    fn count_bound_hurwitz() {
        let tf = TriangleFields::build(Triple::new(2, 3, 7).unwrap()).unwrap();
        assert_eq!(count_bound(&tf, 13), CountBound::Bound(3));
        assert_eq!(count_bound(&tf, 29), CountBound::Bound(3));
        // p = 7 divides abc
        assert!(matches!(count_bound(&tf, 7), CountBound::Unavailable(_)));
    }

    #[test]
    fn count_bound_2_3_12() {
        let tf = TriangleFields::build(Triple::new(2, 3, 12).unwrap()).unwrap();
        for p in [11u64, 13, 23] {
            assert_eq!(count_bound(&tf, p), CountBound::Bound(2), "p = {p}");
        }
    }

    #[test]
    fn count_bound_2_7_7() {
        let tf = TriangleFields::build(Triple::new(2, 7, 7).unwrap()).unwrap();
        assert_eq!(count_bound(&tf, 13), CountBound::Bound(9));
    }

    #[test]
    fn solve_trace_triple_finds_identity_family() {
        let gf = GFq::prime_field(5);
        let t = [gf.from_u64(2), gf.from_u64(2), gf.from_u64(2)];
        let sols = solve_trace_triple(&t, &gf, usize::MAX);
        let id = [gf.one(), gf.zero(), gf.zero(), gf.one()];
        assert!(sols.contains(&[id, id, id]));
        for [g1, g2, g3] in &sols {
            let p = mat_mul(&mat_mul(g1, g2, &gf), g3, &gf);
            assert_eq!(p, id);
        }
    }

    #[test]
    fn macbeath_nonemptiness_f5() {
        // T(t) is nonempty for every trace triple over F_5.
        let gf = GFq::prime_field(5);
        for a in gf.elements() {
            for b in gf.elements() {
                for c in gf.elements() {
                    let sols = solve_trace_triple(&[a, b, c], &gf, 1);
                    assert!(!sols.is_empty(), "empty T({a:?},{b:?},{c:?})");
                }
            }
        }
    }
}
