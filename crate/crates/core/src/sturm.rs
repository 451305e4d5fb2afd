//! Real root isolation by Sturm sequences over the rationals.

use crate::intpoly::{IntPoly, QPoly, Rat};
use crate::numeric::Interval;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An isolating interval for a single real root of a squarefree
/// polynomial.  When `exact` is set, the root is rational and equals
/// both endpoints.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: bool,
}

impl RootInterval {
    pub fn to_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// The Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    pub poly: QPoly,
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let poly = QPoly::from_int(p);
        let mut chain = vec![poly.clone(), poly.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            chain.push(r.neg());
        }
        SturmChain { poly, chain }
    }

    /// Number of sign variations of the chain at `x`.
    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None; // sign as is_positive
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let s = v.is_positive();
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// A bound `B` such that all real roots lie in `(-B, B)` (Cauchy bound).
pub fn root_bound(p: &IntPoly) -> Rat {
    let lead = p.coeffs.last().expect("root_bound of the zero polynomial");
    let mut m = BigInt::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    Rat::one() + Rat::new(m, lead.abs())
}

/// Isolates all real roots of a squarefree integer polynomial.
/// Returns disjoint intervals in increasing order, one per root.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RootInterval> {
    assert!(p.degree() >= 1, "cannot isolate roots of a constant");
    let chain = SturmChain::new(p);
    let bound = root_bound(p);
    let mut out: Vec<RootInterval> = Vec::new();
    // Work stack of open intervals whose endpoints are not roots.
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_roots(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b, exact: false });
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
        if chain.poly.eval(&mid).is_zero() {
            out.push(RootInterval { lo: mid.clone(), hi: mid.clone(), exact: true });
            // Nudge both sides off the rational root.
            let quarter = (&b - &a) / Rat::from_integer(BigInt::from(1_000_000));
            stack.push((a, &mid - &quarter));
            stack.push((&mid + &quarter, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    out.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap());
    out
}

/// Bisect an isolating interval once, keeping the half containing the
/// root.  The polynomial must be squarefree and `iv` must isolate one
/// of its roots.
pub fn refine_step(p: &IntPoly, iv: &mut RootInterval) {
    if iv.exact {
        return;
    }
    let mid = (&iv.lo + &iv.hi) / Rat::from_integer(BigInt::from(2));
    let fm = p.eval_rat(&mid);
    if fm.is_zero() {
        iv.lo = mid.clone();
        iv.hi = mid;
        iv.exact = true;
        return;
    }
    let fl = p.eval_rat(&iv.lo);
    // The isolating interval has a sign change (endpoints are non-roots).
    if fl.is_positive() != fm.is_positive() {
        iv.hi = mid;
    } else {
        iv.lo = mid;
    }
}

/// Refine until the interval width is at most `target`.
pub fn refine_to_width(p: &IntPoly, iv: &mut RootInterval, target: &Rat) {
    while !iv.exact && &(&iv.hi - &iv.lo) > target {
        refine_step(p, iv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::min_poly_2cos;
    use crate::numeric::eps;

    #[test]
    fn isolates_2cos_roots() {
        // Roots of the minimal polynomial of 2cos(pi/7) are
        // 2cos(k pi/7) for k in {1, 3, 5}.
        let p = min_poly_2cos(7);
        let mut roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        let expected = [
            2.0 * (5.0 * std::f64::consts::PI / 7.0).cos(),
            2.0 * (3.0 * std::f64::consts::PI / 7.0).cos(),
            2.0 * (std::f64::consts::PI / 7.0).cos(),
        ];
        for (iv, want) in roots.iter_mut().zip(expected) {
            refine_to_width(&p, iv, &eps(60));
            let got = iv.to_interval().to_f64();
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn rational_root_exact() {
        // (x - 1) has the rational root 1; min_poly_2cos(3) = x - 1.
        let p = min_poly_2cos(3);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 1);
        // x^2 - 1 has two rational roots found by midpoint hits eventually.
        let q = IntPoly::from_i64(&[-1, 0, 1]);
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn counts_match_degree_for_totally_real() {
        for n in [5u64, 8, 12, 30] {
            let p = min_poly_2cos(n);
            let roots = isolate_real_roots(&p);
            assert_eq!(roots.len() as i64, p.degree(), "n = {n}");
        }
    }
}
