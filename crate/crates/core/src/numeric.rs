//! Interval arithmetic over exact rationals, plus the few transcendental
//! evaluations the reports need (square root, natural logarithm, arcosh).
//!
//! Every function returns a rational interval certified to contain the
//! true value; precision is controlled by a bit count.  Results are
//! deterministic for fixed inputs.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalSign {
    Negative,
    Positive,
    /// The interval contains zero (or touches it).
    Straddles,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Rat::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn sign(&self) -> IntervalSign {
        if self.lo.is_positive() {
            IntervalSign::Positive
        } else if self.hi.is_negative() {
            IntervalSign::Negative
        } else {
            IntervalSign::Straddles
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rat) -> Interval {
        if k.is_negative() {
            Interval::new(&self.hi * k, &self.lo * k)
        } else {
            Interval::new(&self.lo * k, &self.hi * k)
        }
    }

    pub fn abs(&self) -> Interval {
        match self.sign() {
            IntervalSign::Positive => self.clone(),
            IntervalSign::Negative => self.neg(),
            IntervalSign::Straddles => {
                let hi = if self.hi.abs() > self.lo.abs() { self.hi.abs() } else { self.lo.abs() };
                Interval::new(Rat::zero(), hi)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }
}

/// `2^-bits` as a rational.
pub fn eps(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits)
}

/// Floor of the square root of a nonnegative rational, to `bits`
/// fractional bits: returns `[lo, hi]` with `hi - lo <= 2^-bits`.
pub fn sqrt_rat(x: &Rat, bits: u32) -> Interval {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Interval::point(Rat::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^k so integer sqrt carries
    // the fractional bits.
    let scaled = (x.numer() * x.denom()) << (2 * bits);
    let root = scaled.sqrt(); // floor
    let denom = x.denom() << bits;
    let lo = Rat::new(root.clone(), denom.clone());
    let hi = Rat::new(root + BigInt::one(), denom);
    Interval::new(lo, hi)
}

/// Square root of an interval of nonnegative rationals.
pub fn sqrt_interval(x: &Interval, bits: u32) -> Interval {
    let lo = sqrt_rat(&x.lo, bits);
    let hi = sqrt_rat(&x.hi, bits);
    Interval::new(lo.lo, hi.hi)
}

/// atanh(u) for |u| <= 1/2, with the series tail bounded rigorously.
fn atanh_small(u: &Rat, bits: u32) -> Interval {
    let u2 = u * u;
    let mut term = u.clone(); // u^(2k+1)
    let mut sum = Rat::zero();
    let tol = eps(bits + 4);
    let mut k: u64 = 0;
    loop {
        sum += &term / Rat::from_integer(BigInt::from(2 * k + 1));
        term *= &u2;
        k += 1;
        // tail bound: |sum_{j>=k} u^(2j+1)/(2j+1)| <= |u|^(2k+1)/(1-u^2)
        let tail = term.abs() / (Rat::one() - &u2);
        if tail < tol {
            return if u.is_negative() {
                Interval::new(&sum - &tail, sum.clone())
            } else {
                Interval::new(sum.clone(), &sum + &tail)
            };
        }
    }
}

/// Natural logarithm of 2 to the requested precision.
fn ln2(bits: u32) -> Interval {
    // ln 2 = 2 atanh(1/3)
    let third = Rat::new(BigInt::one(), BigInt::from(3));
    atanh_small(&third, bits + 2).scale(&Rat::from_integer(BigInt::from(2)))
}

/// Natural logarithm of a positive rational.
pub fn ln_rat(x: &Rat, bits: u32) -> Interval {
    assert!(x.is_positive(), "ln of a nonpositive rational");
    // Range-reduce x = 2^e * m with m in [1, 2).
    let mut e: i64 = 0;
    let two = Rat::from_integer(BigInt::from(2));
    let one = Rat::one();
    let mut m = x.clone();
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < one {
        m *= &two;
        e -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3)
    let u = (&m - &one) / (&m + &one);
    let lnm = atanh_small(&u, bits + 2).scale(&two);
    let l2 = ln2(bits + 2).scale(&Rat::from_integer(BigInt::from(e)));
    lnm.add(&l2)
}

/// Natural logarithm of an interval of positive rationals.
pub fn ln_interval(x: &Interval, bits: u32) -> Interval {
    let lo = ln_rat(&x.lo, bits);
    let hi = ln_rat(&x.hi, bits);
    Interval::new(lo.lo, hi.hi)
}

/// arcosh of an interval with lower endpoint > 1:
/// `arcosh(x) = ln(x + sqrt(x^2 - 1))`.
pub fn arcosh_interval(x: &Interval, bits: u32) -> Interval {
    assert!(x.lo > Rat::one(), "arcosh requires x > 1");
    let one = Interval::point(Rat::one());
    let inner = x.mul(x).sub(&one);
    let s = sqrt_interval(&inner, bits + 8);
    ln_interval(&x.add(&s), bits)
}

/// Rounds the midpoint of a tight interval to `digits` decimal places.
/// The interval width must be below half an ulp of the target scale so
/// the rounding is unambiguous up to ties.
pub fn round_decimals(x: &Interval, digits: u32) -> f64 {
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = x.mid() * Rat::from_integer(scale.clone());
    // round half away from zero
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let two_num = BigInt::from(2) * &num;
    let rounded = if num.sign() != Sign::Minus {
        (&two_num + &den) / (BigInt::from(2) * &den)
    } else {
        -((-two_num + &den) / (BigInt::from(2) * &den))
    };
    Rat::new(rounded, scale).to_f64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two() {
        let r = sqrt_rat(&rat(2, 1), 128);
        assert!(r.width() <= eps(128));
        let f = r.to_f64();
        assert!((f - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn ln_matches_f64() {
        for &(n, d) in &[(2i64, 1i64), (3, 1), (10, 1), (1, 2), (7, 3), (1000, 1)] {
            let r = ln_rat(&rat(n, d), 96);
            let f = (n as f64 / d as f64).ln();
            assert!((r.to_f64() - f).abs() < 1e-12, "ln({n}/{d})");
            assert!(r.contains(&Rat::from_float(f).unwrap()) || r.width() < eps(90));
        }
    }

    #[test]
    fn arcosh_reference() {
        // arcosh(3.64797...) doubled gives the Klein quadric systole 3.936.
        let x = Interval::point(rat(365, 100));
        let r = arcosh_interval(&x, 96).scale(&rat(2, 1));
        let f = 2.0 * ((3.65f64) + (3.65f64 * 3.65 - 1.0).sqrt()).ln();
        assert!((r.to_f64() - f).abs() < 1e-12);
    }

    #[test]
    fn rounding() {
        let x = Interval::point(rat(14648, 10000));
        assert_eq!(round_decimals(&x, 3), 1.465);
        let y = Interval::point(rat(-14648, 10000));
        assert_eq!(round_decimals(&y, 3), -1.465);
    }

    #[test]
    fn nested_sqrt_refinement() {
        let x = rat(5, 3);
        let a = sqrt_rat(&x, 64);
        let b = sqrt_rat(&x, 128);
        assert!(a.contains_interval(&b));
    }
}
