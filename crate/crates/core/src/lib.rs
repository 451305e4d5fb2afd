//! Exact computation of upper bounds on the systolic length of Riemann
//! surfaces uniformized by congruence subgroups of hyperbolic triangle
//! groups.
//!
//! The pipeline realizes a triangle group inside the unit group of an
//! explicit quaternion order over a totally real field, reduces the
//! order modulo a prime ideal to obtain an epimorphism onto a finite
//! projective matrix group, extracts Schreier generators of the kernel
//! from the coset graph, and minimizes the exact reduced traces of the
//! generators.  Hyperbolic geometry turns the minimal trace `x > 2`
//! into the length bound `2 arcosh(x/2)`.
//!
//! All arithmetic along the critical path is exact: rationals and big
//! integers for field elements, Sturm sequences for real embeddings,
//! and interval refinement for sign decisions.  Floating point appears
//! only as a rigorous prefilter and in the final decimal rendering.

pub mod classes;
pub mod coset;
pub mod error;
pub mod field;
pub mod gf;
pub mod gfpoly;
pub mod intpoly;
pub mod numeric;
pub mod order;
pub mod pipeline;
pub mod primes;
pub mod projmat;
pub mod quat;
pub mod split;
pub mod sturm;
pub mod word;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// A hyperbolic triangle group signature `(a, b, c)` with `a <= b <= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Triple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Triple {
    /// Validates and orders a triple.  Requires all entries finite,
    /// at least 2, and `1/a + 1/b + 1/c < 1` (hyperbolic).
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let [a, b, c] = v;
        if a < 2 {
            return Err(Error::InvalidTriple(format!(
                "({a},{b},{c}): entries must be at least 2"
            )));
        }
        // 1/a + 1/b + 1/c < 1  <=>  bc + ac + ab < abc
        let (a64, b64, c64) = (a as u64, b64(b), b64(c));
        let lhs = b64 * c64 + a64 * c64 + a64 * b64;
        if lhs >= a64 * b64 * c64 {
            let kind = if lhs == a64 * b64 * c64 { "Euclidean" } else { "spherical" };
            return Err(Error::InvalidTriple(format!("({a},{b},{c}) is {kind}, not hyperbolic")));
        }
        Ok(Triple { a, b, c })
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    /// `lcm(a, b, c)`, the level of the ambient cyclotomic real subfield.
    pub fn lcm(&self) -> u64 {
        let l = num_integer::lcm(self.a as u64, self.b as u64);
        num_integer::lcm(l, self.c as u64)
    }

    /// Hyperbolic area factor `1 - 1/a - 1/b - 1/c` as a rational.
    pub fn area_factor(&self) -> num_rational::BigRational {
        use num_bigint::BigInt;
        let one = num_rational::BigRational::from_integer(BigInt::from(1));
        let inv = |n: u32| {
            num_rational::BigRational::new(BigInt::from(1), BigInt::from(n))
        };
        &one - inv(self.a) - inv(self.b) - inv(self.c)
    }
}

fn b64(x: u32) -> u64 {
    x as u64
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_classification() {
        assert!(Triple::new(2, 3, 7).is_ok());
        assert!(Triple::new(7, 3, 2).unwrap() == Triple::new(2, 3, 7).unwrap());
        // Euclidean and spherical triples are rejected.
        assert!(Triple::new(2, 3, 6).is_err());
        assert!(Triple::new(2, 3, 5).is_err());
        assert!(Triple::new(2, 2, 99).is_err());
        assert!(Triple::new(1, 7, 7).is_err());
    }

    #[test]
    fn triple_lcm() {
        assert_eq!(Triple::new(2, 3, 7).unwrap().lcm(), 42);
        assert_eq!(Triple::new(2, 3, 12).unwrap().lcm(), 12);
        assert_eq!(Triple::new(3, 3, 10).unwrap().lcm(), 30);
    }
}
