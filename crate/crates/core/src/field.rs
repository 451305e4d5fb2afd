//! Exact arithmetic in totally real number fields.
//!
//! A field is described by the monic integer minimal polynomial of a
//! primitive element together with isolating intervals for all of its
//! real roots; one root is distinguished and plays the role of the
//! embedding `v0` through which the triangle group acts on the
//! hyperbolic plane.
//!
//! Fields are constructed inside the ambient real cyclotomic field
//! `Q(2cos(pi/L))`, `L = lcm(a,b,c)`, whose Galois action is the
//! explicit substitution `2cos(pi/L) -> D_k(2cos(pi/L))`.  Primitive
//! elements and minimal polynomials are obtained from Galois orbits,
//! so no general number-field factorization machinery is needed.

use crate::error::Error;
use crate::intpoly::{dickson, min_poly_2cos, IntPoly, QPoly, Rat};
use crate::numeric::{eps, Interval, IntervalSign};
use crate::sturm::{isolate_real_roots, refine_to_width, RootInterval};
use crate::{Result, Triple};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

static FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// Description of a totally real number field `Q(xi)`.
#[derive(Debug)]
pub struct FieldDesc {
    pub id: u64,
    /// Monic integer minimal polynomial of the primitive element.
    pub min_poly: IntPoly,
    pub degree: usize,
    /// Isolating intervals for all real roots, in increasing order.
    pub roots: Vec<RootInterval>,
    /// Index of the root realizing the distinguished embedding `v0`.
    pub distinguished: usize,
    /// Set when the power basis is certified to span the full ring of
    /// integers (true for `Q(2cos(pi/n))`); enables ramified prime
    /// decomposition via factorization with multiplicities.
    pub monogenic_certified: bool,
    /// Row `k` holds the coefficients of `x^(degree+k)` reduced modulo
    /// the minimal polynomial.
    reduction: Vec<Vec<BigInt>>,
    /// `(value, abs error)` of `xi^i` at the distinguished root, used
    /// as a fast floating-point prefilter.
    pub powers_f64: Vec<(f64, f64)>,
}

impl FieldDesc {
    /// Builds a field description from a monic squarefree integer
    /// polynomial, all of whose roots are real.  The distinguished
    /// root is selected by `pick`, given the refined root list.
    pub fn new(min_poly: IntPoly, distinguished_value: &Interval, monogenic: bool) -> Arc<Self> {
        assert!(min_poly.is_monic(), "minimal polynomial must be monic");
        let degree = min_poly.degree() as usize;
        let mut roots = isolate_real_roots(&min_poly);
        assert_eq!(roots.len(), degree, "field is not totally real");
        for r in roots.iter_mut() {
            refine_to_width(&min_poly, r, &eps(80));
        }
        let mut hits: Vec<usize> = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            let iv = r.to_interval();
            if iv.hi >= distinguished_value.lo && iv.lo <= distinguished_value.hi {
                hits.push(i);
            }
        }
        assert_eq!(
            hits.len(),
            1,
            "distinguished embedding not uniquely identified; refine the defining value"
        );
        let distinguished = hits[0];
        let reduction = reduction_rows(&min_poly);
        let mut desc = FieldDesc {
            id: FIELD_ID.fetch_add(1, AtomicOrdering::Relaxed),
            min_poly,
            degree,
            roots,
            distinguished,
            monogenic_certified: monogenic,
            reduction,
            powers_f64: Vec::new(),
        };
        desc.powers_f64 = desc.compute_power_bounds();
        Arc::new(desc)
    }

    /// The rational field `Q` as a degenerate degree-1 field.
    pub fn rationals() -> Arc<Self> {
        // minimal polynomial x; the "root" is 0
        let p = IntPoly::from_i64(&[0, 1]);
        Self::new(p, &Interval::from_int(0), true)
    }

    fn compute_power_bounds(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.degree);
        let mut r = self.roots[self.distinguished].clone();
        refine_to_width(&self.min_poly, &mut r, &eps(90));
        let base = r.to_interval();
        let mut cur = Interval::point(Rat::one());
        for _ in 0..self.degree {
            let lo = cur.lo.to_f64().unwrap_or(f64::NAN);
            let hi = cur.hi.to_f64().unwrap_or(f64::NAN);
            let val = 0.5 * (lo + hi);
            let err = (hi - lo).abs() + (val.abs() + 1.0) * 1e-13;
            out.push((val, err));
            cur = cur.mul(&base);
        }
        out
    }

    /// Element `xi^k` of this field.
    pub fn gen_pow(self: &Arc<Self>, k: usize) -> FieldElem {
        assert!(k < self.degree);
        let mut num = vec![BigInt::zero(); self.degree];
        num[k] = BigInt::one();
        FieldElem { field: Arc::clone(self), num, den: BigInt::one() }
    }

    pub fn generator(self: &Arc<Self>) -> FieldElem {
        if self.degree == 1 {
            // x - c: the generator is the rational root c
            let c = -self.min_poly.coeff(0);
            return FieldElem::from_int_in(self, c);
        }
        self.gen_pow(1)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        FieldElem::from_int_in(self, BigInt::one())
    }
}

fn reduction_rows(min_poly: &IntPoly) -> Vec<Vec<BigInt>> {
    let d = min_poly.degree() as usize;
    // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
    let base: Vec<BigInt> = (0..d).map(|i| -min_poly.coeff(i)).collect();
    let mut rows: Vec<Vec<BigInt>> = vec![base.clone()];
    for _ in 1..d.max(1) {
        let prev = rows.last().unwrap();
        // multiply by x: shift, then fold the overflow coefficient
        let overflow = prev[d - 1].clone();
        let mut next = vec![BigInt::zero(); d];
        for i in 1..d {
            next[i] = prev[i - 1].clone();
        }
        for i in 0..d {
            next[i] += &overflow * &base[i];
        }
        rows.push(next);
    }
    rows
}

/// Element of a `FieldDesc` in the power basis of its primitive
/// element: `(num[0] + num[1] xi + ...)/den` with `den > 0` and
/// `gcd(den, content(num)) = 1`.
#[derive(Clone, Debug)]
pub struct FieldElem {
    pub field: Arc<FieldDesc>,
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.field.id, other.field.id);
        self.den == other.den && self.num == other.num
    }
}
impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl FieldElem {
    pub fn from_int_in(field: &Arc<FieldDesc>, n: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = n;
        FieldElem { field: Arc::clone(field), num, den: BigInt::one() }
    }

    pub fn from_i64_in(field: &Arc<FieldDesc>, n: i64) -> Self {
        Self::from_int_in(field, BigInt::from(n))
    }

    pub fn from_rat_in(field: &Arc<FieldDesc>, r: &Rat) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = r.numer().clone();
        let mut e = FieldElem { field: Arc::clone(field), num, den: r.denom().clone() };
        e.normalize();
        e
    }

    /// Builds an element from rational coordinates in the power basis.
    pub fn from_coords(field: &Arc<FieldDesc>, coords: &[Rat]) -> Self {
        assert_eq!(coords.len(), field.degree);
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut e = FieldElem { field: Arc::clone(field), num, den };
        e.normalize();
        e
    }

    pub fn coords(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|n| Rat::new(n.clone(), self.den.clone()))
            .collect()
    }

    fn normalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for n in self.num.iter_mut() {
                *n = -n.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                return;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if self.num.iter().all(|n| n.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for n in self.num.iter_mut() {
                *n = &*n / &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num[0].is_one()
            && self.num[1..].iter().all(|n| n.is_zero())
    }

    /// Returns `Some(r)` when the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.num[1..].iter().all(|n| n.is_zero()) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field.id != other.field.id {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field.id, other.field.id);
        let g = self.den.gcd(&other.den);
        let la = &other.den / &g;
        let lb = &self.den / &g;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &la + b * &lb)
            .collect();
        let mut e = FieldElem { field: self.field.clone(), num, den: &self.den * &la };
        e.normalize();
        e
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field.id, other.field.id);
        let d = self.field.degree;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        // reduce degrees >= d
        for k in (d..2 * d - 1).rev() {
            if conv[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut conv[k], BigInt::zero());
            let row = &self.field.reduction[k - d];
            for i in 0..d {
                if !row[i].is_zero() {
                    conv[i] += &c * &row[i];
                }
            }
        }
        conv.truncate(d);
        let mut e = FieldElem {
            field: self.field.clone(),
            num: conv,
            den: &self.den * &other.den,
        };
        e.normalize();
        e
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let kk = BigInt::from(k);
        let mut e = FieldElem {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * &kk).collect(),
            den: self.den.clone(),
        };
        e.normalize();
        e
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0);
        let mut e = FieldElem {
            field: self.field.clone(),
            num: self.num.clone(),
            den: &self.den * BigInt::from(k),
        };
        e.normalize();
        e
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElem::from_int_in(&self.field, BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against the minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = QPoly::from_int(&self.field.min_poly);
        let a = QPoly::new(self.coords());
        // extended gcd: find u with a*u = gcd (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::new(vec![Rat::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        assert_eq!(r0.degree(), 0, "minimal polynomial is not irreducible?");
        let c = r0.coeff(0);
        let inv_c = Rat::one() / c;
        let mut coords: Vec<Rat> = (0..self.field.degree).map(|i| t0.coeff(i) * &inv_c).collect();
        coords.resize(self.field.degree, Rat::zero());
        Ok(FieldElem::from_coords(&self.field, &coords))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.mul(&other.inv()?))
    }

    /// Evaluates the element at the real root with the given index,
    /// returning an interval of width at most `2^(1-bits)`.
    pub fn embed(&self, root_index: usize, bits: u32) -> Interval {
        assert!(root_index < self.field.degree);
        if let Some(r) = self.as_rational() {
            return Interval::point(r);
        }
        let target = eps(bits - 1);
        let mut root = self.field.roots[root_index].clone();
        let mut width = eps(bits.min(70));
        loop {
            refine_to_width(&self.field.min_poly, &mut root, &width);
            let iv = self.horner_interval(&root.to_interval());
            if iv.width() <= target {
                return iv;
            }
            width = &width * eps(30);
        }
    }

    /// Evaluates at the distinguished embedding `v0`.
    pub fn embed_v0(&self, bits: u32) -> Interval {
        self.embed(self.field.distinguished, bits)
    }

    fn horner_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rat::zero());
        for c in self.num.iter().rev() {
            acc = acc.mul(x).add(&Interval::point(Rat::from_integer(c.clone())));
        }
        acc.scale(&Rat::new(BigInt::one(), self.den.clone()))
    }

    /// Exact sign of the element at `v0`.  Zero is decided exactly;
    /// nonzero signs are decided by interval refinement, which always
    /// terminates because `v0` is injective.
    pub fn sign_v0(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return r.cmp(&Rat::zero());
        }
        let mut bits = 48;
        loop {
            let iv = self.embed_v0(bits);
            match iv.sign() {
                IntervalSign::Positive => return Ordering::Greater,
                IntervalSign::Negative => return Ordering::Less,
                IntervalSign::Straddles => {
                    bits *= 2;
                    assert!(bits <= 1 << 16, "sign_v0 failed to converge; element should be zero?");
                }
            }
        }
    }

    /// Compares `|v0(self)|` with `|v0(other)|` exactly.
    pub fn cmp_abs_v0(&self, other: &Self) -> Ordering {
        let diff = self.square().sub(&other.square());
        diff.sign_v0()
    }

    /// Canonical representative of `{x, -x}`: the one with positive
    /// `v0` (zero is returned as is).
    pub fn abs_v0(&self) -> Self {
        match self.sign_v0() {
            Ordering::Less => self.neg(),
            _ => self.clone(),
        }
    }

    /// Fast rigorous approximation of `v0(self)`: returns the value and
    /// an absolute error bound, or `None` when magnitudes overflow f64.
    pub fn approx_v0(&self) -> Option<(f64, f64)> {
        let den = self.den.to_f64()?;
        if !den.is_finite() || den == 0.0 {
            return None;
        }
        let mut val = 0.0f64;
        let mut err = 0.0f64;
        for (c, (p, pe)) in self.num.iter().zip(&self.field.powers_f64) {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() {
                return None;
            }
            let term = cf * p;
            val += term;
            // conversion error of c, power interval error, rounding
            err += cf.abs() * pe + term.abs() * 1e-12 + 1e-300;
            err += val.abs() * 2e-16;
        }
        let out = val / den;
        let out_err = (err / den.abs()) * 1.0001 + out.abs() * 1e-12;
        if out.is_finite() && out_err.is_finite() {
            Some((out, out_err * 4.0))
        } else {
            None
        }
    }

    /// Renders as a polynomial in the symbol `sym`, e.g. `2*u^2+u-1`.
    pub fn pretty(&self, sym: &str) -> String {
        let mut s = String::new();
        let mut first = true;
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if c.is_negative() { "-" } else { "+" });
            }
            let unit_mag = mag.is_one();
            if i == 0 {
                s.push_str(&mag.to_string());
            } else {
                if !unit_mag {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(sym);
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
        }
        if first {
            s.push('0');
        }
        if !self.den.is_one() {
            format!("({s})/{}", self.den)
        } else {
            s
        }
    }
}

/// The ambient real cyclotomic field `Q(2cos(pi/L))` with its Galois
/// action.
pub struct Ambient {
    pub level: u64,
    pub desc: Arc<FieldDesc>,
    /// Representatives `k` of `(Z/2L)^x / {+-1}`, i.e. `1 <= k < L`,
    /// `gcd(k, 2L) = 1`.
    pub ks: Vec<u64>,
    /// Image of the generator under `sigma_k` for each listed `k`.
    images: Vec<FieldElem>,
}

impl Ambient {
    pub fn new(level: u64) -> Self {
        assert!(level >= 2);
        let min = min_poly_2cos(level);
        // 2cos(pi/L) is the largest real root of its minimal polynomial.
        let d = min.degree() as usize;
        let mut roots = isolate_real_roots(&min);
        let top = roots.last_mut().unwrap();
        refine_to_width(&min, top, &eps(90));
        let top_iv = top.to_interval();
        let desc = FieldDesc::new(min, &top_iv, true);
        assert_eq!(desc.degree, d);
        let ks: Vec<u64> = (1..level)
            .filter(|k| num_integer::gcd(*k, 2 * level) == 1)
            .collect();
        assert_eq!(ks.len(), d);
        let images = ks
            .iter()
            .map(|&k| {
                let dk = dickson(k as u32);
                poly_at(&desc, &dk, &desc.generator())
            })
            .collect();
        Ambient { level, desc, ks, images }
    }

    /// `2cos(pi/n)` for `n | L`, as an ambient element.
    pub fn two_cos_pi_over(&self, n: u64) -> FieldElem {
        assert!(self.level % n == 0);
        let k = self.level / n;
        poly_at(&self.desc, &dickson(k as u32), &self.desc.generator())
    }

    /// Applies `sigma_k` (by index into `ks`) to an ambient element.
    pub fn galois(&self, elem: &FieldElem, idx: usize) -> FieldElem {
        let poly = IntPoly::new(elem.num.clone());
        let img = poly_at(&self.desc, &poly, &self.images[idx]);
        let mut e = FieldElem { field: img.field.clone(), num: img.num, den: &img.den * &elem.den };
        e.normalize();
        e
    }

    /// Galois orbit of an element, deduplicated.
    pub fn orbit(&self, elem: &FieldElem) -> Vec<FieldElem> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for idx in 0..self.ks.len() {
            let img = self.galois(elem, idx);
            let key = (img.num.clone(), img.den.clone());
            if seen.insert(key) {
                out.push(img);
            }
        }
        out
    }

    /// Indices `idx` with `sigma_{ks[idx]}` fixing every listed element.
    pub fn stabilizer(&self, elems: &[FieldElem]) -> Vec<usize> {
        (0..self.ks.len())
            .filter(|&idx| elems.iter().all(|e| &self.galois(e, idx) == e))
            .collect()
    }
}

/// Evaluates an integer polynomial at a field element.
pub fn poly_at(field: &Arc<FieldDesc>, poly: &IntPoly, x: &FieldElem) -> FieldElem {
    let mut acc = field.zero();
    for c in poly.coeffs.iter().rev() {
        acc = acc.mul(x).add(&FieldElem::from_int_in(field, c.clone()));
    }
    acc
}

/// Solves `A c = b` over the rationals, where `A` is given by columns.
/// Returns `None` when the system is inconsistent.
pub fn solve_columns(columns: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let rows = target.len();
    let cols = columns.len();
    debug_assert!(columns.iter().all(|c| c.len() == rows));
    // augmented matrix
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let mut piv = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let inv = Rat::one() / m[r][c].clone();
        for j in c..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

/// The trace field `F` and invariant trace field `E` of a triangle
/// group, together with the distinguished generators.
pub struct TriangleFields {
    pub tau: Triple,
    pub ambient: Ambient,
    pub f: Arc<FieldDesc>,
    /// `2cos(pi/a)`, `2cos(pi/b)`, `2cos(pi/c)` as elements of `F`.
    pub lambda: [FieldElem; 3],
    /// Primitive element of `F` inside the ambient field.
    pub xi_ambient: FieldElem,
    /// Ambient coordinates of the powers of `xi` (columns for solving).
    xi_power_cols: Vec<Vec<Rat>>,
    pub e: SubfieldData,
}

/// The invariant trace field `E` viewed inside `F`.
pub struct SubfieldData {
    pub desc: Arc<FieldDesc>,
    /// Primitive element of `E` as an element of `F`.
    pub theta: FieldElem,
    /// Powers of theta as elements of `F` (columns for solving).
    theta_power_cols: Vec<Vec<Rat>>,
    pub same_as_parent: bool,
}

impl TriangleFields {
    pub fn build(tau: Triple) -> Result<Self> {
        let ambient = Ambient::new(tau.lcm());
        let la = ambient.two_cos_pi_over(tau.a as u64);
        let lb = ambient.two_cos_pi_over(tau.b as u64);
        let lc = ambient.two_cos_pi_over(tau.c as u64);

        // Degree of F from the Galois correspondence.
        let stab_f = ambient.stabilizer(&[la.clone(), lb.clone(), lc.clone()]);
        let d_f = ambient.ks.len() / stab_f.len();

        // Primitive element xi = la + t*lb + s*lc, smallest (t, s) in
        // graded order whose orbit has maximal size d_f.
        let (xi, _ts) = search_primitive2(&ambient, &la, &lb, &lc, d_f)?;
        let orbit = ambient.orbit(&xi);
        assert_eq!(orbit.len(), d_f);
        let min_poly_f = orbit_min_poly(&ambient, &orbit)?;

        let xi_v0 = xi.embed(ambient.desc.distinguished, 120);
        let monogenic_f = is_cos_min_poly(&min_poly_f, 2 * ambient.level);
        let f = FieldDesc::new(min_poly_f, &xi_v0, monogenic_f);

        let xi_power_cols = power_columns(&ambient, &xi, f.degree);
        let lambda = [
            express(&f, &xi_power_cols, &la)?,
            express(&f, &xi_power_cols, &lb)?,
            express(&f, &xi_power_cols, &lc)?,
        ];

        // Invariant trace field E, generated by the squares and the
        // triple product of the lambdas.
        let gens_e = [
            la.square(),
            lb.square(),
            lc.square(),
            la.mul(&lb).mul(&lc),
        ];
        let stab_e = ambient.stabilizer(&gens_e);
        let d_e = ambient.ks.len() / stab_e.len();
        assert!(d_f % d_e == 0);

        let e = if d_e == d_f {
            SubfieldData {
                desc: Arc::clone(&f),
                theta: f.generator(),
                theta_power_cols: xi_power_cols.clone(),
                same_as_parent: true,
            }
        } else {
            let (theta_amb, _) = search_primitive4(&ambient, &gens_e, d_e)?;
            let orbit_e = ambient.orbit(&theta_amb);
            assert_eq!(orbit_e.len(), d_e);
            let min_poly_e = orbit_min_poly(&ambient, &orbit_e)?;
            let theta_v0 = theta_amb.embed(ambient.desc.distinguished, 120);
            let monogenic_e = d_e == 1 || is_cos_min_poly(&min_poly_e, 2 * ambient.level);
            let e_desc = FieldDesc::new(min_poly_e, &theta_v0, monogenic_e);
            let theta_in_f = express(&f, &xi_power_cols, &theta_amb)?;
            let theta_power_cols = {
                let mut cols = Vec::with_capacity(d_e);
                let mut cur = f.one();
                for _ in 0..d_e {
                    cols.push(cur.coords());
                    cur = cur.mul(&theta_in_f);
                }
                cols
            };
            SubfieldData {
                desc: e_desc,
                theta: theta_in_f,
                theta_power_cols,
                same_as_parent: false,
            }
        };

        Ok(TriangleFields {
            tau,
            ambient,
            f,
            lambda,
            xi_ambient: xi,
            xi_power_cols,
            e,
        })
    }

    /// Converts an `E`-element to an `F`-element.
    pub fn e_to_f(&self, x: &FieldElem) -> FieldElem {
        assert_eq!(x.field.id, self.e.desc.id);
        if self.e.same_as_parent {
            return FieldElem { field: Arc::clone(&self.f), num: x.num.clone(), den: x.den.clone() };
        }
        let mut acc = self.f.zero();
        let theta = &self.e.theta;
        let mut pow = self.f.one();
        for (i, c) in x.coords().iter().enumerate() {
            if i > 0 {
                pow = pow.mul(theta);
            }
            if !c.is_zero() {
                acc = acc.add(&pow.mul(&FieldElem::from_rat_in(&self.f, c)));
            }
        }
        acc
    }

    /// Expresses an `F`-element in `E`, if it lies in the subfield.
    pub fn f_to_e(&self, x: &FieldElem) -> Option<FieldElem> {
        assert_eq!(x.field.id, self.f.id);
        if self.e.same_as_parent {
            return Some(FieldElem {
                field: Arc::clone(&self.e.desc),
                num: x.num.clone(),
                den: x.den.clone(),
            });
        }
        let sol = solve_columns(&self.e.theta_power_cols, &x.coords())?;
        // verify exactly (solve_columns may return a least-squares-like
        // pivot solution only for consistent systems; verify regardless)
        let cand = FieldElem::from_coords(&self.e.desc, &sol);
        let back = self.e_to_f(&cand);
        if &back == x {
            Some(cand)
        } else {
            None
        }
    }
}

fn power_columns(ambient: &Ambient, xi: &FieldElem, degree: usize) -> Vec<Vec<Rat>> {
    let mut cols = Vec::with_capacity(degree);
    let mut cur = ambient.desc.one();
    for _ in 0..degree {
        cols.push(cur.coords());
        cur = cur.mul(xi);
    }
    cols
}

/// Expresses an ambient element known to lie in the subfield spanned by
/// the given power columns.
fn express(
    field: &Arc<FieldDesc>,
    cols: &[Vec<Rat>],
    target: &FieldElem,
) -> Result<FieldElem> {
    let sol = solve_columns(cols, &target.coords()).ok_or_else(|| {
        Error::Internal("element does not lie in the constructed subfield".into())
    })?;
    Ok(FieldElem::from_coords(field, &sol))
}

fn search_primitive2(
    ambient: &Ambient,
    la: &FieldElem,
    lb: &FieldElem,
    lc: &FieldElem,
    want: usize,
) -> Result<(FieldElem, (i64, i64))> {
    for total in 0..=16i64 {
        for t in 0..=total {
            let s = total - t;
            let cand = la
                .add(&lb.mul_i64(t))
                .add(&lc.mul_i64(s));
            if ambient.orbit(&cand).len() == want {
                return Ok((cand, (t, s)));
            }
        }
    }
    Err(Error::Internal("no primitive element found for F".into()))
}

fn search_primitive4(
    ambient: &Ambient,
    gens: &[FieldElem; 4],
    want: usize,
) -> Result<(FieldElem, (i64, i64, i64))> {
    for total in 0..=12i64 {
        for t in 0..=total {
            for s in 0..=(total - t) {
                let u = total - t - s;
                let cand = gens[0]
                    .add(&gens[1].mul_i64(t))
                    .add(&gens[2].mul_i64(s))
                    .add(&gens[3].mul_i64(u));
                if ambient.orbit(&cand).len() == want {
                    return Ok((cand, (t, s, u)));
                }
            }
        }
    }
    Err(Error::Internal("no primitive element found for E".into()))
}

/// Product of `(x - v)` over the orbit; must have integer coefficients.
fn orbit_min_poly(ambient: &Ambient, orbit: &[FieldElem]) -> Result<IntPoly> {
    let one = ambient.desc.one();
    let mut coeffs: Vec<FieldElem> = vec![one.clone()]; // leading first? use lowest-first
    // represent polynomial with field coefficients, lowest first
    let mut poly: Vec<FieldElem> = vec![one];
    for v in orbit {
        // multiply by (x - v)
        let mut next = vec![ambient.desc.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(v));
        }
        poly = next;
    }
    coeffs.clear();
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        let r = c.as_rational().ok_or_else(|| {
            Error::Internal("orbit product has an irrational coefficient".into())
        })?;
        if !r.denom().is_one() {
            return Err(Error::Internal("orbit product is not integral".into()));
        }
        out.push(r.numer().clone());
    }
    Ok(IntPoly::new(out))
}

/// Does the polynomial define `Q(2cos(pi/n))` in its standard generator?
fn is_cos_min_poly(p: &IntPoly, two_level: u64) -> bool {
    if p.degree() == 1 {
        return true;
    }
    let mut n = 2;
    while n <= two_level {
        if two_level % n == 0 && &min_poly_2cos(n) == p {
            return true;
        }
        n += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hurwitz() -> TriangleFields {
        TriangleFields::build(Triple::new(2, 3, 7).unwrap()).unwrap()
    }

    #[test]
    fn hurwitz_field() {
        let tf = hurwitz();
        assert_eq!(tf.f.degree, 3);
        assert_eq!(tf.f.min_poly, IntPoly::from_i64(&[1, -2, -1, 1]));
        assert!(tf.e.same_as_parent);
        assert!(tf.f.monogenic_certified);
        // lambda_c is the generator mu itself
        assert_eq!(tf.lambda[2], tf.f.gen_pow(1));
        // v0(mu) ~ 1.8019377
        let v = tf.lambda[2].embed_v0(60).to_f64();
        assert!((v - 1.8019377358048383).abs() < 1e-12);
    }

    #[test]
    fn degrees_2_3_12_and_2_3_8() {
        let tf = TriangleFields::build(Triple::new(2, 3, 12).unwrap()).unwrap();
        assert_eq!(tf.f.degree, 4);
        assert_eq!(tf.e.desc.degree, 2);
        assert!(!tf.e.same_as_parent);
        let tf = TriangleFields::build(Triple::new(2, 3, 8).unwrap()).unwrap();
        assert_eq!(tf.f.degree, 4);
        assert_eq!(tf.e.desc.degree, 2);
    }

    #[test]
    fn degrees_3_3_10() {
        let tf = TriangleFields::build(Triple::new(3, 3, 10).unwrap()).unwrap();
        assert_eq!(tf.f.degree, 4);
        assert!(tf.e.same_as_parent);
    }

    #[test]
    fn mu_cube_reduction() {
        // mu^3 = mu^2 + 2mu - 1 modulo the minimal polynomial.
        let tf = hurwitz();
        let mu = tf.f.gen_pow(1);
        let lhs = mu.pow(3);
        let rhs = tf.f.gen_pow(2).add(&mu.mul_i64(2)).sub(&tf.f.one());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn arithmetic_identities() {
        let tf = hurwitz();
        let mu = tf.f.gen_pow(1);
        let inv = mu.inv().unwrap();
        assert!(mu.mul(&inv).is_one());
        assert_eq!(mu.add(&tf.f.zero()), mu);
        // (mu + 1/2)(mu - 1/2) = mu^2 - 1/4
        let half = FieldElem::from_rat_in(&tf.f, &Rat::new(BigInt::one(), BigInt::from(2)));
        let prod = mu.add(&half).mul(&mu.sub(&half));
        assert_eq!(prod, mu.square().sub(&half.square()));
    }

    #[test]
    fn embed_rational_is_exact() {
        let tf = hurwitz();
        let half = FieldElem::from_rat_in(&tf.f, &Rat::new(BigInt::one(), BigInt::from(2)));
        let iv = half.embed(0, 200);
        assert_eq!(iv.lo, iv.hi);
        assert_eq!(iv.lo, Rat::new(BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn embed_nesting() {
        let tf = hurwitz();
        let x = tf.f.gen_pow(2).sub(&tf.f.one().mul_i64(3)); // mu^2 - 3 = delta
        let a = x.embed_v0(64);
        let b = x.embed_v0(160);
        assert!(a.contains_interval(&b));
        assert_eq!(x.sign_v0(), Ordering::Greater); // v0(delta) > 0
    }

    #[test]
    fn delta_sign_other_embeddings() {
        // delta = mu^2 - 3 is negative at the two non-distinguished roots.
        let tf = hurwitz();
        let delta = tf.f.gen_pow(2).sub(&tf.f.one().mul_i64(3));
        let mut negs = 0;
        for i in 0..3 {
            if delta.embed(i, 80).sign() == IntervalSign::Negative {
                negs += 1;
            }
        }
        assert_eq!(negs, 2);
        assert_eq!(tf.f.distinguished, 2); // largest root of the cubic
    }

    #[test]
    fn subfield_conversion_2_3_12() {
        let tf = TriangleFields::build(Triple::new(2, 3, 12).unwrap()).unwrap();
        // sqrt3 = lambda_c^2 - 2 lies in E
        let sqrt3 = tf.lambda[2].square().sub(&tf.f.one().mul_i64(2));
        let in_e = tf.f_to_e(&sqrt3).expect("sqrt3 must lie in E");
        assert_eq!(tf.e_to_f(&in_e), sqrt3);
        let justv = in_e.embed_v0(60).to_f64();
        assert!((justv - 3f64.sqrt()).abs() < 1e-12);
        // sqrt2 = xi^3 - 3 xi does NOT lie in E = Q(sqrt3)
        let xi = tf.f.gen_pow(1);
        let sqrt2 = xi.pow(3).sub(&xi.mul_i64(3));
        assert!((sqrt2.embed_v0(60).to_f64() - 2f64.sqrt()).abs() < 1e-12);
        assert!(tf.f_to_e(&sqrt2).is_none());
    }

    #[test]
    fn pretty_printing() {
        let tf = hurwitz();
        let x = tf.f.gen_pow(2).mul_i64(2).add(&tf.f.gen_pow(1)).sub(&tf.f.one());
        assert_eq!(x.pretty("u"), "2*u^2+u-1");
    }
}
