//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.
//!
//! Every value is a pair of canonical big rationals `(a, b)` standing for
//! `a + b sqrt(d)`. Since `sqrt(d)` is irrational the representation is
//! unique, so structural equality and hashing coincide with value equality.
//! Signs and comparisons are decided with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (positive denominator, reduced).
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.9"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let n = if negative { -n } else { n };
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// `floor(sqrt(q))` for `q >= 0`. Uses `floor(sqrt(q)) = floor(sqrt(floor(q)))`.
fn floor_sqrt(q: &Rational) -> BigInt {
    debug_assert!(!q.is_negative());
    q.floor().to_integer().sqrt()
}

/// Smallest integer `k >= 0` with `k^2 >= q`.
fn ceil_sqrt(q: &Rational) -> BigInt {
    let k = floor_sqrt(q);
    if Rational::from_integer(&k * &k) < *q {
        k + 1
    } else {
        k
    }
}

/// An element `a + b sqrt(d)` of the real quadratic field `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        Ok(QuadNum { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64, d: u64) -> Result<Self> {
        Self::new(int(a), int(b), d)
    }

    /// Field tag is trusted; used internally where `d` was validated upstream.
    pub(crate) fn raw(a: Rational, b: Rational, d: u64) -> Self {
        QuadNum { a, b, d }
    }

    pub fn from_rational(q: Rational, d: u64) -> Result<Self> {
        Self::new(q, Rational::zero(), d)
    }

    pub fn zero(d: u64) -> Self {
        QuadNum::raw(Rational::zero(), Rational::zero(), d)
    }

    pub fn one(d: u64) -> Self {
        QuadNum::raw(Rational::one(), Rational::zero(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadNum::raw(self.a.clone(), -&self.b, self.d)
    }

    /// Algebraic norm `x * conj(x) = a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.d_rational()
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    fn d_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.d))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MismatchedField {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadNum::raw(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadNum::raw(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * self.d_rational();
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(QuadNum::raw(a, b, self.d))
    }

    /// `1/x = conj(x) / N(x)`; the norm of a nonzero element is nonzero.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadNum::raw(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadNum::raw(&self.a * q, &self.b * q, self.d)
    }

    /// Sign of the real number `a + b sqrt(d)` as -1, 0 or +1, decided by
    /// comparing `a^2` with `d b^2` when `a` and `b` have opposite signs.
    pub fn exact_sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa >= 0 && sb >= 0 {
            return if sa == 0 && sb == 0 { 0 } else { 1 };
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * self.d_rational();
        let mag = match a2.cmp(&db2) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            // a^2 = d b^2 with b != 0 would make sqrt(d) rational
            Ordering::Equal => unreachable!("sqrt({}) is irrational", self.d),
        };
        // the term with the larger magnitude decides
        if mag > 0 {
            sa
        } else {
            sb
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.exact_sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let diff = QuadNum::raw(&self.a - q, self.b.clone(), self.d);
        diff.exact_sign().cmp(&0)
    }

    pub fn abs(&self) -> Self {
        if self.exact_sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// `[a_num, a_den, b_num, b_den]` as decimal strings.
    pub fn to_tuple(&self) -> [String; 4] {
        [
            self.a.numer().to_string(),
            self.a.denom().to_string(),
            self.b.numer().to_string(),
            self.b.denom().to_string(),
        ]
    }

    pub fn from_tuple(t: &[String; 4], d: u64) -> Result<Self> {
        let p = |s: &String| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::Format(format!("bad integer {s:?}")))
        };
        let (an, ad, bn, bd) = (p(&t[0])?, p(&t[1])?, p(&t[2])?, p(&t[3])?);
        if !ad.is_positive() || !bd.is_positive() {
            return Err(Error::Format("non-positive denominator".into()));
        }
        let a = Rational::new(an.clone(), ad.clone());
        let b = Rational::new(bn.clone(), bd.clone());
        if a.numer() != &an || b.numer() != &bn {
            return Err(Error::Format("rational not in lowest terms".into()));
        }
        QuadNum::new(a, b, d)
    }
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Total order within one field. Comparing elements of different fields panics.
impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other).expect("comparison across quadratic fields")
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on mismatched fields; use the checked_* methods when
// the operands come from untrusted input.
macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs).expect("arithmetic across quadratic fields")
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::raw(-&self.a, -&self.b, self.d)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = format_rational(&self.a);
        if self.b.is_zero() {
            return write!(f, "{a}");
        }
        let b_abs = self.b.abs();
        let coeff = if b_abs.is_one() {
            String::new()
        } else if b_abs.is_integer() {
            format_rational(&b_abs)
        } else {
            format!("({})", format_rational(&b_abs))
        };
        let sign = if self.b.is_negative() { '-' } else { '+' };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}√{}", self.d)
        } else {
            write!(f, "{a} {sign} {coeff}√{}", self.d)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingVariant {
    /// `Z[sqrt d]`.
    #[serde(rename = "zsqrt")]
    ZSqrtD,
    /// The full ring of integers `Z[(1 + sqrt d)/2]`, only for `d = 1 mod 4`.
    #[serde(rename = "full")]
    FullIntegers,
    /// The rational integers `Z`, embedded diagonally. Its image is not
    /// a lattice in `G x H`; model sets built from it are periodic and serve
    /// as positive controls.
    #[serde(rename = "int")]
    RationalIntegers,
}

impl RingVariant {
    pub fn tag(self) -> &'static str {
        match self {
            RingVariant::ZSqrtD => "zsqrt",
            RingVariant::FullIntegers => "full",
            RingVariant::RationalIntegers => "int",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "zsqrt" => Ok(RingVariant::ZSqrtD),
            "full" => Ok(RingVariant::FullIntegers),
            "int" => Ok(RingVariant::RationalIntegers),
            other => Err(Error::InvalidRing(format!("unknown ring variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    d: u64,
    variant: RingVariant,
}

impl RingSpec {
    pub fn new(d: u64, variant: RingVariant) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        if variant == RingVariant::FullIntegers && d % 4 != 1 {
            return Err(Error::InvalidRing(format!(
                "full ring of integers differs from Z[sqrt {d}] only for d = 1 mod 4"
            )));
        }
        Ok(RingSpec { d, variant })
    }

    pub fn z_sqrt(d: u64) -> Result<Self> {
        Self::new(d, RingVariant::ZSqrtD)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn variant(&self) -> RingVariant {
        self.variant
    }

    /// Membership test. `x.d` must match the ring's field.
    pub fn contains(&self, x: &QuadNum) -> bool {
        if x.d != self.d {
            return false;
        }
        match self.variant {
            RingVariant::ZSqrtD => x.a.is_integer() && x.b.is_integer(),
            RingVariant::FullIntegers => {
                // x = (a' + b' sqrt d)/2 with a' = b' (mod 2)
                let two = int(2);
                let a2 = &x.a * &two;
                let b2 = &x.b * &two;
                a2.is_integer()
                    && b2.is_integer()
                    && (a2.to_integer() - b2.to_integer()).is_even_int()
            }
            RingVariant::RationalIntegers => x.a.is_integer() && x.b.is_zero(),
        }
    }

    /// A Z-basis of the ring inside `Q(sqrt d)`.
    pub fn basis(&self) -> Vec<QuadNum> {
        let d = self.d;
        match self.variant {
            RingVariant::ZSqrtD => vec![QuadNum::one(d), QuadNum::raw(int(0), int(1), d)],
            RingVariant::FullIntegers => {
                vec![QuadNum::one(d), QuadNum::raw(rat(1, 2), rat(1, 2), d)]
            }
            RingVariant::RationalIntegers => vec![QuadNum::one(d)],
        }
    }
}

trait IsEven {
    fn is_even_int(&self) -> bool;
}

impl IsEven for BigInt {
    fn is_even_int(&self) -> bool {
        num_integer::Integer::is_even(self)
    }
}

/// Closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn symmetric(r: Rational) -> Result<Self> {
        Self::new(-r.clone(), r)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn has_interior(&self) -> bool {
        self.lo < self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &QuadNum) -> bool {
        x.cmp_rational(&self.lo) != Ordering::Less && x.cmp_rational(&self.hi) != Ordering::Greater
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Shrinks both ends by `by`; `None` when nothing is left.
    pub fn eroded(&self, by: &Rational) -> Option<Interval> {
        Interval::new(&self.lo + by, &self.hi - by).ok()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Smallest integer `b` with `b sqrt(d) >= lower`.
fn min_multiple_of_sqrt(lower: &Rational, d: u64) -> BigInt {
    let dq = Rational::from_integer(BigInt::from(d));
    let q = lower * lower / dq;
    if lower.is_positive() {
        ceil_sqrt(&q)
    } else {
        -floor_sqrt(&q)
    }
}

/// Largest integer `b` with `b sqrt(d) <= upper`.
fn max_multiple_of_sqrt(upper: &Rational, d: u64) -> BigInt {
    -min_multiple_of_sqrt(&-upper, d)
}

/// All ring elements `x` with `x` in `phys` and `conj(x)` in `internal`,
/// sorted ascending.
///
/// From `x = a + b sqrt d` and `conj(x) = a - b sqrt d` we get
/// `2a = x + conj(x)` and `2 b sqrt d = x - conj(x)`, which bounds the integer
/// coordinates; every candidate in that box is then filtered exactly.
pub fn enumerate_ring_in_rectangle(
    ring: &RingSpec,
    phys: &Interval,
    internal: &Interval,
) -> Vec<QuadNum> {
    let d = ring.d;
    let trace_lo = &phys.lo + &internal.lo;
    let trace_hi = &phys.hi + &internal.hi;
    let skew_lo = &phys.lo - &internal.hi;
    let skew_hi = &phys.hi - &internal.lo;
    let mut out = Vec::new();
    match ring.variant {
        RingVariant::RationalIntegers => {
            let lo = std::cmp::max(&phys.lo, &internal.lo).ceil().to_integer();
            let hi = std::cmp::min(&phys.hi, &internal.hi).floor().to_integer();
            let mut a = lo;
            while a <= hi {
                out.push(QuadNum::raw(Rational::from_integer(a.clone()), Rational::zero(), d));
                a += 1;
            }
            return out;
        }
        RingVariant::ZSqrtD => {
            let half = rat(1, 2);
            let a_lo = (&trace_lo * &half).ceil().to_integer();
            let a_hi = (&trace_hi * &half).floor().to_integer();
            let b_lo = min_multiple_of_sqrt(&(&skew_lo * &half), d);
            let b_hi = max_multiple_of_sqrt(&(&skew_hi * &half), d);
            let mut b = b_lo;
            while b <= b_hi {
                let mut a = a_lo.clone();
                while a <= a_hi {
                    let x = QuadNum::raw(
                        Rational::from_integer(a.clone()),
                        Rational::from_integer(b.clone()),
                        d,
                    );
                    if phys.contains(&x) && internal.contains(&x.conjugate()) {
                        out.push(x);
                    }
                    a += 1;
                }
                b += 1;
            }
        }
        RingVariant::FullIntegers => {
            // doubled coordinates a' = 2a, b' = 2b with a' = b' (mod 2)
            let a_lo = trace_lo.ceil().to_integer();
            let a_hi = trace_hi.floor().to_integer();
            let b_lo = min_multiple_of_sqrt(&skew_lo, d);
            let b_hi = max_multiple_of_sqrt(&skew_hi, d);
            let mut b = b_lo;
            while b <= b_hi {
                let mut a = a_lo.clone();
                while a <= a_hi {
                    if (&a - &b).is_even_int() {
                        let x = QuadNum::raw(
                            Rational::new(a.clone(), BigInt::from(2)),
                            Rational::new(b.clone(), BigInt::from(2)),
                            d,
                        );
                        if phys.contains(&x) && internal.contains(&x.conjugate()) {
                            out.push(x);
                        }
                    }
                    a += 1;
                }
                b += 1;
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadNum {
        QuadNum::from_ints(a, b, d).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(q(3, 2, 2).conjugate(), q(3, -2, 2));
        assert_eq!(q(5, 0, 2).conjugate(), q(5, 0, 2));
    }

    #[test]
    fn fundamental_unit() {
        assert_eq!(&q(1, 1, 2) * &q(1, -1, 2), q(-1, 0, 2));
        let inv = q(1, 1, 2).inverse().unwrap();
        assert_eq!(inv, q(-1, 1, 2));
        assert_eq!(&inv * &q(1, 1, 2), QuadNum::one(2));
        assert_eq!(&q(4, -7, 2) + &QuadNum::zero(2), q(4, -7, 2));
    }

    #[test]
    fn field_errors() {
        assert!(matches!(
            q(1, 1, 2).checked_add(&q(1, 1, 3)),
            Err(Error::MismatchedField { .. })
        ));
        assert!(matches!(QuadNum::zero(2).inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(QuadNum::from_ints(1, 1, 8), Err(Error::NotSquareFree(8))));
        assert!(QuadNum::from_ints(1, 1, 1).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(1, -1, 2).exact_sign(), -1);
        assert_eq!(QuadNum::zero(2).exact_sign(), 0);
        assert_eq!(q(3, -2, 2).exact_sign(), 1);
        assert_eq!(q(-3, 2, 2).exact_sign(), -1);
        assert_eq!(q(-1, 1, 2).exact_sign(), 1);
    }

    #[test]
    fn ring_membership() {
        let golden = QuadNum::new(rat(1, 2), rat(1, 2), 5).unwrap();
        let full = RingSpec::new(5, RingVariant::FullIntegers).unwrap();
        let zs = RingSpec::z_sqrt(5).unwrap();
        assert!(full.contains(&golden));
        assert!(!zs.contains(&golden));
        assert!(RingSpec::z_sqrt(2).unwrap().contains(&q(7, -3, 2)));
        let half = QuadNum::new(rat(1, 2), int(0), 5).unwrap();
        assert!(!full.contains(&half));
        assert!(RingSpec::new(2, RingVariant::FullIntegers).is_err());
    }

    #[test]
    fn small_rectangle() {
        let ring = RingSpec::z_sqrt(2).unwrap();
        let phys = Interval::new(int(0), int(3)).unwrap();
        let internal = Interval::new(int(-1), int(1)).unwrap();
        let got = enumerate_ring_in_rectangle(&ring, &phys, &internal);
        // brute force over |a|, |b| <= 10 with f64-free exact filtering
        let mut brute = Vec::new();
        for a in -10..=10 {
            for b in -10..=10 {
                let x = q(a, b, 2);
                if phys.contains(&x) && internal.contains(&x.conjugate()) {
                    brute.push(x);
                }
            }
        }
        brute.sort();
        assert_eq!(got, brute);
        // 2 has conjugate 2 and 2 + sqrt 2 exceeds 3, so only three survive
        assert_eq!(got, vec![q(0, 0, 2), q(1, 0, 2), q(1, 1, 2)]);
    }

    #[test]
    fn degenerate_rectangle() {
        assert!(Interval::new(int(5), int(4)).is_err());
        let ring = RingSpec::z_sqrt(3).unwrap();
        let zero = Interval::new(int(0), int(0)).unwrap();
        assert_eq!(enumerate_ring_in_rectangle(&ring, &zero, &zero), vec![QuadNum::zero(3)]);
    }

    #[test]
    fn sqrt_bounds() {
        // b sqrt 2 >= 3 first at b = 3 (2.83 < 3 < 4.24)
        assert_eq!(min_multiple_of_sqrt(&int(3), 2), BigInt::from(3));
        assert_eq!(min_multiple_of_sqrt(&int(-3), 2), BigInt::from(-2));
        assert_eq!(max_multiple_of_sqrt(&int(3), 2), BigInt::from(2));
        assert_eq!(max_multiple_of_sqrt(&int(-3), 2), BigInt::from(-3));
        assert_eq!(min_multiple_of_sqrt(&int(0), 2), BigInt::from(0));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-9/10").unwrap(), rat(-9, 10));
        assert_eq!(parse_rational("-0.9").unwrap(), rat(-9, 10));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&rat(22, -4)), "-11/2");
    }

    #[test]
    fn tuple_roundtrip() {
        let x = QuadNum::new(rat(-3, 4), rat(5, 6), 7).unwrap();
        assert_eq!(x.to_tuple(), ["-3", "4", "5", "6"].map(String::from));
        assert_eq!(QuadNum::from_tuple(&x.to_tuple(), 7).unwrap(), x);
        let bad = ["2", "4", "0", "1"].map(String::from);
        assert!(QuadNum::from_tuple(&bad, 7).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(3, -2, 2).to_string(), "3 - 2√2");
        assert_eq!(q(0, -1, 2).to_string(), "-√2");
        assert_eq!(q(4, 0, 2).to_string(), "4");
    }
}
