//! Scalars used by the catalogs.
//!
//! Every entry of the three ray catalogs lives in the field Q(√2, i). The
//! exact types here ([`QRoot2`], [`ExactComplex`]) cover that field with
//! arbitrary-precision rationals. Generic phases of the parametric family
//! leave the field, so a floating complex type ([`ApproxComplex`]) runs
//! alongside with an explicit tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Floating complex scalar for general-phase computations.
pub type ApproxComplex = num::complex::Complex64;

/// Default zero-test tolerance for floating comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `|z| < tol`.
pub fn approx_is_zero(z: ApproxComplex, tol: f64) -> bool {
    z.norm() < tol
}

pub fn approx_eq(a: ApproxComplex, b: ApproxComplex, tol: f64) -> bool {
    approx_is_zero(a - b, tol)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rational_to_f64(r: &Rational) -> f64 {
    // Catalog rationals are tiny; the quotient of the two converted parts is
    // accurate to a few ulps.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// An element `p + q·√2` of Q(√2).
///
/// The pair `(p, q)` is unique for each field element because √2 is
/// irrational, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRoot2 {
    p: Rational,
    q: Rational,
}

impl QRoot2 {
    pub fn new(p: Rational, q: Rational) -> Self {
        QRoot2 { p, q }
    }

    /// `(p_num/p_den) + (q_num/q_den)·√2`.
    pub fn from_ratios(p_num: i64, p_den: i64, q_num: i64, q_den: i64) -> Self {
        QRoot2 {
            p: Rational::new(BigInt::from(p_num), BigInt::from(p_den)),
            q: Rational::new(BigInt::from(q_num), BigInt::from(q_den)),
        }
    }

    pub fn zero() -> Self {
        QRoot2 { p: Rational::zero(), q: Rational::zero() }
    }

    pub fn one() -> Self {
        QRoot2::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QRoot2 { p: rat(n), q: Rational::zero() }
    }

    pub fn from_rational(r: Rational) -> Self {
        QRoot2 { p: r, q: Rational::zero() }
    }

    pub fn sqrt2() -> Self {
        QRoot2 { p: Rational::zero(), q: Rational::one() }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `p − q·√2`.
    pub fn galois_conj(&self) -> Self {
        QRoot2 { p: self.p.clone(), q: -self.q.clone() }
    }

    /// Field norm `p² − 2q²`; nonzero for every nonzero element.
    pub fn field_norm(&self) -> Rational {
        &self.p * &self.p - rat(2) * &self.q * &self.q
    }

    pub fn signum(&self) -> Ordering {
        let ps = self.p.cmp(&Rational::zero());
        let qs = self.q.cmp(&Rational::zero());
        match (ps, qs) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            // Opposite signs: the larger of p² and 2q² wins.
            (ps, _) => {
                let p2 = &self.p * &self.p;
                let q2 = rat(2) * &self.q * &self.q;
                match p2.cmp(&q2) {
                    Ordering::Greater => ps,
                    Ordering::Less => ps.reverse(),
                    Ordering::Equal => unreachable!("sqrt2 is irrational"),
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(QRoot2 { p: &self.p / &n, q: -&self.q / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Nonnegative square root inside Q(√2), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.q.is_zero() {
            if let Some(s) = rational_sqrt(&self.p) {
                return Some(QRoot2::from_rational(s));
            }
            // p = 2·s² gives s·√2.
            return rational_sqrt(&(&self.p / rat(2)))
                .map(|s| QRoot2 { p: Rational::zero(), q: s });
        }
        // (x + y√2)² = (x² + 2y²) + 2xy·√2; x² is a root of
        // 4t² − 4p·t + 2q² = 0, i.e. t = (p ± √(p² − 2q²)) / 2.
        let disc = rational_sqrt(&self.field_norm())?;
        for t in [(&self.p + &disc) / rat(2), (&self.p - &disc) / rat(2)] {
            if t.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&t) {
                let y = &self.q / (rat(2) * &x);
                let cand = QRoot2 { p: x, q: y };
                let cand = if cand.signum() == Ordering::Less { -cand } else { cand };
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.p) + rational_to_f64(&self.q) * std::f64::consts::SQRT_2
    }

    /// Canonical string: integers over a common denominator, e.g.
    /// `(2-1*sqrt2)/4`, `3/8`, `1+1*sqrt2`, `1*sqrt2`.
    pub fn canonical_string(&self) -> String {
        let d = self.p.denom().lcm(self.q.denom());
        let a = (&self.p * Rational::from_integer(d.clone())).to_integer();
        let b = (&self.q * Rational::from_integer(d.clone())).to_integer();
        if b.is_zero() {
            return if d.is_one() { a.to_string() } else { format!("{a}/{d}") };
        }
        let num = if a.is_zero() {
            format!("{b}*sqrt2")
        } else if b.sign() == Sign::Minus {
            format!("{a}-{}*sqrt2", b.abs())
        } else {
            format!("{a}+{b}*sqrt2")
        };
        if d.is_one() {
            num
        } else {
            format!("({num})/{d}")
        }
    }
}

impl fmt::Display for QRoot2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for QRoot2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRoot2({})", self.canonical_string())
    }
}

impl PartialOrd for QRoot2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QRoot2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a QRoot2> for &'a QRoot2 {
    type Output = QRoot2;
    fn add(self, rhs: &'a QRoot2) -> QRoot2 {
        QRoot2 { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> Sub<&'a QRoot2> for &'a QRoot2 {
    type Output = QRoot2;
    fn sub(self, rhs: &'a QRoot2) -> QRoot2 {
        QRoot2 { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> Mul<&'a QRoot2> for &'a QRoot2 {
    type Output = QRoot2;
    fn mul(self, rhs: &'a QRoot2) -> QRoot2 {
        QRoot2 {
            p: &self.p * &rhs.p + rat(2) * &self.q * &rhs.q,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }
}

impl Neg for &QRoot2 {
    type Output = QRoot2;
    fn neg(self) -> QRoot2 {
        QRoot2 { p: -self.p.clone(), q: -self.q.clone() }
    }
}

/// Exact complex number `re + im·i` with `re, im ∈ Q(√2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: QRoot2,
    pub im: QRoot2,
}

impl ExactComplex {
    pub fn new(re: QRoot2, im: QRoot2) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: QRoot2) -> Self {
        ExactComplex { re, im: QRoot2::zero() }
    }

    pub fn zero() -> Self {
        Self::real(QRoot2::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(QRoot2::from_int(n))
    }

    pub fn i() -> Self {
        ExactComplex { re: QRoot2::zero(), im: QRoot2::one() }
    }

    pub fn sqrt2() -> Self {
        Self::real(QRoot2::sqrt2())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, which always lies in Q(√2).
    pub fn norm_sqr(&self) -> QRoot2 {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr().inv()?;
        Ok(ExactComplex { re: &self.re * &n, im: -&(&self.im * &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_approx(&self) -> ApproxComplex {
        ApproxComplex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn canonical_string(&self) -> String {
        if self.im.is_zero() {
            return self.re.canonical_string();
        }
        let im = if self.im == QRoot2::one() {
            "i".to_string()
        } else if self.im == -&QRoot2::one() {
            "-i".to_string()
        } else {
            format!("({})*i", self.im)
        };
        if self.re.is_zero() {
            im
        } else if let Some(rest) = im.strip_prefix('-') {
            format!("{}-{rest}", self.re)
        } else {
            format!("{}+{im}", self.re)
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactComplex({})", self.canonical_string())
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -&self.re, im: -&self.im }
    }
}

// Owned-operand forwarding for the exact types.
macro_rules! forward_owned {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        /// Panics on a zero divisor; use `checked_div` to get an error instead.
        impl Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                self.checked_div(&rhs).expect("division by zero")
            }
        }
    };
}

forward_owned!(QRoot2);
forward_owned!(ExactComplex);

/// Ordered real scalar: [`QRoot2`] on the exact path, `f64` otherwise.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Nonnegative square root, `None` when it leaves the scalar domain.
    fn sqrt_checked(&self) -> Option<Self>;
    /// Exact zero test for exact scalars, `|x| < tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;
    /// Exact equality for exact scalars, `|x − y| < tol` for floats.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }
    fn is_exact() -> bool;
}

impl Real for QRoot2 {
    fn zero() -> Self {
        QRoot2::zero()
    }
    fn one() -> Self {
        QRoot2::one()
    }
    fn from_i64(v: i64) -> Self {
        QRoot2::from_int(v)
    }
    fn to_f64(&self) -> f64 {
        QRoot2::to_f64(self)
    }
    fn sqrt_checked(&self) -> Option<Self> {
        self.sqrt()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() < tol
    }
    fn is_exact() -> bool {
        false
    }
}

/// Complex scalar over a [`Real`]: [`ExactComplex`] or [`ApproxComplex`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    type Real: Real;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Real;
    /// Structural zero test (no tolerance).
    fn is_zero(&self) -> bool;
    fn checked_div(&self, rhs: &Self) -> Result<Self>;
    fn to_approx(&self) -> ApproxComplex;
}

impl Scalar for ExactComplex {
    type Real = QRoot2;

    fn zero() -> Self {
        ExactComplex::zero()
    }
    fn one() -> Self {
        ExactComplex::one()
    }
    fn i() -> Self {
        ExactComplex::i()
    }
    fn from_real(r: QRoot2) -> Self {
        ExactComplex::real(r)
    }
    fn conj(&self) -> Self {
        ExactComplex::conj(self)
    }
    fn norm_sqr(&self) -> QRoot2 {
        ExactComplex::norm_sqr(self)
    }
    fn is_zero(&self) -> bool {
        ExactComplex::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        ExactComplex::checked_div(self, rhs)
    }
    fn to_approx(&self) -> ApproxComplex {
        ExactComplex::to_approx(self)
    }
}

impl Scalar for ApproxComplex {
    type Real = f64;

    fn zero() -> Self {
        ApproxComplex::new(0.0, 0.0)
    }
    fn one() -> Self {
        ApproxComplex::new(1.0, 0.0)
    }
    fn i() -> Self {
        ApproxComplex::new(0.0, 1.0)
    }
    fn from_real(r: f64) -> Self {
        ApproxComplex::new(r, 0.0)
    }
    fn conj(&self) -> Self {
        num::complex::Complex::conj(self)
    }
    fn norm_sqr(&self) -> f64 {
        num::complex::Complex::norm_sqr(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if Scalar::is_zero(rhs) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn to_approx(&self) -> ApproxComplex {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qv: i64) -> QRoot2 {
        QRoot2::from_ratios(p, 1, qv, 1)
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(QRoot2::sqrt2() * QRoot2::sqrt2(), QRoot2::from_int(2));
        assert_eq!(ExactComplex::sqrt2() * ExactComplex::sqrt2(), ExactComplex::from_int(2));
    }

    #[test]
    fn difference_of_squares() {
        let a = ExactComplex::real(q(1, 1));
        let b = ExactComplex::real(q(-1, 1));
        assert_eq!(a * b, ExactComplex::from_int(1));
    }

    #[test]
    fn minus_i_squared() {
        let mi = -ExactComplex::i();
        assert_eq!(&mi * &mi, ExactComplex::from_int(-1));
    }

    #[test]
    fn conjugation_examples() {
        let mi = -ExactComplex::i();
        assert_eq!(mi.conj(), ExactComplex::i());
        let r = ExactComplex::real(q(1, 1));
        assert_eq!(r.conj(), r);
        let isq = ExactComplex::new(QRoot2::zero(), QRoot2::sqrt2());
        assert_eq!(isq.conj(), ExactComplex::new(QRoot2::zero(), -QRoot2::sqrt2()));
    }

    #[test]
    fn to_approx_examples() {
        assert!((ExactComplex::sqrt2().to_approx().re - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(ExactComplex::zero().to_approx(), ApproxComplex::new(0.0, 0.0));
        let x = ExactComplex::real(q(1, -1)).to_approx();
        assert!((x.re + 0.414_213_562_373_095_1).abs() < 1e-14);
        assert_eq!(x.im, 0.0);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = ExactComplex::zero();
        assert_eq!(ExactComplex::one().checked_div(&z), Err(Error::DivisionByZero));
        assert_eq!(QRoot2::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn ordering_with_mixed_signs() {
        assert!(q(3, -2) > QRoot2::zero()); // 3 - 2.83
        assert!(q(2, -2) < QRoot2::zero());
        assert!(q(-1, 1) > QRoot2::zero());
        assert!(QRoot2::from_ratios(2, 4, -1, 4) > QRoot2::zero());
        assert!(q(1, 0) < QRoot2::sqrt2());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(QRoot2::from_ratios(1, 2, -1, 4).canonical_string(), "(2-1*sqrt2)/4");
        assert_eq!(QRoot2::from_ratios(3, 8, 0, 1).canonical_string(), "3/8");
        assert_eq!(QRoot2::sqrt2().canonical_string(), "1*sqrt2");
        assert_eq!(q(-1, 1).canonical_string(), "-1+1*sqrt2");
        assert_eq!(QRoot2::zero().canonical_string(), "0");
        assert_eq!((-ExactComplex::i()).canonical_string(), "-i");
        let z = ExactComplex::new(q(1, 0), q(0, -1));
        assert_eq!(z.canonical_string(), "1+(-1*sqrt2)*i");
    }

    #[test]
    fn square_roots_in_field() {
        assert_eq!(QRoot2::from_int(2).sqrt(), Some(QRoot2::sqrt2()));
        assert_eq!(QRoot2::from_ratios(9, 4, 0, 1).sqrt(), Some(QRoot2::from_ratios(3, 2, 0, 1)));
        // (1 + √2)² = 3 + 2√2
        assert_eq!(q(3, 2).sqrt(), Some(q(1, 1)));
        // (√2 − 1)² = 3 − 2√2
        assert_eq!(q(3, -2).sqrt(), Some(q(-1, 1)));
        assert_eq!(QRoot2::from_int(3).sqrt(), None);
        assert_eq!(QRoot2::from_int(-4).sqrt(), None);
    }
}
