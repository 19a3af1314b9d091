//! Exact arithmetic in the real quadratic fields Q(√2) and Q(τ), τ = (1+√5)/2.
//!
//! A [`QuadVal`] is `a + b·β` with rational `a`, `b` and `β` either `√2`
//! (β² = 2) or `τ` (τ² = τ + 1). Rationals are arbitrary precision and kept in
//! lowest terms, so structural equality is numerical equality and values can
//! be used directly as hash keys when grouping shells.
//!
//! Signs and comparisons never touch floating point: `a + b·β` is rewritten as
//! `c + d·√D` and the sign decided from the signs of `c`, `d` and a comparison
//! of `c²` with `D·d²`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, ShellError};

pub type Rational = BigRational;

/// Generator of the quadratic field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// β = √2, conjugation √2 ↦ −√2.
    Sqrt2,
    /// β = τ = (1+√5)/2, conjugation τ ↦ 1 − τ.
    GoldenTau,
}

impl Basis {
    /// Squarefree D with Q(β) = Q(√D).
    pub fn radicand(self) -> u32 {
        match self {
            Basis::Sqrt2 => 2,
            Basis::GoldenTau => 5,
        }
    }

    pub fn generator_f64(self) -> f64 {
        match self {
            Basis::Sqrt2 => std::f64::consts::SQRT_2,
            Basis::GoldenTau => (1.0 + 5f64.sqrt()) / 2.0,
        }
    }

    /// Name used in the text rendering `a+b*sqrt2` / `a+b*tau`.
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Sqrt2 => "sqrt2",
            Basis::GoldenTau => "tau",
        }
    }
}

impl FromStr for Basis {
    type Err = ShellError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt2" => Ok(Basis::Sqrt2),
            "tau" => Ok(Basis::GoldenTau),
            _ => Err(ShellError::Parse(s.to_string())),
        }
    }
}

/// Exact element `a + b·β` of Q(β).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadVal {
    a: Rational,
    b: Rational,
    basis: Basis,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rat_sign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl QuadVal {
    pub fn new(a: Rational, b: Rational, basis: Basis) -> Self {
        QuadVal { a, b, basis }
    }

    pub fn from_ints(a: i64, b: i64, basis: Basis) -> Self {
        QuadVal::new(rat_int(a), rat_int(b), basis)
    }

    pub fn from_rational(a: Rational, basis: Basis) -> Self {
        QuadVal::new(a, Rational::zero(), basis)
    }

    pub fn zero(basis: Basis) -> Self {
        QuadVal::from_ints(0, 0, basis)
    }

    pub fn one(basis: Basis) -> Self {
        QuadVal::from_ints(1, 0, basis)
    }

    /// The generator β itself.
    pub fn generator(basis: Basis) -> Self {
        QuadVal::from_ints(0, 1, basis)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when both coefficients are integers, i.e. the value lies in Z[β].
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Galois conjugate: √2 ↦ −√2, τ ↦ 1 − τ.
    pub fn conj(&self) -> QuadVal {
        match self.basis {
            Basis::Sqrt2 => QuadVal::new(self.a.clone(), -&self.b, self.basis),
            Basis::GoldenTau => QuadVal::new(&self.a + &self.b, -&self.b, self.basis),
        }
    }

    /// Field norm `x · conj(x)`.
    pub fn norm(&self) -> Rational {
        match self.basis {
            Basis::Sqrt2 => &self.a * &self.a - rat_int(2) * &self.b * &self.b,
            Basis::GoldenTau => &self.a * &self.a + &self.a * &self.b - &self.b * &self.b,
        }
    }

    /// Returns `(c, d)` with `self = c + d·√D`.
    pub fn surd_form(&self) -> (Rational, Rational) {
        match self.basis {
            Basis::Sqrt2 => (self.a.clone(), self.b.clone()),
            Basis::GoldenTau => {
                let half = rat(1, 2);
                (&self.a + &self.b * &half, &self.b * &half)
            }
        }
    }

    /// Exact sign of the real embedding.
    pub fn sign(&self) -> i32 {
        let (c, d) = self.surd_form();
        let sc = rat_sign(&c);
        let sd = rat_sign(&d);
        if sd == 0 {
            return sc;
        }
        if sc == 0 || sc == sd {
            return sd;
        }
        // opposite signs: the larger magnitude wins; c² = D·d² is impossible
        let lhs = &c * &c;
        let rhs = &d * &d * rat_int(self.basis.radicand() as i64);
        if lhs > rhs {
            sc
        } else {
            sd
        }
    }

    /// Both real embeddings positive.
    pub fn is_totally_positive(&self) -> bool {
        self.sign() > 0 && self.conj().sign() > 0
    }

    pub fn abs(&self) -> QuadVal {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &Rational) -> QuadVal {
        QuadVal::new(&self.a * k, &self.b * k, self.basis)
    }

    fn check_basis(&self, other: &QuadVal) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(ShellError::BasisMismatch(self.basis, other.basis))
        }
    }

    pub fn try_add(&self, other: &QuadVal) -> Result<QuadVal> {
        self.check_basis(other)?;
        Ok(QuadVal::new(&self.a + &other.a, &self.b + &other.b, self.basis))
    }

    pub fn try_sub(&self, other: &QuadVal) -> Result<QuadVal> {
        self.check_basis(other)?;
        Ok(QuadVal::new(&self.a - &other.a, &self.b - &other.b, self.basis))
    }

    pub fn try_mul(&self, other: &QuadVal) -> Result<QuadVal> {
        self.check_basis(other)?;
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        let bb = b1 * b2;
        let cross = a1 * b2 + a2 * b1;
        Ok(match self.basis {
            Basis::Sqrt2 => QuadVal::new(a1 * a2 + rat_int(2) * bb, cross, self.basis),
            // τ² = τ + 1
            Basis::GoldenTau => QuadVal::new(a1 * a2 + &bb, cross + bb, self.basis),
        })
    }

    pub fn inv(&self) -> Result<QuadVal> {
        if self.is_zero() {
            return Err(ShellError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(QuadVal::new(c.a / &n, c.b / &n, self.basis))
    }

    pub fn try_div(&self, other: &QuadVal) -> Result<QuadVal> {
        self.check_basis(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Exact ordering of the real embeddings.
    pub fn exact_cmp(&self, other: &QuadVal) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// Double-precision value, correctly rounded.
    pub fn to_f64(&self) -> f64 {
        let (c, d) = self.surd_form();
        if d.is_zero() {
            return c.to_f64().unwrap_or(f64::NAN);
        }
        // bracket d·√D between rationals until both ends round to the same double
        let radicand = BigInt::from(self.basis.radicand());
        let dn2 = d.numer() * d.numer() * &radicand;
        let dd = d.denom();
        let negative = d.is_negative();
        let mut bits = 64u32;
        loop {
            let scale = BigInt::one() << (2 * bits);
            let s = (&dn2 * &scale).sqrt();
            let denom = (BigInt::one() << bits) * dd;
            let lo = Rational::new(s.clone(), denom.clone());
            let hi = Rational::new(s + 1, denom);
            let (lo, hi) = if negative { (-hi, -lo) } else { (lo, hi) };
            let flo = (&c + lo).to_f64().unwrap_or(f64::NAN);
            let fhi = (&c + hi).to_f64().unwrap_or(f64::NAN);
            if flo == fhi || bits >= 4096 {
                return flo;
            }
            bits *= 2;
        }
    }
}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.exact_cmp(other).ok()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadVal> for &'a QuadVal {
            type Output = QuadVal;
            /// Panics on basis mismatch; use the `try_` form to get an error instead.
            fn $method(self, rhs: &'a QuadVal) -> QuadVal {
                self.$checked(rhs).expect("QuadVal operator")
            }
        }
        impl $tr<QuadVal> for QuadVal {
            type Output = QuadVal;
            fn $method(self, rhs: QuadVal) -> QuadVal {
                (&self).$checked(&rhs).expect("QuadVal operator")
            }
        }
        impl<'a> $tr<&'a QuadVal> for QuadVal {
            type Output = QuadVal;
            fn $method(self, rhs: &'a QuadVal) -> QuadVal {
                (&self).$checked(rhs).expect("QuadVal operator")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        QuadVal::new(-&self.a, -&self.b, self.basis)
    }
}

impl Neg for QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        QuadVal::new(-self.a, -self.b, self.basis)
    }
}

/// Canonical rendering `a+b*sqrt2`, `a-b*tau`, rationals as `p/q`.
impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*{}", self.a, op, self.b.abs(), self.basis.symbol())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || ShellError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for QuadVal {
    type Err = ShellError;

    fn from_str(s: &str) -> Result<Self> {
        let err = || ShellError::Parse(s.to_string());
        let (body, basis) = if let Some(body) = s.strip_suffix("*sqrt2") {
            (body, Basis::Sqrt2)
        } else if let Some(body) = s.strip_suffix("*tau") {
            (body, Basis::GoldenTau)
        } else {
            return Err(err());
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(err)?;
        let a = parse_rational(&body[..split])?;
        let b = parse_rational(&body[split + 1..])?;
        let b = if &body[split..=split] == "-" { -b } else { b };
        Ok(QuadVal::new(a, b, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(a: i64, b: i64) -> QuadVal {
        QuadVal::from_ints(a, b, Basis::GoldenTau)
    }

    fn s2(a: i64, b: i64) -> QuadVal {
        QuadVal::from_ints(a, b, Basis::Sqrt2)
    }

    #[test]
    fn golden_square() {
        assert_eq!(&tau(1, 1) * &tau(1, 1), tau(2, 3));
        assert_eq!(&s2(0, 1) * &s2(0, 1), s2(2, 0));
    }

    #[test]
    fn conjugates() {
        assert_eq!(tau(2, -1).conj(), tau(1, 1));
        assert_eq!(s2(3, 2).conj(), s2(3, -2));
        assert_eq!(tau(7, 5).conj().conj(), tau(7, 5));
    }

    #[test]
    fn signs() {
        assert_eq!(s2(4, -2).sign(), 1);
        assert_eq!(s2(0, 0).sign(), 0);
        assert_eq!(tau(5, -8).sign(), -1);
        assert_eq!(tau(-1, 1).sign(), 1);
        assert_eq!(tau(2, -2).sign(), -1);
    }

    #[test]
    fn totally_positive() {
        assert!(tau(2, -1).is_totally_positive());
        assert!(!tau(5, -8).is_totally_positive());
        assert!(tau(5, -8).conj().sign() > 0);
        assert!(tau(1, 0).is_totally_positive());
    }

    #[test]
    fn float_and_compare() {
        assert!((s2(4, -2).to_f64() - 1.171_572_875_253_809_9).abs() < 1e-15);
        assert_eq!(tau(2, 0).to_f64(), 2.0);
        assert_eq!(s2(3, 2).exact_cmp(&s2(4, 2)).unwrap(), Ordering::Less);
        assert!(s2(1, 0).exact_cmp(&tau(1, 0)).is_err());
    }

    #[test]
    fn mismatch_is_error() {
        assert_eq!(
            s2(1, 1).try_add(&tau(1, 1)),
            Err(ShellError::BasisMismatch(Basis::Sqrt2, Basis::GoldenTau))
        );
    }

    #[test]
    fn division() {
        let x = tau(3, -1);
        assert_eq!(&(&x / &x), &tau(1, 0));
        assert_eq!(tau(0, 0).inv(), Err(ShellError::DivisionByZero));
        let y = s2(1, 1);
        assert_eq!(&y * &y.inv().unwrap(), s2(1, 0));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(s2(4, -2).to_string(), "4-2*sqrt2");
        assert_eq!(tau(0, 2).to_string(), "0+2*tau");
        let q = QuadVal::new(rat(-1, 2), rat(-3, 4), Basis::GoldenTau);
        assert_eq!(q.to_string(), "-1/2-3/4*tau");
        assert_eq!(q.to_string().parse::<QuadVal>().unwrap(), q);
        assert!("1+2*sqrt3".parse::<QuadVal>().is_err());
        assert!("1/0+2*tau".parse::<QuadVal>().is_err());
    }
}
