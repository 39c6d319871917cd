//! Exact coefficient arithmetic: the field Q(√2) and truncated formal
//! series in q on a half-integer exponent grid.
//!
//! Exponents are stored as doubled integers so that q^{1/2} has exponent 1
//! and q^{3} has exponent 6. This keeps the grid integral and avoids any
//! floating point. Coefficients are exact rationals with arbitrary-precision
//! integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Renders a doubled exponent as a half-integer, e.g. `3` -> `3/2`, `4` -> `2`.
pub fn fmt_half(exp2: i64) -> String {
    if exp2 % 2 == 0 {
        format!("{}", exp2 / 2)
    } else {
        format!("{}/2", exp2)
    }
}

fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element a + b·√2 of the field Q(√2), with a and b exact rationals.
///
/// This is the coefficient field for every amplitude in the crate: the √2
/// part carries the normalization factors of the neutral fermion calculus,
/// the rational part everything else.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CoefScalar {
    rat: BigRational,
    sqrt2: BigRational,
}

impl CoefScalar {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        CoefScalar { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        CoefScalar::default()
    }

    pub fn one() -> Self {
        CoefScalar::new(BigRational::one(), BigRational::zero())
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        CoefScalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        CoefScalar::new(big_ratio(n, 1), BigRational::zero())
    }

    /// The exact rational num/den (den must be nonzero).
    pub fn from_ratio(num: i64, den: i64) -> Self {
        CoefScalar::new(big_ratio(num, den), BigRational::zero())
    }

    /// num/den + (num2/den2)·√2.
    pub fn from_parts(num: i64, den: i64, num2: i64, den2: i64) -> Self {
        CoefScalar::new(big_ratio(num, den), big_ratio(num2, den2))
    }

    /// 2^k for k ≥ 0.
    pub fn two_pow(k: u32) -> Self {
        let mut v = BigInt::one();
        for _ in 0..k {
            v *= 2;
        }
        CoefScalar::new(BigRational::from_integer(v), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    /// Exact integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.sqrt2.is_zero() && self.rat.is_integer() {
            Some(self.rat.to_integer())
        } else {
            None
        }
    }

    /// Multiplicative inverse; None for zero.
    ///
    /// (a + b√2)^{-1} = (a - b√2) / (a² - 2b²); the norm a² - 2b² only
    /// vanishes at a = b = 0 because √2 is irrational.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.rat * &self.rat - big_ratio(2, 1) * &self.sqrt2 * &self.sqrt2;
        debug_assert!(!norm.is_zero());
        Some(CoefScalar::new(&self.rat / &norm, -&self.sqrt2 / &norm))
    }
}

impl Add for &CoefScalar {
    type Output = CoefScalar;
    fn add(self, rhs: &CoefScalar) -> CoefScalar {
        CoefScalar::new(&self.rat + &rhs.rat, &self.sqrt2 + &rhs.sqrt2)
    }
}

impl Sub for &CoefScalar {
    type Output = CoefScalar;
    fn sub(self, rhs: &CoefScalar) -> CoefScalar {
        CoefScalar::new(&self.rat - &rhs.rat, &self.sqrt2 - &rhs.sqrt2)
    }
}

impl Mul for &CoefScalar {
    type Output = CoefScalar;
    fn mul(self, rhs: &CoefScalar) -> CoefScalar {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let rat = &self.rat * &rhs.rat + big_ratio(2, 1) * &self.sqrt2 * &rhs.sqrt2;
        let sqrt2 = &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat;
        CoefScalar::new(rat, sqrt2)
    }
}

impl Neg for &CoefScalar {
    type Output = CoefScalar;
    fn neg(self) -> CoefScalar {
        CoefScalar::new(-&self.rat, -&self.sqrt2)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for CoefScalar {
            type Output = CoefScalar;
            fn $method(self, rhs: CoefScalar) -> CoefScalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for CoefScalar {
    type Output = CoefScalar;
    fn neg(self) -> CoefScalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        format!("{}", r.to_integer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CoefScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.rat.is_zero() {
            out.push_str(&fmt_rational(&self.rat));
        }
        if !self.sqrt2.is_zero() {
            if !out.is_empty() {
                out.push_str(if self.sqrt2.is_negative() { " - " } else { " + " });
            } else if self.sqrt2.is_negative() {
                out.push('-');
            }
            let mag = self.sqrt2.abs();
            if mag.is_one() {
                out.push_str("sqrt2");
            } else {
                out.push_str(&format!("{}*sqrt2", fmt_rational(&mag)));
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for CoefScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A truncated formal series Σ c_e q^{e/2} over [`CoefScalar`].
///
/// `cap2` is the maximum retained doubled exponent: any term produced above
/// it is discarded. There is no lower bound, so Laurent-type terms with
/// negative exponents are kept exactly. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    cap2: i64,
    terms: BTreeMap<i64, CoefScalar>,
}

impl QSeries {
    pub fn zero(cap2: i64) -> Self {
        QSeries { cap2, terms: BTreeMap::new() }
    }

    pub fn one(cap2: i64) -> Self {
        QSeries::monomial(cap2, 0, CoefScalar::one())
    }

    /// The single term c·q^{exp2/2} (empty if above the cap or c = 0).
    pub fn monomial(cap2: i64, exp2: i64, c: CoefScalar) -> Self {
        let mut s = QSeries::zero(cap2);
        if exp2 <= cap2 && !c.is_zero() {
            s.terms.insert(exp2, c);
        }
        s
    }

    pub fn cap2(&self) -> i64 {
        self.cap2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of q^{exp2/2} (zero if absent).
    pub fn coeff(&self, exp2: i64) -> CoefScalar {
        self.terms.get(&exp2).cloned().unwrap_or_else(CoefScalar::zero)
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &CoefScalar)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, exp2: i64, c: &CoefScalar) {
        if exp2 > self.cap2 || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp2).or_insert_with(CoefScalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&exp2);
        }
    }

    fn check_cap(&self, rhs: &QSeries) -> Result<()> {
        if self.cap2 != rhs.cap2 {
            Err(Error::CapMismatch(self.cap2, rhs.cap2))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, rhs: &QSeries) -> Result<QSeries> {
        self.check_cap(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &QSeries) -> Result<QSeries> {
        self.check_cap(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, &-c);
        }
        Ok(out)
    }

    /// Truncated Cauchy product; exponents add on the half-integer grid.
    pub fn checked_mul(&self, rhs: &QSeries) -> Result<QSeries> {
        self.check_cap(rhs)?;
        let mut out = QSeries::zero(self.cap2);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_add(ea + eb, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Multiplies every term by c·q^{exp2/2}, truncating at the cap.
    pub fn mul_monomial(&self, exp2: i64, c: &CoefScalar) -> QSeries {
        let mut out = QSeries::zero(self.cap2);
        for (e, t) in &self.terms {
            out.insert_add(e + exp2, &(t * c));
        }
        out
    }

    pub fn scale(&self, c: &CoefScalar) -> QSeries {
        self.mul_monomial(0, c)
    }

    /// Multiplicative inverse of a unit series: requires a nonzero constant
    /// term and no terms below q^0. The result g satisfies f·g = 1 up to the
    /// cap.
    pub fn inv_unit(&self) -> Result<QSeries> {
        if let Some(min) = self.min_exp2() {
            if min < 0 {
                return Err(Error::NegativeOrderSeries);
            }
        }
        let c0 = self.coeff(0);
        let c0_inv = c0.inv().ok_or(Error::NonUnitSeries)?;
        // g_e = c0^{-1} (δ_{e,0} - Σ_{0 < d ≤ e} f_d g_{e-d})
        let mut out = QSeries::monomial(self.cap2, 0, c0_inv.clone());
        for e in 1..=self.cap2 {
            let mut acc = CoefScalar::zero();
            for (d, fd) in self.terms.range(1..=e) {
                let g = out.coeff(e - d);
                if !g.is_zero() {
                    acc = &acc + &(fd * &g);
                }
            }
            let ge = &(-&acc) * &c0_inv;
            if !ge.is_zero() {
                out.terms.insert(e, ge);
            }
        }
        Ok(out)
    }

    /// The same series under a different cap; terms above the new cap are
    /// dropped.
    pub fn recapped(&self, cap2: i64) -> QSeries {
        let mut out = QSeries::zero(cap2);
        for (e, c) in &self.terms {
            out.insert_add(*e, c);
        }
        out
    }

    /// f^k by repeated multiplication.
    pub fn pow(&self, k: u32) -> QSeries {
        let mut out = QSeries::one(self.cap2);
        for _ in 0..k {
            out = out.checked_mul(self).expect("same cap");
        }
        out
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.checked_add(rhs).expect("order caps must match")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.checked_sub(rhs).expect("order caps must match")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.checked_mul(rhs).expect("order caps must match")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let needs_parens = !c.rat_part().is_zero() && !c.sqrt2_part().is_zero();
            if *e == 0 {
                write!(f, "{}", c)?;
            } else {
                if needs_parens {
                    write!(f, "({})", c)?;
                } else {
                    write!(f, "{}", c)?;
                }
                if *e == 2 {
                    write!(f, "*q")?;
                } else {
                    write!(f, "*q^({})", fmt_half(*e))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
