//! Exact arithmetic in the field of rational functions of `q`.
//!
//! A [`QScalar`] is a ratio of Laurent polynomials in `s = q^{1/2}`, the
//! base field for every matrix entry in the crate. Arithmetic is exact;
//! results are kept canonical (reduced fraction, monic denominator with
//! zero minimal exponent), so equal values compare equal structurally.
//! All half-integer powers `q^{x}`, `x` a half-integer, are monomials
//! `s^{2x}`; rational weight coordinates refine the exponent lattice to
//! `q^{1/(2D)}` transparently.

use crate::laurent::{reduce_fraction, Exp, LaurentPoly};
use num::rational::{BigRational, Rational64};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Errors from scalar arithmetic and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole at evaluation point")]
    Pole,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// An exact rational function of `q` (internally of `s = q^{1/2}`).
#[derive(Clone, Debug)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
    canonical: bool,
}

impl QScalar {
    fn from_reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        let r = reduce_fraction(num, den);
        QScalar {
            num: r.num,
            den: r.den,
            canonical: r.canonical,
        }
    }

    pub fn zero() -> Self {
        QScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
            canonical: true,
        }
    }

    pub fn one() -> Self {
        QScalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
            canonical: true,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar {
            num: LaurentPoly::monomial(Exp::zero(), BigRational::from_integer(n.into())),
            den: LaurentPoly::one(),
            canonical: true,
        }
    }

    pub fn from_rational(r: Rational64) -> Self {
        QScalar {
            num: LaurentPoly::monomial(
                Exp::zero(),
                BigRational::new((*r.numer()).into(), (*r.denom()).into()),
            ),
            den: LaurentPoly::one(),
            canonical: true,
        }
    }

    /// `q^{x}` for any exact rational exponent `x` (monomial `s^{2x}`).
    pub fn q_pow(x: Rational64) -> Self {
        QScalar {
            num: LaurentPoly::monomial(x * Rational64::from_integer(2), BigRational::one()),
            den: LaurentPoly::one(),
            canonical: true,
        }
    }

    /// `q^{k/2}` for integer `k`: the half-integer power used throughout.
    pub fn q_half_pow(k: i64) -> Self {
        Self::q_pow(Rational64::new(k, 2))
    }

    /// `q - q^{-1}`, the ubiquitous deformation factor.
    pub fn q_minus_qinv() -> Self {
        Self::q_pow(Rational64::one()) - Self::q_pow(-Rational64::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.canonical && self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical denominator is a unit, i.e. the value is a
    /// Laurent polynomial in `s`.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Whether the representation achieved full canonical form (the gcd
    /// degree guard can decline reduction on pathological exponent
    /// lattices; values remain exact and comparable).
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn recip(&self) -> Result<QScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(Self::from_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(Self::from_reduced(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    /// Substitute `q = q0` (so `s = sqrt(q0)`, positive branch) and evaluate.
    pub fn eval_f64(&self, q0: f64) -> Result<f64, ScalarError> {
        if q0 <= 0.0 {
            return Err(ScalarError::Pole);
        }
        let s0 = q0.sqrt();
        let d = self.den.eval_f64(s0);
        if d == 0.0 {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval_f64(s0) / d)
    }

}

impl PartialEq for QScalar {
    fn eq(&self, other: &Self) -> bool {
        // Canonical forms are unique, so structural equality decides when
        // both sides are canonical; otherwise cross-multiply.
        if self.num == other.num && self.den == other.den {
            return true;
        }
        if self.canonical && other.canonical {
            return false;
        }
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }
}

impl Eq for QScalar {}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::from_reduced(self.num.add(&rhs.num), self.den.clone());
        }
        QScalar::from_reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        QScalar::from_reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
            canonical: self.canonical,
        }
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    /// Panics on a zero divisor; use [`QScalar::checked_div`] to handle it.
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("zero divisor")
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

// ---- rendering and parsing ----

fn fmt_exp_in_q(e: Exp) -> String {
    // Stored exponent is in s; print in q (q = s^2).
    let q_exp = e / Exp::from_integer(2);
    if q_exp.denom() == &1 {
        format!("{}", q_exp.numer())
    } else {
        format!("{}/{}", q_exp.numer(), q_exp.denom())
    }
}

fn fmt_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Descending exponent order.
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_str = if mag.denom().is_one() {
            format!("{}", mag.numer())
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        if e.is_zero() {
            out.push_str(&coeff_str);
        } else {
            let pow = if *e == Exp::from_integer(2) {
                "q".to_string()
            } else {
                format!("q^{{{}}}", fmt_exp_in_q(*e))
            };
            if mag.is_one() {
                out.push_str(&pow);
            } else {
                out.push_str(&coeff_str);
                out.push('*');
                out.push_str(&pow);
            }
        }
    }
    out
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            other => Err(ScalarError::Parse(format!(
                "expected '{}', found {:?}",
                c as char,
                other.map(|b| b as char)
            ))),
        }
    }

    fn parse_integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.input.get(self.pos) == Some(&b'-') || self.input.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .input
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ScalarError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| ScalarError::Parse(e.to_string()))
    }

    fn parse_rational(&mut self) -> Result<Rational64, ScalarError> {
        let n = self.parse_integer()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let d = self.parse_integer()?;
            if d == 0 {
                return Err(ScalarError::Parse("zero denominator in exponent".into()));
            }
            Ok(Rational64::new(n, d))
        } else {
            Ok(Rational64::from_integer(n))
        }
    }

    /// `q` | `q^{rat}`; returns the exponent of q.
    fn parse_qpow(&mut self) -> Result<Rational64, ScalarError> {
        self.expect(b'q')?;
        if self.peek() == Some(b'^') {
            self.bump();
            self.expect(b'{')?;
            let r = self.parse_rational()?;
            self.expect(b'}')?;
            Ok(r)
        } else {
            Ok(Rational64::one())
        }
    }

    /// One term: `[coeff]['*' qpow]` or a bare qpow.
    fn parse_term(&mut self) -> Result<(BigRational, Rational64), ScalarError> {
        if self.peek() == Some(b'q') {
            let e = self.parse_qpow()?;
            return Ok((BigRational::one(), e));
        }
        let c = self.parse_rational()?;
        let coeff = BigRational::new((*c.numer()).into(), (*c.denom()).into());
        if self.peek() == Some(b'*') {
            self.bump();
            let e = self.parse_qpow()?;
            Ok((coeff, e))
        } else {
            Ok((coeff, Rational64::zero()))
        }
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, ScalarError> {
        let mut acc = LaurentPoly::zero();
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.bump();
            sign = -sign;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        loop {
            let (c, e) = self.parse_term()?;
            acc = acc.add(&LaurentPoly::monomial(
                e * Exp::from_integer(2),
                c * sign.clone(),
            ));
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.bump();
                    sign = -BigRational::one();
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

impl QScalar {
    /// Parse the round-trip format produced by [`fmt::Display`]:
    /// either a polynomial in `q` or `(<num>)/(<den>)`.
    pub fn parse(s: &str) -> Result<QScalar, ScalarError> {
        let mut p = Parser::new(s);
        if p.peek() == Some(b'(') {
            p.bump();
            let num = p.parse_poly()?;
            p.expect(b')')?;
            p.expect(b'/')?;
            p.expect(b'(')?;
            let den = p.parse_poly()?;
            p.expect(b')')?;
            p.skip_ws();
            if p.pos != p.input.len() {
                return Err(ScalarError::Parse("trailing input".into()));
            }
            if den.is_zero() {
                return Err(ScalarError::ZeroDivisor);
            }
            Ok(QScalar::from_reduced(num, den))
        } else {
            let num = p.parse_poly()?;
            p.skip_ws();
            if p.pos != p.input.len() {
                return Err(ScalarError::Parse("trailing input".into()));
            }
            Ok(QScalar::from_reduced(num, LaurentPoly::one()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q_pow(Rational64::one())
    }

    #[test]
    fn q_times_q_inverse_is_one() {
        let prod = &q() * &QScalar::q_pow(-Rational64::one());
        assert!(prod.is_one());
    }

    #[test]
    fn self_division_is_one() {
        let k = QScalar::q_minus_qinv();
        assert!((&k / &k).is_one());
    }

    #[test]
    fn derived_quotient_example() {
        // (q^{-2} - 1)/(q - q^{-1}) = -q^{-1}
        let num = QScalar::q_pow(Rational64::from_integer(-2)) - QScalar::one();
        let r = num / QScalar::q_minus_qinv();
        let expected = -QScalar::q_pow(-Rational64::one());
        assert_eq!(r, expected);
    }

    #[test]
    fn q_power_examples() {
        assert!(QScalar::q_pow(Rational64::zero()).is_one());
        assert_eq!(QScalar::q_half_pow(1), QScalar::q_pow(Rational64::new(1, 2)));
        let m = QScalar::q_pow(Rational64::from_integer(-2));
        assert_eq!(format!("{}", m), "q^{-2}");
    }

    #[test]
    fn q_power_additivity() {
        let x = Rational64::new(3, 2);
        let y = Rational64::new(-5, 2);
        assert_eq!(
            &QScalar::q_pow(x) * &QScalar::q_pow(y),
            QScalar::q_pow(x + y)
        );
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(
            QScalar::one().checked_div(&QScalar::zero()),
            Err(ScalarError::ZeroDivisor)
        );
    }

    #[test]
    fn eval_examples() {
        let a = q() + QScalar::q_pow(-Rational64::one());
        assert!((a.eval_f64(2.0).unwrap() - 2.5).abs() < 1e-12);
        let b = QScalar::q_minus_qinv();
        assert_eq!(b.eval_f64(1.0).unwrap(), 0.0);
        let c = -QScalar::q_pow(-Rational64::one());
        assert!((c.eval_f64(4.0).unwrap() + 0.25).abs() < 1e-12);
    }

    #[test]
    fn eval_pole_detected() {
        // 1/(q - q^{-1}) has a pole at q = 1.
        let x = QScalar::one() / QScalar::q_minus_qinv();
        assert_eq!(x.eval_f64(1.0), Err(ScalarError::Pole));
    }

    #[test]
    fn display_parse_round_trip() {
        let k = QScalar::q_minus_qinv();
        let x = (QScalar::from_int(3) * QScalar::q_half_pow(3) - QScalar::from_rational(Rational64::new(1, 2)))
            / (k + QScalar::from_int(7));
        let s = format!("{}", x);
        let back = QScalar::parse(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn parse_plain_forms() {
        assert_eq!(QScalar::parse("q").unwrap(), q());
        assert_eq!(QScalar::parse("0").unwrap(), QScalar::zero());
        assert_eq!(
            QScalar::parse("q^{3/2}").unwrap(),
            QScalar::q_half_pow(3)
        );
        assert_eq!(
            QScalar::parse("-2*q^{-1} + 1").unwrap(),
            QScalar::one() - QScalar::from_int(2) * QScalar::q_pow(-Rational64::one())
        );
    }
}
