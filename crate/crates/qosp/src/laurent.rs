//! Sparse Laurent polynomials in the internal variable `s` (with `s^2 = q`).
//!
//! Exponents are exact rationals so that a computation may refine the
//! exponent lattice (e.g. `q^{1/(2D)}` for rational weight coordinates)
//! without changing representation. Coefficients are arbitrary-precision
//! rationals. This module is the engine behind [`crate::scalar::QScalar`];
//! it is not part of the public API.

use num::bigint::BigInt;
use num::rational::{BigRational, Rational64};
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;

/// Exponent of the internal variable `s`.
pub type Exp = Rational64;

/// A Laurent polynomial `sum_e c_e s^e` with rational exponents.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub(crate) terms: BTreeMap<Exp, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Exp::zero(), BigRational::one())
    }

    pub fn monomial(exp: Exp, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exp::zero())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Single-term polynomials (units of the Laurent ring).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest-exponent term.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms: BTreeMap<Exp, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let c = ca * cb;
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        LaurentPoly { terms }
    }

    pub fn mul_monomial(&self, exp: Exp, coeff: &BigRational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &BigRational) -> Self {
        self.mul_monomial(Exp::zero(), coeff)
    }

    /// Evaluate at `s = s0` in floating point.
    pub fn eval_f64(&self, s0: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let ef = *e.numer() as f64 / *e.denom() as f64;
            let cf = big_rational_to_f64(c);
            acc += cf * s0.powf(ef);
        }
        acc
    }
}

pub fn big_rational_to_f64(r: &BigRational) -> f64 {
    let num = bigint_to_f64(r.numer());
    let den = bigint_to_f64(r.denom());
    num / den
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // BigInt -> f64 with graceful degradation for huge values.
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Degree bound above which canonical gcd reduction is skipped.
///
/// Exponent lattices refined by tiny rational perturbations (denominator
/// ~1e6) would map to dense polynomials of astronomical degree; those
/// values are only ever compared numerically, so reduction is not needed
/// for correctness (equality testing falls back to cross-multiplication).
const GCD_DEGREE_CAP: i64 = 4096;

/// Outcome of the canonicalisation attempt for a fraction num/den.
pub struct Reduced {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
    /// False when the degree guard skipped the polynomial gcd.
    pub canonical: bool,
}

/// Canonicalise the fraction `num/den`:
/// gcd(num, den) a unit, den monic with zero minimal exponent.
///
/// `den` must be nonzero.
pub fn reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> Reduced {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return Reduced {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
            canonical: true,
        };
    }

    // Strip the monomial content: num = s^{a} N, den = s^{b} D with
    // min-exponent 0; the ratio keeps s^{a-b} on the numerator side.
    let a = num.min_exp().unwrap();
    let b = den.min_exp().unwrap();
    let shift = a - b;
    let one = BigRational::one();
    let n0 = num.mul_monomial(-a, &one);
    let d0 = den.mul_monomial(-b, &one);

    if d0.is_monomial() {
        // Denominator is a unit: fold it into the numerator entirely.
        let c = d0.leading_coeff().unwrap().recip();
        return Reduced {
            num: n0.mul_monomial(shift, &c),
            den: LaurentPoly::one(),
            canonical: true,
        };
    }
    if n0.is_monomial() {
        // gcd(monomial, poly with nonzero constant term) = 1.
        let (n1, d1) = make_monic(n0, d0);
        return Reduced {
            num: n1.mul_monomial(shift, &one),
            den: d1,
            canonical: true,
        };
    }

    match lattice_gcd(&n0, &d0) {
        Some(g) => {
            let n1 = divide_exact(&n0, &g);
            let d1 = divide_exact(&d0, &g);
            // Division may re-introduce a monomial denominator.
            if d1.is_monomial() {
                let c = d1.leading_coeff().unwrap().recip();
                let e = d1.min_exp().unwrap();
                return Reduced {
                    num: n1.mul_monomial(shift - e, &c),
                    den: LaurentPoly::one(),
                    canonical: true,
                };
            }
            let e = d1.min_exp().unwrap();
            let (n2, d2) = make_monic(n1.mul_monomial(-e, &one), d1.mul_monomial(-e, &one));
            Reduced {
                num: n2.mul_monomial(shift, &one),
                den: d2,
                canonical: true,
            }
        }
        None => {
            let (n1, d1) = make_monic(n0, d0);
            Reduced {
                num: n1.mul_monomial(shift, &one),
                den: d1,
                canonical: false,
            }
        }
    }
}

fn make_monic(num: LaurentPoly, den: LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let c = den.leading_coeff().unwrap().recip();
    (num.scale(&c), den.scale(&c))
}

/// gcd of two Laurent polynomials with min-exponent 0, computed on the
/// common integer exponent lattice. Returns `None` if the lattice degree
/// exceeds [`GCD_DEGREE_CAP`]. The result has min-exponent 0 and is
/// primitive with positive leading coefficient.
fn lattice_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    // Common denominator of all exponents, then common step.
    let mut denom_lcm: i64 = 1;
    for e in a.terms.keys().chain(b.terms.keys()) {
        denom_lcm = denom_lcm.lcm(e.denom());
    }
    let scaled = |p: &LaurentPoly| -> Vec<(i64, BigRational)> {
        p.terms
            .iter()
            .map(|(e, c)| (e.numer() * (denom_lcm / e.denom()), c.clone()))
            .collect()
    };
    let sa = scaled(a);
    let sb = scaled(b);
    let mut step: i64 = 0;
    for (e, _) in sa.iter().chain(sb.iter()) {
        step = step.gcd(e);
    }
    if step == 0 {
        // Both are constants; min-exp 0 means both are c*s^0.
        return Some(LaurentPoly::one());
    }
    let da = sa.last().unwrap().0 / step;
    let db = sb.last().unwrap().0 / step;
    if da.max(db) > GCD_DEGREE_CAP {
        return None;
    }

    let dense = |s: &[(i64, BigRational)], deg: i64| -> Vec<BigInt> {
        // Clear rational denominators to get an integer coefficient vector.
        let mut lcm = BigInt::one();
        for (_, c) in s {
            lcm = lcm.lcm(c.denom());
        }
        let mut v = vec![BigInt::zero(); deg as usize + 1];
        for (e, c) in s {
            let idx = (e / step) as usize;
            v[idx] = c.numer() * (&lcm / c.denom());
        }
        v
    };
    let va = dense(&sa, da);
    let vb = dense(&sb, db);
    let g = int_poly_gcd(va, vb);

    let mut terms = BTreeMap::new();
    for (i, c) in g.into_iter().enumerate() {
        if !c.is_zero() {
            let e = Exp::new(i as i64 * step, denom_lcm);
            terms.insert(e, BigRational::from_integer(c));
        }
    }
    Some(LaurentPoly { terms })
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&v);
    if c.is_zero() || c.is_one() {
        return v;
    }
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Primitive-PRS gcd for dense integer polynomials (index = degree).
fn int_poly_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = make_primitive(trim(a));
    let mut b = make_primitive(trim(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = make_primitive(trim(r));
    }
    if a.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    a
}

/// Pseudo-remainder of a by b (deg a >= deg b >= 0, b nonempty).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            let t = &lr * &b[j];
            r[dr - db + j] = &r[dr - db + j] - t;
        }
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    r
}

/// Exact division `a / g` where `g` divides `a`; both with min-exponent 0.
fn divide_exact(a: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if g.is_one() {
        return a.clone();
    }
    // Long division from the top; exactness is guaranteed by construction.
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero();
    let glead = g.max_exp().unwrap();
    let gc = g.leading_coeff().unwrap().clone();
    while !rem.is_zero() {
        let rlead = rem.max_exp().unwrap();
        let rc = rem.leading_coeff().unwrap().clone();
        let e = rlead - glead;
        let c = rc / &gc;
        let t = LaurentPoly::monomial(e, c);
        quot = quot.add(&t);
        rem = rem.sub(&g.mul(&t));
    }
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e_num: i64, e_den: i64, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(Exp::new(e_num, e_den), BigRational::from_integer(c.into()))
    }

    #[test]
    fn mul_adds_exponents() {
        let a = mono(1, 2, 3);
        let b = mono(-3, 2, 2);
        let p = a.mul(&b);
        assert_eq!(p, mono(-1, 1, 6));
    }

    #[test]
    fn reduce_cancels_common_factor() {
        // (s^2 - 1)(s + 1) / (s + 1) = s^2 - 1
        let sp1 = mono(1, 1, 1).add(&mono(0, 1, 1));
        let s2m1 = mono(2, 1, 1).add(&mono(0, 1, -1));
        let num = s2m1.mul(&sp1);
        let r = reduce_fraction(num, sp1);
        assert!(r.canonical);
        assert!(r.den.is_one());
        assert_eq!(r.num, s2m1);
    }

    #[test]
    fn reduce_makes_denominator_monic_min_zero() {
        // s / (2 s^3 + 2 s)  ->  1 / (s^2 + 1) ... num s * 1/(s(2s^2+2))
        let num = mono(1, 1, 1);
        let den = mono(3, 1, 2).add(&mono(1, 1, 2));
        let r = reduce_fraction(num, den);
        assert!(r.canonical);
        assert_eq!(r.den.min_exp().unwrap(), Exp::zero());
        assert!(r.den.leading_coeff().unwrap().is_one());
        assert_eq!(r.den, mono(2, 1, 1).add(&mono(0, 1, 1)));
        assert_eq!(
            r.num,
            LaurentPoly::monomial(Exp::zero(), BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn gcd_on_refined_lattice() {
        // (s^{1/3} - 1)(s^{1/3} + 1) / (s^{1/3} - 1) = s^{1/3} + 1
        let f = mono(1, 3, 1).add(&mono(0, 1, -1));
        let g = mono(1, 3, 1).add(&mono(0, 1, 1));
        let r = reduce_fraction(f.mul(&g), f);
        assert!(r.canonical);
        assert!(r.den.is_one());
        assert_eq!(r.num, g);
    }

    #[test]
    fn degree_guard_skips_gcd() {
        // Exponents with denominator 1e6 exceed the lattice cap.
        let f = mono(1, 1_000_000, 1).add(&mono(0, 1, -1));
        let g = mono(1, 1, 1).add(&mono(0, 1, 1));
        let r = reduce_fraction(f.mul(&g), f.clone());
        assert!(!r.canonical);
        // The unreduced ratio still equals g: num = den * g.
        assert!(r.num.sub(&r.den.mul(&g)).is_zero());
    }
}
