//! Exact scalars, dense univariate polynomials and the integer combinatorics
//! shared by every other module.
//!
//! Scalars are [`num_rational::BigRational`], which keeps every value reduced
//! with a positive denominator. Nothing in this crate touches fixed-width
//! integers on an arithmetic path: moment rows contain `C(m,k)·k^e`, which
//! leaves `u64` behind at very small `m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact rational arithmetic; division by zero is an operand error.
pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::InvalidOperand("division by zero".into()));
            }
            a / b
        }
    })
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidOperand(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Rescales a rational vector to coprime integers whose first nonzero entry
/// is positive. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd * &sign))
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// The falling product `m(m−1)···(m−j)`, which has `j + 1` factors.
///
/// `falling(m, 0) = m`.
pub fn falling(m: i64, j: usize) -> BigInt {
    (0..=j as i64).map(|t| BigInt::from(m - t)).product()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `k^e` as a big integer.
pub fn power(k: u64, e: u32) -> BigInt {
    BigInt::from(k).pow(e)
}

pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_rational_opt_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serde_rational_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_rational_vec")] Vec<Rational>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub mod serde_rational_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => super::serde_rational::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_rational")] Rational);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Dense univariate polynomial over the rationals, lowest power first.
///
/// Canonical form has no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(1 + x)^e`, built from binomial coefficients.
    pub fn one_plus_x_pow(e: u64) -> Self {
        Self::new((0..=e).map(|k| int(binomial(e, k as i64))).collect())
    }

    /// `x^j (1 + x)^e`.
    pub fn shifted_one_plus_x_pow(j: usize, e: u64) -> Self {
        let mut coeffs = vec![Rational::zero(); j];
        coeffs.extend((0..=e).map(|k| int(binomial(e, k as i64))));
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients of `x^0..x^(len-1)`, zero-padded.
    pub fn coeff_vector(&self, len: usize) -> Vec<Rational> {
        (0..len).map(|k| self.coeff(k)).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self += c · other` in place (`c = 1` when `None`).
    pub fn add_assign_scaled(&mut self, other: &Poly, c: Option<&Rational>) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            match c {
                Some(c) => *a += b * c,
                None => *a += b,
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Synthetic division by `(x − root)`: returns quotient and remainder.
    pub fn synthetic_div(&self, root: &Rational) -> (Poly, Rational) {
        if self.is_zero() {
            return (Poly::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let value = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return (Poly::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, None);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, Some(&-Rational::one()));
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &Poly, q: &Poly, op: PolyOp) -> Poly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

impl fmt::Display for Poly {
    /// Space-separated `coeff*x^k` terms, lowest power first; zero prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}*x^{}", format_rational(c), k)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        assert_eq!(rat_arith(&ratio(1, 2), &ratio(1, 3), RatOp::Add).unwrap(), ratio(5, 6));
        let half = ratio(2, 4);
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        assert_eq!(rat_arith(&ratio(3, 7), &ratio(7, 3), RatOp::Mul).unwrap(), rat(1));
        assert!(matches!(
            rat_arith(&rat(1), &rat(0), RatOp::Div),
            Err(Error::InvalidOperand(_))
        ));
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let denom = parse_rational("3/-6").unwrap();
        assert!(denom.denom().is_positive());
    }

    fn pascal(n_max: usize) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                    let right = prev.get(k).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        for m in 0..30 {
            assert_eq!(binomial(m, 0), BigInt::one());
        }
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        let oracle = pascal(40);
        assert_eq!(oracle[40][20], BigInt::from(137_846_528_820u64));
        assert_eq!(binomial(40, 20), oracle[40][20]);
    }

    #[test]
    fn binomial_matches_pascal_rule() {
        for n in 1..=60u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling(5, 2), BigInt::from(5 * 4 * 3));
        for m in -3..10 {
            assert_eq!(falling(m, 0), BigInt::from(m));
        }
        assert_eq!(falling(3, 3), BigInt::zero());
    }

    #[test]
    fn falling_is_scaled_binomial() {
        for m in 1..=40i64 {
            for j in 0..m as usize {
                assert_eq!(
                    falling(m, j),
                    binomial(m as u64, j as i64 + 1) * factorial(j as u64 + 1)
                );
            }
        }
    }

    #[test]
    fn poly_examples() {
        let p = Poly::from_ints(&[1, 1]);
        assert_eq!(poly_arith(&p, &p, PolyOp::Mul), Poly::from_ints(&[1, 2, 1]));
        assert!(poly_arith(&p, &p, PolyOp::Sub).is_zero());
        assert_eq!(p.pow(3), Poly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(Poly::one_plus_x_pow(3), p.pow(3));
        assert_eq!(Poly::shifted_one_plus_x_pow(2, 1), Poly::from_ints(&[0, 0, 1, 1]));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::from_ints(&[3, 0, -2]).to_string(), "3*x^0 -2*x^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn synthetic_division_at_minus_one() {
        let p = Poly::from_ints(&[1, 3, 3, 1]);
        let (q, r) = p.synthetic_div(&rat(-1));
        assert_eq!(q, Poly::from_ints(&[1, 2, 1]));
        assert!(r.is_zero());
        let (q, r) = Poly::from_ints(&[0, 0, 0, 1]).synthetic_div(&rat(-1));
        assert_eq!(r, rat(-1));
        assert_eq!(&(&q * &Poly::from_ints(&[1, 1])) + &Poly::from_ints(&[-1]), Poly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn primitive_vector_scaling() {
        let v = vec![ratio(-1, 2), ratio(1, 3), rat(0)];
        assert_eq!(primitive_integer_vector(&v), vec![rat(3), rat(-2), rat(0)]);
        assert_eq!(primitive_integer_vector(&[rat(0), rat(0)]), vec![rat(0), rat(0)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
        }

        fn poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(rational(), 0..7).prop_map(Poly::new)
        }

        fn canonical(p: &Poly) -> bool {
            p.coeffs().last().is_none_or(|c| !c.is_zero())
                && p.coeffs().iter().all(|c| c.denom().is_positive() && c.numer().gcd(c.denom()).is_one())
        }

        proptest! {
            #[test]
            fn ring_laws(p in poly(), q in poly(), r in poly()) {
                prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
                prop_assert_eq!(&p + &q, &q + &p);
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &q, &q * &p);
                let prod = &p * &q;
                prop_assert!(canonical(&prod));
                if let (Some(a), Some(b)) = (p.degree(), q.degree()) {
                    prop_assert_eq!(prod.degree(), Some(a + b));
                }
            }

            #[test]
            fn rational_text_round_trip(r in rational()) {
                prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
            }
        }
    }
}
