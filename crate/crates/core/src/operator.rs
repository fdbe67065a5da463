//! The Euler operator `T = x·d/dx` acting on `(1+x)^m`, its expansion
//! coefficients, and divisibility by `(1+x)`.
//!
//! `T^i (1+x)^m = Σ_j c^i_j · m[j−1] · x^j (1+x)^(m−j)` where the table
//! `c^i_j` obeys `c^(i+1)_j = j·c^i_j + c^i_(j−1)` and does not depend on `m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{falling, format_rational, int, rat, Poly, Rational};

/// `x · dp/dx`.
pub fn apply_t(p: &Poly) -> Poly {
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as i64))
            .collect(),
    )
}

/// `r_i(x) = T^i (1+x)^m`, computed by iterating `T`. Defined for `i ≥ 1`.
pub fn r_poly(m: usize, i: usize) -> Result<Poly> {
    if m < 1 || i < 1 {
        return Err(Error::OutOfRange(format!("r_poly needs m ≥ 1 and i ≥ 1, got m={m}, i={i}")));
    }
    Ok(t_power(&Poly::one_plus_x_pow(m as u64), i))
}

pub fn t_power(p: &Poly, i: usize) -> Poly {
    (0..i).fold(p.clone(), |acc, _| apply_t(&acc))
}

/// Triangular table `c^i_j`, `1 ≤ j ≤ i ≤ i_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    rows: Vec<Vec<BigInt>>,
}

impl CoeffTable {
    pub fn i_max(&self) -> usize {
        self.rows.len()
    }

    /// Row `i` as `(c^i_1, …, c^i_i)`.
    pub fn row(&self, i: usize) -> Option<&[BigInt]> {
        i.checked_sub(1).and_then(|r| self.rows.get(r)).map(Vec::as_slice)
    }

    /// `c^i_j`, zero outside `1 ≤ j ≤ i`. Panics if row `i` was not built.
    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i <= self.i_max(), "row {i} beyond table size {}", self.i_max());
        if j < 1 || j > i {
            return BigInt::zero();
        }
        self.rows[i - 1][j - 1].clone()
    }
}

pub fn coeff_table(i_max: usize) -> CoeffTable {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(i_max);
    if i_max >= 1 {
        rows.push(vec![BigInt::one()]);
    }
    for i in 1..i_max {
        let prev = &rows[i - 1];
        let at = |j: usize| -> BigInt {
            if j >= 1 && j <= i {
                prev[j - 1].clone()
            } else {
                BigInt::zero()
            }
        };
        let next = (1..=i + 1).map(|j| at(j) * j + at(j - 1)).collect();
        rows.push(next);
    }
    CoeffTable { rows }
}

/// `Σ coeff_j · x^j (1+x)^(m−j)` with strictly increasing `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizedForm {
    pub m: usize,
    pub terms: Vec<(usize, Rational)>,
}

impl FactorizedForm {
    pub fn expand(&self) -> Poly {
        let mut out = Poly::zero();
        for (j, c) in &self.terms {
            out.add_assign_scaled(&Poly::shifted_one_plus_x_pow(*j, (self.m - j) as u64), Some(c));
        }
        out
    }
}

impl fmt::Display for FactorizedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(j, c)| format!("{}*x^{}*(1+x)^{}", format_rational(c), j, self.m - j))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Factorized expansion of `T^i (1+x)^m` for `1 ≤ i ≤ m`.
pub fn lemma1_expand(m: usize, i: usize, table: &CoeffTable) -> Result<FactorizedForm> {
    if i < 1 || i > m {
        return Err(Error::OutOfRange(format!("need 1 ≤ i ≤ m, got i={i}, m={m}")));
    }
    if table.i_max() < i {
        return Err(Error::OutOfRange(format!(
            "coefficient table has {} rows, row {i} required",
            table.i_max()
        )));
    }
    let terms: Vec<(usize, Rational)> = (1..=i)
        .map(|j| (j, int(table.get(i, j) * falling(m as i64, j - 1))))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let form = FactorizedForm { m, terms };
    debug_assert_eq!(form.expand(), t_power(&Poly::one_plus_x_pow(m as u64), i));
    Ok(form)
}

/// Largest `e` with `(1+x)^e | p`, by repeated exact division at `x = −1`.
pub fn one_plus_x_valuation(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput("valuation of the zero polynomial is infinite".into()));
    }
    let root = rat(-1);
    let mut current = p.clone();
    let mut e = 0;
    loop {
        let (quotient, remainder) = current.synthetic_div(&root);
        if !remainder.is_zero() {
            return Ok(e);
        }
        current = quotient;
        e += 1;
    }
}
