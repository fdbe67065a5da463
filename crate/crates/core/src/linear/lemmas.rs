//! Independence and non-membership claims about the moment polynomials
//! `r_j = T^j (1+x)^m`, decided by exact rank computations on coefficient
//! vectors.

use num_traits::Zero;

use crate::error::{ensure_params, Result};
use crate::exact::{falling, int, Poly, Rational};
use crate::operator::{one_plus_x_valuation, r_poly, t_power, CoeffTable};

use super::elim::{rank, span_representation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub rank: usize,
    pub expected: usize,
    pub independent: bool,
}

/// Rank of `{x^n (1+x)^(m−n), r_1, r_2, r_4, …, r_2t}`; independent iff the
/// rank is `t + 2`.
pub fn independence_check(m: usize, n: usize, t: usize) -> Result<IndependenceReport> {
    ensure_params!(n >= 3 && m > n, "need m > n ≥ 3, got m={m}, n={n}");
    ensure_params!(t >= 1 && 2 * t < m, "need t ≥ 1 and 2t < m, got t={t}, m={m}");
    let len = m + 1;
    let mut vectors = vec![Poly::shifted_one_plus_x_pow(n, (m - n) as u64).coeff_vector(len)];
    vectors.push(r_poly(m, 1)?.coeff_vector(len));
    for s in 1..=t {
        vectors.push(r_poly(m, 2 * s)?.coeff_vector(len));
    }
    let rank = rank(&vectors, len);
    let expected = t + 2;
    Ok(IndependenceReport { m, n, t, rank, expected, independent: rank == expected })
}

/// `(1+x)^(m−n) · T^(i+3) (1+x)^n`.
pub fn lemma2_target(n: usize, i: usize, m: usize) -> Poly {
    let inner = t_power(&Poly::one_plus_x_pow(n as u64), i + 3);
    &Poly::one_plus_x_pow((m - n) as u64) * &inner
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub n: usize,
    pub i: usize,
    pub m: usize,
    pub member: bool,
    pub span_rank: usize,
    pub augmented_rank: usize,
    pub target_valuation: usize,
    /// `(j, β_j)` when the target lies in the span.
    pub representation: Option<Vec<(usize, Rational)>>,
}

/// Parameter range `1 ≤ i < n − 3` for the shifted-operator membership scans.
pub fn check_lemma2_params(n: usize, i: usize) -> Result<()> {
    ensure_params!(i >= 1 && i + 3 < n, "need 1 ≤ i < n − 3, got n={n}, i={i}");
    Ok(())
}

/// Whether the target lies in the span of `{r_j : j ∈ {1..n} \ {i}}`.
pub fn lemma2_membership(n: usize, i: usize, m: usize) -> Result<MembershipReport> {
    check_lemma2_params(n, i)?;
    ensure_params!(m > n, "need m > n, got m={m}, n={n}");
    let len = m + 1;
    let indices: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let span: Vec<Vec<Rational>> = indices
        .iter()
        .map(|&j| r_poly(m, j).map(|p| p.coeff_vector(len)))
        .collect::<Result<_>>()?;
    let target_poly = lemma2_target(n, i, m);
    let target = target_poly.coeff_vector(len);
    let span_rank = rank(&span, len);
    let mut augmented = span.clone();
    augmented.push(target.clone());
    let augmented_rank = rank(&augmented, len);
    let member = augmented_rank == span_rank;
    let representation = if member {
        span_representation(&span, &target)
            .map(|beta| indices.iter().copied().zip(beta).collect())
    } else {
        None
    };
    Ok(MembershipReport {
        n,
        i,
        m,
        member,
        span_rank,
        augmented_rank,
        target_valuation: one_plus_x_valuation(&target_poly)?,
        representation,
    })
}

/// Smallest `m ∈ (n, m_max]` for which the target is not in the span.
pub fn lemma2_find_m(n: usize, i: usize, m_max: usize) -> Result<Option<usize>> {
    check_lemma2_params(n, i)?;
    for m in n + 1..=m_max {
        if !lemma2_membership(n, i, m)?.member {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `β_(i+3)`, `β_(i+2)`, `β_(i+1)` solved from the top three coefficient
/// equations in the `x^j (1+x)^(m−j)` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaClosedForms {
    pub top: Rational,
    pub mid: Rational,
    pub low: Rational,
}

fn falling_ratio(n: usize, m: usize, j: usize) -> Rational {
    Rational::new(falling(n as i64, j), falling(m as i64, j))
}

pub fn beta_closed_forms(n: usize, i: usize, m: usize, table: &CoeffTable) -> Result<BetaClosedForms> {
    ensure_params!(i >= 1 && i + 3 <= n && n < m, "need 1 ≤ i, i + 3 ≤ n < m, got n={n}, i={i}, m={m}");
    ensure_params!(table.i_max() >= i + 3, "coefficient table must cover row {}", i + 3);
    let c = |a: usize, b: usize| int(table.get(a, b));
    let r = |j: usize| falling_ratio(n, m, j);
    let top = r(i + 2);
    let mid = c(i + 3, i + 2) * (r(i + 1) - r(i + 2));
    let low = c(i + 3, i + 1) * (r(i) - r(i + 2)) - c(i + 2, i + 1) * c(i + 3, i + 2) * (r(i + 1) - r(i + 2));
    Ok(BetaClosedForms { top, mid, low })
}

/// Residuals (left minus right) of the coefficient equations at
/// `x^j (1+x)^(m−j)` for `j = i+3, i+2, i+1, i`, with `β_i` absent.
pub fn lemma2_residuals(
    n: usize,
    i: usize,
    m: usize,
    table: &CoeffTable,
    betas: &BetaClosedForms,
) -> [Rational; 4] {
    let c = |a: usize, b: usize| int(table.get(a, b));
    let nf = |j: usize| int(falling(n as i64, j));
    let mf = |j: usize| int(falling(m as i64, j));
    let beta = [(i + 1, &betas.low), (i + 2, &betas.mid), (i + 3, &betas.top)];
    let equation = |j: usize| -> Rational {
        let lhs = c(i + 3, j) * nf(j - 1);
        let rhs: Rational = beta.iter().map(|(k, b)| *b * c(*k, j)).sum::<Rational>() * mf(j - 1);
        lhs - rhs
    };
    [equation(i + 3), equation(i + 2), equation(i + 1), equation(i)]
}

/// Whether all four residuals vanish, i.e. the closed forms extend to a
/// representation.
pub fn residuals_vanish(residuals: &[Rational; 4]) -> bool {
    residuals.iter().all(Zero::is_zero)
}
