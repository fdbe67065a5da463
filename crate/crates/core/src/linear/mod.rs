//! Constraint systems on the coefficients `q_1..q_m`, their exact nullspaces,
//! and kernel vectors that avoid a designated linear functional.

pub mod elim;
pub mod lemmas;

use num_traits::Zero;

use crate::error::{ensure_params, Error, Result};
use crate::exact::{binomial, dot, int, power, primitive_integer_vector, Rational};

pub use elim::{rank, rref, span_representation, Rref};
pub use lemmas::{
    beta_closed_forms, check_lemma2_params, independence_check, lemma2_find_m, lemma2_membership, lemma2_residuals,
    lemma2_target, residuals_vanish, BetaClosedForms, IndependenceReport, MembershipReport,
};

/// A labelled row of a constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub vector: Vec<Rational>,
}

/// Homogeneous linear system in `q_1..q_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    m: usize,
    rows: Vec<Row>,
}

impl ConstraintSystem {
    pub fn new(m: usize) -> Self {
        ConstraintSystem { m, rows: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn push_row(&mut self, label: impl Into<String>, vector: Vec<Rational>) -> Result<()> {
        let label = label.into();
        if vector.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "row {label:?} has {} entries, expected {}",
                vector.len(),
                self.m
            )));
        }
        if self.rows.iter().any(|r| r.label == label) {
            return Err(Error::InvalidInput(format!("duplicate row label {label:?}")));
        }
        self.rows.push(Row { label, vector });
        Ok(())
    }

    pub fn push_moment(&mut self, label: impl Into<String>, e: u32) -> Result<()> {
        let row = moment_row(self.m, e);
        self.push_row(label, row)
    }

    /// `(label, row · q)` for every row.
    pub fn residuals(&self, q: &[Rational]) -> Vec<(String, Rational)> {
        self.rows
            .iter()
            .map(|r| (r.label.clone(), dot(&r.vector, q)))
            .collect()
    }

    fn matrix(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.vector.clone()).collect()
    }
}

/// A linear functional on `q_1..q_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub label: String,
    pub vector: Vec<Rational>,
}

impl Functional {
    pub fn eval(&self, q: &[Rational]) -> Rational {
        dot(&self.vector, q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullspaceBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub rank: usize,
}

impl NullspaceBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

/// `(C(m,k)·k^e)` for `k = 1..m`.
pub fn moment_row(m: usize, e: u32) -> Vec<Rational> {
    (1..=m)
        .map(|k| int(binomial(m as u64, k as i64) * power(k as u64, e)))
        .collect()
}

/// Row exponents for the first-moment condition plus the even-index
/// conditions `2 + i`, `i ∈ {0, 2, 4, …} ∩ [0, g−1]`.
pub fn s_exponents(g: usize) -> Vec<u32> {
    std::iter::once(1)
        .chain((0..g).step_by(2).map(|i| 2 + i as u32))
        .collect()
}

pub fn s_row_label(e: u32) -> String {
    if e == 1 {
        "S2:e=1".to_string()
    } else {
        format!("S1:e={e}")
    }
}

pub fn build_s_system(g: usize, m: usize) -> Result<ConstraintSystem> {
    ensure_params!(g >= 1, "genus must be at least 1, got {g}");
    ensure_params!(m >= 1, "m must be at least 1, got {m}");
    let mut sys = ConstraintSystem::new(m);
    for e in s_exponents(g) {
        sys.push_moment(s_row_label(e), e)?;
    }
    Ok(sys)
}

/// `κ(q) = Σ_k C(m−n, k−n) q_k`.
pub fn kappa_functional(m: usize, n: usize) -> Result<Functional> {
    ensure_params!(n >= 1 && n < m, "kappa needs 1 ≤ n < m, got n={n}, m={m}");
    let vector = (1..=m)
        .map(|k| int(binomial((m - n) as u64, k as i64 - n as i64)))
        .collect();
    Ok(Functional { label: format!("kappa(n={n})"), vector })
}

/// Exponents `{1, …, g−2} \ {i}` of the literal Beauville-vanishing system.
pub fn p7_exponents(g: usize, i: usize) -> Vec<u32> {
    (1..=g.saturating_sub(2))
        .filter(|&j| j != i)
        .map(|j| j as u32)
        .collect()
}

pub fn p7_row_label(e: u32) -> String {
    format!("P7:e={e}")
}

pub fn build_p7_system(g: usize, i: usize, m: usize) -> Result<ConstraintSystem> {
    ensure_params!(g >= 3, "genus must be at least 3, got {g}");
    build_moment_system(m, &p7_exponents(g, i))
}

/// Moment system over an explicit exponent set, e.g. the shifted `2 + s`
/// reading of the Beauville conditions.
pub fn build_moment_system(m: usize, exponents: &[u32]) -> Result<ConstraintSystem> {
    ensure_params!(m >= 1, "m must be at least 1, got {m}");
    let mut sys = ConstraintSystem::new(m);
    for &e in exponents {
        sys.push_moment(p7_row_label(e), e)?;
    }
    Ok(sys)
}

/// `q ↦ Σ_l C(n,l) (Σ_j C(m−n,j) q_(l+j)) l^(i+3)` as an `m`-vector.
pub fn p7_functional(n: usize, m: usize, i: usize) -> Result<Functional> {
    ensure_params!(n >= 1 && n < m, "need 1 ≤ n < m, got n={n}, m={m}");
    let e = i as u32 + 3;
    let vector = (1..=m)
        .map(|k| {
            let total = (1..=n.min(k))
                .map(|l| {
                    binomial(n as u64, l as i64)
                        * binomial((m - n) as u64, (k - l) as i64)
                        * power(l as u64, e)
                })
                .sum::<num_bigint::BigInt>();
            int(total)
        })
        .collect();
    Ok(Functional { label: format!("p7(n={n},i={i})"), vector })
}

pub fn nullspace(sys: &ConstraintSystem) -> NullspaceBasis {
    let r = rref(&sys.matrix(), sys.m);
    NullspaceBasis { rank: r.rank(), vectors: r.kernel() }
}

/// First nullspace basis vector (free-column order) on which `f` does not
/// vanish. `None` means `f` vanishes on the whole nullspace.
pub fn solve_with_avoidance(sys: &ConstraintSystem, f: &Functional) -> Option<Vec<Rational>> {
    nullspace(sys)
        .vectors
        .into_iter()
        .find(|v| !f.eval(v).is_zero())
        .map(|v| primitive_integer_vector(&v))
}
