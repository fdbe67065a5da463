//! Coefficient-level bookkeeping for 1-cycles on `C^m` spanned by the partial
//! diagonals `Δ_T`, and for their images in the Beauville basis of the
//! Jacobian.
//!
//! Only coefficient vectors are tracked. Base-point choices change classes
//! by algebraically equivalent cycles and never enter the computations here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_params, Error, Result};
use crate::exact::{binomial, factorial, int, power, Rational};

/// Default cap on `m` for subset-indexed cycles (about four million subsets).
pub const DEFAULT_SUBSET_CAP: usize = 22;

/// Environment variable overriding [`DEFAULT_SUBSET_CAP`].
pub const SUBSET_CAP_ENV: &str = "MDCYCLE_SUBSET_CAP";

/// Subset cap from [`SUBSET_CAP_ENV`], falling back to the default. Values
/// are clamped to 30 so that subsets fit a `u32` mask.
pub fn subset_cap_from_env() -> usize {
    std::env::var(SUBSET_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_SUBSET_CAP, |cap| cap.min(30))
}

/// `Σ_k a_k Σ_{#T=k} Δ_T` on `C^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricCycle {
    m: usize,
    #[serde(with = "crate::exact::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl SymmetricCycle {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `a_k` for `1 ≤ k ≤ m`.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn zero(m: usize) -> Self {
        SymmetricCycle { m, coeffs: vec![Rational::zero(); m] }
    }

    /// Re-checks the length invariant after deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.coeffs.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "cycle on C^{} carries {} coefficients",
                self.m,
                self.coeffs.len()
            )));
        }
        Ok(())
    }
}

pub fn cycle_from_q(m: usize, q: Vec<Rational>) -> Result<SymmetricCycle> {
    let c = SymmetricCycle { m, coeffs: q };
    c.validate()?;
    Ok(c)
}

/// Pushforward along the projection onto the first `n` factors:
/// `a'_l = Σ_j C(m−n, j) a_(l+j)`.
pub fn project_pushforward(c: &SymmetricCycle, n: usize) -> Result<SymmetricCycle> {
    ensure_params!(n >= 1 && n < c.m, "projection needs 1 ≤ n < m, got n={n}, m={}", c.m);
    let rest = (c.m - n) as u64;
    let coeffs = (1..=n)
        .map(|l| {
            (0..=c.m - n)
                .map(|j| int(binomial(rest, j as i64)) * c.coeff(l + j))
                .sum()
        })
        .collect();
    Ok(SymmetricCycle { m: n, coeffs })
}

/// Subset-indexed cycle `Σ_T c_T Δ_T`; subsets are bitmasks over `{1..m}`
/// (bit `k−1` for element `k`). Absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralCycle {
    m: usize,
    coeffs: BTreeMap<u32, Rational>,
}

impl GeneralCycle {
    pub fn new(m: usize, cap: usize) -> Result<Self> {
        check_cap(m, cap)?;
        Ok(GeneralCycle { m, coeffs: BTreeMap::new() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    /// Adds `c · Δ_T`. `T` is given by its elements in `1..=m`.
    pub fn add_term(&mut self, subset: &[usize], c: Rational) -> Result<()> {
        let mut mask = 0u32;
        for &k in subset {
            if k < 1 || k > self.m {
                return Err(Error::InvalidInput(format!("element {k} outside 1..={}", self.m)));
            }
            mask |= 1 << (k - 1);
        }
        if mask == 0 {
            return Err(Error::InvalidInput("empty subset".into()));
        }
        self.add_mask(mask, c);
        Ok(())
    }

    fn add_mask(&mut self, mask: u32, c: Rational) {
        let entry = self.coeffs.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn coeff_of(&self, subset: &[usize]) -> Rational {
        let mask = subset.iter().fold(0u32, |acc, &k| acc | 1 << (k - 1));
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    /// Every nonempty `T` with coefficient `a_(#T)`.
    pub fn from_symmetric(c: &SymmetricCycle, cap: usize) -> Result<Self> {
        let mut out = GeneralCycle::new(c.m, cap)?;
        for mask in 1u32..(1u32 << c.m) {
            let size = mask.count_ones() as usize;
            let a = c.coeff(size);
            if !a.is_zero() {
                out.coeffs.insert(mask, a.clone());
            }
        }
        Ok(out)
    }

    /// The symmetric cycle this equals, if all subsets of each size share a
    /// coefficient.
    pub fn collapse_symmetric(&self) -> Option<SymmetricCycle> {
        let mut by_size: Vec<Option<Rational>> = vec![None; self.m + 1];
        let mut counts = vec![0u64; self.m + 1];
        for (mask, c) in &self.coeffs {
            let size = mask.count_ones() as usize;
            counts[size] += 1;
            match &by_size[size] {
                Some(prev) if prev != c => return None,
                _ => by_size[size] = Some(c.clone()),
            }
        }
        let coeffs = (1..=self.m)
            .map(|k| {
                let full = counts[k] == binomial(self.m as u64, k as i64).try_into().unwrap_or(u64::MAX);
                match (&by_size[k], full) {
                    (None, _) => Some(Rational::zero()),
                    (Some(c), true) => Some(c.clone()),
                    (Some(_), false) => None,
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SymmetricCycle { m: self.m, coeffs })
    }
}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap.min(30) {
        return Err(Error::ResourceLimit(format!(
            "subset enumeration on C^{m} exceeds the cap of {cap}"
        )));
    }
    ensure_params!(m >= 1, "m must be at least 1");
    Ok(())
}

/// Projection pushforward by enumeration: `T ↦ T ∩ {1..n}`, empty
/// intersections dropped. Oracle for [`project_pushforward`].
pub fn brute_pushforward(c: &GeneralCycle, n: usize) -> Result<GeneralCycle> {
    brute_pushforward_with_cap(c, n, DEFAULT_SUBSET_CAP)
}

pub fn brute_pushforward_with_cap(c: &GeneralCycle, n: usize, cap: usize) -> Result<GeneralCycle> {
    check_cap(c.m, cap)?;
    ensure_params!(n >= 1 && n < c.m, "projection needs 1 ≤ n < m, got n={n}, m={}", c.m);
    let keep = (1u32 << n) - 1;
    let mut out = GeneralCycle { m: n, coeffs: BTreeMap::new() };
    for (mask, a) in &c.coeffs {
        let image = mask & keep;
        if image != 0 {
            out.add_mask(image, a.clone());
        }
    }
    Ok(out)
}

/// Coefficients in the basis `α_0..α_(g−1)`; `[n]_*` scales `α_s` by
/// `n^(2+s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeauvilleVector {
    pub g: usize,
    #[serde(with = "crate::exact::serde_rational_vec")]
    pub comps: Vec<Rational>,
}

impl BeauvilleVector {
    /// Image under multiplication by `n` on the Jacobian.
    pub fn multiply_by(&self, n: u64) -> BeauvilleVector {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(s, b)| b * int(power(n, 2 + s as u32)))
            .collect();
        BeauvilleVector { g: self.g, comps }
    }
}

/// `b_s = Σ_k a_k C(m,k) k^(2+s)` for `s = 0..g−1`.
pub fn jacobian_pushforward(c: &SymmetricCycle, g: usize) -> Result<BeauvilleVector> {
    ensure_params!(g >= 1, "genus must be at least 1, got {g}");
    let comps = (0..g)
        .map(|s| {
            (1..=c.m)
                .map(|k| {
                    c.coeff(k) * int(binomial(c.m as u64, k as i64) * power(k as u64, 2 + s as u32))
                })
                .sum()
        })
        .collect();
    Ok(BeauvilleVector { g, comps })
}

/// `(m−1)! · Σ_k a_k C(m,k) k`.
pub fn degree_functional(c: &SymmetricCycle) -> Rational {
    let moment: Rational = (1..=c.m)
        .map(|k| c.coeff(k) * int(binomial(c.m as u64, k as i64) * BigInt::from(k)))
        .sum();
    moment * int(factorial(c.m as u64 - 1))
}

/// `i!(m−i)!`, the multiplicity of the pulled-back symmetric diagonal.
pub fn fstar_multiplicity(m: usize, i: usize) -> Result<BigInt> {
    ensure_params!(i >= 1 && i <= m, "need 1 ≤ i ≤ m, got i={i}, m={m}");
    Ok(factorial(i as u64) * factorial((m - i) as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentStatus {
    Zero,
    Nonzero,
    /// Nonzero odd component, smash nilpotent since the class is skew.
    OddSkew,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub s: usize,
    #[serde(with = "crate::exact::serde_rational")]
    pub value: Rational,
    pub status: ComponentStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmashReport {
    pub m: usize,
    pub g: usize,
    pub components: Vec<ComponentVerdict>,
    #[serde(with = "crate::exact::serde_rational")]
    pub degree: Rational,
    pub certified: bool,
}

/// Certified iff every even Beauville component and the degree vanish.
pub fn smash_certificate(c: &SymmetricCycle, g: usize) -> Result<SmashReport> {
    let b = jacobian_pushforward(c, g)?;
    let components: Vec<ComponentVerdict> = b
        .comps
        .into_iter()
        .enumerate()
        .map(|(s, value)| {
            let status = if value.is_zero() {
                ComponentStatus::Zero
            } else if s % 2 == 1 {
                ComponentStatus::OddSkew
            } else {
                ComponentStatus::Nonzero
            };
            ComponentVerdict { s, value, status }
        })
        .collect();
    let degree = degree_functional(c);
    let certified = degree.is_zero() && components.iter().all(|v| v.status != ComponentStatus::Nonzero);
    Ok(SmashReport { m: c.m, g, components, degree, certified })
}
