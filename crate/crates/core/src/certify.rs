//! End-to-end certificate pipelines and the independent verifier.
//!
//! A theorem-mt certificate records coefficients `q` on `C^m` satisfying the
//! first-moment and even Beauville conditions with `κ ≠ 0`, together with the
//! normalized projection onto `C^n`. A prop-p7 certificate records `q` killing
//! the moment rows `{1..g−2} \ {i}` while the shifted functional stays
//! nonzero.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cycle::{cycle_from_q, project_pushforward};
use crate::error::{ensure_params, Error, Result};
use crate::exact::{binomial, format_rational, int, power, Rational};
use crate::linear::{
    build_p7_system, build_s_system, kappa_functional, p7_functional, solve_with_avoidance,
};

pub const TOOL_VERSION: &str = concat!("mdcycle ", env!("CARGO_PKG_VERSION"));

/// How far past the starting `m` the theorem-mt sweep looks before giving up.
pub const MT_SWEEP_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    #[serde(rename = "theorem-mt")]
    TheoremMt,
    #[serde(rename = "prop-p7")]
    PropP7,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    #[serde(with = "crate::exact::serde_rational")]
    pub residual: Rational,
    pub pass: bool,
}

/// Serialized field order is fixed by declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub g: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub m: usize,
    #[serde(with = "crate::exact::serde_rational_vec")]
    pub q: Vec<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::exact::serde_rational_opt"
    )]
    pub kappa: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::exact::serde_rational_opt"
    )]
    pub functional_value: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::exact::serde_rational_opt_vec"
    )]
    pub projected_coeffs: Option<Vec<Rational>>,
    pub checks: Vec<Check>,
    pub tool_version: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

fn checks_from(residuals: Vec<(String, Rational)>) -> Vec<Check> {
    residuals
        .into_iter()
        .map(|(label, residual)| {
            let pass = residual.is_zero();
            Check { label, residual, pass }
        })
        .collect()
}

/// Smallest `m` admissible for theorem-mt: `m > n` and `m > 2g + 2`.
pub fn mt_start(g: usize, n: usize) -> usize {
    (n + 1).max(2 * g + 3)
}

/// Solves the theorem-mt system, sweeping `m` upward from [`mt_start`] (or
/// the override) until a kernel vector with `κ ≠ 0` exists.
pub fn certify_theorem_mt(g: usize, n: usize, m_override: Option<usize>) -> Result<Certificate> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "n = {n}: products of at most two curves are surfaces, where numerical and \
             algebraic equivalence already coincide; the construction needs n ≥ 3"
        )));
    }
    ensure_params!(g >= 1, "genus must be at least 1, got {g}");
    let start = mt_start(g, n);
    let first = match m_override {
        Some(m) => {
            ensure_params!(m >= start, "m must exceed both n={n} and 2g+2={}, got {m}", 2 * g + 2);
            m
        }
        None => start,
    };
    for m in first..=first + MT_SWEEP_LIMIT {
        let sys = build_s_system(g, m)?;
        let kappa_f = kappa_functional(m, n)?;
        let Some(q) = solve_with_avoidance(&sys, &kappa_f) else {
            continue;
        };
        let kappa = kappa_f.eval(&q);
        let cycle = cycle_from_q(m, q.clone())?;
        let projected = project_pushforward(&cycle, n)?;
        let projected_coeffs = projected.coeffs().iter().map(|a| a / &kappa).collect();
        return Ok(Certificate {
            kind: CertificateKind::TheoremMt,
            g,
            n,
            i: None,
            m,
            q,
            kappa: Some(kappa),
            functional_value: None,
            projected_coeffs: Some(projected_coeffs),
            checks: checks_from(sys.residuals(cycle.coeffs())),
            tool_version: TOOL_VERSION.to_string(),
        });
    }
    Err(Error::OutOfRange(format!(
        "no solution with κ ≠ 0 for m in {first}..={}",
        first + MT_SWEEP_LIMIT
    )))
}

/// Sweeps `m = n+1..=m_max` for `q` killing the literal exponent rows with the
/// shifted functional nonzero. `None` when the sweep is exhausted.
pub fn certify_prop_p7(g: usize, n: usize, i: usize, m_max: usize) -> Result<Option<Certificate>> {
    ensure_params!(g >= 3, "genus must be at least 3, got {g}");
    ensure_params!(n >= 1, "n must be at least 1");
    for m in n + 1..=m_max {
        let sys = build_p7_system(g, i, m)?;
        let f = p7_functional(n, m, i)?;
        if let Some(q) = solve_with_avoidance(&sys, &f) {
            let value = f.eval(&q);
            return Ok(Some(Certificate {
                kind: CertificateKind::PropP7,
                g,
                n,
                i: Some(i),
                m,
                checks: checks_from(sys.residuals(&q)),
                q,
                kappa: None,
                functional_value: Some(value),
                projected_coeffs: None,
                tool_version: TOOL_VERSION.to_string(),
            }));
        }
    }
    Ok(None)
}

/// First failed verification step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub check: String,
    pub reason: String,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.check, self.reason)
    }
}

fn fail<T>(check: impl Into<String>, reason: impl Into<String>) -> Result<T, VerifyFailure> {
    Err(VerifyFailure { check: check.into(), reason: reason.into() })
}

// The verifier recomputes everything from binomials and powers; it does not
// call the system builders, the eliminator, or the pushforward code.

fn moment(m: usize, e: u32, q: &[Rational]) -> Rational {
    q.iter()
        .enumerate()
        .map(|(idx, qk)| {
            let k = idx + 1;
            qk * int(binomial(m as u64, k as i64) * power(k as u64, e))
        })
        .sum()
}

fn inner_projection(m: usize, n: usize, l: usize, q: &[Rational]) -> Rational {
    (0..=m - n)
        .map(|j| int(binomial((m - n) as u64, j as i64)) * &q[l + j - 1])
        .sum()
}

fn expected_rows(cert: &Certificate) -> Result<Vec<(String, u32)>, VerifyFailure> {
    match cert.kind {
        CertificateKind::TheoremMt => {
            let mut rows = vec![("S2:e=1".to_string(), 1)];
            let mut s = 0;
            while s < cert.g {
                rows.push((format!("S1:e={}", s + 2), s as u32 + 2));
                s += 2;
            }
            Ok(rows)
        }
        CertificateKind::PropP7 => {
            let Some(i) = cert.i else {
                return fail("i", "prop-p7 certificate lacks i");
            };
            Ok((1..cert.g.saturating_sub(1))
                .filter(|&j| j != i)
                .map(|j| (format!("P7:e={j}"), j as u32))
                .collect())
        }
    }
}

pub fn verify_certificate(cert: &Certificate) -> Result<(), VerifyFailure> {
    let (g, n, m) = (cert.g, cert.n, cert.m);
    if cert.q.len() != m {
        return fail("q", format!("length {} does not match m = {m}", cert.q.len()));
    }
    if cert.q.iter().all(Zero::is_zero) {
        return fail("q", "zero vector");
    }
    if n < 1 || n >= m {
        return fail("n", format!("need 1 ≤ n < m, got n={n}, m={m}"));
    }
    match cert.kind {
        CertificateKind::TheoremMt => {
            if g < 1 || n < 3 || m <= 2 * g + 2 {
                return fail("params", format!("need g ≥ 1, n ≥ 3, m > 2g+2; got g={g}, n={n}, m={m}"));
            }
        }
        CertificateKind::PropP7 => {
            if g < 3 {
                return fail("params", format!("need g ≥ 3, got {g}"));
            }
        }
    }

    let rows = expected_rows(cert)?;
    if rows.len() != cert.checks.len() {
        return fail(
            "checks",
            format!("expected {} rows, certificate lists {}", rows.len(), cert.checks.len()),
        );
    }
    for ((label, e), check) in rows.iter().zip(&cert.checks) {
        if &check.label != label {
            return fail(label.as_str(), format!("certificate lists row {:?} here", check.label));
        }
        let residual = moment(m, *e, &cert.q);
        if residual != check.residual {
            return fail(
                label.as_str(),
                format!(
                    "recomputed residual {} differs from recorded {}",
                    format_rational(&residual),
                    format_rational(&check.residual)
                ),
            );
        }
        if !residual.is_zero() {
            return fail(label.as_str(), format!("residual {} is not zero", format_rational(&residual)));
        }
        if !check.pass {
            return fail(label.as_str(), "recorded as failing");
        }
    }

    match cert.kind {
        CertificateKind::TheoremMt => {
            let Some(kappa) = &cert.kappa else {
                return fail("kappa", "missing");
            };
            let recomputed = inner_projection(m, n, n, &cert.q);
            if &recomputed != kappa {
                return fail(
                    "kappa",
                    format!("recomputed {} differs from recorded {}", format_rational(&recomputed), format_rational(kappa)),
                );
            }
            if kappa.is_zero() {
                return fail("kappa", "vanishes");
            }
            let Some(projected) = &cert.projected_coeffs else {
                return fail("projected_coeffs", "missing");
            };
            if projected.len() != n {
                return fail("projected_coeffs", format!("length {} does not match n = {n}", projected.len()));
            }
            for (l, recorded) in (1..=n).zip(projected) {
                let expected = inner_projection(m, n, l, &cert.q) / kappa;
                if &expected != recorded {
                    return fail(
                        format!("projected_coeffs[{l}]"),
                        format!("recomputed {} differs from recorded {}", format_rational(&expected), format_rational(recorded)),
                    );
                }
            }
            if cert.functional_value.is_some() {
                return fail("functional_value", "not part of a theorem-mt certificate");
            }
        }
        CertificateKind::PropP7 => {
            let Some(value) = &cert.functional_value else {
                return fail("functional_value", "missing");
            };
            let e = cert.i.expect("checked by expected_rows") as u32 + 3;
            let recomputed: Rational = (1..=n)
                .map(|l| {
                    int(binomial(n as u64, l as i64) * BigInt::from(l).pow(e)) * inner_projection(m, n, l, &cert.q)
                })
                .sum();
            if &recomputed != value {
                return fail(
                    "functional_value",
                    format!("recomputed {} differs from recorded {}", format_rational(&recomputed), format_rational(value)),
                );
            }
            if value.is_zero() {
                return fail("functional_value", "vanishes");
            }
            if cert.kappa.is_some() || cert.projected_coeffs.is_some() {
                return fail("kappa", "not part of a prop-p7 certificate");
            }
        }
    }
    Ok(())
}
