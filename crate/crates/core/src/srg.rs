//! Parameter sets of strongly regular graphs, their spectra, and the
//! tightness condition `v·e⁻ = m⁻(e⁻ − k)` under which the ratio bound and
//! the inertia bound for cocliques agree.
//!
//! Everything here is exact: intermediate quantities are evaluated over
//! `BigRational` and only converted to machine integers once they are known
//! to be integral.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{as_i64, exact_sqrt, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgError {
    #[error("parameters ({v},{k},{lambda},{mu}) violate k(k-lambda-1) = (v-k-1)mu")]
    IdentityViolated {
        v: i64,
        k: i64,
        lambda: i64,
        mu: i64,
    },
    #[error("not primitive: mu = {mu}, k = {k} (need 0 < mu < k)")]
    NotPrimitive { k: i64, mu: i64 },
    #[error("spectrum is not integral (conference-type parameters)")]
    NonIntegralSpectrum,
    #[error("{quantity} = {value} is not an integer")]
    NonIntegral {
        quantity: &'static str,
        value: String,
    },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `(v, k, λ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub const fn new(v: i64, k: i64, lambda: i64, mu: i64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// The counting identity `k(k−λ−1) = (v−k−1)μ`.
    pub fn satisfies_identity(&self) -> bool {
        let lhs = int(self.k) * int(self.k - self.lambda - 1);
        let rhs = int(self.v - self.k - 1) * int(self.mu);
        lhs == rhs
    }

    pub fn is_primitive(&self) -> bool {
        0 < self.mu && self.mu < self.k
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Restricted eigenvalues and multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Spectrum {
    pub e_plus: i64,
    pub e_minus: i64,
    pub m_plus: i64,
    pub m_minus: i64,
}

/// A parameter set for which the ratio bound equals `m⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TightParams {
    pub params: SrgParams,
    pub spectrum: Spectrum,
    pub hoffman: i64,
}

impl TightParams {
    pub fn e_plus(&self) -> i64 {
        self.spectrum.e_plus
    }

    pub fn e_minus(&self) -> i64 {
        self.spectrum.e_minus
    }

    pub fn m_minus(&self) -> i64 {
        self.spectrum.m_minus
    }

    pub fn key(&self) -> (i64, i64) {
        (self.spectrum.e_plus, self.spectrum.e_minus)
    }
}

fn check_srg(params: &SrgParams) -> Result<(), SrgError> {
    let SrgParams { v, k, lambda, mu } = *params;
    if v < 2 || k < 1 || k >= v || lambda < 0 || mu < 0 {
        return Err(SrgError::InvalidArgument(format!(
            "({v},{k},{lambda},{mu}) is out of range"
        )));
    }
    if !params.satisfies_identity() {
        return Err(SrgError::IdentityViolated { v, k, lambda, mu });
    }
    if !params.is_primitive() {
        return Err(SrgError::NotPrimitive { k, mu });
    }
    Ok(())
}

/// Eigenvalues `e⁺ > 0 > e⁻` (roots of `x² − (λ−μ)x − (k−μ)`) and their
/// multiplicities.
pub fn spectrum_of(params: &SrgParams) -> Result<Spectrum, SrgError> {
    check_srg(params)?;
    let SrgParams { v, k, lambda, mu } = *params;
    let b = int(lambda - mu);
    let disc = &b * &b + int(4) * int(k - mu);
    let root = exact_sqrt(&disc).ok_or(SrgError::NonIntegralSpectrum)?;
    // disc ≡ b² (mod 4), so both numerators are even.
    let e_plus: BigInt = (&b + &root) / int(2);
    let e_minus: BigInt = (&b - &root) / int(2);

    let num = (&e_minus + int(1)) * int(k) * (int(k) - &e_minus);
    let den = int(mu) * (&e_minus - &e_plus);
    let m_plus = ratio(num, den);
    let m_plus = as_i64(&m_plus).ok_or(SrgError::NonIntegralSpectrum)?;
    let m_minus = v - 1 - m_plus;
    if m_plus <= 0 || m_minus <= 0 {
        return Err(SrgError::Infeasible(format!(
            "multiplicities m+ = {m_plus}, m- = {m_minus}"
        )));
    }
    Ok(Spectrum {
        e_plus: e_plus.to_i64().expect("eigenvalue fits"),
        e_minus: e_minus.to_i64().expect("eigenvalue fits"),
        m_plus,
        m_minus,
    })
}

/// `v·e⁻ = m⁻(e⁻ − k)`, compared exactly.
pub fn is_tight(params: &SrgParams) -> Result<bool, SrgError> {
    let s = spectrum_of(params)?;
    Ok(tight_with(params, &s))
}

fn tight_with(params: &SrgParams, s: &Spectrum) -> bool {
    int(params.v) * int(s.e_minus) == int(s.m_minus) * int(s.e_minus - params.k)
}

/// Ratio bound `v·e⁻/(e⁻ − k)` on the size of a coclique.
pub fn hoffman_bound(params: &SrgParams) -> Result<Rational, SrgError> {
    let s = spectrum_of(params)?;
    Ok(ratio(
        int(params.v) * int(s.e_minus),
        int(s.e_minus - params.k),
    ))
}

/// Builds a [`TightParams`] from already-known parameters, verifying tightness.
pub fn tight_params(params: &SrgParams) -> Result<TightParams, SrgError> {
    let spectrum = spectrum_of(params)?;
    if !tight_with(params, &spectrum) {
        return Err(SrgError::Infeasible(format!(
            "{params} is not tight: ratio bound differs from m- = {}",
            spectrum.m_minus
        )));
    }
    Ok(TightParams {
        params: *params,
        spectrum,
        hoffman: spectrum.m_minus,
    })
}

fn integral(quantity: &'static str, q: Rational) -> Result<i64, SrgError> {
    as_i64(&q).ok_or_else(|| SrgError::NonIntegral {
        quantity,
        value: crate::arith::fmt_rational(&q),
    })
}

/// The unique tight parameter set with restricted eigenvalues `e_plus`, `e_minus`:
///
/// ```text
/// k  = ((e⁻)² − e⁻e⁺) / (e⁺+1)
/// μ  = (e⁻(e⁺)² + (e⁻)²) / (e⁺+1)
/// m⁻ = ((e⁺)² + e⁻e⁺ + e⁺ − (e⁻)²) / ((e⁺)² + e⁻)
/// v  = (2e⁺ − e⁻ + 1)((e⁺)² + e⁻e⁺ + e⁺ − (e⁻)²) / ((e⁺+1)((e⁺)² + e⁻))
/// λ  = μ + e⁺ + e⁻
/// ```
pub fn params_from_eigenvalues(e_plus: i64, e_minus: i64) -> Result<TightParams, SrgError> {
    if e_plus < 1 || e_minus > -2 {
        return Err(SrgError::InvalidArgument(format!(
            "need e+ >= 1 and e- <= -2, got ({e_plus}, {e_minus})"
        )));
    }
    let (p, m) = (int(e_plus), int(e_minus));
    let k = integral("k", ratio(&m * &m - &m * &p, &p + 1))?;
    let mu = integral("mu", ratio(&m * &p * &p + &m * &m, &p + 1))?;
    if mu <= 0 || mu >= k {
        return Err(SrgError::NotPrimitive { k, mu });
    }
    // mu > 0 forces (e⁺)² + e⁻ < 0, so the denominators below are non-zero.
    let inner = &p * &p + &m * &p + &p - &m * &m;
    let denom = &p * &p + &m;
    debug_assert!(denom.is_negative());
    let m_minus = integral("m-", ratio(inner.clone(), denom.clone()))?;
    let v = integral("v", ratio((int(2) * &p - &m + 1) * inner, (&p + 1) * denom))?;
    let lambda = mu + e_plus + e_minus;
    if lambda < 0 {
        return Err(SrgError::Infeasible(format!("lambda = {lambda} < 0")));
    }
    let m_plus = v - 1 - m_minus;
    if m_minus <= 0 || m_plus <= 0 || k >= v - 1 {
        return Err(SrgError::Infeasible(format!(
            "v = {v}, k = {k}, m- = {m_minus}, m+ = {m_plus}"
        )));
    }
    let params = SrgParams::new(v, k, lambda, mu);
    debug_assert!(params.satisfies_identity());
    Ok(TightParams {
        params,
        spectrum: Spectrum {
            e_plus,
            e_minus,
            m_plus,
            m_minus,
        },
        hoffman: m_minus,
    })
}

/// All tight parameter sets with `v_min ≤ v ≤ v_max` and `e⁺ ≥ e_plus_min`,
/// sorted by `(v, k)`.
///
/// Completeness: writing `x = −e⁻`, the degree is `k = x(x+e⁺)/(e⁺+1)`, so
/// `v > k > x²/(e⁺+1)`. Primitivity needs `μ > 0`, i.e. `x > (e⁺)²`. Hence
/// once `x² ≥ v_max(e⁺+1)` no larger `x` can qualify, and once even
/// `x = (e⁺)²+1` violates that, no larger `e⁺` can either.
pub fn scan_tight_parameters(v_min: i64, v_max: i64, e_plus_min: i64) -> Vec<TightParams> {
    let mut out = Vec::new();
    if v_min > v_max {
        return out;
    }
    let v_cap = int(v_max);
    let mut e_plus = e_plus_min.max(1);
    loop {
        let bound = &v_cap * int(e_plus + 1);
        let x0 = e_plus * e_plus + 1;
        if int(x0) * int(x0) >= bound {
            break;
        }
        let mut x = x0.max(2);
        while int(x) * int(x) < bound {
            if let Ok(t) = params_from_eigenvalues(e_plus, -x) {
                debug_assert!(t.params.v > x * x / (e_plus + 1));
                if (v_min..=v_max).contains(&t.params.v) {
                    out.push(t);
                }
            }
            x += 1;
        }
        e_plus += 1;
    }
    out.sort_by_key(|t| (t.params.v, t.params.k, t.spectrum.e_plus));
    out
}

/// Checks the alternative form `v = (k−e⁺)(k−e⁻)/μ`.
pub fn vertex_count_from_degree(t: &TightParams) -> Rational {
    let p = &t.params;
    let s = &t.spectrum;
    ratio(int(p.k - s.e_plus) * int(p.k - s.e_minus), int(p.mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const M22: SrgParams = SrgParams::new(77, 16, 0, 4);
    const PETERSEN: SrgParams = SrgParams::new(10, 3, 0, 1);
    const HOFFMAN_SINGLETON: SrgParams = SrgParams::new(50, 7, 0, 1);

    #[test]
    fn spectra() {
        assert_eq!(
            spectrum_of(&M22).unwrap(),
            Spectrum {
                e_plus: 2,
                e_minus: -6,
                m_plus: 55,
                m_minus: 21
            }
        );
        assert_eq!(
            spectrum_of(&PETERSEN).unwrap(),
            Spectrum {
                e_plus: 1,
                e_minus: -2,
                m_plus: 5,
                m_minus: 4
            }
        );
        assert_eq!(
            spectrum_of(&SrgParams::new(5, 2, 0, 1)),
            Err(SrgError::NonIntegralSpectrum)
        );
    }

    #[test]
    fn spectrum_rejects_bad_input() {
        assert!(matches!(
            spectrum_of(&SrgParams::new(10, 3, 1, 1)),
            Err(SrgError::IdentityViolated { .. })
        ));
        // complete multipartite K_{3,3}: mu = k
        assert!(matches!(
            spectrum_of(&SrgParams::new(6, 3, 0, 3)),
            Err(SrgError::NotPrimitive { .. })
        ));
        // 2K_3: mu = 0
        assert!(matches!(
            spectrum_of(&SrgParams::new(6, 2, 1, 0)),
            Err(SrgError::NotPrimitive { .. })
        ));
    }

    #[test]
    fn from_eigenvalues() {
        let t = params_from_eigenvalues(3, -13).unwrap();
        assert_eq!(t.params, SrgParams::new(245, 52, 3, 13));
        assert_eq!(t.m_minus(), 49);
        let t = params_from_eigenvalues(2, -6).unwrap();
        assert_eq!(t.params, M22);
        assert_eq!(t.m_minus(), 21);
        assert!(matches!(
            params_from_eigenvalues(2, -4),
            Err(SrgError::NotPrimitive { mu: 0, .. })
        ));
        assert!(matches!(
            params_from_eigenvalues(2, -5),
            Err(SrgError::NonIntegral { quantity: "k", .. })
        ));
        assert!(matches!(
            params_from_eigenvalues(0, -5),
            Err(SrgError::InvalidArgument(_))
        ));
        // λ would be −9
        assert!(matches!(
            params_from_eigenvalues(5, -28),
            Err(SrgError::Infeasible(_))
        ));
    }

    #[test]
    fn tightness() {
        assert!(is_tight(&M22).unwrap());
        assert!(!is_tight(&HOFFMAN_SINGLETON).unwrap());
        assert!(is_tight(&PETERSEN).unwrap());
    }

    #[test]
    fn ratio_bound() {
        assert_eq!(hoffman_bound(&M22).unwrap(), rat(21));
        assert_eq!(hoffman_bound(&PETERSEN).unwrap(), rat(4));
        assert_eq!(hoffman_bound(&HOFFMAN_SINGLETON).unwrap(), rat(15));
    }

    #[test]
    fn small_scan() {
        let rows = scan_tight_parameters(1, 100, 2);
        let got: Vec<_> = rows.iter().map(|t| (t.params, t.key())).collect();
        assert_eq!(
            got,
            vec![
                (SrgParams::new(76, 21, 2, 7), (2, -7)),
                (M22, (2, -6)),
                (SrgParams::new(95, 40, 12, 20), (2, -10)),
            ]
        );
        let rows = scan_tight_parameters(1, 11, 1);
        assert!(rows
            .iter()
            .any(|t| t.params == PETERSEN && t.key() == (1, -2)));
        assert!(scan_tight_parameters(200, 199, 2).is_empty());
    }
}
