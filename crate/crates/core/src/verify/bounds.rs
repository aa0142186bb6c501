//! Integer-level checks: the divisibility check behind the binary
//! difference-set classification, and the size comparisons that rule out
//! non-trivial 0-intersecting cyclic orbits.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// `(m, a, b, c)` with `(m^c - 1) | (m^a - 1)(m^b - 1)` but `c != b`.
pub type DivisibilityViolation = (u64, u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub m_max: u64,
    pub exp_max: u32,
    pub tuples_checked: u64,
    /// Tuples where the divisibility holds (and so the claim applies).
    pub triggered: u64,
    pub violations: Vec<DivisibilityViolation>,
}

/// For `2 <= m <= m_max` and `1 <= a < b <= c <= exp_max`, whenever
/// `m^c - 1` divides `(m^a - 1)(m^b - 1)`, checks that `c = b`.
///
/// Fails with `BudgetExceeded` if `m_max^exp_max` does not fit in 64 bits.
pub fn scan_divisibility(m_max: u64, exp_max: u32) -> Result<DivisibilityReport> {
    let top = arith::checked_pow(m_max.max(2), exp_max).unwrap_or(u128::MAX);
    if top > u64::MAX as u128 {
        return Err(Error::BudgetExceeded {
            estimated: top,
            ceiling: u64::MAX as u128,
        });
    }
    let mut report = DivisibilityReport {
        m_max,
        exp_max,
        tuples_checked: 0,
        triggered: 0,
        violations: Vec::new(),
    };
    for m in 2..=m_max {
        let pm1 = |e: u32| arith::pow128(m, e) - 1;
        for c in 1..=exp_max {
            let modulus = pm1(c);
            for b in 1..=c {
                for a in 1..b {
                    report.tuples_checked += 1;
                    // Residues are below 2^64, so the product fits.
                    if (pm1(a) % modulus) * (pm1(b) % modulus) % modulus == 0 {
                        report.triggered += 1;
                        if c != b {
                            report.violations.push((m, a, b, c));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `numerator / denominator`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: u128,
    pub denominator: u128,
}

impl Ratio {
    fn new(numerator: u128, denominator: u128) -> Ratio {
        Ratio {
            numerator,
            denominator,
        }
    }

    fn gt(&self, other: &Ratio) -> bool {
        self.numerator * other.denominator > other.numerator * self.denominator
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub larger: Ratio,
    pub smaller: Ratio,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadComparison {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub t: u32,
    /// `n mod k`.
    pub r: u32,
    /// `(q^n - 1)/(q - 1)`, the full-length orbit size.
    pub full_length_orbit: Ratio,
    /// `(q^n - 1)/(q^k - 1)`, the spread size.
    pub spread: Ratio,
    /// `(q^n - q^r)/(q^k - 1)`.
    pub partial_spread: Ratio,
    /// `(q^n - 1)/(q^t - 1)`, the orbit size under stabilizer `F_{q^t}^*`.
    pub degenerate_orbit: Ratio,
    pub comparisons: Vec<Comparison>,
}

impl SpreadComparison {
    pub fn all_hold(&self) -> bool {
        self.comparisons.iter().all(|c| c.holds)
    }
}

/// Orbit sizes of non-trivial `k`-dimensional subspaces compared with the
/// largest possible family of pairwise trivially intersecting
/// `k`-subspaces: each orbit must be strictly larger, so such an orbit can
/// never be 0-intersecting.
pub fn spread_comparison(q: u64, n: u32, k: u32, t: u32) -> Result<SpreadComparison> {
    if !(1 <= t && t < k && k < n) {
        return Err(Error::ParameterOrderViolation);
    }
    if !n.is_multiple_of(t) {
        return Err(Error::NonDivisorDegree {
            t: t as u64,
            n: n as u64,
        });
    }
    if q < 2 || arith::checked_pow(q, n).is_none_or(|v| v > 1 << 60) {
        return Err(Error::BudgetExceeded {
            estimated: arith::checked_pow(q, n).unwrap_or(u128::MAX),
            ceiling: 1 << 60,
        });
    }
    let qp = |e: u32| arith::pow128(q, e);
    let r = n % k;
    let full_length_orbit = Ratio::new(qp(n) - 1, qp(1) - 1);
    let spread = Ratio::new(qp(n) - 1, qp(k) - 1);
    let partial_spread = Ratio::new(qp(n) - qp(r), qp(k) - 1);
    let degenerate_orbit = Ratio::new(qp(n) - 1, qp(t) - 1);
    let cmp = |name: &str, larger: Ratio, smaller: Ratio| Comparison {
        name: name.to_string(),
        holds: larger.gt(&smaller),
        larger,
        smaller,
    };
    let comparisons = vec![
        cmp("full_length_vs_spread", full_length_orbit, spread),
        cmp(
            "full_length_vs_partial_spread",
            full_length_orbit,
            partial_spread,
        ),
        cmp("degenerate_vs_spread", degenerate_orbit, spread),
        cmp(
            "degenerate_vs_partial_spread",
            degenerate_orbit,
            partial_spread,
        ),
    ];
    Ok(SpreadComparison {
        q,
        n,
        k,
        t,
        r,
        full_length_orbit,
        spread,
        partial_spread,
        degenerate_orbit,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_small_scan() {
        let r = scan_divisibility(5, 12).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.triggered > 0);
        // c = b always divides.
        assert!(scan_divisibility(2, 3).unwrap().triggered >= 3);
    }

    #[test]
    fn divisibility_refuses_overflow() {
        assert!(matches!(
            scan_divisibility(1 << 20, 8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn spread_comparison_cases() {
        let a = spread_comparison(2, 6, 3, 1).unwrap();
        assert_eq!(a.full_length_orbit.value(), 63.0);
        assert_eq!(a.spread.value(), 9.0);
        assert!(a.all_hold());

        let b = spread_comparison(2, 7, 3, 1).unwrap();
        assert_eq!(b.r, 1);
        assert_eq!(b.full_length_orbit.value(), 127.0);
        assert_eq!(b.partial_spread.value(), 18.0);
        assert!(b.all_hold());

        let c = spread_comparison(3, 6, 4, 2).unwrap();
        assert_eq!(c.degenerate_orbit.value(), 91.0);
        assert!(c.all_hold());
    }

    #[test]
    fn spread_comparison_rejects_bad_parameters() {
        assert_eq!(
            spread_comparison(2, 6, 3, 3),
            Err(Error::ParameterOrderViolation)
        );
        assert_eq!(
            spread_comparison(2, 6, 6, 1),
            Err(Error::ParameterOrderViolation)
        );
        assert!(matches!(
            spread_comparison(2, 7, 5, 2),
            Err(Error::NonDivisorDegree { .. })
        ));
    }
}
