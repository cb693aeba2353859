//! The theta function of a closed oriented 3-manifold with b1 > 0,
//! recovered from the symmetrized Alexander polynomial, together with
//! the associated torsion functions and the consistency checks relating
//! them.
//!
//! With b1 = 1 and symmetric coefficients a_k normalized by
//! A(1) = |Tors|, the theta function is
//!
//! ```text
//! theta(i) = sum_{j >= 1} j * a_{|i|+j}
//! ```
//!
//! and with b1 > 1 it is the Alexander polynomial itself, up to sign.
//! The two torsion functions split theta into halves supported toward
//! -infinity and +infinity; on any window they are recovered by
//! `T_t(s) = theta(s) + min(0, s)` and `T_{t^-1}(s) = theta(s) - max(0, s)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::torsion::{laurent_exact_div, AlexanderResult, LaurentPoly};

/// Finitely supported theta function. Rank 1 is an integer function on Z,
/// symmetric under negation; higher rank carries the polynomial itself
/// with an ambiguous overall sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaFunction {
    RankOne {
        /// Nonzero values only; symmetric: value at i equals value at -i.
        values: BTreeMap<i64, BigInt>,
    },
    HigherRank {
        poly: LaurentPoly,
        sign_ambiguous: bool,
    },
}

impl ThetaFunction {
    pub fn rank(&self) -> usize {
        match self {
            ThetaFunction::RankOne { .. } => 1,
            ThetaFunction::HigherRank { poly, .. } => poly.rank(),
        }
    }

    /// Value at a point (rank 1 only).
    pub fn value(&self, i: i64) -> BigInt {
        match self {
            ThetaFunction::RankOne { values } => {
                values.get(&i).cloned().unwrap_or_else(BigInt::zero)
            }
            ThetaFunction::HigherRank { .. } => panic!("pointwise values require rank 1"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ThetaFunction::RankOne { values } => values.is_empty(),
            ThetaFunction::HigherRank { poly, .. } => poly.is_zero(),
        }
    }

    /// Rank-1 theta as a Laurent polynomial (it is finitely supported).
    pub fn to_laurent(&self) -> LaurentPoly {
        match self {
            ThetaFunction::RankOne { values } => LaurentPoly::from_univariate(
                values.iter().map(|(k, v)| (*k, v.clone())).collect(),
            ),
            ThetaFunction::HigherRank { poly, .. } => poly.clone(),
        }
    }
}

impl fmt::Display for ThetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaFunction::RankOne { values } => {
                if values.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> =
                    values.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            ThetaFunction::HigherRank { poly, sign_ambiguous } => {
                if *sign_ambiguous {
                    write!(f, "+-({})", poly.as_group_ring())
                } else {
                    write!(f, "{}", poly.as_group_ring())
                }
            }
        }
    }
}

/// Values of the torsion functions on the window [-n, n]. The two
/// one-sided functions have infinite support with linear tails; only
/// windows are ever materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionWindow {
    pub n: i64,
    pub t_t: BTreeMap<i64, BigInt>,
    pub t_tinv: BTreeMap<i64, BigInt>,
    pub t_prime: BTreeMap<i64, BigInt>,
}

/// Derive theta from a normalized Alexander result.
///
/// Requires a translation-pinned input; with b1 = 1 the augmentation
/// normalization must already have been enforced (both are produced by
/// [`crate::torsion::alexander`]).
pub fn theta_from_alexander(a: &AlexanderResult, b1: usize) -> Result<ThetaFunction> {
    if !a.translation_pinned {
        return Err(Error::Unpinned(
            "theta requires a symmetric Alexander representative".into(),
        ));
    }
    if b1 == 1 {
        let coeffs = a.polynomial.univariate_coefficients();
        let deg = a.polynomial.degree();
        let mut values = BTreeMap::new();
        for i in -(deg - 1).max(0)..=(deg - 1).max(0) {
            // theta(i) = sum_{j>=1} j * a_{|i|+j}
            let mut acc = BigInt::zero();
            for j in 1..=(deg - i.abs()) {
                if let Some(c) = coeffs.get(&(i.abs() + j)) {
                    acc += BigInt::from(j) * c;
                }
            }
            if !acc.is_zero() {
                values.insert(i, acc);
            }
        }
        Ok(ThetaFunction::RankOne { values })
    } else {
        Ok(ThetaFunction::HigherRank {
            poly: a.polynomial.clone(),
            sign_ambiguous: a.sign_ambiguous,
        })
    }
}

/// Torsion-function window for a rank-1 theta.
///
/// `T'` equals theta on the nose (any two-torsion translation dies in
/// the torsion-free quotient), and the one-sided functions are
/// `T_t = T' + min(0, s)`, `T_{t^-1} = T' - max(0, s)`.
pub fn turaev_functions(theta: &ThetaFunction, n: i64) -> Result<TorsionWindow> {
    let ThetaFunction::RankOne { .. } = theta else {
        return Err(Error::WrongRank { expected: 1, actual: theta.rank() });
    };
    assert!(n >= 0);
    let mut t_t = BTreeMap::new();
    let mut t_tinv = BTreeMap::new();
    let mut t_prime = BTreeMap::new();
    for s in -n..=n {
        let base = theta.value(s);
        t_t.insert(s, &base + BigInt::from(s.min(0)));
        t_tinv.insert(s, &base - BigInt::from(s.max(0)));
        t_prime.insert(s, base);
    }
    Ok(TorsionWindow { n, t_t, t_tinv, t_prime })
}

impl TorsionWindow {
    /// Both defining relations, pointwise on the window:
    /// `T_{t^-1}(s) = T_t(s) - s` and `T'(s) = (T_t(s)+T_{t^-1}(s)+|s|)/2`.
    pub fn relations_hold(&self) -> bool {
        for s in -self.n..=self.n {
            let tt = &self.t_t[&s];
            let ti = &self.t_tinv[&s];
            let tp = &self.t_prime[&s];
            if *ti != tt - BigInt::from(s) {
                return false;
            }
            let twice = tt + ti + BigInt::from(s.abs());
            if (&twice % BigInt::from(2)) != BigInt::zero() || twice / BigInt::from(2) != *tp {
                return false;
            }
        }
        true
    }
}

/// Outcome of a consistency check, with enough context to debug a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    fn pass(name: &'static str) -> Self {
        CheckReport { name, pass: true, detail: String::new() }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckReport { name, pass: false, detail }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "{}: pass", self.name)
        } else {
            write!(f, "{}: FAIL ({})", self.name, self.detail)
        }
    }
}

/// Check the exact polynomial identity
/// `(1 - T)(1 - T^-1) * theta = |Tors| * T^0 - A`
/// relating a rank-1 theta to its normalized Alexander polynomial.
pub fn wall_identity_check(theta: &ThetaFunction, a: &AlexanderResult) -> CheckReport {
    const NAME: &str = "wall_identity";
    if theta.rank() != 1 {
        return CheckReport::fail(NAME, "requires b1 = 1".into());
    }
    if !a.translation_pinned {
        return CheckReport::fail(NAME, "requires a pinned Alexander representative".into());
    }
    let one_minus_t = LaurentPoly::from_univariate(
        [(0, BigInt::from(1)), (1, BigInt::from(-1))].into_iter().collect(),
    );
    let one_minus_tinv = LaurentPoly::from_univariate(
        [(0, BigInt::from(1)), (-1, BigInt::from(-1))].into_iter().collect(),
    );
    let lhs = one_minus_t.mul(&one_minus_tinv).mul(&theta.to_laurent());
    let tors_const = LaurentPoly::from_univariate(
        [(0, a.tors_order.clone())].into_iter().collect(),
    );
    let rhs = tors_const.sub(&a.polynomial);
    if lhs == rhs {
        CheckReport::pass(NAME)
    } else {
        CheckReport::fail(
            NAME,
            format!("lhs = {}, rhs = {}", lhs.as_group_ring(), rhs.as_group_ring()),
        )
    }
}

/// Check that every projected minor is exactly divisible by the Alexander
/// gcd (and hence, for b1 > 1, by theta up to sign). Reports the first
/// offending position on failure.
pub fn divisibility_check(minors: &[Vec<LaurentPoly>], divisor: &LaurentPoly) -> CheckReport {
    const NAME: &str = "divisibility";
    for (i, row) in minors.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if laurent_exact_div(entry, divisor).is_none() {
                return CheckReport::fail(
                    NAME,
                    format!(
                        "minor ({}, {}) = {} is not divisible by {}",
                        i + 1,
                        j + 1,
                        entry.as_group_ring(),
                        divisor.as_group_ring()
                    ),
                );
            }
        }
    }
    CheckReport::pass(NAME)
}
