//! Exact recovery of `T_{s,n}(d)` as a polynomial in `d`.
//!
//! For `d >= 2s - 1` the virtual count has the form `d·p(d)` with
//! `deg p <= s - 1`, so `s` samples determine it: interpolate `T(d)/d`
//! through the samples and multiply back by `d`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gathmann::Engine;
use crate::qrationals::{Rational, RationalPolynomial};
use crate::sweep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub d: u32,
    pub value: Rational,
}

impl SamplePoint {
    pub fn new(d: u32, value: Rational) -> Self {
        Self { d, value }
    }
}

/// Smallest admissible sample for ambient dimension `s`.
pub fn min_sample_degree(s: u32) -> u32 {
    (2 * s).saturating_sub(1).max(1)
}

/// Lagrange interpolation through points with distinct abscissae.
pub fn lagrange(points: &[(Rational, Rational)]) -> Result<RationalPolynomial> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(x.clone()) {
            return Err(Error::InvalidArgument(format!("repeated abscissa {x}")));
        }
    }
    let mut result = RationalPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RationalPolynomial::constant(Rational::one());
        let mut denominator = Rational::one();
        for (xj, _) in points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p) {
            basis = &basis * &RationalPolynomial::new(vec![-xj.clone(), Rational::one()]);
            denominator *= xi - xj;
        }
        result = &result + &basis.scale(&(yi / denominator));
    }
    Ok(result)
}

/// The unique `d·p(d)`, `deg p <= s - 1`, through exactly `s` samples.
pub fn fit_t_polynomial(s: u32, samples: &[SamplePoint]) -> Result<RationalPolynomial> {
    if samples.len() != s as usize {
        return Err(Error::SampleCount { expected: s as usize, got: samples.len() });
    }
    let bound = min_sample_degree(s);
    let mut seen = HashSet::new();
    for sample in samples {
        if sample.d < bound {
            return Err(Error::SampleBelowBound { d: sample.d, bound });
        }
        if !seen.insert(sample.d) {
            return Err(Error::DuplicateSample(sample.d));
        }
    }
    let divided: Vec<(Rational, Rational)> = samples
        .iter()
        .map(|p| {
            let d = Rational::from_integer(BigInt::from(p.d));
            let y = &p.value / &d;
            (d, y)
        })
        .collect();
    let p = lagrange(&divided)?;
    Ok(&p * &RationalPolynomial::variable())
}

/// Fits `T_{s,n}` from engine values at `sample_ds`, then checks the fit
/// against fresh engine values at every `check_ds` entry.
pub fn fit_and_verify(
    engine: &Engine,
    s: u32,
    n: u32,
    sample_ds: &[u32],
    check_ds: &[u32],
) -> Result<RationalPolynomial> {
    if let Some(d) = sample_ds.iter().find(|d| check_ds.contains(d)) {
        return Err(Error::InvalidArgument(format!("d = {d} is both a sample and a check point")));
    }
    let bound = min_sample_degree(s);
    if let Some(&d) = check_ds.iter().find(|&&d| d < bound) {
        return Err(Error::SampleBelowBound { d, bound });
    }
    let all: Vec<u32> = sample_ds.iter().chain(check_ds).copied().collect();
    let values = sweep::evaluate(&all, |d| engine.virtual_count(s, n, d))?;
    let samples: Vec<SamplePoint> = sample_ds
        .iter()
        .zip(&values)
        .map(|(&d, v)| SamplePoint::new(d, v.clone()))
        .collect();
    let fitted = fit_t_polynomial(s, &samples)?;
    for (&d, expected) in check_ds.iter().zip(&values[sample_ds.len()..]) {
        let actual = fitted.eval(&Rational::from_integer(BigInt::from(d)));
        if actual != *expected {
            return Err(Error::VerificationFailed { d, expected: Box::new(expected.clone()), actual: Box::new(actual) });
        }
    }
    Ok(fitted)
}

/// True if `d^power` divides `p`.
pub fn divisible_by_power_of_d(p: &RationalPolynomial, power: usize) -> bool {
    p.coefficients().iter().take(power).all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrationals::{int, ratio};
    use proptest::prelude::*;

    fn poly(cs: Vec<Rational>) -> RationalPolynomial {
        RationalPolynomial::new(cs)
    }

    #[test]
    fn known_fits() {
        let t22 = fit_t_polynomial(2, &[SamplePoint::new(3, ratio(135, 4)), SamplePoint::new(4, int(102))]).unwrap();
        assert_eq!(t22, poly(vec![int(0), ratio(-63, 2), ratio(57, 4)]));
        let t23 = fit_t_polynomial(2, &[SamplePoint::new(3, int(244)), SamplePoint::new(4, ratio(2384, 3))]).unwrap();
        assert_eq!(t23, poly(vec![int(0), ratio(-812, 3), ratio(352, 3)]));
        let t21 = fit_t_polynomial(2, &[SamplePoint::new(3, int(9)), SamplePoint::new(4, int(24))]).unwrap();
        assert_eq!(t21, RationalPolynomial::from_integers(&[0, -6, 3]));
    }

    #[test]
    fn fit_rejects_bad_samples() {
        let one = SamplePoint::new(3, int(9));
        assert!(matches!(fit_t_polynomial(2, std::slice::from_ref(&one)), Err(Error::SampleCount { .. })));
        assert!(matches!(
            fit_t_polynomial(2, &[one.clone(), one.clone(), one.clone()]),
            Err(Error::SampleCount { .. })
        ));
        assert!(matches!(fit_t_polynomial(2, &[one.clone(), one.clone()]), Err(Error::DuplicateSample(3))));
        assert!(matches!(
            fit_t_polynomial(2, &[SamplePoint::new(2, int(0)), one]),
            Err(Error::SampleBelowBound { d: 2, bound: 3 })
        ));
    }

    #[test]
    fn fit_and_verify_workflow() {
        let e = Engine::new();
        let t22 = fit_and_verify(&e, 2, 2, &[3, 4], &[5, 6]).unwrap();
        assert_eq!(t22, poly(vec![int(0), ratio(-63, 2), ratio(57, 4)]));
        let t21 = fit_and_verify(&e, 2, 1, &[3, 4], &[5, 6, 7, 8]).unwrap();
        assert_eq!(t21, RationalPolynomial::from_integers(&[0, -6, 3]));
        assert!(fit_and_verify(&e, 2, 2, &[3, 4], &[4]).is_err());
        assert!(matches!(fit_and_verify(&e, 2, 2, &[3, 4], &[2]), Err(Error::SampleBelowBound { .. })));
    }

    #[test]
    fn lagrange_rejects_repeats() {
        assert!(lagrange(&[(int(1), int(2)), (int(1), int(3))]).is_err());
        assert_eq!(lagrange(&[]).unwrap(), RationalPolynomial::zero());
    }

    fn coefficient() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn fit_round_trip(
            s in 1u32..=4,
            raw in proptest::collection::vec(coefficient(), 4),
            offset in 0u32..10,
        ) {
            let mut cs = vec![int(0)];
            cs.extend(raw.into_iter().take(s as usize));
            let q = RationalPolynomial::new(cs);
            let start = min_sample_degree(s) + offset;
            let samples: Vec<SamplePoint> = (start..start + s)
                .map(|d| SamplePoint::new(d, q.eval(&int(d as i64))))
                .collect();
            prop_assert_eq!(fit_t_polynomial(s, &samples).unwrap(), q);
        }
    }
}
