//! Subordination made executable: extract the Schwarz coefficients that a
//! candidate `f` and its inverse require, and certify the truncated
//! necessary conditions for membership in `S^lambda_{Sigma_m}(phi)`.

use alloc::vec::Vec;

use crate::bounds::ClassParams;
use crate::error::SeriesError;
use crate::phi::PhiSpec;
use crate::scalar::{Complex64, Scalar};
use crate::series::{FloatSeries, TruncatedSeries};

/// Slack allowed on disc constraints and matching residuals in float mode.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Leading Schwarz data `(b_m, b_2m)` of `u` and `(c_m, c_2m)` of `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchwarzPoint {
    pub b_m: Complex64,
    pub b_2m: Complex64,
    pub c_m: Complex64,
    pub c_2m: Complex64,
}

impl SchwarzPoint {
    pub const ORIGIN: SchwarzPoint = SchwarzPoint {
        b_m: Complex64::new(0.0, 0.0),
        b_2m: Complex64::new(0.0, 0.0),
        c_m: Complex64::new(0.0, 0.0),
        c_2m: Complex64::new(0.0, 0.0),
    };

    /// `|b_m| <= 1`, `|b_2m| <= 1 - |b_m|^2` and likewise for `c`, with slack `tol`.
    pub fn satisfies_discs(&self, tol: f64) -> bool {
        disc_ok(self.b_m, self.b_2m, tol) && disc_ok(self.c_m, self.c_2m, tol)
    }

    pub fn is_coupled(&self, tol: f64) -> bool {
        (self.c_m + self.b_m).norm() <= tol
    }
}

fn disc_ok(first: Complex64, second: Complex64, tol: f64) -> bool {
    let r = first.norm_sqr();
    r <= 1.0 + tol && second.norm() <= 1.0 - r + tol
}

/// `z f'(z) / ((1-lambda) f(z) + lambda z f'(z))` for normalized `f`.
///
/// The common factor `z` is divided out first, so the denominator starts
/// with 1. The result is known one order below `f`.
pub fn class_functional<S: Scalar>(
    f: &TruncatedSeries<S>,
    lambda: &S,
) -> Result<TruncatedSeries<S>, SeriesError> {
    if !f.is_normalized() {
        return Err(SeriesError::NotNormalized);
    }
    let df = f.derivative();
    let quotient = f.shift_down()?;
    let den = quotient
        .scale(&(S::one() - lambda.clone()))
        .add(&df.scale(lambda));
    df.div(&den)
}

/// The `u` (with `u(0) = 0`) satisfying `phi(u(z)) = target(z)` through
/// `order`. Coefficient `n` of `phi(u)` is `B1 u_n` plus terms in
/// `u_1..u_{n-1}`, so the system is triangular.
pub fn solve_schwarz<S: Scalar>(
    target: &TruncatedSeries<S>,
    phi: &TruncatedSeries<S>,
    order: usize,
) -> Result<TruncatedSeries<S>, SeriesError> {
    let order = order.min(target.order()).min(phi.order());
    let unit = target.coeffs()[0].clone() - S::one();
    if !unit.is_negligible() {
        return Err(SeriesError::ConstantTerm { expected: "1" });
    }
    let b1 = phi.coeffs().get(1).cloned().unwrap_or_else(S::zero);
    if b1.is_negligible() {
        return Err(SeriesError::ConstantTerm { expected: "B1 != 0" });
    }
    let phi = phi.truncate(order);
    let mut u = TruncatedSeries::<S>::zero(order);
    let mut coeffs = u.coeffs().to_vec();
    for n in 1..=order {
        let partial = phi.truncate(n).compose(&u.truncate(n))?;
        let gap = target.coeffs()[n].clone() - partial.coeffs()[n].clone();
        coeffs[n] = gap / b1.clone();
        u = TruncatedSeries::new(coeffs.clone())?;
    }
    Ok(u)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    /// Schwarz coefficients for `f`.
    pub u_coeffs: Vec<Complex64>,
    /// Schwarz coefficients for `g = f^{-1}`.
    pub v_coeffs: Vec<Complex64>,
    pub point: SchwarzPoint,
    pub feasible: bool,
    /// `|[z^n](phi(u) - F)|` and `|[w^n](phi(v) - G)|` for `n = 0..=order`.
    pub residuals: Vec<f64>,
    /// Disc constraints are checked through `z^(2m)`.
    pub order: usize,
    /// Every failed check, in plain words.
    pub failures: Vec<&'static str>,
}

/// Certificate that `f` meets the truncated subordination conditions on
/// both the function side and the inverse side.
///
/// The inverse side uses `w g'(w) / ((1-lambda) g(w) + lambda w g'(w))`.
pub fn check_membership(
    f: &FloatSeries,
    phi: &PhiSpec,
    p: &ClassParams,
    order: usize,
) -> Result<MembershipCertificate, SeriesError> {
    let m = p.m;
    if !f.is_mfold_symmetric(m) {
        return Err(SeriesError::NotSymmetric { m });
    }
    if !f.is_normalized() {
        return Err(SeriesError::NotNormalized);
    }
    let lambda = Complex64::new(p.lambda, 0.0);
    let needed = order.max(2 * m);
    // f is treated as a polynomial: coefficients past its order are zero.
    let f = TruncatedSeries::polynomial(f.coeffs().to_vec(), needed + 1);
    let g = f.revert()?;
    let big_f = class_functional(&f, &lambda)?;
    let big_g = class_functional(&g, &lambda)?;
    let phi_series: FloatSeries = phi.series(needed);
    let u = solve_schwarz(&big_f, &phi_series, needed)?;
    let v = solve_schwarz(&big_g, &phi_series, needed)?;

    let mut residuals: Vec<f64> = Vec::with_capacity(2 * (needed + 1));
    for (w, target) in [(&u, &big_f), (&v, &big_g)] {
        let back = phi_series.compose(w)?;
        residuals.extend(back.coeffs().iter().zip(target.coeffs()).map(|(a, b)| (a - b).norm()));
    }

    let point = SchwarzPoint {
        b_m: u.coeffs()[m],
        b_2m: u.coeffs()[2 * m],
        c_m: v.coeffs()[m],
        c_2m: v.coeffs()[2 * m],
    };
    let mut failures = Vec::new();
    if !disc_ok(point.b_m, point.b_2m, RESIDUAL_TOLERANCE) {
        failures.push("u violates |b_m| <= 1, |b_2m| <= 1 - |b_m|^2");
    }
    if !disc_ok(point.c_m, point.c_2m, RESIDUAL_TOLERANCE) {
        failures.push("v violates |c_m| <= 1, |c_2m| <= 1 - |c_m|^2");
    }
    if residuals.iter().any(|r| *r > RESIDUAL_TOLERANCE) {
        failures.push("matching residual above tolerance");
    }
    Ok(MembershipCertificate {
        u_coeffs: u.into_coeffs(),
        v_coeffs: v.into_coeffs(),
        point,
        feasible: failures.is_empty(),
        residuals,
        order: 2 * m,
        failures,
    })
}

/// Which coupling of `s = b_2m + c_2m` to `b_m` a point is held to.
///
/// Adding the two `z^{2m}` matching equations and substituting
/// `a_{m+1} = B1 b_m / (m(1-lambda))` gives
/// `2 m^2 (1-lambda)^2 (B1^2 - B2) a_{m+1}^2 = B1^3 s` ([`Pinning::Derived`]).
/// The bounds are proved from the same relation with `B1^2 - 2 B2` in place
/// of `B1^2 - B2` ([`Pinning::Printed`]); the two agree only when `B2 = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Pinning {
    #[default]
    Printed,
    Derived,
}

impl Pinning {
    pub fn as_str(self) -> &'static str {
        match self {
            Pinning::Printed => "printed",
            Pinning::Derived => "derived",
        }
    }

    /// `B1^2 - 2 B2` or `B1^2 - B2`.
    pub fn weight(self, phi: &PhiSpec) -> f64 {
        match self {
            Pinning::Printed => phi.discriminant(),
            Pinning::Derived => phi.b1() * phi.b1() - phi.b2(),
        }
    }
}

impl core::str::FromStr for Pinning {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "printed" => Ok(Pinning::Printed),
            "derived" => Ok(Pinning::Derived),
            _ => Err(()),
        }
    }
}

/// Coefficients implied by a coupled Schwarz point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointCoefficients {
    pub a_m1: Complex64,
    pub a_2m1: Complex64,
    /// `|2 m^2 (1-lambda)^2 W a_{m+1}^2 - B1^3 (b_2m + c_2m)|` with `W` the
    /// pinning weight.
    pub residual: f64,
}

/// `a_{m+1} = B1 b_m / (m (1-lambda))` and
/// `a_{2m+1} = (m+1)/2 a_{m+1}^2 + B1 (b_2m - c_2m) / (4 m (1-lambda))`,
/// residual against the printed pinning.
pub fn coefficients_from_point(s: &SchwarzPoint, phi: &PhiSpec, p: &ClassParams) -> PointCoefficients {
    coefficients_from_point_pinned(s, phi, p, Pinning::Printed)
}

pub fn coefficients_from_point_pinned(
    s: &SchwarzPoint,
    phi: &PhiSpec,
    p: &ClassParams,
    pinning: Pinning,
) -> PointCoefficients {
    let b1 = phi.b1();
    let scale = p.scale();
    let a_m1 = s.b_m * (b1 / scale);
    let sq = a_m1 * a_m1;
    let a_2m1 = sq * ((p.m as f64 + 1.0) / 2.0) + (s.b_2m - s.c_2m) * (b1 / (4.0 * scale));
    let residual = (sq * (2.0 * scale * scale * pinning.weight(phi))
        - (s.b_2m + s.c_2m) * (b1 * b1 * b1))
        .norm();
    PointCoefficients { a_m1, a_2m1, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, ExactComplex};
    use crate::series::ExactSeries;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn class_functional_examples() {
        let z = ExactSeries::identity(4);
        let one = ExactSeries::one(3);
        assert_eq!(class_functional(&z, &exact(1, 3)).unwrap(), one);

        // f = z + a2 z^2 + 0 z^3, lambda = 0: 1 + a2 z - a2^2 z^2.
        let a2 = exact(2, 5);
        let f = ExactSeries::normalized(alloc::vec![a2.clone(), exact(0, 1)]);
        let got = class_functional(&f, &exact(0, 1)).unwrap();
        assert_eq!(got.coeffs(), &[exact(1, 1), a2.clone(), -(a2.clone() * a2)]);
    }

    #[test]
    fn class_functional_leading_coefficient() {
        for m in 1..=4usize {
            let a = exact(3, 7);
            let f = ExactSeries::mfold_normalized(m, &[a.clone(), exact(-1, 2)]).unwrap();
            let lambda = exact(1, 4);
            let big_f = class_functional(&f, &lambda).unwrap();
            let expected = ExactComplex::from_int(m as i64) * (exact(1, 1) - lambda) * a;
            assert_eq!(big_f.coeffs()[m], expected);
        }
    }

    #[test]
    fn solve_schwarz_examples() {
        let phi = PhiSpec::mobius_beta_ratio(1, 4).unwrap();
        let phi_s: ExactSeries = phi.series(6);
        let u = solve_schwarz(&phi_s, &phi_s, 6).unwrap();
        assert_eq!(u, ExactSeries::identity(6));
        let u = solve_schwarz(&ExactSeries::one(6), &phi_s, 6).unwrap();
        assert_eq!(u, ExactSeries::zero(6));

        // z^m coefficient m(1-lambda)a gives b_m = m(1-lambda)a/B1.
        let m = 2;
        let a = exact(1, 3);
        let lambda = exact(1, 2);
        let f = ExactSeries::mfold_normalized(m, &[a.clone(), exact(0, 1)]).unwrap();
        let big_f = class_functional(&f, &lambda).unwrap();
        let u = solve_schwarz(&big_f, &phi_s, 4).unwrap();
        let b1 = exact(3, 2);
        assert_eq!(u.coeffs()[m], exact(2, 1) * (exact(1, 1) - lambda) * a / b1);
    }

    #[test]
    fn identity_is_always_a_member() {
        let phi = PhiSpec::power_alpha(0.4).unwrap();
        for m in 1..4 {
            let p = ClassParams::new(m, 0.3).unwrap();
            let cert = check_membership(&FloatSeries::identity(3 * m + 1), &phi, &p, 2 * m).unwrap();
            assert!(cert.feasible);
            assert!(cert.u_coeffs.iter().chain(&cert.v_coeffs).all(|x| x.norm() < 1e-15));
        }
    }

    #[test]
    fn small_perturbation_is_feasible() {
        let phi = PhiSpec::mobius_beta(0.0).unwrap();
        let p = ClassParams::new(2, 0.0).unwrap();
        let f = FloatSeries::mfold_normalized(2, &[c(0.1)]).unwrap();
        let cert = check_membership(&f, &phi, &p, 4).unwrap();
        assert!(cert.feasible, "{:?}", cert.failures);
        assert!((cert.point.b_m - c(0.1)).norm() < 1e-14);
        assert!(cert.point.is_coupled(1e-12));
    }

    #[test]
    fn rejects_non_symmetric_input() {
        let phi = PhiSpec::mobius_beta(0.0).unwrap();
        let p = ClassParams::new(2, 0.0).unwrap();
        let f = FloatSeries::from_reals(&[0.0, 1.0, 0.2]).unwrap();
        assert_eq!(
            check_membership(&f, &phi, &p, 4),
            Err(SeriesError::NotSymmetric { m: 2 })
        );
    }

    #[test]
    fn coefficients_from_point_examples() {
        let phi = PhiSpec::mobius_beta(0.0).unwrap();
        let p = ClassParams::new(1, 0.0).unwrap();
        let got = coefficients_from_point(&SchwarzPoint::ORIGIN, &phi, &p);
        assert_eq!((got.a_m1, got.a_2m1, got.residual), (c(0.0), c(0.0), 0.0));

        let s = SchwarzPoint { b_m: c(1.0), b_2m: c(0.0), c_m: c(-1.0), c_2m: c(0.0) };
        let got = coefficients_from_point(&s, &phi, &p);
        assert_eq!((got.a_m1, got.a_2m1, got.residual), (c(2.0), c(4.0), 0.0));

        let phi = PhiSpec::mobius_beta(0.5).unwrap();
        let s = SchwarzPoint { b_m: c(0.0), b_2m: c(1.0), c_m: c(0.0), c_2m: c(-1.0) };
        let got = coefficients_from_point(&s, &phi, &p);
        assert_eq!((got.a_m1, got.a_2m1, got.residual), (c(0.0), c(0.5), 0.0));
    }
}
