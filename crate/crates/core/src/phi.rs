//! Ma-Minda majorants `phi(z) = 1 + B1 z + B2 z^2 + ...` with real `B_k`
//! and `B1 > 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::ParamError;
use crate::scalar::{Complex64, Scalar};
use crate::series::TruncatedSeries;

/// Number of coefficients `B1..B_K` carried by the named families.
pub const CARRIED_COEFFS: usize = 8;

/// A real family parameter, kept as a rational when one was supplied so
/// the exact backend can use it without rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Float(f64),
    Ratio(i64, i64),
}

impl Param {
    pub fn value(self) -> f64 {
        match self {
            Param::Float(x) => x,
            Param::Ratio(p, q) => p as f64 / q as f64,
        }
    }

    fn to_scalar<S: Scalar>(self) -> S {
        match self {
            Param::Float(x) => S::from_f64(x).unwrap_or_else(S::zero),
            Param::Ratio(p, q) => S::from_ratio(p, q),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhiFamily {
    /// `((1+z)/(1-z))^alpha`, `0 < alpha <= 1`.
    PowerAlpha(Param),
    /// `(1+(1-2 beta)z)/(1-z)`, `0 <= beta < 1`.
    MobiusBeta(Param),
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiSpec {
    family: PhiFamily,
    b: Vec<f64>,
    reflected: bool,
    label: String,
}

impl PhiSpec {
    pub fn power_alpha(alpha: f64) -> Result<Self, ParamError> {
        Self::power_alpha_param(Param::Float(alpha))
    }

    /// Rational `alpha = num / den`; the exact series then has no rounding.
    pub fn power_alpha_ratio(num: i64, den: i64) -> Result<Self, ParamError> {
        Self::power_alpha_param(Param::Ratio(num, den))
    }

    fn power_alpha_param(alpha: Param) -> Result<Self, ParamError> {
        let a = alpha.value();
        if !a.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if !(a > 0.0 && a <= 1.0) {
            return Err(ParamError::Alpha(a));
        }
        let family = PhiFamily::PowerAlpha(alpha);
        let mut b = carried(&family);
        b[0] = 2.0 * a;
        b[1] = 2.0 * a * a;
        Ok(Self { family, b, reflected: false, label: format!("power:{a}") })
    }

    pub fn mobius_beta(beta: f64) -> Result<Self, ParamError> {
        Self::mobius_beta_param(Param::Float(beta))
    }

    pub fn mobius_beta_ratio(num: i64, den: i64) -> Result<Self, ParamError> {
        Self::mobius_beta_param(Param::Ratio(num, den))
    }

    fn mobius_beta_param(beta: Param) -> Result<Self, ParamError> {
        let v = beta.value();
        if !v.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if !(0.0..1.0).contains(&v) {
            return Err(ParamError::Beta(v));
        }
        let family = PhiFamily::MobiusBeta(beta);
        let b = carried(&family);
        Ok(Self { family, b, reflected: false, label: format!("mobius:{v}") })
    }

    /// Arbitrary admissible coefficients `[B1, B2, ...]`. Only `B1 > 0` and
    /// finiteness are checked.
    pub fn custom(coeffs: &[f64]) -> Result<Self, ParamError> {
        if coeffs.len() < 2 {
            return Err(ParamError::TooFewCoefficients);
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(ParamError::NonFinite);
        }
        if coeffs[0] <= 0.0 {
            return Err(ParamError::NonPositiveB1(coeffs[0]));
        }
        let list: Vec<String> = coeffs.iter().map(|c| format!("{c}")).collect();
        Ok(Self {
            family: PhiFamily::Custom,
            b: coeffs.to_vec(),
            reflected: false,
            label: format!("custom:{}", list.join(",")),
        })
    }

    /// `((1-z)/(1+z))^alpha`.
    pub fn power_alpha_conjugate(alpha: f64) -> Result<Self, ParamError> {
        Ok(Self::power_alpha(alpha)?.reflected())
    }

    /// `(1-(1-2 beta)z)/(1+z)`, the `z -> -z` image of the Mobius family.
    pub fn mobius_beta_conjugate(beta: f64) -> Result<Self, ParamError> {
        Ok(Self::mobius_beta(beta)?.reflected())
    }

    /// `phi(-z)`. The series flips the sign of odd coefficients while the
    /// bound inputs `B1`, `|B1^2 - 2 B2|` stay those of `phi`.
    pub fn reflected(&self) -> Self {
        let mut out = self.clone();
        out.reflected = !self.reflected;
        out.label = if out.reflected {
            format!("{}~", self.label)
        } else {
            String::from(self.label.trim_end_matches('~'))
        };
        out
    }

    pub fn family(&self) -> &PhiFamily {
        &self.family
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `[B1, B2, ...]` of the unreflected majorant.
    pub fn coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn b1(&self) -> f64 {
        self.b[0]
    }

    pub fn b2(&self) -> f64 {
        self.b[1]
    }

    /// `B1^2 - 2 B2`, signed.
    pub fn discriminant(&self) -> f64 {
        self.b1() * self.b1() - 2.0 * self.b2()
    }

    /// `1 + B1 z + ... ` to the given order in backend `S`.
    pub fn series<S: Scalar>(&self, order: usize) -> TruncatedSeries<S> {
        let base = family_series::<S>(&self.family, &self.b, order);
        if self.reflected {
            base.reflect()
        } else {
            base
        }
    }
}

fn family_series<S: Scalar>(family: &PhiFamily, b: &[f64], order: usize) -> TruncatedSeries<S> {
    match family {
        PhiFamily::PowerAlpha(alpha) => {
            let num = TruncatedSeries::polynomial(alloc::vec![S::one(), S::one()], order);
            let den = TruncatedSeries::polynomial(alloc::vec![S::one(), -S::one()], order);
            num.div(&den)
                .and_then(|q| q.pow_fractional(&alpha.to_scalar::<S>()))
                .expect("Cayley transform has unit constant term")
        }
        PhiFamily::MobiusBeta(beta) => {
            let c = S::one() - S::from_int(2) * beta.to_scalar::<S>();
            let num = TruncatedSeries::polynomial(alloc::vec![S::one(), c], order);
            let den = TruncatedSeries::polynomial(alloc::vec![S::one(), -S::one()], order);
            num.div(&den).expect("1 - z is invertible")
        }
        PhiFamily::Custom => {
            let mut coeffs = alloc::vec![S::one()];
            coeffs.extend(b.iter().map(|&x| S::from_f64(x).unwrap_or_else(S::zero)));
            TruncatedSeries::polynomial(coeffs, order)
        }
    }
}

fn carried(family: &PhiFamily) -> Vec<f64> {
    family_series::<Complex64>(family, &[], CARRIED_COEFFS)
        .coeffs()
        .iter()
        .skip(1)
        .map(|c| c.re)
        .collect()
}
