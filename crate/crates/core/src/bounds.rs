//! Closed-form coefficient bounds for `S^lambda_{Sigma_m}(phi)`, their
//! printed specializations, and the earlier bounds they are compared with.
//!
//! Branch selection is done in exact rational arithmetic on the (binary,
//! hence rational) double inputs, so a point sitting on a threshold always
//! picks the same branch. Only the degeneracy test `B1^2 = 2 B2` uses a
//! tolerance, because the float coefficients of the power family do not
//! cancel exactly.

#[allow(unused_imports)] // shadowed by the inherent methods when std is linked
use num_traits::Float;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};

use crate::error::ParamError;
use crate::phi::{PhiFamily, PhiSpec};

/// Tolerance for `|B1^2 - 2 B2|` below which phi is treated as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// `(m, lambda, gamma)`: fold order, class parameter, Fekete-Szego weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    pub m: usize,
    pub lambda: f64,
    pub gamma: f64,
}

impl ClassParams {
    pub fn new(m: usize, lambda: f64) -> Result<Self, ParamError> {
        Self::with_gamma(m, lambda, 0.0)
    }

    pub fn with_gamma(m: usize, lambda: f64, gamma: f64) -> Result<Self, ParamError> {
        if m == 0 {
            return Err(ParamError::FoldOrder(m));
        }
        if !lambda.is_finite() || !gamma.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if !(0.0..1.0).contains(&lambda) {
            return Err(ParamError::Lambda(lambda));
        }
        Ok(Self { m, lambda, gamma })
    }

    /// `m (1 - lambda)`, the factor shared by every bound.
    pub fn scale(&self) -> f64 {
        self.m as f64 * (1.0 - self.lambda)
    }

    /// The weight `(m+1)/2` at which `h(gamma)` vanishes.
    pub fn symmetric_gamma(&self) -> f64 {
        (self.m as f64 + 1.0) / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Bound without a case split.
    Single,
    LowB1,
    HighB1,
    SmallH,
    LargeH,
    Degenerate,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Single => "single",
            Branch::LowB1 => "low-B1",
            Branch::HighB1 => "high-B1",
            Branch::SmallH => "small-h",
            Branch::LargeH => "large-h",
            Branch::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub branch: Branch,
    /// Set when `B1^2 = 2 B2`.
    pub degenerate: bool,
}

/// Result of `h(gamma)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HGamma {
    Value(f64),
    /// `B1^2 = 2 B2`: the defining quotient has a zero denominator.
    Degenerate,
}

fn rational(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite input")
}

pub fn is_degenerate(phi: &PhiSpec) -> bool {
    let b1 = phi.b1();
    phi.discriminant().abs() <= DEGENERACY_TOLERANCE * b1.max(1.0) * b1.max(1.0)
}

/// `|a_{m+1}| <= B1 sqrt(B1) / (m (1-lambda) sqrt(|B1^2 - 2 B2| + B1))`.
pub fn bound_a_m1(phi: &PhiSpec, p: &ClassParams) -> BoundValue {
    let b1 = phi.b1();
    let value = b1 * b1.sqrt() / (p.scale() * (phi.discriminant().abs() + b1).sqrt());
    BoundValue { value, branch: Branch::Single, degenerate: is_degenerate(phi) }
}

/// Piecewise bound on `|a_{2m+1}|` split at `B1 = m (1-lambda) / (m+1)`.
pub fn bound_a_2m1(phi: &PhiSpec, p: &ClassParams) -> BoundValue {
    let b1 = phi.b1();
    let scale = p.scale();
    let base = b1 / (2.0 * scale);
    // B1 (m+1) >= m (1-lambda), decided exactly.
    let m = BigRational::from_integer(BigInt::from(p.m));
    let lhs = rational(b1) * (m.clone() + BigRational::from_integer(1.into()));
    let rhs = m * (BigRational::from_integer(1.into()) - rational(p.lambda));
    let degenerate = is_degenerate(phi);
    if lhs >= rhs {
        let k = phi.discriminant().abs();
        let lead = (p.m as f64 + 1.0 - scale / b1) * b1.powi(3)
            / (2.0 * scale * scale * (b1 + k));
        BoundValue { value: lead + base, branch: Branch::HighB1, degenerate }
    } else {
        BoundValue { value: base, branch: Branch::LowB1, degenerate }
    }
}

/// `h(gamma) = ((m+1-2 gamma)/2) B1^2 / (2 m^2 (1-lambda)^2 (B1^2 - 2 B2))`.
pub fn h_gamma(phi: &PhiSpec, p: &ClassParams) -> HGamma {
    if is_degenerate(phi) {
        return HGamma::Degenerate;
    }
    let scale = p.scale();
    let b1 = phi.b1();
    let weight = (p.m as f64 + 1.0 - 2.0 * p.gamma) / 2.0;
    HGamma::Value(weight * b1 * b1 / (2.0 * scale * scale * phi.discriminant()))
}

/// Bound on `|a_{2m+1} - gamma a_{m+1}^2|`.
///
/// Non-degenerate phi: `B1/(2m(1-lambda))` while `|h| < 1/(4m(1-lambda))`,
/// else `2 B1 |h|`. Degenerate phi (`B1^2 = 2 B2`): the same hypothesis set
/// pins `b_2m + c_2m = 0`, and the functional is then linear in `|b_m|^2`,
/// giving `max(B1/(2m(1-lambda)), |m+1-2 gamma| B1^2 / (2 m^2 (1-lambda)^2))`.
pub fn fekete_szego_bound(phi: &PhiSpec, p: &ClassParams) -> BoundValue {
    let b1 = phi.b1();
    let scale = p.scale();
    let base = b1 / (2.0 * scale);
    match h_gamma(phi, p) {
        HGamma::Degenerate => {
            let weight = (p.m as f64 + 1.0 - 2.0 * p.gamma).abs();
            let corner = weight * b1 * b1 / (2.0 * scale * scale);
            BoundValue { value: base.max(corner), branch: Branch::Degenerate, degenerate: true }
        }
        HGamma::Value(h) => {
            // |h| >= 1/(4 m (1-lambda))  <=>  |m+1-2 gamma| B1^2 >= m (1-lambda) |B1^2 - 2 B2|.
            let one = BigRational::from_integer(1.into());
            let m = BigRational::from_integer(BigInt::from(p.m));
            let two = BigRational::from_integer(2.into());
            let b1q = rational(b1);
            let b2q = rational(phi.b2());
            let weight = (m.clone() + one.clone() - two.clone() * rational(p.gamma)).abs();
            let lhs = weight * b1q.clone() * b1q.clone();
            let disc = (b1q.clone() * b1q - two * b2q).abs();
            let rhs = m * (one - rational(p.lambda)) * disc;
            if lhs >= rhs {
                BoundValue { value: 2.0 * b1 * h.abs(), branch: Branch::LargeH, degenerate: false }
            } else {
                BoundValue { value: base, branch: Branch::SmallH, degenerate: false }
            }
        }
    }
}

/// The three headline bounds at once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundSet {
    pub a_m1: BoundValue,
    pub a_2m1: BoundValue,
    pub fekete_szego: BoundValue,
}

pub fn all_bounds(phi: &PhiSpec, p: &ClassParams) -> BoundSet {
    BoundSet {
        a_m1: bound_a_m1(phi, p),
        a_2m1: bound_a_2m1(phi, p),
        fekete_szego: fekete_szego_bound(phi, p),
    }
}

/// Earlier classes defined by an argument (`alpha`) or real-part (`beta`)
/// condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceFamily {
    AlphaClass,
    BetaClass,
}

/// Earlier bounds `(|a_{m+1}|, |a_{2m+1}|)` for the alpha and beta classes.
///
/// The printed beta-class `|a_{2m+1}|` bound carries an `alpha^2` term in a
/// statement with no `alpha`; it is evaluated with `1 - beta` in its place.
pub fn reference_bounds(
    family: ReferenceFamily,
    param: f64,
    p: &ClassParams,
) -> Result<(f64, f64), ParamError> {
    let scale = p.scale();
    let m = p.m as f64;
    match family {
        ReferenceFamily::AlphaClass => {
            if !(param > 0.0 && param <= 1.0) {
                return Err(ParamError::Alpha(param));
            }
            let a = param;
            Ok((
                2.0 * a / (scale * (a + 1.0).sqrt()),
                a / scale + 2.0 * (m + 1.0) * a * a / (scale * scale),
            ))
        }
        ReferenceFamily::BetaClass => {
            if !(0.0..1.0).contains(&param) {
                return Err(ParamError::Beta(param));
            }
            let t = 1.0 - param;
            Ok(((2.0 * t).sqrt() / scale, t / scale + 2.0 * (m + 1.0) * t * t / (scale * scale)))
        }
    }
}

/// Specializations of the two theorems as printed, each keyed by what it
/// fixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// `lambda = 0`, `|a_{m+1}|`.
    Lambda0AM1,
    /// `lambda = 0`, `|a_{2m+1}|`.
    Lambda0A2M1,
    /// `m = 1`, `|a_2|`.
    M1A2,
    /// `m = 1`, `|a_3|`.
    M1A3,
    /// `m = 1`, power family, `|a_2|`.
    PowerM1A2,
    /// `m = 1`, power family, `|a_3|`.
    PowerM1A3,
    /// `m = 1`, Mobius family, `|a_2|`.
    MobiusM1A2,
    /// `m = 1, lambda = 0`, `|a_2|`.
    M1Lambda0A2,
    /// `m = 1, lambda = 0`, `|a_3|`.
    M1Lambda0A3,
    /// `lambda = 0` Fekete-Szego.
    Lambda0FeketeSzego,
    /// `m = 1` Fekete-Szego.
    M1FeketeSzego,
    /// `m = 1, lambda = 0` Fekete-Szego.
    M1Lambda0FeketeSzego,
    /// `gamma` in `{0, 1}` Fekete-Szego, any `m`.
    Gamma01FeketeSzego,
    /// `gamma = 1, m = 1`: `|a_3 - a_2^2|`.
    M1Gamma1FeketeSzego,
}

impl Corollary {
    pub const ALL: [Corollary; 14] = [
        Corollary::Lambda0AM1,
        Corollary::Lambda0A2M1,
        Corollary::M1A2,
        Corollary::M1A3,
        Corollary::PowerM1A2,
        Corollary::PowerM1A3,
        Corollary::MobiusM1A2,
        Corollary::M1Lambda0A2,
        Corollary::M1Lambda0A3,
        Corollary::Lambda0FeketeSzego,
        Corollary::M1FeketeSzego,
        Corollary::M1Lambda0FeketeSzego,
        Corollary::Gamma01FeketeSzego,
        Corollary::M1Gamma1FeketeSzego,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Corollary::Lambda0AM1 => "lambda0-a_m1",
            Corollary::Lambda0A2M1 => "lambda0-a_2m1",
            Corollary::M1A2 => "m1-a_2",
            Corollary::M1A3 => "m1-a_3",
            Corollary::PowerM1A2 => "power-m1-a_2",
            Corollary::PowerM1A3 => "power-m1-a_3",
            Corollary::MobiusM1A2 => "mobius-m1-a_2",
            Corollary::M1Lambda0A2 => "m1-lambda0-a_2",
            Corollary::M1Lambda0A3 => "m1-lambda0-a_3",
            Corollary::Lambda0FeketeSzego => "lambda0-fekete-szego",
            Corollary::M1FeketeSzego => "m1-fekete-szego",
            Corollary::M1Lambda0FeketeSzego => "m1-lambda0-fekete-szego",
            Corollary::Gamma01FeketeSzego => "gamma01-fekete-szego",
            Corollary::M1Gamma1FeketeSzego => "m1-gamma1-fekete-szego",
        }
    }

    fn uses_gamma(self) -> bool {
        matches!(
            self,
            Corollary::Lambda0FeketeSzego
                | Corollary::M1FeketeSzego
                | Corollary::M1Lambda0FeketeSzego
                | Corollary::Gamma01FeketeSzego
                | Corollary::M1Gamma1FeketeSzego
        )
    }

    fn applies(self, phi: &PhiSpec, p: &ClassParams) -> bool {
        let m1 = p.m == 1;
        let l0 = p.lambda == 0.0;
        match self {
            Corollary::Lambda0AM1 | Corollary::Lambda0A2M1 | Corollary::Lambda0FeketeSzego => l0,
            Corollary::M1A2 | Corollary::M1A3 | Corollary::M1FeketeSzego => m1,
            Corollary::PowerM1A2 | Corollary::PowerM1A3 => {
                m1 && matches!(phi.family(), PhiFamily::PowerAlpha(_)) && !phi.is_reflected()
            }
            Corollary::MobiusM1A2 => {
                m1 && matches!(phi.family(), PhiFamily::MobiusBeta(_)) && !phi.is_reflected()
            }
            Corollary::M1Lambda0A2 | Corollary::M1Lambda0A3 | Corollary::M1Lambda0FeketeSzego => {
                m1 && l0
            }
            Corollary::Gamma01FeketeSzego => p.gamma == 0.0 || p.gamma == 1.0,
            Corollary::M1Gamma1FeketeSzego => m1 && p.gamma == 1.0,
        }
    }

    /// The general theorem evaluated at this corollary's parameters.
    pub fn theorem_value(self, phi: &PhiSpec, p: &ClassParams) -> f64 {
        match self {
            Corollary::Lambda0AM1
            | Corollary::M1A2
            | Corollary::PowerM1A2
            | Corollary::MobiusM1A2
            | Corollary::M1Lambda0A2 => bound_a_m1(phi, p).value,
            Corollary::Lambda0A2M1
            | Corollary::M1A3
            | Corollary::PowerM1A3
            | Corollary::M1Lambda0A3 => bound_a_2m1(phi, p).value,
            _ => fekete_szego_bound(phi, p).value,
        }
    }

    /// The corollary's formula exactly as printed, or `None` where it is
    /// undefined (a Fekete-Szego `h` with a zero denominator).
    pub fn printed_value(self, phi: &PhiSpec, p: &ClassParams) -> Option<f64> {
        let b1 = phi.b1();
        let k = phi.discriminant().abs();
        let m = p.m as f64;
        let l = 1.0 - p.lambda;
        let a2m1 = |scale: f64, mid: f64| {
            if b1 >= scale / (m + 1.0) {
                (m + 1.0 - scale / b1) * b1.powi(3) / mid + b1 / (2.0 * scale)
            } else {
                b1 / (2.0 * scale)
            }
        };
        // Printed Fekete-Szego shape with factors (small, large) and the
        // printed h.
        let fs = |small: f64, large: f64, threshold: f64| -> Option<f64> {
            match h_gamma(phi, p) {
                HGamma::Degenerate => None,
                HGamma::Value(h) => Some(if h.abs() < threshold { small } else { large * b1 * h.abs() }),
            }
        };
        match self {
            Corollary::Lambda0AM1 => Some(b1 * b1.sqrt() / (m * (k + b1).sqrt())),
            Corollary::Lambda0A2M1 => Some(a2m1(m, 2.0 * m * m * (b1 + k))),
            Corollary::M1A2 => Some(b1 * b1.sqrt() / (l * (k + b1).sqrt())),
            Corollary::M1A3 => Some(a2m1(l, 2.0 * l * l + b1 * k)),
            Corollary::PowerM1A2 => Some(b1 / l),
            Corollary::PowerM1A3 => {
                let alpha = b1 / 2.0;
                Some(if alpha >= l / 4.0 { 4.0 * alpha * alpha / (l * l) } else { alpha / l })
            }
            Corollary::MobiusM1A2 => {
                let beta = 1.0 - b1 / 2.0;
                Some(2.0 * (1.0 - beta) / (l * (2.0 * beta + 1.0).sqrt()))
            }
            Corollary::M1Lambda0A2 => Some(b1 * b1.sqrt() / (k + b1).sqrt()),
            Corollary::M1Lambda0A3 => Some(a2m1(1.0, 2.0 + b1 * k)),
            Corollary::Lambda0FeketeSzego => fs(b1 / (2.0 * m), 2.0, 1.0 / (4.0 * m)),
            Corollary::M1FeketeSzego | Corollary::M1Lambda0FeketeSzego => {
                fs(b1 / (4.0 * l), 4.0, 1.0 / (4.0 * l))
            }
            Corollary::Gamma01FeketeSzego => fs(b1 / (4.0 * m * l), 4.0, 1.0 / (4.0 * m * l)),
            Corollary::M1Gamma1FeketeSzego => Some(b1 / (4.0 * l)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Match,
    Mismatch,
    /// The printed formula is undefined at this point.
    NotComparable,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Match => "match",
            Agreement::Mismatch => "mismatch",
            Agreement::NotComparable => "not-comparable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryRow {
    pub corollary: Corollary,
    pub phi: PhiSpec,
    pub params: ClassParams,
    /// `gamma` only matters for Fekete-Szego rows.
    pub uses_gamma: bool,
    pub theorem: f64,
    pub printed: Option<f64>,
    pub agreement: Agreement,
}

/// Relative tolerance for declaring a printed value equal to the theorem.
pub const COROLLARY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, Default)]
pub struct CorollaryGrid {
    pub m: Vec<usize>,
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub phi: Vec<PhiSpec>,
}

/// One row per applicable corollary at every grid point. Rows that do not
/// involve `gamma` are emitted once per `(m, lambda, phi)`.
pub fn corollary_table(grid: &CorollaryGrid) -> Result<Vec<CorollaryRow>, ParamError> {
    let mut rows = Vec::new();
    for phi in &grid.phi {
        for &m in &grid.m {
            for &lambda in &grid.lambda {
                let base = ClassParams::new(m, lambda)?;
                for c in Corollary::ALL.iter().copied().filter(|c| !c.uses_gamma()) {
                    if c.applies(phi, &base) {
                        rows.push(row(c, phi, base));
                    }
                }
                for &gamma in &grid.gamma {
                    let p = ClassParams::with_gamma(m, lambda, gamma)?;
                    for c in Corollary::ALL.iter().copied().filter(|c| c.uses_gamma()) {
                        if c.applies(phi, &p) {
                            rows.push(row(c, phi, p));
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn row(c: Corollary, phi: &PhiSpec, p: ClassParams) -> CorollaryRow {
    let theorem = c.theorem_value(phi, &p);
    let printed = c.printed_value(phi, &p);
    let agreement = match printed {
        None => Agreement::NotComparable,
        Some(v) if (v - theorem).abs() <= COROLLARY_TOLERANCE * theorem.abs().max(1.0) => {
            Agreement::Match
        }
        Some(_) => Agreement::Mismatch,
    };
    CorollaryRow { corollary: c, phi: phi.clone(), params: p, uses_gamma: c.uses_gamma(), theorem, printed, agreement }
}
