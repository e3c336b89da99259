//! Truncated formal power series `c0 + c1 z + ... + cN z^N + O(z^(N+1))`.
//!
//! Every binary operation truncates to the smaller order of its operands.
//! Values are immutable; operations return new series.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::SeriesError;
use crate::scalar::{Backend, Complex64, ExactComplex, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

pub type FloatSeries = TruncatedSeries<Complex64>;
pub type ExactSeries = TruncatedSeries<ExactComplex>;

impl<S: Scalar> TruncatedSeries<S> {
    /// Builds a series from `c0..=cN`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<S>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients given as integers.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&c| S::from_int(c)).collect())
    }

    /// A polynomial viewed as a series of the given order: missing
    /// coefficients are zero, extra ones are dropped.
    pub fn polynomial(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(S::one(), 1, order)
    }

    /// `c z^k`, which is zero if `k > order`.
    pub fn monomial(c: S, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `z + a_2 z^2 + ... + a_N z^N` with `tail = [a_2, ..., a_N]`.
    pub fn normalized(tail: Vec<S>) -> Self {
        let mut coeffs = vec![S::zero(), S::one()];
        coeffs.extend(tail);
        Self { coeffs }
    }

    /// `z + sum_k a_{km+1} z^{km+1}` with `tail = [a_{m+1}, a_{2m+1}, ...]`.
    pub fn mfold_normalized(m: usize, tail: &[S]) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::InvalidFold);
        }
        let mut s = Self::identity(tail.len() * m + 1);
        for (k, a) in tail.iter().enumerate() {
            s.coeffs[(k + 1) * m + 1] = a.clone();
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^n`; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_negligible()
            && self
                .coeffs
                .get(1)
                .is_some_and(|c| (c.clone() - S::one()).is_negligible())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, k: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    /// Termwise derivative. The result is known one order less than the
    /// input; an order-0 input gives the zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.clone() * S::from_int(n as i64))
            .collect();
        Self { coeffs }
    }

    /// `z * self`, known one order higher.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `self / z`. Requires a zero constant term and order at least 1.
    pub fn shift_down(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_negligible() || self.order() == 0 {
            return Err(SeriesError::ConstantTerm { expected: "0" });
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `self(-z)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// `self(z^m)`, known to order `m * N + m - 1`.
    pub fn substitute_power(&self, m: usize) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::InvalidFold);
        }
        let order = self.order() * m + m - 1;
        let mut s = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            s.coeffs[n * m] = c.clone();
        }
        Ok(s)
    }

    /// `outer(inner(z))` by Horner's scheme. `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_negligible() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Multiplicative inverse. Requires `c0 != 0`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() || c0.is_negligible() {
            return Err(SeriesError::ConstantTerm { expected: "nonzero" });
        }
        let inv0 = S::one() / c0;
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = S::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other`, with `other(0) != 0`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    fn require_unit_constant(&self) -> Result<(), SeriesError> {
        if (self.coeffs[0].clone() - S::one()).is_negligible() {
            Ok(())
        } else {
            Err(SeriesError::ConstantTerm { expected: "1" })
        }
    }

    /// Principal logarithm. Requires `c0 = 1`; the result has `c0 = 0`.
    pub fn log1(&self) -> Result<Self, SeriesError> {
        self.require_unit_constant()?;
        // log(a)' = a'/a, integrated termwise.
        let mut out: Vec<S> = vec![S::zero(); self.coeffs.len()];
        for n in 1..=self.order() {
            let acc = out[1..n].iter().enumerate().fold(
                S::from_int(n as i64) * self.coeffs[n].clone(),
                |acc, (i, o)| acc - S::from_int(i as i64 + 1) * o.clone() * self.coeffs[n - 1 - i].clone(),
            );
            out[n] = acc / S::from_int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// Exponential. Requires `c0 = 0`; the result has `c0 = 1`.
    pub fn exp0(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_negligible() {
            return Err(SeriesError::ConstantTerm { expected: "0" });
        }
        let mut out: Vec<S> = vec![S::zero(); self.coeffs.len()];
        out[0] = S::one();
        for n in 1..=self.order() {
            let mut acc = S::zero();
            for k in 1..=n {
                acc = acc + S::from_int(k as i64) * self.coeffs[k].clone() * out[n - k].clone();
            }
            out[n] = acc / S::from_int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// Principal branch of `self^r` as `exp(r log self)`. Requires `c0 = 1`.
    pub fn pow_fractional(&self, r: &S) -> Result<Self, SeriesError> {
        self.log1()?.scale(r).exp0()
    }

    /// Compositional inverse of a normalized series: the `g` with
    /// `self(g(w)) = w` to truncation order.
    ///
    /// Coefficient `n` of `self(g)` is `g_n` plus terms in `g_1..g_{n-1}`,
    /// so each `g_n` is fixed by back-substitution.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        let order = self.order();
        let mut g = Self::identity(order);
        for n in 2..=order {
            let partial = self.truncate(n).compose(&g.truncate(n))?;
            g.coeffs[n] = -partial.coeffs[n].clone();
        }
        Ok(g)
    }

    /// `(self(z^m))^(1/m)`, the m-fold symmetric transform of a normalized
    /// series. The result is known to order `m * N`.
    pub fn mfold_lift(&self, m: usize) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::InvalidFold);
        }
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        // self(z^m) = z^m * q(z^m), q(0) = 1, so the root is z * q(z^m)^(1/m).
        let q = self.shift_down()?;
        let root = q.substitute_power(m)?.pow_fractional(&S::from_ratio(1, m as i64))?;
        let lifted = root.shift_up();
        Ok(lifted.truncate(m * self.order()))
    }

    /// True iff every coefficient at an exponent not congruent to 1 mod `m`
    /// is negligible.
    pub fn is_mfold_symmetric(&self, m: usize) -> bool {
        m > 0
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(n, c)| n % m == 1 % m || c.is_negligible())
    }

    /// Shape `1 + p_m z^m + p_2m z^2m + ...`: unit constant and nonzero
    /// coefficients only at multiples of `m`.
    pub fn is_mfold_caratheodory(&self, m: usize) -> bool {
        m > 0
            && (self.coeffs[0].clone() - S::one()).is_negligible()
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(n, c)| n % m == 0 || c.is_negligible())
    }

    pub fn map_to_float(&self) -> FloatSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(Scalar::to_c64).collect() }
    }
}

impl FloatSeries {
    pub fn from_reals(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Largest coefficient-wise modulus of `self - other` over shared orders.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = c.to_c64();
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// A series whose backend is chosen at run time, e.g. when read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Exact(ExactSeries),
    Float(FloatSeries),
}

impl AnySeries {
    pub fn backend(&self) -> Backend {
        match self {
            AnySeries::Exact(_) => Backend::Exact,
            AnySeries::Float(_) => Backend::Float,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnySeries::Exact(s) => s.order(),
            AnySeries::Float(s) => s.order(),
        }
    }

    pub fn to_float(&self) -> FloatSeries {
        match self {
            AnySeries::Exact(s) => s.map_to_float(),
            AnySeries::Float(s) => s.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.add(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.add(b))),
            _ => Err(SeriesError::BackendMismatch),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.mul(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.mul(b))),
            _ => Err(SeriesError::BackendMismatch),
        }
    }

    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        match (self, inner) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => a.compose(b).map(AnySeries::Exact),
            (AnySeries::Float(a), AnySeries::Float(b)) => a.compose(b).map(AnySeries::Float),
            _ => Err(SeriesError::BackendMismatch),
        }
    }

    pub fn revert(&self) -> Result<Self, SeriesError> {
        match self {
            AnySeries::Exact(s) => s.revert().map(AnySeries::Exact),
            AnySeries::Float(s) => s.revert().map(AnySeries::Float),
        }
    }

    pub fn mfold_lift(&self, m: usize) -> Result<Self, SeriesError> {
        match self {
            AnySeries::Exact(s) => s.mfold_lift(m).map(AnySeries::Exact),
            AnySeries::Float(s) => s.mfold_lift(m).map(AnySeries::Float),
        }
    }

    pub fn is_mfold_symmetric(&self, m: usize) -> bool {
        match self {
            AnySeries::Exact(s) => s.is_mfold_symmetric(m),
            AnySeries::Float(s) => s.is_mfold_symmetric(m),
        }
    }
}

/// Leading inverse coefficients `(g_{m+1}, g_{2m+1}, g_{3m+1})` of an
/// m-fold symmetric normalized series with coefficients
/// `a_{m+1}, a_{2m+1}, a_{3m+1}`.
pub fn inverse_mfold_closed_form<S: Scalar>(m: usize, a1: &S, a2: &S, a3: &S) -> (S, S, S) {
    let m = m as i64;
    let g1 = -a1.clone();
    let g2 = S::from_int(m + 1) * a1.clone() * a1.clone() - a2.clone();
    let cube = a1.clone() * a1.clone() * a1.clone();
    let g3 = -(S::from_ratio((m + 1) * (3 * m + 2), 2) * cube
        - S::from_int(3 * m + 2) * a1.clone() * a2.clone()
        + a3.clone());
    (g1, g2, g3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;

    fn ex(c: &[(i64, i64)]) -> ExactSeries {
        ExactSeries::new(c.iter().map(|&(p, q)| exact(p, q)).collect()).unwrap()
    }

    #[test]
    fn add_examples() {
        let z = ExactSeries::identity(3);
        let z2 = ExactSeries::monomial(exact(1, 1), 2, 3);
        assert_eq!(z.add(&z2), ExactSeries::from_ints(&[0, 1, 1, 0]).unwrap());
        assert_eq!(z.add(&ExactSeries::zero(3)), z);
        let a = ExactSeries::from_ints(&[1, 1]).unwrap();
        let b = ExactSeries::from_ints(&[1, -1]).unwrap();
        assert_eq!(a.add(&b), ExactSeries::from_ints(&[2, 0]).unwrap());
    }

    #[test]
    fn truncation_follows_smaller_order() {
        let a = ExactSeries::from_ints(&[1, 2, 3, 4]).unwrap();
        let b = ExactSeries::from_ints(&[1, 1]).unwrap();
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.mul(&b).order(), 1);
    }

    #[test]
    fn mul_and_derivative_examples() {
        let z = ExactSeries::identity(3);
        assert_eq!(z.mul(&z), ExactSeries::from_ints(&[0, 0, 1, 0]).unwrap());
        let f = ex(&[(0, 1), (1, 1), (3, 7)]);
        assert_eq!(f.derivative(), ex(&[(1, 1), (6, 7)]));
        let sym = ExactSeries::mfold_normalized(3, &[exact(2, 1), exact(-1, 5)]).unwrap();
        assert!(sym.derivative().is_mfold_caratheodory(3));
    }

    #[test]
    fn compose_examples() {
        // (1 + 2z + 2z^2)(z/2) = 1 + z + z^2/2 by hand.
        let phi = ExactSeries::from_ints(&[1, 2, 2]).unwrap();
        let u = ex(&[(0, 1), (1, 2), (0, 1)]);
        assert_eq!(phi.compose(&u).unwrap(), ex(&[(1, 1), (1, 1), (1, 2)]));
        let f = ex(&[(0, 1), (1, 1), (2, 3), (-5, 2)]);
        assert_eq!(f.compose(&ExactSeries::identity(3)).unwrap(), f);
        assert_eq!(
            phi.compose(&ExactSeries::from_ints(&[1, 1, 0]).unwrap()),
            Err(SeriesError::NonzeroInnerConstant)
        );
    }

    #[test]
    fn reciprocal_and_powers() {
        let a = ExactSeries::from_ints(&[1, -1, 0, 0]).unwrap();
        assert_eq!(a.reciprocal().unwrap(), ExactSeries::from_ints(&[1, 1, 1, 1]).unwrap());
        assert!(ExactSeries::from_ints(&[0, 1]).unwrap().reciprocal().is_err());

        let onep = ExactSeries::polynomial(vec![exact(1, 1), exact(1, 1)], 5);
        let cayley = onep.div(&ExactSeries::polynomial(vec![exact(1, 1), exact(-1, 1)], 5)).unwrap();
        assert_eq!(cayley.pow_fractional(&exact(1, 1)).unwrap(), cayley);

        // Binomial series: (1 + 2z)^(1/2) = 1 + z - z^2/2 + ...
        let b = ExactSeries::from_ints(&[1, 2, 0]).unwrap();
        assert_eq!(b.pow_fractional(&exact(1, 2)).unwrap(), ex(&[(1, 1), (1, 1), (-1, 2)]));
        assert!(ExactSeries::from_ints(&[2, 1]).unwrap().log1().is_err());
        assert!(ExactSeries::from_ints(&[1, 1]).unwrap().exp0().is_err());
    }

    #[test]
    fn revert_examples() {
        let z = ExactSeries::identity(4);
        assert_eq!(z.revert().unwrap(), z);
        let f = ExactSeries::from_ints(&[0, 1, 1, 1, 1]).unwrap();
        assert_eq!(f.revert().unwrap(), ExactSeries::from_ints(&[0, 1, -1, 1, -1]).unwrap());
        let f = ex(&[(0, 1), (1, 1), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1)]);
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), ExactSeries::identity(6));
        assert_eq!(
            ExactSeries::from_ints(&[0, 2, 1]).unwrap().revert(),
            Err(SeriesError::NotNormalized)
        );
    }

    #[test]
    fn closed_form_examples() {
        let (a1, a2, a3) = (exact(2, 3), exact(-1, 4), exact(5, 1));
        // m = 1 gives the classical second/third/fourth inverse coefficients.
        let (g1, g2, g3) = inverse_mfold_closed_form(1, &a1, &a2, &a3);
        assert_eq!(g1, -a1.clone());
        assert_eq!(g2, exact(2, 1) * a1.clone() * a1.clone() - a2.clone());
        let expected3 = -(exact(5, 1) * a1.clone() * a1.clone() * a1.clone()
            - exact(5, 1) * a1.clone() * a2.clone()
            + a3.clone());
        assert_eq!(g3, expected3);
        // m = 2: (-a3, 3a3^2 - a5, -(12a3^3 - 8a3a5 + a7)).
        let (g1, g2, g3) = inverse_mfold_closed_form(2, &a1, &a2, &a3);
        assert_eq!(g1, -a1.clone());
        assert_eq!(g2, exact(3, 1) * a1.clone() * a1.clone() - a2.clone());
        let expected3 = -(exact(12, 1) * a1.clone() * a1.clone() * a1.clone()
            - exact(8, 1) * a1.clone() * a2.clone()
            + a3.clone());
        assert_eq!(g3, expected3);
        let zero = exact(0, 1);
        let (g1, g2, g3) = inverse_mfold_closed_form(4, &zero, &zero, &zero);
        assert!(g1.is_negligible() && g2.is_negligible() && g3.is_negligible());
    }

    #[test]
    fn symmetry_predicates() {
        let f = ExactSeries::from_ints(&[0, 1, 0, 1, 0, 1]).unwrap();
        assert!(f.is_mfold_symmetric(2));
        assert!(!ExactSeries::from_ints(&[0, 1, 1]).unwrap().is_mfold_symmetric(2));
        assert!(ExactSeries::from_ints(&[0, 1, 1]).unwrap().is_mfold_symmetric(1));
        assert!(ExactSeries::from_ints(&[1, 0, 3, 0, 2]).unwrap().is_mfold_caratheodory(2));
        assert!(!ExactSeries::from_ints(&[1, 1, 3]).unwrap().is_mfold_caratheodory(2));
    }

    #[test]
    fn lift_examples() {
        let f = ex(&[(0, 1), (1, 1), (1, 3), (-2, 7)]);
        assert_eq!(f.mfold_lift(1).unwrap(), f);

        // z/(1-z) lifted with m = 2 is z (1 - z^2)^(-1/2).
        let order = 10;
        let geom = ExactSeries::from_ints(&vec![1; order + 1]).unwrap().shift_up().truncate(order);
        let lifted = geom.mfold_lift(2).unwrap().truncate(order);
        let one_minus = ExactSeries::polynomial(vec![exact(1, 1), exact(0, 1), exact(-1, 1)], order);
        let expected = one_minus.pow_fractional(&exact(-1, 2)).unwrap().shift_up().truncate(order);
        assert_eq!(lifted, expected);

        // Koebe z/(1-z)^2 lifted with m = 3 only has exponents 1, 4, 7, ...
        let koebe = ExactSeries::from_ints(&(0..8).collect::<Vec<_>>()).unwrap();
        let lifted = koebe.mfold_lift(3).unwrap().truncate(20);
        assert_eq!(lifted.order(), 20);
        for (n, c) in lifted.coeffs().iter().enumerate() {
            assert_eq!(n % 3 == 1, !c.is_negligible(), "exponent {n}");
        }
    }

    #[test]
    fn any_series_rejects_mixed_backends() {
        let a = AnySeries::Exact(ExactSeries::identity(2));
        let b = AnySeries::Float(FloatSeries::identity(2));
        assert_eq!(a.add(&b), Err(SeriesError::BackendMismatch));
        assert_eq!(a.mul(&b), Err(SeriesError::BackendMismatch));
        assert!(b.add(&b).is_ok());
    }

    #[test]
    fn display_is_readable() {
        let s = FloatSeries::from_reals(&[0.0, 1.0, -0.5]).unwrap();
        let text = alloc::format!("{s}");
        assert!(text.contains("z^2") && text.ends_with("O(z^3)"));
    }
}
