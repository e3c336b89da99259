use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SeriesError {
    #[error("series must have at least one coefficient")]
    Empty,
    #[error("operands use different scalar backends")]
    BackendMismatch,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("operation requires constant term {expected}")]
    ConstantTerm { expected: &'static str },
    #[error("series is not normalized (need c0 = 0, c1 = 1)")]
    NotNormalized,
    #[error("fold order m must be at least 1")]
    InvalidFold,
    #[error("series is not {m}-fold symmetric")]
    NotSymmetric { m: usize },
    #[error("coefficient is not a finite number")]
    NonFinite,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParamError {
    #[error("m must be a positive integer, got {0}")]
    FoldOrder(usize),
    #[error("lambda must lie in [0, 1), got {0}")]
    Lambda(f64),
    #[error("alpha must lie in (0, 1], got {0}")]
    Alpha(f64),
    #[error("beta must lie in [0, 1), got {0}")]
    Beta(f64),
    #[error("phi needs B1 > 0, got {0}")]
    NonPositiveB1(f64),
    #[error("phi needs at least two coefficients B1, B2")]
    TooFewCoefficients,
    #[error("parameter is not finite")]
    NonFinite,
    #[error("grid density must be at least 8, got {0}")]
    Density(usize),
}
