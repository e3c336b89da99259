//! Grid search over the Schwarz-parameter set used to prove the bounds.
//!
//! The region is parametrized by `b_m` (unit disc) and `d = b_2m - c_2m`,
//! with `c_m = -b_m` and `s = b_2m + c_2m` pinned by the coupling relation
//! `2 m^2 (1-lambda)^2 W a_{m+1}^2 = B1^3 s`, which after substituting
//! `a_{m+1} = B1 b_m / (m(1-lambda))` reads `s = 2 W b_m^2 / B1`. By default
//! `W = B1^2 - 2 B2`, the relation the bounds are proved from; see
//! [`Pinning`] for the alternative that the matching equations imply.
//!
//! This set contains the coefficient data of every class member but is
//! larger than it, so "empirical <= bound" checks the inequality chain of
//! the proofs, and tightness measures their slack rather than sharpness.

#[allow(unused_imports)] // shadowed by the inherent methods when std is linked
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_a_2m1, bound_a_m1, fekete_szego_bound, BoundValue, ClassParams};
use crate::error::ParamError;
use crate::membership::{coefficients_from_point_pinned, Pinning, SchwarzPoint};
use crate::phi::PhiSpec;
use crate::scalar::Complex64;

/// Slack for the disc constraints when accepting grid nodes.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-12;
/// An empirical value above `theoretical + VIOLATION_TOLERANCE` falsifies a bound.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;
/// Seed for the optional uniform samples.
pub const SEED: u64 = 0x5EED;
pub const DEFAULT_DENSITY: usize = 32;
pub const MIN_DENSITY: usize = 8;

/// Printed with every report.
pub const SEARCH_SPACE_NOTE: &str = "search space is the truncated Schwarz hypothesis set \
(|b_m| <= 1, |b_2m| <= 1-|b_m|^2, same for c, c_m = -b_m, b_2m + c_2m pinned); it contains \
the coefficient data of the class, so empirical <= theoretical tests the proof's inequality \
chain and tightness measures its slack, not sharpness over the class";

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibleRegion {
    pub phi: PhiSpec,
    pub params: ClassParams,
    pub pinning: Pinning,
}

impl FeasibleRegion {
    pub fn new(phi: PhiSpec, params: ClassParams) -> Self {
        Self { phi, params, pinning: Pinning::Printed }
    }

    pub fn with_pinning(mut self, pinning: Pinning) -> Self {
        self.pinning = pinning;
        self
    }

    /// `s = b_2m + c_2m` forced by `b_m`.
    pub fn pinned_sum(&self, b_m: Complex64) -> Complex64 {
        b_m * b_m * (2.0 * self.pinning.weight(&self.phi) / self.phi.b1())
    }

    /// The point with the given `b_m` and `d = b_2m - c_2m`.
    pub fn point(&self, b_m: Complex64, d: Complex64) -> SchwarzPoint {
        let s = self.pinned_sum(b_m);
        SchwarzPoint { b_m, b_2m: (s + d) * 0.5, c_m: -b_m, c_2m: (s - d) * 0.5 }
    }

    pub fn contains(&self, point: &SchwarzPoint) -> bool {
        point.satisfies_discs(FEASIBILITY_TOLERANCE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    /// Grid nodes per real dimension.
    pub density: usize,
    /// Extra uniform samples drawn with [`SEED`].
    pub samples: usize,
}

impl SearchConfig {
    pub fn new(density: usize, samples: usize) -> Result<Self, ParamError> {
        if density < MIN_DENSITY {
            return Err(ParamError::Density(density));
        }
        Ok(Self { density, samples })
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { density: DEFAULT_DENSITY, samples: 0 }
    }
}

/// Feasible points of a region: a deterministic polar grid in `b_m` and
/// `d`, then `samples` uniform draws. Infeasible candidates are skipped and
/// counted.
///
/// With density `n`: `|b_m| = i/n` (`i = 0..=n`), `arg b_m = 2 pi j/n`,
/// `|d| = 2 (1 - |b_m|^2) k/n` (`k = 0..=n`), `arg d = 2 pi l/n`. Grids for
/// `n` and `2n` are nested.
pub struct RegionPoints<'a> {
    region: &'a FeasibleRegion,
    n: usize,
    index: [usize; 4],
    grid_done: bool,
    samples_left: usize,
    rng: ChaCha8Rng,
    visited: usize,
    rejected: usize,
}

pub fn enumerate_region(region: &FeasibleRegion, config: SearchConfig) -> RegionPoints<'_> {
    RegionPoints {
        region,
        n: config.density.max(1),
        index: [0; 4],
        grid_done: false,
        samples_left: config.samples,
        rng: ChaCha8Rng::seed_from_u64(SEED),
        visited: 0,
        rejected: 0,
    }
}

impl RegionPoints<'_> {
    /// Candidates generated so far, feasible or not.
    pub fn visited(&self) -> usize {
        self.visited
    }

    pub fn rejected(&self) -> usize {
        self.rejected
    }

    fn grid_candidate(&mut self) -> Option<SchwarzPoint> {
        if self.grid_done {
            return None;
        }
        let n = self.n;
        let [i, j, k, l] = self.index;
        let nf = n as f64;
        let r = i as f64 / nf;
        let b_m = Complex64::from_polar(r, TAU * (j as f64 / nf));
        let radius = 2.0 * (1.0 - r * r) * (k as f64 / nf);
        let d = Complex64::from_polar(radius, TAU * (l as f64 / nf));

        // Odometer over (i, j, k, l) with extents (n+1, n, n+1, n).
        let extents = [n + 1, n, n + 1, n];
        let mut pos = 3;
        loop {
            self.index[pos] += 1;
            if self.index[pos] < extents[pos] {
                break;
            }
            self.index[pos] = 0;
            if pos == 0 {
                self.grid_done = true;
                break;
            }
            pos -= 1;
        }
        Some(self.region.point(b_m, d))
    }

    fn sample_candidate(&mut self) -> Option<SchwarzPoint> {
        if self.samples_left == 0 {
            return None;
        }
        self.samples_left -= 1;
        let r = self.rng.gen::<f64>().sqrt();
        let b_m = Complex64::from_polar(r, TAU * self.rng.gen::<f64>());
        let radius = 2.0 * (1.0 - r * r) * self.rng.gen::<f64>().sqrt();
        let d = Complex64::from_polar(radius, TAU * self.rng.gen::<f64>());
        Some(self.region.point(b_m, d))
    }
}

impl Iterator for RegionPoints<'_> {
    type Item = SchwarzPoint;

    fn next(&mut self) -> Option<SchwarzPoint> {
        loop {
            let candidate = match self.grid_candidate() {
                Some(p) => p,
                None => self.sample_candidate()?,
            };
            self.visited += 1;
            if self.region.contains(&candidate) {
                return Some(candidate);
            }
            self.rejected += 1;
        }
    }
}

/// Quantity being maximized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Functional {
    /// `|a_{m+1}|`
    AbsAm1,
    /// `|a_{2m+1}|`
    AbsA2m1,
    /// `|a_{2m+1} - gamma a_{m+1}^2|`
    FeketeSzego(f64),
}

impl Functional {
    pub fn id(self) -> &'static str {
        match self {
            Functional::AbsAm1 => "abs_a_m1",
            Functional::AbsA2m1 => "abs_a_2m1",
            Functional::FeketeSzego(_) => "fekete_szego",
        }
    }

    pub fn gamma(self) -> Option<f64> {
        match self {
            Functional::FeketeSzego(g) => Some(g),
            _ => None,
        }
    }

    pub fn evaluate(self, point: &SchwarzPoint, region: &FeasibleRegion) -> f64 {
        let c = coefficients_from_point_pinned(point, &region.phi, &region.params, region.pinning);
        match self {
            Functional::AbsAm1 => c.a_m1.norm(),
            Functional::AbsA2m1 => c.a_2m1.norm(),
            Functional::FeketeSzego(g) => (c.a_2m1 - c.a_m1 * c.a_m1 * g).norm(),
        }
    }

    pub fn theoretical(self, region: &FeasibleRegion) -> BoundValue {
        match self {
            Functional::AbsAm1 => bound_a_m1(&region.phi, &region.params),
            Functional::AbsA2m1 => bound_a_2m1(&region.phi, &region.params),
            Functional::FeketeSzego(g) => {
                let mut p = region.params;
                p.gamma = g;
                fekete_szego_bound(&region.phi, &p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub functional: Functional,
    pub phi: PhiSpec,
    /// `gamma` is set from the functional for Fekete-Szego reports.
    pub params: ClassParams,
    pub theoretical: BoundValue,
    pub empirical_max: f64,
    pub argmax: SchwarzPoint,
    /// `empirical_max / theoretical`.
    pub tightness: f64,
    pub grid_size: usize,
    pub samples_rejected: usize,
}

impl SearchReport {
    pub fn is_violation(&self) -> bool {
        self.empirical_max > self.theoretical.value + VIOLATION_TOLERANCE
    }
}

pub fn empirical_max(region: &FeasibleRegion, functional: Functional, config: SearchConfig) -> SearchReport {
    empirical_max_many(region, &[functional], config).pop().expect("one functional")
}

/// Maximizes several functionals over one pass of the region.
pub fn empirical_max_many(
    region: &FeasibleRegion,
    functionals: &[Functional],
    config: SearchConfig,
) -> Vec<SearchReport> {
    let mut best: Vec<(f64, SchwarzPoint)> = functionals.iter().map(|_| (-1.0, SchwarzPoint::ORIGIN)).collect();
    let mut points = enumerate_region(region, config);
    for point in points.by_ref() {
        for (slot, f) in best.iter_mut().zip(functionals) {
            let v = f.evaluate(&point, region);
            if v > slot.0 {
                *slot = (v, point);
            }
        }
    }
    let (visited, rejected) = (points.visited(), points.rejected());
    functionals
        .iter()
        .zip(best)
        .map(|(&f, (value, argmax))| {
            let theoretical = f.theoretical(region);
            let value = value.max(0.0);
            let mut params = region.params;
            if let Some(g) = f.gamma() {
                params.gamma = g;
            }
            SearchReport {
                functional: f,
                phi: region.phi.clone(),
                params,
                theoretical,
                empirical_max: value,
                argmax,
                tightness: value / theoretical.value,
                grid_size: visited,
                samples_rejected: rejected,
            }
        })
        .collect()
}

/// `gamma` entry of a search grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GammaSpec {
    Fixed(f64),
    /// `(m+1)/2`, where `h(gamma)` vanishes.
    Symmetric,
}

impl GammaSpec {
    pub fn resolve(self, m: usize) -> f64 {
        match self {
            GammaSpec::Fixed(g) => g,
            GammaSpec::Symmetric => (m as f64 + 1.0) / 2.0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchGrid {
    pub m: Vec<usize>,
    pub lambda: Vec<f64>,
    pub gamma: Vec<GammaSpec>,
    pub phi: Vec<PhiSpec>,
    pub pinning: Pinning,
}

impl SearchGrid {
    /// `m` in {1,2,3}, `lambda` in {0, 1/4, 1/2}, four majorants and
    /// `gamma` in {0, 1/2, 1, (m+1)/2}.
    pub fn default_grid() -> Self {
        Self {
            m: alloc::vec![1, 2, 3],
            lambda: alloc::vec![0.0, 0.25, 0.5],
            gamma: alloc::vec![
                GammaSpec::Fixed(0.0),
                GammaSpec::Fixed(0.5),
                GammaSpec::Fixed(1.0),
                GammaSpec::Symmetric
            ],
            phi: alloc::vec![
                PhiSpec::mobius_beta(0.0).expect("valid"),
                PhiSpec::mobius_beta(0.5).expect("valid"),
                PhiSpec::power_alpha(0.5).expect("valid"),
                PhiSpec::power_alpha(1.0).expect("valid"),
            ],
            pinning: Pinning::Printed,
        }
    }

    /// One independent work unit per `(phi, m, lambda)`; each carries every
    /// functional it must maximize.
    pub fn cells(&self) -> Result<Vec<SearchCell>, ParamError> {
        let mut cells = Vec::new();
        for phi in &self.phi {
            for &m in &self.m {
                for &lambda in &self.lambda {
                    let params = ClassParams::new(m, lambda)?;
                    let mut functionals = alloc::vec![Functional::AbsAm1, Functional::AbsA2m1];
                    functionals.extend(self.gamma.iter().map(|g| Functional::FeketeSzego(g.resolve(m))));
                    let region = FeasibleRegion::new(phi.clone(), params).with_pinning(self.pinning);
                    cells.push(SearchCell { region, functionals });
                }
            }
        }
        Ok(cells)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchCell {
    pub region: FeasibleRegion,
    pub functionals: Vec<Functional>,
}

impl SearchCell {
    pub fn run(&self, config: SearchConfig) -> Vec<SearchReport> {
        empirical_max_many(&self.region, &self.functionals, config)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationSummary {
    pub reports: Vec<SearchReport>,
    /// Indices into `reports` whose empirical maximum exceeds the bound.
    pub violations: Vec<usize>,
    /// Smallest tightness seen per functional id.
    pub min_tightness: Vec<(&'static str, f64)>,
}

pub fn summarize(reports: Vec<SearchReport>) -> ValidationSummary {
    let violations = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_violation())
        .map(|(i, _)| i)
        .collect();
    let mut min_tightness: Vec<(&'static str, f64)> = Vec::new();
    for r in &reports {
        let id = r.functional.id();
        match min_tightness.iter_mut().find(|(k, _)| *k == id) {
            Some(entry) => entry.1 = entry.1.min(r.tightness),
            None => min_tightness.push((id, r.tightness)),
        }
    }
    ValidationSummary { reports, violations, min_tightness }
}

/// Runs every cell of the grid in order on the calling thread.
pub fn validate_bounds(grid: &SearchGrid, config: SearchConfig) -> Result<ValidationSummary, ParamError> {
    let reports = grid.cells()?.iter().flat_map(|c| c.run(config)).collect();
    Ok(summarize(reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::coefficients_from_point;

    fn region(phi: PhiSpec, m: usize, lambda: f64) -> FeasibleRegion {
        FeasibleRegion::new(phi, ClassParams::new(m, lambda).unwrap())
    }

    #[test]
    fn origin_row_has_radius_two() {
        let r = region(PhiSpec::mobius_beta(0.3).unwrap(), 2, 0.1);
        assert_eq!(r.pinned_sum(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        assert!(r.contains(&r.point(Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0))));
        assert!(!r.contains(&r.point(Complex64::new(0.0, 0.0), Complex64::new(2.001, 0.0))));
    }

    #[test]
    fn unit_row_feasible_only_when_degenerate() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r = region(PhiSpec::mobius_beta(0.3).unwrap(), 1, 0.0);
        assert!(!r.contains(&r.point(one, zero)));
        let r = region(PhiSpec::power_alpha(0.7).unwrap(), 1, 0.0);
        assert!(r.contains(&r.point(one, zero)));
        assert!(r.pinned_sum(Complex64::new(0.3, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn enumeration_counts_and_soundness() {
        let r = region(PhiSpec::mobius_beta(0.5).unwrap(), 1, 0.0);
        let config = SearchConfig::new(8, 50).unwrap();
        let mut it = enumerate_region(&r, config);
        let mut kept = 0;
        for p in it.by_ref() {
            kept += 1;
            assert!(p.satisfies_discs(FEASIBILITY_TOLERANCE));
            assert!(coefficients_from_point(&p, &r.phi, &r.params).residual < 1e-12);
        }
        assert_eq!(it.visited(), 9 * 8 * 9 * 8 + 50);
        assert_eq!(kept + it.rejected(), it.visited());
        assert!(it.rejected() > 0);
        assert!(SearchConfig::new(4, 0).is_err());
    }

    #[test]
    fn a_m1_stays_below_bound() {
        let r = region(PhiSpec::mobius_beta(0.0).unwrap(), 1, 0.0);
        let rep = empirical_max(&r, Functional::AbsAm1, SearchConfig::new(16, 0).unwrap());
        assert!((rep.theoretical.value - 2.0).abs() < 1e-12);
        assert!(rep.empirical_max <= 2.0 + VIOLATION_TOLERANCE);
        assert!(!rep.is_violation());
        // B1^2 = 2 B2 here, so |b_m| = 1 is feasible and the bound is attained.
        assert!(rep.tightness > 1.0 - 1e-12);

        let r = region(PhiSpec::mobius_beta(0.5).unwrap(), 1, 0.0);
        let rep = empirical_max(&r, Functional::AbsAm1, SearchConfig::new(16, 0).unwrap());
        assert!(!rep.is_violation());
        assert!(rep.argmax.b_m.norm() < 1.0);
    }

    #[test]
    fn fekete_szego_witness_point() {
        let r = region(PhiSpec::mobius_beta(0.5).unwrap(), 1, 0.0);
        let rep = empirical_max(&r, Functional::FeketeSzego(1.0), SearchConfig::new(8, 0).unwrap());
        assert!((rep.empirical_max - 0.5).abs() < 1e-12);
        assert!(rep.argmax.b_m.norm() < 1e-15);
        assert!((rep.argmax.b_2m - rep.argmax.c_2m).norm() > 2.0 - 1e-12);
    }

    #[test]
    fn refinement_never_decreases() {
        let r = region(PhiSpec::mobius_beta(0.25).unwrap(), 2, 0.25);
        for f in [Functional::AbsAm1, Functional::AbsA2m1, Functional::FeketeSzego(0.5)] {
            let coarse = empirical_max(&r, f, SearchConfig::new(8, 20).unwrap());
            let fine = empirical_max(&r, f, SearchConfig::new(16, 20).unwrap());
            assert!(fine.empirical_max >= coarse.empirical_max, "{}", f.id());
        }
    }

    #[test]
    fn empty_grid_gives_empty_summary() {
        let s = validate_bounds(&SearchGrid::default(), SearchConfig::default()).unwrap();
        assert!(s.reports.is_empty() && s.violations.is_empty() && s.min_tightness.is_empty());
    }

    #[test]
    fn small_grid_has_no_violations() {
        let grid = SearchGrid {
            m: alloc::vec![1, 2],
            lambda: alloc::vec![0.0, 0.5],
            gamma: alloc::vec![GammaSpec::Fixed(0.0), GammaSpec::Symmetric],
            phi: alloc::vec![PhiSpec::mobius_beta(0.5).unwrap(), PhiSpec::power_alpha(1.0).unwrap()],
            pinning: Pinning::Printed,
        };
        let s = validate_bounds(&grid, SearchConfig::new(8, 0).unwrap()).unwrap();
        assert_eq!(s.reports.len(), 2 * 2 * 2 * 4);
        assert!(s.violations.is_empty());
        assert_eq!(s.min_tightness.len(), 3);
    }

    #[test]
    fn derived_pinning_exceeds_leading_bound_for_flat_mobius() {
        // B1 = B2 = 1: the derived coupling allows |b_m| = 1 with s = 0.
        let r = region(PhiSpec::mobius_beta(0.5).unwrap(), 1, 0.0).with_pinning(Pinning::Derived);
        let rep = empirical_max(&r, Functional::AbsAm1, SearchConfig::new(8, 0).unwrap());
        assert!((rep.empirical_max - 1.0).abs() < 1e-12);
        assert!((rep.theoretical.value - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(rep.is_violation());
    }
}
