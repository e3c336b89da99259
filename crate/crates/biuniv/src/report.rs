//! Serializable views of core results. JSON goes through `serde_json` and
//! CSV through `csv`; both print floats in shortest round-trip form, so the
//! two emissions of one run carry identical numbers.

use std::io::Write;

use anyhow::Result;
use biuniv_core::bounds::{
    all_bounds, h_gamma, reference_bounds, ClassParams, CorollaryRow, HGamma, ReferenceFamily,
};
use biuniv_core::membership::{MembershipCertificate, Pinning, SchwarzPoint};
use biuniv_core::phi::PhiSpec;
use biuniv_core::search::{SearchConfig, SearchReport, ValidationSummary, SEARCH_SPACE_NOTE};
use num_complex::Complex64;
use serde::Serialize;

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsOut {
    pub phi: String,
    pub m: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub bound_a_m1: f64,
    pub bound_a_2m1: f64,
    pub fekete_szego: f64,
    /// `None` when `B1^2 = 2 B2`.
    pub h_gamma: Option<f64>,
    pub branch: BranchOut,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchOut {
    pub a_m1: &'static str,
    pub a_2m1: &'static str,
    pub fekete_szego: &'static str,
}

#[derive(Serialize)]
struct BoundsCsv<'a> {
    phi: &'a str,
    m: usize,
    lambda: f64,
    gamma: f64,
    bound_a_m1: f64,
    bound_a_2m1: f64,
    fekete_szego: f64,
    h_gamma: Option<f64>,
    branch_a_m1: &'static str,
    branch_a_2m1: &'static str,
    branch_fekete_szego: &'static str,
    degenerate: bool,
}

impl BoundsOut {
    pub fn new(phi: &PhiSpec, p: &ClassParams) -> Self {
        let b = all_bounds(phi, p);
        Self {
            phi: phi.label().to_string(),
            m: p.m,
            lambda: p.lambda,
            gamma: p.gamma,
            bound_a_m1: b.a_m1.value,
            bound_a_2m1: b.a_2m1.value,
            fekete_szego: b.fekete_szego.value,
            h_gamma: match h_gamma(phi, p) {
                HGamma::Value(h) => Some(h),
                HGamma::Degenerate => None,
            },
            branch: BranchOut {
                a_m1: b.a_m1.branch.as_str(),
                a_2m1: b.a_2m1.branch.as_str(),
                fekete_szego: b.fekete_szego.branch.as_str(),
            },
            degenerate: b.fekete_szego.degenerate,
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.serialize(BoundsCsv {
            phi: &self.phi,
            m: self.m,
            lambda: self.lambda,
            gamma: self.gamma,
            bound_a_m1: self.bound_a_m1,
            bound_a_2m1: self.bound_a_2m1,
            fekete_szego: self.fekete_szego,
            h_gamma: self.h_gamma,
            branch_a_m1: self.branch.a_m1,
            branch_a_2m1: self.branch.a_2m1,
            branch_fekete_szego: self.branch.fekete_szego,
            degenerate: self.degenerate,
        })?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointOut {
    pub b_m: [f64; 2],
    pub b_2m: [f64; 2],
    pub c_m: [f64; 2],
    pub c_2m: [f64; 2],
}

impl From<&SchwarzPoint> for PointOut {
    fn from(p: &SchwarzPoint) -> Self {
        Self { b_m: pair(p.b_m), b_2m: pair(p.b_2m), c_m: pair(p.c_m), c_2m: pair(p.c_2m) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateOut {
    pub phi: String,
    pub m: usize,
    pub lambda: f64,
    pub order: usize,
    pub feasible: bool,
    pub point: PointOut,
    pub u_coeffs: Vec<[f64; 2]>,
    pub v_coeffs: Vec<[f64; 2]>,
    pub max_residual: f64,
    pub residuals: Vec<f64>,
    pub failures: Vec<&'static str>,
}

impl CertificateOut {
    pub fn new(cert: &MembershipCertificate, phi: &PhiSpec, p: &ClassParams) -> Self {
        Self {
            phi: phi.label().to_string(),
            m: p.m,
            lambda: p.lambda,
            order: cert.order,
            feasible: cert.feasible,
            point: (&cert.point).into(),
            u_coeffs: cert.u_coeffs.iter().copied().map(pair).collect(),
            v_coeffs: cert.v_coeffs.iter().copied().map(pair).collect(),
            max_residual: cert.residuals.iter().copied().fold(0.0, f64::max),
            residuals: cert.residuals.clone(),
            failures: cert.failures.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsOut {
    pub m: usize,
    pub lambda: f64,
    pub gamma: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoreticalOut {
    pub value: f64,
    pub branch: &'static str,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellOut {
    pub phi: String,
    pub params: ParamsOut,
    pub functional: &'static str,
    pub theoretical: TheoreticalOut,
    pub empirical: f64,
    pub argmax: PointOut,
    pub tightness: f64,
    pub grid_size: usize,
    pub samples_rejected: usize,
    pub violation: bool,
}

impl From<&SearchReport> for CellOut {
    fn from(r: &SearchReport) -> Self {
        Self {
            phi: r.phi.label().to_string(),
            params: ParamsOut { m: r.params.m, lambda: r.params.lambda, gamma: r.functional.gamma() },
            functional: r.functional.id(),
            theoretical: TheoreticalOut {
                value: r.theoretical.value,
                branch: r.theoretical.branch.as_str(),
                degenerate: r.theoretical.degenerate,
            },
            empirical: r.empirical_max,
            argmax: (&r.argmax).into(),
            tightness: r.tightness,
            grid_size: r.grid_size,
            samples_rejected: r.samples_rejected,
            violation: r.is_violation(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOut {
    pub note: &'static str,
    pub pinning: &'static str,
    pub density: usize,
    pub samples: usize,
    pub cells: Vec<CellOut>,
    /// Indices into `cells`.
    pub violations: Vec<usize>,
    pub min_tightness: std::collections::BTreeMap<&'static str, f64>,
}

impl SearchOut {
    pub fn new(summary: &ValidationSummary, config: SearchConfig, pinning: Pinning) -> Self {
        Self {
            note: SEARCH_SPACE_NOTE,
            pinning: pinning.as_str(),
            density: config.density,
            samples: config.samples,
            cells: summary.reports.iter().map(CellOut::from).collect(),
            violations: summary.violations.clone(),
            min_tightness: summary.min_tightness.iter().copied().collect(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "phi", "m", "lambda", "gamma", "functional", "theoretical", "branch", "degenerate",
            "empirical", "tightness", "argmax_b_m_re", "argmax_b_m_im", "argmax_b_2m_re",
            "argmax_b_2m_im", "argmax_c_2m_re", "argmax_c_2m_im", "grid_size", "samples_rejected",
            "violation",
        ])?;
        for c in &self.cells {
            w.write_record([
                c.phi.clone(),
                c.params.m.to_string(),
                c.params.lambda.to_string(),
                c.params.gamma.map(|g| g.to_string()).unwrap_or_default(),
                c.functional.to_string(),
                c.theoretical.value.to_string(),
                c.theoretical.branch.to_string(),
                c.theoretical.degenerate.to_string(),
                c.empirical.to_string(),
                c.tightness.to_string(),
                c.argmax.b_m[0].to_string(),
                c.argmax.b_m[1].to_string(),
                c.argmax.b_2m[0].to_string(),
                c.argmax.b_2m[1].to_string(),
                c.argmax.c_2m[0].to_string(),
                c.argmax.c_2m[1].to_string(),
                c.grid_size.to_string(),
                c.samples_rejected.to_string(),
                c.violation.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryOut {
    pub id: &'static str,
    pub phi: String,
    pub m: usize,
    pub lambda: f64,
    pub gamma: Option<f64>,
    pub theorem: f64,
    pub printed: Option<f64>,
    pub agreement: &'static str,
}

impl From<&CorollaryRow> for CorollaryOut {
    fn from(r: &CorollaryRow) -> Self {
        Self {
            id: r.corollary.id(),
            phi: r.phi.label().to_string(),
            m: r.params.m,
            lambda: r.params.lambda,
            gamma: r.uses_gamma.then_some(r.params.gamma),
            theorem: r.theorem,
            printed: r.printed,
            agreement: r.agreement.as_str(),
        }
    }
}

/// One row of the paper-versus-earlier-bounds table.
#[derive(Clone, Debug, Serialize)]
pub struct CompareOut {
    pub family: &'static str,
    pub param: f64,
    pub m: usize,
    pub lambda: f64,
    pub phi: String,
    pub a_m1: f64,
    pub a_m1_reference: f64,
    pub a_2m1: f64,
    pub a_2m1_reference: f64,
    /// The new bound is at most the earlier one.
    pub a_m1_improves: bool,
    pub a_2m1_improves: bool,
}

impl CompareOut {
    pub fn new(family: ReferenceFamily, param: f64, p: &ClassParams) -> Result<Self> {
        let phi = match family {
            ReferenceFamily::AlphaClass => PhiSpec::power_alpha(param)?,
            ReferenceFamily::BetaClass => PhiSpec::mobius_beta(param)?,
        };
        let (ref_m1, ref_2m1) = reference_bounds(family, param, p)?;
        let b = all_bounds(&phi, p);
        Ok(Self {
            family: match family {
                ReferenceFamily::AlphaClass => "alpha",
                ReferenceFamily::BetaClass => "beta",
            },
            param,
            m: p.m,
            lambda: p.lambda,
            phi: phi.label().to_string(),
            a_m1: b.a_m1.value,
            a_m1_reference: ref_m1,
            a_2m1: b.a_2m1.value,
            a_2m1_reference: ref_2m1,
            a_m1_improves: b.a_m1.value <= ref_m1,
            a_2m1_improves: b.a_2m1.value <= ref_2m1,
        })
    }
}

/// Writes `rows` as CSV with a header taken from the field names.
pub fn write_rows_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
