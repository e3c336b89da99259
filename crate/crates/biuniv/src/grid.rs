//! Grid files shared by `search` and `corollaries`:
//!
//! ```json
//! {"m": [1, 2, 3], "lambda": [0, 0.25, 0.5], "gamma": [0, 0.5, 1, "(m+1)/2"],
//!  "phi": ["mobius:0", "power:1/2"], "pinning": "printed"}
//! ```

use anyhow::{anyhow, bail, Context, Result};
use biuniv_core::bounds::CorollaryGrid;
use biuniv_core::membership::Pinning;
use biuniv_core::search::{GammaSpec, SearchGrid};
use serde::Deserialize;

use crate::phi_arg::parse_phi;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub m: Vec<usize>,
    pub lambda: Vec<f64>,
    #[serde(default)]
    pub gamma: Vec<GammaEntry>,
    pub phi: Vec<String>,
    #[serde(default)]
    pub pinning: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GammaEntry {
    Value(f64),
    Named(String),
}

impl GammaEntry {
    fn spec(&self) -> Result<GammaSpec> {
        match self {
            GammaEntry::Value(g) => Ok(GammaSpec::Fixed(*g)),
            GammaEntry::Named(s) if s.replace(' ', "") == "(m+1)/2" || s == "symmetric" => {
                Ok(GammaSpec::Symmetric)
            }
            GammaEntry::Named(s) => bail!("gamma entries are numbers or \"(m+1)/2\", got {s:?}"),
        }
    }
}

impl GridFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("grid file is not a valid grid spec")
    }

    pub fn search_grid(&self) -> Result<SearchGrid> {
        let pinning = match self.pinning.as_deref() {
            None => Pinning::Printed,
            Some(s) => s.parse().map_err(|_| anyhow!("pinning must be printed or derived, got {s:?}"))?,
        };
        Ok(SearchGrid {
            m: self.m.clone(),
            lambda: self.lambda.clone(),
            gamma: self.gamma.iter().map(GammaEntry::spec).collect::<Result<_>>()?,
            phi: self.phi_specs()?,
            pinning,
        })
    }

    /// `(m+1)/2` differs per `m`, so a grid using it splits into one
    /// corollary grid per `m`.
    pub fn corollary_grids(&self) -> Result<Vec<CorollaryGrid>> {
        let gamma: Vec<GammaSpec> = self.gamma.iter().map(GammaEntry::spec).collect::<Result<_>>()?;
        let phi = self.phi_specs()?;
        let split = gamma.contains(&GammaSpec::Symmetric);
        let groups: Vec<Vec<usize>> =
            if split { self.m.iter().map(|&m| vec![m]).collect() } else { vec![self.m.clone()] };
        Ok(groups
            .into_iter()
            .map(|ms| {
                let first = ms.first().copied().unwrap_or(1);
                CorollaryGrid {
                    gamma: gamma.iter().map(|g| g.resolve(first)).collect(),
                    m: ms,
                    lambda: self.lambda.clone(),
                    phi: phi.clone(),
                }
            })
            .collect())
    }

    fn phi_specs(&self) -> Result<Vec<biuniv_core::phi::PhiSpec>> {
        self.phi
            .iter()
            .map(|s| parse_phi(s).map_err(|e| anyhow!("phi entry {s:?}: {e}")))
            .collect()
    }
}

pub fn load_search_grid(text: &str) -> Result<SearchGrid> {
    GridFile::parse(text)?.search_grid()
}

pub fn load_corollary_grid(text: &str) -> Result<Vec<CorollaryGrid>> {
    GridFile::parse(text)?.corollary_grids()
}
