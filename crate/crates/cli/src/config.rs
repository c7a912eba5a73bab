//! Run configuration: a flat TOML file, overridden field by field by flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use twinrank_core::certify::CertifyConfig;
use twinrank_core::families::{FamilyId, GenerateConfig};
use twinrank_core::symalg::factor::FactorBudget;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub family: FamilyId,
    /// `p/q`; required by `generate`.
    pub alpha: Option<String>,
    pub count: usize,
    pub relation_bound: u32,
    pub doublings: u32,
    pub tolerance: f64,
    pub prime_count: usize,
    pub primes: Vec<u64>,
    pub digit_budget: usize,
    pub trial_bound: u64,
    pub rho_budget: u64,
    pub max_candidates: usize,
    pub out: Option<PathBuf>,
    /// Write `<out>.csv` next to the JSON lines.
    pub csv: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let c = CertifyConfig::default();
        let f = FactorBudget::default();
        let g = GenerateConfig::default();
        Self {
            family: g.family,
            alpha: None,
            count: 3,
            relation_bound: c.relation_bound,
            doublings: c.doublings,
            tolerance: c.tolerance,
            prime_count: c.prime_count,
            primes: c.primes,
            digit_budget: c.digit_budget,
            trial_bound: f.trial_bound,
            rho_budget: f.rho_iterations,
            max_candidates: g.max_candidates,
            out: None,
            csv: true,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            bail!("tolerance must be positive");
        }
        let budgets = [
            ("count", self.count as u64),
            ("relation_bound", self.relation_bound as u64),
            ("doublings", self.doublings as u64),
            ("digit_budget", self.digit_budget as u64),
            ("trial_bound", self.trial_bound),
            ("rho_budget", self.rho_budget),
            ("max_candidates", self.max_candidates as u64),
        ];
        for (name, v) in budgets {
            if v == 0 {
                bail!("{name} must be positive");
            }
        }
        Ok(())
    }

    pub fn certify(&self) -> CertifyConfig {
        CertifyConfig {
            relation_bound: self.relation_bound,
            doublings: self.doublings,
            tolerance: self.tolerance,
            prime_count: self.prime_count,
            primes: self.primes.clone(),
            digit_budget: self.digit_budget,
        }
    }

    pub fn generate(&self) -> GenerateConfig {
        GenerateConfig {
            family: self.family,
            certify: self.certify(),
            factor: FactorBudget { trial_bound: self.trial_bound, rho_iterations: self.rho_budget },
            max_candidates: self.max_candidates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let c = RunConfig { alpha: Some("5/2".into()), primes: vec![7, 11], ..RunConfig::default() };
        let s = toml::to_string(&c).unwrap();
        assert_eq!(toml::from_str::<RunConfig>(&s).unwrap(), c);
    }

    #[test]
    fn partial_files_fill_defaults() {
        let c: RunConfig = toml::from_str("family = \"thm53\"\nrelation_bound = 2\n").unwrap();
        assert_eq!(c.family, FamilyId::Thm53);
        assert_eq!(c.relation_bound, 2);
        assert_eq!(c.doublings, RunConfig::default().doublings);
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
    }

    #[test]
    fn rejects_zero_budgets() {
        let c = RunConfig { tolerance: 0.0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { rho_budget: 0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }
}
