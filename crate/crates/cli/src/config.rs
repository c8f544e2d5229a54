//! TOML configuration mirroring the `coeff` flags.
//!
//! ```toml
//! group = "E8"
//! node = 8
//! support = "6:m,8:n"
//! s = "9/2"            # or "generic"
//! format = "latex"     # text | latex | json
//! blocks = "falling"   # rising | falling
//! grouped = true
//! strategy = "pruned"  # pruned | exhaustive
//! slow = false
//! cache_dir = "/tmp/degwhit-cache"
//!
//! [numeric]
//! target = 1e-10
//! zeta_terms = 32
//! pole_tolerance = 1e-9
//! bessel_max_refinements = 12
//! ```
//!
//! Flags given on the command line take precedence over the file.

use std::path::{Path, PathBuf};

use anyhow::Context;
use degwhit::numeval::NumericConfig;
use serde::Deserialize;

use crate::exit::Invalid;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub group: Option<String>,
    pub node: Option<usize>,
    pub support: Option<String>,
    pub s: Option<String>,
    pub format: Option<String>,
    pub blocks: Option<String>,
    pub grouped: Option<bool>,
    pub strategy: Option<String>,
    pub slow: Option<bool>,
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub numeric: NumericSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericSection {
    pub target: Option<f64>,
    pub zeta_terms: Option<usize>,
    pub pole_tolerance: Option<f64>,
    pub bessel_max_refinements: Option<u32>,
}

impl NumericSection {
    pub fn to_config(&self) -> NumericConfig {
        let d = NumericConfig::default();
        NumericConfig {
            target: self.target.unwrap_or(d.target),
            zeta_terms: self.zeta_terms.unwrap_or(d.zeta_terms),
            pole_tolerance: self.pole_tolerance.unwrap_or(d.pole_tolerance),
            bessel_max_refinements: self
                .bessel_max_refinements
                .unwrap_or(d.bessel_max_refinements),
        }
    }
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text)
            .map_err(|e| Invalid(format!("{}: {e}", path.display())))
            .map_err(anyhow::Error::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_schema() {
        let text = r#"
            group = "E8"
            node = 8
            support = "6:m,8:n"
            s = "9/2"
            blocks = "falling"
            [numeric]
            target = 1e-8
        "#;
        let c: ConfigFile = toml::from_str(text).unwrap();
        assert_eq!(c.node, Some(8));
        assert_eq!(c.numeric.to_config().target, 1e-8);
        assert_eq!(c.numeric.to_config().zeta_terms, 32);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<ConfigFile>("grop = \"E8\"").is_err());
    }
}
