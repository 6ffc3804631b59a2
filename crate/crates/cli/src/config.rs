//! Settings merged from an optional TOML file and command-line flags.

use std::path::{Path, PathBuf};

use dwork_core::field::FieldDesc;
use dwork_core::{FieldContext, SuiteConfig, Tolerances};
use serde::Deserialize;

use crate::error::CliError;
use crate::{FieldArgs, Format};

#[derive(Deserialize, Default, Debug)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    cache_dir: Option<PathBuf>,
    seed: Option<u64>,
    tolerances: Option<Tolerances>,
    suite: Option<SuiteConfig>,
}

#[derive(Debug)]
pub struct Settings {
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub tolerances: Tolerances,
    pub suite: SuiteConfig,
}

impl Settings {
    pub fn resolve(
        path: Option<&Path>,
        format: Option<Format>,
        cache_dir: Option<PathBuf>,
        rounding_guard: Option<f64>,
        cancellation_tol: Option<f64>,
    ) -> Result<Settings, CliError> {
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        let mut suite = file.suite.unwrap_or_default();
        let mut tolerances = file.tolerances.unwrap_or(suite.tolerances);
        if let Some(g) = rounding_guard {
            tolerances.rounding_guard = g;
        }
        if let Some(c) = cancellation_tol {
            tolerances.cancellation = c;
        }
        if !(tolerances.rounding_guard > 0.0 && tolerances.rounding_guard < 0.5) {
            return Err(CliError::Usage(
                "rounding guard must lie in (0, 0.5)".into(),
            ));
        }
        suite.tolerances = tolerances;
        if let Some(s) = file.seed {
            suite.seed = s;
        }
        Ok(Settings {
            format: format.or(file.format).unwrap_or(Format::Text),
            cache_dir: cache_dir.or(file.cache_dir),
            tolerances,
            suite,
        })
    }

    /// Field context for `p^e`, going through the Gauss table cache when configured.
    pub fn context(&self, args: &FieldArgs) -> Result<FieldContext, CliError> {
        let field = FieldDesc::build(args.p, args.e, None)?;
        match &self.cache_dir {
            Some(dir) => Ok(dwork_core::cache::context_with_cache(dir, field, 1)?),
            None => Ok(FieldContext::new(field)),
        }
    }
}
