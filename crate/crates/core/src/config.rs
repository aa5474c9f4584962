use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::EnumLimits;
use crate::recurrences::Hypotheses;
use crate::suite::SuiteConfig;

pub const PROFILE_ENV: &str = "GAMMA_DESK_PROFILE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Fast,
    Full,
    Custom,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            "custom" => Ok(Profile::Custom),
            _ => Err(Error::InvalidArgument(format!("unknown profile `{s}`"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Fast => "fast",
            Profile::Full => "full",
            Profile::Custom => "custom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub profile: Profile,
    pub max_n_table: u32,
    pub max_n_enum: usize,
    pub series_order: usize,
    pub out_dir: PathBuf,
    pub resume_from: Option<PathBuf>,
}

/// Overrides applied on top of a profile; any override makes it `custom`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_n_table: Option<u32>,
    pub max_n_enum: Option<usize>,
    pub series_order: Option<usize>,
}

impl RunConfig {
    pub fn for_profile(profile: Profile, out_dir: PathBuf) -> Self {
        let (max_n_table, max_n_enum, series_order) = match profile {
            Profile::Fast | Profile::Custom => (200, 7, 10),
            Profile::Full => (1000, 9, 14),
        };
        Self {
            profile,
            max_n_table,
            max_n_enum,
            series_order,
            out_dir,
            resume_from: None,
        }
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Result<Self> {
        let before = (self.max_n_table, self.max_n_enum, self.series_order);
        self.max_n_table = o.max_n_table.unwrap_or(self.max_n_table);
        self.max_n_enum = o.max_n_enum.unwrap_or(self.max_n_enum);
        self.series_order = o.series_order.unwrap_or(self.series_order);
        if (self.max_n_table, self.max_n_enum, self.series_order) != before {
            self.profile = Profile::Custom;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n_table == 0 || self.max_n_enum == 0 || self.series_order == 0 {
            return Err(Error::InvalidArgument("sizes must be at least 1".into()));
        }
        let limits = EnumLimits::default();
        if self.max_n_enum > limits.permutations {
            return Err(Error::InvalidArgument(format!(
                "max_n_enum {} exceeds the enumeration limit {}",
                self.max_n_enum, limits.permutations
            )));
        }
        Ok(())
    }

    pub fn suite(&self) -> SuiteConfig {
        SuiteConfig {
            max_n_enum: self.max_n_enum,
            max_n_table: self.max_n_table,
            series_order: self.series_order,
            limits: EnumLimits::default(),
            hypotheses: Hypotheses::default(),
        }
    }
}
