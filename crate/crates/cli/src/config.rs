//! Line-oriented `key = value` configuration files.
//!
//! Keys carry their unit as a suffix (`waist_m`, `power_w`, …) so a value
//! can never be read in the wrong unit. `#` starts a comment; blank lines
//! are ignored. Unknown and duplicate keys are rejected with the offending
//! line number.

use std::collections::HashMap;

use optlever::{BeamParams, GridScale, LeverConfig, MirrorSetup, TranslationSetup};

/// Every key the parser accepts.
const KNOWN_KEYS: [&str; 13] = [
    "wavelength_m",
    "waist_m",
    "power_w",
    "inertia_kgm2",
    "mass_kg",
    "mirror_z_m",
    "detect_z_m",
    "f_min_hz",
    "f_max_hz",
    "n_points",
    "scale",
    "channel",
    "asd",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { key: String, line: usize },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: key `{key}`: {message}")]
    UnitOrRangeViolation {
        key: String,
        line: usize,
        message: String,
    },
}

/// Which degree of freedom of the mirror the budget refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Rotation,
    Translation,
}

/// Parsed and validated configuration.
///
/// `detect_z_m` and `mass_kg` are optional at parse time; subcommands that
/// need them report a missing-key error when they are absent.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub wavelength_m: f64,
    pub waist_m: f64,
    pub power_w: f64,
    pub inertia_kgm2: f64,
    pub mass_kg: Option<f64>,
    pub mirror_z_m: f64,
    pub detect_z_m: Option<f64>,
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub n_points: usize,
    pub scale: GridScale,
    pub channel: Channel,
    pub asd: bool,
}

/// Raw entries with the line they came from, for diagnostics.
struct RawConfig(HashMap<String, (usize, String)>);

impl RawConfig {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = HashMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax { line });
            };
            let key = key.trim().to_owned();
            let value = value.trim().to_owned();
            if value.is_empty() {
                return Err(ConfigError::Syntax { line });
            }
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey { key, line });
            }
            if map.insert(key.clone(), (line, value)).is_some() {
                return Err(ConfigError::DuplicateKey { key, line });
            }
        }
        Ok(Self(map))
    }

    fn violation(key: &str, line: usize, message: impl Into<String>) -> ConfigError {
        ConfigError::UnitOrRangeViolation {
            key: key.to_owned(),
            line,
            message: message.into(),
        }
    }

    fn f64_opt(&self, key: &'static str) -> Result<Option<(usize, f64)>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some((line, value)) => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| Self::violation(key, *line, format!("`{value}` is not a number")))?;
                if !v.is_finite() {
                    return Err(Self::violation(key, *line, "value must be finite"));
                }
                Ok(Some((*line, v)))
            }
        }
    }

    fn f64_required(&self, key: &'static str) -> Result<(usize, f64), ConfigError> {
        self.f64_opt(key)?.ok_or(ConfigError::MissingKey(key))
    }

    fn positive(&self, key: &'static str) -> Result<f64, ConfigError> {
        let (line, v) = self.f64_required(key)?;
        if v <= 0.0 {
            return Err(Self::violation(key, line, format!("must be > 0, got {v}")));
        }
        Ok(v)
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = RawConfig::parse(text)?;

    let wavelength_m = raw.positive("wavelength_m")?;
    let waist_m = raw.positive("waist_m")?;
    let power_w = raw.positive("power_w")?;
    let inertia_kgm2 = raw.positive("inertia_kgm2")?;
    let (_, mirror_z_m) = raw.f64_required("mirror_z_m")?;
    let f_min_hz = raw.positive("f_min_hz")?;
    let (f_max_line, f_max_hz) = raw.f64_required("f_max_hz")?;
    if f_max_hz <= f_min_hz {
        return Err(RawConfig::violation(
            "f_max_hz",
            f_max_line,
            format!("must exceed f_min_hz = {f_min_hz}"),
        ));
    }

    let (n_line, n_value) = raw
        .0
        .get("n_points")
        .map(|(l, v)| (*l, v.clone()))
        .ok_or(ConfigError::MissingKey("n_points"))?;
    let n_points: usize = n_value
        .parse()
        .map_err(|_| RawConfig::violation("n_points", n_line, "must be a positive integer"))?;
    if n_points < 2 {
        return Err(RawConfig::violation("n_points", n_line, "must be at least 2"));
    }

    let mass_kg = match raw.f64_opt("mass_kg")? {
        None => None,
        Some((line, v)) => {
            if v <= 0.0 {
                return Err(RawConfig::violation(
                    "mass_kg",
                    line,
                    format!("must be > 0, got {v}"),
                ));
            }
            Some(v)
        }
    };

    let detect_z_m = match raw.f64_opt("detect_z_m")? {
        None => None,
        Some((line, v)) => {
            if v <= mirror_z_m {
                return Err(RawConfig::violation(
                    "detect_z_m",
                    line,
                    format!("detector must sit downstream of the mirror (mirror_z_m = {mirror_z_m})"),
                ));
            }
            Some(v)
        }
    };

    let scale = match raw.0.get("scale") {
        None => GridScale::Log,
        Some((line, v)) => match v.as_str() {
            "log" => GridScale::Log,
            "linear" => GridScale::Linear,
            other => {
                return Err(RawConfig::violation(
                    "scale",
                    *line,
                    format!("expected `log` or `linear`, got `{other}`"),
                ))
            }
        },
    };

    let channel = match raw.0.get("channel") {
        None => Channel::Rotation,
        Some((line, v)) => match v.as_str() {
            "rotation" => Channel::Rotation,
            "translation" => Channel::Translation,
            other => {
                return Err(RawConfig::violation(
                    "channel",
                    *line,
                    format!("expected `rotation` or `translation`, got `{other}`"),
                ))
            }
        },
    };
    if channel == Channel::Translation && mass_kg.is_none() {
        return Err(ConfigError::MissingKey("mass_kg"));
    }

    let asd = match raw.0.get("asd") {
        None => false,
        Some((line, v)) => match v.as_str() {
            "true" => true,
            "false" => false,
            other => {
                return Err(RawConfig::violation(
                    "asd",
                    *line,
                    format!("expected `true` or `false`, got `{other}`"),
                ))
            }
        },
    };

    Ok(RunConfig {
        wavelength_m,
        waist_m,
        power_w,
        inertia_kgm2,
        mass_kg,
        mirror_z_m,
        detect_z_m,
        f_min_hz,
        f_max_hz,
        n_points,
        scale,
        channel,
        asd,
    })
}

impl RunConfig {
    pub fn beam(&self) -> optlever::Result<BeamParams> {
        BeamParams::new(self.wavelength_m, self.waist_m)
    }

    pub fn mirror_setup(&self) -> optlever::Result<MirrorSetup> {
        MirrorSetup::new(
            self.beam()?,
            self.power_w,
            self.inertia_kgm2,
            self.mass_kg,
            self.mirror_z_m,
        )
    }

    pub fn lever_config(&self) -> anyhow::Result<LeverConfig> {
        let detect = self
            .detect_z_m
            .ok_or(ConfigError::MissingKey("detect_z_m"))?;
        Ok(LeverConfig::new(self.mirror_setup()?, detect)?)
    }

    pub fn translation_setup(&self) -> anyhow::Result<TranslationSetup> {
        let mass = self.mass_kg.ok_or(ConfigError::MissingKey("mass_kg"))?;
        let omega0 = self.beam()?.carrier_angular_frequency();
        Ok(TranslationSetup::new(self.power_w, omega0, mass)?)
    }

    /// FNV-1a hash of every parsed value, as a 16-hex-digit tag for CSV
    /// comment lines.
    pub fn fingerprint(&self) -> String {
        let mut hash: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                hash ^= u64::from(b);
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        for v in [
            self.wavelength_m,
            self.waist_m,
            self.power_w,
            self.inertia_kgm2,
            self.mass_kg.unwrap_or(f64::NAN),
            self.mirror_z_m,
            self.detect_z_m.unwrap_or(f64::NAN),
            self.f_min_hz,
            self.f_max_hz,
        ] {
            eat(&v.to_bits().to_le_bytes());
        }
        eat(&(self.n_points as u64).to_le_bytes());
        eat(&[
            matches!(self.scale, GridScale::Log) as u8,
            matches!(self.channel, Channel::Rotation) as u8,
            self.asd as u8,
        ]);
        format!("{hash:016x}")
    }
}
