//! Experiment configuration: defaults, the flat `key = value` config file
//! format, CLI overrides, and validation.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::landscape::PRESET_NAMES;
use crate::mechanism::{MechanismConfig, MechanismKind};
use crate::variation::VariationConfig;

/// Environment variable consulted for the default output directory.
pub const OUTPUT_DIR_ENV: &str = "DIVBENCH_OUT";

/// Default output directory: `$DIVBENCH_OUT` if set, `results` otherwise.
pub fn default_output_dir() -> PathBuf {
    std::env::var_os(OUTPUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("results"))
}

/// Everything needed to reproduce an experiment batch.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: MechanismKind,
    pub problem: String,
    pub mu: usize,
    pub lambda: usize,
    pub genome_length: usize,
    pub generations: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub variation: VariationConfig,
    pub mechanism: MechanismConfig,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithm: MechanismKind::Basic,
            problem: "onemax".to_string(),
            mu: 50,
            lambda: 30,
            genome_length: 100,
            generations: 450,
            runs: 30,
            base_seed: 42,
            variation: VariationConfig::for_length(100),
            mechanism: MechanismConfig::default(),
            output_dir: default_output_dir(),
        }
    }
}

impl ExperimentConfig {
    pub fn new(algorithm: MechanismKind, problem: &str) -> Self {
        ExperimentConfig {
            algorithm,
            problem: problem.to_string(),
            ..ExperimentConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, message: String| Err(Error::config(name, message));
        if self.runs == 0 {
            return field("runs", "must be at least 1".into());
        }
        if self.generations == 0 {
            return field("generations", "must be at least 1".into());
        }
        if self.mu == 0 {
            return field("mu", "must be at least 1".into());
        }
        if self.lambda == 0 {
            return field("lambda", "must be at least 1".into());
        }
        if self.genome_length == 0 {
            return field("genome_length", "must be at least 1".into());
        }
        if !PRESET_NAMES.contains(&self.problem.as_str()) {
            return field(
                "problem",
                format!(
                    "unknown problem `{}`; known problems: {}",
                    self.problem,
                    PRESET_NAMES.join(", ")
                ),
            );
        }
        for (name, p) in [
            ("p_crossover", self.variation.p_crossover),
            ("p_mutation", self.variation.p_mutation),
            ("per_bit_flip_prob", self.variation.per_bit_flip_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return field(name, format!("must lie in [0, 1], got {p}"));
            }
        }
        if self.variation.p_crossover + self.variation.p_mutation > 1.0 + 1e-12 {
            return field(
                "p_crossover",
                format!(
                    "p_crossover + p_mutation must not exceed 1, got {}",
                    self.variation.p_crossover + self.variation.p_mutation
                ),
            );
        }
        if self.variation.tournament_size == 0 {
            return field("tournament_size", "must be at least 1".into());
        }
        let mech = &self.mechanism;
        match self.algorithm {
            MechanismKind::Sharing => {
                if mech.sharing_radius == 0 || mech.sharing_radius > self.genome_length {
                    return field(
                        "sharing_radius",
                        format!("must lie in 1..={}", self.genome_length),
                    );
                }
                if mech.sharing_alpha <= 0.0 {
                    return field("sharing_alpha", "must be positive".into());
                }
            }
            MechanismKind::Clearing | MechanismKind::Hybrid => {
                if mech.clearing_radius == 0 || mech.clearing_radius > self.genome_length {
                    return field(
                        "clearing_radius",
                        format!("must lie in 1..={}", self.genome_length),
                    );
                }
                if mech.niche_cap == 0 {
                    return field("niche_cap", "must be at least 1".into());
                }
            }
            MechanismKind::Crowding => {
                if self.mu % 2 != 0 {
                    return field("mu", "must be even for crowding".into());
                }
            }
            MechanismKind::Incest => {
                if mech.incest_threshold_decrement == 0 {
                    return field("incest_decrement", "must be at least 1".into());
                }
            }
            MechanismKind::Islands => {
                let c = mech.island_count;
                if c == 0 {
                    return field("islands", "must be at least 1".into());
                }
                if self.mu % c != 0 {
                    return field("islands", format!("must divide mu = {}", self.mu));
                }
                if self.lambda % c != 0 {
                    return field("islands", format!("must divide lambda = {}", self.lambda));
                }
                if mech.migration_interval == 0 {
                    return field("migration_interval", "must be at least 1".into());
                }
                if mech.emigrants_per_island == 0 || mech.emigrants_per_island >= self.mu / c {
                    return field(
                        "emigrants",
                        format!("must lie in 1..{}", self.mu / c),
                    );
                }
            }
            MechanismKind::Basic | MechanismKind::Unique => {}
        }
        Ok(())
    }
}

/// CLI flag overrides; every one set here wins over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub algorithm: Option<String>,
    pub problem: Option<String>,
    pub runs: Option<usize>,
    pub generations: Option<usize>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        if let Some(algorithm) = &self.algorithm {
            cfg.algorithm = algorithm.parse()?;
        }
        if let Some(problem) = &self.problem {
            cfg.problem = problem.clone();
        }
        if let Some(runs) = self.runs {
            cfg.runs = runs;
        }
        if let Some(generations) = self.generations {
            cfg.generations = generations;
        }
        if let Some(seed) = self.seed {
            cfg.base_seed = seed;
        }
        if let Some(dir) = &self.output_dir {
            cfg.output_dir = dir.clone();
        }
        Ok(())
    }
}

/// Parse the flat `key = value` config format: one pair per line, blank
/// lines and `#` comments ignored.
pub fn parse_config_file(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}

pub(crate) fn parse_config_str(text: &str) -> Result<ExperimentConfig> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::config(
                format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }

    let mut cfg = ExperimentConfig::default();
    // Resolve the genome length first so the per-bit flip default tracks it
    // regardless of key order; an explicit per_bit_flip_prob still wins in
    // the pass below.
    if let Some((_, v)) = pairs.iter().find(|(k, _)| k == "genome_length") {
        cfg.genome_length = parse_value("genome_length", v)?;
        cfg.variation = VariationConfig::for_length(cfg.genome_length);
    }

    for (key, value) in &pairs {
        match key.as_str() {
            "algorithm" => cfg.algorithm = value.parse()?,
            "problem" => cfg.problem = value.clone(),
            "mu" => cfg.mu = parse_value(key, value)?,
            "lambda" => cfg.lambda = parse_value(key, value)?,
            "genome_length" => {} // handled above
            "generations" => cfg.generations = parse_value(key, value)?,
            "runs" => cfg.runs = parse_value(key, value)?,
            "seed" => cfg.base_seed = parse_value(key, value)?,
            "out_dir" => cfg.output_dir = PathBuf::from(value),
            "p_crossover" => cfg.variation.p_crossover = parse_value(key, value)?,
            "p_mutation" => cfg.variation.p_mutation = parse_value(key, value)?,
            "per_bit_flip_prob" => cfg.variation.per_bit_flip_prob = parse_value(key, value)?,
            "tournament_size" => cfg.variation.tournament_size = parse_value(key, value)?,
            "sharing_radius" => cfg.mechanism.sharing_radius = parse_value(key, value)?,
            "sharing_alpha" => cfg.mechanism.sharing_alpha = parse_value(key, value)?,
            "clearing_radius" => cfg.mechanism.clearing_radius = parse_value(key, value)?,
            "niche_cap" => cfg.mechanism.niche_cap = parse_value(key, value)?,
            "incest_threshold" => {
                cfg.mechanism.incest_threshold_initial = parse_value(key, value)?
            }
            "incest_decrement" => {
                cfg.mechanism.incest_threshold_decrement = parse_value(key, value)?
            }
            "islands" => cfg.mechanism.island_count = parse_value(key, value)?,
            "migration_interval" => cfg.mechanism.migration_interval = parse_value(key, value)?,
            "emigrants" => cfg.mechanism.emigrants_per_island = parse_value(key, value)?,
            other => {
                return Err(Error::config(other, "unknown configuration key".to_string()))
            }
        }
    }
    Ok(cfg)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::config(key, format!("cannot parse `{value}`: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_standard_protocol() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.mu, 50);
        assert_eq!(cfg.lambda, 30);
        assert_eq!(cfg.genome_length, 100);
        assert_eq!(cfg.generations, 450);
        assert_eq!(cfg.runs, 30);
        assert_eq!(cfg.variation.p_crossover, 0.65);
        assert_eq!(cfg.variation.p_mutation, 0.35);
        assert_eq!(cfg.variation.per_bit_flip_prob, 0.01);
        assert_eq!(cfg.variation.tournament_size, 3);
        cfg.validate().unwrap();
    }

    #[test]
    fn config_file_round_trip() {
        let text = "\
# comment line
algorithm = clearing
problem = twomax
runs = 5          # trailing comment
generations = 120
seed = 777
mu = 20
lambda = 10
clearing_radius = 30
out_dir = /tmp/somewhere
";
        let cfg = parse_config_str(text).unwrap();
        assert_eq!(cfg.algorithm, MechanismKind::Clearing);
        assert_eq!(cfg.problem, "twomax");
        assert_eq!(cfg.runs, 5);
        assert_eq!(cfg.generations, 120);
        assert_eq!(cfg.base_seed, 777);
        assert_eq!(cfg.mechanism.clearing_radius, 30);
        assert_eq!(cfg.output_dir, PathBuf::from("/tmp/somewhere"));
    }

    #[test]
    fn genome_length_retunes_flip_probability() {
        let cfg = parse_config_str("genome_length = 50").unwrap();
        assert_eq!(cfg.variation.per_bit_flip_prob, 0.02);
        let cfg = parse_config_str("genome_length = 50\nper_bit_flip_prob = 0.1").unwrap();
        assert_eq!(cfg.variation.per_bit_flip_prob, 0.1);
    }

    #[test]
    fn unknown_key_is_config_error() {
        let err = parse_config_str("bogus = 1").unwrap_err();
        assert!(matches!(err, Error::Config { field, .. } if field == "bogus"));
    }

    #[test]
    fn malformed_line_is_config_error() {
        assert!(parse_config_str("just words").is_err());
    }

    #[test]
    fn validation_reports_the_failing_field() {
        let mut cfg = ExperimentConfig::default();
        cfg.runs = 0;
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field, .. }) if field == "runs"
        ));

        let mut cfg = ExperimentConfig::new(MechanismKind::Islands, "onemax");
        cfg.mechanism.island_count = 7;
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field, .. }) if field == "islands"
        ));

        let mut cfg = ExperimentConfig::new(MechanismKind::Sharing, "onemax");
        cfg.mechanism.sharing_radius = 500;
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field, .. }) if field == "sharing_radius"
        ));

        let mut cfg = ExperimentConfig::default();
        cfg.problem = "bogus".into();
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config { field, .. }) if field == "problem"
        ));
    }

    #[test]
    fn overrides_win_over_file_values() {
        let mut cfg = parse_config_str("algorithm = basic\nruns = 30").unwrap();
        let overrides = Overrides {
            algorithm: Some("hybrid".into()),
            runs: Some(3),
            ..Overrides::default()
        };
        overrides.apply(&mut cfg).unwrap();
        assert_eq!(cfg.algorithm, MechanismKind::Hybrid);
        assert_eq!(cfg.runs, 3);
    }
}
