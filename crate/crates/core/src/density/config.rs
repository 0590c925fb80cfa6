//! JSON experiment configurations and their result lines.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{domain, Result};

use super::{estimate_density, exhaustive_count, DensityEstimate, ExhaustiveCount, Model, Predicate};

/// `{"n": 100, "model": "uniform", "predicate": "sum-dominant", "trials": 100000, "seed": 7}`.
/// `model` is `"uniform"` or `"binomial"` (with `p`); `trials = 0` asks for an exhaustive
/// count; `sweep` replaces `n` with a list of sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: u32,
    #[serde(default = "uniform")]
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub predicate: String,
    #[serde(default)]
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<u32>>,
}

fn uniform() -> String {
    "uniform".into()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Estimate(DensityEstimate),
    Exact(ExhaustiveCount),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultLine {
    pub schema: u32,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// Hex SHA-256 of the canonical JSON of the config, seed included.
    pub config_hash: String,
    pub n: u32,
    pub result: Outcome,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn model(&self) -> Result<Model> {
        match (self.model.as_str(), self.p) {
            ("uniform", None) => Ok(Model::Uniform),
            ("uniform", Some(_)) => domain("the uniform model takes no p"),
            ("binomial", Some(p)) => Model::Binomial(p).validate(),
            ("binomial", None) => domain("the binomial model needs p"),
            (other, _) => domain(format!("unknown model {other:?}")),
        }
    }

    pub fn predicate(&self) -> Result<Predicate> {
        self.predicate.parse()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.sweep.clone().unwrap_or_else(|| vec![self.n])
    }

    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Runs every size in the config. Sampling needs a seed; fill it in beforehand.
    pub fn run(&self) -> Result<Vec<ResultLine>> {
        let model = self.model()?;
        let predicate = self.predicate()?;
        let hash = self.hash();
        let mut out = Vec::new();
        for n in self.sizes() {
            let result = if self.trials == 0 {
                if model != Model::Uniform {
                    return domain("exhaustive counts use the uniform model");
                }
                Outcome::Exact(exhaustive_count(n, &predicate)?)
            } else {
                let Some(seed) = self.seed else {
                    return domain("sampling needs a seed");
                };
                Outcome::Estimate(estimate_density(n, model, &predicate, self.trials, seed)?)
            };
            out.push(ResultLine { schema: 1, timestamp: unix_now(), config_hash: hash.clone(), n, result });
        }
        Ok(out)
    }
}

pub fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_run() {
        let cfg = ExperimentConfig::from_json(
            r#"{"n": 12, "predicate": "sum-dominant", "trials": 1000, "seed": 3, "sweep": [10, 12]}"#,
        )
        .unwrap();
        let lines = cfg.run().unwrap();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].config_hash.len(), 64);
        assert_eq!(lines[0].config_hash, cfg.hash());
        let json = serde_json::to_value(&lines[1]).unwrap();
        assert_eq!(json["result"]["model"], "uniform");
        assert_eq!(json["result"]["hits"], 0);
    }

    #[test]
    fn model_errors() {
        let bad = |s: &str| ExperimentConfig::from_json(s).unwrap().model().is_err();
        assert!(bad(r#"{"n":5,"model":"binomial","predicate":"always"}"#));
        assert!(bad(r#"{"n":5,"model":"uniform","p":0.5,"predicate":"always"}"#));
        assert!(bad(r#"{"n":5,"model":"poisson","predicate":"always"}"#));
        assert!(ExperimentConfig::from_json(r#"{"n":5,"predicate":"always","x":1}"#).is_err());
    }

    #[test]
    fn exhaustive_mode_and_seed_requirement() {
        let cfg = ExperimentConfig::from_json(r#"{"n":4,"predicate":"nonempty"}"#).unwrap();
        match &cfg.run().unwrap()[0].result {
            Outcome::Exact(c) => assert_eq!(c.count, 15),
            other => panic!("{other:?}"),
        }
        let cfg = ExperimentConfig::from_json(r#"{"n":4,"predicate":"nonempty","trials":5}"#).unwrap();
        assert!(cfg.run().is_err());
    }
}
