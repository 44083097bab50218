//! TOML experiment configs, translated into the equivalent command line.

use serde::Deserialize;
use std::path::PathBuf;

/// One run of one subcommand. Rationals are `"num/den"` strings.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Subcommand words, e.g. `"verify"` or `"gs3 verify"`.
    pub command: String,
    pub input: Option<PathBuf>,
    pub partition: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub witness: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub tsv: Option<PathBuf>,
    pub kind: Option<String>,
    pub seed: Option<u64>,
    pub sizes: Option<Vec<usize>>,
    pub d: Option<usize>,
    pub omega: Option<usize>,
    pub density: Option<String>,
    pub p: Option<u8>,
    pub n: Option<usize>,
    pub points: Option<usize>,
    pub zero_fraction: Option<f64>,
    pub attempts: Option<usize>,
    pub delta: Option<String>,
    pub mode: Option<String>,
    pub cap: Option<usize>,
    pub iterations: Option<usize>,
    pub epsilon: Option<String>,
    pub budget: Option<String>,
    pub strategy: Option<String>,
    pub eta: Option<String>,
    pub max_steps: Option<usize>,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    /// Argument vector for the subcommand; keys the subcommand does not
    /// accept are rejected when it is parsed.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec!["avgreg".to_string()];
        a.extend(self.command.split_whitespace().map(String::from));
        let mut flag = |name: &str, v: Option<String>| {
            if let Some(v) = v {
                a.push(format!("--{name}"));
                a.push(v);
            }
        };
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        flag("input", path(&self.input));
        flag("partition", path(&self.partition));
        flag("out", path(&self.out));
        flag("witness", path(&self.witness));
        flag("report", path(&self.report));
        flag("tsv", path(&self.tsv));
        flag("kind", self.kind.clone());
        flag("seed", self.seed.map(|v| v.to_string()));
        flag(
            "sizes",
            self.sizes.as_ref().map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        );
        flag("d", self.d.map(|v| v.to_string()));
        flag("omega", self.omega.map(|v| v.to_string()));
        flag("density", self.density.clone());
        flag("p", self.p.map(|v| v.to_string()));
        flag("n", self.n.map(|v| v.to_string()));
        flag("points", self.points.map(|v| v.to_string()));
        flag("zero-fraction", self.zero_fraction.map(|v| v.to_string()));
        flag("attempts", self.attempts.map(|v| v.to_string()));
        flag("delta", self.delta.clone());
        flag("mode", self.mode.clone());
        flag("cap", self.cap.map(|v| v.to_string()));
        flag("iterations", self.iterations.map(|v| v.to_string()));
        flag("epsilon", self.epsilon.clone());
        flag("budget", self.budget.clone());
        flag("strategy", self.strategy.clone());
        flag("eta", self.eta.clone());
        flag("max-steps", self.max_steps.map(|v| v.to_string()));
        flag("threads", self.threads.map(|v| v.to_string()));
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ExperimentConfig::parse("command = \"verify\"\nepsilon = \"1/10\"\n").is_ok());
        assert!(ExperimentConfig::parse("command = \"verify\"\nepsilonn = \"1/10\"\n").is_err());
    }

    #[test]
    fn args_follow_the_command_words() {
        let c = ExperimentConfig::parse("command = \"gs3 verify\"\ninput = \"a.json\"\nthreads = 2\n").unwrap();
        assert_eq!(c.to_args(), ["avgreg", "gs3", "verify", "--input", "a.json", "--threads", "2"]);
    }
}
