//! The JSON problem description read by `analyze` and `flow`.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::catalog::{build_homomorphism, Homomorphism, SubgroupId};
use crate::flow::Derivation;
use crate::observability::TimeGrid;

/// Derivation entries; omitted entries are zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DerivationSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl From<DerivationSpec> for Derivation {
    fn from(s: DerivationSpec) -> Self {
        Derivation::new(s.a, s.b, s.c, s.d, s.e, s.f)
    }
}

impl From<Derivation> for DerivationSpec {
    fn from(d: Derivation) -> Self {
        Self {
            a: d.a,
            b: d.b,
            c: d.c,
            d: d.d,
            e: d.e,
            f: d.f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismSpec {
    pub target: String,
    #[serde(default)]
    pub coefficients: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_hat: Option<f64>,
}

impl HomomorphismSpec {
    pub fn subgroup(&self) -> Result<SubgroupId, CliError> {
        let line = match (self.a_hat, self.b_hat) {
            (None, None) => None,
            (a, b) => Some((a.unwrap_or(0.0), b.unwrap_or(0.0))),
        };
        if matches!(self.target.as_str(), "H8" | "H9") && line.is_none() {
            return Err(CliError::Validation(format!(
                "{} needs a_hat and b_hat",
                self.target
            )));
        }
        SubgroupId::parse(&self.target, line).map_err(|e| match e {
            crate::catalog::CatalogError::UnknownTag(_) => CliError::Parse(e.to_string()),
            other => CliError::Validation(other.to_string()),
        })
    }

    pub fn build(&self) -> Result<Homomorphism, CliError> {
        build_homomorphism(self.subgroup()?, &self.coefficients)
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Output-separation tolerance used when checking witnesses.
    pub tol: f64,
    /// Horizon of the witness check.
    pub t_max: f64,
    /// Number of sample times in `[0, t_max]`.
    pub samples: usize,
    /// RK4 steps for `flow`.
    pub steps: usize,
    pub seed: u64,
    /// Half-width of the symmetric grid used for the `(f1, f2)` test.
    pub grid_t_max: f64,
    pub grid_half_points: usize,
}

impl Default for Options {
    fn default() -> Self {
        let grid = TimeGrid::default();
        Self {
            tol: crate::observability::SEPARATION_TOL,
            t_max: 4.0,
            samples: 64,
            steps: 1000,
            seed: 0,
            grid_t_max: grid.t_max,
            grid_half_points: grid.half_points,
        }
    }
}

impl Options {
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Validation(format!("options.{name} must be positive, got {v}")))
            }
        };
        positive("tol", self.tol)?;
        positive("t_max", self.t_max)?;
        positive("grid_t_max", self.grid_t_max)?;
        if self.samples < 2 {
            return Err(CliError::Validation("options.samples must be at least 2".into()));
        }
        if self.steps == 0 {
            return Err(CliError::Validation("options.steps must be at least 1".into()));
        }
        if self.grid_half_points == 0 {
            return Err(CliError::Validation("options.grid_half_points must be at least 1".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid {
            t_max: self.grid_t_max,
            half_points: self.grid_half_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub derivation: DerivationSpec,
    pub homomorphism: HomomorphismSpec,
    #[serde(default)]
    pub options: Options,
}

/// A parsed and validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub derivation: Derivation,
    pub homomorphism: Homomorphism,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn validate(self) -> Result<Problem, CliError> {
        let derivation: Derivation = self.derivation.into();
        if !derivation.is_finite() {
            return Err(CliError::Validation("derivation entries must be finite".into()));
        }
        self.options.validate()?;
        let homomorphism = self.homomorphism.build()?;
        Ok(Problem {
            spec: self,
            derivation,
            homomorphism,
        })
    }
}

pub fn load_problem(text: &str) -> Result<Problem, CliError> {
    ProblemSpec::parse(text)?.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spec_parses_with_defaults() {
        let p = load_problem(
            r#"{"derivation": {"e": 1}, "homomorphism": {"target": "H1", "coefficients": [1, 0, 0, 1]}}"#,
        )
        .unwrap();
        assert_eq!(p.derivation, Derivation::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0));
        assert_eq!(p.spec.options, Options::default());
    }

    #[test]
    fn degenerate_line_is_a_validation_error() {
        let err = load_problem(
            r#"{"derivation": {}, "homomorphism": {"target": "H8", "coefficients": [1, 1], "a_hat": 0, "b_hat": 2}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err:?}");
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(load_problem("{"), Err(CliError::Parse(_))));
        assert!(matches!(
            load_problem(r#"{"derivation": {"g": 1}, "homomorphism": {"target": "H1"}}"#),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn bad_options_are_rejected() {
        let err = load_problem(
            r#"{"derivation": {}, "homomorphism": {"target": "H3", "coefficients": [1, 0]}, "options": {"samples": 1}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Validation(_)));
    }
}
