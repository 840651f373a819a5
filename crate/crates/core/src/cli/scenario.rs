//! Versioned JSON scenario files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nefcert::{ConfigSpec, NefScenario, PieceSpec};
use crate::picard::{build_surface, DivisorClass, SurfaceModel, SurfaceSpec};
use crate::rational::Q;

pub const SCHEMA_VERSION: u32 = 1;

/// A coefficient vector in the model basis, written as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Entry>", into = "Vec<Entry>")]
pub struct Coeffs(pub Vec<Q>);

/// One rational, parsed separately so errors point at the element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
struct Entry(#[serde(with = "crate::rational::serde_q")] Q);

impl From<Vec<Entry>> for Coeffs {
    fn from(v: Vec<Entry>) -> Self {
        Coeffs(v.into_iter().map(|e| e.0).collect())
    }
}

impl From<Coeffs> for Vec<Entry> {
    fn from(c: Coeffs) -> Self {
        c.0.into_iter().map(Entry).collect()
    }
}

/// A decomposition piece referring to a named divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceRef {
    Interpolate(String),
    Named(Vec<(String, u32)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum NefPlan {
    /// Run the scenario's nefness certificate; the class must be the scenario target.
    Certificate,
    Anticanonical {
        #[serde(with = "crate::rational::serde_q")]
        k_multiple: Q,
        #[serde(default)]
        pullbacks: Vec<(String, u32)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BpfStep {
    AddPullback(String),
    Extend { e: String, l: String, d: String, nef: NefPlan },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpfPlan {
    pub l: String,
    pub nef: NefPlan,
    #[serde(default)]
    pub centers_off_minus_two: bool,
    #[serde(default)]
    pub steps: Vec<BpfStep>,
    #[serde(default)]
    pub expect: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: String,
    pub omega: String,
    #[serde(default)]
    pub aut_dim: Option<i64>,
    #[serde(default)]
    pub expected_dim: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub surface: Option<SurfaceSpec>,
    #[serde(default)]
    pub divisors: BTreeMap<String, Coeffs>,
    #[serde(default)]
    pub points: Option<ConfigSpec>,
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub decomposition: Option<Vec<PieceRef>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub attempts: Option<u32>,
    #[serde(default)]
    pub bpf: Option<BpfPlan>,
    #[serde(default)]
    pub families: Option<Vec<FamilySpec>>,
}

/// Parses scenario text; errors carry the JSON path, line and column.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let s: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Scenario(format!(
            "at {path} (line {}, column {}): {}",
            inner.line(),
            inner.column(),
            strip_position(&inner.to_string())
        ))
    })?;
    s.validate()?;
    Ok(s)
}

fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |i| &msg[..i])
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| match e {
        Error::Scenario(m) => Error::Scenario(format!("{}: {m}", path.display())),
        other => other,
    })
}

impl Scenario {
    fn validate(&self) -> Result<()> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::Scenario(format!(
                "at version: unsupported schema version {}, expected {SCHEMA_VERSION}",
                self.version
            )));
        }
        let model = self.model()?;
        for (name, c) in &self.divisors {
            if c.0.len() != model.rank() {
                return Err(Error::Scenario(format!(
                    "at divisors.{name}: expected {} coefficients, got {}",
                    model.rank(),
                    c.0.len()
                )));
            }
        }
        if let Some(t) = &self.target {
            self.divisor_ref("target", t)?;
        }
        for (k, p) in self.decomposition.iter().flatten().enumerate() {
            if let PieceRef::Interpolate(n) = p {
                self.divisor_ref(&format!("decomposition[{k}]"), n)?;
            }
        }
        Ok(())
    }

    fn divisor_ref(&self, at: &str, name: &str) -> Result<&Coeffs> {
        self.divisors
            .get(name)
            .ok_or_else(|| Error::Scenario(format!("at {at}: unknown divisor {name:?}")))
    }

    /// The surface, from `surface` or else from the point configuration.
    pub fn surface_spec(&self) -> Result<SurfaceSpec> {
        match (&self.surface, &self.points) {
            (Some(s), Some(p)) => {
                let from_points = p.surface_spec();
                let same = s.base == from_points.base
                    && s.blowups.len() == from_points.blowups.len()
                    && s.blowups.iter().zip(&from_points.blowups).all(|(a, b)| a.center == b.center);
                if !same {
                    return Err(Error::Scenario(
                        "at surface: blow-up centers disagree with the point configuration".into(),
                    ));
                }
                Ok(s.clone())
            }
            (Some(s), None) => Ok(s.clone()),
            (None, Some(p)) => Ok(p.surface_spec()),
            (None, None) => Err(Error::Scenario("scenario has neither surface nor points".into())),
        }
    }

    pub fn model(&self) -> Result<SurfaceModel> {
        build_surface(&self.surface_spec()?).map_err(|e| match e {
            Error::Structure(m) => Error::Scenario(format!("at surface: {m}")),
            other => other,
        })
    }

    /// Resolves a scenario divisor, a named class of the model, or `0`.
    pub fn resolve(&self, model: &SurfaceModel, name: &str) -> Result<DivisorClass> {
        if let Some(c) = self.divisors.get(name) {
            return model.class(c.0.clone());
        }
        if name == "0" {
            return Ok(model.zero());
        }
        model
            .named(name)
            .cloned()
            .ok_or_else(|| Error::Scenario(format!("unknown divisor or named class {name:?}")))
    }

    pub fn nef_scenario(&self) -> Result<NefScenario> {
        let points = self
            .points
            .clone()
            .ok_or_else(|| Error::Scenario("nef-check needs points".into()))?;
        let target = self
            .target
            .as_ref()
            .ok_or_else(|| Error::Scenario("nef-check needs a target".into()))?;
        let decomposition = self
            .decomposition
            .as_ref()
            .ok_or_else(|| Error::Scenario("nef-check needs a decomposition".into()))?
            .iter()
            .map(|p| match p {
                PieceRef::Interpolate(n) => Ok(PieceSpec::Interpolate {
                    class: self.divisor_ref("decomposition", n)?.0.clone(),
                }),
                PieceRef::Named(components) => Ok(PieceSpec::Named {
                    components: components.clone(),
                }),
            })
            .collect::<Result<_>>()?;
        Ok(NefScenario {
            points,
            target: self.divisor_ref("target", target)?.0.clone(),
            decomposition,
            attempts: self.attempts,
        })
    }
}
