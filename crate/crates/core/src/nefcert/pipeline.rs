//! End-to-end nefness check: sample a configuration, interpolate every
//! piece of a decomposition on it, certify irreducibility and validate.

use serde::{Deserialize, Serialize};

use super::certificate::{certify_nef, NamedComponent, NefCertificate, Piece};
use super::interp::{build_system, sample_config, solve_curve, Ambient, Axis, ConfigSpec, PointConfig, PointSpec};
use super::irreducible::certify_irreducible;
use crate::error::{Error, Result};
use crate::picard::{build_surface, SurfaceModel};
use crate::rational::{q, Q};

pub const DEFAULT_ATTEMPTS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceSpec {
    /// A class whose unique member through the configuration is interpolated.
    Interpolate {
        #[serde(with = "crate::rational::serde_q_vec")]
        class: Vec<Q>,
    },
    /// Named curves of the model with multiplicities.
    Named { components: Vec<(String, u32)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NefScenario {
    pub points: ConfigSpec,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub target: Vec<Q>,
    pub decomposition: Vec<PieceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemSize {
    pub piece: usize,
    pub unknowns: usize,
    pub rows: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NefRun {
    pub seed: u64,
    /// Seed of the configuration actually used, after resampling.
    pub config_seed: u64,
    pub config: PointConfig,
    pub systems: Vec<SystemSize>,
    pub certificate: NefCertificate,
}

/// `L = 10 Delta_inf + 12 Gamma - 5 sum E_i` on `F_0` blown up at nine
/// points with `p_1` infinitely near `p_2`, split as `L_1 + L_2 + L_3`.
pub fn appendix_scenario() -> NefScenario {
    let mut points = vec![PointSpec::InfinitelyNear {
        parent: 2,
        axis: Axis::AlongX,
    }];
    points.extend(std::iter::repeat(PointSpec::Free).take(8));
    let class = |a: i64, b: i64, e: [i64; 9]| -> Vec<Q> {
        [a, b].into_iter().chain(e).map(q).collect()
    };
    NefScenario {
        points: ConfigSpec {
            ambient: Ambient::Hirzebruch(0),
            points,
            range: None,
        },
        target: class(10, 12, [-5; 9]),
        decomposition: vec![
            PieceSpec::Interpolate {
                class: class(2, 2, [-1, -1, -1, -1, -1, -1, -1, -1, 0]),
            },
            PieceSpec::Interpolate {
                class: class(2, 2, [-1, -1, -1, -1, -1, -1, -1, 0, -1]),
            },
            PieceSpec::Interpolate {
                class: class(6, 8, [-3, -3, -3, -3, -3, -3, -3, -4, -4]),
            },
        ],
        attempts: None,
    }
}

pub fn scenario_model(scenario: &NefScenario) -> Result<SurfaceModel> {
    build_surface(&scenario.points.surface_spec())
}

/// Runs the scenario from `seed`, moving to the next seed when a system is
/// not one-dimensional.
pub fn run_nef(scenario: &NefScenario, seed: u64) -> Result<NefRun> {
    let model = scenario_model(scenario)?;
    let target = model.class(scenario.target.clone())?;
    let attempts = scenario.attempts.unwrap_or(DEFAULT_ATTEMPTS).max(1);
    let mut last = None;
    for k in 0..attempts {
        let config_seed = seed.wrapping_add(k as u64);
        let config = sample_config(&scenario.points, config_seed)?;
        match build_pieces(scenario, &model, &config, config_seed) {
            Ok((pieces, systems)) => {
                let certificate = certify_nef(&model, &target, &pieces)?;
                return Ok(NefRun {
                    seed,
                    config_seed,
                    config,
                    systems,
                    certificate,
                });
            }
            Err(e @ Error::Unsolvable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn build_pieces(
    scenario: &NefScenario,
    model: &SurfaceModel,
    config: &PointConfig,
    seed: u64,
) -> Result<(Vec<Piece>, Vec<SystemSize>)> {
    let mut pieces = Vec::new();
    let mut systems = Vec::new();
    for (k, spec) in scenario.decomposition.iter().enumerate() {
        match spec {
            PieceSpec::Interpolate { class } => {
                let class = model.class(class.clone())?;
                let sys = build_system(config, &class)?;
                let mut witness = solve_curve(&sys)?;
                witness.irreducible = Some(certify_irreducible(&witness.polynomial, seed)?);
                systems.push(SystemSize {
                    piece: k + 1,
                    unknowns: witness.unknowns,
                    rows: witness.rows,
                    rank: witness.rank,
                    kernel_dim: witness.kernel_dim,
                });
                pieces.push(Piece::Interpolated {
                    witness,
                    config: config.clone(),
                });
            }
            PieceSpec::Named { components } => {
                let components = components
                    .iter()
                    .map(|(name, m)| NamedComponent::from_name(model, name, *m))
                    .collect::<Result<_>>()?;
                pieces.push(Piece::Named { components });
            }
        }
    }
    Ok((pieces, systems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_sizes() {
        let s = appendix_scenario();
        let model = scenario_model(&s).unwrap();
        let cfg = sample_config(&s.points, 1).unwrap();
        let l3 = match &s.decomposition[2] {
            PieceSpec::Interpolate { class } => model.class(class.clone()).unwrap(),
            _ => unreachable!(),
        };
        let sys = build_system(&cfg, &l3).unwrap();
        assert_eq!((sys.unknowns(), sys.num_rows()), (63, 62));
    }

    #[test]
    fn appendix_certificate() {
        let run = run_nef(&appendix_scenario(), 7).unwrap();
        assert_eq!(run.certificate.piece_pairings, vec![q(4), q(4), q(7)]);
        assert!(run.systems.iter().all(|s| s.kernel_dim == 1));
        for w in &run.certificate.witnesses {
            assert!(w.irreducible.as_ref().unwrap().is_absolutely_irreducible());
        }
    }
}
