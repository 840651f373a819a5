//! Nefness from an explicit effective decomposition.
//!
//! If `L = sum n_k C_k` with `n_k > 0`, `C_k` irreducible and `L.C_k >= 0`
//! for every `k`, then `L` is nef: any irreducible curve other than the
//! `C_k` meets each of them nonnegatively.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::interp::{class_data, Ambient, CurveWitness, PointConfig, PointKind};
use crate::error::{Error, Result};
use crate::picard::{DivisorClass, SurfaceModel};
use crate::rational::{fmt_q, q, Q};

pub const SOUNDNESS: &str = "every component of the chosen member pairs nonnegatively with L; \
an irreducible curve C with L.C < 0 would be a component of every effective member of |L|";

/// An irreducible curve given by name, with its class and multiplicity.
#[derive(Clone, Debug)]
pub struct NamedComponent {
    pub name: String,
    pub class: DivisorClass,
    pub multiplicity: u32,
}

impl NamedComponent {
    pub fn from_name(model: &SurfaceModel, name: &str, multiplicity: u32) -> Result<Self> {
        let class = model
            .named(name)
            .cloned()
            .ok_or_else(|| Error::Usage(format!("no named class {name:?} on {}", model.spec().base.label())))?;
        Ok(NamedComponent {
            name: name.to_string(),
            class,
            multiplicity,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Piece {
    /// A class with an interpolated member; the witness must carry an irreducibility verdict.
    Interpolated {
        witness: CurveWitness,
        config: PointConfig,
    },
    Named { components: Vec<NamedComponent> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPairing {
    pub piece: usize,
    pub component: String,
    pub class: Vec<String>,
    pub multiplicity: u32,
    #[serde(with = "crate::rational::serde_q")]
    pub pairing: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct NefCertificate {
    pub target: Vec<String>,
    pub piece_classes: Vec<Vec<String>>,
    /// `L . piece` for each piece.
    #[serde(with = "crate::rational::serde_q_vec")]
    pub piece_pairings: Vec<Q>,
    pub components: Vec<ComponentPairing>,
    pub witnesses: Vec<CurveWitness>,
    pub cross_checks: Vec<String>,
    pub soundness: String,
    pub valid: bool,
}

impl NefCertificate {
    pub fn piece_pairings_i64(&self) -> Vec<i64> {
        self.piece_pairings
            .iter()
            .map(|x| crate::rational::to_i64(x).unwrap_or(i64::MIN))
            .collect()
    }
}

impl Piece {
    pub fn class(&self, model: &SurfaceModel) -> DivisorClass {
        match self {
            Piece::Interpolated { witness, .. } => witness.class.clone(),
            Piece::Named { components } => components
                .iter()
                .fold(model.zero(), |acc, c| &acc + &(c.multiplicity as i64 * &c.class)),
        }
    }
}

/// Components of the divisor cut out by an interpolated polynomial.
pub fn member_components(
    model: &SurfaceModel,
    config: &PointConfig,
    witness: &CurveWitness,
) -> Result<Vec<NamedComponent>> {
    let poly = &witness.polynomial;
    let (degree, mults) = class_data(config, &witness.class)?;
    let b = model.spec().base.rank();
    let n = config.points.len();
    let children = config.children();
    let mut actual = vec![0u32; n];
    for (i, p) in config.points.iter().enumerate() {
        if p.kind == PointKind::Ordinary {
            actual[i] = poly.multiplicity_at(p.x(), p.y());
        }
    }
    for (&par, &ch) in &children {
        let PointKind::WeightedTangent { axis, .. } = config.points[ch].kind else {
            unreachable!()
        };
        let (wx, wy) = axis.weights();
        let p = &config.points[par];
        actual[ch] = poly.taylor_orders(p.x(), p.y(), wx, wy) - actual[par];
    }

    let mut comps = Vec::new();
    let mut strict = vec![Q::zero(); model.rank()];
    let mut extra = Vec::new();
    match (config.ambient, degree) {
        (Ambient::Plane, super::interp::Degree::Total(d)) => {
            let dd = poly.total_degree();
            strict[0] = q(dd as i64);
            if d > dd {
                extra.push(("line at infinity".to_string(), model.named("h").unwrap().clone(), d - dd));
            }
        }
        (Ambient::Hirzebruch(r), super::interp::Degree::Bidegree(a, bb)) => {
            let da = poly.deg_x();
            let nb = poly.weighted_degree(r, 1);
            strict[0] = q(da as i64);
            strict[1] = q(nb as i64);
            if a > da {
                extra.push(("Delta_inf".to_string(), model.named("Delta_inf").unwrap().clone(), a - da));
            }
            if bb > nb {
                extra.push(("fibre at infinity".to_string(), model.named("Gamma").unwrap().clone(), bb - nb));
            }
        }
        _ => return Err(Error::Structure("degree does not match the ambient".into())),
    }
    for i in 0..n {
        strict[b + i] = q(-(actual[i] as i64));
    }
    comps.push(NamedComponent {
        name: "strict transform".to_string(),
        class: model.class(strict)?,
        multiplicity: 1,
    });
    for (name, class, k) in extra {
        comps.push(NamedComponent {
            name,
            class,
            multiplicity: k,
        });
    }
    for i in 0..n {
        if config.points[i].kind != PointKind::Ordinary {
            continue;
        }
        let d_par = actual[i] as i64 - mults[i] as i64;
        if let Some(&ch) = children.get(&i) {
            let d_sum = d_par + actual[ch] as i64 - mults[ch] as i64;
            if d_par < 0 || d_sum < 0 {
                return Err(Error::CrossCheck(format!(
                    "member at points {}/{} has lower multiplicity than imposed",
                    i + 1,
                    ch + 1
                )));
            }
            if d_par > 0 {
                comps.push(NamedComponent {
                    name: format!("E{}-E{}", i + 1, ch + 1),
                    class: &model.e(i + 1) - &model.e(ch + 1),
                    multiplicity: d_par as u32,
                });
            }
            if d_sum > 0 {
                comps.push(NamedComponent {
                    name: format!("E{}", ch + 1),
                    class: model.e(ch + 1),
                    multiplicity: d_sum as u32,
                });
            }
        } else {
            if d_par < 0 {
                return Err(Error::CrossCheck(format!(
                    "member at point {} has lower multiplicity than imposed",
                    i + 1
                )));
            }
            if d_par > 0 {
                comps.push(NamedComponent {
                    name: format!("E{}", i + 1),
                    class: model.e(i + 1),
                    multiplicity: d_par as u32,
                });
            }
        }
    }
    let total = comps
        .iter()
        .fold(model.zero(), |acc, c| &acc + &(c.multiplicity as i64 * &c.class));
    if total != witness.class {
        return Err(Error::CrossCheck(format!(
            "member components sum to {}, expected {}",
            model.describe(&total),
            model.describe(&witness.class)
        )));
    }
    Ok(comps)
}

pub fn certify_nef(model: &SurfaceModel, l: &DivisorClass, pieces: &[Piece]) -> Result<NefCertificate> {
    let sum = pieces.iter().fold(model.zero(), |acc, p| &acc + &p.class(model));
    if &sum != l {
        return Err(Error::Usage(format!(
            "pieces sum to {}, not {}",
            model.describe(&sum),
            model.describe(l)
        )));
    }
    let mut components = Vec::new();
    let mut piece_pairings = Vec::new();
    let mut witnesses = Vec::new();
    for (k, piece) in pieces.iter().enumerate() {
        let pc = piece.class(model);
        piece_pairings.push(model.intersect(l, &pc)?);
        let comps = match piece {
            Piece::Named { components } => components.clone(),
            Piece::Interpolated { witness, config } => {
                match &witness.irreducible {
                    Some(r) if r.is_absolutely_irreducible() => {}
                    Some(r) => {
                        return Err(Error::Refuted(format!(
                            "piece {}: member is not certified irreducible ({:?})",
                            k + 1,
                            r.verdict
                        )))
                    }
                    None => {
                        return Err(Error::Usage(format!(
                            "piece {}: witness carries no irreducibility verdict",
                            k + 1
                        )))
                    }
                }
                witnesses.push(witness.clone());
                member_components(model, config, witness)?
            }
        };
        for c in comps {
            if c.multiplicity == 0 {
                continue;
            }
            let pairing = model.intersect(l, &c.class)?;
            components.push(ComponentPairing {
                piece: k + 1,
                component: c.name.clone(),
                class: c.class.to_strings(),
                multiplicity: c.multiplicity,
                pairing,
            });
        }
    }
    if let Some(bad) = components.iter().find(|c| c.pairing.is_negative()) {
        return Err(Error::Refuted(format!(
            "certificate refused: component {} of piece {} has pairing {} with L",
            bad.component,
            bad.piece,
            fmt_q(&bad.pairing)
        )));
    }
    let cross_checks = necessary_conditions(model, l)?;
    Ok(NefCertificate {
        target: l.to_strings(),
        piece_classes: pieces.iter().map(|p| p.class(model).to_strings()).collect(),
        piece_pairings,
        components,
        witnesses,
        cross_checks,
        soundness: SOUNDNESS.to_string(),
        valid: true,
    })
}

/// `L.C >= 0` for the exceptional and negative named curves of the model.
fn necessary_conditions(model: &SurfaceModel, l: &DivisorClass) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, c) in model.named_classes() {
        let negative_curve = name.starts_with('E')
            || name.starts_with('A')
            || name.starts_with('T')
            || name.starts_with('C')
            || name == "Delta_inf";
        if !negative_curve || !model.self_intersection(c)?.is_negative() {
            continue;
        }
        let v = model.intersect(l, c)?;
        if v.is_negative() {
            return Err(Error::CrossCheck(format!(
                "certificate accepted but L.{name} = {} < 0",
                fmt_q(&v)
            )));
        }
        out.push(format!("L.{name} = {}", fmt_q(&v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::{build_surface, Base, SurfaceSpec};

    #[test]
    fn fibre_is_nef() {
        let m = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0))).unwrap();
        let g = m.named("Gamma").unwrap().clone();
        let piece = Piece::Named {
            components: vec![NamedComponent::from_name(&m, "Gamma", 1).unwrap()],
        };
        let cert = certify_nef(&m, &g, &[piece]).unwrap();
        assert_eq!(cert.piece_pairings, vec![q(0)]);
    }

    #[test]
    fn exceptional_curve_refused() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Plane, 1)).unwrap();
        let e = m.e(1);
        let piece = Piece::Named {
            components: vec![NamedComponent::from_name(&m, "E1", 1).unwrap()],
        };
        let err = certify_nef(&m, &e, &[piece]).unwrap_err();
        assert!(err.to_string().contains("pairing -1"), "{err}");
    }

    #[test]
    fn sum_must_match() {
        let m = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0))).unwrap();
        let l = m.from_parts(&[1, 1], &[]).unwrap();
        let piece = Piece::Named {
            components: vec![NamedComponent::from_name(&m, "Gamma", 1).unwrap()],
        };
        assert!(matches!(certify_nef(&m, &l, &[piece]), Err(Error::Usage(_))));
    }
}
