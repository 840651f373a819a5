//! Moduli counts for the families of double covers, the genus-2 component
//! and the deformation arithmetic around it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classifier::{genus2_table, plane_with_pairs, Genus2FamilyRow};
use crate::error::{Error, Result};
use crate::picard::{build_surface, Base, BlowupCenter, Dof, SurfaceSpec, TangentCurve};
use crate::rational::{fmt_q, q, qr, to_i64, Q};

pub const ASSUMPTION_H0_IS_CHI: &str = "h^0 of the branch class equals its Euler characteristic (h^1 = h^2 = 0 assumed)";
pub const ASSUMPTION_LOG_H2: &str =
    "h^0 and h^2 of the invariant log part vanish; the Euler characteristic bound is attained";
pub const ASSUMPTION_SPLIT_VANISHING: &str =
    "h^0 = h^2 = 0 for O(-Gamma1-8Gamma2+2sum E) and all cohomology of O(-3Gamma1-6Gamma2+2sum E) vanishes";
pub const ASSUMPTION_RELATIVE: &str = "the relative tangent sheaves twisted by -L have no cohomology";
pub const ASSUMPTION_GENERAL_TYPE: &str = "h^0(S, T_S) = 0 and h^1 of the relative tangent sheaf of the five blow-ups vanishes";

/// Sum of the degrees of freedom of the annotated centers.
pub fn point_dof(spec: &SurfaceSpec) -> Result<i64> {
    let mut total = 0i64;
    let mut curves = BTreeSet::new();
    for (i, c) in spec.blowups.iter().enumerate() {
        let dof = c
            .dof
            .as_ref()
            .ok_or_else(|| Error::Usage(format!("center {} has no degree-of-freedom annotation", i + 1)))?;
        total += match dof {
            Dof::Free => 2,
            Dof::InfinitelyNear => 1,
            Dof::OnCurve { curve, params } => {
                1 + if curves.insert(curve.clone()) { *params as i64 } else { 0 }
            }
            Dof::Determined => 0,
        };
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRecord {
    pub name: String,
    pub model: SurfaceSpec,
    /// The branch moving class `Omega`.
    #[serde(with = "crate::rational::serde_q_vec")]
    pub omega: Vec<Q>,
    pub point_dof: i64,
    pub aut_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDimension {
    pub name: String,
    pub base: String,
    pub omega: String,
    pub chi: i64,
    pub point_dof: i64,
    pub aut_dim: i64,
    pub dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<i64>,
    pub assumptions: Vec<String>,
}

/// `(chi(Omega) - 1) + point_dof - aut_dim`.
pub fn family_dimension(rec: &FamilyRecord) -> Result<FamilyDimension> {
    let model = build_surface(&rec.model)?;
    let omega = model.class(rec.omega.clone())?;
    let chi_q = model.riemann_roch_chi(&omega)?;
    let chi = to_i64(&chi_q)
        .ok_or_else(|| Error::Structure(format!("chi(Omega) = {} is not an integer", fmt_q(&chi_q))))?;
    Ok(FamilyDimension {
        name: rec.name.clone(),
        base: rec.model.base.label(),
        omega: model.describe(&omega),
        chi,
        point_dof: rec.point_dof,
        aut_dim: rec.aut_dim,
        dimension: chi - 1 + rec.point_dof - rec.aut_dim,
        expected_dim: rec.expected_dim,
        assumptions: vec![ASSUMPTION_H0_IS_CHI.to_string()],
    })
}

fn record(name: &str, spec: SurfaceSpec, base: &[i64], exc: &[i64], expected: i64) -> FamilyRecord {
    let omega = base.iter().chain(exc).map(|&v| q(v)).collect();
    let point_dof = point_dof(&spec).expect("built-in specs are annotated");
    FamilyRecord {
        name: name.to_string(),
        aut_dim: spec.base.aut_dim(),
        model: spec,
        omega,
        point_dof,
        expected_dim: Some(expected),
    }
}

/// The five families of covers of rational surfaces and the genus-2 family `M_{1,0}`.
pub fn six_families() -> Vec<FamilyRecord> {
    let f0 = Base::Hirzebruch(0);
    let m2 = SurfaceSpec::free_points(f0.clone(), 9).with_infinitely_near(1, 2, Some(TangentCurve::Fibre));
    let m4 = SurfaceSpec::free_points(f0.clone(), 7)
        .with_infinitely_near(1, 2, None)
        .with_infinitely_near(3, 4, Some(TangentCurve::Fibre));
    let mut m4 = m4;
    m4.blowups[2] = m4.blowups[2].clone().with_dof(Dof::Determined);
    let mut m10 = SurfaceSpec::new(f0);
    for k in 1..=5 {
        for _ in 0..2 {
            m10 = m10.push(BlowupCenter::free().with_dof(Dof::OnCurve {
                curve: format!("B{k}"),
                params: 1,
            }));
        }
    }
    vec![
        record("M1", SurfaceSpec::free_points(Base::Hirzebruch(2), 8), &[9, 18], &[-4; 8], 28),
        record("M2", m2, &[8, 10], &[-3, -3, -4, -4, -4, -4, -4, -4, -4], 27),
        record("M3", plane_with_pairs(7, 3), &[15], &[-5; 7], 33),
        record("M4", m4, &[8, 9], &[-3, -3, -4, -4, -4, -4, -4], 32),
        record("M5", plane_with_pairs(9, 3), &[12], &[-3, -3, -3, -3, -3, -3, -4, -4, -4], 31),
        record("M_{1,0}", m10, &[6, 11], &[-3; 10], 32),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliReport {
    pub families: Vec<FamilyDimension>,
    pub genus2_table: Vec<Genus2FamilyRow>,
    /// `dim M_{k,2} = dim M_{k,0} - 1` for every cited row.
    pub decrement_check: bool,
    /// `10 chi - 2 K^2` for the surfaces being counted.
    pub kuranishi_floor: i64,
}

pub fn moduli_report() -> Result<ModuliReport> {
    let families = six_families()
        .iter()
        .map(family_dimension)
        .collect::<Result<Vec<_>>>()?;
    let table = genus2_table();
    Ok(ModuliReport {
        families,
        decrement_check: genus2_decrement_holds(&table),
        genus2_table: table,
        kuranishi_floor: kuranishi_floor(5, 9),
    })
}

pub fn genus2_decrement_holds(table: &[Genus2FamilyRow]) -> bool {
    table.iter().filter(|r| r.r == 2).all(|r2| {
        let k = r2.family.trim_start_matches("M_{").split(',').next().unwrap_or("");
        table
            .iter()
            .find(|r0| r0.r == 0 && r0.family == format!("M_{{{k},0}}"))
            .is_some_and(|r0| r0.dimension - 1 == r2.dimension)
    })
}

pub fn kuranishi_floor(chi: i64, k2: i64) -> i64 {
    10 * chi - 2 * k2
}

/// Intersection ring of a `P^2`-bundle over `P^1` with `H^3 = d`,
/// `H^2 Gamma = 1` and `H Gamma^2 = Gamma^3 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PV2Ring {
    pub d: i64,
}

/// The class `h H + g Gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PV2Class {
    pub h: i64,
    pub g: i64,
}

impl PV2Class {
    pub fn new(h: i64, g: i64) -> Self {
        PV2Class { h, g }
    }
}

impl std::ops::Sub for PV2Class {
    type Output = PV2Class;
    fn sub(self, o: PV2Class) -> PV2Class {
        PV2Class::new(self.h - o.h, self.g - o.g)
    }
}

impl std::ops::Add for PV2Class {
    type Output = PV2Class;
    fn add(self, o: PV2Class) -> PV2Class {
        PV2Class::new(self.h + o.h, self.g + o.g)
    }
}

pub fn pv2_triple(ring: PV2Ring, a: PV2Class, b: PV2Class, c: PV2Class) -> i64 {
    ring.d * a.h * b.h * c.h + a.h * b.h * c.g + a.h * b.g * c.h + a.g * b.h * c.h
}

/// Degree data of a genus-2 fibration over `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Genus2Data {
    pub chi: i64,
    pub k2: i64,
    /// `deg V_1 = chi + 1`.
    pub deg_v1: i64,
    /// `deg t = K^2 - 2 deg V_1 + 8`.
    pub deg_t: i64,
}

impl Genus2Data {
    pub fn from_invariants(chi: i64, k2: i64) -> Self {
        let deg_v1 = chi + 1;
        Genus2Data {
            chi,
            k2,
            deg_v1,
            deg_t: k2 - 2 * deg_v1 + 8,
        }
    }

    pub fn with_deg_t(self, deg_t: i64) -> Self {
        Genus2Data { deg_t, ..self }
    }

    /// `deg V_2 = 3 deg V_1 + deg t`, which is `H^3` on `P(V_2)`.
    pub fn ring(&self) -> PV2Ring {
        PV2Ring {
            d: 3 * self.deg_v1 + self.deg_t,
        }
    }

    /// The conic bundle `2H - 2 deg(V_1) Gamma`.
    pub fn conic(&self) -> PV2Class {
        PV2Class::new(2, -2 * self.deg_v1)
    }

    /// The cubic `3H - 2(deg V_1 + deg t) Gamma` cutting out the branch curve.
    pub fn cubic(&self) -> PV2Class {
        PV2Class::new(3, -2 * (self.deg_v1 + self.deg_t))
    }

    pub fn canonical(&self) -> PV2Class {
        PV2Class::new(-3, self.ring().d - 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogTangentBound {
    pub data: Genus2Data,
    pub chi_tangent_ruled: i64,
    pub chi_tangent_resolved: i64,
    /// `B (B - k_C)` on the conic bundle, a triple product in `P(V_2)`.
    pub branch_product: i64,
    pub bound: String,
    pub assumptions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternateRoute {
    pub branch_class: String,
    pub minus_chi_tangent: i64,
    pub minus_chi_canonical: i64,
    pub chi_k_minus_b: i64,
    pub total: i64,
}

/// `-chi(T) - chi(K) + chi(K - B)` for the resolved conic bundle, evaluated
/// downstairs as `-chi(T) - deg t + B (B - k) / 2`.
pub fn log_tangent_bound(data: Genus2Data) -> Result<LogTangentBound> {
    let ruled = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0)))?;
    let chi_tangent_ruled = ruled.chi_tangent();
    // The conic bundle resolves to the ruled surface blown up at 2 deg t points.
    let blown = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), (2 * data.deg_t) as usize))?;
    let chi_tangent_resolved = blown.chi_tangent();
    let ring = data.ring();
    let cubic = data.cubic();
    let conic = data.conic();
    let branch_product = pv2_triple(ring, cubic, cubic - (conic + data.canonical()), conic);
    // Each of the deg t nodes contributes a (-2)-curve L with L (L - K) = -2.
    let bound = q(-chi_tangent_resolved) + qr(branch_product - 2 * data.deg_t, 2);

    Ok(LogTangentBound {
        data,
        chi_tangent_ruled,
        chi_tangent_resolved,
        branch_product,
        bound: fmt_q(&bound),
        assumptions: vec![ASSUMPTION_LOG_H2.to_string()],
    })
}

/// The same quantity on `F_0` blown up at ten points, with the branch curve
/// `6 Gamma_1 + 16 Gamma_2 - 4 sum E` including the five `(-2)`-curves.
pub fn blown_up_route() -> Result<AlternateRoute> {
    let model = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), 10))?;
    let b_hat = model.from_parts(&[6, 16], &[-4; 10])?;
    let k = model.canonical().clone();
    let chi_k = model.riemann_roch_chi(&k)?;
    let chi_kb = model.riemann_roch_chi(&(&k - &b_hat))?;
    let total = q(-model.chi_tangent()) - &chi_k + &chi_kb;
    let int = |x: &Q| to_i64(x).ok_or_else(|| Error::Structure(format!("{} is not an integer", fmt_q(x))));
    Ok(AlternateRoute {
        branch_class: model.describe(&b_hat),
        minus_chi_tangent: -model.chi_tangent(),
        minus_chi_canonical: int(&-chi_k)?,
        chi_k_minus_b: int(&chi_kb)?,
        total: int(&total)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub log_bound: LogTangentBound,
    pub blown_up_route: AlternateRoute,
    pub invariant_h1: i64,
    pub split_chi: [i64; 2],
    pub anti_invariant_h1: i64,
    pub h1_resolved: i64,
    pub relative_h0: i64,
    pub h1_tangent: i64,
    pub kuranishi_floor: i64,
    pub assumptions: Vec<String>,
}

/// `h^1(T)` for the general surface of `M_{1,0}`, through the double cover of
/// `F_0` blown up at ten points and the five-point contraction.
pub fn deformation_report() -> Result<DeformationReport> {
    let data = Genus2Data::from_invariants(5, 9);
    let bound = log_tangent_bound(data)?;
    let invariant_h1 = bound
        .bound
        .parse::<i64>()
        .map_err(|_| Error::Structure(format!("log bound {} is not an integer", bound.bound)))?;
    let alt = blown_up_route()?;
    if alt.total != invariant_h1 {
        return Err(Error::CrossCheck(format!(
            "log bound {} downstairs but {} on the blown-up surface",
            invariant_h1, alt.total
        )));
    }
    let n = (2 * data.deg_t) as usize;
    let model = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), n))?;
    let first = model.from_parts(&[-1, -8], &vec![2; n])?;
    let second = model.from_parts(&[-3, -6], &vec![2; n])?;
    let split = [model.riemann_roch_chi(&first)?, model.riemann_roch_chi(&second)?];
    let split_chi = split.map(|c| to_i64(&c).unwrap_or(i64::MIN));
    let anti_invariant_h1 = -split_chi[0] - split_chi[1];
    let h1_resolved = invariant_h1 + anti_invariant_h1;
    // Each blown-up point contributes h^0(O_E(1)) = 2.
    let relative_h0 = 2 * data.deg_t;
    Ok(DeformationReport {
        log_bound: bound,
        blown_up_route: alt,
        invariant_h1,
        split_chi,
        anti_invariant_h1,
        h1_resolved,
        relative_h0,
        h1_tangent: h1_resolved - relative_h0,
        kuranishi_floor: kuranishi_floor(data.chi, data.k2),
        assumptions: vec![
            ASSUMPTION_LOG_H2.to_string(),
            ASSUMPTION_SPLIT_VANISHING.to_string(),
            ASSUMPTION_RELATIVE.to_string(),
            ASSUMPTION_GENERAL_TYPE.to_string(),
        ],
    })
}
