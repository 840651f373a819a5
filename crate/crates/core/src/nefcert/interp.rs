//! Interpolation of plane or ruled-surface curves with assigned multiple points.
//!
//! Coordinates live in the affine chart of the base. On `F_r` the fibres are
//! `y = const`, the section at infinity is `x = infinity`, and a class
//! `a Delta_inf + b Gamma` is spanned by monomials `x^i y^j` with `i <= a`
//! and `r i + j <= b`. On the plane a degree-`d` class uses `i + j <= d`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::irreducible::IrreducibilityReport;
use super::linalg::echelon_q;
use super::poly::{falling, pow, BiPoly};
use crate::error::{Error, Result};
use crate::picard::{Base, BlowupCenter, DivisorClass, SurfaceModel, SurfaceSpec, TangentCurve};
use crate::rational::{fmt_q, q, to_i64, Q};

pub const DEFAULT_RANGE: i64 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Plane,
    Hirzebruch(u32),
}

impl Ambient {
    pub fn base(&self) -> Base {
        match self {
            Ambient::Plane => Base::Plane,
            Ambient::Hirzebruch(r) => Base::Hirzebruch(*r),
        }
    }

    pub fn from_base(b: &Base) -> Ambient {
        match b {
            Base::Plane => Ambient::Plane,
            Base::Hirzebruch(r) => Ambient::Hirzebruch(*r),
        }
    }
}

/// Tangent direction of an infinitely near point in the affine chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Tangent to `y = const`; conditions weighted `alpha + 2 beta`.
    AlongX,
    /// Tangent to `x = const`; conditions weighted `2 alpha + beta`.
    AlongY,
}

impl Axis {
    pub fn weights(&self) -> (u32, u32) {
        match self {
            Axis::AlongX => (1, 2),
            Axis::AlongY => (2, 1),
        }
    }

    pub fn tangent_curve(&self, ambient: Ambient) -> TangentCurve {
        match (self, ambient) {
            (_, Ambient::Plane) => TangentCurve::Line,
            (Axis::AlongX, Ambient::Hirzebruch(_)) => TangentCurve::Fibre,
            (Axis::AlongY, Ambient::Hirzebruch(_)) => TangentCurve::Section,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PointKind {
    Ordinary,
    /// Infinitely near `parent` (1-based) in the direction `axis`.
    WeightedTangent { parent: usize, axis: Axis },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPoint {
    #[serde(with = "crate::rational::serde_q_vec")]
    pub coords: Vec<Q>,
    pub kind: PointKind,
}

impl ConfigPoint {
    pub fn x(&self) -> &Q {
        &self.coords[0]
    }

    pub fn y(&self) -> &Q {
        &self.coords[1]
    }
}

/// Concrete blow-up centers; point `i` (0-based) carries `E_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub ambient: Ambient,
    pub points: Vec<ConfigPoint>,
    pub seed: u64,
}

/// How each center is to be placed by [`sample_config`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PointSpec {
    Free,
    /// Same fibre (same `y`) as point `with` (1-based).
    SameFibre { with: usize },
    InfinitelyNear { parent: usize, axis: Axis },
    Fixed {
        #[serde(with = "crate::rational::serde_q")]
        x: Q,
        #[serde(with = "crate::rational::serde_q")]
        y: Q,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub ambient: Ambient,
    pub points: Vec<PointSpec>,
    /// Coordinates are drawn from `-range..=range`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<i64>,
}

impl ConfigSpec {
    pub fn free(ambient: Ambient, n: usize) -> Self {
        ConfigSpec {
            ambient,
            points: vec![PointSpec::Free; n],
            range: None,
        }
    }

    /// Surface spec with matching blow-up centers.
    pub fn surface_spec(&self) -> SurfaceSpec {
        let mut s = SurfaceSpec::new(self.ambient.base());
        for p in &self.points {
            s = s.push(match p {
                PointSpec::InfinitelyNear { parent, axis } => {
                    BlowupCenter::infinitely_near(*parent, Some(axis.tangent_curve(self.ambient)))
                }
                _ => BlowupCenter::free(),
            });
        }
        s
    }
}

impl PointConfig {
    pub fn surface_spec(&self) -> SurfaceSpec {
        let mut s = SurfaceSpec::new(self.ambient.base());
        for p in &self.points {
            s = s.push(match &p.kind {
                PointKind::WeightedTangent { parent, axis } => {
                    BlowupCenter::infinitely_near(*parent, Some(axis.tangent_curve(self.ambient)))
                }
                PointKind::Ordinary => BlowupCenter::free(),
            });
        }
        s
    }

    /// Infinitely near child of each parent (0-based indices).
    pub fn children(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if let PointKind::WeightedTangent { parent, .. } = p.kind {
                m.insert(parent - 1, i);
            }
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        let mut seen = BTreeSet::new();
        let mut parents = BTreeSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.coords.len() != 2 {
                return Err(Error::Structure(format!("point {} needs two coordinates", i + 1)));
            }
            match &p.kind {
                PointKind::Ordinary => {
                    if !seen.insert((p.x().clone(), p.y().clone())) {
                        return Err(Error::Structure(format!(
                            "point {} repeats the coordinates ({}, {})",
                            i + 1,
                            fmt_q(p.x()),
                            fmt_q(p.y())
                        )));
                    }
                }
                PointKind::WeightedTangent { parent, .. } => {
                    if *parent == 0 || *parent > n || *parent == i + 1 {
                        return Err(Error::Structure(format!(
                            "point {} has invalid parent {parent}",
                            i + 1
                        )));
                    }
                    let par = &self.points[parent - 1];
                    if par.kind != PointKind::Ordinary {
                        return Err(Error::Structure(format!(
                            "point {} is infinitely near point {parent}, which is itself infinitely near",
                            i + 1
                        )));
                    }
                    if par.coords != p.coords {
                        return Err(Error::Structure(format!(
                            "point {} must share coordinates with its parent {parent}",
                            i + 1
                        )));
                    }
                    if !parents.insert(*parent) {
                        return Err(Error::Structure(format!(
                            "point {parent} has more than one infinitely near point"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Draws exact coordinates for `spec` from `seed`.
pub fn sample_config(spec: &ConfigSpec, seed: u64) -> Result<PointConfig> {
    let n = spec.points.len();
    let range = spec.range.unwrap_or(DEFAULT_RANGE);
    if range < 1 {
        return Err(Error::Usage("coordinate range must be positive".into()));
    }
    for (i, p) in spec.points.iter().enumerate() {
        match p {
            PointSpec::SameFibre { with } | PointSpec::InfinitelyNear { parent: with, .. } => {
                if *with == 0 || *with > n || *with == i + 1 {
                    return Err(Error::Structure(format!(
                        "point {} refers to invalid point {with}",
                        i + 1
                    )));
                }
                if matches!(spec.points[with - 1], PointSpec::InfinitelyNear { .. }) {
                    return Err(Error::Structure(format!(
                        "point {} refers to an infinitely near point {with}",
                        i + 1
                    )));
                }
            }
            _ => {}
        }
        if matches!(p, PointSpec::SameFibre { .. }) && spec.ambient == Ambient::Plane {
            return Err(Error::Structure("the plane has no fibres".into()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Vec<Option<(Q, Q)>> = vec![None; n];
    let mut used: BTreeSet<(i64, i64)> = BTreeSet::new();
    let capacity = (2 * range + 1) * (2 * range + 1);
    for (i, p) in spec.points.iter().enumerate() {
        if let PointSpec::Fixed { x, y } = p {
            coords[i] = Some((x.clone(), y.clone()));
            if let (Some(a), Some(b)) = (to_i64(x), to_i64(y)) {
                used.insert((a, b));
            }
        }
    }
    let ordinary = spec
        .points
        .iter()
        .filter(|p| !matches!(p, PointSpec::InfinitelyNear { .. }))
        .count() as i64;
    if ordinary > capacity {
        return Err(Error::Usage(format!(
            "{ordinary} points do not fit in a coordinate box of side {}",
            2 * range + 1
        )));
    }
    let draw = |rng: &mut ChaCha8Rng, used: &mut BTreeSet<(i64, i64)>, y: Option<i64>| loop {
        let a = rng.gen_range(-range..=range);
        let b = y.unwrap_or_else(|| rng.gen_range(-range..=range));
        if used.insert((a, b)) {
            return (a, b);
        }
    };
    // Free points first, then points tied to a fibre, then infinitely near ones.
    // Free points get pairwise distinct x and y when the box allows it, so no
    // two of them share a fibre or a horizontal section.
    let spread = ordinary <= 2 * range + 1;
    let mut xs: BTreeSet<i64> = used.iter().map(|c| c.0).collect();
    let mut ys: BTreeSet<i64> = used.iter().map(|c| c.1).collect();
    for (i, p) in spec.points.iter().enumerate() {
        if matches!(p, PointSpec::Free) {
            let (a, b) = loop {
                let a = rng.gen_range(-range..=range);
                let b = rng.gen_range(-range..=range);
                if spread && (xs.contains(&a) || ys.contains(&b)) {
                    continue;
                }
                if used.insert((a, b)) {
                    break (a, b);
                }
            };
            xs.insert(a);
            ys.insert(b);
            coords[i] = Some((q(a), q(b)));
        }
    }
    let mut progress = true;
    while progress {
        progress = false;
        for (i, p) in spec.points.iter().enumerate() {
            if let PointSpec::SameFibre { with } = p {
                if coords[i].is_some() {
                    continue;
                }
                if let Some((_, y)) = coords[with - 1].clone() {
                    let fibre = to_i64(&y).ok_or_else(|| {
                        Error::Usage("fibres through non-integral coordinates are not sampled".into())
                    })?;
                    let taken = used.iter().filter(|(_, b)| *b == fibre).count() as i64;
                    if taken >= 2 * range + 1 {
                        return Err(Error::Usage(format!("fibre y = {fibre} is full")));
                    }
                    let (a, b) = draw(&mut rng, &mut used, Some(fibre));
                    coords[i] = Some((q(a), q(b)));
                    progress = true;
                }
            }
        }
    }
    let mut points = Vec::with_capacity(n);
    for (i, p) in spec.points.iter().enumerate() {
        let point = match p {
            PointSpec::InfinitelyNear { parent, axis } => {
                let c = coords[parent - 1].clone().ok_or_else(|| {
                    Error::Structure(format!("point {} has an unplaced parent", i + 1))
                })?;
                ConfigPoint {
                    coords: vec![c.0, c.1],
                    kind: PointKind::WeightedTangent {
                        parent: *parent,
                        axis: *axis,
                    },
                }
            }
            _ => {
                let c = coords[i].clone().ok_or_else(|| {
                    Error::Structure(format!("point {} lies on a cyclic chain of fibres", i + 1))
                })?;
                ConfigPoint {
                    coords: vec![c.0, c.1],
                    kind: PointKind::Ordinary,
                }
            }
        };
        points.push(point);
    }
    let cfg = PointConfig {
        ambient: spec.ambient,
        points,
        seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Vanishing conditions imposed at one base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConditions {
    /// 0-based index of the point the conditions are evaluated at.
    pub point: usize,
    pub multiplicity: u32,
    /// Infinitely near child and its multiplicity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child: Option<(usize, u32, Axis)>,
    /// Orders `(alpha, beta)` of the vanishing partial derivatives.
    pub orders: Vec<(u32, u32)>,
}

/// Orders `(a, b)` with `a + b <= m - 1`, plus `wx a + wy b <= m + m' - 1` for a child.
pub fn condition_orders(m: u32, child: Option<(u32, (u32, u32))>) -> Vec<(u32, u32)> {
    let mut s = BTreeSet::new();
    let top = m + child.map_or(0, |c| c.0);
    for a in 0..top {
        for b in 0..top {
            let ordinary = a + b < m;
            let weighted = child.is_some_and(|(mc, (wx, wy))| wx * a + wy * b < m + mc);
            if ordinary || weighted {
                s.insert((a, b));
            }
        }
    }
    s.into_iter().collect()
}

/// Degree bound of a class on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Total(u32),
    /// Coefficients of `Delta_inf` and `Gamma`.
    Bidegree(u32, u32),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolationSystem {
    pub ambient: Ambient,
    pub degree: Degree,
    pub monomials: Vec<(u32, u32)>,
    pub conditions: Vec<PointConditions>,
    #[serde(skip)]
    pub rows: Vec<Vec<Q>>,
    #[serde(skip)]
    pub points: Vec<(Q, Q)>,
    #[serde(skip)]
    pub class: Option<DivisorClass>,
}

impl InterpolationSystem {
    pub fn unknowns(&self) -> usize {
        self.monomials.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
}

pub fn monomials(ambient: Ambient, degree: Degree) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    match (ambient, degree) {
        (Ambient::Plane, Degree::Total(d)) => {
            for i in 0..=d {
                for j in 0..=d - i {
                    v.push((i, j));
                }
            }
        }
        (Ambient::Hirzebruch(r), Degree::Bidegree(a, b)) => {
            for i in 0..=a {
                let cap = b as i64 - (r * i) as i64;
                for j in 0..=cap.max(-1) {
                    if cap >= 0 {
                        v.push((i, j as u32));
                    }
                }
            }
        }
        _ => {}
    }
    v
}

/// Degree and multiplicities read off a class on the model of `config`.
pub fn class_data(config: &PointConfig, class: &DivisorClass) -> Result<(Degree, Vec<u32>)> {
    let c = class.coeffs();
    let b = config.ambient.base().rank();
    if c.len() != b + config.points.len() {
        return Err(Error::ModelMismatch(format!(
            "class has {} coefficients, configuration needs {}",
            c.len(),
            b + config.points.len()
        )));
    }
    let nonneg = |x: &Q, what: &str| -> Result<u32> {
        to_i64(x)
            .filter(|v| *v >= 0)
            .map(|v| v as u32)
            .ok_or_else(|| Error::Usage(format!("{what} must be a nonnegative integer, got {}", fmt_q(x))))
    };
    let degree = match config.ambient {
        Ambient::Plane => Degree::Total(nonneg(&c[0], "degree")?),
        Ambient::Hirzebruch(_) => Degree::Bidegree(
            nonneg(&c[0], "Delta_inf coefficient")?,
            nonneg(&c[1], "Gamma coefficient")?,
        ),
    };
    let mults = c[b..]
        .iter()
        .enumerate()
        .map(|(i, x)| nonneg(&-x, &format!("multiplicity at point {}", i + 1)))
        .collect::<Result<_>>()?;
    Ok((degree, mults))
}

pub fn build_system(config: &PointConfig, class: &DivisorClass) -> Result<InterpolationSystem> {
    config.validate()?;
    let (degree, mults) = class_data(config, class)?;
    let monos = monomials(config.ambient, degree);
    let children = config.children();
    let mut conditions = Vec::new();
    for (i, p) in config.points.iter().enumerate() {
        if p.kind != PointKind::Ordinary {
            continue;
        }
        let child = children.get(&i).map(|&c| {
            let PointKind::WeightedTangent { axis, .. } = config.points[c].kind else {
                unreachable!()
            };
            (c, mults[c], axis)
        });
        let orders = condition_orders(mults[i], child.map(|(_, m, a)| (m, a.weights())));
        if orders.is_empty() {
            continue;
        }
        conditions.push(PointConditions {
            point: i,
            multiplicity: mults[i],
            child,
            orders,
        });
    }
    let mut rows = Vec::new();
    for pc in &conditions {
        let p = &config.points[pc.point];
        for &(a, b) in &pc.orders {
            rows.push(
                monos
                    .iter()
                    .map(|&(i, j)| {
                        if i < a || j < b {
                            return Q::zero();
                        }
                        Q::from_integer(falling(i, a) * falling(j, b))
                            * pow(p.x(), i - a)
                            * pow(p.y(), j - b)
                    })
                    .collect(),
            );
        }
    }
    Ok(InterpolationSystem {
        ambient: config.ambient,
        degree,
        monomials: monos,
        conditions,
        rows,
        points: config.points.iter().map(|p| (p.x().clone(), p.y().clone())).collect(),
        class: Some(class.clone()),
    })
}

#[derive(Clone, Debug)]
pub struct KernelInfo {
    pub rank: usize,
    pub kernel: Vec<Vec<Q>>,
}

impl KernelInfo {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
}

pub fn kernel_info(system: &InterpolationSystem) -> KernelInfo {
    let e = echelon_q(&system.rows, system.unknowns());
    KernelInfo {
        rank: e.rank(),
        kernel: e.kernel(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveWitness {
    pub polynomial: BiPoly,
    #[serde(serialize_with = "ser_class")]
    pub class: DivisorClass,
    pub kernel_dim: usize,
    pub rank: usize,
    pub unknowns: usize,
    pub rows: usize,
    /// Every imposed condition was re-checked by symbolic differentiation.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<IrreducibilityReport>,
}

fn ser_class<S: serde::Serializer>(d: &DivisorClass, s: S) -> std::result::Result<S::Ok, S::Error> {
    d.to_strings().serialize(s)
}

pub fn solve_curve(system: &InterpolationSystem) -> Result<CurveWitness> {
    let info = kernel_info(system);
    let n = system.unknowns();
    match info.kernel_dim() {
        0 => {
            return Err(Error::Unsolvable(format!(
                "empty linear system: rank {} equals the {n} unknowns",
                info.rank
            )))
        }
        1 => {}
        k => {
            return Err(Error::Unsolvable(format!(
                "non-generic configuration: kernel dimension {k} (rank {} of {n} unknowns)",
                info.rank
            )))
        }
    }
    let poly = BiPoly::from_terms(
        system
            .monomials
            .iter()
            .copied()
            .zip(info.kernel[0].iter().cloned()),
    )
    .normalized();
    verify_conditions(system, &poly)?;
    Ok(CurveWitness {
        polynomial: poly,
        class: system.class.clone().expect("system built from a class"),
        kernel_dim: 1,
        rank: info.rank,
        unknowns: n,
        rows: system.num_rows(),
        verified: true,
        irreducible: None,
    })
}

/// Evaluates each prescribed partial derivative of `poly` at its point.
pub fn verify_conditions(system: &InterpolationSystem, poly: &BiPoly) -> Result<()> {
    for pc in &system.conditions {
        let (x, y) = &system.points[pc.point];
        for &(a, b) in &pc.orders {
            let v = poly.derivative(a, b).eval(x, y);
            if !v.is_zero() {
                return Err(Error::CrossCheck(format!(
                    "derivative ({a},{b}) at point {} is {}, not 0",
                    pc.point + 1,
                    fmt_q(&v)
                )));
            }
        }
    }
    Ok(())
}

/// Samples configurations from `seed` onward until the system has a one-dimensional kernel.
pub fn interpolate(
    spec: &ConfigSpec,
    model: &SurfaceModel,
    class: &DivisorClass,
    seed: u64,
    attempts: u32,
) -> Result<(PointConfig, CurveWitness)> {
    let mut last = None;
    for k in 0..attempts.max(1) {
        let cfg = sample_config(spec, seed.wrapping_add(k as u64))?;
        if cfg.surface_spec() != *model.spec() {
            return Err(Error::ModelMismatch(
                "configuration does not match the surface model".into(),
            ));
        }
        let sys = build_system(&cfg, class)?;
        match solve_curve(&sys) {
            Ok(w) => return Ok((cfg, w)),
            Err(e @ Error::Unsolvable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::build_surface;

    #[test]
    fn weighted_count() {
        let w = condition_orders(3, Some((3, (1, 2))));
        assert_eq!(w.len(), 12);
        assert_eq!(condition_orders(1, Some((1, (1, 2)))), vec![(0, 0), (1, 0)]);
        assert_eq!(condition_orders(4, None).len(), 10);
        assert_eq!(condition_orders(0, None).len(), 0);
    }

    #[test]
    fn double_point_on_quadric() {
        let spec = ConfigSpec::free(Ambient::Hirzebruch(0), 1);
        let cfg = sample_config(&spec, 3).unwrap();
        let model = build_surface(&cfg.surface_spec()).unwrap();
        let class = model.from_parts(&[1, 1], &[-2]).unwrap();
        let sys = build_system(&cfg, &class).unwrap();
        assert_eq!((sys.unknowns(), sys.num_rows()), (4, 3));
    }

    #[test]
    fn vertical_line_through_two_points() {
        let spec = ConfigSpec::free(Ambient::Hirzebruch(0), 2);
        let cfg = sample_config(&spec, 11).unwrap();
        assert_ne!(cfg.points[0].x(), cfg.points[1].x());
        let model = build_surface(&cfg.surface_spec()).unwrap();
        let class = model.from_parts(&[1, 0], &[-1, -1]).unwrap();
        let err = solve_curve(&build_system(&cfg, &class).unwrap()).unwrap_err();
        assert!(err.to_string().contains("empty linear system"));
    }

    #[test]
    fn fibre_pairs_share_y() {
        let mut pts = Vec::new();
        for k in 0..5 {
            pts.push(PointSpec::Free);
            pts.push(PointSpec::SameFibre { with: 2 * k + 1 });
        }
        let spec = ConfigSpec {
            ambient: Ambient::Hirzebruch(0),
            points: pts,
            range: None,
        };
        let cfg = sample_config(&spec, 5).unwrap();
        for k in 0..5 {
            assert_eq!(cfg.points[2 * k].y(), cfg.points[2 * k + 1].y());
            assert_ne!(cfg.points[2 * k].x(), cfg.points[2 * k + 1].x());
        }
        assert_eq!(cfg, sample_config(&spec, 5).unwrap());
    }

    #[test]
    fn conic_through_five_points() {
        let spec = ConfigSpec::free(Ambient::Plane, 5);
        let cfg = sample_config(&spec, 1).unwrap();
        let model = build_surface(&cfg.surface_spec()).unwrap();
        let class = model.from_parts(&[2], &[-1; 5]).unwrap();
        let w = solve_curve(&build_system(&cfg, &class).unwrap()).unwrap();
        assert_eq!(w.kernel_dim, 1);
        assert_eq!(w.polynomial.first_coeff(), Some(&q(1)));
        for p in &cfg.points {
            assert!(w.polynomial.eval(p.x(), p.y()).is_zero());
        }
    }

    #[test]
    fn bad_references_rejected() {
        let spec = ConfigSpec {
            ambient: Ambient::Plane,
            points: vec![PointSpec::SameFibre { with: 1 }],
            range: None,
        };
        assert!(sample_config(&spec, 0).is_err());
        let spec = ConfigSpec {
            ambient: Ambient::Hirzebruch(0),
            points: vec![
                PointSpec::InfinitelyNear { parent: 2, axis: Axis::AlongX },
                PointSpec::InfinitelyNear { parent: 1, axis: Axis::AlongX },
            ],
            range: None,
        };
        assert!(sample_config(&spec, 0).is_err());
    }
}
