//! Case analysis on the resolved quotient: the `(K_P^2, s)` enumeration,
//! branch-class solving, and the genus-2 singularity count.
//!
//! Everything here works with three numbers per surface, `K^2`, `delta_bar^2`
//! and `K.delta_bar`, and follows them through contractions of `(-1)`-curves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::{
    build_surface, hodge_from_numbers, Base, DivisorClass, HodgeVerdict, SurfaceModel, SurfaceSpec,
};
use crate::rational::{fmt_q, q, qr, Q};

pub const K2_WINDOW: (i64, i64) = (-10, 10);
pub const S_WINDOW: (i64, i64) = (0, 40);

/// Affine forms `delta_bar^2 = c_sq + K^2`, `K.delta_bar = c_k - K^2` before
/// any contraction at threshold `3/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRelations {
    pub tau: i64,
    #[serde(with = "crate::rational::serde_q")]
    pub c_sq: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub c_k: Q,
}

/// Intersection numbers of `K` and `delta_bar` on one surface of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelNumbers {
    #[serde(with = "crate::rational::serde_q")]
    pub k2: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub delta_sq: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub k_delta: Q,
}

impl LevelNumbers {
    /// `(aK + b delta).(cK + d delta)`
    pub fn pair(&self, a: &Q, b: &Q, c: &Q, d: &Q) -> Q {
        a * c * &self.k2 + (a * d + b * c) * &self.k_delta + b * d * &self.delta_sq
    }

    /// Contracts `count` `(-1)`-curves `l` with `(lambda K + delta).l = 0`.
    pub fn contract(&self, lambda: &Q, count: i64) -> LevelNumbers {
        let n = q(count);
        LevelNumbers {
            k2: &self.k2 + &n,
            delta_sq: &self.delta_sq + &n * lambda * lambda,
            k_delta: &self.k_delta - &n * lambda,
        }
    }

    pub fn hodge(&self) -> HodgeVerdict {
        hodge_from_numbers(&self.k2, &self.delta_sq, &self.k_delta)
    }
}

/// Solves `(K + delta)^2 = K_S^2 / 2` and `(K + delta).delta = 2 chi_S - 4 chi_T + tau / 2`.
pub fn delta_relations(k2_s: i64, chi_s: i64, tau: i64, chi_that: i64) -> DeltaRelations {
    let s1 = q(2 * chi_s - 4 * chi_that) + qr(tau, 2);
    let c_k = qr(k2_s, 2) - &s1;
    let c_sq = &s1 - &c_k;
    DeltaRelations { tau, c_sq, c_k }
}

impl DeltaRelations {
    pub fn level0(&self, k2_p: i64) -> LevelNumbers {
        LevelNumbers {
            k2: q(k2_p),
            delta_sq: &self.c_sq + q(k2_p),
            k_delta: &self.c_k - q(k2_p),
        }
    }

    /// Numbers on `P_s` after `s` contractions at threshold `3/2`.
    pub fn level(&self, k2_p: i64, s: i64) -> LevelNumbers {
        self.level0(k2_p).contract(&qr(3, 2), s)
    }

    pub fn describe(&self) -> String {
        format!(
            "delta^2 = {} + K^2, K.delta = {} - K^2",
            fmt_q(&self.c_sq),
            fmt_q(&self.c_k)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// `(3/2 K + delta).(2K + delta) >= 0` on `P`.
    ThresholdPairingLevel0,
    /// Hodge index for `K` and `delta` on `P` when `K^2 > 0`.
    HodgeLevel0,
    /// `(2K + delta)^2 >= 0` on `P_s`.
    NefSquareLevelS,
    /// `(K + delta).(2K + delta) >= 0` on `P_s`.
    NefPairingLevelS,
    /// Hodge index for `K` and `delta` on `P_s` when `K^2 + s > 0`.
    HodgeLevelS,
    /// Contractions come in pairs along each `A`-curve.
    SEven,
    /// Each pair of contractions uses up one of the `tau` curves `A_i`.
    ContractionBudget,
}

impl Constraint {
    pub const ALL: [Constraint; 7] = [
        Constraint::ThresholdPairingLevel0,
        Constraint::HodgeLevel0,
        Constraint::NefSquareLevelS,
        Constraint::NefPairingLevelS,
        Constraint::HodgeLevelS,
        Constraint::SEven,
        Constraint::ContractionBudget,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Constraint::ThresholdPairingLevel0 => "(3/2K+delta)(2K+delta)>=0",
            Constraint::HodgeLevel0 => "hodge index at level 0",
            Constraint::NefSquareLevelS => "(2K+delta)^2>=0 at level s",
            Constraint::NefPairingLevelS => "(K+delta)(2K+delta)>=0 at level s",
            Constraint::HodgeLevelS => "hodge index at level s",
            Constraint::SEven => "s even",
            Constraint::ContractionBudget => "s/2<=tau",
        }
    }

    /// `true` when the constraint holds for `(k2_p, s)`.
    pub fn holds(&self, rel: &DeltaRelations, k2_p: i64, s: i64) -> bool {
        let zero = Q::zero();
        let one = Q::one();
        let two = q(2);
        match self {
            Constraint::ThresholdPairingLevel0 => {
                rel.level0(k2_p).pair(&qr(3, 2), &one, &two, &one) >= zero
            }
            Constraint::HodgeLevel0 => !rel.level0(k2_p).hodge().is_violation(),
            Constraint::NefSquareLevelS => rel.level(k2_p, s).pair(&two, &one, &two, &one) >= zero,
            Constraint::NefPairingLevelS => rel.level(k2_p, s).pair(&one, &one, &two, &one) >= zero,
            Constraint::HodgeLevelS => !rel.level(k2_p, s).hodge().is_violation(),
            Constraint::SEven => s % 2 == 0,
            Constraint::ContractionBudget => s <= 2 * rel.tau,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationCase {
    pub tau: i64,
    pub k2_p: i64,
    pub s: i64,
    /// Name of the first violated constraint; `None` for survivors.
    pub exclusion_witness: Option<String>,
    pub violated: Vec<Constraint>,
}

impl ClassificationCase {
    pub fn survives(&self) -> bool {
        self.exclusion_witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTable {
    Cases {
        tau: i64,
        relations: DeltaRelations,
        cases: Vec<ClassificationCase>,
    },
    /// `tau = 5`: the surface carries a genus-2 fibration and no contraction analysis applies.
    Genus2 { tau: i64 },
}

impl CaseTable {
    pub fn survivors(&self) -> Vec<(i64, i64)> {
        match self {
            CaseTable::Cases { cases, .. } => cases
                .iter()
                .filter(|c| c.survives())
                .map(|c| (c.k2_p, c.s))
                .collect(),
            CaseTable::Genus2 { .. } => Vec::new(),
        }
    }

    pub fn cases(&self) -> &[ClassificationCase] {
        match self {
            CaseTable::Cases { cases, .. } => cases,
            CaseTable::Genus2 { .. } => &[],
        }
    }
}

pub fn evaluate_case(rel: &DeltaRelations, k2_p: i64, s: i64) -> ClassificationCase {
    let violated: Vec<Constraint> = Constraint::ALL
        .iter()
        .copied()
        .filter(|c| !c.holds(rel, k2_p, s))
        .collect();
    ClassificationCase {
        tau: rel.tau,
        k2_p,
        s,
        exclusion_witness: violated.first().map(|c| c.name().to_string()),
        violated,
    }
}

/// Enumerates every `(K_P^2, s)` in the search window for the given `tau`.
pub fn numerical_case_table(k2_s: i64, chi_s: i64, tau: i64) -> Result<CaseTable> {
    if tau < 0 {
        return Err(Error::Usage(format!("tau must be nonnegative, got {tau}")));
    }
    if tau == 5 {
        return Ok(CaseTable::Genus2 { tau });
    }
    let relations = delta_relations(k2_s, chi_s, tau, 1);
    let mut cases = Vec::new();
    for k2_p in K2_WINDOW.0..=K2_WINDOW.1 {
        for s in S_WINDOW.0..=S_WINDOW.1 {
            cases.push(evaluate_case(&relations, k2_p, s));
        }
    }
    Ok(CaseTable::Cases {
        tau,
        relations,
        cases,
    })
}

/// Arithmetic genus from `D^2` and `D.K`.
pub fn genus_from_numbers(d_sq: &Q, d_k: &Q) -> Q {
    Q::one() + (d_sq + d_k) / q(2)
}

// ---------------------------------------------------------------------------
// Branch-class solving

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingConstraint {
    #[serde(with = "crate::rational::serde_q_vec")]
    pub with: Vec<Q>,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BranchScenario {
    /// Unknown class `sum t_i e_i` with some coordinates fixed, cut out by
    /// linear pairing conditions and at most one self-intersection value.
    Ansatz {
        surface: SurfaceSpec,
        /// One entry per basis element; `None` marks an unknown.
        fixed: Vec<Option<String>>,
        pairings: Vec<PairingConstraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        self_intersection: Option<String>,
        /// Added to the solution, e.g. `A/2` to pass from `delta_bar` to `delta^`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<Vec<String>>,
    },
    /// `reference^2 * x^2 = (reference.x)^2` with `reference^2 > 0` forces
    /// `x = (reference.x / reference^2) reference` numerically.
    HodgeEquality {
        surface: SurfaceSpec,
        reference: Vec<String>,
        pairing: String,
        self_intersection: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSolution {
    pub model_spec: SurfaceSpec,
    pub class: DivisorClass,
    /// Values of the unknown coordinates, in basis order.
    pub unknowns: Vec<Q>,
    pub rank: usize,
    pub num_unknowns: usize,
}

fn parse_all(xs: &[String]) -> Result<Vec<Q>> {
    xs.iter()
        .map(|s| crate::rational::parse_q(s).map_err(|e| Error::Usage(e.to_string())))
        .collect()
}

fn parse_one(s: &str) -> Result<Q> {
    crate::rational::parse_q(s).map_err(|e| Error::Usage(e.to_string()))
}

pub fn solve_branch_class(scenario: &BranchScenario) -> Result<BranchSolution> {
    match scenario {
        BranchScenario::Ansatz {
            surface,
            fixed,
            pairings,
            self_intersection,
            shift,
        } => {
            let model = build_surface(surface)?;
            let fixed: Vec<Option<Q>> = fixed
                .iter()
                .map(|f| f.as_deref().map(parse_one).transpose())
                .collect::<Result<_>>()?;
            let quad = self_intersection.as_deref().map(parse_one).transpose()?;
            let shift = shift.as_ref().map(|s| parse_all(s)).transpose()?;
            solve_ansatz(&model, &fixed, pairings, quad.as_ref(), shift.as_deref())
        }
        BranchScenario::HodgeEquality {
            surface,
            reference,
            pairing,
            self_intersection,
        } => {
            let model = build_surface(surface)?;
            let reference = model.class(parse_all(reference)?)?;
            solve_hodge_equality(
                &model,
                &reference,
                &parse_one(pairing)?,
                &parse_one(self_intersection)?,
            )
        }
    }
}

pub fn solve_ansatz(
    model: &SurfaceModel,
    fixed: &[Option<Q>],
    pairings: &[PairingConstraint],
    self_intersection: Option<&Q>,
    shift: Option<&[Q]>,
) -> Result<BranchSolution> {
    let rank = model.rank();
    if fixed.len() != rank {
        return Err(Error::Usage(format!(
            "ansatz has {} entries, model rank is {rank}",
            fixed.len()
        )));
    }
    let unknown_idx: Vec<usize> = (0..rank).filter(|&i| fixed[i].is_none()).collect();
    let nu = unknown_idx.len();
    let base: Vec<Q> = fixed.iter().map(|f| f.clone().unwrap_or_else(Q::zero)).collect();
    let base = model.class(base)?;

    // Row i: sum_u t_u (e_u . X_i) = value_i - base . X_i
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for pc in pairings {
        let x = model.class(pc.with.clone())?;
        let mut row = Vec::with_capacity(nu + 1);
        for &u in &unknown_idx {
            let mut e = model.zero();
            let mut c = e.coeffs().to_vec();
            c[u] = Q::one();
            e = model.class(c)?;
            row.push(model.intersect(&e, &x)?);
        }
        row.push(&pc.value - model.intersect(&base, &x)?);
        rows.push(row);
    }
    let (particular, null, lin_rank) = affine_solve(&rows, nu).ok_or_else(|| {
        Error::Unsolvable(format!(
            "linear pairing conditions are inconsistent ({} equations, {nu} unknowns)",
            rows.len()
        ))
    })?;

    let assemble = |t: &[Q]| -> Result<DivisorClass> {
        let mut c = base.coeffs().to_vec();
        for (k, &u) in unknown_idx.iter().enumerate() {
            c[u] = t[k].clone();
        }
        model.class(c)
    };

    let t: Vec<Q> = match (null.len(), self_intersection) {
        (0, None) => particular,
        (0, Some(v)) => {
            let d = assemble(&particular)?;
            let sq = model.self_intersection(&d)?;
            if &sq != v {
                return Err(Error::Unsolvable(format!(
                    "unique linear solution has self-intersection {}, required {}",
                    fmt_q(&sq),
                    fmt_q(v)
                )));
            }
            particular
        }
        (1, Some(v)) => {
            let d0 = assemble(&particular)?;
            let dir: Vec<Q> = {
                let mut c = vec![Q::zero(); rank];
                for (k, &u) in unknown_idx.iter().enumerate() {
                    c[u] = null[0][k].clone();
                }
                c
            };
            let n = model.class(dir)?;
            let a = model.self_intersection(&n)?;
            let b = q(2) * model.intersect(&d0, &n)?;
            let c = model.self_intersection(&d0)? - v;
            let root = unique_root(&a, &b, &c)?;
            particular
                .iter()
                .zip(&null[0])
                .map(|(p, n)| p + &root * n)
                .collect()
        }
        (k, _) => {
            return Err(Error::Unsolvable(format!(
                "system is underdetermined: {nu} unknowns, linear rank {lin_rank}, {} free parameter(s){}",
                k,
                if self_intersection.is_some() {
                    " with one quadratic condition"
                } else {
                    ""
                }
            )))
        }
    };

    let mut class = assemble(&t)?;
    for pc in pairings {
        let x = model.class(pc.with.clone())?;
        debug_assert_eq!(model.intersect(&class, &x)?, pc.value);
    }
    if let Some(s) = shift {
        class = &class + &model.class(s.to_vec())?;
    }
    Ok(BranchSolution {
        model_spec: model.spec().clone(),
        class,
        unknowns: t,
        rank: lin_rank,
        num_unknowns: nu,
    })
}

/// The unique rational root of `a t^2 + b t + c`.
pub fn unique_root(a: &Q, b: &Q, c: &Q) -> Result<Q> {
    if a.is_zero() {
        if b.is_zero() {
            return Err(Error::Unsolvable(if c.is_zero() {
                "quadratic condition is vacuous".into()
            } else {
                "quadratic condition is inconsistent".into()
            }));
        }
        return Ok(-c / b);
    }
    let disc = b * b - q(4) * a * c;
    if disc.is_zero() {
        return Ok(-b / (q(2) * a));
    }
    if disc.is_negative() {
        return Err(Error::Unsolvable(format!(
            "quadratic condition has no real root (discriminant {})",
            fmt_q(&disc)
        )));
    }
    match rational_sqrt(&disc) {
        Some(_) => Err(Error::Unsolvable(format!(
            "quadratic condition has two rational roots (discriminant {})",
            fmt_q(&disc)
        ))),
        None => Err(Error::Unsolvable(format!(
            "quadratic condition has no rational root (discriminant {})",
            fmt_q(&disc)
        ))),
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Row-reduces the augmented system `[A | b]` with `n` unknowns. Returns a
/// particular solution, a basis of the null space and the rank of `A`, or
/// `None` when the system is inconsistent.
fn affine_solve(rows: &[Vec<Q>], n: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>, usize)> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][col];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=n {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut particular = vec![Q::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect();
    Some((particular, null, pivots.len()))
}

pub fn solve_hodge_equality(
    model: &SurfaceModel,
    reference: &DivisorClass,
    pairing: &Q,
    self_intersection: &Q,
) -> Result<BranchSolution> {
    let r2 = model.self_intersection(reference)?;
    if !r2.is_positive() {
        return Err(Error::Usage(format!(
            "reference class has self-intersection {}, hodge equality needs it positive",
            fmt_q(&r2)
        )));
    }
    match hodge_from_numbers(&r2, self_intersection, pairing) {
        HodgeVerdict::Holds { lhs, rhs } if lhs == rhs => {}
        HodgeVerdict::Violated { lhs, rhs } => {
            return Err(Error::Refuted(format!(
                "hodge index violated: {} > {}",
                fmt_q(&lhs),
                fmt_q(&rhs)
            )))
        }
        _ => {
            return Err(Error::Unsolvable(
                "hodge inequality is strict, the class is not determined".into(),
            ))
        }
    }
    let ratio = pairing / &r2;
    let class = reference.scale(&ratio);
    Ok(BranchSolution {
        model_spec: model.spec().clone(),
        class,
        unknowns: vec![ratio],
        rank: 1,
        num_unknowns: 1,
    })
}

/// Solves `12(lambda K + delta) = a Gamma` on a Hirzebruch surface from the
/// two pairings with `K` and with `12 delta`.
///
/// `fibre_k` is `Gamma.K`; the returned pair is `(lambda, a)`.
pub fn fibre_threshold(level: &LevelNumbers, fibre_k: &Q) -> Result<(Q, Q)> {
    // a * fibre_k = 12 (lambda K^2 + K.delta), so a = alpha lambda + beta.
    if fibre_k.is_zero() {
        return Err(Error::Usage("fibre must meet K".into()));
    }
    let alpha = q(12) * &level.k2 / fibre_k;
    let beta = q(12) * &level.k_delta / fibre_k;
    // a * (Gamma . 12 delta) = 144 (lambda K.delta + delta^2), Gamma.delta = -lambda Gamma.K
    // => -12 lambda fibre_k (alpha lambda + beta) = 144 (lambda K.delta + delta^2)
    let qa = -q(12) * fibre_k * &alpha;
    let qb = -q(12) * fibre_k * &beta - q(144) * &level.k_delta;
    let qc = -q(144) * &level.delta_sq;
    let lambda = unique_root(&qa, &qb, &qc)?;
    let a = &alpha * &lambda + &beta;
    Ok((lambda, a))
}

// ---------------------------------------------------------------------------
// Worked scenarios and branch data

/// `delta_bar` on `F_2` after the eight contractions at threshold 2, then `delta^ = delta_bar + Delta_inf/2`.
pub fn scenario_f2_threshold() -> (LevelNumbers, BranchScenario) {
    let rel = delta_relations(9, 5, 1, 1);
    let level = rel.level(0, 0).contract(&q(2), 8);
    let surface = SurfaceSpec::new(Base::Hirzebruch(2));
    let k = vec![q(-2), q(-4)];
    let scen = BranchScenario::Ansatz {
        surface,
        fixed: vec![None, None],
        pairings: vec![PairingConstraint {
            with: k,
            value: level.k_delta.clone(),
        }],
        self_intersection: Some(fmt_q(&level.delta_sq)),
        shift: Some(vec!["1/2".into(), "0".into()]),
    };
    (level, scen)
}

/// `delta_bar` on `F_r` blown up at `n` points with `delta.Gamma = 4` and `delta.E_i = 2`.
pub fn scenario_pencil(tau: i64, k2_p: i64, s: i64, r: u32, n: usize) -> (LevelNumbers, BranchScenario) {
    let rel = delta_relations(9, 5, tau, 1);
    let level = rel.level(k2_p, s);
    let surface = SurfaceSpec::free_points(Base::Hirzebruch(r), n);
    let rank = 2 + n;
    let mut pairings = Vec::new();
    let mut gamma = vec![q(0); rank];
    gamma[1] = q(1);
    pairings.push(PairingConstraint {
        with: gamma,
        value: q(4),
    });
    for i in 0..n {
        let mut e = vec![q(0); rank];
        e[2 + i] = q(1);
        pairings.push(PairingConstraint {
            with: e,
            value: q(2),
        });
    }
    let scen = BranchScenario::Ansatz {
        surface,
        fixed: vec![None; rank],
        pairings,
        self_intersection: Some(fmt_q(&level.delta_sq)),
        shift: None,
    };
    (level, scen)
}

/// Hodge equality between `K` and `delta_bar` on a model with the given `K^2`.
pub fn scenario_hodge(tau: i64, k2_p: i64, s: i64, surface: SurfaceSpec) -> Result<(LevelNumbers, BranchScenario)> {
    let rel = delta_relations(9, 5, tau, 1);
    let level = rel.level(k2_p, s);
    let model = build_surface(&surface)?;
    if q(model.k_squared()) != level.k2 {
        return Err(Error::Usage(format!(
            "model has K^2 = {}, level has {}",
            model.k_squared(),
            fmt_q(&level.k2)
        )));
    }
    let scen = BranchScenario::HodgeEquality {
        reference: model.canonical().to_strings(),
        surface,
        pairing: fmt_q(&level.k_delta),
        self_intersection: fmt_q(&level.delta_sq),
    };
    Ok((level, scen))
}

/// Plane blown up at `n` points where `p_{2k-1}` is infinitely near `p_{2k}` for `k <= pairs`.
pub fn plane_with_pairs(n: usize, pairs: usize) -> SurfaceSpec {
    let mut spec = SurfaceSpec::free_points(Base::Plane, n);
    for k in 1..=pairs {
        spec = spec.with_infinitely_near(2 * k - 1, 2 * k, None);
    }
    spec
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDataReport {
    pub tau: i64,
    pub k2_p: i64,
    pub s: i64,
    pub target: String,
    pub branch: String,
    pub singularities: String,
    /// `r` values for which the solver was run and agreed with the cited branch class.
    pub checked: Vec<String>,
}

impl fmt::Display for BranchDataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(tau={}, K^2={}, s={}): {}; branch {}; {}",
            self.tau, self.k2_p, self.s, self.target, self.branch, self.singularities
        )
    }
}

/// Branch data for a surviving case, cross-checked against the solver.
pub fn branch_data_report(case: &ClassificationCase) -> Result<BranchDataReport> {
    let key = (case.tau, case.k2_p, case.s);
    let mut checked = Vec::new();
    let (target, branch, singularities) = match key {
        (1, 0, 0) => {
            let (_, scen) = scenario_f2_threshold();
            let sol = solve_branch_class(&scen)?;
            let m = build_surface(&sol.model_spec)?;
            // 2 delta^ = B_1 + B_2 with B_1 = Delta_inf
            let two = sol.class.scale(&q(2));
            let b2 = &two - m.named("Delta_inf").expect("Hirzebruch model");
            expect_class(&m, &b2, &[9, 18], "B_2")?;
            checked.push(format!("F2: delta^ = {}", m.describe(&sol.class)));
            (
                "F2".to_string(),
                "B1 = Delta_inf, B2 in |9Delta_inf+18Gamma|".to_string(),
                "eight ordinary 4-tuple points on B2".to_string(),
            )
        }
        (1, -1, 2) => {
            for r in 0..=3u32 {
                let (_, scen) = scenario_pencil(1, -1, 2, r, 7);
                let sol = solve_branch_class(&scen)?;
                let m = build_surface(&sol.model_spec)?;
                let two = sol.class.scale(&q(2));
                expect_prefix(&two, &[8, 10 + 4 * r as i64], "2 delta")?;
                checked.push(format!("F{r}: 2delta = {}", m.describe(&two)));
            }
            (
                "F_r, 0<=r<=3".to_string(),
                "B in |8Delta_inf+(10+4r)Gamma|".to_string(),
                "seven ordinary 4-tuple points and one (3,3)-point".to_string(),
            )
        }
        (3, 2, 0) => {
            let (_, scen) = scenario_hodge(3, 2, 0, plane_with_pairs(7, 3))?;
            let sol = solve_branch_class(&scen)?;
            let m = build_surface(&sol.model_spec)?;
            let two = sol.class.scale(&q(2));
            if two != (-5) * m.canonical() {
                return Err(Error::CrossCheck(format!(
                    "expected 2 delta = -5K, got {}",
                    m.describe(&two)
                )));
            }
            checked.push("P2+7: 2delta = -5K".to_string());
            (
                "weak del Pezzo of degree 2".to_string(),
                "B in |-5K|".to_string(),
                "three disjoint (-2)-curves A_i with B.A_i=0, no essential singularities".to_string(),
            )
        }
        (3, 1, 2) => {
            for r in 0..=2u32 {
                let (_, scen) = scenario_pencil(3, 1, 2, r, 5);
                let sol = solve_branch_class(&scen)?;
                let m = build_surface(&sol.model_spec)?;
                let two = sol.class.scale(&q(2));
                expect_prefix(&two, &[8, 9 + 4 * r as i64], "2 delta")?;
                checked.push(format!("F{r}: 2delta = {}", m.describe(&two)));
            }
            (
                "F_r, 0<=r<=2".to_string(),
                "B1 in |Gamma|, B2 in |8Delta_inf+(9+4r)Gamma|".to_string(),
                "one (3,3)-point and five 4-fold points x1..x5, x4 on B1, x5 infinitely near x4"
                    .to_string(),
            )
        }
        (3, 0, 6) => {
            let (_, scen) = scenario_hodge(3, 0, 6, SurfaceSpec::free_points(Base::Plane, 3))?;
            let sol = solve_branch_class(&scen)?;
            let m = build_surface(&sol.model_spec)?;
            let two = sol.class.scale(&q(2));
            if two != (-4) * m.canonical() {
                return Err(Error::CrossCheck(format!(
                    "expected 2 delta = -4K, got {}",
                    m.describe(&two)
                )));
            }
            checked.push("P2+3: 2delta = -4K".to_string());
            (
                "weak del Pezzo of degree 6".to_string(),
                "B in |-4K|".to_string(),
                "three (3,3)-points".to_string(),
            )
        }
        _ => {
            return Err(Error::Usage(format!(
                "no branch data for (tau={}, K^2={}, s={})",
                key.0, key.1, key.2
            )))
        }
    };
    Ok(BranchDataReport {
        tau: key.0,
        k2_p: key.1,
        s: key.2,
        target,
        branch,
        singularities,
        checked,
    })
}

fn expect_prefix(d: &DivisorClass, base: &[i64], what: &str) -> Result<()> {
    let got = &d.coeffs()[..base.len()];
    if got.iter().zip(base).all(|(g, b)| g == &q(*b)) {
        Ok(())
    } else {
        Err(Error::CrossCheck(format!(
            "{what}: expected base part {:?}, got {:?}",
            base,
            got.iter().map(fmt_q).collect::<Vec<_>>()
        )))
    }
}

fn expect_class(m: &SurfaceModel, d: &DivisorClass, base: &[i64], what: &str) -> Result<()> {
    expect_prefix(d, base, what)?;
    if d.coeffs()[base.len()..].iter().any(|c| !c.is_zero()) {
        return Err(Error::CrossCheck(format!("{what}: unexpected class {}", m.describe(d))));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Genus-2 singularity counts

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityType {
    I(u32),
    II(u32),
    III(u32),
    IV(u32),
    V,
}

impl SingularityType {
    pub fn weight(&self) -> u32 {
        match self {
            SingularityType::I(k) | SingularityType::III(k) => 2 * k - 1,
            SingularityType::II(k) | SingularityType::IV(k) => 2 * k,
            SingularityType::V => 1,
        }
    }

    /// The table groups `(I_k, III_k)` and `(II_k, IV_k)`, and puts `V` with `I_1, III_1`.
    pub fn group(&self) -> SingularityGroup {
        match self {
            SingularityType::I(k) | SingularityType::III(k) => SingularityGroup::Odd(*k),
            SingularityType::II(k) | SingularityType::IV(k) => SingularityGroup::Even(*k),
            SingularityType::V => SingularityGroup::Odd(1),
        }
    }

    /// All types of weight at most `target`, in canonical order.
    pub fn up_to_weight(target: u32) -> Vec<SingularityType> {
        let mut v = Vec::new();
        for k in 1..=target {
            for t in [
                SingularityType::I(k),
                SingularityType::II(k),
                SingularityType::III(k),
                SingularityType::IV(k),
            ] {
                if t.weight() <= target {
                    v.push(t);
                }
            }
        }
        if target >= 1 {
            v.push(SingularityType::V);
        }
        v
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::I(k) => write!(f, "I_{k}"),
            SingularityType::II(k) => write!(f, "II_{k}"),
            SingularityType::III(k) => write!(f, "III_{k}"),
            SingularityType::IV(k) => write!(f, "IV_{k}"),
            SingularityType::V => write!(f, "V"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityGroup {
    Odd(u32),
    Even(u32),
}

impl SingularityGroup {
    pub fn weight(&self) -> u32 {
        match self {
            SingularityGroup::Odd(k) => 2 * k - 1,
            SingularityGroup::Even(k) => 2 * k,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SingularityGroup::Odd(1) => "v(I_1)+v(III_1)+v(V)".to_string(),
            SingularityGroup::Odd(k) => format!("v(I_{k})+v(III_{k})"),
            SingularityGroup::Even(k) => format!("v(II_{k})+v(IV_{k})"),
        }
    }
}

/// Nonzero counts of a singularity vector.
pub type SingularityVector = BTreeMap<SingularityType, u32>;

pub fn weighted_sum(v: &SingularityVector) -> u32 {
    v.iter().map(|(t, c)| t.weight() * c).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityClass {
    /// Group totals, sorted by group weight.
    pub totals: Vec<(SingularityGroup, u32)>,
    /// Number of singularity vectors aggregating to these totals.
    pub raw_count: u64,
}

impl SingularityClass {
    pub fn label(&self) -> String {
        self.totals
            .iter()
            .map(|(g, c)| format!("{}={c}", g.label()))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Branch class coefficient of `Gamma` per the table pattern `6 Delta + (10 - 2m) Gamma`.
    pub fn gamma_coefficient(&self) -> i64 {
        let m: i64 = self
            .totals
            .iter()
            .map(|(g, c)| {
                let w = match g {
                    SingularityGroup::Odd(k) => *k as i64 - 1,
                    SingularityGroup::Even(k) => *k as i64,
                };
                w * *c as i64
            })
            .sum();
        10 - 2 * m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEnumeration {
    pub target: u32,
    pub classes: Vec<SingularityClass>,
    pub raw_total: u64,
}

/// All vectors with weighted sum `target`, grouped by the table's aggregates.
pub fn enumerate_genus2_singularities(target: u32) -> SingularityEnumeration {
    let types = SingularityType::up_to_weight(target);
    let mut groups: BTreeMap<Vec<(SingularityGroup, u32)>, u64> = BTreeMap::new();
    let mut current: Vec<u32> = vec![0; types.len()];
    let mut raw_total = 0;
    fn rec(
        i: usize,
        remaining: u32,
        types: &[SingularityType],
        current: &mut Vec<u32>,
        groups: &mut BTreeMap<Vec<(SingularityGroup, u32)>, u64>,
        raw_total: &mut u64,
    ) {
        if i == types.len() {
            if remaining == 0 {
                let mut agg: BTreeMap<SingularityGroup, u32> = BTreeMap::new();
                for (t, &c) in types.iter().zip(current.iter()) {
                    if c > 0 {
                        *agg.entry(t.group()).or_default() += c;
                    }
                }
                let mut key: Vec<(SingularityGroup, u32)> = agg.into_iter().collect();
                key.sort_by_key(|(g, _)| (g.weight(), *g));
                *groups.entry(key).or_default() += 1;
                *raw_total += 1;
            }
            return;
        }
        let w = types[i].weight();
        let mut c = 0;
        while c * w <= remaining {
            current[i] = c;
            rec(i + 1, remaining - c * w, types, current, groups, raw_total);
            c += 1;
        }
        current[i] = 0;
    }
    rec(0, target, &types, &mut current, &mut groups, &mut raw_total);
    let mut classes: Vec<SingularityClass> = groups
        .into_iter()
        .map(|(totals, raw_count)| SingularityClass { totals, raw_count })
        .collect();
    // Table order: the most weight on the lowest group first.
    classes.sort_by(|a, b| {
        let ka: Vec<(u32, i64)> = a.totals.iter().map(|(g, c)| (g.weight(), -(*c as i64))).collect();
        let kb: Vec<(u32, i64)> = b.totals.iter().map(|(g, c)| (g.weight(), -(*c as i64))).collect();
        ka.cmp(&kb)
    });
    SingularityEnumeration {
        target,
        classes,
        raw_total,
    }
}

/// One row of the genus-2 family table, as cited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus2FamilyRow {
    pub family: String,
    pub r: u32,
    pub conditions: String,
    /// Branch class `6 Delta + b Gamma`, stored as `b`.
    pub gamma_coefficient: i64,
    pub dimension: i64,
}

const GENUS2_ROWS: [(&str, &str, i64, i64); 6] = [
    ("1", "v(I_1)+v(III_1)+v(V)=5", 10, 32),
    ("2", "v(I_1)+v(III_1)+v(V)=3,v(II_1)+v(IV_1)=1", 8, 31),
    ("3", "v(I_1)+v(III_1)+v(V)=2,v(I_2)+v(III_2)=1", 8, 30),
    ("4", "v(I_1)+v(III_1)+v(V)=1,v(II_1)+v(IV_1)=2", 6, 30),
    ("5", "v(I_1)+v(III_1)+v(V)=1,v(II_2)+v(IV_2)=1", 6, 29),
    ("6", "v(I_3)+v(III_3)=1", 6, 28),
];

/// The twelve cited rows `M_{k,r}` for `r in {0, 2}`.
pub fn genus2_table() -> Vec<Genus2FamilyRow> {
    let mut rows = Vec::new();
    for (k, cond, b, dim0) in GENUS2_ROWS {
        for r in [0u32, 2] {
            rows.push(Genus2FamilyRow {
                family: format!("M_{{{k},{r}}}"),
                r,
                conditions: cond.to_string(),
                gamma_coefficient: b,
                dimension: if r == 0 { dim0 } else { dim0 - 1 },
            });
        }
    }
    rows
}

/// Condition strings of the cited table, one per row class.
pub fn genus2_table_conditions() -> Vec<String> {
    GENUS2_ROWS.iter().map(|r| r.1.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_match_table_rows() {
        let r1 = delta_relations(9, 5, 1, 1);
        assert_eq!((r1.c_sq.clone(), r1.c_k.clone()), (qr(17, 2), q(-2)));
        let r3 = delta_relations(9, 5, 3, 1);
        assert_eq!((r3.c_sq, r3.c_k), (qr(21, 2), q(-3)));
    }

    #[test]
    fn tau_one_survivors() {
        let t = numerical_case_table(9, 5, 1).unwrap();
        assert_eq!(t.survivors(), vec![(-1, 2), (0, 0)]);
        let c = t.cases().iter().find(|c| (c.k2_p, c.s) == (-2, 6)).unwrap();
        assert_eq!(c.violated, vec![Constraint::ContractionBudget]);
    }

    #[test]
    fn tau_three_survivors() {
        let t = numerical_case_table(9, 5, 3).unwrap();
        assert_eq!(t.survivors(), vec![(0, 6), (1, 2), (2, 0)]);
    }

    #[test]
    fn tau_five_is_genus_two() {
        assert_eq!(
            numerical_case_table(9, 5, 5).unwrap(),
            CaseTable::Genus2 { tau: 5 }
        );
    }

    #[test]
    fn pencil_genus_zero() {
        let l = delta_relations(9, 5, 1, 1).level(-1, 2);
        let d_sq = l.pair(&q(2), &q(1), &q(2), &q(1));
        let d_k = l.pair(&q(2), &q(1), &q(1), &q(0));
        assert_eq!(genus_from_numbers(&d_sq, &d_k), q(0));
    }

    #[test]
    fn f2_threshold_system() {
        let (level, scen) = scenario_f2_threshold();
        assert_eq!(level.k2, q(8));
        assert_eq!(level.delta_sq, qr(81, 2));
        assert_eq!(level.k_delta, q(-18));
        let (lambda, a) = fibre_threshold(&level, &q(-2)).unwrap();
        assert_eq!((lambda, a), (qr(9, 4), q(0)));
        let sol = solve_branch_class(&scen).unwrap();
        assert_eq!(sol.class.coeffs(), &[q(5), q(9)]);
    }

    #[test]
    fn pencil_scenarios() {
        for r in 0..=3 {
            let (_, scen) = scenario_pencil(1, -1, 2, r, 7);
            let sol = solve_branch_class(&scen).unwrap();
            assert_eq!(sol.class.coeffs()[..2], [q(4), q(5 + 2 * r as i64)]);
            assert!(sol.class.coeffs()[2..].iter().all(|c| c == &q(-2)));
        }
        for r in 0..=2 {
            let (_, scen) = scenario_pencil(3, 1, 2, r, 5);
            let sol = solve_branch_class(&scen).unwrap();
            assert_eq!(sol.class.coeffs()[1], qr(9, 2) + q(2 * r as i64));
        }
    }

    #[test]
    fn hodge_equality_cases() {
        let (_, scen) = scenario_hodge(3, 2, 0, plane_with_pairs(7, 3)).unwrap();
        let sol = solve_branch_class(&scen).unwrap();
        assert_eq!(sol.unknowns, vec![qr(-5, 2)]);
        let (_, scen) = scenario_hodge(3, 0, 6, SurfaceSpec::free_points(Base::Plane, 3)).unwrap();
        assert_eq!(solve_branch_class(&scen).unwrap().unknowns, vec![q(-2)]);
    }

    #[test]
    fn quadratic_roots() {
        assert_eq!(unique_root(&q(1), &q(-9), &qr(81, 4)).unwrap(), qr(9, 2));
        assert!(unique_root(&q(1), &q(0), &q(-4)).is_err());
        assert!(unique_root(&q(1), &q(0), &q(-2)).is_err());
        assert!(unique_root(&q(1), &q(0), &q(2)).is_err());
        assert_eq!(unique_root(&q(0), &q(2), &q(-3)).unwrap(), qr(3, 2));
    }

    #[test]
    fn underdetermined_is_reported() {
        let m = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0))).unwrap();
        let err = solve_ansatz(&m, &[None, None], &[], None, None).unwrap_err();
        assert!(matches!(err, Error::Unsolvable(_)));
    }

    #[test]
    fn branch_reports_for_survivors() {
        for tau in [1, 3] {
            let t = numerical_case_table(9, 5, tau).unwrap();
            for c in t.cases().iter().filter(|c| c.survives()) {
                let r = branch_data_report(c).unwrap();
                assert!(!r.checked.is_empty());
            }
        }
        let bogus = evaluate_case(&delta_relations(9, 5, 1, 1), 5, 5);
        assert!(branch_data_report(&bogus).is_err());
    }

    #[test]
    fn small_targets() {
        let e0 = enumerate_genus2_singularities(0);
        assert_eq!(e0.raw_total, 1);
        assert_eq!(e0.classes.len(), 1);
        let e1 = enumerate_genus2_singularities(1);
        assert_eq!(e1.raw_total, 3);
        assert_eq!(e1.classes.len(), 1);
        assert_eq!(e1.classes[0].label(), "v(I_1)+v(III_1)+v(V)=1");
    }

    #[test]
    fn target_five_groups() {
        let e = enumerate_genus2_singularities(5);
        let labels: Vec<String> = e.classes.iter().map(|c| c.label()).collect();
        for cond in genus2_table_conditions() {
            assert!(labels.contains(&cond), "{cond} missing from {labels:?}");
        }
        for row in genus2_table().iter().filter(|r| r.r == 0) {
            let c = e.classes.iter().find(|c| c.label() == row.conditions).unwrap();
            assert_eq!(c.gamma_coefficient(), row.gamma_coefficient);
        }
    }
}
