//! Picard lattices of blown-up rational surfaces.
//!
//! A [`SurfaceModel`] is a minimal rational surface (the plane or a
//! Hirzebruch surface `F_r`) together with an ordered list of blow-up
//! centers. Exceptional classes `E1..En` are total transforms, so the
//! intersection form is block diagonal with `-1` on the exceptional block;
//! strict transforms of infinitely near exceptional curves appear as
//! differences such as `E2 - E1`.
//!
//! Basis order is fixed: base classes first (`h` for the plane,
//! `Delta_inf, Gamma` for `F_r`), then `E1..En` in the order given.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// Euler characteristic of the structure sheaf; every model here is rational.
pub const CHI_O: i64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Plane,
    Hirzebruch(u32),
}

impl Base {
    pub fn rank(&self) -> usize {
        match self {
            Base::Plane => 1,
            Base::Hirzebruch(_) => 2,
        }
    }

    pub fn k_squared(&self) -> i64 {
        match self {
            Base::Plane => 9,
            Base::Hirzebruch(_) => 8,
        }
    }

    /// Dimension of the automorphism group of the minimal surface.
    pub fn aut_dim(&self) -> i64 {
        match self {
            Base::Plane => 8,
            Base::Hirzebruch(0) => 6,
            Base::Hirzebruch(r) => *r as i64 + 5,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Base::Plane => "P2".to_string(),
            Base::Hirzebruch(r) => format!("F{r}"),
        }
    }
}

/// A smooth curve along which an infinitely near center is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentCurve {
    Fibre,
    Section,
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CenterKind {
    Free,
    /// Lies on the exceptional curve of `parent` (1-based index).
    InfinitelyNear {
        parent: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tangent: Option<TangentCurve>,
    },
    /// Lies on a curve of the partial model built from the earlier centers.
    OnCurve {
        #[serde(with = "crate::rational::serde_q_vec")]
        curve: Vec<Q>,
    },
}

/// Degrees of freedom carried by a center when counting moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Dof {
    Free,
    InfinitelyNear,
    /// One parameter for the point; the curve's parameters count once per curve id.
    OnCurve { curve: String, params: u32 },
    Determined,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupCenter {
    pub center: CenterKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dof: Option<Dof>,
}

impl BlowupCenter {
    pub fn free() -> Self {
        BlowupCenter {
            center: CenterKind::Free,
            dof: Some(Dof::Free),
        }
    }

    pub fn infinitely_near(parent: usize, tangent: Option<TangentCurve>) -> Self {
        BlowupCenter {
            center: CenterKind::InfinitelyNear { parent, tangent },
            dof: Some(Dof::InfinitelyNear),
        }
    }

    pub fn with_dof(mut self, dof: Dof) -> Self {
        self.dof = Some(dof);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub base: Base,
    pub blowups: Vec<BlowupCenter>,
}

impl SurfaceSpec {
    pub fn new(base: Base) -> Self {
        SurfaceSpec {
            base,
            blowups: Vec::new(),
        }
    }

    pub fn free_points(base: Base, n: usize) -> Self {
        SurfaceSpec {
            base,
            blowups: vec![BlowupCenter::free(); n],
        }
    }

    pub fn push(mut self, center: BlowupCenter) -> Self {
        self.blowups.push(center);
        self
    }

    /// Marks center `child` (1-based) as infinitely near `parent`.
    pub fn with_infinitely_near(
        mut self,
        child: usize,
        parent: usize,
        tangent: Option<TangentCurve>,
    ) -> Self {
        self.blowups[child - 1] = BlowupCenter::infinitely_near(parent, tangent);
        self
    }
}

/// A divisor class with exact rational coefficients over a model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coeffs: Vec<Q>,
    model: u64,
}

impl DivisorClass {
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn model_id(&self) -> u64 {
        self.model
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            model: self.model,
        }
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_model(other)?;
        Ok(DivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            model: self.model,
        })
    }

    fn same_model(&self, other: &DivisorClass) -> Result<()> {
        if self.model != other.model || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::ModelMismatch(format!(
                "rank {} (model {:x}) vs rank {} (model {:x})",
                self.coeffs.len(),
                self.model,
                other.coeffs.len(),
                other.model
            )));
        }
        Ok(())
    }

    /// Coefficients as strings, for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_q).collect()
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("adding classes of different models")
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&-Q::one())
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&q(self))
    }
}

impl Mul<&DivisorClass> for &Q {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeVerdict {
    /// `D1^2 <= 0`, the inequality says nothing.
    NotApplicable,
    Holds { lhs: Q, rhs: Q },
    /// `D1^2 * D2^2 > (D1.D2)^2`: no such pair of classes on a surface.
    Violated { lhs: Q, rhs: Q },
}

impl HodgeVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, HodgeVerdict::Violated { .. })
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    spec: SurfaceSpec,
    rank: usize,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    named: BTreeMap<String, DivisorClass>,
    id: u64,
}

/// Builds the Picard lattice of a blown-up rational surface.
pub fn build_surface(spec: &SurfaceSpec) -> Result<SurfaceModel> {
    SurfaceModel::new(spec)
}

impl SurfaceModel {
    pub fn new(spec: &SurfaceSpec) -> Result<Self> {
        validate(spec)?;
        let mut hasher = DefaultHasher::new();
        spec.hash(&mut hasher);
        let id = hasher.finish();

        let b = spec.base.rank();
        let n = spec.blowups.len();
        let rank = b + n;
        let mut gram = vec![vec![0i64; rank]; rank];
        match spec.base {
            Base::Plane => gram[0][0] = 1,
            Base::Hirzebruch(r) => {
                gram[0][0] = -(r as i64);
                gram[0][1] = 1;
                gram[1][0] = 1;
            }
        }
        for i in b..rank {
            gram[i][i] = -1;
        }

        let zero = DivisorClass {
            coeffs: vec![Q::zero(); rank],
            model: id,
        };
        let basis = |i: usize| {
            let mut c = zero.clone();
            c.coeffs[i] = Q::one();
            c
        };

        let mut named = BTreeMap::new();
        let mut canonical = zero.clone();
        match spec.base {
            Base::Plane => {
                canonical.coeffs[0] = q(-3);
                named.insert("h".to_string(), basis(0));
            }
            Base::Hirzebruch(r) => {
                canonical.coeffs[0] = q(-2);
                canonical.coeffs[1] = q(-(r as i64) - 2);
                let delta_inf = basis(0);
                let gamma = basis(1);
                named.insert("Delta_0".to_string(), &delta_inf + &(r as i64 * &gamma));
                if r == 0 {
                    named.insert("Gamma1".to_string(), delta_inf.clone());
                    named.insert("Gamma2".to_string(), gamma.clone());
                    named.insert("Delta".to_string(), &delta_inf + &gamma);
                }
                named.insert("Delta_inf".to_string(), delta_inf);
                named.insert("Gamma".to_string(), gamma);
            }
        }
        for i in 0..n {
            canonical.coeffs[b + i] = Q::one();
            named.insert(format!("E{}", i + 1), basis(b + i));
        }
        named.insert("K".to_string(), canonical.clone());

        let mut pair = 0;
        for (i, center) in spec.blowups.iter().enumerate() {
            match &center.center {
                CenterKind::Free => {}
                CenterKind::InfinitelyNear { parent, tangent } => {
                    pair += 1;
                    let e_parent = basis(b + parent - 1);
                    let e_child = basis(b + i);
                    named.insert(format!("A{pair}"), &e_parent - &e_child);
                    if let Some(t) = tangent {
                        let curve = tangent_class(&spec.base, *t, &zero, &basis)?;
                        named.insert(format!("T{}", i + 1), &(&curve - &e_parent) - &e_child);
                    }
                }
                CenterKind::OnCurve { curve } => {
                    let mut c = zero.clone();
                    for (k, v) in curve.iter().enumerate() {
                        c.coeffs[k] = v.clone();
                    }
                    named.insert(format!("C{}", i + 1), &c - &basis(b + i));
                }
            }
        }

        Ok(SurfaceModel {
            spec: spec.clone(),
            rank,
            gram,
            canonical,
            named,
            id,
        })
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn base(&self) -> &Base {
        &self.spec.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_points(&self) -> usize {
        self.spec.blowups.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn named(&self, name: &str) -> Option<&DivisorClass> {
        self.named.get(name)
    }

    pub fn named_classes(&self) -> &BTreeMap<String, DivisorClass> {
        &self.named
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            coeffs: vec![Q::zero(); self.rank],
            model: self.id,
        }
    }

    /// Exceptional class `E_i`, 1-based.
    pub fn e(&self, i: usize) -> DivisorClass {
        let mut c = self.zero();
        c.coeffs[self.spec.base.rank() + i - 1] = Q::one();
        c
    }

    pub fn class(&self, coeffs: Vec<Q>) -> Result<DivisorClass> {
        if coeffs.len() != self.rank {
            return Err(Error::ModelMismatch(format!(
                "expected {} coefficients, got {}",
                self.rank,
                coeffs.len()
            )));
        }
        Ok(DivisorClass {
            coeffs,
            model: self.id,
        })
    }

    /// `base` gives the base coefficients (`[d]` or `[a, b]`); `exc` the
    /// coefficients of `E1..`, padded with zeros.
    pub fn from_parts(&self, base: &[i64], exc: &[i64]) -> Result<DivisorClass> {
        let b = self.spec.base.rank();
        if base.len() != b || exc.len() > self.num_points() {
            return Err(Error::ModelMismatch(format!(
                "class with {} base and {} exceptional coefficients on a rank-{} model",
                base.len(),
                exc.len(),
                self.rank
            )));
        }
        let mut c = self.zero();
        for (i, v) in base.iter().chain(exc).enumerate() {
            c.coeffs[i] = q(*v);
        }
        Ok(c)
    }

    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<Q> {
        for d in [d1, d2] {
            if d.model != self.id || d.coeffs.len() != self.rank {
                return Err(Error::ModelMismatch(format!(
                    "class of model {:x} paired on model {:x}",
                    d.model, self.id
                )));
            }
        }
        let mut acc = Q::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if d1.coeffs[i].is_zero() {
                continue;
            }
            for (j, g) in row.iter().enumerate() {
                if *g != 0 {
                    acc += &d1.coeffs[i] * &d2.coeffs[j] * q(*g);
                }
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<Q> {
        self.intersect(d, d)
    }

    pub fn k_squared(&self) -> i64 {
        self.spec.base.k_squared() - self.num_points() as i64
    }

    /// `chi(O) + D.(D-K)/2`.
    pub fn riemann_roch_chi(&self, d: &DivisorClass) -> Result<Q> {
        let dk = d - &self.canonical;
        Ok(q(CHI_O) + self.intersect(d, &dk)? / q(2))
    }

    /// `1 + (D^2 + D.K)/2`.
    pub fn arithmetic_genus(&self, d: &DivisorClass) -> Result<Q> {
        let dd = self.intersect(d, d)?;
        let dk = self.intersect(d, &self.canonical)?;
        Ok(Q::one() + (dd + dk) / q(2))
    }

    pub fn hodge_violation(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<HodgeVerdict> {
        let a = self.intersect(d1, d1)?;
        let b = self.intersect(d2, d2)?;
        let c = self.intersect(d1, d2)?;
        Ok(hodge_from_numbers(&a, &b, &c))
    }

    /// Euler characteristic of the tangent sheaf, `2K^2 - 10 chi(O)`.
    pub fn chi_tangent(&self) -> i64 {
        2 * self.k_squared() - 10 * CHI_O
    }

    /// Human-readable rendering in the model's basis names.
    pub fn describe(&self, d: &DivisorClass) -> String {
        let names: Vec<String> = match self.spec.base {
            Base::Plane => vec!["h".into()],
            Base::Hirzebruch(_) => vec!["Delta_inf".into(), "Gamma".into()],
        }
        .into_iter()
        .chain((1..=self.num_points()).map(|i| format!("E{i}")))
        .collect();
        let mut out = String::new();
        for (c, name) in d.coeffs.iter().zip(&names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if !out.is_empty() || c.is_negative() {
                out.push_str(sign);
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&fmt_q(&a));
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Hodge index check on the three numbers `D1^2`, `D2^2`, `D1.D2`.
pub fn hodge_from_numbers(d1_sq: &Q, d2_sq: &Q, pairing: &Q) -> HodgeVerdict {
    if !d1_sq.is_positive() {
        return HodgeVerdict::NotApplicable;
    }
    let lhs = d1_sq * d2_sq;
    let rhs = pairing * pairing;
    if lhs > rhs {
        HodgeVerdict::Violated { lhs, rhs }
    } else {
        HodgeVerdict::Holds { lhs, rhs }
    }
}

fn tangent_class(
    base: &Base,
    t: TangentCurve,
    zero: &DivisorClass,
    basis: &dyn Fn(usize) -> DivisorClass,
) -> Result<DivisorClass> {
    match (base, t) {
        (Base::Plane, TangentCurve::Line) => Ok(basis(0)),
        (Base::Hirzebruch(_), TangentCurve::Fibre) => Ok(basis(1)),
        (Base::Hirzebruch(r), TangentCurve::Section) => {
            let mut c = zero.clone();
            c.coeffs[0] = Q::one();
            c.coeffs[1] = q(*r as i64);
            Ok(c)
        }
        (b, t) => Err(Error::Structure(format!(
            "tangent curve {t:?} is not defined on {}",
            b.label()
        ))),
    }
}

fn validate(spec: &SurfaceSpec) -> Result<()> {
    let n = spec.blowups.len();
    let b = spec.base.rank();
    for (i, c) in spec.blowups.iter().enumerate() {
        match &c.center {
            CenterKind::Free => {}
            CenterKind::InfinitelyNear { parent, .. } => {
                if *parent == 0 || *parent > n {
                    return Err(Error::Structure(format!(
                        "center {} refers to parent {parent}, outside 1..={n}",
                        i + 1
                    )));
                }
                if *parent == i + 1 {
                    return Err(Error::Structure(format!(
                        "center {} is infinitely near itself",
                        i + 1
                    )));
                }
            }
            CenterKind::OnCurve { curve } => {
                if curve.len() > b + i {
                    return Err(Error::Structure(format!(
                        "center {} lies on a curve with {} coefficients, the partial model has rank {}",
                        i + 1,
                        curve.len(),
                        b + i
                    )));
                }
            }
        }
    }
    // parent chains must terminate
    for start in 0..n {
        let mut cur = start;
        for _ in 0..=n {
            match &spec.blowups[cur].center {
                CenterKind::InfinitelyNear { parent, .. } => cur = parent - 1,
                _ => break,
            }
            if cur == start {
                return Err(Error::Structure(format!(
                    "infinitely-near relation has a cycle through center {}",
                    start + 1
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn f0_nine_with_pair() -> SurfaceModel {
        let spec = SurfaceSpec::free_points(Base::Hirzebruch(0), 9).with_infinitely_near(
            1,
            2,
            Some(TangentCurve::Section),
        );
        build_surface(&spec).unwrap()
    }

    #[test]
    fn f2_with_eight_points() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(2), 8)).unwrap();
        assert_eq!(m.rank(), 10);
        assert_eq!(m.k_squared(), 0);
        assert_eq!(m.self_intersection(m.canonical()).unwrap(), q(0));
    }

    #[test]
    fn infinitely_near_pair_gives_minus_two_class() {
        let m = f0_nine_with_pair();
        let a = m.named("A1").unwrap();
        assert_eq!(a, &(&m.e(2) - &m.e(1)));
        assert_eq!(m.self_intersection(a).unwrap(), q(-2));
        assert_eq!(m.intersect(m.canonical(), a).unwrap(), q(0));
    }

    #[test]
    fn plane_with_three_pairs() {
        let spec = SurfaceSpec::free_points(Base::Plane, 7)
            .with_infinitely_near(1, 2, None)
            .with_infinitely_near(3, 4, None)
            .with_infinitely_near(5, 6, None);
        let m = build_surface(&spec).unwrap();
        assert_eq!(m.k_squared(), 2);
        assert_eq!(m.self_intersection(m.canonical()).unwrap(), q(2));
        let minus_5k = (-5) * m.canonical();
        assert_eq!(m.riemann_roch_chi(&minus_5k).unwrap(), q(31));
    }

    #[test]
    fn appendix_pairings() {
        let m = f0_nine_with_pair();
        let l = m.from_parts(&[10, 12], &[-5; 9]).unwrap();
        let l1 = m.from_parts(&[2, 2], &[-1, -1, -1, -1, -1, -1, -1, -1]).unwrap();
        let l3 = m
            .from_parts(&[6, 8], &[-3, -3, -3, -3, -3, -3, -3, -4, -4])
            .unwrap();
        assert_eq!(m.intersect(&l, &l1).unwrap(), q(4));
        assert_eq!(m.intersect(&l, &l3).unwrap(), q(7));
        assert_eq!(m.intersect(&l, &m.zero()).unwrap(), q(0));
    }

    #[test]
    fn riemann_roch_on_f2() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(2), 8)).unwrap();
        let omega = m.from_parts(&[9, 18], &[-4; 8]).unwrap();
        assert_eq!(m.riemann_roch_chi(&omega).unwrap(), q(20));
        let gamma = m.named("Gamma").unwrap().clone();
        let d = &((-4) * m.canonical()) + &(2 * &gamma);
        assert_eq!(m.riemann_roch_chi(&d).unwrap(), q(19));
        assert_eq!(m.riemann_roch_chi(&m.zero()).unwrap(), q(1));
    }

    #[test]
    fn genus_of_fibre_and_section() {
        for r in 0..4 {
            let m = build_surface(&SurfaceSpec::new(Base::Hirzebruch(r))).unwrap();
            assert_eq!(m.arithmetic_genus(m.named("Gamma").unwrap()).unwrap(), q(0));
            assert_eq!(
                m.arithmetic_genus(m.named("Delta_inf").unwrap()).unwrap(),
                q(0)
            );
        }
    }

    #[test]
    fn hodge_examples() {
        // tau = 1, K^2 = 1: delta^2 = 17/2 + 1, K.delta = -3
        let v = hodge_from_numbers(&(qr(17, 2) + q(1)), &q(1), &q(-3));
        assert!(v.is_violation());
        let v = hodge_from_numbers(&qr(25, 2), &q(2), &q(-5));
        assert_eq!(
            v,
            HodgeVerdict::Holds {
                lhs: q(25),
                rhs: q(25)
            }
        );
        let v = hodge_from_numbers(&q(3), &q(0), &q(0));
        assert!(!v.is_violation());
        assert_eq!(
            hodge_from_numbers(&q(-1), &q(5), &q(0)),
            HodgeVerdict::NotApplicable
        );
    }

    #[test]
    fn chi_tangent_values() {
        let f0 = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0))).unwrap();
        assert_eq!(f0.chi_tangent(), 6);
        let f0_10 = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), 10)).unwrap();
        assert_eq!(f0_10.chi_tangent(), -14);
        let p2 = build_surface(&SurfaceSpec::new(Base::Plane)).unwrap();
        assert_eq!(p2.chi_tangent(), 8);
    }

    #[test]
    fn f0_alternate_basis() {
        let m = build_surface(&SurfaceSpec::new(Base::Hirzebruch(0))).unwrap();
        let delta = m.named("Delta").unwrap();
        assert_eq!(m.self_intersection(delta).unwrap(), q(2));
        let g1 = m.named("Gamma1").unwrap();
        let g2 = m.named("Gamma2").unwrap();
        assert_eq!(m.intersect(g1, g2).unwrap(), q(1));
        assert_eq!(m.self_intersection(g1).unwrap(), q(0));
    }

    #[test]
    fn structural_errors() {
        let bad = SurfaceSpec::free_points(Base::Plane, 2).with_infinitely_near(1, 5, None);
        assert!(matches!(build_surface(&bad), Err(Error::Structure(_))));
        let cyc = SurfaceSpec::free_points(Base::Plane, 2)
            .with_infinitely_near(1, 2, None)
            .with_infinitely_near(2, 1, None);
        assert!(matches!(build_surface(&cyc), Err(Error::Structure(_))));
        let selfref = SurfaceSpec::free_points(Base::Plane, 2).with_infinitely_near(2, 2, None);
        assert!(build_surface(&selfref).is_err());
    }

    #[test]
    fn model_mismatch_is_reported() {
        let a = build_surface(&SurfaceSpec::free_points(Base::Plane, 1)).unwrap();
        let b = build_surface(&SurfaceSpec::free_points(Base::Plane, 2)).unwrap();
        assert!(matches!(
            a.intersect(a.canonical(), b.canonical()),
            Err(Error::ModelMismatch(_))
        ));
    }

    #[test]
    fn describe_renders_classes() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(2), 2)).unwrap();
        assert_eq!(m.describe(m.canonical()), "-2Delta_inf-4Gamma+E1+E2");
    }
}
