//! Base-point-freeness from Reider's criterion, weak del Pezzo blow-ups and
//! extension over `(-1)`-curves.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::certificate::NefCertificate;
use crate::error::{Error, Result};
use crate::picard::{Base, DivisorClass, SurfaceModel};
use crate::rational::{fmt_q, q, Q};

pub const REIDER_WINDOW: i64 = 20;
pub const ASSUMPTION_OFF_MINUS_TWO: &str =
    "blow-up centers lie off every (-2)-curve (position flag, trusted)";
pub const ASSUMPTION_NORMAL_CROSSING: &str = "D is a normal crossing divisor (trusted)";
pub const ASSUMPTION_IRREDUCIBLE_E: &str = "E is an irreducible (-1)-curve (trusted)";

#[derive(Clone, Debug, Serialize)]
pub struct WeakDpVerdict {
    pub base: String,
    pub k_squared: i64,
    /// `-K` is big as well as nef when `K^2 > 0`.
    pub big: bool,
    pub chain: Vec<String>,
    pub assumptions: Vec<String>,
}

/// `-K` nef for an iterated blow-up of `P^2` or `F_r` (`r <= 2`) at centers
/// off the `(-2)`-curves, as long as `K^2 >= 0` at the end.
pub fn weak_dp_nef(model: &SurfaceModel, centers_off_minus_two: bool) -> Result<WeakDpVerdict> {
    let base = &model.spec().base;
    if let Base::Hirzebruch(r) = base {
        if *r > 2 {
            return Err(Error::Refuted(format!(
                "F{r} is not a weak del Pezzo surface"
            )));
        }
    }
    let k2 = model.k_squared();
    if k2 < 0 {
        return Err(Error::Refuted(format!(
            "K^2 = {k2} < 0: the weak del Pezzo rule does not apply"
        )));
    }
    if !centers_off_minus_two {
        return Err(Error::Refuted(
            "a blow-up center is flagged as lying on a (-2)-curve".into(),
        ));
    }
    let k0 = base.k_squared();
    let mut chain = vec![format!("{}: -K big and nef, K^2 = {k0}", base.label())];
    for i in 1..=model.num_points() {
        let k = k0 - i as i64;
        chain.push(if k >= 1 {
            format!("blow up p{i}: weak del Pezzo of degree {k}")
        } else {
            format!("blow up p{i}: K^2 = 0, -K nef")
        });
    }
    Ok(WeakDpVerdict {
        base: base.label(),
        k_squared: k2,
        big: k2 > 0,
        chain,
        assumptions: vec![ASSUMPTION_OFF_MINUS_TWO.to_string()],
    })
}

/// Why a class is nef.
#[derive(Clone, Debug)]
pub enum NefEvidence {
    Certificate(NefCertificate),
    /// `L = c (-K) + sum n_i P_i` with `-K` nef and each `P_i` the pullback
    /// of a nef class of the base (`h`, `Gamma`, `Delta_0`).
    Anticanonical {
        weak_dp: WeakDpVerdict,
        k_multiple: Q,
        pullbacks: Vec<(String, u32)>,
    },
}

impl NefEvidence {
    pub fn check(&self, model: &SurfaceModel, l: &DivisorClass) -> Result<Vec<String>> {
        match self {
            NefEvidence::Certificate(c) => {
                if c.target != l.to_strings() || !c.valid {
                    return Err(Error::Usage("nef certificate is for a different class".into()));
                }
                Ok(vec!["nef by certificate".to_string()])
            }
            NefEvidence::Anticanonical {
                weak_dp,
                k_multiple,
                pullbacks,
            } => {
                if k_multiple.is_negative() {
                    return Err(Error::Usage("multiple of -K must be nonnegative".into()));
                }
                if weak_dp.k_squared != model.k_squared() {
                    return Err(Error::ModelMismatch("weak del Pezzo verdict is for another model".into()));
                }
                let mut sum = (-model.canonical()).scale(k_multiple);
                for (name, n) in pullbacks {
                    if !matches!(name.as_str(), "h" | "Gamma" | "Delta_0" | "Gamma1" | "Gamma2") {
                        return Err(Error::Usage(format!("{name} is not a nef pullback")));
                    }
                    let c = model
                        .named(name)
                        .ok_or_else(|| Error::Usage(format!("no class {name}")))?;
                    sum = &sum + &(*n as i64 * c);
                }
                if &sum != l {
                    return Err(Error::Usage(format!(
                        "{} (-K) + pullbacks = {}, not {}",
                        fmt_q(k_multiple),
                        model.describe(&sum),
                        model.describe(l)
                    )));
                }
                let mut out = weak_dp.chain.clone();
                out.push(format!("L = {}(-K) + nef pullbacks", fmt_q(k_multiple)));
                Ok(out)
            }
        }
    }

    fn assumptions(&self) -> Vec<String> {
        match self {
            NefEvidence::Certificate(_) => Vec::new(),
            NefEvidence::Anticanonical { weak_dp, .. } => weak_dp.assumptions.clone(),
        }
    }
}

/// How Reider's obstructions (`L.C = 0, C^2 = -1` or `L.C = 1, C^2 = 0`) are excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReiderRoute {
    /// `L = (2a+1) K + 2 D`: `L.C` and `C^2` have the same parity.
    Parity { a: i64, d: Vec<String> },
    /// `L = m K` with `|m| >= 2`: `L.C = 0` forces `K.C = 0` and `C^2` even,
    /// and `L.C = 1` is impossible.
    MultipleOfK { m: i64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct BpfVerdict {
    /// The base point free class.
    pub class: Vec<String>,
    pub chain: Vec<String>,
    pub assumptions: Vec<String>,
    #[serde(skip)]
    pub divisor: Option<DivisorClass>,
}

impl BpfVerdict {
    pub fn divisor(&self) -> &DivisorClass {
        self.divisor.as_ref().expect("verdict built with its class")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReiderVerdict {
    pub l: Vec<String>,
    #[serde(with = "crate::rational::serde_q")]
    pub l_squared: Q,
    pub route: Option<ReiderRoute>,
    pub base_point_free: bool,
    /// `K + L` when the verdict holds.
    pub adjoint: Option<BpfVerdict>,
    pub reasons: Vec<String>,
}

/// Searches `a` in a window for an integral `D = (L - (2a+1) K) / 2` of least size.
pub fn parity_route(model: &SurfaceModel, l: &DivisorClass) -> Option<ReiderRoute> {
    let k = model.canonical();
    let mut best: Option<(Q, i64, DivisorClass)> = None;
    for a in -REIDER_WINDOW..=REIDER_WINDOW {
        let d = (l - &((2 * a + 1) * k)).scale(&crate::rational::qr(1, 2));
        if !d.is_integral() {
            continue;
        }
        let size: Q = d.coeffs().iter().map(|c| c.abs()).sum();
        if best.as_ref().map_or(true, |b| size < b.0) {
            best = Some((size, a, d));
        }
    }
    best.map(|(_, a, d)| ReiderRoute::Parity { a, d: d.to_strings() })
}

fn multiple_of_k(model: &SurfaceModel, l: &DivisorClass) -> Option<i64> {
    let k = model.canonical();
    let (idx, kc) = k.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let m = &l.coeffs()[idx] / kc;
    if !m.is_integer() || &k.scale(&m) != l {
        return None;
    }
    let m = crate::rational::to_i64(&m)?;
    (m.abs() >= 2).then_some(m)
}

pub fn reider_bpf(model: &SurfaceModel, l: &DivisorClass, evidence: &NefEvidence) -> Result<ReiderVerdict> {
    let mut reasons = evidence.check(model, l)?;
    let l2 = model.self_intersection(l)?;
    let route = parity_route(model, l).or_else(|| multiple_of_k(model, l).map(|m| ReiderRoute::MultipleOfK { m }));
    let mut ok = true;
    if l2 < q(5) {
        ok = false;
        reasons.push(format!("L^2 = {} < 5", fmt_q(&l2)));
    } else {
        reasons.push(format!("L^2 = {} >= 5", fmt_q(&l2)));
    }
    match &route {
        Some(ReiderRoute::Parity { a, d }) => {
            reasons.push(format!("L = ({})K + 2D with D = {}", 2 * a + 1, d.join(",")))
        }
        Some(ReiderRoute::MultipleOfK { m }) => reasons.push(format!("L = {m}K")),
        None => {
            ok = false;
            reasons.push("no parity decomposition of L found".into());
        }
    }
    let adjoint = ok.then(|| {
        let omega = model.canonical() + l;
        let mut chain = reasons.clone();
        chain.push(format!("|K+L| = |{}| base point free (Reider)", model.describe(&omega)));
        BpfVerdict {
            class: omega.to_strings(),
            chain,
            assumptions: evidence.assumptions(),
            divisor: Some(omega),
        }
    });
    Ok(ReiderVerdict {
        l: l.to_strings(),
        l_squared: l2,
        route,
        base_point_free: ok,
        adjoint,
        reasons,
    })
}

/// `|Gamma|` or `|h|` pulled back from the base.
pub fn pullback_bpf(model: &SurfaceModel, name: &str) -> Result<BpfVerdict> {
    if !matches!(name, "h" | "Gamma" | "Gamma1" | "Gamma2" | "Delta_0") {
        return Err(Error::Usage(format!("{name} is not a base point free pullback")));
    }
    let c = model
        .named(name)
        .cloned()
        .ok_or_else(|| Error::Usage(format!("no class {name}")))?;
    Ok(BpfVerdict {
        class: c.to_strings(),
        chain: vec![format!("|{name}| is pulled back from a base point free system")],
        assumptions: Vec::new(),
        divisor: Some(c),
    })
}

/// `|A| + |B| ⊂ |A + B|` with both base point free.
pub fn sum_bpf(model: &SurfaceModel, a: &BpfVerdict, b: &BpfVerdict) -> BpfVerdict {
    let c = a.divisor() + b.divisor();
    let mut chain = a.chain.clone();
    chain.extend(b.chain.iter().cloned());
    chain.push(format!("sum: |{}| base point free", model.describe(&c)));
    let mut assumptions = a.assumptions.clone();
    for s in &b.assumptions {
        if !assumptions.contains(s) {
            assumptions.push(s.clone());
        }
    }
    BpfVerdict {
        class: c.to_strings(),
        chain,
        assumptions,
        divisor: Some(c),
    }
}

/// `Omega = K + L + D` with `L` big and nef.
#[derive(Clone, Debug)]
pub struct AdjointData {
    pub l: DivisorClass,
    pub l_nef: NefEvidence,
    pub d: DivisorClass,
}

/// `|Omega|` base point free, `E` a `(-1)`-curve with `Omega.E > 0` and
/// `Omega = K + L + D` (`L` big and nef, `D` normal crossing) give `|Omega + E|` base point free.
pub fn extend_bpf(
    model: &SurfaceModel,
    omega: &BpfVerdict,
    e: &DivisorClass,
    data: &AdjointData,
) -> Result<BpfVerdict> {
    let om = omega.divisor();
    let e2 = model.self_intersection(e)?;
    let ke = model.intersect(model.canonical(), e)?;
    if e2 != q(-1) || ke != q(-1) {
        return Err(Error::Usage(format!(
            "E has E^2 = {}, K.E = {}; a (-1)-class needs -1, -1",
            fmt_q(&e2),
            fmt_q(&ke)
        )));
    }
    let oe = model.intersect(om, e)?;
    if !oe.is_positive() {
        return Err(Error::Refuted(format!(
            "Omega.E = {} is not positive",
            fmt_q(&oe)
        )));
    }
    let decomposed = &(model.canonical() + &data.l) + &data.d;
    if &decomposed != om {
        return Err(Error::Usage(format!(
            "K + L + D = {}, not Omega = {}",
            model.describe(&decomposed),
            model.describe(om)
        )));
    }
    let mut chain = omega.chain.clone();
    chain.extend(data.l_nef.check(model, &data.l)?);
    let l2 = model.self_intersection(&data.l)?;
    if !l2.is_positive() {
        return Err(Error::Refuted(format!("L^2 = {} so L is not big", fmt_q(&l2))));
    }
    let next = om + e;
    chain.push(format!(
        "Omega.E = {}, L^2 = {}: |{}| base point free",
        fmt_q(&oe),
        fmt_q(&l2),
        model.describe(&next)
    ));
    let mut assumptions = omega.assumptions.clone();
    for s in data
        .l_nef
        .assumptions()
        .into_iter()
        .chain([ASSUMPTION_NORMAL_CROSSING.to_string(), ASSUMPTION_IRREDUCIBLE_E.to_string()])
    {
        if !assumptions.contains(&s) {
            assumptions.push(s);
        }
    }
    Ok(BpfVerdict {
        class: next.to_strings(),
        chain,
        assumptions,
        divisor: Some(next),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::plane_with_pairs;
    use crate::picard::{build_surface, SurfaceSpec};

    fn anticanonical(model: &SurfaceModel, c: i64, pullbacks: &[(&str, u32)]) -> NefEvidence {
        NefEvidence::Anticanonical {
            weak_dp: weak_dp_nef(model, true).unwrap(),
            k_multiple: q(c),
            pullbacks: pullbacks.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
        }
    }

    #[test]
    fn f2_eight_points() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(2), 8)).unwrap();
        let wd = weak_dp_nef(&m, true).unwrap();
        assert_eq!(wd.k_squared, 0);
        let l = m.from_parts(&[10, 22], &[-5; 8]).unwrap();
        let v = reider_bpf(&m, &l, &anticanonical(&m, 5, &[("Gamma", 2)])).unwrap();
        assert!(v.base_point_free);
        assert_eq!(v.l_squared, q(40));
        assert_eq!(
            v.route,
            Some(ReiderRoute::Parity {
                a: -3,
                d: m.named("Gamma").unwrap().to_strings()
            })
        );
    }

    #[test]
    fn minus_six_k_uses_multiple_route() {
        let m = build_surface(&plane_with_pairs(7, 3)).unwrap();
        let l = -6 * m.canonical();
        assert!(parity_route(&m, &l).is_none());
        let v = reider_bpf(&m, &l, &anticanonical(&m, 6, &[])).unwrap();
        assert!(v.base_point_free);
        assert_eq!(v.l_squared, q(72));
        assert_eq!(v.route, Some(ReiderRoute::MultipleOfK { m: -6 }));
        assert_eq!(v.adjoint.unwrap().divisor(), &(-5 * m.canonical()));
    }

    #[test]
    fn negative_k_squared_refused() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), 9)).unwrap();
        assert!(matches!(weak_dp_nef(&m, true), Err(Error::Refuted(_))));
    }

    #[test]
    fn extension_needs_positive_pairing() {
        let m = build_surface(&SurfaceSpec::free_points(Base::Hirzebruch(0), 2)).unwrap();
        let omega = pullback_bpf(&m, "Gamma").unwrap();
        let data = AdjointData {
            l: -2 * m.canonical(),
            l_nef: anticanonical(&m, 2, &[]),
            d: m.zero(),
        };
        let err = extend_bpf(&m, &omega, &m.e(1), &data).unwrap_err();
        assert!(matches!(err, Error::Refuted(_)));
    }
}
