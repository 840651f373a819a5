//! Randomized property checks shared by the property suite and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use surfclass::covers::{quotient_invariants, QuotientGenus, QuotientInput};
use surfclass::moduli::{pv2_triple, PV2Class, PV2Ring};
use surfclass::nefcert::linalg::echelon_q;
use surfclass::nefcert::{build_system, certify_irreducible, sample_config, Ambient, BiPoly, ConfigSpec, PointSpec, Verdict};
use surfclass::picard::{build_surface, Base, BlowupCenter, SurfaceModel, SurfaceSpec};
use surfclass::{q, qr, Q};

pub const CASES: u32 = 128;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn base() -> impl Strategy<Value = Base> {
    prop_oneof![Just(Base::Plane), (0u32..=3).prop_map(Base::Hirzebruch)]
}

/// A base with up to six centers; some are infinitely near an earlier free one.
pub fn surface() -> impl Strategy<Value = SurfaceSpec> {
    (base(), proptest::collection::vec(any::<u8>(), 0..=6)).prop_map(|(b, picks)| {
        let mut spec = SurfaceSpec::new(b);
        let mut open: Vec<usize> = Vec::new();
        for (i, p) in picks.iter().enumerate() {
            if p % 3 == 0 && !open.is_empty() {
                let parent = open.remove(*p as usize % open.len());
                spec = spec.push(BlowupCenter::infinitely_near(parent, None));
            } else {
                spec = spec.push(BlowupCenter::free());
                open.push(i + 1);
            }
        }
        spec
    })
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

fn integral_class(m: &SurfaceModel, raw: &[i64]) -> surfclass::picard::DivisorClass {
    m.class(raw.iter().take(m.rank()).map(|&v| q(v)).collect()).unwrap()
}

fn model_and_classes() -> impl Strategy<Value = (SurfaceSpec, Vec<Vec<Q>>, Q, Q)> {
    (surface(), proptest::collection::vec(proptest::collection::vec(rational(), 8), 3), rational(), rational())
}

pub fn intersection_bilinear_symmetric() -> Result<(), String> {
    run(model_and_classes(), |(spec, raw, a, b)| {
        let m = build_surface(&spec).unwrap();
        let c: Vec<_> = raw.iter().map(|v| m.class(v[..m.rank()].to_vec()).unwrap()).collect();
        let ab = m.intersect(&c[0], &c[1]).unwrap();
        prop_assert_eq!(&ab, &m.intersect(&c[1], &c[0]).unwrap());
        let combo = &c[0].scale(&a) + &c[1].scale(&b);
        let lhs = m.intersect(&combo, &c[2]).unwrap();
        let rhs = &a * m.intersect(&c[0], &c[2]).unwrap() + &b * m.intersect(&c[1], &c[2]).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn riemann_roch_integral_and_serre() -> Result<(), String> {
    let strat = (surface(), proptest::collection::vec(-8i64..=8, 8));
    run(strat, |(spec, raw)| {
        let m = build_surface(&spec).unwrap();
        let d = integral_class(&m, &raw);
        let chi = m.riemann_roch_chi(&d).unwrap();
        prop_assert!(chi.is_integer(), "chi = {chi}");
        let dual = m.canonical() - &d;
        prop_assert_eq!(&chi, &m.riemann_roch_chi(&dual).unwrap());
        let pa = m.arithmetic_genus(&d).unwrap();
        prop_assert!(pa.is_integer());
        Ok(())
    })
}

pub fn covers_identity() -> Result<(), String> {
    let strat = (-20i64..=20, 1i64..=10, 0i64..=30, -30i64..=30, any::<bool>());
    run(strat, |(k2_s, chi_s, tau, kr, pg)| {
        let input = QuotientInput {
            k2_s,
            chi_s,
            tau,
            kr,
            pg_that: if pg { QuotientGenus::Zero } else { QuotientGenus::EqualsPgS },
        };
        let inv = quotient_invariants(&input);
        prop_assert_eq!(inv.sq_k_plus_deltahat.clone(), inv.sq_k_plus_deltabar.clone() - qr(tau, 2));
        Ok(())
    })
}

fn config_spec() -> impl Strategy<Value = ConfigSpec> {
    let ambient = prop_oneof![Just(Ambient::Plane), (0u32..=2).prop_map(Ambient::Hirzebruch)];
    (ambient, proptest::collection::vec(any::<u8>(), 1..=5)).prop_map(|(ambient, picks)| {
        let mut points = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        for (i, p) in picks.iter().enumerate() {
            if p % 4 == 0 && !open.is_empty() {
                let parent = open.remove(*p as usize % open.len());
                let axis = if p % 8 == 0 {
                    surfclass::nefcert::Axis::AlongX
                } else {
                    surfclass::nefcert::Axis::AlongY
                };
                points.push(PointSpec::InfinitelyNear { parent, axis });
            } else {
                points.push(PointSpec::Free);
                open.push(i + 1);
            }
        }
        ConfigSpec {
            ambient,
            points,
            range: Some(6),
        }
    })
}

pub fn interpolation_rank_nullity() -> Result<(), String> {
    let strat = (config_spec(), 1i64..=4, 0i64..=4, proptest::collection::vec(0i64..=2, 5), any::<u64>());
    run(strat, |(spec, a, b, mults, seed)| {
        let cfg = sample_config(&spec, seed).unwrap();
        let m = build_surface(&cfg.surface_spec()).unwrap();
        let mut coeffs = match spec.ambient {
            Ambient::Plane => vec![q(a + b)],
            Ambient::Hirzebruch(_) => vec![q(a), q(a + b)],
        };
        coeffs.extend(mults.iter().take(spec.points.len()).map(|&k| q(-k)));
        let class = m.class(coeffs).unwrap();
        let sys = match build_system(&cfg, &class) {
            Ok(s) => s,
            // Multiplicity orderings the configuration cannot carry.
            Err(_) => return Ok(()),
        };
        let n = sys.unknowns();
        let e = echelon_q(&sys.rows, n);
        let kernel = e.kernel();
        prop_assert_eq!(e.rank() + kernel.len(), n);
        for v in &kernel {
            for row in &sys.rows {
                let dot: Q = row.iter().zip(v).map(|(r, x)| r * x).sum();
                prop_assert_eq!(dot, q(0));
            }
        }
        Ok(())
    })
}

fn box_poly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec(-3i64..=3, 15).prop_map(move |c| {
        let mut k = 0;
        let mut terms = Vec::new();
        for i in 0..=4u32 {
            for j in 0..=4 - i {
                if i + j <= max_deg {
                    terms.push(((i, j), q(c[k])));
                }
                k += 1;
            }
        }
        BiPoly::from_terms(terms)
    })
}

fn divides(f: &BiPoly, g: &BiPoly) -> bool {
    // Long division in y with quotients in Q[x].
    let fy = f.to_y_coeffs();
    let gy = g.to_y_coeffs();
    let Some(lead) = gy.last().cloned() else { return false };
    let mut r = fy.clone();
    let dg = gy.len() - 1;
    while r.len() > dg && !r.is_empty() {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        let (qt, rem) = top.divrem(&lead);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dg;
        for (k, gk) in gy.iter().enumerate() {
            r[shift + k] = r[shift + k].sub(&qt.mul(gk));
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Newton polygon the triangle `(0,0), (m,0), (0,n)` with `gcd(m, n) = 1`:
/// integrally indecomposable, so the polynomial is absolutely irreducible.
fn triangle_poly() -> impl Strategy<Value = BiPoly> {
    let shapes = prop_oneof![Just((1u32, 1u32)), Just((1, 2)), Just((2, 1)), Just((1, 3)), Just((3, 1)), Just((2, 3)), Just((3, 2)), Just((1, 4)), Just((4, 1)), Just((3, 4)), Just((4, 3))];
    let nz = prop_oneof![-3i64..=-1, 1i64..=3];
    (shapes, nz.clone(), nz.clone(), nz, proptest::collection::vec(-3i64..=3, 25)).prop_map(|((m, n), a, b, c, rest)| {
        let mut terms = vec![((m, 0), q(a)), ((0, n), q(b)), ((0, 0), q(c))];
        let mut k = 0;
        for i in 0..=m {
            for j in 0..=n {
                let inside = (i * n + j * m) <= m * n;
                let vertex = (i, j) == (m, 0) || (i, j) == (0, n) || (i, j) == (0, 0);
                if inside && !vertex && i + j <= 4 {
                    terms.push(((i, j), q(rest[k % rest.len()])));
                }
                k += 1;
            }
        }
        BiPoly::from_terms(terms)
    })
}

pub fn irreducibility_oracle() -> Result<(), String> {
    #[derive(Debug, Clone)]
    enum Case {
        Product(BiPoly, BiPoly),
        Norm(BiPoly, BiPoly, i64),
        Triangle(BiPoly),
        Uniform(BiPoly),
    }
    let nonconst = |d| box_poly(d).prop_filter("nonconstant", |p| !p.is_constant());
    let case = prop_oneof![
        (nonconst(2), nonconst(2)).prop_map(|(g, h)| Case::Product(g, h)),
        (nonconst(1), nonconst(3)).prop_map(|(g, h)| Case::Product(g, h)),
        (nonconst(2), box_poly(2).prop_filter("nonzero", |p| !p.is_zero()), prop_oneof![Just(-1i64), Just(-2), Just(2), Just(3)])
            .prop_map(|(g1, g2, d)| Case::Norm(g1, g2, d)),
        triangle_poly().prop_map(Case::Triangle),
        nonconst(4).prop_map(Case::Uniform),
    ];
    run((case, any::<u64>()), |(case, seed)| {
        let (f, truth) = match &case {
            Case::Product(g, h) => (g.mul(h), Some(false)),
            Case::Norm(g1, g2, d) => (g1.mul(g1).sub(&g2.mul(g2).scale(&q(*d))), Some(false)),
            Case::Triangle(f) => (f.clone(), Some(true)),
            Case::Uniform(f) => (f.clone(), None),
        };
        if f.is_constant() {
            return Ok(());
        }
        let r = certify_irreducible(&f, seed).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(r.verdict != Verdict::Inconclusive, "inconclusive on {f}");
        if let Verdict::Reducible { witness: Some(w) } = &r.verdict {
            prop_assert!(!w.is_constant() && divides(&f, w), "witness {w} does not divide {f}");
        }
        if let Some(t) = truth {
            prop_assert_eq!(r.is_absolutely_irreducible(), t, "{} on {}", r.method, f);
        }
        if let (Case::Norm(..), Some(k)) = (&case, r.absolute_factors) {
            prop_assert!(k >= 2);
        }
        Ok(())
    })
}

pub fn pv2_symmetric() -> Result<(), String> {
    let cls = || (-5i64..=5, -20i64..=20).prop_map(|(h, g)| PV2Class::new(h, g));
    run((1i64..=40, cls(), cls(), cls()), |(d, a, b, c)| {
        let ring = PV2Ring { d };
        let t = pv2_triple(ring, a, b, c);
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            prop_assert_eq!(t, pv2_triple(ring, x, y, z));
        }
        Ok(())
    })
}

fn cli_bytes(args: &[String]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = surfclass::cli::run(std::iter::once("surfclass".to_string()).chain(args.iter().cloned()), &mut out, &mut err);
    (code, out)
}

pub fn reports_byte_stable() -> Result<(), String> {
    let args = prop_oneof![
        (prop_oneof![Just("all".to_string()), (0i64..=5).prop_map(|t| t.to_string())], any::<bool>()).prop_map(|(t, md)| {
            let mut v = vec!["classify".into(), "--tau".into(), t];
            if md {
                v.push("--markdown".into());
            }
            v
        }),
        (0u32..=7).prop_map(|t| vec!["enumerate-singularities".into(), "--target".into(), t.to_string()]),
        Just(vec!["deform".to_string()]),
        Just(vec!["moduli".to_string()]),
        Just(vec!["riemann-roch".to_string()]),
    ];
    run(args, |args| {
        let (c1, a) = cli_bytes(&args);
        let (c2, b) = cli_bytes(&args);
        prop_assert_eq!(c1, 0);
        prop_assert_eq!(c1, c2);
        prop_assert!(a == b, "reports differ for {:?}", args);
        Ok(())
    })
}

pub fn all() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("intersection form bilinear and symmetric", intersection_bilinear_symmetric()),
        ("Riemann-Roch integral and Serre symmetric", riemann_roch_integral_and_serre()),
        ("covers identity", covers_identity()),
        ("rank-nullity on interpolation systems", interpolation_rank_nullity()),
        ("irreducibility oracle agreement", irreducibility_oracle()),
        ("byte-stable reports", reports_byte_stable()),
        ("triple product symmetric", pv2_symmetric()),
    ]
}
