//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! `KNOWN_DEVIATIONS` fail for documented reasons; the test asserts that the
//! failing set is exactly that list.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use surfclass::classifier::{
    enumerate_genus2_singularities, fibre_threshold, genus2_table, numerical_case_table, plane_with_pairs,
    scenario_f2_threshold, scenario_hodge, scenario_pencil, solve_branch_class,
};
use surfclass::covers::enumerate_tau;
use surfclass::moduli::{deformation_report, moduli_report};
use surfclass::nefcert::{appendix_scenario, build_system, run_nef, sample_config, PieceSpec};
use surfclass::picard::build_surface;
use surfclass::{q, qr};

/// Criterion 6: the enumeration finds a seventh class, `v(II_1)+v(IV_1)=1, v(I_2)+v(III_2)=1`,
/// absent from the cited table. Criterion 10 then reports the same diff.
const KNOWN_DEVIATIONS: [u32; 2] = [6, 10];

type Outcome = Result<(), String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn c1() -> Outcome {
    let en = enumerate_tau(9, 5);
    // tau = K^2 + 6 chi(T^) - 2 chi(S) - 2 h^0 with chi(T^) = 1 and h^0 >= 0.
    let mut oracle: Vec<i64> = (0..).map(|h0| 9 + 6 - 10 - 2 * h0).take_while(|t| *t >= 0).collect();
    oracle.reverse();
    check(en.taus == oracle && oracle == vec![1, 3, 5], || format!("taus {:?}", en.taus))?;
    // p_g(T^) = 4 gives chi(T^) = 5, tau = 8 chi(T^) - 4 chi(S) = 20 and 2(K+delta^)^2 = K^2 - tau.
    let witness = en.pg_branch_witness().cloned();
    check(witness == Some(q(9 - 20)) && witness == Some(q(-11)), || format!("witness {witness:?}"))
}

fn c2() -> Outcome {
    let t1 = numerical_case_table(9, 5, 1).map_err(|e| e.to_string())?;
    let t3 = numerical_case_table(9, 5, 3).map_err(|e| e.to_string())?;
    let s1: BTreeSet<_> = t1.survivors().into_iter().collect();
    let s3: BTreeSet<_> = t3.survivors().into_iter().collect();
    check(s1 == BTreeSet::from([(0, 0), (-1, 2)]), || format!("tau=1 survivors {s1:?}"))?;
    check(s3 == BTreeSet::from([(2, 0), (1, 2), (0, 6)]), || format!("tau=3 survivors {s3:?}"))?;
    let bare = t1
        .cases()
        .iter()
        .chain(t3.cases())
        .filter(|c| !c.survives() && (c.violated.is_empty() || c.exclusion_witness.is_none()))
        .count();
    check(bare == 0, || format!("{bare} excluded cases without a named constraint"))
}

fn c3() -> Outcome {
    let err = |e: surfclass::Error| e.to_string();
    let (level, scen) = scenario_f2_threshold();
    let (lambda, a) = fibre_threshold(&level, &q(-2)).map_err(err)?;
    let sol = solve_branch_class(&scen).map_err(err)?;
    check(sol.class.coeffs() == [q(5), q(9)], || format!("delta^ = {:?}", sol.class.coeffs()))?;
    check(lambda == qr(9, 4) && a == q(0), || format!("lambda {lambda}, a {a}"))?;
    for r in 0..=3u32 {
        let (_, scen) = scenario_pencil(1, -1, 2, r, 7);
        let b = solve_branch_class(&scen).map_err(err)?.class.coeffs()[1].clone();
        check(b == q(5 + 2 * r as i64), || format!("r={r}: b = {b}"))?;
    }
    for r in 0..=2u32 {
        let (_, scen) = scenario_pencil(3, 1, 2, r, 5);
        let b = solve_branch_class(&scen).map_err(err)?.class.coeffs()[1].clone();
        check(b == qr(9, 2) + q(2 * r as i64), || format!("r={r}: b = {b}"))?;
    }
    let (_, scen) = scenario_hodge(3, 2, 0, plane_with_pairs(7, 3)).map_err(err)?;
    let u = solve_branch_class(&scen).map_err(err)?.unknowns;
    check(u == vec![qr(-5, 2)], || format!("delta_bar = {u:?} K"))
}

/// `chi(D) = 1 + (D^2 - D.K)/2` from the coefficient form, without the library's Gram matrices.
fn chi_oracle(base: &str, a: i64, b: i64, c: &[i64]) -> i64 {
    let (d2, dk) = match base {
        "P2" => (a * a - c.iter().map(|x| x * x).sum::<i64>(), -3 * a + c.iter().sum::<i64>()),
        f => {
            let r: i64 = f[1..].parse().unwrap();
            // D = a Delta_inf + b Gamma - sum c E; K = -2 Delta_inf - (r+2) Gamma + sum E.
            let d2 = -r * a * a + 2 * a * b - c.iter().map(|x| x * x).sum::<i64>();
            let dk = 2 * r * a - a * (r + 2) - 2 * b + c.iter().sum::<i64>();
            (d2, dk)
        }
    };
    1 + (d2 - dk) / 2
}

fn c4() -> Outcome {
    let r = moduli_report().map_err(|e| e.to_string())?;
    let got: Vec<i64> = r.families.iter().map(|f| f.chi).collect();
    let oracle = vec![
        chi_oracle("F2", 9, 18, &[4; 8]),
        chi_oracle("F0", 8, 10, &[3, 3, 4, 4, 4, 4, 4, 4, 4]),
        chi_oracle("P2", 15, 0, &[5; 7]),
        chi_oracle("F0", 8, 9, &[3, 3, 4, 4, 4, 4, 4]),
        chi_oracle("P2", 12, 0, &[3, 3, 3, 3, 3, 3, 4, 4, 4]),
        chi_oracle("F0", 6, 11, &[3; 10]),
    ];
    check(got == oracle && got == vec![20, 17, 31, 28, 25, 24], || format!("chi {got:?}, oracle {oracle:?}"))?;
    check(r.families.iter().all(|f| !f.assumptions.is_empty()), || "vanishing not flagged".into())
}

fn c5() -> Outcome {
    let r = moduli_report().map_err(|e| e.to_string())?;
    let got: Vec<i64> = r.families.iter().map(|f| f.dimension).collect();
    // Point parameters and automorphism dimensions counted by hand.
    let dof_aut = [(16, 7), (17, 6), (11, 8), (11, 6), (15, 8), (15, 6)];
    let chis = [20, 17, 31, 28, 25, 24];
    let oracle: Vec<i64> = chis.iter().zip(dof_aut).map(|(c, (d, a))| c - 1 + d - a).collect();
    check(got == oracle && got == vec![28, 27, 33, 32, 31, 32], || format!("dims {got:?}"))?;
    check(r.genus2_table.len() == 12 && r.decrement_check, || "genus-2 table decrement".into())
}

/// Brute force over explicit counts of each singularity type of weight at most 5.
fn singularity_oracle() -> (u64, BTreeSet<String>) {
    // (name, weight, group label)
    let types: [(&str, u32, &str); 11] = [
        ("I_1", 1, "v(I_1)+v(III_1)+v(V)"),
        ("III_1", 1, "v(I_1)+v(III_1)+v(V)"),
        ("V", 1, "v(I_1)+v(III_1)+v(V)"),
        ("II_1", 2, "v(II_1)+v(IV_1)"),
        ("IV_1", 2, "v(II_1)+v(IV_1)"),
        ("I_2", 3, "v(I_2)+v(III_2)"),
        ("III_2", 3, "v(I_2)+v(III_2)"),
        ("II_2", 4, "v(II_2)+v(IV_2)"),
        ("IV_2", 4, "v(II_2)+v(IV_2)"),
        ("I_3", 5, "v(I_3)+v(III_3)"),
        ("III_3", 5, "v(I_3)+v(III_3)"),
    ];
    let order = ["v(I_1)+v(III_1)+v(V)", "v(II_1)+v(IV_1)", "v(I_2)+v(III_2)", "v(II_2)+v(IV_2)", "v(I_3)+v(III_3)"];
    let mut total = 0;
    let mut classes = BTreeSet::new();
    let mut counts = [0u32; 11];
    loop {
        let s: u32 = counts.iter().zip(&types).map(|(c, t)| c * t.1).sum();
        if s == 5 {
            total += 1;
            let label: Vec<String> = order
                .iter()
                .filter_map(|g| {
                    let n: u32 = counts.iter().zip(&types).filter(|(_, t)| t.2 == *g).map(|(c, _)| c).sum();
                    (n > 0).then(|| format!("{g}={n}"))
                })
                .collect();
            classes.insert(label.join(","));
        }
        // odometer over 0..=5 per type
        let mut i = 0;
        while i < 11 {
            counts[i] += 1;
            if counts[i] <= 5 {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        if i == 11 {
            break;
        }
    }
    (total, classes)
}

fn c6() -> Outcome {
    let en = enumerate_genus2_singularities(5);
    let (total, oracle_classes) = singularity_oracle();
    let got: BTreeSet<String> = en.classes.iter().map(|c| c.label()).collect();
    check(en.raw_total == total, || format!("raw total {} vs oracle {total}", en.raw_total))?;
    check(got == oracle_classes, || "grouping disagrees with the oracle".into())?;
    let table: BTreeSet<String> = genus2_table().into_iter().map(|r| r.conditions).collect();
    check(got == table, || {
        let extra: Vec<_> = got.difference(&table).collect();
        let missing: Vec<_> = table.difference(&got).collect();
        format!("{} classes vs {} table rows; not in table {extra:?}; not found {missing:?}", got.len(), table.len())
    })
}

fn c7() -> Outcome {
    let d = deformation_report().map_err(|e| e.to_string())?;
    let b = &d.log_bound;
    let got = (b.chi_tangent_ruled, b.chi_tangent_resolved, b.branch_product, b.bound.as_str());
    check(got == (6, -14, 46, "32"), || format!("log bound {got:?}"))?;
    // chi(T) = 2K^2 - 10 on F0 (K^2 = 8) and on F0 blown up at ten points.
    check((2 * 8 - 10, 2 * (8 - 10) - 10) == (6, -14), || "oracle".into())?;
    // Line bundles on F0 blown up at ten points: chi = 1 + (D^2 - D.K)/2.
    let lb = |a: i64, b: i64| {
        let d2 = 2 * a * b - 4 * 10;
        let dk = -2 * a - 2 * b - 2 * 10;
        1 + (d2 - dk) / 2
    };
    let oracle = [lb(-1, -8), lb(-3, -6)];
    check(d.split_chi == oracle && oracle == [-10, 0], || format!("split {:?}, oracle {oracle:?}", d.split_chi))?;
    check(d.h1_resolved == 42 && d.h1_tangent == 32, || format!("h1 {} / {}", d.h1_resolved, d.h1_tangent))?;
    check(d.kuranishi_floor == 10 * 5 - 2 * 9 && d.kuranishi_floor == 32, || "floor".into())
}

fn c8() -> Outcome {
    let s = appendix_scenario();
    let model = build_surface(&s.points.surface_spec()).map_err(|e| e.to_string())?;
    let PieceSpec::Interpolate { class } = &s.decomposition[2] else {
        return Err("third piece is not interpolated".into());
    };
    let l3 = model.class(class.clone()).map_err(|e| e.to_string())?;
    let sys = build_system(&sample_config(&s.points, 1).map_err(|e| e.to_string())?, &l3).map_err(|e| e.to_string())?;
    check((sys.unknowns(), sys.num_rows()) == (63, 62), || format!("{} x {}", sys.num_rows(), sys.unknowns()))?;
    for seed in [1u64, 2, 3] {
        let start = Instant::now();
        let run = run_nef(&s, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        let elapsed = start.elapsed();
        check(run.config_seed == seed, || format!("seed {seed} needed resampling"))?;
        check(run.systems.iter().all(|x| x.kernel_dim == 1), || format!("seed {seed}: kernel {:?}", run.systems))?;
        let c = &run.certificate;
        check(c.witnesses.iter().all(|w| w.verified), || format!("seed {seed}: re-verification"))?;
        check(
            c.witnesses.iter().all(|w| w.irreducible.as_ref().is_some_and(|r| r.is_absolutely_irreducible())),
            || format!("seed {seed}: irreducibility"),
        )?;
        check(c.valid && c.piece_pairings == vec![q(4), q(4), q(7)], || format!("seed {seed}: {:?}", c.piece_pairings))?;
        check(elapsed < Duration::from_secs(10), || format!("seed {seed}: {elapsed:?}"))?;
        let again = run_nef(&s, seed).map_err(|e| e.to_string())?;
        check(
            serde_json::to_string(&again).unwrap() == serde_json::to_string(&run).unwrap(),
            || format!("seed {seed}: not deterministic"),
        )?;
    }
    Ok(())
}

fn c9() -> Outcome {
    let failed: Vec<String> = common::all()
        .into_iter()
        .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
        .collect();
    check(failed.is_empty(), || failed.join("; "))
}

fn c10() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_surfclass"))
        .arg("reproduce-paper")
        .output()
        .map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let diffs = v["diffs"].as_array().cloned().unwrap_or_default();
    let quantities: Vec<&str> = diffs.iter().filter_map(|d| d["quantity"].as_str()).collect();
    check(out.status.code() == Some(0) && diffs.is_empty(), || {
        format!("exit {:?}, {} diffs: {}", out.status.code(), diffs.len(), quantities.join(", "))
    })
}

/// Writes one line to the stderr handle.
fn report(line: std::fmt::Arguments) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "tau enumeration", c1),
        (2, "case tables", c2),
        (3, "branch solving", c3),
        (4, "Riemann-Roch values", c4),
        (5, "family dimensions", c5),
        (6, "singularity enumeration", c6),
        (7, "deformation arithmetic", c7),
        (8, "appendix pipeline", c8),
        (9, "property suites", c9),
        (10, "reproduce-paper", c10),
    ];
    let mut failing = Vec::new();
    for (n, name, f) in criteria {
        match f() {
            Ok(()) => report(format_args!("criterion {n} PASS: {name}")),
            Err(why) => {
                report(format_args!("criterion {n} FAIL: {name}: {why}"));
                failing.push(n);
            }
        }
    }
    assert_eq!(failing, KNOWN_DEVIATIONS.to_vec(), "failing criteria differ from the recorded deviations");
}
