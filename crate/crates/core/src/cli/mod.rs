//! Command line front end: scenario ingestion, dispatch and report output.

pub mod report;
pub mod reproduce;
pub mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classifier::{branch_data_report, enumerate_genus2_singularities, numerical_case_table, CaseTable};
use crate::covers::enumerate_tau;
use crate::error::{Error, Result};
use crate::moduli::{
    deformation_report, family_dimension, moduli_report, point_dof, six_families, FamilyRecord, ASSUMPTION_H0_IS_CHI,
};
use crate::nefcert::{
    extend_bpf, pullback_bpf, reider_bpf, run_nef, sum_bpf, weak_dp_nef, AdjointData, NefCertificate, NefEvidence,
};
use crate::picard::{build_surface, SurfaceModel};
use crate::rational::fmt_q;
pub use report::{error_exit_code, Diff, Report, Status};
use scenario::{load_scenario, BpfStep, NefPlan, Scenario};

#[derive(Debug, Parser)]
#[command(name = "surfclass", version, about = "Exact invariants, case tables and certificates for double covers of rational surfaces")]
pub struct Cli {
    /// Seed for random point configurations.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "markdown")]
    pub json: bool,
    /// Emit Markdown.
    #[arg(long, global = true)]
    pub markdown: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauArg {
    All,
    One(i64),
}

fn parse_tau(s: &str) -> std::result::Result<TauArg, String> {
    if s == "all" {
        return Ok(TauArg::All);
    }
    s.parse::<i64>()
        .map(TauArg::One)
        .map_err(|_| format!("expected `all` or an integer, got {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible tau and the numerical case tables.
    Classify {
        #[arg(long, default_value_t = 5)]
        chi: i64,
        #[arg(long, default_value_t = 9)]
        k2: i64,
        #[arg(long, default_value = "all", value_parser = parse_tau)]
        tau: TauArg,
    },
    /// Certify nefness of the scenario target through its decomposition.
    NefCheck { scenario: PathBuf },
    /// Follow a base-point-freeness plan.
    BpfCheck { scenario: PathBuf },
    /// Euler characteristics of the scenario divisors, or of the six branch classes.
    RiemannRoch { scenario: Option<PathBuf> },
    /// Family dimensions from a scenario, or the built-in families and genus-2 table.
    Moduli { scenario: Option<PathBuf> },
    /// Deformation arithmetic for the genus-2 component.
    Deform,
    /// Group singularity vectors of a given weighted sum.
    EnumerateSingularities {
        #[arg(long, default_value_t = 5)]
        target: u32,
    },
    /// Recompute every headline value and diff against the embedded table.
    ReproducePaper,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Runs a parsed command. Mathematical refutations come back as reports with exit code 1.
pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Classify { chi, k2, tau } => classify(*chi, *k2, tau),
        Command::NefCheck { scenario } => nef_check(scenario, cli.seed),
        Command::BpfCheck { scenario } => bpf_check(scenario, cli.seed),
        Command::RiemannRoch { scenario } => riemann_roch(scenario.as_deref()),
        Command::Moduli { scenario } => moduli(scenario.as_deref()),
        Command::Deform => Ok(Report::new("deform", json!({}), to_value(&deformation_report()?))),
        Command::EnumerateSingularities { target } => enumerate(*target),
        Command::ReproducePaper => reproduce::reproduce_paper(),
    }
}

fn classify(chi: i64, k2: i64, tau: &TauArg) -> Result<Report> {
    let en = enumerate_tau(k2, chi);
    let taus = match tau {
        TauArg::All => en.taus.clone(),
        TauArg::One(t) => vec![*t],
    };
    let mut tables = Vec::new();
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for e in &en.excluded {
        for w in &e.witnesses {
            witnesses.push(json!({
                "branch": e.pg_that,
                "quantity": w.quantity,
                "value": fmt_q(&w.value),
                "reason": w.reason,
            }));
        }
    }
    for t in taus {
        let table = numerical_case_table(k2, chi, t)?;
        match &table {
            CaseTable::Genus2 { tau } => {
                rows.push(json!({ "tau": tau, "genus2": true }));
                tables.push(json!({ "tau": tau, "genus2": true, "admissible": en.taus.contains(tau) }));
            }
            CaseTable::Cases { tau, relations, cases } => {
                let mut branch = Vec::new();
                for c in cases {
                    if c.survives() {
                        let mut row = json!({ "tau": c.tau, "k2_p": c.k2_p, "s": c.s });
                        // Branch data is cited only for the surviving cases of (chi, K^2) = (5, 9).
                        if let Some(b) = ((chi, k2) == (5, 9)).then(|| branch_data_report(c).ok()).flatten() {
                            row["branch"] = to_value(&b);
                        }
                        branch.push(row.clone());
                        rows.push(row);
                    } else {
                        witnesses.push(json!({
                            "tau": c.tau,
                            "k2_p": c.k2_p,
                            "s": c.s,
                            "constraint": c.exclusion_witness,
                        }));
                    }
                }
                tables.push(json!({
                    "tau": tau,
                    "admissible": en.taus.contains(tau),
                    "relations": relations,
                    "survivors": table.survivors(),
                    "cases": cases,
                    "rows": branch,
                }));
            }
        }
    }
    let mut r = Report::new(
        "classify",
        json!({ "chi": chi, "k2": k2, "tau": match tau { TauArg::All => json!("all"), TauArg::One(t) => json!(t) } }),
        json!({ "tau_enumeration": en, "tables": tables, "rows": rows }),
    );
    r.exclusion_witnesses = witnesses;
    Ok(r)
}

fn scenario_args(path: &Path, seed: Option<u64>) -> Value {
    let mut v = json!({ "scenario": path.display().to_string() });
    if let Some(s) = seed {
        v["seed"] = json!(s);
    }
    v
}

fn is_refutation(e: &Error) -> bool {
    error_exit_code(e) == 1
}

fn nef_certificate(scen: &Scenario, seed: u64) -> Result<crate::nefcert::NefRun> {
    run_nef(&scen.nef_scenario()?, seed)
}

fn nef_check(path: &Path, seed: Option<u64>) -> Result<Report> {
    let scen = load_scenario(path)?;
    let seed = seed.or(scen.seed).unwrap_or(0);
    let args = scenario_args(path, Some(seed));
    match nef_certificate(&scen, seed) {
        Ok(run) => Ok(Report::new(
            "nef-check",
            args,
            json!({
                "valid": run.certificate.valid,
                "pairings": to_value(&run.certificate.piece_pairings.iter().map(fmt_q).collect::<Vec<_>>()),
                "run": run,
            }),
        )),
        Err(e) if is_refutation(&e) => Ok(Report::refuted("nef-check", args, &e)),
        Err(e) => Err(e),
    }
}

struct EvidenceSource<'a> {
    scen: &'a Scenario,
    model: &'a SurfaceModel,
    seed: u64,
    off_minus_two: bool,
    certificate: Option<NefCertificate>,
}

impl EvidenceSource<'_> {
    fn evidence(&mut self, plan: &NefPlan) -> Result<NefEvidence> {
        match plan {
            NefPlan::Certificate => {
                if self.certificate.is_none() {
                    self.certificate = Some(nef_certificate(self.scen, self.seed)?.certificate);
                }
                Ok(NefEvidence::Certificate(self.certificate.clone().expect("set above")))
            }
            NefPlan::Anticanonical { k_multiple, pullbacks } => Ok(NefEvidence::Anticanonical {
                weak_dp: weak_dp_nef(self.model, self.off_minus_two)?,
                k_multiple: k_multiple.clone(),
                pullbacks: pullbacks.clone(),
            }),
        }
    }
}

fn bpf_check(path: &Path, seed: Option<u64>) -> Result<Report> {
    let scen = load_scenario(path)?;
    let seed = seed.or(scen.seed).unwrap_or(0);
    let args = scenario_args(path, Some(seed));
    let plan = scen
        .bpf
        .clone()
        .ok_or_else(|| Error::Scenario("bpf-check needs a bpf plan".into()))?;
    let model = scen.model()?;
    let l = scen.resolve(&model, &plan.l)?;
    let expect = plan.expect.as_ref().map(|n| scen.resolve(&model, n)).transpose()?;
    let mut steps_in = Vec::new();
    for s in &plan.steps {
        steps_in.push(match s {
            BpfStep::AddPullback(n) => (s, vec![scen.resolve(&model, n)?]),
            BpfStep::Extend { e, l, d, .. } => (
                s,
                vec![scen.resolve(&model, e)?, scen.resolve(&model, l)?, scen.resolve(&model, d)?],
            ),
        });
    }
    let mut src = EvidenceSource {
        scen: &scen,
        model: &model,
        seed,
        off_minus_two: plan.centers_off_minus_two,
        certificate: None,
    };
    let outcome = (|| -> Result<Value> {
        let ev = src.evidence(&plan.nef)?;
        let rv = reider_bpf(&model, &l, &ev)?;
        let Some(mut cur) = rv.adjoint.clone() else {
            return Err(Error::Refuted(format!(
                "Reider's criterion does not apply: {}",
                rv.reasons.join("; ")
            )));
        };
        let mut steps = vec![json!({ "step": "reider", "class": model.describe(cur.divisor()) })];
        for (s, classes) in &steps_in {
            cur = match s {
                BpfStep::AddPullback(n) => sum_bpf(&model, &cur, &pullback_bpf(&model, n)?),
                BpfStep::Extend { nef, .. } => {
                    let data = AdjointData {
                        l: classes[1].clone(),
                        l_nef: src.evidence(nef)?,
                        d: classes[2].clone(),
                    };
                    extend_bpf(&model, &cur, &classes[0], &data)?
                }
            };
            let label = match s {
                BpfStep::AddPullback(n) => format!("add |{n}|"),
                BpfStep::Extend { e, .. } => format!("extend over {e}"),
            };
            steps.push(json!({ "step": label, "class": model.describe(cur.divisor()) }));
        }
        let final_class = model.describe(cur.divisor());
        if let Some(x) = &expect {
            if x != cur.divisor() {
                return Err(Error::CrossCheck(format!(
                    "plan ends at {final_class}, expected {}",
                    model.describe(x)
                )));
            }
        }
        Ok(json!({
            "l": model.describe(&l),
            "reider": rv,
            "steps": steps,
            "final": cur,
            "final_class": final_class,
            "base_point_free": true,
        }))
    })();
    match outcome {
        Ok(v) => Ok(Report::new("bpf-check", args, v)),
        Err(e) if is_refutation(&e) => Ok(Report::refuted("bpf-check", args, &e)),
        Err(e) => Err(e),
    }
}

fn riemann_roch(path: Option<&Path>) -> Result<Report> {
    let Some(path) = path else {
        let mut out = Vec::new();
        for rec in six_families() {
            let model = build_surface(&rec.model)?;
            let omega = model.class(rec.omega.clone())?;
            out.push(json!({
                "family": rec.name,
                "base": rec.model.base.label(),
                "omega": model.describe(&omega),
                "self_intersection": fmt_q(&model.self_intersection(&omega)?),
                "k_dot": fmt_q(&model.intersect(model.canonical(), &omega)?),
                "chi": fmt_q(&model.riemann_roch_chi(&omega)?),
                "assumptions": [ASSUMPTION_H0_IS_CHI],
            }));
        }
        return Ok(Report::new("riemann-roch", json!({}), json!({ "families": out })));
    };
    let scen = load_scenario(path)?;
    let model = scen.model()?;
    let mut out = Vec::new();
    for name in scen.divisors.keys() {
        let d = scen.resolve(&model, name)?;
        out.push(json!({
            "name": name,
            "class": model.describe(&d),
            "self_intersection": fmt_q(&model.self_intersection(&d)?),
            "k_dot": fmt_q(&model.intersect(model.canonical(), &d)?),
            "chi": fmt_q(&model.riemann_roch_chi(&d)?),
            "arithmetic_genus": fmt_q(&model.arithmetic_genus(&d)?),
        }));
    }
    Ok(Report::new(
        "riemann-roch",
        scenario_args(path, None),
        json!({
            "surface": {
                "base": model.spec().base.label(),
                "k_squared": model.k_squared(),
                "chi_tangent": model.chi_tangent(),
                "canonical": model.describe(model.canonical()),
            },
            "divisors": out,
        }),
    ))
}

fn moduli(path: Option<&Path>) -> Result<Report> {
    let Some(path) = path else {
        return Ok(Report::new("moduli", json!({}), to_value(&moduli_report()?)));
    };
    let scen = load_scenario(path)?;
    let model = scen.model()?;
    let spec = scen.surface_spec()?;
    let families = scen
        .families
        .as_ref()
        .ok_or_else(|| Error::Scenario("moduli needs families".into()))?;
    let dof = point_dof(&spec).map_err(|e| Error::Scenario(format!("at surface: {e}")))?;
    let mut out = Vec::new();
    let mut diffs = Vec::new();
    for f in families {
        let rec = FamilyRecord {
            name: f.name.clone(),
            model: spec.clone(),
            omega: scen.resolve(&model, &f.omega)?.coeffs().to_vec(),
            point_dof: dof,
            aut_dim: f.aut_dim.unwrap_or(spec.base.aut_dim()),
            expected_dim: f.expected_dim,
        };
        let d = family_dimension(&rec)?;
        if let Some(x) = d.expected_dim.filter(|x| *x != d.dimension) {
            diffs.push(Diff {
                quantity: format!("dim.{}", d.name),
                expected: x.to_string(),
                got: d.dimension.to_string(),
            });
        }
        out.push(d);
    }
    let mut r = Report::new("moduli", scenario_args(path, None), json!({ "families": out }));
    if !diffs.is_empty() {
        r.status = Status::Mismatch;
        r.diffs = diffs;
    }
    Ok(r)
}

fn enumerate(target: u32) -> Result<Report> {
    let en = enumerate_genus2_singularities(target);
    let classes: Vec<Value> = en
        .classes
        .iter()
        .map(|c| json!({ "conditions": c.label(), "raw_count": c.raw_count, "gamma_coefficient": c.gamma_coefficient() }))
        .collect();
    Ok(Report::new(
        "enumerate-singularities",
        json!({ "target": target }),
        json!({
            "classes": classes,
            "class_count": en.classes.len(),
            "raw_total": en.raw_total,
            "raw_total_by_partitions": reproduce::singularity_count_by_partitions(target),
        }),
    ))
}

pub fn render(cli: &Cli, report: &Report) -> String {
    if cli.markdown {
        report.to_markdown()
    } else {
        report.to_json()
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return error_exit_code(&e);
        }
    };
    let text = render(&cli, &report);
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                let _ = writeln!(stderr, "error: {}: {e}", p.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    for d in &report.diffs {
        let _ = writeln!(stderr, "diff: {} expected {} got {}", d.quantity, d.expected, d.got);
    }
    report.exit_code()
}
