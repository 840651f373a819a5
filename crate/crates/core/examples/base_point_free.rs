//! |-4K + Gamma + E1 + E2| on F0 blown up at seven points, built from Reider's
//! criterion, a pullback and two extensions over (-1)-curves.

use surfclass::nefcert::{extend_bpf, pullback_bpf, reider_bpf, sum_bpf, weak_dp_nef, AdjointData, NefEvidence};
use surfclass::picard::{build_surface, Base, SurfaceSpec, TangentCurve};
use surfclass::q;

fn main() -> surfclass::Result<()> {
    let spec = SurfaceSpec::free_points(Base::Hirzebruch(0), 7)
        .with_infinitely_near(1, 2, None)
        .with_infinitely_near(3, 4, Some(TangentCurve::Fibre));
    let m = build_surface(&spec)?;
    let evidence = || -> surfclass::Result<NefEvidence> {
        Ok(NefEvidence::Anticanonical {
            weak_dp: weak_dp_nef(&m, true)?,
            k_multiple: q(5),
            pullbacks: Vec::new(),
        })
    };
    let l = -5 * m.canonical();
    let v = reider_bpf(&m, &l, &evidence()?)?;
    let mut omega = sum_bpf(&m, &v.adjoint.expect("L^2 = 25"), &pullback_bpf(&m, "Gamma")?);
    let gamma = m.named("Gamma").unwrap().clone();
    for (i, d) in [(1, gamma.clone()), (2, &gamma + &m.e(1))] {
        let data = AdjointData {
            l: l.clone(),
            l_nef: evidence()?,
            d,
        };
        omega = extend_bpf(&m, &omega, &m.e(i), &data)?;
    }
    for step in &omega.chain {
        println!("{step}");
    }
    println!("assumptions: {}", omega.assumptions.join("; "));
    Ok(())
}
