//! Solving for branch classes from pairing and self-intersection constraints.

use surfclass::classifier::{
    fibre_threshold, plane_with_pairs, scenario_f2_threshold, scenario_hodge, scenario_pencil, solve_branch_class,
};
use surfclass::picard::build_surface;
use surfclass::q;

fn main() -> surfclass::Result<()> {
    let (level, scen) = scenario_f2_threshold();
    let (lambda, a) = fibre_threshold(&level, &q(-2))?;
    let sol = solve_branch_class(&scen)?;
    let m = build_surface(&sol.model_spec)?;
    println!("F2: lambda = {lambda}, a = {a}, class {}", m.describe(&sol.class));

    for r in 0..=3 {
        let (_, scen) = scenario_pencil(1, -1, 2, r, 7);
        let sol = solve_branch_class(&scen)?;
        let m = build_surface(&sol.model_spec)?;
        println!("F{r} pencil: {}", m.describe(&sol.class));
    }

    let (_, scen) = scenario_hodge(3, 2, 0, plane_with_pairs(7, 3))?;
    let sol = solve_branch_class(&scen)?;
    println!("Hodge equality on P2 blown up at 7 points: multiple of K = {}", sol.unknowns[0]);
    Ok(())
}
