//! h^1 of the tangent sheaf for the general genus-2 surface with K^2 = 9, chi = 5.

use surfclass::moduli::deformation_report;

fn main() -> surfclass::Result<()> {
    let d = deformation_report()?;
    let b = &d.log_bound;
    println!(
        "conic bundle: chi(T) {} -> {}, branch product {}, bound {}",
        b.chi_tangent_ruled, b.chi_tangent_resolved, b.branch_product, b.bound
    );
    println!(
        "blown-up route: {} {} + {} = {}",
        d.blown_up_route.minus_chi_tangent,
        d.blown_up_route.minus_chi_canonical,
        d.blown_up_route.chi_k_minus_b,
        d.blown_up_route.total
    );
    println!("split Euler characteristics {:?}", d.split_chi);
    println!(
        "h^1 = {} + {} = {}, minus {} gives {}",
        d.invariant_h1, d.anti_invariant_h1, d.h1_resolved, d.relative_h0, d.h1_tangent
    );
    println!("10 chi - 2 K^2 = {}", d.kuranishi_floor);
    Ok(())
}
