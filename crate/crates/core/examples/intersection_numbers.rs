//! Intersection numbers, Riemann-Roch and named curves on a blown-up surface.

use surfclass::picard::{build_surface, Base, SurfaceSpec, TangentCurve};

fn main() -> surfclass::Result<()> {
    let spec = SurfaceSpec::free_points(Base::Hirzebruch(0), 9).with_infinitely_near(1, 2, Some(TangentCurve::Fibre));
    let m = build_surface(&spec)?;
    let k = m.canonical();
    println!("K = {}, K^2 = {}, chi(T) = {}", m.describe(k), m.k_squared(), m.chi_tangent());

    let omega = m.from_parts(&[8, 10], &[-3, -3, -4, -4, -4, -4, -4, -4, -4])?;
    println!(
        "Omega = {}: Omega^2 = {}, K.Omega = {}, chi = {}, p_a = {}",
        m.describe(&omega),
        m.self_intersection(&omega)?,
        m.intersect(k, &omega)?,
        m.riemann_roch_chi(&omega)?,
        m.arithmetic_genus(&omega)?
    );
    for (name, c) in m.named_classes() {
        if name.starts_with('A') || name.starts_with('T') {
            println!("{name} = {} with self-intersection {}", m.describe(c), m.self_intersection(c)?);
        }
    }
    Ok(())
}
