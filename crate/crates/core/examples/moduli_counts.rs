//! Dimensions of the six families and the cited genus-2 table.

use surfclass::moduli::moduli_report;

fn main() -> surfclass::Result<()> {
    let r = moduli_report()?;
    for f in &r.families {
        println!(
            "{:<8} on {}: chi(Omega) - 1 + {} - {} = {}",
            f.name,
            f.base,
            f.point_dof,
            f.aut_dim,
            f.dimension
        );
    }
    for row in &r.genus2_table {
        println!("{:<8} {:>2}  {}", row.family, row.dimension, row.conditions);
    }
    println!("r = 2 rows one less than r = 0: {}", r.decrement_check);
    println!("10 chi - 2 K^2 = {}", r.kuranishi_floor);
    Ok(())
}
