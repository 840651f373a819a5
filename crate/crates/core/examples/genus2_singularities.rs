//! Singularity vectors of weighted sum 5 grouped as in the genus-2 table.

use surfclass::classifier::{enumerate_genus2_singularities, genus2_table_conditions};

fn main() {
    let en = enumerate_genus2_singularities(5);
    let cited = genus2_table_conditions();
    println!("{} vectors in {} classes", en.raw_total, en.classes.len());
    for c in &en.classes {
        let mark = if cited.contains(&c.label()) { "" } else { "  (not a cited row)" };
        println!(
            "{:>3} vectors: {}; branch 6 Delta + {} Gamma{mark}",
            c.raw_count,
            c.label(),
            c.gamma_coefficient()
        );
    }
}
