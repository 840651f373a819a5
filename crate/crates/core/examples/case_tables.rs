//! Numerical case tables and the branch data of their survivors.

use surfclass::classifier::{branch_data_report, numerical_case_table};

fn main() -> surfclass::Result<()> {
    for tau in [1, 3, 5] {
        let table = numerical_case_table(9, 5, tau)?;
        println!("tau = {tau}: survivors {:?}", table.survivors());
        for c in table.cases().iter().filter(|c| c.survives()) {
            println!("  {}", branch_data_report(c)?);
        }
        let excluded = table.cases().iter().filter(|c| !c.survives()).count();
        println!("  {excluded} cases excluded, each with a named constraint");
    }
    Ok(())
}
