//! Nefness of 10 Delta_inf + 12 Gamma - 5 sum E through three interpolated curves.

use surfclass::nefcert::{appendix_scenario, run_nef};

fn main() -> surfclass::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let run = run_nef(&appendix_scenario(), seed)?;
    for s in &run.systems {
        println!(
            "piece {}: {} unknowns, {} rows, rank {}, kernel {}",
            s.piece, s.unknowns, s.rows, s.rank, s.kernel_dim
        );
    }
    for w in &run.certificate.witnesses {
        let irr = w.irreducible.as_ref().expect("pipeline certifies every member");
        println!("member with {} terms: {:?} by {}", w.polynomial.num_terms(), irr.verdict, irr.method);
    }
    let pairings: Vec<String> = run.certificate.piece_pairings.iter().map(|p| p.to_string()).collect();
    println!("L.L_i = {}, valid = {}", pairings.join(", "), run.certificate.valid);
    Ok(())
}
