//! Admissible numbers of isolated fixed points of the canonical involution.

use surfclass::covers::enumerate_tau;

fn main() {
    let en = enumerate_tau(9, 5);
    println!("{}", en.describe());
    for (t, h) in en.taus.iter().zip(&en.h0) {
        println!("tau = {t} from h^0(2K + delta) = {h}");
    }
    for a in &en.assumptions {
        println!("assuming {a}");
    }
}
