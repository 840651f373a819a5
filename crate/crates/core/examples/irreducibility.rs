//! Absolute irreducibility verdicts for a few bivariate polynomials.

use surfclass::nefcert::{certify_irreducible, BiPoly, Verdict};

fn main() -> surfclass::Result<()> {
    let cases = [
        ("y^2 - x^3 - x", BiPoly::from_grid(&[vec![0, 0, 1], vec![-1], vec![], vec![-1]])),
        ("x^2 + y^2", BiPoly::from_grid(&[vec![0, 0, 1], vec![], vec![1]])),
        ("(x - y)(x + y + 1)", BiPoly::from_grid(&[vec![0, -1, -1], vec![1], vec![1]])),
    ];
    for (name, p) in cases {
        let r = certify_irreducible(&p, 1)?;
        let verdict = match &r.verdict {
            Verdict::AbsolutelyIrreducible => "absolutely irreducible".to_string(),
            Verdict::Reducible { witness: Some(f) } => format!("reducible, factor {f}"),
            Verdict::Reducible { witness: None } => "reducible over an extension".to_string(),
            Verdict::Inconclusive => "inconclusive".to_string(),
        };
        println!("{name}: {verdict} ({})", r.method);
    }
    Ok(())
}
