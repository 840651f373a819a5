//! Numerical invariants of a surface `S` with an involution and of the
//! resolved quotient `T^`.
//!
//! Only the numbers are modelled: `K_S^2`, `chi(O_S)`, the count `tau` of
//! isolated fixed points, `K_S.R` for the divisorial fixed locus `R`, and the
//! derived quantities on `T^` for the half branch classes `delta^` and
//! `delta_bar = delta^ - A/2`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, q, Q};

/// Geometric genus of the quotient: the two possibilities for a canonical involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientGenus {
    Zero,
    EqualsPgS,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientInput {
    pub k2_s: i64,
    pub chi_s: i64,
    pub tau: i64,
    pub kr: i64,
    pub pg_that: QuotientGenus,
}

impl QuotientInput {
    /// Fixes `K_S.R` from a prescribed `chi(O_T^)`.
    pub fn with_chi_that(k2_s: i64, chi_s: i64, tau: i64, pg_that: QuotientGenus, chi_that: i64) -> Self {
        QuotientInput {
            k2_s,
            chi_s,
            tau,
            kr: tau + 4 * chi_s - 8 * chi_that,
            pg_that,
        }
    }
}

/// A quantity that had to be an integer (or nonnegative) and is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub quantity: String,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    #[serde(with = "crate::rational::serde_q")]
    pub chi_that: Q,
    /// `(K + delta^)^2`
    #[serde(with = "crate::rational::serde_q")]
    pub sq_k_plus_deltahat: Q,
    /// `(K + delta_bar)^2`
    #[serde(with = "crate::rational::serde_q")]
    pub sq_k_plus_deltabar: Q,
    /// `h^0(2K + delta^)`, under the vanishing of higher cohomology.
    #[serde(with = "crate::rational::serde_q")]
    pub h0_2k_deltahat: Q,
    /// `(K + delta^).delta^`
    #[serde(with = "crate::rational::serde_q")]
    pub pairing_k_deltahat_deltahat: Q,
    pub contradictions: Vec<Contradiction>,
}

impl QuotientInvariants {
    pub fn is_consistent(&self) -> bool {
        self.contradictions.is_empty()
    }
}

pub fn quotient_invariants(input: &QuotientInput) -> QuotientInvariants {
    let k2 = q(input.k2_s);
    let chi_s = q(input.chi_s);
    let tau = q(input.tau);

    let chi_that = &chi_s / q(2) - (q(input.kr) - &tau) / q(8);
    let sq_bar = &k2 / q(2);
    let sq_hat = (&k2 - &tau) / q(2);
    let h0 = (&k2 + q(6) * &chi_that - q(2) * &chi_s - &tau) / q(2);
    let pairing = q(2) * (&chi_s - q(2) * &chi_that);

    let mut contradictions = Vec::new();
    if !chi_that.is_integer() {
        contradictions.push(Contradiction {
            quantity: "chi(O_T^)".into(),
            value: chi_that.clone(),
            reason: "Euler characteristic is not an integer".into(),
        });
    }
    // K + delta^ is Cartier, so 2(K + delta^)^2 must be even.
    let twice_hat = q(2) * &sq_hat;
    if !sq_hat.is_integer() {
        contradictions.push(Contradiction {
            quantity: "2(K_T^+delta^)^2".into(),
            value: twice_hat,
            reason: "self-intersection of a Cartier divisor is not an integer".into(),
        });
    }
    if !h0.is_integer() {
        contradictions.push(Contradiction {
            quantity: "h0(2K_T^+delta^)".into(),
            value: h0.clone(),
            reason: "dimension is not an integer".into(),
        });
    } else if h0.is_negative() {
        contradictions.push(Contradiction {
            quantity: "h0(2K_T^+delta^)".into(),
            value: h0.clone(),
            reason: "dimension is negative".into(),
        });
    }
    if input.tau < 0 {
        contradictions.push(Contradiction {
            quantity: "tau".into(),
            value: tau,
            reason: "count of fixed points is negative".into(),
        });
    }

    QuotientInvariants {
        chi_that,
        sq_k_plus_deltahat: sq_hat,
        sq_k_plus_deltabar: sq_bar,
        h0_2k_deltahat: h0,
        pairing_k_deltahat_deltahat: pairing,
        contradictions,
    }
}

/// Recovers `tau` from item 6 given `h^0(2K + delta^)`.
pub fn tau_from_h0(k2_s: i64, chi_s: i64, chi_that: &Q, h0: &Q) -> Q {
    q(k2_s) + q(6) * chi_that - q(2 * chi_s) - q(2) * h0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedBranch {
    pub pg_that: QuotientGenus,
    pub input: QuotientInput,
    pub witnesses: Vec<Contradiction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauEnumeration {
    pub k2_s: i64,
    pub chi_s: i64,
    pub taus: Vec<i64>,
    /// `h^0(2K + delta^)` for each entry of `taus`.
    pub h0: Vec<i64>,
    pub excluded: Vec<ExcludedBranch>,
    pub assumptions: Vec<String>,
}

pub const ASSUMPTION_CHI_THAT: &str = "chi(O_T^)=1 on the p_g(T^)=0 branch (q(T^)=0)";
pub const ASSUMPTION_VANISHING: &str = "h^i(2K_T^+delta^)=0 for i>0 (h0 equated with chi)";

/// All admissible `tau` for a canonical involution with `q(S) = 0`.
pub fn enumerate_tau(k2_s: i64, chi_s: i64) -> TauEnumeration {
    let chi_that = 1;
    let top = k2_s + 6 * chi_that - 2 * chi_s;
    let mut taus = Vec::new();
    let mut h0s = Vec::new();
    let mut h0 = 0;
    while top - 2 * h0 >= 0 {
        taus.push(top - 2 * h0);
        h0s.push(h0);
        h0 += 1;
    }
    taus.reverse();
    h0s.reverse();

    // p_g(T^) = p_g(S) = chi_S - 1 with R empty, so chi(O_T^) = chi_S and K_S.R = 0.
    let mut excluded = Vec::new();
    let chi_hat_pg = chi_s;
    let tau_pg = 8 * chi_hat_pg - 4 * chi_s;
    let input = QuotientInput {
        k2_s,
        chi_s,
        tau: tau_pg,
        kr: 0,
        pg_that: QuotientGenus::EqualsPgS,
    };
    let inv = quotient_invariants(&input);
    if !inv.is_consistent() {
        excluded.push(ExcludedBranch {
            pg_that: QuotientGenus::EqualsPgS,
            input,
            witnesses: inv.contradictions,
        });
    }

    TauEnumeration {
        k2_s,
        chi_s,
        taus,
        h0: h0s,
        excluded,
        assumptions: vec![ASSUMPTION_CHI_THAT.into(), ASSUMPTION_VANISHING.into()],
    }
}

impl TauEnumeration {
    /// The witness value excluding the `p_g(T^) = p_g(S)` branch, if any.
    pub fn pg_branch_witness(&self) -> Option<&Q> {
        self.excluded
            .iter()
            .find(|e| e.pg_that == QuotientGenus::EqualsPgS)
            .and_then(|e| e.witnesses.first())
            .map(|w| &w.value)
    }

    pub fn describe(&self) -> String {
        let taus: Vec<String> = self.taus.iter().map(|t| t.to_string()).collect();
        let mut s = format!("tau in {{{}}}", taus.join(","));
        for e in &self.excluded {
            for w in &e.witnesses {
                s.push_str(&format!("; excluded p_g(T^)=p_g(S): {} = {}", w.quantity, fmt_q(&w.value)));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn pg_four_branch_gives_minus_eleven() {
        let inv = quotient_invariants(&QuotientInput {
            k2_s: 9,
            chi_s: 5,
            tau: 20,
            kr: 0,
            pg_that: QuotientGenus::EqualsPgS,
        });
        assert_eq!(inv.sq_k_plus_deltahat, qr(-11, 2));
        assert_eq!(inv.chi_that, q(5));
        assert_eq!(inv.contradictions[0].quantity, "2(K_T^+delta^)^2");
        assert_eq!(inv.contradictions[0].value, q(-11));
    }

    #[test]
    fn h0_for_pg_zero_branch() {
        for tau in [1, 3, 5] {
            let input = QuotientInput::with_chi_that(9, 5, tau, QuotientGenus::Zero, 1);
            let inv = quotient_invariants(&input);
            assert_eq!(inv.chi_that, q(1));
            assert_eq!(inv.h0_2k_deltahat, qr(5 - tau, 2));
            assert!(inv.is_consistent());
        }
    }

    #[test]
    fn free_involution() {
        let inv = quotient_invariants(&QuotientInput {
            k2_s: 8,
            chi_s: 4,
            tau: 0,
            kr: 0,
            pg_that: QuotientGenus::Zero,
        });
        assert_eq!(inv.chi_that, q(2));
    }

    #[test]
    fn tau_enumeration() {
        let e = enumerate_tau(9, 5);
        assert_eq!(e.taus, vec![1, 3, 5]);
        assert_eq!(e.h0, vec![2, 1, 0]);
        assert_eq!(e.pg_branch_witness(), Some(&q(-11)));
        assert!(enumerate_tau(1, 5).taus.is_empty());
    }

    #[test]
    fn tau_recovered_from_h0() {
        assert_eq!(tau_from_h0(9, 5, &q(1), &q(2)), q(1));
    }
}
