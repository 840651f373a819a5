//! Absolute irreducibility of bivariate polynomials.
//!
//! The decision uses Ruppert's criterion: a squarefree `f` of bidegree
//! `(m, n)` with no factor in one variable alone is absolutely irreducible
//! iff `f g_y - g f_y = f h_x - h f_x` has no nonzero solution with
//! `deg g <= (m-1, n)` and `deg h <= (m, n-2)`. Full column rank of that
//! system mod `p` already implies full rank over `Q`. Factors are recovered
//! with Gao's variant (`deg h <= (m, n-1)`), whose kernel over `Q` has one
//! dimension per rational factor.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{echelon_q, rank_mod_p};
use super::poly::{
    bivariate_div_exact, bivariate_gcd, content_in_x, inv_mod, mul_mod, next_prime, q_mod_p,
    BiPoly, UPoly,
};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

pub const PRIME_ATTEMPTS: usize = 5;
/// Beyond this many (terms x height bits), exact ranks are not attempted.
pub const EXACT_BUDGET: u64 = 200_000;
const ROOT_SEARCH_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    AbsolutelyIrreducible,
    Reducible {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<BiPoly>,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub method: String,
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ruppert_unknowns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ruppert_rank: Option<usize>,
    /// Dimension of Gao's solution space mod `p` (cross-check of an irreducible verdict).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gao_dim_mod_p: Option<usize>,
    /// Number of absolutely irreducible factors: the dimension of Gao's space over `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absolute_factors: Option<usize>,
}

impl IrreducibilityReport {
    fn new(verdict: Verdict, method: &str) -> Self {
        IrreducibilityReport {
            verdict,
            method: method.to_string(),
            primes: Vec::new(),
            ruppert_unknowns: None,
            ruppert_rank: None,
            gao_dim_mod_p: None,
            absolute_factors: None,
        }
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        self.verdict == Verdict::AbsolutelyIrreducible
    }
}

pub fn certify_irreducible(f: &BiPoly, seed: u64) -> Result<IrreducibilityReport> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::Usage("irreducibility of a constant polynomial".into()));
    }
    let f = f.primitive_integer();
    let (m, n) = (f.deg_x(), f.deg_y());
    if n == 0 || m == 0 {
        return Ok(univariate(&f, n == 0));
    }

    let cx = content_in_x(&f.to_y_coeffs());
    if cx.degree().unwrap_or(0) > 0 {
        return Ok(reducible(upoly_in_x(&cx), "content"));
    }
    let cy = content_in_x(&f.swap().to_y_coeffs());
    if cy.degree().unwrap_or(0) > 0 {
        return Ok(reducible(upoly_in_x(&cy).swap(), "content"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<u64> = (0..PRIME_ATTEMPTS)
        .map(|_| next_prime(rng.gen_range(1u64 << 61..1u64 << 62)))
        .collect();

    if !squarefree_mod_p(&f, &primes, &mut rng) {
        let g = bivariate_gcd(&f, &f.derivative(0, 1));
        if !g.is_constant() {
            return Ok(reducible(g, "squarefree"));
        }
    }

    let ruppert = DiffSystem::new(&f, n.saturating_sub(2), n >= 2);
    let cols = ruppert.columns.len();
    let mut used = Vec::new();
    let mut best_rank = 0;
    for &p in &primes {
        if !same_bidegree_mod_p(&f, p) {
            continue;
        }
        used.push(p);
        let Some(mat) = ruppert.mod_p(p) else { continue };
        let r = rank_mod_p(mat, cols, p);
        best_rank = best_rank.max(r);
        if r == cols {
            let mut rep = IrreducibilityReport::new(Verdict::AbsolutelyIrreducible, "ruppert-mod-p");
            rep.primes = used;
            rep.ruppert_unknowns = Some(cols);
            rep.ruppert_rank = Some(r);
            rep.gao_dim_mod_p = Some(gao_cross_check(&f, &primes)?);
            return Ok(rep);
        }
    }

    let budget = f.num_terms() as u64 * f.height_bits().max(1);
    if budget > EXACT_BUDGET {
        let mut rep = IrreducibilityReport::new(Verdict::Inconclusive, "ruppert-mod-p");
        rep.primes = used;
        rep.ruppert_unknowns = Some(cols);
        rep.ruppert_rank = Some(best_rank);
        return Ok(rep);
    }
    let exact = echelon_q(&ruppert.rows_q(), cols).rank();
    if exact < best_rank {
        return Err(Error::CrossCheck(format!(
            "rank over Q ({exact}) below rank mod p ({best_rank})"
        )));
    }
    let mut rep = if exact == cols {
        IrreducibilityReport::new(Verdict::AbsolutelyIrreducible, "ruppert-exact")
    } else {
        let (factors, witness) = gao_factor(&f, &mut rng)?;
        let mut r = IrreducibilityReport::new(Verdict::Reducible { witness }, "ruppert-exact+gao");
        r.absolute_factors = Some(factors);
        r
    };
    rep.primes = used;
    rep.ruppert_unknowns = Some(cols);
    rep.ruppert_rank = Some(exact);
    Ok(rep)
}

fn reducible(witness: BiPoly, method: &str) -> IrreducibilityReport {
    IrreducibilityReport::new(
        Verdict::Reducible {
            witness: Some(witness.primitive_integer()),
        },
        method,
    )
}

fn upoly_in_x(p: &UPoly) -> BiPoly {
    BiPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| ((i as u32, 0), a.clone())),
    )
}

/// A polynomial in one variable splits over the algebraic closure unless it is linear.
fn univariate(f: &BiPoly, in_x: bool) -> IrreducibilityReport {
    let p = if in_x { f.eval_y(&q(0)) } else { f.eval_x(&q(0)) };
    if p.degree() == Some(1) {
        return IrreducibilityReport::new(Verdict::AbsolutelyIrreducible, "univariate");
    }
    let witness = p
        .rational_roots(ROOT_SEARCH_BOUND)
        .and_then(|r| r.first().cloned())
        .map(|r| {
            let lin = upoly_in_x(&UPoly::linear_root(r));
            if in_x {
                lin
            } else {
                lin.swap()
            }
        });
    IrreducibilityReport::new(Verdict::Reducible { witness }, "univariate")
}

fn same_bidegree_mod_p(f: &BiPoly, p: u64) -> bool {
    let Some(r) = f.mod_p(p) else { return false };
    let dx = r.keys().map(|k| k.0).max();
    let dy = r.keys().map(|k| k.1).max();
    dx == Some(f.deg_x()) && dy == Some(f.deg_y())
}

/// The linear map `(g, h) -> f g_y - g f_y - f h_x + h f_x` with
/// `deg g <= (m-1, n)` and `deg h <= (m, h_deg_y)`.
struct DiffSystem {
    columns: Vec<BiPoly>,
    monomials: BTreeMap<(u32, u32), usize>,
}

impl DiffSystem {
    fn new(f: &BiPoly, h_deg_y: u32, with_h: bool) -> Self {
        let (m, n) = (f.deg_x(), f.deg_y());
        let fx = f.derivative(1, 0);
        let fy = f.derivative(0, 1);
        let mut columns = Vec::new();
        for a in 0..m {
            for b in 0..=n {
                let mono = BiPoly::from_terms([((a, b), Q::one())]);
                let col = f.mul(&mono.derivative(0, 1)).sub(&mono.mul(&fy));
                columns.push(col);
            }
        }
        if with_h {
            for a in 0..=m {
                for b in 0..=h_deg_y {
                    let mono = BiPoly::from_terms([((a, b), Q::one())]);
                    let col = mono.mul(&fx).sub(&f.mul(&mono.derivative(1, 0)));
                    columns.push(col);
                }
            }
        }
        let mut monomials = BTreeMap::new();
        for c in &columns {
            for (k, _) in c.terms() {
                let next = monomials.len();
                monomials.entry(*k).or_insert(next);
            }
        }
        DiffSystem { columns, monomials }
    }

    fn rows_q(&self) -> Vec<Vec<Q>> {
        let mut rows = vec![vec![Q::zero(); self.columns.len()]; self.monomials.len()];
        for (j, c) in self.columns.iter().enumerate() {
            for (k, v) in c.terms() {
                rows[self.monomials[k]][j] = v.clone();
            }
        }
        rows
    }

    fn mod_p(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        let mut rows = vec![vec![0u64; self.columns.len()]; self.monomials.len()];
        for (j, c) in self.columns.iter().enumerate() {
            for (k, v) in c.terms() {
                rows[self.monomials[k]][j] = q_mod_p(v, p)?;
            }
        }
        Some(rows)
    }
}

/// Gao's system has a one-dimensional solution space mod `p` for an
/// absolutely irreducible `f` and all but finitely many `p`.
fn gao_cross_check(f: &BiPoly, primes: &[u64]) -> Result<usize> {
    let gao = DiffSystem::new(f, f.deg_y() - 1, true);
    let cols = gao.columns.len();
    let mut dims = Vec::new();
    for &p in primes {
        if let Some(mat) = gao.mod_p(p) {
            let d = cols - rank_mod_p(mat, cols, p);
            if d == 1 {
                return Ok(1);
            }
            dims.push(d);
        }
    }
    Err(Error::CrossCheck(format!(
        "Ruppert certifies absolute irreducibility but Gao's space has dimensions {dims:?} mod the tried primes"
    )))
}

// ---------------------------------------------------------------------------
// Squarefreeness certificate

type PolyP = Vec<u64>;

fn trim_p(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem_p(mut a: PolyP, b: &PolyP, p: u64) -> PolyP {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let t = mul_mod(a[da], inv, p);
        for (j, &bj) in b.iter().enumerate() {
            let s = mul_mod(t, bj, p);
            a[da - db + j] = (a[da - db + j] + p - s) % p;
        }
        a = trim_p(a);
    }
    a
}

fn gcd_degree_p(mut a: PolyP, mut b: PolyP, p: u64) -> usize {
    a = trim_p(a);
    b = trim_p(b);
    while !b.is_empty() {
        let r = rem_p(a, &b, p);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// `f(c, y) mod p` of full degree and squarefree proves `f` has no repeated
/// factor of positive `y`-degree.
fn squarefree_mod_p(f: &BiPoly, primes: &[u64], rng: &mut ChaCha8Rng) -> bool {
    let n = f.deg_y() as usize;
    for &p in primes {
        let Some(fp) = f.mod_p(p) else { continue };
        for _ in 0..4 {
            let c: u64 = rng.gen_range(0..p);
            let mut uni = vec![0u64; n + 1];
            for (&(i, j), &v) in &fp {
                let t = mul_mod(v, super::poly::pow_mod(c, i as u64, p), p);
                uni[j as usize] = (uni[j as usize] + t) % p;
            }
            if uni[n] == 0 {
                continue;
            }
            let der: PolyP = (1..=n).map(|j| mul_mod(uni[j], j as u64 % p, p)).collect();
            if gcd_degree_p(uni, der, p) == 0 {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Factor recovery

/// Returns the number of rational factors and, when found, one proper factor.
fn gao_factor(f: &BiPoly, rng: &mut ChaCha8Rng) -> Result<(usize, Option<BiPoly>)> {
    let gao = DiffSystem::new(f, f.deg_y() - 1, true);
    let cols = gao.columns.len();
    let kernel = echelon_q(&gao.rows_q(), cols).kernel();
    let r = kernel.len();
    if r <= 1 {
        return Ok((r, None));
    }
    let (m, n) = (f.deg_x(), f.deg_y());
    let g_len = (m * (n + 1)) as usize;
    let fx = f.derivative(1, 0);
    for _ in 0..8 {
        let mut g = BiPoly::zero();
        for v in &kernel {
            let w = q(rng.gen_range(-20..=20));
            let mut idx = 0;
            for a in 0..m {
                for b in 0..=n {
                    g.add_term((a, b), &w * &v[idx]);
                    idx += 1;
                }
            }
            debug_assert_eq!(idx, g_len);
        }
        if g.is_zero() {
            continue;
        }
        let Some(lambdas) = eigenvalues(f, &g, &fx, rng) else { continue };
        for lam in lambdas {
            let d = bivariate_gcd(f, &g.sub(&fx.scale(&lam)));
            if !d.is_constant() && d.total_degree() < f.total_degree() {
                if bivariate_div_exact(f, &d).is_none() {
                    return Err(Error::CrossCheck("recovered factor does not divide".into()));
                }
                return Ok((r, Some(d)));
            }
        }
    }
    Ok((r, None))
}

/// Rational eigenvalues of multiplication by `g / f_x` modulo `f(c, y)`.
fn eigenvalues(f: &BiPoly, g: &BiPoly, fx: &BiPoly, rng: &mut ChaCha8Rng) -> Option<Vec<Q>> {
    let n = f.deg_y() as usize;
    for _ in 0..16 {
        let c = q(rng.gen_range(-50..=50));
        let fc = f.eval_x(&c);
        if fc.degree() != Some(n) || fc.gcd(&fc.derivative()).degree() != Some(0) {
            continue;
        }
        let fxc = fx.eval_x(&c);
        let Some(inv) = inverse_mod(&fxc, &fc) else { continue };
        let t = g.eval_x(&c).mul(&inv).divrem(&fc).1;
        // Matrix of multiplication by t on 1, y, ..., y^{n-1}.
        let mut mat = vec![vec![Q::zero(); n]; n];
        let mut col = t.clone();
        for k in 0..n {
            for (i, row) in mat.iter_mut().enumerate() {
                row[k] = col.coeff(i);
            }
            col = col.mul(&UPoly::new(vec![Q::zero(), Q::one()])).divrem(&fc).1;
        }
        let chi = charpoly(&mat);
        let sq = chi.divrem(&chi.gcd(&chi.derivative())).0;
        return sq.rational_roots(ROOT_SEARCH_BOUND);
    }
    None
}

fn inverse_mod(a: &UPoly, m: &UPoly) -> Option<UPoly> {
    // Extended Euclid: s a + t m = gcd.
    let (mut r0, mut r1) = (m.clone(), a.divrem(m).1);
    let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(Q::one()));
    while !r1.is_zero() {
        let (quo, r) = r0.divrem(&r1);
        let s = s0.sub(&quo.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    Some(s0.scale(&(Q::one() / r0.lead())))
}

/// Characteristic polynomial `det(t I - M)` by Faddeev-LeVerrier.
fn charpoly(mat: &[Vec<Q>]) -> UPoly {
    let n = mat.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = vec![vec![Q::zero(); n]; n];
    let mut c = Q::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    if !mat[i][l].is_zero() && !mk[l][j].is_zero() {
                        s += &mat[i][l] * &mk[l][j];
                    }
                }
                if i == j {
                    s += &c;
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &mat[i][l] * &mk[l][i];
            }
        }
        c = -tr / q(k as i64);
        coeffs[n - k] = c.clone();
    }
    UPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> BiPoly {
        BiPoly::x()
    }
    fn y() -> BiPoly {
        BiPoly::y()
    }
    fn c(a: i64) -> BiPoly {
        BiPoly::constant(q(a))
    }

    #[test]
    fn constructed_product_is_reducible() {
        let f = x().mul(&y()).sub(&c(1)).mul(&x().add(&y()));
        let rep = certify_irreducible(&f, 1).unwrap();
        let Verdict::Reducible { witness: Some(w) } = rep.verdict else {
            panic!("{rep:?}")
        };
        assert!(bivariate_div_exact(&f, &w).is_some());
        assert_eq!(rep.absolute_factors, Some(2));
    }

    #[test]
    fn parabola_is_absolutely_irreducible() {
        let f = y().sub(&x().mul(&x()));
        let rep = certify_irreducible(&f, 2).unwrap();
        assert!(rep.is_absolutely_irreducible(), "{rep:?}");
    }

    #[test]
    fn sum_of_squares_splits_over_closure() {
        let f = x().mul(&x()).add(&y().mul(&y()));
        let rep = certify_irreducible(&f, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Reducible { witness: None });
        assert_eq!(rep.absolute_factors, Some(2));
    }

    #[test]
    fn repeated_factor() {
        let l = y().sub(&x());
        let rep = certify_irreducible(&l.mul(&l), 4).unwrap();
        assert_eq!(rep.method, "squarefree");
        assert_eq!(
            rep.verdict,
            Verdict::Reducible {
                witness: Some(l.primitive_integer())
            }
        );
    }

    #[test]
    fn contents_and_univariate() {
        let f = x().add(&c(1)).mul(&y().add(&x()));
        assert_eq!(certify_irreducible(&f, 0).unwrap().method, "content");
        let g = x().mul(&x()).sub(&c(4));
        let rep = certify_irreducible(&g, 0).unwrap();
        assert!(matches!(rep.verdict, Verdict::Reducible { witness: Some(_) }));
        assert!(certify_irreducible(&y().add(&c(3)), 0).unwrap().is_absolutely_irreducible());
        assert!(certify_irreducible(&c(5), 0).is_err());
    }

    #[test]
    fn smooth_cubic() {
        // y^2 - x^3 - x - 1
        let f = y().mul(&y()).sub(&x().mul(&x()).mul(&x())).sub(&x()).sub(&c(1));
        assert!(certify_irreducible(&f, 9).unwrap().is_absolutely_irreducible());
    }

    #[test]
    fn three_factors() {
        let f = x().sub(&c(1)).add(&y()).mul(&x().sub(&y())).mul(&x().mul(&y()).add(&c(2)));
        let rep = certify_irreducible(&f, 5).unwrap();
        assert_eq!(rep.absolute_factors, Some(3));
        assert!(matches!(rep.verdict, Verdict::Reducible { witness: Some(_) }));
    }

    #[test]
    fn charpoly_of_diagonal() {
        let m = vec![vec![q(2), q(0)], vec![q(0), q(3)]];
        assert_eq!(charpoly(&m), UPoly::new(vec![q(6), q(-5), q(1)]));
    }
}
