//! Univariate and bivariate polynomials over `Q`, plus reduction mod a word-size prime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, q, Q};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: Q) -> Self {
        UPoly::new(vec![a])
    }

    /// `x - a`
    pub fn linear_root(a: Q) -> Self {
        UPoly::new(vec![-a, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * q(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] / &lc;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (UPoly::new(quo), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = primitive_scaled(&r);
        }
        a.monic()
    }

    /// Integer multiple with coprime integer coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        integer_primitive(&self.c)
    }

    /// Distinct rational roots, found by the rational root theorem when
    /// the constant and leading coefficients factor below `bound`.
    pub fn rational_roots(&self, bound: u64) -> Option<Vec<Q>> {
        if self.is_zero() {
            return None;
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(Q::zero());
            let k = p.c.iter().position(|a| !a.is_zero()).unwrap();
            p = UPoly::new(p.c[k..].to_vec());
        }
        if p.degree() == Some(0) {
            return Some(roots);
        }
        let z = p.primitive_integer();
        let a0 = z[0].abs();
        let an = z.last().unwrap().abs();
        let num = divisors(&a0, bound)?;
        let den = divisors(&an, bound)?;
        let mut cand: Vec<Q> = Vec::new();
        for n in &num {
            for d in &den {
                let r = Q::new(n.clone(), d.clone());
                cand.push(r.clone());
                cand.push(-r);
            }
        }
        cand.sort();
        cand.dedup();
        for r in cand {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        Some(roots)
    }
}

fn primitive_scaled(p: &UPoly) -> UPoly {
    if p.is_zero() {
        return UPoly::zero();
    }
    let z = integer_primitive(&p.c);
    UPoly::new(z.into_iter().map(Q::from_integer).collect())
}

/// Clears denominators and divides by the content; leading coefficient made positive.
pub fn integer_primitive(c: &[Q]) -> Vec<BigInt> {
    let l = crate::rational::lcm_of_denominators(c);
    let mut z: Vec<BigInt> = c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
    let g = z.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if !g.is_zero() {
        for a in z.iter_mut() {
            *a /= &g;
        }
    }
    if z.iter().rev().find(|a| !a.is_zero()).is_some_and(|a| a.is_negative()) {
        for a in z.iter_mut() {
            *a = -a.clone();
        }
    }
    z
}

/// Positive divisors of `n`, or `None` if trial division cannot finish below `bound`.
fn divisors(n: &BigInt, bound: u64) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= m {
        if p > bound {
            return None;
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += 1;
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Some(divs)
}

/// Sparse bivariate polynomial `sum a_{i,j} x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut p = BiPoly::zero();
        for (k, v) in terms {
            p.add_term(k, v);
        }
        p
    }

    /// From integer coefficients indexed `[i][j]`.
    pub fn from_grid(grid: &[Vec<i64>]) -> Self {
        BiPoly::from_terms(grid.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, &a)| ((i as u32, j as u32), q(a)))
        }))
    }

    pub fn x() -> Self {
        BiPoly::from_terms([((1, 0), Q::one())])
    }

    pub fn y() -> Self {
        BiPoly::from_terms([((0, 1), Q::one())])
    }

    pub fn constant(a: Q) -> Self {
        BiPoly::from_terms([((0, 0), a)])
    }

    pub fn add_term(&mut self, k: (u32, u32), v: Q) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Terms in lexicographic `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// `max (w_x i + w_y j)` over the support.
    pub fn weighted_degree(&self, wx: u32, wy: u32) -> u32 {
        self.terms.keys().map(|k| wx * k.0 + wy * k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Q) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * s)))
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(*k, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(*k, -v.clone());
        }
        r
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                r.add_term((a.0 + b.0, a.1 + b.1), u * v);
            }
        }
        r
    }

    /// `d^{a+b} / dx^a dy^b`
    pub fn derivative(&self, a: u32, b: u32) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().filter_map(|(&(i, j), v)| {
            if i < a || j < b {
                return None;
            }
            let f = falling(i, a) * falling(j, b);
            Some(((i - a, j - b), v * Q::from_integer(f)))
        }))
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        let mut s = Q::zero();
        for (&(i, j), v) in &self.terms {
            s += v * pow(x, i) * pow(y, j);
        }
        s
    }

    /// `f(c, y)` as a polynomial in `y`.
    pub fn eval_x(&self, c: &Q) -> UPoly {
        let mut out = vec![Q::zero(); self.deg_y() as usize + 1];
        for (&(i, j), v) in &self.terms {
            out[j as usize] += v * pow(c, i);
        }
        UPoly::new(out)
    }

    /// `f(x, c)` as a polynomial in `x`.
    pub fn eval_y(&self, c: &Q) -> UPoly {
        self.swap().eval_x(c)
    }

    /// Exchanges `x` and `y`.
    pub fn swap(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())))
    }

    /// Coefficients of `y^j` as polynomials in `x`.
    pub fn to_y_coeffs(&self) -> Vec<UPoly> {
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        let mut grid = vec![vec![Q::zero(); dx + 1]; dy + 1];
        for (&(i, j), v) in &self.terms {
            grid[j as usize][i as usize] = v.clone();
        }
        grid.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_coeffs(c: &[UPoly]) -> BiPoly {
        BiPoly::from_terms(c.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, a)| ((i as u32, j as u32), a.clone()))
        }))
    }

    pub fn first_coeff(&self) -> Option<&Q> {
        self.terms.values().next()
    }

    /// Divides by the first nonzero coefficient in `(i, j)` order.
    pub fn normalized(&self) -> BiPoly {
        match self.first_coeff() {
            Some(a) => self.scale(&(Q::one() / a)),
            None => self.clone(),
        }
    }

    /// Scaled to coprime integers with the first coefficient positive.
    pub fn primitive_integer(&self) -> BiPoly {
        let vals: Vec<Q> = self.terms.values().cloned().collect();
        let l = crate::rational::lcm_of_denominators(&vals);
        let mut z: Vec<BigInt> = vals
            .iter()
            .map(|a| (a * Q::from_integer(l.clone())).to_integer())
            .collect();
        let g = z.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        let sign = if vals.first().is_some_and(|a| a.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        if !g.is_zero() {
            for a in z.iter_mut() {
                *a = &*a / &g * &sign;
            }
        }
        BiPoly::from_terms(self.terms.keys().copied().zip(z.into_iter().map(Q::from_integer)))
    }

    pub fn height_bits(&self) -> u64 {
        crate::rational::height_bits(self.terms.values())
    }

    /// Multiplicity at `(x0, y0)`: least `a + b` with a nonzero Taylor coefficient.
    pub fn multiplicity_at(&self, x0: &Q, y0: &Q) -> u32 {
        self.taylor_orders(x0, y0, 1, 1)
    }

    /// Least `wx a + wy b` over nonzero Taylor coefficients at `(x0, y0)`.
    pub fn taylor_orders(&self, x0: &Q, y0: &Q, wx: u32, wy: u32) -> u32 {
        let s = self.translate(x0, y0);
        s.terms
            .keys()
            .map(|&(a, b)| wx * a + wy * b)
            .min()
            .unwrap_or(u32::MAX)
    }

    /// `f(x + x0, y + y0)`
    pub fn translate(&self, x0: &Q, y0: &Q) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.terms {
            for a in 0..=i {
                let ca = Q::from_integer(binomial(i, a)) * pow(x0, i - a);
                for b in 0..=j {
                    let cb = Q::from_integer(binomial(j, b)) * pow(y0, j - b);
                    r.add_term((a, b), v * &ca * cb);
                }
            }
        }
        r
    }

    /// Reduction mod `p`, `None` when a denominator vanishes.
    pub fn mod_p(&self, p: u64) -> Option<BTreeMap<(u32, u32), u64>> {
        let mut m = BTreeMap::new();
        for (k, v) in &self.terms {
            let r = q_mod_p(v, p)?;
            if r != 0 {
                m.insert(*k, r);
            }
        }
        Some(m)
    }

    pub fn to_strings(&self) -> Vec<(u32, u32, String)> {
        self.terms.iter().map(|(&(i, j), v)| (i, j, fmt_q(v))).collect()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), v) in &self.terms {
            let neg = v.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = v.abs();
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => mono_var("x", i),
                (0, j) => mono_var("y", j),
                (i, j) => format!("{}*{}", mono_var("x", i), mono_var("y", j)),
            };
            if mono.is_empty() {
                f.write_str(&fmt_q(&a))?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), mono)?;
            }
        }
        Ok(())
    }
}

fn mono_var(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Serialized as a list of `[i, j, "p/q"]`.
impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(u32, u32, String)>::deserialize(d)?;
        let mut p = BiPoly::zero();
        for (i, j, s) in raw {
            let v = crate::rational::parse_q(&s).map_err(serde::de::Error::custom)?;
            p.add_term((i, j), v);
        }
        Ok(p)
    }
}

pub fn pow(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

pub fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

// ---------------------------------------------------------------------------
// Q[x][y] gcd by primitive pseudo-remainder sequences

/// Content in `x`: gcd of the `y`-coefficients, monic.
pub fn content_in_x(c: &[UPoly]) -> UPoly {
    c.iter().fold(UPoly::zero(), |g, a| g.gcd(a))
}

fn primitive_part(c: &[UPoly]) -> Vec<UPoly> {
    let g = content_in_x(c);
    if g.is_zero() {
        return c.to_vec();
    }
    let out: Vec<UPoly> = c.iter().map(|a| a.divrem(&g).0).collect();
    let flat: Vec<Q> = out.iter().flat_map(|a| a.coeffs().iter().cloned()).collect();
    let scale = joint_scale(&flat);
    normalize_y_coeffs(out.iter().map(|a| a.scale(&scale)).collect())
}

/// Factor making all of `c` coprime integers with the last nonzero entry positive.
fn joint_scale(c: &[Q]) -> Q {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for a in c.iter().filter(|a| !a.is_zero()) {
        den = den.lcm(a.denom());
        num = num.gcd(a.numer());
    }
    if num.is_zero() {
        return Q::one();
    }
    let mut s = Q::new(den.clone(), BigInt::one());
    let n = c.iter().map(|a| a * &s).fold(BigInt::zero(), |g, a| g.gcd(a.numer()));
    s /= Q::from_integer(n);
    if c.iter().rev().find(|a| !a.is_zero()).is_some_and(|a| a.is_negative()) {
        s = -s;
    }
    s
}

fn normalize_y_coeffs(mut c: Vec<UPoly>) -> Vec<UPoly> {
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    c
}

/// Pseudo-remainder of `a` by `b` in `Q[x][y]`.
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lr));
        }
        r = normalize_y_coeffs(next);
    }
    r
}

/// Gcd in `Q[x][y]`, normalized to be primitive over `Z` with positive first term.
pub fn bivariate_gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.primitive_integer();
    }
    if g.is_zero() {
        return f.primitive_integer();
    }
    let fc = f.to_y_coeffs();
    let gc = g.to_y_coeffs();
    let cont = content_in_x(&fc).gcd(&content_in_x(&gc));
    let (mut a, mut b) = (primitive_part(&fc), primitive_part(&gc));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() && b.len() > 1 {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { Vec::new() } else { primitive_part(&r) };
    }
    let core = if b.is_empty() {
        a
    } else {
        // b is a nonzero polynomial in x alone: the y-parts are coprime.
        vec![UPoly::constant(Q::one())]
    };
    let core = primitive_part(&core);
    let with_content: Vec<UPoly> = core.iter().map(|c| c.mul(&cont)).collect();
    BiPoly::from_y_coeffs(&with_content).primitive_integer()
}

/// Exact quotient `f / g` in `Q[x][y]`, or `None` if `g` does not divide `f`.
pub fn bivariate_div_exact(f: &BiPoly, g: &BiPoly) -> Option<BiPoly> {
    if g.is_zero() {
        return None;
    }
    let b = g.to_y_coeffs();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = f.to_y_coeffs();
    let mut quo: Vec<UPoly> = vec![UPoly::zero(); r.len().saturating_sub(db).max(1)];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (t, rem) = r[dr].divrem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        quo[shift] = quo[shift].add(&t);
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&bc.mul(&t));
        }
        r = normalize_y_coeffs(r);
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(BiPoly::from_y_coeffs(&quo))
}

// ---------------------------------------------------------------------------
// Arithmetic mod a word-size prime

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn bigint_mod_p(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn q_mod_p(x: &Q, p: u64) -> Option<u64> {
    let d = bigint_mod_p(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod_p(x.numer(), p), inv_mod(d, p), p))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime_u64(n) {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn bp(grid: &[Vec<i64>]) -> BiPoly {
        BiPoly::from_grid(grid)
    }

    #[test]
    fn univariate_gcd_and_roots() {
        let a = UPoly::new(vec![q(-1), q(0), q(1)]);
        let b = UPoly::new(vec![q(1), q(1)]);
        assert_eq!(a.gcd(&b), b);
        let p = UPoly::new(vec![q(-6), q(1), q(2)]); // (2x-3)(x+2)
        let mut r = p.rational_roots(1000).unwrap();
        r.sort();
        assert_eq!(r, vec![q(-2), qr(3, 2)]);
    }

    #[test]
    fn derivatives_and_translation() {
        // x^2 y + 3 y
        let f = bp(&[vec![0, 3], vec![0, 0], vec![0, 1]]);
        assert_eq!(f.derivative(2, 1), BiPoly::constant(q(2)));
        let t = f.translate(&q(1), &q(2));
        assert_eq!(t.eval(&q(0), &q(0)), f.eval(&q(1), &q(2)));
        assert_eq!(t.eval(&q(3), &q(-1)), f.eval(&q(4), &q(1)));
    }

    #[test]
    fn multiplicity_of_node() {
        // y^2 - x^2 (x + 1) has a node at the origin
        let f = BiPoly::from_terms([((0, 2), q(1)), ((2, 0), q(-1)), ((3, 0), q(-1))]);
        assert_eq!(f.multiplicity_at(&q(0), &q(0)), 2);
        assert_eq!(f.multiplicity_at(&q(-1), &q(0)), 1);
    }

    #[test]
    fn gcd_of_products() {
        let a = BiPoly::x().sub(&BiPoly::y()); // x - y
        let b = BiPoly::x().mul(&BiPoly::y()).sub(&BiPoly::constant(q(1)));
        let c = BiPoly::x().add(&BiPoly::constant(q(2)));
        let f = a.mul(&b);
        let g = a.mul(&c);
        let d = bivariate_gcd(&f, &g);
        assert_eq!(d, a.primitive_integer());
        assert_eq!(bivariate_div_exact(&f, &d).unwrap().primitive_integer(), b.primitive_integer());
        assert!(bivariate_div_exact(&b, &c).is_none());
        assert!(bivariate_gcd(&b, &c).is_constant());
    }

    #[test]
    fn gcd_with_x_content() {
        let a = BiPoly::x().add(&BiPoly::constant(q(1)));
        let f = a.mul(&BiPoly::y());
        let g = a.mul(&BiPoly::y().add(&BiPoly::constant(q(1))));
        assert_eq!(bivariate_gcd(&f, &g), a.primitive_integer());
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert_eq!(next_prime(14), 17);
        assert_eq!(q_mod_p(&qr(1, 2), 7), Some(4));
        assert_eq!(q_mod_p(&qr(1, 7), 7), None);
    }

    #[test]
    fn serde_roundtrip() {
        let f = bp(&[vec![1, -2], vec![0, 3]]).scale(&qr(1, 3));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<BiPoly>(&s).unwrap(), f);
        assert_eq!(f.to_string(), "1/3 - 2/3*y + x*y");
    }
}
