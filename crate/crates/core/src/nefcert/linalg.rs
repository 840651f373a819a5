//! Exact and modular linear algebra for interpolation and irreducibility systems.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{inv_mod, mul_mod};
use crate::rational::{lcm_of_denominators, Q};

/// Row echelon form from fraction-free (Bareiss) elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one vector per free column, with that coordinate 1 and
    /// the other free coordinates 0.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.ncols];
                x[f] = Q::from_integer(1.into());
                for (i, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[i];
                    let mut s = Q::zero();
                    for j in p + 1..self.ncols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            s += Q::from_integer(row[j].clone()) * &x[j];
                        }
                    }
                    x[p] = -s / Q::from_integer(row[p].clone());
                }
                x
            })
            .collect()
    }
}

/// Scales each row to integers.
pub fn integer_rows(rows: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = Q::from_integer(lcm_of_denominators(r));
            r.iter().map(|a| (a * &l).to_integer()).collect()
        })
        .collect()
}

pub fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::from(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pr = &head[r];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..ncols {
                let v = &pr[col] * &row[j] - &f * &pr[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn echelon_q(rows: &[Vec<Q>], ncols: usize) -> Echelon {
    bareiss(integer_rows(rows), ncols)
}

pub fn rank_q(rows: &[Vec<Q>], ncols: usize) -> usize {
    echelon_q(rows, ncols).rank()
}

/// Rank of a matrix over `F_p` given by reduced entries.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let nrows = m.len();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][col], p);
        for j in col..ncols {
            m[r][j] = mul_mod(m[r][j], inv, p);
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pr = &head[r];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..ncols {
                let s = mul_mod(f, pr[j], p);
                row[j] = (row[j] + p - s) % p;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&a| q(a)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_two() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = echelon_q(&m, 3);
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        for row in &m {
            let s: Q = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rational_rows() {
        let m = vec![vec![qr(1, 2), qr(1, 3)], vec![q(3), q(2)]];
        assert_eq!(rank_q(&m, 2), 1);
    }

    #[test]
    fn modular_rank() {
        let m = vec![vec![1, 2], vec![3, 6]];
        assert_eq!(rank_mod_p(m.clone(), 2, 7), 1);
        let m = vec![vec![1, 2], vec![3, 5]];
        assert_eq!(rank_mod_p(m, 2, 7), 2);
        // 7 reduces to 0
        let m = vec![vec![1, 0], vec![0, 7 % 7]];
        assert_eq!(rank_mod_p(m, 2, 7), 1);
    }
}
