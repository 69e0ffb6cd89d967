//! `ord_x Res_y(f, g)` by evaluation modulo word-sized primes.
//!
//! A coefficient of the integer resultant vanishes iff it vanishes modulo
//! every prime of a set whose product exceeds a bound on its absolute value,
//! so the answer is exact; no reconstruction is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BiPoly;

/// Integer coefficient rows `c_j(x)` of `p = Σ c_j(x) y^j`, scaled by a common rational.
fn integer_rows(p: &BiPoly) -> Vec<Vec<BigInt>> {
    let den = p.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dy = p.degree_y().unwrap_or(0) as usize;
    let dx = p.degree_x().unwrap_or(0) as usize;
    let mut rows = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
    for (&(i, j), c) in p.terms() {
        rows[j as usize][i as usize] = (c * den.clone()).to_integer();
    }
    rows
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn primes_below(top: u64) -> impl Iterator<Item = u64> {
    (2..top).rev().filter(|&n| is_prime(n))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| m[r][k] != 0) else { return 0 };
        if r != k {
            m.swap(r, k);
            det = (p - det) % p;
        }
        det = det * m[k][k] % p;
        let inv = inv_mod(m[k][k], p);
        let pivot = m[k].clone();
        for row in m[k + 1..].iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = row[k] * inv % p;
            for (x, y) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
    }
    det
}

/// Coefficients (low degree first) of the polynomial of degree ≤ `vals.len() − 1`
/// taking `vals[k]` at `x = k`, modulo `p`.
fn interpolate(vals: &[u64], p: u64) -> Vec<u64> {
    let n = vals.len();
    // Newton divided differences on nodes 0..n
    let mut dd = vals.to_vec();
    for lvl in 1..n {
        let inv = inv_mod(lvl as u64, p);
        for k in (lvl..n).rev() {
            dd[k] = (dd[k] + p - dd[k - 1]) % p * inv % p;
        }
    }
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out = out·(x − k) + dd[k]
        let mut next = vec![0u64; n];
        for (i, &c) in out.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = (next[i + 1] + c) % p;
            }
            next[i] = (next[i] + p - c * (k as u64 % p) % p) % p;
        }
        next[0] = (next[0] + dd[k]) % p;
        out = next;
    }
    out
}

/// `ord_x Res_y(f, g)`, or `None` when the resultant is identically zero.
/// Both polynomials must have positive `y`-degree or the resultant is a power
/// of a leading coefficient, which is handled by the same code path.
pub fn resultant_order(f: &BiPoly, g: &BiPoly) -> Option<usize> {
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let (a, b) = (integer_rows(f), integer_rows(g));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Some(0);
    }
    let dx = |r: &[Vec<BigInt>]| r.iter().map(|c| c.len() - 1).max().unwrap_or(0);
    let deg = n * dx(&a) + m * dx(&b);
    let norm = |r: &[Vec<BigInt>]| r.iter().flatten().map(|c| c.abs()).sum::<BigInt>();
    // every coefficient of det is at most ∏ over rows of the row's 1-norm
    let bound: BigInt = num_traits::pow(norm(&a), n) * num_traits::pow(norm(&b), m);
    let mut modulus = BigInt::one();
    let mut nonzero = vec![false; deg + 1];
    for p in primes_below(1 << 31) {
        if modulus > bound {
            break;
        }
        assert!((p as usize) > deg, "too few interpolation nodes modulo {p}");
        modulus *= p;
        let red = |c: &BigInt| c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
        let (ra, rb): (Vec<Vec<u64>>, Vec<Vec<u64>>) =
            (a.iter().map(|c| c.iter().map(red).collect()).collect(), b.iter().map(|c| c.iter().map(red).collect()).collect());
        let ev = |c: &[u64], x: u64| c.iter().rev().fold(0u64, |acc, &k| (acc * x + k) % p);
        let vals: Vec<u64> = (0..=deg as u64)
            .map(|x| {
                let (fa, fb): (Vec<u64>, Vec<u64>) = (ra.iter().map(|c| ev(c, x)).collect(), rb.iter().map(|c| ev(c, x)).collect());
                let mut mat = vec![vec![0u64; size]; size];
                for r in 0..n {
                    for (k, c) in fa.iter().rev().enumerate() {
                        mat[r][r + k] = *c;
                    }
                }
                for r in 0..m {
                    for (k, c) in fb.iter().rev().enumerate() {
                        mat[n + r][r + k] = *c;
                    }
                }
                det_mod(mat, p)
            })
            .collect();
        for (k, c) in interpolate(&vals, p).into_iter().enumerate() {
            nonzero[k] |= c != 0;
        }
    }
    nonzero.iter().position(|&z| z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn agrees_with_sylvester() {
        for (f, g) in [("x^2+y^3", "x"), ("y^2-x^3", "y^2-x^3-x^5"), ("x-y", "x+y"), ("y^2-x^3", "x*y+x^2"), ("x^2", "x")] {
            let (f, g) = (parse_poly(f).unwrap(), parse_poly(g).unwrap());
            assert_eq!(resultant_order(&f, &g), f.resultant_y(&g).order(), "{f} / {g}");
        }
    }
}
