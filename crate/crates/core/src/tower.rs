//! Towers of simple algebraic extensions of the rationals with dynamic
//! splitting.
//!
//! Each level adjoins a root of a monic square-free polynomial over the level
//! below. The modulus need not be irreducible: the quotient ring is then a
//! product of fields, and any attempt to invert a zero divisor yields a
//! [`Split`] carrying a nontrivial factorisation of the offending modulus.
//! Callers that created the level catch the split and retry once per factor,
//! so every computation that completes is valid simultaneously for all roots
//! of the final moduli.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::Q;

/// Element of a tower level. At depth 0 it is a rational; at depth `d > 0`
/// it is a polynomial in the level-`d` generator, coefficients at depth
/// `d - 1`, of degree below the modulus degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(Q),
    Ext(Vec<Elem>),
}

/// Dense univariate polynomial over a tower level, lowest degree first.
pub type TUPoly = Vec<Elem>;

/// A zero divisor was met at `level` (1-based): its modulus factors as
/// `factor * cofactor`, both monic of positive degree over `level - 1`.
#[derive(Clone, Debug)]
pub struct Split {
    pub level: usize,
    pub factor: TUPoly,
    pub cofactor: TUPoly,
}

pub type TResult<T> = Result<T, Split>;

#[derive(Clone, Debug, Default)]
pub struct Tower {
    moduli: Arc<Vec<TUPoly>>,
}

impl Elem {
    pub fn is_struct_zero(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_zero(),
            Elem::Ext(v) => v.is_empty(),
        }
    }

    pub fn as_rat(&self) -> Option<&Q> {
        match self {
            Elem::Rat(q) => Some(q),
            Elem::Ext(_) => None,
        }
    }
}

fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|c| c.is_struct_zero()) {
        v.pop();
    }
    v
}

impl Tower {
    pub fn rationals() -> Self {
        Tower::default()
    }

    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    /// Moduli from the bottom level up; `moduli()[k]` lives over depth `k`.
    pub fn moduli(&self) -> &[TUPoly] {
        &self.moduli
    }

    pub fn modulus_degree(&self, level: usize) -> usize {
        self.moduli[level - 1].len() - 1
    }

    /// Adjoin a root of `modulus` (monic, over the top level, degree ≥ 2).
    pub fn extend(&self, modulus: TUPoly) -> Tower {
        debug_assert!(modulus.len() >= 3);
        let mut m = (*self.moduli).clone();
        m.push(modulus);
        Tower { moduli: Arc::new(m) }
    }

    /// The tower truncated to its lowest `depth` levels.
    pub fn truncate(&self, depth: usize) -> Tower {
        Tower { moduli: Arc::new(self.moduli[..depth].to_vec()) }
    }

    pub fn zero(&self, d: usize) -> Elem {
        if d == 0 {
            Elem::Rat(Q::zero())
        } else {
            Elem::Ext(Vec::new())
        }
    }

    pub fn one(&self, d: usize) -> Elem {
        self.from_rat(d, Q::one())
    }

    pub fn from_rat(&self, d: usize, q: Q) -> Elem {
        self.lift(Elem::Rat(q), 0, d)
    }

    pub fn from_int(&self, d: usize, n: i64) -> Elem {
        self.from_rat(d, Q::from_integer(n.into()))
    }

    /// Generator of level `d`.
    pub fn generator(&self, d: usize) -> Elem {
        Elem::Ext(vec![self.zero(d - 1), self.one(d - 1)])
    }

    /// Embed an element of depth `from` into depth `to >= from`.
    pub fn lift(&self, a: Elem, from: usize, to: usize) -> Elem {
        let mut a = a;
        for _ in from..to {
            a = if a.is_struct_zero() { Elem::Ext(Vec::new()) } else { Elem::Ext(vec![a]) };
        }
        a
    }

    pub fn add(&self, d: usize, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Ext(x), Elem::Ext(y)) => {
                debug_assert!(d > 0);
                let n = x.len().max(y.len());
                let z = self.zero(d - 1);
                Elem::Ext(trim((0..n).map(|k| self.add(d - 1, x.get(k).unwrap_or(&z), y.get(k).unwrap_or(&z))).collect()))
            }
            _ => panic!("depth mismatch in tower addition"),
        }
    }

    #[allow(clippy::only_used_in_recursion)]
    pub fn neg(&self, d: usize, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Ext(v) => Elem::Ext(v.iter().map(|c| self.neg(d - 1, c)).collect()),
        }
    }

    pub fn sub(&self, d: usize, a: &Elem, b: &Elem) -> Elem {
        self.add(d, a, &self.neg(d, b))
    }

    pub fn mul(&self, d: usize, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Ext(x), Elem::Ext(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Elem::Ext(Vec::new());
                }
                let prod = self.poly_mul(d - 1, x, y);
                Elem::Ext(self.reduce(d, prod))
            }
            _ => panic!("depth mismatch in tower multiplication"),
        }
    }

    pub fn pow(&self, d: usize, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one(d);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(d, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(d, &base, &base);
            }
        }
        acc
    }

    /// Reduce a polynomial over depth `d - 1` modulo the level-`d` modulus.
    fn reduce(&self, d: usize, mut p: TUPoly) -> TUPoly {
        let m = &self.moduli[d - 1];
        let n = m.len() - 1;
        while p.len() > n {
            let top = p.pop().expect("nonempty");
            if top.is_struct_zero() {
                continue;
            }
            let shift = p.len() - n;
            for (k, mk) in m.iter().take(n).enumerate() {
                let t = self.mul(d - 1, &top, mk);
                p[shift + k] = self.sub(d - 1, &p[shift + k], &t);
            }
        }
        trim(p)
    }

    /// Multiplicative inverse; splits the relevant modulus on a zero divisor.
    pub fn inv(&self, d: usize, a: &Elem) -> TResult<Elem> {
        match a {
            Elem::Rat(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Ok(Elem::Rat(q.recip()))
            }
            Elem::Ext(v) => {
                assert!(!v.is_empty(), "inverse of zero");
                let m = self.moduli[d - 1].clone();
                let (g, s) = self.poly_ext_gcd(d - 1, &m, v)?;
                if g.len() == 1 {
                    Ok(Elem::Ext(self.reduce(d, s)))
                } else {
                    let cof = self.poly_exact_div_monic(d - 1, &m, &g);
                    Err(Split { level: d, factor: g, cofactor: cof })
                }
            }
        }
    }

    /// Zero test valid on every component: a nonzero zero divisor splits.
    pub fn is_zero(&self, d: usize, a: &Elem) -> TResult<bool> {
        if a.is_struct_zero() {
            return Ok(true);
        }
        self.inv(d, a).map(|_| false)
    }

    pub fn div(&self, d: usize, a: &Elem, b: &Elem) -> TResult<Elem> {
        Ok(self.mul(d, a, &self.inv(d, b)?))
    }

    // ---- polynomials over a level ----

    pub fn poly_trim(&self, p: TUPoly) -> TUPoly {
        trim(p)
    }

    pub fn poly_add(&self, d: usize, a: &[Elem], b: &[Elem]) -> TUPoly {
        let n = a.len().max(b.len());
        let z = self.zero(d);
        trim((0..n).map(|k| self.add(d, a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z))).collect())
    }

    pub fn poly_sub(&self, d: usize, a: &[Elem], b: &[Elem]) -> TUPoly {
        let n = a.len().max(b.len());
        let z = self.zero(d);
        trim((0..n).map(|k| self.sub(d, a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z))).collect())
    }

    pub fn poly_scale(&self, d: usize, a: &[Elem], c: &Elem) -> TUPoly {
        trim(a.iter().map(|x| self.mul(d, x, c)).collect())
    }

    pub fn poly_mul(&self, d: usize, a: &[Elem], b: &[Elem]) -> TUPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(d); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_struct_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_struct_zero() {
                    continue;
                }
                out[i + j] = self.add(d, &out[i + j], &self.mul(d, x, y));
            }
        }
        trim(out)
    }

    pub fn poly_derivative(&self, d: usize, a: &[Elem]) -> TUPoly {
        trim(a.iter().enumerate().skip(1).map(|(k, c)| self.mul(d, c, &self.from_int(d, k as i64))).collect())
    }

    /// Make monic, splitting if the leading coefficient is a zero divisor.
    pub fn poly_monic(&self, d: usize, a: &[Elem]) -> TResult<TUPoly> {
        let a = trim(a.to_vec());
        match a.last() {
            None => Ok(a),
            Some(lc) => {
                let inv = self.inv(d, lc)?;
                Ok(self.poly_scale(d, &a, &inv))
            }
        }
    }

    pub fn poly_div_rem(&self, d: usize, a: &[Elem], b: &[Elem]) -> TResult<(TUPoly, TUPoly)> {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let lc_inv = self.inv(d, b.last().expect("nonempty"))?;
        let n = b.len() - 1;
        let mut rem = trim(a.to_vec());
        if rem.len() <= n {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![self.zero(d); rem.len() - n];
        for k in (0..quot.len()).rev() {
            if rem.len() <= k + n {
                continue;
            }
            let c = self.mul(d, &rem[k + n], &lc_inv);
            if !c.is_struct_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[k + j] = self.sub(d, &rem[k + j], &self.mul(d, &c, bj));
                }
            }
            quot[k] = c;
            rem = trim(rem);
        }
        Ok((trim(quot), trim(rem)))
    }

    /// Quotient of `a` by the monic divisor `b`, which must divide exactly.
    pub fn poly_exact_div_monic(&self, d: usize, a: &[Elem], b: &[Elem]) -> TUPoly {
        let (q, r) = self.poly_div_rem(d, a, b).expect("monic division never inverts a zero divisor");
        debug_assert!(r.is_empty());
        q
    }

    /// Monic gcd `g` together with `s` such that `s·b ≡ g (mod a)`.
    pub fn poly_ext_gcd(&self, d: usize, a: &[Elem], b: &[Elem]) -> TResult<(TUPoly, TUPoly)> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1): (TUPoly, TUPoly) = (Vec::new(), vec![self.one(d)]);
        while !r1.is_empty() {
            let (q, r) = self.poly_div_rem(d, &r0, &r1)?;
            let s2 = self.poly_sub(d, &s0, &self.poly_mul(d, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let lc_inv = self.inv(d, r0.last().expect("gcd of nonzero input"))?;
        Ok((self.poly_scale(d, &r0, &lc_inv), self.poly_scale(d, &s0, &lc_inv)))
    }

    pub fn poly_gcd(&self, d: usize, a: &[Elem], b: &[Elem]) -> TResult<TUPoly> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        while !r1.is_empty() {
            let (_, r) = self.poly_div_rem(d, &r0, &r1)?;
            r0 = std::mem::replace(&mut r1, r);
        }
        self.poly_monic(d, &r0)
    }

    /// Yun's square-free decomposition of a monic polynomial of positive degree.
    pub fn poly_squarefree(&self, d: usize, p: &[Elem]) -> TResult<Vec<(TUPoly, u32)>> {
        let p = self.poly_monic(d, p)?;
        let mut out = Vec::new();
        if p.len() < 2 {
            return Ok(out);
        }
        let dp = self.poly_derivative(d, &p);
        let a0 = self.poly_gcd(d, &p, &dp)?;
        let mut b = self.poly_exact_div_monic(d, &p, &a0);
        let mut c = self.poly_exact_div_monic(d, &dp, &a0);
        let mut i = 1;
        loop {
            let dd = self.poly_sub(d, &c, &self.poly_derivative(d, &b));
            if dd.is_empty() {
                if b.len() > 1 {
                    out.push((self.poly_monic(d, &b)?, i));
                }
                break;
            }
            let a = self.poly_gcd(d, &b, &dd)?;
            if a.len() > 1 {
                out.push((a.clone(), i));
            }
            b = self.poly_exact_div_monic(d, &b, &a);
            c = self.poly_exact_div_monic(d, &dd, &a);
            i += 1;
            if b.len() <= 1 {
                break;
            }
        }
        Ok(out)
    }

    /// Coprime base of a family of nonzero polynomials of positive degree:
    /// pairwise coprime monic square-free `φ_k` with, for each input `P_i`,
    /// the exponent of `φ_k` in `P_i`. Every root of every `P_i` is a root of
    /// exactly one `φ_k`.
    pub fn coprime_base(&self, d: usize, polys: &[TUPoly]) -> TResult<Vec<(TUPoly, Vec<u32>)>> {
        let n = polys.len();
        let mut base: Vec<(TUPoly, Vec<u32>)> = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            for (piece, mult) in self.poly_squarefree(d, p)? {
                let mut rest = piece;
                let mut next: Vec<(TUPoly, Vec<u32>)> = Vec::new();
                for (phi, exps) in base.into_iter() {
                    if rest.len() <= 1 {
                        next.push((phi, exps));
                        continue;
                    }
                    let g = self.poly_gcd(d, &rest, &phi)?;
                    if g.len() <= 1 {
                        next.push((phi, exps));
                        continue;
                    }
                    let phi_rest = self.poly_exact_div_monic(d, &phi, &g);
                    rest = self.poly_exact_div_monic(d, &rest, &g);
                    let mut ge = exps.clone();
                    ge[i] += mult;
                    next.push((g, ge));
                    if phi_rest.len() > 1 {
                        next.push((phi_rest, exps));
                    }
                }
                if rest.len() > 1 {
                    let mut e = vec![0; n];
                    e[i] = mult;
                    next.push((rest, e));
                }
                base = next;
            }
        }
        Ok(base)
    }

    /// Evaluate a polynomial at an element.
    pub fn poly_eval(&self, d: usize, p: &[Elem], x: &Elem) -> Elem {
        p.iter().rev().fold(self.zero(d), |acc, c| self.add(d, &self.mul(d, &acc, x), c))
    }

    pub fn poly_from_rats(&self, d: usize, cs: &[Q]) -> TUPoly {
        trim(cs.iter().map(|c| self.from_rat(d, c.clone())).collect())
    }
}
