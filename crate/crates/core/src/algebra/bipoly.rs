//! Sparse bivariate polynomials over the rationals.
//!
//! All normalisations use graded lexicographic order with `x > y`: a larger
//! total degree wins, ties go to the larger power of `x`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use super::Q;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exp = (u32, u32);

/// Exact bivariate polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exp, Q>,
}

/// Graded lexicographic comparison of exponents (`x > y`).
pub fn grlex_cmp(a: &Exp, b: &Exp) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.0.cmp(&b.0))
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Q::one(), 0, 1)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Q)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[((u32, u32), i64)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(e, c)| (e, Q::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Exp, Q> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Leading exponent and coefficient in grlex order.
    pub fn leading_term(&self) -> Option<(Exp, &Q)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0)).map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Scale so that the grlex-leading coefficient is 1. The zero polynomial is returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            None => BiPoly::zero(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Order of vanishing at the origin, the minimum of `i + j` over the support.
    pub fn multiplicity_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).min()
    }

    /// Lowest-degree homogeneous part.
    pub fn initial_form(&self) -> BiPoly {
        match self.multiplicity_at_origin() {
            None => BiPoly::zero(),
            Some(d) => BiPoly {
                terms: self.terms.iter().filter(|(e, _)| e.0 + e.1 == d).map(|(e, c)| (*e, c.clone())).collect(),
            },
        }
    }

    /// Highest-degree homogeneous part.
    pub fn top_form(&self) -> BiPoly {
        match self.total_degree() {
            None => BiPoly::zero(),
            Some(d) => BiPoly {
                terms: self.terms.iter().filter(|(e, _)| e.0 + e.1 == d).map(|(e, c)| (*e, c.clone())).collect(),
            },
        }
    }

    pub fn derivative_x(&self) -> Self {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(e, c)| ((e.0 - 1, e.1), c * Q::from_integer(e.0.into()))),
        )
    }

    pub fn derivative_y(&self) -> Self {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(e, c)| ((e.0, e.1 - 1), c * Q::from_integer(e.1.into()))),
        )
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| acc + c * num_traits::pow(x.clone(), e.0 as usize) * num_traits::pow(y.clone(), e.1 as usize))
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `x ← x + c·y`.
    pub fn shear(&self, c: i64) -> BiPoly {
        if c == 0 {
            return self.clone();
        }
        let lin = &BiPoly::x() + &BiPoly::monomial(Q::from_integer(c.into()), 0, 1);
        let mut out = BiPoly::zero();
        let mut cache: BTreeMap<u32, BiPoly> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            let p = cache.entry(*i).or_insert_with(|| lin.pow(*i)).clone();
            let term = &p * &BiPoly::monomial(a.clone(), 0, *j);
            out = &out + &term;
        }
        out
    }

    /// Coefficients as a polynomial in `y` over `Q[x]`, lowest power of `y` first.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let deg = match self.degree_y() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut rows: Vec<Vec<Q>> = vec![Vec::new(); deg + 1];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, Q::zero());
            }
            row[*i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coeffs(cs: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (j, u) in cs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Embed a polynomial in `x`.
    pub fn from_x_poly(u: &UniPoly) -> BiPoly {
        BiPoly::from_y_coeffs(std::slice::from_ref(u))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dc = d.y_coeffs();
        let dn = dc.len() - 1;
        let mut rem = self.y_coeffs();
        if rem.len() < dc.len() {
            // only possible when d has y-degree 0
            if dn != 0 {
                return None;
            }
        }
        let mut quot = vec![UniPoly::zero(); rem.len().saturating_sub(dn).max(1)];
        for k in (0..rem.len().saturating_sub(dn)).rev() {
            let lead = &rem[k + dn];
            if lead.is_zero() {
                continue;
            }
            let qk = lead.exact_div(&dc[dn])?;
            for (j, dj) in dc.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&qk * dj);
            }
            quot[k] = qk;
        }
        if rem.iter().all(|r| r.is_zero()) {
            Some(BiPoly::from_y_coeffs(&quot))
        } else {
            None
        }
    }

    /// Greatest common divisor, normalised to grlex-leading coefficient 1.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (ca, pa) = content_primitive(&self.y_coeffs());
        let (cb, pb) = content_primitive(&other.y_coeffs());
        let c = ca.gcd(&cb);
        let g = primitive_gcd(pa, pb);
        let g = mul_ycoeffs_by(&g, &c);
        BiPoly::from_y_coeffs(&g).normalized()
    }

    /// Square-free decomposition: normalised, pairwise coprime, square-free
    /// factors with their multiplicities. The product of `factor^multiplicity`
    /// equals `self` up to a nonzero rational constant.
    pub fn squarefree_decompose(&self) -> Vec<(BiPoly, u32)> {
        let mut out = Vec::new();
        if self.is_zero() || self.is_constant() {
            return out;
        }
        let (content, prim) = content_primitive(&self.y_coeffs());
        for (u, m) in content.squarefree() {
            out.push((BiPoly::from_x_poly(&u).normalized(), m));
        }
        let p = BiPoly::from_y_coeffs(&prim);
        if p.degree_y().unwrap_or(0) > 0 {
            for (f, m) in yun_y(&p) {
                out.push((f.normalized(), m));
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
        out
    }

    /// Product of the distinct square-free factors, normalised.
    pub fn squarefree_part(&self) -> BiPoly {
        self.squarefree_decompose()
            .into_iter()
            .fold(BiPoly::one(), |acc, (f, _)| &acc * &f)
            .normalized()
    }

    /// Resultant with respect to `y`, as the determinant of the Sylvester matrix.
    pub fn resultant_y(&self, other: &BiPoly) -> UniPoly {
        resultant_y(self, other)
    }

    /// Compact edges of the lower-left Newton polygon, ordered by increasing slope.
    pub fn newton_polygon(&self) -> Result<Vec<NewtonPolygonEdge>, crate::Error> {
        if self.is_zero() {
            return Err(crate::Error::ZeroPolynomial);
        }
        if !self.constant_term().is_zero() {
            return Err(crate::Error::NotThroughOrigin(self.to_string()));
        }
        let pts: Vec<Exp> = self.terms.keys().copied().collect();
        let chain = lower_hull(&pts);
        let mut edges: Vec<NewtonPolygonEdge> = chain
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let di = b.0 - a.0;
                let dj = a.1 - b.1;
                let g = num_integer::gcd(di, dj);
                let support = self
                    .terms
                    .iter()
                    .filter(|(e, _)| {
                        e.0 >= a.0
                            && e.0 <= b.0
                            && (e.0 - a.0) as i64 * dj as i64 == (a.1 as i64 - e.1 as i64) * di as i64
                    })
                    .map(|(e, c)| (e.0, e.1, c.clone()))
                    .collect();
                NewtonPolygonEdge { slope: (dj / g, di / g), support }
            })
            .collect();
        edges.sort_by(|a, b| (a.slope.0 as u64 * b.slope.1 as u64).cmp(&(b.slope.0 as u64 * a.slope.1 as u64)));
        Ok(edges)
    }
}

/// One compact edge of a Newton polygon.
///
/// `slope = (p, q)` is the drop of the `y`-exponent per unit increase of the
/// `x`-exponent, as a coprime pair `p/q`. The edge through `(2,0)` and `(0,3)`
/// has slope `3/2`; its lattice points satisfy `p·i + q·j = const`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygonEdge {
    pub slope: (u32, u32),
    pub support: Vec<(u32, u32, Q)>,
}

/// Vertices of the lower-left convex chain of a finite exponent set, from the
/// leftmost point (lowest among those) to the lowest point (leftmost among those).
pub fn lower_hull(points: &[Exp]) -> Vec<Exp> {
    if points.is_empty() {
        return Vec::new();
    }
    let imin = points.iter().map(|p| p.0).min().unwrap();
    let jmin = points.iter().map(|p| p.1).min().unwrap();
    let a = (imin, points.iter().filter(|p| p.0 == imin).map(|p| p.1).min().unwrap());
    let b = (points.iter().filter(|p| p.1 == jmin).map(|p| p.0).min().unwrap(), jmin);
    // keep, for each x-exponent in range, the lowest point
    let mut best: BTreeMap<u32, u32> = BTreeMap::new();
    for p in points {
        if p.0 >= a.0 && p.0 <= b.0 {
            let e = best.entry(p.0).or_insert(p.1);
            if p.1 < *e {
                *e = p.1;
            }
        }
    }
    let mut chain: Vec<Exp> = Vec::new();
    for (i, j) in best {
        let p = (i, j);
        while chain.len() >= 2 {
            let o = chain[chain.len() - 2];
            let m = chain[chain.len() - 1];
            // drop m unless it lies strictly below segment o-p
            let cross = (m.0 as i64 - o.0 as i64) * (p.1 as i64 - o.1 as i64) - (m.1 as i64 - o.1 as i64) * (p.0 as i64 - o.0 as i64);
            if cross <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain
}

fn content_primitive(cs: &[UniPoly]) -> (UniPoly, Vec<UniPoly>) {
    let mut c = UniPoly::zero();
    for u in cs {
        c = c.gcd(u);
    }
    if c.is_zero() {
        return (UniPoly::zero(), cs.to_vec());
    }
    let prim: Vec<UniPoly> = cs.iter().map(|u| u.exact_div(&c).expect("content divides")).collect();
    (c, integer_primitive(prim))
}

/// Rescale by a rational so all coefficients are coprime integers.
fn integer_primitive(v: Vec<UniPoly>) -> Vec<UniPoly> {
    use num_integer::Integer;
    let (mut den, mut num) = (num_bigint::BigInt::one(), num_bigint::BigInt::zero());
    for c in v.iter().flat_map(|u| u.coeffs()) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return v;
    }
    let s = Q::new(den, num);
    v.iter().map(|u| u.scale(&s)).collect()
}

fn trim(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().is_some_and(|u| u.is_zero()) {
        v.pop();
    }
    v
}

fn mul_ycoeffs_by(v: &[UniPoly], c: &UniPoly) -> Vec<UniPoly> {
    v.iter().map(|u| u * c).collect()
}

/// Pseudo-remainder of `a` by `b` in `Q[x][y]`.
fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UniPoly> = r.iter().map(|u| u * lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = &next[j + shift] - &(&lr * bj);
        }
        r = trim(next);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn primitive_gcd(a: Vec<UniPoly>, b: Vec<UniPoly>) -> Vec<UniPoly> {
    let (mut a, mut b) = (trim(a), trim(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return content_primitive(&a).1;
        }
        if b.len() == 1 {
            return vec![UniPoly::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { content_primitive(&r).1 };
    }
}

/// Yun's algorithm in `y` for a primitive polynomial of positive `y`-degree.
fn yun_y(p: &BiPoly) -> Vec<(BiPoly, u32)> {
    let mut out = Vec::new();
    let d = p.derivative_y();
    let a0 = p.gcd(&d);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = d.exact_div(&a0).expect("gcd divides derivative");
    let mut i = 1;
    loop {
        let dd = &c - &b.derivative_y();
        if dd.is_zero() {
            if b.degree_y().unwrap_or(0) > 0 {
                out.push((b, i));
            }
            break;
        }
        let a = b.gcd(&dd);
        if a.degree_y().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = dd.exact_div(&a).expect("gcd divides");
        i += 1;
        if b.degree_y().unwrap_or(0) == 0 {
            break;
        }
    }
    out
}

fn resultant_y(p: &BiPoly, q: &BiPoly) -> UniPoly {
    let pc = p.y_coeffs();
    let qc = q.y_coeffs();
    if pc.is_empty() || qc.is_empty() {
        return UniPoly::zero();
    }
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    if size == 0 {
        return UniPoly::one();
    }
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination over `Q[x]`.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                None => return UniPoly::zero(),
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    /// Prints in the input grammar, terms in decreasing grlex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut exps: Vec<&Exp> = self.terms.keys().collect();
        exps.sort_by(|a, b| grlex_cmp(b, a));
        for (n, e) in exps.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || *e == (0, 0) {
                parts.push(abs.to_string());
            }
            match e.0 {
                0 => {}
                1 => parts.push("x".into()),
                k => parts.push(format!("x^{k}")),
            }
            match e.1 {
                0 => {}
                1 => parts.push("y".into()),
                k => parts.push(format!("y^{k}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        crate::algebra::parse_poly(s).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(p("x^2*y").gcd(&p("x*y^2")), p("x*y"));
    }

    #[test]
    fn cusp_and_line_are_coprime() {
        assert_eq!(p("x^2+y^3").gcd(&p("x")), BiPoly::one());
    }

    #[test]
    fn gcd_is_idempotent_and_normalised() {
        let q = p("3*x^2*y + 6*y^3 - x");
        assert_eq!(q.gcd(&q), q.normalized());
        assert_eq!(q.gcd(&q).leading_term().unwrap().1, &Q::one());
    }

    #[test]
    fn gcd_nontrivial_factor() {
        let a = &p("x+y^2") * &p("x-y");
        let b = &p("x+y^2") * &p("x+1");
        assert_eq!(a.gcd(&b), p("x+y^2").normalized());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p("(x^2+y^3)^2").squarefree_decompose(), vec![(p("y^3+x^2"), 2)]);
        assert_eq!(p("x^2*y^3").squarefree_decompose(), vec![(p("x"), 2), (p("y"), 3)]);
        let sf = p("x^3 + x^2*y - x*y^2 - y^3").squarefree_decompose();
        assert_eq!(sf, vec![(p("x-y"), 1), (p("x+y"), 2)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p("y-x").resultant_y(&p("y+x")), UniPoly::from_ints(&[0, 2]));
        assert_eq!(p("y^2").resultant_y(&p("x")), UniPoly::from_ints(&[0, 0, 1]));
        assert!(p("y^2+x*y+1").resultant_y(&p("y^2+x*y+1")).is_zero());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p("x^2+y^3").multiplicity_at_origin(), Some(2));
        assert_eq!(p("1+x").multiplicity_at_origin(), Some(0));
        assert_eq!(p("x^2*y^2").multiplicity_at_origin(), Some(4));
    }

    #[test]
    fn newton_polygon_examples() {
        let e = p("x^2+y^3").newton_polygon().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope, (3, 2));
        assert_eq!(e[0].support.len(), 2);

        let e = p("x+y").newton_polygon().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope, (1, 1));

        let e = p("x^5 + x^2*y + y^3").newton_polygon().unwrap();
        let ends: Vec<Vec<(u32, u32)>> = e.iter().map(|ed| ed.support.iter().map(|t| (t.0, t.1)).collect()).collect();
        assert_eq!(ends, vec![vec![(2, 1), (5, 0)], vec![(0, 3), (2, 1)]]);
        assert!(p("1+x").newton_polygon().is_err());
    }

    #[test]
    fn shear_substitutes() {
        assert_eq!(p("x^2").shear(1), p("x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn exact_division() {
        let a = &p("x^2+y^3") * &p("x - 2*y + x*y");
        assert_eq!(a.exact_div(&p("x^2+y^3")), Some(p("x - 2*y + x*y")));
        assert_eq!(p("x^2+y").exact_div(&p("x")), None);
    }
}
