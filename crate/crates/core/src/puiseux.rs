//! Newton–Puiseux expansion of the branches of `f` and `g`.
//!
//! All square-free factors of both germs are expanded jointly with Duval's
//! rational algorithm, so the branching structure of the expansion tree gives
//! the contact between any two ℂ-branches directly. Coefficients live in a
//! [`Tower`]; conjugate roots of an edge polynomial are bundled into one
//! orbit, and an orbit materialises into `orbit_size` ℂ-branches indexed by
//! the root chosen at each step.
//!
//! Local charts: a node of the expansion carries
//! `x = κ·X^Q`, `y = S(X) + λ·X^B·Y` together with the transforms of the
//! factors in `(X, Y)`. An edge of slope `m/q` with root `ξ` of its edge
//! polynomial substitutes `X = ξ^v X'^q`, `Y = X'^m (ξ^u + Y')` where
//! `u q − v m = 1`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{lower_hull, BiPoly, Exp, Q};
use crate::cluster::{euclid_sequence, single_branch_sequence, Germ};
use crate::tower::{Elem, Split, TResult, TUPoly, Tower};
use crate::Error;

type TPoly = BTreeMap<Exp, Elem>;

/// Shear `x ← x + c·y` used to make the product of the germs y-regular:
/// `0` if it already is, else the smallest `|c|`, positive first.
pub fn choose_shear(polys: &[&BiPoly]) -> i64 {
    let mut lead = BiPoly::one();
    for p in polys {
        lead = &lead * &p.initial_form();
    }
    let regular = |c: i64| {
        let s = lead.shear(c);
        let d = s.total_degree().unwrap_or(0);
        !s.coeff(0, d).is_zero()
    };
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] }).find(|&c| regular(c)).expect("some shear works")
}

/// Truncated parametrisation `x = κ t^e`, `y = Σ c_k t^k` of one ℂ-branch of
/// the orbit (any root of the tower moduli may be substituted).
#[derive(Clone, Debug)]
pub struct BranchSeries {
    pub tower: Tower,
    pub kappa: Elem,
    pub terms: Vec<(u32, Elem)>,
    /// The parametrisation is exact (the branch is `y = S(x)` on the nose).
    pub exact: bool,
    /// Terms are correct through `t^precision`.
    pub precision: u32,
}

#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    pub germ: Germ,
    pub e: u32,
    pub alpha: u32,
    pub orbit_size: usize,
    pub char_exponents: Vec<Q>,
    pub mult_sequence: Vec<u32>,
    /// Exponents of all expansion steps taken for this branch.
    pub steps: Vec<Q>,
    pub series: BranchSeries,
    pub shear: i64,
}

/// One ℂ-branch: copy `copy` of orbit `branch`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Instance {
    pub branch: usize,
    pub copy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactRecord {
    pub a: usize,
    pub b: usize,
    pub exponent: Q,
    pub intersection_multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct BranchSet {
    pub shear: i64,
    pub branches: Vec<PuiseuxBranch>,
    pub instances: Vec<Instance>,
    /// Contact exponents between instances; `None` on the diagonal.
    pub instance_contact: Vec<Vec<Option<Q>>>,
}

pub fn format_q(q: &Q) -> String {
    q.to_string()
}

impl PuiseuxBranch {
    pub fn to_json(&self) -> Value {
        json!({
            "germ": self.germ.name(),
            "e": self.e,
            "alpha": self.alpha,
            "orbit_size": self.orbit_size,
            "char_exponents": self.char_exponents.iter().map(format_q).collect::<Vec<_>>(),
            "mult_sequence": self.mult_sequence,
        })
    }

    /// Exponent in `x` beyond which the stored series is not claimed.
    pub fn truncation(&self) -> Q {
        Q::new(self.series.precision.into(), self.e.into())
    }

    /// Multiplicity sequence regenerated from the characteristic exponents.
    pub fn euclid_sequence(&self) -> Vec<u32> {
        euclid_sequence(self.e, &self.char_exponents)
    }
}

/// Intersection multiplicity of two ℂ-branches from their contact exponent:
/// `n' · (Σ_k (e_{k−1} − e_k)·min(β_k, c) + c)` with `e_k` the successive gcds
/// of the first branch.
pub fn intersection_from_contact(e: u32, char_exponents: &[Q], e_other: u32, contact: &Q) -> u64 {
    let mut sum = Q::zero();
    let mut den = 1u32;
    let mut prev = e;
    for b in char_exponents {
        den = den.lcm(&b.denom().to_u32().expect("small denominator"));
        let next = e / den;
        sum += Q::from_integer((prev - next).into()) * b.min(contact).clone();
        prev = next;
    }
    sum += Q::from_integer(prev.into()) * contact;
    let total = sum * Q::from_integer(e_other.into());
    debug_assert!(total.is_integer());
    total.to_integer().to_u64().expect("intersection multiplicity fits")
}

impl BranchSet {
    pub fn of_germ(&self, g: Germ) -> impl Iterator<Item = (usize, &PuiseuxBranch)> {
        self.branches.iter().enumerate().filter(move |(_, b)| b.germ == g)
    }

    pub fn instances_of(&self, branch: usize) -> impl Iterator<Item = usize> + '_ {
        self.instances.iter().enumerate().filter(move |(_, i)| i.branch == branch).map(|(k, _)| k)
    }

    /// Contact and intersection multiplicity of two distinct orbits.
    pub fn contact(&self, a: usize, b: usize) -> Result<ContactRecord, Error> {
        if a == b {
            return Err(Error::Input("contact of a branch with itself".into()));
        }
        let (ba, bb) = (&self.branches[a], &self.branches[b]);
        let mut best: Option<Q> = None;
        let mut inter = 0u64;
        for i in self.instances_of(a) {
            for j in self.instances_of(b) {
                let c = self.instance_contact[i][j]
                    .clone()
                    .ok_or_else(|| Error::Internal(format!("branches {a} and {b} coincide")))?;
                inter += intersection_from_contact(ba.e, &ba.char_exponents, bb.e, &c);
                if best.as_ref().is_none_or(|x| &c > x) {
                    best = Some(c);
                }
            }
        }
        Ok(ContactRecord { a, b, exponent: best.expect("orbits are nonempty"), intersection_multiplicity: inter })
    }

    pub fn contacts(&self) -> Result<Vec<ContactRecord>, Error> {
        let n = self.branches.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                out.push(self.contact(a, b)?);
            }
        }
        Ok(out)
    }

    /// Sum over all pairs (f-branch, g-branch) of α·α'·i.
    pub fn intersection_fg(&self) -> Result<u64, Error> {
        let mut s = 0;
        for (a, ba) in self.of_germ(Germ::F) {
            for (b, bb) in self.of_germ(Germ::G) {
                s += u64::from(ba.alpha) * u64::from(bb.alpha) * self.contact(a, b)?.intersection_multiplicity;
            }
        }
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        let contacts: Vec<Value> = (0..self.instances.len())
            .flat_map(|i| (i + 1..self.instances.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                json!({"a": i, "b": j, "exponent": self.instance_contact[i][j].as_ref().map(format_q)})
            })
            .collect();
        json!({
            "shear": self.shear,
            "branches": self.branches.iter().map(PuiseuxBranch::to_json).collect::<Vec<_>>(),
            "instances": self.instances.iter().map(|i| json!({"branch": i.branch, "copy": i.copy})).collect::<Vec<_>>(),
            "contacts": contacts,
        })
    }
}

// ---------------------------------------------------------------------------
// Expansion

#[derive(Clone, Debug)]
struct Param {
    kappa: Elem,
    q: u32,
    b: u32,
    lambda: Elem,
    s: Vec<(u32, Elem)>,
}

#[derive(Clone, Debug)]
struct PathStep {
    node: u64,
    child: usize,
    copies: usize,
    gamma: Option<Q>,
    q: u32,
}

#[derive(Clone, Debug)]
struct RawLeaf {
    factor: usize,
    path: Vec<PathStep>,
    tower: Tower,
    param: Param,
    exact: bool,
}

struct Factor {
    id: usize,
    poly: TPoly,
}

struct Expander {
    next_node: u64,
}

fn uv(m: u32, q: u32) -> (u32, u32) {
    let u = (1..=m).find(|&u| (u64::from(u) * u64::from(q)) % u64::from(m) == 1 % u64::from(m)).expect("m, q coprime");
    (u, (u * q - 1) / m)
}

fn lift_param(t: &Tower, p: &Param, from: usize, to: usize) -> Param {
    Param {
        kappa: t.lift(p.kappa.clone(), from, to),
        q: p.q,
        b: p.b,
        lambda: t.lift(p.lambda.clone(), from, to),
        s: p.s.iter().map(|(k, c)| (*k, t.lift(c.clone(), from, to))).collect(),
    }
}

fn lift_poly(t: &Tower, f: &TPoly, from: usize, to: usize) -> TPoly {
    f.iter().map(|(e, c)| (*e, t.lift(c.clone(), from, to))).collect()
}

/// Advance the chart by the substitution for slope `m/q` and root `xi`.
fn step_param(t: &Tower, d: usize, p: &Param, m: u32, q: u32, xi: &Elem) -> Param {
    let (u, v) = uv(m, q);
    let xv = t.pow(d, xi, v.into());
    let mut s: Vec<(u32, Elem)> = p.s.iter().map(|(k, c)| (q * k, t.mul(d, c, &t.pow(d, &xv, (*k).into())))).collect();
    let lam_b = t.mul(d, &p.lambda, &t.pow(d, &xv, p.b.into()));
    let b = q * p.b + m;
    let c = t.mul(d, &lam_b, &t.pow(d, xi, u.into()));
    if !c.is_struct_zero() {
        s.push((b, c));
    }
    Param { kappa: t.mul(d, &p.kappa, &t.pow(d, &xv, p.q.into())), q: q * p.q, b, lambda: lam_b, s }
}

/// `F(ξ^v X^q, X^m (ξ^u + Y)) / X^n`.
fn duval(t: &Tower, d: usize, f: &TPoly, m: u32, q: u32, xi: &Elem, n: u32) -> TPoly {
    let (u, v) = uv(m, q);
    let shift = vec![t.pow(d, xi, u.into()), t.one(d)];
    let maxj = f.keys().map(|e| e.1).max().unwrap_or(0) as usize;
    let mut pw: Vec<TUPoly> = vec![vec![t.one(d)]];
    for k in 1..=maxj {
        pw.push(t.poly_mul(d, &pw[k - 1], &shift));
    }
    let xv = t.pow(d, xi, v.into());
    let mut out: TPoly = BTreeMap::new();
    for (&(i, j), a) in f {
        let coef = t.mul(d, a, &t.pow(d, &xv, i.into()));
        let xe = q * i + m * j - n;
        for (k, c) in pw[j as usize].iter().enumerate() {
            let val = t.mul(d, &coef, c);
            let slot = out.entry((xe, k as u32)).or_insert_with(|| t.zero(d));
            *slot = t.add(d, slot, &val);
        }
    }
    out.retain(|_, c| !c.is_struct_zero());
    out
}

fn support(t: &Tower, d: usize, f: &TPoly) -> TResult<Vec<Exp>> {
    let mut out = Vec::new();
    for (e, c) in f {
        if !t.is_zero(d, c)? {
            out.push(*e);
        }
    }
    Ok(out)
}

struct Edge {
    m: u32,
    q: u32,
    n: u32,
    poly: TUPoly,
}

fn edges(t: &Tower, d: usize, f: &TPoly, supp: &[Exp]) -> Vec<Edge> {
    let hull = lower_hull(supp);
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((ia, ja), (ib, jb)) = (w[0], w[1]);
        let (di, dj) = (ib - ia, ja - jb);
        let g = di.gcd(&dj);
        let (m, q) = (di / g, dj / g);
        let poly = (0..=g)
            .map(|k| f.get(&(ib - k * m, jb + k * q)).cloned().unwrap_or_else(|| t.zero(d)))
            .collect();
        out.push(Edge { m, q, n: q * ib + m * jb, poly });
    }
    out
}

impl Expander {
    fn expand(&mut self, t: &Tower, factors: Vec<Factor>, param: Param, path: Vec<PathStep>) -> TResult<Vec<RawLeaf>> {
        let d = t.depth();
        let node = self.next_node;
        self.next_node += 1;
        let mut exact = Vec::new();
        let mut live: Vec<(Factor, u32, Vec<Exp>)> = Vec::new();
        for mut f in factors {
            let supp = support(t, d, &f.poly)?;
            let r = supp.iter().filter(|e| e.0 == 0).map(|e| e.1).min();
            if !supp.iter().any(|e| e.1 == 0) {
                // Y divides F: the branch y = S(X) is exact here
                exact.push(f.id);
                f.poly = f.poly.into_iter().filter(|(e, _)| e.1 > 0).map(|((i, j), c)| ((i, j - 1), c)).collect();
                let supp: Vec<Exp> = supp.iter().filter(|e| e.1 > 0).map(|&(i, j)| (i, j - 1)).collect();
                let r = r.map_or(0, |r| r - 1);
                if r > 0 {
                    live.push((f, r, supp));
                }
            } else if let Some(r) = r.filter(|&r| r > 0) {
                live.push((f, r, supp));
            }
        }
        let roots: u32 = live.iter().map(|l| l.1).sum::<u32>() + exact.len() as u32;
        let mut leaves = Vec::new();
        if roots == 0 {
            return Ok(leaves);
        }
        if roots == 1 {
            if let Some(&id) = exact.first() {
                leaves.push(RawLeaf { factor: id, path, tower: t.clone(), param, exact: true });
            } else {
                let (f, _, supp) = &live[0];
                let i0 = supp.iter().filter(|e| e.1 == 0).map(|e| e.0).min().expect("F(X,0) is nonzero");
                let xi = t.neg(d, &t.div(d, &f.poly[&(i0, 0)], &f.poly[&(0, 1)])?);
                let param = step_param(t, d, &param, i0, 1, &xi);
                leaves.push(RawLeaf { factor: f.id, path, tower: t.clone(), param, exact: false });
            }
            return Ok(leaves);
        }
        let mut next_child = 0usize;
        for id in exact {
            let mut p = path.clone();
            p.push(PathStep { node, child: next_child, copies: 1, gamma: None, q: 1 });
            next_child += 1;
            leaves.push(RawLeaf { factor: id, path: p, tower: t.clone(), param: param.clone(), exact: true });
        }
        // group edge polynomials by slope
        let mut by_slope: BTreeMap<Q, Vec<(usize, Edge)>> = BTreeMap::new();
        for (k, (f, _, supp)) in live.iter().enumerate() {
            for e in edges(t, d, &f.poly, supp) {
                by_slope.entry(Q::new(e.m.into(), e.q.into())).or_default().push((k, e));
            }
        }
        for (_, group) in by_slope {
            let polys: Vec<TUPoly> = group.iter().map(|(_, e)| e.poly.clone()).collect();
            let base = t.coprime_base(d, &polys)?;
            for (phi, exps) in base {
                let mut work = vec![phi];
                while let Some(phi) = work.pop() {
                    let child = next_child;
                    next_child += 1;
                    match self.child(t, &live, &group, &exps, &phi, &param, &path, node, child) {
                        Ok(mut l) => leaves.append(&mut l),
                        Err(Split { level, factor, cofactor }) if level == d + 1 && phi.len() > 2 => {
                            work.push(cofactor);
                            work.push(factor);
                        }
                        Err(s) => return Err(s),
                    }
                }
            }
        }
        Ok(leaves)
    }

    #[allow(clippy::too_many_arguments)]
    fn child(
        &mut self,
        t: &Tower,
        live: &[(Factor, u32, Vec<Exp>)],
        group: &[(usize, Edge)],
        exps: &[u32],
        phi: &TUPoly,
        param: &Param,
        path: &[PathStep],
        node: u64,
        child: usize,
    ) -> TResult<Vec<RawLeaf>> {
        let d = t.depth();
        let (ct, xi) = if phi.len() == 2 {
            (t.clone(), t.neg(d, &phi[0]))
        } else {
            let ct = t.extend(phi.clone());
            let g = ct.generator(d + 1);
            (ct, g)
        };
        let cd = ct.depth();
        let (m, q) = (group[0].1.m, group[0].1.q);
        let mut factors = Vec::new();
        for ((k, e), &mult) in group.iter().zip(exps) {
            if mult == 0 {
                continue;
            }
            let f = lift_poly(&ct, &live[*k].0.poly, d, cd);
            factors.push(Factor { id: live[*k].0.id, poly: duval(&ct, cd, &f, m, q, &xi, e.n) });
        }
        let p = step_param(&ct, cd, &lift_param(&ct, param, d, cd), m, q, &xi);
        let mut path = path.to_vec();
        path.push(PathStep {
            node,
            child,
            copies: phi.len() - 1,
            gamma: Some(Q::new(p.b.into(), p.q.into())),
            q,
        });
        self.expand(&ct, factors, p, path)
    }
}

fn to_tpoly(p: &BiPoly) -> TPoly {
    p.terms().iter().map(|(e, c)| (*e, Elem::Rat(c.clone()))).collect()
}

fn digits(mut k: usize, path: &[PathStep]) -> Vec<usize> {
    let mut out = Vec::with_capacity(path.len());
    for s in path.iter().rev() {
        out.push(k % s.copies);
        k /= s.copies;
    }
    out.reverse();
    out
}

fn instance_contact(pa: &[PathStep], da: &[usize], pb: &[PathStep], db: &[usize]) -> Option<Q> {
    for (k, (sa, sb)) in pa.iter().zip(pb).enumerate() {
        debug_assert_eq!(sa.node, sb.node);
        if sa.child != sb.child {
            return match (&sa.gamma, &sb.gamma) {
                (Some(x), Some(y)) => Some(x.min(y).clone()),
                (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                (None, None) => None,
            };
        }
        if da[k] != db[k] {
            return sa.gamma.clone();
        }
    }
    None
}

/// Expand the branches of `f` (and of `g` if present) jointly.
pub fn expand_pair(f: &BiPoly, g: Option<&BiPoly>) -> Result<BranchSet, Error> {
    let mut germs = vec![(Germ::F, f)];
    if let Some(g) = g {
        germs.push((Germ::G, g));
    }
    for (germ, p) in &germs {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.constant_term().is_zero() {
            return Err(Error::NotThroughOrigin(germ.name().into()));
        }
    }
    let shear = choose_shear(&germs.iter().map(|(_, p)| *p).collect::<Vec<_>>());
    let mut labels: Vec<(Germ, u32, BiPoly)> = Vec::new();
    for (germ, p) in &germs {
        // the shear is an automorphism: decompose first, on the sparser input
        for (fac, alpha) in p.squarefree_decompose() {
            if fac.constant_term().is_zero() {
                labels.push((*germ, alpha, fac.shear(shear).normalized()));
            }
        }
    }
    let factors: Vec<Factor> = labels.iter().enumerate().map(|(id, l)| Factor { id, poly: to_tpoly(&l.2) }).collect();
    let root = Param { kappa: Elem::Rat(Q::one()), q: 1, b: 0, lambda: Elem::Rat(Q::one()), s: Vec::new() };
    let mut ex = Expander { next_node: 0 };
    let leaves = ex
        .expand(&Tower::rationals(), factors, root, Vec::new())
        .map_err(|s| Error::Internal(format!("unhandled tower split at level {}", s.level)))?;

    let mut order: Vec<usize> = (0..leaves.len()).collect();
    order.sort_by_key(|&k| labels[leaves[k].factor].0);
    let mut branches = Vec::new();
    let mut inst_paths: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut instances = Vec::new();
    for &k in &order {
        let leaf = &leaves[k];
        let (germ, alpha, _) = &labels[leaf.factor];
        let steps: Vec<Q> = leaf.path.iter().filter_map(|s| s.gamma.clone()).collect();
        let char_exponents: Vec<Q> =
            leaf.path.iter().filter(|s| s.q > 1).map(|s| s.gamma.clone().expect("finite step")).collect();
        let e = leaf.param.q;
        let orbit_size: usize = leaf.path.iter().map(|s| s.copies).product();
        let bi = branches.len();
        for copy in 0..orbit_size {
            instances.push(Instance { branch: bi, copy });
            inst_paths.push((k, digits(copy, &leaf.path)));
        }
        branches.push(PuiseuxBranch {
            germ: *germ,
            e,
            alpha: *alpha,
            orbit_size,
            mult_sequence: single_branch_sequence(e, &steps)?,
            char_exponents,
            steps,
            series: BranchSeries {
                tower: leaf.tower.clone(),
                kappa: leaf.param.kappa.clone(),
                terms: leaf.param.s.clone(),
                exact: leaf.exact,
                precision: leaf.param.b,
            },
            shear,
        });
    }
    let n = instances.len();
    let mut table = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (li, di) = &inst_paths[i];
            let (lj, dj) = &inst_paths[j];
            let c = instance_contact(&leaves[*li].path, di, &leaves[*lj].path, dj);
            if c.is_none() {
                return Err(Error::Internal("two instances never separate".into()));
            }
            table[i][j] = c.clone();
            table[j][i] = c;
        }
    }
    Ok(BranchSet { shear, branches, instances, instance_contact: table })
}

/// Branches of a single germ.
pub fn puiseux_branches(p: &BiPoly) -> Result<Vec<PuiseuxBranch>, Error> {
    Ok(expand_pair(p, None)?.branches)
}

// ---------------------------------------------------------------------------
// Certificates

/// Outcome of substituting a branch parametrisation into a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCertificate {
    /// `ord_t p(x(t), y(t))`, `None` if identically zero.
    pub order: Option<u32>,
    /// Required lower bound.
    pub bound: u32,
}

fn substitute(t: &Tower, d: usize, p: &BiPoly, kappa: &Elem, e: u32, y: &TUPoly) -> TUPoly {
    let maxj = p.degree_y().unwrap_or(0) as usize;
    let mut ypw: Vec<TUPoly> = vec![vec![t.one(d)]];
    for k in 1..=maxj {
        ypw.push(t.poly_mul(d, &ypw[k - 1], y));
    }
    let mut out: TUPoly = Vec::new();
    for (&(i, j), c) in p.terms() {
        let coef = t.mul(d, &t.from_rat(d, c.clone()), &t.pow(d, kappa, i.into()));
        let mut shifted = vec![t.zero(d); (e * i) as usize];
        shifted.extend(t.poly_scale(d, &ypw[j as usize], &coef));
        out = t.poly_add(d, &out, &shifted);
    }
    out
}

fn order(p: &TUPoly) -> Option<u32> {
    p.iter().position(|c| !c.is_struct_zero()).map(|k| k as u32)
}

/// Substitute the branch into `p` (in the branch's sheared coordinates) and
/// check the vanishing order against `precision + 1 + ord_t ∂p/∂y`.
pub fn verify_branch(p: &BiPoly, b: &PuiseuxBranch) -> Result<VanishingCertificate, Error> {
    let s = &b.series;
    let t = &s.tower;
    let d = t.depth();
    let ps = p.shear(b.shear);
    let mut y: TUPoly = vec![t.zero(d); s.terms.iter().map(|x| x.0 as usize + 1).max().unwrap_or(0)];
    for (k, c) in &s.terms {
        y[*k as usize] = t.add(d, &y[*k as usize], c);
    }
    let y = t.poly_trim(y);
    let val = substitute(t, d, &ps, &s.kappa, b.e, &y);
    let ord = order(&val);
    let dy = order(&substitute(t, d, &ps.derivative_y(), &s.kappa, b.e, &y));
    let bound = if s.exact { u32::MAX } else { s.precision + 1 + dy.unwrap_or(0) };
    let cert = VanishingCertificate { order: ord, bound };
    match ord {
        None => Ok(cert),
        Some(o) if !s.exact && dy.is_some() && o >= bound => Ok(cert),
        Some(o) => Err(Error::Verification(format!("branch vanishes only to order {o}, bound {bound}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn shear_choice() {
        assert_eq!(choose_shear(&[&parse_poly("x^2+y^3").unwrap()]), 1);
        assert_eq!(choose_shear(&[&parse_poly("y^2+x^3").unwrap()]), 0);
        assert_eq!(choose_shear(&[&parse_poly("x*y").unwrap()]), 1);
        // x(x+y): c = 1 kills y^2 coefficient? (x+y)(x+2y) at x=0: 2y^2, fine
        assert_eq!(choose_shear(&[&parse_poly("x*(x+y)").unwrap()]), 1);
        assert_eq!(choose_shear(&[&parse_poly("x*(x-y)").unwrap()]), -1);
    }

    #[test]
    fn cusp() {
        let bs = puiseux_branches(&parse_poly("x^2+y^3").unwrap()).unwrap();
        assert_eq!(bs.len(), 1);
        let b = &bs[0];
        assert_eq!((b.e, b.alpha, b.orbit_size), (2, 1, 1));
        assert_eq!(b.char_exponents, vec![q(3, 2)]);
        assert_eq!(b.mult_sequence, vec![2, 1, 1]);
        assert_eq!(b.euclid_sequence(), b.mult_sequence);
        verify_branch(&parse_poly("x^2+y^3").unwrap(), b).unwrap();
    }

    #[test]
    fn axes() {
        let bs = puiseux_branches(&parse_poly("x*y").unwrap()).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert_eq!((b.e, b.alpha, b.orbit_size), (1, 1, 1));
            assert!(b.char_exponents.is_empty());
            assert_eq!(b.mult_sequence, vec![1]);
        }
    }

    #[test]
    fn squared_cusp() {
        let bs = puiseux_branches(&parse_poly("(x^2+y^3)^2").unwrap()).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].alpha, 2);
        assert_eq!(bs[0].char_exponents, vec![q(3, 2)]);
    }

    #[test]
    fn conjugate_orbit() {
        // y^2 - 2x^2: two lines bundled over Q(sqrt 2)
        let set = expand_pair(&parse_poly("y^2-2*x^2").unwrap(), None).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].orbit_size, 2);
        assert_eq!(set.instance_contact[0][1], Some(q(1, 1)));
    }

    #[test]
    fn contacts_with_cusp() {
        let f = parse_poly("x^2+y^3").unwrap();
        let set = expand_pair(&f, Some(&parse_poly("x").unwrap())).unwrap();
        assert_eq!(set.contact(0, 1).unwrap().intersection_multiplicity, 3);
        let set = expand_pair(&f, Some(&parse_poly("y").unwrap())).unwrap();
        assert_eq!(set.contact(0, 1).unwrap().intersection_multiplicity, 2);
        assert_eq!(set.contact(1, 0).unwrap().intersection_multiplicity, 2);
    }

    #[test]
    fn wrong_branch_is_rejected() {
        let f = parse_poly("x^2+y^3").unwrap();
        let mut b = puiseux_branches(&f).unwrap().remove(0);
        let t = b.series.tower.clone();
        let d = t.depth();
        let last = b.series.terms.len() - 1;
        b.series.terms[last].1 = t.add(d, &b.series.terms[last].1, &t.one(d));
        assert!(verify_branch(&f, &b).is_err());
        b.series.terms[0].1 = t.add(d, &b.series.terms[0].1, &t.one(d));
        assert!(verify_branch(&f, &b).is_err());
    }

    #[test]
    fn exact_line() {
        let f = parse_poly("y-x").unwrap();
        let b = puiseux_branches(&f).unwrap().remove(0);
        let c = verify_branch(&f, &b).unwrap();
        assert_eq!(c.order, None);
    }
}
