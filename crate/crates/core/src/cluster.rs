//! Infinitely near points of the common embedded resolution.
//!
//! The tree is built from discrete branch data only: for every ℂ-branch its
//! ramification, the rational exponents at which something happens to it (its
//! characteristic exponents and its admissible contacts with other branches),
//! and the pairwise contact exponents. Blowing up is simulated on a generic
//! model branch with exactly those exponents: each point carries, per branch,
//! the current relative exponent `r` (next exponent seen from the point's
//! chart) and the remaining multiplicity `N`, so the branch's multiplicity at
//! the point is `N·min(1, r)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::Q;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Germ {
    F,
    G,
}

impl Germ {
    pub fn name(self) -> &'static str {
        match self {
            Germ::F => "f",
            Germ::G => "g",
        }
    }
}

/// One ℂ-branch as seen by the blowup walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkBranch {
    pub germ: Germ,
    pub alpha: u32,
    pub e: u32,
    /// Strictly increasing exponents at which the branch's model changes.
    pub exponents: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPoint {
    pub id: usize,
    pub parent: Option<usize>,
    pub proximate_to: BTreeSet<usize>,
    pub strict_mult_f: u64,
    pub strict_mult_g: u64,
    pub branches_through: BTreeSet<usize>,
    /// `(branch, multiplicity of that branch here)`.
    pub branch_mults: Vec<(usize, u32)>,
}

/// Where the strict transform of a branch leaves the cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terminal {
    pub branch: usize,
    pub attach: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTree {
    pub branches: Vec<WalkBranch>,
    pub points: Vec<ClusterPoint>,
    pub terminals: Vec<Terminal>,
}

#[derive(Clone, Debug)]
struct State {
    branch: usize,
    next: usize,
    gamma: Q,
    den: u32,
    n: Q,
    /// `None` stands for an infinite relative exponent.
    r: Option<Q>,
}

impl State {
    fn start(branch: usize, b: &WalkBranch) -> State {
        State {
            branch,
            next: 0,
            gamma: Q::zero(),
            den: 1,
            n: Q::from_integer(b.e.into()),
            r: b.exponents.first().cloned(),
        }
    }

    fn mult(&self) -> Result<u32, Error> {
        let m = match &self.r {
            Some(r) if r < &Q::one() => &self.n * r,
            _ => self.n.clone(),
        };
        if !m.is_integer() {
            return Err(Error::Internal(format!("non-integral multiplicity {m} in blowup walk")));
        }
        m.to_integer().to_u32().ok_or_else(|| Error::Internal("multiplicity overflow".into()))
    }

    /// Move to the next exponent after a coincidence `r = 1`.
    fn advance(&mut self, b: &WalkBranch) {
        let g = b.exponents[self.next].clone();
        let d: u32 = g.denom().to_u32().expect("small denominator");
        self.den = self.den.lcm(&d);
        self.n = Q::from_integer((b.e / self.den).into());
        self.next += 1;
        let qd = Q::from_integer(self.den.into());
        self.r = b.exponents.get(self.next).map(|nx| qd * (nx - &g));
        self.gamma = g;
    }
}

struct Builder<'a> {
    branches: &'a [WalkBranch],
    contact: &'a dyn Fn(usize, usize) -> Option<Q>,
    points: Vec<ClusterPoint>,
    terminals: Vec<Terminal>,
}

/// Simulate the minimal sequence of point blowups separating and resolving
/// `branches`; `contact(i, j)` is the contact exponent of distinct branches.
pub fn walk(branches: &[WalkBranch], contact: &dyn Fn(usize, usize) -> Option<Q>) -> Result<ClusterTree, Error> {
    for (i, b) in branches.iter().enumerate() {
        if b.e == 0 || b.alpha == 0 || b.exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!("inconsistent data for branch {i}")));
        }
        if b.exponents.first().is_some_and(|g| g < &Q::one()) {
            return Err(Error::Input(format!("branch {i} is tangent to the y-axis")));
        }
        for j in 0..i {
            if contact(i, j).is_none() {
                return Err(Error::Input(format!("branches {j} and {i} coincide")));
            }
        }
    }
    let mut bld = Builder { branches, contact, points: Vec::new(), terminals: Vec::new() };
    let group: Vec<State> = branches.iter().enumerate().map(|(i, b)| State::start(i, b)).collect();
    if !group.is_empty() {
        bld.visit(group, None, None, None)?;
    }
    Ok(ClusterTree { branches: branches.to_vec(), points: bld.points, terminals: bld.terminals })
}

impl Builder<'_> {
    fn visit(&mut self, group: Vec<State>, parent: Option<usize>, ex: Option<usize>, ey: Option<usize>) -> Result<(), Error> {
        let mults = group.iter().map(State::mult).collect::<Result<Vec<_>, _>>()?;
        if let Some(attach) = parent.filter(|_| group.len() == 1 && mults[0] == 1 && ey.is_none() && group[0].r.as_ref().is_none_or(|r| r >= &Q::one())) {
            self.terminals.push(Terminal { branch: group[0].branch, attach });
            return Ok(());
        }
        if self.points.len() > 100_000 {
            return Err(Error::Internal("blowup walk does not terminate".into()));
        }
        let id = self.points.len();
        let mut pt = ClusterPoint {
            id,
            parent,
            proximate_to: ex.into_iter().chain(ey).collect(),
            strict_mult_f: 0,
            strict_mult_g: 0,
            branches_through: BTreeSet::new(),
            branch_mults: Vec::new(),
        };
        for (s, &m) in group.iter().zip(&mults) {
            let b = &self.branches[s.branch];
            let w = u64::from(b.alpha) * u64::from(m);
            match b.germ {
                Germ::F => pt.strict_mult_f += w,
                Germ::G => pt.strict_mult_g += w,
            }
            pt.branches_through.insert(s.branch);
            pt.branch_mults.push((s.branch, m));
        }
        self.points.push(pt);

        let one = Q::one();
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for mut s in group {
            match s.r.clone() {
                None => a.push(s),
                Some(r) if r > one => {
                    s.r = Some(r - &one);
                    a.push(s);
                }
                Some(r) if r < one => {
                    s.n = &s.n * &r;
                    s.r = Some(r.recip() - &one);
                    b.push(s);
                }
                Some(_) => {
                    s.advance(&self.branches[s.branch]);
                    c.push(s);
                }
            }
        }
        let ey_here = ey;
        if !a.is_empty() {
            self.visit(a, Some(id), Some(id), ey_here)?;
        }
        if !b.is_empty() {
            self.visit(b, Some(id), Some(id), ex)?;
        }
        // Branches meeting at a free point of the new divisor share the
        // coefficient there exactly when their contact exceeds it.
        let mut groups: Vec<Vec<State>> = Vec::new();
        for s in c {
            let pos = groups.iter().position(|g| (self.contact)(g[0].branch, s.branch).is_none_or(|k| k > s.gamma));
            match pos {
                Some(p) => groups[p].push(s),
                None => groups.push(vec![s]),
            }
        }
        for g in groups {
            self.visit(g, Some(id), Some(id), None)?;
        }
        Ok(())
    }
}

impl ClusterTree {
    /// Multiplicities `(m, l)` of the total transforms of `f` and `g` along the
    /// exceptional divisor created at each point.
    pub fn divisor_multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let (mut m, mut l) = (p.strict_mult_f, p.strict_mult_g);
            for &q in &p.proximate_to {
                m += out[q].0;
                l += out[q].1;
            }
            out.push((m, l));
        }
        out
    }

    /// Σ_p mult_p(f)·mult_p(g) over the points of the cluster.
    pub fn noether_sum(&self) -> u64 {
        self.points.iter().map(|p| p.strict_mult_f * p.strict_mult_g).sum()
    }

    /// Noether sum restricted to two branches.
    pub fn branch_noether(&self, i: usize, j: usize) -> u64 {
        self.points
            .iter()
            .map(|p| {
                let mi = p.branch_mults.iter().find(|(b, _)| *b == i).map_or(0, |x| x.1);
                let mj = p.branch_mults.iter().find(|(b, _)| *b == j).map_or(0, |x| x.1);
                u64::from(mi) * u64::from(mj)
            })
            .sum()
    }

    /// Multiplicity sequence of one branch along its own infinitely near points.
    pub fn mult_sequence(&self, branch: usize) -> Vec<u32> {
        self.points
            .iter()
            .filter_map(|p| p.branch_mults.iter().find(|(b, _)| *b == branch).map(|x| x.1))
            .collect()
    }
}

/// The multiplicity sequence of a single branch with the given exponents
/// (characteristic exponents or any refinement of them).
pub fn single_branch_sequence(e: u32, exponents: &[Q]) -> Result<Vec<u32>, Error> {
    let b = WalkBranch { germ: Germ::F, alpha: 1, e, exponents: exponents.to_vec() };
    let tree = walk(std::slice::from_ref(&b), &|_, _| None)?;
    Ok(tree.mult_sequence(0))
}

/// Classical multiplicity sequence from characteristic exponents by repeated
/// Euclidean division; independent of the walk above.
pub fn euclid_sequence(e: u32, char_exponents: &[Q]) -> Vec<u32> {
    let mut seq = Vec::new();
    let n = u64::from(e);
    let mut prev = 0u64;
    let mut g = n;
    for beta in char_exponents {
        let b = (beta * Q::from_integer(n.into())).to_integer().to_u64().expect("integral exponent");
        let (mut a, mut d) = (b - prev, g);
        while d > 0 {
            let q = a / d;
            for _ in 0..q {
                seq.push(d as u32);
            }
            (a, d) = (d, a % d);
        }
        g = a;
        prev = b;
    }
    if seq.is_empty() {
        seq.push(1);
    }
    seq
}
