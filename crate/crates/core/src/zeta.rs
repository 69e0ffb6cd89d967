//! Zeta functions in factored form `∏ (1 − t^k)^{e_k}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Finite map `k ↦ e_k`, zero exponents never stored.
///
/// Since the polynomials `1 − t^k` are multiplicatively independent, equality
/// of exponent maps is equality of rational functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CycloProduct {
    exps: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// `(1 − t^k)^e`.
    pub fn factor(k: u64, e: i64) -> Self {
        let mut z = CycloProduct::one();
        z.add_factor(k, e);
        z
    }

    pub fn from_pairs(pairs: &[(u64, i64)]) -> Self {
        let mut z = CycloProduct::one();
        for &(k, e) in pairs {
            z.add_factor(k, e);
        }
        z
    }

    pub fn add_factor(&mut self, k: u64, e: i64) {
        assert!(k > 0, "1 - t^0 is not a factor");
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(k).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&k);
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn multiply(&self, other: &CycloProduct) -> CycloProduct {
        let mut z = self.clone();
        for (&k, &e) in &other.exps {
            z.add_factor(k, e);
        }
        z
    }

    pub fn invert(&self) -> CycloProduct {
        CycloProduct { exps: self.exps.iter().map(|(&k, &e)| (k, -e)).collect() }
    }

    /// Order of vanishing at `t = ∞`: `−Σ k·e_k`.
    pub fn valuation_at_infinity(&self) -> i64 {
        -self.exps.iter().map(|(&k, &e)| k as i64 * e).sum::<i64>()
    }

    /// Numerator and denominator as integer coefficient lists, lowest degree first.
    pub fn expanded(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (&k, &e) in &self.exps {
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = times_one_minus(target, k as usize);
            }
        }
        (num, den)
    }

    pub fn to_json(&self) -> Value {
        let (num, den) = self.expanded();
        json!({
            "factors": self.exps.iter().map(|(k, e)| json!({"k": k, "e": e})).collect::<Vec<_>>(),
            "pretty": self.to_string(),
            "numerator": coeffs_json(&num),
            "denominator": coeffs_json(&den),
        })
    }
}

fn times_one_minus(p: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + k];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + k] -= c;
    }
    out
}

fn coeffs_json(c: &[BigInt]) -> Value {
    Value::Array(c.iter().map(|x| x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))).collect())
}

impl fmt::Display for CycloProduct {
    /// Positive exponents first, e.g. `(1-t^6)(1-t^2)^-1(1-t^3)^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let pos = self.exps.iter().filter(|(_, &e)| e > 0);
        let neg = self.exps.iter().filter(|(_, &e)| e < 0);
        for (&k, &e) in pos.chain(neg) {
            if k == 1 {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{k})")?;
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
