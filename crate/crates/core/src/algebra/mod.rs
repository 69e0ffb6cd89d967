//! Exact rational arithmetic and bivariate polynomial algebra.

mod bipoly;
mod modres;
mod parse;
mod unipoly;

pub use modres::resultant_order;
pub use bipoly::{grlex_cmp, lower_hull, BiPoly, Exp, NewtonPolygonEdge};
pub use parse::parse_poly;
pub use unipoly::UniPoly;

/// Arbitrary-precision rational numbers.
pub type Q = num_rational::BigRational;

/// Parse a rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}
