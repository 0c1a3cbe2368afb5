//! Exact rationals and their `"p/q"` string encoding.

use num_rational::Ratio;
use serde::Serializer;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

pub fn serialize_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn serialize_qs<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_q))
}
