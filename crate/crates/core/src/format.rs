//! Numeric output conventions: every reported number carries at most 15
//! significant digits and is written in its shortest round-trip form, so
//! re-reading and re-printing a report is a fixed point.

use serde::Serializer;

/// Rounds to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Formats with 15 significant digits in shortest form (`0.25`, `2`, `1e-300`).
pub fn fmt_num(x: f64) -> String {
    let r = round_sig15(x);
    if r.is_finite() && r != 0.0 && (r.abs() < 1e-6 || r.abs() >= 1e16) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn round15<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig15(*x))
}

pub fn round15_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig15(*x)))
}

pub fn round15_map<S, K>(m: &std::collections::BTreeMap<K, f64>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    K: serde::Serialize,
{
    s.collect_map(m.iter().map(|(k, v)| (k, round_sig15(*v))))
}
