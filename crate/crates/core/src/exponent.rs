//! Small helpers for Lebesgue-type exponents in `[1, ∞]`.
//!
//! Exponents are plain `f64` values throughout the crate, with
//! `f64::INFINITY` standing for ∞. Reciprocals map ∞ to 0 so the usual
//! index relations (`1/p = (1-θ)/q0 + θ/q1`) work without special cases.

use crate::error::{invalid, Result};

/// `1/p`, with `1/∞ = 0`.
pub fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Inverse of [`recip`]: `1/x`, with `1/0 = ∞`.
pub fn from_recip(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        1.0 / x
    }
}

/// Hölder conjugate `p/(p-1)`, with `1 ↦ ∞` and `∞ ↦ 1`.
pub fn conjugate(p: f64) -> f64 {
    from_recip(1.0 - recip(p))
}

/// Checks that `p` lies in `[1, ∞]`.
pub fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(invalid(format!("{name} must lie in [1, inf], got {p}")));
    }
    Ok(())
}

/// Checks that `p` lies in the open interval `(1, ∞)`.
pub fn check_open_exponent(name: &str, p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid(format!("{name} must lie in (1, inf), got {p}")));
    }
    Ok(())
}

/// Parses an exponent, accepting `inf`, `infinity` and `∞`.
pub fn parse_exponent(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        _ if t == "∞" => Ok(f64::INFINITY),
        _ => t
            .parse::<f64>()
            .map_err(|e| format!("cannot parse '{s}' as a number: {e}")),
    }
}

/// Formats an exponent, writing ∞ as `inf`.
pub fn format_exponent(p: f64) -> String {
    if p.is_infinite() && p > 0.0 {
        "inf".to_string()
    } else {
        format!("{p}")
    }
}

/// `(Σ x_i^r)^{1/r}` for nonnegative terms, `max` when `r = ∞`.
pub fn ell_norm<I: IntoIterator<Item = f64>>(terms: I, r: f64) -> f64 {
    if r.is_infinite() {
        terms.into_iter().fold(0.0, f64::max)
    } else {
        terms.into_iter().map(|x| x.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// `log2` of `(Σ 2^{r·l_i})^{1/r}` given the base-2 logarithms `l_i` of
/// nonnegative terms (`-∞` for zero terms). Avoids overflow for terms far
/// outside the `f64` range.
pub fn log2_ell_norm<I: IntoIterator<Item = f64>>(logs: I, r: f64) -> f64 {
    let logs: Vec<f64> = logs.into_iter().collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY || r.is_infinite() {
        return top;
    }
    let sum: f64 = logs.iter().map(|l| (r * (l - top)).exp2()).sum();
    top + sum.log2() / r
}

/// Serde adapter writing `∞` as the string `"inf"`, since JSON has no
/// infinite numbers. Deserializes numbers and any form accepted by
/// [`parse_exponent`]. Use with `#[serde(with = "...")]`.
pub mod serde_inf {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() {
            s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Text(t) if t.trim() == "-inf" => Ok(f64::NEG_INFINITY),
            Raw::Text(t) => super::parse_exponent(&t).map_err(de::Error::custom),
        }
    }
}

/// [`serde_inf`] for optional values.
pub mod serde_inf_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::serde_inf::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_inf")] f64);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
