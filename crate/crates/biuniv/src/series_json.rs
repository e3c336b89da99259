//! `{"order": N, "coeffs": [[re, im], ...]}`. Float series carry JSON
//! numbers; exact series carry `"p/q"` strings. A file whose entries are all
//! strings is read as exact.

use anyhow::{anyhow, bail, Context, Result};
use biuniv_core::{AnySeries, ExactComplex, ExactSeries, FloatSeries};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize)]
struct SeriesOut {
    order: usize,
    coeffs: Vec<Value>,
}

pub fn series_to_json(series: &AnySeries) -> String {
    let coeffs: Vec<Value> = match series {
        AnySeries::Exact(s) => s
            .coeffs()
            .iter()
            .map(|c| json!([rational_string(&c.re), rational_string(&c.im)]))
            .collect(),
        AnySeries::Float(s) => s.coeffs().iter().map(|c| json!([c.re, c.im])).collect(),
    };
    serde_json::to_string(&SeriesOut { order: series.order(), coeffs }).expect("plain data serializes")
}

/// `w - w^2 + 2/3 w^3 + O(w^4)`; complex coefficients print as `(re+im i)`.
pub fn series_text(series: &AnySeries, var: &str) -> String {
    let terms: Vec<(String, bool)> = match series {
        AnySeries::Exact(s) => s.coeffs().iter().map(|c| exact_term(&c.re, &c.im)).collect(),
        AnySeries::Float(s) => s.coeffs().iter().map(|c| float_term(c.re, c.im)).collect(),
    };
    let mut out = String::new();
    for (n, (coeff, negative)) in terms.into_iter().enumerate() {
        if coeff == "0" {
            continue;
        }
        let power = match n {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{n}"),
        };
        let body = match (coeff.as_str(), n) {
            ("1", k) if k > 0 => power,
            (c, 0) => c.to_string(),
            (c, _) => format!("{c} {power}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} + O({var}^{})", series.order() + 1)
}

/// Magnitude text and sign of a coefficient, sign pulled out only for reals.
fn exact_term(re: &BigRational, im: &BigRational) -> (String, bool) {
    use num_traits::{Signed, Zero};
    if im.is_zero() {
        (re.abs().to_string(), re.is_negative())
    } else {
        (format!("({}{}{} i)", re, if im.is_negative() { "" } else { "+" }, im), false)
    }
}

fn float_term(re: f64, im: f64) -> (String, bool) {
    if im == 0.0 {
        (re.abs().to_string(), re < 0.0)
    } else {
        (format!("({re}{}{im} i)", if im < 0.0 { "" } else { "+" }), false)
    }
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `"p/q"` or an integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.trim().parse().with_context(|| format!("bad numerator in {s:?}"))?;
    let q: BigInt = q.trim().parse().with_context(|| format!("bad denominator in {s:?}"))?;
    if q == BigInt::from(0) {
        bail!("zero denominator in {s:?}");
    }
    Ok(BigRational::new(p, q))
}

pub fn series_from_json(text: &str) -> Result<AnySeries> {
    let value: Value = serde_json::from_str(text).context("series file is not valid JSON")?;
    let coeffs = value
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("series JSON needs a \"coeffs\" array"))?;
    let pairs = coeffs
        .iter()
        .map(|c| match c.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok((re, im)),
            _ => Err(anyhow!("each coefficient must be a [re, im] pair, got {c}")),
        })
        .collect::<Result<Vec<_>>>()?;
    let exact = !pairs.is_empty() && pairs.iter().all(|(re, im)| re.is_string() && im.is_string());
    let series = if exact {
        let cs = pairs
            .iter()
            .map(|(re, im)| {
                Ok(ExactComplex::new(
                    parse_rational(re.as_str().unwrap_or_default())?,
                    parse_rational(im.as_str().unwrap_or_default())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        AnySeries::Exact(ExactSeries::new(cs)?)
    } else {
        let cs = pairs
            .iter()
            .map(|(re, im)| Ok(Complex64::new(float(re)?, float(im)?)))
            .collect::<Result<Vec<_>>>()?;
        AnySeries::Float(FloatSeries::new(cs)?)
    };
    if let Some(order) = value.get("order") {
        let order = order.as_u64().ok_or_else(|| anyhow!("\"order\" must be a non-negative integer"))?;
        if order as usize != series.order() {
            bail!("\"order\" is {order} but {} coefficients were given", coeffs.len());
        }
    }
    Ok(series)
}

fn float(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| anyhow!("bad number {n}")),
        Value::String(s) => {
            let r = parse_rational(s)?;
            Ok(num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN))
        }
        other => bail!("coefficient entries must be numbers or \"p/q\" strings, got {other}"),
    }
}
