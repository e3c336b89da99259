use biuniv_core::phi::PhiSpec;

/// `power:A`, `mobius:B` or `custom:B1,B2[,...]`; a trailing `~` selects
/// the reflection `phi(-z)`. Family parameters may be decimals or `p/q`.
pub fn parse_phi(spec: &str) -> Result<PhiSpec, String> {
    let spec = spec.trim();
    let (body, reflected) = match spec.strip_suffix('~') {
        Some(rest) => (rest, true),
        None => (spec, false),
    };
    let (family, arg) = body
        .split_once(':')
        .ok_or_else(|| format!("expected power:A, mobius:B or custom:B1,B2,..., got {spec:?}"))?;
    let phi = match family {
        "power" => match ratio(arg)? {
            Some((p, q)) => PhiSpec::power_alpha_ratio(p, q),
            None => PhiSpec::power_alpha(number(arg)?),
        },
        "mobius" => match ratio(arg)? {
            Some((p, q)) => PhiSpec::mobius_beta_ratio(p, q),
            None => PhiSpec::mobius_beta(number(arg)?),
        },
        "custom" => {
            let coeffs = arg.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            PhiSpec::custom(&coeffs)
        }
        other => return Err(format!("unknown family {other:?} (expected power, mobius or custom)")),
    }
    .map_err(|e| e.to_string())?;
    Ok(if reflected { phi.reflected() } else { phi })
}

fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some((p, q)) = ratio(s)? {
        return Ok(p as f64 / q as f64);
    }
    s.parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
}

fn ratio(s: &str) -> Result<Option<(i64, i64)>, String> {
    let Some((p, q)) = s.trim().split_once('/') else {
        return Ok(None);
    };
    let p = p.trim().parse::<i64>().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q = q.trim().parse::<i64>().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Some((p, q)))
}
