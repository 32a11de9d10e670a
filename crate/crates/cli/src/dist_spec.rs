//! `family:params` distribution specs, e.g. `pareto:2,1`.

use anyhow::{bail, Context, Result};
use welfarelens::Distribution;

const FAMILIES: &str =
    "uniform:a,b | exponential:rate | pareto:alpha,x_min | lognormal:mu,sigma | degenerate:c";

pub fn parse_dist_spec(spec: &str) -> Result<Distribution> {
    let (family, params) = spec.split_once(':').with_context(|| {
        format!("distribution spec '{spec}' must look like family:params ({FAMILIES})")
    })?;
    let values = params
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("cannot parse parameter '{v}' in '{spec}'"))
        })
        .collect::<Result<Vec<_>>>()?;

    let arity = match family {
        "uniform" | "pareto" | "lognormal" => 2,
        "exponential" | "degenerate" => 1,
        other => bail!("unknown distribution family '{other}' (expected {FAMILIES})"),
    };
    if values.len() != arity {
        bail!(
            "{family} takes {arity} parameter{}, got {} in '{spec}'",
            if arity == 1 { "" } else { "s" },
            values.len()
        );
    }

    let d = match family {
        "uniform" => Distribution::uniform(values[0], values[1]),
        "pareto" => Distribution::pareto(values[0], values[1]),
        "lognormal" => Distribution::lognormal(values[0], values[1]),
        "exponential" => Distribution::exponential(values[0]),
        _ => Distribution::degenerate(values[0]),
    };
    Ok(d?)
}
