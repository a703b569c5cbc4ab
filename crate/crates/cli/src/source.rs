//! Generator grammar `name[:params]` for the `--gen` option.

use flagalg::generators::*;
use flagalg::{Error, Poset, Result};

fn bad(spec: &str, why: &str) -> Error {
    Error::Parse(format!("generator {spec:?}: {why}"))
}

fn numbers(spec: &str, params: &str, expected: usize) -> Result<Vec<usize>> {
    let values: Vec<usize> = params
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| bad(spec, "expected non-negative integers")))
        .collect::<Result<_>>()?;
    if values.len() != expected {
        return Err(bad(spec, &format!("expected {expected} parameter(s)")));
    }
    Ok(values)
}

/// Splits `A,B` at the comma not nested in parentheses.
fn split_pair<'a>(spec: &str, inner: &'a str) -> Result<(&'a str, &'a str)> {
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    Err(bad(spec, "product needs two factors, e.g. product:(boolean:2,chain:3)"))
}

pub fn generate(spec: &str) -> Result<Poset> {
    let spec = spec.trim();
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let named = |p: Poset| p.with_name(spec);
    match name {
        "figure1" if params.is_empty() => Ok(figure1()),
        "boolean" => Ok(named(boolean_lattice(numbers(spec, params, 1)?[0])?)),
        "chain" => Ok(named(chain(numbers(spec, params, 1)?[0])?)),
        "partition" => Ok(named(partition_lattice(numbers(spec, params, 1)?[0])?)),
        "uniform" => {
            let v = numbers(spec, params, 2)?;
            Ok(named(uniform_flats(v[0], v[1])?))
        }
        "random" => {
            let parts: Vec<&str> = params.split(',').collect();
            let seed: u64 = parts[0].trim().parse().map_err(|_| bad(spec, "expected a seed"))?;
            let max = match parts.get(1) {
                Some(m) => m.trim().parse().map_err(|_| bad(spec, "expected a size bound"))?,
                None => 30,
            };
            if parts.len() > 2 {
                return Err(bad(spec, "expected random:SEED or random:SEED,MAX_ELEMENTS"));
            }
            Ok(named(random_graded_bounded(seed, max)))
        }
        "product" => {
            let inner = params
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad(spec, "expected product:(A,B)"))?;
            let (a, b) = split_pair(spec, inner)?;
            Ok(named(Poset::product(&generate(a)?, &generate(b)?)?))
        }
        _ => Err(bad(spec, "unknown generator; use boolean:N, chain:N, partition:N, uniform:M,N, figure1, random:SEED[,MAX], product:(A,B)")),
    }
}
