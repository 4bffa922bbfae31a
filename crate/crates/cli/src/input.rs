use std::fs;

use stochord::{DistributionSpec, ExactScalar};

use crate::Failure;

/// Parses a spec object, a bare array of success probabilities, or `@file`.
pub fn spec(arg: &str) -> Result<DistributionSpec, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?,
        None => arg.to_owned(),
    };
    let value: serde_json::Value =
        serde_json::from_str(text.trim()).map_err(|e| Failure::input(format!("malformed JSON {arg:?}: {e}")))?;
    if value.is_array() {
        let p: Vec<ExactScalar> =
            serde_json::from_value(value).map_err(|e| Failure::input(format!("bad probability vector: {e}")))?;
        return DistributionSpec::poisson_binomial(p).map_err(Failure::input);
    }
    serde_json::from_value(value).map_err(|e| Failure::input(format!("invalid distribution {arg:?}: {e}")))
}

pub fn pair(p: &str, q: &str) -> Result<(DistributionSpec, DistributionSpec), Failure> {
    Ok((spec(p)?, spec(q)?))
}
