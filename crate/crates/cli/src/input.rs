use std::fs;
use std::path::Path;

use schur_hadamard::{to_integer_order, FractionalPolynomial, MonicPolynomial, RationalExponent};
use serde_json::Value;

use crate::error::{io_error, CliError, CliResult};

/// A polynomial read from disk. Fractional inputs are replaced by their
/// integer-order form in `w = s^α`.
pub struct Loaded {
    pub poly: MonicPolynomial,
    pub alpha: Option<RationalExponent>,
}

pub fn load(path: &Path) -> CliResult<Loaded> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    parse(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> CliResult<Loaded> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    if value.get("terms").is_some() {
        let frac: FractionalPolynomial = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("invalid fractional polynomial: {e}")))?;
        let (alpha, poly) = to_integer_order(&frac)?;
        Ok(Loaded {
            poly,
            alpha: Some(alpha),
        })
    } else {
        let poly: MonicPolynomial =
            serde_json::from_value(value).map_err(|e| CliError::Input(format!("invalid polynomial: {e}")))?;
        Ok(Loaded { poly, alpha: None })
    }
}
