use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed number {0:?}")]
    MalformedNumber(String),
    #[error("division by zero in {0:?}")]
    DivisionByZero(String),
}

fn decimal(part: &str, token: &str) -> Result<f64, ScalarError> {
    let part = part.trim();
    let well_formed = !part.is_empty()
        && part
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    match part.parse::<f64>() {
        Ok(v) if well_formed && v.is_finite() => Ok(v),
        _ => Err(ScalarError::MalformedNumber(token.to_string())),
    }
}

/// Parses a decimal (`"0.25"`, `"3"`, `"1e-2"`) or a quotient `"p/q"` of two
/// decimals. Infinities and NaN are rejected.
pub fn parse_scalar(token: &str) -> Result<f64, ScalarError> {
    match token.split_once('/') {
        None => decimal(token, token),
        Some((p, q)) => {
            let p = decimal(p, token)?;
            let q = decimal(q, token)?;
            if q == 0.0 {
                return Err(ScalarError::DivisionByZero(token.to_string()));
            }
            let v = p / q;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(ScalarError::MalformedNumber(token.to_string()))
            }
        }
    }
}
