//! Text input helpers shared by the CLI and file readers.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("{0:?} is not a number")]
    Invalid(String),
    #[error("{0:?} is not finite")]
    NonFinite(String),
}

/// Parses a finite `f64`. `inf`, `nan` and overflowing literals are rejected.
pub fn parse_real(text: &str) -> Result<f64, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseError::Empty);
    }
    let v: f64 = t.parse().map_err(|_| ParseError::Invalid(t.to_string()))?;
    if !v.is_finite() {
        return Err(ParseError::NonFinite(t.to_string()));
    }
    Ok(v)
}
