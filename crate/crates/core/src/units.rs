//! Length literals with a unit suffix, canonicalized to meters.

use crate::error::{Error, Result};

const SUFFIXES: &[(&str, f64)] = &[
    ("nm", 1e-9),
    ("um", 1e-6),
    ("\u{00b5}m", 1e-6),
    ("\u{03bc}m", 1e-6),
    ("mm", 1e-3),
    ("m", 1.0),
];

/// Parses e.g. `"10mm"`, `"405 nm"`, `"350um"`, `"180µm"` into meters.
pub fn parse_length(input: &str) -> Result<f64> {
    let s = input.trim();
    let err = |reason| Error::Unit {
        input: input.to_string(),
        reason,
    };
    let (number, factor) = SUFFIXES
        .iter()
        .find_map(|(suffix, factor)| s.strip_suffix(suffix).map(|n| (n.trim_end(), *factor)))
        .ok_or_else(|| err("missing unit suffix (nm, um, mm or m)"))?;
    let value: f64 = number.parse().map_err(|_| err("not a number"))?;
    if !value.is_finite() || value <= 0.0 {
        return Err(err("length must be finite and positive"));
    }
    Ok(value * factor)
}

/// A plain number (dimensionless) or a length with a unit suffix (meters).
pub fn parse_width(input: &str) -> Result<f64> {
    match input.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err(Error::Unit {
            input: input.to_string(),
            reason: "width must be finite and positive",
        }),
        Err(_) => parse_length(input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffixes() {
        assert_eq!(parse_length("10mm").unwrap(), 10.0 * 1e-3);
        assert_eq!(parse_length("405nm").unwrap(), 405.0 * 1e-9);
        assert_eq!(parse_length("350um").unwrap(), 350.0 * 1e-6);
        assert_eq!(parse_length("180µm").unwrap(), 180.0 * 1e-6);
        assert_eq!(parse_length("180μm").unwrap(), 180.0 * 1e-6);
        assert_eq!(parse_length(" 2.5 m ").unwrap(), 2.5);
        assert_eq!(parse_length("1e-2mm").unwrap(), 1e-2 * 1e-3);
    }

    #[test]
    fn widths() {
        assert_eq!(parse_width("2.5").unwrap(), 2.5);
        assert_eq!(parse_width("3um").unwrap(), 3.0 * 1e-6);
        assert!(parse_width("0").is_err());
        assert!(parse_width("x").is_err());
    }

    #[test]
    fn rejects() {
        for bad in ["10", "mm", "-3mm", "0nm", "abcnm", "5 km", "infm"] {
            assert!(parse_length(bad).is_err(), "{bad}");
        }
    }
}
