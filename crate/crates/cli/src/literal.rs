//! Complex literals and parameter grids as accepted on the command line.
//!
//! A literal is `a`, `a+bi`, `a-bi`, `bi` or `-bi` with decimal components
//! (an exponent such as `1e-4` is allowed). A grid is a comma-separated list
//! whose items are literals or real ranges:
//!
//! * `lin:a:b:n`: n evenly spaced values from a to b inclusive;
//! * `log:a:b:n`: n values from 10^a to 10^b, evenly spaced in the exponent.

use genbessel::{c64, Complex64};

/// Values one parameter takes, in command-line order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<Complex64>);

fn decimal(text: &str) -> Result<f64, String> {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(at) => (&body[..at], Some(&body[at + 1..])),
        None => (body, None),
    };
    let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
    let mantissa_ok =
        digits > 0 && mantissa.chars().all(|c| c.is_ascii_digit() || c == '.') && mantissa.matches('.').count() <= 1;
    let exponent_ok = exponent.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
    });
    if !(mantissa_ok && exponent_ok) {
        return Err(format!("'{text}' is not a decimal number"));
    }
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("'{text}' is out of range"))
}

/// Position of the sign separating real and imaginary parts, if any.
fn split_point(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(imag) = s.strip_suffix('i') else {
        return Ok(c64(decimal(s)?, 0.0));
    };
    match split_point(imag) {
        Some(at) => {
            let re = decimal(&imag[..at])?;
            let im_text = &imag[at..];
            if im_text.len() == 1 {
                return Err(format!("'{text}': imaginary part needs digits, as in 1i"));
            }
            Ok(c64(re, decimal(im_text)?))
        }
        None => Ok(c64(
            0.0,
            decimal(imag).map_err(|_| format!("'{text}' is not a complex literal"))?,
        )),
    }
}

fn parse_range(spec: &str) -> Result<Option<Vec<Complex64>>, String> {
    let (log, rest) = if let Some(r) = spec.strip_prefix("log:") {
        (true, r)
    } else if let Some(r) = spec.strip_prefix("lin:") {
        (false, r)
    } else {
        return Ok(None);
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("'{spec}': ranges are written lin:a:b:n or log:a:b:n"));
    };
    let (a, b) = (decimal(a)?, decimal(b)?);
    let n: usize = n
        .parse()
        .map_err(|_| format!("'{spec}': count must be a non-negative integer"))?;
    let values = (0..n)
        .map(|k| {
            let t = if n == 1 {
                a
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            };
            c64(if log { 10f64.powf(t) } else { t }, 0.0)
        })
        .collect();
    Ok(Some(values))
}

pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let mut values = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        match parse_range(item)? {
            Some(range) => values.extend(range),
            None => values.push(parse_complex(item)?),
        }
    }
    Ok(Grid(values))
}
