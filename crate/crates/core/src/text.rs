//! Shared helpers for the `C*x^E` term text format.

/// Split a polynomial text into term strings on `+`, trimming whitespace.
pub(crate) fn split_terms(s: &str) -> Result<Vec<&str>, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty polynomial text".to_string());
    }
    let mut out = Vec::new();
    for part in t.split('+') {
        let p = part.trim();
        if p.is_empty() {
            return Err(format!("empty term in {s:?}"));
        }
        out.push(p);
    }
    Ok(out)
}

/// Parse a hexadecimal coefficient, with an optional `0x` prefix.
pub(crate) fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|_| format!("bad hexadecimal coefficient {s:?}"))
}

/// Parse a `var^exp` or bare `var` part against a fixed variable list;
/// returns (variable index, exponent).
pub(crate) fn parse_var_pow(part: &str, vars: &[&str]) -> Result<(usize, u32), String> {
    let (name, exp) = match part.split_once('^') {
        Some((n, e)) => {
            let exp: u32 = e
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent in {part:?}"))?;
            (n.trim(), exp)
        }
        None => (part.trim(), 1),
    };
    match vars.iter().position(|&v| v == name) {
        Some(i) => Ok((i, exp)),
        None => Err(format!(
            "unknown variable {name:?} (expected one of {vars:?})"
        )),
    }
}
