//! Polynomial string literals in a single variable, e.g. `"z^3 - 1/2*z + 1"`.

use num_traits::{One, Zero};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Parses a univariate polynomial literal into dense coefficients (lowest degree first).
pub fn parse_univariate(input: &str, var: char) -> Result<Vec<Rational>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial literal".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    terms.push((negative, current));

    let mut coeffs: Vec<Rational> = Vec::new();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{input}`")));
        }
        let (coef, exp) = parse_term(&term, var).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{m} in `{input}`")),
            other => other,
        })?;
        let coef = if neg { -coef } else { coef };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Rational::zero());
        }
        coeffs[exp] += coef;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn parse_term(term: &str, var: char) -> Result<(Rational, usize)> {
    match term.find(var) {
        None => Ok((parse_rational(term)?, 0)),
        Some(pos) => {
            let coef_part = term[..pos].trim_end_matches('*');
            let coef = if coef_part.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef_part)?
            };
            let rest = &term[pos + var.len_utf8()..];
            let exp = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?
            } else {
                return Err(Error::Parse(format!("unexpected `{rest}` after variable")));
            };
            Ok((coef, exp))
        }
    }
}

/// Formats dense coefficients as a polynomial string, highest degree first.
pub fn format_univariate<T, F>(coeffs: &[T], var: &str, is_zero: impl Fn(&T) -> bool, fmt: F) -> String
where
    F: Fn(&T) -> String,
{
    let mut parts: Vec<String> = Vec::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        if is_zero(c) {
            continue;
        }
        let cs = fmt(c);
        let wrapped = if cs.contains(['+', ' ']) || (cs[1..].contains('-')) {
            format!("({cs})")
        } else {
            cs
        };
        let term = match e {
            0 => wrapped,
            _ => {
                let mono = if e == 1 { var.to_string() } else { format!("{var}^{e}") };
                match wrapped.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{wrapped}*{mono}"),
                }
            }
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::{rat, rat_frac};

    #[test]
    fn parses_mixed_terms() {
        let c = parse_univariate("z^3 - 1/2*z + 1", 'z').unwrap();
        assert_eq!(c, vec![rat(1), rat_frac(-1, 2), rat(0), rat(1)]);
        let c = parse_univariate("2g+2", 'g').unwrap();
        assert_eq!(c, vec![rat(2), rat(2)]);
        let c = parse_univariate("-g", 'g').unwrap();
        assert_eq!(c, vec![rat(0), rat(-1)]);
        assert_eq!(parse_univariate("0", 'g').unwrap(), vec![rat(0)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_univariate("z^x", 'z').is_err());
        assert!(parse_univariate("3q", 'z').is_err());
        assert!(parse_univariate("", 'z').is_err());
    }
}
