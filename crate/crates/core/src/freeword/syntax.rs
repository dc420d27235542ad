use super::leg::LegElement;
use super::{FreeError, LegKind, Model, TRIG_LEG};
use crate::trigalg::TrigPoly;

/// Parses a whitespace-separated word.
///
/// Tokens: `c`, `s`, `c[k]`, `s[k]` or a parenthesized trigonometric
/// expression such as `(c*s - 1/2)`; a Haar leg name optionally followed by
/// `*` or `^k` (`u`, `u*`, `v^-2`); `d{name}` or `d{leg.name}` for a named
/// element of a finite leg.
pub fn parse_word(text: &str, model: &Model) -> Result<Vec<LegElement>, FreeError> {
    tokenize(text)?.iter().map(|t| parse_token(t, model)).collect()
}

fn tokenize(text: &str) -> Result<Vec<String>, FreeError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(FreeError::Parse(format!("unbalanced `{ch}`")));
                }
            }
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(FreeError::Parse("unbalanced brackets".into()));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_token(tok: &str, model: &Model) -> Result<LegElement, FreeError> {
    if let Some(inner) = tok.strip_prefix("d{").and_then(|r| r.strip_suffix('}')) {
        let (leg, v) = model.element(inner)?;
        return Ok(LegElement::atoms(leg, v));
    }
    let (name, power) = if let Some(n) = tok.strip_suffix('*') {
        (n, Some(Ok(-1)))
    } else if let Some((n, p)) = tok.split_once('^') {
        (n, Some(p.parse::<i64>()))
    } else {
        (tok, None)
    };
    if let Some(id) = model.leg_id(name) {
        if model.leg(id).kind == LegKind::Haar {
            return match power {
                None => Ok(LegElement::haar(id, 1)),
                Some(Ok(p)) => Ok(LegElement::haar(id, p)),
                Some(Err(_)) => Err(FreeError::Parse(format!("bad exponent in `{tok}`"))),
            };
        }
    }
    match TrigPoly::parse(tok) {
        Ok(f) => Ok(LegElement::trig(TRIG_LEG, f)),
        Err(_) if tok.chars().all(|c| c.is_alphanumeric() || c == '_') => {
            Err(FreeError::UnknownLeg(tok.to_string()))
        }
        Err(e) => Err(FreeError::Parse(format!("`{tok}`: {e}"))),
    }
}
