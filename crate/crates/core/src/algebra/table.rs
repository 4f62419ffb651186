//! Bracket-table text: `[x1,x2]=y1; [x5,x2]=[x6,x1]=y1; [x5,x6]=y1+y2`.
//!
//! Statements are separated by `;` or newlines. A statement is a chain of
//! brackets followed by a center combination; every bracket in the chain gets
//! that value. Coefficients may be integers or fractions, e.g. `2y1 - 1/2y3`.

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};

use super::StructureTensor;

/// One bracket record `[x_i, x_j] = sum coeffs`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, Rational)>,
}

pub fn parse_bracket_table(q: usize, p: usize, text: &str) -> Result<StructureTensor> {
    let mut records = Vec::new();
    for stmt in text.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = stmt.split('=').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(Error::Malformed(format!("missing '=' in {stmt:?}")));
        }
        let (value, lhs) = parts.split_last().expect("at least two parts");
        let coeffs = parse_combination(value, 'y')?;
        for b in lhs {
            let (i, j) = parse_pair(b, 'x')?;
            records.push(Bracket { i, j, coeffs: coeffs.clone() });
        }
    }
    StructureTensor::from_brackets(q, p, &records)
}

/// `[x3,x5]` (or with another letter) -> (3, 5).
pub(crate) fn parse_pair(s: &str, letter: char) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("expected [{letter}i,{letter}j], got {s:?}"));
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok((parse_index(a, letter).ok_or_else(bad)?, parse_index(b, letter).ok_or_else(bad)?))
}

fn parse_index(s: &str, letter: char) -> Option<usize> {
    let n: usize = s.trim().strip_prefix(letter)?.trim().parse().ok()?;
    (n > 0).then_some(n)
}

/// `y1 + 2y2 - 1/3 y4` -> [(1, 1), (2, 2), (4, -1/3)].
fn parse_combination(s: &str, letter: char) -> Result<Vec<(usize, Rational)>> {
    let bad = |why: &str| Error::Malformed(format!("{why} in {s:?}"));
    let mut out: Vec<(usize, Rational)> = Vec::new();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty combination"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (pos, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && pos > start {
            terms.push(&compact[start..pos]);
            start = pos;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let at = body.find(letter).ok_or_else(|| bad("missing basis symbol"))?;
        let (coef, sym) = body.split_at(at);
        let coef = coef.trim_end_matches('*');
        let mut c = if coef.is_empty() {
            Rational::from_integer(1.into())
        } else {
            parse_rational(coef)?
        };
        if sign < 0 {
            c = -c;
        }
        let k = parse_index(sym, letter).ok_or_else(|| bad("bad basis index"))?;
        match out.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, acc)) => *acc += c,
            None => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !num_traits::Zero::is_zero(c));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn chains_and_orientation() {
        let t = parse_bracket_table(6, 2, "[x5,x2]=[x6,x1]=y1; [x5,x3]=[x6,x4]=y2").unwrap();
        assert_eq!(t.get(4, 1, 0), &int(1));
        assert_eq!(t.get(1, 4, 0), &int(-1));
        assert_eq!(t.get(5, 3, 1), &int(1));
        assert_eq!(t.brackets().len(), 4);
    }

    #[test]
    fn coefficients() {
        let t = parse_bracket_table(3, 3, "[x1,x2] = 2y1 - 1/2 y3\n[x2,x3]=-y2+y2+y3").unwrap();
        assert_eq!(t.bracket_vector(0, 1), vec![int(2), int(0), rat(-1, 2)]);
        assert_eq!(t.bracket_vector(1, 2), vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn errors() {
        assert!(parse_bracket_table(3, 1, "[x1,x2]").is_err());
        assert!(parse_bracket_table(3, 1, "[x1,x4]=y1").is_err());
        assert!(parse_bracket_table(3, 1, "[x1,x2]=y2").is_err());
        assert!(parse_bracket_table(3, 1, "[x1,x2]=y1; [x2,x1]=y1").is_err());
        assert!(parse_bracket_table(3, 1, "(x1,x2)=y1").is_err());
    }
}
