//! Text and JSON forms of sets: `0,1,3,5` and `[0,1,3,5]`.

use crate::error::{Error, Result};

use super::IntSet;

/// Strict parsing rejects duplicates and out-of-order elements; lenient parsing sorts them away.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

/// Parses a comma-separated list. Surrounding braces or brackets and whitespace are ignored;
/// an empty list is the empty set.
pub fn parse_text(text: &str, mode: ParseMode) -> Result<IntSet> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut elems: Vec<(usize, i64)> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    let close = match chars.get(i).map(|c| c.1) {
        Some('{') => Some('}'),
        Some('[') => Some(']'),
        _ => None,
    };
    if close.is_some() {
        i += 1;
    }
    let at = |i: usize| i + 1;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() || Some(chars[i].1) == close {
            if !elems.is_empty() {
                return Err(Error::Parse { pos: at(i), msg: "expected an integer".into() });
            }
            break;
        }
        let start = i;
        if matches!(chars[i].1, '-' | '+' | '\u{2212}') {
            i += 1;
        }
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let token: String = chars[start..i]
            .iter()
            .map(|&(_, c)| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let value = token
            .parse::<i64>()
            .map_err(|_| Error::Parse { pos: at(start), msg: format!("expected an integer, found `{token}`") })?;
        elems.push((at(start), value));
        skip_ws(&mut i);
        match chars.get(i).map(|c| c.1) {
            Some(',') => i += 1,
            c if c == close || (c.is_none() && close.is_none()) => break,
            Some(c) => {
                return Err(Error::Parse { pos: at(i), msg: format!("expected `,`, found `{c}`") });
            }
            None => return Err(Error::Parse { pos: at(i), msg: "unterminated set".into() }),
        }
    }
    if close.is_some() {
        if chars.get(i).map(|c| c.1) != close {
            return Err(Error::Parse { pos: at(i), msg: "unterminated set".into() });
        }
        i += 1;
        skip_ws(&mut i);
        if i < chars.len() {
            return Err(Error::Parse { pos: at(i), msg: "trailing input".into() });
        }
    }
    finish(elems, mode)
}

/// Parses a JSON array of integers.
pub fn parse_json(text: &str, mode: ParseMode) -> Result<IntSet> {
    let values: Vec<i64> = serde_json::from_str(text)?;
    finish(values.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect(), mode)
}

fn finish(elems: Vec<(usize, i64)>, mode: ParseMode) -> Result<IntSet> {
    if mode == ParseMode::Strict {
        if let Some(w) = elems.windows(2).find(|w| w[0].1 >= w[1].1) {
            let what = if w[0].1 == w[1].1 { "duplicate" } else { "out-of-order" };
            return Err(Error::Parse { pos: w[1].0, msg: format!("{what} element {}", w[1].1) });
        }
    }
    Ok(IntSet::from_unsorted(elems.into_iter().map(|e| e.1).collect()))
}

pub fn to_json(set: &IntSet) -> String {
    serde_json::to_string(set).expect("a set of integers always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        let a = parse_text("0,1,3,5", ParseMode::Strict).unwrap();
        assert_eq!(a.to_vec(), vec![0, 1, 3, 5]);
        assert_eq!(parse_text(" { -2 , 4 } ", ParseMode::Strict).unwrap().to_vec(), vec![-2, 4]);
        assert_eq!(parse_text("\u{2212}3,0", ParseMode::Strict).unwrap().to_vec(), vec![-3, 0]);
        assert!(parse_text("", ParseMode::Strict).unwrap().is_empty());
        assert_eq!(a.to_string(), "0,1,3,5");
    }

    #[test]
    fn strict_and_lenient() {
        match parse_text("0,3,1", ParseMode::Strict) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_text("1,1", ParseMode::Strict).is_err());
        assert_eq!(parse_text("3,1,1", ParseMode::Lenient).unwrap().to_vec(), vec![1, 3]);
        assert!(parse_json("[2,1]", ParseMode::Strict).is_err());
        assert_eq!(parse_json("[2,1]", ParseMode::Lenient).unwrap().to_vec(), vec![1, 2]);
    }

    #[test]
    fn malformed_text() {
        for bad in ["1,,2", "1,", "a", "{1,2", "1 2", "[1]x"] {
            assert!(matches!(parse_text(bad, ParseMode::Lenient), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn json_round_trip() {
        let a = parse_text("-4,0,9", ParseMode::Strict).unwrap();
        assert_eq!(to_json(&a), "[-4,0,9]");
        assert_eq!(parse_json(&to_json(&a), ParseMode::Strict).unwrap(), a);
    }
}
