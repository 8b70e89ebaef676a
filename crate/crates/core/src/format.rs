//! Shared helpers for the line-based file formats.

use crate::error::{Error, Result};

/// Non-empty lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Splits `key: rest`.
pub(crate) fn split_key(line: &str, ln: usize) -> Result<(&str, &str)> {
    let (key, rest) = line
        .split_once(':')
        .ok_or_else(|| Error::parse(ln, 1, "expected 'key: value'"))?;
    Ok((key.trim(), rest.trim()))
}

/// First content line of a file, used to sniff its kind.
pub fn header_of(text: &str) -> Option<&str> {
    content_lines(text).next().map(|(_, l)| l)
}
