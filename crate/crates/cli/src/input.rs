//! Flat transaction files: one transaction per line, items as positive
//! integers separated by whitespace. Blank lines are skipped.

use std::fmt;

use facetmine::{ItemSet, TransactionDb, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    NotUtf8,
    InvalidToken(String),
    NonPositiveItem(String),
    Empty,
    UniverseTooSmall { max_item: usize, universe: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to a position.
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: ", self.line, self.column)?;
        }
        match &self.kind {
            ParseErrorKind::NotUtf8 => write!(f, "input is not valid UTF-8"),
            ParseErrorKind::InvalidToken(t) => write!(f, "not an item id: {t:?}"),
            ParseErrorKind::NonPositiveItem(t) => {
                write!(f, "item ids must be positive, found {t:?}")
            }
            ParseErrorKind::Empty => write!(f, "input contains no transactions"),
            ParseErrorKind::UniverseTooSmall { max_item, universe } => write!(
                f,
                "item {max_item} does not fit a universe of size {universe}"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

fn at(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Item lists, one per nonempty line, duplicates within a line collapsed.
pub fn parse_item_lines(bytes: &[u8]) -> Result<Vec<Vec<usize>>, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| at(0, 0, ParseErrorKind::NotUtf8))?;
    let mut lines = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut items = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let token = &tail[..len];
            let column = line[..offset + start].chars().count() + 1;
            match token.parse::<i64>() {
                Ok(v) if v >= 1 => items.push(v as usize),
                Ok(_) => {
                    return Err(at(
                        lineno + 1,
                        column,
                        ParseErrorKind::NonPositiveItem(token.to_string()),
                    ))
                }
                Err(_) => {
                    return Err(at(
                        lineno + 1,
                        column,
                        ParseErrorKind::InvalidToken(token.to_string()),
                    ))
                }
            }
            offset += start + len;
            rest = &tail[len..];
        }
        if !items.is_empty() {
            items.sort_unstable();
            items.dedup();
            lines.push(items);
        }
    }
    Ok(lines)
}

/// Converts item lists to itemsets over `1..=w`, where `w` is the override
/// or the largest item seen.
pub fn into_itemsets(
    lists: Vec<Vec<usize>>,
    universe: Option<usize>,
) -> Result<(Universe, Vec<ItemSet>), ParseError> {
    if lists.is_empty() {
        return Err(at(0, 0, ParseErrorKind::Empty));
    }
    let max_item = lists.iter().flatten().copied().max().unwrap_or(0);
    let size = universe.unwrap_or(max_item);
    if size < max_item || size == 0 {
        return Err(at(
            0,
            0,
            ParseErrorKind::UniverseTooSmall {
                max_item,
                universe: size,
            },
        ));
    }
    let u = Universe::new(size).expect("size is positive");
    let sets = lists
        .into_iter()
        .map(|items| ItemSet::from_items(u, items).expect("items fit the universe"))
        .collect();
    Ok((u, sets))
}

pub fn parse_transactions(bytes: &[u8]) -> Result<TransactionDb, ParseError> {
    parse_transactions_with_universe(bytes, None)
}

pub fn parse_transactions_with_universe(
    bytes: &[u8],
    universe: Option<usize>,
) -> Result<TransactionDb, ParseError> {
    let (u, sets) = into_itemsets(parse_item_lines(bytes)?, universe)?;
    Ok(TransactionDb::new(u, sets).expect("nonempty and inside the universe"))
}
