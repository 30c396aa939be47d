//! Value parsers for command-line tokens. Errors name the offending token.

use ulrich_core::{LieType, NodeSet};

/// A comma-separated list of integers, e.g. `0,1,-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

pub fn lie_type(s: &str) -> Result<LieType, String> {
    s.trim().parse().map_err(|e| format!("`{s}`: {e}"))
}

fn items(s: &str) -> impl Iterator<Item = &str> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

/// `1,2`, `{1,2}`; `{}` or the empty string is the empty set.
pub fn nodes(s: &str) -> Result<NodeSet, String> {
    let mut set = NodeSet::empty();
    for tok in items(s) {
        let label: usize = tok
            .parse()
            .map_err(|_| format!("invalid node label `{tok}`"))?;
        if !(1..=31).contains(&label) {
            return Err(format!("invalid node label `{tok}`"));
        }
        if set.contains(label) {
            return Err(format!("repeated node label `{tok}`"));
        }
        set.insert(label);
    }
    Ok(set)
}

pub fn int_list(s: &str) -> Result<IntList, String> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    items(s)
        .map(|tok| tok.parse().map_err(|_| format!("invalid integer `{tok}`")))
        .collect::<Result<_, _>>()
        .map(IntList)
}
