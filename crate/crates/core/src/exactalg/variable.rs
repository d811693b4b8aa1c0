use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A named indeterminate.
///
/// Variables are totally ordered: indexed form coefficients `a1 < a2 < ...`
/// come first, then the matrix entries `p < q < r < s`, then indexed
/// coordinates `x0 < x1 < ...`, then every other name alphabetically.
/// Numeric suffixes compare numerically, so `a2 < a10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Variable(Arc<str>);

impl Variable {
    pub fn new(name: impl AsRef<str>) -> Variable {
        Variable(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn sort_key(&self) -> (u8, u64, &str) {
        let name = self.name();
        if let Some(idx) = indexed(name, "a") {
            return (0, idx, "");
        }
        if let Some(pos) = ["p", "q", "r", "s"].iter().position(|v| *v == name) {
            return (1, pos as u64, "");
        }
        if let Some(idx) = indexed(name, "x") {
            return (2, idx, "");
        }
        (3, 0, name)
    }
}

fn indexed(name: &str, prefix: &str) -> Option<u64> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // "a01" would collide with "a1"; keep such names in the generic class.
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Variable {
    fn from(s: &str) -> Self {
        Variable::new(s)
    }
}
