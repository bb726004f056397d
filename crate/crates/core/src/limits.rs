use crate::structure::DEFAULT_ENUM_CAP;

/// Caps on the exhaustive searches. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Most head atoms a program may have for answer-set enumeration.
    pub max_heads: usize,
    /// Most atoms an interpretation may have for the minimality check.
    pub max_minimality: usize,
    /// Most free domain atoms a conditional-satisfaction test enumerates.
    pub max_free_domain: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_heads: 22,
            max_minimality: 22,
            max_free_domain: DEFAULT_ENUM_CAP,
        }
    }
}
