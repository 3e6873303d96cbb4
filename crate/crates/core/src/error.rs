use thiserror::Error;

use crate::group::Elem;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {elem:?} is not in group {group}")]
    InvalidElement { group: String, elem: Elem },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("no element of multiplicative order {q} modulo {p}")]
    NoSuchElement { p: u32, q: u32 },

    #[error("group axiom violated in {group}: {detail}")]
    GroupAxiom { group: String, detail: String },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("brace axiom fails at a={a:?}, b={b:?}, c={c:?}")]
    BraceAxiom { a: Elem, b: Elem, c: Elem },

    #[error("group of order {order} exceeds the capacity {cap}")]
    Capacity { order: usize, cap: usize },

    #[error("twisted actions disagree at g={g:?}, h={h:?}")]
    TwistMismatch { g: Elem, h: Elem },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("inconsistent results: {0}")]
    Inconsistency(String),

    #[error("dimension mismatch: {0} vs {1}")]
    Shape(usize, usize),

    #[error("representation is not compatible: {0}")]
    Compatibility(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}
