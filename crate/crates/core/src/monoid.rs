//! The finite totally ordered monoid {y_0 ≤ y_1 ≤ … ≤ y_{2^k−1}} and the
//! Fibonacci sequences it carries, which always become constant.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub const MAX_K: u32 = 63;

/// y_index in the monoid with 2^k elements; y_0 is the identity and
/// y_{2^k−1} the absorbing top element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    k: u32,
    index: u64,
}

impl MonoidElement {
    pub fn new(index: u64, k: u32) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(invalid(format!("k must be in 1..={MAX_K}, got {k}")));
        }
        if index > Self::top_index(k) {
            return Err(invalid(format!(
                "index {index} exceeds 2^{k} - 1 = {}",
                Self::top_index(k)
            )));
        }
        Ok(Self { k, index })
    }

    pub fn top_index(k: u32) -> u64 {
        (1u64 << k) - 1
    }

    pub fn zero(k: u32) -> Result<Self> {
        Self::new(0, k)
    }

    pub fn top(k: u32) -> Result<Self> {
        Self::new(Self::top_index(k), k)
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_top(&self) -> bool {
        self.index == Self::top_index(self.k)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            f.write_str("0")
        } else if self.is_top() {
            f.write_str("1")
        } else {
            write!(f, "y{}", self.index)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonoidVariant {
    /// y_i ∗ y_j = y_{min(i+j, 2^k−1)}.
    #[default]
    TruncatedAdd,
    /// y_i ∗ y_j = y_{i | j}, the product of k copies of the two-element monoid.
    ComponentwiseOr,
}

impl fmt::Display for MonoidVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonoidVariant::TruncatedAdd => "add",
            MonoidVariant::ComponentwiseOr => "or",
        })
    }
}

impl FromStr for MonoidVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(MonoidVariant::TruncatedAdd),
            "or" => Ok(MonoidVariant::ComponentwiseOr),
            _ => Err(Error::Parse(format!("unknown variant {s:?}, expected add or or"))),
        }
    }
}

pub fn monoid_op(a: MonoidElement, b: MonoidElement, variant: MonoidVariant) -> Result<MonoidElement> {
    if a.k != b.k {
        return Err(invalid(format!("elements come from different monoids (k = {} and {})", a.k, b.k)));
    }
    let index = match variant {
        MonoidVariant::TruncatedAdd => a.index.saturating_add(b.index).min(MonoidElement::top_index(a.k)),
        MonoidVariant::ComponentwiseOr => a.index | b.index,
    };
    Ok(MonoidElement { k: a.k, index })
}

/// A Fibonacci sequence v_{n+2} = v_n ∗ v_{n+1}, recorded up to the first
/// pair of equal terms that can no longer change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibTrace {
    pub terms: Vec<MonoidElement>,
    /// Least index from which every term equals `limit`.
    pub t: usize,
    pub limit: MonoidElement,
}

pub fn default_max_steps(k: u32) -> usize {
    (1usize << k.min(20)) + 4
}

pub fn fib_sequence(
    a: MonoidElement,
    b: MonoidElement,
    variant: MonoidVariant,
    max_steps: usize,
) -> Result<FibTrace> {
    if max_steps < 2 {
        return Err(invalid("max_steps must be at least 2"));
    }
    monoid_op(a, b, variant)?;
    let mut terms = vec![a, b];
    loop {
        let n = terms.len();
        let (x, y) = (terms[n - 2], terms[n - 1]);
        if x == y && monoid_op(y, y, variant)? == y {
            break;
        }
        if n >= max_steps {
            return Err(Error::IdentityViolation(format!(
                "sequence from {a}, {b} did not become stationary within {max_steps} terms"
            )));
        }
        terms.push(monoid_op(x, y, variant)?);
    }
    let limit = *terms.last().expect("at least two terms");
    let t = terms.iter().rposition(|v| *v != limit).map_or(0, |i| i + 1);
    Ok(FibTrace { terms, t, limit })
}
