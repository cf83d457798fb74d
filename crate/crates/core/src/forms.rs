//! Diagonal quaternary forms a·x² + b·y² + c·z² + d·u²: representation
//! search, universality checks, rational norm surjectivity, and the
//! composition identities coming from multiplication in H_Q(−1,−2).

use std::fmt;

use num_integer::Roots;
use num_traits::{Signed, Zero};

use crate::classification::UNIVERSAL_PAIRS;
use crate::error::{invalid, Error, Result};
use crate::ntheory::to_u64;
use crate::scalars::{Integer, Rational};

/// The seven coefficient tuples (1, b, c, bc) among Ramanujan's universal forms.
pub const NORM_FORM_TUPLES: [[i64; 4]; 7] = [
    [1, 1, 1, 1],
    [1, 1, 2, 2],
    [1, 1, 3, 3],
    [1, 2, 2, 4],
    [1, 2, 3, 6],
    [1, 2, 4, 8],
    [1, 2, 5, 10],
];

/// The universal forms attributed to Liouville and Pepin.
pub const LIOUVILLE_PEPIN_TUPLES: [[i64; 4]; 11] = [
    [1, 1, 1, 1],
    [1, 1, 2, 2],
    [1, 2, 2, 2],
    [1, 1, 1, 4],
    [1, 1, 2, 4],
    [1, 2, 2, 4],
    [1, 2, 4, 4],
    [1, 1, 2, 8],
    [1, 2, 4, 8],
    [1, 1, 3, 3],
    [1, 2, 5, 10],
];

pub const DEFAULT_UNIVERSAL_LIMIT: u64 = 10_000;

/// Positive coefficients (a, b, c, d) of a·x² + b·y² + c·z² + d·u².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormTuple {
    coeffs: [Integer; 4],
}

impl FormTuple {
    pub fn new(coeffs: [Integer; 4]) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !c.is_positive()) {
            return Err(invalid(format!("form coefficients must be positive, got {bad}")));
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: [i64; 4]) -> Result<Self> {
        Self::new(coeffs.map(Integer::from))
    }

    /// The norm form (1, b, c, bc) of H_Q(−b,−c).
    pub fn norm_form(b: &Integer, c: &Integer) -> Result<Self> {
        Self::new([1.into(), b.clone(), c.clone(), b * c])
    }

    pub fn coeffs(&self) -> &[Integer; 4] {
        &self.coeffs
    }

    pub fn evaluate(&self, xs: &[Integer; 4]) -> Integer {
        self.coeffs
            .iter()
            .zip(xs)
            .map(|(k, x)| k * x * x)
            .sum()
    }

    pub fn evaluate_rational(&self, xs: &[Rational; 4]) -> Rational {
        self.coeffs
            .iter()
            .zip(xs)
            .fold(Rational::zero(), |acc, (k, x)| {
                acc + Rational::from_integer(k.clone()) * x * x
            })
    }

    fn small_coeffs(&self) -> Result<[u64; 4]> {
        let mut out = [0u64; 4];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = to_u64(c, "coefficient")?;
        }
        Ok(out)
    }
}

impl fmt::Display for FormTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Searches nonnegative (x1, x2, x3, x4) with x4 outermost and x1 innermost,
/// each increasing from 0, and returns the first solution. A nonnegative
/// solution exists whenever any solution does, so `None` proves that n is
/// not represented.
pub fn represent(n: &Integer, form: &FormTuple) -> Result<Option<[Integer; 4]>> {
    if n.is_negative() {
        return Err(invalid(format!("cannot represent negative number {n}")));
    }
    let n = to_u64(n, "n")?;
    let coeffs = form.small_coeffs()?;
    Ok(represent_u64(n, &coeffs).map(|xs| xs.map(Integer::from)))
}

pub(crate) fn represent_u64(n: u64, [a, b, c, d]: &[u64; 4]) -> Option<[u64; 4]> {
    let (n, a, b, c, d) = (n as u128, *a as u128, *b as u128, *c as u128, *d as u128);
    for x4 in 0..=(n / d).sqrt() {
        let r4 = n - d * x4 * x4;
        for x3 in 0..=(r4 / c).sqrt() {
            let r3 = r4 - c * x3 * x3;
            for x2 in 0..=(r3 / b).sqrt() {
                let r2 = r3 - b * x2 * x2;
                if r2 % a != 0 {
                    continue;
                }
                let q = r2 / a;
                let x1 = q.sqrt();
                if x1 * x1 == q {
                    return Some([x1 as u64, x2 as u64, x3 as u64, x4 as u64]);
                }
            }
        }
    }
    None
}

/// Result of checking universality up to a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    pub universal: bool,
    pub limit: u64,
    /// Least n in 1..=limit with no representation.
    pub counterexample: Option<u64>,
}

/// Checks that every 1 ≤ n ≤ limit is represented by the form.
pub fn verify_universal(form: &FormTuple, limit: u64) -> Result<UniversalReport> {
    if limit < 1 {
        return Err(invalid("limit must be at least 1"));
    }
    let coeffs = form.small_coeffs()?;
    let counterexample = (1..=limit).find(|&n| represent_u64(n, &coeffs).is_none());
    Ok(UniversalReport {
        universal: counterexample.is_none(),
        limit,
        counterexample,
    })
}

fn require_universal_pair(b: &Integer, c: &Integer) -> Result<()> {
    let known = UNIVERSAL_PAIRS
        .iter()
        .any(|&(pb, pc)| *b == Integer::from(pb) && *c == Integer::from(pc));
    if !known {
        return Err(Error::OutOfDomain(format!(
            "(b, c) = ({b}, {c}) is not one of the seven pairs with a universal norm form"
        )));
    }
    Ok(())
}

/// Writes m = m′/l as x1² + b·x2² + c·x3² + bc·x4² with rational xᵢ by
/// representing m′·l with the integer form and dividing through by l.
pub fn represent_rational(m: &Rational, b: &Integer, c: &Integer) -> Result<[Rational; 4]> {
    require_universal_pair(b, c)?;
    if !m.is_positive() {
        return Err(invalid(format!("m must be positive, got {m}")));
    }
    let (num, den) = (m.numer(), m.denom());
    let target = num * den;
    let form = FormTuple::norm_form(b, c)?;
    let xs = represent(&target, &form)?.ok_or_else(|| {
        Error::IdentityViolation(format!("{target} has no representation by {form}"))
    })?;
    Ok(xs.map(|x| Rational::new(x, den.clone())))
}

/// Which product identity `compose` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Composition {
    /// Coordinates of x·y in H_Q(−1,−2).
    Direct,
    /// The sign-flipped variant, equal to the coordinates of y·x̄.
    Twisted,
}

/// (u1, u2, u3, u4) with u1² + u2² + 2u3² + 2u4² equal to
/// (x1² + x2² + 2x3² + 2x4²)(y1² + y2² + 2y3² + 2y4²).
pub fn compose(x: &[Integer; 4], y: &[Integer; 4], variant: Composition) -> [Integer; 4] {
    let [x1, x2, x3, x4] = x;
    let [y1, y2, y3, y4] = y;
    let two = Integer::from(2);
    match variant {
        Composition::Direct => [
            x1 * y1 - x2 * y2 - &two * x3 * y3 - &two * x4 * y4,
            x1 * y2 + x2 * y1 + &two * x3 * y4 - &two * x4 * y3,
            x1 * y3 + x3 * y1 - x2 * y4 + x4 * y2,
            x1 * y4 + x4 * y1 + x2 * y3 - x3 * y2,
        ],
        Composition::Twisted => [
            x1 * y1 + x2 * y2 + &two * x3 * y3 + &two * x4 * y4,
            x1 * y2 - x2 * y1 + &two * x3 * y4 - &two * x4 * y3,
            x1 * y3 - x3 * y1 - x2 * y4 + x4 * y2,
            x1 * y4 - x4 * y1 + x2 * y3 - x3 * y2,
        ],
    }
}
