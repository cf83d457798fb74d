//! Generalized quaternion algebras H(−b,−c) over Q or Q(i).
//!
//! Basis {1, e2, e3, e4} with
//!
//! | ·  | e2    | e3    | e4    |
//! |----|-------|-------|-------|
//! | e2 | −b    | e4    | −b·e3 |
//! | e3 | −e4   | −c    | c·e2  |
//! | e4 | b·e3  | −c·e2 | −bc   |

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::scalars::{BaseField, Integer, Rational, Scalar};

/// Parameters (b, c) of H(−b,−c) and the base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    b: Integer,
    c: Integer,
    field: BaseField,
}

impl AlgebraParams {
    pub fn new(b: Integer, c: Integer, field: BaseField) -> Result<Self> {
        if !b.is_positive() || !c.is_positive() {
            return Err(invalid(format!(
                "algebra parameters must be positive, got b = {b}, c = {c}"
            )));
        }
        Ok(Self { b, c, field })
    }

    /// H_Q(−b,−c). Panics if b or c is not positive.
    pub fn rational(b: i64, c: i64) -> Self {
        Self::new(b.into(), c.into(), BaseField::Rationals).expect("positive parameters")
    }

    /// H_Q(i)(−b,−c). Panics if b or c is not positive.
    pub fn gaussian(b: i64, c: i64) -> Self {
        Self::new(b.into(), c.into(), BaseField::GaussianRationals).expect("positive parameters")
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn c(&self) -> &Integer {
        &self.c
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn with_field(&self, field: BaseField) -> Self {
        Self {
            field,
            ..self.clone()
        }
    }

    /// Coefficients (1, b, c, bc) of the norm form.
    pub fn norm_coefficients(&self) -> [Integer; 4] {
        [Integer::one(), self.b.clone(), self.c.clone(), &self.b * &self.c]
    }

    /// Product of basis elements e_i · e_j (indices 0..4, 0 being 1) as
    /// `(coefficient, index)`.
    pub fn basis_product(&self, i: usize, j: usize) -> (Integer, usize) {
        let (b, c) = (&self.b, &self.c);
        let one = Integer::one();
        match (i, j) {
            (0, k) | (k, 0) => (one, k),
            (1, 1) => (-b, 0),
            (1, 2) => (one, 3),
            (1, 3) => (-b, 2),
            (2, 1) => (-one, 3),
            (2, 2) => (-c, 0),
            (2, 3) => (c.clone(), 1),
            (3, 1) => (b.clone(), 2),
            (3, 2) => (-c, 1),
            (3, 3) => (-(b * c), 0),
            _ => panic!("basis index out of range: ({i}, {j})"),
        }
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}(-{},-{})", self.field, self.b, self.c)
    }
}

/// x1 + x2·e2 + x3·e3 + x4·e4 in a fixed algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion<S: Scalar> {
    coords: [S; 4],
    params: AlgebraParams,
}

pub type RationalQuaternion = Quaternion<Rational>;

impl<S: Scalar> Quaternion<S> {
    pub fn new(coords: [S; 4], params: AlgebraParams) -> Result<Self> {
        if params.field != S::FIELD {
            return Err(invalid(format!(
                "coordinates live in {} but the algebra is {params}",
                S::FIELD
            )));
        }
        Ok(Self { coords, params })
    }

    pub fn from_integers(coords: [i64; 4], params: AlgebraParams) -> Result<Self> {
        Self::new(coords.map(|x| S::from_integer(x.into())), params)
    }

    pub fn zero(params: AlgebraParams) -> Result<Self> {
        Self::scalar(S::zero(), params)
    }

    pub fn one(params: AlgebraParams) -> Result<Self> {
        Self::scalar(S::one(), params)
    }

    pub fn scalar(s: S, params: AlgebraParams) -> Result<Self> {
        Self::new([s, S::zero(), S::zero(), S::zero()], params)
    }

    /// The basis element e_k (k = 0 gives 1, k = 1..=3 gives e2..e4).
    pub fn basis(k: usize, params: AlgebraParams) -> Result<Self> {
        if k > 3 {
            return Err(invalid(format!("basis index {k} out of range")));
        }
        let mut coords = [S::zero(), S::zero(), S::zero(), S::zero()];
        coords[k] = S::one();
        Self::new(coords, params)
    }

    pub fn coords(&self) -> &[S; 4] {
        &self.coords
    }

    pub fn into_coords(self) -> [S; 4] {
        self.coords
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch {
                left: self.params.to_string(),
                right: other.params.to_string(),
            });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        self.check_same(other)?;
        let c = std::array::from_fn(|k| f(self.coords[k].clone(), other.coords[k].clone()));
        Ok(Self {
            coords: c,
            params: self.params.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a * s.clone())
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Self {
            coords: self.coords.clone().map(f),
            params: self.params.clone(),
        }
    }

    /// Product expanded bilinearly over the basis multiplication table.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = [S::zero(), S::zero(), S::zero(), S::zero()];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (coef, k) = self.params.basis_product(i, j);
                let term = S::from_integer(coef) * x.clone() * y.clone();
                out[k] = out[k].clone() + term;
            }
        }
        Ok(Self {
            coords: out,
            params: self.params.clone(),
        })
    }

    pub fn conj(&self) -> Self {
        let [x1, x2, x3, x4] = self.coords.clone();
        Self {
            coords: [x1, -x2, -x3, -x4],
            params: self.params.clone(),
        }
    }

    /// t(x) = x + x̄ = 2·x1.
    pub fn trace(&self) -> S {
        self.coords[0].clone() + self.coords[0].clone()
    }

    /// n(x) = x1² + b·x2² + c·x3² + bc·x4².
    pub fn norm(&self) -> S {
        self.params
            .norm_coefficients()
            .into_iter()
            .zip(&self.coords)
            .fold(S::zero(), |acc, (k, x)| {
                acc + S::from_integer(k) * x.clone() * x.clone()
            })
    }

    /// x⁻¹ = x̄ / n(x).
    pub fn inverse(&self) -> Result<Self> {
        let n_inv = self.norm().inverse().ok_or(Error::ZeroNorm)?;
        Ok(self.conj().scale(&n_inv))
    }

    /// Parses `"a + b*e2 + c*e3 + d*e4"`; omitted terms are zero and
    /// repeated terms accumulate.
    pub fn parse(s: &str, params: AlgebraParams) -> Result<Self> {
        let mut out = Self::zero(params)?;
        for term in split_terms(s)? {
            let (coef, k) = parse_term::<S>(&term)?;
            out.coords[k] = out.coords[k].clone() + coef;
        }
        Ok(out)
    }

    /// Coordinates rendered as literal strings (the structured array form).
    pub fn coord_strings(&self) -> [String; 4] {
        std::array::from_fn(|k| self.coords[k].to_string())
    }
}

impl Quaternion<Rational> {
    /// The same element viewed in the algebra over Q(i).
    pub fn to_gaussian(&self) -> Quaternion<crate::scalars::GaussianRational> {
        Quaternion {
            coords: self.coords.clone().map(Into::into),
            params: self.params.with_field(BaseField::GaussianRationals),
        }
    }
}

const BASIS_NAMES: [&str; 4] = ["", "e2", "e3", "e4"];

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut coef = x.to_string();
            if x.is_compound() {
                coef = format!("({coef})");
            }
            let (neg, mag) = match coef.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coef),
            };
            let body = match (k, mag.as_str()) {
                (0, _) => mag,
                (_, "1") => BASIS_NAMES[k].to_string(),
                _ => format!("{mag}*{}", BASIS_NAMES[k]),
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn split_terms(s: &str) -> Result<Vec<String>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty quaternion literal".into()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
                }
            }
            '+' | '-' if depth == 0 && !cur.is_empty() && !matches!(prev, Some('*' | '/')) => {
                terms.push(std::mem::take(&mut cur));
            }
            _ => {}
        }
        cur.push(ch);
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    terms.push(cur);
    Ok(terms)
}

fn parse_term<S: Scalar>(term: &str) -> Result<(S, usize)> {
    let (coef, k) = match BASIS_NAMES[1..]
        .iter()
        .position(|name| term.ends_with(name))
    {
        Some(p) => {
            let rest = &term[..term.len() - 2];
            (rest.strip_suffix('*').unwrap_or(rest), p + 1)
        }
        None => (term, 0),
    };
    let (negate, body) = match coef.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, coef.strip_prefix('+').unwrap_or(coef)),
    };
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    let value = if body.is_empty() {
        if k == 0 {
            return Err(Error::Parse(format!("dangling sign in term `{term}`")));
        }
        S::one()
    } else {
        S::parse_literal(body).map_err(|e| Error::Parse(format!("term `{term}`: {e}")))?
    };
    Ok((if negate { -value } else { value }, k))
}
