//! The commutative subring Z[v] of the Hurwitz integers, v = (1+e2+e3+e4)/2,
//! and its residue rings modulo a primitive element φ.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::{LatticeKind, LatticePoint};
use crate::quaternion::{AlgebraParams, RationalQuaternion};
use crate::scalars::{parse_integer, Integer, Rational};

/// α + βv with v² = v − 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubringElement {
    pub alpha: Integer,
    pub beta: Integer,
}

pub fn subring_norm(alpha: &Integer, beta: &Integer) -> Integer {
    alpha * alpha + alpha * beta + beta * beta
}

impl SubringElement {
    pub fn new(alpha: Integer, beta: Integer) -> Self {
        Self { alpha, beta }
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Self {
        Self::new(alpha.into(), beta.into())
    }

    pub fn v() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn norm(&self) -> Integer {
        subring_norm(&self.alpha, &self.beta)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// v̄ = 1 − v.
    pub fn conj(&self) -> Self {
        Self::new(&self.alpha + &self.beta, -&self.beta)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.alpha + &o.alpha, &self.beta + &o.beta)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.alpha - &o.alpha, &self.beta - &o.beta)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.alpha, &self.beta, &o.alpha, &o.beta);
        Self::new(a * c - b * d, a * d + b * c + b * d)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(&self.alpha * k, &self.beta * k)
    }

    /// The same element as a Hurwitz point of H(−1,−1).
    pub fn to_hurwitz(&self) -> LatticePoint {
        let half = |n: &Integer| Rational::new(n.clone(), 2.into());
        let a = Rational::from_integer(self.alpha.clone()) + half(&self.beta);
        let b = half(&self.beta);
        let q = RationalQuaternion::new([a, b.clone(), b.clone(), b], AlgebraParams::rational(1, 1))
            .expect("field matches");
        LatticePoint::new(q, LatticeKind::Hurwitz).expect("α + βv is a Hurwitz point")
    }

    fn count_negative(&self) -> usize {
        [&self.alpha, &self.beta].iter().filter(|x| x.is_negative()).count()
    }
}

impl fmt::Display for SubringElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.alpha, &self.beta);
        if b.is_zero() {
            return write!(f, "{a}");
        }
        let v = if b.is_one() {
            "v".to_string()
        } else if *b == Integer::from(-1) {
            "-v".to_string()
        } else {
            format!("{b}*v")
        };
        if a.is_zero() {
            f.write_str(&v)
        } else if b.is_negative() {
            write!(f, "{a}{v}")
        } else {
            write!(f, "{a}+{v}")
        }
    }
}

impl FromStr for SubringElement {
    type Err = Error;

    /// Parses "a+b*v", "a-v", "3", "-2*v" and similar.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty subring literal".into()));
        }
        let mut alpha = Integer::zero();
        let mut beta = Integer::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let term = &s[start..i];
                let (sign, body) = match term.as_bytes()[0] {
                    b'+' => (1, &term[1..]),
                    b'-' => (-1, &term[1..]),
                    _ => (1, term),
                };
                if let Some(coef) = body.strip_suffix('v') {
                    let coef = coef.strip_suffix('*').unwrap_or(coef);
                    let c = if coef.is_empty() {
                        Integer::one()
                    } else {
                        parse_integer(coef)?
                    };
                    beta += c * sign;
                } else {
                    if body.is_empty() {
                        return Err(Error::Parse(format!("bad subring literal {s:?}")));
                    }
                    alpha += parse_integer(body)? * sign;
                }
                start = i;
            }
        }
        Ok(Self { alpha, beta })
    }
}

fn require_primitive(phi: &SubringElement) -> Result<Integer> {
    if !phi.alpha.gcd(&phi.beta).is_one() {
        return Err(invalid(format!("gcd of the coordinates of {phi} must be 1")));
    }
    let n = phi.norm();
    if n <= Integer::one() {
        return Err(invalid(format!("{phi} has norm {n}, need at least 2")));
    }
    Ok(n)
}

/// Euclidean division q = κ·φ + ρ with n(ρ) < n(φ). κ is one of the four
/// floor/ceiling roundings of q·φ̄/n(φ) in the (1, v) coordinates; the
/// remainder of least norm wins, ties going to fewer negative coordinates and
/// then to the smaller (β, α).
pub fn euclid_divide(
    q: &SubringElement,
    phi: &SubringElement,
) -> Result<(SubringElement, SubringElement)> {
    if phi.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = phi.norm();
    let t = q.mul(&phi.conj());
    let bounds = |x: &Integer| {
        let f = x.div_floor(&n);
        let c = if (x % &n).is_zero() { f.clone() } else { &f + 1 };
        [f, c]
    };
    let mut best: Option<(SubringElement, SubringElement)> = None;
    for a in bounds(&t.alpha) {
        for b in bounds(&t.beta) {
            let kappa = SubringElement::new(a.clone(), b);
            let rho = q.sub(&kappa.mul(phi));
            let key = |r: &SubringElement| (r.norm(), r.count_negative(), r.beta.clone(), r.alpha.clone());
            if best.as_ref().is_none_or(|(_, r)| key(&rho) < key(r)) {
                best = Some((kappa, rho));
            }
        }
    }
    let (kappa, rho) = best.expect("four candidates");
    debug_assert!(rho.norm() < n);
    Ok((kappa, rho))
}

/// The unique m in [0, n(φ)) with q ≡ m (mod φ).
pub fn to_residue(q: &SubringElement, phi: &SubringElement) -> Result<Integer> {
    let n = require_primitive(phi)?;
    // q − m ≡ 0 (mod φ) iff (q − m)·φ̄ ≡ 0 (mod n) in both coordinates.
    let t = q.mul(&phi.conj());
    let pc = phi.conj();
    let inv = pc.beta.extended_gcd(&n);
    debug_assert!(inv.gcd.abs().is_one());
    let m = (&t.beta * &inv.x).mod_floor(&n);
    if !(&t.alpha - &m * &pc.alpha).mod_floor(&n).is_zero() {
        return Err(Error::IdentityViolation(format!(
            "{q} has no integer residue modulo {phi}"
        )));
    }
    Ok(m)
}

/// Representatives of Z[v]/φ indexed by the integer they reduce from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSystem {
    modulus: SubringElement,
    representatives: Vec<SubringElement>,
}

pub fn residue_system(phi: &SubringElement) -> Result<ResidueSystem> {
    let n = require_primitive(phi)?;
    let size: usize = usize::try_from(&n)
        .ok()
        .filter(|&s| s <= 1 << 20)
        .ok_or_else(|| Error::SearchTooLarge(format!("norm {n} is too large to tabulate")))?;
    let representatives = (0..size)
        .map(|m| {
            let m = SubringElement::new(Integer::from(m), Integer::zero());
            euclid_divide(&m, phi).map(|(_, r)| r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueSystem {
        modulus: phi.clone(),
        representatives,
    })
}

impl ResidueSystem {
    pub fn modulus(&self) -> &SubringElement {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[SubringElement] {
        &self.representatives
    }

    /// Representative of the class of the integer m.
    pub fn int_map(&self, m: &Integer) -> &SubringElement {
        let n = Integer::from(self.len());
        let idx = usize::try_from(m.mod_floor(&n)).expect("index below table size");
        &self.representatives[idx]
    }

    /// Representative of the class of q.
    pub fn reduce(&self, q: &SubringElement) -> Result<&SubringElement> {
        Ok(self.int_map(&to_residue(q, &self.modulus)?))
    }

    fn table(&self, op: impl Fn(&SubringElement, &SubringElement) -> SubringElement) -> Result<Vec<Vec<usize>>> {
        self.representatives
            .iter()
            .map(|x| {
                self.representatives
                    .iter()
                    .map(|y| {
                        let m = to_residue(&op(x, y), &self.modulus)?;
                        Ok(usize::try_from(m).expect("residue fits"))
                    })
                    .collect()
            })
            .collect()
    }

    /// Entry (i, j) is the index of the class of rᵢ + rⱼ.
    pub fn add_table(&self) -> Result<Vec<Vec<usize>>> {
        self.table(SubringElement::add)
    }

    /// Entry (i, j) is the index of the class of rᵢ·rⱼ.
    pub fn mul_table(&self) -> Result<Vec<Vec<usize>>> {
        self.table(SubringElement::mul)
    }
}
