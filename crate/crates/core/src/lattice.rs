//! Integer quaternions: Lipschitz and Hurwitz points, division with
//! remainder, right congruence modulo an odd quaternion, units and primes.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive};

use crate::classification::UNIVERSAL_PAIRS;
use crate::error::{invalid, Error, Result};
use crate::ntheory::is_prime;
use crate::quaternion::{AlgebraParams, RationalQuaternion};
use crate::scalars::{BaseField, Integer, Rational};

/// Largest box side accepted by `count_residues`.
pub const MAX_RESIDUE_BOX: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// All coordinates integral.
    Lipschitz,
    /// All coordinates in Z or all in Z + 1/2; only in H(−1,−1).
    Hurwitz,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Lipschitz => "Lipschitz",
            LatticeKind::Hurwitz => "Hurwitz",
        })
    }
}

/// A quaternion with coordinates constrained to a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    q: RationalQuaternion,
    kind: LatticeKind,
}

/// True when (b, c) is one of the seven pairs whose norm form is universal.
pub fn in_universal_family(params: &AlgebraParams) -> bool {
    params.field() == BaseField::Rationals
        && UNIVERSAL_PAIRS
            .iter()
            .any(|&(b, c)| *params.b() == b.into() && *params.c() == c.into())
}

fn is_hamilton(params: &AlgebraParams) -> bool {
    params.field() == BaseField::Rationals && params.b().is_one() && params.c().is_one()
}

fn is_half_odd(r: &Rational) -> bool {
    *r.denom() == Integer::from(2)
}

impl LatticePoint {
    pub fn new(q: RationalQuaternion, kind: LatticeKind) -> Result<Self> {
        if q.params().field() != BaseField::Rationals {
            return Err(invalid("lattice points live in algebras over Q"));
        }
        let coords = q.coords();
        let integral = coords.iter().all(|c| c.is_integer());
        match kind {
            LatticeKind::Lipschitz if !integral => {
                return Err(invalid(format!("{q} has non-integral coordinates")));
            }
            LatticeKind::Hurwitz => {
                if !is_hamilton(q.params()) {
                    return Err(Error::OutOfDomain(
                        "Hurwitz points are only defined in H(-1,-1)".into(),
                    ));
                }
                if !integral && !coords.iter().all(is_half_odd) {
                    return Err(invalid(format!(
                        "{q} is not a Hurwitz point: coordinates must be all integers or all in Z+1/2"
                    )));
                }
            }
            _ => {}
        }
        Ok(Self { q, kind })
    }

    pub fn lipschitz(coords: [Integer; 4], params: AlgebraParams) -> Result<Self> {
        let q = RationalQuaternion::new(coords.map(Rational::from_integer), params)?;
        Self::new(q, LatticeKind::Lipschitz)
    }

    pub fn from_ints(coords: [i64; 4], params: AlgebraParams) -> Result<Self> {
        Self::lipschitz(coords.map(Integer::from), params)
    }

    /// A Hurwitz point of H(−1,−1) given by its doubled coordinates, which
    /// must share a parity.
    pub fn hurwitz_doubled(doubled: [i64; 4]) -> Result<Self> {
        let q = RationalQuaternion::new(
            doubled.map(|d| Rational::new(d.into(), 2.into())),
            AlgebraParams::rational(1, 1),
        )?;
        Self::new(q, LatticeKind::Hurwitz)
    }

    pub fn quaternion(&self) -> &RationalQuaternion {
        &self.q
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn params(&self) -> &AlgebraParams {
        self.q.params()
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// The reduced norm, always an integer on these lattices.
    pub fn norm(&self) -> Integer {
        self.q.norm().to_integer()
    }

    /// Integer coordinates, or `None` for a half-integral Hurwitz point.
    pub fn integer_coords(&self) -> Option<[Integer; 4]> {
        let c = self.q.coords();
        c.iter()
            .all(|x| x.is_integer())
            .then(|| c.clone().map(|x| x.to_integer()))
    }

    fn join(&self, other: &Self) -> LatticeKind {
        if self.kind == LatticeKind::Lipschitz && other.kind == LatticeKind::Lipschitz {
            LatticeKind::Lipschitz
        } else {
            LatticeKind::Hurwitz
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.q.add(&other.q)?, self.join(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(self.q.sub(&other.q)?, self.join(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.q.mul(&other.q)?, self.join(other))
    }

    pub fn conj(&self) -> Self {
        Self {
            q: self.q.conj(),
            kind: self.kind,
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.q.fmt(f)
    }
}

/// Nearest integer, with halves going toward zero.
pub fn round_half_toward_zero(r: &Rational) -> Integer {
    let floor = r.floor();
    let frac = r - &floor;
    let half = Rational::new(1.into(), 2.into());
    let floor = floor.to_integer();
    if frac > half || (frac == half && r.is_negative()) {
        floor + 1
    } else {
        floor
    }
}

fn require_lipschitz(points: &[&LatticePoint]) -> Result<()> {
    if let Some(p) = points.iter().find(|p| p.kind != LatticeKind::Lipschitz) {
        return Err(invalid(format!("{p} must be a Lipschitz point")));
    }
    Ok(())
}

fn rounded_quotient(x: &LatticePoint, y: &LatticePoint) -> Result<LatticePoint> {
    let n = Rational::from_integer(y.norm());
    let t = x.q.mul(&y.q.conj())?;
    LatticePoint::lipschitz(
        t.coords().clone().map(|c| round_half_toward_zero(&(c / &n))),
        y.params().clone(),
    )
}

/// Returns (γ, θ) with n(y)·x = γ·y + n(y)·θ and n(θ) < n(y), where
/// γ = (x − θ)·ȳ. θ comes from rounding x·ȳ/n(y); when that remainder is not
/// small enough, θ = 0.
pub fn divide_with_scaled_remainder(
    x: &LatticePoint,
    y: &LatticePoint,
) -> Result<(LatticePoint, LatticePoint)> {
    require_lipschitz(&[x, y])?;
    if !in_universal_family(y.params()) {
        return Err(Error::OutOfDomain(format!(
            "{} is not one of the seven algebras with a universal norm form",
            y.params()
        )));
    }
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let delta = rounded_quotient(x, y)?;
    let mut theta = x.sub(&delta.mul(y)?)?;
    if theta.norm() >= y.norm() {
        theta = LatticePoint::from_ints([0; 4], y.params().clone())?;
    }
    let gamma = x.sub(&theta)?.mul(&y.conj())?;
    Ok((gamma, theta))
}

fn require_odd_hamilton(y: &LatticePoint) -> Result<()> {
    require_lipschitz(&[y])?;
    if !is_hamilton(y.params()) {
        return Err(Error::OutOfDomain(format!(
            "only defined in H(-1,-1), not {}",
            y.params()
        )));
    }
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if y.norm().is_even() {
        return Err(invalid(format!("{y} has even norm {}", y.norm())));
    }
    Ok(())
}

/// Returns (γ, θ) with x = γ·y + θ and n(θ) < n(y) in H(−1,−1), for odd n(y).
pub fn right_divide(x: &LatticePoint, y: &LatticePoint) -> Result<(LatticePoint, LatticePoint)> {
    require_lipschitz(&[x])?;
    require_odd_hamilton(y)?;
    if x.params() != y.params() {
        return Err(Error::ParamsMismatch {
            left: x.params().to_string(),
            right: y.params().to_string(),
        });
    }
    let gamma = rounded_quotient(x, y)?;
    let theta = x.sub(&gamma.mul(y)?)?;
    Ok((gamma, theta))
}

/// Whether x − y = θ·φ for a Lipschitz θ.
pub fn is_right_congruent(x: &LatticePoint, y: &LatticePoint, phi: &LatticePoint) -> Result<bool> {
    require_lipschitz(&[x, y])?;
    require_odd_hamilton(phi)?;
    let n = Rational::from_integer(phi.norm());
    let t = x.sub(y)?.quaternion().mul(&phi.q.conj())?;
    Ok(t.coords().iter().all(|c| (c / &n).is_integer()))
}

/// Upper-triangular basis of the lattice {θ·φ : θ Lipschitz} in Z⁴, with
/// positive pivots.
fn right_ideal_basis(phi: &[i64; 4]) -> Result<[[i64; 4]; 4]> {
    let params = AlgebraParams::rational(1, 1);
    let p = LatticePoint::from_ints(*phi, params.clone())?;
    let mut rows = [[0i64; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        let mut e = [0i64; 4];
        e[i] = 1;
        let r = LatticePoint::from_ints(e, params.clone())?.mul(&p)?;
        let c = r.integer_coords().expect("Lipschitz product");
        for (dst, src) in row.iter_mut().zip(c) {
            *dst = src
                .to_i64()
                .ok_or_else(|| Error::SearchTooLarge(format!("{phi:?} too large")))?;
        }
    }
    for col in 0..4 {
        loop {
            let pivot = (col..4)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(pivot) = pivot else {
                return Err(invalid("φ must be nonzero"));
            };
            rows.swap(col, pivot);
            let mut done = true;
            for r in col + 1..4 {
                let q = rows[r][col].div_euclid(rows[col][col]);
                for k in 0..4 {
                    rows[r][k] -= q * rows[col][k];
                }
                done &= rows[r][col] == 0;
            }
            if done {
                break;
            }
        }
        if rows[col][col] < 0 {
            rows[col].iter_mut().for_each(|v| *v = -*v);
        }
    }
    Ok(rows)
}

fn reduce(mut v: [i64; 4], basis: &[[i64; 4]; 4]) -> [i64; 4] {
    for (i, row) in basis.iter().enumerate() {
        let q = v[i].div_euclid(row[i]);
        for k in 0..4 {
            v[k] -= q * row[k];
        }
    }
    v
}

/// Number of right-congruence classes modulo φ met by the Lipschitz points
/// with coordinates in [0, side).
pub fn count_residues(phi: &LatticePoint, side: u64) -> Result<u64> {
    require_odd_hamilton(phi)?;
    if side > MAX_RESIDUE_BOX {
        return Err(Error::SearchTooLarge(format!(
            "box side {side} exceeds {MAX_RESIDUE_BOX}"
        )));
    }
    let coords = phi
        .integer_coords()
        .expect("Lipschitz point")
        .map(|c| c.to_i64().unwrap_or(i64::MAX));
    let basis = right_ideal_basis(&coords)?;
    let s = side as i64;
    let mut classes = HashSet::new();
    for a in 0..s {
        for b in 0..s {
            for c in 0..s {
                for d in 0..s {
                    classes.insert(reduce([a, b, c, d], &basis));
                }
            }
        }
    }
    Ok(classes.len() as u64)
}

pub fn is_unit(q: &LatticePoint) -> bool {
    q.norm().is_one()
}

/// Prime in the sense that the norm is a rational prime. Meaningful for the
/// seven algebras with a universal norm form.
pub fn is_prime_quaternion(q: &LatticePoint) -> bool {
    is_prime(&q.norm())
}
