//! Split/division classification of quaternion algebras via Hilbert
//! symbols, reduced discriminants, and conic points over Q and Q(i).

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer as _, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::ntheory::{factorize, is_prime, legendre, split_valuation};
use crate::quaternion::AlgebraParams;
use crate::scalars::{BaseField, GaussianRational, Integer, Rational};

/// A place of Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Integer),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("infinity"),
        }
    }
}

/// Arguments of a Hilbert symbol (b, c)_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertArgs {
    pub b: Integer,
    pub c: Integer,
    pub place: Place,
}

impl HilbertArgs {
    pub fn evaluate(&self) -> Result<i32> {
        hilbert_symbol(&self.b, &self.c, &self.place)
    }
}

/// The Hilbert symbol (b, c)_p: −1 exactly when bx² + cy² = z² has no
/// nontrivial solution over Q_p (or over R at the infinite place).
pub fn hilbert_symbol(b: &Integer, c: &Integer, place: &Place) -> Result<i32> {
    if b.is_zero() || c.is_zero() {
        return Err(invalid("Hilbert symbol arguments must be nonzero"));
    }
    let p = match place {
        Place::Infinity => {
            return Ok(if b.is_negative() && c.is_negative() { -1 } else { 1 });
        }
        Place::Finite(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let (alpha, u) = split_valuation(b, p);
    let (beta, v) = split_valuation(c, p);
    if *p == BigInt::from(2) {
        // (−1)^(ε(u)ε(v) + α·ω(v) + β·ω(u)) with ε(x) = (x−1)/2, ω(x) = (x²−1)/8 mod 2
        let eps = |x: &BigInt| u32::from(x.mod_floor(&BigInt::from(4)) == BigInt::from(3));
        let omega = |x: &BigInt| {
            let r = x.mod_floor(&BigInt::from(8));
            u32::from(r == BigInt::from(3) || r == BigInt::from(5))
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    // (−1)^(αβε(p)) · (u/p)^β · (v/p)^α
    let eps_p = u32::from(p.mod_floor(&BigInt::from(4)) == BigInt::from(3));
    let mut s = if (alpha * beta * eps_p) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(&u, p)?;
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Split,
    Division,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Split => f.write_str("Split"),
            Verdict::Division => f.write_str("Division"),
        }
    }
}

/// Ramification data of H_Q(−b,−c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Finite ramified primes in increasing order.
    pub ramified_primes: Vec<Integer>,
    pub reduced_discriminant: Integer,
    pub ramified_at_infinity: bool,
}

impl ClassificationResult {
    /// Number of ramified places including infinity; always even.
    pub fn ramified_place_count(&self) -> usize {
        self.ramified_primes.len() + usize::from(self.ramified_at_infinity)
    }
}

/// Reduced discriminant of H_Q(−b,−c). Only primes dividing 2bc can ramify.
pub fn reduced_discriminant(b: &Integer, c: &Integer) -> Result<ClassificationResult> {
    if b.is_zero() || c.is_zero() {
        return Err(invalid("algebra parameters must be nonzero"));
    }
    let (nb, nc) = (-b, -c);
    let mut ramified = Vec::new();
    for (p, _) in factorize(&(BigInt::from(2) * b * c))? {
        if hilbert_symbol(&nb, &nc, &Place::Finite(p.clone()))? == -1 {
            ramified.push(p);
        }
    }
    let ramified_at_infinity = hilbert_symbol(&nb, &nc, &Place::Infinity)? == -1;
    let disc = ramified.iter().fold(BigInt::one(), |acc, p| acc * p);
    let verdict = if ramified.is_empty() && !ramified_at_infinity {
        Verdict::Split
    } else {
        Verdict::Division
    };
    Ok(ClassificationResult {
        verdict,
        ramified_primes: ramified,
        reduced_discriminant: disc,
        ramified_at_infinity,
    })
}

pub fn classify(params: &AlgebraParams) -> Result<ClassificationResult> {
    require_rational(params)?;
    reduced_discriminant(params.b(), params.c())
}

fn require_rational(params: &AlgebraParams) -> Result<()> {
    if params.field() != BaseField::Rationals {
        return Err(Error::OutOfDomain(format!(
            "isomorphism testing is only supported over Q, got {params}"
        )));
    }
    Ok(())
}

/// Two rational quaternion algebras are isomorphic iff their reduced
/// discriminants agree.
pub fn are_isomorphic(a1: &AlgebraParams, a2: &AlgebraParams) -> Result<bool> {
    require_rational(a1)?;
    require_rational(a2)?;
    Ok(classify(a1)?.reduced_discriminant == classify(a2)?.reduced_discriminant)
}

/// The solution (a² − mb², 2ab, a² + mb²) of x² + my² = z².
pub fn conic_point(m: &Integer, a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let a2 = a * a;
    let mb2 = m * b * b;
    (&a2 - &mb2, BigInt::from(2) * a * b, a2 + mb2)
}

/// The first `count` distinct solutions of x² + my² = z² produced by the
/// parametrisation, walking (a, b) with a ≥ 1, b ≥ 0 by increasing a + b.
pub fn conic_solutions(m: &Integer, count: usize) -> Result<Vec<(Integer, Integer, Integer)>> {
    if !m.is_positive() {
        return Err(invalid(format!("m must be positive, got {m}")));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut s = 1i64;
    while out.len() < count {
        for b in 0..s {
            let a = s - b;
            let t = conic_point(m, &a.into(), &b.into());
            if seen.insert(t.clone()) {
                out.push(t);
                if out.len() == count {
                    break;
                }
            }
        }
        s += 1;
    }
    Ok(out)
}

/// True iff the point is nonzero and b·x² + c·y² = z² holds exactly in Q(i).
pub fn verify_conic_point(b: &Integer, c: &Integer, point: &[GaussianRational; 3]) -> bool {
    use num_traits::Zero as _;
    if point.iter().all(|g| g.is_zero()) {
        return false;
    }
    let [x, y, z] = point.clone();
    let b = GaussianRational::from(Rational::from_integer(b.clone()));
    let c = GaussianRational::from(Rational::from_integer(c.clone()));
    b * x.clone() * x + c * y.clone() * y == z.clone() * z
}

/// Outcome of the bounded witness search over Z[i].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaussianClassification {
    /// A nonzero point of −b·x² − c·y² = z², so H_Q(i)(−b,−c) splits.
    SplitWitnessed([GaussianRational; 3]),
    /// No point of height ≤ bound exists. This does not prove the algebra
    /// is a division algebra.
    NoWitnessFound { bound: u32 },
}

type GaussInt = (i128, i128);

fn gsq((a, b): GaussInt) -> GaussInt {
    (a * a - b * b, 2 * a * b)
}

fn height(g: GaussInt) -> i128 {
    g.0.abs().max(g.1.abs())
}

/// Both square roots of w in Z[i], if w is a square.
fn gaussian_sqrt(w: GaussInt) -> Option<[GaussInt; 2]> {
    let (re, im) = w;
    let n = re.checked_mul(re)?.checked_add(im.checked_mul(im)?)?;
    let r = (n as u128).sqrt() as i128;
    if r * r != n {
        return None;
    }
    if (re + r) % 2 != 0 {
        return None;
    }
    let (a2, b2) = ((r + re) / 2, (r - re) / 2);
    let (a, b) = ((a2 as u128).sqrt() as i128, (b2 as u128).sqrt() as i128);
    if a * a != a2 || b * b != b2 {
        return None;
    }
    let z = if im < 0 { (a, -b) } else { (a, b) };
    if gsq(z) != w {
        return None;
    }
    Some([z, (-z.0, -z.1)])
}

/// Searches Gaussian-integer triples by increasing height, lexicographically
/// within a height, for a nonzero point of −b·x² − c·y² = z².
pub fn classify_over_gaussian(b: &Integer, c: &Integer, search_bound: u32) -> Result<GaussianClassification> {
    let to_small = |v: &Integer, name: &str| {
        v.to_i128()
            .filter(|x| x.abs() < (1i128 << 60))
            .ok_or_else(|| Error::SearchTooLarge(format!("{name} = {v} is too large for the witness search")))
    };
    let (b, c) = (to_small(b, "b")?, to_small(c, "c")?);
    if b == 0 || c == 0 {
        return Err(invalid("algebra parameters must be nonzero"));
    }
    for h in 0..=i128::from(search_bound) {
        for xr in -h..=h {
            for xi in -h..=h {
                for yr in -h..=h {
                    for yi in -h..=h {
                        let (x, y) = ((xr, xi), (yr, yi));
                        if x == (0, 0) && y == (0, 0) {
                            continue;
                        }
                        let (x2, y2) = (gsq(x), gsq(y));
                        let w = (-b * x2.0 - c * y2.0, -b * x2.1 - c * y2.1);
                        let Some(roots) = gaussian_sqrt(w) else {
                            continue;
                        };
                        let hxy = height(x).max(height(y));
                        let z = roots
                            .into_iter()
                            .filter(|&z| height(z) <= h && hxy.max(height(z)) == h)
                            .min();
                        if let Some(z) = z {
                            let g = |v: GaussInt| {
                                GaussianRational::new(
                                    Rational::from_integer(v.0.into()),
                                    Rational::from_integer(v.1.into()),
                                )
                            };
                            return Ok(GaussianClassification::SplitWitnessed([g(x), g(y), g(z)]));
                        }
                    }
                }
            }
        }
    }
    Ok(GaussianClassification::NoWitnessFound { bound: search_bound })
}

/// The seven (b, c) pairs with (1, b, c, bc) universal.
pub const UNIVERSAL_PAIRS: [(i64, i64); 7] = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (2, 5)];
