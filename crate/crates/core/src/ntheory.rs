//! Elementary number theory over the integers: primality, factorisation,
//! integer square roots and the Legendre symbol.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::scalars::Integer;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Miller-Rabin with the first 13 prime bases is exact below this value
/// (Sorenson and Webster, 2015).
const MR_EXACT_BOUND: &str = "3317044064679887385961981";

/// ⌊√n⌋ for n ≥ 0.
pub fn isqrt(n: &Integer) -> Result<Integer> {
    if n.is_negative() {
        return Err(invalid(format!("isqrt of negative number {n}")));
    }
    Ok(n.sqrt())
}

pub fn is_perfect_square(n: &Integer) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Exact primality test.
///
/// Deterministic Miller-Rabin below 3.3·10²⁴; above that the answer comes
/// from trial division, which is exact but only practical for small factors.
pub fn is_prime(n: &Integer) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let bound: BigInt = MR_EXACT_BOUND.parse().expect("constant parses");
    if *n < bound {
        let bases: Vec<BigInt> = SMALL_PRIMES[..13].iter().map(|&b| b.into()).collect();
        miller_rabin(n, &bases)
    } else {
        trial_division_is_prime(n)
    }
}

fn miller_rabin(n: &BigInt, bases: &[BigInt]) -> bool {
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in bases {
        let a = a.mod_floor(n);
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trial_division_is_prime(n: &BigInt) -> bool {
    let limit = n.sqrt();
    let mut d = BigInt::from(101);
    while d <= limit {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation of |n| as (prime, exponent) pairs in increasing order.
pub fn factorize(n: &Integer) -> Result<Vec<(Integer, u32)>> {
    if n.is_zero() {
        return Err(invalid("cannot factor zero"));
    }
    let mut rest = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut d = 2u32;
    while d < 10_000 && rest > BigInt::one() {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            primes.push(bd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        split_large(rest, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

fn split_large(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(&n);
    split_large(&n / &d, out);
    split_large(d, out);
}

/// Brent's variant of Pollard's rho; returns a nontrivial divisor of a
/// composite n with no factors below 10⁴.
fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..r.min(128) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()).mod_floor(n);
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

/// Writes n = p^v · u with p ∤ u; n must be nonzero.
pub fn split_valuation(n: &Integer, p: &Integer) -> (u32, Integer) {
    let mut v = 0;
    let mut u = n.clone();
    while !u.is_zero() && (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol (a/p) by Euler's criterion.
pub fn legendre(a: &Integer, p: &Integer) -> Result<i32> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    let exp = (p - 1u32) >> 1;
    let r = a.mod_floor(p).modpow(&exp, p);
    Ok(if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        -1
    })
}

/// Converts to u64, reporting values that do not fit as a search-size error.
pub(crate) fn to_u64(n: &Integer, what: &str) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::SearchTooLarge(format!("{what} = {n} does not fit in 64 bits")))
}
