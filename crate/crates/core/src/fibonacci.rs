//! Fibonacci and Lucas numbers, classical identities, Pisano periods, and
//! Fibonacci quaternions with permuted indices in H_Q(−1,−2).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::quaternion::{AlgebraParams, RationalQuaternion};
use crate::scalars::{Integer, Rational};

/// Largest modulus accepted by `pisano_period`.
pub const MAX_PISANO_MODULUS: u64 = 100_000_000;

/// (f_n, f_{n+1}) by fast doubling.
fn fib_pair(n: u64) -> (Integer, Integer) {
    if n == 0 {
        return (Integer::zero(), Integer::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

const TABLE_SIZE: usize = 1024;

fn table() -> &'static [Integer] {
    static TABLE: OnceLock<Vec<Integer>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![Integer::zero(), Integer::one()];
        while t.len() < TABLE_SIZE {
            let n = t.len();
            t.push(&t[n - 1] + &t[n - 2]);
        }
        t
    })
}

pub fn fib_u(n: u64) -> Integer {
    match usize::try_from(n) {
        Ok(i) if i < TABLE_SIZE => table()[i].clone(),
        _ => fib_pair(n).0,
    }
}

pub fn lucas_u(n: u64) -> Integer {
    let (f, g) = fib_pair(n);
    g * 2 - f
}

fn index(n: i64) -> Result<u64> {
    u64::try_from(n).map_err(|_| invalid(format!("negative index {n}")))
}

pub fn fib(n: i64) -> Result<Integer> {
    Ok(fib_u(index(n)?))
}

pub fn lucas(n: i64) -> Result<Integer> {
    Ok(lucas_u(index(n)?))
}

/// f_{n+1}·f_{n−1} − f_n² = (−1)^n for n ≥ 1.
pub fn cassini(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(invalid("Cassini's identity needs n >= 1"));
    }
    let lhs = fib_u(n + 1) * fib_u(n - 1) - fib_u(n) * fib_u(n);
    let rhs = if n % 2 == 0 { Integer::one() } else { -Integer::one() };
    Ok(lhs == rhs)
}

/// The identities that `check_identity` can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibIdentity {
    /// f_n² + f_{n+1}² = f_{2n+1}; args (n).
    SumOfSquares,
    /// f_{n+3}² = 2f_{n+2}² + 2f_{n+1}² − f_n², n ≥ 1; args (n).
    SquareRecurrence,
    /// f_{n−1}f_m + f_n f_{m+1} = f_{n+m}, n, m ≥ 1; args (n, m).
    Addition,
    /// f_n f_m − f_{n−k} f_{m+k} = (−1)^{n−k} f_k f_{m+k−n}, k ≤ n ≤ m + k;
    /// args (n, m, k).
    Vajda,
    /// f_n f_l + f_{n+3} f_{l+3} = 2 f_{n+l+3}; args (n, l).
    ShiftByThree,
}

impl FibIdentity {
    pub const ALL: [FibIdentity; 5] = [
        FibIdentity::SumOfSquares,
        FibIdentity::SquareRecurrence,
        FibIdentity::Addition,
        FibIdentity::Vajda,
        FibIdentity::ShiftByThree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FibIdentity::SumOfSquares => "sum-of-squares",
            FibIdentity::SquareRecurrence => "square-recurrence",
            FibIdentity::Addition => "addition",
            FibIdentity::Vajda => "vajda",
            FibIdentity::ShiftByThree => "shift-by-three",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FibIdentity::SumOfSquares | FibIdentity::SquareRecurrence => 1,
            FibIdentity::Addition | FibIdentity::ShiftByThree => 2,
            FibIdentity::Vajda => 3,
        }
    }
}

impl fmt::Display for FibIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FibIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|id| id.name()).collect();
                Error::Parse(format!("unknown identity {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

/// Evaluates both sides of an identity and reports whether they agree.
pub fn check_identity(id: FibIdentity, args: &[u64]) -> Result<bool> {
    if args.len() != id.arity() {
        return Err(invalid(format!(
            "{id} takes {} argument(s), got {}",
            id.arity(),
            args.len()
        )));
    }
    let f = fib_u;
    let sq = |n: u64| f(n) * f(n);
    Ok(match id {
        FibIdentity::SumOfSquares => {
            let n = args[0];
            sq(n) + sq(n + 1) == f(2 * n + 1)
        }
        FibIdentity::SquareRecurrence => {
            let n = args[0];
            if n == 0 {
                return Err(invalid("square-recurrence needs n >= 1"));
            }
            sq(n + 3) == sq(n + 2) * 2 + sq(n + 1) * 2 - sq(n)
        }
        FibIdentity::Addition => {
            let (n, m) = (args[0], args[1]);
            if n == 0 || m == 0 {
                return Err(invalid("addition needs n, m >= 1"));
            }
            f(n - 1) * f(m) + f(n) * f(m + 1) == f(n + m)
        }
        FibIdentity::Vajda => {
            let (n, m, k) = (args[0], args[1], args[2]);
            if k > n {
                return Err(invalid("vajda needs k <= n"));
            }
            if m + k < n {
                return Err(invalid("vajda needs m + k >= n (no negative indices)"));
            }
            let sign = if (n - k) % 2 == 0 { Integer::one() } else { -Integer::one() };
            f(n) * f(m) - f(n - k) * f(m + k) == sign * f(k) * f(m + k - n)
        }
        FibIdentity::ShiftByThree => {
            let (n, l) = (args[0], args[1]);
            f(n) * f(l) + f(n + 3) * f(l + 3) == f(n + l + 3) * 2
        }
    })
}

/// Least π > 0 with f_π ≡ 0 and f_{π+1} ≡ 1 (mod m).
pub fn pisano_period(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(invalid(format!("modulus must be at least 2, got {m}")));
    }
    if m > MAX_PISANO_MODULUS {
        return Err(Error::SearchTooLarge(format!(
            "modulus {m} exceeds {MAX_PISANO_MODULUS}"
        )));
    }
    let (mut a, mut b) = (0u64, 1u64);
    let mut period = 0u64;
    loop {
        (a, b) = (b, (a + b) % m);
        period += 1;
        if a == 0 && b == 1 {
            return Ok(period);
        }
    }
}

/// σ(n + i) = n + offsets[i] for a permutation `offsets` of {0, 1, 2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaPermutation {
    offsets: [u8; 4],
}

impl SigmaPermutation {
    pub const IDENTITY: SigmaPermutation = SigmaPermutation { offsets: [0, 1, 2, 3] };

    /// The permutations whose quaternions have norm f_{2n+3}.
    pub const NORM_LAW: [SigmaPermutation; 4] = [
        SigmaPermutation { offsets: [3, 0, 1, 2] },
        SigmaPermutation { offsets: [0, 3, 1, 2] },
        SigmaPermutation { offsets: [3, 0, 2, 1] },
        SigmaPermutation { offsets: [0, 3, 2, 1] },
    ];

    pub fn new(offsets: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &o in &offsets {
            if o > 3 || seen[o as usize] {
                return Err(invalid(format!("{offsets:?} is not a permutation of 0..=3")));
            }
            seen[o as usize] = true;
        }
        Ok(Self { offsets })
    }

    pub fn offsets(&self) -> [u8; 4] {
        self.offsets
    }

    pub fn apply(&self, n: u64, i: usize) -> u64 {
        n + u64::from(self.offsets[i])
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<SigmaPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Ok(s) = Self::new([a, b, c, d]) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SigmaPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.offsets;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl FromStr for SigmaPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected four comma-separated offsets, got {s:?}")));
        }
        let mut offsets = [0u8; 4];
        for (o, p) in offsets.iter_mut().zip(parts) {
            *o = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad offset {p:?}")))?;
        }
        Self::new(offsets)
    }
}

/// (1/2)(f_{σ(n)} + f_{σ(n+1)}e2 + f_{σ(n+2)}e3 + f_{σ(n+3)}e4) in H_Q(−1,−2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibQuaternion {
    pub n: u64,
    pub sigma: SigmaPermutation,
    pub value: RationalQuaternion,
}

fn fib_params() -> AlgebraParams {
    AlgebraParams::rational(1, 2)
}

fn half_fib_quaternion(n: u64, sigma: &SigmaPermutation, signs: [i64; 4]) -> RationalQuaternion {
    let coords: [Rational; 4] = std::array::from_fn(|i| {
        Rational::new(fib_u(sigma.apply(n, i)) * signs[i], 2.into())
    });
    RationalQuaternion::new(coords, fib_params()).expect("rational coordinates")
}

pub fn fib_hurwitz(n: u64, sigma: SigmaPermutation) -> Result<FibQuaternion> {
    if n == 0 {
        return Err(invalid("index must be at least 1"));
    }
    Ok(FibQuaternion {
        n,
        sigma,
        value: half_fib_quaternion(n, &sigma, [1; 4]),
    })
}

/// F′_n·F″_l for σ = (3,0,1,2), with F′ = (1/2)(f_{σ(n)} − f_{σ(n+1)}e2 −
/// f_{σ(n+2)}e3 + f_{σ(n+3)}e4) and F″ = (1/2)(f_{σ(l)} + f_{σ(l+1)}e2 +
/// f_{σ(l+2)}e3 − f_{σ(l+3)}e4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialProduct {
    pub n: u64,
    pub l: u64,
    pub product: RationalQuaternion,
    pub trace: Rational,
    /// product − trace/2, computed directly.
    pub residual: RationalQuaternion,
    /// ((−1)^n/2)(f_{k+1}e2 + f_k e4), k = l − n.
    pub closed_form: RationalQuaternion,
}

impl SpecialProduct {
    pub fn trace_matches(&self) -> bool {
        self.trace == Rational::from_integer(fib_u(self.n + self.l + 3) * 2)
    }

    pub fn closed_form_matches(&self) -> bool {
        self.residual == self.closed_form
    }
}

pub fn special_product(n: u64, l: u64) -> Result<SpecialProduct> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if n >= l {
        return Err(invalid(format!("need n < l, got n = {n}, l = {l}")));
    }
    let sigma = SigmaPermutation::NORM_LAW[0];
    let left = half_fib_quaternion(n, &sigma, [1, -1, -1, 1]);
    let right = half_fib_quaternion(l, &sigma, [1, 1, 1, -1]);
    let product = left.mul(&right)?;
    let trace = product.trace();
    let half_trace = RationalQuaternion::scalar(&trace / Rational::from_integer(2.into()), fib_params())?;
    let residual = product.sub(&half_trace)?;
    let k = l - n;
    let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    let half = |x: Integer| Rational::new(x * sign, 2.into());
    let closed_form = RationalQuaternion::new(
        [Rational::zero(), half(fib_u(k + 1)), Rational::zero(), half(fib_u(k))],
        fib_params(),
    )?;
    Ok(SpecialProduct {
        n,
        l,
        product,
        trace,
        residual,
        closed_form,
    })
}
