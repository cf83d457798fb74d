//! Acceptance gate. Runs every criterion, prints one line per criterion and
//! exits nonzero on any unexpected outcome.
//!
//! Two criteria state values that exact computation contradicts. They are
//! checked verbatim, reported as FAIL with the observed values, and listed in
//! `KNOWN_DISCREPANCIES`; the run only fails if one of them starts passing or
//! any other criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::{One, Zero};
use quatnorm::classification::{
    are_isomorphic, classify_over_gaussian, reduced_discriminant, verify_conic_point,
    GaussianClassification, UNIVERSAL_PAIRS,
};
use quatnorm::fibonacci::{
    cassini, check_identity, fib_hurwitz, fib_u, special_product, FibIdentity, SigmaPermutation,
};
use quatnorm::forms::{
    compose, represent_rational, verify_universal, Composition, FormTuple,
    LIOUVILLE_PEPIN_TUPLES, NORM_FORM_TUPLES,
};
use quatnorm::lattice::{count_residues, divide_with_scaled_remainder, right_divide, LatticePoint};
use quatnorm::monoid::{default_max_steps, fib_sequence, MonoidElement, MonoidVariant};
use quatnorm::subring::{residue_system, to_residue, SubringElement};
use quatnorm::{AlgebraParams, GaussianRational, Integer, Quaternion, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Criteria whose stated values disagree with exact computation.
const KNOWN_DISCREPANCIES: [(u32, &str); 2] = [
    (3, "the least number missed by (1,1,1,16) is 7, not 15"),
    (11, "product - trace/2 is (-1)^n f_k e2, not ((-1)^n/2)(f_{k+1}e2 + f_k e4)"),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn discriminants() -> Outcome {
    let start = Instant::now();
    let expected = [2, 2, 3, 2, 2, 2, 5];
    for ((b, c), want) in UNIVERSAL_PAIRS.iter().zip(expected) {
        let r = reduced_discriminant(&(*b).into(), &(*c).into()).map_err(|e| e.to_string())?;
        ensure(r.reduced_discriminant == want.into(), || {
            format!("H(-{b},-{c}): got {}, want {want}", r.reduced_discriminant)
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{expected:?} in {:?}", start.elapsed()))
}

fn isomorphism_classes() -> Outcome {
    let algebras: Vec<_> = UNIVERSAL_PAIRS
        .iter()
        .map(|&(b, c)| AlgebraParams::rational(b, c))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if are_isomorphic(a, &algebras[class[0]]).map_err(|e| e.to_string())? {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sizes == [5, 1, 1], || format!("class sizes {sizes:?}"))?;
    Ok(format!("class sizes {sizes:?}"))
}

fn universality() -> Outcome {
    let start = Instant::now();
    for coeffs in NORM_FORM_TUPLES.iter().chain(&LIOUVILLE_PEPIN_TUPLES) {
        let f = FormTuple::from_ints(*coeffs).map_err(|e| e.to_string())?;
        let r = verify_universal(&f, 10_000).map_err(|e| e.to_string())?;
        ensure(r.universal, || {
            format!("{f} misses {:?}", r.counterexample)
        })?;
    }
    let f = FormTuple::from_ints([1, 1, 1, 16]).map_err(|e| e.to_string())?;
    let r = verify_universal(&f, 10_000).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60))?;
    ensure(!r.universal && r.counterexample == Some(15), || {
        format!(
            "18 universal forms confirmed to 10000; (1,1,1,16) counterexample is {:?}, expected 15",
            r.counterexample
        )
    })?;
    Ok(format!("18 forms universal to 10000, (1,1,1,16) misses 15, {:?}", start.elapsed()))
}

fn norm_surjectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (b, c) in UNIVERSAL_PAIRS {
        let f = FormTuple::norm_form(&b.into(), &c.into()).map_err(|e| e.to_string())?;
        for _ in 0..500 {
            let m = rat(rng.gen_range(1..=1000), rng.gen_range(1..=1000));
            let xs = represent_rational(&m, &b.into(), &c.into()).map_err(|e| e.to_string())?;
            ensure(f.evaluate_rational(&xs) == m, || format!("{m} by {f}"))?;
        }
    }
    Ok("3500 rationals represented exactly".into())
}

fn composition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params = AlgebraParams::rational(1, 2);
    let f = FormTuple::from_ints([1, 1, 2, 2]).map_err(|e| e.to_string())?;
    let mut tuple = || -> [Integer; 4] { std::array::from_fn(|_| rng.gen_range(-1000i64..=1000).into()) };
    for _ in 0..10_000 {
        let (x, y) = (tuple(), tuple());
        let u = compose(&x, &y, Composition::Direct);
        let q = |v: &[Integer; 4]| {
            Quaternion::new(v.clone().map(Rational::from_integer), params.clone()).expect("rational")
        };
        let prod = q(&x).mul(&q(&y)).map_err(|e| e.to_string())?;
        ensure(prod == q(&u), || format!("x = {x:?}, y = {y:?}"))?;
        let target = f.evaluate(&x) * f.evaluate(&y);
        ensure(f.evaluate(&u) == target, || format!("direct identity at {x:?}, {y:?}"))?;
        let w = compose(&x, &y, Composition::Twisted);
        ensure(f.evaluate(&w) == target, || format!("twisted identity at {x:?}, {y:?}"))?;
    }
    Ok("10000 pairs".into())
}

fn division() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let h = AlgebraParams::rational(1, 1);
    let mut odd = 0;
    while odd < 10_000 {
        let y: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-30..=30));
        let y = LatticePoint::from_ints(y, h.clone()).map_err(|e| e.to_string())?;
        if y.norm().is_even() {
            continue;
        }
        let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-10_000..=10_000));
        let x = LatticePoint::from_ints(x, h.clone()).map_err(|e| e.to_string())?;
        let (g, t) = right_divide(&x, &y).map_err(|e| e.to_string())?;
        let back = g.mul(&y).and_then(|gy| gy.add(&t)).map_err(|e| e.to_string())?;
        ensure(back == x && t.norm() < y.norm(), || format!("x = {x}, y = {y}"))?;
        odd += 1;
    }
    for (b, c) in UNIVERSAL_PAIRS {
        let p = AlgebraParams::rational(b, c);
        let mut done = 0;
        while done < 1000 {
            let y: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-30..=30));
            if y == [0; 4] {
                continue;
            }
            let y = LatticePoint::from_ints(y, p.clone()).map_err(|e| e.to_string())?;
            let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-10_000..=10_000));
            let x = LatticePoint::from_ints(x, p.clone()).map_err(|e| e.to_string())?;
            let (g, t) = divide_with_scaled_remainder(&x, &y).map_err(|e| e.to_string())?;
            let n = LatticePoint::lipschitz([y.norm(), 0.into(), 0.into(), 0.into()], p.clone())
                .map_err(|e| e.to_string())?;
            let lhs = n.mul(&x).map_err(|e| e.to_string())?;
            let rhs = g
                .mul(&y)
                .and_then(|gy| gy.add(&n.mul(&t)?))
                .map_err(|e| e.to_string())?;
            ensure(lhs == rhs && t.norm() < y.norm(), || format!("{p}: x = {x}, y = {y}"))?;
            done += 1;
        }
    }
    Ok("10000 right divisions, 7 x 1000 scaled divisions".into())
}

fn residue_rings() -> Outcome {
    let s = SubringElement::from_ints;
    let r = residue_system(&s(-1, 2)).map_err(|e| e.to_string())?;
    ensure(r.representatives() == [s(0, 0), s(1, 0), s(0, 1)], || {
        format!("classes mod -1+2v: {:?}", r.representatives())
    })?;
    let r7 = residue_system(&s(1, 2)).map_err(|e| e.to_string())?;
    ensure(r7.len() == 7, || format!("{} classes mod 1+2v", r7.len()))?;
    // m = φ·κ + ρ with n(ρ) < n(φ)
    let relations = [
        (2, s(-1, 2), s(0, -1), s(0, 1)),
        (2, s(1, 2), s(1, -1), s(-1, 1)),
        (3, s(1, 2), s(1, -1), s(0, 1)),
        (4, s(1, 2), s(1, -1), s(1, 1)),
        (5, s(1, 2), s(2, -2), s(-1, 2)),
        (6, s(1, 2), s(2, -2), s(0, 2)),
    ];
    for (m, phi, kappa, rho) in relations {
        let rhs = phi.mul(&kappa).add(&rho);
        ensure(rhs == s(m, 0) && rho.norm() < phi.norm(), || {
            format!("{m} = ({phi})({kappa}) + {rho}")
        })?;
        let res = to_residue(&rho, &phi).map_err(|e| e.to_string())?;
        ensure(res == m.into(), || format!("{rho} maps to {res}, not {m}"))?;
    }
    let mut moduli = 0;
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            let phi = s(a, b);
            let n = phi.norm();
            if a.gcd(&b) != 1 || n <= Integer::one() || n > 50.into() {
                continue;
            }
            let r = residue_system(&phi).map_err(|e| e.to_string())?;
            let k = r.len();
            let add = r.add_table().map_err(|e| e.to_string())?;
            let mul = r.mul_table().map_err(|e| e.to_string())?;
            for i in 0..k {
                for j in 0..k {
                    ensure(add[i][j] == (i + j) % k && mul[i][j] == (i * j) % k, || {
                        format!("tables mod {phi} at ({i}, {j})")
                    })?;
                }
            }
            moduli += 1;
        }
    }
    Ok(format!("6 relations, tables for {moduli} moduli"))
}

fn quotient_cardinality() -> Outcome {
    let start = Instant::now();
    let h = AlgebraParams::rational(1, 1);
    let cases: [[i64; 4]; 6] = [
        [1, 1, 1, 0],
        [2, 1, 0, 0],
        [2, 2, 1, 0],
        [3, 0, 0, 0],
        [3, 2, 0, 0],
        [2, 2, 2, 1],
    ];
    let mut seen = Vec::new();
    for c in cases {
        let phi = LatticePoint::from_ints(c, h.clone()).map_err(|e| e.to_string())?;
        let n = u64::try_from(phi.norm()).expect("small norm");
        let count = count_residues(&phi, n).map_err(|e| e.to_string())?;
        ensure(count == n * n, || format!("{phi}: {count} classes, want {}", n * n))?;
        seen.push(n);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("norms {seen:?} in {:?}", start.elapsed()))
}

fn fibonacci_identities() -> Outcome {
    let check = |id: FibIdentity, args: &[u64]| -> Result<(), String> {
        let ok = check_identity(id, args).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{id} fails at {args:?}"))
    };
    let mut count = 0u64;
    for n in 0..=200u64 {
        check(FibIdentity::SumOfSquares, &[n])?;
        if n >= 1 {
            check(FibIdentity::SquareRecurrence, &[n])?;
        }
        count += 2;
        for m in 0..=200u64 {
            if n >= 1 && m >= 1 {
                check(FibIdentity::Addition, &[n, m])?;
            }
            check(FibIdentity::ShiftByThree, &[n, m])?;
            for k in 0..=n {
                if m + k >= n {
                    check(FibIdentity::Vajda, &[n, m, k])?;
                    count += 1;
                }
            }
            count += 2;
        }
    }
    for n in 1..=500 {
        ensure(cassini(n).map_err(|e| e.to_string())?, || format!("Cassini at {n}"))?;
    }
    Ok(format!("{count} instances, Cassini to 500"))
}

fn norm_law() -> Outcome {
    for sigma in SigmaPermutation::NORM_LAW {
        for n in 1..=50 {
            let norm = fib_hurwitz(n, sigma).map_err(|e| e.to_string())?.value.norm();
            ensure(norm == Rational::from_integer(fib_u(2 * n + 3)), || {
                format!("sigma {sigma}, n = {n}: norm {norm}")
            })?;
            ensure(!norm.is_zero() && !norm.is_one(), || format!("sigma {sigma}, n = {n}"))?;
        }
    }
    Ok("4 permutations x 50 indices".into())
}

fn special_products() -> Outcome {
    let mut mismatches = Vec::new();
    for n in 1..30 {
        for l in n + 1..=30 {
            let p = special_product(n, l).map_err(|e| e.to_string())?;
            ensure(p.trace_matches(), || format!("trace at n = {n}, l = {l}: {}", p.trace))?;
            if !p.closed_form_matches() {
                mismatches.push((n, l, p.residual.to_string(), p.closed_form.to_string()));
            }
        }
    }
    match mismatches.first() {
        None => Ok("435 pairs".into()),
        Some((n, l, got, want)) => Err(format!(
            "trace = 2f(n+l+3) holds for all 435 pairs; closed form fails for {} of them, first at n = {n}, l = {l}: residual {got}, stated {want}",
            mismatches.len()
        )),
    }
}

fn monoid() -> Outcome {
    use MonoidVariant::*;
    let y = |i| MonoidElement::new(i, 3).expect("k = 3");
    let tr = fib_sequence(y(2), y(4), TruncatedAdd, default_max_steps(3)).map_err(|e| e.to_string())?;
    ensure(
        tr.terms == [y(2), y(4), y(6), y(7), y(7)] && tr.t == 3 && tr.limit.is_top(),
        || format!("trace {:?}, t = {}", tr.terms, tr.t),
    )?;
    for k in 1..=4u32 {
        let top = MonoidElement::top_index(k);
        for i in 0..=top {
            for j in 0..=top {
                let (a, b) = (MonoidElement::new(i, k).unwrap(), MonoidElement::new(j, k).unwrap());
                let add = fib_sequence(a, b, TruncatedAdd, default_max_steps(k)).map_err(|e| e.to_string())?;
                if i != 0 && j != 0 {
                    ensure(add.limit.is_top(), || format!("k = {k}: ({i}, {j}) -> {}", add.limit))?;
                }
                let or = fib_sequence(a, b, ComponentwiseOr, default_max_steps(k)).map_err(|e| e.to_string())?;
                ensure(or.limit.index() == i | j, || format!("k = {k}: ({i}, {j}) -> {}", or.limit))?;
            }
        }
    }
    Ok("example trace, exhaustive k <= 4".into())
}

fn gaussian_witnesses() -> Outcome {
    let g = GaussianRational::from_ints;
    let cases = [
        (1, 1, [g(0, 3), g(0, 4), g(5, 0)]),
        (1, 2, [g(0, 1), g(0, 2), g(3, 0)]),
        (1, 3, [g(0, 1), g(0, 1), g(2, 0)]),
        (2, 2, [g(0, 1), g(0, 1), g(2, 0)]),
        (2, 3, [g(1, 0), g(0, 1), g(1, 0)]),
        (2, 4, [g(0, 2), g(1, 0), g(2, 0)]),
    ];
    for (b, c, pt) in &cases {
        let (b, c): (i64, i64) = (*b, *c);
        ensure(verify_conic_point(&(-b).into(), &(-c).into(), pt), || {
            format!("witness for ({b},{c}) rejected")
        })?;
    }
    let zero = [g(0, 0), g(0, 0), g(0, 0)];
    ensure(!verify_conic_point(&(-1).into(), &(-1).into(), &zero), || "zero accepted".into())?;
    let r = classify_over_gaussian(&2.into(), &5.into(), 8).map_err(|e| e.to_string())?;
    ensure(r == GaussianClassification::NoWitnessFound { bound: 8 }, || format!("(2,5): {r:?}"))?;
    Ok("6 witnesses, zero rejected, (2,5) has none to height 8".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 13] = [
        (1, "reduced discriminants", discriminants),
        (2, "isomorphism classes", isomorphism_classes),
        (3, "universal forms", universality),
        (4, "rational norm surjectivity", norm_surjectivity),
        (5, "composition identities", composition),
        (6, "division with remainder", division),
        (7, "residue rings", residue_rings),
        (8, "quotient cardinality", quotient_cardinality),
        (9, "Fibonacci identities", fibonacci_identities),
        (10, "Fibonacci quaternion norms", norm_law),
        (11, "special product closed form", special_products),
        (12, "stationary monoid sequences", monoid),
        (13, "Gaussian witnesses", gaussian_witnesses),
    ];
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let known = KNOWN_DISCREPANCIES.iter().find(|(k, _)| *k == id);
        match (&outcome, known) {
            (Ok(detail), None) => {
                passed += 1;
                println!("[PASS] {id:>2} {name}: {detail} ({took:.2?})");
            }
            (Ok(detail), Some(_)) => {
                passed += 1;
                unexpected.push(id);
                println!("[PASS] {id:>2} {name}: {detail} ({took:.2?}) -- listed as a known discrepancy, update the list");
            }
            (Err(why), Some((_, note))) => {
                println!("[FAIL] {id:>2} {name}: {why} ({took:.2?}) -- known discrepancy: {note}");
            }
            (Err(why), None) => {
                unexpected.push(id);
                println!("[FAIL] {id:>2} {name}: {why} ({took:.2?})");
            }
        }
    }
    println!(
        "acceptance: {passed}/13 passed, {} known discrepancies, {} unexpected",
        KNOWN_DISCREPANCIES.len(),
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcomes for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
