use proptest::prelude::*;
use quatnorm::forms::{compose, represent, represent_rational, Composition, FormTuple};
use quatnorm::{AlgebraParams, Integer, Quaternion, Rational};

fn tuple() -> impl Strategy<Value = [i64; 4]> {
    [-50i64..50, -50i64..50, -50i64..50, -50i64..50]
}

fn as_quaternion(x: &[Integer; 4]) -> Quaternion<Rational> {
    Quaternion::new(x.clone().map(Rational::from_integer), AlgebraParams::rational(1, 2)).unwrap()
}

fn coords(q: &Quaternion<Rational>) -> [Integer; 4] {
    q.coords().clone().map(|c| c.to_integer())
}

proptest! {
    #[test]
    fn direct_composition_is_multiplication(x in tuple(), y in tuple()) {
        let (x, y) = (x.map(Integer::from), y.map(Integer::from));
        let u = compose(&x, &y, Composition::Direct);
        prop_assert_eq!(&u, &coords(&as_quaternion(&x).mul(&as_quaternion(&y)).unwrap()));
        let f = FormTuple::from_ints([1, 1, 2, 2]).unwrap();
        prop_assert_eq!(f.evaluate(&u), f.evaluate(&x) * f.evaluate(&y));
    }

    #[test]
    fn twisted_composition(x in tuple(), y in tuple()) {
        let (x, y) = (x.map(Integer::from), y.map(Integer::from));
        let u = compose(&x, &y, Composition::Twisted);
        let f = FormTuple::from_ints([1, 1, 2, 2]).unwrap();
        prop_assert_eq!(f.evaluate(&u), f.evaluate(&x) * f.evaluate(&y));
        // Exactly y·x̄.
        let yx = as_quaternion(&y).mul(&as_quaternion(&x).conj()).unwrap();
        prop_assert_eq!(&u, &coords(&yx));
        // The sign-twisted product x′·y′ agrees except for the sign of the last coordinate.
        let [x1, x2, x3, x4] = x.clone();
        let [y1, y2, y3, y4] = y.clone();
        let xp = as_quaternion(&[x1, -x2, -x3, x4]);
        let yp = as_quaternion(&[y1, y2, y3, -y4]);
        let w = coords(&xp.mul(&yp).unwrap());
        prop_assert_eq!(&u[..3], &w[..3]);
        prop_assert_eq!(&u[3], &-w[3].clone());
    }

    #[test]
    fn representations_are_valid(n in 0u64..3000, idx in 0usize..7) {
        let f = FormTuple::from_ints(quatnorm::forms::NORM_FORM_TUPLES[idx]).unwrap();
        let xs = represent(&n.into(), &f).unwrap().expect("universal form");
        prop_assert_eq!(f.evaluate(&xs), Integer::from(n));
    }

    #[test]
    fn rational_representations_are_valid(p in 1i64..1000, q in 1i64..1000, idx in 0usize..7) {
        let (b, c) = quatnorm::classification::UNIVERSAL_PAIRS[idx];
        let m = Rational::new(p.into(), q.into());
        let xs = represent_rational(&m, &b.into(), &c.into()).unwrap();
        let f = FormTuple::norm_form(&b.into(), &c.into()).unwrap();
        prop_assert_eq!(f.evaluate_rational(&xs), m);
    }
}

/// `None` from the search must mean no solution exists at all, signs included.
#[test]
fn absence_is_exhaustive() {
    const N: i64 = 150;
    for coeffs in [[1, 1, 1, 16], [1, 2, 3, 11], [2, 3, 5, 7], [1, 1, 1, 1]] {
        let f = FormTuple::from_ints(coeffs).unwrap();
        let mut hit = vec![false; N as usize];
        let r = 12i64;
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    for d in -r..=r {
                        let v = coeffs[0] * a * a + coeffs[1] * b * b + coeffs[2] * c * c + coeffs[3] * d * d;
                        if v < N {
                            hit[v as usize] = true;
                        }
                    }
                }
            }
        }
        for n in 0..N {
            assert_eq!(represent(&n.into(), &f).unwrap().is_some(), hit[n as usize], "{n} by {coeffs:?}");
        }
    }
}
