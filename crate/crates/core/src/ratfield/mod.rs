//! Exact arithmetic tower: big rationals, polynomials over Q, and the field Q(x).

mod poly;
mod ratfun;

pub use poly::Poly;
pub use ratfun::{ArithOp, RatFun};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

/// `n / d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..=9, 0..=4).prop_map(|c| Poly::from_ints(&c))
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (
            arb_poly(),
            arb_poly().prop_filter("nonzero", |p| !p.is_zero()),
        )
            .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, RatFun::zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn normalization_is_idempotent(a in arb_ratfun()) {
            let again = RatFun::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(&again, &a);
            prop_assert!(a.denom().leading().unwrap() == &Rat::from_integer(1.into()));
            prop_assert!(Poly::gcd(a.numer(), a.denom()).is_one() || a.is_zero());
        }

        #[test]
        fn gcd_divides_and_scales(a in arb_poly(), b in arb_poly(),
                                  c in arb_poly().prop_filter("nonzero", |p| !p.is_zero())) {
            let g = Poly::gcd(&a, &b);
            if !g.is_zero() {
                prop_assert!(a.div_rem(&g).1.is_zero());
                prop_assert!(b.div_rem(&g).1.is_zero());
            }
            let gc = Poly::gcd(&(&a * &c), &(&b * &c));
            prop_assert_eq!(gc, &c.monic() * &g);
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_ratfun(), b in arb_ratfun(), n in -20i64..20, d in 1i64..7) {
            let x0 = rat(n, d);
            if let (Ok(va), Ok(vb)) = (a.eval(&x0), b.eval(&x0)) {
                prop_assert_eq!((&a + &b).eval(&x0).unwrap(), &va + &vb);
                prop_assert_eq!((&a * &b).eval(&x0).unwrap(), &va * &vb);
            }
        }
    }
}
