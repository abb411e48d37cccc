use locnil::modular::{certify_all, certify_local, orbit_mod_p, primes_up_to, PrimeSet};
use locnil::orbit::{decide_nilpotency, iterate_linear_closed, iterate_value, EscapeCertificate, OrbitLimits, OrbitOutcome};
use locnil::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn poly(max_degree: usize, c: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-c..=c, 1..=max_degree + 1).prop_map(|v| Polynomial::from_i64s(&v))
}

fn nonzero_poly(max_degree: usize, c: i64) -> impl Strategy<Value = Polynomial> {
    poly(max_degree, c).prop_filter("nonzero", |u| !u.is_zero())
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn step(u: &Polynomial, r: &BigInt, n: u64) -> BigInt {
    (0..n).fold(r.clone(), |x, _| u.evaluate(&x))
}

proptest! {
    #[test]
    fn printed_form_parses_back(u in poly(6, 1000)) {
        prop_assert_eq!(u.to_string().parse::<Polynomial>().unwrap(), u.clone());
        let list: Vec<String> = u.coeffs().iter().map(ToString::to_string).collect();
        let list = if list.is_empty() { "0".to_string() } else { list.join(",") };
        prop_assert_eq!(list.parse::<Polynomial>().unwrap(), u);
    }

    #[test]
    fn conjugation_is_an_involution(u in poly(8, 50)) {
        prop_assert_eq!(u.negate_conjugate().negate_conjugate(), u);
    }

    #[test]
    fn composition_is_associative(u in poly(3, 9), v in poly(3, 9), w in poly(3, 9)) {
        prop_assert_eq!(u.compose(&v).compose(&w), u.compose(&v.compose(&w)));
    }

    #[test]
    fn composition_evaluates_pointwise(u in poly(4, 20), v in poly(4, 20), x in -50i64..=50) {
        let x = big(x);
        prop_assert_eq!(u.compose(&v).evaluate(&x), u.evaluate(&v.evaluate(&x)));
    }

    #[test]
    fn reduction_keeps_integer_coefficients(mut c in prop::collection::vec(-20i64..=20, 1..=5), r in 1i64..=30, k in -10i64..=10) {
        c[0] = r * k;
        let u = Polynomial::from_i64s(&c);
        let v = u.reduce_at(&big(r)).unwrap();
        // u(rx) = r v(x) coefficientwise
        let scaled = u.compose(&Polynomial::linear(big(r), big(0)));
        prop_assert_eq!(&v * &Polynomial::from_i64s(&[r]), scaled);
        prop_assert_eq!(v.degree(), u.degree());
    }

    #[test]
    fn closed_form_matches_stepping(a in -20i64..=20, b in -20i64..=20, r in -20i64..=20, n in 0u64..=30) {
        prop_assume!(a != 0);
        let u = Polynomial::from_i64s(&[b, a]);
        let closed = iterate_linear_closed(&big(a), &big(b), &big(r), n).unwrap();
        prop_assert_eq!(closed, iterate_value(&u, &big(r), n, &OrbitLimits::default()).unwrap());
    }

    #[test]
    fn escapes_keep_growing(u in nonzero_poly(3, 6), r in -30i64..=30) {
        if let OrbitOutcome::Escaped { value, bound, certificate: EscapeCertificate::AbsoluteBound, .. } =
            decide_nilpotency(&u, &big(r)).unwrap()
        {
            prop_assert!(value.abs() >= bound);
            let mut x = value;
            for _ in 0..10 {
                let next = u.evaluate(&x);
                prop_assert!(next.abs() > x.abs());
                x = next;
            }
        }
    }

    #[test]
    fn cycles_replay_without_zero(u in nonzero_poly(3, 4), r in -6i64..=6) {
        if let OrbitOutcome::Cycle { tail_length, cycle_values, .. } = decide_nilpotency(&u, &big(r)).unwrap() {
            prop_assert!(!cycle_values.is_empty());
            prop_assert_eq!(&step(&u, &big(r), tail_length), &cycle_values[0]);
            for (i, x) in cycle_values.iter().enumerate() {
                prop_assert!(!x.is_zero());
                prop_assert_eq!(&u.evaluate(x), &cycle_values[(i + 1) % cycle_values.len()]);
            }
        }
    }

    #[test]
    fn nilpotency_index_is_minimal(u in nonzero_poly(3, 5), r in -6i64..=6) {
        if let Some(index) = decide_nilpotency(&u, &big(r)).unwrap().index() {
            let mut x = big(r);
            for j in 1..=index {
                x = u.evaluate(&x);
                prop_assert_eq!(x.is_zero(), j == index);
            }
        }
    }

    #[test]
    fn consecutive_differences_divide(u in nonzero_poly(3, 4), r in -5i64..=5) {
        let mut x = big(r);
        let mut d = {
            let y = u.evaluate(&x);
            let d = &y - &x;
            x = y;
            d
        };
        for _ in 0..10 {
            let y = u.evaluate(&x);
            let next = &y - &x;
            if d.is_zero() {
                prop_assert!(next.is_zero());
            } else {
                prop_assert!(next.is_multiple_of(&d));
            }
            if y.bits() > 1 << 17 {
                break;
            }
            x = y;
            d = next;
        }
    }

    #[test]
    fn decisions_are_deterministic(u in nonzero_poly(3, 6), r in -10i64..=10) {
        let r = big(r);
        prop_assert_eq!(decide_nilpotency(&u, &r).unwrap(), decide_nilpotency(&u, &r).unwrap());
        let seq: Vec<_> = primes_up_to(150).into_iter().map(|p| orbit_mod_p(&u, &r, p)).collect();
        prop_assert_eq!(certify_all(&u, &r, &PrimeSet::empty(), 150), seq);
    }
}

#[test]
fn nilpotent_at_zero_with_nonzero_constant_has_index_two() {
    let range = -5i64..=5;
    let mut seen = 0;
    for c0 in range.clone().filter(|&c| c != 0) {
        for c1 in range.clone() {
            for c2 in range.clone() {
                for c3 in range.clone() {
                    let u = Polynomial::from_i64s(&[c0, c1, c2, c3]);
                    if let Some(index) = decide_nilpotency(&u, &big(0)).unwrap().index() {
                        assert_eq!(index, 2, "{u}");
                        seen += 1;
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn nilpotent_orbits_hit_every_prime_in_time() {
    let range = -3i64..=3;
    for c0 in range.clone() {
        for c1 in range.clone() {
            for c2 in range.clone() {
                let u = Polynomial::from_i64s(&[c0, c1, c2]);
                if u.is_zero() {
                    continue;
                }
                for r in -3i64..=3 {
                    let Some(index) = decide_nilpotency(&u, &big(r)).unwrap().index() else { continue };
                    let rep = certify_local(&u, &big(r), &PrimeSet::empty(), 200);
                    assert!(rep.refuting_prime().is_none(), "{u} at {r}");
                    for cert in rep.certificates {
                        assert!(cert.m_p().unwrap() <= index, "{u} at {r} p={}", cert.p);
                    }
                }
            }
        }
    }
}

#[test]
fn fermat_periods_for_four_x_minus_two() {
    let u: Polynomial = "4x-2".parse().unwrap();
    for p in primes_up_to(500).into_iter().filter(|&p| p > 3) {
        let m = orbit_mod_p(&u, &big(0), p).m_p().unwrap();
        assert_eq!((p - 1) % m, 0, "p={p} m={m}");
    }
}
