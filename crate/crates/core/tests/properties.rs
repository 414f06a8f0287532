use floorsum::bigmath::{ilog, pow};
use floorsum::radix::{digit_sum, expand, leading_pos, valuation};
use floorsum::{identities as id, oracle, Integer, Natural, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(p, q)| Rational::ratio(p, q))
}

fn big_natural() -> impl Strategy<Value = Natural> {
    proptest::collection::vec(any::<u32>(), 0..=16).prop_map(Natural::new)
}

proptest! {
    #[test]
    fn floor_and_ceil_bracket_q(q in rational()) {
        let f = Rational::from(q.floor());
        let c = Rational::from(q.ceil());
        prop_assert!(f <= q && q < &f + Rational::one());
        prop_assert!(&c - Rational::one() < q && q <= c);
    }

    #[test]
    fn integer_plus_fraction(q in rational()) {
        let frac = q.frac();
        prop_assert!(!frac.is_negative() && frac < Rational::one());
        prop_assert_eq!(Rational::from(q.floor()) + &frac, q.clone());
        let expected = if q.is_integer() { Rational::zero() } else { frac - Rational::half() };
        prop_assert_eq!(q.sawtooth(), expected);
    }

    #[test]
    fn integer_shifts(q in rational(), z in -1000i64..1000) {
        let shifted = &q + Rational::from(z);
        prop_assert_eq!(shifted.floor(), q.floor() + z);
        prop_assert_eq!(shifted.ceil(), q.ceil() + z);
        prop_assert_eq!(shifted.frac(), q.frac());
    }

    #[test]
    fn ilog_brackets_q(b in 2u64..40, p in 1i64..=10_000_000, d in 1i64..=1000) {
        let q = Rational::ratio(p, d);
        prop_assume!(q >= Rational::one());
        let k = ilog(&nat(b), &q).unwrap();
        prop_assert!(Rational::from(pow(&nat(b), k)) <= q);
        prop_assert!(q < Rational::from(pow(&nat(b), k + 1)));
    }

    #[test]
    fn rational_text_round_trip(q in rational()) {
        let text = q.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn expansion_reconstructs_large_n(n in big_natural(), b in 2u64..=300) {
        let e = expand(&n, &nat(b)).unwrap();
        prop_assert_eq!(e.value(), n.clone());
        prop_assert!(e.digits().iter().all(|d| *d < nat(b)));
        prop_assert!(e.digits().last().is_none_or(|d| !d.is_zero()));
    }

    #[test]
    fn digit_statistics(n in 1u64..=u64::MAX, b in 2u64..=16) {
        let (n, bn) = (nat(n), nat(b));
        let e = expand(&n, &bn).unwrap();
        let s = digit_sum(&n, &bn).unwrap();
        let conjugate = e.conjugate();
        let counts = conjugate.counts().unwrap();

        // both partitions have size s_b(n)
        prop_assert_eq!(e.partition().size(), s.clone());
        prop_assert_eq!(counts.iter().map(|&c| nat(c as u64)).sum::<Natural>(), s);

        // transpose of λ agrees with direct digit counting
        for t in 1..b {
            let direct = e.digits().iter().filter(|d| **d >= nat(t)).count();
            prop_assert_eq!(counts[(t - 1) as usize], direct);
        }
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(conjugate.get(&bn), 0);

        let v = valuation(&n, &bn).unwrap();
        let lowest = e.digits().iter().position(|d| !d.is_zero()).unwrap() as u64;
        prop_assert_eq!(v, lowest);
        prop_assert!((&n % pow(&bn, v)).is_zero());
        prop_assert!(!(&n % pow(&bn, v + 1)).is_zero());

        prop_assert_eq!(leading_pos(&n, &bn).unwrap(), e.digits().len() as u64 - 1);
    }

    #[test]
    fn carried_part_divides_exactly(n in big_natural(), b in 2u64..=64) {
        let s = digit_sum(&n, &nat(b)).unwrap();
        prop_assert!(((&n - s) % nat(b - 1)).is_zero());
        prop_assert!(id::legendre_valuation(&n, &nat(b)).is_ok());
    }

    #[test]
    fn sawtooth_is_shifted_frac(n in 1u64..=u64::MAX, b in 2u64..=12, j_seed in any::<u64>()) {
        let j = 1 + j_seed % (b - 1);
        let (n, bn, jn) = (nat(n), nat(b), nat(j));
        let e = expand(&n, &bn).unwrap();
        let m = e.leading_pos().unwrap();
        let integral = *e.lowest_nonzero_digit().unwrap() == nat(b - j);
        let bridge = id::frac_sum(&n, &bn, &jn).unwrap()
            - Rational::ratio(m + 1, 2u64)
            + if integral { Rational::half() } else { Rational::zero() };
        prop_assert_eq!(id::sawtooth_sum(&n, &bn, &jn).unwrap(), bridge);
    }

    #[test]
    fn ceil_matches_oracle_on_random_rationals(p in 1i64..=5_000_000, d in 1i64..=97, b in 2u64..=12, j_seed in any::<u64>()) {
        let x = Rational::ratio(p, d);
        prop_assume!(x >= Rational::one());
        let j = nat(1 + j_seed % (b - 1));
        prop_assert_eq!(id::ceil_sum(&x, &nat(b), &j).unwrap(), oracle::ceil_sum_direct(&x, &nat(b), &j).unwrap());
        prop_assert_eq!(id::ceil_double_sum(&x, &nat(b)).unwrap(), oracle::ceil_double_sum_direct(&x, &nat(b)).unwrap());
    }

    #[test]
    fn tail_floor_is_a_bit(digits in proptest::collection::vec(0u64..10, 1..24), j in 0u64..10) {
        let prefix: Vec<Natural> = digits.iter().copied().map(nat).collect();
        let got = oracle::tail_floor(&prefix, &nat(j), &nat(10)).unwrap();
        prop_assert_eq!(got, nat(u64::from(digits.last().unwrap() + j >= 10)));
    }

    #[test]
    fn ceil_term_tails_are_one_or_two(x in rational(), b in 2u64..=10, j_seed in any::<u64>()) {
        prop_assume!(x >= Rational::one());
        let j = nat(1 + j_seed % (b - 1));
        let n = Integer::from(x.ceil());
        // the k-th term minus the digits above position k
        for (k, term) in oracle::ceil_terms_direct(&x, &nat(b), &j).unwrap().into_iter().enumerate() {
            let high = &n / Integer::from(pow(&nat(b), k as u64 + 1));
            let tail = term - high;
            prop_assert!(tail == Integer::from(1) || tail == Integer::from(2));
        }
    }
}

#[test]
fn expansion_round_trip_exhaustive() {
    for b in 2..=16u64 {
        let bn = nat(b);
        for n in 0..=1_000_000u64 {
            let e = expand(&nat(n), &bn).unwrap();
            let value = e
                .digits()
                .iter()
                .rev()
                .fold(0u64, |acc, d| acc * b + u64::try_from(d).unwrap());
            assert_eq!(value, n, "base {b}");
        }
    }
}

#[test]
fn ceil_edge_family() {
    // ⌈x⌉ = b^m with x = b^m - 1/2 drops the k = m term
    for b in 2..=16u64 {
        for m in 1..=6u64 {
            let x = Rational::from(pow(&nat(b), m)) - Rational::half();
            for j in 1..b {
                let jn = nat(j);
                let direct = oracle::ceil_sum_direct(&x, &nat(b), &jn).unwrap();
                assert_eq!(id::ceil_sum(&x, &nat(b), &jn).unwrap(), direct);
                assert_eq!(id::ceil_sum_uncorrected(&x, &nat(b), &jn).unwrap(), direct + 1u32);
            }
            assert_eq!(
                id::ceil_double_sum_by_leading_digit(&x, &nat(b)).unwrap(),
                id::ceil_double_sum(&x, &nat(b)).unwrap() + (b - 1)
            );
        }
    }
}
