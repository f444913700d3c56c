//! Exact integers and rationals, and the Fibonacci/Lucas kernels behind
//! every closed form.

use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// `(F_k, F_{k+1})` by fast doubling:
/// `F_{2m} = F_m (2F_{m+1} - F_m)`, `F_{2m+1} = F_m² + F_{m+1}²`.
pub fn fib_pair(k: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    if k == 0 {
        return (a, b);
    }
    let bits = 64 - k.leading_zeros();
    for i in (0..bits).rev() {
        let two_b_minus_a = (&b << 1usize) - &a;
        let c = &a * &two_b_minus_a;
        let d = &a * &a + &b * &b;
        if (k >> i) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

pub fn fib(k: u64) -> BigInt {
    fib_pair(k).0
}

/// `L_k = F_{k-1} + F_{k+1} = 2F_{k+1} - F_k`.
pub fn lucas(k: u64) -> BigInt {
    let (f, f1) = fib_pair(k);
    (f1 << 1usize) - f
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            if q.is_zero() {
                return Err(Error::Parse(s.into()));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| Error::Parse(s.into()))?),
    };
    Ok(parsed)
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// Converts to `f64`, staying accurate when numerator and denominator are far beyond `f64` range.
pub fn to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling by powers of two.
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    let mant = q.to_f64().unwrap_or(f64::INFINITY);
    let v = mant * 2f64.powi(shift as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// `(-1)^k` as a small integer.
pub(crate) fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_fib(k: u64) -> BigInt {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        for _ in 0..k {
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        a
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib(0), 0.into());
        assert_eq!(fib(1), 1.into());
        assert_eq!(fib(2), 1.into());
        assert_eq!(fib(3), 2.into());
        assert_eq!(fib(11), 89.into());
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas(0), 2.into());
        assert_eq!(lucas(1), 1.into());
        assert_eq!(lucas(6), 18.into());
        // 5 F_3² + 2 (-1)^3 = 18
        assert_eq!(BigInt::from(5) * fib(3).pow(2) - 2, lucas(6));
    }

    #[test]
    fn fast_doubling_matches_iteration() {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        for k in 0..=1000u64 {
            assert_eq!(fib(k), a, "k={k}");
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        assert_eq!(fib(10_000), naive_fib(10_000));
    }

    #[test]
    fn lucas_identities() {
        for l in 1..=200u64 {
            let f = fib(l);
            let sgn = BigInt::from(2 * sign(l));
            assert_eq!(BigInt::from(5) * &f * &f, lucas(2 * l) - sgn, "l={l}");
            assert_eq!(lucas(2 * l), fib(2 * l + 2) - fib(2 * l - 2), "l={l}");
            assert_eq!(fib(2 * l), fib(l + 1).pow(2) - fib(l - 1).pow(2), "l={l}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("10/24").unwrap(), rational(5, 12));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), rational(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(13, 2)), "13/2");
        assert_eq!(format_rational(&int(4)), "4");
        assert_eq!(format_rational(&rational(3, -6)), "-1/2");
    }

    #[test]
    fn to_f64_handles_huge_terms() {
        let huge = fib(5000);
        let r = BigRational::new(&huge * 3, &huge * 4);
        assert_eq!(to_f64(&r), 0.75);
        let ratio = BigRational::new(fib(3001), fib(3000));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((to_f64(&ratio) - phi).abs() < 1e-15);
        let unreduced_like = BigRational::new(fib(4000) + 1, fib(4000));
        assert_eq!(to_f64(&unreduced_like), 1.0);
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| rational(p, q))
    }

    fn is_reduced(r: &BigRational) -> bool {
        use num_integer::Integer;
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            for r in [&a + &b, &a - &c, &a * &b * &c] {
                prop_assert!(is_reduced(&r));
            }
        }

        #[test]
        fn rational_string_round_trip(a in small_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
