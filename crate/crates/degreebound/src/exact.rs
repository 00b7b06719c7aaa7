//! Exact comparisons against powers, exponentials and logarithms.
//!
//! Density hypotheses in the extraction pipeline compare rational quantities
//! against expressions like `d^(p/q)`, `2^(d^(p/q)) * x` or `log2(d)`. Those
//! right-hand sides are irrational in general, but every comparison we need
//! can still be decided exactly:
//!
//! * `base^(p/q) <=> r`  reduces to the integer comparison `base^p <=> r^q`.
//! * `log2(x) <=> p/q`   reduces to `x^q <=> 2^p`.
//! * `2^t <=> r` with `t` irrational is decided by trapping `t` in a dyadic
//!   interval (each endpoint test is a power comparison) and refining until
//!   the interval separates the two sides.
//!
//! Refinement is capped; the cap is unreachable for the magnitudes this crate
//! works with, and hitting it returns `Equal` (the two sides agree to better
//! than one part in 2^64 of the exponent).

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_usize(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` string form used when serializing exact check values.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        Some(den) => {
            let den: BigInt = den.trim().parse().ok()?;
            if den == BigInt::zero() {
                None
            } else {
                Some(Rat::new(num, den))
            }
        }
        None => Some(Rat::from_integer(num)),
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

fn bigint_pow(base: &BigInt, exp: &BigUint) -> BigInt {
    base.pow(exp.to_u32().expect("exponent too large for exact powering"))
}

/// `r^k` for integer `k` (any sign); `r` must be nonzero when `k < 0`.
pub fn pow_int(r: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mag = BigUint::from(k.unsigned_abs());
    let num = bigint_pow(r.numer(), &mag);
    let den = bigint_pow(r.denom(), &mag);
    if k > 0 {
        Rat::new(num, den)
    } else {
        Rat::new(den, num)
    }
}

/// Compares `base^exp` with `rhs` exactly. Requires `base > 0`.
///
/// Negative or zero `rhs` is handled directly (a positive power is always
/// greater). For positive `rhs` the comparison is reduced to integers.
pub fn cmp_pow(base: &Rat, exp: &Rat, rhs: &Rat) -> Ordering {
    assert!(base.is_positive(), "cmp_pow needs a positive base");
    if !rhs.is_positive() {
        return Ordering::Greater;
    }
    // base^(p/q) <=> rhs  with q > 0  <=>  base^p <=> rhs^q  (strictly
    // monotone q-th root on positives).
    let p = exp.numer();
    let q = exp.denom(); // BigRational keeps denom > 0
    let (lhs_num, lhs_den) = {
        match p.sign() {
            Sign::NoSign => (BigInt::one(), BigInt::one()),
            Sign::Plus => (
                bigint_pow(base.numer(), p.magnitude()),
                bigint_pow(base.denom(), p.magnitude()),
            ),
            Sign::Minus => (
                bigint_pow(base.denom(), p.magnitude()),
                bigint_pow(base.numer(), p.magnitude()),
            ),
        }
    };
    let rhs_num = bigint_pow(rhs.numer(), q.magnitude());
    let rhs_den = bigint_pow(rhs.denom(), q.magnitude());
    (lhs_num * rhs_den).cmp(&(rhs_num * lhs_den))
}

/// Largest integer `k` with `k <= base^exp`. Requires `base > 0` and
/// `base^exp >= 0` (always true); result may be 0 when the power is < 1.
pub fn floor_pow(base: &Rat, exp: &Rat) -> BigInt {
    // Exponential search for an upper bound, then binary search.
    let mut hi = BigInt::one();
    while cmp_pow(base, exp, &Rat::from_integer(hi.clone())) == Ordering::Greater {
        hi *= 2;
    }
    // invariant: base^exp <= hi
    let mut lo = BigInt::zero();
    while &lo + 1 < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        match cmp_pow(base, exp, &Rat::from_integer(mid.clone())) {
            Ordering::Less => hi = mid,
            Ordering::Equal => return mid,
            Ordering::Greater => lo = mid,
        }
    }
    // base^exp in [lo, hi]; floor is hi when equal, else lo.
    if cmp_pow(base, exp, &Rat::from_integer(hi.clone())) == Ordering::Equal {
        hi
    } else {
        lo
    }
}

/// Compares `log2(x)` with `rhs` exactly. Requires `x > 0`.
pub fn cmp_log2(x: &Rat, rhs: &Rat) -> Ordering {
    assert!(x.is_positive());
    // log2(x) <=> p/q  <=>  x^q <=> 2^p
    let p = rhs.numer();
    let q = rhs.denom();
    let lhs = pow_int(
        x,
        q.to_i64().expect("log2 comparison denominator too large"),
    );
    let two = rat_int(2);
    let rhs_pow = pow_int(&two, p.to_i64().expect("log2 comparison power too large"));
    lhs.cmp(&rhs_pow)
}

/// Rounds `r` down (or up) to `precision` fractional bits.
fn round_to_bits(r: &Rat, precision: u32, up: bool) -> Rat {
    let scale = BigInt::one() << precision;
    let scaled = r * Rat::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let exact = Rat::from_integer(floor.clone()) == scaled;
    let units = if up && !exact { floor + 1 } else { floor };
    Rat::new(units, scale)
}

/// Dyadic interval `[lo, hi]` containing `log2(x)`, of width about
/// `2^-bits`.
///
/// The integer part comes from bit lengths; fractional bits come from
/// interval squaring with outward rounding at bounded precision, so the
/// cost stays polynomial in `bits` even for astronomically large `x`.
pub fn bound_log2(x: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(x.is_positive());
    if x < &Rat::one() {
        let (lo, hi) = bound_log2(&(Rat::one() / x.clone()), bits);
        return (-hi, -lo);
    }
    // 2^k <= x < 2^(k+1).
    let mut k: i64 = (x.numer().bits() as i64 - x.denom().bits() as i64).max(0);
    let pow2 = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from_integer(BigInt::one() << e)
        } else {
            Rat::new(BigInt::one(), BigInt::one() << (-e))
        }
    };
    while pow2(k) > *x {
        k -= 1;
    }
    while pow2(k + 1) <= *x {
        k += 1;
    }
    // y = x / 2^k lies in [1, 2); extract fractional bits by squaring.
    let precision = 96 + bits;
    let mut y_lo = round_to_bits(&(x / pow2(k)), precision, false);
    let mut y_hi = round_to_bits(&(x / pow2(k)), precision, true);
    let mut frac_lo = Rat::zero();
    let mut frac_hi = Rat::zero();
    let two = rat_int(2);
    let mut weight = rat(1, 2);
    let mut stopped_early = false;
    for _ in 0..bits {
        y_lo = round_to_bits(&(y_lo.clone() * y_lo), precision, false);
        y_hi = round_to_bits(&(y_hi.clone() * y_hi), precision, true);
        let lo_ge_2 = y_lo >= two;
        let hi_ge_2 = y_hi >= two;
        if lo_ge_2 {
            // Both halves carry the bit.
            frac_lo += weight.clone();
            frac_hi += weight.clone();
            y_lo /= two.clone();
            y_hi /= two.clone();
        } else if !hi_ge_2 {
            // Bit is 0 on both sides.
        } else {
            // Ambiguous: this bit and everything after it together
            // contribute less than twice its weight.
            frac_hi += rat(2, 1) * weight.clone();
            stopped_early = true;
            break;
        }
        weight /= two.clone();
    }
    if !stopped_early {
        // All `bits` bits extracted exactly; the residual is below 2w.
        frac_hi += rat(2, 1) * weight;
    }
    (rat_int(k) + frac_lo, rat_int(k) + frac_hi)
}

/// Dyadic interval `[lo, hi]` containing `base^exp`, of width `2^-bits`
/// (relative to an integer-width initial bracket). Requires `base > 0`.
pub fn bound_pow(base: &Rat, exp: &Rat, bits: u32) -> (Rat, Rat) {
    let floor = Rat::from_integer(floor_pow(base, exp));
    let mut lo = floor.clone();
    let mut hi = floor + rat_int(1);
    for _ in 0..bits {
        let mid = (lo.clone() + hi.clone()) / rat_int(2);
        if cmp_pow(base, exp, &mid) == Ordering::Less {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Compares `2^(base^exp + shift)` with `rhs`. Requires `base > 0`;
/// `shift` is an integer offset.
///
/// Both sides are trapped in shrinking dyadic intervals — `base^exp` via
/// power comparisons, `log2(rhs)` via interval squaring — until they
/// separate. Exact ties are only possible when `base^exp` is an integer
/// (a rational power of two is rational only at integer exponents), and
/// that case is decided exactly.
pub fn cmp_exp2_pow(base: &Rat, exp: &Rat, shift: i64, rhs: &Rat) -> Ordering {
    if !rhs.is_positive() {
        return Ordering::Greater;
    }
    // Compare t := base^exp against log2(rhs) - shift.
    let floor = floor_pow(base, exp);
    let exact_integer = cmp_pow(base, exp, &Rat::from_integer(floor.clone())) == Ordering::Equal;
    if exact_integer {
        // 2^(floor + shift) <=> rhs. Decide by bit-length bounds first so an
        // astronomically large exponent is never materialized: for positive
        // rhs with numerator of a bits and denominator of b bits,
        // log2(rhs) lies strictly inside (a - b - 1, a - b + 1).
        let exponent = floor + BigInt::from(shift);
        let magnitude = rhs.numer().bits() as i64 - rhs.denom().bits() as i64;
        if exponent >= BigInt::from(magnitude + 1) {
            return Ordering::Greater;
        }
        if exponent <= BigInt::from(magnitude - 1) {
            return Ordering::Less;
        }
        let value = if exponent >= BigInt::zero() {
            Rat::from_integer(
                BigInt::one() << exponent.to_u64().expect("small exponent"),
            )
        } else {
            Rat::new(
                BigInt::one(),
                BigInt::one() << (-exponent).to_u64().expect("small exponent"),
            )
        };
        return value.cmp(rhs);
    }
    let mut t_lo = Rat::from_integer(floor.clone());
    let mut t_hi = t_lo.clone() + rat_int(1);
    for bits in [8u32, 16, 24, 32, 48, 64] {
        // Refine t by bisection (cheap: exp has a small denominator).
        while (t_hi.clone() - t_lo.clone()) * pow_int(&rat_int(2), bits as i64) > Rat::one() {
            let mid = (t_lo.clone() + t_hi.clone()) / rat_int(2);
            match cmp_pow(base, exp, &mid) {
                Ordering::Less => t_hi = mid,
                _ => t_lo = mid,
            }
        }
        let (mut l_lo, mut l_hi) = bound_log2(rhs, bits);
        l_lo -= rat_int(shift);
        l_hi -= rat_int(shift);
        if t_lo > l_hi {
            return Ordering::Greater;
        }
        if t_hi < l_lo {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

/// Floor of a nonnegative rational.
pub fn floor_rat(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_comparisons_match_floats() {
        let cases = [
            (rat(9, 1), rat(1, 2), rat(3, 1), Ordering::Equal),
            (rat(2, 1), rat(1, 2), rat(3, 2), Ordering::Less),
            (rat(2, 1), rat(1, 2), rat(7, 5), Ordering::Greater),
            (rat(10, 1), rat(3, 4), rat(5, 1), Ordering::Greater),
            (rat(1, 2), rat(2, 1), rat(1, 4), Ordering::Equal),
            (rat(5, 2), rat(-1, 1), rat(2, 5), Ordering::Equal),
        ];
        for (base, exp, rhs, want) in cases {
            assert_eq!(cmp_pow(&base, &exp, &rhs), want, "{base}^{exp} vs {rhs}");
        }
    }

    #[test]
    fn pow_comparison_agrees_with_f64_away_from_ties() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..500 {
            let b = 1 + rng.next_below(50) as i64;
            let p = 1 + rng.next_below(6) as i64;
            let q = 1 + rng.next_below(6) as i64;
            let r = 1 + rng.next_below(200) as i64;
            let exact = cmp_pow(&rat_int(b), &rat(p, q), &rat_int(r));
            let approx = (b as f64).powf(p as f64 / q as f64) - r as f64;
            if approx.abs() > 1e-6 {
                let want = if approx < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(exact, want, "{b}^({p}/{q}) vs {r}");
            }
        }
    }

    #[test]
    fn floor_pow_values() {
        assert_eq!(floor_pow(&rat_int(2), &rat(1, 2)), BigInt::from(1));
        assert_eq!(floor_pow(&rat_int(9), &rat(1, 2)), BigInt::from(3));
        assert_eq!(floor_pow(&rat_int(10), &rat(3, 1)), BigInt::from(1000));
        assert_eq!(floor_pow(&rat(1, 2), &rat(3, 1)), BigInt::from(0));
        assert_eq!(floor_pow(&rat_int(1000), &rat(2, 3)), BigInt::from(100));
        assert_eq!(floor_pow(&rat_int(999), &rat(2, 3)), BigInt::from(99));
    }

    #[test]
    fn log2_comparisons() {
        assert_eq!(cmp_log2(&rat_int(8), &rat_int(3)), Ordering::Equal);
        assert_eq!(cmp_log2(&rat_int(20), &rat(432, 100)), Ordering::Greater);
        assert_eq!(cmp_log2(&rat_int(20), &rat(433, 100)), Ordering::Less);
        assert_eq!(cmp_log2(&rat(1, 4), &rat_int(-2)), Ordering::Equal);
    }

    #[test]
    fn exp2_pow_comparisons() {
        // 2^(4^(1/2) - 2) = 2^0 = 1
        assert_eq!(
            cmp_exp2_pow(&rat_int(4), &rat(1, 2), -2, &rat_int(1)),
            Ordering::Equal
        );
        // 2^(2^(1/2)) ~ 2.665; against 5/2 -> Greater, against 3 -> Less
        assert_eq!(
            cmp_exp2_pow(&rat_int(2), &rat(1, 2), 0, &rat(5, 2)),
            Ordering::Greater
        );
        assert_eq!(
            cmp_exp2_pow(&rat_int(2), &rat(1, 2), 0, &rat_int(3)),
            Ordering::Less
        );
    }

    #[test]
    fn log2_bounds_bracket() {
        let (lo, hi) = bound_log2(&rat_int(20), 20);
        let v = 20f64.log2();
        assert!(rat_to_f64(&lo) <= v && v <= rat_to_f64(&hi));
        assert!(rat_to_f64(&hi) - rat_to_f64(&lo) <= 2.0 / (1 << 20) as f64 + 1e-12);
        // Randomized bracketing, including values below 1 and dyadic edges.
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..300 {
            let num = 1 + rng.next_below(10_000) as i64;
            let den = 1 + rng.next_below(10_000) as i64;
            let x = rat(num, den);
            let (lo, hi) = bound_log2(&x, 24);
            let v = (num as f64 / den as f64).log2();
            assert!(
                rat_to_f64(&lo) - 1e-9 <= v && v <= rat_to_f64(&hi) + 1e-9,
                "log2({num}/{den}) = {v} outside [{}, {}]",
                rat_to_f64(&lo),
                rat_to_f64(&hi)
            );
        }
        let (lo, hi) = bound_log2(&rat_int(1), 10);
        assert!(rat_to_f64(&lo) <= 0.0 && 0.0 <= rat_to_f64(&hi));
    }

    #[test]
    fn exp2_pow_handles_astronomic_exponents() {
        // d = 2^3200, gamma = 1/32: d^gamma = 2^100 exactly; the comparison
        // must decide by magnitude without building 2^(2^100).
        let d = pow_int(&rat_int(2), 3200);
        assert_eq!(
            cmp_exp2_pow(&d, &rat(1, 32), 0, &rat_int(1_000_000)),
            Ordering::Greater
        );
        assert_eq!(
            cmp_exp2_pow(&d, &rat(1, 32), 0, &pow_int(&rat_int(2), 1_000)),
            Ordering::Greater
        );
        // And an exactly decidable small case through the same branch.
        assert_eq!(
            cmp_exp2_pow(&rat_int(16), &rat(1, 2), 0, &rat_int(16)),
            Ordering::Equal
        );
        assert_eq!(
            cmp_exp2_pow(&rat_int(16), &rat(1, 2), 0, &rat_int(17)),
            Ordering::Less
        );
    }

    #[test]
    fn exp2_pow_matches_floats_on_random_cases() {
        let mut rng = crate::rng::SplitMix64::new(8);
        for _ in 0..300 {
            let base = 2 + rng.next_below(40) as i64;
            let p = 1 + rng.next_below(4) as i64;
            let q = 1 + rng.next_below(6) as i64;
            let shift = rng.next_below(5) as i64 - 2;
            let rhs = 1 + rng.next_below(1_000_000) as i64;
            let exact = cmp_exp2_pow(&rat_int(base), &rat(p, q), shift, &rat_int(rhs));
            let value = (base as f64).powf(p as f64 / q as f64) + shift as f64;
            let approx = value.exp2() - rhs as f64;
            if approx.abs() > 1e-3 * (rhs as f64).max(value.exp2()) {
                let want = if approx < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(exact, want, "2^({base}^({p}/{q}) + {shift}) vs {rhs}");
            }
        }
    }
}
