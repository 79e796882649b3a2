//! Exact points of the rational circle and the cyclic-order predicates on them.
//!
//! The circle is the unit interval with 0 and 1 identified. A point is stored
//! as a reduced rational in `[0, 1)`, so `1` is always canonicalized to `0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Parses `<int>/<posint>` or `<int>` into a reduced rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational `{s}`"))?;
    if den.starts_with(['+', '-']) {
        return Err(format!("invalid rational `{s}`: denominator must be a positive integer"));
    }
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational `{s}`"))?;
    if !den.is_positive() {
        return Err(format!("invalid rational `{s}`: denominator must be positive"));
    }
    Ok(Rational::new(num, den))
}

/// Reduces any rational into `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

/// A point of the rational circle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    /// Accepts values in `[0, 1]`; `1` is identified with `0`.
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::PointOutOfRange(value.to_string()));
        }
        Ok(Self::wrapping(&value))
    }

    /// Takes any rational modulo 1.
    pub fn wrapping(value: &Rational) -> Self {
        CirclePoint(frac(value))
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::PointOutOfRange(format!("{num}/0")));
        }
        Self::new(Rational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Length of the counterclockwise arc from `self` to `other`, in `[0, 1)`.
    pub fn arc_to(&self, other: &CirclePoint) -> Rational {
        frac(&(&other.0 - &self.0))
    }

    pub fn rotated(&self, by: &Rational) -> Self {
        Self::wrapping(&(&self.0 + by))
    }

    /// Reflection `x ↦ axis - x (mod 1)`.
    pub fn reflected(&self, axis: &Rational) -> Self {
        Self::wrapping(&(axis - &self.0))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for CirclePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s).map_err(Error::PointOutOfRange)?;
        CirclePoint::new(r)
    }
}

/// True iff `a`, `b`, `c` are pairwise distinct and `b` is met strictly
/// before `c` when walking counterclockwise from `a`.
pub fn cyclic_between(a: &CirclePoint, b: &CirclePoint, c: &CirclePoint) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    a.arc_to(b) < a.arc_to(c)
}

/// Whether the point pairs `p` and `q` alternate around the circle, i.e. the
/// chords they span cross at an interior point of the disc.
pub fn interleaves(
    p: (&CirclePoint, &CirclePoint),
    q: (&CirclePoint, &CirclePoint),
) -> Result<bool> {
    for (x, y) in [p, q] {
        if x == y {
            return Err(Error::DegeneratePair(x.to_string()));
        }
    }
    let (p0, p1) = p;
    let (q0, q1) = q;
    if q0 == p0 || q0 == p1 || q1 == p0 || q1 == p1 {
        return Ok(false);
    }
    Ok(cyclic_between(p0, q0, p1) != cyclic_between(p0, q1, p1))
}

/// The midpoint of the counterclockwise arc from `a` to `b`.
pub fn insert_between(a: &CirclePoint, b: &CirclePoint) -> Result<CirclePoint> {
    if a == b {
        return Err(Error::EmptyArc(a.to_string()));
    }
    let half = a.arc_to(b) / Rational::from_integer(2.into());
    Ok(a.rotated(&half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d).unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("6/8").unwrap().to_string(), "3/4");
        assert_eq!(parse_rational("-4/2").unwrap().to_string(), "-2");
        assert_eq!(parse_rational("7").unwrap().to_string(), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn one_is_zero() {
        assert_eq!(pt(1, 1), CirclePoint::zero());
        assert!(CirclePoint::from_ratio(5, 4).is_err());
        assert!(CirclePoint::from_ratio(-1, 4).is_err());
        assert_eq!("2/2".parse::<CirclePoint>().unwrap(), CirclePoint::zero());
    }

    #[test]
    fn between_examples() {
        assert!(cyclic_between(&pt(0, 1), &pt(1, 4), &pt(1, 2)));
        assert!(cyclic_between(&pt(1, 2), &pt(3, 4), &pt(1, 4)));
        assert!(!cyclic_between(&pt(0, 1), &pt(0, 1), &pt(1, 2)));
    }

    #[test]
    fn interleave_examples() {
        let i = |a, b, c, d| interleaves((&a, &b), (&c, &d));
        assert!(i(pt(0, 1), pt(1, 2), pt(1, 4), pt(3, 4)).unwrap());
        assert!(!i(pt(0, 1), pt(1, 4), pt(1, 2), pt(3, 4)).unwrap());
        assert!(!i(pt(0, 1), pt(1, 2), pt(1, 2), pt(3, 4)).unwrap());
        assert!(i(pt(0, 1), pt(0, 1), pt(1, 2), pt(3, 4)).is_err());
        assert!(i(pt(0, 1), pt(1, 3), pt(1, 2), pt(1, 2)).is_err());
    }

    #[test]
    fn insert_examples() {
        assert_eq!(insert_between(&pt(1, 4), &pt(1, 2)).unwrap(), pt(3, 8));
        assert_eq!(insert_between(&pt(3, 4), &pt(1, 4)).unwrap(), pt(0, 1));
        assert!(matches!(
            insert_between(&pt(0, 1), &pt(0, 1)),
            Err(Error::EmptyArc(_))
        ));
    }

    fn arb_point() -> impl Strategy<Value = CirclePoint> {
        (1u64..=u64::MAX).prop_flat_map(|d| (0..d, Just(d))).prop_map(|(n, d)| {
            CirclePoint::new(Rational::new(n.into(), d.into())).unwrap()
        })
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    /// Crossing test by explicit position comparison after cutting the
    /// circle at `a`; independent of `cyclic_between`.
    fn crossing_oracle(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> bool {
        let s = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if s[i] == s[j] {
                    return false;
                }
            }
        }
        let rel = |x: &Rational| frac(&(x - a));
        let (lo, hi) = (Rational::zero(), rel(b));
        let inside = |x: &Rational| rel(x) > lo && rel(x) < hi;
        inside(c) ^ inside(d)
    }

    proptest! {
        #[test]
        fn interleaves_symmetry_and_rotation(
            a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point(),
            r in arb_rational(),
        ) {
            prop_assume!(a != b && c != d);
            let base = interleaves((&a, &b), (&c, &d)).unwrap();
            prop_assert_eq!(base, interleaves((&c, &d), (&a, &b)).unwrap());
            prop_assert_eq!(base, interleaves((&b, &a), (&d, &c)).unwrap());
            let rot = |p: &CirclePoint| p.rotated(&r);
            prop_assert_eq!(base, interleaves((&rot(&a), &rot(&b)), (&rot(&c), &rot(&d))).unwrap());
            let refl = |p: &CirclePoint| p.reflected(&r);
            prop_assert_eq!(base, interleaves((&refl(&a), &refl(&b)), (&refl(&c), &refl(&d))).unwrap());
            prop_assert_eq!(
                base,
                crossing_oracle(a.value(), b.value(), c.value(), d.value())
            );
        }

        #[test]
        fn between_cyclic_laws(a in arb_point(), b in arb_point(), c in arb_point()) {
            prop_assert_eq!(cyclic_between(&a, &b, &c), cyclic_between(&b, &c, &a));
            if a != b && b != c && a != c {
                prop_assert_eq!(cyclic_between(&a, &b, &c), !cyclic_between(&a, &c, &b));
            }
        }

        #[test]
        fn insertion_lands_inside(a in arb_point(), b in arb_point()) {
            prop_assume!(a != b);
            let c = insert_between(&a, &b).unwrap();
            prop_assert!(cyclic_between(&a, &c, &b));
            prop_assert!(c.value() >= &Rational::zero() && c.value() < &Rational::one());
        }
    }
}
