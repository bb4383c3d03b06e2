//! Outward-rounded `f64` intervals.
//!
//! Each elementary operation widens its result by one ulp in each direction
//! after rounding, which encloses the exact value provided the platform's
//! `exp`, `ln` and `sqrt` are accurate to within one ulp.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    fn widen(lo: f64, hi: f64) -> Interval {
        Interval { lo: down(lo), hi: up(hi) }
    }

    /// Encloses an integer exactly when it has at most 53 significant bits.
    pub fn from_biguint(n: &BigUint) -> Interval {
        let bits = n.bits();
        if bits <= 53 {
            Interval::point(n.to_u64().unwrap() as f64)
        } else {
            let shift = bits - 53;
            let m = (n >> shift).to_u64().unwrap() as f64;
            let scale = 2f64.powi(shift as i32);
            if scale.is_finite() {
                Interval::new(m * scale, (m + 1.0) * scale)
            } else {
                Interval::new(f64::MAX, f64::INFINITY)
            }
        }
    }

    /// Encloses a rational number.
    pub fn from_rational(r: &BigRational) -> Interval {
        let x = r.to_f64().unwrap_or(f64::NAN);
        Interval::widen(x, x)
    }

    /// Natural log of a positive integer, valid far beyond `f64` range.
    pub fn ln_biguint(n: &BigUint) -> Interval {
        let bits = n.bits();
        if bits <= 53 {
            let x = n.to_u64().unwrap() as f64;
            let l = x.ln();
            return Interval::widen(l, l);
        }
        let shift = bits - 53;
        let m = (n >> shift).to_u64().unwrap() as f64;
        let ln2 = Interval::widen(std::f64::consts::LN_2, std::f64::consts::LN_2);
        let s = Interval::point(shift as f64).mul(ln2);
        let lo = Interval::widen(m.ln(), m.ln()).lo;
        let hi = Interval::widen((m + 1.0).ln(), (m + 1.0).ln()).hi;
        Interval::new(lo, hi).add(s)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval::widen(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::widen(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi)
    }

    pub fn recip(self) -> Interval {
        assert!(self.lo > 0.0 || self.hi < 0.0, "reciprocal of an interval containing zero");
        Interval::widen(1.0 / self.hi, 1.0 / self.lo)
    }

    pub fn div(self, o: Interval) -> Interval {
        self.mul(o.recip())
    }

    pub fn sqrt(self) -> Interval {
        Interval::widen(self.lo.max(0.0).sqrt(), self.hi.sqrt()).clamp_nonneg()
    }

    pub fn exp(self) -> Interval {
        Interval::widen(self.lo.exp(), self.hi.exp()).clamp_nonneg()
    }

    pub fn ln(self) -> Interval {
        Interval::widen(self.lo.ln(), self.hi.ln())
    }

    /// `self^e` for a positive base.
    pub fn powf(self, e: Interval) -> Interval {
        self.ln().mul(e).exp()
    }

    pub fn powi(self, n: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn clamp_nonneg(self) -> Interval {
        Interval { lo: self.lo.max(0.0), hi: self.hi }
    }

    /// Certainly below `o`.
    pub fn lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    /// Certainly at least `x`.
    pub fn ge(&self, x: f64) -> bool {
        self.lo >= x
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encloses_simple_values() {
        let two = Interval::point(2.0);
        assert!(two.sqrt().contains(std::f64::consts::SQRT_2));
        let big = BigUint::from(10u32).pow(400);
        let l = Interval::ln_biguint(&big);
        assert!(l.contains(400.0 * 10f64.ln()));
        assert!(l.width() < 1e-9);
    }

    proptest! {
        #[test]
        fn products_enclose(a in 0.1f64..100.0, b in 0.1f64..100.0) {
            let i = Interval::point(a).mul(Interval::point(b));
            prop_assert!(i.contains(a * b));
            let j = Interval::point(a).powf(Interval::point(b.ln()));
            prop_assert!(j.lo <= a.powf(b.ln()) * (1.0 + 1e-12));
        }
    }
}
