//! The functions `α*` and `α` on finite simple groups.
//!
//! ```text
//! α*(C_p) = p,  α*(A_m) = m/4,  α*(Lie type of rank r over F_q) = q^(r/30),
//! α*(sporadic or Tits) = 2,
//! α(T) = α*(T) for abelian T, otherwise
//! α(T) = (α*(T)^-2 + (61/60) (|T|^(3/8) / 2)^-2)^(-1/2).
//! ```

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::simple::{LieFamily, SimpleGroup, Sporadic};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AlphaValue {
    pub alpha_star: Interval,
    pub alpha: Interval,
}

fn check(t: &SimpleGroup) -> Result<()> {
    if t.is_normalized() {
        Ok(())
    } else {
        Err(Error::UnnormalizedDescriptor(t.to_string()))
    }
}

pub fn alpha_star(t: &SimpleGroup) -> Result<Interval> {
    check(t)?;
    Ok(match *t {
        SimpleGroup::Cyclic(p) => Interval::point(p as f64),
        SimpleGroup::Alternating(m) => Interval::point(m as f64 / 4.0),
        SimpleGroup::Sporadic(_) | SimpleGroup::Tits => Interval::point(2.0),
        SimpleGroup::Lie { q, .. } => {
            let r = t.lie_rank().unwrap();
            let e = Interval::point(r as f64).div(Interval::point(30.0));
            Interval::ln_biguint(&BigUint::from(q)).mul(e).exp()
        }
    })
}

pub fn alpha(t: &SimpleGroup) -> Result<AlphaValue> {
    let star = alpha_star(t)?;
    if t.is_abelian() {
        return Ok(AlphaValue { alpha_star: star, alpha: star });
    }
    // (|T|^(3/8) / 2)^-2 = 4 |T|^(-3/4)
    let ln_t = Interval::ln_biguint(&t.order());
    let t34 = ln_t.mul(Interval::point(-0.75)).exp();
    let second = Interval::point(61.0).div(Interval::point(60.0)).mul(Interval::point(4.0)).mul(t34);
    let first = star.mul(star).recip();
    let alpha = first.add(second).sqrt().recip();
    Ok(AlphaValue { alpha_star: star, alpha })
}

/// Per-family minimum of `α` over a list of groups.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMinimum {
    pub family: String,
    pub count: usize,
    pub minimum: Interval,
    pub witness: String,
    /// Whether every member satisfies `α ≥ 1.01`.
    pub above_floor: bool,
}

pub const ALPHA_FLOOR: f64 = 1.01;

/// Computes the minimum of `α` for each named family.
pub fn verify_alpha_lower_bound(families: &[(&str, Vec<SimpleGroup>)]) -> Result<Vec<FamilyMinimum>> {
    let mut out = Vec::new();
    for (name, members) in families {
        let mut best: Option<(Interval, SimpleGroup)> = None;
        let mut above = true;
        for t in members {
            let a = alpha(t)?.alpha;
            if !a.ge(ALPHA_FLOOR) {
                above = false;
            }
            if best.as_ref().is_none_or(|(b, _)| a.lo < b.lo) {
                best = Some((a, *t));
            }
        }
        let (minimum, w) = best.ok_or_else(|| Error::InvalidArgument(format!("empty family {name}")))?;
        out.push(FamilyMinimum {
            family: name.to_string(),
            count: members.len(),
            minimum,
            witness: w.to_string(),
            above_floor: above,
        });
    }
    Ok(out)
}

/// Families used by the standard lower-bound battery.
pub fn standard_families() -> Vec<(&'static str, Vec<SimpleGroup>)> {
    let cyclic = (2..=10_000u64).filter(|&p| crate::simple::is_prime(p)).map(SimpleGroup::Cyclic).collect();
    let alternating = (5..=1000).map(SimpleGroup::Alternating).collect();
    let mut psl2 = Vec::new();
    for q in 7..=10_000u64 {
        if crate::simple::prime_power(q).is_none() {
            continue;
        }
        let t = SimpleGroup::Lie { family: LieFamily::Linear, n: 2, q };
        if t.is_normalized() {
            psl2.push(t);
        }
    }
    let mut sporadic: Vec<SimpleGroup> = Sporadic::ALL.iter().map(|&s| SimpleGroup::Sporadic(s)).collect();
    sporadic.push(SimpleGroup::Tits);
    vec![("cyclic", cyclic), ("alternating", alternating), ("PSL2", psl2), ("sporadic", sporadic)]
}

/// Order of `N:Aut(N)` for abelian `N = T^n`, and of `Aut(T^n) = Aut(T) ≀ S_n` otherwise.
pub fn waut_order(t: &SimpleGroup, n: u32) -> Result<BigUint> {
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    match *t {
        SimpleGroup::Cyclic(p) => {
            let p = BigUint::from(p);
            let mut gl = BigUint::from(1u32);
            let pn = p.pow(n);
            for i in 0..n {
                gl *= &pn - p.pow(i);
            }
            Ok(pn * gl)
        }
        _ => {
            let aut = t.order() * BigUint::from(t.out_info()?.order);
            Ok(aut.pow(n) * fact)
        }
    }
}

/// Smallest `n` with `α(T)^n ≥ a`, certified.
pub fn alpha_power_threshold(t: &SimpleGroup, a: f64) -> Result<u32> {
    let al = alpha(t)?.alpha;
    if !(al.lo > 1.0) {
        return Err(Error::InvalidArgument(format!("α({t}) is not certified above 1")));
    }
    let mut n = 1u32;
    let mut acc = al;
    while !acc.ge(a) {
        n += 1;
        acc = acc.mul(al);
    }
    Ok(n)
}

/// For a finite list of simple groups, returns `B` such that `|wAut(T^n)| ≥ B`
/// forces `α(T)^n ≥ a` for every listed `T`, together with the pair attaining
/// the maximum below the threshold.
pub fn alpha_growth_bound(groups: &[SimpleGroup], a: f64) -> Result<(BigUint, Option<(SimpleGroup, u32)>)> {
    let mut best = BigUint::from(0u32);
    let mut witness = None;
    for t in groups {
        let n_max = alpha_power_threshold(t, a)?;
        for n in 1..n_max {
            let w = waut_order(t, n)?;
            if w > best {
                best = w;
                witness = Some((*t, n));
            }
        }
    }
    Ok((best + 1u32, witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psl2(q: u64) -> SimpleGroup {
        SimpleGroup::Lie { family: LieFamily::Linear, n: 2, q }
    }

    #[test]
    fn alpha_star_cases() {
        assert_eq!(alpha_star(&SimpleGroup::Cyclic(7)).unwrap(), Interval::point(7.0));
        assert_eq!(alpha_star(&SimpleGroup::Alternating(12)).unwrap(), Interval::point(3.0));
        assert_eq!(alpha_star(&SimpleGroup::Sporadic(Sporadic::M11)).unwrap(), Interval::point(2.0));
        let s = alpha_star(&psl2(49)).unwrap();
        assert!(s.contains(49f64.powf(1.0 / 30.0)));
        assert!(alpha_star(&psl2(4)).is_err());
    }

    #[test]
    fn alpha_values() {
        let a5 = alpha(&SimpleGroup::Alternating(5)).unwrap();
        assert!(a5.alpha.ge(1.09) && a5.alpha.hi < 1.25);
        assert!(a5.alpha.width() < 1e-9);
        let m11 = alpha(&SimpleGroup::Sporadic(Sporadic::M11)).unwrap();
        assert!(m11.alpha.ge(1.98));
        let c = alpha(&SimpleGroup::Cyclic(5)).unwrap();
        assert_eq!(c.alpha, Interval::point(5.0));
        let a100 = alpha(&SimpleGroup::Alternating(100)).unwrap();
        assert!(a5.alpha.lt(&a100.alpha));
    }

    #[test]
    fn growth_bounds_terminate() {
        let groups = vec![SimpleGroup::Cyclic(2), SimpleGroup::Alternating(5), psl2(7), SimpleGroup::Sporadic(Sporadic::M11)];
        let mut last = BigUint::from(0u32);
        for a in [2.0, 10.0, 100.0] {
            let (b, _) = alpha_growth_bound(&groups, a).unwrap();
            assert!(b >= last);
            last = b;
        }
        assert_eq!(waut_order(&SimpleGroup::Cyclic(2), 2).unwrap(), BigUint::from(24u32));
    }
}
