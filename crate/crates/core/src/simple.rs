//! Finite simple groups as symbolic descriptors.
//!
//! Normal forms follow the usual conventions: a group is written as an
//! alternating group whenever possible, `PSL3(2)` as `PSL2(7)`, `PSp4(3)` as
//! `PSU4(2)`, and the low-dimensional orthogonal groups as the linear,
//! symplectic or unitary groups they coincide with.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieFamily {
    /// `PSL_n(q)`.
    Linear,
    /// `PSU_n(q)`.
    Unitary,
    /// `PSp_n(q)`, `n` even.
    Symplectic,
    /// `Ω_n(q)`, `n` odd, `q` odd.
    OrthogonalOdd,
    /// `PΩ⁺_n(q)`, `n` even.
    OrthogonalPlus,
    /// `PΩ⁻_n(q)`, `n` even.
    OrthogonalMinus,
    G2,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
    TrialityD4,
    Suzuki,
    Ree,
    ReeF4,
}

impl LieFamily {
    fn is_classical(self) -> bool {
        use LieFamily::*;
        matches!(self, Linear | Unitary | Symplectic | OrthogonalOdd | OrthogonalPlus | OrthogonalMinus)
    }

    fn token(self) -> &'static str {
        use LieFamily::*;
        match self {
            Linear => "PSL",
            Unitary => "PSU",
            Symplectic => "PSp",
            OrthogonalOdd => "O",
            OrthogonalPlus => "O+",
            OrthogonalMinus => "O-",
            G2 => "G2",
            F4 => "F4",
            E6 => "E6",
            TwistedE6 => "2E6",
            E7 => "E7",
            E8 => "E8",
            TrialityD4 => "3D4",
            Suzuki => "2B2",
            Ree => "2G2",
            ReeF4 => "2F4",
        }
    }
}

macro_rules! sporadics {
    ($( $v:ident => $name:literal, $order:literal, $out:literal; )*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum Sporadic { $($v),* }

        impl Sporadic {
            pub const ALL: &'static [Sporadic] = &[$(Sporadic::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(Sporadic::$v => $name),* }
            }

            fn order_str(self) -> &'static str {
                match self { $(Sporadic::$v => $order),* }
            }

            pub fn out_order(self) -> u64 {
                match self { $(Sporadic::$v => $out),* }
            }

            pub fn from_name(s: &str) -> Result<Sporadic> {
                let t = s.trim();
                $( if t.eq_ignore_ascii_case($name) { return Ok(Sporadic::$v); } )*
                Err(Error::UnknownSporadic(t.to_string()))
            }
        }
    };
}

sporadics! {
    M11 => "M11", "7920", 1;
    M12 => "M12", "95040", 2;
    M22 => "M22", "443520", 2;
    M23 => "M23", "10200960", 1;
    M24 => "M24", "244823040", 1;
    J1 => "J1", "175560", 1;
    J2 => "J2", "604800", 2;
    J3 => "J3", "50232960", 2;
    J4 => "J4", "86775571046077562880", 1;
    HS => "HS", "44352000", 2;
    McL => "McL", "898128000", 2;
    Suz => "Suz", "448345497600", 2;
    Co1 => "Co1", "4157776806543360000", 1;
    Co2 => "Co2", "42305421312000", 1;
    Co3 => "Co3", "495766656000", 1;
    He => "He", "4030387200", 2;
    Fi22 => "Fi22", "64561751654400", 2;
    Fi23 => "Fi23", "4089470473293004800", 1;
    Fi24 => "Fi24'", "1255205709190661721292800", 2;
    HN => "HN", "273030912000000", 2;
    Ly => "Ly", "51765179004000000", 1;
    Th => "Th", "90745943887872000", 1;
    ON => "O'N", "460815505920", 2;
    Ru => "Ru", "145926144000", 1;
    B => "B", "4154781481226426191177580544000000", 1;
    M => "M", "808017424794512875886459904961710757005754368000000000", 1;
}

const TITS_ORDER: u64 = 17_971_200;

/// A finite simple group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleGroup {
    Cyclic(u64),
    Alternating(u32),
    /// `n` is the dimension of the natural module for classical families and 0 otherwise.
    Lie { family: LieFamily, n: u32, q: u64 },
    Sporadic(Sporadic),
    Tits,
}

/// Structure of `Out T` relevant to chief factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutProfile {
    /// Every chief factor of `Out T` is cyclic.
    AllCyclic,
    /// A unique noncyclic chief factor, isomorphic to `C2 × C2`.
    KleinFour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutInfo {
    pub order: u64,
    pub profile: OutProfile,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut m, mut f) = (q, 0u32);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn qpow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

fn minus_one(q: u64, e: u32) -> BigUint {
    qpow(q, e) - 1u32
}

fn plus_one(q: u64, e: u32) -> BigUint {
    qpow(q, e) + 1u32
}

fn gcd_u(a: u64, b: &BigUint) -> u64 {
    (b % a).to_u64().unwrap().gcd(&a)
}

impl SimpleGroup {
    pub fn is_abelian(&self) -> bool {
        matches!(self, SimpleGroup::Cyclic(_))
    }

    /// Untwisted Lie rank.
    pub fn lie_rank(&self) -> Option<u32> {
        use LieFamily::*;
        match *self {
            SimpleGroup::Lie { family, n, .. } => Some(match family {
                Linear | Unitary => n - 1,
                Symplectic | OrthogonalPlus | OrthogonalMinus => n / 2,
                OrthogonalOdd => (n - 1) / 2,
                G2 => 2,
                F4 => 4,
                E6 | TwistedE6 => 6,
                E7 => 7,
                E8 => 8,
                TrialityD4 => 4,
                Suzuki | Ree => 2,
                ReeF4 => 4,
            }),
            _ => None,
        }
    }

    /// Converts to normal form, rejecting parameters that do not give a simple group.
    pub fn normalize(self) -> Result<SimpleGroup> {
        use LieFamily::*;
        use SimpleGroup as S;
        let not_simple = |s: &str| Err(Error::NotSimple(s.to_string()));
        match self {
            S::Cyclic(p) => {
                if is_prime(p) {
                    Ok(self)
                } else {
                    not_simple(&format!("C{p}"))
                }
            }
            S::Alternating(m) => match m {
                3 => Ok(S::Cyclic(3)),
                0..=4 => not_simple(&format!("A{m}")),
                _ => Ok(self),
            },
            S::Sporadic(_) | S::Tits => Ok(self),
            S::Lie { family, n, q } => {
                let Some((p, f)) = prime_power(q) else {
                    return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
                };
                let lie = |family, n, q| S::Lie { family, n, q };
                let desc = format!("{}", lie(family, n, q));
                if !family.is_classical() {
                    let n = 0;
                    return match family {
                        G2 if q == 2 => not_simple(&desc),
                        Suzuki | ReeF4 if p != 2 || f % 2 == 0 => not_simple(&desc),
                        Suzuki | ReeF4 if q == 2 => not_simple(&desc),
                        Ree if p != 3 || f % 2 == 0 || q == 3 => not_simple(&desc),
                        _ => Ok(lie(family, n, q)),
                    };
                }
                match family {
                    Linear => match (n, q) {
                        (0 | 1, _) => not_simple(&desc),
                        (2, 2 | 3) => not_simple(&desc),
                        (2, 4 | 5) => Ok(S::Alternating(5)),
                        (2, 9) => Ok(S::Alternating(6)),
                        (3, 2) => Ok(lie(Linear, 2, 7)),
                        (4, 2) => Ok(S::Alternating(8)),
                        _ => Ok(self),
                    },
                    Unitary => match (n, q) {
                        (0 | 1, _) => not_simple(&desc),
                        (2, _) => lie(Linear, 2, q).normalize(),
                        (3, 2) => not_simple(&desc),
                        _ => Ok(self),
                    },
                    Symplectic => match (n, q) {
                        _ if n % 2 == 1 || n == 0 => Err(Error::InvalidArgument(desc)),
                        (2, _) => lie(Linear, 2, q).normalize(),
                        (4, 2) => not_simple(&desc),
                        (4, 3) => Ok(lie(Unitary, 4, 2)),
                        _ => Ok(self),
                    },
                    OrthogonalOdd => {
                        if n % 2 == 0 {
                            return Err(Error::InvalidArgument(desc));
                        }
                        if n == 1 {
                            return not_simple(&desc);
                        }
                        if p == 2 {
                            return lie(Symplectic, n - 1, q).normalize();
                        }
                        match n {
                            3 => lie(Linear, 2, q).normalize(),
                            5 => lie(Symplectic, 4, q).normalize(),
                            _ => Ok(self),
                        }
                    }
                    OrthogonalPlus => match n {
                        _ if n % 2 == 1 => Err(Error::InvalidArgument(desc)),
                        0 | 2 | 4 => not_simple(&desc),
                        6 => lie(Linear, 4, q).normalize(),
                        _ => Ok(self),
                    },
                    OrthogonalMinus => match n {
                        _ if n % 2 == 1 => Err(Error::InvalidArgument(desc)),
                        0 | 2 => not_simple(&desc),
                        4 => lie(Linear, 2, q * q).normalize(),
                        6 => lie(Unitary, 4, q).normalize(),
                        _ => Ok(self),
                    },
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize().is_ok_and(|n| n == *self)
    }

    /// Exact order.
    pub fn order(&self) -> BigUint {
        use LieFamily::*;
        match *self {
            SimpleGroup::Cyclic(p) => big(p),
            SimpleGroup::Alternating(m) => {
                let f: BigUint = (1..=m as u64).map(big).product();
                f / 2u32
            }
            SimpleGroup::Sporadic(s) => s.order_str().parse().unwrap(),
            SimpleGroup::Tits => big(TITS_ORDER),
            SimpleGroup::Lie { family, n, q } => match family {
                Linear => {
                    let mut o = qpow(q, n * (n - 1) / 2);
                    for i in 2..=n {
                        o *= minus_one(q, i);
                    }
                    o / (n as u64).gcd(&(q - 1))
                }
                Unitary => {
                    let mut o = qpow(q, n * (n - 1) / 2);
                    for i in 2..=n {
                        o *= if i % 2 == 0 { minus_one(q, i) } else { plus_one(q, i) };
                    }
                    o / (n as u64).gcd(&(q + 1))
                }
                Symplectic | OrthogonalOdd => {
                    let m = if family == Symplectic { n / 2 } else { (n - 1) / 2 };
                    let mut o = qpow(q, m * m);
                    for i in 1..=m {
                        o *= minus_one(q, 2 * i);
                    }
                    o / 2u64.gcd(&(q - 1))
                }
                OrthogonalPlus | OrthogonalMinus => {
                    let m = n / 2;
                    let qm = if family == OrthogonalPlus { minus_one(q, m) } else { plus_one(q, m) };
                    let d = gcd_u(4, &qm);
                    let mut o = qpow(q, m * (m - 1)) * qm;
                    for i in 1..m {
                        o *= minus_one(q, 2 * i);
                    }
                    o / d
                }
                G2 => qpow(q, 6) * minus_one(q, 6) * minus_one(q, 2),
                F4 => qpow(q, 24) * minus_one(q, 12) * minus_one(q, 8) * minus_one(q, 6) * minus_one(q, 2),
                E6 => {
                    let o = qpow(q, 36)
                        * [12, 9, 8, 6, 5, 2].iter().map(|&e| minus_one(q, e)).product::<BigUint>();
                    o / 3u64.gcd(&(q - 1))
                }
                TwistedE6 => {
                    let o = qpow(q, 36)
                        * minus_one(q, 12)
                        * plus_one(q, 9)
                        * minus_one(q, 8)
                        * minus_one(q, 6)
                        * plus_one(q, 5)
                        * minus_one(q, 2);
                    o / 3u64.gcd(&(q + 1))
                }
                E7 => {
                    let o = qpow(q, 63)
                        * [18, 14, 12, 10, 8, 6, 2].iter().map(|&e| minus_one(q, e)).product::<BigUint>();
                    o / 2u64.gcd(&(q - 1))
                }
                E8 => qpow(q, 120) * [30, 24, 20, 18, 14, 12, 8, 2].iter().map(|&e| minus_one(q, e)).product::<BigUint>(),
                TrialityD4 => {
                    qpow(q, 12) * (qpow(q, 8) + qpow(q, 4) + 1u32) * minus_one(q, 6) * minus_one(q, 2)
                }
                Suzuki => qpow(q, 2) * plus_one(q, 2) * minus_one(q, 1),
                Ree => qpow(q, 3) * plus_one(q, 3) * minus_one(q, 1),
                ReeF4 => qpow(q, 12) * plus_one(q, 6) * minus_one(q, 4) * plus_one(q, 3) * minus_one(q, 1),
            },
        }
    }

    /// Order and chief-factor profile of the outer automorphism group.
    pub fn out_info(&self) -> Result<OutInfo> {
        use LieFamily::*;
        let cyclic = |order| Ok(OutInfo { order, profile: OutProfile::AllCyclic });
        if !self.is_normalized() {
            return Err(Error::UnnormalizedDescriptor(self.to_string()));
        }
        match *self {
            SimpleGroup::Cyclic(p) => cyclic(p - 1),
            SimpleGroup::Alternating(m) => cyclic(if m == 6 { 4 } else { 2 }),
            SimpleGroup::Sporadic(s) => cyclic(s.out_order()),
            SimpleGroup::Tits => cyclic(2),
            SimpleGroup::Lie { family, n, q } => {
                let (p, f) = prime_power(q).unwrap();
                let f = f as u64;
                let order = match family {
                    Linear if n == 2 => 2u64.gcd(&(q - 1)) * f,
                    Linear => 2 * (n as u64).gcd(&(q - 1)) * f,
                    Unitary => (n as u64).gcd(&(q + 1)) * 2 * f,
                    Symplectic if n == 4 && p == 2 => 2 * f,
                    Symplectic => 2u64.gcd(&(q - 1)) * f,
                    OrthogonalOdd => 2 * f,
                    OrthogonalPlus => {
                        let m = n / 2;
                        if m == 4 {
                            if p == 2 {
                                6 * f
                            } else {
                                return Ok(OutInfo { order: 24 * f, profile: OutProfile::KleinFour });
                            }
                        } else if m % 2 == 0 {
                            let d = 2u64.gcd(&(q - 1));
                            d * d * 2 * f
                        } else {
                            gcd_u(4, &minus_one(q, m)) * 2 * f
                        }
                    }
                    OrthogonalMinus => gcd_u(4, &plus_one(q, n / 2)) * 2 * f,
                    G2 => {
                        if p == 3 {
                            2 * f
                        } else {
                            f
                        }
                    }
                    F4 => {
                        if p == 2 {
                            2 * f
                        } else {
                            f
                        }
                    }
                    E6 => 2 * 3u64.gcd(&(q - 1)) * f,
                    TwistedE6 => 3u64.gcd(&(q + 1)) * 2 * f,
                    E7 => 2u64.gcd(&(q - 1)) * f,
                    E8 => f,
                    TrialityD4 => 3 * f,
                    Suzuki | Ree | ReeF4 => f,
                };
                cyclic(order)
            }
        }
    }
}

impl fmt::Display for SimpleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SimpleGroup::Cyclic(p) => write!(f, "C{p}"),
            SimpleGroup::Alternating(m) => write!(f, "A{m}"),
            SimpleGroup::Sporadic(s) => write!(f, "{}", s.name()),
            SimpleGroup::Tits => write!(f, "2F4(2)'"),
            SimpleGroup::Lie { family, n, q } => {
                if family.is_classical() {
                    write!(f, "{}{}({})", family.token(), n, q)
                } else {
                    write!(f, "{}({})", family.token(), q)
                }
            }
        }
    }
}

impl FromStr for SimpleGroup {
    type Err = Error;

    /// Parses `C:7`, `A:12`, `L:PSL2:49`, `L:O+8:3`, `L:G2:5`, `Sp:M11` or `Tits`.
    fn from_str(s: &str) -> Result<SimpleGroup> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("tits") || s.eq_ignore_ascii_case("Sp:Tits") {
            return Ok(SimpleGroup::Tits);
        }
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("bad descriptor {s:?}"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match parts.as_slice() {
            ["C", p] => Ok(SimpleGroup::Cyclic(num(p)?)),
            ["A", m] => Ok(SimpleGroup::Alternating(num(m)? as u32)),
            ["Sp", name] => Ok(SimpleGroup::Sporadic(Sporadic::from_name(name)?)),
            ["L", fam, q] => {
                let q = num(q)?;
                use LieFamily::*;
                let exceptional = [
                    ("G2", G2),
                    ("F4", F4),
                    ("E6", E6),
                    ("2E6", TwistedE6),
                    ("E7", E7),
                    ("E8", E8),
                    ("3D4", TrialityD4),
                    ("2B2", Suzuki),
                    ("2G2", Ree),
                    ("2F4", ReeF4),
                ];
                if let Some((_, family)) = exceptional.iter().find(|(t, _)| t == fam) {
                    return Ok(SimpleGroup::Lie { family: *family, n: 0, q });
                }
                let classical =
                    [("PSL", Linear), ("PSU", Unitary), ("PSp", Symplectic), ("O+", OrthogonalPlus), ("O-", OrthogonalMinus), ("O", OrthogonalOdd)];
                for (tok, family) in classical {
                    if let Some(rest) = fam.strip_prefix(tok) {
                        if let Ok(n) = rest.parse::<u32>() {
                            return Ok(SimpleGroup::Lie { family, n, q });
                        }
                    }
                }
                Err(bad())
            }
            _ => Err(bad()),
        }
    }
}

/// Bound on orders kept in the lookup table of nonabelian simple groups.
pub const TABLE_LIMIT: u64 = 10_000_000;

/// All nonabelian simple groups of order at most [`TABLE_LIMIT`], plus the
/// sporadic groups and the Tits group, keyed by order.
pub fn order_table() -> &'static BTreeMap<BigUint, Vec<SimpleGroup>> {
    static TABLE: OnceLock<BTreeMap<BigUint, Vec<SimpleGroup>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use LieFamily::*;
        let limit = big(TABLE_LIMIT);
        let mut found: Vec<SimpleGroup> = Vec::new();
        let mut push = |g: SimpleGroup| {
            if let Ok(n) = g.normalize() {
                if !found.contains(&n) {
                    found.push(n);
                }
            }
        };
        for m in 5.. {
            let a = SimpleGroup::Alternating(m);
            if a.order() > limit {
                break;
            }
            push(a);
        }
        let qs: Vec<u64> = (2..5000u64).filter(|&q| prime_power(q).is_some()).collect();
        let classical: [(LieFamily, u32, u32); 6] = [
            (Linear, 2, 1),
            (Unitary, 3, 1),
            (Symplectic, 4, 2),
            (OrthogonalOdd, 7, 2),
            (OrthogonalPlus, 8, 2),
            (OrthogonalMinus, 8, 2),
        ];
        for (family, n0, step) in classical {
            let mut n = n0;
            loop {
                let mut any = false;
                for &q in &qs {
                    if family == OrthogonalOdd && q % 2 == 0 {
                        continue;
                    }
                    let g = SimpleGroup::Lie { family, n, q };
                    if g.order() > limit {
                        break;
                    }
                    any = true;
                    push(g);
                }
                if !any && n > n0 + 4 {
                    break;
                }
                n += step;
                if n > 40 {
                    break;
                }
            }
        }
        for family in [G2, F4, E6, TwistedE6, E7, E8, TrialityD4, Suzuki, Ree, ReeF4] {
            for &q in &qs {
                let g = SimpleGroup::Lie { family, n: 0, q };
                if g.normalize().is_err() {
                    continue;
                }
                if g.order() > limit {
                    break;
                }
                push(g);
            }
        }
        for &s in Sporadic::ALL {
            push(SimpleGroup::Sporadic(s));
        }
        push(SimpleGroup::Tits);
        let mut table: BTreeMap<BigUint, Vec<SimpleGroup>> = BTreeMap::new();
        for g in found {
            table.entry(g.order()).or_default().push(g);
        }
        for v in table.values_mut() {
            v.sort();
        }
        table
    })
}

/// Simple groups with the given order.
pub fn simple_groups_of_order(order: &BigUint) -> &'static [SimpleGroup] {
    order_table().get(order).map(|v| v.as_slice()).unwrap_or(&[])
}

/// Integer `n`-th root when exact.
pub(crate) fn exact_root(x: &BigUint, n: u32) -> Option<BigUint> {
    if n == 1 {
        return Some(x.clone());
    }
    if x.is_zero() || x.is_one() {
        return Some(x.clone());
    }
    let r = x.nth_root(n);
    (r.pow(n) == *x).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(family: LieFamily, n: u32, q: u64) -> SimpleGroup {
        SimpleGroup::Lie { family, n, q }
    }

    #[test]
    fn known_orders() {
        assert_eq!(SimpleGroup::Alternating(5).order(), big(60));
        assert_eq!(lie(LieFamily::Linear, 2, 7).order(), big(168));
        assert_eq!(lie(LieFamily::Linear, 3, 4).order(), big(20160));
        assert_eq!(lie(LieFamily::Unitary, 4, 2).order(), big(25920));
        assert_eq!(lie(LieFamily::Symplectic, 4, 3).order(), big(25920));
        assert_eq!(lie(LieFamily::G2, 0, 3).order(), big(4245696));
        assert_eq!(lie(LieFamily::Suzuki, 0, 8).order(), big(29120));
        assert_eq!(lie(LieFamily::OrthogonalPlus, 8, 2).order(), big(174182400));
        assert_eq!(lie(LieFamily::TrialityD4, 0, 2).order(), big(211341312));
        assert_eq!(lie(LieFamily::ReeF4, 0, 2).order(), big(2 * TITS_ORDER));
        assert_eq!(SimpleGroup::Sporadic(Sporadic::M11).order(), big(7920));
    }

    #[test]
    fn sporadic_orders_match_factorizations() {
        let fact: &[(Sporadic, &[(u64, u32)])] = &[
            (Sporadic::M12, &[(2, 6), (3, 3), (5, 1), (11, 1)]),
            (Sporadic::J4, &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)]),
            (Sporadic::Co1, &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]),
            (
                Sporadic::M,
                &[
                    (2, 46),
                    (3, 20),
                    (5, 9),
                    (7, 6),
                    (11, 2),
                    (13, 3),
                    (17, 1),
                    (19, 1),
                    (23, 1),
                    (29, 1),
                    (31, 1),
                    (41, 1),
                    (47, 1),
                    (59, 1),
                    (71, 1),
                ],
            ),
            (Sporadic::Ly, &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)]),
        ];
        for (s, f) in fact {
            let prod: BigUint = f.iter().map(|&(p, e)| big(p).pow(e)).product();
            assert_eq!(SimpleGroup::Sporadic(*s).order(), prod, "{}", s.name());
        }
    }

    #[test]
    fn normalization_conventions() {
        use LieFamily::*;
        assert_eq!(lie(Linear, 2, 4).normalize().unwrap(), SimpleGroup::Alternating(5));
        assert_eq!(lie(Linear, 2, 5).normalize().unwrap(), SimpleGroup::Alternating(5));
        assert_eq!(lie(Linear, 2, 9).normalize().unwrap(), SimpleGroup::Alternating(6));
        assert_eq!(lie(Linear, 4, 2).normalize().unwrap(), SimpleGroup::Alternating(8));
        assert_eq!(lie(Linear, 3, 2).normalize().unwrap(), lie(Linear, 2, 7));
        assert_eq!(lie(Symplectic, 4, 3).normalize().unwrap(), lie(Unitary, 4, 2));
        assert_eq!(lie(OrthogonalMinus, 4, 3).normalize().unwrap(), SimpleGroup::Alternating(6));
        assert_eq!(lie(OrthogonalMinus, 4, 4).normalize().unwrap(), lie(Linear, 2, 16));
        assert!(lie(Linear, 2, 3).normalize().is_err());
        assert!(SimpleGroup::Cyclic(6).normalize().is_err());
    }

    #[test]
    fn only_one_order_collision_in_table() {
        let limit = big(TABLE_LIMIT);
        let collisions: Vec<_> = order_table().iter().filter(|(o, v)| **o <= limit && v.len() > 1).collect();
        assert_eq!(collisions.len(), 1);
        assert_eq!(collisions[0].0, &big(20160));
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!("C:7".parse::<SimpleGroup>().unwrap(), SimpleGroup::Cyclic(7));
        assert_eq!("A:12".parse::<SimpleGroup>().unwrap(), SimpleGroup::Alternating(12));
        assert_eq!("L:PSL2:49".parse::<SimpleGroup>().unwrap(), lie(LieFamily::Linear, 2, 49));
        assert_eq!("L:O+8:3".parse::<SimpleGroup>().unwrap(), lie(LieFamily::OrthogonalPlus, 8, 3));
        assert_eq!("Sp:M11".parse::<SimpleGroup>().unwrap(), SimpleGroup::Sporadic(Sporadic::M11));
        assert!("Sp:M13".parse::<SimpleGroup>().is_err());
        assert!("X:1".parse::<SimpleGroup>().is_err());
    }

    #[test]
    fn out_orders() {
        assert_eq!(SimpleGroup::Alternating(6).out_info().unwrap().order, 4);
        assert_eq!(SimpleGroup::Alternating(5).out_info().unwrap().order, 2);
        assert_eq!(lie(LieFamily::Linear, 2, 7).out_info().unwrap().order, 2);
        assert_eq!(lie(LieFamily::Linear, 3, 4).out_info().unwrap().order, 12);
        let o8 = lie(LieFamily::OrthogonalPlus, 8, 3).out_info().unwrap();
        assert_eq!(o8.order, 24);
        assert_eq!(o8.profile, OutProfile::KleinFour);
        assert_eq!(lie(LieFamily::OrthogonalPlus, 8, 2).out_info().unwrap().profile, OutProfile::AllCyclic);
        assert!(lie(LieFamily::Symplectic, 4, 3).out_info().is_err());
    }
}
