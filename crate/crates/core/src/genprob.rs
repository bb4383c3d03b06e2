//! Probability `P_d(G)` that `d` uniformly random elements generate `G`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{cap_exceeded, Error, Result};
use crate::group::Group;
use crate::hom::quotient;
use crate::lattice::Lattice;
use crate::maximal::{ser_rational, zeta};
use crate::perm::Permutation;
use crate::structure::{chief_series, is_uniserial};

fn ser_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Enumeration,
    Moebius,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenProbability {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub d: u32,
    pub method: Method,
    /// Number of generating `d`-tuples.
    #[serde(serialize_with = "ser_biguint")]
    pub count: BigUint,
}

impl GenProbability {
    fn new(g: &Group, d: u32, count: BigUint, method: Method) -> GenProbability {
        let total = g.order().pow(d);
        let value = BigRational::new(BigInt::from(count.clone()), BigInt::from(total));
        GenProbability { value, d, method, count }
    }
}

/// Counts generating tuples directly. The first coordinate runs over class
/// representatives, weighted by class size.
pub fn p_exact_enum(g: &Group, d: u32) -> Result<GenProbability> {
    if d == 0 {
        let c = if g.is_trivial() { 1u32 } else { 0 };
        return Ok(GenProbability::new(g, 0, BigUint::from(c), Method::Enumeration));
    }
    let n = g.order_for_enumeration()?;
    let cap = g.limits().max_enumeration;
    let work = (n as u128).checked_pow(d).unwrap_or(u128::MAX);
    if work > cap as u128 {
        return Err(cap_exceeded("|G|^d for enumeration", work, cap));
    }
    let elems = g.elements()?;
    let classes = g.conjugacy_classes()?;
    let rest = (n as u128).pow(d - 1) as u64;
    let jobs: Vec<(usize, u64)> = (0..classes.len()).flat_map(|c| (0..rest).map(move |r| (c, r))).collect();
    let count: u64 = jobs
        .par_iter()
        .map(|&(c, r)| {
            let mut tuple: Vec<Permutation> = Vec::with_capacity(d as usize);
            tuple.push(classes[c].representative.clone());
            let mut r = r;
            for _ in 1..d {
                tuple.push(elems[(r % n) as usize].clone());
                r /= n;
            }
            if g.is_generated_by(&tuple) {
                classes[c].size
            } else {
                0
            }
        })
        .sum();
    Ok(GenProbability::new(g, d, BigUint::from(count), Method::Enumeration))
}

/// `Σ_H μ(H,G)|H|^d` over the subgroup lattice.
pub fn p_exact_mobius(g: &Group, d: u32) -> Result<GenProbability> {
    let lat = Lattice::of(g)?;
    let mu = lat.mobius();
    let mut total = BigInt::zero();
    for (c, &m) in lat.classes.iter().zip(mu) {
        if m == 0 {
            continue;
        }
        total += BigInt::from(m) * BigInt::from(c.length) * BigInt::from(c.sub.order as u64).pow(d);
    }
    let count = total.to_biguint().ok_or_else(|| Error::InvalidArgument("negative tuple count".into()))?;
    Ok(GenProbability::new(g, d, count, Method::Moebius))
}

/// Exact `P_d(G)`, through the lattice when it is within the caps and by
/// enumeration otherwise.
pub fn p_exact(g: &Group, d: u32) -> Result<GenProbability> {
    if g.is_trivial() {
        return Ok(GenProbability::new(g, d, BigUint::one(), Method::Enumeration));
    }
    match g.order_u64() {
        Some(n) if n <= g.limits().max_lattice_order => p_exact_mobius(g, d),
        _ => p_exact_enum(g, d),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub successes: u64,
    pub seed: u64,
}

const BLOCK: u64 = 4096;

/// Estimates `P_d(G)` from independent uniform tuples.
///
/// Samples are split into fixed blocks of 4096; block `b` draws from stream
/// `b` of a ChaCha generator keyed by `seed`, so the result does not depend on
/// how blocks are spread over threads.
pub fn p_montecarlo(g: &Group, d: u32, samples: u64, seed: u64) -> MonteCarloEstimate {
    if g.is_trivial() || samples == 0 {
        let mean = if samples == 0 { 0.0 } else { 1.0 };
        return MonteCarloEstimate { mean, stderr: 0.0, samples, successes: samples, seed };
    }
    g.chain().ensure_explicit();
    let blocks = samples.div_ceil(BLOCK);
    let successes: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = BLOCK.min(samples - b * BLOCK);
            let mut hits = 0u64;
            for _ in 0..len {
                let tuple: Vec<Permutation> = (0..d).map(|_| g.random_element(&mut rng)).collect();
                if g.is_generated_by(&tuple) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let mean = successes as f64 / samples as f64;
    let stderr = (mean * (1.0 - mean) / samples as f64).sqrt();
    MonteCarloEstimate { mean, stderr, samples, successes, seed }
}

/// The quotient `G/N` as a permutation group; `G` itself when `N` is trivial.
pub fn quotient_group(g: &Group, n: &Group) -> Result<Group> {
    if n.is_trivial() {
        if !g.is_normal_subgroup(n) {
            return Err(Error::NotSubgroup);
        }
        return Ok(g.clone());
    }
    Ok(quotient(g, n)?.image().clone())
}

/// `P_d(G,N) = P_d(G) / P_d(G/N)`.
pub fn p_conditional(g: &Group, n: &Group, d: u32) -> Result<BigRational> {
    let q = quotient_group(g, n)?;
    let pq = p_exact(&q, d)?.value;
    if pq.is_zero() {
        return Err(Error::QuotientNotGenerated);
    }
    Ok(p_exact(g, d)?.value / pq)
}

#[derive(Clone, Debug, Serialize)]
pub struct GaschutzReport {
    pub d: u32,
    #[serde(serialize_with = "ser_rational")]
    pub p_group: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub p_quotient: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub zeta: BigRational,
    /// `(1 - ζ_{G,N}(d)) P_d(G/N)`.
    #[serde(serialize_with = "ser_rational")]
    pub lower_bound: BigRational,
    pub lower_bound_holds: bool,
    /// `P_d(G) ≤ P_d(G/N)`.
    pub sandwich_holds: bool,
}

impl GaschutzReport {
    pub fn holds(&self) -> bool {
        self.lower_bound_holds && self.sandwich_holds
    }
}

/// Checks `P_d(G) ≥ (1 - ζ_{G,N}(d)) P_d(G/N)` and `P_d(G) ≤ P_d(G/N)` exactly.
pub fn gaschutz_check(g: &Group, n: &Group, d: u32) -> Result<GaschutzReport> {
    let z = zeta(g, n, d)?.value;
    let q = quotient_group(g, n)?;
    let p_group = p_exact(g, d)?.value;
    let p_quotient = p_exact(&q, d)?.value;
    let lower_bound = (BigRational::one() - &z) * &p_quotient;
    Ok(GaschutzReport {
        d,
        lower_bound_holds: p_group >= lower_bound,
        sandwich_holds: p_group <= p_quotient,
        p_group,
        p_quotient,
        zeta: z,
        lower_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorZeta {
    pub factor: String,
    pub frattini: bool,
    /// `ζ_{G/G_i, G_{i-1}/G_i}(d)`, zero for Frattini factors.
    #[serde(serialize_with = "ser_rational")]
    pub zeta: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerRow {
    /// Order of the term `N = G_i` of the chief series.
    pub normal_order: String,
    /// Product of `1 - ζ` over the chief factors below `N`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    /// `P_d(G) / P_d(G/N)`.
    #[serde(serialize_with = "ser_rational")]
    pub ratio: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub d: u32,
    #[serde(serialize_with = "ser_rational")]
    pub p_group: BigRational,
    /// Chief factors from the top down.
    pub factors: Vec<FactorZeta>,
    /// One row per nontrivial term of the chief series, from the top down.
    pub rows: Vec<TowerRow>,
}

impl TowerReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Walks the unique chief series `G = G_0 > ... > G_l = 1` and, for every
/// term `N = G_i`, compares `Π_{j > i} (1 - ζ_{G/G_j, G_{j-1}/G_j}(d))` with
/// `P_d(G)/P_d(G/N)`. Frattini factors contribute exactly 1.
pub fn tower_product_bound(g: &Group, d: u32) -> Result<TowerReport> {
    if !is_uniserial(g)? {
        return Err(Error::NotUniserial);
    }
    let cs = chief_series(g)?;
    let p_group = p_exact(g, d)?.value;
    let mut factors = Vec::new();
    for f in &cs.factors {
        let gi = &f.lower;
        let z = if f.is_frattini {
            BigRational::zero()
        } else if gi.is_trivial() {
            zeta(g, &f.upper, d)?.value
        } else {
            let q = quotient(g, gi)?;
            let top = q.image_of_subgroup(&f.upper);
            zeta(q.image(), &top, d)?.value
        };
        factors.push(FactorZeta { factor: f.label(), frattini: f.is_frattini, zeta: z });
    }
    let mut rows = Vec::new();
    for (i, f) in cs.factors.iter().enumerate() {
        let n = &f.upper;
        let bound = factors[i..].iter().fold(BigRational::one(), |acc, z| acc * (BigRational::one() - &z.zeta));
        let pq = p_exact(&quotient_group(g, n)?, d)?.value;
        let ratio = if pq.is_zero() { BigRational::zero() } else { &p_group / pq };
        rows.push(TowerRow { normal_order: n.order().to_string(), holds: bound <= ratio, bound, ratio });
    }
    Ok(TowerReport { d, p_group, factors, rows })
}

/// Decimal rendering of a probability.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn small_values() {
        assert_eq!(p_exact_enum(&Group::cyclic(2), 2).unwrap().value, rat(3, 4));
        assert_eq!(p_exact_enum(&Group::symmetric(3), 2).unwrap().value, rat(1, 2));
        assert_eq!(p_exact_mobius(&Group::symmetric(3), 2).unwrap().value, rat(1, 2));
        assert_eq!(p_exact_mobius(&Group::symmetric(4), 2).unwrap().value, rat(3, 8));
        assert_eq!(p_exact_mobius(&Group::cyclic(7), 1).unwrap().value, rat(6, 7));
    }

    #[test]
    fn a5_both_ways() {
        let a5 = Group::alternating(5);
        let e = p_exact_enum(&a5, 2).unwrap();
        let m = p_exact_mobius(&a5, 2).unwrap();
        assert_eq!(e.value, rat(19, 30));
        assert_eq!(e.count, m.count);
    }

    #[test]
    fn montecarlo_is_reproducible() {
        let a5 = Group::alternating(5);
        let a = p_montecarlo(&a5, 2, 5000, 1);
        let b = p_montecarlo(&a5, 2, 5000, 1);
        assert_eq!(a.successes, b.successes);
        assert!((a.mean - 19.0 / 30.0).abs() < 4.0 * a.stderr);
        let t = p_montecarlo(&Group::trivial(3), 2, 10, 0);
        assert_eq!((t.mean, t.stderr), (1.0, 0.0));
    }

    #[test]
    fn s4_tower_is_tight() {
        let r = tower_product_bound(&Group::symmetric(4), 2).unwrap();
        assert!(r.holds());
        let bounds: Vec<BigRational> = r.rows.iter().map(|x| x.bound.clone()).collect();
        assert_eq!(bounds, vec![rat(3, 8), rat(1, 2), rat(3, 4)]);
        let ratios: Vec<BigRational> = r.rows.iter().map(|x| x.ratio.clone()).collect();
        assert_eq!(ratios, bounds);
    }
}
