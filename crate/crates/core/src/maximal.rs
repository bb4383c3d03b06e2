//! Maximal subgroups, the maximal subgroups avoiding a normal subgroup, and
//! the zeta function `ζ_{G,N}(s) = Σ |G:M|^(-s)` over maximal `M` not containing `N`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::alpha::alpha;
use crate::cohomology::complement_info;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::interval::Interval;
use crate::lattice::Lattice;
use crate::simple::SimpleGroup;
use crate::structure::{identify_chief_factor, minimal_normal_subgroups, unique_minimal_normal};

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Group,
    pub class_length: u64,
    /// `|G : representative|`.
    pub index: u64,
    pub order: u64,
    pub(crate) lattice_index: usize,
}

fn class_of(lat: &Lattice, i: usize) -> SubgroupClass {
    let c = &lat.classes[i];
    SubgroupClass {
        representative: lat.table.to_group(&c.sub),
        class_length: c.length,
        index: (lat.order() / c.sub.order) as u64,
        order: c.sub.order as u64,
        lattice_index: i,
    }
}

/// All subgroups up to conjugacy, by increasing order.
pub fn subgroup_classes(g: &Group) -> Result<Vec<SubgroupClass>> {
    let lat = Lattice::of(g)?;
    Ok((0..lat.classes.len()).map(|i| class_of(&lat, i)).collect())
}

/// Conjugacy classes of maximal subgroups, by increasing index.
pub fn maximal_subgroups(g: &Group) -> Result<Vec<SubgroupClass>> {
    let lat = Lattice::of(g)?;
    let mut v: Vec<SubgroupClass> = lat.maximal_classes().into_iter().map(|i| class_of(&lat, i)).collect();
    v.sort_by_key(|c| (c.index, c.lattice_index));
    Ok(v)
}

/// Classes of maximal subgroups not containing `n`, by increasing index.
///
/// The representatives form `𝓒(G,N)`; with their class lengths they describe `𝓜(G,N)`.
pub fn maximal_avoiding(g: &Group, n: &Group) -> Result<Vec<SubgroupClass>> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !g.is_normal_subgroup(n) {
        return Err(Error::NotNormal);
    }
    let lat = Lattice::of(g)?;
    let nb = lat.table.sub_of_group(n);
    Ok(maximal_subgroups(g)?
        .into_iter()
        .filter(|c| !nb.is_subset(&lat.classes[c.lattice_index].sub))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaTerm {
    pub index: u64,
    /// Number of maximal subgroups of this index, `m_n(G,N)`.
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaResult {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub terms: Vec<ZetaTerm>,
    /// Width `n` when `N = T^n` is a minimal normal subgroup.
    pub n_width: Option<u32>,
    pub simple_type: Option<SimpleGroup>,
    /// `3/2` for abelian `T` and `1` otherwise.
    pub iota: Option<String>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn inv_pow(n: u64, s: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(s))
}

impl ZetaResult {
    fn from_terms(terms: Vec<ZetaTerm>, s: u32) -> ZetaResult {
        let value = terms
            .iter()
            .fold(BigRational::zero(), |acc, t| acc + inv_pow(t.index, s) * BigInt::from(t.multiplicity));
        ZetaResult { value, terms, n_width: None, simple_type: None, iota: None }
    }

    /// `Σ m_n / |N|^s`, the alternative reading with `|N|` in the denominator.
    pub fn normal_order_form(&self, n_order: &BigUint, s: u32) -> BigRational {
        let total: u64 = self.terms.iter().map(|t| t.multiplicity).sum();
        BigRational::new(BigInt::from(total), BigInt::from(n_order.clone()).pow(s))
    }

    /// Value at a real exponent, enclosed in an interval.
    pub fn at_real(&self, s: f64) -> Interval {
        let e = Interval::point(-s);
        self.terms.iter().fold(Interval::point(0.0), |acc, t| {
            let term = Interval::ln_biguint(&BigUint::from(t.index)).mul(e).exp();
            acc.add(term.mul(Interval::point(t.multiplicity as f64)))
        })
    }
}

fn index_terms(classes: &[SubgroupClass], weight: impl Fn(&SubgroupClass) -> u64) -> Vec<ZetaTerm> {
    let mut m: BTreeMap<u64, u64> = BTreeMap::new();
    for c in classes {
        *m.entry(c.index).or_insert(0) += weight(c);
    }
    m.into_iter().map(|(index, multiplicity)| ZetaTerm { index, multiplicity }).collect()
}

fn annotate(g: &Group, n: &Group, z: &mut ZetaResult) -> Result<()> {
    if n.is_trivial() {
        return Ok(());
    }
    if minimal_normal_subgroups(g)?.iter().any(|m| m.same_group(n)) {
        let (t, w) = identify_chief_factor(n, &g.subgroup_unchecked(Vec::new()))?;
        z.simple_type = Some(t);
        z.n_width = Some(w);
        z.iota = Some(if t.is_abelian() { "3/2" } else { "1" }.to_string());
    }
    Ok(())
}

/// `ζ_{G,N}(s)` for a positive integer `s`, as an exact rational.
pub fn zeta(g: &Group, n: &Group, s: u32) -> Result<ZetaResult> {
    let classes = maximal_avoiding(g, n)?;
    let mut z = ZetaResult::from_terms(index_terms(&classes, |c| c.class_length), s);
    annotate(g, n, &mut z)?;
    Ok(z)
}

/// `ζ_{G,N}(s)` for a real `s`, as a certified interval.
pub fn zeta_real(g: &Group, n: &Group, s: f64) -> Result<Interval> {
    Ok(zeta(g, n, 1)?.at_real(s))
}

/// `Σ_{M ∈ 𝓒(G,N)} |G:M|^(-(s-1))`, which equals `ζ_{G,N}(s)` when `N` is the
/// unique minimal normal subgroup.
pub fn zeta_by_classes(g: &Group, n: &Group, s: u32) -> Result<ZetaResult> {
    let u = unique_minimal_normal(g)?;
    if !u.same_group(n) {
        return Err(Error::NotUniqueMinimalNormal);
    }
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let classes = maximal_avoiding(g, n)?;
    let mut z = ZetaResult::from_terms(index_terms(&classes, |_| 1), s - 1);
    annotate(g, n, &mut z)?;
    Ok(z)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaBoundReport {
    pub simple_type: SimpleGroup,
    pub width: u32,
    pub d: u32,
    pub iota: String,
    #[serde(serialize_with = "ser_rational")]
    pub zeta: BigRational,
    pub zeta_interval: Interval,
    /// `α(T)^(-n(d-ι))`.
    pub bound: Interval,
    /// Certified strict inequality.
    pub holds: bool,
}

/// Evaluates both sides of `ζ_{G,N}(d) < α(T)^(-n(d-ι))` for the unique
/// minimal normal subgroup `N = T^n`.
pub fn verify_zeta_bound(g: &Group, d: u32) -> Result<ZetaBoundReport> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2".into()));
    }
    let n = unique_minimal_normal(g)?;
    let z = zeta(g, &n, d)?;
    let (t, width) = identify_chief_factor(&n, &g.subgroup_unchecked(Vec::new()))?;
    let a = alpha(&t.normalize()?)?.alpha;
    let iota = if t.is_abelian() { 1.5 } else { 1.0 };
    let exponent = Interval::point(-(width as f64) * (d as f64 - iota));
    let bound = a.ln().mul(exponent).exp();
    let zi = Interval::from_rational(&z.value);
    Ok(ZetaBoundReport {
        simple_type: t,
        width,
        d,
        iota: if t.is_abelian() { "3/2" } else { "1" }.to_string(),
        holds: zi.lt(&bound),
        zeta: z.value,
        zeta_interval: zi,
        bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementReport {
    /// `|𝓒(G,N)|`.
    pub classes: u64,
    /// `|H¹(G/N, N)|` when complements exist, from the linear system.
    pub cohomology_classes: String,
    pub n_order: u64,
    /// `|𝓒(G,N)|^2 ≤ |N|`.
    pub bound_holds: bool,
}

/// Counts conjugacy classes of complements of an abelian unique minimal normal
/// subgroup, and checks the count against cohomology and against `|N|^(1/2)`.
pub fn complement_classes(g: &Group, n: &Group) -> Result<ComplementReport> {
    let u = unique_minimal_normal(g)?;
    if !u.same_group(n) {
        return Err(Error::NotUniqueMinimalNormal);
    }
    if !n.is_abelian() {
        return Err(Error::InvalidArgument("minimal normal subgroup is not abelian".into()));
    }
    let lat = Lattice::of(g)?;
    let nb = lat.table.sub_of_group(n);
    let classes = maximal_avoiding(g, n)?;
    for c in &classes {
        let mut meet = nb.bits.clone();
        meet.intersect_with(&lat.classes[c.lattice_index].sub.bits);
        if meet.count_ones(..) != 1 {
            return Err(Error::InvalidArgument("maximal subgroup meets N nontrivially".into()));
        }
    }
    let h1 = complement_info(g, n, &g.subgroup_unchecked(Vec::new()))?.classes();
    let count = classes.len() as u64;
    if h1 != BigUint::from(count) {
        return Err(Error::InvalidArgument(format!("{count} complement classes but |H¹| = {h1}")));
    }
    let n_order = n.order_u64().unwrap();
    Ok(ComplementReport {
        classes: count,
        cohomology_classes: h1.to_string(),
        n_order,
        bound_holds: count * count <= n_order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProjectionCase {
    /// Every projection of `M ∩ N` is all of `T`.
    Case1,
    /// Every projection is proper and nontrivial.
    Case2,
    /// `M ∩ N = 1`.
    Case3,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub case: ProjectionCase,
    /// Orders of the projections `H_i`.
    pub projection_orders: Vec<u64>,
}

/// Decides which of the three projection cases a maximal subgroup `m` not
/// containing the nonabelian minimal normal subgroup `n = T^k` falls into.
pub fn classify_maximal_projection(g: &Group, n: &Group, m: &Group) -> Result<ProjectionReport> {
    let u = unique_minimal_normal(g)?;
    if !u.same_group(n) {
        return Err(Error::NotUniqueMinimalNormal);
    }
    if n.is_abelian() {
        return Err(Error::InvalidArgument("minimal normal subgroup is abelian".into()));
    }
    if n.is_subgroup_of(m) {
        return Err(Error::InvalidArgument("subgroup contains N".into()));
    }
    let lat = Lattice::of(g)?;
    let table = &lat.table;
    let nb = table.sub_of_group(n);
    let mb = table.sub_of_group(m);
    let mut meet = nb.bits.clone();
    meet.intersect_with(&mb.bits);
    let meet = table.to_group(&table.sub_from_bits(meet));
    // the simple direct factors of N are its minimal normal subgroups
    let factors: Vec<Group> = minimal_normal_subgroups(n)?;
    let t_order = factors[0].order_u64().unwrap();
    let n_order = n.order_u64().unwrap();
    let mut orders = Vec::new();
    for i in 0..factors.len() {
        let others: Vec<_> = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, f)| f.generators().to_vec())
            .collect();
        let kernel = g.subgroup_unchecked(others);
        let k = kernel.order_u64().unwrap();
        debug_assert_eq!(k * t_order, n_order);
        let joined = meet.join_in(&kernel, g);
        orders.push(joined.order_u64().unwrap() / k);
    }
    let case_of = |o: u64| {
        if o == t_order {
            ProjectionCase::Case1
        } else if o == 1 {
            ProjectionCase::Case3
        } else {
            ProjectionCase::Case2
        }
    };
    let case = case_of(orders[0]);
    if orders.iter().any(|&o| case_of(o) != case) {
        return Err(Error::CaseInconsistency);
    }
    Ok(ProjectionReport { case, projection_orders: orders })
}

/// Value of a finite sum `Σ w_i / n_i^s`, useful for closed forms such as
/// `2/6^s + 1/10^s + 2/15^s`.
pub fn index_sum(terms: &[(u64, u64)], s: u32) -> BigRational {
    terms
        .iter()
        .fold(BigRational::zero(), |acc, &(n, w)| acc + inv_pow(n, s) * BigInt::from(w))
}

/// Rational as `f64`, for display.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn a5_maximals_and_zeta() {
        let a5 = Group::alternating(5);
        let m = maximal_subgroups(&a5).unwrap();
        let idx: Vec<(u64, u64)> = m.iter().map(|c| (c.index, c.class_length)).collect();
        assert_eq!(idx, vec![(5, 5), (6, 6), (10, 10)]);
        assert_eq!(subgroup_classes(&a5).unwrap().len(), 9);
        assert_eq!(zeta(&a5, &a5, 2).unwrap().value, rat(7, 15));
        assert_eq!(zeta_by_classes(&a5, &a5, 2).unwrap().value, rat(7, 15));
    }

    #[test]
    fn s4_avoiding_v4() {
        let s4 = Group::symmetric(4);
        assert_eq!(subgroup_classes(&s4).unwrap().len(), 11);
        let v4 = s4.normal_closure(&[Permutation::from_cycles(4, "(0,1)(2,3)").unwrap()]);
        let av = maximal_avoiding(&s4, &v4).unwrap();
        assert_eq!(av.iter().map(|c| c.index).collect::<Vec<_>>(), vec![4]);
        assert_eq!(zeta(&s4, &v4, 2).unwrap().value, rat(1, 4));
        let r = verify_zeta_bound(&s4, 2).unwrap();
        assert!(r.holds);
        assert!(r.bound.contains(0.5));
        let c = complement_classes(&s4, &v4).unwrap();
        assert_eq!(c.classes, 1);
    }

    #[test]
    fn cyclic_four() {
        let c4 = Group::cyclic(4);
        let c2 = c4.subgroup(vec![Permutation::from_cycles(4, "(0,2)(1,3)").unwrap()]).unwrap();
        assert!(maximal_avoiding(&c4, &c2).unwrap().is_empty());
        assert!(zeta(&c4, &c2, 3).unwrap().value.is_zero());
        assert_eq!(complement_classes(&c4, &c2).unwrap().classes, 0);
    }

    #[test]
    fn almost_simple_projection() {
        let a5 = Group::alternating(5);
        for c in maximal_subgroups(&a5).unwrap() {
            let r = classify_maximal_projection(&a5, &a5, &c.representative).unwrap();
            assert_eq!(r.case, ProjectionCase::Case2);
        }
    }
}
