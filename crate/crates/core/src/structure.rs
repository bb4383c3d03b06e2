//! Normal subgroups, chief series and the Frattini subgroup.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::complement_info;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::Lattice;
use crate::simple::{exact_root, order_table, prime_power, SimpleGroup};

/// All normal subgroups, sorted by order and then by discovery.
///
/// Every normal subgroup is a join of normal closures of single elements, so
/// the closures of class representatives together with all their joins
/// exhaust the normal subgroups.
pub fn normal_subgroups(g: &Group) -> Result<Arc<Vec<Group>>> {
    g.normals_cell().get_or_init(|| compute_normals(g).map(Arc::new)).clone()
}

fn compute_normals(g: &Group) -> Result<Vec<Group>> {
    let classes = g.conjugacy_classes()?;
    let mut list: Vec<Group> = vec![g.subgroup_unchecked(Vec::new())];
    let push = |list: &mut Vec<Group>, n: Group| {
        let dup = list.iter().any(|m| m.order() == n.order() && n.is_subgroup_of(m));
        if !dup {
            list.push(n);
        }
    };
    for c in classes.iter() {
        if c.representative.is_identity() {
            continue;
        }
        let n = g.normal_closure(std::slice::from_ref(&c.representative));
        push(&mut list, n);
    }
    let mut j = 0;
    while j < list.len() {
        for i in 0..j {
            let (a, b) = (&list[i], &list[j]);
            if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                continue;
            }
            let joined = a.join_in(b, g);
            push(&mut list, joined);
        }
        j += 1;
    }
    let mut idx: Vec<usize> = (0..list.len()).collect();
    let orders: Vec<BigUint> = list.iter().map(|x| x.order()).collect();
    idx.sort_by(|&a, &b| orders[a].cmp(&orders[b]).then(a.cmp(&b)));
    Ok(idx.into_iter().map(|i| list[i].clone()).collect())
}

/// Whether the normal subgroups form a chain.
pub fn is_uniserial(g: &Group) -> Result<bool> {
    let ns = normal_subgroups(g)?;
    Ok(ns.windows(2).all(|w| w[0].order() < w[1].order() && w[0].is_subgroup_of(&w[1])))
}

/// Minimal normal subgroups, in the order of [`normal_subgroups`].
pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    let ns = normal_subgroups(g)?;
    let nontrivial: Vec<&Group> = ns.iter().filter(|n| !n.is_trivial()).collect();
    Ok(nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .map(|n| (*n).clone())
        .collect())
}

/// The unique minimal normal subgroup, if there is exactly one.
pub fn unique_minimal_normal(g: &Group) -> Result<Group> {
    let mut mins = minimal_normal_subgroups(g)?;
    if mins.len() == 1 {
        Ok(mins.pop().unwrap())
    } else {
        Err(Error::NotUniqueMinimalNormal)
    }
}

#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub upper: Group,
    pub lower: Group,
    pub simple_type: SimpleGroup,
    pub width: u32,
    /// Whether `upper/lower` lies in the Frattini subgroup of `G/lower`.
    pub is_frattini: bool,
}

impl ChiefFactor {
    pub fn is_abelian(&self) -> bool {
        self.simple_type.is_abelian()
    }

    /// Compact name such as `C2^4` or `A5^2`.
    pub fn label(&self) -> String {
        let base = short_name(&self.simple_type);
        if self.width == 1 {
            base
        } else {
            format!("{base}^{}", self.width)
        }
    }
}

fn short_name(t: &SimpleGroup) -> String {
    match t {
        SimpleGroup::Cyclic(p) => format!("C{p}"),
        SimpleGroup::Alternating(m) => format!("A{m}"),
        _ => t.to_string(),
    }
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub ambient: Group,
    /// From the top of the group down to the trivial subgroup.
    pub factors: Vec<ChiefFactor>,
    /// Whether this is the only chief series.
    pub unique: bool,
}

impl ChiefSeries {
    /// Terms `G = G_0 > G_1 > ... > G_l = 1`.
    pub fn terms(&self) -> Vec<Group> {
        let mut t: Vec<Group> = self.factors.iter().map(|f| f.upper.clone()).collect();
        t.push(self.factors.last().map_or_else(|| self.ambient.clone(), |f| f.lower.clone()));
        t
    }
}

/// A chief series built bottom-up from the normal subgroup list.
pub fn chief_series(g: &Group) -> Result<ChiefSeries> {
    let ns = normal_subgroups(g)?;
    let unique = is_uniserial(g)?;
    let mut terms = vec![ns[0].clone()];
    let top = g.order();
    while terms.last().unwrap().order() < top {
        let cur = terms.last().unwrap();
        let co = cur.order();
        let next = ns
            .iter()
            .find(|n| n.order() > co && cur.is_subgroup_of(n))
            .expect("the whole group is normal");
        terms.push(next.clone());
    }
    let mut factors = Vec::new();
    for w in terms.windows(2).rev() {
        let (lower, upper) = (&w[0], &w[1]);
        let (simple_type, width) = identify_chief_factor(upper, lower)?;
        let is_frattini = if simple_type.is_abelian() { !complement_info(g, upper, lower)?.exists } else { false };
        factors.push(ChiefFactor { upper: upper.clone(), lower: lower.clone(), simple_type, width, is_frattini });
    }
    Ok(ChiefSeries { ambient: g.clone(), factors, unique })
}

/// Simple type and width of a chief factor `upper/lower`.
///
/// Nonabelian types are read off a table of simple-group orders; the one
/// collision in range (order 20160) is settled by whether the factor has
/// elements of order 15.
pub fn identify_chief_factor(upper: &Group, lower: &Group) -> Result<(SimpleGroup, u32)> {
    let ratio = upper.order() / lower.order();
    if ratio.is_one() {
        return Err(Error::InvalidArgument("trivial factor".into()));
    }
    if let Some(r) = ratio.to_u64() {
        if let Some((p, k)) = prime_power(r) {
            return Ok((SimpleGroup::Cyclic(p), k));
        }
    }
    let table = order_table();
    let smallest = BigUint::from(60u32);
    let mut n = 1u32;
    while smallest.pow(n) <= ratio {
        if let Some(root) = exact_root(&ratio, n) {
            if let Some(cands) = table.get(&root) {
                let t = if cands.len() == 1 {
                    cands[0]
                } else {
                    disambiguate(upper, lower, cands)?
                };
                return Ok((t, n));
            }
        }
        n += 1;
    }
    Err(Error::UnrecognizedSimpleType(ratio.to_string()))
}

fn disambiguate(upper: &Group, lower: &Group, cands: &[SimpleGroup]) -> Result<SimpleGroup> {
    let a8 = SimpleGroup::Alternating(8);
    if cands.len() != 2 || !cands.contains(&a8) {
        return Err(Error::UnrecognizedSimpleType(format!("{cands:?}")));
    }
    let other = *cands.iter().find(|&&c| c != a8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a8_15);
    for _ in 0..600 {
        let x = upper.random_element(&mut rng);
        let o = x.order();
        let strip = |p: u64| {
            let mut r = o;
            while r % p == 0 {
                r /= p;
            }
            r
        };
        if o % 15 == 0
            && !lower.contains_fast(&x.pow(strip(3) as i64))
            && !lower.contains_fast(&x.pow(strip(5) as i64))
        {
            return Ok(a8);
        }
    }
    Ok(other)
}

/// Intersection of all maximal subgroups, through the subgroup lattice.
pub fn frattini(g: &Group) -> Result<Group> {
    let lat = Lattice::of(g)?;
    let bits = lat.frattini_bits();
    let sub = lat.table.sub_from_bits(bits);
    Ok(lat.table.to_group(&sub))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthEntry {
    pub simple_type: SimpleGroup,
    pub width: u32,
    pub is_frattini: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthSequence {
    /// Chief factors from the top down.
    pub entries: Vec<WidthEntry>,
    /// Widths of the non-Frattini factors, from the top down.
    pub non_frattini_widths: Vec<u32>,
}

impl WidthSequence {
    /// Rendering like `C2, (C2), C3^2` with Frattini factors in brackets.
    pub fn display(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                let mut s = short_name(&e.simple_type);
                if e.width > 1 {
                    s = format!("{s}^{}", e.width);
                }
                if e.is_frattini {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Chief-factor data of the unique chief series of a uniserial group.
pub fn width_sequence(g: &Group) -> Result<WidthSequence> {
    if !is_uniserial(g)? {
        return Err(Error::NotUniserial);
    }
    let cs = chief_series(g)?;
    let entries: Vec<WidthEntry> = cs
        .factors
        .iter()
        .map(|f| WidthEntry { simple_type: f.simple_type, width: f.width, is_frattini: f.is_frattini })
        .collect();
    let non_frattini_widths = entries.iter().filter(|e| !e.is_frattini).map(|e| e.width).collect();
    Ok(WidthSequence { entries, non_frattini_widths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn klein() -> Group {
        Group::new(4, vec![Permutation::from_cycles(4, "(0,1)").unwrap(), Permutation::from_cycles(4, "(2,3)").unwrap()])
            .unwrap()
    }

    #[test]
    fn normal_subgroups_small() {
        assert_eq!(normal_subgroups(&Group::symmetric(4)).unwrap().len(), 4);
        assert_eq!(normal_subgroups(&Group::alternating(5)).unwrap().len(), 2);
        assert_eq!(normal_subgroups(&klein()).unwrap().len(), 5);
        assert!(is_uniserial(&Group::symmetric(4)).unwrap());
        assert!(!is_uniserial(&klein()).unwrap());
    }

    #[test]
    fn minimal_normals() {
        let m = minimal_normal_subgroups(&Group::symmetric(4)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order_u64(), Some(4));
        let c6 = minimal_normal_subgroups(&Group::cyclic(6)).unwrap();
        let mut orders: Vec<u64> = c6.iter().map(|x| x.order_u64().unwrap()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn s4_chief_series() {
        let cs = chief_series(&Group::symmetric(4)).unwrap();
        let labels: Vec<String> = cs.factors.iter().map(|f| f.label()).collect();
        assert_eq!(labels, vec!["C2", "C3", "C2^2"]);
        assert!(cs.factors.iter().all(|f| !f.is_frattini));
        assert!(cs.unique);
    }

    #[test]
    fn frattini_small() {
        assert!(frattini(&Group::symmetric(4)).unwrap().is_trivial());
        assert_eq!(frattini(&Group::cyclic(4)).unwrap().order_u64(), Some(2));
    }

    #[test]
    fn cyclic_four_has_frattini_factor() {
        let ws = width_sequence(&Group::cyclic(4)).unwrap();
        assert_eq!(ws.display(), "C2, (C2)");
        assert_eq!(ws.non_frattini_widths, vec![1]);
    }

    #[test]
    fn order_20160_census() {
        let a8 = Group::alternating(8);
        let t = identify_chief_factor(&a8, &Group::trivial(8)).unwrap();
        assert_eq!(t, (SimpleGroup::Alternating(8), 1));
    }
}
