//! Brute-force reference computations for small groups.
//!
//! Everything here works from a multiplication table built by closing the
//! generators under multiplication. Nothing depends on stabilizer chains or
//! the subgroup lattice, so these results can be compared with the fast paths.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{cap_exceeded, Result};
use crate::group::Group;

pub const ORACLE_LIMIT: usize = 5000;

pub struct Oracle {
    elements: Vec<Vec<u32>>,
    table: Vec<u32>,
    gens: Vec<u32>,
}

impl Oracle {
    pub fn new(g: &Group) -> Result<Oracle> {
        let degree = g.degree();
        let gens: Vec<Vec<u32>> = g.generators().iter().map(|p| p.images().to_vec()).collect();
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().map(|&x| b[x as usize]).collect() };
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(id.clone(), 0)]);
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for s in &gens {
                let y = compose(&elements[i], s);
                if !index.contains_key(&y) {
                    if elements.len() >= ORACLE_LIMIT {
                        return Err(cap_exceeded("oracle group order", format!(">{ORACLE_LIMIT}"), ORACLE_LIMIT));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let gens = gens.iter().map(|s| index[s]).collect();
        Ok(Oracle { elements, table, gens })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        (0..self.order() as u32).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    /// Subgroup generated by `gens`, as a set of element indices.
    fn closure(&self, gens: &[u32]) -> FixedBitSet {
        let mut set = self.empty();
        set.insert(0);
        let mut members = vec![0u32];
        let mut i = 0;
        while i < members.len() {
            for &s in gens {
                let y = self.mul(members[i], s);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    members.push(y);
                }
            }
            i += 1;
        }
        set
    }

    fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    /// Element-index set of a subgroup of the same group.
    pub fn bits_of(&self, h: &Group) -> FixedBitSet {
        let index: HashMap<&[u32], u32> =
            self.elements.iter().enumerate().map(|(i, e)| (e.as_slice(), i as u32)).collect();
        let gens: Vec<u32> = h.generators().iter().map(|p| index[p.images()]).collect();
        self.closure(&gens)
    }

    /// Every subgroup, found by joining with cyclic subgroups until closed.
    pub fn subgroups(&self) -> Vec<FixedBitSet> {
        self.subgroups_with_gens().into_iter().map(|(s, _)| s).collect()
    }

    fn subgroups_with_gens(&self) -> Vec<(FixedBitSet, Vec<u32>)> {
        let n = self.order() as u32;
        let mut cyclic_seen = HashSet::new();
        let mut cyclic_gens = Vec::new();
        for x in 0..n {
            if cyclic_seen.insert(self.closure(&[x])) {
                cyclic_gens.push(x);
            }
        }
        let trivial = self.closure(&[]);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
        let mut all = vec![(trivial, Vec::new())];
        let mut i = 0;
        while i < all.len() {
            for &x in &cyclic_gens {
                if all[i].0.contains(x as usize) {
                    continue;
                }
                let mut gens = all[i].1.clone();
                gens.push(x);
                let j = self.closure(&gens);
                if seen.insert(j.clone()) {
                    all.push((j, gens));
                }
            }
            i += 1;
        }
        all
    }

    fn conjugate(&self, s: &FixedBitSet, g: u32) -> FixedBitSet {
        let gi = self.inv(g);
        let mut out = self.empty();
        for x in s.ones() {
            out.insert(self.mul(self.mul(gi, x as u32), g) as usize);
        }
        out
    }

    pub fn normal_subgroups(&self) -> Vec<FixedBitSet> {
        self.subgroups().into_iter().filter(|s| self.gens.iter().all(|&g| &self.conjugate(s, g) == s)).collect()
    }

    /// Conjugacy classes of subgroups as sorted `(order, class length)` pairs.
    pub fn subgroup_class_profile(&self) -> Vec<(u64, u64)> {
        self.class_profile(&self.subgroups())
    }

    /// Conjugacy classes of maximal subgroups as sorted `(order, class length)` pairs.
    pub fn maximal_class_profile(&self) -> Vec<(u64, u64)> {
        let subs = self.subgroups();
        let n = self.order();
        let proper: Vec<&FixedBitSet> = subs.iter().filter(|s| s.count_ones(..) < n).collect();
        let maximal: Vec<FixedBitSet> = proper
            .iter()
            .filter(|s| !proper.iter().any(|t| t.count_ones(..) > s.count_ones(..) && s.is_subset(t)))
            .map(|s| (*s).clone())
            .collect();
        self.class_profile(&maximal)
    }

    fn class_profile(&self, subs: &[FixedBitSet]) -> Vec<(u64, u64)> {
        let mut remaining: HashSet<FixedBitSet> = subs.iter().cloned().collect();
        let mut out = Vec::new();
        for s in subs {
            if !remaining.remove(s) {
                continue;
            }
            let mut orbit = vec![s.clone()];
            let mut i = 0;
            while i < orbit.len() {
                for &g in &self.gens {
                    let c = self.conjugate(&orbit[i], g);
                    if remaining.remove(&c) {
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            out.push((s.count_ones(..) as u64, orbit.len() as u64));
        }
        out.sort_unstable();
        out
    }

    /// Number of `d`-tuples of elements generating the group.
    pub fn generating_tuples(&self, d: u32) -> BigUint {
        let mut memo: HashMap<(FixedBitSet, u32), BigUint> = HashMap::new();
        self.count_from(&self.closure(&[]), &[], d, &mut memo)
    }

    /// Tuples of length `r` which together with `k = ⟨gens⟩` generate the group.
    fn count_from(
        &self,
        k: &FixedBitSet,
        gens: &[u32],
        r: u32,
        memo: &mut HashMap<(FixedBitSet, u32), BigUint>,
    ) -> BigUint {
        let n = self.order();
        if k.count_ones(..) == n {
            return BigUint::from(n).pow(r);
        }
        if r == 0 {
            return BigUint::zero();
        }
        if let Some(v) = memo.get(&(k.clone(), r)) {
            return v.clone();
        }
        let inside = k.count_ones(..);
        let mut total = BigUint::from(inside) * self.count_from(k, gens, r - 1, memo);
        let mut joined: HashMap<FixedBitSet, (u64, Vec<u32>)> = HashMap::new();
        for x in 0..n as u32 {
            if k.contains(x as usize) {
                continue;
            }
            let mut more = gens.to_vec();
            more.push(x);
            joined.entry(self.closure(&more)).or_insert((0, more)).0 += 1;
        }
        for (j, (c, more)) in joined {
            total += BigUint::from(c) * self.count_from(&j, &more, r - 1, memo);
        }
        memo.insert((k.clone(), r), total.clone());
        total
    }

    pub fn generation_probability(&self, d: u32) -> BigRational {
        let total = BigUint::from(self.order()).pow(d);
        if total.is_one() {
            return BigRational::one();
        }
        BigRational::new(self.generating_tuples(d).into(), total.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let s3 = Oracle::new(&Group::symmetric(3)).unwrap();
        assert_eq!(s3.subgroups().len(), 6);
        assert_eq!(s3.normal_subgroups().len(), 3);
        assert_eq!(s3.subgroup_class_profile(), vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
        assert_eq!(s3.generation_probability(2), BigRational::new(1.into(), 2.into()));
        let a5 = Oracle::new(&Group::alternating(5)).unwrap();
        assert_eq!(a5.subgroups().len(), 59);
        assert_eq!(a5.generation_probability(2), BigRational::new(19.into(), 30.into()));
        assert_eq!(a5.maximal_class_profile(), vec![(6, 10), (10, 6), (12, 5)]);
    }
}
