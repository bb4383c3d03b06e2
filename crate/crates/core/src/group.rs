use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::StabChain;
use crate::error::{cap_exceeded, Error, Result};
use crate::perm::Permutation;

/// Resource caps applied to every computation on a group and its descendants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_index: u64,
    /// Largest order for which conjugacy classes and normal subgroups are computed.
    pub max_class_order: u64,
    /// Largest order for which the full subgroup lattice is computed.
    pub max_lattice_order: u64,
    /// Largest `|G|^d` enumerated directly.
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 100_000,
            max_index: 100_000,
            max_class_order: 10_000_000,
            max_lattice_order: 20_000,
            max_enumeration: 100_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

pub(crate) struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    known_base: Option<Vec<u32>>,
    limits: Limits,
    chain: OnceLock<StabChain>,
    small_gens: OnceLock<Vec<Permutation>>,
    classes: OnceLock<Result<Arc<Vec<ConjugacyClass>>>>,
    normals: OnceLock<Result<Arc<Vec<Group>>>>,
    lattice: OnceLock<Result<Arc<crate::lattice::Lattice>>>,
}

/// An immutable permutation group. Cloning is cheap and clones share caches.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, {} generators", self.degree(), self.0.generators.len())?;
        if let Some(c) = self.0.chain.get() {
            write!(f, ", order {}", c.order())?;
        }
        write!(f, ")")
    }
}

impl Group {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Group> {
        Self::with_limits(degree, generators, Limits::default())
    }

    pub fn with_limits(degree: usize, generators: Vec<Permutation>, limits: Limits) -> Result<Group> {
        if degree > limits.max_degree {
            return Err(cap_exceeded("degree", degree, limits.max_degree));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(Self::from_parts(degree, generators, None, limits, None))
    }

    /// A group together with points known to form a base for an overgroup.
    /// Supplying a set that is not such a base gives wrong answers.
    pub(crate) fn with_known_base(
        degree: usize,
        generators: Vec<Permutation>,
        base: Vec<u32>,
        limits: Limits,
    ) -> Group {
        Self::from_parts(degree, generators, Some(base), limits, None)
    }

    fn from_parts(
        degree: usize,
        generators: Vec<Permutation>,
        known_base: Option<Vec<u32>>,
        limits: Limits,
        chain: Option<StabChain>,
    ) -> Group {
        let generators: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let cell = OnceLock::new();
        if let Some(c) = chain {
            let _ = cell.set(c);
        }
        Group(Arc::new(Inner {
            degree,
            generators,
            known_base,
            limits,
            chain: cell,
            small_gens: OnceLock::new(),
            classes: OnceLock::new(),
            normals: OnceLock::new(),
            lattice: OnceLock::new(),
        }))
    }

    pub fn trivial(degree: usize) -> Group {
        Self::from_parts(degree, Vec::new(), None, Limits::default(), None)
    }

    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Group {
        let mut gens = Vec::new();
        if n >= 2 {
            let cyc: Vec<u32> = (1..n as u32).chain([0]).collect();
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images_unchecked(t));
            if n > 2 {
                gens.push(Permutation::from_images_unchecked(cyc));
            }
        }
        let base = (0..n.saturating_sub(1) as u32).collect();
        Self::with_known_base(n, gens, base, Limits::default())
    }

    /// Alternating group on `n` points.
    pub fn alternating(n: usize) -> Group {
        let gens = (2..n)
            .map(|k| {
                let mut im: Vec<u32> = (0..n as u32).collect();
                im[0] = 1;
                im[1] = k as u32;
                im[k] = 0;
                Permutation::from_images_unchecked(im)
            })
            .collect();
        let base = (0..n.saturating_sub(2) as u32).collect();
        Self::with_known_base(n, gens, base, Limits::default())
    }

    /// Cyclic group generated by an `n`-cycle.
    pub fn cyclic(n: usize) -> Group {
        let gens = if n > 1 {
            vec![Permutation::from_images_unchecked((1..n as u32).chain([0]).collect())]
        } else {
            vec![]
        };
        Self::with_known_base(n, gens, vec![0], Limits::default())
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub(crate) fn lattice_cell(&self) -> &OnceLock<Result<Arc<crate::lattice::Lattice>>> {
        &self.0.lattice
    }

    pub(crate) fn normals_cell(&self) -> &OnceLock<Result<Arc<Vec<Group>>>> {
        &self.0.normals
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn limits(&self) -> &Limits {
        &self.0.limits
    }

    /// Same group with different caps; an existing chain is reused.
    pub fn relimit(&self, limits: Limits) -> Group {
        Self::from_parts(
            self.degree(),
            self.0.generators.clone(),
            self.0.known_base.clone(),
            limits,
            self.0.chain.get().cloned(),
        )
    }

    pub fn chain(&self) -> &StabChain {
        self.0.chain.get_or_init(|| StabChain::build(self.0.degree, self.0.known_base.clone(), &self.0.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.chain().order_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.generators.is_empty() || self.chain().depth() == 0
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: g.degree() });
        }
        Ok(self.chain().contains(g))
    }

    /// Membership for an element already known to lie in a common overgroup.
    pub(crate) fn contains_fast(&self, g: &Permutation) -> bool {
        self.chain().contains_in_overgroup(g)
    }

    /// Base usable by chains of subgroups.
    pub(crate) fn subgroup_base(&self) -> Vec<u32> {
        self.chain().base()
    }

    /// Subgroup generated by elements of `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Group> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(Error::NotSubgroup);
            }
        }
        Ok(self.subgroup_unchecked(gens))
    }

    pub(crate) fn subgroup_unchecked(&self, gens: Vec<Permutation>) -> Group {
        Self::with_known_base(self.degree(), gens, self.subgroup_base(), self.0.limits.clone())
    }

    pub(crate) fn subgroup_from_chain(&self, gens: Vec<Permutation>, chain: StabChain) -> Group {
        Self::from_parts(self.degree(), gens, Some(self.subgroup_base()), self.0.limits.clone(), Some(chain))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree() && self.0.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &Group) -> bool {
        self.degree() == other.degree() && self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether `n` is a normal subgroup of `self`.
    pub fn is_normal_subgroup(&self, n: &Group) -> bool {
        if !n.is_subgroup_of(self) {
            return false;
        }
        self.small_generating_set()
            .iter()
            .all(|g| n.generators().iter().all(|x| n.chain().contains(&x.conjugate_by(g))))
    }

    /// A short generating set, usually of size two.
    pub fn small_generating_set(&self) -> &[Permutation] {
        self.0.small_gens.get_or_init(|| {
            let target = self.order();
            if target == BigUint::from(1u32) {
                return Vec::new();
            }
            if self.0.generators.len() <= 2 {
                return self.0.generators.clone();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x6e_5e75);
            let base = self.subgroup_base();
            for _ in 0..4 {
                let mut gens = Vec::new();
                let mut chain = StabChain::with_test_points(self.degree(), base.clone());
                for _ in 0..6 {
                    let g = self.chain().random_element(&mut rng);
                    if chain.add_generator(&g) {
                        gens.push(g);
                        if chain.complete_until(Some(&target)) || chain.order() == target {
                            return gens;
                        }
                    }
                }
            }
            self.0.generators.clone()
        })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Whether `gens` generate the whole of `self` (all must be members).
    pub fn is_generated_by(&self, gens: &[Permutation]) -> bool {
        let target = self.order();
        let mut chain = StabChain::with_test_points(self.degree(), self.subgroup_base());
        for g in gens {
            chain.add_generator(g);
            if chain.order() >= target {
                return true;
            }
        }
        chain.complete_until(Some(&target))
    }

    /// Normal closure in `self` of the given elements.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Group {
        let mut chain = StabChain::with_test_points(self.degree(), self.subgroup_base());
        let mut gens = Vec::new();
        let mut queue = VecDeque::new();
        for s in seeds {
            if chain.add_generator(s) {
                chain.complete();
                gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        let conj: Vec<Permutation> = self.small_generating_set().to_vec();
        while let Some(n) = queue.pop_front() {
            for g in &conj {
                let c = n.conjugate_by(g);
                if !chain.contains_in_overgroup(&c) {
                    chain.add_generator(&c);
                    chain.complete();
                    gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        self.subgroup_from_chain(gens, chain)
    }

    /// Subgroup generated by `self` and `other`, inside the overgroup `ambient`.
    pub fn join_in(&self, other: &Group, ambient: &Group) -> Group {
        let mut chain = StabChain::with_test_points(self.degree(), ambient.subgroup_base());
        let mut gens = Vec::new();
        for g in self.generators().iter().chain(other.generators()) {
            if chain.add_generator(g) {
                chain.complete();
                gens.push(g.clone());
            }
        }
        ambient.subgroup_from_chain(gens, chain)
    }

    pub fn derived_subgroup(&self) -> Group {
        let gens = self.small_generating_set().to_vec();
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                comms.push(gens[i].commutator(&gens[j]));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.small_generating_set();
        g.iter().all(|a| g.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Whether the group acts transitively on its points.
    pub fn is_transitive(&self) -> bool {
        let n = self.degree();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in self.generators() {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Elements in rank order. Fails above the class-order cap.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let n = self.order_for_enumeration()?;
        let chain = self.chain();
        chain.ensure_explicit();
        Ok((0..n).map(|r| chain.element_of_rank(r)).collect())
    }

    pub(crate) fn order_for_enumeration(&self) -> Result<u64> {
        let cap = self.0.limits.max_class_order;
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(cap_exceeded("group order", self.order(), cap)),
        }
    }

    /// Conjugacy classes, ordered by the rank of their first element.
    pub fn conjugacy_classes(&self) -> Result<Arc<Vec<ConjugacyClass>>> {
        self.0.classes.get_or_init(|| self.compute_classes().map(Arc::new)).clone()
    }

    fn compute_classes(&self) -> Result<Vec<ConjugacyClass>> {
        let n = self.order_for_enumeration()?;
        let chain = self.chain();
        chain.ensure_explicit();
        let gens: Vec<Permutation> = self.small_generating_set().to_vec();
        let gens_inv: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
        let base = chain.base();
        let k = base.len();
        let mut visited = FixedBitSet::with_capacity(n as usize);
        let mut classes = Vec::new();
        let mut queue: Vec<u32> = Vec::new();
        let mut coords = vec![0u32; k];
        let mut img = vec![0u32; k];
        let mut out = vec![0u32; k];
        for r in 0..n as usize {
            if visited.contains(r) {
                continue;
            }
            visited.insert(r);
            queue.clear();
            queue.push(r as u32);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head] as u64;
                head += 1;
                chain.coords_of_rank(x, &mut coords);
                for (g, gi) in gens.iter().zip(&gens_inv) {
                    for j in 0..k {
                        img[j] = g.apply(chain.apply_coords(&coords, gi.apply(base[j])));
                    }
                    let ok = chain.coords_from_base_images(&mut img, &mut out);
                    debug_assert!(ok);
                    let y = chain.rank_of_coords(&out) as usize;
                    if !visited.contains(y) {
                        visited.insert(y);
                        queue.push(y as u32);
                    }
                }
            }
            let rep = chain.element_of_rank(r as u64);
            let element_order = rep.order();
            classes.push(ConjugacyClass { representative: rep, size: queue.len() as u64, element_order });
        }
        Ok(classes)
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_census(&self) -> Result<Vec<(u64, u64)>> {
        let mut m = std::collections::BTreeMap::new();
        for c in self.conjugacy_classes()?.iter() {
            *m.entry(c.element_order).or_insert(0u64) += c.size;
        }
        Ok(m.into_iter().collect())
    }

    /// Center, computed from the conjugacy classes of size one.
    pub fn center(&self) -> Result<Group> {
        let gens = self
            .conjugacy_classes()?
            .iter()
            .filter(|c| c.size == 1 && !c.representative.is_identity())
            .map(|c| c.representative.clone())
            .collect();
        Ok(self.subgroup_unchecked(gens))
    }

    /// Centralizer of a subgroup, by element enumeration.
    pub fn centralizer(&self, h: &Group) -> Result<Group> {
        let hg = h.generators();
        let mut chain = StabChain::with_test_points(self.degree(), self.subgroup_base());
        let mut gens = Vec::new();
        for g in self.elements()? {
            if hg.iter().all(|x| x.mul(&g) == g.mul(x)) && chain.add_generator(&g) {
                chain.complete();
                gens.push(g);
            }
        }
        Ok(self.subgroup_from_chain(gens, chain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups() {
        assert_eq!(Group::symmetric(5).order_u64(), Some(120));
        assert_eq!(Group::alternating(6).order_u64(), Some(360));
        assert_eq!(Group::cyclic(7).order_u64(), Some(7));
        assert_eq!(Group::symmetric(1).order_u64(), Some(1));
    }

    #[test]
    fn class_equation_s5() {
        let g = Group::symmetric(5);
        let cl = g.conjugacy_classes().unwrap();
        assert_eq!(cl.len(), 7);
        assert_eq!(cl.iter().map(|c| c.size).sum::<u64>(), 120);
    }

    #[test]
    fn derived_and_closure() {
        let s4 = Group::symmetric(4);
        let d = s4.derived_subgroup();
        assert_eq!(d.order_u64(), Some(12));
        let v4 = s4.normal_closure(&[Permutation::from_cycles(4, "(0,1)(2,3)").unwrap()]);
        assert_eq!(v4.order_u64(), Some(4));
        assert!(s4.is_normal_subgroup(&v4));
        assert!(Group::alternating(5).is_perfect());
    }
}
