//! Conjugacy classes of subgroups for small groups.
//!
//! Every subgroup is generated by its cyclic subgroups of prime-power order,
//! so starting from the trivial group and repeatedly joining one such cyclic
//! subgroup reaches every class. For each class representative `H` only one
//! cyclic subgroup per `N(H)`-orbit needs to be tried.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{cap_exceeded, Result};
use crate::group::Group;
use crate::perm::Permutation;

const FULL_TABLE_LIMIT: usize = 2048;

/// All elements of a small group, indexed by rank.
pub struct ElementTable {
    pub(crate) group: Group,
    pub(crate) elems: Vec<Permutation>,
    base: Vec<u32>,
    inv: Vec<u32>,
    ord: Vec<u32>,
    full: Option<Vec<u16>>,
}

impl ElementTable {
    pub fn new(g: &Group) -> Result<ElementTable> {
        let elems = g.elements()?;
        let n = elems.len();
        let chain = g.chain();
        let base = chain.base();
        let mut t = ElementTable { group: g.clone(), elems, base, inv: Vec::new(), ord: Vec::new(), full: None };
        if n <= FULL_TABLE_LIMIT {
            let mut full = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    full[a * n + b] = t.mul_slow(a as u32, b as u32) as u16;
                }
            }
            t.full = Some(full);
        }
        t.inv = (0..n).map(|a| t.rank(&t.elems[a].inverse())).collect();
        t.ord = t.elems.iter().map(|p| p.order() as u32).collect();
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, r: u32) -> &Permutation {
        &self.elems[r as usize]
    }

    /// Rank of an element of the group.
    pub fn rank(&self, p: &Permutation) -> u32 {
        let chain = self.group.chain();
        let mut img: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let mut c = vec![0u32; img.len()];
        let ok = chain.coords_from_base_images(&mut img, &mut c);
        assert!(ok, "element outside the group");
        chain.rank_of_coords(&c) as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let chain = self.group.chain();
        let pa = &self.elems[a as usize];
        let pb = &self.elems[b as usize];
        let mut img: Vec<u32> = self.base.iter().map(|&x| pb.apply(pa.apply(x))).collect();
        let mut c = vec![0u32; img.len()];
        chain.coords_from_base_images(&mut img, &mut c);
        chain.rank_of_coords(&c) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.full {
            Some(f) => f[a as usize * self.elems.len() + b as usize] as u32,
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv[g as usize], x), g)
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.ord[a as usize]
    }

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// Subgroup generated by `gens`, optionally grown from an existing subgroup.
    pub fn closure(&self, start: Option<&Sub>, gens: &[u32]) -> Sub {
        let (mut bits, mut list, mut all_gens) = match start {
            Some(s) => (s.bits.clone(), s.bits.ones().map(|x| x as u32).collect::<Vec<_>>(), s.gens.clone()),
            None => {
                let mut b = self.empty_set();
                b.insert(0);
                (b, vec![0u32], Vec::new())
            }
        };
        for &g in gens {
            if !bits.contains(g as usize) && !all_gens.contains(&g) {
                all_gens.push(g);
            }
        }
        let mut head = 0;
        // With a starting subgroup, only products by new generators can leave it,
        // but new elements must then be multiplied by every generator.
        let new_from = match start {
            Some(s) => s.gens.len(),
            None => 0,
        };
        let initial = list.len();
        while head < list.len() {
            let x = list[head];
            let gs: &[u32] = if head < initial { &all_gens[new_from..] } else { &all_gens };
            for &g in gs {
                let y = self.mul(x, g);
                if !bits.contains(y as usize) {
                    bits.insert(y as usize);
                    list.push(y);
                }
            }
            head += 1;
        }
        Sub { order: list.len(), bits, gens: all_gens }
    }

    pub fn sub_of_group(&self, h: &Group) -> Sub {
        let gens: Vec<u32> = h.generators().iter().map(|p| self.rank(p)).collect();
        self.closure(None, &gens)
    }

    pub fn conjugate_bits(&self, s: &FixedBitSet, g: u32) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in s.ones() {
            out.insert(self.conj(x as u32, g) as usize);
        }
        out
    }

    pub fn to_group(&self, s: &Sub) -> Group {
        let gens = s.gens.iter().map(|&r| self.elems[r as usize].clone()).collect();
        self.group.subgroup_unchecked(gens)
    }

    /// Normalizer of a subgroup, as a bitset.
    pub fn normalizer(&self, s: &Sub) -> Sub {
        let mut gens = Vec::new();
        let mut current: Option<Sub> = None;
        for g in 0..self.len() as u32 {
            if let Some(c) = &current {
                if c.bits.contains(g as usize) {
                    continue;
                }
            }
            if s.gens.iter().all(|&x| s.bits.contains(self.conj(x, g) as usize)) {
                gens.push(g);
                current = Some(self.closure(current.as_ref(), &[g]));
            }
        }
        current.unwrap_or_else(|| self.closure(None, &[]))
    }

    /// Generators of the whole group as ranks.
    pub(crate) fn group_gens(&self) -> Vec<u32> {
        self.group.small_generating_set().iter().map(|p| self.rank(p)).collect()
    }

    /// A small generating set of a subgroup given by bits.
    pub fn generators_of(&self, bits: &FixedBitSet) -> Vec<u32> {
        let mut current: Option<Sub> = None;
        let mut gens = Vec::new();
        for x in bits.ones() {
            let x = x as u32;
            if x == 0 {
                continue;
            }
            if current.as_ref().is_some_and(|c| c.bits.contains(x as usize)) {
                continue;
            }
            gens.push(x);
            current = Some(self.closure(current.as_ref(), &[x]));
        }
        gens
    }

    pub fn sub_from_bits(&self, bits: FixedBitSet) -> Sub {
        let gens = self.generators_of(&bits);
        let order = bits.count_ones(..);
        Sub { bits, gens, order }
    }
}

/// A subgroup of a tabulated group.
#[derive(Clone, Debug)]
pub struct Sub {
    pub bits: FixedBitSet,
    pub gens: Vec<u32>,
    pub order: usize,
}

impl Sub {
    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn is_subset(&self, other: &Sub) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

fn hash_bits(b: &FixedBitSet) -> u64 {
    let mut h = DefaultHasher::new();
    b.hash(&mut h);
    h.finish()
}

/// One conjugacy class of subgroups.
pub struct ClassRec {
    pub sub: Sub,
    pub length: u64,
    pub normalizer_order: u64,
    pub maximal: bool,
    conjugates: OnceLock<Vec<FixedBitSet>>,
}

/// Subgroup lattice up to conjugacy.
pub struct Lattice {
    pub table: ElementTable,
    /// Sorted by order, then discovery.
    pub classes: Vec<ClassRec>,
    mobius: OnceLock<Vec<i64>>,
}

impl Lattice {
    pub fn of(g: &Group) -> Result<Arc<Lattice>> {
        g.lattice_cell().get_or_init(|| Lattice::compute(g).map(Arc::new)).clone()
    }

    fn compute(g: &Group) -> Result<Lattice> {
        let cap = g.limits().max_lattice_order;
        match g.order_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(cap_exceeded("order for subgroup lattice", g.order(), cap)),
        }
        let table = ElementTable::new(g)?;
        let n = table.len();
        let ggens = table.group_gens();

        // canonical generator of each cyclic subgroup of prime-power order
        let mut canon = vec![u32::MAX; n];
        let mut zuppos = Vec::new();
        for x in 1..n as u32 {
            if canon[x as usize] != u32::MAX || !is_prime_power(table.order_of(x) as u64) {
                continue;
            }
            let o = table.order_of(x);
            let mut gens_of_cyclic = Vec::new();
            let mut y = x;
            for k in 1..=o {
                if k.gcd(&o) == 1 {
                    gens_of_cyclic.push(y);
                }
                y = table.mul(y, x);
            }
            let c = *gens_of_cyclic.iter().min().unwrap();
            for &z in &gens_of_cyclic {
                canon[z as usize] = c;
            }
            zuppos.push(c);
        }

        let mut recs: Vec<ClassRec> = Vec::new();
        let mut seen: HashMap<u64, Vec<(u32, u32)>> = HashMap::new();
        let register = |recs: &mut Vec<ClassRec>, seen: &mut HashMap<u64, Vec<(u32, u32)>>, sub: Sub| -> usize {
            let ci = recs.len() as u32;
            let mut orbit: HashMap<FixedBitSet, u32> = HashMap::new();
            orbit.insert(sub.bits.clone(), 0);
            let mut queue = VecDeque::from([(sub.bits.clone(), 0u32)]);
            while let Some((b, g)) = queue.pop_front() {
                for &s in &ggens {
                    let c = table.conjugate_bits(&b, s);
                    if !orbit.contains_key(&c) {
                        let gs = table.mul(g, s);
                        orbit.insert(c.clone(), gs);
                        queue.push_back((c, gs));
                    }
                }
            }
            let length = orbit.len() as u64;
            let mut conj: Vec<(FixedBitSet, u32)> = orbit.into_iter().collect();
            conj.sort_by_key(|(_, g)| *g);
            for (b, g) in &conj {
                seen.entry(hash_bits(b)).or_default().push((ci, *g));
            }
            recs.push(ClassRec {
                length,
                normalizer_order: n as u64 / length,
                maximal: false,
                sub,
                conjugates: OnceLock::new(),
            });
            recs.len() - 1
        };

        let trivial = table.closure(None, &[]);
        register(&mut recs, &mut seen, trivial);
        let mut work = VecDeque::from([0usize]);
        while let Some(ci) = work.pop_front() {
            let h = recs[ci].sub.clone();
            if h.order == n {
                continue;
            }
            let norm = table.normalizer(&h);
            let ngens = norm.gens.clone();
            let mut visited = FixedBitSet::with_capacity(n);
            let mut all_whole = true;
            for &z in &zuppos {
                if h.contains(z) || visited.contains(z as usize) {
                    continue;
                }
                // N(H)-orbit of the cyclic subgroup generated by z
                visited.insert(z as usize);
                let mut stack = vec![z];
                while let Some(y) = stack.pop() {
                    for &s in &ngens {
                        let c = canon[table.conj(y, s) as usize];
                        if !visited.contains(c as usize) {
                            visited.insert(c as usize);
                            stack.push(c);
                        }
                    }
                }
                let k = table.closure(Some(&h), &[z]);
                if k.order == n {
                    continue;
                }
                all_whole = false;
                let hk = hash_bits(&k.bits);
                let known = seen.get(&hk).is_some_and(|cands| {
                    cands.iter().any(|&(c, g)| table.conjugate_bits(&recs[c as usize].sub.bits, g) == k.bits)
                });
                if !known {
                    let k = Sub { gens: table.generators_of(&k.bits), ..k };
                    let idx = register(&mut recs, &mut seen, k);
                    work.push_back(idx);
                }
            }
            recs[ci].maximal = all_whole;
        }
        if recs.iter().all(|r| r.sub.order != n) {
            let whole = table.closure(None, &ggens);
            register(&mut recs, &mut seen, whole);
        }
        // Sort by order and keep discovery order among equals.
        let mut idx: Vec<usize> = (0..recs.len()).collect();
        idx.sort_by_key(|&i| (recs[i].sub.order, i));
        let mut slots: Vec<Option<ClassRec>> = recs.into_iter().map(Some).collect();
        let classes = idx.into_iter().map(|i| slots[i].take().unwrap()).collect();
        Ok(Lattice { table, classes, mobius: OnceLock::new() })
    }

    pub fn group(&self) -> &Group {
        &self.table.group
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// All conjugates of class `i` as bitsets.
    pub fn conjugates(&self, i: usize) -> &[FixedBitSet] {
        self.classes[i].conjugates.get_or_init(|| {
            let t = &self.table;
            let gens = t.group_gens();
            let start = self.classes[i].sub.bits.clone();
            let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
            let mut out = vec![start.clone()];
            seen.insert(start, ());
            let mut head = 0;
            while head < out.len() {
                for &s in &gens {
                    let c = t.conjugate_bits(&out[head], s);
                    if seen.insert(c.clone(), ()).is_none() {
                        out.push(c);
                    }
                }
                head += 1;
            }
            out
        })
    }

    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.length).sum()
    }

    pub fn maximal_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i].maximal).collect()
    }

    /// Möbius function `μ(H, G)` per class.
    pub fn mobius(&self) -> &[i64] {
        self.mobius.get_or_init(|| {
            let k = self.classes.len();
            let mut mu = vec![0i64; k];
            let top = k - 1;
            mu[top] = 1;
            for h in (0..top).rev() {
                let hb = &self.classes[h].sub;
                let mut acc = 0i64;
                for (kk, mk) in mu.iter().enumerate().skip(h + 1) {
                    let kc = &self.classes[kk];
                    if *mk == 0 || kc.sub.order == hb.order || kc.sub.order % hb.order != 0 {
                        continue;
                    }
                    let cnt = self.conjugates(kk).iter().filter(|b| hb.bits.is_subset(b)).count() as i64;
                    acc += mk * cnt;
                }
                mu[h] = -acc;
            }
            mu
        })
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini_bits(&self) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.order());
        acc.insert_range(..);
        for i in self.maximal_classes() {
            for c in self.conjugates(i) {
                acc.intersect_with(c);
            }
        }
        acc
    }
}

pub(crate) fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    let mut m = n;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}
