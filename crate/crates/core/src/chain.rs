//! Schreier–Sims stabilizer chains.
//!
//! A chain can run in three modes, distinguished only by its *test points*:
//!
//! * full mode, where every point is a test point;
//! * known-base mode, where the test points are a base of some overgroup
//!   (every element of that overgroup is determined by their images), so
//!   sifting and identity checks touch only a handful of points;
//! * restricted mode, where the test points are a prefix `0..m` of the domain.
//!   Elements are then compared only on that prefix, which is how a chain for
//!   the image of a homomorphism carries preimages along in the remaining
//!   points.

use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Permutation;

pub(crate) const NONE: u32 = u32::MAX;
const EXPLICIT_BUILD_LIMIT: usize = 1 << 20;
const EXPLICIT_LAZY_LIMIT: usize = 1 << 23;

#[derive(Clone)]
struct Explicit {
    reps: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Clone)]
pub(crate) struct Level {
    pub point: u32,
    point_ti: u32,
    pub gens: Vec<u32>,
    checked: Vec<u32>,
    pub orbit: Vec<u32>,
    pub pos: Vec<u32>,
    pub parent: Vec<u32>,
    pub label: Vec<u32>,
    explicit: OnceLock<Explicit>,
}

#[derive(Clone)]
pub struct StabChain {
    degree: usize,
    test_points: Vec<u32>,
    test_index: Vec<u32>,
    gens: Vec<Permutation>,
    gen_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain for a group on `degree` points with every point tested.
    pub fn new(degree: usize) -> Self {
        Self::with_test_points(degree, (0..degree as u32).collect())
    }

    /// Chain whose elements are compared only on `test_points`.
    pub fn with_test_points(degree: usize, test_points: Vec<u32>) -> Self {
        let mut test_index = vec![NONE; degree];
        for (i, &t) in test_points.iter().enumerate() {
            test_index[t as usize] = i as u32;
        }
        StabChain { degree, test_points, test_index, gens: Vec::new(), gen_inv: Vec::new(), levels: Vec::new() }
    }

    /// Builds a complete chain from generators.
    pub fn build(degree: usize, test_points: Option<Vec<u32>>, generators: &[Permutation]) -> Self {
        let mut chain = match test_points {
            Some(t) => Self::with_test_points(degree, t),
            None => Self::new(degree),
        };
        for g in generators {
            chain.add_generator(g);
        }
        chain.random_phase(0x5eed_c4a1, 12);
        chain.complete();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn test_points(&self) -> &[u32] {
        &self.test_points
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub(crate) fn strong_generator_inverse(&self, i: usize) -> &Permutation {
        &self.gen_inv[i]
    }

    pub(crate) fn level(&self, l: usize) -> &Level {
        &self.levels[l]
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64`, or `None` on overflow.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    // ----- transversal application -----

    #[inline]
    pub(crate) fn apply_rep(&self, l: usize, idx: u32, x: u32) -> u32 {
        let lv = &self.levels[l];
        if let Some(e) = lv.explicit.get() {
            return e.reps[idx as usize * self.degree + x as usize];
        }
        let mut stack = [0u32; 96];
        let mut spill: Vec<u32> = Vec::new();
        let mut n = 0usize;
        let mut i = idx;
        while lv.parent[i as usize] != NONE {
            if n < stack.len() {
                stack[n] = lv.label[i as usize];
            } else {
                spill.push(lv.label[i as usize]);
            }
            n += 1;
            i = lv.parent[i as usize];
        }
        let mut y = x;
        for s in spill.iter().rev() {
            y = self.gens[*s as usize].apply(y);
        }
        for k in (0..n.min(stack.len())).rev() {
            y = self.gens[stack[k] as usize].apply(y);
        }
        y
    }

    #[inline]
    pub(crate) fn apply_inv_rep(&self, l: usize, idx: u32, x: u32) -> u32 {
        let lv = &self.levels[l];
        if let Some(e) = lv.explicit.get() {
            return e.inv[idx as usize * self.degree + x as usize];
        }
        let mut y = x;
        let mut i = idx;
        while lv.parent[i as usize] != NONE {
            y = self.gen_inv[lv.label[i as usize] as usize].apply(y);
            i = lv.parent[i as usize];
        }
        y
    }

    /// Labels of the tree path from the root to orbit position `idx`.
    pub(crate) fn rep_word(&self, l: usize, idx: u32) -> Vec<u32> {
        let lv = &self.levels[l];
        let mut w = Vec::new();
        let mut i = idx;
        while lv.parent[i as usize] != NONE {
            w.push(lv.label[i as usize]);
            i = lv.parent[i as usize];
        }
        w.reverse();
        w
    }

    pub(crate) fn rep_perm(&self, l: usize, idx: u32) -> Permutation {
        let images = (0..self.degree as u32).map(|x| self.apply_rep(l, idx, x)).collect();
        Permutation::from_images_unchecked(images)
    }

    pub(crate) fn inv_rep_perm(&self, l: usize, idx: u32) -> Permutation {
        let images = (0..self.degree as u32).map(|x| self.apply_inv_rep(l, idx, x)).collect();
        Permutation::from_images_unchecked(images)
    }

    // ----- sifting -----

    /// Sifts images of the test points starting at level `start`.
    /// Returns the level where sifting stopped (`depth()` if it went through).
    pub(crate) fn sift_images(&self, start: usize, img: &mut [u32]) -> usize {
        for l in start..self.levels.len() {
            let lv = &self.levels[l];
            let gamma = img[lv.point_ti as usize];
            let idx = lv.pos[gamma as usize];
            if idx == NONE {
                return l;
            }
            if lv.parent[idx as usize] == NONE {
                continue;
            }
            for y in img.iter_mut() {
                *y = self.apply_inv_rep(l, idx, *y);
            }
        }
        self.levels.len()
    }

    fn images_trivial(&self, img: &[u32]) -> bool {
        img.iter().zip(&self.test_points).all(|(a, b)| a == b)
    }

    /// Sifts a full permutation; returns the residue and the level reached.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_full_from(0, g.clone())
    }

    fn sift_full_from(&self, start: usize, mut h: Permutation) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let lv = &self.levels[l];
            let gamma = h.apply(lv.point);
            let idx = lv.pos[gamma as usize];
            if idx == NONE {
                return (h, l);
            }
            if lv.parent[idx as usize] != NONE {
                h = h.mul(&self.inv_rep_perm(l, idx));
            }
        }
        (h, self.levels.len())
    }

    fn nontrivial_on_tests(&self, h: &Permutation) -> bool {
        self.test_points.iter().any(|&t| h.apply(t) != t)
    }

    /// Membership test that is exact for arbitrary permutations of the domain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, l) = self.sift(g);
        if l < self.levels.len() {
            return false;
        }
        if self.test_points.len() == self.degree {
            r.is_identity()
        } else {
            // In restricted or known-base mode the residue must still fix the
            // test points; the caller is responsible for overgroup membership.
            !self.nontrivial_on_tests(&r) && (r.is_identity() || self.is_restricted())
        }
    }

    /// Membership for elements known to lie in an overgroup whose base is
    /// contained in the test points.
    pub fn contains_in_overgroup(&self, g: &Permutation) -> bool {
        let mut img: Vec<u32> = self.test_points.iter().map(|&t| g.apply(t)).collect();
        self.sift_images(0, &mut img) == self.levels.len() && self.images_trivial(&img)
    }

    fn is_restricted(&self) -> bool {
        // restricted chains use a prefix 0..m with m < degree
        self.test_points.len() < self.degree
            && self.test_points.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    // ----- construction -----

    /// Adds a generator and extends orbits; call [`complete`](Self::complete) afterwards.
    /// Returns true when the generator was not already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        let (r, j) = self.sift_full_from(0, g.clone());
        if j == self.levels.len() && !self.nontrivial_on_tests(&r) {
            return false;
        }
        self.insert(r, j);
        true
    }

    fn insert(&mut self, h: Permutation, j: usize) {
        let gi = self.gens.len() as u32;
        self.gen_inv.push(h.inverse());
        self.gens.push(h);
        let upto = j.min(self.levels.len().saturating_sub(1));
        if !self.levels.is_empty() {
            for l in 0..=upto {
                self.levels[l].gens.push(gi);
                self.levels[l].checked.push(0);
                self.extend_orbit(l, true);
            }
        }
        if j == self.levels.len() {
            let h = &self.gens[gi as usize];
            let point = *self
                .test_points
                .iter()
                .find(|&&t| h.apply(t) != t)
                .expect("inserted element fixes every test point");
            let mut pos = vec![NONE; self.degree];
            pos[point as usize] = 0;
            let explicit = OnceLock::new();
            if self.degree <= EXPLICIT_BUILD_LIMIT {
                let _ = explicit.set(Explicit {
                    reps: (0..self.degree as u32).collect(),
                    inv: (0..self.degree as u32).collect(),
                });
            }
            self.levels.push(Level {
                point,
                point_ti: self.test_index[point as usize],
                gens: vec![gi],
                checked: vec![0],
                orbit: vec![point],
                pos,
                parent: vec![NONE],
                label: vec![NONE],
                explicit,
            });
            let l = self.levels.len() - 1;
            self.extend_orbit(l, false);
        }
    }

    /// Extends the orbit of level `l`. With `only_last` the existing points are
    /// first hit with the most recently added level generator.
    fn extend_orbit(&mut self, l: usize, only_last: bool) {
        let degree = self.degree;
        let (gens, gen_inv, levels) = (&self.gens, &self.gen_inv, &mut self.levels);
        let lv = &mut levels[l];
        let start_len = lv.orbit.len();
        let add = |lv: &mut Level, y: u32, parent: u32, label: u32| {
            lv.pos[y as usize] = lv.orbit.len() as u32;
            lv.orbit.push(y);
            lv.parent.push(parent);
            lv.label.push(label);
            if (lv.orbit.len()) * degree > EXPLICIT_BUILD_LIMIT {
                lv.explicit.take();
            } else if let Some(e) = lv.explicit.get_mut() {
                let s = &gens[label as usize];
                let p = parent as usize * degree;
                for x in 0..degree {
                    let v = s.apply(e.reps[p + x]);
                    e.reps.push(v);
                }
                let sinv = &gen_inv[label as usize];
                for x in 0..degree {
                    let v = e.inv[p + sinv.apply(x as u32) as usize];
                    e.inv.push(v);
                }
            }
        };
        let mut q = 0;
        if only_last {
            let g = *lv.gens.last().unwrap();
            for idx in 0..start_len {
                let y = gens[g as usize].apply(lv.orbit[idx]);
                if lv.pos[y as usize] == NONE {
                    add(lv, y, idx as u32, g);
                }
            }
            q = start_len;
        }
        while q < lv.orbit.len() {
            let x = lv.orbit[q];
            for k in 0..lv.gens.len() {
                let g = lv.gens[k];
                let y = gens[g as usize].apply(x);
                if lv.pos[y as usize] == NONE {
                    add(lv, y, q as u32, g);
                }
            }
            q += 1;
        }
    }

    /// Product-replacement random phase; stops after `patience` consecutive
    /// random elements sift through.
    pub fn random_phase(&mut self, seed: u64, patience: usize) {
        if self.gens.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<Permutation> = self.gens.clone();
        while slots.len() < 8 {
            let k = slots.len() % self.gens.len();
            slots.push(self.gens[k].clone());
        }
        let mut acc = Permutation::identity(self.degree);
        let step = |rng: &mut ChaCha8Rng, slots: &mut Vec<Permutation>, acc: &mut Permutation| {
            let n = slots.len();
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            slots[i] = if rng.random_bool(0.5) { slots[i].mul(&slots[j]) } else { slots[j].mul(&slots[i]) };
            *acc = acc.mul(&slots[i]);
        };
        for _ in 0..30 {
            step(&mut rng, &mut slots, &mut acc);
        }
        let mut quiet = 0;
        while quiet < patience {
            step(&mut rng, &mut slots, &mut acc);
            if self.add_generator(&acc) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
    }

    /// Deterministic Schreier–Sims completion.
    pub fn complete(&mut self) {
        self.complete_until(None);
    }

    /// Completes the chain, stopping early once the order reaches `target`.
    /// Returns true when it stopped early.
    pub fn complete_until(&mut self, target: Option<&BigUint>) -> bool {
        if let Some(t) = target {
            if &self.order() >= t {
                return true;
            }
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.check_level(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    self.insert(h, j);
                    if let Some(t) = target {
                        if &self.order() >= t {
                            return true;
                        }
                    }
                    i = j as isize;
                }
            }
        }
        false
    }

    fn check_level(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let ngens = self.levels[i].gens.len();
        let mut img = vec![0u32; self.test_points.len()];
        for k in 0..ngens {
            loop {
                let lv = &self.levels[i];
                let idx = lv.checked[k] as usize;
                if idx >= lv.orbit.len() {
                    break;
                }
                let g = lv.gens[k];
                let beta = lv.orbit[idx];
                let beta2 = self.gens[g as usize].apply(beta);
                let idx2 = lv.pos[beta2 as usize];
                let tree_edge = lv.parent[idx2 as usize] == idx as u32 && lv.label[idx2 as usize] == g;
                if !tree_edge {
                    for (slot, &t) in img.iter_mut().zip(&self.test_points) {
                        let a = self.apply_rep(i, idx as u32, t);
                        let b = self.gens[g as usize].apply(a);
                        *slot = self.apply_inv_rep(i, idx2, b);
                    }
                    let drop = self.sift_images(i + 1, &mut img);
                    if drop < self.levels.len() || !self.images_trivial(&img) {
                        let h = self
                            .rep_perm(i, idx as u32)
                            .mul(&self.gens[g as usize])
                            .mul(&self.inv_rep_perm(i, idx2));
                        let (r, j) = self.sift_full_from(i + 1, h);
                        debug_assert_eq!(j, drop);
                        return Some((r, j));
                    }
                }
                self.levels[i].checked[k] += 1;
            }
        }
        None
    }

    // ----- coordinates and ranks -----

    /// Builds explicit transversal tables wherever they fit in memory.
    pub(crate) fn ensure_explicit(&self) {
        for lv in &self.levels {
            if lv.orbit.len() * self.degree > EXPLICIT_LAZY_LIMIT {
                continue;
            }
            lv.explicit.get_or_init(|| {
                let n = self.degree;
                let mut reps = Vec::with_capacity(lv.orbit.len() * n);
                let mut inv = Vec::with_capacity(lv.orbit.len() * n);
                reps.extend(0..n as u32);
                inv.extend(0..n as u32);
                for idx in 1..lv.orbit.len() {
                    let s = &self.gens[lv.label[idx] as usize];
                    let sinv = &self.gen_inv[lv.label[idx] as usize];
                    let p = lv.parent[idx] as usize * n;
                    for x in 0..n {
                        let v = s.apply(reps[p + x]);
                        reps.push(v);
                    }
                    for x in 0..n {
                        let v = inv[p + sinv.apply(x as u32) as usize];
                        inv.push(v);
                    }
                }
                Explicit { reps, inv }
            });
        }
    }

    /// Converts base images (indexed by level) into transversal coordinates,
    /// consuming `img`. Returns false if the images do not come from the group.
    pub(crate) fn coords_from_base_images(&self, img: &mut [u32], out: &mut [u32]) -> bool {
        let k = self.levels.len();
        for l in 0..k {
            let idx = self.levels[l].pos[img[l] as usize];
            if idx == NONE {
                return false;
            }
            out[l] = idx;
            if idx != 0 {
                for y in img[l + 1..k].iter_mut() {
                    *y = self.apply_inv_rep(l, idx, *y);
                }
            }
        }
        true
    }

    /// Image of `x` under the element with the given coordinates.
    #[inline]
    pub(crate) fn apply_coords(&self, coords: &[u32], x: u32) -> u32 {
        let mut y = x;
        for l in (0..self.levels.len()).rev() {
            if coords[l] != 0 {
                y = self.apply_rep(l, coords[l], y);
            }
        }
        y
    }

    pub(crate) fn element_from_coords(&self, coords: &[u32]) -> Permutation {
        let images = (0..self.degree as u32).map(|x| self.apply_coords(coords, x)).collect();
        Permutation::from_images_unchecked(images)
    }

    pub(crate) fn coords_of(&self, g: &Permutation) -> Option<Vec<u32>> {
        let mut img: Vec<u32> = self.levels.iter().map(|l| g.apply(l.point)).collect();
        let mut out = vec![0u32; self.levels.len()];
        self.coords_from_base_images(&mut img, &mut out).then_some(out)
    }

    pub(crate) fn rank_of_coords(&self, coords: &[u32]) -> u64 {
        let mut r = 0u64;
        for l in (0..self.levels.len()).rev() {
            r = r * self.levels[l].orbit.len() as u64 + coords[l] as u64;
        }
        r
    }

    pub(crate) fn coords_of_rank(&self, mut r: u64, out: &mut [u32]) {
        for (l, lv) in self.levels.iter().enumerate() {
            let m = lv.orbit.len() as u64;
            out[l] = (r % m) as u32;
            r /= m;
        }
    }

    /// The element of rank `r` (ranks run over `0..order`).
    pub fn element_of_rank(&self, r: u64) -> Permutation {
        let mut c = vec![0u32; self.levels.len()];
        self.coords_of_rank(r, &mut c);
        self.element_from_coords(&c)
    }

    /// Rank of a group element, or `None` for non-members.
    pub fn rank_of(&self, g: &Permutation) -> Option<u64> {
        let c = self.coords_of(g)?;
        let h = self.element_from_coords(&c);
        (&h == g).then(|| self.rank_of_coords(&c))
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let c: Vec<u32> = self.levels.iter().map(|l| rng.random_range(0..l.orbit.len() as u32)).collect();
        self.element_from_coords(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Permutation> {
        let cyc: Vec<u32> = (1..n as u32).chain([0]).collect();
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        vec![Permutation::from_images(cyc).unwrap(), Permutation::from_images(t).unwrap()]
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=8usize {
            let c = StabChain::build(n, None, &sym(n));
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.order_u64(), Some(fact));
        }
    }

    #[test]
    fn ranks_are_a_bijection() {
        let c = StabChain::build(5, None, &sym(5));
        c.ensure_explicit();
        let mut seen = std::collections::HashSet::new();
        for r in 0..120 {
            let g = c.element_of_rank(r);
            assert_eq!(c.rank_of(&g), Some(r));
            seen.insert(g);
        }
        assert_eq!(seen.len(), 120);
        assert!(c.element_of_rank(0).is_identity());
    }

    #[test]
    fn known_base_mode_agrees() {
        let g = sym(7);
        let full = StabChain::build(7, None, &g);
        let base = full.base();
        let a = Permutation::from_cycles(7, "(0,1,2)").unwrap();
        let b = Permutation::from_cycles(7, "(2,3,4,5,6)").unwrap();
        let sub = StabChain::build(7, Some(base), &[a, b]);
        assert_eq!(sub.order_u64(), Some(2520));
    }

    #[test]
    fn restricted_mode_sees_only_prefix() {
        // S3 acting on 0..3 paired with a copy on 3..6; the image order is 6.
        let g1 = Permutation::from_images(vec![1, 0, 2, 4, 3, 5]).unwrap();
        let g2 = Permutation::from_images(vec![0, 2, 1, 3, 5, 4]).unwrap();
        let c = StabChain::build(6, Some(vec![0, 1, 2]), &[g1, g2]);
        assert_eq!(c.order_u64(), Some(6));
    }
}
