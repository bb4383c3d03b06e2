//! Actions on right cosets and the quotient maps built from them.

use std::collections::HashMap;

use crate::chain::StabChain;
use crate::error::{cap_exceeded, Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// The action of `G` on the right cosets `Hg` of a subgroup `H`.
pub struct CosetAction {
    parent: Group,
    sub: Group,
    base: Vec<u32>,
    reps: Vec<Permutation>,
    index: HashMap<Vec<u32>, u32>,
    image: Group,
    image_gens_source: Vec<Permutation>,
}

impl CosetAction {
    pub fn new(g: &Group, h: &Group) -> Result<CosetAction> {
        let go = g.order();
        let ho = h.order();
        let idx_big = &go / &ho;
        let cap = g.limits().max_index;
        if idx_big > num_bigint::BigUint::from(cap) {
            return Err(Error::IndexCapExceeded { index: idx_big.to_string(), cap });
        }
        let m = u64::try_from(&idx_big).unwrap() as usize;
        if m.saturating_mul(g.degree()) > 400_000_000 {
            return Err(cap_exceeded("coset table size", m * g.degree(), 400_000_000u64));
        }
        let gens: Vec<Permutation> = g.small_generating_set().to_vec();
        let base = g.subgroup_base();
        let mut ca = CosetAction {
            parent: g.clone(),
            sub: h.clone(),
            base,
            reps: Vec::with_capacity(m),
            index: HashMap::with_capacity(m),
            image: Group::trivial(m),
            image_gens_source: gens.clone(),
        };
        let id = Permutation::identity(g.degree());
        let key = ca.key(&id);
        ca.index.insert(key, 0);
        ca.reps.push(id);
        let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(m); gens.len()];
        let mut head = 0;
        while head < ca.reps.len() {
            for (gi, s) in gens.iter().enumerate() {
                let x = ca.reps[head].mul(s);
                let key = ca.key(&x);
                let j = match ca.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = ca.reps.len() as u32;
                        ca.index.insert(key, j);
                        ca.reps.push(x);
                        j
                    }
                };
                images[gi].push(j);
            }
            head += 1;
        }
        if ca.reps.len() != m {
            return Err(Error::NotSubgroup);
        }
        let img_perms: Vec<Permutation> = images.into_iter().map(Permutation::from_images_unchecked).collect();
        ca.image = Group::with_limits(m, img_perms, g.limits().clone())?;
        Ok(ca)
    }

    fn key(&self, g: &Permutation) -> Vec<u32> {
        coset_key(&self.sub, &self.base, g)
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn source(&self) -> &Group {
        &self.parent
    }

    pub fn subgroup(&self) -> &Group {
        &self.sub
    }

    /// Representative of coset number `i`.
    pub fn representative(&self, i: usize) -> &Permutation {
        &self.reps[i]
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.index[&self.key(g)] as usize
    }

    /// Image of an element of `G` under the action.
    pub fn image_of(&self, g: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset_of(&r.mul(g)) as u32).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Image of a subgroup of `G`.
    pub fn image_of_subgroup(&self, k: &Group) -> Group {
        let gens = k.generators().iter().map(|g| self.image_of(g)).collect();
        self.image.subgroup_unchecked(gens)
    }

    /// Chain of the image whose strong generators carry preimages in `G`.
    pub fn lifting(&self) -> Lifting {
        let m = self.index();
        let n = self.parent.degree();
        let gens: Vec<Permutation> = self
            .image_gens_source
            .iter()
            .map(|s| {
                let img = self.image_of(s);
                let mut v: Vec<u32> = img.images().to_vec();
                v.extend(s.images().iter().map(|&x| x + m as u32));
                Permutation::from_images_unchecked(v)
            })
            .collect();
        let chain = StabChain::build(m + n, Some((0..m as u32).collect()), &gens);
        Lifting { m, n, chain }
    }
}

/// Chain on `m + n` points pairing image elements (first `m` points) with
/// preimages (last `n` points).
pub struct Lifting {
    m: usize,
    n: usize,
    pub(crate) chain: StabChain,
}

impl Lifting {
    pub fn image_degree(&self) -> usize {
        self.m
    }

    pub(crate) fn split(&self, p: &Permutation) -> (Permutation, Permutation) {
        let im = p.images();
        let a = Permutation::from_images_unchecked(im[..self.m].to_vec());
        let b = Permutation::from_images_unchecked(im[self.m..].iter().map(|&x| x - self.m as u32).collect());
        (a, b)
    }

    /// Number of strong generators.
    pub fn len(&self) -> usize {
        self.chain.strong_generators().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Preimage of strong generator `i`.
    pub fn lift(&self, i: usize) -> Permutation {
        self.split(&self.chain.strong_generators()[i]).1
    }

    /// Some preimage of an image element.
    pub fn preimage(&self, y: &Permutation) -> Result<Permutation> {
        if y.degree() != self.m {
            return Err(Error::DegreeMismatch { expected: self.m, found: y.degree() });
        }
        let mut img: Vec<u32> = self.chain.base().iter().map(|&b| y.apply(b)).collect();
        let mut coords = vec![0u32; img.len()];
        if !self.chain.coords_from_base_images(&mut img, &mut coords) {
            return Err(Error::ElementNotInGroup);
        }
        let full = self.chain.element_from_coords(&coords);
        let (a, b) = self.split(&full);
        if &a != y {
            return Err(Error::ElementNotInGroup);
        }
        debug_assert_eq!(b.degree(), self.n);
        Ok(b)
    }
}

/// Canonical element of the right coset `Hg`, described by its images of `base`
/// (a base of an overgroup containing `g`).
pub(crate) fn coset_key(h: &Group, base: &[u32], g: &Permutation) -> Vec<u32> {
    let chain = h.chain();
    let mut path: Vec<(usize, u32)> = Vec::with_capacity(chain.depth());
    let apply = |path: &[(usize, u32)], y: u32| -> u32 {
        let mut z = y;
        for &(l, idx) in path.iter().rev() {
            z = chain.apply_rep(l, idx, z);
        }
        g.apply(z)
    };
    for l in 0..chain.depth() {
        let lv = chain.level(l);
        let mut best = u32::MAX;
        let mut best_idx = 0u32;
        for (i, &d) in lv.orbit.iter().enumerate() {
            let v = apply(&path, d);
            if v < best {
                best = v;
                best_idx = i as u32;
            }
        }
        if best_idx != 0 {
            path.push((l, best_idx));
        }
    }
    base.iter().map(|&b| apply(&path, b)).collect()
}

/// Quotient `G/N` as a permutation group on the cosets of `N`.
pub fn quotient(g: &Group, n: &Group) -> Result<CosetAction> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !g.is_normal_subgroup(n) {
        return Err(Error::NotNormal);
    }
    CosetAction::new(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_mod_v4_is_s3() {
        let s4 = Group::symmetric(4);
        let v4 = s4.normal_closure(&[Permutation::from_cycles(4, "(0,1)(2,3)").unwrap()]);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.index(), 6);
        assert_eq!(q.image().order_u64(), Some(6));
        let lift = q.lifting();
        let y = q.image_of(&Permutation::from_cycles(4, "(0,1,2)").unwrap());
        let x = lift.preimage(&y).unwrap();
        assert_eq!(q.image_of(&x), y);
    }

    #[test]
    fn point_stabilizer_action_is_natural() {
        let a5 = Group::alternating(5);
        let stab = a5.subgroup(Group::alternating(4).generators().iter().map(|g| g.extend(5)).collect()).unwrap();
        let ca = CosetAction::new(&a5, &stab).unwrap();
        assert_eq!(ca.index(), 5);
        assert_eq!(ca.image().order_u64(), Some(60));
    }

    #[test]
    fn non_normal_rejected() {
        let s4 = Group::symmetric(4);
        let h = s4.subgroup(vec![Permutation::from_cycles(4, "(0,1)").unwrap()]).unwrap();
        assert!(matches!(quotient(&s4, &h), Err(Error::NotNormal)));
    }
}
