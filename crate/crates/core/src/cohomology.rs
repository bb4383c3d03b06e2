//! Complements of elementary abelian sections and the first cohomology group.
//!
//! For normal subgroups `B ≤ A` of `G` with `A/B` elementary abelian of order
//! `p^m`, complements of `A/B` in `G/B` correspond to solutions of a linear
//! system over `F_p`. The system comes from a presentation of `G/A` read off a
//! stabilizer chain: every Schreier generator of the chain sifts to the
//! identity, and the word recording that sift is a relator.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{cap_exceeded, Error, Result};
use crate::group::Group;
use crate::hom::{coset_key, CosetAction};
use crate::linalg::{FpMatrix, RowReducer};
use crate::perm::Permutation;

const TABLE_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementInfo {
    pub p: u64,
    /// Dimension of `A/B` over `F_p`.
    pub dimension: u32,
    pub exists: bool,
    /// `dim H¹(G/A, A/B)`, present when complements exist.
    pub h1_dimension: Option<u32>,
}

impl ComplementInfo {
    /// Number of conjugacy classes of complements (`|H¹|`, or 0).
    pub fn classes(&self) -> BigUint {
        match self.h1_dimension {
            Some(d) => BigUint::from(self.p).pow(d),
            None => BigUint::from(0u32),
        }
    }
}

/// Letter of a relator: strong generator index and whether it is inverted.
type Letter = (u32, bool);

/// Coordinates of `A/B` with respect to a basis chosen from the generators of `A`.
struct Section {
    p: u64,
    m: usize,
    basis: Vec<Permutation>,
    b: Group,
    base: Vec<u32>,
    table: HashMap<Vec<u32>, Vec<u64>>,
}

impl Section {
    fn new(g: &Group, a: &Group, b: &Group) -> Result<Section> {
        let ratio = a.order() / b.order();
        let ratio = u64::try_from(&ratio).map_err(|_| cap_exceeded("section order", &ratio, TABLE_CAP))?;
        let (p, m) = crate::simple::prime_power(ratio)
            .ok_or_else(|| Error::InvalidArgument(format!("section of order {ratio} is not a p-group")))?;
        if ratio > TABLE_CAP {
            return Err(cap_exceeded("section order", ratio, TABLE_CAP));
        }
        let mut basis: Vec<Permutation> = Vec::new();
        let mut cur = b.clone();
        for x in a.generators() {
            if !cur.contains_fast(x) {
                basis.push(x.clone());
                let mut gens = cur.generators().to_vec();
                gens.push(x.clone());
                cur = g.subgroup_unchecked(gens);
            }
        }
        if basis.len() != m as usize || cur.order() != a.order() {
            return Err(Error::InvalidArgument("section is not elementary abelian".into()));
        }
        for (i, x) in basis.iter().enumerate() {
            if !b.contains_fast(&x.pow(p as i64)) {
                return Err(Error::InvalidArgument("section is not elementary abelian".into()));
            }
            for y in &basis[..i] {
                if !b.contains_fast(&x.commutator(y)) {
                    return Err(Error::InvalidArgument("section is not abelian".into()));
                }
            }
        }
        let base = g.subgroup_base();
        let mut sec = Section { p, m: m as usize, basis, b: b.clone(), base, table: HashMap::new() };
        sec.fill();
        Ok(sec)
    }

    fn fill(&mut self) {
        let total = self.p.pow(self.m as u32) as usize;
        self.table.reserve(total);
        let deg = self.b.degree();
        let mut coords = vec![0u64; self.m];
        let mut elem = Permutation::identity(deg);
        for _ in 0..total {
            self.table.insert(coset_key(&self.b, &self.base, &elem), coords.clone());
            // odometer with the last coordinate least significant
            for j in (0..self.m).rev() {
                coords[j] += 1;
                if coords[j] < self.p {
                    break;
                }
                coords[j] = 0;
            }
            elem = coords
                .iter()
                .zip(&self.basis)
                .fold(Permutation::identity(deg), |acc, (&c, x)| if c == 0 { acc } else { acc.mul(&x.pow(c as i64)) });
        }
    }

    fn coords(&self, x: &Permutation) -> Result<&[u64]> {
        self.table
            .get(&coset_key(&self.b, &self.base, x))
            .map(|v| v.as_slice())
            .ok_or(Error::ElementNotInGroup)
    }

    fn coords_of_base_images(&self, img: &[u32]) -> Result<&[u64]> {
        self.table.get(img).map(|v| v.as_slice()).ok_or(Error::ElementNotInGroup)
    }

    /// Matrix of conjugation by `x`: row `j` holds the coordinates of `x⁻¹ e_j x`.
    fn action(&self, x: &Permutation) -> Result<FpMatrix> {
        let mut m = FpMatrix::zero(self.p, self.m, self.m);
        for (j, e) in self.basis.iter().enumerate() {
            let c = self.coords(&e.conjugate_by(x))?;
            for (k, &v) in c.iter().enumerate() {
                m.set(j, k, v);
            }
        }
        Ok(m)
    }
}

/// Decides whether `A/B` has a complement in `G/B` and computes `dim H¹`.
///
/// `B ≤ A` must both be normal in `G` with `A/B` elementary abelian.
pub fn complement_info(g: &Group, a: &Group, b: &Group) -> Result<ComplementInfo> {
    if !b.is_subgroup_of(a) || !a.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !g.is_normal_subgroup(a) || !g.is_normal_subgroup(b) {
        return Err(Error::NotNormal);
    }
    let sec = Section::new(g, a, b)?;
    let (p, m) = (sec.p, sec.m);
    if a.order() == g.order() {
        return Ok(ComplementInfo { p, dimension: m as u32, exists: true, h1_dimension: Some(0) });
    }
    let action = CosetAction::new(g, a)?;
    let lifting = action.lifting();
    let chain = &lifting.chain;
    let s_count = lifting.len();
    let lifts: Vec<Permutation> = (0..s_count).map(|i| lifting.lift(i)).collect();
    let lift_inv: Vec<Permutation> = lifts.iter().map(|x| x.inverse()).collect();
    let mats: Vec<FpMatrix> = lifts.iter().map(|x| sec.action(x)).collect::<Result<_>>()?;
    let mats_inv: Vec<FpMatrix> = mats.iter().map(|x| x.inverse()).collect::<Result<_>>()?;

    let nvars = s_count * m;
    let mut system = RowReducer::new(p, nvars + 1);
    let pointwise = b.is_trivial();
    let mut consistent = true;

    let mut relator: Vec<Letter> = Vec::new();
    let strong = chain.strong_generators();
    'levels: for l in 0..chain.depth() {
        let lv = chain.level(l);
        for (i, &beta) in lv.orbit.iter().enumerate() {
            for &s in &lv.gens {
                let beta2 = strong[s as usize].apply(beta);
                let i2 = lv.pos[beta2 as usize];
                if lv.parent[i2 as usize] == i as u32 && lv.label[i2 as usize] == s {
                    continue;
                }
                relator.clear();
                relator.extend(chain.rep_word(l, i as u32).into_iter().map(|x| (x, false)));
                relator.push((s, false));
                relator.extend(chain.rep_word(l, i2).into_iter().rev().map(|x| (x, true)));
                // sift the Schreier generator through the deeper levels
                let mut img: Vec<u32> = (0..lifting.image_degree() as u32).collect();
                for &(x, inv) in &relator {
                    let gx = if inv { chain.strong_generator_inverse(x as usize) } else { &strong[x as usize] };
                    for y in img.iter_mut() {
                        *y = gx.apply(*y);
                    }
                }
                for k in l + 1..chain.depth() {
                    let lk = chain.level(k);
                    let idx = lk.pos[img[lk.point as usize] as usize];
                    debug_assert_ne!(idx, crate::chain::NONE);
                    if lk.parent[idx as usize] == crate::chain::NONE {
                        continue;
                    }
                    for y in img.iter_mut() {
                        *y = chain.apply_inv_rep(k, idx, *y);
                    }
                    relator.extend(chain.rep_word(k, idx).into_iter().rev().map(|x| (x, true)));
                }
                debug_assert!(img.iter().enumerate().all(|(a, &b)| a as u32 == b));

                let z: Vec<u64> = if pointwise {
                    let mut pts = sec.base.clone();
                    for &(x, inv) in &relator {
                        let gx = if inv { &lift_inv[x as usize] } else { &lifts[x as usize] };
                        for y in pts.iter_mut() {
                            *y = gx.apply(*y);
                        }
                    }
                    sec.coords_of_base_images(&pts)?.to_vec()
                } else {
                    let mut w = Permutation::identity(g.degree());
                    for &(x, inv) in &relator {
                        w = w.mul(if inv { &lift_inv[x as usize] } else { &lifts[x as usize] });
                    }
                    sec.coords(&w)?.to_vec()
                };

                let mut coef: Vec<Option<FpMatrix>> = vec![None; s_count];
                let mut pm = FpMatrix::identity(p, m);
                for &(x, inv) in relator.iter().rev() {
                    let x = x as usize;
                    let term = if inv { mats_inv[x].mul(&pm).neg() } else { pm.clone() };
                    coef[x] = Some(match coef[x].take() {
                        Some(c) => c.add(&term),
                        None => term,
                    });
                    pm = if inv { mats_inv[x].mul(&pm) } else { mats[x].mul(&pm) };
                }
                for c in 0..m {
                    let mut row = vec![0u64; nvars + 1];
                    for (sidx, cm) in coef.iter().enumerate() {
                        if let Some(cm) = cm {
                            for r in 0..m {
                                row[sidx * m + r] = cm.get(r, c);
                            }
                        }
                    }
                    row[nvars] = (p - z[c]) % p;
                    if row.iter().all(|&v| v == 0) {
                        continue;
                    }
                    if system.insert(row) == Some(nvars) {
                        consistent = false;
                        break 'levels;
                    }
                }
            }
        }
    }
    if !consistent {
        return Ok(ComplementInfo { p, dimension: m as u32, exists: false, h1_dimension: None });
    }
    let z1 = nvars - system.rank();
    let mut inner = FpMatrix::zero(p, m, nvars);
    for (sidx, mat) in mats.iter().enumerate() {
        let d = FpMatrix::identity(p, m).add(&mat.neg());
        for r in 0..m {
            for c in 0..m {
                inner.set(r, sidx * m + c, d.get(r, c));
            }
        }
    }
    let b1 = inner.rank();
    Ok(ComplementInfo { p, dimension: m as u32, exists: true, h1_dimension: Some((z1 - b1) as u32) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v4_in(g: &Group) -> Group {
        g.normal_closure(&[Permutation::from_cycles(4, "(0,1)(2,3)").unwrap()])
    }

    #[test]
    fn s4_over_v4_splits_once() {
        let s4 = Group::symmetric(4);
        let v4 = v4_in(&s4);
        let info = complement_info(&s4, &v4, &Group::trivial(4)).unwrap();
        assert!(info.exists);
        assert_eq!(info.dimension, 2);
        assert_eq!(info.classes(), BigUint::from(1u32));
    }

    #[test]
    fn cyclic_four_does_not_split() {
        let c4 = Group::cyclic(4);
        let c2 = c4.subgroup(vec![Permutation::from_cycles(4, "(0,2)(1,3)").unwrap()]).unwrap();
        let info = complement_info(&c4, &c2, &Group::trivial(4)).unwrap();
        assert!(!info.exists);
        assert_eq!(info.classes(), BigUint::from(0u32));
    }

    #[test]
    fn upper_factor_of_s4() {
        let s4 = Group::symmetric(4);
        let a4 = Group::alternating(4).relimit(s4.limits().clone());
        let a4 = s4.subgroup(a4.generators().to_vec()).unwrap();
        let info = complement_info(&s4, &s4, &a4).unwrap();
        assert!(info.exists);
        let v4 = v4_in(&s4);
        let info = complement_info(&s4, &a4, &v4).unwrap();
        assert!(info.exists);
        assert_eq!(info.h1_dimension, Some(0));
    }

    #[test]
    fn elementary_abelian_has_many_complements() {
        // C2 x C2 acting on 4 points, complements to one C2 factor: two of them.
        let g = Group::new(4, vec![Permutation::from_cycles(4, "(0,1)").unwrap(), Permutation::from_cycles(4, "(2,3)").unwrap()])
            .unwrap();
        let a = g.subgroup(vec![Permutation::from_cycles(4, "(0,1)").unwrap()]).unwrap();
        let info = complement_info(&g, &a, &Group::trivial(4)).unwrap();
        assert_eq!(info.classes(), BigUint::from(2u32));
    }
}
