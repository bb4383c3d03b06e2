//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! Products act on the right: `p.mul(&q)` maps `x` to `q(p(x))`, so the
//! left factor is applied first.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {x} out of range for degree {n}")));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Parses cycle notation such as `(0,1,2)(3,4)`; `()` is the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let s = text.trim();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if rest_trim.is_empty() {
                break;
            }
            if !rest_trim.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in {s:?}")));
            }
            let close = rest_trim
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
            let body = &rest_trim[1..close];
            rest = &rest_trim[close + 1..];
            let pts: Vec<u32> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p as usize >= degree {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range for degree {degree}")));
                }
                if moved[p as usize] {
                    return Err(Error::InvalidPermutation(format!("point {p} appears twice")));
                }
                moved[p as usize] = true;
            }
            for (i, &p) in pts.iter().enumerate() {
                images[p as usize] = pts[(i + 1) % pts.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    /// Product `self · other`, failing on a degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.mul(other))
    }

    /// Product `self · other`; both must have the same degree.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn support_size(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 != x).count()
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        Permutation::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = Permutation::from_cycles(6, "(0,1,2)(3,4)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_string(), "(0,1,2)(3,4)");
        assert_eq!(p.order(), 6);
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::from_cycles(3, "(0,1)").unwrap();
        let b = Permutation::from_cycles(3, "(1,2)").unwrap();
        // apply a then b: 0 -> 1 -> 2
        assert_eq!(a.mul(&b).apply(0), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles(3, "(0,3)").is_err());
        assert!(Permutation::from_cycles(3, "(0,1)(1,2)").is_err());
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = Permutation::from_cycles(5, "(0,1,2,3,4)").unwrap();
        let g = Permutation::from_cycles(5, "(0,3)(1,2)").unwrap();
        assert_eq!(x.conjugate_by(&g), g.inverse().mul(&x).mul(&g));
    }
}
