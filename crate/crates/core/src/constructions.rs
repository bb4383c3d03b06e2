//! Wreath products, affine groups and modules over prime fields.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{cap_exceeded, Error, Result};
use crate::group::{Group, Limits};
use crate::hom::CosetAction;
use crate::linalg::{FpMatrix, RowReducer};
use crate::perm::Permutation;
use crate::simple::is_prime;

/// A module for a group given by generator matrices acting on row vectors.
#[derive(Clone, Debug, Serialize)]
pub struct FpModule {
    pub p: u64,
    pub n: usize,
    pub action: Vec<FpMatrix>,
    pub labels: Vec<String>,
}

impl FpModule {
    pub fn new(p: u64, n: usize, action: Vec<FpMatrix>) -> Result<FpModule> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        for m in &action {
            if m.rows != n || m.cols != n || m.p != p {
                return Err(Error::InvalidArgument("matrix shape does not match module".into()));
            }
            if m.det() == 0 {
                return Err(Error::SingularMatrix);
            }
        }
        let labels = (0..action.len()).map(|i| format!("g{i}")).collect();
        Ok(FpModule { p, n, action, labels })
    }

    /// Action on a submodule, in the coordinates of its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<FpModule> {
        let k = s.dim();
        let piv = s.pivots();
        let mut action = Vec::new();
        for a in &self.action {
            let mut m = FpMatrix::zero(self.p, k, k);
            for (i, b) in s.basis.iter().enumerate() {
                let img = a.apply(b);
                if !s.contains(&img) {
                    return Err(Error::InvalidArgument("subspace is not invariant".into()));
                }
                for (j, &c) in piv.iter().enumerate() {
                    m.set(i, j, img[c]);
                }
            }
            action.push(m);
        }
        Ok(FpModule { p: self.p, n: k, action, labels: self.labels.clone() })
    }

    /// Action on `V/S`, in the coordinates of the non-pivot columns of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<FpModule> {
        let piv: BTreeSet<usize> = s.pivots().into_iter().collect();
        let free: Vec<usize> = (0..self.n).filter(|c| !piv.contains(c)).collect();
        let k = free.len();
        let red = s.reducer();
        let mut action = Vec::new();
        for a in &self.action {
            let mut m = FpMatrix::zero(self.p, k, k);
            for (i, &c) in free.iter().enumerate() {
                let mut e = vec![0u64; self.n];
                e[c] = 1;
                let mut img = a.apply(&e);
                red.reduce(&mut img);
                for (j, &d) in free.iter().enumerate() {
                    m.set(i, j, img[d]);
                }
            }
            action.push(m);
        }
        Ok(FpModule { p: self.p, n: k, action, labels: self.labels.clone() })
    }

    /// The matrix group generated by the action, as a permutation group on vectors.
    pub fn group_on_vectors(&self) -> Result<Group> {
        linear_group(self.p, self.n, &self.action, &Limits::default())
    }
}

/// A subspace of `F_p^n` stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    pub p: u64,
    pub n: usize,
    pub basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Subspace {
        Subspace { p, n, basis: Vec::new() }
    }

    pub fn full(p: u64, n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0u64; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, n, basis }
    }

    pub fn span(p: u64, n: usize, vectors: &[Vec<u64>]) -> Subspace {
        let mut r = RowReducer::new(p, n);
        for v in vectors {
            r.insert(v.iter().map(|x| x % p).collect());
        }
        Subspace { p, n, basis: r.echelon() }
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.p, self.n);
        for b in &self.basis {
            r.insert(b.clone());
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reducer().contains(v)
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        let r = o.reducer();
        self.basis.iter().all(|b| r.contains(b))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let all: Vec<Vec<u64>> = self.basis.iter().chain(&o.basis).cloned().collect();
        Subspace::span(self.p, self.n, &all)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // Zassenhaus: echelonize rows [a | a] and [b | 0]; rows with a zero left half span the meet.
        let n = self.n;
        let mut r = RowReducer::new(self.p, 2 * n);
        for a in &self.basis {
            let mut row = a.clone();
            row.extend_from_slice(a);
            r.insert(row);
        }
        for b in &o.basis {
            let mut row = b.clone();
            row.extend(std::iter::repeat_n(0, n));
            r.insert(row);
        }
        let meet: Vec<Vec<u64>> =
            r.echelon().into_iter().filter(|row| row[..n].iter().all(|&x| x == 0)).map(|row| row[n..].to_vec()).collect();
        Subspace::span(self.p, n, &meet)
    }
}

/// Smallest invariant subspace containing `v`.
pub fn spin(m: &FpModule, v: &[u64]) -> Subspace {
    let mut r = RowReducer::new(m.p, m.n);
    let mut queue = VecDeque::new();
    let v: Vec<u64> = v.iter().map(|x| x % m.p).collect();
    if r.insert(v.clone()).is_some() {
        queue.push_back(v);
    }
    while let Some(w) = queue.pop_front() {
        for a in &m.action {
            let img = a.apply(&w);
            if !r.contains(&img) {
                r.insert(img.clone());
                queue.push_back(img);
            }
        }
    }
    Subspace { p: m.p, n: m.n, basis: r.echelon() }
}

const SPIN_ALL_LIMIT: u64 = 10_000;
const SUBMODULE_LIMIT: u64 = 1_000_000;

fn vectors(p: u64, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total).map(move |mut x| {
        let mut v = vec![0u64; n];
        for i in (0..n).rev() {
            v[i] = x % p;
            x /= p;
        }
        v
    })
}

/// Every invariant subspace, sorted by dimension and then by basis.
///
/// Every submodule is a sum of cyclic submodules, so spinning enough vectors
/// and closing under sums gives everything. Up to `10^4` vectors every vector
/// is spun; above that only one vector per line.
pub fn all_submodules(m: &FpModule) -> Result<Vec<Subspace>> {
    let size = (m.p as u128).checked_pow(m.n as u32).unwrap_or(u128::MAX);
    let lines = (size - 1) / (m.p as u128 - 1);
    if size > SUBMODULE_LIMIT as u128 && (m.n > 12 || lines > SUBMODULE_LIMIT as u128) {
        return Err(cap_exceeded("vectors for submodule search", size, SUBMODULE_LIMIT));
    }
    let mut cyclic: HashSet<Subspace> = HashSet::new();
    let spin_all = size <= SPIN_ALL_LIMIT as u128;
    for v in vectors(m.p, m.n).skip(1) {
        if !spin_all && v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        cyclic.insert(spin(m, &v));
    }
    let mut all: Vec<Subspace> = vec![Subspace::zero(m.p, m.n)];
    let mut seen: HashSet<Subspace> = all.iter().cloned().collect();
    let mut gens: Vec<Subspace> = cyclic.into_iter().collect();
    gens.sort();
    for c in &gens {
        if seen.insert(c.clone()) {
            all.push(c.clone());
        }
    }
    let mut j = 0;
    while j < all.len() {
        for i in 0..j {
            for s in [all[i].sum(&all[j]), all[i].intersection(&all[j])] {
                if seen.insert(s.clone()) {
                    all.push(s);
                }
            }
        }
        j += 1;
    }
    all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis.cmp(&b.basis)));
    Ok(all)
}

pub fn is_uniserial_module(m: &FpModule) -> Result<bool> {
    let subs = all_submodules(m)?;
    Ok(subs.windows(2).all(|w| w[0].dim() < w[1].dim() && w[0].is_subspace_of(&w[1])))
}

/// The unique composition series `V > V_1 > ... > 0` of a uniserial module.
pub fn module_composition_series(m: &FpModule) -> Result<Vec<Subspace>> {
    if !is_uniserial_module(m)? {
        return Err(Error::NotUniserialModule);
    }
    let mut subs = all_submodules(m)?;
    subs.reverse();
    Ok(subs)
}

/// Whether the acting group is faithful on `V/V_1`, where `V_1` is the unique
/// maximal submodule. The acting group is the group generated by the matrices.
pub fn acts_faithfully_on_top(m: &FpModule) -> Result<bool> {
    let series = module_composition_series(m)?;
    if m.n == 0 {
        return Ok(true);
    }
    let top = m.quotient(&series[1])?;
    let whole = m.group_on_vectors()?;
    let image = top.group_on_vectors()?;
    Ok(whole.order() == image.order())
}

/// The permutation module `F_p^n` of `S_n` with its submodules
/// `V_1 = {Σ x_i = 0}` and `V_2 = {(x, ..., x)}`.
#[derive(Clone, Debug, Serialize)]
pub struct PermutationModule {
    pub module: FpModule,
    pub v1: Subspace,
    pub v2: Subspace,
}

pub fn permutation_matrix(p: u64, perm: &Permutation) -> FpMatrix {
    let n = perm.degree();
    let mut m = FpMatrix::zero(p, n, n);
    for i in 0..n {
        m.set(i, perm.apply(i as u32) as usize, 1);
    }
    m
}

pub fn permutation_module(n: usize, p: u64) -> Result<PermutationModule> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let gens = Group::symmetric(n).generators().to_vec();
    let action: Vec<FpMatrix> = gens.iter().map(|g| permutation_matrix(p, g)).collect();
    let mut module = FpModule::new(p, n, action)?;
    module.labels = vec!["(0,1)".into(), format!("(0,...,{})", n - 1)];
    let v1_gens: Vec<Vec<u64>> = (1..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[0] = 1;
            v[i] = p - 1;
            v
        })
        .collect();
    let v1 = Subspace::span(p, n, &v1_gens);
    let v2 = Subspace::span(p, n, &[vec![1; n]]);
    Ok(PermutationModule { module, v1, v2 })
}

fn vector_index(p: u64, v: &[u64]) -> u32 {
    v.iter().fold(0u64, |acc, &x| acc * p + x) as u32
}

fn check_vector_space(p: u64, n: usize, limits: &Limits) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > limits.max_degree as u128 {
        return Err(cap_exceeded("degree", size, limits.max_degree));
    }
    Ok(size as usize)
}

fn matrix_perm(p: u64, n: usize, m: &FpMatrix) -> Result<Permutation> {
    if m.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    let images = vectors(p, n).map(|v| vector_index(p, &m.apply(&v))).collect();
    Ok(Permutation::from_images_unchecked(images))
}

fn basis_points(p: u64, n: usize) -> Vec<u32> {
    (0..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            vector_index(p, &v)
        })
        .collect()
}

/// A matrix group acting on the `p^n` vectors, listed lexicographically.
pub fn linear_group(p: u64, n: usize, mats: &[FpMatrix], limits: &Limits) -> Result<Group> {
    let size = check_vector_space(p, n, limits)?;
    let gens = mats.iter().map(|m| matrix_perm(p, n, m)).collect::<Result<Vec<_>>>()?;
    Ok(Group::with_known_base(size, gens, basis_points(p, n), limits.clone()))
}

/// The affine group `V:H` on the `p^n` vectors of `V`, with `H` generated by `mats`.
///
/// Vector `x` is the point `Σ x_i p^(n-1-i)`.
pub fn affine_group(p: u64, n: usize, mats: &[FpMatrix], limits: &Limits) -> Result<Group> {
    let size = check_vector_space(p, n, limits)?;
    let mut gens = Vec::new();
    for i in 0..n {
        let images = vectors(p, n)
            .map(|mut v| {
                v[i] = (v[i] + 1) % p;
                vector_index(p, &v)
            })
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    for m in mats {
        if m.rows != n || m.cols != n || m.p != p {
            return Err(Error::InvalidArgument("matrix shape does not match".into()));
        }
        gens.push(matrix_perm(p, n, m)?);
    }
    let mut base = vec![0u32];
    base.extend(basis_points(p, n));
    Ok(Group::with_known_base(size, gens, base, limits.clone()))
}

/// `T ≀_Ω G` acting on `Δ × Ω`, with `(δ, ω)` the point `ω|Δ| + δ`.
pub fn wreath_product(t: &Group, g: &Group) -> Result<Group> {
    let a = t.degree();
    let b = g.degree();
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let limits = t.limits().clone();
    let degree = a.checked_mul(b).ok_or_else(|| cap_exceeded("degree", "overflow", limits.max_degree))?;
    if degree > limits.max_degree {
        return Err(cap_exceeded("degree", degree, limits.max_degree));
    }
    let mut gens = Vec::new();
    for x in t.generators() {
        let images = (0..degree as u32).map(|pt| if (pt as usize) < a { x.apply(pt) } else { pt }).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    for s in g.generators() {
        let images = (0..degree as u32)
            .map(|pt| {
                let (w, d) = (pt as usize / a, pt as usize % a);
                (s.apply(w as u32) as usize * a + d) as u32
            })
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    let tb = if t.is_trivial() { Vec::new() } else { t.chain().base() };
    let mut base: Vec<u32> = Vec::new();
    for w in 0..b {
        base.extend(tb.iter().map(|&x| (w * a) as u32 + x));
    }
    if !g.is_trivial() {
        for w in g.chain().base() {
            let pt = w * a as u32;
            if !base.contains(&pt) {
                base.push(pt);
            }
        }
    }
    base.sort_unstable();
    Ok(Group::with_known_base(degree, gens, base, limits))
}

/// `SL_2(p)` acting on the `p^2 - 1` nonzero vectors of `F_p^2`.
pub fn sl2_on_nonzero_vectors(p: u64) -> Result<Group> {
    let size = check_vector_space(p, 2, &Limits::default())?;
    let mats = [
        FpMatrix::from_rows(p, &[vec![1, 1], vec![0, 1]])?,
        FpMatrix::from_rows(p, &[vec![0, 1], vec![-1, 0]])?,
    ];
    let gens = mats
        .iter()
        .map(|m| {
            let full = matrix_perm(p, 2, m)?;
            Ok(Permutation::from_images_unchecked(full.images()[1..].iter().map(|&x| x - 1).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    let base = basis_points(p, 2).into_iter().map(|x| x - 1).collect();
    Ok(Group::with_known_base(size - 1, gens, base, Limits::default()))
}

// ----- the tensor-product example -----

type M2 = [u64; 4];

fn search_failed(p: u64) -> Error {
    Error::SearchFailed(format!("no binary octahedral subgroup found in SL(2, {p})"))
}

fn m2_mul(a: &M2, b: &M2, p: u64) -> M2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn m2_closure(gens: &[M2], p: u64) -> BTreeSet<M2> {
    let mut set: BTreeSet<M2> = BTreeSet::from([[1, 0, 0, 1]]);
    let mut queue: VecDeque<M2> = VecDeque::from([[1, 0, 0, 1]]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = m2_mul(&x, g, p);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

fn m2_normalizes(x: &M2, set: &BTreeSet<M2>, p: u64) -> bool {
    // x⁻¹ in SL2: [d, -b; -c, a]
    let inv = [x[3], (p - x[1]) % p, (p - x[2]) % p, x[0]];
    set.iter().all(|s| set.contains(&m2_mul(&m2_mul(&inv, s, p), x, p)))
}

fn m2_to_matrix(a: &M2, p: u64) -> FpMatrix {
    FpMatrix { p, rows: 2, cols: 2, data: a.to_vec() }
}

/// Generators of a subgroup `2.S4` of `SL_2(p)`: a quaternion pair `i, j`, an
/// element of order 3 normalizing `⟨i, j⟩`, and an element of order 8
/// normalizing the resulting `2.A4`.
pub fn binary_octahedral(p: u64) -> Result<[FpMatrix; 4]> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NoSuchPrime(format!("{p} is not congruent to ±1 mod 8")));
    }
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::NoSuchPrime(format!("{p} is not congruent to ±1 mod 8")));
    }
    let minus_one = p - 1;
    let sl2: Vec<M2> = (0..p.pow(4))
        .map(|x| [x / (p * p * p), (x / (p * p)) % p, (x / p) % p, x % p])
        .filter(|m| (m[0] * m[3] + p * p - m[1] * m[2] % p) % p == 1)
        .collect();
    let trace = |m: &M2| (m[0] + m[3]) % p;
    let neg_id = [minus_one, 0, 0, minus_one];
    let order4: Vec<&M2> = sl2.iter().filter(|m| trace(m) == 0).collect();
    let i = *order4.first().ok_or_else(|| search_failed(p))?;
    let j = order4
        .iter()
        .find(|&&j| {
            let ij = m2_mul(i, j, p);
            let ji = m2_mul(j, i, p);
            ij == m2_mul(&ji, &neg_id, p)
        })
        .ok_or_else(|| search_failed(p))?;
    let q8 = m2_closure(&[*i, **j], p);
    let w = sl2
        .iter()
        .find(|m| trace(m) == minus_one && m2_normalizes(m, &q8, p))
        .ok_or_else(|| search_failed(p))?;
    let a4 = m2_closure(&[*i, **j, *w], p);
    if a4.len() != 24 {
        return Err(search_failed(p));
    }
    let e = sl2
        .iter()
        .find(|m| {
            let m2 = m2_mul(m, m, p);
            let m4 = m2_mul(&m2, &m2, p);
            m4 == neg_id && !a4.contains(*m) && m2_normalizes(m, &a4, p)
        })
        .ok_or_else(|| search_failed(p))?;
    let s4 = m2_closure(&[*i, **j, *w, *e], p);
    if s4.len() != 48 {
        return Err(search_failed(p));
    }
    Ok([m2_to_matrix(i, p), m2_to_matrix(j, p), m2_to_matrix(w, p), m2_to_matrix(e, p)])
}

/// Generators of `H = 2.(A4^2 : C4) ≤ GL_4(p)`, built from two tensor factors
/// `F_p^2 ⊗ F_p^2` of a `2.S4 ≤ SL_2(p)` together with the factor swap.
pub fn affine_equality_matrices(p: u64) -> Result<Vec<FpMatrix>> {
    let [i, j, w, e] = binary_octahedral(p)?;
    let id = FpMatrix::identity(p, 2);
    let mut swap = FpMatrix::zero(p, 4, 4);
    // e_a ⊗ e_b is basis vector 2a + b
    for a in 0..2 {
        for b in 0..2 {
            swap.set(2 * a + b, 2 * b + a, 1);
        }
    }
    let mut gens = Vec::new();
    for x in [&i, &j, &w] {
        gens.push(x.kronecker(&id));
        gens.push(id.kronecker(x));
    }
    gens.push(e.kronecker(&e));
    gens.push(e.kronecker(&id).mul(&swap));
    Ok(gens)
}

/// The affine group `p^4 : H` for `H = 2.(A4^2 : C4) ≤ GL_4(p)`, `p ≡ ±1 (mod 8)`.
pub fn build_affine_equality_group(p: u64, limits: &Limits) -> Result<Group> {
    let mats = affine_equality_matrices(p)?;
    let h = linear_group(p, 4, &mats, limits)?;
    if h.order_u64() != Some(1152) {
        return Err(search_failed(p));
    }
    affine_group(p, 4, &mats, limits)
}

/// Which quotient of the central module `F_p^n` of `T ≀ S_n` to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CentralQuotient {
    /// Keep the whole module (`V = F_p^n`).
    Full,
    /// Factor out the constant vectors (`V = F_p^n / V_2`).
    ModConstants,
    /// Factor out the sum-zero vectors (`V = F_p^n / V_1`).
    ModSumZero,
}

impl CentralQuotient {
    pub fn retained_dimension(self, n: usize) -> u32 {
        match self {
            CentralQuotient::Full => n as u32,
            CentralQuotient::ModConstants => n as u32 - 1,
            CentralQuotient::ModSumZero => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WreathQuasisimple {
    pub group: Group,
    /// Image of the base group `T^n`.
    pub base: Group,
    pub p: u64,
    /// Order of the center of `T` to the power `n`.
    pub central_order: BigUint,
    /// Dimension `k` of the retained quotient `V`.
    pub retained_dimension: u32,
}

/// A quotient `H` of `T ≀ S_n` for a quasisimple `T` whose center has prime
/// order `p`, obtained by factoring out part of the central subgroup `Z(T)^n`.
pub fn build_wreath_quasisimple(t: &Group, n: usize, quotient: CentralQuotient) -> Result<WreathQuasisimple> {
    let z = t.center()?;
    let p = match z.order_u64() {
        Some(q) if is_prime(q) => q,
        _ => return Err(Error::BadCenter),
    };
    if n < 5 || n % p as usize != 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 5 and divisible by {p}")));
    }
    let zgen = z.generators()[0].clone();
    let sn = Group::symmetric(n);
    let w = wreath_product(t, &sn)?;
    let a = t.degree();
    let lift = |x: &Permutation, block: usize| {
        let images = (0..(a * n) as u32)
            .map(|pt| if pt as usize / a == block { (block * a) as u32 + x.apply(pt % a as u32) } else { pt })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let central: Vec<Permutation> = (0..n).map(|b| lift(&zgen, b)).collect();
    let central_group = w.subgroup_unchecked(central.clone());
    let central_order = central_group.order();
    let base_gens: Vec<Permutation> = w.generators()[..t.generators().len()].to_vec();
    let base_w = w.normal_closure(&base_gens);
    let k = quotient.retained_dimension(n);
    match quotient {
        CentralQuotient::Full => {
            Ok(WreathQuasisimple { group: w, base: base_w, p, central_order, retained_dimension: k })
        }
        CentralQuotient::ModConstants => {
            let (h, base) = pair_action(t, &zgen, &w, &base_w, n)?;
            Ok(WreathQuasisimple { group: h, base, p, central_order, retained_dimension: k })
        }
        CentralQuotient::ModSumZero => {
            let sum_zero: Vec<Permutation> = (1..n).map(|b| central[0].mul(&central[b].pow(-1))).collect();
            let u = w.subgroup_unchecked(sum_zero);
            let ca = CosetAction::new(&w, &u)?;
            let base = ca.image_of_subgroup(&base_w);
            Ok(WreathQuasisimple { group: ca.image().clone(), base, p, central_order, retained_dimension: k })
        }
    }
}

/// Faithful action of `W / ⟨z_1 ⋯ z_n⟩` on ordered pairs of points in distinct
/// blocks, modulo applying the central element `z` to both coordinates. Only
/// valid for `p = 2`.
fn pair_action(t: &Group, z: &Permutation, w: &Group, base_w: &Group, n: usize) -> Result<(Group, Group)> {
    if z.order() != 2 {
        return Err(Error::InvalidArgument("pair construction needs a center of order 2".into()));
    }
    let a = t.degree();
    let limits = w.limits().clone();
    let degree = n * (n - 1) * a * a / 2;
    if degree > limits.max_degree {
        return Err(cap_exceeded("degree", degree, limits.max_degree));
    }
    // canonical representative of {(x, y), (z x, z y)}
    let mut index = std::collections::HashMap::new();
    let mut points: Vec<(u32, u32)> = Vec::with_capacity(degree);
    for x in 0..(a * n) as u32 {
        for y in 0..(a * n) as u32 {
            if x as usize / a == y as usize / a {
                continue;
            }
            let zx = (x as usize / a * a) as u32 + z.apply(x % a as u32);
            let zy = (y as usize / a * a) as u32 + z.apply(y % a as u32);
            let key = (x, y).min((zx, zy));
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry(key) {
                v.insert(points.len() as u32);
                points.push(key);
            }
        }
    }
    let zfull = |x: u32| (x as usize / a * a) as u32 + z.apply(x % a as u32);
    let act = |g: &Permutation| {
        let images = points
            .iter()
            .map(|&(x, y)| {
                let (gx, gy) = (g.apply(x), g.apply(y));
                index[&(gx, gy).min((zfull(gx), zfull(gy)))]
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let gens: Vec<Permutation> = w.generators().iter().map(act).collect();
    // Pairs (β_i in block b, β_1 in block b+1) pin down every block component
    // up to one global application of z.
    let tb = t.chain().base();
    let mut base = Vec::new();
    for b in 0..n {
        let next = ((b + 1) % n * a) as u32 + tb[0];
        for &beta in &tb {
            let x = (b * a) as u32 + beta;
            base.push(index[&(x, next).min((zfull(x), zfull(next)))]);
        }
    }
    let h = Group::with_known_base(degree, gens, base, limits);
    let base = h.subgroup_unchecked(base_w.generators().iter().map(act).collect());
    Ok((h, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_module_over_f5() {
        let pm = permutation_module(5, 5).unwrap();
        assert!(pm.v2.is_subspace_of(&pm.v1));
        assert_eq!(pm.v1.dim(), 4);
        let subs = all_submodules(&pm.module).unwrap();
        assert_eq!(subs, vec![Subspace::zero(5, 5), pm.v2.clone(), pm.v1.clone(), Subspace::full(5, 5)]);
        assert!(is_uniserial_module(&pm.module).unwrap());
        assert!(!acts_faithfully_on_top(&pm.module).unwrap());
        let v1 = pm.module.restrict(&pm.v1).unwrap();
        assert!(acts_faithfully_on_top(&v1).unwrap());
        assert_eq!(spin(&pm.module, &[1, 1, 1, 1, 1]), pm.v2);
        assert_eq!(spin(&pm.module, &[1, 4, 0, 0, 0]), pm.v1);
    }

    #[test]
    fn permutation_module_over_f3() {
        let pm = permutation_module(5, 3).unwrap();
        assert_eq!(pm.v1.intersection(&pm.v2).dim(), 0);
        assert_eq!(all_submodules(&pm.module).unwrap().len(), 4);
        assert!(!is_uniserial_module(&pm.module).unwrap());
        let pm2 = permutation_module(2, 2).unwrap();
        assert_eq!(pm2.v1, pm2.v2);
    }

    #[test]
    fn trivial_module_subspaces() {
        let m = FpModule::new(2, 2, vec![]).unwrap();
        assert_eq!(all_submodules(&m).unwrap().len(), 5);
    }

    #[test]
    fn wreath_orders() {
        let a5 = Group::alternating(5);
        let c2 = Group::cyclic(2);
        let w = wreath_product(&a5, &c2).unwrap();
        assert_eq!((w.degree(), w.order_u64()), (10, Some(7200)));
        let s3 = Group::symmetric(3);
        let w3 = wreath_product(&a5, &s3).unwrap();
        assert_eq!(w3.order_u64(), Some(60u64.pow(3) * 6));
        let bad = Group::new(3, vec![Permutation::from_cycles(3, "(0,1)").unwrap()]).unwrap();
        assert!(matches!(wreath_product(&a5, &bad), Err(Error::NotTransitive)));
    }

    #[test]
    fn affine_s4() {
        let gl22 = vec![
            FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap(),
            FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap(),
        ];
        let g = affine_group(2, 2, &gl22, &Limits::default()).unwrap();
        assert_eq!((g.degree(), g.order_u64()), (4, Some(24)));
        let t = affine_group(3, 2, &[], &Limits::default()).unwrap();
        assert_eq!(t.order_u64(), Some(9));
    }

    #[test]
    fn binary_octahedral_needs_congruence() {
        assert!(binary_octahedral(7).is_ok());
        assert!(matches!(binary_octahedral(5), Err(Error::NoSuchPrime(_))));
    }
}

#[cfg(test)]
mod heavy_tests {
    use super::*;
    use crate::structure::width_sequence;

    #[test]
    fn affine_equality_width_sequence() {
        let g = build_affine_equality_group(7, &Limits::default()).unwrap();
        assert_eq!(g.degree(), 2401);
        assert_eq!(g.order_u64(), Some(2401 * 1152));
        let w = width_sequence(&g).unwrap();
        assert_eq!(w.display(), "C2, (C2), C3^2, C2^4, (C2), C7^4");
    }

    #[test]
    fn quasisimple_wreath() {
        let t = sl2_on_nonzero_vectors(5).unwrap();
        assert_eq!((t.degree(), t.order_u64()), (24, Some(120)));
        let r = build_wreath_quasisimple(&t, 6, CentralQuotient::ModConstants).unwrap();
        assert_eq!(r.group.order(), BigUint::from(120u64).pow(6) * 720u32 / 2u32);
        assert_eq!(r.central_order, BigUint::from(64u32));
        assert_eq!(r.retained_dimension, 5);
        assert_eq!(r.base.order(), BigUint::from(60u64).pow(6) * 32u32);
        assert!(r.base.is_perfect());
        let full = build_wreath_quasisimple(&t, 6, CentralQuotient::Full).unwrap();
        assert_eq!(full.group.order(), BigUint::from(120u64).pow(6) * 720u32);
        assert!(matches!(
            build_wreath_quasisimple(&t, 6, CentralQuotient::ModSumZero),
            Err(Error::IndexCapExceeded { .. })
        ));
        assert!(build_wreath_quasisimple(&t, 5, CentralQuotient::Full).is_err());
    }
}
