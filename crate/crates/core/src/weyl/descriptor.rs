use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{SignedPerm, MAX_ORDER, MAX_RANK};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylFamily {
    /// Symmetric group acting on `n` coordinates.
    A,
    /// All signed permutations (types B and C share this Weyl group).
    BC,
    /// Signed permutations with an even number of sign changes.
    D,
    /// Anything else, given by an explicit root system.
    Custom,
}

/// A Weyl group realised as signed permutations, together with the root
/// system that defines its length function.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "DescriptorRepr", try_from = "DescriptorRepr")]
pub struct WeylDescriptor {
    family: WeylFamily,
    rank: usize,
    roots: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    simple_reflections: Vec<SignedPerm>,
    functional: Vec<i64>,
    elements: OnceLock<Vec<SignedPerm>>,
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    family: WeylFamily,
    rank: usize,
    roots: Vec<Vec<i64>>,
}

impl From<WeylDescriptor> for DescriptorRepr {
    fn from(d: WeylDescriptor) -> Self {
        DescriptorRepr { family: d.family, rank: d.rank, roots: d.roots }
    }
}

impl TryFrom<DescriptorRepr> for WeylDescriptor {
    type Error = Error;
    fn try_from(r: DescriptorRepr) -> Result<Self> {
        Self::from_roots(r.family, r.rank, r.roots)
    }
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn pair(n: usize, i: usize, si: i64, j: usize, sj: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = si;
    v[j] = sj;
    v
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Roots `±(e_i - e_j)` for `i < j` inside `coords`.
pub(crate) fn type_a_roots(n: usize, coords: &[usize]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (a, &i) in coords.iter().enumerate() {
        for &j in &coords[a + 1..] {
            out.push(pair(n, i, 1, j, -1));
            out.push(pair(n, i, -1, j, 1));
        }
    }
    out
}

fn type_d_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = type_a_roots(n, &(0..n).collect::<Vec<_>>());
    for i in 0..n {
        for j in i + 1..n {
            out.push(pair(n, i, 1, j, 1));
            out.push(pair(n, i, -1, j, -1));
        }
    }
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl WeylDescriptor {
    /// `S_n`.
    pub fn type_a(n: usize) -> Result<Self> {
        Self::from_roots(WeylFamily::A, n, type_a_roots(n, &(0..n).collect::<Vec<_>>()))
    }

    /// Hyperoctahedral group of rank `n` (root system `B_n`).
    pub fn type_bc(n: usize) -> Result<Self> {
        let mut roots = type_d_roots(n);
        for i in 0..n {
            roots.push(unit(n, i, 1));
            roots.push(unit(n, i, -1));
        }
        Self::from_roots(WeylFamily::BC, n, roots)
    }

    /// Even-sign-change subgroup of rank `n` (root system `D_n`).
    pub fn type_d(n: usize) -> Result<Self> {
        Self::from_roots(WeylFamily::D, n, type_d_roots(n))
    }

    /// Weyl group of an arbitrary (reduced or not) root system on `rank`
    /// coordinates whose reflections are signed permutations.
    pub fn custom(rank: usize, roots: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_roots(WeylFamily::Custom, rank, roots)
    }

    fn from_roots(family: WeylFamily, rank: usize, mut roots: Vec<Vec<i64>>) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        if rank == 0 {
            return Err(Error::InvalidParams("rank must be positive".into()));
        }
        for r in &roots {
            if r.len() != rank {
                return Err(Error::RankMismatch(rank, r.len()));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidParams("zero root".into()));
            }
            if r.iter().any(|x| x.abs() > 2) {
                return Err(Error::InvalidParams(format!("root {r:?} has entries outside [-2, 2]")));
            }
        }
        roots.sort();
        roots.dedup();
        // 5-adic weights separate all vectors with entries in [-4, 4], so no
        // root (nor difference of roots) pairs to zero.
        let functional: Vec<i64> = (0..rank).map(|i| 5i64.pow((rank - 1 - i) as u32)).collect();
        let positive: Vec<Vec<i64>> = roots.iter().filter(|r| dot(r, &functional) > 0).cloned().collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().collect();
        let mut simple_roots = Vec::new();
        'outer: for r in &positive {
            for a in &positive {
                let rest: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
                if pos_set.contains(&rest) {
                    continue 'outer;
                }
            }
            simple_roots.push(r.clone());
        }
        let root_set: HashSet<&Vec<i64>> = roots.iter().collect();
        let mut simple_reflections = Vec::new();
        for a in &simple_roots {
            let s = reflection(rank, a)?;
            for r in &roots {
                if !root_set.contains(&s.act(r)) {
                    return Err(Error::InvalidParams(format!("roots not closed under the reflection in {a:?}")));
                }
            }
            simple_reflections.push(s);
        }
        let d = WeylDescriptor {
            family,
            rank,
            roots,
            positive,
            simple_roots,
            simple_reflections,
            functional,
            elements: OnceLock::new(),
        };
        Ok(d)
    }

    pub fn family(&self) -> WeylFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_reflections(&self) -> &[SignedPerm] {
        &self.simple_reflections
    }

    pub fn identity(&self) -> SignedPerm {
        SignedPerm::identity(self.rank)
    }

    pub fn is_positive(&self, v: &[i64]) -> bool {
        dot(v, &self.functional) > 0
    }

    /// Order from the family formula; `None` for custom root systems.
    pub fn order_formula(&self) -> Option<u128> {
        let n = self.rank;
        match self.family {
            WeylFamily::A => Some(factorial(n)),
            WeylFamily::BC => Some((1u128 << n) * factorial(n)),
            WeylFamily::D => Some((1u128 << (n - 1)) * factorial(n)),
            WeylFamily::Custom => None,
        }
    }

    fn length_unchecked(&self, w: &SignedPerm) -> usize {
        self.positive.iter().filter(|a| !self.is_positive(&w.act(a))).count()
    }

    /// Membership test. Reduces `w` by simple reflections until no positive
    /// simple root is sent negative; `w` is in the group iff what remains is
    /// the identity and `w` preserves the roots.
    pub fn contains(&self, w: &SignedPerm) -> bool {
        if w.rank() != self.rank {
            return false;
        }
        match self.family {
            WeylFamily::A => return w.is_unsigned(),
            WeylFamily::BC => return true,
            WeylFamily::D => return w.negative_count().is_multiple_of(2),
            WeylFamily::Custom => {}
        }
        let root_set: HashSet<&Vec<i64>> = self.roots.iter().collect();
        if !self.roots.iter().all(|r| root_set.contains(&w.act(r))) {
            return false;
        }
        let mut x = *w;
        'reduce: loop {
            let xinv = x.inverse();
            for (a, s) in self.simple_roots.iter().zip(&self.simple_reflections) {
                if !self.is_positive(&xinv.act(a)) {
                    x = *s * x;
                    continue 'reduce;
                }
            }
            break;
        }
        x.is_identity()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &SignedPerm) -> Result<usize> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, w.rank()));
        }
        if !self.contains(w) {
            return Err(Error::NotInGroup(w.to_string()));
        }
        Ok(self.length_unchecked(w))
    }

    /// The unique element sending every positive root to a negative one.
    pub fn longest_element(&self) -> SignedPerm {
        let mut w = self.identity();
        let mut len = 0;
        'climb: loop {
            for s in &self.simple_reflections {
                let sw = *s * w;
                let l = self.length_unchecked(&sw);
                if l > len {
                    w = sw;
                    len = l;
                    continue 'climb;
                }
            }
            return w;
        }
    }

    /// All group elements in canonical order. Errors beyond `2^8 * 8!`.
    pub fn elements(&self) -> Result<&[SignedPerm]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        if let Some(ord) = self.order_formula() {
            if ord > MAX_ORDER {
                return Err(Error::GroupTooLarge(ord, MAX_ORDER));
            }
        }
        let all = closure(self.identity(), &self.simple_reflections)?;
        Ok(self.elements.get_or_init(|| all))
    }

    pub fn order(&self) -> Result<u128> {
        match self.order_formula() {
            Some(o) => Ok(o),
            None => Ok(self.elements()?.len() as u128),
        }
    }
}

/// Reflection in `a` as a signed permutation.
fn reflection(rank: usize, a: &[i64]) -> Result<SignedPerm> {
    let aa = dot(a, a);
    let mut images = vec![0i32; rank];
    for (k, img) in images.iter_mut().enumerate() {
        // s(e_k) = e_k - (2 a_k / (a, a)) a
        if (2 * a[k]) % aa != 0 {
            return Err(Error::InvalidParams(format!("reflection in {a:?} is not a signed permutation")));
        }
        let c = 2 * a[k] / aa;
        let mut v = unit(rank, k, 1);
        for (x, y) in v.iter_mut().zip(a) {
            *x -= c * y;
        }
        let nz: Vec<usize> = (0..rank).filter(|&i| v[i] != 0).collect();
        if nz.len() != 1 || v[nz[0]].abs() != 1 {
            return Err(Error::InvalidParams(format!("reflection in {a:?} is not a signed permutation")));
        }
        *img = v[nz[0]].signum() as i32 * (nz[0] as i32 + 1);
    }
    SignedPerm::from_images(&images)
}

/// Breadth-first closure of `{start}` under left multiplication by `gens`,
/// sorted. Errors once more than `2^8 * 8!` elements appear.
pub(crate) fn closure(start: SignedPerm, gens: &[SignedPerm]) -> Result<Vec<SignedPerm>> {
    let mut seen: HashSet<SignedPerm> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x)?;
            if seen.insert(y) {
                if seen.len() as u128 > MAX_ORDER {
                    return Err(Error::GroupTooLarge(seen.len() as u128, MAX_ORDER));
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<SignedPerm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

impl fmt::Debug for WeylDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylDescriptor({:?}, rank {}, {} roots)", self.family, self.rank, self.roots.len())
    }
}

impl PartialEq for WeylDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank && self.roots == other.roots
    }
}

impl Eq for WeylDescriptor {}
