use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::descriptor::closure;
use super::{SignedPerm, WeylDescriptor};
use crate::{Error, Result};

/// Subgroup given by generators; the element list is computed on first use.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupSpec {
    rank: usize,
    generators: Vec<SignedPerm>,
    #[serde(skip)]
    cached: OnceLock<Vec<SignedPerm>>,
}

impl SubgroupSpec {
    pub fn new(rank: usize, generators: Vec<SignedPerm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
            return Err(Error::RankMismatch(rank, g.rank()));
        }
        Ok(SubgroupSpec { rank, generators, cached: OnceLock::new() })
    }

    pub fn trivial(rank: usize) -> Self {
        SubgroupSpec { rank, generators: Vec::new(), cached: OnceLock::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn elements(&self) -> Result<&[SignedPerm]> {
        enumerate_subgroup(self)
    }

    pub fn contains(&self, w: &SignedPerm) -> Result<bool> {
        Ok(self.elements()?.binary_search(w).is_ok())
    }
}

impl PartialEq for SubgroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.generators == other.generators
    }
}

/// Closure of the generators, sorted canonically. The result is checked to
/// be closed under composition and inverses.
pub fn enumerate_subgroup(s: &SubgroupSpec) -> Result<&[SignedPerm]> {
    if let Some(e) = s.cached.get() {
        return Ok(e);
    }
    let all = closure(SignedPerm::identity(s.rank), &s.generators)?;
    let set: HashSet<&SignedPerm> = all.iter().collect();
    debug_assert!(all.iter().all(|x| set.contains(&x.inverse())));
    debug_assert!(all.iter().all(|x| s.generators.iter().all(|g| set.contains(&(*x * *g)))));
    Ok(s.cached.get_or_init(|| all))
}

/// A right coset `H w` with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub representative: SignedPerm,
    pub elements: Vec<SignedPerm>,
}

/// Right cosets `H\W`. Each representative is the least element of its coset
/// in canonical order, so `H` itself is represented by `e`.
pub fn coset_space(sub: &SubgroupSpec, d: &WeylDescriptor) -> Result<Vec<Coset>> {
    if sub.rank() != d.rank() {
        return Err(Error::RankMismatch(d.rank(), sub.rank()));
    }
    if let Some(g) = sub.generators().iter().find(|g| !d.contains(g)) {
        return Err(Error::NotASubgroup(g.to_string()));
    }
    let h = sub.elements()?;
    let mut seen: HashSet<SignedPerm> = HashSet::new();
    let mut out = Vec::new();
    for &w in d.elements()? {
        if seen.contains(&w) {
            continue;
        }
        let mut elements: Vec<SignedPerm> = h.iter().map(|&x| x * w).collect();
        elements.sort();
        seen.extend(elements.iter().copied());
        out.push(Coset { representative: w, elements });
    }
    Ok(out)
}

/// Partition `subset` into orbits under conjugation `x -> g x g^{-1}` by the
/// elements of `conjugators`. Classes are sorted internally and listed by
/// their least element.
pub fn conjugacy_classes(
    d: &WeylDescriptor,
    subset: &[SignedPerm],
    conjugators: &[SignedPerm],
) -> Vec<Vec<SignedPerm>> {
    let members: HashSet<SignedPerm> = subset.iter().filter(|x| x.rank() == d.rank()).copied().collect();
    let mut sorted: Vec<SignedPerm> = members.iter().copied().collect();
    sorted.sort();
    let mut seen: HashSet<SignedPerm> = HashSet::new();
    let mut out = Vec::new();
    for x in sorted {
        if seen.contains(&x) {
            continue;
        }
        let mut class: Vec<SignedPerm> = vec![x];
        seen.insert(x);
        for g in conjugators {
            let y = g.conjugate(&x);
            if members.contains(&y) && seen.insert(y) {
                class.push(y);
            }
        }
        class.sort();
        out.push(class);
    }
    out
}
