//! Deliberately naive reference computations. Nothing here calls into the
//! crate beyond building `SignedPerm`s and composing them.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use orbitdescent::weyl::SignedPerm;

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn from_perm_and_signs(p: &[usize], signs: u32) -> SignedPerm {
    let images: Vec<i32> = p
        .iter()
        .enumerate()
        .map(|(j, &k)| if signs >> j & 1 == 1 { -(k as i32 + 1) } else { k as i32 + 1 })
        .collect();
    SignedPerm::from_images(&images).unwrap()
}

pub fn symmetric_group(n: usize) -> Vec<SignedPerm> {
    all_perms(n).iter().map(|p| from_perm_and_signs(p, 0)).collect()
}

pub fn hyperoctahedral_group(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for p in all_perms(n) {
        for s in 0..1u32 << n {
            out.push(from_perm_and_signs(&p, s));
        }
    }
    out
}

pub fn even_sign_group(n: usize) -> Vec<SignedPerm> {
    hyperoctahedral_group(n).into_iter().filter(|w| w.negative_count() % 2 == 0).collect()
}

/// `S_m × S_m` acting on `0..m` and `m..2m`.
pub fn block_pair_group(m: usize) -> Vec<SignedPerm> {
    all_perms(2 * m)
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(j, &k)| (j < m) == (k < m)))
        .map(|p| from_perm_and_signs(&p, 0))
        .collect()
}

/// Subgroup generated by `gens`, by multiplying until nothing new appears.
pub fn naive_closure(rank: usize, gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let mut set: BTreeSet<SignedPerm> = BTreeSet::from([SignedPerm::identity(rank)]);
    loop {
        let current: Vec<SignedPerm> = set.iter().copied().collect();
        let before = set.len();
        for x in &current {
            for g in gens {
                set.insert(*x * *g);
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

/// Right cosets `H x`, found by testing `x y^{-1} ∈ H` for every pair.
/// Each coset is sorted; cosets are ordered by their least element.
pub fn naive_cosets(sub: &[SignedPerm], group: &[SignedPerm]) -> Vec<Vec<SignedPerm>> {
    let h: HashSet<SignedPerm> = sub.iter().copied().collect();
    let mut sorted = group.to_vec();
    sorted.sort();
    let mut assigned = vec![false; sorted.len()];
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        if assigned[i] {
            continue;
        }
        let mut class = Vec::new();
        for j in i..sorted.len() {
            if !assigned[j] && h.contains(&(sorted[i] * sorted[j].inverse())) {
                assigned[j] = true;
                class.push(sorted[j]);
            }
        }
        out.push(class);
    }
    out
}

/// `{w : θ(w) w_θ w = w_θ}` with `θ(w) = t w t^{-1}`.
pub fn naive_twisted(group: &[SignedPerm], t: &SignedPerm, w_theta: &SignedPerm) -> Vec<SignedPerm> {
    let mut out: Vec<SignedPerm> =
        group.iter().filter(|w| *t * **w * t.inverse() * *w_theta * **w == *w_theta).copied().collect();
    out.sort();
    out
}

/// Orbits of `<rule>` on `domain`; `Err` if the rule leaves the domain.
pub fn naive_galois_orbits<T, F>(domain: &[T], rule: F) -> Result<Vec<Vec<T>>, String>
where
    T: Copy + Ord + std::fmt::Debug,
    F: Fn(&T) -> T,
{
    let all: BTreeSet<T> = domain.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in &all {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = vec![*x];
        seen.insert(*x);
        let mut y = rule(x);
        while y != *x {
            if !all.contains(&y) {
                return Err(format!("{y:?} escapes the domain"));
            }
            if !seen.insert(y) {
                return Err(format!("{y:?} lies on two orbits"));
            }
            orbit.push(y);
            y = rule(&y);
        }
        orbit.sort();
        out.push(orbit);
    }
    Ok(out)
}

/// Conjugacy classes of `subset` under `group`, each sorted, ordered by
/// least element.
pub fn naive_conjugacy(subset: &[SignedPerm], group: &[SignedPerm]) -> Vec<Vec<SignedPerm>> {
    let members: BTreeSet<SignedPerm> = subset.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in &members {
        if seen.contains(x) {
            continue;
        }
        let class: BTreeSet<SignedPerm> =
            group.iter().map(|g| *g * *x * g.inverse()).filter(|y| members.contains(y)).collect();
        seen.extend(class.iter().copied());
        out.push(class.into_iter().collect());
    }
    out
}

/// Number of involutions in `S_n`, counted on plain index vectors.
pub fn involution_count(n: usize) -> usize {
    all_perms(n).iter().filter(|p| p.iter().enumerate().all(|(j, &k)| p[k] == j)).count()
}

/// Number of fixed-point-free involutions in `S_n`.
pub fn fpf_involution_count(n: usize) -> usize {
    all_perms(n).iter().filter(|p| p.iter().enumerate().all(|(j, &k)| k != j && p[k] == j)).count()
}

/// Whether `set` is closed under composition.
pub fn is_closed(set: &[SignedPerm]) -> bool {
    let h: HashSet<SignedPerm> = set.iter().copied().collect();
    set.iter().all(|a| set.iter().all(|b| h.contains(&(*a * *b))))
}

/// `{(ε, σ) ∈ {±1}^{n+1} ⋊ S_{n+1} : ∏_{i ≤ n} ε_i = 1}`, read literally.
pub fn literal_sign_condition_set(n: usize) -> Vec<SignedPerm> {
    hyperoctahedral_group(n + 1)
        .into_iter()
        .filter(|w| {
            // ε_i is the sign attached to coordinate i, i.e. in w(e_j) = ε e_i
            let mut prod = 1i32;
            for j in 0..=n {
                let (k, s) = w.image(j);
                if k < n {
                    prod *= i32::from(s);
                }
            }
            prod == 1
        })
        .collect()
}
