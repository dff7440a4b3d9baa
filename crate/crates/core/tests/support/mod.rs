//! Glue between the catalog and the brute-force oracle, shared by the
//! integration tests and the acceptance runner. Every check returns
//! `Err(description)` on the first disagreement.

#![allow(dead_code)]

use std::collections::BTreeSet;

use crate::oracle::*;
use orbitdescent::catalog::{Family, GroupSpec, Params};
use orbitdescent::descent::{
    fixed_and_pairs, galois_action, twisted_parameter_action, ConjRule, GaloisAction, GaloisRule, TwistedRule,
};
use orbitdescent::twisted::{springer_image_sweep, twisted_involutions, TwistContext};
use orbitdescent::weyl::{conjugacy_classes, coset_space, SignedPerm, SubgroupSpec, WeylDescriptor, WeylFamily};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn naive_group(d: &WeylDescriptor) -> Vec<SignedPerm> {
    let mut g = match d.family() {
        WeylFamily::A => symmetric_group(d.rank()),
        WeylFamily::BC => hyperoctahedral_group(d.rank()),
        WeylFamily::D => even_sign_group(d.rank()),
        WeylFamily::Custom => block_pair_group(d.rank() / 2),
    };
    g.sort();
    g
}

/// The element sending every positive root to a negative one.
pub fn naive_w0(group: &[SignedPerm], positive: &[Vec<i64>]) -> SignedPerm {
    let pos: BTreeSet<Vec<i64>> = positive.iter().cloned().collect();
    let act = |w: &SignedPerm, v: &[i64]| -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            let (k, s) = w.image(j);
            out[k] += i64::from(s) * x;
        }
        out
    };
    let found: Vec<&SignedPerm> =
        group.iter().filter(|w| positive.iter().all(|a| !pos.contains(&act(w, a)))).collect();
    assert_eq!(found.len(), 1);
    *found[0]
}

pub fn weyl_order(s: &GroupSpec) -> u128 {
    match s.weyl().family() {
        WeylFamily::Custom => (1..=s.weyl().rank() as u128 / 2).product::<u128>().pow(2),
        _ => s.weyl().order_formula().unwrap(),
    }
}

/// Every catalog instance (n ≤ 8, p + q ≤ 8) whose Weyl group has at most
/// `max_order` elements.
pub fn catalog_instances(max_order: u128) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    let mut push = |f: Family, p: Params| {
        if let Ok(s) = GroupSpec::build(f, p) {
            if weyl_order(&s) <= max_order {
                out.push(s);
            }
        }
    };
    for n in 1..=8 {
        for f in [Family::GL, Family::SL2n, Family::Ustar, Family::SOodd1, Family::SOeven1, Family::Restriction] {
            push(f, Params::n(n));
        }
    }
    for p in 0..=8 {
        for q in 0..=p {
            if (1..=8).contains(&(p + q)) {
                push(Family::Upq, Params::pq(p, q));
            }
        }
    }
    out
}

fn as_set(v: &[Vec<SignedPerm>]) -> BTreeSet<Vec<SignedPerm>> {
    v.iter().cloned().collect()
}

/// Independent evaluation of a catalog coset rule on one element.
pub fn naive_coset_rule(spec: &GroupSpec, i: usize, w: &SignedPerm, w0: &SignedPerm) -> SignedPerm {
    let t = &spec.tori()[i];
    if spec.family() == Family::Upq {
        return *w * *w0;
    }
    let th = spec.theta_w();
    let bar = match t.conj_rule {
        ConjRule::Identity => *w,
        ConjRule::Theta => th * *w * th.inverse(),
    };
    t.galois_u_prime * bar * spec.galois_u()
}

pub fn naive_twisted_rule(rule: TwistedRule, w: &SignedPerm, w0: &SignedPerm) -> SignedPerm {
    match rule {
        TwistedRule::Trivial => *w,
        TwistedRule::ConjW0 => *w0 * w.inverse() * *w0,
        TwistedRule::TwistConj => *w0 * *w * *w0,
        TwistedRule::InverseTwist { w_c } => w_c.inverse() * w.inverse() * w_c,
    }
}

pub fn orbits_from_main(action: &GaloisAction) -> Result<BTreeSet<Vec<SignedPerm>>, String> {
    let (fixed, pairs) = fixed_and_pairs(action).map_err(|e| e.to_string())?;
    Ok(fixed
        .into_iter()
        .map(|x| vec![x])
        .chain(pairs.into_iter().map(|(a, b)| {
            let mut v = vec![a, b];
            v.sort();
            v
        }))
        .collect())
}

pub fn check_groups(spec: &GroupSpec) -> Check {
    let naive = naive_group(spec.weyl());
    ensure!(spec.weyl().elements().map_err(|e| e.to_string())? == &naive[..], "{}: W differs", spec.label());
    let w0 = naive_w0(&naive, spec.weyl().positive_roots());
    ensure!(spec.weyl().longest_element() == w0, "{}: w0 differs", spec.label());
    Ok(())
}

pub fn check_cosets(spec: &GroupSpec) -> Check {
    if !spec.has_wk_data() {
        return Ok(());
    }
    let group = naive_group(spec.weyl());
    for t in spec.tori() {
        let sub = naive_closure(spec.weyl().rank(), t.wk_generators.as_ref().unwrap());
        let main_sub = spec.wk_subgroup(t.index).unwrap();
        ensure!(main_sub.elements().unwrap() == &sub[..], "{} H_{}: W_K differs", spec.label(), t.index);
        let naive = naive_cosets(&sub, &group);
        let main = spec.torus_cosets(t.index).unwrap();
        let main_sets: Vec<Vec<SignedPerm>> = main.iter().map(|c| c.elements.clone()).collect();
        ensure!(as_set(&main_sets) == as_set(&naive), "{} H_{}: cosets differ", spec.label(), t.index);
        ensure!(
            main.iter().all(|c| c.representative == c.elements[0]),
            "{} H_{}: representative is not the least element",
            spec.label(),
            t.index
        );
    }
    Ok(())
}

pub fn check_twisted(spec: &GroupSpec) -> Check {
    let group = naive_group(spec.weyl());
    let naive = naive_twisted(&group, &spec.theta_w(), &spec.w_theta());
    ensure!(twisted_involutions(spec.context()).unwrap() == naive, "{}: twisted involutions differ", spec.label());
    Ok(())
}

pub fn check_conjugacy(spec: &GroupSpec) -> Check {
    let group = naive_group(spec.weyl());
    let involutions: Vec<SignedPerm> = group.iter().filter(|w| w.is_involution()).copied().collect();
    let main = conjugacy_classes(spec.weyl(), &involutions, &group);
    ensure!(as_set(&main) == as_set(&naive_conjugacy(&involutions, &group)), "{}: classes differ", spec.label());
    Ok(())
}

/// Galois orbits against the oracle, plus involutivity and
/// well-definedness of every action of the entry.
pub fn check_galois(spec: &GroupSpec) -> Check {
    let group = naive_group(spec.weyl());
    let w0 = naive_w0(&group, spec.weyl().positive_roots());
    if spec.has_wk_data() {
        for t in spec.tori() {
            let action = galois_action(spec, t.index).map_err(|e| e.to_string())?;
            ensure!(action.is_involution().unwrap(), "{} H_{}: not an involution", spec.label(), t.index);
            ensure!(action.is_well_defined().unwrap(), "{} H_{}: not well defined", spec.label(), t.index);
            let sub = naive_closure(spec.weyl().rank(), t.wk_generators.as_ref().unwrap());
            let cosets = naive_cosets(&sub, &group);
            let coset_of = |w: &SignedPerm| cosets.iter().position(|c| c.contains(w)).unwrap();
            for c in &cosets {
                let targets: BTreeSet<usize> =
                    c.iter().map(|w| coset_of(&naive_coset_rule(spec, t.index, w, &w0))).collect();
                ensure!(targets.len() == 1, "{} H_{}: oracle rule not well defined", spec.label(), t.index);
            }
            let idx: Vec<usize> = (0..cosets.len()).collect();
            let orbits = naive_galois_orbits(&idx, |&k| coset_of(&naive_coset_rule(spec, t.index, &cosets[k][0], &w0)))?;
            let naive: BTreeSet<Vec<SignedPerm>> = orbits
                .iter()
                .map(|o| o.iter().map(|&k| cosets[k][0]).collect::<BTreeSet<_>>().into_iter().collect())
                .collect();
            ensure!(orbits_from_main(&action)? == naive, "{} H_{}: Galois orbits differ", spec.label(), t.index);
        }
    } else {
        let action = twisted_parameter_action(spec).map_err(|e| e.to_string())?;
        ensure!(action.is_involution().unwrap(), "{}: not an involution", spec.label());
        let rule = *spec.twisted_rule();
        let orbits = naive_galois_orbits(action.domain(), |w| naive_twisted_rule(rule, w, &w0))?;
        ensure!(orbits_from_main(&action)? == orbits.into_iter().collect(), "{}: Galois orbits differ", spec.label());
    }
    Ok(())
}

/// Monoid image `I'` against the sweep of Springer values.
pub fn check_image_methods(spec: &GroupSpec) -> Check {
    let monoid = spec.twisted_parameters().map_err(|e| e.to_string())?;
    let sweep = springer_image_sweep(spec).map_err(|e| e.to_string())?;
    ensure!(monoid == sweep, "{}: monoid |I'| = {} but sweep gives {}", spec.label(), monoid.len(), sweep.len());
    Ok(())
}

fn random_descriptor(rng: &mut StdRng) -> WeylDescriptor {
    let rank = rng.gen_range(2..=4);
    match rng.gen_range(0..3) {
        0 => WeylDescriptor::type_a(rank + 1).unwrap(),
        1 => WeylDescriptor::type_bc(rank).unwrap(),
        _ => WeylDescriptor::type_d(rank).unwrap(),
    }
}

/// Random subgroups, twisted contexts and Galois rules. Returns the number
/// of instances and of valid twisted contexts checked.
pub fn check_random_instances(count: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut contexts = 0;
    for _ in 0..count {
        let d = random_descriptor(&mut rng);
        let group = naive_group(&d);
        let k = rng.gen_range(1..=3);
        let gens: Vec<SignedPerm> = (0..k).map(|_| group[rng.gen_range(0..group.len())]).collect();

        let spec = SubgroupSpec::new(d.rank(), gens.clone()).unwrap();
        let sub = naive_closure(d.rank(), &gens);
        ensure!(spec.elements().unwrap() == &sub[..], "subgroup of {gens:?} differs");
        let main: Vec<Vec<SignedPerm>> = coset_space(&spec, &d).unwrap().into_iter().map(|c| c.elements).collect();
        ensure!(as_set(&main) == as_set(&naive_cosets(&sub, &group)), "cosets of {gens:?} differ");
        ensure!(
            as_set(&conjugacy_classes(&d, &group, &sub)) == as_set(&naive_conjugacy(&group, &sub)),
            "classes under {gens:?} differ"
        );

        let w0 = naive_w0(&group, d.positive_roots());
        let theta = if rng.gen_bool(0.5) { d.identity() } else { group[rng.gen_range(0..group.len())] };
        let w_theta = if rng.gen_bool(0.5) { d.identity() } else { w0 };
        let Ok(ctx) = TwistContext::new(d.clone(), theta, w_theta) else { continue };
        contexts += 1;
        let naive = naive_twisted(&group, &theta, &w_theta);
        ensure!(twisted_involutions(&ctx).unwrap() == naive, "twisted involutions for θ = {theta} differ");
        let rule = [TwistedRule::Trivial, TwistedRule::ConjW0, TwistedRule::TwistConj][rng.gen_range(0..3)];
        let action = GaloisAction::on_elements(GaloisRule::from(rule), &ctx, naive.clone());
        match naive_galois_orbits(&naive, |w| naive_twisted_rule(rule, w, &w0)) {
            Ok(orbits) if orbits.iter().all(|o| o.len() <= 2) => {
                ensure!(orbits_from_main(&action)? == orbits.into_iter().collect(), "{rule:?} orbits differ");
            }
            _ => ensure!(fixed_and_pairs(&action).is_err(), "{rule:?} accepted a non-involution"),
        }
    }
    Ok((count, contexts))
}
