mod oracle;

use std::collections::BTreeMap;

use orbitdescent::catalog::{Family, GroupSpec, Params};
use orbitdescent::descent::{
    descent_report, fixed_and_pairs, galois_action, twisted_galois, twisted_parameter_action, upq_s0_action, FieldTag,
    GaloisAction, GaloisRule, TwistedRule,
};
use orbitdescent::twisted::{
    a_max, image_set, reachable_set, springer_image_sweep, springer_value, springer_value_for, twisted_involutions,
    TwistContext,
};
use orbitdescent::weyl::{SignedPerm, WeylDescriptor};

fn spec(f: Family, n: usize) -> GroupSpec {
    GroupSpec::build(f, Params::n(n)).unwrap()
}

fn upq(p: usize, q: usize) -> GroupSpec {
    GroupSpec::build(Family::Upq, Params::pq(p, q)).unwrap()
}

fn strs(v: &[SignedPerm]) -> Vec<String> {
    v.iter().map(|w| w.to_string()).collect()
}

fn ctx(n: usize, w_theta: SignedPerm) -> TwistContext {
    TwistContext::new(WeylDescriptor::type_a(n).unwrap(), SignedPerm::identity(n), w_theta).unwrap()
}

#[test]
fn twisted_involutions_with_longest_element() {
    for n in 1..=5 {
        let d = WeylDescriptor::type_a(n).unwrap();
        let w0 = d.longest_element();
        let got = twisted_involutions(&ctx(n, w0)).unwrap();
        let expected: Vec<SignedPerm> =
            d.elements().unwrap().iter().filter(|w| (**w * w0).is_involution()).copied().collect();
        assert_eq!(got, expected, "n = {n}");
        assert_eq!(got.len(), oracle::involution_count(n));
    }
    assert_eq!(twisted_involutions(&ctx(4, WeylDescriptor::type_a(4).unwrap().longest_element())).unwrap().len(), 10);
    assert_eq!(twisted_involutions(&ctx(1, SignedPerm::identity(1))).unwrap(), [SignedPerm::identity(1)]);
}

#[test]
fn gl3_reachability() {
    let s = spec(Family::GL, 3);
    let w0 = s.weyl().longest_element();
    let e = SignedPerm::identity(3);
    assert!(reachable_set(s.context(), &e).contains(&w0));
    let top = a_max(&s).unwrap();
    assert_eq!(image_set(s.context(), &top).unwrap().len(), 4);
    assert_eq!(reachable_set(s.context(), &top), [top]);
}

#[test]
fn gl_image_is_everything() {
    for n in 1..=6 {
        let s = spec(Family::GL, n);
        assert_eq!(s.twisted_parameters().unwrap(), twisted_involutions(s.context()).unwrap(), "n = {n}");
        assert_eq!(springer_image_sweep(&s).unwrap(), twisted_involutions(s.context()).unwrap());
    }
    assert_eq!(strs(&springer_image_sweep(&spec(Family::GL, 3)).unwrap()), ["e", "(1 2 3)", "(1 3 2)", "(1 3)"]);
}

#[test]
fn so_even_image() {
    let s = spec(Family::SOeven1, 2);
    assert_eq!(strs(&s.twisted_parameters().unwrap()), ["e", "[+-]", "[-+]"]);
    for n in 1..=4 {
        let s = spec(Family::SOeven1, n);
        let image = springer_image_sweep(&s).unwrap();
        assert_eq!(image.len(), n + 1);
        assert!(image.iter().all(|w| w.unsigned().is_identity() && w.negative_count() <= 1));
    }
}

#[test]
fn springer_values_at_identity() {
    for (p, q) in [(1, 1), (2, 1), (3, 2), (4, 2)] {
        let s = upq(p, q);
        let n = p + q;
        let cycles: Vec<[usize; 2]> = (1..=q).map(|j| [p - q + j, n - q + j]).collect();
        let refs: Vec<&[usize]> = cycles.iter().map(|c| &c[..]).collect();
        let c = SignedPerm::from_cycles(n, &refs).unwrap();
        let v = springer_value(&s, 0, &SignedPerm::identity(n)).unwrap();
        assert_eq!(v, c * s.w_theta(), "U({p},{q})");
    }
    for n in 1..=4 {
        let s = spec(Family::SOeven1, n);
        let h0 = s.tori().iter().find(|t| t.label == "H_0").unwrap();
        let mut signs = vec![1i8; n];
        signs[n - 1] = -1;
        assert_eq!(springer_value(&s, h0.index, &SignedPerm::identity(n)).unwrap(), SignedPerm::sign_vector(&signs).unwrap());
    }
    let c = ctx(3, SignedPerm::identity(3));
    for w in WeylDescriptor::type_a(3).unwrap().elements().unwrap() {
        assert!(springer_value_for(&c, &SignedPerm::identity(3), w).is_identity());
    }
}

#[test]
fn sl2_fibre() {
    let s = spec(Family::SL2n, 1);
    let mut fibres: BTreeMap<SignedPerm, usize> = BTreeMap::new();
    for p in s.orbit_parameters().unwrap() {
        *fibres.entry(p.springer_value).or_default() += 1;
    }
    assert_eq!(fibres.len(), 2);
    assert_eq!(fibres[&SignedPerm::identity(2)], 2);
}

#[test]
fn sl_galois_action() {
    for n in 1..=3 {
        let s = spec(Family::SL2n, n);
        for t in s.tori() {
            let action = galois_action(&s, t.index).unwrap();
            assert_eq!(
                action.rule(),
                &GaloisRule::General { u_prime: t.galois_u_prime, conj: t.conj_rule, u: s.galois_u() }
            );
            let (fixed, pairs) = fixed_and_pairs(&action).unwrap();
            let wk = s.wk_subgroup(t.index).unwrap();
            let trivial = wk.contains(&t.galois_u_prime).unwrap();
            assert_eq!(trivial, t.index != n || n % 2 == 0, "n = {n}, i = {}", t.index);
            if trivial {
                assert!(pairs.is_empty());
            } else {
                assert!(fixed.is_empty(), "free for n odd, i = n");
            }
        }
    }
    let (fixed, pairs) = fixed_and_pairs(&galois_action(&spec(Family::SL2n, 1), 1).unwrap()).unwrap();
    assert!(fixed.is_empty());
    assert_eq!(pairs.len(), 1);
}

#[test]
fn upq_galois_is_right_multiplication_by_w0() {
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let s = upq(p, q);
        let w0 = s.weyl().longest_element();
        for t in s.tori() {
            let action = galois_action(&s, t.index).unwrap();
            assert_eq!(action.rule(), &GaloisRule::RightW0);
            let cosets = s.torus_cosets(t.index).unwrap();
            for c in &cosets {
                let image = action.apply(&c.representative).unwrap();
                let target = cosets.iter().find(|d| d.elements.contains(&(c.representative * w0))).unwrap();
                assert_eq!(image, target.representative);
            }
        }
    }
}

#[test]
fn so_galois_is_trivial() {
    for n in 1..=4 {
        for f in [Family::SOodd1, Family::SOeven1] {
            let s = spec(f, n);
            let r = descent_report(&s).unwrap();
            assert_eq!(r.pair_count(), 0, "{}", s.label());
            assert!(r.entries.iter().all(|e| e.field == FieldTag::Base));
        }
    }
}

#[test]
fn trivial_action_fixes_everything() {
    let s = spec(Family::GL, 3);
    let domain = twisted_involutions(s.context()).unwrap();
    let action = GaloisAction::on_elements(GaloisRule::Trivial, s.context(), domain.clone());
    let (fixed, pairs) = fixed_and_pairs(&action).unwrap();
    assert_eq!(fixed, domain);
    assert!(pairs.is_empty());
}

#[test]
fn u21_s0() {
    let s = upq(2, 1);
    let (fixed, pairs) = fixed_and_pairs(&upq_s0_action(&s).unwrap()).unwrap();
    assert_eq!(strs(&fixed), ["(1 3)"]);
    assert_eq!(pairs.len(), 1);
    let pair = [pairs[0].0.to_string(), pairs[0].1.to_string()];
    assert!(pair.contains(&"(1 2)".to_string()) && pair.contains(&"(2 3)".to_string()));
}

#[test]
fn up1_s0_rule() {
    for p in 1..=5 {
        let s = upq(p, 1);
        let action = upq_s0_action(&s).unwrap();
        for &w in action.domain() {
            let (i, j) = {
                let moved: Vec<usize> = (0..=p).filter(|&k| w.image(k).0 != k).map(|k| k + 1).collect();
                (moved[0], moved[1])
            };
            let expected = SignedPerm::transposition(p + 1, p + 2 - j, p + 2 - i);
            assert_eq!(action.apply(&w).unwrap(), expected, "U({p},1) on {w}");
        }
    }
}

#[test]
fn ustar_and_gl_descend() {
    for n in 1..=4 {
        let s = spec(Family::Ustar, n);
        let (fixed, pairs) = fixed_and_pairs(&twisted_parameter_action(&s).unwrap()).unwrap();
        assert!(pairs.is_empty());
        assert_eq!(fixed.len(), s.twisted_parameters().unwrap().len());
        let s = spec(Family::GL, n);
        let r = descent_report(&s).unwrap();
        assert!(r.entries.iter().all(|e| e.field == FieldTag::Base), "GL_{n}");
    }
}

#[test]
fn ustar_rule_is_trivial_on_image() {
    let s = spec(Family::Ustar, 3);
    let w0 = s.weyl().longest_element();
    for a in s.twisted_parameters().unwrap() {
        assert_eq!(w0 * a.inverse() * w0, a);
    }
}

#[test]
fn longest_element_is_fixed_by_twisted_rules() {
    for n in 1..=5 {
        let c = ctx(n, SignedPerm::identity(n));
        let w0 = c.group().longest_element();
        for rule in [TwistedRule::ConjW0, TwistedRule::TwistConj] {
            let action = twisted_galois(&c, rule).unwrap();
            assert_eq!(action.apply_element(&w0), w0, "n = {n}, {rule:?}");
        }
    }
}

#[test]
fn every_galois_action_is_a_well_defined_involution() {
    let mut specs = Vec::new();
    for n in 1..=3 {
        for f in [Family::SL2n, Family::SOodd1, Family::SOeven1] {
            specs.push(spec(f, n));
        }
    }
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
        specs.push(upq(p, q));
    }
    for s in &specs {
        for t in s.tori() {
            let a = galois_action(s, t.index).unwrap();
            assert!(a.is_well_defined().unwrap(), "{} {}", s.label(), t.label);
            assert!(a.is_involution().unwrap(), "{} {}", s.label(), t.label);
        }
    }
    for n in 1..=3 {
        for f in [Family::GL, Family::Ustar, Family::Restriction] {
            let a = twisted_parameter_action(&spec(f, n)).unwrap();
            assert!(a.is_involution().unwrap());
        }
    }
}
