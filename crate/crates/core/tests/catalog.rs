mod oracle;

use orbitdescent::catalog::{Family, GroupSpec, Params};
use orbitdescent::dyadic::{apply_involution, monomial_to_weyl, DyadicGauss, ExactMatrix};
use orbitdescent::tori::{minus_space, psi0, restricted_roots, torus_classification};
use orbitdescent::weyl::{conjugacy_classes, SignedPerm};
use orbitdescent::Error;

fn spec(f: Family, n: usize) -> GroupSpec {
    GroupSpec::build(f, Params::n(n)).unwrap()
}

fn upq(p: usize, q: usize) -> GroupSpec {
    GroupSpec::build(Family::Upq, Params::pq(p, q)).unwrap()
}

fn perm_matrix(w: &SignedPerm) -> ExactMatrix {
    let rows = w
        .to_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(DyadicGauss::from_int).collect())
        .collect();
    ExactMatrix::from_rows(rows).unwrap()
}

fn by_label<'a>(s: &'a GroupSpec, label: &str) -> &'a orbitdescent::catalog::TorusDescriptor {
    s.tori().iter().find(|t| t.label == label).unwrap()
}

#[test]
fn gl3_entry() {
    let s = spec(Family::GL, 3);
    assert_eq!(s.weyl().order().unwrap(), 6);
    assert_eq!(s.weyl().longest_element().to_string(), "(1 3)");
    assert!(!s.has_wk_data());
}

#[test]
fn sl2_entry() {
    let s = spec(Family::SL2n, 1);
    assert_eq!(s.tori().len(), 2);
    assert_eq!(s.wk_subgroup(0).unwrap().elements().unwrap().len(), 2);
    assert_eq!(s.wk_subgroup(1).unwrap().elements().unwrap(), [SignedPerm::identity(2)]);
    let params: Vec<(usize, String)> =
        s.orbit_parameters().unwrap().iter().map(|p| (p.torus_index, p.representative.to_string())).collect();
    assert_eq!(params, [(0, "e".to_string()), (1, "e".to_string()), (1, "(1 2)".to_string())]);
}

#[test]
fn invalid_params() {
    for (f, p) in [
        (Family::Upq, Params::pq(1, 2)),
        (Family::Upq, Params::pq(0, 0)),
        (Family::GL, Params::n(0)),
        (Family::SL2n, Params::pq(2, 1)),
    ] {
        assert!(matches!(GroupSpec::build(f, p), Err(Error::InvalidParams(_))), "{f} {p:?}");
    }
}

#[test]
fn sl4_u_prime() {
    let s = spec(Family::SL2n, 2);
    let t = s.torus(1).unwrap();
    let m = t.g.inverse().unwrap().try_mul(&apply_involution(&t.g, s.galois_rule()).unwrap()).unwrap();
    assert_eq!(monomial_to_weyl(&m, s.reference_frame()).unwrap().to_string(), "(1 2)");
    for t in s.tori() {
        let pairs: [&[usize]; 2] = [&[1, 2], &[3, 4]];
        let expected = SignedPerm::from_cycles(4, &pairs[..t.index]).unwrap();
        assert_eq!(t.galois_u_prime, expected);
    }
}

#[test]
fn so_even_h0() {
    for n in 1..=4 {
        let s = spec(Family::SOeven1, n);
        let t = by_label(&s, "H_0");
        let m = t.g.inverse().unwrap().try_mul(&apply_involution(&t.g, s.theta_rule()).unwrap()).unwrap();
        let mut signs = vec![1i8; 2 * n + 1];
        signs[2 * n - 1] = -1;
        signs[2 * n] = -1;
        assert_eq!(m, ExactMatrix::signature(&signs), "n = {n}");
        let mut c = vec![1i8; n];
        c[n - 1] = -1;
        assert_eq!(t.twist_class, SignedPerm::sign_vector(&c).unwrap());
    }
}

#[test]
fn upq_h0_twist_class() {
    assert_eq!(upq(2, 1).torus(0).unwrap().twist_class.to_string(), "(2 3)");
    for p in 1..=4 {
        for q in 0..=p.min(6 - p) {
            let n = p + q;
            let cycles: Vec<[usize; 2]> = (1..=q).map(|j| [p - q + j, n - q + j]).collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| &c[..]).collect();
            let expected = SignedPerm::from_cycles(n, &refs).unwrap();
            let s = upq(p, q);
            let t = s.torus(0).unwrap();
            let m = t.g.inverse().unwrap().try_mul(&apply_involution(&t.g, s.theta_rule()).unwrap()).unwrap();
            assert_eq!(monomial_to_weyl(&m, s.reference_frame()).unwrap(), expected, "U({p},{q})");
        }
    }
}

#[test]
fn upq_theta_agrees_with_galois_on_weyl_elements() {
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let s = upq(p, q);
        for w in s.weyl().elements().unwrap() {
            let m = perm_matrix(w);
            assert_eq!(
                apply_involution(&m, s.theta_rule()).unwrap(),
                apply_involution(&m, s.galois_rule()).unwrap(),
                "U({p},{q}) w = {w}"
            );
        }
    }
}

#[test]
fn involutions_are_involutive_on_g() {
    for s in [spec(Family::SL2n, 2), spec(Family::SOeven1, 2), spec(Family::Ustar, 2), upq(2, 1), spec(Family::Restriction, 2)] {
        for t in s.tori() {
            for rule in [s.theta_rule(), s.galois_rule()] {
                let back = apply_involution(&apply_involution(&t.g, rule).unwrap(), rule).unwrap();
                assert_eq!(back, t.g, "{} {}", s.label(), t.label);
            }
        }
    }
}

#[test]
fn so_odd_longest_element() {
    for n in 1..=5 {
        let w0 = spec(Family::SOodd1, n).weyl().longest_element();
        let signs: Vec<i8> = if n % 2 == 1 {
            vec![-1; n + 1]
        } else {
            (0..=n).map(|j| if j < n { -1 } else { 1 }).collect()
        };
        assert_eq!(w0, SignedPerm::sign_vector(&signs).unwrap(), "n = {n}");
    }
}

#[test]
fn so_odd_cosets_are_transpositions() {
    for n in 1..=4 {
        let s = spec(Family::SOodd1, n);
        let cosets = s.torus_cosets(0).unwrap();
        assert_eq!(cosets.len(), n + 1);
        for (i, c) in (1..=n + 1).zip(&cosets) {
            let t = SignedPerm::transposition(n + 1, i, n + 1);
            assert_eq!(cosets.iter().filter(|c| c.elements.contains(&t)).count(), 1);
            assert!(c.elements.iter().all(|w| s.weyl().contains(w)));
        }
    }
}

#[test]
fn u21_wk0() {
    let s = upq(2, 1);
    assert_eq!(s.wk_subgroup(0).unwrap().elements().unwrap().len(), 2);
    assert_eq!(s.torus_cosets(0).unwrap().len(), 3);
}

#[test]
fn upq_parameter_counts_match_oracle() {
    for p in 1..=4 {
        for q in 0..=p.min(6 - p) {
            let s = upq(p, q);
            let n = p + q;
            let group = oracle::symmetric_group(n);
            let expected: usize = s
                .tori()
                .iter()
                .map(|t| oracle::naive_cosets(&oracle::naive_closure(n, t.wk_generators.as_ref().unwrap()), &group).len())
                .sum();
            assert_eq!(s.orbit_parameters().unwrap().len(), expected, "U({p},{q})");
        }
    }
}

#[test]
fn involution_classes() {
    let s = spec(Family::GL, 4);
    let involutions: Vec<SignedPerm> = s.weyl().elements().unwrap().iter().filter(|w| w.is_involution()).copied().collect();
    let all = s.weyl().elements().unwrap();
    assert_eq!(conjugacy_classes(s.weyl(), &involutions, all).len(), 3);
    assert_eq!(conjugacy_classes(s.weyl(), &[SignedPerm::identity(4)], all).len(), 1);
}

#[test]
fn u21_lattice() {
    let s = upq(2, 1);
    let l = s.lattice();
    assert_eq!(minus_space(l).len(), 1);
    let restricted = restricted_roots(l);
    assert!(!restricted.is_empty());
    assert!(restricted.iter().all(|r| r.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() > 0));
    let real = psi0(l);
    assert!(!real.is_empty());
    for a in &real {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        assert_eq!(l.apply_theta(a), neg);
    }
    assert_eq!(torus_classification(l).unwrap().len(), 2);
}

#[test]
fn sl4_restricted_roots_span_minus_space() {
    let l = spec(Family::SL2n, 2).lattice().clone();
    let minus = minus_space(&l).len();
    let restricted = restricted_roots(&l);
    assert!(minus > 0);
    // rank of the restricted roots, by elimination over Q
    let mut rows = restricted.clone();
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| !num_traits::Zero::is_zero(&rows[r][c])) {
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank {
                    let f = row[c] / pivot_row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x -= y * f;
                    }
                }
            }
            rank += 1;
        }
    }
    assert_eq!(rank, minus);
}

#[test]
fn torus_class_counts() {
    for n in 1..=4 {
        assert_eq!(torus_classification(spec(Family::SL2n, n).lattice()).unwrap().len(), n + 1, "SL n = {n}");
        assert_eq!(torus_classification(spec(Family::SOodd1, n).lattice()).unwrap().len(), 1, "SOodd n = {n}");
        assert_eq!(torus_classification(spec(Family::SOeven1, n).lattice()).unwrap().len(), 2, "SOeven n = {n}");
    }
    for p in 1..=4 {
        for q in 0..=p.min(6 - p) {
            assert_eq!(torus_classification(upq(p, q).lattice()).unwrap().len(), q + 1, "U({p},{q})");
        }
    }
}
