//! Classification of θ-stable maximal tori up to conjugacy, from the
//! character lattice of a maximally split θ-stable torus.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::weyl::{enumerate_subgroup, SignedPerm, SubgroupSpec};
use crate::{Error, Result};

type Q = Rational64;
type QMatrix = Vec<Vec<Q>>;

/// Lattice `Z^rank` with an involution, a root system and an invariant
/// pairing (the standard one unless given).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaLattice {
    pub rank: usize,
    /// `θ(v) = theta * v`.
    pub theta: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub pairing: Vec<Vec<i64>>,
    /// Linear forms cutting the cocharacters out of `Z^rank`, e.g. the trace
    /// for `SL_n` written in `GL_n` coordinates. Empty means all of `Z^rank`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Vec<i64>>,
}

/// One conjugacy class of θ-stable tori, recorded by an involution `c` of
/// `W(Ψ₀)` up to `W₀`-conjugacy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusClass {
    pub involution_rep: SignedPerm,
    pub class_members: Vec<SignedPerm>,
    /// Dimension of `{v ∈ E(H₀⁻) : c v = v}`, the split rank of the torus.
    pub minus_dimension: usize,
}

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

fn to_q(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn mat_vec(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

/// Row-reduce a list of vectors and return a basis of their span.
fn span_basis(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = vectors.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let mut basis = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let p = rows[r][col];
        let pivot_row: Vec<Q> = rows[r].iter().map(|x| x / p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        rows[r] = pivot_row;
        basis.push(rows[r].clone());
        r += 1;
    }
    basis
}

fn rank_of(vectors: &[Vec<Q>]) -> usize {
    span_basis(vectors).len()
}

impl ThetaLattice {
    pub fn new(theta: Vec<Vec<i64>>, roots: Vec<Vec<i64>>) -> Result<Self> {
        let rank = theta.len();
        let pairing = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Self::with_pairing(theta, roots, pairing)
    }

    pub fn with_pairing(theta: Vec<Vec<i64>>, roots: Vec<Vec<i64>>, pairing: Vec<Vec<i64>>) -> Result<Self> {
        let rank = theta.len();
        if theta.iter().chain(&pairing).any(|r| r.len() != rank) || pairing.len() != rank {
            return Err(Error::InvalidParams("lattice matrices must be square of equal size".into()));
        }
        if let Some(r) = roots.iter().find(|r| r.len() != rank) {
            return Err(Error::RankMismatch(rank, r.len()));
        }
        let l = ThetaLattice { rank, theta, roots, pairing, constraints: Vec::new() };
        let t = to_q(&l.theta);
        let sq = mat_mul(&t, &t);
        if (0..rank).any(|i| (0..rank).any(|j| sq[i][j] != if i == j { Q::one() } else { Q::zero() })) {
            return Err(Error::InvalidParams("θ² ≠ 1 on the lattice".into()));
        }
        let root_set: HashSet<&Vec<i64>> = l.roots.iter().collect();
        for r in &l.roots {
            if !root_set.contains(&l.apply_theta(r)) {
                return Err(Error::InvalidParams(format!("θ does not preserve the roots at {r:?}")));
            }
        }
        for u in 0..rank {
            for v in 0..rank {
                let (eu, ev) = (unit(rank, u), unit(rank, v));
                if l.pair(&l.apply_theta(&eu), &l.apply_theta(&ev)) != l.pairing[u][v] {
                    return Err(Error::InvalidParams("pairing is not θ-invariant".into()));
                }
            }
        }
        Ok(l)
    }

    /// Restrict to the common kernel of `forms`, which must be θ-stable.
    pub fn with_constraints(mut self, forms: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(f) = forms.iter().find(|f| f.len() != self.rank) {
            return Err(Error::RankMismatch(self.rank, f.len()));
        }
        let span = rank_of(&forms.iter().map(|f| f.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
        for f in &forms {
            // f ∘ θ must lie in the span of the forms
            let ft: Vec<i64> = (0..self.rank).map(|j| f.iter().zip(&self.theta).map(|(a, r)| a * r[j]).sum()).collect();
            let mut with: Vec<Vec<Q>> = forms.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect();
            with.push(ft.iter().map(|&x| q(x)).collect());
            if rank_of(&with) != span {
                return Err(Error::InvalidParams(format!("constraint {f:?} is not θ-stable")));
            }
        }
        if let Some(r) = self.roots.iter().find(|r| forms.iter().any(|f| f.iter().zip(r.iter()).map(|(a, b)| a * b).sum::<i64>() != 0)) {
            return Err(Error::InvalidParams(format!("root {r:?} violates the constraints")));
        }
        self.constraints = forms;
        Ok(self)
    }

    /// Basis of the subspace the constraints cut out.
    fn ambient_basis(&self) -> Vec<Vec<Q>> {
        if self.constraints.is_empty() {
            return (0..self.rank).map(|j| unit(self.rank, j).into_iter().map(q).collect()).collect();
        }
        let reduced = span_basis(&to_q(&self.constraints));
        let pivots: Vec<usize> = reduced.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        (0..self.rank)
            .filter(|j| !pivots.contains(j))
            .map(|free| {
                let mut v = vec![Q::zero(); self.rank];
                v[free] = Q::one();
                for (row, &p) in reduced.iter().zip(&pivots) {
                    v[p] = -row[free];
                }
                v
            })
            .collect()
    }

    /// Dimension of the (-1)-eigenspace of the involution `w` on the
    /// constrained subspace.
    pub fn split_rank(&self, w: &SignedPerm) -> usize {
        let m = perm_to_q(w);
        let moved: Vec<Vec<Q>> =
            self.ambient_basis().iter().map(|v| v.iter().zip(mat_vec(&m, v)).map(|(a, b)| a - b).collect()).collect();
        rank_of(&moved)
    }

    pub fn apply_theta(&self, v: &[i64]) -> Vec<i64> {
        self.theta.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                s += a * self.pairing[i][j] * b;
            }
        }
        s
    }

    fn pair_q(&self, u: &[Q], v: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                s += a * q(self.pairing[i][j]) * b;
            }
        }
        s
    }

    /// Reflection in `a` as a rational matrix.
    fn reflection(&self, a: &[Q]) -> QMatrix {
        let aa = self.pair_q(a, a);
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        // column j is s(e_j) = e_j - 2 (e_j, a)/(a, a) a
                        let ej: Vec<Q> = unit(self.rank, j).into_iter().map(q).collect();
                        let c = q(2) * self.pair_q(&ej, a) / aa;
                        ej[i] - c * a[i]
                    })
                    .collect()
            })
            .collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn perm_to_q(w: &SignedPerm) -> QMatrix {
    to_q(&w.to_matrix())
}

fn q_to_perm(m: &QMatrix) -> Option<SignedPerm> {
    let ints: Option<Vec<Vec<i64>>> =
        m.iter().map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()).collect();
    SignedPerm::from_matrix(&ints?)
}

/// Basis of the (-1)-eigenspace `E(H₀⁻)`, spanned by the `v - θv`.
pub fn minus_space(l: &ThetaLattice) -> Vec<Vec<Q>> {
    let t = to_q(&l.theta);
    let vs: Vec<Vec<Q>> =
        l.ambient_basis().iter().map(|v| v.iter().zip(mat_vec(&t, v)).map(|(a, b)| a - b).collect()).collect();
    span_basis(&vs)
}

/// Nonzero projections `(α - θα)/2` of the roots, deduplicated and sorted.
pub fn restricted_roots(l: &ThetaLattice) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    for a in &l.roots {
        let t = l.apply_theta(a);
        let p: Vec<Q> = a.iter().zip(&t).map(|(x, y)| Q::new(x - y, 2)).collect();
        if p.iter().any(|x| !x.is_zero()) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Roots with `θα = -α`.
pub fn psi0(l: &ThetaLattice) -> Vec<Vec<i64>> {
    l.roots
        .iter()
        .filter(|a| l.apply_theta(a).iter().zip(a.iter()).all(|(x, y)| *x == -y))
        .cloned()
        .collect()
}

/// `W₀`-conjugacy classes of involutions in `W(Ψ₀)`, sorted by decreasing
/// split rank.
pub fn torus_classification(l: &ThetaLattice) -> Result<Vec<TorusClass>> {
    let psi = psi0(l);
    let mut reflections = Vec::new();
    for a in &psi {
        let aq: Vec<Q> = a.iter().map(|&x| q(x)).collect();
        let s = q_to_perm(&l.reflection(&aq))
            .ok_or_else(|| Error::InvalidParams(format!("reflection in {a:?} is not a signed permutation")))?;
        reflections.push(s);
    }
    reflections.sort();
    reflections.dedup();
    let w_psi = SubgroupSpec::new(l.rank, reflections)?;
    let involutions: Vec<SignedPerm> =
        enumerate_subgroup(&w_psi)?.iter().filter(|w| w.is_involution()).copied().collect();
    let inv_set: HashSet<SignedPerm> = involutions.iter().copied().collect();

    // reflections are their own inverses
    let w0_gens: Vec<QMatrix> = restricted_roots(l).iter().map(|b| l.reflection(b)).collect();
    let minus = minus_space(l);
    let d = minus.len();

    let mut seen: HashSet<SignedPerm> = HashSet::new();
    let mut classes = Vec::new();
    for &c in &involutions {
        if seen.contains(&c) {
            continue;
        }
        let mut members = BTreeSet::from([c]);
        seen.insert(c);
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            let xm = perm_to_q(&x);
            for s in &w0_gens {
                let y = q_to_perm(&mat_mul(&mat_mul(s, &xm), s)).ok_or_else(|| {
                    Error::InvalidParams(format!("restricted reflection conjugates {x} out of the signed permutations"))
                })?;
                if !inv_set.contains(&y) {
                    return Err(Error::InvalidParams(format!("restricted reflection conjugates {x} out of J(Ψ₀)")));
                }
                if members.insert(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        let cm = perm_to_q(&c);
        let moved: Vec<Vec<Q>> = minus
            .iter()
            .map(|v| mat_vec(&cm, v).iter().zip(v).map(|(a, b)| a - b).collect())
            .collect();
        let minus_dimension = d - rank_of(&moved);
        classes.push(TorusClass { involution_rep: c, class_members: members.into_iter().collect(), minus_dimension });
    }
    classes.sort_by(|a, b| b.minus_dimension.cmp(&a.minus_dimension).then(a.involution_rep.cmp(&b.involution_rep)));
    Ok(classes)
}

/// Dimension of the (-1)-eigenspace of a signed permutation.
pub fn split_rank(w: &SignedPerm) -> usize {
    let m = perm_to_q(w);
    let n = w.rank();
    let plus: Vec<Vec<Q>> = (0..n)
        .map(|j| (0..n).map(|i| m[i][j] + if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    n - rank_of(&plus)
}
