//! The standard symmetric pairs over `Z[1/2]` as explicit data.
//!
//! Each [`GroupSpec`] bundles the Weyl group of a reference torus with its
//! involution, the lattice used for the torus classification, one
//! [`TorusDescriptor`] per conjugacy class of θ-stable maximal tori, and the
//! Galois data needed for descent. Matrix-level claims are re-checked by
//! [`verify_matrix_claims`].

mod families;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyadic::{ExactMatrix, MatrixInvolution, TorusFrame};
use crate::descent::{ConjRule, TwistedRule};
use crate::tori::{split_rank, ThetaLattice};
use crate::twisted::{image_set, springer_value_for, TwistContext};
use crate::weyl::{coset_space, Coset, SignedPerm, SubgroupSpec, WeylDescriptor};
use crate::{Error, Result};

pub use verify::{verify_matrix_claims, ClaimResult, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Family {
    /// `GL_n` with `θ(x) = (x^T)^{-1}`.
    #[value(name = "GL")]
    GL,
    /// `SL_{2n}` with `θ(x) = (x^T)^{-1}`.
    #[value(name = "SL2n")]
    SL2n,
    /// `U*(2n)`.
    #[value(name = "Ustar")]
    Ustar,
    /// `SO(2n+1, 1)`.
    #[value(name = "SOodd1")]
    SOodd1,
    /// `SO(2n, 1)`.
    #[value(name = "SOeven1")]
    SOeven1,
    /// `U(p, q)` with `p ≥ q`.
    #[value(name = "Upq")]
    Upq,
    /// Weil restriction of a split `GL_m` along `k'/k`, with the Galois
    /// involution as θ.
    #[value(name = "Restriction")]
    Restriction,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::GL, Family::SL2n, Family::Ustar, Family::SOodd1, Family::SOeven1, Family::Upq, Family::Restriction];

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL2n => "SL2n",
            Family::Ustar => "Ustar",
            Family::SOodd1 => "SOodd1",
            Family::SOeven1 => "SOeven1",
            Family::Upq => "Upq",
            Family::Restriction => "Restriction",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown family {s:?}")))
    }
}

/// Family parameters. `n` is used by every family except `Upq`, which
/// uses `p` and `q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
}

impl Params {
    pub fn n(n: usize) -> Self {
        Params { n: Some(n), ..Default::default() }
    }

    pub fn pq(p: usize, q: usize) -> Self {
        Params { p: Some(p), q: Some(q), ..Default::default() }
    }
}

/// One θ-stable maximal torus class, transported to the reference torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusDescriptor {
    pub index: usize,
    pub label: String,
    /// Conjugates the reference torus onto this one over `k'`.
    pub g: ExactMatrix,
    /// Frame of this torus: conjugator `g · C_ref` with the reference layout.
    pub frame: TorusFrame,
    /// Points of the torus as defined over `k`, used to check `frame`.
    #[serde(skip)]
    pub sample_points: Vec<ExactMatrix>,
    /// Generators of `W_K` transported to the reference Weyl group, when
    /// tabulated.
    pub wk_generators: Option<Vec<SignedPerm>>,
    /// Weyl class `c_i` of `g^{-1} θ(g)`.
    pub twist_class: SignedPerm,
    /// Weyl class `u'_i` of `g^{-1} ḡ`.
    pub galois_u_prime: SignedPerm,
    /// How `w̄` is computed on the reference Weyl group.
    pub conj_rule: ConjRule,
}

/// A catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSpec {
    family: Family,
    params: Params,
    label: String,
    ambient_dim: usize,
    /// θ on matrices.
    theta_rule: MatrixInvolution,
    /// Galois conjugation `x -> x̄` on matrices over `k'`.
    galois_rule: MatrixInvolution,
    weyl: WeylDescriptor,
    /// θ on the reference Weyl group is conjugation by this element, which is
    /// also θ on the reference cocharacter lattice.
    theta_w: SignedPerm,
    w_theta: SignedPerm,
    reference_frame: TorusFrame,
    lattice: ThetaLattice,
    tori: Vec<TorusDescriptor>,
    reference_open_orbit: (usize, SignedPerm),
    /// `u` with `conj(Δ⁺) = u Δ⁺` for the reference torus.
    galois_u: SignedPerm,
    twisted_rule: TwistedRule,
    #[serde(skip)]
    context: TwistContext,
}

/// An orbit parameter: a torus class and a coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitParam {
    pub torus_index: usize,
    pub representative: SignedPerm,
    pub springer_value: SignedPerm,
}

/// Raw family data before the derived pieces are assembled.
pub(crate) struct Blueprint {
    pub family: Family,
    pub params: Params,
    pub label: String,
    pub ambient_dim: usize,
    pub theta_rule: MatrixInvolution,
    pub galois_rule: MatrixInvolution,
    pub weyl: WeylDescriptor,
    pub theta_w: SignedPerm,
    pub w_theta: SignedPerm,
    pub reference_frame: TorusFrame,
    pub tori: Vec<TorusDescriptor>,
    pub reference_open_orbit: (usize, SignedPerm),
    pub galois_u: SignedPerm,
    pub twisted_rule: TwistedRule,
}

impl GroupSpec {
    pub fn build(family: Family, params: Params) -> Result<Self> {
        Self::assemble(families::blueprint(family, params)?)
    }

    fn assemble(b: Blueprint) -> Result<Self> {
        let context = TwistContext::new(b.weyl.clone(), b.theta_w, b.w_theta)?;
        // the lattice of the most split torus, with θ = c_i ∘ Θ_W
        let most_split = b
            .tori
            .iter()
            .max_by_key(|t| (split_rank(&(t.twist_class * b.theta_w)), std::cmp::Reverse(t.index)))
            .ok_or_else(|| Error::InvalidParams("no tori".into()))?;
        let theta0 = most_split.twist_class * b.theta_w;
        let mut lattice = ThetaLattice::new(theta0.to_matrix(), b.weyl.roots().to_vec())?;
        if b.family == Family::SL2n {
            lattice = lattice.with_constraints(vec![vec![1; b.weyl.rank()]])?;
        }
        Ok(GroupSpec {
            family: b.family,
            params: b.params,
            label: b.label,
            ambient_dim: b.ambient_dim,
            theta_rule: b.theta_rule,
            galois_rule: b.galois_rule,
            weyl: b.weyl,
            theta_w: b.theta_w,
            w_theta: b.w_theta,
            reference_frame: b.reference_frame,
            lattice,
            tori: b.tori,
            reference_open_orbit: b.reference_open_orbit,
            galois_u: b.galois_u,
            twisted_rule: b.twisted_rule,
            context,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Human-readable name such as `U(2,1)`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn theta_rule(&self) -> &MatrixInvolution {
        &self.theta_rule
    }

    pub fn galois_rule(&self) -> &MatrixInvolution {
        &self.galois_rule
    }

    pub fn weyl(&self) -> &WeylDescriptor {
        &self.weyl
    }

    pub fn theta_w(&self) -> SignedPerm {
        self.theta_w
    }

    pub fn w_theta(&self) -> SignedPerm {
        self.w_theta
    }

    pub fn reference_frame(&self) -> &TorusFrame {
        &self.reference_frame
    }

    pub fn lattice(&self) -> &ThetaLattice {
        &self.lattice
    }

    pub fn tori(&self) -> &[TorusDescriptor] {
        &self.tori
    }

    pub fn torus(&self, i: usize) -> Result<&TorusDescriptor> {
        self.tori.get(i).ok_or(Error::TorusIndexOutOfRange(i, self.tori.len()))
    }

    pub fn reference_open_orbit(&self) -> (usize, SignedPerm) {
        self.reference_open_orbit
    }

    pub fn galois_u(&self) -> SignedPerm {
        self.galois_u
    }

    pub fn twisted_rule(&self) -> &TwistedRule {
        &self.twisted_rule
    }

    pub fn context(&self) -> &TwistContext {
        &self.context
    }

    pub fn has_wk_data(&self) -> bool {
        self.tori.iter().all(|t| t.wk_generators.is_some())
    }

    /// `W_K` of torus `i` as a subgroup of the reference Weyl group.
    pub fn wk_subgroup(&self, i: usize) -> Result<SubgroupSpec> {
        let t = self.torus(i)?;
        let gens = t.wk_generators.clone().ok_or_else(|| Error::MissingWkData(self.family.to_string()))?;
        SubgroupSpec::new(self.weyl.rank(), gens)
    }

    /// `W_K \ W` for torus `i`.
    pub fn torus_cosets(&self, i: usize) -> Result<Vec<Coset>> {
        coset_space(&self.wk_subgroup(i)?, &self.weyl)
    }

    /// Orbit parameters `(i, W_K w)` over all torus classes, in order of torus
    /// index and then canonical representative.
    pub fn orbit_parameters(&self) -> Result<Vec<OrbitParam>> {
        let mut out = Vec::new();
        for t in &self.tori {
            for c in self.torus_cosets(t.index)? {
                out.push(OrbitParam {
                    torus_index: t.index,
                    representative: c.representative,
                    springer_value: springer_value_for(&self.context, &t.twist_class, &c.representative),
                });
            }
        }
        Ok(out)
    }

    /// The twisted-involution parameters `I'`, computed by reachability from
    /// `a_max`.
    pub fn twisted_parameters(&self) -> Result<Vec<SignedPerm>> {
        image_set(&self.context, &crate::twisted::a_max(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("Sp".parse::<Family>().is_err());
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(GroupSpec::build(Family::Upq, Params::pq(1, 2)), Err(Error::InvalidParams(_))));
        assert!(matches!(GroupSpec::build(Family::SL2n, Params::n(0)), Err(Error::InvalidParams(_))));
        assert!(matches!(GroupSpec::build(Family::GL, Params::default()), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn gl3_basics() {
        let s = GroupSpec::build(Family::GL, Params::n(3)).unwrap();
        assert_eq!(s.weyl().longest_element().to_string(), "(1 3)");
        assert!(matches!(s.orbit_parameters(), Err(Error::MissingWkData(_))));
        assert_eq!(s.twisted_parameters().unwrap().len(), 4);
    }

    #[test]
    fn sl2_parameters() {
        let s = GroupSpec::build(Family::SL2n, Params::n(1)).unwrap();
        let ps = s.orbit_parameters().unwrap();
        let got: Vec<(usize, String)> = ps.iter().map(|p| (p.torus_index, p.representative.to_string())).collect();
        assert_eq!(got, vec![(0, "e".into()), (1, "e".into()), (1, "(1 2)".into())]);
    }
}
