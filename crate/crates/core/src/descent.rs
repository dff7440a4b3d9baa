//! Galois involutions on parameter sets and the resulting fields of definition.
//!
//! Parameters live over `k' = Z[1/2, i]`. Complex conjugation acts on them by
//! an involution. Fixed parameters give orbits defined over `Z[1/2]`, and
//! 2-orbits give a pair of orbits that is only defined over `k'`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{Family, GroupSpec};
use crate::twisted::{springer_value_for, TwistContext};
use crate::weyl::{Coset, SignedPerm};
use crate::{Error, Result};

/// How `w̄` is obtained from `w` on the reference Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjRule {
    /// `w̄ = w`, for tori split over `k`.
    Identity,
    /// `w̄ = θ(w)`, for fundamental tori.
    Theta,
}

/// Galois action on the twisted-involution picture of a catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistedRule {
    Trivial,
    /// `w -> w0 w^{-1} w0`.
    ConjW0,
    /// `w -> w0 w w0`.
    TwistConj,
    /// `w -> w_c^{-1} w^{-1} w_c`.
    InverseTwist { w_c: SignedPerm },
}

/// The rule of a [`GaloisAction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisRule {
    Trivial,
    /// `W_K w -> W_K w w0`.
    RightW0,
    /// `W_K w -> W_K u' w̄ u`.
    General { u_prime: SignedPerm, conj: ConjRule, u: SignedPerm },
    ConjW0,
    TwistConj,
    InverseTwist { w_c: SignedPerm },
}

impl From<TwistedRule> for GaloisRule {
    fn from(r: TwistedRule) -> Self {
        match r {
            TwistedRule::Trivial => GaloisRule::Trivial,
            TwistedRule::ConjW0 => GaloisRule::ConjW0,
            TwistedRule::TwistConj => GaloisRule::TwistConj,
            TwistedRule::InverseTwist { w_c } => GaloisRule::InverseTwist { w_c },
        }
    }
}

impl fmt::Display for GaloisRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisRule::Trivial => write!(f, "trivial"),
            GaloisRule::RightW0 => write!(f, "right_w0"),
            GaloisRule::General { u_prime, conj, u } => {
                let bar = match conj {
                    ConjRule::Identity => "w",
                    ConjRule::Theta => "θ(w)",
                };
                write!(f, "general: w -> ({u_prime})·{bar}·({u})")
            }
            GaloisRule::ConjW0 => write!(f, "conj_w0"),
            GaloisRule::TwistConj => write!(f, "twist_conj"),
            GaloisRule::InverseTwist { w_c } => write!(f, "inverse_twist: w -> ({w_c})^-1·w^-1·({w_c})"),
        }
    }
}

/// An involution on a finite parameter set: either right cosets `W_K \ W`
/// (named by canonical representatives) or a set of Weyl group elements.
#[derive(Clone, Debug)]
pub struct GaloisAction {
    rule: GaloisRule,
    w0: SignedPerm,
    theta: SignedPerm,
    domain: Vec<SignedPerm>,
    /// Element to coset index, present for coset domains.
    coset_of: Option<HashMap<SignedPerm, usize>>,
    cosets: Vec<Coset>,
}

impl GaloisAction {
    /// Action on a plain set of elements.
    pub fn on_elements(rule: GaloisRule, ctx: &TwistContext, domain: Vec<SignedPerm>) -> Self {
        let mut domain = domain;
        domain.sort();
        domain.dedup();
        GaloisAction {
            rule,
            w0: ctx.group().longest_element(),
            theta: ctx.theta_element(),
            domain,
            coset_of: None,
            cosets: Vec::new(),
        }
    }

    /// Action on right cosets.
    pub fn on_cosets(rule: GaloisRule, ctx: &TwistContext, cosets: Vec<Coset>) -> Self {
        let mut map = HashMap::new();
        for (k, c) in cosets.iter().enumerate() {
            for x in &c.elements {
                map.insert(*x, k);
            }
        }
        GaloisAction {
            rule,
            w0: ctx.group().longest_element(),
            theta: ctx.theta_element(),
            domain: cosets.iter().map(|c| c.representative).collect(),
            coset_of: Some(map),
            cosets,
        }
    }

    pub fn rule(&self) -> &GaloisRule {
        &self.rule
    }

    /// Canonical names of the domain points.
    pub fn domain(&self) -> &[SignedPerm] {
        &self.domain
    }

    pub fn is_coset_action(&self) -> bool {
        self.coset_of.is_some()
    }

    /// The rule applied to a single group element, before any quotient.
    pub fn apply_element(&self, w: &SignedPerm) -> SignedPerm {
        let w0 = self.w0;
        match &self.rule {
            GaloisRule::Trivial => *w,
            GaloisRule::RightW0 => *w * w0,
            GaloisRule::General { u_prime, conj, u } => {
                let bar = match conj {
                    ConjRule::Identity => *w,
                    ConjRule::Theta => self.theta.conjugate(w),
                };
                *u_prime * bar * *u
            }
            GaloisRule::ConjW0 => w0 * w.inverse() * w0,
            GaloisRule::TwistConj => w0 * *w * w0,
            GaloisRule::InverseTwist { w_c } => w_c.inverse() * w.inverse() * *w_c,
        }
    }

    /// Canonical name of the point containing `w`.
    fn canonical(&self, w: &SignedPerm) -> Result<SignedPerm> {
        match &self.coset_of {
            Some(map) => map
                .get(w)
                .map(|&k| self.cosets[k].representative)
                .ok_or_else(|| Error::RuleEscapesDomain(w.to_string())),
            None => {
                if self.domain.binary_search(w).is_ok() {
                    Ok(*w)
                } else {
                    Err(Error::RuleEscapesDomain(w.to_string()))
                }
            }
        }
    }

    /// Image of a domain point.
    pub fn apply(&self, x: &SignedPerm) -> Result<SignedPerm> {
        self.canonical(&self.apply_element(x))
    }

    /// For coset domains: every member of every coset maps into one coset.
    pub fn is_well_defined(&self) -> Result<bool> {
        for c in &self.cosets {
            let target = self.apply(&c.representative)?;
            for x in &c.elements {
                if self.apply(x)? != target {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_involution(&self) -> Result<bool> {
        for x in &self.domain {
            if self.apply(&self.apply(x)?)? != *x {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Fixed points and 2-orbits of an action.
pub type FixedAndPairs = (Vec<SignedPerm>, Vec<(SignedPerm, SignedPerm)>);

/// Fixed points and 2-orbits of an action, each pair listed once as
/// `(smaller, larger)`.
pub fn fixed_and_pairs(action: &GaloisAction) -> Result<FixedAndPairs> {
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for x in action.domain() {
        let y = action.apply(x)?;
        if action.apply(&y)? != *x {
            return Err(Error::NotAnInvolution(format!("{} on {x}", action.rule())));
        }
        if y == *x {
            fixed.push(*x);
        } else if *x < y {
            pairs.push((*x, y));
        }
    }
    Ok((fixed, pairs))
}

/// Galois action on `W_K,i \ W` for torus `i`.
pub fn galois_action(spec: &GroupSpec, torus_index: usize) -> Result<GaloisAction> {
    let t = spec.torus(torus_index)?;
    let cosets = spec.torus_cosets(torus_index)?;
    let rule = match spec.family() {
        Family::Upq => GaloisRule::RightW0,
        _ => GaloisRule::General { u_prime: t.galois_u_prime, conj: t.conj_rule, u: spec.galois_u() },
    };
    Ok(GaloisAction::on_cosets(rule, spec.context(), cosets))
}

/// Galois action on the twisted involutions of `ctx`.
pub fn twisted_galois(ctx: &TwistContext, rule: TwistedRule) -> Result<GaloisAction> {
    Ok(GaloisAction::on_elements(rule.into(), ctx, crate::twisted::twisted_involutions(ctx)?))
}

/// Galois action on the twisted-involution parameters `I'` of a catalog entry.
pub fn twisted_parameter_action(spec: &GroupSpec) -> Result<GaloisAction> {
    Ok(GaloisAction::on_elements((*spec.twisted_rule()).into(), spec.context(), spec.twisted_parameters()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Z[1/2]")]
    Base,
    #[serde(rename = "Z[1/2,i]-pair")]
    Pair,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Base => "Z[1/2]",
            FieldTag::Pair => "Z[1/2,i]-pair",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentEntry {
    /// `None` in the twisted-involution picture.
    pub torus_index: Option<usize>,
    pub representative: SignedPerm,
    pub springer_value: SignedPerm,
    pub field: FieldTag,
    pub partner: Option<SignedPerm>,
}

/// The sets `I_i = {W_K w : w w0 w^{-1} ∈ W_K,i}` for `U(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpqFixedSet {
    pub torus_index: usize,
    pub i_set: Vec<SignedPerm>,
    pub matches_fixed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub family: Family,
    pub label: String,
    /// `"cosets"` or `"twisted"`.
    pub picture: &'static str,
    pub rules: Vec<String>,
    pub entries: Vec<DescentEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upq_fixed_sets: Option<Vec<UpqFixedSet>>,
}

impl DescentReport {
    pub fn fixed_count(&self) -> usize {
        self.entries.iter().filter(|e| e.field == FieldTag::Base).count()
    }

    pub fn pair_count(&self) -> usize {
        self.entries.iter().filter(|e| e.field == FieldTag::Pair).count() / 2
    }
}

fn tag_entries(
    action: &GaloisAction,
    torus_index: Option<usize>,
    springer: impl Fn(&SignedPerm) -> SignedPerm,
) -> Result<Vec<DescentEntry>> {
    let (fixed, pairs) = fixed_and_pairs(action)?;
    let fixed: BTreeSet<SignedPerm> = fixed.into_iter().collect();
    let partner: BTreeMap<SignedPerm, SignedPerm> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    Ok(action
        .domain()
        .iter()
        .map(|x| DescentEntry {
            torus_index,
            representative: *x,
            springer_value: springer(x),
            field: if fixed.contains(x) { FieldTag::Base } else { FieldTag::Pair },
            partner: partner.get(x).copied(),
        })
        .collect())
}

/// `I_i` for torus `i` of `U(p, q)`, computed straight from the definition.
pub fn upq_i_set(spec: &GroupSpec, torus_index: usize) -> Result<Vec<SignedPerm>> {
    let wk = spec.wk_subgroup(torus_index)?;
    let w0 = spec.weyl().longest_element();
    let mut out = Vec::new();
    for c in spec.torus_cosets(torus_index)? {
        let w = c.representative;
        if wk.contains(&(w * w0 * w.inverse()))? {
            out.push(w);
        }
    }
    Ok(out)
}

/// `S_0`: the conjugacy class of `c_0` in `W`, for `U(p, q)`.
pub fn upq_s0(spec: &GroupSpec) -> Result<Vec<SignedPerm>> {
    let c0 = spec.torus(0)?.twist_class;
    let set: BTreeSet<SignedPerm> = spec.weyl().elements()?.iter().map(|w| w.inverse() * c0 * *w).collect();
    Ok(set.into_iter().collect())
}

/// The action `w -> w0 w w0` on `S_0`.
pub fn upq_s0_action(spec: &GroupSpec) -> Result<GaloisAction> {
    Ok(GaloisAction::on_elements(GaloisRule::TwistConj, spec.context(), upq_s0(spec)?))
}

/// Fields of definition for every parameter of a catalog entry. Families
/// with `W_K` data use the coset picture, the others the twisted one.
pub fn descent_report(spec: &GroupSpec) -> Result<DescentReport> {
    let mut entries = Vec::new();
    let mut rules = Vec::new();
    let picture;
    if spec.has_wk_data() {
        picture = "cosets";
        for t in spec.tori() {
            let action = galois_action(spec, t.index)?;
            rules.push(format!("H_{}: {}", t.index, action.rule()));
            let c = t.twist_class;
            entries.extend(tag_entries(&action, Some(t.index), |w| springer_value_for(spec.context(), &c, w))?);
        }
    } else {
        picture = "twisted";
        let action = twisted_parameter_action(spec)?;
        rules.push(action.rule().to_string());
        entries = tag_entries(&action, None, |w| *w)?;
    }
    let upq_fixed_sets = if spec.family() == Family::Upq {
        let mut sets = Vec::new();
        for t in spec.tori() {
            let i_set = upq_i_set(spec, t.index)?;
            let fixed: Vec<SignedPerm> = entries
                .iter()
                .filter(|e| e.torus_index == Some(t.index) && e.field == FieldTag::Base)
                .map(|e| e.representative)
                .collect();
            sets.push(UpqFixedSet { torus_index: t.index, matches_fixed: fixed == i_set, i_set });
        }
        Some(sets)
    } else {
        None
    };
    Ok(DescentReport { family: spec.family(), label: spec.label().to_string(), picture, rules, entries, upq_fixed_sets })
}

/// Whether the emptiness law `I_i = ∅ ⇔ (p - q even and i even)` holds.
pub fn upq_emptiness_law_holds(p: usize, q: usize, i: usize, i_set_empty: bool) -> bool {
    i_set_empty == ((p - q).is_multiple_of(2) && i.is_multiple_of(2))
}
