//! Twisted involutions, the monoid action and the combinatorial Springer map.
//!
//! A context fixes a Weyl group `W`, an automorphism `θ` of `W` given as
//! conjugation by a signed permutation `Θ`, and an element `w_θ`. Twisted
//! involutions are the `a` with `θ(a) w_θ a = w_θ`, equivalently
//! `θ*(a) = a^{-1}` for `θ*(x) = w_θ^{-1} θ(x) w_θ`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::GroupSpec;
use crate::weyl::{SignedPerm, WeylDescriptor};
use crate::{Error, Result};

/// Elements of `W` satisfying the twisted-involution equation. They are
/// plain [`SignedPerm`]s; the context they belong to is implicit.
pub type TwistedInvolution = SignedPerm;

#[derive(Clone, Debug, Serialize)]
pub struct TwistContext {
    group: WeylDescriptor,
    /// `θ(w) = theta * w * theta^{-1}`.
    theta: SignedPerm,
    w_theta: SignedPerm,
}

impl TwistContext {
    /// Checks that `θ` is an involutive automorphism of `W` permuting the
    /// simple reflections, that `w_θ ∈ W` with `θ(w_θ) w_θ = e`, and that
    /// `θ*` again permutes the simple reflections.
    pub fn new(group: WeylDescriptor, theta: SignedPerm, w_theta: SignedPerm) -> Result<Self> {
        if theta.rank() != group.rank() {
            return Err(Error::RankMismatch(group.rank(), theta.rank()));
        }
        if !group.contains(&w_theta) {
            return Err(Error::NotInGroup(w_theta.to_string()));
        }
        let ctx = TwistContext { group, theta, w_theta };
        let simple: HashSet<SignedPerm> = ctx.group.simple_reflections().iter().copied().collect();
        for s in ctx.group.simple_reflections() {
            let t = ctx.theta(s);
            if !simple.contains(&t) {
                return Err(Error::InvalidParams(format!("θ({s}) = {t} is not a simple reflection")));
            }
            if ctx.theta(&t) != *s {
                return Err(Error::InvalidParams("θ is not an involution".into()));
            }
            let ts = ctx.theta_star(s);
            if !simple.contains(&ts) || ctx.theta_star(&ts) != *s {
                return Err(Error::InvalidParams(format!("θ* does not permute simple reflections at {s}")));
            }
        }
        if !(ctx.theta(&ctx.w_theta) * ctx.w_theta).is_identity() {
            return Err(Error::InvalidParams("θ(w_θ) w_θ ≠ e".into()));
        }
        Ok(ctx)
    }

    pub fn group(&self) -> &WeylDescriptor {
        &self.group
    }

    pub fn theta_element(&self) -> SignedPerm {
        self.theta
    }

    pub fn w_theta(&self) -> SignedPerm {
        self.w_theta
    }

    pub fn theta(&self, w: &SignedPerm) -> SignedPerm {
        self.theta.conjugate(w)
    }

    /// `w_θ^{-1} θ(w) w_θ`.
    pub fn theta_star(&self, w: &SignedPerm) -> SignedPerm {
        self.w_theta.inverse() * self.theta(w) * self.w_theta
    }

    pub fn is_twisted_involution(&self, a: &SignedPerm) -> bool {
        self.theta(a) * self.w_theta * *a == self.w_theta
    }

    pub fn length(&self, w: &SignedPerm) -> usize {
        self.group.length(w).expect("element of the context group")
    }
}

/// All twisted involutions of `ctx`, in canonical order.
pub fn twisted_involutions(ctx: &TwistContext) -> Result<Vec<TwistedInvolution>> {
    Ok(ctx.group.elements()?.iter().filter(|a| ctx.is_twisted_involution(a)).copied().collect())
}

/// The monoid action of a simple reflection on a twisted involution:
/// `s·a·θ*(s)` if that differs from `a` and is longer, `s·a` if
/// `s·a·θ*(s) = a` and `s·a` is longer, and `a` otherwise.
pub fn monoid_star(ctx: &TwistContext, s: &SignedPerm, a: &TwistedInvolution) -> TwistedInvolution {
    let len = ctx.length(a);
    let twisted = *s * *a * ctx.theta_star(s);
    if twisted != *a {
        if ctx.length(&twisted) > len {
            return twisted;
        }
    } else {
        let sa = *s * *a;
        if ctx.length(&sa) > len {
            return sa;
        }
    }
    *a
}

/// The graph of the monoid action on all twisted involutions. Edges are
/// `(source, simple reflection index, target)` and include self-loops.
#[derive(Clone, Debug, Serialize)]
pub struct ReachabilityGraph {
    pub nodes: Vec<TwistedInvolution>,
    pub lengths: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl ReachabilityGraph {
    pub fn build(ctx: &TwistContext) -> Result<Self> {
        let nodes = twisted_involutions(ctx)?;
        let index: HashMap<SignedPerm, usize> = nodes.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let lengths = nodes.iter().map(|a| ctx.length(a)).collect();
        let mut edges = Vec::new();
        for (i, a) in nodes.iter().enumerate() {
            for (k, s) in ctx.group.simple_reflections().iter().enumerate() {
                let b = monoid_star(ctx, s, a);
                let j = *index.get(&b).ok_or_else(|| Error::InvalidParams(format!("{s} * {a} = {b} is not twisted")))?;
                edges.push((i, k, j));
            }
        }
        Ok(ReachabilityGraph { nodes, lengths, edges })
    }

    fn index_of(&self, a: &SignedPerm) -> Option<usize> {
        self.nodes.binary_search(a).ok()
    }

    fn search(&self, start: usize, forward: bool) -> BTreeSet<usize> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for &(i, _, j) in &self.edges {
            if forward {
                adj[i].push(j);
            } else {
                adj[j].push(i);
            }
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Everything reachable from `a` under the monoid.
    pub fn reachable_from(&self, a: &SignedPerm) -> Option<Vec<TwistedInvolution>> {
        let i = self.index_of(a)?;
        Some(self.search(i, true).into_iter().map(|k| self.nodes[k]).collect())
    }

    /// Everything from which `target` is reachable.
    pub fn reaching(&self, target: &SignedPerm) -> Option<Vec<TwistedInvolution>> {
        let i = self.index_of(target)?;
        Some(self.search(i, false).into_iter().map(|k| self.nodes[k]).collect())
    }

    /// Graphviz rendering; self-loops are omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reachability {\n  rankdir=BT;\n");
        for (i, (a, l)) in self.nodes.iter().zip(&self.lengths).enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{a}\\nl={l}\"];");
        }
        for &(i, k, j) in &self.edges {
            if i != j {
                let _ = writeln!(out, "  n{i} -> n{j} [label=\"s{}\"];", k + 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Closure of `{a}` under the monoid action.
pub fn reachable_set(ctx: &TwistContext, a: &TwistedInvolution) -> Vec<TwistedInvolution> {
    let mut seen = BTreeSet::from([*a]);
    let mut queue = VecDeque::from([*a]);
    while let Some(x) = queue.pop_front() {
        for s in ctx.group.simple_reflections() {
            let y = monoid_star(ctx, s, &x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `I' = {a : a_max ∈ M * a}`.
pub fn image_set(ctx: &TwistContext, a_max: &TwistedInvolution) -> Result<Vec<TwistedInvolution>> {
    if !ctx.is_twisted_involution(a_max) {
        return Err(Error::InvalidParams(format!("{a_max} is not a twisted involution")));
    }
    let g = ReachabilityGraph::build(ctx)?;
    Ok(g.reaching(a_max).expect("a_max is a node"))
}

/// `w^{-1} c θ(w) w_θ`, the value attached to the parameter `(c, w)`.
pub fn springer_value_for(ctx: &TwistContext, c: &SignedPerm, w: &SignedPerm) -> SignedPerm {
    w.inverse() * *c * ctx.theta(w) * ctx.w_theta
}

/// Springer value of the parameter `(i, w)` of a catalog entry.
pub fn springer_value(spec: &GroupSpec, torus_index: usize, w: &SignedPerm) -> Result<SignedPerm> {
    let t = spec.torus(torus_index)?;
    Ok(springer_value_for(spec.context(), &t.twist_class, w))
}

/// `a_max`: the value of the catalog's reference open-orbit parameter.
pub fn a_max(spec: &GroupSpec) -> Result<SignedPerm> {
    let (i, w) = spec.reference_open_orbit();
    springer_value(spec, i, &w)
}

/// Union of Springer values over every torus class and every `w ∈ W`. The
/// values are constant on `W_K`-cosets, so this needs no `W_K` data.
pub fn springer_image_sweep(spec: &GroupSpec) -> Result<Vec<TwistedInvolution>> {
    let ctx = spec.context();
    let mut out = BTreeSet::new();
    for t in spec.tori() {
        for w in ctx.group.elements()? {
            out.insert(springer_value_for(ctx, &t.twist_class, w));
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether `orbit parameter -> Springer value` is injective, i.e. every
/// fibre of the Springer map is a single orbit. Families without `W_K`
/// tables use twisted involutions as parameters and are injective by
/// construction.
pub fn variant_assumption_holds(spec: &GroupSpec) -> Result<bool> {
    match spec.orbit_parameters() {
        Ok(params) => {
            let values: HashSet<SignedPerm> = params.iter().map(|p| p.springer_value).collect();
            Ok(values.len() == params.len())
        }
        Err(Error::MissingWkData(_)) => Ok(true),
        Err(e) => Err(e),
    }
}
