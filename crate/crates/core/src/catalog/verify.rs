use serde::{Deserialize, Serialize};

use super::families::g_bl;
use super::{Family, GroupSpec, TorusDescriptor};
use crate::dyadic::{apply_involution, monomial_to_weyl, ExactMatrix, TorusFrame};
use crate::weyl::SignedPerm;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lines: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    fn push(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.lines.push(ClaimResult { name: name.into(), passed, detail });
    }
}

fn inv_times(g: &ExactMatrix, h: &ExactMatrix) -> Result<ExactMatrix> {
    g.inverse()?.try_mul(h)
}

fn conjugated_is_diagonal(frame: &TorusFrame, m: &ExactMatrix) -> Result<bool> {
    let c = &frame.conjugator;
    Ok(inv_times(c, m)?.try_mul(c)?.is_diagonal())
}

fn unit_vectors(rank: usize) -> Vec<Vec<i64>> {
    (0..rank).map(|k| (0..rank).map(|j| i64::from(j == k)).collect()).collect()
}

/// `w` acting on an integer vector in lattice coordinates.
fn act_on_lattice(w: &SignedPerm, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (j, &x) in v.iter().enumerate() {
        let (k, s) = w.image(j);
        out[k] += i64::from(s) * x;
    }
    out
}

/// Membership of a matrix over `k'` in the complexified group.
fn in_group(spec: &GroupSpec, x: &ExactMatrix) -> Result<(bool, String)> {
    let det = x.det();
    let ok = match spec.family() {
        Family::SL2n => det.is_one(),
        Family::SOodd1 | Family::SOeven1 => {
            let n = spec.ambient_dim();
            let mut eta = vec![1i8; n];
            eta[n - 1] = -1;
            let eta = ExactMatrix::signature(&eta);
            det.is_one() && x.transpose().try_mul(&eta)?.try_mul(x)? == eta
        }
        Family::Restriction => {
            let m = spec.ambient_dim() / 2;
            let blocks_ok = (0..2 * m).all(|i| (0..2 * m).all(|j| (i < m) == (j < m) || x[(i, j)].is_zero()));
            det.is_unit() && blocks_ok
        }
        Family::GL | Family::Ustar | Family::Upq => det.is_unit(),
    };
    Ok((ok, format!("det = {det}")))
}

/// Re-check every matrix-level claim of the catalog entry. Failures are
/// report lines, never errors.
pub fn verify_matrix_claims(spec: &GroupSpec) -> VerificationReport {
    let mut r = VerificationReport::default();
    let theta = spec.theta_rule();
    let reference = spec.reference_frame();

    if matches!(spec.family(), Family::GL | Family::SL2n | Family::SOodd1 | Family::SOeven1) {
        let g = g_bl();
        r.push("det(g^bl) = 1", Ok((g.det().is_one(), format!("det = {}", g.det()))));
        r.push(
            "(g^bl)^-1 conj(g^bl) represents (1 2)",
            (|| {
                let w = monomial_to_weyl(&inv_times(&g, &g.conj())?, &TorusFrame::diagonal(2)?)?;
                Ok((w.to_string() == "(1 2)", w.to_string()))
            })(),
        );
    }

    r.push(
        "θ and θ_W agree on the reference cocharacters",
        (|| {
            for v in unit_vectors(reference.rank) {
                let lhs = apply_involution(&reference.cocharacter_at_two(&v)?, theta)?;
                let rhs = reference.cocharacter_at_two(&act_on_lattice(&spec.theta_w(), &v))?;
                if lhs != rhs {
                    return Ok((false, format!("differs on {v:?}")));
                }
            }
            Ok((true, format!("θ_W = {}", spec.theta_w())))
        })(),
    );

    for t in spec.tori() {
        verify_torus(spec, t, &mut r);
    }

    if spec.family() == Family::SOeven1 {
        if let Some(t) = spec.tori().get(1) {
            r.push(
                format!("{}: g^-1 θ(g) = diag(I_{}, -I_2)", t.label, spec.ambient_dim() - 2),
                (|| {
                    let m = inv_times(&t.g, &apply_involution(&t.g, theta)?)?;
                    let n = spec.ambient_dim();
                    let mut s = vec![1i8; n];
                    s[n - 2] = -1;
                    s[n - 1] = -1;
                    Ok((m == ExactMatrix::signature(&s), format!("{m}")))
                })(),
            );
        }
    }
    r
}

fn verify_torus(spec: &GroupSpec, t: &TorusDescriptor, r: &mut VerificationReport) {
    let theta = spec.theta_rule();
    let sigma = spec.galois_rule();
    let reference = spec.reference_frame();
    let label = &t.label;

    r.push(format!("{label}: g is invertible over k'"), Ok((t.g.det().is_unit(), format!("det = {}", t.g.det()))));
    r.push(
        format!("{label}: g^-1 θ(g) represents c = {}", t.twist_class),
        (|| {
            let w = monomial_to_weyl(&inv_times(&t.g, &apply_involution(&t.g, theta)?)?, reference)?;
            Ok((w == t.twist_class, w.to_string()))
        })(),
    );
    r.push(
        format!("{label}: g^-1 conj(g) represents u' = {}", t.galois_u_prime),
        (|| {
            let w = monomial_to_weyl(&inv_times(&t.g, &apply_involution(&t.g, sigma)?)?, reference)?;
            Ok((w == t.galois_u_prime, w.to_string()))
        })(),
    );
    r.push(
        format!("{label}: θ(θ(g)) = g"),
        (|| {
            let back = apply_involution(&apply_involution(&t.g, theta)?, theta)?;
            Ok((back == t.g, String::new()))
        })(),
    );
    for (k, x) in t.sample_points.iter().enumerate() {
        r.push(format!("{label}: sample point {k} lies in G"), in_group(spec, x));
        r.push(
            format!("{label}: sample point {k} is diagonalised by the frame"),
            conjugated_is_diagonal(&t.frame, x).map(|ok| (ok, String::new())),
        );
        r.push(
            format!("{label}: θ(sample point {k}) stays in the torus"),
            (|| {
                let y = apply_involution(x, theta)?;
                Ok((conjugated_is_diagonal(&t.frame, &y)? && apply_involution(&y, theta)? == *x, String::new()))
            })(),
        );
    }
    r.push(
        format!("{label}: torus is stable under conjugation"),
        (|| {
            for v in unit_vectors(t.frame.rank) {
                let y = apply_involution(&t.frame.cocharacter_at_two(&v)?, sigma)?;
                if !conjugated_is_diagonal(&t.frame, &y)? {
                    return Ok((false, format!("cocharacter {v:?} leaves the torus")));
                }
            }
            Ok((true, String::new()))
        })(),
    );
    r.push(
        format!("{label}: θ acts on cocharacters as c·θ_W"),
        (|| {
            let w = t.twist_class * spec.theta_w();
            for v in unit_vectors(t.frame.rank) {
                let lhs = apply_involution(&t.frame.cocharacter_at_two(&v)?, theta)?;
                let rhs = t.frame.cocharacter_at_two(&act_on_lattice(&w, &v))?;
                if lhs != rhs {
                    return Ok((false, format!("differs on {v:?}")));
                }
            }
            Ok((true, format!("c·θ_W = {w}")))
        })(),
    );
}
