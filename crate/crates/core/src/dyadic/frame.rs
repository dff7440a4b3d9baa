use serde::{Deserialize, Serialize};

use super::{Dyadic, DyadicGauss, ExactMatrix};
use crate::weyl::{SignedPerm, MAX_RANK};
use crate::{Error, Result};

/// How Weyl classes are read off a monomial matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeylConvention {
    /// Only the permutation matters; signs are dropped.
    TypeA,
    /// Signed permutations; a sign records a character sent to its inverse.
    Orthogonal,
}

/// A torus given by a conjugator `C` to a diagonal torus, plus the character
/// of each diagonal position in lattice coordinates.
///
/// `layout[p] = Some((k, s))` means the `p`-th diagonal entry of `C^{-1} t C`
/// is `t_k^s`. `None` marks positions on which the torus acts trivially.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusFrame {
    pub conjugator: ExactMatrix,
    pub layout: Vec<Option<(usize, i8)>>,
    pub rank: usize,
    pub convention: WeylConvention,
}

impl TorusFrame {
    pub fn new(
        conjugator: ExactMatrix,
        layout: Vec<Option<(usize, i8)>>,
        rank: usize,
        convention: WeylConvention,
    ) -> Result<Self> {
        if layout.len() != conjugator.dim() {
            return Err(Error::RankMismatch(conjugator.dim(), layout.len()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        if layout.iter().flatten().any(|&(k, s)| k >= rank || s.abs() != 1) {
            return Err(Error::InvalidParams("layout entry outside the lattice".into()));
        }
        Ok(TorusFrame { conjugator, layout, rank, convention })
    }

    /// The standard diagonal torus of `GL_n` with `C = I`.
    pub fn diagonal(n: usize) -> Result<Self> {
        Self::new(ExactMatrix::identity(n), (0..n).map(|k| Some((k, 1))).collect(), n, WeylConvention::TypeA)
    }

    /// Image of the cocharacter `v` at `2`, i.e. `C diag(2^<chi_p, v>) C^{-1}`.
    pub fn cocharacter_at_two(&self, v: &[i64]) -> Result<ExactMatrix> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, v.len()));
        }
        let diag = ExactMatrix::diag(self.layout.iter().map(|slot| match slot {
            Some((k, s)) => DyadicGauss::real(Dyadic::new(1, *s as i64 * v[*k])),
            None => DyadicGauss::one(),
        }));
        self.conjugator.try_mul(&diag)?.try_mul(&self.conjugator.inverse()?)
    }
}

/// Weyl class of a matrix normalising the torus of `frame`.
///
/// Conjugates `m` to the diagonal frame, checks that the result is monomial
/// and compatible with the layout, and reads off the induced signed
/// permutation of the cocharacter lattice.
pub fn monomial_to_weyl(m: &ExactMatrix, frame: &TorusFrame) -> Result<SignedPerm> {
    let c = &frame.conjugator;
    let x = c.inverse()?.try_mul(m)?.try_mul(c)?;
    let pattern = x
        .monomial_pattern()
        .ok_or_else(|| Error::NotMonomial(format!("{x}")))?;
    let mut images: Vec<Option<i32>> = vec![None; frame.rank];
    for (p, &q) in pattern.iter().enumerate() {
        match (frame.layout[p], frame.layout[q]) {
            (None, None) => {}
            (Some((k, s)), Some((k2, s2))) => {
                let img = (s * s2) as i32 * (k2 as i32 + 1);
                match images[k] {
                    None => images[k] = Some(img),
                    Some(prev) if prev == img => {}
                    Some(_) => {
                        return Err(Error::NotMonomial(format!("{x} does not permute the torus characters")));
                    }
                }
            }
            _ => return Err(Error::NotMonomial(format!("{x} moves a trivial position"))),
        }
    }
    let images: Vec<i32> = images
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::NotMonomial("lattice coordinate without a position".into()))?;
    let w = SignedPerm::from_images(&images)
        .map_err(|_| Error::NotMonomial(format!("{x} does not permute the torus characters")))?;
    Ok(match frame.convention {
        WeylConvention::TypeA => w.unsigned(),
        WeylConvention::Orthogonal => w,
    })
}
