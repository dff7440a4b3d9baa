use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::{Dyadic, DyadicGauss};
use crate::{Error, Result};

/// Square matrix over `k' = Z[1/2, sqrt(-1)]`, stored row-major.
///
/// JSON form: a list of rows, each entry `[re, im]` with both parts in the
/// `[mantissa, exponent]` form of [`Dyadic`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<DyadicGauss>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![DyadicGauss::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = DyadicGauss::one();
        }
        m
    }

    pub fn diag(d: impl IntoIterator<Item = DyadicGauss>) -> Self {
        let d: Vec<_> = d.into_iter().collect();
        let mut m = Self::zeros(d.len());
        for (i, v) in d.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Signature matrix `diag(±1, ...)`.
    pub fn signature(signs: &[i8]) -> Self {
        Self::diag(signs.iter().map(|&s| DyadicGauss::from_int(s as i64)))
    }

    pub fn from_rows(rows: Vec<Vec<DyadicGauss>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::RankMismatch(n, r.len()));
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { n, entries })
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[ExactMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.n;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[DyadicGauss]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entrywise `sqrt(-1) -> -sqrt(-1)`.
    pub fn conj(&self) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(DyadicGauss::conj).collect(),
        }
    }

    pub fn scale(&self, s: &DyadicGauss) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.n != rhs.n {
            return Err(Error::RankMismatch(self.n, rhs.n));
        }
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = &m[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is
    /// exact in `k'`.
    pub fn det(&self) -> DyadicGauss {
        let n = self.n;
        if n == 0 {
            return DyadicGauss::one();
        }
        let mut a: Vec<Vec<DyadicGauss>> = self.rows().map(|r| r.to_vec()).collect();
        let mut negate = false;
        let mut prev = DyadicGauss::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return DyadicGauss::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .checked_div(&prev)
                        .expect("Bareiss quotients are minors, hence lie in k'");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn minor(&self, row: usize, col: usize) -> ExactMatrix {
        let n = self.n - 1;
        let mut m = Self::zeros(n);
        for (ii, i) in (0..self.n).filter(|&i| i != row).enumerate() {
            for (jj, j) in (0..self.n).filter(|&j| j != col).enumerate() {
                m[(ii, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Adjugate: `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> ExactMatrix {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut adj = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        adj
    }

    /// Exact inverse; defined iff the determinant is a unit of `k'`.
    ///
    /// Gauss-Jordan over `Q(i)`, then every entry is brought back into `k'`.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let det = self.det();
        if det.inverse().is_err() {
            return Err(Error::NotAUnit(format!("det = {det}")));
        }
        let n = self.n;
        let mut a: Vec<Vec<Gq>> = self.rows().map(|r| r.iter().map(Gq::from_exact).collect()).collect();
        let mut inv: Vec<Vec<Gq>> = (0..n).map(|i| (0..n).map(|j| Gq::int(i64::from(i == j))).collect()).collect();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[r][k].is_zero()).expect("unit determinant");
            a.swap(k, pivot);
            inv.swap(k, pivot);
            let p = a[k][k].recip();
            for j in 0..n {
                a[k][j] = a[k][j].mul(&p);
                inv[k][j] = inv[k][j].mul(&p);
            }
            for i in (0..n).filter(|&i| i != k) {
                let f = a[i][k].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                }
            }
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = inv[i][j].to_exact()?;
            }
        }
        Ok(out)
    }

    /// Position of the unique nonzero entry of each column, if monomial.
    pub fn monomial_pattern(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut rows_used = vec![false; n];
        let mut pattern = Vec::with_capacity(n);
        for j in 0..n {
            let mut nz = (0..n).filter(|&i| !self[(i, j)].is_zero());
            let i = nz.next()?;
            if nz.next().is_some() || rows_used[i] {
                return None;
            }
            rows_used[i] = true;
            pattern.push(i);
        }
        Some(pattern)
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial_pattern().is_some()
    }
}

/// Gaussian rational, only used inside [`ExactMatrix::inverse`].
#[derive(Clone)]
struct Gq {
    re: BigRational,
    im: BigRational,
}

impl Gq {
    fn int(v: i64) -> Self {
        Gq { re: BigRational::from_integer(v.into()), im: BigRational::zero() }
    }

    fn from_exact(x: &DyadicGauss) -> Self {
        fn q(d: &Dyadic) -> BigRational {
            let m = BigRational::from_integer(d.mantissa().clone());
            let two = BigRational::from_integer(2.into());
            m * two.pow(d.exponent() as i32)
        }
        Gq { re: q(&x.re), im: q(&x.im) }
    }

    fn to_exact(&self) -> Result<DyadicGauss> {
        fn d(q: &BigRational) -> Result<Dyadic> {
            let den = q.denom();
            let shift = den.trailing_zeros().unwrap_or(0);
            if den != &(BigInt::one() << shift) {
                return Err(Error::DivisionNotDyadic(q.to_string()));
            }
            Ok(Dyadic::new(q.numer().clone(), -(shift as i64)))
        }
        Ok(DyadicGauss::new(d(&self.re)?, d(&self.im)?))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Gq) -> Gq {
        Gq { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn recip(&self) -> Gq {
        let n = &self.re * &self.re + &self.im * &self.im;
        Gq { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = DyadicGauss;
    fn index(&self, (i, j): (usize, usize)) -> &DyadicGauss {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DyadicGauss {
        &mut self.entries[i * self.n + j]
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    /// Panics on a dimension mismatch; use [`ExactMatrix::try_mul`] otherwise.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<(&Dyadic, &Dyadic)>> =
            self.rows().map(|r| r.iter().map(|e| (&e.re, &e.im)).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<(Dyadic, Dyadic)>> = Deserialize::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|(a, b)| DyadicGauss::new(a, b)).collect())
            .collect();
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Matrix-level involutions used by the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixInvolution {
    /// Entrywise conjugation.
    Conj,
    Transpose,
    /// `x -> F (x^T)^{-1} F^{-1}`.
    InverseTransposeBy(ExactMatrix),
    /// `x -> F x F^{-1}`.
    ConjugateBy(ExactMatrix),
    /// Apply each step in order.
    Compose(Vec<MatrixInvolution>),
}

/// Apply `which` to `m`. Steps that invert propagate `NotAUnit`.
pub fn apply_involution(m: &ExactMatrix, which: &MatrixInvolution) -> Result<ExactMatrix> {
    Ok(match which {
        MatrixInvolution::Conj => m.conj(),
        MatrixInvolution::Transpose => m.transpose(),
        MatrixInvolution::InverseTransposeBy(f) => {
            let t = m.transpose().inverse()?;
            f.try_mul(&t)?.try_mul(&f.inverse()?)?
        }
        MatrixInvolution::ConjugateBy(f) => f.try_mul(m)?.try_mul(&f.inverse()?)?,
        MatrixInvolution::Compose(steps) => {
            let mut cur = m.clone();
            for s in steps {
                cur = apply_involution(&cur, s)?;
            }
            cur
        }
    })
}

impl ExactMatrix {
    /// Small helper for tests and the catalog: entries given as `(re, im)`
    /// pairs of dyadics.
    pub fn from_pairs(rows: &[&[(Dyadic, Dyadic)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|(a, b)| DyadicGauss::new(a.clone(), b.clone())).collect())
                .collect(),
        )
    }
}
