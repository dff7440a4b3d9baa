use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MAX_RANK;
use crate::{Error, Result};

/// A signed permutation of `{1..n}`, i.e. an `n x n` monomial matrix with
/// entries `±1`.
///
/// Stored in one-line notation with signs: `w(e_j) = signs[j] * e_{perm[j]}`.
/// Composition is ordinary function composition, `(a * b)(x) = a(b(x))`,
/// which agrees with the product of the corresponding matrices.
///
/// Text form (see [`SignedPerm::parse`]): an optional sign vector in square
/// brackets, indexed by source coordinate, followed by cycle notation;
/// `e` is the identity. Example: `[+-+] (1 2)` sends `e_1 -> e_2`,
/// `e_2 -> -e_1`, `e_3 -> e_3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    n: u8,
    img: [i8; MAX_RANK],
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        let mut img = [0i8; MAX_RANK];
        for (j, v) in img.iter_mut().enumerate().take(n) {
            *v = j as i8 + 1;
        }
        SignedPerm { n: n as u8, img }
    }

    /// From signed 1-based images: `images[j] = ±(k+1)` means `e_j -> ±e_k`.
    pub fn from_images(images: &[i32]) -> Result<Self> {
        let n = images.len();
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut img = [0i8; MAX_RANK];
        for (j, &v) in images.iter().enumerate() {
            let k = v.unsigned_abs() as usize;
            if k == 0 || k > n || seen[k - 1] {
                return Err(Error::Parse(format!("{images:?} is not a signed permutation")));
            }
            seen[k - 1] = true;
            img[j] = v as i8;
        }
        Ok(SignedPerm { n: n as u8, img })
    }

    /// From a 1-based one-line permutation with all signs `+`.
    pub fn from_one_line(perm: &[usize]) -> Result<Self> {
        Self::from_images(&perm.iter().map(|&p| p as i32).collect::<Vec<_>>())
    }

    /// Pure sign change `diag(signs)`.
    pub fn sign_vector(signs: &[i8]) -> Result<Self> {
        Self::from_images(&signs.iter().enumerate().map(|(j, &s)| s.signum() as i32 * (j as i32 + 1)).collect::<Vec<_>>())
    }

    /// The transposition `(a b)` on 1-based points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut w = Self::identity(n);
        w.img.swap(a - 1, b - 1);
        w
    }

    /// Product of cycles given as lists of 1-based points; `(1 2 3)` sends
    /// `1 -> 2 -> 3 -> 1`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut w = Self::identity(n);
        for c in cycles {
            let mut one = Self::identity(n);
            for (idx, &a) in c.iter().enumerate() {
                let b = c[(idx + 1) % c.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::Parse(format!("point out of range in cycle {c:?}")));
                }
                one.img[a - 1] = b as i8;
            }
            w = w.compose(&Self::from_images(&one.images())?)?;
        }
        Ok(w)
    }

    /// Parse the text form on `n` points.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let (signs, rest) = match s.strip_prefix('[') {
            Some(r) => {
                let end = r.find(']').ok_or_else(|| Error::Parse(format!("unclosed sign vector in {s:?}")))?;
                let signs: Vec<i8> = r[..end]
                    .chars()
                    .filter(|c| !c.is_whitespace() && *c != ',')
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' | '−' => Ok(-1),
                        _ => Err(Error::Parse(format!("bad sign {c:?}"))),
                    })
                    .collect::<Result<_>>()?;
                if signs.len() != n {
                    return Err(Error::RankMismatch(n, signs.len()));
                }
                (Some(signs), &r[end + 1..])
            }
            None => (None, s),
        };
        let rest = rest.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        if !(rest.is_empty() || rest == "e") {
            let mut cur: Option<Vec<usize>> = None;
            let mut num = String::new();
            let flush = |num: &mut String, cur: &mut Option<Vec<usize>>| -> Result<()> {
                if !num.is_empty() {
                    let v: usize = num.parse().map_err(|_| Error::Parse(format!("bad point {num:?}")))?;
                    cur.as_mut().ok_or_else(|| Error::Parse("point outside a cycle".into()))?.push(v);
                    num.clear();
                }
                Ok(())
            };
            for ch in rest.chars() {
                match ch {
                    '(' if cur.is_none() => cur = Some(Vec::new()),
                    ')' => {
                        flush(&mut num, &mut cur)?;
                        cycles.push(cur.take().ok_or_else(|| Error::Parse("unbalanced ')'".into()))?);
                    }
                    c if c.is_ascii_digit() => num.push(c),
                    c if c.is_whitespace() || c == ',' => flush(&mut num, &mut cur)?,
                    c => return Err(Error::Parse(format!("unexpected {c:?} in {s:?}"))),
                }
            }
            if cur.is_some() {
                return Err(Error::Parse(format!("unclosed cycle in {s:?}")));
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        let perm = Self::from_cycles(n, &refs)?;
        match signs {
            None => Ok(perm),
            Some(signs) => {
                let mut w = perm;
                for (j, s) in signs.into_iter().enumerate() {
                    w.img[j] *= s;
                }
                Ok(w)
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn images(&self) -> Vec<i32> {
        self.img[..self.rank()].iter().map(|&v| v as i32).collect()
    }

    /// `(k, sign)` with `w(e_j) = sign * e_k` (0-based).
    #[inline]
    pub fn image(&self, j: usize) -> (usize, i8) {
        let v = self.img[j];
        (v.unsigned_abs() as usize - 1, v.signum())
    }

    /// Underlying permutation, 0-based one-line.
    pub fn perm(&self) -> Vec<usize> {
        (0..self.rank()).map(|j| self.image(j).0).collect()
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.rank()).map(|j| self.image(j).1).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// All signs are `+` (an element of the symmetric group).
    pub fn is_unsigned(&self) -> bool {
        self.img[..self.rank()].iter().all(|&v| v > 0)
    }

    pub fn negative_count(&self) -> usize {
        self.img[..self.rank()].iter().filter(|&&v| v < 0).count()
    }

    /// Forget the signs.
    pub fn unsigned(&self) -> Self {
        let mut w = *self;
        for v in w.img.iter_mut() {
            *v = v.abs();
        }
        w
    }

    pub fn compose(&self, rhs: &SignedPerm) -> Result<SignedPerm> {
        if self.n != rhs.n {
            return Err(Error::RankMismatch(self.rank(), rhs.rank()));
        }
        Ok(self.compose_unchecked(rhs))
    }

    #[inline]
    fn compose_unchecked(&self, rhs: &SignedPerm) -> SignedPerm {
        let mut img = [0i8; MAX_RANK];
        for (j, out) in img.iter_mut().enumerate().take(self.rank()) {
            let (k, s) = rhs.image(j);
            *out = s * self.img[k];
        }
        SignedPerm { n: self.n, img }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = [0i8; MAX_RANK];
        for j in 0..self.rank() {
            let (k, s) = self.image(j);
            img[k] = s * (j as i8 + 1);
        }
        SignedPerm { n: self.n, img }
    }

    pub fn is_involution(&self) -> bool {
        (*self * *self).is_identity()
    }

    /// `self * x * self^{-1}`.
    pub fn conjugate(&self, x: &SignedPerm) -> SignedPerm {
        *self * *x * self.inverse()
    }

    /// Apply to a coordinate vector: `(w v)_k = sign * v_j` for `w(e_j) = sign e_k`.
    pub fn act<T>(&self, v: &[T]) -> Vec<T>
    where
        T: Clone + Default + std::ops::Neg<Output = T>,
    {
        let mut out = vec![T::default(); self.rank()];
        for (j, x) in v.iter().enumerate().take(self.rank()) {
            let (k, s) = self.image(j);
            out[k] = if s > 0 { x.clone() } else { -x.clone() };
        }
        out
    }

    /// Integer matrix with `m[k][j] = sign` where `w(e_j) = sign e_k`.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (j, (k, s)) in (0..n).map(|j| (j, self.image(j))) {
            m[k][j] = i64::from(s);
        }
        m
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` unless the matrix is a
    /// signed permutation matrix.
    pub fn from_matrix(m: &[Vec<i64>]) -> Option<Self> {
        let n = m.len();
        let mut images = vec![0i32; n];
        for j in 0..n {
            let mut nz = (0..n).filter(|&k| m[k][j] != 0);
            let k = nz.next()?;
            if nz.next().is_some() || m[k][j].abs() != 1 {
                return None;
            }
            images[j] = m[k][j].signum() as i32 * (k as i32 + 1);
        }
        Self::from_images(&images).ok()
    }

    fn cycle_string(&self) -> String {
        let perm = self.perm();
        let mut seen = vec![false; perm.len()];
        let mut out = String::new();
        for start in 0..perm.len() {
            if seen[start] || perm[start] == start {
                continue;
            }
            out.push('(');
            let mut j = start;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(j + 1).to_string());
                j = perm[j];
            }
            out.push(')');
        }
        out
    }

    /// The sign vector as `+`/`-` characters.
    pub fn sign_string(&self) -> String {
        self.signs().iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

impl Mul for SignedPerm {
    type Output = SignedPerm;
    /// Panics on rank mismatch; [`SignedPerm::compose`] is the checked form.
    #[inline]
    fn mul(self, rhs: SignedPerm) -> SignedPerm {
        assert_eq!(self.n, rhs.n, "rank mismatch in composition");
        self.compose_unchecked(&rhs)
    }
}

impl Ord for SignedPerm {
    /// Signs first (`+` before `-`), then the one-line permutation.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |w: &SignedPerm| -> (u8, Vec<bool>, Vec<usize>) {
            (w.n, w.signs().iter().map(|&s| s < 0).collect(), w.perm())
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for SignedPerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_string();
        if self.is_unsigned() {
            if cycles.is_empty() {
                write!(f, "e")
            } else {
                write!(f, "{cycles}")
            }
        } else if cycles.is_empty() {
            write!(f, "[{}]", self.sign_string())
        } else {
            write!(f, "[{}] {cycles}", self.sign_string())
        }
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `"n:text"` form used by `FromStr`, e.g. `"3:(1 3)"`.
impl FromStr for SignedPerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected n:perm, got {s:?}")))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        Self::parse(n, rest)
    }
}

/// Serialized as signed 1-based images, e.g. `[2, -1, 3]`.
impl Serialize for SignedPerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images: Vec<i32> = Deserialize::deserialize(d)?;
        SignedPerm::from_images(&images).map_err(serde::de::Error::custom)
    }
}
