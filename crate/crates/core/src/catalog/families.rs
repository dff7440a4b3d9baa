use super::{Blueprint, Family, Params, TorusDescriptor};
use crate::descent::{ConjRule, TwistedRule};
use crate::dyadic::{Dyadic, DyadicGauss, ExactMatrix, MatrixInvolution, TorusFrame, WeylConvention};
use crate::weyl::{type_a_roots, SignedPerm, WeylDescriptor, MAX_RANK};
use crate::{Error, Result};

fn re(num: i64, log2den: u32) -> DyadicGauss {
    DyadicGauss::real(Dyadic::frac(num, log2den))
}

fn im(num: i64, log2den: u32) -> DyadicGauss {
    DyadicGauss::new(Dyadic::zero(), Dyadic::frac(num, log2den))
}

fn mat2(a: DyadicGauss, b: DyadicGauss, c: DyadicGauss, d: DyadicGauss) -> ExactMatrix {
    ExactMatrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// `g^bl = (1/2, i; i/2, 1)`, diagonalising the compact block `(a b; -b a)`.
pub(crate) fn g_bl() -> ExactMatrix {
    mat2(re(1, 1), im(1, 0), im(1, 1), re(1, 0))
}

/// `(1 -1; 1 1)`, diagonalising the split block `(a b; b a)`.
pub(crate) fn b_split() -> ExactMatrix {
    mat2(re(1, 0), re(-1, 0), re(1, 0), re(1, 0))
}

/// A point `(0 1; -1 0)` of the compact block torus.
fn compact_point() -> ExactMatrix {
    mat2(re(0, 0), re(1, 0), re(-1, 0), re(0, 0))
}

/// A point `(5/4 3/4; 3/4 5/4)` of the split block torus.
fn split_point() -> ExactMatrix {
    mat2(re(5, 2), re(3, 2), re(3, 2), re(5, 2))
}

/// Identity of size `n` with the 2x2 `block` placed on each index pair.
fn with_blocks(n: usize, pairs: &[(usize, usize)], block: &ExactMatrix) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for &(a, b) in pairs {
        m[(a, a)] = block[(0, 0)].clone();
        m[(a, b)] = block[(0, 1)].clone();
        m[(b, a)] = block[(1, 0)].clone();
        m[(b, b)] = block[(1, 1)].clone();
    }
    m
}

fn diag_point(n: usize, k: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    m[(k, k)] = re(2, 0);
    m
}

fn signs(plus: usize, minus: usize) -> ExactMatrix {
    let mut s = vec![1i8; plus];
    s.extend(std::iter::repeat_n(-1, minus));
    ExactMatrix::signature(&s)
}

/// Product of disjoint transpositions on 1-based points.
fn transpositions(n: usize, pairs: &[(usize, usize)]) -> SignedPerm {
    pairs.iter().fold(SignedPerm::identity(n), |w, &(a, b)| w * SignedPerm::transposition(n, a, b))
}

fn sign_vector(v: &[i8]) -> SignedPerm {
    SignedPerm::sign_vector(v).expect("rank checked")
}

fn need(v: Option<usize>, what: &str, family: Family) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("{family} requires --{what}")))
}

fn check_rank(r: usize) -> Result<()> {
    if r > MAX_RANK {
        Err(Error::InvalidParams(format!("Weyl group rank {r} exceeds {MAX_RANK}")))
    } else {
        Ok(())
    }
}

fn frame_of(reference: &TorusFrame, g: &ExactMatrix) -> TorusFrame {
    TorusFrame { conjugator: g * &reference.conjugator, ..reference.clone() }
}

pub(crate) fn blueprint(family: Family, params: Params) -> Result<Blueprint> {
    match family {
        Family::GL => {
            let n = need(params.n, "n", family)?;
            if n == 0 {
                return Err(Error::InvalidParams("GL_n needs n ≥ 1".into()));
            }
            split_type_a(family, Params::n(n), n, format!("GL_{n}"))
        }
        Family::SL2n => {
            let n = need(params.n, "n", family)?;
            if n == 0 {
                return Err(Error::InvalidParams("SL_2n needs n ≥ 1".into()));
            }
            split_type_a(family, Params::n(n), 2 * n, format!("SL_{}", 2 * n))
        }
        Family::Ustar => ustar(need(params.n, "n", family)?),
        Family::SOodd1 => so_odd(need(params.n, "n", family)?),
        Family::SOeven1 => so_even(need(params.n, "n", family)?),
        Family::Upq => upq(need(params.p, "p", family)?, need(params.q, "q", family)?),
        Family::Restriction => restriction(need(params.n, "n", family)?),
    }
}

/// `GL_N` and `SL_N` (`N = 2n`) with `θ(x) = (x^T)^{-1}`. The tori are
/// `g(i) H_0 g(i)^{-1}` for `g(i) = diag(g^bl, ..., g^bl, 1, ..., 1)`.
fn split_type_a(family: Family, params: Params, big_n: usize, label: String) -> Result<Blueprint> {
    check_rank(big_n)?;
    let weyl = WeylDescriptor::type_a(big_n)?;
    let w0 = weyl.longest_element();
    let reference_frame = TorusFrame::diagonal(big_n)?;
    let max_i = big_n / 2;
    let mut tori = Vec::new();
    for i in 0..=max_i {
        let pairs: Vec<(usize, usize)> = (0..i).map(|j| (2 * j, 2 * j + 1)).collect();
        let g = with_blocks(big_n, &pairs, &g_bl());
        let c = transpositions(big_n, &pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect::<Vec<_>>());
        let mut sample_points: Vec<ExactMatrix> =
            pairs.iter().map(|p| with_blocks(big_n, &[*p], &compact_point())).collect();
        if family == Family::SL2n {
            sample_points.extend((2 * i..big_n.saturating_sub(1)).map(|k| {
                let mut m = diag_point(big_n, k);
                m[(k + 1, k + 1)] = re(1, 1);
                m
            }));
        } else {
            sample_points.extend((2 * i..big_n).map(|k| diag_point(big_n, k)));
        }
        let wk_generators = (family == Family::SL2n).then(|| sl_wk_generators(big_n / 2, i));
        tori.push(TorusDescriptor {
            index: i,
            label: format!("H_{i}"),
            frame: frame_of(&reference_frame, &g),
            g,
            sample_points,
            wk_generators,
            twist_class: c,
            galois_u_prime: c,
            conj_rule: ConjRule::Identity,
        });
    }
    let theta_rule = MatrixInvolution::InverseTransposeBy(ExactMatrix::identity(big_n));
    Ok(Blueprint {
        family,
        params,
        label,
        ambient_dim: big_n,
        theta_rule,
        galois_rule: MatrixInvolution::Conj,
        theta_w: sign_vector(&vec![-1; big_n]),
        w_theta: w0,
        reference_frame,
        tori,
        reference_open_orbit: (0, weyl.identity()),
        galois_u: weyl.identity(),
        twisted_rule: TwistedRule::Trivial,
        weyl,
    })
}

/// Generators of `W_i ⊂ S_{2n}` for the torus `H_i` of `SL_{2n}`.
fn sl_wk_generators(n: usize, i: usize) -> Vec<SignedPerm> {
    let m = 2 * n;
    let t = |a: usize, b: usize| SignedPerm::transposition(m, a, b);
    let mut gens = Vec::new();
    if i < n {
        gens.extend((1..=i).map(|j| t(2 * j - 1, 2 * j)));
        gens.extend((1..i).map(|j| t(2 * j - 1, 2 * j + 1) * t(2 * j, 2 * j + 2)));
        gens.extend((2 * i + 1..m).map(|j| t(j, j + 1)));
    } else {
        gens.extend((1..n).map(|j| t(2 * j - 1, 2 * j) * t(2 * j + 1, 2 * j + 2)));
        gens.extend((1..n).map(|j| t(2 * j - 1, 2 * j + 1) * t(2 * j, 2 * j + 2)));
    }
    gens
}

/// `U*(2n)` realised inside `GL_{2n}` with `θ(x) = Ω (x^T)^{-1} Ω^{-1}` and
/// Galois action `x -> Ω x̄ Ω^{-1}`, `Ω` antidiagonal and skew.
fn ustar(n: usize) -> Result<Blueprint> {
    if n == 0 {
        return Err(Error::InvalidParams("U*(2n) needs n ≥ 1".into()));
    }
    let m = 2 * n;
    check_rank(m)?;
    let weyl = WeylDescriptor::type_a(m)?;
    let mut omega = ExactMatrix::zeros(m);
    for i in 0..m {
        omega[(i, m - 1 - i)] = re(if i < n { 1 } else { -1 }, 0);
    }
    let theta_w = SignedPerm::from_images(&(0..m).map(|j| -((m - j) as i32)).collect::<Vec<_>>())?;
    let reference_frame = TorusFrame::diagonal(m)?;
    let e = weyl.identity();
    let torus = TorusDescriptor {
        index: 0,
        label: "H_fun".into(),
        g: ExactMatrix::identity(m),
        frame: reference_frame.clone(),
        sample_points: (0..m).map(|k| diag_point(m, k)).collect(),
        wk_generators: None,
        twist_class: e,
        galois_u_prime: e,
        conj_rule: ConjRule::Theta,
    };
    // w*(2k-1) = k, w*(2k) = 2n+1-k
    let wstar = SignedPerm::from_one_line(
        &(1..=m).map(|j| if j % 2 == 1 { j.div_ceil(2) } else { m + 1 - j / 2 }).collect::<Vec<_>>(),
    )?;
    Ok(Blueprint {
        family: Family::Ustar,
        params: Params::n(n),
        label: format!("U*({m})"),
        ambient_dim: m,
        theta_rule: MatrixInvolution::InverseTransposeBy(omega.clone()),
        galois_rule: MatrixInvolution::Compose(vec![MatrixInvolution::Conj, MatrixInvolution::ConjugateBy(omega)]),
        theta_w,
        w_theta: e,
        reference_frame,
        tori: vec![torus],
        reference_open_orbit: (0, wstar),
        galois_u: weyl.longest_element(),
        twisted_rule: TwistedRule::ConjW0,
        weyl,
    })
}

/// `SO(2n+1, 1)` with `θ` conjugation by `diag(I_{2n+1}, -1)`. The
/// fundamental torus is `diag(SO(2)^n, SO(1,1))`.
fn so_odd(n: usize) -> Result<Blueprint> {
    if n == 0 {
        return Err(Error::InvalidParams("SO(2n+1,1) needs n ≥ 1".into()));
    }
    check_rank(n + 1)?;
    let dim = 2 * n + 2;
    let weyl = WeylDescriptor::type_d(n + 1)?;
    let mut blocks: Vec<ExactMatrix> = vec![g_bl(); n];
    blocks.push(b_split());
    let layout = (0..=n).flat_map(|k| [Some((k, 1)), Some((k, -1))]).collect();
    let reference_frame =
        TorusFrame::new(ExactMatrix::block_diag(&blocks), layout, n + 1, WeylConvention::Orthogonal)?;
    let mut sample_points: Vec<ExactMatrix> =
        (0..n).map(|j| with_blocks(dim, &[(2 * j, 2 * j + 1)], &compact_point())).collect();
    sample_points.push(with_blocks(dim, &[(2 * n, 2 * n + 1)], &split_point()));
    let mut flip = vec![1i8; n + 1];
    flip[n] = -1;
    let theta_w = sign_vector(&flip);
    // S_n on the first n coordinates, and all even sign changes
    let mut wk: Vec<SignedPerm> = (1..n).map(|j| SignedPerm::transposition(n + 1, j, j + 1)).collect();
    for j in 0..n {
        let mut s = vec![1i8; n + 1];
        s[j] = -1;
        s[n] = -1;
        wk.push(sign_vector(&s));
    }
    let e = weyl.identity();
    let torus = TorusDescriptor {
        index: 0,
        label: "H_fun".into(),
        g: ExactMatrix::identity(dim),
        frame: reference_frame.clone(),
        sample_points,
        wk_generators: Some(wk),
        twist_class: e,
        galois_u_prime: e,
        conj_rule: ConjRule::Theta,
    };
    Ok(Blueprint {
        family: Family::SOodd1,
        params: Params::n(n),
        label: format!("SO({},1)", 2 * n + 1),
        ambient_dim: dim,
        theta_rule: MatrixInvolution::ConjugateBy(signs(2 * n + 1, 1)),
        galois_rule: MatrixInvolution::Conj,
        theta_w,
        w_theta: e,
        reference_frame,
        tori: vec![torus],
        reference_open_orbit: (0, SignedPerm::transposition(n + 1, 1, n + 1)),
        galois_u: weyl.longest_element(),
        twisted_rule: TwistedRule::ConjW0,
        weyl,
    })
}

/// `SO(2n, 1)` with `θ` conjugation by `diag(I_{2n}, -1)`. Torus 0 is the
/// fundamental torus `diag(SO(2)^n, 1)`, torus 1 is
/// `diag(SO(2)^{n-1}, 1, SO(1,1))`.
fn so_even(n: usize) -> Result<Blueprint> {
    if n == 0 {
        return Err(Error::InvalidParams("SO(2n,1) needs n ≥ 1".into()));
    }
    check_rank(n)?;
    let dim = 2 * n + 1;
    let weyl = WeylDescriptor::type_bc(n)?;
    let mut blocks: Vec<ExactMatrix> = vec![g_bl(); n];
    blocks.push(ExactMatrix::identity(1));
    let mut layout: Vec<Option<(usize, i8)>> = (0..n).flat_map(|k| [Some((k, 1)), Some((k, -1))]).collect();
    layout.push(None);
    let reference_frame = TorusFrame::new(ExactMatrix::block_diag(&blocks), layout, n, WeylConvention::Orthogonal)?;
    let e = weyl.identity();

    let fun_points: Vec<ExactMatrix> =
        (0..n).map(|j| with_blocks(dim, &[(2 * j, 2 * j + 1)], &compact_point())).collect();
    let h_fun = TorusDescriptor {
        index: 0,
        label: "H_fun".into(),
        g: ExactMatrix::identity(dim),
        frame: reference_frame.clone(),
        sample_points: fun_points,
        wk_generators: Some(weyl.simple_reflections().to_vec()),
        twist_class: e,
        galois_u_prime: e,
        conj_rule: ConjRule::Theta,
    };

    let m = ExactMatrix::from_rows(vec![
        vec![re(0, 0), re(0, 0), im(-1, 0)],
        vec![re(1, 0), re(0, 0), re(0, 0)],
        vec![re(0, 0), im(1, 0), re(0, 0)],
    ])?;
    let g = ExactMatrix::block_diag(&[ExactMatrix::identity(2 * n - 2), m]);
    let mut c = vec![1i8; n];
    c[n - 1] = -1;
    let c = sign_vector(&c);
    let mut h0_points: Vec<ExactMatrix> =
        (0..n - 1).map(|j| with_blocks(dim, &[(2 * j, 2 * j + 1)], &compact_point())).collect();
    h0_points.push(with_blocks(dim, &[(2 * n - 1, 2 * n)], &split_point()));
    // the centraliser of c: B_{n-1} on the first n-1 coordinates and the flip of the last
    let mut wk: Vec<SignedPerm> = (1..n.saturating_sub(1)).map(|j| SignedPerm::transposition(n, j, j + 1)).collect();
    if n >= 2 {
        let mut s = vec![1i8; n];
        s[0] = -1;
        wk.push(sign_vector(&s));
    }
    wk.push(c);
    let h0 = TorusDescriptor {
        index: 1,
        label: "H_0".into(),
        frame: frame_of(&reference_frame, &g),
        g,
        sample_points: h0_points,
        wk_generators: Some(wk),
        twist_class: c,
        galois_u_prime: c,
        conj_rule: ConjRule::Theta,
    };
    Ok(Blueprint {
        family: Family::SOeven1,
        params: Params::n(n),
        label: format!("SO({},1)", 2 * n),
        ambient_dim: dim,
        theta_rule: MatrixInvolution::ConjugateBy(signs(2 * n, 1)),
        galois_rule: MatrixInvolution::Conj,
        theta_w: e,
        w_theta: e,
        reference_frame,
        tori: vec![h_fun, h0],
        reference_open_orbit: (1, SignedPerm::transposition(n, 1, n)),
        galois_u: weyl.longest_element(),
        twisted_rule: TwistedRule::ConjW0,
        weyl,
    })
}

/// `U(p, q)` on the complexified side `GL_n`, `n = p + q`, with
/// `θ(x) = J x J` and Galois action `x -> J (x̄^T)^{-1} J`,
/// `J = diag(I_p, -I_q)`. The reference torus is the diagonal one, `H_q`.
fn upq(p: usize, q: usize) -> Result<Blueprint> {
    if p < q {
        return Err(Error::InvalidParams(format!("U(p,q) needs p ≥ q, got p={p}, q={q}")));
    }
    let n = p + q;
    if n == 0 {
        return Err(Error::InvalidParams("U(p,q) needs p + q ≥ 1".into()));
    }
    check_rank(n)?;
    let weyl = WeylDescriptor::type_a(n)?;
    let reference_frame = TorusFrame::diagonal(n)?;
    let j = signs(p, q);
    let mut tori = Vec::new();
    for i in 0..=q {
        let off = p - q + i;
        // 1-based pairs (p-q+i+j, n-q+i+j), j = 1..q-i
        let pairs: Vec<(usize, usize)> = (1..=q - i).map(|k| (off + k, n - q + i + k)).collect();
        let zero_based: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        let g = with_blocks(n, &zero_based, &b_split());
        let c = transpositions(n, &pairs);
        let t = |a: usize, b: usize| SignedPerm::transposition(n, a, b);
        let mut wk: Vec<SignedPerm> = (1..off).map(|k| t(k, k + 1)).collect();
        wk.extend(pairs.windows(2).map(|w| t(w[0].0, w[1].0) * t(w[0].1, w[1].1)));
        wk.extend(pairs.iter().map(|&(a, b)| t(a, b)));
        wk.extend((p + 1..p + i).map(|k| t(k, k + 1)));
        let mut sample_points: Vec<ExactMatrix> =
            (0..off).chain(p..p + i).map(|k| diag_point(n, k)).collect();
        sample_points.extend(zero_based.iter().map(|pr| with_blocks(n, &[*pr], &split_point())));
        tori.push(TorusDescriptor {
            index: i,
            label: format!("H_{i}"),
            frame: frame_of(&reference_frame, &g),
            g,
            sample_points,
            wk_generators: Some(wk),
            twist_class: c,
            galois_u_prime: c,
            conj_rule: ConjRule::Theta,
        });
    }
    // w*(j) = p-q+j, w*(n+1-j) = p+j for j ≤ q; the rest in increasing order
    let mut one_line = vec![0usize; n];
    for k in 1..=q {
        one_line[k - 1] = p - q + k;
        one_line[n - k] = p + k;
    }
    let mut rest = 1..=p - q;
    for slot in one_line.iter_mut().filter(|x| **x == 0) {
        *slot = rest.next().expect("p - q free values");
    }
    let wstar = SignedPerm::from_one_line(&one_line)?;
    let e = weyl.identity();
    Ok(Blueprint {
        family: Family::Upq,
        params: Params::pq(p, q),
        label: format!("U({p},{q})"),
        ambient_dim: n,
        theta_rule: MatrixInvolution::ConjugateBy(j.clone()),
        galois_rule: MatrixInvolution::Compose(vec![MatrixInvolution::Conj, MatrixInvolution::InverseTransposeBy(j)]),
        theta_w: e,
        w_theta: e,
        reference_frame,
        tori,
        reference_open_orbit: (0, wstar),
        galois_u: weyl.longest_element(),
        twisted_rule: TwistedRule::TwistConj,
        weyl,
    })
}

/// Weil restriction of `GL_m` along `k'/k`, realised on `GL_m × GL_m`
/// (block diagonal in `GL_{2m}`) with θ the factor swap.
fn restriction(m: usize) -> Result<Blueprint> {
    if m == 0 {
        return Err(Error::InvalidParams("restriction needs m ≥ 1".into()));
    }
    let dim = 2 * m;
    check_rank(dim)?;
    let mut roots = type_a_roots(dim, &(0..m).collect::<Vec<_>>());
    roots.extend(type_a_roots(dim, &(m..dim).collect::<Vec<_>>()));
    let weyl = WeylDescriptor::custom(dim, roots)?;
    let swap = SignedPerm::from_one_line(&(0..dim).map(|j| (j + m) % dim + 1).collect::<Vec<_>>())?;
    let mut p = ExactMatrix::zeros(dim);
    for j in 0..dim {
        p[((j + m) % dim, j)] = re(1, 0);
    }
    let reference_frame = TorusFrame::diagonal(dim)?;
    let e = weyl.identity();
    let torus = TorusDescriptor {
        index: 0,
        label: "H".into(),
        g: ExactMatrix::identity(dim),
        frame: reference_frame.clone(),
        sample_points: (0..dim).map(|k| diag_point(dim, k)).collect(),
        wk_generators: None,
        twist_class: e,
        galois_u_prime: e,
        conj_rule: ConjRule::Identity,
    };
    // (e, w0) in W(GL_m)^2
    let rep = SignedPerm::from_one_line(&(0..dim).map(|j| if j < m { j + 1 } else { 3 * m - j }).collect::<Vec<_>>())?;
    Ok(Blueprint {
        family: Family::Restriction,
        params: Params::n(m),
        label: format!("Res GL_{m}"),
        ambient_dim: dim,
        theta_rule: MatrixInvolution::ConjugateBy(p.clone()),
        galois_rule: MatrixInvolution::Compose(vec![MatrixInvolution::Conj, MatrixInvolution::ConjugateBy(p)]),
        theta_w: swap,
        w_theta: e,
        reference_frame,
        tori: vec![torus],
        reference_open_orbit: (0, rep),
        galois_u: e,
        twisted_rule: TwistedRule::InverseTwist { w_c: e },
        weyl,
    })
}
