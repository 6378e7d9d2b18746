//! Finite structure: permutations, Clifford words, the spin group basis with
//! its sign cocycle, odd transpositions and Koszul signs.
//!
//! Indices in constructors taking "1-based" arguments follow the usual
//! mathematical labels (`s_1 .. s_{n-1}`, `c_1 .. c_n`). Raw accessors with a
//! `0` suffix use array positions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported rank.
pub const MAX_N: usize = 8;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    images: [u8; MAX_N],
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "rank {n} exceeds {MAX_N}");
        let mut images = [0u8; MAX_N];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Permutation { n: n as u8, images }
    }

    /// From one-line notation with 1-based images.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_N {
            return Err(Error::Invalid(format!("rank {n} exceeds {MAX_N}")));
        }
        let mut p = Self::identity(n);
        let mut seen = [false; MAX_N];
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[img - 1] = true;
            p.images[i] = (img - 1) as u8;
        }
        Ok(p)
    }

    /// The simple transposition `s_i` (1-based, swaps `i` and `i+1`).
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { what: "s_i".into(), index: i, n });
        }
        Ok(Self::identity(n).mul_simple0(i - 1))
    }

    /// The transposition `s_{ij}` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::IndexOutOfRange { what: "s_ij".into(), index: i.max(j), n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn images0(&self) -> &[u8] {
        &self.images[..self.n as usize]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images0().iter().map(|&x| x as usize + 1).collect()
    }

    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// Image of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.apply0(i - 1) + 1
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|i| self.apply0(i) == i)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let mut out = *self;
        for i in 0..self.n() {
            out.images[i] = self.images[other.apply0(i)];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for i in 0..self.n() {
            out.images[self.apply0(i)] = i as u8;
        }
        out
    }

    /// `self ∘ s_k` with `k` 0-based.
    pub(crate) fn mul_simple0(&self, k: usize) -> Permutation {
        let mut out = *self;
        out.images.swap(k, k + 1);
        out
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let im = self.images0();
        let mut count = 0;
        for i in 0..im.len() {
            for j in i + 1..im.len() {
                if im[i] > im[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.n()).filter(|&i| self.apply0(i) != i).collect();
        match moved.as_slice() {
            [i, j] if self.apply0(*i) == *j => Some((i + 1, j + 1)),
            _ => None,
        }
    }

    /// Canonical reduced word as 0-based simple indices (`k` stands for
    /// `s_{k+1}`): descending runs `s_j s_{j-1} .. s_{j-c_j+1}` for
    /// `j = 1 .. n-1`. Every prefix is again a canonical word.
    pub fn canonical_word(&self) -> Vec<u8> {
        let mut runs: Vec<Vec<u8>> = Vec::new();
        let mut rest = *self;
        for m in (1..self.n()).rev() {
            // rest fixes every point above m; c = m - rest^{-1}(m), 0-based
            let pos = rest.inverse().apply0(m);
            let c = m - pos;
            let run: Vec<u8> = (0..c).map(|t| (m - 1 - t) as u8).collect();
            // rest = rest' * run, so rest' = rest * run^{-1}
            for &k in run.iter().rev() {
                rest = rest.mul_simple0(k as usize);
            }
            runs.push(run);
        }
        debug_assert!(rest.is_identity());
        runs.into_iter().rev().flatten().collect()
    }

    /// All permutations of `{1..n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            let mut p = Self::identity(n);
            p.images[..n].copy_from_slice(&cur);
            out.push(p);
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// A canonical Clifford word `c_1^{b_1} .. c_n^{b_n}` stored as a bitmask
/// (bit `k` is `c_{k+1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CliffordWord(pub u16);

impl CliffordWord {
    pub fn empty() -> Self {
        CliffordWord(0)
    }

    /// Single generator `c_i`, 1-based.
    pub fn generator(i: usize) -> Self {
        CliffordWord(1 << (i - 1))
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        CliffordWord(indices.iter().fold(0u16, |acc, &i| acc | (1 << (i - 1))))
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..16).filter(|k| self.0 >> k & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn parity(&self) -> u8 {
        (self.0.count_ones() % 2) as u8
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

/// Product of two canonical Clifford words: `a * b = sign * word`.
pub fn clifford_mul(a: CliffordWord, b: CliffordWord) -> (i8, CliffordWord) {
    (clifford_sign(a.0, b.0), CliffordWord(a.0 ^ b.0))
}

/// Sign from moving each letter of `b` left past the larger letters of `a`.
#[inline]
pub(crate) fn clifford_sign(a: u16, b: u16) -> i8 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `σ c_{j_1} .. c_{j_k} σ^{-1} = c_{σ j_1} .. c_{σ j_k}`, returned as a sign
/// times a canonical word.
pub fn perm_conjugate_clifford(p: &Permutation, w: CliffordWord) -> (i8, CliffordWord) {
    let mut targets: Vec<usize> = Vec::with_capacity(w.len());
    let mut rest = w.0;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        targets.push(p.apply0(j));
        rest &= rest - 1;
    }
    let mut inversions = 0;
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            if targets[i] > targets[j] {
                inversions += 1;
            }
        }
    }
    let word = targets.iter().fold(0u16, |acc, &t| acc | (1 << t));
    (if inversions % 2 == 0 { 1 } else { -1 }, CliffordWord(word))
}

/// `(-1)^{pq}` for parities `p, q ∈ {0, 1}`.
pub fn koszul_sign(p: u8, q: u8) -> i8 {
    if p & q & 1 == 1 {
        -1
    } else {
        1
    }
}

/// Dense element of the Clifford algebra with integer coefficients, indexed
/// by word bitmask.
type CliffVec = Vec<i64>;

fn cliff_vec_mul(a: &CliffVec, b: &CliffVec) -> CliffVec {
    let mut out = vec![0i64; a.len()];
    for (wa, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (wb, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let s = clifford_sign(wa as u16, wb as u16) as i64;
            out[wa ^ wb] += s * x * y;
        }
    }
    out
}

fn cliff_vec_conjugate(p: &Permutation, a: &CliffVec) -> CliffVec {
    let mut out = vec![0i64; a.len()];
    for (w, &x) in a.iter().enumerate() {
        if x != 0 {
            let (s, w2) = perm_conjugate_clifford(p, CliffordWord(w as u16));
            out[w2.0 as usize] += s as i64 * x;
        }
    }
    out
}

/// The sign cocycle of the spin symmetric group algebra for a fixed rank.
///
/// `t_σ` is the product of the `t_i` along [`Permutation::canonical_word`].
/// Signs come from the faithful Clifford model
/// `t_i ↦ w^{-1} (c_{i+1} - c_i) s_i` inside `C_n ⋊ S_n`.
pub struct SpinCocycle {
    n: usize,
    images: Mutex<HashMap<Permutation, Arc<CliffVec>>>,
}

impl SpinCocycle {
    /// Shared instance for rank `n`.
    pub fn for_rank(n: usize) -> Arc<SpinCocycle> {
        static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<SpinCocycle>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        reg.lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::new(SpinCocycle { n, images: Mutex::new(HashMap::new()) }))
            .clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clifford part `A_σ` of the (unscaled) model image `A_σ σ` of `t_σ`.
    fn model(&self, sigma: &Permutation) -> Arc<CliffVec> {
        if let Some(v) = self.images.lock().unwrap().get(sigma) {
            return v.clone();
        }
        let dim = 1usize << self.n;
        let mut acc: CliffVec = vec![0; dim];
        acc[0] = 1;
        let mut pi = Permutation::identity(self.n);
        for k in sigma.canonical_word() {
            let k = k as usize;
            let mut gen: CliffVec = vec![0; dim];
            gen[1 << (k + 1)] = 1;
            gen[1 << k] = -1;
            acc = cliff_vec_mul(&acc, &cliff_vec_conjugate(&pi, &gen));
            pi = pi.mul_simple0(k);
        }
        let v = Arc::new(acc);
        self.images.lock().unwrap().insert(*sigma, v.clone());
        v
    }

    /// `β(σ, τ)` with `t_σ t_τ = β(σ, τ) t_{στ}`.
    pub fn beta(&self, sigma: &Permutation, tau: &Permutation) -> i8 {
        let st = sigma.compose_unchecked(tau);
        let lhs = cliff_vec_mul(&self.model(sigma), &cliff_vec_conjugate(sigma, &self.model(tau)));
        let rhs = self.model(&st);
        let m = (sigma.length() + tau.length() - st.length()) / 2;
        let (w, &r) = rhs.iter().enumerate().find(|(_, &x)| x != 0).expect("model image is nonzero");
        let l = lhs[w];
        // lambda = l / r and beta = lambda / (-2)^m
        let scale = (-2i64).pow(m as u32) * r;
        debug_assert!(lhs.iter().zip(rhs.iter()).all(|(&a, &b)| a * r == b * l));
        debug_assert!(l.abs() == scale.abs(), "cocycle value is not a sign");
        if l == scale {
            1
        } else {
            -1
        }
    }

    /// `t_σ t_{s_k}` for 0-based `k`.
    pub(crate) fn mul_simple(&self, sigma: &Permutation, k: usize) -> (i8, Permutation) {
        let s = Permutation::identity(self.n).mul_simple0(k);
        (self.beta(sigma, &s), sigma.mul_simple0(k))
    }
}

/// Basis element `t_σ` of the spin symmetric group algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SpinBasisElement(pub Permutation);

impl SpinBasisElement {
    pub fn parity(&self) -> u8 {
        (self.0.length() % 2) as u8
    }

    pub fn mul(&self, other: &SpinBasisElement) -> Result<(i8, SpinBasisElement)> {
        let st = self.0.compose(&other.0)?;
        let beta = SpinCocycle::for_rank(self.0.n()).beta(&self.0, &other.0);
        Ok((beta, SpinBasisElement(st)))
    }
}

/// `β(s, t)` for the shared cocycle of rank `s.n()`.
pub fn spin_cocycle(s: &Permutation, t: &Permutation) -> Result<i8> {
    if s.n() != t.n() {
        return Err(Error::SizeMismatch { left: s.n(), right: t.n() });
    }
    Ok(SpinCocycle::for_rank(s.n()).beta(s, t))
}

/// The odd transposition `[i, j]` (1-based) as `sign * t_{s_ij}`.
pub fn odd_transposition(i: usize, j: usize, n: usize) -> Result<(i8, Permutation)> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { what: "[i,j]".into(), index: i.max(j), n });
    }
    let (lo, hi, flip) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let cocycle = SpinCocycle::for_rank(n);
    let mut sign: i8 = if (hi - lo - 1) % 2 == 0 { flip } else { -flip };
    let mut perm = Permutation::identity(n);
    for k in odd_transposition_word(lo, hi) {
        let (b, p) = cocycle.mul_simple(&perm, k as usize);
        sign *= b;
        perm = p;
    }
    Ok((sign, perm))
}

/// 0-based simple indices of `t_{j-1} .. t_{i+1} t_i t_{i+1} .. t_{j-1}`
/// for `1 <= i < j` (1-based).
pub(crate) fn odd_transposition_word(i: usize, j: usize) -> Vec<u8> {
    let down = (i..j - 1).rev().map(|k| k as u8);
    let up = (i..j - 1).map(|k| k as u8);
    down.chain(std::iter::once((i - 1) as u8)).chain(up).collect()
}
