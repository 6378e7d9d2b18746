//! PBW normal forms for presented superalgebras.
//!
//! Every algebra shares one monomial layout with five slots, read left to
//! right:
//!
//! | slot | content                                   |
//! |------|-------------------------------------------|
//! | 0    | Clifford factor of a tensor product `C_n ⊗ A` |
//! | 1    | `x`, `a`, `b`, `ξ` or Laurent `e^{±ε}` exponents |
//! | 2    | group part (`σ ∈ S_n` or the spin basis `t_σ`) |
//! | 3    | Clifford word `c^ε`                       |
//! | 4    | `y`, `ε^∨` or `ζ` exponents               |
//!
//! A generator is multiplied onto a monomial from the right and bubbled
//! leftwards through the letters of later slots, one adjacent swap at a
//! time ([`rules`]). Swap outputs carrying correction terms have strictly
//! smaller polynomial degree, so the recursion terminates. Results of
//! `monomial * letter` are memoized per algebra.

mod relations;
mod render;
mod rules;
mod verify;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::scalar::{QOmega, Scalar};
use crate::structure::{clifford_sign, Permutation, SpinCocycle, MAX_N};

pub use relations::{defining_relations, Formal, Relation};
pub use rules::trig_commutator_terms;
pub(crate) use rules::laurent_word;
pub use verify::{confluence_probe, random_monomial, verify_relations, ConfluenceReport};

/// The presented algebras.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    /// Group algebra of `S_n`.
    Sym,
    /// `C_n ⋊ C S_n`.
    CliffordSym,
    /// Spin symmetric group algebra `C S_n^-`.
    SpinSym,
    /// Degenerate affine Hecke-Clifford algebra (generators `a_i`).
    AffineHC,
    /// Degenerate spin affine Hecke algebra (generators `b_i`).
    SpinAffine,
    /// Rational double affine Hecke-Clifford algebra.
    DaHCa,
    /// Rational spin double affine Hecke algebra.
    SDaHa,
    /// Trigonometric double affine Hecke-Clifford algebra.
    TrigDaHCa,
    /// Trigonometric spin double affine Hecke algebra.
    TrigSDaHa,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Sym,
        Kind::CliffordSym,
        Kind::SpinSym,
        Kind::AffineHC,
        Kind::SpinAffine,
        Kind::DaHCa,
        Kind::SDaHa,
        Kind::TrigDaHCa,
        Kind::TrigSDaHa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Sym => "Sym",
            Kind::CliffordSym => "CliffordSym",
            Kind::SpinSym => "SpinSym",
            Kind::AffineHC => "AffineHC",
            Kind::SpinAffine => "SpinAffine",
            Kind::DaHCa => "DaHCa",
            Kind::SDaHa => "SDaHa",
            Kind::TrigDaHCa => "TrigDaHCa",
            Kind::TrigSDaHa => "TrigSDaHa",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        let lower = s.to_ascii_lowercase();
        Kind::ALL
            .iter()
            .copied()
            .find(|k| k.name().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::Invalid(format!("unknown algebra {s:?}")))
    }

    pub fn is_spin(&self) -> bool {
        matches!(self, Kind::SpinSym | Kind::SpinAffine | Kind::SDaHa | Kind::TrigSDaHa)
    }

    pub fn has_clifford(&self) -> bool {
        matches!(self, Kind::CliffordSym | Kind::AffineHC | Kind::DaHCa | Kind::TrigDaHCa)
    }

    pub fn is_trig(&self) -> bool {
        matches!(self, Kind::TrigDaHCa | Kind::TrigSDaHa)
    }

    pub fn is_parameterized(&self) -> bool {
        matches!(self, Kind::DaHCa | Kind::SDaHa | Kind::TrigDaHCa | Kind::TrigSDaHa)
    }

    fn left_anticommuting(&self) -> bool {
        matches!(self, Kind::SpinAffine | Kind::SDaHa)
    }

    fn right_anticommuting(&self) -> bool {
        matches!(self, Kind::TrigSDaHa)
    }
}

/// A generator letter; indices are 0-based (`S(k)` is `s_{k+1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Letter {
    /// `c_i ⊗ 1` in a tensor product `C_n ⊗ A`.
    Outer(u8),
    X(u8),
    A(u8),
    B(u8),
    Xi(u8),
    E(u8),
    EInv(u8),
    S(u8),
    T(u8),
    C(u8),
    Y(u8),
    YInv(u8),
    EpsV(u8),
    Zeta(u8),
}

impl Letter {
    pub fn slot(&self) -> u8 {
        use Letter::*;
        match self {
            Outer(_) => 0,
            X(_) | A(_) | B(_) | Xi(_) | E(_) | EInv(_) => 1,
            S(_) | T(_) => 2,
            C(_) => 3,
            Y(_) | YInv(_) | EpsV(_) | Zeta(_) => 4,
        }
    }

    pub fn parity(&self) -> u8 {
        use Letter::*;
        match self {
            Outer(_) | B(_) | Xi(_) | T(_) | C(_) | Zeta(_) => 1,
            _ => 0,
        }
    }

    pub fn index(&self) -> usize {
        use Letter::*;
        match *self {
            Outer(i) | X(i) | A(i) | B(i) | Xi(i) | E(i) | EInv(i) | S(i) | T(i) | C(i) | Y(i)
            | YInv(i) | EpsV(i) | Zeta(i) => i as usize,
        }
    }

    pub(crate) fn with_index(&self, i: usize) -> Letter {
        use Letter::*;
        let i = i as u8;
        match self {
            Outer(_) => Outer(i),
            X(_) => X(i),
            A(_) => A(i),
            B(_) => B(i),
            Xi(_) => Xi(i),
            E(_) => E(i),
            EInv(_) => EInv(i),
            S(_) => S(i),
            T(_) => T(i),
            C(_) => C(i),
            Y(_) => Y(i),
            YInv(_) => YInv(i),
            EpsV(_) => EpsV(i),
            Zeta(_) => Zeta(i),
        }
    }

    /// The inverse letter, for invertible generators.
    pub fn inverse(&self) -> Option<Letter> {
        use Letter::*;
        match *self {
            E(i) => Some(EInv(i)),
            EInv(i) => Some(E(i)),
            Y(i) => Some(YInv(i)),
            YInv(i) => Some(Y(i)),
            S(i) => Some(S(i)),
            T(i) => Some(T(i)),
            C(i) => Some(C(i)),
            Outer(i) => Some(Outer(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Letter::*;
        let i = self.index() + 1;
        match self {
            Outer(_) | C(_) => write!(f, "c{i}"),
            X(_) => write!(f, "x{i}"),
            A(_) => write!(f, "a{i}"),
            B(_) => write!(f, "b{i}"),
            Xi(_) => write!(f, "xi{i}"),
            E(_) => write!(f, "e({i})"),
            EInv(_) => write!(f, "einv({i})"),
            S(_) => write!(f, "s{i}"),
            T(_) => write!(f, "t{i}"),
            Y(_) => write!(f, "y{i}"),
            YInv(_) => write!(f, "y{i}^-1"),
            EpsV(_) => write!(f, "epsv({i})"),
            Zeta(_) => write!(f, "zeta({i})"),
        }
    }
}

/// Value of the deformation parameter.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub enum UParam {
    #[default]
    Symbolic,
    Value(QOmega),
}

/// Immutable description of one algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pub kind: Kind,
    pub n: usize,
    /// Realize `C_n ⊗ A` with the Koszul sign rule.
    pub tensor: bool,
    /// Allow negative `y` exponents (`C[y^±] ⊗_{C[y]} A`).
    pub localized: bool,
    pub u: UParam,
}

impl Signature {
    pub fn new(kind: Kind, n: usize) -> Self {
        Signature { kind, n, tensor: false, localized: false, u: UParam::Symbolic }
    }

    /// Reads the form produced by [`Signature::name`] (without a `|u=`
    /// suffix): an optional `Cl(x)` prefix, a kind, an optional `[y^-1]`.
    pub fn parse(s: &str, n: usize) -> Result<Signature> {
        let s = s.trim();
        let (tensor, rest) = match s.get(..5) {
            Some(p) if p.eq_ignore_ascii_case("cl(x)") => (true, &s[5..]),
            _ => (false, s),
        };
        let (localized, rest) = match rest.strip_suffix("[y^-1]") {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let sig = Signature { kind: Kind::parse(rest)?, n, tensor, localized, u: UParam::Symbolic };
        sig.validate()?;
        Ok(sig)
    }

    pub fn tensor(mut self) -> Self {
        self.tensor = true;
        self
    }

    pub fn localized(mut self) -> Self {
        self.localized = true;
        self
    }

    pub fn with_u(mut self, u: UParam) -> Self {
        self.u = u;
        self
    }

    pub fn name(&self) -> String {
        let mut s = String::new();
        if self.tensor {
            s.push_str("Cl(x)");
        }
        s.push_str(self.kind.name());
        if self.localized {
            s.push_str("[y^-1]");
        }
        if let UParam::Value(v) = &self.u {
            s.push_str(&format!("|u={v}"));
        }
        s
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_N {
            return Err(Error::Invalid(format!("rank {} outside 1..={MAX_N}", self.n)));
        }
        if self.tensor && self.kind.has_clifford() {
            return Err(Error::Invalid(format!(
                "tensor factor C_n is only supported for algebras without an inner Clifford slot, not {}",
                self.kind.name()
            )));
        }
        if self.localized && !matches!(self.kind, Kind::DaHCa | Kind::SDaHa) {
            return Err(Error::Invalid(format!("{} has no y-slot to localize", self.kind.name())));
        }
        Ok(())
    }
}

/// A PBW basis monomial. Fields unused by the owning algebra stay at their
/// neutral values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub(crate) outer: u16,
    pub(crate) left: [i16; MAX_N],
    pub(crate) perm: Permutation,
    pub(crate) cliff: u16,
    pub(crate) right: [i16; MAX_N],
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            outer: 0,
            left: [0; MAX_N],
            perm: Permutation::identity(n),
            cliff: 0,
            right: [0; MAX_N],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.outer == 0
            && self.cliff == 0
            && self.left.iter().all(|&e| e == 0)
            && self.right.iter().all(|&e| e == 0)
            && self.perm.is_identity()
    }

    pub fn left_exponents(&self) -> &[i16] {
        &self.left[..self.perm.n()]
    }

    pub fn right_exponents(&self) -> &[i16] {
        &self.right[..self.perm.n()]
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn clifford_bits(&self) -> u16 {
        self.cliff
    }

    pub fn outer_bits(&self) -> u16 {
        self.outer
    }

    /// Total degree of the polynomial slots (absolute values for Laurent
    /// exponents).
    pub fn degree(&self) -> u32 {
        self.left.iter().chain(self.right.iter()).map(|e| e.unsigned_abs() as u32).sum()
    }

    fn top_slot(&self) -> u8 {
        if self.right.iter().any(|&e| e != 0) {
            4
        } else if self.cliff != 0 {
            3
        } else if !self.perm.is_identity() {
            2
        } else if self.left.iter().any(|&e| e != 0) {
            1
        } else {
            0
        }
    }

    fn sort_key(&self) -> impl Ord {
        let deg = std::cmp::Reverse(self.degree());
        let left: Vec<std::cmp::Reverse<i16>> = self.left.iter().map(|&e| std::cmp::Reverse(e)).collect();
        let right: Vec<std::cmp::Reverse<i16>> = self.right.iter().map(|&e| std::cmp::Reverse(e)).collect();
        (
            deg,
            (self.outer.count_ones(), self.outer),
            left,
            (self.perm.length(), self.perm.one_line()),
            (self.cliff.count_ones(), self.cliff),
            right,
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.sort_key().cmp(&other.sort_key())
    }
}

pub(crate) type Terms = Vec<(Monomial, Scalar)>;
type TermMap = HashMap<Monomial, Scalar>;

fn accumulate(map: &mut TermMap, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn sign_scalar(sign: i8) -> Scalar {
    Scalar::from_int(sign as i64)
}

/// A presented algebra together with its multiplication caches.
pub struct Algebra {
    sig: Signature,
    u: Scalar,
    cocycle: Option<Arc<SpinCocycle>>,
    letter_cache: Mutex<HashMap<(Monomial, Letter), Arc<Terms>>>,
    mono_cache: Mutex<HashMap<(Monomial, Monomial), Arc<Terms>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, n={})", self.sig.name(), self.sig.n)
    }
}

impl Algebra {
    pub fn new(kind: Kind, n: usize) -> Result<Arc<Algebra>> {
        Self::from_signature(Signature::new(kind, n))
    }

    pub fn from_signature(sig: Signature) -> Result<Arc<Algebra>> {
        sig.validate()?;
        let u = match &sig.u {
            UParam::Symbolic => Scalar::u(),
            UParam::Value(v) => Scalar::constant(v.clone()),
        };
        let cocycle = sig.kind.is_spin().then(|| SpinCocycle::for_rank(sig.n));
        Ok(Arc::new(Algebra {
            sig,
            u,
            cocycle,
            letter_cache: Mutex::new(HashMap::new()),
            mono_cache: Mutex::new(HashMap::new()),
        }))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn kind(&self) -> Kind {
        self.sig.kind
    }

    pub fn n(&self) -> usize {
        self.sig.n
    }

    pub fn name(&self) -> String {
        self.sig.name()
    }

    /// The deformation parameter as a scalar (symbolic `u` or its value).
    pub fn u(&self) -> Scalar {
        self.u.clone()
    }

    pub fn u_is_zero(&self) -> bool {
        self.u.is_zero()
    }

    /// Whether elements of `other` can be read as elements of `self`.
    pub fn accepts(&self, other: &Algebra) -> bool {
        let (a, b) = (&self.sig, &other.sig);
        a.kind == b.kind && a.n == b.n && a.tensor == b.tensor && a.u == b.u && (a.localized || !b.localized)
    }

    /// Whether `l` is a letter of this algebra.
    pub fn has_letter(&self, l: Letter) -> bool {
        use Letter::*;
        let n = self.sig.n;
        let kind = self.sig.kind;
        let idx_ok = match l {
            S(i) | T(i) => (i as usize) + 1 < n,
            _ => l.index() < n,
        };
        let kind_ok = match l {
            Outer(_) => self.sig.tensor,
            X(_) | Y(_) => kind == Kind::DaHCa || (matches!(l, Y(_)) && kind == Kind::SDaHa),
            YInv(_) => self.sig.localized,
            A(_) => kind == Kind::AffineHC,
            B(_) => kind == Kind::SpinAffine,
            Xi(_) => kind == Kind::SDaHa,
            E(_) | EInv(_) => kind.is_trig(),
            S(_) => !kind.is_spin(),
            T(_) => kind.is_spin(),
            C(_) => kind.has_clifford(),
            EpsV(_) => kind == Kind::TrigDaHCa,
            Zeta(_) => kind == Kind::TrigSDaHa,
        };
        idx_ok && kind_ok
    }

    /// Defining generators, in slot order. Inverse letters are included
    /// for the Laurent and localized slots.
    pub fn generators(&self) -> Vec<Letter> {
        use Letter::*;
        let n = self.sig.n as u8;
        let mut out = Vec::new();
        let ctors: [fn(u8) -> Letter; 14] =
            [Outer, X, A, B, Xi, E, EInv, S, T, C, Y, YInv, EpsV, Zeta];
        for ctor in ctors {
            for i in 0..n {
                let l = ctor(i);
                if self.has_letter(l) {
                    out.push(l);
                }
            }
        }
        out
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        if self.has_letter(l) {
            return Ok(());
        }
        let idx_ok = match l {
            Letter::S(i) | Letter::T(i) => (i as usize) + 1 < self.sig.n,
            _ => l.index() < self.sig.n,
        };
        if !idx_ok && self.has_letter(l.with_index(0)) {
            return Err(Error::IndexOutOfRange {
                what: l.to_string(),
                index: l.index() + 1,
                n: self.sig.n,
            });
        }
        Err(Error::UnknownGenerator { generator: l.to_string(), algebra: self.name() })
    }

    /// Parity of a monomial.
    pub fn monomial_parity(&self, m: &Monomial) -> u8 {
        (m.outer.count_ones() as u8 + self.inner_parity(m)) % 2
    }

    fn inner_parity(&self, m: &Monomial) -> u8 {
        let kind = self.sig.kind;
        let mut p = m.cliff.count_ones();
        if kind.left_anticommuting() {
            p += m.left.iter().map(|&e| e as u32).sum::<u32>();
        }
        if kind.right_anticommuting() {
            p += m.right.iter().map(|&e| e as u32).sum::<u32>();
        }
        if kind.is_spin() {
            p += m.perm.length() as u32;
        }
        (p % 2) as u8
    }

    fn left_letter(&self, i: usize, positive: bool) -> Letter {
        let i = i as u8;
        match self.sig.kind {
            Kind::DaHCa => Letter::X(i),
            Kind::AffineHC => Letter::A(i),
            Kind::SpinAffine => Letter::B(i),
            Kind::SDaHa => Letter::Xi(i),
            Kind::TrigDaHCa | Kind::TrigSDaHa => {
                if positive {
                    Letter::E(i)
                } else {
                    Letter::EInv(i)
                }
            }
            k => unreachable!("{k:?} has no left slot"),
        }
    }

    fn right_letter(&self, i: usize, positive: bool) -> Letter {
        let i = i as u8;
        match self.sig.kind {
            Kind::DaHCa | Kind::SDaHa => {
                if positive {
                    Letter::Y(i)
                } else {
                    Letter::YInv(i)
                }
            }
            Kind::TrigDaHCa => Letter::EpsV(i),
            Kind::TrigSDaHa => Letter::Zeta(i),
            k => unreachable!("{k:?} has no right slot"),
        }
    }

    fn group_letter(&self, k: u8) -> Letter {
        if self.sig.kind.is_spin() {
            Letter::T(k)
        } else {
            Letter::S(k)
        }
    }

    /// The generator word whose product is exactly `m` (coefficient +1).
    pub fn monomial_word(&self, m: &Monomial) -> Vec<Letter> {
        let n = self.sig.n;
        let mut w = Vec::new();
        for i in 0..n {
            if m.outer >> i & 1 == 1 {
                w.push(Letter::Outer(i as u8));
            }
        }
        for i in 0..n {
            let e = m.left[i];
            for _ in 0..e.unsigned_abs() {
                w.push(self.left_letter(i, e > 0));
            }
        }
        for k in m.perm.canonical_word() {
            w.push(self.group_letter(k));
        }
        for i in 0..n {
            if m.cliff >> i & 1 == 1 {
                w.push(Letter::C(i as u8));
            }
        }
        for i in 0..n {
            let e = m.right[i];
            for _ in 0..e.unsigned_abs() {
                w.push(self.right_letter(i, e > 0));
            }
        }
        w
    }

    /// Splits `m = prefix * last` with coefficient +1; `m` must have a
    /// letter outside the tensor slot.
    fn pop_last(&self, m: &Monomial) -> (Monomial, Letter) {
        let mut p = *m;
        match m.top_slot() {
            4 => {
                let i = (0..MAX_N).rev().find(|&i| m.right[i] != 0).unwrap();
                let e = m.right[i];
                p.right[i] -= e.signum();
                (p, self.right_letter(i, e > 0))
            }
            3 => {
                let i = 15 - m.cliff.leading_zeros() as usize;
                p.cliff ^= 1 << i;
                (p, Letter::C(i as u8))
            }
            2 => {
                let k = *m.perm.canonical_word().last().unwrap();
                p.perm = m.perm.mul_simple0(k as usize);
                (p, self.group_letter(k))
            }
            1 => {
                let i = (0..MAX_N).rev().find(|&i| m.left[i] != 0).unwrap();
                let e = m.left[i];
                p.left[i] -= e.signum();
                (p, self.left_letter(i, e > 0))
            }
            _ => unreachable!("pop_last on a monomial without inner letters"),
        }
    }

    /// Multiplies `m` by a letter whose slot is not below the top slot of `m`.
    fn absorb(&self, m: &Monomial, g: Letter) -> (i8, Monomial) {
        use Letter::*;
        let mut out = *m;
        let mut sign = 1i8;
        let flip = |exps: &[i16; MAX_N], i: usize| -> i8 {
            if exps[i + 1..].iter().map(|&e| e as i32).sum::<i32>() % 2 == 0 {
                1
            } else {
                -1
            }
        };
        match g {
            X(i) | A(i) | E(i) => out.left[i as usize] += 1,
            EInv(i) => out.left[i as usize] -= 1,
            B(i) | Xi(i) => {
                sign = flip(&m.left, i as usize);
                out.left[i as usize] += 1;
            }
            S(k) => out.perm = m.perm.mul_simple0(k as usize),
            T(k) => {
                let (b, p) = self.cocycle.as_ref().expect("spin algebra").mul_simple(&m.perm, k as usize);
                sign = b;
                out.perm = p;
            }
            C(i) => {
                sign = clifford_sign(m.cliff, 1 << i);
                out.cliff ^= 1 << i;
            }
            Y(i) | EpsV(i) => out.right[i as usize] += 1,
            YInv(i) => out.right[i as usize] -= 1,
            Zeta(i) => {
                sign = flip(&m.right, i as usize);
                out.right[i as usize] += 1;
            }
            Outer(_) => unreachable!("handled by the caller"),
        }
        (sign, out)
    }

    fn mul_letter(&self, m: &Monomial, g: Letter) -> Arc<Terms> {
        let key = (*m, g);
        if let Some(t) = self.letter_cache.lock().unwrap().get(&key) {
            return t.clone();
        }
        let terms = Arc::new(self.compute_mul_letter(m, g));
        self.letter_cache.lock().unwrap().insert(key, terms.clone());
        terms
    }

    fn compute_mul_letter(&self, m: &Monomial, g: Letter) -> Terms {
        if let Letter::Outer(j) = g {
            // (c' ⊗ m)(c_j ⊗ 1) = (-1)^{|m|} (c' c_j ⊗ m)
            let koszul: i8 = if self.inner_parity(m) == 1 { -1 } else { 1 };
            let mut out = *m;
            let sign = koszul * clifford_sign(m.outer, 1 << j);
            out.outer ^= 1 << j;
            return vec![(out, sign_scalar(sign))];
        }
        if m.top_slot() <= g.slot() {
            let (sign, out) = self.absorb(m, g);
            return vec![(out, sign_scalar(sign))];
        }
        let (prefix, last) = self.pop_last(m);
        let mut acc = TermMap::new();
        for (coef, word) in self.swap(last, g) {
            for (mono, c) in self.mul_mono_word(&prefix, &word) {
                accumulate(&mut acc, mono, &coef * &c);
            }
        }
        acc.into_iter().collect()
    }

    fn mul_mono_word(&self, m: &Monomial, word: &[Letter]) -> TermMap {
        let mut cur = TermMap::new();
        cur.insert(*m, Scalar::one());
        for &g in word {
            let mut next = TermMap::new();
            for (mono, c) in cur {
                for (m2, c2) in self.mul_letter(&mono, g).iter() {
                    accumulate(&mut next, *m2, &c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Arc<Terms> {
        let key = (*a, *b);
        if let Some(t) = self.mono_cache.lock().unwrap().get(&key) {
            return t.clone();
        }
        let word = self.monomial_word(b);
        let terms: Arc<Terms> = Arc::new(self.mul_mono_word(a, &word).into_iter().collect());
        self.mono_cache.lock().unwrap().insert(key, terms.clone());
        terms
    }

    /// Number of memoized products (diagnostics).
    pub fn cache_size(&self) -> usize {
        self.letter_cache.lock().unwrap().len() + self.mono_cache.lock().unwrap().len()
    }

    pub fn one(self: &Arc<Self>) -> Element {
        Element::monomial(self, Monomial::identity(self.sig.n), Scalar::one())
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element::zero(self)
    }

    pub fn scalar(self: &Arc<Self>, s: Scalar) -> Element {
        Element::monomial(self, Monomial::identity(self.sig.n), s)
    }

    /// A single generator letter as an element.
    pub fn letter(self: &Arc<Self>, l: Letter) -> Result<Element> {
        self.check_letter(l)?;
        let terms = self.mul_letter(&Monomial::identity(self.sig.n), l);
        Ok(Element::from_terms(self, terms.iter().cloned()))
    }

    /// Normal form of a generator word.
    pub fn word(self: &Arc<Self>, word: &[Letter]) -> Result<Element> {
        for &l in word {
            self.check_letter(l)?;
        }
        let terms = self.mul_mono_word(&Monomial::identity(self.sig.n), word);
        Ok(Element::from_terms(self, terms))
    }

    /// Normal form of a formal combination of generator words.
    pub fn normal_form(self: &Arc<Self>, expr: &Formal) -> Result<Element> {
        let mut out = self.zero();
        for (c, w) in expr {
            out = &out + &self.word(w)?.scale(c);
        }
        Ok(out)
    }

    /// The group element `σ` (or `t_σ`) as a basis monomial.
    pub fn group_element(self: &Arc<Self>, p: &Permutation) -> Result<Element> {
        if p.n() != self.sig.n {
            return Err(Error::SizeMismatch { left: p.n(), right: self.sig.n });
        }
        if matches!(self.sig.kind, Kind::Sym | Kind::CliffordSym | Kind::SpinSym) || self.sig.n >= 2 {
            if p.is_identity() {
                return Ok(self.one());
            }
            let letter = self.group_letter(0);
            self.check_letter(letter)?;
        }
        let mut m = Monomial::identity(self.sig.n);
        m.perm = *p;
        Ok(Element::monomial(self, m, Scalar::one()))
    }

    /// Word of `s_{ij}` (0-based positions) as simple letters.
    pub(crate) fn transposition_word(&self, i: usize, j: usize) -> Vec<Letter> {
        Permutation::transposition(self.sig.n, i + 1, j + 1)
            .expect("valid transposition")
            .canonical_word()
            .into_iter()
            .map(|k| self.group_letter(k))
            .collect()
    }

    /// `[i, j]` (0-based positions) as a signed word of `t` letters.
    pub(crate) fn odd_transposition_word(&self, i: usize, j: usize) -> (i64, Vec<Letter>) {
        rules::odd_word(i, j)
    }
}

/// 1-based convenience constructors; these panic on invalid indices and
/// are meant for tests and examples. Use [`Algebra::letter`] for checked
/// construction.
macro_rules! gen_ctor {
    ($($name:ident => $letter:ident),* $(,)?) => {
        impl Algebra {
            $(
                pub fn $name(self: &Arc<Self>, i: usize) -> Element {
                    assert!(i >= 1, "generator indices are 1-based");
                    self.letter(Letter::$letter((i - 1) as u8)).unwrap_or_else(|e| panic!("{e}"))
                }
            )*
        }
    };
}

gen_ctor! {
    x => X, y => Y, yinv => YInv, c => C, s => S, t => T, a => A, b => B, xi => Xi,
    e => E, einv => EInv, epsv => EpsV, zeta => Zeta, outer_c => Outer,
}

impl Algebra {
    /// The transposition `s_{ij}` (1-based), non-spin algebras.
    pub fn transposition(self: &Arc<Self>, i: usize, j: usize) -> Result<Element> {
        if self.sig.kind.is_spin() {
            return Err(Error::UnknownGenerator { generator: format!("s({i},{j})"), algebra: self.name() });
        }
        let p = Permutation::transposition(self.sig.n, i, j)?;
        self.group_element(&p)
    }

    /// The odd transposition `[i, j]` (1-based), spin algebras.
    pub fn odd_transposition(self: &Arc<Self>, i: usize, j: usize) -> Result<Element> {
        if !self.sig.kind.is_spin() {
            return Err(Error::UnknownGenerator { generator: format!("tr({i},{j})"), algebra: self.name() });
        }
        let (sign, p) = crate::structure::odd_transposition(i, j, self.sig.n)?;
        Ok(self.group_element(&p)?.scale(&Scalar::from_int(sign as i64)))
    }
}

/// Grading classification of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A finite linear combination of PBW monomials.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Element { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(alg: &Arc<Algebra>, m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(alg);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub(crate) fn from_terms(alg: &Arc<Algebra>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Self::zero(alg);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The scalar part if the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_identity().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.alg);
        }
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.sig == other.alg.sig {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch { left: self.alg.name(), right: other.alg.name() })
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let alg = &self.alg;
        let mut acc = TermMap::new();
        for (mb, cb) in &other.terms {
            for (ma, ca) in &self.terms {
                let cab = ca * cb;
                for (m, c) in alg.mul_monomials(ma, mb).iter() {
                    accumulate(&mut acc, *m, &cab * c);
                }
            }
        }
        Ok(Element::from_terms(alg, acc))
    }

    pub fn pow(&self, k: u32) -> Element {
        (0..k).fold(self.alg.one(), |acc, _| &acc * self)
    }

    /// `ab - ba`.
    pub fn bracket(&self, other: &Element) -> Element {
        &(self * other) - &(other * self)
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &Element) -> Element {
        &(self * other) + &(other * self)
    }

    /// `ab + ba` when `plus`, `ab - ba` otherwise.
    pub fn super_bracket(&self, other: &Element, plus: bool) -> Element {
        if plus {
            self.anticommutator(other)
        } else {
            self.bracket(other)
        }
    }

    pub fn parity(&self) -> Parity {
        let mut seen = [false; 2];
        for m in self.terms.keys() {
            seen[self.alg.monomial_parity(m) as usize] = true;
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            [true, true] => Parity::Mixed,
        }
    }

    /// Reads `self` as an element of `target` (same presentation, possibly
    /// localized).
    pub fn embed_into(&self, target: &Arc<Algebra>) -> Result<Element> {
        if !target.accepts(&self.alg) {
            return Err(Error::AlgebraMismatch { left: self.alg.name(), right: target.name() });
        }
        Ok(Element { alg: target.clone(), terms: self.terms.clone() })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, target: &Arc<Algebra>, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Element> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Specializes `u` to a value, landing in the algebra with that parameter.
    pub fn specialize_u(&self, u0: &QOmega) -> Result<Element> {
        let sig = self.alg.sig.clone().with_u(UParam::Value(u0.clone()));
        let target = Algebra::from_signature(sig)?;
        self.map_coefficients(&target, |c| Ok(Scalar::constant(c.eval(u0)?)))
    }

    /// The first term, rendered, for failure witnesses.
    pub fn witness(&self) -> Option<String> {
        self.terms.iter().next().map(|(m, c)| {
            Element::monomial(&self.alg, *m, c.clone()).to_string()
        })
    }

    /// Maximal total polynomial degree over the terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.alg.sig == other.alg.sig && self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.alg.name(), self)
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned_elem {
    ($tr:ident, $m:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, o: Element) -> Element {
                $tr::$m(&self, &o)
            }
        }
    };
}
forward_owned_elem!(Add, add);
forward_owned_elem!(Sub, sub);
forward_owned_elem!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, e: &Element) -> Element {
        e.scale(self)
    }
}

#[cfg(test)]
mod tests;
