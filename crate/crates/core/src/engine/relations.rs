//! Defining relations as unnormalized word identities.

use super::rules::{laurent_word, odd_word, trig_commutator_terms};
use super::{Algebra, Kind, Letter};
use crate::scalar::Scalar;
use crate::structure::Permutation;

/// A formal linear combination of generator words.
pub type Formal = Vec<(Scalar, Vec<Letter>)>;

/// One relation instance `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub lhs: Formal,
    pub rhs: Formal,
}

impl Relation {
    fn new(id: String, lhs: Formal, rhs: Formal) -> Self {
        Relation { id, lhs, rhs }
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Formal {
        let mut out = self.lhs.clone();
        out.extend(self.rhs.iter().map(|(c, w)| (-c, w.clone())));
        out
    }
}

fn one() -> Scalar {
    Scalar::one()
}

fn w(word: &[Letter]) -> Formal {
    vec![(one(), word.to_vec())]
}

fn signed(sign: i64, word: &[Letter]) -> Formal {
    vec![(Scalar::from_int(sign), word.to_vec())]
}

fn identity() -> Formal {
    vec![(one(), vec![])]
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `a*b - b*a` as a formal combination.
fn commutator(a: &[Letter], b: &[Letter]) -> Formal {
    vec![(one(), cat(&[a, b])), (-one(), cat(&[b, a]))]
}

struct Builder<'a> {
    alg: &'a Algebra,
    out: Vec<Relation>,
}

impl Builder<'_> {
    fn push(&mut self, id: String, lhs: Formal, rhs: Formal) {
        self.out.push(Relation::new(id, lhs, rhs));
    }

    fn n(&self) -> usize {
        self.alg.n()
    }

    fn group(&self, k: usize) -> Letter {
        if self.alg.kind().is_spin() {
            Letter::T(k as u8)
        } else {
            Letter::S(k as u8)
        }
    }

    fn perm_word(&self, p: &Permutation) -> Vec<Letter> {
        p.canonical_word().into_iter().map(|k| self.group(k as usize)).collect()
    }

    fn coxeter(&mut self) {
        let n = self.n();
        let spin = self.alg.kind().is_spin();
        let name = if spin { "t" } else { "s" };
        for i in 0..n.saturating_sub(1) {
            let g = self.group(i);
            self.push(format!("{name}{}^2=1", i + 1), w(&[g, g]), identity());
            if i + 2 < n {
                let h = self.group(i + 1);
                self.push(format!("braid({name}{},{name}{})", i + 1, i + 2), w(&[g, h, g]), w(&[h, g, h]));
            }
            for j in i + 2..n - 1 {
                let h = self.group(j);
                let sign = if spin { -1 } else { 1 };
                self.push(format!("far({name}{},{name}{})", i + 1, j + 1), w(&[g, h]), signed(sign, &[h, g]));
            }
        }
    }

    fn clifford(&mut self) {
        let n = self.n();
        self.clifford_with(n, Letter::C, "c");
        for p in Permutation::all(n) {
            let pw = self.perm_word(&p);
            for i in 0..n {
                let lhs = cat(&[&pw, &[Letter::C(i as u8)]]);
                let rhs = cat(&[&[Letter::C(p.apply0(i) as u8)], &pw]);
                self.push(format!("sigma{:?}*c{}", p.one_line(), i + 1), w(&lhs), w(&rhs));
            }
        }
    }

    fn clifford_with(&mut self, n: usize, c: fn(u8) -> Letter, name: &str) {
        for i in 0..n {
            let ci = c(i as u8);
            self.push(format!("{name}{}^2=1", i + 1), w(&[ci, ci]), identity());
            for j in i + 1..n {
                let cj = c(j as u8);
                self.push(format!("{name}{}{name}{}=-{name}{}{name}{}", i + 1, j + 1, j + 1, i + 1), w(&[ci, cj]), signed(-1, &[cj, ci]));
            }
        }
    }

    /// Pairwise (anti)commutation inside one family.
    fn family_commute(&mut self, l: fn(u8) -> Letter, name: &str, sign: i64) {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (l(i as u8), l(j as u8));
                self.push(format!("{name}{}{name}{}", i + 1, j + 1), w(&[a, b]), signed(sign, &[b, a]));
            }
        }
    }

    /// `σ g_i = g_{σ i} σ` for every `σ`.
    fn equivariant(&mut self, l: fn(u8) -> Letter, name: &str) {
        let n = self.n();
        for p in Permutation::all(n) {
            let pw = self.perm_word(&p);
            for i in 0..n {
                let lhs = cat(&[&pw, &[l(i as u8)]]);
                let rhs = cat(&[&[l(p.apply0(i) as u8)], &pw]);
                self.push(format!("sigma{:?}*{name}{}", p.one_line(), i + 1), w(&lhs), w(&rhs));
            }
        }
    }

    /// `c_j g_i = ± g_i c_j` with sign `-1` exactly when `i = j` and `anti_diag`.
    fn clifford_action(&mut self, l: fn(u8) -> Letter, name: &str, anti_diag: bool) {
        let n = self.n();
        for j in 0..n {
            for i in 0..n {
                let sign = if anti_diag && i == j { -1 } else { 1 };
                let (c, g) = (Letter::C(j as u8), l(i as u8));
                self.push(format!("c{}{name}{}", j + 1, i + 1), w(&[c, g]), signed(sign, &[g, c]));
            }
        }
    }

    fn spin_action(&mut self, l: fn(u8) -> Letter, name: &str, odd: bool) {
        // t_i g_i = ±g_{i+1} t_i, t_j g_i = ±g_i t_j for i ≠ j, j+1
        let n = self.n();
        let sign = if odd { -1 } else { 1 };
        for k in 0..n.saturating_sub(1) {
            let t = Letter::T(k as u8);
            for i in 0..n {
                let target = if i == k {
                    k + 1
                } else if i == k + 1 {
                    continue;
                } else {
                    i
                };
                self.push(
                    format!("t{}{name}{}", k + 1, i + 1),
                    w(&[t, l(i as u8)]),
                    signed(sign, &[l(target as u8), t]),
                );
            }
        }
    }

    fn laurent(&mut self) {
        let n = self.n();
        for i in 0..n {
            let (e, ei) = (Letter::E(i as u8), Letter::EInv(i as u8));
            self.push(format!("e{}einv{}=1", i + 1, i + 1), w(&[e, ei]), identity());
            self.push(format!("einv{}e{}=1", i + 1, i + 1), w(&[ei, e]), identity());
        }
        self.family_commute(Letter::E, "e", 1);
    }

    fn trig_commutators(&mut self, spin: bool) {
        let n = self.n();
        let u = self.alg.u();
        let total = 3usize.pow(n as u32);
        let name = if spin { "zeta" } else { "epsv" };
        for code in 1..total {
            let mut eta = vec![0i64; n];
            let mut c = code;
            for e in eta.iter_mut() {
                *e = (c % 3) as i64 - 1;
                c /= 3;
            }
            if eta.iter().all(|&e| e == 0) {
                continue;
            }
            let ew = laurent_word(&eta);
            for i in 0..n {
                let l = if spin { Letter::Zeta(i as u8) } else { Letter::EpsV(i as u8) };
                self.push(
                    format!("[{name}{},e^{:?}]", i + 1, eta),
                    commutator(&[l], &ew),
                    trig_commutator_terms(n, spin, i, &eta, &u),
                );
            }
        }
    }

    fn transposition(&self, a: usize, b: usize) -> Vec<Letter> {
        self.alg.transposition_word(a, b)
    }
}

/// All defining relation instances of `alg` over every valid index tuple.
pub fn defining_relations(alg: &Algebra) -> Vec<Relation> {
    let mut b = Builder { alg, out: Vec::new() };
    let n = alg.n();
    let kind = alg.kind();
    let u = alg.u();
    b.coxeter();
    if kind.has_clifford() {
        b.clifford();
    }
    match kind {
        Kind::Sym | Kind::CliffordSym | Kind::SpinSym => {}
        Kind::AffineHC => {
            b.family_commute(Letter::A, "a", 1);
            b.clifford_action(Letter::A, "a", true);
            for i in 0..n.saturating_sub(1) {
                let s = Letter::S(i as u8);
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    let a = Letter::A(j as u8);
                    b.push(format!("a{}s{}", j + 1, i + 1), w(&[a, s]), w(&[s, a]));
                }
                let (a0, a1) = (Letter::A(i as u8), Letter::A(i as u8 + 1));
                let (c0, c1) = (Letter::C(i as u8), Letter::C(i as u8 + 1));
                b.push(
                    format!("a{}s{}-s{}a{}", i + 2, i + 1, i + 1, i + 1),
                    vec![(one(), vec![a1, s]), (-one(), vec![s, a0])],
                    vec![(one(), vec![]), (-one(), vec![c1, c0])],
                );
            }
        }
        Kind::SpinAffine => {
            b.family_commute(Letter::B, "b", -1);
            for i in 0..n.saturating_sub(1) {
                let t = Letter::T(i as u8);
                let (b0, b1) = (Letter::B(i as u8), Letter::B(i as u8 + 1));
                b.push(format!("b{}t{}+t{}b{}", i + 2, i + 1, i + 1, i + 1), w(&[b1, t]), vec![(-one(), vec![t, b0]), (one(), vec![])]);
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    let bj = Letter::B(j as u8);
                    b.push(format!("t{}b{}", i + 1, j + 1), w(&[t, bj]), signed(-1, &[bj, t]));
                }
            }
        }
        Kind::DaHCa => {
            b.family_commute(Letter::X, "x", 1);
            b.family_commute(Letter::Y, "y", 1);
            b.equivariant(Letter::X, "x");
            b.equivariant(Letter::Y, "y");
            b.clifford_action(Letter::X, "x", true);
            b.clifford_action(Letter::Y, "y", false);
            for j in 0..n {
                for i in 0..n {
                    let (y, x) = (Letter::Y(j as u8), Letter::X(i as u8));
                    let pairs: Vec<(usize, usize, Scalar)> = if i != j {
                        vec![(j, i, u.clone())]
                    } else {
                        (0..n).filter(|&k| k != i).map(|k| (k, i, -&u)).collect()
                    };
                    let mut rhs = Formal::new();
                    for (p, q, coef) in pairs {
                        let s = b.transposition(p, q);
                        rhs.push((coef.clone(), s.clone()));
                        rhs.push((coef, cat(&[&[Letter::C(p as u8), Letter::C(q as u8)], &s])));
                    }
                    b.push(format!("[y{},x{}]", j + 1, i + 1), commutator(&[y], &[x]), rhs);
                }
            }
        }
        Kind::SDaHa => {
            b.family_commute(Letter::Xi, "xi", -1);
            b.family_commute(Letter::Y, "y", 1);
            b.spin_action(Letter::Xi, "xi", true);
            b.spin_action(Letter::Y, "y", false);
            for i in 0..n {
                for j in 0..n {
                    let (y, xi) = (Letter::Y(i as u8), Letter::Xi(j as u8));
                    let others: Vec<usize> = if i != j { vec![j] } else { (0..n).filter(|&k| k != i).collect() };
                    let rhs = others
                        .into_iter()
                        .map(|k| {
                            let (sign, word) = odd_word(i, k);
                            (&u * &Scalar::from_int(sign), word)
                        })
                        .collect();
                    b.push(format!("[y{},xi{}]", i + 1, j + 1), commutator(&[y], &[xi]), rhs);
                }
            }
        }
        Kind::TrigDaHCa => {
            b.laurent();
            b.family_commute(Letter::EpsV, "epsv", 1);
            b.equivariant(Letter::E, "e");
            b.equivariant(Letter::EInv, "einv");
            b.clifford_action(Letter::E, "e", false);
            b.clifford_action(Letter::EpsV, "epsv", true);
            for i in 0..n.saturating_sub(1) {
                let s = Letter::S(i as u8);
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    let e = Letter::EpsV(j as u8);
                    b.push(format!("epsv{}s{}", j + 1, i + 1), w(&[e, s]), w(&[s, e]));
                }
                let (e0, e1) = (Letter::EpsV(i as u8), Letter::EpsV(i as u8 + 1));
                let (c0, c1) = (Letter::C(i as u8), Letter::C(i as u8 + 1));
                b.push(
                    format!("epsv{}s{}-s{}epsv{}", i + 2, i + 1, i + 1, i + 1),
                    vec![(one(), vec![e1, s]), (-one(), vec![s, e0])],
                    vec![(u.clone(), vec![]), (-&u, vec![c1, c0])],
                );
            }
            b.trig_commutators(false);
        }
        Kind::TrigSDaHa => {
            b.laurent();
            b.spin_action(Letter::E, "e", false);
            b.spin_action(Letter::EInv, "einv", false);
            b.family_commute(Letter::Zeta, "zeta", -1);
            for i in 0..n.saturating_sub(1) {
                let t = Letter::T(i as u8);
                let (z0, z1) = (Letter::Zeta(i as u8), Letter::Zeta(i as u8 + 1));
                b.push(
                    format!("zeta{}t{}+t{}zeta{}", i + 2, i + 1, i + 1, i + 1),
                    vec![(one(), vec![z1, t]), (one(), vec![t, z0])],
                    vec![(u.clone(), vec![])],
                );
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    let z = Letter::Zeta(j as u8);
                    b.push(format!("zeta{}t{}", j + 1, i + 1), w(&[z, t]), signed(-1, &[t, z]));
                }
            }
            b.trig_commutators(true);
        }
    }
    if alg.signature().localized {
        for i in 0..n {
            let (y, yi) = (Letter::Y(i as u8), Letter::YInv(i as u8));
            b.push(format!("y{}*y{}^-1=1", i + 1, i + 1), w(&[y, yi]), identity());
            b.push(format!("y{}^-1*y{}=1", i + 1, i + 1), w(&[yi, y]), identity());
        }
    }
    if alg.signature().tensor {
        let inner = b.out.clone();
        b.out.clear();
        b.clifford_with(n, Letter::Outer, "c'");
        for g in alg.generators().into_iter().filter(|g| !matches!(g, Letter::Outer(_))) {
            for j in 0..n {
                let c = Letter::Outer(j as u8);
                let sign = if g.parity() == 1 { -1 } else { 1 };
                b.push(format!("c'{}*{g}", j + 1), w(&[c, g]), signed(sign, &[g, c]));
            }
        }
        b.out.extend(inner);
    }
    b.out
}
