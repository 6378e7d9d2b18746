//! Local reordering rules `r · g = Σ coef · word` for a letter `r` whose
//! slot is above the slot of `g`.

use super::{Algebra, Formal, Letter};
use crate::scalar::Scalar;
use crate::structure::Permutation;

type Rule = Vec<(Scalar, Vec<Letter>)>;

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

/// `s_i j` for 0-based simple reflection index `i`.
fn reflect(i: usize, j: usize) -> usize {
    if j == i {
        i + 1
    } else if j == i + 1 {
        i
    } else {
        j
    }
}

impl Algebra {
    pub(crate) fn swap(&self, r: Letter, g: Letter) -> Rule {
        use Letter::*;
        let commute = || vec![(int(1), vec![g, r])];
        let anti = || vec![(int(-1), vec![g, r])];
        match (r, g) {
            // right slot past Clifford
            (Y(_) | YInv(_), C(_)) => commute(),
            (EpsV(k), C(j)) => {
                if k == j {
                    anti()
                } else {
                    commute()
                }
            }
            // right slot past group
            (Y(k) | YInv(k), S(i) | T(i)) => {
                let (i, k) = (i as usize, k as usize);
                vec![(int(1), vec![g, r.with_index(reflect(i, k))])]
            }
            (EpsV(k), S(i)) => {
                let (i, k) = (i as usize, k as usize);
                let c = |a: usize| C(a as u8);
                if k != i && k != i + 1 {
                    commute()
                } else if k == i + 1 {
                    // ε_{i+1} s_i = s_i ε_i + u - u c_{i+1} c_i
                    vec![
                        (int(1), vec![g, EpsV(i as u8)]),
                        (self.u(), vec![]),
                        (-self.u(), vec![c(i + 1), c(i)]),
                    ]
                } else {
                    vec![
                        (int(1), vec![g, EpsV((i + 1) as u8)]),
                        (-self.u(), vec![]),
                        (self.u(), vec![c(i), c(i + 1)]),
                    ]
                }
            }
            (Zeta(k), T(i)) => {
                let (i, k) = (i as usize, k as usize);
                if k != i && k != i + 1 {
                    anti()
                } else {
                    vec![(int(-1), vec![g, Zeta(reflect(i, k) as u8)]), (self.u(), vec![])]
                }
            }
            // right slot past left slot
            (Y(k), X(j)) => {
                let mut out = vec![(int(1), vec![g, r])];
                out.extend(self.yx_correction(k as usize, j as usize));
                out
            }
            (Y(k), Xi(j)) => {
                let mut out = vec![(int(1), vec![g, r])];
                out.extend(self.yxi_correction(k as usize, j as usize));
                out
            }
            (YInv(k), X(_) | Xi(_)) => {
                // y^-1 g = g y^-1 - y^-1 [y, g] y^-1
                let (k, j) = (k as usize, g.index());
                let corr = if matches!(g, X(_)) { self.yx_correction(k, j) } else { self.yxi_correction(k, j) };
                let mut out = vec![(int(1), vec![g, r])];
                for (c, w) in corr {
                    let mut word = vec![r];
                    word.extend(w);
                    word.push(r);
                    out.push((-c, word));
                }
                out
            }
            (EpsV(k) | Zeta(k), E(_) | EInv(_)) => {
                let mut eta = vec![0i64; self.n()];
                eta[g.index()] = if matches!(g, E(_)) { 1 } else { -1 };
                let mut out = vec![(int(1), vec![g, r])];
                out.extend(trig_commutator_terms(self.n(), matches!(r, Zeta(_)), k as usize, &eta, &self.u()));
                out
            }
            // Clifford past group
            (C(k), S(i)) => vec![(int(1), vec![g, C(reflect(i as usize, k as usize) as u8)])],
            // Clifford past left slot
            (C(k), X(j) | A(j)) => {
                if k == j {
                    anti()
                } else {
                    commute()
                }
            }
            (C(_), E(_) | EInv(_)) => commute(),
            // group past left slot
            (S(i), X(j) | E(j) | EInv(j)) => {
                vec![(int(1), vec![g.with_index(reflect(i as usize, j as usize)), r])]
            }
            (S(i), A(j)) => {
                let (i, j) = (i as usize, j as usize);
                let c = |a: usize| C(a as u8);
                if j != i && j != i + 1 {
                    commute()
                } else if j == i {
                    // s_i a_i = a_{i+1} s_i - 1 + c_{i+1} c_i
                    vec![(int(1), vec![A((i + 1) as u8), r]), (int(-1), vec![]), (int(1), vec![c(i + 1), c(i)])]
                } else {
                    vec![(int(1), vec![A(i as u8), r]), (int(1), vec![]), (int(-1), vec![c(i), c(i + 1)])]
                }
            }
            (T(i), B(j)) => {
                let (i, j) = (i as usize, j as usize);
                if j != i && j != i + 1 {
                    anti()
                } else {
                    vec![(int(-1), vec![B(reflect(i, j) as u8), r]), (int(1), vec![])]
                }
            }
            (T(i), Xi(j)) => vec![(int(-1), vec![Xi(reflect(i as usize, j as usize) as u8), r])],
            (T(i), E(j) | EInv(j)) => {
                vec![(int(1), vec![g.with_index(reflect(i as usize, j as usize)), r])]
            }
            _ => unreachable!("no reordering rule for {r:?} * {g:?} in {}", self.name()),
        }
    }

    /// `[y_k, x_j]` as words.
    pub(crate) fn yx_correction(&self, k: usize, j: usize) -> Formal {
        let u = self.u();
        let term = |a: usize, b: usize, coef: &Scalar| -> Formal {
            // coef * (1 + c_a c_b) s_{ab}
            let s = self.transposition_word(a, b);
            let mut cs = vec![Letter::C(a as u8), Letter::C(b as u8)];
            cs.extend(s.iter().copied());
            vec![(coef.clone(), s), (coef.clone(), cs)]
        };
        if k != j {
            term(k, j, &u)
        } else {
            (0..self.n()).filter(|&l| l != k).flat_map(|l| term(l, k, &-&u)).collect()
        }
    }

    /// `[y_k, ξ_j]` as words.
    pub(crate) fn yxi_correction(&self, k: usize, j: usize) -> Formal {
        let u = self.u();
        let others: Vec<usize> = if k != j { vec![j] } else { (0..self.n()).filter(|&l| l != k).collect() };
        others
            .into_iter()
            .map(|l| {
                let (sign, w) = self.odd_transposition_word(k, l);
                (&u * &int(sign), w)
            })
            .collect()
    }
}

/// The closed form of `[ε^∨_i, e^η]` (or `[ζ_i, e^η]` when `spin`), with
/// 0-based `i`, as a combination of words `e^{…} · (1 - c_i c_k) s_{ki}`
/// (resp. `e^{…} · [k, i]`).
///
/// Each summand `sgn(k-i) (e^η - e^{s_{ki}η}) / (1 - e^{sgn(k-i)(ε_k-ε_i)})`
/// equals `X_{min(i,k)} · e^{rest} · (X_i^p X_k^q - X_i^q X_k^p)/(X_i - X_k)`
/// with `p = η_i`, `q = η_k`, which is expanded by a finite geometric sum.
pub fn trig_commutator_terms(n: usize, spin: bool, i: usize, eta: &[i64], u: &Scalar) -> Formal {
    let mut out = Formal::new();
    for k in (0..n).filter(|&k| k != i) {
        let (p, q) = (eta[i], eta[k]);
        if p == q {
            continue;
        }
        // (A^p B^q - A^q B^p)/(A - B) = sign (AB)^lo Σ_{a+b=hi-lo-1} A^a B^b
        let (hi, lo, sign) = if p > q { (p, q, 1) } else { (q, p, -1) };
        let tail: Vec<Letter> = if spin {
            Vec::new()
        } else {
            let kk = k.min(i);
            let kx = k.max(i);
            let s = Permutation::transposition(n, kk + 1, kx + 1).expect("valid").canonical_word();
            s.into_iter().map(Letter::S).collect()
        };
        for a in 0..(hi - lo) {
            let b = hi - lo - 1 - a;
            let mut exps = eta.to_vec();
            exps[i] = lo + a;
            exps[k] = lo + b;
            exps[i.min(k)] += 1;
            let e_word = laurent_word(&exps);
            let coef = u * &int(sign);
            if spin {
                // [k, i]
                let (s2, w) = odd_word(k, i);
                let mut word = e_word.clone();
                word.extend(w);
                out.push((&coef * &int(s2), word));
            } else {
                let mut w1 = e_word.clone();
                w1.extend(tail.iter().copied());
                out.push((coef.clone(), w1));
                let mut w2 = e_word;
                w2.push(Letter::C(i as u8));
                w2.push(Letter::C(k as u8));
                w2.extend(tail.iter().copied());
                out.push((-&coef, w2));
            }
        }
    }
    out
}

/// Word of `e^η`.
pub(crate) fn laurent_word(eta: &[i64]) -> Vec<Letter> {
    let mut w = Vec::new();
    for (j, &e) in eta.iter().enumerate() {
        let l = if e > 0 { Letter::E(j as u8) } else { Letter::EInv(j as u8) };
        for _ in 0..e.unsigned_abs() {
            w.push(l);
        }
    }
    w
}

/// `[i, j]` (0-based, distinct) as a sign and a word of `t` letters.
pub(crate) fn odd_word(i: usize, j: usize) -> (i64, Vec<Letter>) {
    let (lo, hi, flip) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let sign = if (hi - lo - 1) % 2 == 0 { flip } else { -flip };
    let word = crate::structure::odd_transposition_word(lo + 1, hi + 1).into_iter().map(Letter::T).collect();
    (sign, word)
}
