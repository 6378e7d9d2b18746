//! Distinguished elements and identities of the Clifford (non-spin) tower.

use std::sync::Arc;

use crate::engine::{trig_commutator_terms, Algebra, Element, Kind, Letter, Parity};
use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;

pub(crate) fn check_index(alg: &Algebra, what: &str, i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { what: what.to_string(), index: i, n: alg.n() });
    }
    Ok(())
}

fn require(alg: &Algebra, what: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnknownGenerator { generator: what.to_string(), algebra: alg.name() })
    }
}

fn l(alg: &Arc<Algebra>, letter: Letter) -> Result<Element> {
    alg.letter(letter)
}

/// `M_i = Σ_{k<i} (1 - c_i c_k) s_{ki}` (1-based `i`).
pub fn jucys_murphy(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, &format!("M({i})"), alg.kind().has_clifford())?;
    check_index(alg, "M", i, alg.n())?;
    let mut out = alg.zero();
    let ci = l(alg, Letter::C((i - 1) as u8))?;
    for k in 1..i {
        let ck = l(alg, Letter::C((k - 1) as u8))?;
        let s = alg.transposition(k, i)?;
        let factor = &alg.one() - &(&ci * &ck);
        out = &out + &(&factor * &s);
    }
    Ok(out)
}

/// `z_i = u^{-1} y_i x_i + M_i` in the rational DaHCa.
pub fn z_element(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, &format!("z({i})"), alg.kind() == Kind::DaHCa)?;
    check_index(alg, "z", i, alg.n())?;
    if alg.u_is_zero() {
        return Err(Error::NeedsInvertibleU(format!("z({i})")));
    }
    let uinv = alg.u().inv()?;
    let yx = &l(alg, Letter::Y((i - 1) as u8))? * &l(alg, Letter::X((i - 1) as u8))?;
    Ok(&yx.scale(&uinv) + &jucys_murphy(alg, i)?)
}

/// `α x_i + z_i`.
pub fn embedded_generator(alg: &Arc<Algebra>, alpha: &Scalar, i: usize) -> Result<Element> {
    let x = l(alg, Letter::X((i - 1) as u8))?;
    Ok(&x.scale(alpha) + &z_element(alg, i)?)
}

/// `φ_i = s_i (a_i² - a_{i+1}²) + (a_i + a_{i+1}) + c_i c_{i+1} (a_i - a_{i+1})`.
pub fn intertwiner_phi(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, &format!("phi({i})"), alg.kind() == Kind::AffineHC)?;
    check_index(alg, "phi", i, alg.n().saturating_sub(1))?;
    let k = (i - 1) as u8;
    let (a0, a1) = (l(alg, Letter::A(k))?, l(alg, Letter::A(k + 1))?);
    let (c0, c1) = (l(alg, Letter::C(k))?, l(alg, Letter::C(k + 1))?);
    let s = l(alg, Letter::S(k))?;
    let sq = &(&a0 * &a0) - &(&a1 * &a1);
    let sum = &a0 + &a1;
    let diff = &a0 - &a1;
    Ok(&(&(&s * &sq) + &sum) + &(&(&c0 * &c1) * &diff))
}

/// The affine Hecke-Clifford algebra mapped into the rational DaHCa by
/// `a_i ↦ α x_i + z_i`.
pub fn affine_embedding(n: usize, alpha: &Scalar) -> Result<Morphism> {
    let source = Algebra::new(Kind::AffineHC, n)?;
    let target = Algebra::new(Kind::DaHCa, n)?;
    let mut images = Vec::new();
    for g in source.generators() {
        let img = match g {
            Letter::A(i) => embedded_generator(&target, alpha, i as usize + 1)?,
            other => target.letter(other)?,
        };
        images.push((g, img));
    }
    Morphism::new(format!("AffineEmbedding(alpha={alpha})"), source, target, images)
}

/// Substitutes `a_i ↦ α x_i + z_i` into every affine Hecke-Clifford relation.
pub fn affine_embedding_check(n: usize, alpha: &Scalar) -> Result<Report> {
    Ok(affine_embedding(n, alpha)?.check_homomorphism())
}

/// `a_i ↦ M_i`, identity on `C_n ⋊ C S_n`.
pub fn evaluation_hom(n: usize) -> Result<Morphism> {
    let source = Algebra::new(Kind::AffineHC, n)?;
    let target = Algebra::new(Kind::CliffordSym, n)?;
    let mut images = Vec::new();
    for g in source.generators() {
        let img = match g {
            Letter::A(i) => jucys_murphy(&target, i as usize + 1)?,
            other => target.letter(other)?,
        };
        images.push((g, img));
    }
    Morphism::new("Evaluation".to_string(), source, target, images)
}

pub fn evaluation_hom_check(n: usize) -> Result<Report> {
    let hom = evaluation_hom(n)?;
    let mut rep = hom.check_homomorphism();
    let a1 = hom.source().letter(Letter::A(0))?;
    rep.push(CheckResult::zero("a1->0", &hom.apply(&a1)?));
    Ok(rep)
}

/// Checks that `candidate` is even and commutes with every generator.
pub fn center_check(candidate: &Element) -> Report {
    let alg = candidate.algebra();
    let mut rep = Report::new();
    rep.push(match candidate.parity() {
        Parity::Even => CheckResult::pass("even"),
        p => CheckResult::fail("even", format!("parity {p:?}")),
    });
    for g in alg.generators() {
        let ge = alg.letter(g).expect("generator of its own algebra");
        rep.push(CheckResult::zero(format!("[_, {g}]"), &candidate.bracket(&ge)));
    }
    rep
}

/// The rank-two central element `x_1²y_1 + x_2²y_2 - u((x_1+x_2)s_12 + c_1(x_1+x_2)s_12c_1)`.
pub fn rank_two_central(alg: &Arc<Algebra>) -> Result<Element> {
    require(alg, "x", alg.kind() == Kind::DaHCa && alg.n() == 2)?;
    let (x1, x2) = (l(alg, Letter::X(0))?, l(alg, Letter::X(1))?);
    let (s, c1) = (alg.transposition(1, 2)?, l(alg, Letter::C(0))?);
    let xs = &x1 + &x2;
    let base = &(&(&x1 * &x1) * &l(alg, Letter::Y(0))?) + &(&(&x2 * &x2) * &l(alg, Letter::Y(1))?);
    let corr = &(&xs * &s) + &(&(&(&c1 * &xs) * &s) * &c1);
    Ok(&base - &corr.scale(&alg.u()))
}

/// Symmetric power sums `p_k(y)` and `p_k(x²)` for `k ≤ 3`, plus at `u = 0`
/// the diagonal invariants `Σ_i x_i^{2a} y_i^b`, each run through
/// [`center_check`]. Works for the rational DaHCa and sDaHa.
pub fn center_suite(alg: &Arc<Algebra>) -> Result<Report> {
    let left: fn(u8) -> Letter = match alg.kind() {
        Kind::DaHCa => Letter::X,
        Kind::SDaHa => Letter::Xi,
        _ => return Err(Error::Invalid(format!("no center suite for {}", alg.name()))),
    };
    let mut rep = Report::new();
    for k in 1..=3 {
        rep.extend(center_check(&power_sum_y(alg, k)?).prefixed(&format!("p{k}(y): ")));
        rep.extend(center_check(&power_sum_left_squares(alg, k)?).prefixed(&format!("p{k}(sq): ")));
    }
    if alg.u_is_zero() {
        for (a, b) in [(1, 1), (1, 2), (2, 1)] {
            let mut e = alg.zero();
            for i in 0..alg.n() as u8 {
                e = &e + &(&l(alg, left(i))?.pow(2 * a) * &l(alg, Letter::Y(i))?.pow(b));
            }
            rep.extend(center_check(&e).prefixed(&format!("diag(sq^{a}*y^{b}): ")));
        }
    }
    Ok(rep)
}

/// `Σ_i y_i^k`.
pub fn power_sum_y(alg: &Arc<Algebra>, k: u32) -> Result<Element> {
    let mut out = alg.zero();
    for i in 0..alg.n() {
        out = &out + &l(alg, Letter::Y(i as u8))?.pow(k);
    }
    Ok(out)
}

/// `Σ_i g_i^{2k}` for the left polynomial generators `g` (`x` or `ξ`).
pub fn power_sum_left_squares(alg: &Arc<Algebra>, k: u32) -> Result<Element> {
    let ctor: fn(u8) -> Letter = match alg.kind() {
        Kind::DaHCa => Letter::X,
        Kind::SDaHa => Letter::Xi,
        Kind::AffineHC => Letter::A,
        Kind::SpinAffine => Letter::B,
        _ => return Err(Error::UnknownGenerator { generator: "x".into(), algebra: alg.name() }),
    };
    let mut out = alg.zero();
    for i in 0..alg.n() {
        out = &out + &l(alg, ctor(i as u8))?.pow(2 * k);
    }
    Ok(out)
}

fn check_weight(alg: &Algebra, i: usize, eta: &[i64]) -> Result<()> {
    check_index(alg, "epsv", i, alg.n())?;
    if eta.len() != alg.n() {
        return Err(Error::SizeMismatch { left: eta.len(), right: alg.n() });
    }
    Ok(())
}

/// Closed form of `[ε^∨_i, e^η]` (1-based `i`).
pub fn trig_commutator(alg: &Arc<Algebra>, i: usize, eta: &[i64]) -> Result<Element> {
    require(alg, "epsv", alg.kind() == Kind::TrigDaHCa)?;
    check_weight(alg, i, eta)?;
    alg.normal_form(&trig_commutator_terms(alg.n(), false, i - 1, eta, &alg.u()))
}

pub(crate) fn laurent_monomial(alg: &Arc<Algebra>, eta: &[i64]) -> Result<Element> {
    alg.word(&crate::engine::laurent_word(eta))
}

/// `[g_i, e^η]` computed by the rewriting engine from the generator rules.
pub fn trig_commutator_by_rewriting(alg: &Arc<Algebra>, i: usize, eta: &[i64]) -> Result<Element> {
    check_weight(alg, i, eta)?;
    let g = match alg.kind() {
        Kind::TrigDaHCa => Letter::EpsV((i - 1) as u8),
        Kind::TrigSDaHa => Letter::Zeta((i - 1) as u8),
        _ => return Err(Error::UnknownGenerator { generator: "epsv".into(), algebra: alg.name() }),
    };
    Ok(l(alg, g)?.bracket(&laurent_monomial(alg, eta)?))
}

/// `u^{-1} ε^∨_i`, the polynomial generators of the affine Hecke-Clifford
/// subalgebra of the trigonometric DaHCa.
pub fn scaled_epsv(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, "epsv", alg.kind() == Kind::TrigDaHCa)?;
    if alg.u_is_zero() {
        return Err(Error::NeedsInvertibleU(format!("u^-1 epsv({i})")));
    }
    Ok(l(alg, Letter::EpsV((i - 1) as u8))?.scale(&alg.u().inv()?))
}

/// The affine Hecke-Clifford algebra inside the trigonometric DaHCa via
/// `a_i ↦ u^{-1} ε^∨_i`.
pub fn trig_affine_embedding(n: usize) -> Result<Morphism> {
    let source = Algebra::new(Kind::AffineHC, n)?;
    let target = Algebra::new(Kind::TrigDaHCa, n)?;
    let mut images = Vec::new();
    for g in source.generators() {
        let img = match g {
            Letter::A(i) => scaled_epsv(&target, i as usize + 1)?,
            other => target.letter(other)?,
        };
        images.push((g, img));
    }
    Morphism::new("TrigAffineEmbedding".to_string(), source, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Signature, UParam};
    use crate::scalar::QOmega;

    fn dahca(n: usize) -> Arc<Algebra> {
        Algebra::new(Kind::DaHCa, n).unwrap()
    }

    #[test]
    fn jucys_murphy_small() {
        let alg = dahca(3);
        assert!(jucys_murphy(&alg, 1).unwrap().is_zero());
        assert_eq!(jucys_murphy(&alg, 2).unwrap().to_string(), "s12 - s12*c1*c2");
        let (m2, m3) = (jucys_murphy(&alg, 2).unwrap(), jucys_murphy(&alg, 3).unwrap());
        assert!(m2.bracket(&m3).is_zero());
        assert!(jucys_murphy(&alg, 4).is_err());
    }

    #[test]
    fn z_family_identities() {
        let alg = dahca(3);
        for i in 1..=3 {
            for j in 1..=3 {
                let (zi, zj) = (z_element(&alg, i).unwrap(), z_element(&alg, j).unwrap());
                assert!(zi.bracket(&zj).is_zero());
                let mixed = &alg.x(i).bracket(&zj) - &alg.x(j).bracket(&zi);
                assert!(mixed.is_zero());
            }
        }
        let alg2 = dahca(2);
        let r = &alg2.y(1).bracket(&z_element(&alg2, 2).unwrap()) - &alg2.y(2).bracket(&z_element(&alg2, 1).unwrap());
        assert!(!r.is_zero());
    }

    #[test]
    fn z_needs_invertible_u() {
        let sig = crate::Signature::new(Kind::DaHCa, 2).with_u(crate::UParam::Value(crate::QOmega::zero()));
        let alg = Algebra::from_signature(sig).unwrap();
        assert!(matches!(z_element(&alg, 1), Err(Error::NeedsInvertibleU(_))));
    }

    #[test]
    fn phi_square_closed_form() {
        let alg = Algebra::new(Kind::AffineHC, 2).unwrap();
        let phi = intertwiner_phi(&alg, 1).unwrap();
        let (a1, a2) = (alg.a(1), alg.a(2));
        let (s1, s2) = (&a1 * &a1, &a2 * &a2);
        let d = &s1 - &s2;
        let two = Scalar::from_int(2);
        let expected = &(&s1.scale(&two) + &s2.scale(&two)) - &(&d * &d);
        assert_eq!(&phi * &phi, expected);
    }

    #[test]
    fn embeddings_and_evaluation() {
        for alpha in [Scalar::zero(), Scalar::one(), Scalar::u()] {
            let rep = affine_embedding_check(2, &alpha).unwrap();
            assert!(rep.all_pass(), "{:?}", rep.failures().next());
        }
        let rep = evaluation_hom_check(3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
        let rep = trig_affine_embedding(3).unwrap().check_homomorphism();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
    }

    #[test]
    fn center_examples() {
        let alg = dahca(2);
        assert!(center_check(&rank_two_central(&alg).unwrap()).all_pass());
        // the literal element with unit coefficients is central exactly at u = 1
        let at_one = Algebra::from_signature(Signature::new(Kind::DaHCa, 2).with_u(UParam::Value(QOmega::one()))).unwrap();
        let (x1, x2, s, c1) = (at_one.x(1), at_one.x(2), at_one.transposition(1, 2).unwrap(), at_one.c(1));
        let xs = &x1 + &x2;
        let lit = &(&(&x1 * &x1) * &at_one.y(1)) + &(&(&x2 * &x2) * &at_one.y(2));
        let lit = &(&lit - &(&xs * &s)) - &(&(&(&c1 * &xs) * &s) * &c1);
        assert!(center_check(&lit).all_pass());
        assert!(!center_check(&(&alg.x(1) + &alg.x(2))).all_pass());
        let alg3 = dahca(3);
        assert!(center_check(&power_sum_y(&alg3, 1).unwrap()).all_pass());
    }

    #[test]
    fn trig_commutator_examples() {
        let alg = Algebra::new(Kind::TrigDaHCa, 2).unwrap();
        let e1 = alg.e(1);
        let s = alg.transposition(1, 2).unwrap();
        let factor = &alg.one() - &(&alg.c(1) * &alg.c(2));
        let base = &(&e1 * &factor) * &s;
        let u = Scalar::u();
        assert_eq!(trig_commutator(&alg, 1, &[0, 1]).unwrap(), base.scale(&-&u));
        assert_eq!(trig_commutator(&alg, 1, &[1, 0]).unwrap(), base.scale(&u));
        assert!(trig_commutator(&alg, 1, &[0, 0]).unwrap().is_zero());
        for eta in [[2i64, -1], [-2, 3], [1, 1]] {
            for i in 1..=2 {
                assert_eq!(
                    trig_commutator(&alg, i, &eta).unwrap(),
                    trig_commutator_by_rewriting(&alg, i, &eta).unwrap()
                );
            }
        }
    }
}
