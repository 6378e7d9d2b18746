//! Distinguished elements and identities of the spin tower.

use std::sync::Arc;

use crate::clifford_family::{center_check, check_index};
use crate::engine::{trig_commutator_terms, Algebra, Element, Kind, Letter};
use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;

fn require(alg: &Algebra, what: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnknownGenerator { generator: what.to_string(), algebra: alg.name() })
    }
}

/// `𝙼_j = Σ_{k<j} [k, j]` (1-based `j`).
pub fn odd_jm(alg: &Arc<Algebra>, j: usize) -> Result<Element> {
    require(alg, &format!("Ms({j})"), alg.kind().is_spin())?;
    check_index(alg, "Ms", j, alg.n())?;
    let mut out = alg.zero();
    for k in 1..j {
        out = &out + &alg.odd_transposition(k, j)?;
    }
    Ok(out)
}

/// `𝔷_i = u^{-1} y_i ξ_i + 𝙼_i` in the rational sDaHa.
pub fn frak_z(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, &format!("fz({i})"), alg.kind() == Kind::SDaHa)?;
    check_index(alg, "fz", i, alg.n())?;
    if alg.u_is_zero() {
        return Err(Error::NeedsInvertibleU(format!("fz({i})")));
    }
    let k = (i - 1) as u8;
    let yxi = &alg.letter(Letter::Y(k))? * &alg.letter(Letter::Xi(k))?;
    Ok(&yxi.scale(&alg.u().inv()?) + &odd_jm(alg, i)?)
}

/// `α ξ_i + 𝔷_i`.
pub fn spin_embedded_generator(alg: &Arc<Algebra>, alpha: &Scalar, i: usize) -> Result<Element> {
    let xi = alg.letter(Letter::Xi((i - 1) as u8))?;
    Ok(&xi.scale(alpha) + &frak_z(alg, i)?)
}

/// `ψ_i = t_i (b_i² - b_{i+1}²) - (b_i - b_{i+1})`.
pub fn intertwiner_psi(alg: &Arc<Algebra>, i: usize) -> Result<Element> {
    require(alg, &format!("psi({i})"), alg.kind() == Kind::SpinAffine)?;
    check_index(alg, "psi", i, alg.n().saturating_sub(1))?;
    let k = (i - 1) as u8;
    let (b0, b1) = (alg.letter(Letter::B(k))?, alg.letter(Letter::B(k + 1))?);
    let t = alg.letter(Letter::T(k))?;
    let sq = &(&b0 * &b0) - &(&b1 * &b1);
    Ok(&(&t * &sq) - &(&b0 - &b1))
}

/// The spin affine Hecke algebra mapped into the rational sDaHa by
/// `b_i ↦ α ξ_i + 𝔷_i`.
pub fn spin_affine_embedding(n: usize, alpha: &Scalar) -> Result<Morphism> {
    let source = Algebra::new(Kind::SpinAffine, n)?;
    let target = Algebra::new(Kind::SDaHa, n)?;
    let mut images = Vec::new();
    for g in source.generators() {
        let img = match g {
            Letter::B(i) => spin_embedded_generator(&target, alpha, i as usize + 1)?,
            other => target.letter(other)?,
        };
        images.push((g, img));
    }
    Morphism::new(format!("SpinAffineEmbedding(alpha={alpha})"), source, target, images)
}

pub fn spin_affine_embedding_check(n: usize, alpha: &Scalar) -> Result<Report> {
    Ok(spin_affine_embedding(n, alpha)?.check_homomorphism())
}

/// `b_i ↦ 𝙼_i`, identity on the spin symmetric group algebra.
pub fn spin_evaluation_hom(n: usize) -> Result<Morphism> {
    let source = Algebra::new(Kind::SpinAffine, n)?;
    let target = Algebra::new(Kind::SpinSym, n)?;
    let mut images = Vec::new();
    for g in source.generators() {
        let img = match g {
            Letter::B(i) => odd_jm(&target, i as usize + 1)?,
            other => target.letter(other)?,
        };
        images.push((g, img));
    }
    Morphism::new("SpinEvaluation".to_string(), source, target, images)
}

pub fn spin_evaluation_hom_check(n: usize) -> Result<Report> {
    let hom = spin_evaluation_hom(n)?;
    let mut rep = hom.check_homomorphism();
    let b1 = hom.source().letter(Letter::B(0))?;
    rep.push(CheckResult::zero("b1->0", &hom.apply(&b1)?));
    Ok(rep)
}

/// The rank-two central element `ξ_1²y_1 + ξ_2²y_2 + u(ξ_1 - ξ_2)t_1`.
pub fn spin_rank_two_central(alg: &Arc<Algebra>) -> Result<Element> {
    require(alg, "xi", alg.kind() == Kind::SDaHa && alg.n() == 2)?;
    let (a, b) = (alg.letter(Letter::Xi(0))?, alg.letter(Letter::Xi(1))?);
    let base = &(&(&a * &a) * &alg.letter(Letter::Y(0))?) + &(&(&b * &b) * &alg.letter(Letter::Y(1))?);
    let corr = &(&a - &b) * &alg.letter(Letter::T(0))?;
    Ok(&base + &corr.scale(&alg.u()))
}

/// Even-center test in a spin algebra; odd candidates fail the parity entry.
pub fn spin_center_check(candidate: &Element) -> Report {
    center_check(candidate)
}

/// Closed form of `[ζ_i, e^η]` (1-based `i`).
pub fn spin_trig_commutator(alg: &Arc<Algebra>, i: usize, eta: &[i64]) -> Result<Element> {
    require(alg, "zeta", alg.kind() == Kind::TrigSDaHa)?;
    check_index(alg, "zeta", i, alg.n())?;
    if eta.len() != alg.n() {
        return Err(Error::SizeMismatch { left: eta.len(), right: alg.n() });
    }
    alg.normal_form(&trig_commutator_terms(alg.n(), true, i - 1, eta, &alg.u()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford_family::trig_commutator_by_rewriting;
    use crate::engine::{Signature, UParam};
    use crate::scalar::QOmega;

    #[test]
    fn odd_jm_small() {
        let alg = Algebra::new(Kind::SpinSym, 3).unwrap();
        assert!(odd_jm(&alg, 1).unwrap().is_zero());
        assert_eq!(odd_jm(&alg, 2).unwrap(), alg.t(1));
        let (m2, m3) = (odd_jm(&alg, 2).unwrap(), odd_jm(&alg, 3).unwrap());
        assert!(m2.anticommutator(&m3).is_zero());
    }

    #[test]
    fn frak_z_identities() {
        let alg = Algebra::new(Kind::SDaHa, 2).unwrap();
        let (z1, z2) = (frak_z(&alg, 1).unwrap(), frak_z(&alg, 2).unwrap());
        assert!(z1.anticommutator(&z2).is_zero());
        let mixed = &alg.xi(1).anticommutator(&z2) + &alg.xi(2).anticommutator(&z1);
        assert!(mixed.is_zero());
        for alpha in [Scalar::zero(), Scalar::one()] {
            let (g1, g2) = (
                spin_embedded_generator(&alg, &alpha, 1).unwrap(),
                spin_embedded_generator(&alg, &alpha, 2).unwrap(),
            );
            let t = alg.t(1);
            assert_eq!(&(&g2 * &t) + &(&t * &g1), alg.one());
        }
    }

    #[test]
    fn psi_identities() {
        let alg = Algebra::new(Kind::SpinAffine, 2).unwrap();
        let psi = intertwiner_psi(&alg, 1).unwrap();
        let (b1, b2) = (alg.b(1), alg.b(2));
        let (s1, s2) = (&b1 * &b1, &b2 * &b2);
        let d = &s1 - &s2;
        assert_eq!(&psi * &psi, &(&s1 + &s2) - &(&d * &d));
        assert!((&(&psi * &b1) + &(&b2 * &psi)).is_zero());
    }

    #[test]
    fn embeddings_and_evaluation() {
        for alpha in [Scalar::zero(), Scalar::one(), Scalar::u()] {
            let rep = spin_affine_embedding_check(2, &alpha).unwrap();
            assert!(rep.all_pass(), "{:?}", rep.failures().next());
        }
        let rep = spin_evaluation_hom_check(3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
    }

    #[test]
    fn spin_center_examples() {
        let alg = Algebra::new(Kind::SDaHa, 2).unwrap();
        let (x1, x2) = (alg.xi(1), alg.xi(2));
        let sq = &(&x1 * &x1) + &(&x2 * &x2);
        assert!(spin_center_check(&sq).all_pass());
        assert!(spin_center_check(&spin_rank_two_central(&alg).unwrap()).all_pass());
        // the literal element with coefficient 2 is central exactly at u = 2
        let sig = Signature::new(Kind::SDaHa, 2).with_u(UParam::Value(QOmega::from_int(2)));
        let at_two = Algebra::from_signature(sig).unwrap();
        let (a, b) = (at_two.xi(1), at_two.xi(2));
        let lit = &(&(&a * &a) * &at_two.y(1)) + &(&(&b * &b) * &at_two.y(2));
        let lit = &lit + &(&(&a - &b) * &at_two.t(1)).scale(&Scalar::from_int(2));
        assert!(spin_center_check(&lit).all_pass());
        let lit_generic = &(&(&(&x1 * &x1) * &alg.y(1)) + &(&(&x2 * &x2) * &alg.y(2)))
            + &(&(&x1 - &x2) * &alg.t(1)).scale(&Scalar::from_int(2));
        assert!(!spin_center_check(&lit_generic).all_pass());
        assert!(!spin_center_check(&alg.t(1)).all_pass());
    }

    #[test]
    fn spin_trig_commutator_examples() {
        let alg = Algebra::new(Kind::TrigSDaHa, 2).unwrap();
        let base = &alg.e(1) * &alg.t(1);
        let u = Scalar::u();
        assert_eq!(spin_trig_commutator(&alg, 1, &[0, 1]).unwrap(), base.scale(&u));
        assert_eq!(spin_trig_commutator(&alg, 1, &[1, 0]).unwrap(), base.scale(&-&u));
        for eta in [[2i64, -1], [-1, 3]] {
            assert_eq!(
                spin_trig_commutator(&alg, 2, &eta).unwrap(),
                trig_commutator_by_rewriting(&alg, 2, &eta).unwrap()
            );
        }
    }
}
