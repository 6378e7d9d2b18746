//! Algebra maps given by generator images, including the isomorphisms onto
//! tensor products `C_n ⊗ A` and the rational/trigonometric maps.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::clifford_family::{embedded_generator, intertwiner_phi, jucys_murphy};
use crate::engine::{defining_relations, Algebra, Element, Formal, Kind, Letter, Monomial, Parity, Signature};
use crate::error::{Error, Result};
use crate::parallel::parallel_map;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;
use crate::spin_family::{intertwiner_psi, odd_jm, spin_embedded_generator};

/// A homomorphism candidate determined by the images of the source
/// generators.
pub struct Morphism {
    name: String,
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    images: HashMap<Letter, Element>,
    cache: Mutex<HashMap<Monomial, Element>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.source.name(), self.target.name())
    }
}

impl Morphism {
    pub fn new(name: String, source: Arc<Algebra>, target: Arc<Algebra>, images: Vec<(Letter, Element)>) -> Result<Self> {
        let mut map = HashMap::new();
        for (g, img) in images {
            if !source.has_letter(g) {
                return Err(Error::UnknownGenerator { generator: g.to_string(), algebra: source.name() });
            }
            map.insert(g, img.embed_into(&target)?);
        }
        if let Some(g) = source.generators().into_iter().find(|g| !map.contains_key(g)) {
            return Err(Error::Invalid(format!("{name}: no image for generator {g}")));
        }
        Ok(Morphism { name, source, target, images: map, cache: Mutex::new(HashMap::new()) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    /// Generator images in the source's generator order.
    pub fn images(&self) -> Vec<(Letter, &Element)> {
        self.source.generators().into_iter().map(|g| (g, &self.images[&g])).collect()
    }

    pub fn image(&self, g: Letter) -> Option<&Element> {
        self.images.get(&g)
    }

    fn word_image(&self, word: &[Letter]) -> Element {
        word.iter().fold(self.target.one(), |acc, g| &acc * &self.images[g])
    }

    fn monomial_image(&self, m: &Monomial) -> Element {
        if let Some(e) = self.cache.lock().unwrap().get(m) {
            return e.clone();
        }
        let e = self.word_image(&self.source.monomial_word(m));
        self.cache.lock().unwrap().insert(*m, e.clone());
        e
    }

    /// Linear, multiplicative extension of the generator images.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !self.source.accepts(a.algebra()) {
            return Err(Error::AlgebraMismatch { left: a.algebra().name(), right: self.source.name() });
        }
        let mut out = self.target.zero();
        for (m, c) in a.terms() {
            out = &out + &self.monomial_image(m).scale(c);
        }
        Ok(out)
    }

    /// Image of a formal word combination (no normalization in the source).
    pub fn apply_formal(&self, f: &Formal) -> Result<Element> {
        let mut out = self.target.zero();
        for (c, w) in f {
            for g in w {
                if !self.images.contains_key(g) {
                    return Err(Error::UnknownGenerator { generator: g.to_string(), algebra: self.source.name() });
                }
            }
            out = &out + &self.word_image(w).scale(c);
        }
        Ok(out)
    }

    /// Image parities and every defining relation of the source.
    pub fn check_homomorphism(&self) -> Report {
        let mut rep = Report::new();
        for (g, img) in self.images() {
            let expected = if g.parity() == 1 { Parity::Odd } else { Parity::Even };
            let p = img.parity();
            rep.push(if p == expected || img.is_zero() {
                CheckResult::pass(format!("parity({g})"))
            } else {
                CheckResult::fail(format!("parity({g})"), format!("{p:?}"))
            });
        }
        let rels = defining_relations(&self.source);
        let results = parallel_map(&rels, |r| match self.apply_formal(&r.difference()) {
            Ok(e) => CheckResult::zero(r.id.clone(), &e),
            Err(e) => CheckResult::fail(r.id.clone(), e.to_string()),
        });
        rep.results.extend(results);
        rep
    }
}

/// `g ∘ f = id` on the generators of `f`'s source and `f ∘ g = id` on those
/// of `g`'s source.
pub fn check_inverse_pair(f: &Morphism, g: &Morphism) -> Result<Report> {
    let mut rep = Report::new();
    for (first, second) in [(f, g), (g, f)] {
        for x in first.source.generators() {
            let xe = first.source.letter(x)?;
            let back = second.apply(&first.apply(&xe)?)?;
            let id = format!("{}({}({x}))", second.name, first.name);
            rep.push(CheckResult::zero(id, &(&back - &xe.embed_into(second.target())?)));
        }
    }
    Ok(rep)
}

fn omega() -> Scalar {
    Scalar::omega()
}

fn omega_inv() -> Scalar {
    Scalar::omega().inv().expect("omega is invertible")
}

fn algebra(kind: Kind, n: usize, tensor: bool, localized: bool) -> Result<Arc<Algebra>> {
    let mut sig = Signature::new(kind, n);
    sig.tensor = tensor;
    sig.localized = localized;
    Algebra::from_signature(sig)
}

fn build(
    name: &str,
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    f: impl Fn(Letter) -> Result<Element>,
) -> Result<Morphism> {
    let images = source.generators().into_iter().map(|g| Ok((g, f(g)?))).collect::<Result<Vec<_>>>()?;
    Morphism::new(name.to_string(), source, target, images)
}

/// `s_i ↦ (1/ω)(c'_i - c'_{i+1}) t_i` in a tensor target.
fn phi_simple(t: &Arc<Algebra>, i: u8) -> Result<Element> {
    let diff = &t.letter(Letter::Outer(i))? - &t.letter(Letter::Outer(i + 1))?;
    Ok((&diff * &t.letter(Letter::T(i))?).scale(&omega_inv()))
}

/// `t_i ↦ (1/ω)(c_{i+1} - c_i) s_i` in a Clifford target.
pub(crate) fn psi_simple(t: &Arc<Algebra>, i: u8) -> Result<Element> {
    let diff = &t.letter(Letter::C(i + 1))? - &t.letter(Letter::C(i))?;
    Ok((&diff * &t.letter(Letter::S(i))?).scale(&omega_inv()))
}

/// `ω c'_i g_i` in a tensor target.
fn omega_outer(t: &Arc<Algebra>, i: u8, g: Letter) -> Result<Element> {
    Ok((&t.letter(Letter::Outer(i))? * &t.letter(g)?).scale(&omega()))
}

/// `(1/ω) c_i g_i` in a Clifford target.
fn omega_inv_c(t: &Arc<Algebra>, i: u8, g: Letter) -> Result<Element> {
    Ok((&t.letter(Letter::C(i))? * &t.letter(g)?).scale(&omega_inv()))
}

/// The Clifford-side to spin-side map on `C_n ⋊ C S_n` plus `extra`.
fn phi_family(
    name: &str,
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    extra: impl Fn(&Arc<Algebra>, Letter) -> Result<Option<Element>>,
) -> Result<Morphism> {
    let t = target.clone();
    build(name, source, target, |g| {
        if let Some(e) = extra(&t, g)? {
            return Ok(e);
        }
        match g {
            Letter::C(i) => t.letter(Letter::Outer(i)),
            Letter::S(i) => phi_simple(&t, i),
            other => t.letter(other),
        }
    })
}

fn psi_family(
    name: &str,
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    extra: impl Fn(&Arc<Algebra>, Letter) -> Result<Option<Element>>,
) -> Result<Morphism> {
    let t = target.clone();
    build(name, source, target, |g| {
        if let Some(e) = extra(&t, g)? {
            return Ok(e);
        }
        match g {
            Letter::Outer(i) => t.letter(Letter::C(i)),
            Letter::T(i) => psi_simple(&t, i),
            other => t.letter(other),
        }
    })
}

/// `C_n ⋊ C S_n → C_n ⊗ C S_n^-`.
pub fn phi_fin(n: usize) -> Result<Morphism> {
    phi_family("PhiFin", algebra(Kind::CliffordSym, n, false, false)?, algebra(Kind::SpinSym, n, true, false)?, |_, _| Ok(None))
}

pub fn psi_fin(n: usize) -> Result<Morphism> {
    psi_family("PsiFin", algebra(Kind::SpinSym, n, true, false)?, algebra(Kind::CliffordSym, n, false, false)?, |_, _| Ok(None))
}

/// Affine Hecke-Clifford algebra `→ C_n ⊗` spin affine Hecke algebra.
pub fn phi_hat(n: usize) -> Result<Morphism> {
    phi_family("PhiHat", algebra(Kind::AffineHC, n, false, false)?, algebra(Kind::SpinAffine, n, true, false)?, |t, g| {
        Ok(match g {
            Letter::A(i) => Some(omega_outer(t, i, Letter::B(i))?),
            _ => None,
        })
    })
}

pub fn psi_hat(n: usize) -> Result<Morphism> {
    psi_family("PsiHat", algebra(Kind::SpinAffine, n, true, false)?, algebra(Kind::AffineHC, n, false, false)?, |t, g| {
        Ok(match g {
            Letter::B(i) => Some(omega_inv_c(t, i, Letter::A(i))?),
            _ => None,
        })
    })
}

fn phi_rational(n: usize, localized: bool) -> Result<Morphism> {
    phi_family("Phi", algebra(Kind::DaHCa, n, false, localized)?, algebra(Kind::SDaHa, n, true, localized)?, |t, g| {
        Ok(match g {
            Letter::X(i) => Some(omega_outer(t, i, Letter::Xi(i))?),
            _ => None,
        })
    })
}

/// Rational DaHCa `→ C_n ⊗` rational sDaHa.
pub fn phi(n: usize) -> Result<Morphism> {
    phi_rational(n, false)
}

pub fn psi(n: usize) -> Result<Morphism> {
    psi_family("Psi", algebra(Kind::SDaHa, n, true, false)?, algebra(Kind::DaHCa, n, false, false)?, |t, g| {
        Ok(match g {
            Letter::Xi(i) => Some(omega_inv_c(t, i, Letter::X(i))?),
            _ => None,
        })
    })
}

/// Trigonometric DaHCa `→ C_n ⊗` trigonometric sDaHa.
pub fn phi_tr(n: usize) -> Result<Morphism> {
    phi_family("PhiTr", algebra(Kind::TrigDaHCa, n, false, false)?, algebra(Kind::TrigSDaHa, n, true, false)?, |t, g| {
        Ok(match g {
            Letter::EpsV(i) => Some(omega_outer(t, i, Letter::Zeta(i))?),
            _ => None,
        })
    })
}

pub fn psi_tr(n: usize) -> Result<Morphism> {
    psi_family("PsiTr", algebra(Kind::TrigSDaHa, n, true, false)?, algebra(Kind::TrigDaHCa, n, false, false)?, |t, g| {
        Ok(match g {
            Letter::Zeta(i) => Some(omega_inv_c(t, i, Letter::EpsV(i))?),
            _ => None,
        })
    })
}

/// `e^{-ε_i}(g_i - u Σ_{k<i} …)` with the even or odd JM element.
fn iota_x(t: &Arc<Algebra>, i: u8, g: Letter) -> Result<Element> {
    let jm = if t.kind().is_spin() { odd_jm(t, i as usize + 1)? } else { jucys_murphy(t, i as usize + 1)? };
    let inner = &t.letter(g)? - &jm.scale(&t.u());
    Ok(&t.letter(Letter::EInv(i))? * &inner)
}

/// `y_i g_i + u Σ_{k<i} …`.
fn j_eps(t: &Arc<Algebra>, i: u8, g: Letter) -> Result<Element> {
    let jm = if t.kind().is_spin() { odd_jm(t, i as usize + 1)? } else { jucys_murphy(t, i as usize + 1)? };
    Ok(&(&t.letter(Letter::Y(i))? * &t.letter(g)?) + &jm.scale(&t.u()))
}

fn iota_family(name: &str, source: Arc<Algebra>, target: Arc<Algebra>) -> Result<Morphism> {
    let t = target.clone();
    build(name, source, target, |g| match g {
        Letter::Y(i) => t.letter(Letter::E(i)),
        Letter::YInv(i) => t.letter(Letter::EInv(i)),
        Letter::X(i) => iota_x(&t, i, Letter::EpsV(i)),
        Letter::Xi(i) => iota_x(&t, i, Letter::Zeta(i)),
        other => t.letter(other),
    })
}

fn j_family(name: &str, source: Arc<Algebra>, target: Arc<Algebra>) -> Result<Morphism> {
    let t = target.clone();
    build(name, source, target, |g| match g {
        Letter::E(i) => t.letter(Letter::Y(i)),
        Letter::EInv(i) => t.letter(Letter::YInv(i)),
        Letter::EpsV(i) => j_eps(&t, i, Letter::X(i)),
        Letter::Zeta(i) => j_eps(&t, i, Letter::Xi(i)),
        other => t.letter(other),
    })
}

/// Localized rational DaHCa `→` trigonometric DaHCa.
pub fn iota(n: usize) -> Result<Morphism> {
    iota_family("Iota", algebra(Kind::DaHCa, n, false, true)?, algebra(Kind::TrigDaHCa, n, false, false)?)
}

pub fn j(n: usize) -> Result<Morphism> {
    j_family("J", algebra(Kind::TrigDaHCa, n, false, false)?, algebra(Kind::DaHCa, n, false, true)?)
}

/// Localized rational sDaHa `→` trigonometric sDaHa.
pub fn iota_minus(n: usize) -> Result<Morphism> {
    iota_family("IotaMinus", algebra(Kind::SDaHa, n, false, true)?, algebra(Kind::TrigSDaHa, n, false, false)?)
}

pub fn j_minus(n: usize) -> Result<Morphism> {
    j_family("JMinus", algebra(Kind::TrigSDaHa, n, false, false)?, algebra(Kind::SDaHa, n, false, true)?)
}

/// `id ⊗ ι⁻` on `C_n ⊗` localized rational sDaHa.
pub fn tensor_iota_minus(n: usize) -> Result<Morphism> {
    iota_family("TensorIotaMinus", algebra(Kind::SDaHa, n, true, true)?, algebra(Kind::TrigSDaHa, n, true, false)?)
}

/// Every named map, for lookup by the command line.
pub const NAMES: [&str; 13] = [
    "PhiFin", "PsiFin", "PhiHat", "PsiHat", "Phi", "Psi", "PhiTr", "PsiTr", "Iota", "J", "IotaMinus", "JMinus",
    "TensorIotaMinus",
];

pub fn by_name(name: &str, n: usize) -> Result<Morphism> {
    let canonical = NAMES
        .iter()
        .find(|m| m.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Invalid(format!("unknown morphism {name:?}; expected one of {}", NAMES.join(", "))))?;
    match *canonical {
        "PhiFin" => phi_fin(n),
        "PsiFin" => psi_fin(n),
        "PhiHat" => phi_hat(n),
        "PsiHat" => psi_hat(n),
        "Phi" => phi(n),
        "Psi" => psi(n),
        "PhiTr" => phi_tr(n),
        "PsiTr" => psi_tr(n),
        "Iota" => iota(n),
        "J" => j(n),
        "IotaMinus" => iota_minus(n),
        "JMinus" => j_minus(n),
        _ => tensor_iota_minus(n),
    }
}

/// The partner of a map in its inverse pair.
pub fn inverse_name(name: &str) -> Option<&'static str> {
    const PAIRS: [(&str, &str); 6] =
        [("PhiFin", "PsiFin"), ("PhiHat", "PsiHat"), ("Phi", "Psi"), ("PhiTr", "PsiTr"), ("Iota", "J"), ("IotaMinus", "JMinus")];
    PAIRS.iter().find_map(|&(a, b)| {
        if a.eq_ignore_ascii_case(name) {
            Some(b)
        } else if b.eq_ignore_ascii_case(name) {
            Some(a)
        } else {
            None
        }
    })
}

/// Images of the intertwiners, Jucys-Murphy elements, the affine
/// generators and the rescaled transpositions under the Clifford-to-spin
/// isomorphisms.
pub fn check_distinguished_images(n: usize) -> Result<Report> {
    let mut rep = Report::new();
    let w = omega();
    let hat = phi_hat(n)?;
    let (ahc, tsa) = (hat.source().clone(), hat.target().clone());
    for i in 1..n {
        let lhs = hat.apply(&intertwiner_phi(&ahc, i)?)?;
        let k = (i - 1) as u8;
        let diff = &tsa.letter(Letter::Outer(k))? - &tsa.letter(Letter::Outer(k + 1))?;
        let rhs = (&diff * &intertwiner_psi(&tsa, i)?).scale(&-&w);
        rep.push(CheckResult::zero(format!("PhiHat(phi({i}))"), &(&lhs - &rhs)));
    }
    let ph = phi(n)?;
    let (dah, tsd) = (ph.source().clone(), ph.target().clone());
    for i in 1..=n {
        let ci = tsd.letter(Letter::Outer((i - 1) as u8))?;
        let lhs = ph.apply(&jucys_murphy(&dah, i)?)?;
        let rhs = (&ci * &odd_jm(&tsd, i)?).scale(&w);
        rep.push(CheckResult::zero(format!("Phi(M({i}))"), &(&lhs - &rhs)));
        for alpha in [Scalar::zero(), Scalar::one(), Scalar::u()] {
            let lhs = ph.apply(&embedded_generator(&dah, &alpha, i)?)?;
            let rhs = (&ci * &spin_embedded_generator(&tsd, &alpha, i)?).scale(&w);
            rep.push(CheckResult::zero(format!("Phi({alpha}*x{i} + z({i}))"), &(&lhs - &rhs)));
        }
        for k in (1..=n).filter(|&k| k != i) {
            let diff = &dah.letter(Letter::C((i - 1) as u8))? - &dah.letter(Letter::C((k - 1) as u8))?;
            let src = (&diff * &dah.transposition(i, k)?).scale(&omega_inv());
            let lhs = ph.apply(&src)?;
            rep.push(CheckResult::zero(format!("Phi((c{i}-c{k})s{i}{k}/w)"), &(&lhs - &tsd.odd_transposition(k, i)?)));
        }
    }
    // frak_z is only meaningful with u invertible; make sure it is defined
    Ok(rep)
}

/// `Φ^tr ∘ ι = (id ⊗ ι⁻) ∘ Φ` on the rational DaHCa generators.
pub fn check_compatibility_square(n: usize) -> Result<Report> {
    let (io, ptr) = (iota(n)?, phi_tr(n)?);
    let (ph, tim) = (phi(n)?, tensor_iota_minus(n)?);
    let src = Algebra::new(Kind::DaHCa, n)?;
    let mut rep = Report::new();
    for g in src.generators() {
        let x = src.letter(g)?;
        let a = ptr.apply(&io.apply(&x)?)?;
        let b = tim.apply(&ph.apply(&x)?)?;
        rep.push(CheckResult::zero(format!("square({g})"), &(&a - &b)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_images() {
        let ph = phi(2).unwrap();
        let t = ph.target();
        let y1 = ph.source().y(1);
        assert_eq!(ph.apply(&y1).unwrap(), t.y(1));
        let x1 = ph.apply(&ph.source().x(1)).unwrap();
        assert_eq!(x1, (&t.outer_c(1) * &t.xi(1)).scale(&Scalar::omega()));
        let ps = psi(2).unwrap();
        let t1 = ps.apply(&ps.source().t(1)).unwrap();
        let d = &ps.target().c(2) - &ps.target().c(1);
        assert_eq!(t1, (&d * &ps.target().s(1)).scale(&omega_inv()));
        assert_eq!(ph.apply(&ph.source().one()).unwrap(), t.one());
    }

    #[test]
    fn homomorphisms_n2() {
        for name in NAMES {
            let m = by_name(name, 2).unwrap();
            let rep = m.check_homomorphism();
            assert!(rep.all_pass(), "{name}: {:?}", rep.failures().next());
        }
    }

    #[test]
    fn inverse_pairs_n2() {
        for name in ["PhiFin", "PhiHat", "Phi", "PhiTr", "Iota", "IotaMinus"] {
            let f = by_name(name, 2).unwrap();
            let g = by_name(inverse_name(name).unwrap(), 2).unwrap();
            let rep = check_inverse_pair(&f, &g).unwrap();
            assert!(rep.all_pass(), "{name}: {:?}", rep.failures().next());
        }
    }

    #[test]
    fn distinguished_images_and_square() {
        let rep = check_distinguished_images(3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
        let rep = check_compatibility_square(2).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
    }

    #[test]
    fn rational_trig_examples() {
        let io = iota(2).unwrap();
        let t = io.target().clone();
        assert_eq!(io.apply(&io.source().y(1)).unwrap(), t.e(1));
        let dah = Algebra::new(Kind::DaHCa, 2).unwrap();
        assert_eq!(io.apply(&dah.x(1)).unwrap(), &t.einv(1) * &t.epsv(1));
        let jm = j_minus(2).unwrap();
        let s = jm.target().clone();
        let expected = &(&s.y(2) * &s.xi(2)) + &s.odd_transposition(1, 2).unwrap().scale(&Scalar::u());
        assert_eq!(jm.apply(&jm.source().zeta(2)).unwrap(), expected);
    }

    #[test]
    fn mismatched_source_is_rejected() {
        let ph = phi(2).unwrap();
        let other = Algebra::new(Kind::SDaHa, 2).unwrap();
        assert!(ph.apply(&other.y(1)).is_err());
    }
}
