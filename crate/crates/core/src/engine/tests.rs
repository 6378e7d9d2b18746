use super::*;

fn dahca(n: usize) -> Arc<Algebra> {
    Algebra::new(Kind::DaHCa, n).unwrap()
}

#[test]
fn involution_normalizes_to_one() {
    let alg = Algebra::new(Kind::Sym, 3).unwrap();
    assert_eq!(&alg.s(1) * &alg.s(1), alg.one());
}

#[test]
fn y1_x1_normal_form() {
    let alg = dahca(2);
    let e = &alg.y(1) * &alg.x(1);
    assert_eq!(e.to_string(), "x1*y1 - u*s12 - u*s12*c1*c2");
}

#[test]
fn y2_x1_normal_form() {
    let alg = dahca(2);
    let e = &alg.y(2) * &alg.x(1);
    assert_eq!(e.to_string(), "x1*y2 + u*s12 + u*s12*c1*c2");
    assert_eq!(alg.y(2).bracket(&alg.x(1)).to_string(), "u*s12 + u*s12*c1*c2");
}

#[test]
fn clifford_square_and_ordered_product() {
    let alg = dahca(2);
    assert_eq!(&alg.c(1) * &alg.c(1), alg.one());
    assert_eq!((&alg.x(1) * &alg.y(1)).to_string(), "x1*y1");
}

#[test]
fn brackets_of_commuting_families() {
    let alg = dahca(3);
    assert!(alg.y(1).bracket(&alg.y(2)).is_zero());
    let s = Algebra::new(Kind::SDaHa, 3).unwrap();
    assert!(s.xi(1).super_bracket(&s.xi(2), true).is_zero());
}

#[test]
fn trig_spin_relation() {
    let alg = Algebra::new(Kind::TrigSDaHa, 2).unwrap();
    let e = &(&alg.zeta(2) * &alg.t(1)) + &(&alg.t(1) * &alg.zeta(1));
    assert_eq!(e, alg.scalar(Scalar::u()));
}

#[test]
fn parity_classification() {
    let alg = dahca(2);
    assert_eq!(alg.x(1).parity(), Parity::Even);
    assert_eq!(alg.c(1).parity(), Parity::Odd);
    let s = Algebra::new(Kind::SDaHa, 2).unwrap();
    assert_eq!((&s.xi(1) + &s.y(1)).parity(), Parity::Mixed);
}

#[test]
fn unknown_generator_and_range_errors() {
    let alg = dahca(2);
    assert!(matches!(alg.letter(Letter::T(0)), Err(Error::UnknownGenerator { .. })));
    assert!(matches!(alg.letter(Letter::X(2)), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(alg.letter(Letter::S(1)), Err(Error::IndexOutOfRange { .. })));
    let other = Algebra::new(Kind::DaHCa, 3).unwrap();
    assert!(alg.x(1).checked_mul(&other.x(1)).is_err());
}

#[test]
fn tensor_requires_clifford_free_inner_algebra() {
    assert!(Algebra::from_signature(Signature::new(Kind::DaHCa, 2).tensor()).is_err());
    assert!(Algebra::from_signature(Signature::new(Kind::SDaHa, 2).tensor()).is_ok());
}

#[test]
fn koszul_sign_in_tensor_product() {
    let alg = Algebra::from_signature(Signature::new(Kind::SDaHa, 2).tensor()).unwrap();
    // (1 ⊗ xi1)(c1 ⊗ 1) = -(c1 ⊗ xi1)
    let lhs = &alg.xi(1) * &alg.outer_c(1);
    let rhs = -&(&alg.outer_c(1) * &alg.xi(1));
    assert_eq!(lhs, rhs);
    let y = &alg.y(1) * &alg.outer_c(1);
    assert_eq!(y, &alg.outer_c(1) * &alg.y(1));
}

#[test]
fn localized_inverse() {
    let alg = Algebra::from_signature(Signature::new(Kind::DaHCa, 2).localized()).unwrap();
    assert_eq!(&alg.y(1) * &alg.yinv(1), alg.one());
    let x = alg.x(2);
    let conj = &(&alg.yinv(1) * &x) * &alg.y(1);
    // y1^-1 x2 y1 = x2 - y1^-1 [y1, x2]
    let expected = &x - &(&alg.yinv(1) * &alg.y(1).bracket(&x));
    assert_eq!(conj, expected);
}

#[test]
fn relation_suites_small() {
    for kind in Kind::ALL {
        for n in 2..=3 {
            let alg = Algebra::new(kind, n).unwrap();
            let rep = verify_relations(&alg);
            let bad: Vec<_> = rep.failures().take(3).collect();
            assert!(bad.is_empty(), "{kind:?} n={n}: {bad:?}");
        }
    }
}

#[test]
fn relation_suites_tensor_and_localized() {
    for kind in [Kind::SpinSym, Kind::SpinAffine, Kind::SDaHa, Kind::TrigSDaHa] {
        let alg = Algebra::from_signature(Signature::new(kind, 3).tensor()).unwrap();
        let rep = verify_relations(&alg);
        assert!(rep.all_pass(), "{kind:?}: {:?}", rep.failures().next());
    }
    for kind in [Kind::DaHCa, Kind::SDaHa] {
        let alg = Algebra::from_signature(Signature::new(kind, 3).localized()).unwrap();
        let rep = verify_relations(&alg);
        assert!(rep.all_pass(), "{kind:?}: {:?}", rep.failures().next());
    }
}

#[test]
fn confluence_small() {
    for kind in Kind::ALL {
        let alg = Algebra::new(kind, 3).unwrap();
        let rep = confluence_probe(&alg, 40, 2, 7);
        assert!(rep.is_clean(), "{kind:?}: {rep:?}");
    }
}

#[test]
fn trivial_triple_is_associative() {
    let alg = dahca(2);
    let one = alg.one();
    assert_eq!(&(&one * &one) * &one, &one * &(&one * &one));
}

#[test]
fn degree_filtration() {
    let alg = dahca(2);
    let a = &alg.y(1).pow(2) * &alg.c(2);
    let b = &alg.x(1) * &alg.x(2);
    let p = &a * &b;
    for (m, _) in p.terms() {
        assert!(m.degree() <= 4 && m.degree() % 2 == 0);
    }
}

#[test]
fn specialization_at_zero_commutes() {
    let alg = dahca(2);
    let e = alg.y(1).bracket(&alg.x(2)).specialize_u(&QOmega::zero()).unwrap();
    assert!(e.is_zero());
}
