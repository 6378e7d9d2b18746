//! Acceptance suite. Runs without the libtest harness so that one PASS/FAIL
//! line per criterion is always printed.

use std::collections::{HashMap, VecDeque};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinhecke::clifford_family::{
    affine_embedding_check, center_check, center_suite, embedded_generator, intertwiner_phi, jucys_murphy,
    rank_two_central, trig_commutator, trig_commutator_by_rewriting, z_element,
};
use spinhecke::dunkl::{check_phi_compatibility, FiniteModule, InducedModule, PolyVar, verify_module};
use spinhecke::engine::{confluence_probe, verify_relations};
use spinhecke::morphisms::{self, check_inverse_pair, Morphism};
use spinhecke::spin_family::{
    frak_z, intertwiner_psi, spin_affine_embedding_check, spin_embedded_generator, spin_rank_two_central,
    spin_trig_commutator,
};
use spinhecke::structure::{Permutation, SpinCocycle};
use spinhecke::{Algebra, Element, Kind, QOmega, Report, Scalar, Signature, UParam};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn zero(what: &str, e: &Element) -> Result<(), String> {
    match e.witness() {
        None => Ok(()),
        Some(w) => Err(format!("{what}: {w}")),
    }
}

fn equal(what: &str, a: &Element, b: &Element) -> Result<(), String> {
    zero(what, &(a - b))
}

fn report(what: &str, r: Report) -> Result<usize, String> {
    match r.failures().next() {
        None => Ok(r.passed()),
        Some(f) => Err(format!("{what}: {} {}", f.id, f.witness.clone().unwrap_or_default())),
    }
}

fn alphas() -> [Scalar; 3] {
    [Scalar::zero(), Scalar::one(), Scalar::u()]
}

fn err(e: spinhecke::Error) -> String {
    e.to_string()
}

// 1. Every defining relation of every algebra normalizes to zero.
fn relation_suites() -> Outcome {
    let mut checked = 0;
    for kind in Kind::ALL {
        for n in 2..=4 {
            let alg = Algebra::new(kind, n).map_err(err)?;
            checked += report(&alg.name(), verify_relations(&alg))?;
        }
    }
    Ok(format!("{checked} relation instances"))
}

// 2. Random associativity and re-normalization probes.
fn confluence() -> Outcome {
    for (seed, kind) in Kind::ALL.into_iter().enumerate() {
        let alg = Algebra::new(kind, 3).map_err(err)?;
        let probe = confluence_probe(&alg, 500, 3, seed as u64 + 1);
        if let Some(w) = probe.associativity_failures.first().or(probe.idempotence_failures.first()) {
            return Err(format!("{}: {w}", alg.name()));
        }
    }
    Ok(format!("500 triples in each of {} algebras", Kind::ALL.len()))
}

type Ctor = fn(usize) -> spinhecke::Result<Morphism>;

fn pairs(list: &[(Ctor, Ctor)], ns: &[usize]) -> Result<usize, String> {
    let mut checked = 0;
    for &n in ns {
        for (f, g) in list {
            let (f, g) = (f(n).map_err(err)?, g(n).map_err(err)?);
            checked += report(f.name(), f.check_homomorphism())?;
            checked += report(g.name(), g.check_homomorphism())?;
            checked += report(&format!("{}/{}", f.name(), g.name()), check_inverse_pair(&f, &g).map_err(err)?)?;
        }
    }
    Ok(checked)
}

// 3. The four isomorphisms and their inverses.
fn isomorphisms() -> Outcome {
    let list: [(Ctor, Ctor); 4] = [
        (morphisms::phi_fin, morphisms::psi_fin),
        (morphisms::phi_hat, morphisms::psi_hat),
        (morphisms::phi, morphisms::psi),
        (morphisms::phi_tr, morphisms::psi_tr),
    ];
    Ok(format!("{} checks", pairs(&list, &[2, 3])?))
}

// 4. Affine subalgebras inside the double affine algebras.
fn embeddings() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for a in alphas() {
            checked += report("clifford", affine_embedding_check(n, &a).map_err(err)?)?;
            checked += report("spin", spin_affine_embedding_check(n, &a).map_err(err)?)?;
        }
    }
    Ok(format!("{checked} checks"))
}

// 5. Commuting families.
fn commuting_families() -> Outcome {
    for n in 2..=4 {
        let d = Algebra::new(Kind::DaHCa, n).map_err(err)?;
        let z: Vec<Element> = (1..=n).map(|i| z_element(&d, i)).collect::<Result<_, _>>().map_err(err)?;
        for i in 1..=n {
            for j in 1..=n {
                zero(&format!("[z{i},z{j}]"), &z[i - 1].bracket(&z[j - 1]))?;
                let mixed = &d.x(i).bracket(&z[j - 1]) - &d.x(j).bracket(&z[i - 1]);
                zero(&format!("[x{i},z{j}]-[x{j},z{i}]"), &mixed)?;
                for a in alphas() {
                    let (gi, gj) = (embedded_generator(&d, &a, i).map_err(err)?, embedded_generator(&d, &a, j).map_err(err)?);
                    zero(&format!("[g{i},g{j}] alpha={a}"), &gi.bracket(&gj))?;
                }
                let ci = d.c(i);
                if i == j {
                    zero(&format!("c{i}z{i}+z{i}c{i}"), &ci.anticommutator(&z[i - 1]))?;
                } else {
                    zero(&format!("[c{i},z{j}]"), &ci.bracket(&z[j - 1]))?;
                }
            }
        }
        for i in 1..n {
            let s = d.s(i);
            let rhs = &d.one() - &(&d.c(i + 1) * &d.c(i));
            equal(&format!("z{}s{i}-s{i}z{i}", i + 1), &(&(&z[i] * &s) - &(&s * &z[i - 1])), &rhs)?;
            for a in alphas() {
                let (g0, g1) = (embedded_generator(&d, &a, i).map_err(err)?, embedded_generator(&d, &a, i + 1).map_err(err)?);
                equal(&format!("hecke({i}) alpha={a}"), &(&(&g1 * &s) - &(&s * &g0)), &rhs)?;
            }
        }

        let sp = Algebra::new(Kind::SDaHa, n).map_err(err)?;
        let fz: Vec<Element> = (1..=n).map(|i| frak_z(&sp, i)).collect::<Result<_, _>>().map_err(err)?;
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                zero(&format!("[fz{i},fz{j}]+"), &fz[i - 1].anticommutator(&fz[j - 1]))?;
                let mixed = &sp.xi(i).anticommutator(&fz[j - 1]) + &sp.xi(j).anticommutator(&fz[i - 1]);
                zero(&format!("[xi{i},fz{j}]+ + [xi{j},fz{i}]+"), &mixed)?;
                for a in alphas() {
                    let gi = spin_embedded_generator(&sp, &a, i).map_err(err)?;
                    let gj = spin_embedded_generator(&sp, &a, j).map_err(err)?;
                    zero(&format!("[g{i},g{j}]+ alpha={a}"), &gi.anticommutator(&gj))?;
                }
            }
        }
        for i in 1..n {
            let t = sp.t(i);
            for a in alphas() {
                let g0 = spin_embedded_generator(&sp, &a, i).map_err(err)?;
                let g1 = spin_embedded_generator(&sp, &a, i + 1).map_err(err)?;
                equal(&format!("spin hecke({i}) alpha={a}"), &(&g1 * &t), &(&sp.one() - &(&t * &g0)))?;
            }
        }
    }
    let d = Algebra::new(Kind::DaHCa, 2).map_err(err)?;
    let (z1, z2) = (z_element(&d, 1).map_err(err)?, z_element(&d, 2).map_err(err)?);
    let witness = &d.y(1).bracket(&z2) - &d.y(2).bracket(&z1);
    if witness.is_zero() {
        return Err("[y1,z2]-[y2,z1] vanished".into());
    }
    Ok(format!("[y1,z2]-[y2,z1] = {witness}"))
}

// 6. Intertwiners and their images.
fn intertwiners() -> Outcome {
    for n in 2..=4 {
        let h = Algebra::new(Kind::AffineHC, n).map_err(err)?;
        let phi: Vec<Element> = (1..n).map(|i| intertwiner_phi(&h, i)).collect::<Result<_, _>>().map_err(err)?;
        for i in 1..n {
            let (a0, a1) = (h.a(i), h.a(i + 1));
            let (q0, q1) = (&a0 * &a0, &a1 * &a1);
            let d = &q0 - &q1;
            let two = Scalar::from_int(2);
            let expect = &(&q0.scale(&two) + &q1.scale(&two)) - &(&d * &d);
            equal(&format!("phi{i}^2"), &(&phi[i - 1] * &phi[i - 1]), &expect)?;
            if i + 1 < n {
                let (p, q) = (&phi[i - 1], &phi[i]);
                equal(&format!("braid phi{i}"), &(&(p * q) * p), &(&(q * p) * q))?;
            }
            for j in (i + 2)..n {
                zero(&format!("[phi{i},phi{j}]"), &phi[i - 1].bracket(&phi[j - 1]))?;
            }
        }

        let b = Algebra::new(Kind::SpinAffine, n).map_err(err)?;
        let psi: Vec<Element> = (1..n).map(|i| intertwiner_psi(&b, i)).collect::<Result<_, _>>().map_err(err)?;
        for i in 1..n {
            let (b0, b1) = (b.b(i), b.b(i + 1));
            let (q0, q1) = (&b0 * &b0, &b1 * &b1);
            let d = &q0 - &q1;
            equal(&format!("psi{i}^2"), &(&psi[i - 1] * &psi[i - 1]), &(&(&q0 + &q1) - &(&d * &d)))?;
            if i + 1 < n {
                let (p, q) = (&psi[i - 1], &psi[i]);
                equal(&format!("braid psi{i}"), &(&(p * q) * p), &(&(q * p) * q))?;
            }
            for j in (i + 2)..n {
                zero(&format!("[psi{i},psi{j}]+"), &psi[i - 1].anticommutator(&psi[j - 1]))?;
            }
            let p = &psi[i - 1];
            zero(&format!("psi{i}b{i}"), &(&(p * &b0) + &(&b1 * p)))?;
            zero(&format!("psi{i}b{}", i + 1), &(&(p * &b1) + &(&b0 * p)))?;
            for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                zero(&format!("[psi{i},b{j}]+"), &p.anticommutator(&b.b(j)))?;
            }
        }
    }
    let mut checked = 0;
    for n in 2..=4 {
        checked += report("images", morphisms::check_distinguished_images(n).map_err(err)?)?;
    }
    Ok(format!("closed forms at n<=4, {checked} image checks"))
}

// 7. Dunkl operators against the rewriting oracle.
fn dunkl_modules() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        let cases = [
            (Kind::DaHCa, FiniteModule::basic_spin(n), PolyVar::Y),
            (Kind::DaHCa, FiniteModule::basic_spin(n), PolyVar::X),
            (Kind::SDaHa, FiniteModule::basic_spin_odd(n), PolyVar::Y),
        ];
        for (kind, fin, var) in cases {
            let alg = Algebra::new(kind, n).map_err(err)?;
            let m = InducedModule::new(alg, fin.map_err(err)?, var).map_err(err)?;
            checked += report(&format!("{} n={n}", m.finite().name()), verify_module(&m, 4))?;
        }
        checked += report("transport", check_phi_compatibility(n, 3).map_err(err)?)?;
    }
    Ok(format!("{checked} checks up to degree 4"))
}

fn with_u(kind: Kind, u: i64) -> Result<Arc<Algebra>, String> {
    Algebra::from_signature(Signature::new(kind, 2).with_u(UParam::Value(QOmega::from_int(u)))).map_err(err)
}

// 8. Centers.
fn centers() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for kind in [Kind::DaHCa, Kind::SDaHa] {
            checked += report("suite", center_suite(&Algebra::new(kind, n).map_err(err)?).map_err(err)?)?;
        }
    }
    let d = Algebra::new(Kind::DaHCa, 2).map_err(err)?;
    checked += report("dahca general", center_check(&rank_two_central(&d).map_err(err)?))?;
    let s = Algebra::new(Kind::SDaHa, 2).map_err(err)?;
    checked += report("sdaha general", center_check(&spin_rank_two_central(&s).map_err(err)?))?;

    // fixed correction coefficients: 1 on the Clifford side and 2 on the spin side, central only at that u
    let d1 = with_u(Kind::DaHCa, 1)?;
    let (x1, x2) = (d1.x(1), d1.x(2));
    let mut lit = &(&(&x1 * &x1) * &d1.y(1)) + &(&(&x2 * &x2) * &d1.y(2));
    let sum = &x1 + &x2;
    lit = &lit - &(&sum * &d1.s(1));
    lit = &lit - &(&(&(&d1.c(1) * &sum) * &d1.s(1)) * &d1.c(1));
    checked += report("dahca literal at u=1", center_check(&lit))?;
    let s2 = with_u(Kind::SDaHa, 2)?;
    let (a, b) = (s2.xi(1), s2.xi(2));
    let lit = &(&(&(&a * &a) * &s2.y(1)) + &(&(&b * &b) * &s2.y(2))) + &(&(&a - &b) * &s2.t(1)).scale(&Scalar::from_int(2));
    checked += report("sdaha literal at u=2", center_check(&lit))?;

    for bad in [&d.x(1) * &d.x(1), jucys_murphy(&d, 2).map_err(err)?, s.t(1), &s.xi(1) * &s.xi(1)] {
        if center_check(&bad).all_pass() {
            return Err(format!("{bad} reported central"));
        }
    }
    Ok(format!("{checked} checks, 4 non-central elements rejected"))
}

// 9. Rational and trigonometric algebras.
fn rational_trig() -> Outcome {
    let list: [(Ctor, Ctor); 2] = [(morphisms::iota, morphisms::j), (morphisms::iota_minus, morphisms::j_minus)];
    let checked = pairs(&list, &[2, 3])?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..200 {
        let n = 2 + trial % 2;
        let eta: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let i = rng.gen_range(1..=n);
        let c = Algebra::new(Kind::TrigDaHCa, n).map_err(err)?;
        equal(
            &format!("[epsv{i}, e^{eta:?}]"),
            &trig_commutator(&c, i, &eta).map_err(err)?,
            &trig_commutator_by_rewriting(&c, i, &eta).map_err(err)?,
        )?;
        let s = Algebra::new(Kind::TrigSDaHa, n).map_err(err)?;
        equal(
            &format!("[zeta{i}, e^{eta:?}]"),
            &spin_trig_commutator(&s, i, &eta).map_err(err)?,
            &trig_commutator_by_rewriting(&s, i, &eta).map_err(err)?,
        )?;
    }
    Ok(format!("{checked} morphism checks, 200 weights in each trigonometric algebra"))
}

/// `t_w` for a word `w` in simple reflections, rewritten with the defining
/// relations of the spin symmetric group until it is the canonical word.
/// Returns the sign relating the two.
fn sign_by_rewriting(n: usize, word: Vec<u8>) -> (i8, Permutation) {
    let perm = word_perm(n, &word);
    let target = perm.canonical_word();
    let (mut sign, mut word) = (1i8, word);
    loop {
        let reduced = word.len() == target.len();
        // breadth-first search through braid and far-commutation moves
        let mut seen: HashMap<Vec<u8>, i8> = HashMap::from([(word.clone(), sign)]);
        let mut queue = VecDeque::from([word.clone()]);
        let mut next = None;
        while let Some(w) = queue.pop_front() {
            let sw = seen[&w];
            if reduced && w == target {
                return (sw, perm);
            }
            if !reduced {
                if let Some(p) = (0..w.len() - 1).find(|&p| w[p] == w[p + 1]) {
                    let mut shorter = w.clone();
                    shorter.drain(p..p + 2);
                    next = Some((sw, shorter));
                    break;
                }
            }
            for p in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[p], w[p + 1]);
                let mut moves = Vec::new();
                if a.abs_diff(b) > 1 {
                    let mut v = w.clone();
                    v.swap(p, p + 1);
                    moves.push((v, -sw));
                }
                if a.abs_diff(b) == 1 && p + 2 < w.len() && w[p + 2] == a {
                    let mut v = w.clone();
                    v[p] = b;
                    v[p + 1] = a;
                    v[p + 2] = b;
                    moves.push((v, sw));
                }
                for (v, s) in moves {
                    match seen.get(&v) {
                        Some(&old) => assert_eq!(old, s, "inconsistent sign for {v:?}"),
                        None => {
                            seen.insert(v.clone(), s);
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        let (s, w) = next.expect("rewriting stalled");
        sign = s;
        word = w;
    }
}

fn word_perm(n: usize, word: &[u8]) -> Permutation {
    word.iter().fold(Permutation::identity(n), |p, &k| {
        p.compose(&Permutation::simple(n, k as usize + 1).unwrap()).unwrap()
    })
}

// 10. The sign cocycle.
fn cocycle() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=4 {
        let beta = SpinCocycle::for_rank(n);
        let all = Permutation::all(n);
        for s in &all {
            if word_perm(n, &s.canonical_word()) != *s {
                return Err(format!("canonical word of {:?} does not multiply out", s.one_line()));
            }
        }
        for s in &all {
            for t in &all {
                let mut w = s.canonical_word();
                w.extend(t.canonical_word());
                let (sign, st) = sign_by_rewriting(n, w);
                if st != s.compose(t).unwrap() || sign != beta.beta(s, t) {
                    return Err(format!("beta({:?}, {:?}) = {} but rewriting gives {sign}", s.one_line(), t.one_line(), beta.beta(s, t)));
                }
                exhaustive += 1;
            }
        }
    }
    let beta = SpinCocycle::for_rank(5);
    let all = Permutation::all(5);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let pick = |r: &mut ChaCha8Rng| all[r.gen_range(0..all.len())];
        let (s, t, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let st = s.compose(&t).unwrap();
        let tr = t.compose(&r).unwrap();
        if beta.beta(&s, &t) * beta.beta(&st, &r) != beta.beta(&s, &tr) * beta.beta(&t, &r) {
            return Err(format!("cocycle identity fails at {:?} {:?} {:?}", s.one_line(), t.one_line(), r.one_line()));
        }
    }
    Ok(format!("{exhaustive} products rewritten, 1000 triples at n=5"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relation suites", relation_suites),
        ("confluence", confluence),
        ("isomorphisms", isomorphisms),
        ("affine embeddings", embeddings),
        ("commuting families", commuting_families),
        ("intertwiners", intertwiners),
        ("dunkl modules", dunkl_modules),
        ("centers", centers),
        ("rational and trigonometric", rational_trig),
        ("cocycle", cocycle),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", k + 1),
            Err(w) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {w} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
