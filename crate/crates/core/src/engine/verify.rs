//! Relation suites and the randomized associativity probe.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{defining_relations, Algebra, Element, Kind, Monomial};
use crate::parallel::parallel_map;
use crate::report::{CheckResult, Report};
use crate::structure::Permutation;

/// Normalizes `lhs - rhs` of every defining relation instance.
pub fn verify_relations(alg: &Arc<Algebra>) -> Report {
    let rels = defining_relations(alg);
    parallel_map(&rels, |r| match alg.normal_form(&r.difference()) {
        Ok(e) => CheckResult::zero(r.id.clone(), &e),
        Err(e) => CheckResult::fail(r.id.clone(), e.to_string()),
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConfluenceReport {
    pub trials: usize,
    /// Triples whose two bracketings disagree, rendered.
    pub associativity_failures: Vec<String>,
    /// Products that change under re-normalization of their own words.
    pub idempotence_failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn is_clean(&self) -> bool {
        self.associativity_failures.is_empty() && self.idempotence_failures.is_empty()
    }
}

fn has_left(kind: Kind) -> bool {
    !matches!(kind, Kind::Sym | Kind::CliffordSym | Kind::SpinSym)
}

fn has_right(kind: Kind) -> bool {
    matches!(kind, Kind::DaHCa | Kind::SDaHa | Kind::TrigDaHCa | Kind::TrigSDaHa)
}

/// A uniformly shaped random basis monomial with polynomial degree at
/// most `degree_bound`.
pub fn random_monomial<R: Rng>(alg: &Algebra, rng: &mut R, degree_bound: u32) -> Monomial {
    let n = alg.n();
    let kind = alg.kind();
    let sig = alg.signature();
    let mut m = Monomial::identity(n);
    let (left, right) = (has_left(kind), has_right(kind));
    if left || right {
        let d = rng.gen_range(0..=degree_bound);
        for _ in 0..d {
            let i = rng.gen_range(0..n);
            let to_left = left && (!right || rng.gen_bool(0.5));
            if to_left {
                let step = if kind.is_trig() && rng.gen_bool(0.5) { -1 } else { 1 };
                m.left[i] += step;
            } else {
                let step = if sig.localized && rng.gen_bool(0.3) { -1 } else { 1 };
                m.right[i] += step;
            }
        }
    }
    if n >= 2 {
        let perms = Permutation::all(n);
        m.perm = perms[rng.gen_range(0..perms.len())];
    }
    if kind.has_clifford() {
        m.cliff = rng.gen_range(0..(1u16 << n));
    }
    if sig.tensor {
        m.outer = rng.gen_range(0..(1u16 << n));
    }
    m
}

impl Element {
    /// Multiplies out the generator word of every monomial again.
    pub fn renormalize(&self) -> Element {
        let mut out = Element::zero(&self.alg);
        for (m, c) in &self.terms {
            let w = self.alg.monomial_word(m);
            let e = self.alg.word(&w).expect("monomial words use the algebra's letters");
            out = &out + &e.scale(c);
        }
        out
    }
}

/// Compares `(ab)c` with `a(bc)` on random basis triples and checks that
/// re-normalizing each product is the identity.
pub fn confluence_probe(alg: &Arc<Algebra>, trials: usize, degree_bound: u32, seed: u64) -> ConfluenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[Monomial; 3]> = (0..trials)
        .map(|_| {
            [
                random_monomial(alg, &mut rng, degree_bound),
                random_monomial(alg, &mut rng, degree_bound),
                random_monomial(alg, &mut rng, degree_bound),
            ]
        })
        .collect();
    let outcomes = parallel_map(&triples, |t| {
        let [a, b, c] = t.map(|m| Element::monomial(alg, m, crate::Scalar::one()));
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        let assoc = (left != right).then(|| format!("({a})*({b})*({c})"));
        let idem = (left.renormalize() != left).then(|| format!("({a})*({b})*({c})"));
        (assoc, idem)
    });
    let mut report = ConfluenceReport { trials, ..Default::default() };
    for (assoc, idem) in outcomes {
        report.associativity_failures.extend(assoc);
        report.idempotence_failures.extend(idem);
    }
    report
}
