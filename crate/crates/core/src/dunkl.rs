//! Polynomial realizations of the rational algebras: induced modules
//! `C[y] ⊗ W` and `C[x] ⊗ W`, divided differences and Dunkl operators.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::engine::{defining_relations, Algebra, Element, Formal, Kind, Letter, Monomial};
use crate::error::{Error, Result};
use crate::morphisms::{psi_fin, psi_simple, Morphism};
use crate::parallel::parallel_map;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;
use crate::structure::{clifford_mul, perm_conjugate_clifford, CliffordWord, Permutation};

pub type Exponents = Vec<u16>;
/// Sparse commutative polynomial in `n` variables.
pub type Polynomial = BTreeMap<Exponents, Scalar>;
/// Sparse vector of a finite module.
pub type FiniteVector = BTreeMap<usize, Scalar>;
/// Column `j` holds the image of basis vector `j`.
type Matrix = Vec<FiniteVector>;

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            let sum = o.get() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
    }
}

/// `(a^p b^q - a^q b^p)/(a - b)` as `Σ sign · a^i b^j`.
fn telescope(p: u16, q: u16) -> Vec<(i64, u16, u16)> {
    let (lo, hi, sign) = if p >= q { (q, p, 1) } else { (p, q, -1) };
    let d = hi - lo;
    (0..d).map(|j| (sign, lo + j, lo + d - 1 - j)).collect()
}

fn check_pair(n: usize, i: usize, k: usize) -> Result<()> {
    for idx in [i, k] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { what: "variable".into(), index: idx, n });
        }
    }
    if i == k {
        return Err(Error::Invalid(format!("divided difference needs distinct indices, got {i} twice")));
    }
    Ok(())
}

/// `(f - s_{ki} f)/(y_i - y_k)`, exact, by telescoping each monomial.
pub fn divided_difference(f: &Polynomial, i: usize, k: usize) -> Result<Polynomial> {
    let n = f.keys().next().map_or(i.max(k), Vec::len);
    check_pair(n, i, k)?;
    Ok(twisted_quotient(f, i - 1, k - 1, false))
}

/// With `signed = false`: `(f - s f)/(v_i - v_k)`.
/// With `signed = true`: `(θf - f)/(v_i + v_k)`, where `θ` swaps the two
/// variables and negates both.
fn twisted_quotient(f: &Polynomial, i: usize, k: usize, signed: bool) -> Polynomial {
    let mut out = Polynomial::new();
    for (e, c) in f {
        let (p, q) = (e[i], e[k]);
        for (sign, ea, eb) in telescope(p, q) {
            let mut e2 = e.clone();
            e2[i] = ea;
            e2[k] = eb;
            let flip = if signed && (q + 1 + eb) % 2 == 1 { -sign } else { sign };
            accumulate(&mut out, e2, &(c * &Scalar::from_int(flip)));
        }
    }
    out
}

/// Parses a product of `y<i>` / `x<i>` powers into an exponent vector.
pub fn monomial_exponents(n: usize, vars: &[(usize, u16)]) -> Result<Exponents> {
    let mut e = vec![0; n];
    for &(i, p) in vars {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { what: "variable".into(), index: i, n });
        }
        e[i - 1] += p;
    }
    Ok(e)
}

/// A module over a finite algebra (`C_n ⋊ C S_n`, `C S_n^-`, or
/// `C_n ⊗ C S_n^-`) given by the matrices of its generators.
#[derive(Clone)]
pub struct FiniteModule {
    name: String,
    alg: Arc<Algebra>,
    labels: Vec<String>,
    gens: HashMap<Letter, Matrix>,
}

fn is_finite(kind: Kind) -> bool {
    matches!(kind, Kind::Sym | Kind::CliffordSym | Kind::SpinSym)
}

impl FiniteModule {
    pub fn new(name: impl Into<String>, alg: Arc<Algebra>, labels: Vec<String>, gens: Vec<(Letter, Matrix)>) -> Result<Self> {
        if !is_finite(alg.kind()) {
            return Err(Error::Invalid(format!("{} is not a finite algebra", alg.name())));
        }
        let dim = labels.len();
        let gens: HashMap<Letter, Matrix> = gens.into_iter().collect();
        for g in alg.generators() {
            let m = gens.get(&g).ok_or_else(|| Error::Invalid(format!("no action given for {g}")))?;
            if m.len() != dim || m.iter().flat_map(|col| col.keys()).any(|&r| r >= dim) {
                return Err(Error::SizeMismatch { left: m.len(), right: dim });
            }
        }
        Ok(FiniteModule { name: name.into(), alg, labels, gens })
    }

    /// `L_n = C_n` with Clifford left multiplication and `S_n` permuting
    /// indices.
    pub fn basic_spin(n: usize) -> Result<Self> {
        let alg = Algebra::new(Kind::CliffordSym, n)?;
        let words: Vec<CliffordWord> = (0..1u16 << n).map(CliffordWord).collect();
        let labels = words.iter().map(|w| clifford_label(*w)).collect();
        let mut gens = Vec::new();
        for i in 1..=n {
            let col = |w: &CliffordWord| {
                let (s, img) = clifford_mul(CliffordWord::generator(i), *w);
                FiniteVector::from([(img.0 as usize, Scalar::from_int(s as i64))])
            };
            gens.push((Letter::C((i - 1) as u8), words.iter().map(col).collect()));
        }
        for i in 1..n {
            let p = Permutation::simple(n, i)?;
            let col = |w: &CliffordWord| {
                let (s, img) = perm_conjugate_clifford(&p, *w);
                FiniteVector::from([(img.0 as usize, Scalar::from_int(s as i64))])
            };
            gens.push((Letter::S((i - 1) as u8), words.iter().map(col).collect()));
        }
        FiniteModule::new(format!("basic-spin(n={n})"), alg, labels, gens)
    }

    /// `L_n` as a `C S_n^-`-module through `t_i ↦ (1/ω)(c_{i+1} - c_i) s_i`.
    pub fn basic_spin_odd(n: usize) -> Result<Self> {
        let target = Algebra::new(Kind::CliffordSym, n)?;
        let source = Algebra::new(Kind::SpinSym, n)?;
        let images = (0..n.saturating_sub(1) as u8).map(|i| Ok((Letter::T(i), psi_simple(&target, i)?))).collect::<Result<Vec<_>>>()?;
        let m = Morphism::new("SpinRestriction".into(), source, target, images)?;
        let mut out = FiniteModule::basic_spin(n)?.pullback(&m)?;
        out.name = format!("basic-spin-odd(n={n})");
        Ok(out)
    }

    /// `L_n` as a `C_n ⊗ C S_n^-`-module through the finite isomorphism.
    pub fn basic_spin_tensor(n: usize) -> Result<Self> {
        let mut out = FiniteModule::basic_spin(n)?.pullback(&psi_fin(n)?)?;
        out.name = format!("basic-spin-tensor(n={n})");
        Ok(out)
    }

    /// The left regular module of a finite algebra.
    pub fn regular(alg: &Arc<Algebra>) -> Result<Self> {
        if !is_finite(alg.kind()) {
            return Err(Error::Invalid(format!("{} is not a finite algebra", alg.name())));
        }
        let n = alg.n();
        let cl = if alg.kind().has_clifford() { 1u16 << n } else { 1 };
        let outer = if alg.signature().tensor { 1u16 << n } else { 1 };
        let mut basis = Vec::new();
        for p in Permutation::all(n) {
            for c in 0..cl {
                for o in 0..outer {
                    let mut m = Monomial::identity(n);
                    m.perm = p;
                    m.cliff = c;
                    m.outer = o;
                    basis.push(m);
                }
            }
        }
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let labels = basis.iter().map(|m| alg.render_monomial(m)).collect();
        let mut gens = Vec::new();
        for g in alg.generators() {
            let ge = alg.letter(g)?;
            let cols = basis
                .iter()
                .map(|m| {
                    let prod = &ge * &Element::monomial(alg, *m, Scalar::one());
                    prod.terms().map(|(m2, c)| (index[m2], c.clone())).collect()
                })
                .collect();
            gens.push((g, cols));
        }
        FiniteModule::new(format!("regular({})", alg.name()), alg.clone(), labels, gens)
    }

    /// The module over `m.source()` with `g` acting as `m(g)`.
    pub fn pullback(&self, m: &Morphism) -> Result<Self> {
        if !self.alg.accepts(m.target()) {
            return Err(Error::AlgebraMismatch { left: m.target().name(), right: self.alg.name() });
        }
        let gens = m
            .images()
            .into_iter()
            .map(|(g, img)| Ok((g, self.matrix_of(img)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteModule::new(format!("{}^{}", self.name, m.name()), m.source().clone(), self.labels.clone(), gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, j: usize) -> FiniteVector {
        FiniteVector::from([(j, Scalar::one())])
    }

    fn act_letter(&self, g: Letter, v: &FiniteVector) -> FiniteVector {
        let m = &self.gens[&g];
        let mut out = FiniteVector::new();
        for (j, c) in v {
            for (r, a) in &m[*j] {
                accumulate(&mut out, *r, &(c * a));
            }
        }
        out
    }

    /// Acts by a generator word, rightmost letter first.
    pub fn act_word(&self, word: &[Letter], v: &FiniteVector) -> Result<FiniteVector> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            if !self.gens.contains_key(g) {
                return Err(Error::UnknownGenerator { generator: g.to_string(), algebra: self.alg.name() });
            }
            cur = self.act_letter(*g, &cur);
        }
        Ok(cur)
    }

    pub fn act(&self, e: &Element, v: &FiniteVector) -> Result<FiniteVector> {
        if !self.alg.accepts(e.algebra()) {
            return Err(Error::AlgebraMismatch { left: e.algebra().name(), right: self.alg.name() });
        }
        let mut out = FiniteVector::new();
        for (m, c) in e.terms() {
            for (r, a) in self.act_word(&self.alg.monomial_word(m), v)? {
                accumulate(&mut out, r, &(c * &a));
            }
        }
        Ok(out)
    }

    fn matrix_of(&self, e: &Element) -> Result<Matrix> {
        (0..self.dim()).map(|j| self.act(e, &self.basis_vector(j))).collect()
    }

    /// Every defining relation of the finite algebra acts as zero.
    pub fn check_relations(&self) -> Report {
        let rels = defining_relations(&self.alg);
        rels.iter()
            .map(|r| {
                let diff = r.difference();
                for j in 0..self.dim() {
                    match act_formal(self, &diff, &self.basis_vector(j)) {
                        Ok(v) if v.is_empty() => {}
                        Ok(v) => return CheckResult::fail(r.id.clone(), format!("on {}: {v:?}", self.labels[j])),
                        Err(e) => return CheckResult::fail(r.id.clone(), e.to_string()),
                    }
                }
                CheckResult::pass(r.id.clone())
            })
            .collect()
    }
}

fn clifford_label(w: CliffordWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.indices().iter().map(|i| format!("c{i}")).collect::<Vec<_>>().join("*")
    }
}

fn act_formal(m: &FiniteModule, f: &Formal, v: &FiniteVector) -> Result<FiniteVector> {
    let mut out = FiniteVector::new();
    for (c, w) in f {
        for (r, a) in m.act_word(w, v)? {
            accumulate(&mut out, r, &(c * &a));
        }
    }
    Ok(out)
}

/// Which polynomial subalgebra carries the induced module.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyVar {
    /// `C[y] ⊗ W`; `x_i` or `ξ_i` act by Dunkl operators.
    Y,
    /// `C[x] ⊗ W`; `y_i` acts by Dunkl operators.
    X,
}

impl PolyVar {
    fn symbol(self) -> char {
        match self {
            PolyVar::Y => 'y',
            PolyVar::X => 'x',
        }
    }
}

/// Element of `C[v_1..v_n] ⊗ W`: `(exponents, basis index) ↦ coefficient`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct InducedVector {
    terms: BTreeMap<(Exponents, usize), Scalar>,
}

impl InducedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(e: Exponents, w: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(e, w, &Scalar::one());
        v
    }

    /// `f ⊗ w` for a polynomial `f` and finite vector `w`.
    pub fn from_parts(f: &Polynomial, w: &FiniteVector) -> Self {
        let mut v = Self::zero();
        for (e, a) in f {
            for (j, b) in w {
                v.add_term(e.clone(), *j, &(a * b));
            }
        }
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, usize, &Scalar)> {
        self.terms.iter().map(|((e, w), c)| (e, *w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total polynomial degree among the terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(e, _)| e.iter().map(|&x| x as u32).sum()).max()
    }

    fn add_term(&mut self, e: Exponents, w: usize, c: &Scalar) {
        accumulate(&mut self.terms, (e, w), c);
    }

    fn add_scaled(&mut self, other: &InducedVector, c: &Scalar) {
        for ((e, w), a) in &other.terms {
            self.add_term(e.clone(), *w, &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> InducedVector {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &InducedVector) -> InducedVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }
}

/// The induced module `A ⊗_B W` for the rational DaHCa or sDaHa (possibly
/// tensored with `C_n`), realized on polynomials tensor `W`.
pub struct InducedModule {
    alg: Arc<Algebra>,
    fin: FiniteModule,
    var: PolyVar,
    /// Dunkl coefficient matrices keyed by 0-based `(i, k)`.
    coeff: HashMap<(usize, usize), Vec<Matrix>>,
}

impl InducedModule {
    pub fn new(alg: Arc<Algebra>, fin: FiniteModule, var: PolyVar) -> Result<Self> {
        let finite_kind = match alg.kind() {
            Kind::DaHCa => Kind::CliffordSym,
            Kind::SDaHa => Kind::SpinSym,
            _ => return Err(Error::Invalid(format!("no polynomial realization for {}", alg.name()))),
        };
        let (fs, s) = (fin.alg.signature(), alg.signature());
        if fs.kind != finite_kind || fs.n != s.n || fs.tensor != s.tensor || fs.u != s.u {
            return Err(Error::AlgebraMismatch { left: fin.alg.name(), right: alg.name() });
        }
        if s.localized {
            return Err(Error::Invalid("polynomial realizations need the non-localized algebra".into()));
        }
        if var == PolyVar::X && alg.kind() != Kind::DaHCa {
            return Err(Error::Invalid("the C[x] realization is defined for DaHCa only".into()));
        }
        let n = alg.n();
        let fa = fin.alg.clone();
        let mut coeff = HashMap::new();
        for i in 0..n {
            for k in (0..n).filter(|&k| k != i) {
                let elems: Vec<Element> = match (var, alg.kind()) {
                    (PolyVar::Y, Kind::DaHCa) => {
                        let cc = &fa.letter(Letter::C(i as u8))? * &fa.letter(Letter::C(k as u8))?;
                        vec![&(&fa.one() - &cc) * &fa.transposition(k + 1, i + 1)?]
                    }
                    (PolyVar::Y, _) => vec![fa.odd_transposition(k + 1, i + 1)?],
                    (PolyVar::X, _) => {
                        let s = fa.transposition(i + 1, k + 1)?;
                        let cc = &fa.letter(Letter::C(k as u8))? * &fa.letter(Letter::C(i as u8))?;
                        vec![s.clone(), &cc * &s]
                    }
                };
                coeff.insert((i, k), elems.iter().map(|e| fin.matrix_of(e)).collect::<Result<Vec<_>>>()?);
            }
        }
        Ok(InducedModule { alg, fin, var, coeff })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn finite(&self) -> &FiniteModule {
        &self.fin
    }

    pub fn var(&self) -> PolyVar {
        self.var
    }

    /// All `v^e ⊗ w_j` with total degree at most `degree_bound`.
    pub fn basis(&self, degree_bound: u32) -> Vec<InducedVector> {
        let n = self.alg.n();
        let mut exps = vec![vec![0u16; n]];
        for _ in 0..degree_bound {
            let mut next = Vec::new();
            for e in &exps {
                let last = e.iter().rposition(|&x| x > 0).unwrap_or(0);
                for i in last..n {
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    next.push(e2);
                }
            }
            exps.extend(next.iter().filter(|e| !exps.contains(e)).cloned().collect::<Vec<_>>());
        }
        exps.sort();
        exps.dedup();
        let mut out = Vec::new();
        for e in exps {
            for j in 0..self.fin.dim() {
                out.push(InducedVector::basis(e.clone(), j));
            }
        }
        out
    }

    /// `f ⊗ w_j` for an element `f` that is a polynomial in the module's
    /// variables.
    pub fn vector_from_element(&self, f: &Element, j: usize) -> Result<InducedVector> {
        if !self.alg.accepts(f.algebra()) {
            return Err(Error::AlgebraMismatch { left: f.algebra().name(), right: self.alg.name() });
        }
        if j >= self.fin.dim() {
            return Err(Error::IndexOutOfRange { what: "module basis".into(), index: j, n: self.fin.dim() });
        }
        let mut out = InducedVector::zero();
        for (m, c) in f.terms() {
            let (poly, other) = match self.var {
                PolyVar::Y => (m.right_exponents(), m.left_exponents()),
                PolyVar::X => (m.left_exponents(), m.right_exponents()),
            };
            let pure = m.perm().is_identity() && m.clifford_bits() == 0 && m.outer_bits() == 0;
            if !pure || other.iter().any(|&x| x != 0) || poly.iter().any(|&x| x < 0) {
                return Err(Error::Invalid(format!(
                    "{} is not a polynomial in {}",
                    self.alg.render_monomial(m),
                    self.var.symbol()
                )));
            }
            let e = poly.iter().take(self.alg.n()).map(|&x| x as u16).collect();
            out.add_term(e, j, c);
        }
        Ok(out)
    }

    /// Index of the finite basis vector labelled `label`.
    pub fn basis_index(&self, label: &str) -> Result<usize> {
        self.fin
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Invalid(format!("no basis vector {label:?}; have {}", self.fin.labels.join(", "))))
    }

    fn apply_matrix(&self, m: &Matrix, f_exp: &Exponents, w: usize, c: &Scalar, out: &mut InducedVector) {
        for (r, a) in &m[w] {
            out.add_term(f_exp.clone(), *r, &(c * a));
        }
    }

    fn check_dunkl(&self, i: usize, letter: &str, ok: bool) -> Result<usize> {
        if !ok {
            return Err(Error::UnknownGenerator { generator: letter.into(), algebra: format!("{} on C[{}]", self.alg.name(), self.var.symbol()) });
        }
        if i == 0 || i > self.alg.n() {
            return Err(Error::IndexOutOfRange { what: letter.into(), index: i, n: self.alg.n() });
        }
        Ok(i - 1)
    }

    /// `u Σ_{k≠i} ∂_{ik}(f) ⊗ coefficient_{ik}(w)` on `C[y] ⊗ W`.
    fn dunkl_on_y(&self, i: usize, v: &InducedVector) -> InducedVector {
        let u = self.alg.u();
        let mut out = InducedVector::zero();
        for ((e, w), c) in &v.terms {
            let f = Polynomial::from([(e.clone(), c * &u)]);
            for k in (0..self.alg.n()).filter(|&k| k != i) {
                let d = twisted_quotient(&f, i, k, false);
                for (e2, c2) in &d {
                    self.apply_matrix(&self.coeff[&(i, k)][0], e2, *w, c2, &mut out);
                }
            }
        }
        out
    }

    /// `x_i ∘ (f ⊗ w) = u Σ_{k≠i} ∂_{ik}(f) ⊗ (1 - c_i c_k) s_{ki}(w)`.
    pub fn dunkl_x(&self, i: usize, v: &InducedVector) -> Result<InducedVector> {
        let i = self.check_dunkl(i, "x", self.var == PolyVar::Y && self.alg.kind() == Kind::DaHCa)?;
        Ok(self.dunkl_on_y(i, v))
    }

    /// `ξ_i ∘ (f ⊗ w) = u Σ_{k≠i} ∂_{ik}(f) ⊗ [k, i](w)`.
    pub fn dunkl_xi(&self, i: usize, v: &InducedVector) -> Result<InducedVector> {
        let i = self.check_dunkl(i, "xi", self.var == PolyVar::Y && self.alg.kind() == Kind::SDaHa)?;
        Ok(self.dunkl_on_y(i, v))
    }

    /// `y_i ∘ (f ⊗ w) = u Σ_{k≠i} [ (f - s_{ik}f)/(x_k - x_i) ⊗ s_{ik}(w)
    ///   + (θf - f)/(x_i + x_k) ⊗ c_k c_i s_{ik}(w) ]` with `θ` the signed swap.
    pub fn dunkl_y(&self, i: usize, v: &InducedVector) -> Result<InducedVector> {
        let i = self.check_dunkl(i, "y", self.var == PolyVar::X)?;
        let u = self.alg.u();
        let mut out = InducedVector::zero();
        for ((e, w), c) in &v.terms {
            let f = Polynomial::from([(e.clone(), c * &u)]);
            for k in (0..self.alg.n()).filter(|&k| k != i) {
                let mats = &self.coeff[&(i, k)];
                for (e2, c2) in &twisted_quotient(&f, i, k, false) {
                    self.apply_matrix(&mats[0], e2, *w, &-c2, &mut out);
                }
                for (e2, c2) in &twisted_quotient(&f, i, k, true) {
                    self.apply_matrix(&mats[1], e2, *w, c2, &mut out);
                }
            }
        }
        Ok(out)
    }

    /// Action of a finite-algebra letter: `g(f ⊗ w) = g(f) ⊗ g w`.
    fn act_finite_letter(&self, g: Letter, v: &InducedVector) -> InducedVector {
        let m = &self.fin.gens[&g];
        let mut out = InducedVector::zero();
        for ((e, w), c) in &v.terms {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            match g {
                Letter::S(i) | Letter::T(i) => e2.swap(i as usize, i as usize + 1),
                Letter::C(i) if self.var == PolyVar::X && e[i as usize] % 2 == 1 => c2 = -c,
                _ => {}
            }
            self.apply_matrix(m, &e2, *w, &c2, &mut out);
        }
        out
    }

    fn multiply_var(&self, i: usize, v: &InducedVector) -> InducedVector {
        let mut out = InducedVector::zero();
        for ((e, w), c) in &v.terms {
            let mut e2 = e.clone();
            e2[i] += 1;
            out.add_term(e2, *w, c);
        }
        out
    }

    /// Action of one generator through the closed formulas.
    pub fn act_letter(&self, g: Letter, v: &InducedVector) -> Result<InducedVector> {
        self.alg.check_letter(g)?;
        let i = g.index();
        Ok(match (self.var, g) {
            (PolyVar::Y, Letter::Y(_)) | (PolyVar::X, Letter::X(_)) => self.multiply_var(i, v),
            (PolyVar::Y, Letter::X(_)) | (PolyVar::Y, Letter::Xi(_)) => self.dunkl_on_y(i, v),
            (PolyVar::X, Letter::Y(_)) => self.dunkl_y(i + 1, v)?,
            _ => self.act_finite_letter(g, v),
        })
    }

    /// Acts by a generator word, rightmost letter first.
    pub fn act_word(&self, word: &[Letter], v: &InducedVector) -> Result<InducedVector> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.act_letter(*g, &cur)?;
        }
        Ok(cur)
    }

    pub fn act(&self, e: &Element, v: &InducedVector) -> Result<InducedVector> {
        if !self.alg.accepts(e.algebra()) {
            return Err(Error::AlgebraMismatch { left: e.algebra().name(), right: self.alg.name() });
        }
        let mut out = InducedVector::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.act_word(&self.alg.monomial_word(m), v)?, c);
        }
        Ok(out)
    }

    pub fn act_formal(&self, f: &Formal, v: &InducedVector) -> Result<InducedVector> {
        let mut out = InducedVector::zero();
        for (c, w) in f {
            out.add_scaled(&self.act_word(w, v)?, c);
        }
        Ok(out)
    }

    fn poly_letter(&self, i: usize) -> Letter {
        match self.var {
            PolyVar::Y => Letter::Y(i as u8),
            PolyVar::X => Letter::X(i as u8),
        }
    }

    fn is_dunkl_letter(&self, g: Letter) -> bool {
        matches!((self.var, g), (PolyVar::Y, Letter::X(_) | Letter::Xi(_)) | (PolyVar::X, Letter::Y(_)))
    }

    /// Independent evaluation through the rewriting engine: normalize
    /// `g · f` (or `[g, f]` when `g` kills `W`), then read each normal
    /// monomial `σ c v^γ` as `v^{σγ} ⊗ σ c (w)`.
    pub fn act_by_rewriting(&self, g: Letter, v: &InducedVector) -> Result<InducedVector> {
        self.alg.check_letter(g)?;
        let ge = self.alg.letter(g)?;
        let n = self.alg.n();
        let mut out = InducedVector::zero();
        for ((e, w), c) in &v.terms {
            let mut f = self.alg.one();
            for (i, &p) in e.iter().enumerate() {
                f = &f * &self.alg.letter(self.poly_letter(i))?.pow(p as u32);
            }
            let prod = if self.is_dunkl_letter(g) { ge.bracket(&f) } else { &ge * &f };
            for (m, a) in prod.terms() {
                let (poly, other) = match self.var {
                    PolyVar::Y => (m.right_exponents(), m.left_exponents()),
                    PolyVar::X => (m.left_exponents(), m.right_exponents()),
                };
                if other.iter().any(|&x| x != 0) || poly.iter().any(|&x| x < 0) {
                    return Err(Error::Invalid(format!("term {} does not act on the induced module", self.alg.render_monomial(m))));
                }
                let mut fin_mono = *m;
                fin_mono.left = [0; 8];
                fin_mono.right = [0; 8];
                let mut e2 = vec![0u16; n];
                for (j, &x) in poly.iter().enumerate().take(n) {
                    let target = match self.var {
                        PolyVar::Y => m.perm.apply0(j),
                        PolyVar::X => j,
                    };
                    e2[target] = x as u16;
                }
                let fe = Element::monomial(&self.fin.alg, fin_mono, c * a);
                for (r, b) in self.fin.act(&fe, &self.fin.basis_vector(*w))? {
                    out.add_term(e2.clone(), r, &b);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, v: &InducedVector) -> Value {
        let sym = self.var.symbol();
        let terms: Vec<Value> = v
            .terms()
            .map(|(e, w, c)| json!({"coeff": c.to_string(), "poly": render_exponents(sym, e), "w": self.fin.labels[w]}))
            .collect();
        json!({"module": self.fin.name, "algebra": self.alg.name(), "terms": terms})
    }

    pub fn render(&self, v: &InducedVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let sym = self.var.symbol();
        v.terms()
            .map(|(e, w, c)| format!("({c})*{} (x) {}", render_exponents(sym, e), self.fin.labels[w]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn render_exponents(sym: char, e: &[u16]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| if p == 1 { format!("{sym}{}", i + 1) } else { format!("{sym}{}^{p}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Every defining relation of the algebra acts as zero on each basis vector
/// of degree at most `degree_bound`, and each generator's closed-form action
/// matches the rewriting-engine evaluation.
pub fn verify_module(module: &InducedModule, degree_bound: u32) -> Report {
    let basis = module.basis(degree_bound);
    let rels = defining_relations(&module.alg);
    let mut rep: Report = parallel_map(&rels, |r| {
        let diff = r.difference();
        for v in &basis {
            match module.act_formal(&diff, v) {
                Ok(res) if res.is_zero() => {}
                Ok(res) => return CheckResult::fail(r.id.clone(), module.render(&res)),
                Err(e) => return CheckResult::fail(r.id.clone(), e.to_string()),
            }
        }
        CheckResult::pass(r.id.clone())
    })
    .into_iter()
    .collect();
    let gens = module.alg.generators();
    let oracle = parallel_map(&gens, |&g| {
        let id = format!("oracle({g})");
        for v in &basis {
            let lhs = module.act_letter(g, v);
            let rhs = module.act_by_rewriting(g, v);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => return CheckResult::fail(id, format!("on {}: {}", module.render(v), module.render(&a.sub(&b)))),
                (Err(e), _) | (_, Err(e)) => return CheckResult::fail(id, e.to_string()),
            }
        }
        CheckResult::pass(id)
    });
    rep.results.extend(oracle);
    rep
}

/// Named finite modules for the command line.
pub fn finite_module_by_name(name: &str, n: usize) -> Result<FiniteModule> {
    match name.to_ascii_lowercase().as_str() {
        "basic-spin" => FiniteModule::basic_spin(n),
        "basic-spin-odd" => FiniteModule::basic_spin_odd(n),
        "basic-spin-tensor" => FiniteModule::basic_spin_tensor(n),
        "regular-clifford" => FiniteModule::regular(&Algebra::new(Kind::CliffordSym, n)?),
        "regular-spin" => FiniteModule::regular(&Algebra::new(Kind::SpinSym, n)?),
        other => Err(Error::Invalid(format!(
            "unknown module {other:?}; expected basic-spin, basic-spin-odd, basic-spin-tensor, regular-clifford or regular-spin"
        ))),
    }
}

/// The DaHCa action on `C[y] ⊗ L_n`, pulled back along the isomorphism from
/// `C_n ⊗ sDaHa`, equals that algebra's own Dunkl action on `C[y] ⊗ L_n`.
pub fn check_phi_compatibility(n: usize, degree_bound: u32) -> Result<Report> {
    let clifford = InducedModule::new(Algebra::new(Kind::DaHCa, n)?, FiniteModule::basic_spin(n)?, PolyVar::Y)?;
    let tsd = Algebra::from_signature(crate::engine::Signature::new(Kind::SDaHa, n).tensor())?;
    let spin = InducedModule::new(tsd, FiniteModule::basic_spin_tensor(n)?, PolyVar::Y)?;
    let psi = crate::morphisms::psi(n)?;
    let basis = spin.basis(degree_bound);
    let mut rep = Report::new();
    for (g, img) in psi.images() {
        let id = format!("transport({g})");
        let mut result = CheckResult::pass(id.clone());
        for v in &basis {
            let a = spin.act_letter(g, v)?;
            let b = clifford.act(img, v)?;
            if a != b {
                result = CheckResult::fail(id, format!("on {}: {}", spin.render(v), spin.render(&a.sub(&b))));
                break;
            }
        }
        rep.push(result);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, &[u16])]) -> Polynomial {
        terms.iter().map(|(c, e)| (e.to_vec(), Scalar::from_int(*c))).collect()
    }

    #[test]
    fn divided_differences() {
        assert_eq!(divided_difference(&poly(&[(1, &[2, 0])]), 1, 2).unwrap(), poly(&[(1, &[1, 0]), (1, &[0, 1])]));
        let sym = poly(&[(1, &[2, 0]), (1, &[0, 2]), (3, &[1, 1])]);
        assert!(divided_difference(&sym, 1, 2).unwrap().is_empty());
        assert!(divided_difference(&poly(&[(1, &[1, 1])]), 1, 2).unwrap().is_empty());
        assert!(divided_difference(&poly(&[(1, &[1, 1])]), 1, 1).is_err());
    }

    #[test]
    fn signed_quotient_matches_definition() {
        // (θf - f)/(x1 + x2) for f = x1^2 x2: θf = x2^2 * (-x1)... = -x1 x2^2
        let f = poly(&[(1, &[2, 1])]);
        let q = twisted_quotient(&f, 0, 1, true);
        // (-x1 x2^2 - x1^2 x2)/(x1 + x2) = -x1 x2
        assert_eq!(q, poly(&[(-1, &[1, 1])]));
    }

    #[test]
    fn finite_modules_satisfy_relations() {
        for n in 1..=3 {
            for m in [
                FiniteModule::basic_spin(n).unwrap(),
                FiniteModule::basic_spin_odd(n).unwrap(),
                FiniteModule::basic_spin_tensor(n).unwrap(),
                FiniteModule::regular(&Algebra::new(Kind::SpinSym, n).unwrap()).unwrap(),
            ] {
                let rep = m.check_relations();
                assert!(rep.all_pass(), "{}: {:?}", m.name(), rep.failures().next());
            }
        }
    }

    #[test]
    fn dunkl_examples() {
        let m = InducedModule::new(Algebra::new(Kind::DaHCa, 2).unwrap(), FiniteModule::basic_spin(2).unwrap(), PolyVar::Y).unwrap();
        let v = InducedVector::basis(vec![0, 1], 0);
        let out = m.dunkl_x(1, &v).unwrap();
        let u = Scalar::u();
        let mut expected = InducedVector::zero();
        expected.add_term(vec![0, 0], 0, &-&u);
        expected.add_term(vec![0, 0], 3, &u);
        assert_eq!(out, expected);
        assert!(m.dunkl_x(2, &InducedVector::basis(vec![0, 0], 2)).unwrap().is_zero());
        let sym = InducedVector::basis(vec![1, 1], 1);
        assert!(m.dunkl_x(1, &sym).unwrap().is_zero());

        let s = InducedModule::new(Algebra::new(Kind::SDaHa, 2).unwrap(), FiniteModule::regular(&Algebra::new(Kind::SpinSym, 2).unwrap()).unwrap(), PolyVar::Y).unwrap();
        let out = s.dunkl_xi(1, &InducedVector::basis(vec![0, 1], 0)).unwrap();
        let t1 = s.act_letter(Letter::T(0), &InducedVector::basis(vec![0, 0], 0)).unwrap();
        assert_eq!(out, t1.scale(&u));
        assert!(s.dunkl_x(1, &t1).is_err());

        let x = InducedModule::new(Algebra::new(Kind::DaHCa, 2).unwrap(), FiniteModule::basic_spin(2).unwrap(), PolyVar::X).unwrap();
        assert!(x.dunkl_y(1, &InducedVector::basis(vec![0, 0], 0)).unwrap().is_zero());
    }

    #[test]
    fn modules_verify_small() {
        let cases = [
            InducedModule::new(Algebra::new(Kind::DaHCa, 2).unwrap(), FiniteModule::basic_spin(2).unwrap(), PolyVar::Y).unwrap(),
            InducedModule::new(Algebra::new(Kind::DaHCa, 2).unwrap(), FiniteModule::basic_spin(2).unwrap(), PolyVar::X).unwrap(),
            InducedModule::new(Algebra::new(Kind::SDaHa, 2).unwrap(), FiniteModule::basic_spin_odd(2).unwrap(), PolyVar::Y).unwrap(),
            InducedModule::new(Algebra::new(Kind::SDaHa, 2).unwrap(), FiniteModule::regular(&Algebra::new(Kind::SpinSym, 2).unwrap()).unwrap(), PolyVar::Y).unwrap(),
        ];
        for m in &cases {
            let rep = verify_module(m, 3);
            assert!(rep.all_pass(), "{}: {:?}", m.fin.name, rep.failures().next());
        }
    }

    #[test]
    fn transport_through_isomorphism() {
        let rep = check_phi_compatibility(2, 3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().next());
    }
}
