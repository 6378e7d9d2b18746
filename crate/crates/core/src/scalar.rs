//! Exact coefficients: rational functions in the deformation parameter `u`
//! over the quadratic field `Q(w)`, `w^2 = -2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b*w` with `w^2 = -2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QOmega {
    pub a: BigRational,
    pub b: BigRational,
}

impl QOmega {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QOmega { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        QOmega { a: BigRational::from_integer(a.into()), b: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QOmega {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn omega() -> Self {
        QOmega { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Norm `a^2 + 2 b^2`, positive unless zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        QOmega { a: self.a.clone(), b: -&self.b }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QOmega { a: &self.a / &n, b: -&self.b / &n })
    }

    /// Number of nonzero parts; used by the renderer to decide on parentheses.
    fn parts(&self) -> usize {
        (!self.a.is_zero()) as usize + (!self.b.is_zero()) as usize
    }
}

impl<'a> Add<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn add(self, o: &QOmega) -> QOmega {
        QOmega { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn sub(self, o: &QOmega) -> QOmega {
        QOmega { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn mul(self, o: &QOmega) -> QOmega {
        if self.b.is_zero() && o.b.is_zero() {
            return QOmega { a: &self.a * &o.a, b: BigRational::zero() };
        }
        let two = BigRational::from_integer(2.into());
        QOmega {
            a: &self.a * &o.a - two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega { a: -&self.a, b: -&self.b }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wpart = |b: &BigRational| -> String {
            if b.is_one() {
                "w".to_string()
            } else if (-b).is_one() {
                "-w".to_string()
            } else {
                format!("{}*w", fmt_rational(b))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}", wpart(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", fmt_rational(&self.a), wpart(&-&self.b))
                } else {
                    write!(f, "{} + {}", fmt_rational(&self.a), wpart(&self.b))
                }
            }
        }
    }
}

// Dense univariate polynomials in `u`, lowest degree first, no trailing zeros.
type Poly = Vec<QOmega>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(QOmega::is_zero) {
        p.pop();
    }
}

fn poly_is_one(p: &Poly) -> bool {
    p.len() == 1 && p[0].is_one()
}

fn poly_add(p: &Poly, q: &Poly) -> Poly {
    let mut out: Poly = (0..p.len().max(q.len()))
        .map(|i| match (p.get(i), q.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_neg(p: &Poly) -> Poly {
    p.iter().map(|c| -c).collect()
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    if poly_is_one(p) {
        return q.clone();
    }
    if poly_is_one(q) {
        return p.clone();
    }
    let mut out = vec![QOmega::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(p: &Poly, c: &QOmega) -> Poly {
    let mut out: Poly = p.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Division with remainder; `d` must be nonzero.
fn poly_divrem(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let lead_inv = d.last().expect("nonzero divisor").inv().expect("trimmed");
    let mut rem = n.clone();
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![QOmega::zero(); rem.len() - d.len() + 1];
    while rem.len() >= d.len() && !rem.is_empty() {
        let shift = rem.len() - d.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, dc) in d.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(dc * &c);
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_monic(p: &Poly) -> Poly {
    match p.last() {
        None => Vec::new(),
        Some(l) => poly_scale(p, &l.inv().expect("trimmed")),
    }
}

fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = r;
    }
    poly_monic(&a)
}

fn poly_eval(p: &Poly, x: &QOmega) -> QOmega {
    p.iter().rev().fold(QOmega::zero(), |acc, c| &(&acc * x) + c)
}

/// Element of `Q(w)(u)` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Vec::new(), den: vec![QOmega::one()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(a: i64) -> Self {
        Self::constant(QOmega::from_int(a))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(QOmega::from_ratio(num, den))
    }

    pub fn constant(c: QOmega) -> Self {
        let mut num = vec![c];
        trim(&mut num);
        Scalar { num, den: vec![QOmega::one()] }
    }

    /// The deformation parameter.
    pub fn u() -> Self {
        Scalar { num: vec![QOmega::zero(), QOmega::one()], den: vec![QOmega::one()] }
    }

    /// `w = sqrt(-2)`.
    pub fn omega() -> Self {
        Self::constant(QOmega::omega())
    }

    /// Builds `num/den` from coefficient lists (lowest degree first).
    pub fn from_parts(num: Vec<QOmega>, den: Vec<QOmega>) -> Result<Self> {
        let (mut num, mut den) = (num, den);
        trim(&mut num);
        trim(&mut den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_empty() {
            return Scalar::zero();
        }
        if den.len() == 1 {
            if den[0].is_one() {
                return Scalar { num, den };
            }
            let inv = den[0].inv().expect("nonzero");
            return Scalar { num: poly_scale(&num, &inv), den: vec![QOmega::one()] };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if poly_is_one(&g) {
            (num, den)
        } else {
            (poly_divrem(&num, &g).0, poly_divrem(&den, &g).0)
        };
        let lead_inv = den.last().unwrap().inv().expect("nonzero");
        Scalar { num: poly_scale(&num, &lead_inv), den: poly_scale(&den, &lead_inv) }
    }

    pub fn numerator(&self) -> &[QOmega] {
        &self.num
    }

    pub fn denominator(&self) -> &[QOmega] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        poly_is_one(&self.num) && poly_is_one(&self.den)
    }

    /// True when the scalar does not depend on `u`.
    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    pub fn as_constant(&self) -> Option<QOmega> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.first().cloned().unwrap_or_default())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Substitutes `u = u0`.
    pub fn eval(&self, u0: &QOmega) -> Result<QOmega> {
        let d = poly_eval(&self.den, u0);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: render_poly(&self.den),
                at: u0.to_string(),
            });
        }
        Ok(&poly_eval(&self.num, u0) * &d.inv()?)
    }

    /// Number of top-level summands in the rendered form.
    fn summands(&self) -> usize {
        if self.den.len() > 1 {
            return 1;
        }
        let nonzero: Vec<_> = self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        match nonzero.as_slice() {
            [(_, c)] => c.parts(),
            other => other.len(),
        }
    }

    /// True when the rendered form is a single product (possibly with a
    /// leading minus sign), so it can prefix a monomial without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.summands() <= 1
    }
}

fn render_poly(p: &Poly) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = render_poly_term(k, c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_poly_term(k: usize, c: &QOmega) -> (bool, String) {
    let upow = match k {
        0 => String::new(),
        1 => "u".to_string(),
        _ => format!("u^{k}"),
    };
    // single-part coefficients carry their own sign
    let (neg, c) = if c.parts() == 1 && (c.a.is_negative() || c.b.is_negative()) {
        (true, -c)
    } else {
        (false, c.clone())
    };
    let body = if k == 0 {
        c.to_string()
    } else if c.is_one() {
        upow
    } else if c.parts() == 2 {
        format!("({c})*{upow}")
    } else {
        format!("{c}*{upow}")
    };
    (neg, body)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = render_poly(&self.num);
        if poly_is_one(&self.den) {
            return write!(f, "{num}");
        }
        let multi = Scalar { num: self.num.clone(), den: vec![QOmega::one()] }.summands() > 1;
        let num = if multi { format!("({num})") } else { num };
        let den_terms = self.den.iter().filter(|c| !c.is_zero()).count();
        let den = render_poly(&self.den);
        if den_terms > 1 {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if poly_is_one(&self.den) {
                return Scalar { num: poly_add(&self.num, &o.num), den: self.den.clone() };
            }
            return Scalar::reduce(poly_add(&self.num, &o.num), self.den.clone());
        }
        let num = poly_add(&poly_mul(&self.num, &o.den), &poly_mul(&o.num, &self.den));
        Scalar::reduce(num, poly_mul(&self.den, &o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if poly_is_one(&self.den) && poly_is_one(&o.den) {
            return Scalar { num: poly_mul(&self.num, &o.num), den: self.den.clone() };
        }
        Scalar::reduce(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Result<Scalar>;
    fn div(self, o: &Scalar) -> Result<Scalar> {
        self.checked_div(o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: poly_neg(&self.num), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $tr::$m(&self, &o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for Scalar {
    fn from(a: i64) -> Self {
        Scalar::from_int(a)
    }
}

impl From<QOmega> for Scalar {
    fn from(c: QOmega) -> Self {
        Scalar::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w() -> Scalar {
        Scalar::omega()
    }

    #[test]
    fn omega_squared_is_minus_two() {
        assert_eq!(&w() * &w(), Scalar::from_int(-2));
    }

    #[test]
    fn u_times_inverse() {
        let u = Scalar::u();
        assert!((&u * &u.inv().unwrap()).is_one());
    }

    #[test]
    fn inverse_of_omega() {
        // (a + b w) w = 1  =>  -2b = 1, a = 0
        let expect = Scalar::constant(QOmega::new(BigRational::zero(), BigRational::new((-1).into(), 2.into())));
        assert_eq!(w().inv().unwrap(), expect);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!(Scalar::from_parts(vec![QOmega::one()], vec![]).is_err());
    }

    #[test]
    fn eval_examples() {
        let u = Scalar::u();
        let zero = QOmega::zero();
        assert_eq!((&u + &Scalar::one()).eval(&zero).unwrap(), QOmega::one());
        assert!(matches!(u.inv().unwrap().eval(&zero), Err(Error::Pole { .. })));
        // (u^2 - 1)/(u - 1) reduces to u + 1
        let num = &(&u * &u) - &Scalar::one();
        let den = &u - &Scalar::one();
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &u + &Scalar::one());
        assert_eq!(q.eval(&QOmega::one()).unwrap(), QOmega::from_int(2));
        // limit oracle: values near 1 approach 2
        for k in [10i64, 100, 1000] {
            let x = QOmega::from_ratio(k + 1, k);
            let v = q.eval(&x).unwrap();
            let diff = &v - &QOmega::from_int(2);
            assert_eq!(diff, QOmega::from_ratio(1, k));
        }
    }

    #[test]
    fn denominators_are_monic() {
        let s = Scalar::one().checked_div(&(&Scalar::from_int(3) * &Scalar::u())).unwrap();
        assert!(s.denominator().last().unwrap().is_one());
        assert_eq!(s.to_string(), "1/3/u");
    }

    #[test]
    fn rendering() {
        let u = Scalar::u();
        assert_eq!((-&u).to_string(), "-u");
        let s = (&Scalar::one() + &(&Scalar::from_int(2) * &w())).checked_div(&u).unwrap();
        assert_eq!(s.to_string(), "(1 + 2*w)/u");
        assert_eq!(w().inv().unwrap().to_string(), "-1/2*w");
        let p = &(&u * &u) - &(&Scalar::from_int(3) * &w());
        assert_eq!(p.to_string(), "-3*w + u^2");
        assert!(!p.is_atomic());
        assert!(s.is_atomic());
    }

    fn arb_qomega() -> impl Strategy<Value = QOmega> {
        (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a, ad, b, bd)| {
            QOmega::new(
                BigRational::new(a.into(), ad.into()),
                BigRational::new(b.into(), bd.into()),
            )
        })
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            prop::collection::vec(arb_qomega(), 0..3),
            prop::collection::vec(arb_qomega(), 0..3),
        )
            .prop_map(|(num, mut den)| {
                den.push(QOmega::one());
                Scalar::from_parts(num, den).unwrap_or_else(|_| Scalar::one())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a - &a, Scalar::zero());
        }
    }
}
