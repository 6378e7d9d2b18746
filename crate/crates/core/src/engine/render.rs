//! Text and JSON forms of elements.

use std::fmt;

use serde_json::{json, Value};

use super::{Algebra, Element, Kind, Monomial};

fn factor(base: &str, e: i16) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

impl Algebra {
    /// Slot-ordered text of a monomial; `"1"` for the identity.
    pub fn render_monomial(&self, m: &Monomial) -> String {
        let n = self.n();
        let kind = self.kind();
        let mut parts: Vec<String> = Vec::new();
        for i in 0..n {
            if m.outer >> i & 1 == 1 {
                parts.push(format!("c{}", i + 1));
            }
        }
        for i in 0..n {
            let e = m.left[i];
            if e == 0 {
                continue;
            }
            let k = i + 1;
            parts.push(match kind {
                Kind::DaHCa => factor(&format!("x{k}"), e),
                Kind::AffineHC => factor(&format!("a{k}"), e),
                Kind::SpinAffine => factor(&format!("b{k}"), e),
                Kind::SDaHa => factor(&format!("xi{k}"), e),
                _ if e > 0 => factor(&format!("e({k})"), e),
                _ => factor(&format!("einv({k})"), -e),
            });
        }
        if !m.perm.is_identity() {
            match (kind.is_spin(), m.perm.is_transposition()) {
                (false, Some((i, j))) => parts.push(format!("s{i}{j}")),
                (spin, _) => {
                    let g = if spin { 't' } else { 's' };
                    parts.extend(m.perm.canonical_word().into_iter().map(|k| format!("{g}{}", k + 1)));
                }
            }
        }
        for i in 0..n {
            if m.cliff >> i & 1 == 1 {
                parts.push(format!("c{}", i + 1));
            }
        }
        for i in 0..n {
            let e = m.right[i];
            if e == 0 {
                continue;
            }
            let k = i + 1;
            parts.push(match kind {
                Kind::TrigDaHCa => factor(&format!("epsv({k})"), e),
                Kind::TrigSDaHa => factor(&format!("zeta({k})"), e),
                _ => factor(&format!("y{k}"), e),
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Element {
    /// Terms as `(coefficient, monomial)` strings, in display order.
    pub fn rendered_terms(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(m, c)| (c.to_string(), self.alg.render_monomial(m))).collect()
    }

    /// `{"algebra": …, "n": …, "terms": [{"coeff": …, "mono": …}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .rendered_terms()
            .into_iter()
            .map(|(c, m)| json!({"coeff": c, "mono": m}))
            .collect();
        json!({"algebra": self.alg.name(), "n": self.alg.n(), "terms": terms})
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = self.alg.render_monomial(m);
            let term = if m.is_identity() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if c.is_atomic() {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            };
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, term),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
