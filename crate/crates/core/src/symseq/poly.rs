use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `q` with integer coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.0.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e + s, c)).collect())
    }

    /// `P(q^{-1})`.
    pub fn reflect(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (-e, c)).collect())
    }

    pub fn eval_one(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn eval_minus_one(&self) -> i64 {
        self.0.iter().map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.0.values().all(|&c| c > 0)
    }

    /// `{"exponent": coefficient}` in increasing exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (e, c) in &self.0 {
            m.insert(e.to_string(), serde_json::Value::from(*c));
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let mut p = Self::zero();
        for (k, v) in v.as_object()? {
            p.add_term(v.as_i64()?, k.parse().ok()?);
        }
        Some(p)
    }

    /// Product `Π_{i=1}^{k-1} (1 + i q^step)`.
    pub fn falling_product(k: usize, step: i64) -> Self {
        (1..k as i64).fold(Self::one(), |acc, i| {
            acc * Self::from_terms([(0, 1), (step, i)])
        })
    }
}

impl fmt::Display for LaurentPoly {
    /// Human form such as `1 + 3q + 2q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.0.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        for (e, c) in o.0 {
            self.add_term(c, e);
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        self + (-o)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}
