//! Exact multivariate polynomials over the rationals.
//!
//! Minimal arithmetic for the verification oracle: addition, multiplication,
//! partial differentiation, substitution and evaluation, all exact. Closed
//! under every operation the oracle performs, so equality checks need no
//! tolerances. Variable ids here are plain indices; id 0 is conventionally
//! the argument slot of an outer univariate polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector with finite support: variable id -> exponent >= 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<u32, u32>);

impl Monomial {
    /// The constant monomial 1.
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn var(v: u32) -> Self {
        Self::from_powers([(v, 1)])
    }

    /// Build from (variable, exponent) pairs; zero exponents are dropped,
    /// repeated variables accumulate.
    pub fn from_powers<I: IntoIterator<Item = (u32, u32)>>(powers: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Self(map)
    }

    pub fn degree_of(&self, v: u32) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn powers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.powers().chain(other.powers()))
    }

    /// Split off `v`: (exponent of v, the monomial without v).
    fn extract(&self, v: u32) -> (u32, Monomial) {
        let mut rest = self.0.clone();
        let e = rest.remove(&v).unwrap_or(0);
        (e, Monomial(rest))
    }
}

/// A multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn var(v: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v), BigRational::one());
        p
    }

    /// Add `coeff * mono` into the polynomial, normalizing away zeros.
    pub fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `v`.
    pub fn partial(&self, v: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let (e, rest) = mono.extract(v);
            if e == 0 {
                continue;
            }
            let lowered = rest.mul(&Monomial::from_powers([(v, e - 1)]));
            out.add_term(
                lowered,
                coeff * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Iterated partial derivative: differentiate by each member of `tau`
    /// with its multiplicity. Order is immaterial in exact arithmetic.
    pub fn partial_by(&self, tau: &crate::multiset::Multiset) -> Polynomial {
        let mut out = self.clone();
        for (v, k) in tau.iter() {
            for _ in 0..k {
                out = out.partial(v);
            }
        }
        out
    }

    /// Replace `v` with the polynomial `g`.
    pub fn substitute(&self, v: u32, g: &Polynomial) -> Polynomial {
        let max_e = self
            .terms
            .keys()
            .map(|m| m.degree_of(v))
            .max()
            .unwrap_or(0);
        // powers of g up to the highest exponent of v
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(Polynomial::one());
        for e in 1..=max_e {
            powers.push(&powers[e as usize - 1] * g);
        }
        let mut out = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let (e, rest) = mono.extract(v);
            let mut base = Polynomial::zero();
            base.add_term(rest, coeff.clone());
            out = &out + &(&base * &powers[e as usize]);
        }
        out
    }

    /// Evaluate at an exact rational point covering every variable present.
    pub fn evaluate(&self, point: &BTreeMap<u32, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (v, e) in mono.powers() {
                let x = point.get(&v).ok_or(Error::MissingVariable(v))?;
                value *= x.pow(e as i32);
            }
            total += value;
        }
        Ok(total)
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        out
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), -coeff.clone());
        }
        out
    }
}

impl std::ops::Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = coeff.abs();
            if mono.total_degree() == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                let mut lead = true;
                for (v, e) in mono.powers() {
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    if e == 1 {
                        write!(f, "x{v}")?;
                    } else {
                        write!(f, "x{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
