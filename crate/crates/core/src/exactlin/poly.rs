//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::field::PrimeField;
use crate::error::{arg_err, Result};

pub type Rational = BigRational;

/// Exponent vector of a monomial; its length is the variable count.
pub type Exponents = Vec<u32>;

/// A polynomial in a fixed number of variables.
///
/// Terms are keyed by exponent vector. The map order is the lexicographic
/// monomial order with variable 0 most significant, so the last entry is the
/// leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    /// The coordinate function of variable `index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial by summing the given terms; repeated exponents merge.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Result<Self> {
        if index >= self.nvars {
            return arg_err(format!(
                "variable index {index} out of range for {} variables",
                self.nvars
            ));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[index] -= 1;
            out.add_term(d, c * Rational::from_integer(e[index].into()));
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let step = Self::monomial(qe.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// The same polynomial in a ring of `nvars` variables, with variable `i`
    /// renamed to `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars, "embedding out of range");
        SparsePolynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut big = vec![0; nvars];
                    big[offset..offset + self.nvars].copy_from_slice(e);
                    (big, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes the given polynomials (all in a common ring) for the variables.
    pub fn compose(&self, values: &[SparsePolynomial]) -> Result<Self> {
        if values.len() != self.nvars {
            return arg_err("substitution arity mismatch");
        }
        let target = values.first().map_or(0, |v| v.nvars);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut m = Self::constant(target, c.clone());
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    m = &m * &v.pow(k);
                }
            }
            out = &out + &m;
        }
        Ok(out)
    }

    /// Evaluates at a point of `F_p^n`.
    pub fn eval_mod(&self, field: PrimeField, point: &[u64]) -> Result<u64> {
        Ok(self.reduce_mod(field)?.eval(field, point))
    }

    /// Reduces coefficients into the prime field.
    pub fn reduce_mod(&self, field: PrimeField) -> Result<FpPolynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), rational_mod(c, field)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Writes the polynomial with the given variable names, leading term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                let num = mag.numer().to_string();
                if mag.is_integer() {
                    factors.push(num);
                } else {
                    factors.push(format!("{num}/{}", mag.denom()));
                }
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{k}", names[v])),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

/// Maps a rational number into `F_p`; fails when `p` divides the denominator.
pub fn rational_mod(c: &Rational, field: PrimeField) -> Result<u64> {
    let p = BigInt::from(field.modulus());
    let reduce = |v: &BigInt| -> u64 {
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    };
    let num = reduce(c.numer());
    let den = reduce(c.denom());
    match field.inv(den) {
        Some(inv) => Ok(field.mul(num, inv)),
        None => arg_err(format!(
            "denominator {} is divisible by the modulus",
            c.denom()
        )),
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.nvars)))
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.nvars)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = SparsePolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// A polynomial with coefficients already reduced into `F_p`.
#[derive(Clone, Debug)]
pub struct FpPolynomial {
    nvars: usize,
    terms: Vec<(Exponents, u64)>,
}

impl FpPolynomial {
    pub fn eval(&self, field: PrimeField, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms.iter().fold(0, |acc, (e, c)| {
            let m = e
                .iter()
                .zip(point)
                .filter(|(&k, _)| k > 0)
                .fold(*c, |m, (&k, &x)| field.mul(m, field.pow(x, k as u64)));
            field.add(acc, m)
        })
    }
}
