//! Truncated multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] is a polynomial in `nvars` variables kept to total degree
//! `<= max_deg`; products drop everything above the truncation order. These
//! are the coefficient entries of metric jets: all differentiation in the
//! curvature pipeline is coefficient shuffling on these, with no rounding.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Rational;

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    max_deg: usize,
    // No zero coefficients are stored.
    terms: BTreeMap<Exponents, Rational>,
}

fn total_degree(expo: &[u8]) -> usize {
    expo.iter().map(|&e| e as usize).sum()
}

impl Poly {
    pub fn zero(nvars: usize, max_deg: usize) -> Self {
        Self {
            nvars,
            max_deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, max_deg: usize, value: Rational) -> Self {
        let mut p = Self::zero(nvars, max_deg);
        p.add_term(vec![0; nvars], value);
        p
    }

    /// The monomial `coeff * x_0^{e_0} ... x_{nvars-1}^{e_{nvars-1}}`.
    pub fn monomial(nvars: usize, max_deg: usize, expo: Exponents, coeff: Rational) -> Self {
        assert_eq!(expo.len(), nvars);
        let mut p = Self::zero(nvars, max_deg);
        p.add_term(expo, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expo: &[u8]) -> Rational {
        self.terms.get(expo).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term, i.e. the value at the origin.
    pub fn eval_zero(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, expo: Exponents, coeff: Rational) {
        debug_assert_eq!(expo.len(), self.nvars);
        if coeff.is_zero() || total_degree(&expo) > self.max_deg {
            return;
        }
        let entry = self.terms.entry(expo);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars, self.max_deg.min(other.max_deg));
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c.clone());
        }
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.nvars, self.max_deg);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * factor;
        }
        out
    }

    /// Product truncated to the smaller of the two accuracy orders.
    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars, self.max_deg.min(other.max_deg));
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                if total_degree(ea) + total_degree(eb) > out.max_deg {
                    continue;
                }
                let expo: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to variable `var`. A degree-`d`
    /// accurate polynomial differentiates to a degree-`d-1` accurate one.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.max_deg.saturating_sub(1));
        for (e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut expo = e.clone();
            expo[var] -= 1;
            out.add_term(expo, c * Rational::from_integer(e[var].into()));
        }
        out
    }

    pub fn truncate(&self, max_deg: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, max_deg);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Reinterprets the polynomial in `nvars + extra` variables; the new
    /// variables do not occur.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let mut out = Poly::zero(self.nvars + extra, self.max_deg);
        for (e, c) in self.terms() {
            let mut expo = e.clone();
            expo.extend(std::iter::repeat_n(0, extra));
            out.add_term(expo, c.clone());
        }
        out
    }

    /// Substitution `x_j -> signs[j] * x_{perm[j]}` for a signed permutation of
    /// the variables.
    pub fn substitute_signed_permutation(&self, perm: &[usize], signs: &[i8]) -> Poly {
        debug_assert_eq!(perm.len(), self.nvars);
        let mut out = Poly::zero(self.nvars, self.max_deg);
        for (e, c) in self.terms() {
            let mut expo = vec![0u8; self.nvars];
            let mut sign = 1i64;
            for (j, &ej) in e.iter().enumerate() {
                expo[perm[j]] += ej;
                if signs[j] < 0 && ej % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(expo, c * Rational::from_integer(sign.into()));
        }
        out
    }
}

/// All exponent vectors of `nvars` variables with total degree in
/// `min_deg..=max_deg`, in graded lexicographic order. Used to lay out jet
/// coefficients deterministically.
pub fn monomials(nvars: usize, min_deg: usize, max_deg: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    for deg in min_deg..=max_deg {
        let mut current = vec![0u8; nvars];
        fn rec(pos: usize, left: usize, current: &mut Vec<u8>, out: &mut Vec<Exponents>) {
            if pos + 1 == current.len() {
                current[pos] = left as u8;
                out.push(current.clone());
                current[pos] = 0;
                return;
            }
            for take in (0..=left).rev() {
                current[pos] = take as u8;
                rec(pos + 1, left - take, current, out);
            }
            current[pos] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        rec(0, deg, &mut current, &mut out);
    }
    out
}
