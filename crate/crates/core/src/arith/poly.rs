//! Sparse multivariate polynomials over the rationals.
//!
//! Variable `i` stands for the tower generator `t_i`; `t_0` is the base
//! variable. Monomials compare lexicographically with the highest variable
//! most significant, so `t_2 ≻ t_1^k` for every `k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Constant, Var};

/// An exponent vector, trimmed of trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest variable with a positive exponent.
    pub fn max_var(&self) -> Option<Var> {
        self.0.len().checked_sub(1)
    }

    /// Lowest variable with a positive exponent.
    pub fn min_var(&self) -> Option<Var> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.0.clone();
        for (e, s) in exps.iter_mut().zip(short.0.iter()) {
            *e += s;
        }
        Monomial(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when `divisor` divides `self`.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let mut exps = self.0.clone();
        for (e, d) in exps.iter_mut().zip(divisor.0.iter()) {
            *e -= d;
        }
        Some(Monomial::new(exps))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= v {
            exps.resize(v + 1, 0);
        }
        exps[v] = e;
        Monomial::new(exps)
    }

    /// Splits into the part in variables `<= level` and the part in variables `> level`.
    pub fn split_at(&self, level: Var) -> (Monomial, Monomial) {
        let cut = (level + 1).min(self.0.len());
        let low = Monomial::new(self.0[..cut].to_vec());
        let mut high = self.0.clone();
        for e in high.iter_mut().take(cut) {
            *e = 0;
        }
        (low, Monomial::new(high))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Trimmed vectors: a longer vector has a nonzero exponent in a higher variable.
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `t_0, t_1, ...` with rational coefficients.
///
/// Terms are kept in a map ordered by `≺`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Constant>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Constant::one())
    }

    pub fn constant(c: Constant) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Constant::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Constant::one())
    }

    pub fn monomial(m: Monomial, c: Constant) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Constant)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Constant) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value when the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<Constant> {
        match self.terms.len() {
            0 => Some(Constant::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending `≺` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Constant)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Constant {
        self.terms.get(m).cloned().unwrap_or_else(Constant::zero)
    }

    /// The `≺`-maximal term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Constant)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Constant {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Constant::zero)
    }

    /// Bitmask of variables that occur. Variables are limited to indices below 64.
    pub fn var_mask(&self) -> u64 {
        self.terms.keys().fold(0u64, |mask, m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(mask, |acc, (v, _)| acc | (1u64 << v))
        })
    }

    pub fn max_var(&self) -> Option<Var> {
        let mask = self.var_mask();
        (mask != 0).then(|| 63 - mask.leading_zeros() as usize)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.var_mask() & (1u64 << v) != 0
    }

    /// Only variables `<= level` occur.
    pub fn lies_below(&self, level: Var) -> bool {
        self.max_var().is_none_or(|v| v <= level)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Constant) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        if m.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Constant) -> Polynomial {
        self.mul_monomial(m).scale(c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so that the `≺`-maximal coefficient is one.
    pub fn normalized(&self) -> Polynomial {
        match self.leading_term() {
            None => Polynomial::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Formal partial derivative `∂/∂v`.
    pub fn partial(&self, v: Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| (m.with_exponent(v, e - 1), c * Constant::from_integer(e.into())))
        }))
    }

    /// Dense coefficient list in `v`: entry `k` is the coefficient of `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let deg = self.degree(v) as usize;
        let mut coeffs = vec![Polynomial::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            coeffs[e as usize].add_term(m.with_exponent(v, 0), c.clone());
        }
        coeffs
    }

    pub fn from_coefficients(v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v, k as u32);
            for (m, a) in &c.terms {
                p.add_term(m.mul(&shift), a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `v`, a polynomial free of `v`.
    pub fn leading_coefficient_in(&self, v: Var) -> Polynomial {
        let d = self.degree(v);
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == d)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone())),
        )
    }

    /// Componentwise minimum of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        if m.is_one() {
            return Some(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if divisor.len() == 1 {
            let inv = lc.recip();
            return self.div_monomial(lm).map(|q| q.scale(&inv));
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Substitutes `value` for variable `v`.
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(v);
        let mut acc = Polynomial::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Evaluates at a rational point (missing coordinates read as zero).
    pub fn evaluate(&self, point: &[Constant]) -> Constant {
        let mut total = Constant::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let base = point.get(v).cloned().unwrap_or_else(Constant::zero);
                    term *= num_traits::pow(base, e as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Renames variables through `map`, which must be injective on occurring variables.
    pub fn rename_vars(&self, map: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let w = map(v);
                    if exps.len() <= w {
                        exps.resize(w + 1, 0);
                    }
                    exps[w] += e;
                }
            }
            (Monomial::new(exps), c.clone())
        }))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut acc, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(m.clone(), -c.clone());
        }
        acc
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                acc.add_term(m1.mul(m2), c1 * c2);
            }
        }
        acc
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
