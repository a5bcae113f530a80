//! Dense univariate polynomials in one tower variable whose coefficients are
//! rational functions in the other variables.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};


use super::element::Element;
use super::gcd::{lcm, poly_gcd};
use super::poly::{forward_owned_binop, Monomial, Polynomial};
use super::{ArithError, Constant, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    var: Var,
    /// Entry `k` is the coefficient of `var^k`; no trailing zeros.
    coeffs: Vec<Element>,
}

impl UPoly {
    pub fn zero(var: Var) -> UPoly {
        UPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: Element) -> UPoly {
        UPoly::from_coeffs(var, vec![c])
    }

    pub fn monomial(var: Var, c: Element, k: usize) -> UPoly {
        let mut coeffs = vec![Element::zero(); k + 1];
        coeffs[k] = c;
        UPoly::from_coeffs(var, coeffs)
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Element>) -> UPoly {
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        UPoly { var, coeffs }
    }

    pub fn from_polynomial(p: &Polynomial, var: Var) -> UPoly {
        UPoly::from_coeffs(
            var,
            p.coefficients_in(var).into_iter().map(Element::from_poly).collect(),
        )
    }

    /// Views `e` as a polynomial in `var`; `None` if its denominator involves `var`.
    pub fn from_element(e: &Element, var: Var) -> Option<UPoly> {
        if e.den().involves(var) {
            return None;
        }
        let den = e.den();
        Some(UPoly::from_coeffs(
            var,
            e.num()
                .coefficients_in(var)
                .into_iter()
                .map(|c| Element::new(c, den.clone()))
                .collect(),
        ))
    }

    /// Numerator and denominator of `e` as polynomials in `var`.
    pub fn fraction_of(e: &Element, var: Var) -> (UPoly, UPoly) {
        (
            UPoly::from_polynomial(e.num(), var),
            UPoly::from_polynomial(e.den(), var),
        )
    }

    pub fn to_element(&self) -> Element {
        let den = self.common_denominator();
        let mut num = Polynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let scale = den.exact_div(c.den()).expect("lcm is a multiple");
            num = &num + &(c.num() * &scale).mul_monomial(&Monomial::var(self.var, k as u32));
        }
        Element::new(num, den)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> Polynomial {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(Polynomial::one(), |acc, c| {
                if c.den().is_one() {
                    acc
                } else {
                    lcm(&acc, c.den())
                }
            })
    }

    /// `self` times the common denominator of its coefficients, as a polynomial.
    pub fn cleared(&self) -> Polynomial {
        let den = self.common_denominator();
        let mut num = Polynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let scale = den.exact_div(c.den()).expect("lcm is a multiple");
            num = &num + &(c.num() * &scale).mul_monomial(&Monomial::var(self.var, k as u32));
        }
        num
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Element {
        self.coeffs.get(k).cloned().unwrap_or_else(Element::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `var`; the zero polynomial reports degree zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coefficient(&self) -> Element {
        self.coeffs.last().cloned().unwrap_or_else(Element::zero)
    }

    pub fn scale(&self, c: &Element) -> UPoly {
        if c.is_zero() {
            return UPoly::zero(self.var);
        }
        UPoly::from_coeffs(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_constant(&self, c: &Constant) -> UPoly {
        UPoly::from_coeffs(self.var, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Element::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { var: self.var, coeffs }
    }

    pub fn monic(&self) -> UPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero")),
        }
    }

    /// Terms of degree below `k`.
    pub fn truncate(&self, k: usize) -> UPoly {
        UPoly::from_coeffs(self.var, self.coeffs.iter().take(k).cloned().collect())
    }

    /// Division with remainder over the coefficient field.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree();
        let inv = d.leading_coefficient().recip().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Element::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().expect("nonempty") * &inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[j + k] = &rem[j + k] - &(&q * dj);
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Element::is_zero) {
                rem.pop();
            }
        }
        (UPoly::from_coeffs(self.var, quot), UPoly::from_coeffs(self.var, rem))
    }

    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn formal_derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Constant::from_integer(k.into())))
                .collect(),
        )
    }

    /// Monic gcd over the coefficient field.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == 0 || other.degree() == 0 {
            return UPoly::constant(self.var, Element::one());
        }
        let g = poly_gcd(&self.cleared(), &other.cleared(), self.var);
        UPoly::from_polynomial(&g, self.var).monic()
    }

    /// Returns `(s, g)` with `g = gcd(self, b)` monic and `s·self ≡ g (mod b)`.
    pub fn half_extended_gcd(&self, b: &UPoly) -> (UPoly, UPoly) {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::constant(var, Element::one()), UPoly::zero(var));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        if r0.is_zero() {
            return (UPoly::zero(var), r0);
        }
        let inv = r0.leading_coefficient().recip().expect("nonzero");
        (s0.scale(&inv), r0.scale(&inv))
    }

    /// Solves `s·a + t·b = c` with `deg s < deg b - deg gcd(a, b)` when `c ≠ 0`.
    pub fn solve_bezout(a: &UPoly, b: &UPoly, c: &UPoly) -> Result<(UPoly, UPoly), ArithError> {
        let var = a.var;
        if b.is_zero() {
            // s·a = c
            if a.is_zero() {
                return if c.is_zero() {
                    Ok((UPoly::zero(var), UPoly::zero(var)))
                } else {
                    Err(ArithError::NotSolvable)
                };
            }
            let s = c.exact_div(a).ok_or(ArithError::NotSolvable)?;
            return Ok((s, UPoly::zero(var)));
        }
        let (s0, g) = a.half_extended_gcd(b);
        let (q, r) = c.divrem(&g);
        if !r.is_zero() {
            return Err(ArithError::NotSolvable);
        }
        let b_red = b.exact_div(&g).expect("gcd divides");
        let s = if b_red.degree() == 0 {
            UPoly::zero(var)
        } else {
            (&s0 * &q).divrem(&b_red).1
        };
        let t = (c - &(&s * a)).exact_div(b).expect("bezout identity");
        Ok((s, t))
    }
}

/// `s·a + t·b = c` for `a, b, c` regarded as univariate in `var` over the
/// fraction field of the remaining variables.
pub fn extended_euclid(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
    var: Var,
) -> Result<(UPoly, UPoly), ArithError> {
    UPoly::solve_bezout(
        &UPoly::from_polynomial(a, var),
        &UPoly::from_polynomial(b, var),
        &UPoly::from_polynomial(c, var),
    )
}

fn zip_coeffs(a: &UPoly, b: &UPoly, f: impl Fn(&Element, &Element) -> Element) -> UPoly {
    debug_assert_eq!(a.var, b.var);
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = Element::zero();
    UPoly::from_coeffs(
        a.var,
        (0..n)
            .map(|k| f(a.coeffs.get(k).unwrap_or(&zero), b.coeffs.get(k).unwrap_or(&zero)))
            .collect(),
    )
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        zip_coeffs(self, rhs, |a, b| a + b)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        zip_coeffs(self, rhs, |a, b| a - b)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.var);
        }
        let mut coeffs = vec![Element::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        UPoly::from_coeffs(self.var, coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

forward_owned_binop!(UPoly, Add, add);
forward_owned_binop!(UPoly, Sub, sub);
forward_owned_binop!(UPoly, Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn t2() -> Polynomial {
        Polynomial::var(2)
    }

    #[test]
    fn bezout_linear() {
        let a = x();
        let b = &x() + &Polynomial::one();
        let (s, t) = extended_euclid(&a, &b, &Polynomial::one(), 0).unwrap();
        assert_eq!(s, UPoly::constant(0, Element::from_int(-1)));
        assert_eq!(t, UPoly::constant(0, Element::from_int(1)));
    }

    #[test]
    fn bezout_equal_arguments() {
        let (s, t) = extended_euclid(&x(), &x(), &x(), 0).unwrap();
        assert!(s.is_zero());
        assert_eq!(t, UPoly::constant(0, Element::one()));
    }

    #[test]
    fn bezout_over_fraction_field() {
        // a = t2, b = t2 + x, c = x in t2
        let a = t2();
        let b = &t2() + &x();
        let (s, t) = extended_euclid(&a, &b, &x(), 2).unwrap();
        assert_eq!(s, UPoly::constant(2, Element::from_int(-1)));
        assert_eq!(t, UPoly::constant(2, Element::from_int(1)));
        let check = &(&s * &UPoly::from_polynomial(&a, 2)) + &(&t * &UPoly::from_polynomial(&b, 2));
        assert_eq!(check.to_element(), Element::from_poly(x()));
    }

    #[test]
    fn bezout_unsolvable() {
        let a = x().pow(2);
        let b = x();
        assert_eq!(
            extended_euclid(&a, &b, &Polynomial::one(), 0),
            Err(ArithError::NotSolvable)
        );
    }

    #[test]
    fn divrem_reassembles() {
        let n = UPoly::from_polynomial(&(&x().pow(3) + &Polynomial::from_int(2)), 0);
        let d = UPoly::from_polynomial(&(&x().scale(&Constant::from_integer(2.into())) - &Polynomial::one()), 0);
        let (q, r) = n.divrem(&d);
        assert!(r.degree() < d.degree() || r.is_zero());
        assert_eq!(&(&q * &d) + &r, n);
    }
}
