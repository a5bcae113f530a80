//! Resultants by the subresultant polynomial remainder sequence.

use super::element::Element;
use super::poly::Polynomial;
use super::{ArithError, Var};

/// The Sylvester resultant of `p` and `q` with respect to `var`.
///
/// Computed fraction-free over the polynomial ring in the remaining
/// variables; the sign agrees with the Sylvester determinant whose first
/// rows hold the coefficients of `p`.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: Var) -> Result<Polynomial, ArithError> {
    if p.is_zero() && q.is_zero() {
        return Err(ArithError::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero());
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign_negative = false;
    if a.degree(var) < b.degree(var) {
        if a.degree(var) % 2 == 1 && b.degree(var) % 2 == 1 {
            sign_negative = true;
        }
        core::mem::swap(&mut a, &mut b);
    }
    let db = b.degree(var);
    if db == 0 {
        // res(A, c) = c^deg A; swapping a constant costs no sign.
        let r = b.pow(a.degree(var));
        return Ok(if sign_negative { -r } else { r });
    }

    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = a.degree(var);
        let db = b.degree(var);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = exact_pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return Ok(Polynomial::zero());
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.leading_coefficient_in(var);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if b.degree(var) == 0 {
            let da = a.degree(var);
            let lb = b.leading_coefficient_in(var);
            let num = lb.pow(da);
            let res = if da <= 1 {
                &num * &h.pow(1 - da)
            } else {
                num.exact_div(&h.pow(da - 1)).expect("subresultant division is exact")
            };
            return Ok(if sign_negative { -res } else { res });
        }
    }
}

/// `prem(a, b) = lc(b)^(deg a - deg b + 1)·a mod b`, the exact power the
/// subresultant recurrences assume.
pub(crate) fn exact_pseudo_remainder(a: &Polynomial, b: &Polynomial, var: Var) -> Polynomial {
    let da = a.degree(var);
    let db = b.degree(var);
    let lb = b.leading_coefficient_in(var);
    let bc = b.coefficients_in(var);
    let mut r = a.coefficients_in(var);
    let mut steps = 0u32;
    while r.len() > db as usize {
        let shift = r.len() - 1 - db as usize;
        let lr = r.pop().expect("nonempty");
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in bc.iter().enumerate().take(db as usize) {
            r[j + shift] = &r[j + shift] - &(&lr * bj);
        }
        steps += 1;
        while r.last().is_some_and(Polynomial::is_zero) {
            r.pop();
        }
    }
    let expected = da - db + 1;
    let mut rem = Polynomial::from_coefficients(var, &r);
    if steps < expected {
        rem = &rem * &lb.pow(expected - steps);
    }
    rem
}

/// Resultant of two rational functions that are polynomial in `var`:
/// `res(A/c, B/d) = res(A, B) / (c^deg B · d^deg A)`.
pub fn resultant_of_fractions(p: &Element, q: &Element, var: Var) -> Result<Element, ArithError> {
    if p.den().involves(var) || q.den().involves(var) {
        return Err(ArithError::NotPolynomial);
    }
    let r = resultant(p.num(), q.num(), var)?;
    let dp = p.num().degree(var);
    let dq = q.num().degree(var);
    let den = &p.den().pow(dq) * &q.den().pow(dp);
    Ok(Element::new(r, den))
}
