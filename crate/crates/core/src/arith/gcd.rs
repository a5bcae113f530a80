//! Multivariate gcd over the rationals by primitive polynomial remainder
//! sequences with recursive content extraction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Monomial, Polynomial};
use super::Constant;
use super::resultant::exact_pseudo_remainder;
use super::Var;

/// Greatest common divisor in `Q[t_0, t_1, ...]`, normalized so that its
/// `≺`-maximal coefficient is one. `gcd(p, 0)` is `p` normalized.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() || p == q {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let mg = mp.gcd(&mq);
    let p1 = p.div_monomial(&mp).expect("monomial content divides");
    let q1 = q.div_monomial(&mq).expect("monomial content divides");
    gcd_rec(&p1, &q1).mul_monomial(&mg)
}

/// Gcd of two nonzero polynomials without monomial content.
fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    let pn = p.normalized();
    let qn = q.normalized();
    if pn == qn {
        return pn;
    }
    let (small, large) = if pn.len() <= qn.len() { (&pn, &qn) } else { (&qn, &pn) };
    if large.exact_div(small).is_some() {
        return small.clone();
    }

    let mp = p.var_mask();
    let mq = q.var_mask();
    // A variable present in only one argument cannot occur in the gcd.
    let only_p = mp & !mq;
    if only_p != 0 {
        let v = highest_bit(only_p);
        return gcd_rec(&content_in(p, v), q);
    }
    let only_q = mq & !mp;
    if only_q != 0 {
        let v = highest_bit(only_q);
        return gcd_rec(p, &content_in(q, v));
    }

    let v = highest_bit(mp);
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.exact_div(&cp).expect("content divides");
    let qp = q.exact_div(&cq).expect("content divides");
    let c = gcd(&cp, &cq);
    if (mp & !(1u64 << v)) != 0 && images_coprime(&pp, &qp, v) {
        return c.normalized();
    }
    let g = primitive_prs(pp, qp, v);
    (&c * &g).normalized()
}

/// Cheap certificate that two polynomials primitive in `v` are coprime: their
/// images after substituting integers for the other variables are coprime
/// while the leading coefficient of `p` stays nonzero, so no common factor of
/// positive degree in `v` can exist. A `false` answer is inconclusive.
fn images_coprime(p: &Polynomial, q: &Polynomial, v: Var) -> bool {
    let lc = p.leading_coefficient_in(v);
    for attempt in 0..2u32 {
        let point: Vec<Constant> = (0..=v.max(highest_bit(p.var_mask() | q.var_mask())))
            .map(|w| Constant::from_integer(BigInt::from(3 + 2 * w as i64 + 11 * attempt as i64)))
            .collect();
        if lc.evaluate(&point).is_zero() {
            continue;
        }
        let (pi, qi) = (specialize(p, v, &point), specialize(q, v, &point));
        if qi.degree(v) == 0 {
            continue;
        }
        if primitive_prs(pi, qi, v).degree(v) == 0 {
            return true;
        }
    }
    false
}

/// `p` with every variable except `v` replaced by its coordinate in `point`.
fn specialize(p: &Polynomial, v: Var, point: &[Constant]) -> Polynomial {
    Polynomial::from_terms(p.terms().map(|(m, c)| {
        let mut value = c.clone();
        for (w, &e) in m.exponents().iter().enumerate() {
            if w != v && e > 0 {
                value *= num_traits::pow(point[w].clone(), e as usize);
            }
        }
        (Monomial::var(v, m.exponent(v)), value)
    }))
}

fn highest_bit(mask: u64) -> Var {
    63 - mask.leading_zeros() as usize
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(Polynomial::len);
    let mut acc = Polynomial::zero();
    for c in &coeffs {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// `p` divided by its content in `v`, normalized. Zero stays zero.
pub fn primitive_part_in(p: &Polynomial, v: Var) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").normalized()
}

/// Gcd of two polynomials primitive in `v`, both of positive degree in `v`.
///
/// Runs the subresultant sequence, which keeps coefficient growth in check
/// with exact divisions instead of a content computation at every step, and
/// takes the primitive part once at the end.
fn primitive_prs(a: Polynomial, b: Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = a.degree(v) - b.degree(v);
        let r = exact_pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree(v) == 0 {
            return Polynomial::one();
        }
        a = b;
        b = r
            .exact_div(&(&g * &h.pow(delta)))
            .expect("subresultant division is exact");
        g = a.leading_coefficient_in(v);
        if delta > 0 {
            h = g
                .pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
    }
}

/// A pseudo-remainder of `a` by `b` in `v`: `λ·a = q·b + r` with `λ` a
/// product of powers of `lc_v(b)` and `deg_v r < deg_v b`.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let bc = b.coefficients_in(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.coefficients_in(v);
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().cloned().expect("nonempty");
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in bc.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bj);
        }
        r.pop();
        while r.last().is_some_and(Polynomial::is_zero) {
            r.pop();
        }
    }
    Polynomial::from_coefficients(v, &r)
}

/// Gcd of `p` and `q` regarded as univariate in `var` over the fraction field
/// of the remaining variables: the multivariate gcd stripped of its content
/// in `var`, normalized.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial, var: Var) -> Polynomial {
    let g = gcd(p, q);
    if g.is_zero() {
        return g;
    }
    if !g.involves(var) {
        return Polynomial::one();
    }
    primitive_part_in(&g, var)
}

/// Least common multiple, normalized.
pub fn lcm(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero();
    }
    let g = gcd(p, q);
    (p * &q.exact_div(&g).expect("gcd divides")).normalized()
}
