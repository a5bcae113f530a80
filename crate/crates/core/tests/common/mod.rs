#![allow(dead_code)]

use proptest::prelude::*;
use tower_core::tower::GeneratorKind;
use tower_core::{Constant, Element, Monomial, Polynomial, Tower};

pub fn q(n: i64) -> Constant {
    Constant::from_integer(n.into())
}

pub fn int(n: i64) -> Element {
    Element::from_int(n)
}

pub fn x() -> Element {
    Element::var(0)
}

pub fn t(i: usize) -> Element {
    Element::var(i)
}

/// (x, log x, Li x)
pub fn li_tower() -> Tower {
    Tower::new([
        GeneratorKind::Log(x()),
        GeneratorKind::Primitive(t(1).recip().unwrap()),
    ])
    .unwrap()
}

/// (x, log x, log(x+1), ..., log(x+k-1))
pub fn log_tower(k: usize) -> Tower {
    Tower::new((0..k).map(|j| GeneratorKind::Log(&x() + &int(j as i64)))).unwrap()
}

/// Polynomials in `t_0..=t_top` with small exponents and coefficients.
pub fn poly(top: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, top + 1), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(exps, c)| (Monomial::new(exps), q(c))),
        )
    })
}

pub fn nonzero_poly(top: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(top, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Rational functions in `t_0..=t_top`.
pub fn element(top: usize) -> impl Strategy<Value = Element> {
    (poly(top, 2, 3), nonzero_poly(top, 1, 2)).prop_map(|(n, d)| Element::new(n, d))
}

/// A small factor `t_level + c·x + k` or `x + k`.
fn linear(level: usize) -> impl Strategy<Value = Element> {
    (0..=level, -2i64..=2, -3i64..=3).prop_map(|(v, c, k)| {
        if v == 0 {
            // keep clear of the poles of the log generators at -0, -1, -2
            &x() + &int(k.abs() + 3)
        } else {
            &(&t(v) + &x().scale(&q(c))) + &int(k)
        }
    })
}

/// Elements of `K_n` of the kind that show up as integrands: a polynomial in
/// the generators over `Q[x]` divided by a product of linear factors.
pub fn tower_element(n: usize) -> impl Strategy<Value = Element> {
    (
        poly(n, 2, 3),
        prop::collection::vec(linear(n), 0..=2),
        1i64..=3,
    )
        .prop_map(|(p, factors, d)| {
            let den = factors
                .iter()
                .fold(Element::from_int(d), |acc, f| &acc * f);
            &Element::from_poly(p) / &den
        })
}

/// A random polynomial in `t_1..t_n` over `Q(x)` with denominators in `x`.
pub fn tower_polynomial(n: usize) -> impl Strategy<Value = Element> {
    (poly(n, 2, 3), 0i64..=3).prop_map(|(p, k)| &Element::from_poly(p) / &(&x() + &int(k + 3)))
}
