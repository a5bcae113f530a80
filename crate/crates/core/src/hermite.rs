//! Hermite reduction with respect to the top variable of a level.

use alloc::vec::Vec;

use num_traits::One;

use crate::arith::{squarefree_decompose, Constant, Element, UPoly, Var};
use crate::error::CoreError;
use crate::tower::Tower;

/// `f = derivative' + simple + poly` with `simple` `t_i`-simple and
/// `poly ∈ K_{i-1}[t_i]` (always zero at level 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteTriple {
    pub derivative: Element,
    pub simple: Element,
    pub poly: Element,
}

impl HermiteTriple {
    pub fn zero() -> HermiteTriple {
        HermiteTriple {
            derivative: Element::zero(),
            simple: Element::zero(),
            poly: Element::zero(),
        }
    }
}

/// Hermite reduction of `f ∈ K_i` with respect to `t_i`.
///
/// At level 0 the polynomial part is integrated into the derivative part.
pub fn hermite_reduce(tower: &Tower, f: &Element, i: usize) -> Result<HermiteTriple, CoreError> {
    tower.check_element(f)?;
    if let Some(v) = f.max_var() {
        if v > i {
            return Err(CoreError::LevelMismatch { level: i, found: v });
        }
    }
    if f.is_zero() {
        return Ok(HermiteTriple::zero());
    }
    let z = i;
    let mut derivative = Element::zero();
    let (num, den) = UPoly::fraction_of(f, z);
    let lc_inv = den.leading_coefficient().recip().expect("nonzero denominator");
    let mut den = den.scale(&lc_inv);
    let (mut poly, mut num) = num.scale(&lc_inv).divrem(&den);

    if den.degree() > 0 && !num.is_zero() {
        let sqf = squarefree_decompose(&den.cleared(), z)?;
        for (factor, m) in sqf.factors.iter().filter(|(_, m)| *m >= 2) {
            let v = UPoly::from_polynomial(factor, z).monic();
            let dv = tower.d_upoly(&v);
            let u = den.exact_div(&upow(&v, *m)).expect("squarefree factor divides");
            let udv = &u * &dv;
            for j in (1..*m).rev() {
                // A/(U V^{j+1}) = (B/V^j)' + (-j C - U B')/(U V^j)
                // where B U V' + C V = -A/j.
                let jc = Constant::from_integer(j.into());
                let rhs = num.scale_constant(&-jc.recip());
                let (b, c) = UPoly::solve_bezout(&udv, &v, &rhs)?;
                derivative = &derivative + &(&b.to_element() / &upow(&v, j).to_element());
                num = &(-&c.scale_constant(&jc)) - &(&u * &tower.d_upoly(&b));
            }
            den = &u * &v;
        }
        let (q, r) = num.divrem(&den);
        poly = &poly + &q;
        num = r;
    }

    let simple = if num.is_zero() {
        Element::zero()
    } else {
        &num.to_element() / &den.to_element()
    };
    let poly = if z == 0 {
        derivative = &derivative + &integrate_constant_poly(&poly);
        Element::zero()
    } else {
        poly.to_element()
    };
    Ok(HermiteTriple {
        derivative,
        simple,
        poly,
    })
}

/// The Hermitian part `hp_{t_i}(f)`.
pub fn hp(tower: &Tower, f: &Element, i: usize) -> Result<Element, CoreError> {
    Ok(hermite_reduce(tower, f, i)?.simple)
}

/// Whether `g` is `t_i`-simple: proper in `t_i` with a squarefree denominator.
pub fn is_simple(g: &Element, i: Var) -> bool {
    if g.is_zero() {
        return true;
    }
    if g.num().degree(i) >= g.den().degree(i) {
        return false;
    }
    match squarefree_decompose(g.den(), i) {
        Ok(d) => d.factors.iter().all(|(_, m)| *m == 1),
        Err(_) => false,
    }
}

fn upow(p: &UPoly, e: u32) -> UPoly {
    let mut acc = UPoly::constant(p.var(), Element::one());
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

/// Term-wise antiderivative of a polynomial in `t_0` with rational coefficients.
pub(crate) fn integrate_constant_poly(p: &UPoly) -> Element {
    let coeffs: Vec<Element> = core::iter::once(Element::zero())
        .chain(p.coeffs().iter().enumerate().map(|(k, c)| {
            c.scale(&Constant::new(One::one(), ((k + 1) as i64).into()))
        }))
        .collect();
    UPoly::from_coeffs(p.var(), coeffs).to_element()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::GeneratorKind;

    fn x() -> Element {
        Element::var(0)
    }

    #[test]
    fn inverse_square_at_level_zero() {
        let t = Tower::base();
        let f = x().pow(2).recip().unwrap();
        let h = hermite_reduce(&t, &f, 0).unwrap();
        assert_eq!(h.derivative, -x().recip().unwrap());
        assert!(h.simple.is_zero());
        assert!(h.poly.is_zero());
    }

    #[test]
    fn simple_input_is_unchanged() {
        let t = Tower::base();
        let f = &Element::one() / &(&x() + &Element::from_int(2));
        let h = hermite_reduce(&t, &f, 0).unwrap();
        assert_eq!(h, HermiteTriple { derivative: Element::zero(), simple: f, poly: Element::zero() });
    }

    #[test]
    fn li_square_denominator() {
        let t = Tower::new([
            GeneratorKind::Log(x()),
            GeneratorKind::Primitive(Element::var(1).recip().unwrap()),
        ])
        .unwrap();
        let f = Element::var(2).pow(2).recip().unwrap();
        let h = hermite_reduce(&t, &f, 2).unwrap();
        assert_eq!(h.derivative, -(&Element::var(1) / &Element::var(2)));
        assert_eq!(h.simple, (&x() * &Element::var(2)).recip().unwrap());
        assert!(h.poly.is_zero());
        let back = &(&t.differentiate(&h.derivative).unwrap() + &h.simple) + &h.poly;
        assert_eq!(back, f);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&x().recip().unwrap(), 0));
        assert!(!is_simple(&x().pow(2).recip().unwrap(), 0));
        assert!(!is_simple(&x(), 0));
        assert!(is_simple(&Element::zero(), 3));
    }
}
