//! Additive decomposition in straight towers.

use num_traits::One;

use crate::arith::{Constant, Element};
use crate::error::CoreError;
use crate::hermite::{hermite_reduce, integrate_constant_poly, is_simple};
use crate::tower::{as_upoly, leading_coefficient, split_fp_pp, Tower};

/// `c` if `g = c·v` for a nonzero constant `c`.
fn constant_multiple(g: &Element, v: &Element) -> Option<Constant> {
    if g.is_zero() || v.is_zero() {
        return None;
    }
    (g / v).as_constant()
}

fn level_simple_part(tower: &Tower, n: usize) -> Result<&Element, CoreError> {
    let v = &tower.derivative_reduction(n).simple;
    if v.is_zero() {
        return Err(CoreError::NotStraightTower);
    }
    Ok(v)
}

/// Whether `r ∈ K_{n-1}` is `t_n`-rigid.
pub fn is_rigid(tower: &Tower, r: &Element, n: usize) -> Result<bool, CoreError> {
    if n == 0 {
        return Ok(r.is_zero());
    }
    let v = level_simple_part(tower, n)?;
    let (fp, pp) = split_fp_pp(r, n - 1);
    if !is_simple(&fp, n - 1) {
        return Ok(false);
    }
    if constant_multiple(&fp, v).is_some() {
        return Ok(false);
    }
    let lc = if pp.is_zero() {
        Element::zero()
    } else {
        leading_coefficient(&pp, n - 1)
    };
    is_rigid(tower, &lc, n - 1)
}

/// Whether `p ∈ K_{n-1}[t_n]` is `t_n`-straight.
pub fn is_straight(tower: &Tower, p: &Element, n: usize) -> Result<bool, CoreError> {
    if p.is_zero() {
        return Ok(true);
    }
    is_rigid(tower, &leading_coefficient(p, n), n)
}

/// `ℓ = (c·t_n + a)' + r` with `r` `t_n`-rigid.
struct Trick {
    c: Constant,
    a: Element,
    r: Element,
}

fn trick(tower: &Tower, ell: &Element, n: usize) -> Result<Trick, CoreError> {
    let h = hermite_reduce(tower, ell, n - 1)?;
    let v = level_simple_part(tower, n)?;
    let memo = tower.derivative_reduction(n);
    if let Some(c) = constant_multiple(&h.simple, v) {
        let shifted = &h.poly - &memo.poly.scale(&c);
        let (b, tail) = reduce_to_straight(tower, &shifted, n - 1)?;
        Ok(Trick {
            a: &(&h.derivative - &memo.derivative.scale(&c)) + &b,
            r: tail,
            c,
        })
    } else {
        let (b, tail) = reduce_to_straight(tower, &h.poly, n - 1)?;
        Ok(Trick {
            c: Constant::from_integer(0.into()),
            a: &h.derivative + &b,
            r: &h.simple + &tail,
        })
    }
}

/// `p = u' + q` with `q` `t_n`-straight and `deg q <= deg p`.
pub fn reduce_to_straight(
    tower: &Tower,
    p: &Element,
    n: usize,
) -> Result<(Element, Element), CoreError> {
    let mut current = as_upoly(p, n).ok_or(CoreError::LevelMismatch { level: n, found: n })?;
    if n == 0 {
        return Ok((integrate_constant_poly(&current), Element::zero()));
    }
    let tn = Element::var(n);
    let dtn = tower.derivative_of(n).clone();
    let mut u = Element::zero();
    while !current.is_zero() {
        let d = current.degree();
        let ell = current.leading_coefficient();
        let Trick { c, a, r } = trick(tower, &ell, n)?;
        let td = tn.pow(d as u32);
        // c t_n' t_n^d = (c/(d+1) t_n^{d+1})' and a' t_n^d = (a t_n^d)' - d a t_n' t_n^{d-1}
        let lift = Constant::new(One::one(), ((d + 1) as i64).into());
        let top = tn.pow(d as u32 + 1).scale(&(&c * &lift));
        u = &u + &(&top + &(&a * &td));
        let mut rest = current.truncate(d);
        if d > 0 {
            let ibp = (&a * &dtn).scale(&Constant::from_integer(d.into()));
            rest = &rest - &crate::arith::UPoly::monomial(n, ibp, d - 1);
        }
        if !r.is_zero() {
            let q = &(&r * &td) + &rest.to_element();
            return Ok((u, q));
        }
        current = rest;
    }
    Ok((u, Element::zero()))
}

/// The straight-tower decomposition pieces `(a, g, p)` of `f ∈ K_n`.
pub fn straight_parts(tower: &Tower, f: &Element) -> Result<(Element, Element, Element), CoreError> {
    let n = tower.height();
    if !tower.classification().is_straight() {
        return Err(CoreError::NotStraightTower);
    }
    let h = hermite_reduce(tower, f, n)?;
    let (u, q) = reduce_to_straight(tower, &h.poly, n)?;
    Ok((&h.derivative + &u, h.simple, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::GeneratorKind;

    fn x() -> Element {
        Element::var(0)
    }
    fn t(i: usize) -> Element {
        Element::var(i)
    }
    fn int(n: i64) -> Element {
        Element::from_int(n)
    }

    fn li_tower() -> Tower {
        Tower::new([GeneratorKind::Log(x()), GeneratorKind::Primitive(t(1).recip().unwrap())]).unwrap()
    }

    #[test]
    fn log_tower_rigidity() {
        let tower = Tower::new([GeneratorKind::Log(x())]).unwrap();
        assert!(is_rigid(&tower, &Element::zero(), 1).unwrap());
        assert!(is_rigid(&tower, &(&int(1) / &(&x() + &int(1))), 1).unwrap());
        assert!(!is_rigid(&tower, &x().recip().unwrap(), 1).unwrap());
    }

    #[test]
    fn example_reduction() {
        let tower = li_tower();
        let p = &t(1) * &t(2).pow(2);
        let (u, q) = reduce_to_straight(&tower, &p, 2).unwrap();
        let expected_u = &(&(&x() * &t(1)) * &t(2).pow(2)) - &(&(&x() * &t(2).pow(2)) + &(&x().pow(2) * &t(2)));
        let expected_q = &(&(&x().scale(&Constant::from_integer(2.into())) / &t(1)) * &t(2)) + &(&x().pow(2) / &t(1));
        assert_eq!(u, expected_u);
        assert_eq!(q, expected_q);
        assert!(is_straight(&tower, &q, 2).unwrap());
        assert!(!is_straight(&tower, &p, 2).unwrap());
        assert!(is_rigid(&tower, &(&x().scale(&Constant::from_integer(2.into())) / &t(1)), 2).unwrap());
    }

    #[test]
    fn integrable_polynomial_reduces_to_zero() {
        let tower = li_tower();
        let h = &(&t(2).pow(2) * &x()) + &t(1);
        let p = tower.differentiate(&h).unwrap();
        let (u, q) = reduce_to_straight(&tower, &p, 2).unwrap();
        assert!(q.is_zero());
        assert_eq!(tower.differentiate(&u).unwrap(), p);
    }
}
