//! Additive decomposition in flat towers.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{
    lcm, poly_gcd, solve_linear_system, Constant, Element, Monomial, Polynomial, UPoly,
};
use crate::error::CoreError;
use crate::hermite::{hermite_reduce, integrate_constant_poly, is_simple, HermiteTriple};
use crate::tower::{as_upoly, coefficients_above, head, scale_of_monomial, split_fp_pp, Tower};

/// A witness `p_0, ..., p_{n-1}` that a polynomial in `K_{n-1}[t_n]` is `t_n`-flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedSequence {
    pub parts: Vec<Element>,
}

impl AssociatedSequence {
    pub fn zeros(n: usize) -> AssociatedSequence {
        AssociatedSequence {
            parts: vec![Element::zero(); n],
        }
    }

    pub fn sum(&self) -> Element {
        self.parts.iter().fold(Element::zero(), |acc, p| &acc + p)
    }
}

fn require_flat(tower: &Tower) -> Result<(), CoreError> {
    if tower.classification().is_flat() {
        Ok(())
    } else {
        Err(CoreError::NotFlatTower)
    }
}

fn base_reduction(tower: &Tower, j: usize) -> Result<&HermiteTriple, CoreError> {
    tower.base_reduction(j).ok_or(CoreError::NotFlatTower)
}

/// Constants `c_1..c_k` with `g = Σ c_j hp_{t_0}(t_j')`, if any.
///
/// When every `t_j'` is `t_0`-simple this is the span of `t_1', ..., t_k'`.
pub fn span_coefficients(
    tower: &Tower,
    g: &Element,
    k: usize,
) -> Result<Option<Vec<Constant>>, CoreError> {
    let basis: Vec<&Element> = (1..=k)
        .map(|j| base_reduction(tower, j).map(|h| &h.simple))
        .collect::<Result<_, _>>()?;
    if g.is_zero() {
        return Ok(Some(vec![Constant::zero(); k]));
    }
    let common = basis
        .iter()
        .copied()
        .chain(core::iter::once(g))
        .fold(Polynomial::one(), |acc, e| lcm(&acc, e.den()));
    let numerator = |e: &Element| -> Vec<Constant> {
        let scaled = e.num() * &common.exact_div(e.den()).expect("lcm is a multiple");
        scaled
            .coefficients_in(0)
            .iter()
            .map(|c| c.constant_value().expect("element of K_0"))
            .collect()
    };
    let columns: Vec<Vec<Constant>> = basis.iter().map(|v| numerator(v)).collect();
    let rhs = numerator(g);
    let rows = columns.iter().map(Vec::len).chain([rhs.len()]).max().unwrap_or(0);
    let entry = |col: &[Constant], r: usize| col.get(r).cloned().unwrap_or_else(Constant::zero);
    let matrix: Vec<Vec<Constant>> = (0..rows)
        .map(|r| columns.iter().map(|col| entry(col, r)).collect())
        .collect();
    let rhs: Vec<Constant> = (0..rows).map(|r| entry(&rhs, r)).collect();
    if k == 0 {
        return Ok(None);
    }
    Ok(solve_linear_system(&matrix, &rhs))
}

/// The partial fraction of a `t_0`-simple `g` over the poles it shares with
/// `hp_{t_0}(t_1'), ..., hp_{t_0}(t_k')`.
fn shared_pole_part(tower: &Tower, g: &Element, k: usize) -> Result<Element, CoreError> {
    let mut poles = Polynomial::one();
    for j in 1..=k {
        poles = lcm(&poles, base_reduction(tower, j)?.simple.den());
    }
    let b = g.den();
    let b1 = poly_gcd(b, &poles, 0);
    if b1.degree(0) == 0 {
        return Ok(Element::zero());
    }
    let b2 = b.exact_div(&b1).expect("gcd divides");
    if b2.degree(0) == 0 {
        return Ok(g.clone());
    }
    // a = s·b2 + t·b1 with deg s < deg b1, so g = s/b1 + t/b2
    let up = |q: &Polynomial| UPoly::from_polynomial(q, 0);
    let (s, _) = UPoly::solve_bezout(&up(&b2), &up(&b1), &up(g.num()))?;
    Ok(&s.to_element() / &Element::from_poly(b1))
}

/// Whether `g ∈ K_0` is `k`-rigid.
pub fn is_k_rigid(tower: &Tower, g: &Element, k: usize) -> Result<bool, CoreError> {
    require_flat(tower)?;
    if g.is_zero() {
        return Ok(true);
    }
    if !g.lies_below(0) || !is_simple(g, 0) {
        return Ok(false);
    }
    Ok(span_coefficients(tower, g, k)?.is_none())
}

/// `p = u' + Σ p_i` with `p_i ∈ K_i[t_{i+1}, ..., t_n]` and `hc(p_i)` `t_i`-simple for `i >= 1`.
pub fn seq_decompose(
    tower: &Tower,
    p: &Element,
    n: usize,
) -> Result<(Element, Vec<Element>), CoreError> {
    assert!(n >= 1, "sequences start at level one");
    let mut current = as_upoly(p, n).ok_or(CoreError::LevelMismatch { level: n, found: n })?;
    if n == 1 {
        return Ok((Element::zero(), vec![p.clone()]));
    }
    let tn = Element::var(n);
    let dtn = tower.derivative_of(n).clone();
    let mut u = Element::zero();
    let mut parts = vec![Element::zero(); n];
    while !current.is_zero() {
        let d = current.degree();
        let ell = current.leading_coefficient();
        let h = hermite_reduce(tower, &ell, n - 1)?;
        let (uh, mut hs) = seq_decompose(tower, &h.poly, n - 1)?;
        hs.push(h.simple);
        let big_f = &h.derivative + &uh;
        let td = tn.pow(d as u32);
        u = &u + &(&big_f * &td);
        for (part, hj) in parts.iter_mut().zip(&hs) {
            *part = &*part + &(hj * &td);
        }
        let mut rest = current.truncate(d);
        if d > 0 {
            let ibp = (&big_f * &dtn).scale(&Constant::from_integer(d.into()));
            rest = &rest - &crate::arith::UPoly::monomial(n, ibp, d - 1);
        }
        current = rest;
    }
    Ok((u, parts))
}

/// `p = u' + q` for `p ∈ K_0[t_1, ..., t_n]`, with `hc(q)` `scale_n(q)`-rigid and `q ⪯ p`.
pub fn reduce_head(tower: &Tower, p: &Element, n: usize) -> Result<(Element, Element), CoreError> {
    reduce_head_traced(tower, p, n, &mut |_| {})
}

/// `reduce_head` reporting every head monomial it eliminates, in order.
pub fn reduce_head_traced(
    tower: &Tower,
    p: &Element,
    n: usize,
    trace: &mut dyn FnMut(&Monomial),
) -> Result<(Element, Element), CoreError> {
    require_flat(tower)?;
    if !p.den().lies_below(0) {
        return Err(CoreError::LevelMismatch {
            level: 0,
            found: p.den().max_var().unwrap_or(0),
        });
    }
    let mut u = Element::zero();
    let mut p = p.clone();
    while !p.is_zero() {
        let (xi, ell) = head(&p, 0);
        trace(&xi);
        let h = hermite_reduce(tower, &ell, 0)?;
        let xi_elem = Element::from_poly(Polynomial::monomial(xi.clone(), Constant::one()));
        if !h.derivative.is_zero() {
            let w = &h.derivative * &xi_elem;
            p = &p - &tower.differentiate(&w)?;
            u = &u + &w;
        }
        let g = h.simple;
        if !g.is_zero() {
            let s = scale_of_monomial(&xi, n);
            let (cs, rigid) = match span_coefficients(tower, &g, s)? {
                Some(cs) => (cs, false),
                None => {
                    // Still cancel whatever part of g is spanned on the poles it
                    // shares with t_1', ..., t_s'; the remaining head stays rigid.
                    let shared = shared_pole_part(tower, &g, s)?;
                    match span_coefficients(tower, &shared, s)? {
                        Some(cs) if !shared.is_zero() => (cs, true),
                        _ => return Ok((u, p)),
                    }
                }
            };
            let mut w = Element::zero();
            for (j, c) in (1..=s).zip(&cs) {
                if c.is_zero() {
                    continue;
                }
                let e = xi.exponent(j);
                let eta = xi.with_exponent(j, 0);
                let lifted = Monomial::var(j, e + 1).mul(&eta);
                let coeff = Constant::new(c.numer().clone(), c.denom() * (e + 1));
                let term = Element::from_poly(Polynomial::monomial(lifted, coeff));
                let correction = (&base_reduction(tower, j)?.derivative * &xi_elem).scale(c);
                w = &w + &(&term - &correction);
            }
            p = &p - &tower.differentiate(&w)?;
            u = &u + &w;
            if rigid {
                return Ok((u, p));
            }
        }
        debug_assert!(p.is_zero() || head(&p, 0).0 < xi, "head monomial must decrease");
    }
    Ok((u, p))
}

/// `p = u' + q` with `q` `t_n`-flat and its associated sequence.
pub fn reduce_to_flat(
    tower: &Tower,
    p: &Element,
    n: usize,
) -> Result<(Element, Element, AssociatedSequence), CoreError> {
    require_flat(tower)?;
    if n == 0 {
        let current = as_upoly(p, 0).ok_or(CoreError::LevelMismatch { level: 0, found: 0 })?;
        return Ok((
            integrate_constant_poly(&current),
            Element::zero(),
            AssociatedSequence::zeros(0),
        ));
    }
    let (u1, mut parts) = seq_decompose(tower, p, n)?;
    let (u2, r) = reduce_head(tower, &parts[0], n)?;
    parts[0] = r;
    let witness = AssociatedSequence { parts };
    Ok((&u1 + &u2, witness.sum(), witness))
}

/// Checks a witness without reference to how it was produced.
pub fn validate_witness(
    tower: &Tower,
    p: &Element,
    witness: &AssociatedSequence,
    n: usize,
) -> Result<bool, CoreError> {
    require_flat(tower)?;
    if witness.parts.len() != n || witness.sum() != *p {
        return Ok(false);
    }
    if n == 0 {
        return Ok(p.is_zero());
    }
    for (i, part) in witness.parts.iter().enumerate() {
        if !part.den().lies_below(i) || !part.lies_below(n) {
            return Ok(false);
        }
        if i >= 1 && !is_simple(&head(part, i).1, i) {
            return Ok(false);
        }
    }
    let (xi, hc) = head(&witness.parts[0], 0);
    is_k_rigid(tower, &hc, scale_of_monomial(&xi, n))
}

/// The natural split of `p`: `p_{n-1}` collects the `t_{n-1}`-fractional parts of
/// the coefficients, and so on down to `p_0 ∈ K_0[t_1, ..., t_n]`.
pub fn natural_split(p: &Element, n: usize) -> AssociatedSequence {
    let mut parts = vec![Element::zero(); n];
    if n == 0 {
        return AssociatedSequence { parts };
    }
    let mut current = p.clone();
    for level in (1..n).rev() {
        let mut lower = Element::zero();
        for (m, c) in coefficients_above(&current, level) {
            let mono = Element::from_poly(Polynomial::monomial(m, Constant::one()));
            let (fp, pp) = split_fp_pp(&c, level);
            parts[level] = &parts[level] + &(&fp * &mono);
            lower = &lower + &(&pp * &mono);
        }
        current = lower;
    }
    parts[0] = current;
    AssociatedSequence { parts }
}

/// A witness that `p ∈ K_{n-1}[t_n]` is `t_n`-flat, if the natural split is one.
pub fn is_flat_polynomial(
    tower: &Tower,
    p: &Element,
    n: usize,
) -> Result<Option<AssociatedSequence>, CoreError> {
    let witness = natural_split(p, n);
    Ok(validate_witness(tower, p, &witness, n)?.then_some(witness))
}

/// The flat-tower decomposition pieces `(a, g, p, witness)` of `f ∈ K_n`.
pub fn flat_parts(
    tower: &Tower,
    f: &Element,
) -> Result<(Element, Element, Element, AssociatedSequence), CoreError> {
    require_flat(tower)?;
    let n = tower.height();
    let h = hermite_reduce(tower, f, n)?;
    let (u, q, witness) = reduce_to_flat(tower, &h.poly, n)?;
    Ok((&h.derivative + &u, h.simple, q, witness))
}
