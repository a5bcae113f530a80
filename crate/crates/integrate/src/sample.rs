//! Seeded random tower elements for property checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tower_core::{Constant, Element, GeneratorKind, Monomial, Polynomial, Tower};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn q(n: i64) -> Constant {
    Constant::from_integer(n.into())
}

/// `(x, log x, Li x)`, a straight tower.
pub fn li_tower() -> Tower {
    Tower::new([
        GeneratorKind::Log(Element::var(0)),
        GeneratorKind::Primitive(Element::var(1).recip().expect("nonzero")),
    ])
    .expect("well formed")
}

/// `(x, log x, log(x+1), ..., log(x+k-1))`, a flat tower of logarithms.
pub fn log_tower(k: usize) -> Tower {
    Tower::new((0..k).map(|j| GeneratorKind::Log(&Element::var(0) + &Element::from_int(j as i64))))
        .expect("well formed")
}

/// `(x, log x)`, classified as both straight and flat.
pub fn single_log_tower() -> Tower {
    log_tower(1)
}

/// A polynomial in `t_0..=t_top` with up to `terms` terms.
pub fn polynomial(rng: &mut SampleRng, top: usize, max_exp: u32, terms: usize) -> Polynomial {
    let count = rng.gen_range(0..=terms);
    Polynomial::from_terms((0..count).map(|_| {
        let exps = (0..=top).map(|_| rng.gen_range(0..=max_exp)).collect();
        (Monomial::new(exps), q(rng.gen_range(-4..=4)))
    }))
}

/// A factor `t_v + c·x + k` for `v >= 1`, or `x + k` away from the poles of
/// the sample log generators.
fn linear(rng: &mut SampleRng, top: usize) -> Element {
    let x = Element::var(0);
    let v = rng.gen_range(0..=top);
    if v == 0 {
        &x + &Element::from_int(rng.gen_range(3..=6))
    } else {
        let c = rng.gen_range(-2..=2);
        &(&Element::var(v) + &x.scale(&q(c))) + &Element::from_int(rng.gen_range(-3..=3))
    }
}

/// An element of `K_n`: a polynomial over `Q` divided by up to two linear factors.
pub fn element(rng: &mut SampleRng, n: usize) -> Element {
    let p = polynomial(rng, n, 2, 3);
    let count = rng.gen_range(0..=2);
    let mut den = Element::from_int(rng.gen_range(1..=3));
    for _ in 0..count {
        den = &den * &linear(rng, n);
    }
    &Element::from_poly(p) / &den
}

/// An element of `K_{n-1}[t_n]` with coefficients in `Q(x)`.
pub fn tower_polynomial(rng: &mut SampleRng, n: usize) -> Element {
    let p = polynomial(rng, n, 2, 3);
    &Element::from_poly(p) / &(&Element::var(0) + &Element::from_int(rng.gen_range(3..=6)))
}

/// Terms `c·log(v)` with nonzero rational `c` and pairwise distinct arguments
/// `x + k` (k >= 3), so that the residues are recoverable one by one.
pub fn log_terms(rng: &mut SampleRng, n: usize) -> Vec<(Constant, Element)> {
    let count = rng.gen_range(1..=3);
    let mut out: Vec<(Constant, Element)> = Vec::new();
    while out.len() < count {
        let v = rng.gen_range(0..=n);
        let arg = if v == 0 {
            &Element::var(0) + &Element::from_int(rng.gen_range(3..=8))
        } else {
            &Element::var(v) + &Element::from_int(rng.gen_range(1..=4))
        };
        if out.iter().any(|(_, a)| *a == arg) {
            continue;
        }
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-5..=5);
        }
        let c = Constant::new(num.into(), rng.gen_range(1..=3).into());
        out.push((c, arg));
    }
    out
}

/// `Σ c·v'/v` for the given terms.
pub fn log_derivative_sum(tower: &Tower, terms: &[(Constant, Element)]) -> Element {
    terms.iter().fold(Element::zero(), |acc, (c, v)| {
        let dv = tower.differentiate(v).expect("element of the tower");
        &acc + &(&dv / v).scale(c)
    })
}
