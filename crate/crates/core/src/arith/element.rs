//! Canonical rational functions in `t_0, ..., t_n` over the rationals.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{forward_owned_binop, Monomial, Polynomial};
use super::{Constant, Var};

/// A reduced fraction `num/den`.
///
/// The numerator and denominator are coprime and the `≺`-maximal coefficient
/// of the denominator is one, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    num: Polynomial,
    den: Polynomial,
}

impl Default for Element {
    fn default() -> Self {
        Element::zero()
    }
}

impl Element {
    /// Builds `num/den` in canonical form. Panics when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Element {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Polynomial, den: Polynomial) -> Option<Element> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Element::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Some(Self::from_coprime(num, den))
    }

    /// Assumes `gcd(num, den) = 1`; only rescales the denominator.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Element {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Element { num, den }
        } else {
            let inv = lc.recip();
            Element {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Element {
        Element {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Element {
        Element::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Element {
        Element {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Constant) -> Element {
        Element::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Element {
        Element::from_poly(Polynomial::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Element {
        Element::constant(Constant::new(n.into(), d.into()))
    }

    pub fn var(v: Var) -> Element {
        Element::from_poly(Polynomial::var(v))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when the element lies in the constant field.
    pub fn as_constant(&self) -> Option<Constant> {
        if !self.den.is_one() {
            return None;
        }
        self.num.constant_value()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn var_mask(&self) -> u64 {
        self.num.var_mask() | self.den.var_mask()
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

    pub fn recip(&self) -> Option<Element> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Constant) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Element {
        self * &Element::from_poly(p.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Element {
        self.mul_poly(&Polynomial::monomial(m.clone(), Constant::one()))
    }

    pub fn pow(&self, e: u32) -> Element {
        Element {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Evaluates at a rational point; `None` on a pole.
    pub fn evaluate(&self, point: &[Constant]) -> Option<Constant> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(point) / d)
    }
}

impl From<Polynomial> for Element {
    fn from(p: Polynomial) -> Self {
        Element::from_poly(p)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Element::new(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            // gcd(a·d + c, d) = gcd(c, d) = 1
            return Element::from_coprime(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return Element::from_coprime(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &b1 * &rhs.den;
        if g.is_one() {
            return Element::from_coprime(num, den);
        }
        // Any common factor of num and den divides g.
        let h = gcd(&num, &g);
        if h.is_one() {
            Element::from_coprime(num, den)
        } else {
            Element::from_coprime(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        if self.is_zero() || rhs.is_zero() {
            return Element::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Element::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        Element::from_coprime(&a * &c, &b * &d)
    }
}

impl Div for &Element {
    type Output = Element;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Element) -> Element {
        self * &rhs.recip().expect("division by zero element")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

forward_owned_binop!(Element, Add, add);
forward_owned_binop!(Element, Sub, sub);
forward_owned_binop!(Element, Mul, mul);
forward_owned_binop!(Element, Div, div);

impl Zero for Element {
    fn zero() -> Self {
        Element::zero()
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
}

impl One for Element {
    fn one() -> Self {
        Element::one()
    }
}
