//! Squarefree decomposition by Yun's algorithm.

use alloc::vec::Vec;

use super::gcd::{content_in, gcd};
use super::poly::Polynomial;
use super::{ArithError, Var};

/// `p = content · ∏ factor^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// The part of `p` free of the main variable, including the rational unit.
    pub content: Polynomial,
    /// Pairwise coprime squarefree factors, primitive in the main variable,
    /// with strictly increasing multiplicities.
    pub factors: Vec<(Polynomial, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(self.content.clone(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    /// Product of the distinct factors.
    pub fn squarefree_part(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, _)| &acc * f)
    }
}

/// Squarefree decomposition of `p` regarded as univariate in `var`; the
/// derivative used is the formal `d/d(var)`.
pub fn squarefree_decompose(p: &Polynomial, var: Var) -> Result<SquarefreeDecomposition, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let cont = content_in(p, var);
    let prim = p.exact_div(&cont).expect("content divides").normalized();
    let mut factors = Vec::new();
    if prim.degree(var) > 0 {
        let dp = prim.partial(var);
        let a0 = gcd(&prim, &dp);
        let mut b = prim.exact_div(&a0).expect("gcd divides");
        let mut c = dp.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.partial(var);
        let mut k = 1u32;
        while b.degree(var) > 0 {
            let a = gcd(&b, &d);
            if a.degree(var) > 0 {
                factors.push((a.clone(), k));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.partial(var);
            k += 1;
        }
    }
    let mut decomposition = SquarefreeDecomposition {
        content: Polynomial::one(),
        factors,
    };
    decomposition.content = p
        .exact_div(&decomposition.expand())
        .expect("factors divide the input");
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: Var) -> Polynomial {
        Polynomial::var(i)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn pure_power() {
        let d = squarefree_decompose(&v(0).pow(2), 0).unwrap();
        assert_eq!(d.factors, [(v(0), 2)]);
        assert_eq!(d.content, Polynomial::one());
    }

    #[test]
    fn tower_variable() {
        let t2 = v(2);
        let p = &t2.pow(2) * &(&t2 + &c(1));
        let d = squarefree_decompose(&p, 2).unwrap();
        assert_eq!(d.factors, [(&t2 + &c(1), 1), (t2, 2)]);
    }

    #[test]
    fn expanded_input_is_recovered() {
        let x = v(0);
        let p = &(&x - &c(1)) * &(&x + &c(1)).pow(2);
        let d = squarefree_decompose(&p, 0).unwrap();
        assert_eq!(d.factors, [(&x - &c(1), 1), (&x + &c(1), 2)]);
        assert_eq!(d.expand(), p);
    }

    #[test]
    fn content_in_lower_variables() {
        let x = v(0);
        let t1 = v(1);
        let p = &(&x * &c(3)) * &(&t1 + &x).pow(3);
        let d = squarefree_decompose(&p, 1).unwrap();
        assert_eq!(d.factors, [(&t1 + &x, 3)]);
        assert_eq!(d.content, &x * &c(3));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(squarefree_decompose(&Polynomial::zero(), 0), Err(ArithError::ZeroInput));
    }
}
