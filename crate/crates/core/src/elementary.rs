//! Elementary integrability over logarithmic towers via Rothstein–Trager
//! resultants.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{poly_gcd, resultant, Constant, Element, Polynomial, UPoly};
use crate::decompose::{decompose, Decomposition, Mode};
use crate::error::CoreError;
use crate::hermite::is_simple;
use crate::tower::{degree_in, split_fp_pp, Tower};

/// One logarithmic term of an antiderivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogTerm {
    /// `residue · log(argument)`.
    Rational { residue: Constant, argument: Element },
    /// `Σ_{α : P(α) = 0} α · log(gcd(denominator, numerator − α·denominator'))`
    /// over the roots of a factor `P` without rational roots.
    RootSum {
        level: usize,
        /// Coefficients of `P`, lowest degree first; `P` is monic.
        polynomial: Vec<Constant>,
        numerator: Element,
        denominator: Element,
    },
}

impl LogTerm {
    pub fn residue(&self) -> Option<&Constant> {
        match self {
            LogTerm::Rational { residue, .. } => Some(residue),
            LogTerm::RootSum { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub level: usize,
    /// `a` in `g = a/b`, a polynomial in `t_level` over `K_{level-1}`.
    pub numerator: Element,
    /// `b`, monic and squarefree in `t_level`.
    pub denominator: Element,
    /// `res_{t_level}(b, a − z·b')` made monic in `z`, lowest degree first.
    pub resultant: Vec<Element>,
    pub constant_residues: bool,
    pub terms: Vec<LogTerm>,
}

/// Rothstein–Trager test for a `t_i`-simple `g`.
pub fn residue_test(tower: &Tower, g: &Element, i: usize) -> Result<ResidueReport, CoreError> {
    tower.check_element(g)?;
    if !is_simple(g, i) {
        return Err(CoreError::NotSimple(i));
    }
    if g.is_zero() {
        return Ok(ResidueReport {
            level: i,
            numerator: Element::zero(),
            denominator: Element::one(),
            resultant: vec![Element::one()],
            constant_residues: true,
            terms: Vec::new(),
        });
    }
    let (num, den) = UPoly::fraction_of(g, i);
    let lc_inv = den.leading_coefficient().recip().expect("nonzero denominator");
    let b = den.scale(&lc_inv);
    let a = num.scale(&lc_inv);
    let db = tower.d_upoly(&b);

    // Clear coefficient denominators so the resultant runs over polynomials; the
    // common factor only rescales R, which is normalized away below.
    let z = i + 1;
    let common = [&a, &b, &db]
        .iter()
        .fold(Polynomial::one(), |acc, p| crate::arith::lcm(&acc, &p.common_denominator()));
    let lift = |p: &UPoly| -> Polynomial {
        let e = p.scale(&Element::from_poly(common.clone())).to_element();
        debug_assert!(e.den().is_one());
        e.num().clone()
    };
    let b_poly = lift(&b);
    let zpoly = Polynomial::var(z);
    let f_poly = &lift(&a) - &(&zpoly * &lift(&db));
    let r = resultant(&b_poly, &f_poly, i)?;
    let coeffs = r.coefficients_in(z);
    let lc = Element::from_poly(coeffs.last().cloned().expect("nonzero resultant"));
    let monic: Vec<Element> = coeffs
        .iter()
        .map(|c| &Element::from_poly(c.clone()) / &lc)
        .collect();
    let constant_residues = monic.iter().all(Element::is_constant);

    let mut terms = Vec::new();
    if constant_residues && monic.len() > 1 {
        let rz: Vec<Constant> = monic
            .iter()
            .map(|c| c.as_constant().unwrap_or_else(Constant::zero))
            .collect();
        let squarefree = squarefree_part(&rz);
        let (roots, leftover) = split_rational_roots(&squarefree);
        for c in roots {
            let arg = b.gcd(&(&a - &db.scale(&Element::constant(c.clone()))));
            terms.push(LogTerm::Rational {
                residue: c,
                argument: arg.to_element(),
            });
        }
        if leftover.len() > 1 {
            terms.push(LogTerm::RootSum {
                level: i,
                polynomial: leftover,
                numerator: a.to_element(),
                denominator: b.to_element(),
            });
        }
    }
    Ok(ResidueReport {
        level: i,
        numerator: a.to_element(),
        denominator: b.to_element(),
        resultant: monic,
        constant_residues,
        terms,
    })
}

/// Outcome of the membership test in the span of logarithmic derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogCombination {
    pub is_combination: bool,
    pub terms: Vec<LogTerm>,
    pub reports: Vec<ResidueReport>,
}

/// Whether `r ∈ K_i` is a constant linear combination of logarithmic derivatives.
pub fn is_log_derivative_combination(
    tower: &Tower,
    r: &Element,
    i: usize,
) -> Result<LogCombination, CoreError> {
    tower.check_element(r)?;
    tower.require_log_generators(i)?;
    let mut out = LogCombination {
        is_combination: false,
        terms: Vec::new(),
        reports: Vec::new(),
    };
    let mut current = r.clone();
    for level in (0..=i).rev() {
        let (fp, pp) = split_fp_pp(&current, level);
        if !is_simple(&fp, level) {
            return Ok(out);
        }
        let report = residue_test(tower, &fp, level)?;
        let constant = report.constant_residues;
        out.terms.extend(report.terms.iter().cloned());
        out.reports.push(report);
        if !constant {
            return Ok(out);
        }
        if level == 0 {
            out.is_combination = pp.is_zero();
            return Ok(out);
        }
        if degree_in(&pp, level) > 0 {
            return Ok(out);
        }
        current = pp;
    }
    unreachable!("the loop returns at level 0")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    InField,
    Elementary,
    NotElementary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::InField => "in-field",
            Verdict::Elementary => "elementary",
            Verdict::NotElementary => "not-elementary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryResult {
    pub verdict: Verdict,
    pub decomposition: Decomposition,
    /// Rational part of the antiderivative; meaningful unless `NotElementary`.
    pub field_part: Element,
    pub logs: Vec<LogTerm>,
    pub reports: Vec<ResidueReport>,
    /// The antiderivative was differentiated back to the input successfully.
    /// False when it contains root sums, which are not checked in-system.
    pub certified: bool,
}

/// Derivative of `field_part + Σ c log(v)` over the rational log terms.
pub fn derivative_of_antiderivative(
    tower: &Tower,
    field_part: &Element,
    logs: &[LogTerm],
) -> Result<Element, CoreError> {
    let mut total = tower.differentiate(field_part)?;
    for term in logs {
        if let LogTerm::Rational { residue, argument } = term {
            let dv = tower.differentiate(argument)?;
            total = &total + &(&dv / argument).scale(residue);
        }
    }
    Ok(total)
}

/// Decides whether `f` has an elementary antiderivative over `K_n`.
///
/// In-field integrability is decided for every straight or flat tower; the
/// elementary verdict requires logarithmic generators and otherwise fails
/// with `NonLogTower`.
pub fn elementary_integrate(tower: &Tower, f: &Element) -> Result<ElementaryResult, CoreError> {
    let decomposition = decompose(tower, f, Mode::Auto)?;
    let field_part = decomposition.antiderivative.clone();
    if decomposition.is_integrable() {
        return Ok(ElementaryResult {
            verdict: Verdict::InField,
            decomposition,
            field_part,
            logs: Vec::new(),
            reports: Vec::new(),
            certified: true,
        });
    }
    let n = tower.height();
    tower.require_log_generators(n)?;
    let residual = &decomposition.simple + &decomposition.remainder;
    let combination = is_log_derivative_combination(tower, &residual, n)?;
    if !combination.is_combination {
        return Ok(ElementaryResult {
            verdict: Verdict::NotElementary,
            decomposition,
            field_part,
            logs: Vec::new(),
            reports: combination.reports,
            certified: false,
        });
    }
    let all_rational = combination.terms.iter().all(|t| t.residue().is_some());
    let certified =
        all_rational && derivative_of_antiderivative(tower, &field_part, &combination.terms)? == *f;
    Ok(ElementaryResult {
        verdict: Verdict::Elementary,
        decomposition,
        field_part,
        logs: combination.terms,
        reports: combination.reports,
        certified,
    })
}

fn to_upoly(coeffs: &[Constant]) -> Polynomial {
    Polynomial::from_coefficients(
        0,
        &coeffs.iter().map(|c| Polynomial::constant(c.clone())).collect::<Vec<_>>(),
    )
}

fn from_upoly(p: &Polynomial) -> Vec<Constant> {
    p.coefficients_in(0)
        .iter()
        .map(|c| c.constant_value().unwrap_or_else(Constant::zero))
        .collect()
}

/// Monic squarefree part of a univariate polynomial over Q.
fn squarefree_part(coeffs: &[Constant]) -> Vec<Constant> {
    let p = to_upoly(coeffs);
    let g = poly_gcd(&p, &p.partial(0), 0);
    from_upoly(&p.exact_div(&g).expect("gcd divides").normalized())
}

/// Distinct rational roots of a squarefree polynomial, and the monic cofactor
/// left after dividing them out.
///
/// Candidates come from the rational root theorem. Integer factorization uses
/// trial division up to a fixed bound, so a root whose numerator or
/// denominator has two large prime factors may be missed; it then stays in
/// the cofactor and is reported as a root sum.
fn split_rational_roots(coeffs: &[Constant]) -> (Vec<Constant>, Vec<Constant>) {
    let mut roots = Vec::new();
    let mut poly = coeffs.to_vec();
    if poly.len() <= 1 {
        return (roots, poly);
    }
    if poly[0].is_zero() {
        roots.push(Constant::zero());
        poly.remove(0);
    }
    let denominators = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * &denominators).to_integer()).collect();
    let lead = ints.last().expect("nonempty").abs();
    let trail = ints[0].abs();
    if poly.len() > 1 {
        let ps = divisors(&trail);
        let qs = divisors(&lead);
        let mut candidates: Vec<Constant> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let c = Constant::new(BigInt::from(sign) * p, q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort();
        for c in candidates {
            if poly.len() <= 1 {
                break;
            }
            if let Some(quotient) = deflate(&poly, &c) {
                roots.push(c);
                poly = quotient;
            }
        }
    }
    (roots, poly)
}

/// `poly / (z − c)` when `c` is a root.
fn deflate(poly: &[Constant], c: &Constant) -> Option<Vec<Constant>> {
    let n = poly.len();
    let mut quotient = vec![Constant::zero(); n - 1];
    let mut carry = Constant::zero();
    for k in (0..n).rev() {
        let value = &poly[k] + &(&carry * c);
        if k == 0 {
            return value.is_zero().then_some(quotient);
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    None
}

const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n: BigUint = n.magnitude().clone();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        while (&n % &dd).is_zero() {
            n /= &dd;
            e += 1;
        }
        if e > 0 {
            factors.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in factors {
        let current = out.clone();
        let mut power = BigUint::one();
        for _ in 0..e {
            power *= &p;
            out.extend(current.iter().map(|x| x * &power));
        }
    }
    out.sort();
    out.into_iter().map(BigInt::from).collect()
}
