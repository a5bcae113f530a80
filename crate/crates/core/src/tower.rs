//! Primitive towers `K_0 ⊂ K_1 ⊂ ... ⊂ K_n` over `Q(t_0)` and the structural
//! maps on their elements.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{Element, Monomial, Polynomial, UPoly, Var};
use crate::error::CoreError;
use crate::hermite::{hermite_reduce, HermiteTriple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `t = log(argument)`, so `t' = argument'/argument`.
    Log(Element),
    /// `t' = derivative`.
    Primitive(Element),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    index: usize,
    kind: GeneratorKind,
    derivative: Element,
}

impl Generator {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn derivative(&self) -> &Element {
        &self.derivative
    }

    pub fn is_log(&self) -> bool {
        matches!(self.kind, GeneratorKind::Log(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Straight,
    Flat,
    Both,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Straight => "straight",
            Classification::Flat => "flat",
            Classification::Both => "both",
            Classification::Neither => "neither",
        }
    }

    pub fn is_straight(self) -> bool {
        matches!(self, Classification::Straight | Classification::Both)
    }

    pub fn is_flat(self) -> bool {
        matches!(self, Classification::Flat | Classification::Both)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An immutable tower. Hermite reductions of every `t_i'` that the reduction
/// algorithms reuse are computed once at construction.
#[derive(Clone, Debug)]
pub struct Tower {
    generators: Vec<Generator>,
    /// Entry `v` is `t_v'`; entry 0 is `1`.
    derivatives: Vec<Element>,
    /// Entry `i - 1` reduces `t_i'` at level `i - 1`.
    level_hermite: Vec<HermiteTriple>,
    /// Entry `i - 1` reduces `t_i'` at level 0 when `t_i' ∈ K_0`.
    base_hermite: Vec<Option<HermiteTriple>>,
}

impl Default for Tower {
    fn default() -> Self {
        Tower::base()
    }
}

impl Tower {
    /// `K_0 = Q(t_0)` with `t_0' = 1`.
    pub fn base() -> Tower {
        Tower {
            generators: Vec::new(),
            derivatives: alloc::vec![Element::one()],
            level_hermite: Vec::new(),
            base_hermite: Vec::new(),
        }
    }

    pub fn new(kinds: impl IntoIterator<Item = GeneratorKind>) -> Result<Tower, CoreError> {
        kinds.into_iter().try_fold(Tower::base(), Tower::extend)
    }

    /// Adjoins `t_{n+1}`.
    pub fn extend(mut self, kind: GeneratorKind) -> Result<Tower, CoreError> {
        let index = self.height() + 1;
        if index >= 63 {
            return Err(CoreError::MalformedGenerator {
                index,
                reason: "towers are limited to 62 generators",
            });
        }
        let derivative = match &kind {
            GeneratorKind::Log(arg) => {
                if arg.is_zero() {
                    return Err(CoreError::MalformedGenerator {
                        index,
                        reason: "logarithm of zero",
                    });
                }
                if !arg.lies_below(index - 1) {
                    return Err(CoreError::MalformedGenerator {
                        index,
                        reason: "argument must lie in the previous field",
                    });
                }
                &self.d(arg) / arg
            }
            GeneratorKind::Primitive(der) => {
                if !der.lies_below(index - 1) {
                    return Err(CoreError::MalformedGenerator {
                        index,
                        reason: "derivative must lie in the previous field",
                    });
                }
                der.clone()
            }
        };
        let level = hermite_reduce(&self, &derivative, index - 1)?;
        let base = if derivative.lies_below(0) {
            Some(hermite_reduce(&self, &derivative, 0)?)
        } else {
            None
        };
        self.derivatives.push(derivative.clone());
        self.generators.push(Generator { index, kind, derivative });
        self.level_hermite.push(level);
        self.base_hermite.push(base);
        Ok(self)
    }

    /// Number of generators `n`.
    pub fn height(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// The generator `t_i`, `1 <= i <= n`.
    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i - 1]
    }

    /// `t_v'` for `0 <= v <= n`.
    pub fn derivative_of(&self, v: Var) -> &Element {
        &self.derivatives[v]
    }

    /// Hermite reduction of `t_i'` with respect to `t_{i-1}`: `(u_i, v_i, w_i)` with
    /// `t_i' = u_i' + v_i + w_i` and `v_i = hp_{t_{i-1}}(t_i')`.
    pub fn derivative_reduction(&self, i: usize) -> &HermiteTriple {
        &self.level_hermite[i - 1]
    }

    /// Rational reduction of `t_i'` over `K_0`, when `t_i' ∈ K_0`.
    pub fn base_reduction(&self, i: usize) -> Option<&HermiteTriple> {
        self.base_hermite[i - 1].as_ref()
    }

    pub fn classification(&self) -> Classification {
        let n = self.height();
        if n <= 1 {
            return Classification::Both;
        }
        let straight = (2..=n).all(|i| !self.derivative_reduction(i).simple.is_zero());
        let flat = (1..=n).all(|i| self.derivatives[i].lies_below(0));
        match (straight, flat) {
            (true, true) => Classification::Both,
            (true, false) => Classification::Straight,
            (false, true) => Classification::Flat,
            (false, false) => Classification::Neither,
        }
    }

    /// The subtower `K_0 ⊂ ... ⊂ K_level`.
    pub fn truncated(&self, level: usize) -> Tower {
        let keep = level.min(self.height());
        Tower {
            generators: self.generators[..keep].to_vec(),
            derivatives: self.derivatives[..=keep].to_vec(),
            level_hermite: self.level_hermite[..keep].to_vec(),
            base_hermite: self.base_hermite[..keep].to_vec(),
        }
    }

    /// Fails with `NonLogTower` naming the first non-logarithmic generator up to `level`.
    pub fn require_log_generators(&self, level: usize) -> Result<(), CoreError> {
        match self.generators.iter().take(level).find(|g| !g.is_log()) {
            Some(g) => Err(CoreError::NonLogTower(g.index)),
            None => Ok(()),
        }
    }

    pub fn is_log_tower(&self) -> bool {
        self.generators.iter().all(Generator::is_log)
    }

    pub fn check_element(&self, f: &Element) -> Result<(), CoreError> {
        match f.max_var() {
            Some(v) if v > self.height() => Err(CoreError::UnknownVariable(v)),
            _ => Ok(()),
        }
    }

    /// The tower derivation.
    pub fn differentiate(&self, f: &Element) -> Result<Element, CoreError> {
        self.check_element(f)?;
        Ok(self.d(f))
    }

    /// The derivation on elements already known to live in the tower.
    pub(crate) fn d(&self, f: &Element) -> Element {
        let dn = self.d_poly(f.num());
        if f.den().is_one() {
            return dn;
        }
        let dd = self.d_poly(f.den());
        if dd.is_zero() {
            return &dn / &Element::from_poly(f.den().clone());
        }
        // (N/D)' = (N'D - N D') / D^2
        let top = &dn.mul_poly(f.den()) - &dd.mul_poly(f.num());
        &top / &Element::from_poly(f.den().pow(2))
    }

    fn d_poly(&self, p: &Polynomial) -> Element {
        let mask = p.var_mask();
        let mut acc = Element::zero();
        for v in 0..self.derivatives.len() {
            if mask & (1u64 << v) != 0 {
                let partial = p.partial(v);
                acc = &acc + &self.derivatives[v].mul_poly(&partial);
            }
        }
        acc
    }

    /// The derivation on `K_{i-1}[t_i]`, where `i` is the variable of `p`.
    pub(crate) fn d_upoly(&self, p: &UPoly) -> UPoly {
        let var = p.var();
        let coeffwise = UPoly::from_coeffs(var, p.coeffs().iter().map(|c| self.d(c)).collect());
        let chain = p.formal_derivative().scale(&self.derivatives[var]);
        &coeffwise + &chain
    }
}

/// `f = fp + pp` with `fp` proper in `t_i` and `pp ∈ K_{i-1}[t_i]`.
pub fn split_fp_pp(f: &Element, i: Var) -> (Element, Element) {
    if !f.den().involves(i) {
        return (Element::zero(), f.clone());
    }
    let (num, den) = UPoly::fraction_of(f, i);
    if num.degree() < den.degree() {
        return (f.clone(), Element::zero());
    }
    let (q, r) = num.divrem(&den);
    (&r.to_element() / &den.to_element(), q.to_element())
}

/// `f` as a polynomial in `t_i` over `K_{i-1}`; `None` if the denominator involves `t_i`.
pub fn as_upoly(f: &Element, i: Var) -> Option<UPoly> {
    UPoly::from_element(f, i)
}

/// Leading coefficient of `f ∈ K_{i-1}[t_i]` with respect to `t_i`.
pub fn leading_coefficient(f: &Element, i: Var) -> Element {
    as_upoly(f, i)
        .expect("polynomial in the top variable")
        .leading_coefficient()
}

/// Degree of `f ∈ K_{i-1}[t_i]` in `t_i`.
pub fn degree_in(f: &Element, i: Var) -> u32 {
    f.num().degree(i)
}

/// `p ∈ K_i[t_{i+1}, ..., t_n]` as a map from monomials in `t_{i+1}, ...` to
/// coefficients in `K_i`. Panics if the denominator involves a variable above `i`.
pub fn coefficients_above(p: &Element, i: Var) -> BTreeMap<Monomial, Element> {
    assert!(p.den().lies_below(i), "denominator above level {i}");
    let mut grouped: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.num().terms() {
        let (low, high) = m.split_at(i);
        grouped
            .entry(high)
            .or_default()
            .add_term(low, c.clone());
    }
    let den = Element::from_poly(p.den().clone());
    grouped
        .into_iter()
        .map(|(m, c)| (m, &Element::from_poly(c) / &den))
        .collect()
}

/// Head monomial and head coefficient of `p` viewed in `K_i[t_{i+1}, ..., t_n]`.
/// The head of zero is `(1, 0)`.
pub fn head(p: &Element, i: Var) -> (Monomial, Element) {
    coefficients_above(p, i)
        .pop_last()
        .unwrap_or_else(|| (Monomial::one(), Element::zero()))
}

/// `scale_n(p)` for `p ∈ K_0[t_1, ..., t_n]`: the lowest variable occurring in the
/// head monomial, or `n` when `p ∈ K_0` (including zero).
pub fn scale(p: &Element, n: usize) -> usize {
    scale_of_monomial(&head(p, 0).0, n)
}

pub fn scale_of_monomial(m: &Monomial, n: usize) -> usize {
    m.min_var().unwrap_or(n)
}

/// Answers whether an element of a tower has an antiderivative in the same
/// field. Implemented by the decomposition layer.
pub trait IntegrabilityOracle {
    /// `Ok(None)` when the oracle cannot decide for this tower.
    fn is_integrable(&self, tower: &Tower, f: &Element) -> Result<Option<bool>, CoreError>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    /// `t_i'` has an antiderivative in `K_{i-1}`, so `t_i` is not a monomial.
    IntegrableDerivative,
    /// `K_{i-1}` is neither straight nor flat; `t_i` cannot be certified.
    Undecidable,
    Failed(CoreError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            ViolationReason::IntegrableDerivative => write!(
                f,
                "generator {}: derivative is integrable in the previous field",
                self.index
            ),
            ViolationReason::Undecidable => write!(
                f,
                "generator {}: previous field is neither straight nor flat",
                self.index
            ),
            ViolationReason::Failed(e) => write!(f, "generator {}: {e}", self.index),
        }
    }
}

/// Checks bottom-up that every `t_i'` has no antiderivative in `K_{i-1}`.
pub fn validate_tower(tower: &Tower, oracle: &dyn IntegrabilityOracle) -> Vec<Violation> {
    let mut violations = Vec::new();
    for i in 1..=tower.height() {
        let below = tower.truncated(i - 1);
        let reason = match oracle.is_integrable(&below, tower.derivative_of(i)) {
            Ok(Some(false)) => continue,
            Ok(Some(true)) => ViolationReason::IntegrableDerivative,
            Ok(None) => ViolationReason::Undecidable,
            Err(e) => ViolationReason::Failed(e),
        };
        violations.push(Violation { index: i, reason });
    }
    violations
}
