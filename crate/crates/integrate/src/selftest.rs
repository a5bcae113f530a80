//! Randomized self-verification of the decomposition and elementary engines.

use std::fmt;

use tower_core::decompose::{decompose, Mode};
use tower_core::elementary::{is_log_derivative_combination, LogTerm};
use tower_core::flat::{reduce_to_flat, validate_witness};
use tower_core::hermite::is_simple;
use tower_core::straight::{is_straight, reduce_to_straight};
use tower_core::tower::degree_in;
use tower_core::{CoreError, Element, Polynomial, Tower};

use crate::frontend::render;
use crate::sample::{self, SampleRng};

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    pub cases: usize,
    /// Perturbs every antiderivative so the harness can be seen to fail.
    pub inject_fault: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, cases: 40, inject_fault: false }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {}", self.seed)?;
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "  ok    {} ({} cases)", c.name, c.cases)?,
                Some(why) => writeln!(f, "  FAIL  {}: {}", c.name, why)?,
            }
        }
        Ok(())
    }
}

struct Family {
    label: &'static str,
    tower: Tower,
}

fn families() -> Vec<Family> {
    vec![
        Family { label: "straight", tower: sample::li_tower() },
        Family { label: "flat", tower: sample::log_tower(3) },
    ]
}

fn names(n: usize) -> Vec<String> {
    std::iter::once("x".to_string())
        .chain((1..=n).map(|i| format!("t{i}")))
        .collect()
}

type Property<'a> = dyn Fn(&Element) -> Result<bool, CoreError> + 'a;

/// Drops numerator terms while the property keeps failing.
fn minimize(f: &Element, holds: &Property) -> Element {
    let mut current = f.clone();
    loop {
        let terms: Vec<_> = current.num().terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if terms.len() <= 1 {
            return current;
        }
        let smaller = (0..terms.len()).find_map(|skip| {
            let num = Polynomial::from_terms(
                terms.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, t)| t.clone()),
            );
            let candidate = Element::new(num, current.den().clone());
            matches!(holds(&candidate), Ok(false)).then_some(candidate)
        });
        match smaller {
            Some(s) => current = s,
            None => return current,
        }
    }
}

fn run_property(
    name: &'static str,
    cases: usize,
    rng: &mut SampleRng,
    tower: &Tower,
    generate: &dyn Fn(&mut SampleRng) -> Element,
    holds: &Property,
) -> CheckOutcome {
    for _ in 0..cases {
        let f = generate(rng);
        let verdict = holds(&f);
        if !matches!(verdict, Ok(true)) {
            let small = minimize(&f, holds);
            let detail = match verdict {
                Err(e) => format!(" ({e})"),
                _ => String::new(),
            };
            return CheckOutcome {
                name,
                cases,
                failure: Some(format!(
                    "counterexample {}{detail}",
                    render(&small, &names(tower.height()))
                )),
            };
        }
    }
    CheckOutcome { name, cases, failure: None }
}

pub fn run(config: Config) -> Report {
    let mut rng = sample::rng(config.seed);
    let mut checks = Vec::new();
    let fault = |tower: &Tower, a: Element| {
        if config.inject_fault {
            &a + &Element::var(tower.height())
        } else {
            a
        }
    };
    for fam in families() {
        let tower = &fam.tower;
        let n = tower.height();
        checks.push(run_property(
            if fam.label == "straight" { "round-trip/straight" } else { "round-trip/flat" },
            config.cases,
            &mut rng,
            tower,
            &|r| sample::element(r, n),
            &|h| {
                let d = decompose(tower, &tower.differentiate(h)?, Mode::Auto)?;
                let a = fault(tower, d.antiderivative.clone());
                Ok(d.is_integrable() && (&a - h).is_constant())
            },
        ));
        checks.push(run_property(
            if fam.label == "straight" { "exactness/straight" } else { "exactness/flat" },
            config.cases,
            &mut rng,
            tower,
            &|r| sample::element(r, n),
            &|f| {
                let d = decompose(tower, f, Mode::Auto)?;
                let a = fault(tower, d.antiderivative.clone());
                let back = &(&tower.differentiate(&a)? + &d.simple) + &d.remainder;
                let shaped = match &d.witness {
                    Some(w) => validate_witness(tower, &d.remainder, w, n)?,
                    None => is_straight(tower, &d.remainder, n)?,
                };
                Ok(back == *f && is_simple(&d.simple, n) && shaped)
            },
        ));
        let shift_seed = config.seed ^ 0x9e37_79b9;
        // the shift h' depends on f so that different cases see different shifts
        let shift_for = move |f: &Element| {
            let mut hasher = std::collections::hash_map::DefaultHasher::new();
            std::hash::Hash::hash(&format!("{f:?}"), &mut hasher);
            sample::rng(shift_seed ^ std::hash::Hasher::finish(&hasher))
        };
        checks.push(run_property(
            if fam.label == "straight" { "uniqueness/straight" } else { "uniqueness/flat" },
            config.cases,
            &mut rng,
            tower,
            &|r| sample::element(r, n),
            &|f| {
                let mut local = shift_for(f);
                let h = sample::element(&mut local, n);
                let a = decompose(tower, f, Mode::Auto)?;
                let b = decompose(tower, &(f + &tower.differentiate(&h)?), Mode::Auto)?;
                Ok(a.simple == b.simple
                    && degree_in(&a.remainder, n) == degree_in(&b.remainder, n))
            },
        ));
        checks.push(run_property(
            if fam.label == "straight" { "witness/straight" } else { "witness/flat" },
            config.cases,
            &mut rng,
            tower,
            &|r| sample::tower_polynomial(r, n),
            &|p| {
                if fam.label == "straight" {
                    let (u, q) = reduce_to_straight(tower, p, n)?;
                    let u = fault(tower, u);
                    Ok(is_straight(tower, &q, n)? && &tower.differentiate(&u)? + &q == *p)
                } else {
                    let (u, q, w) = reduce_to_flat(tower, p, n)?;
                    let u = fault(tower, u);
                    Ok(validate_witness(tower, &q, &w, n)? && &tower.differentiate(&u)? + &q == *p)
                }
            },
        ));
    }

    let both = sample::single_log_tower();
    checks.push(run_property(
        "straight-flat-agreement",
        config.cases,
        &mut rng,
        &both,
        &|r| sample::element(r, 1),
        &|f| {
            let s = decompose(&both, f, Mode::Straight)?;
            let fl = decompose(&both, f, Mode::Flat)?;
            Ok(s.is_integrable() == fl.is_integrable() && s.simple == fl.simple)
        },
    ));

    let logs = sample::log_tower(2);
    let mut failure = None;
    for _ in 0..config.cases {
        let terms = sample::log_terms(&mut rng, 2);
        let r = sample::log_derivative_sum(&logs, &terms);
        let recovered = is_log_derivative_combination(&logs, &r, 2).ok().filter(|c| c.is_combination);
        let back = recovered.as_ref().map(|c| {
            c.terms.iter().fold(Element::zero(), |acc, t| match t {
                LogTerm::Rational { residue, argument } => {
                    let dv = logs.differentiate(argument).expect("tower element");
                    &acc + &(&dv / argument).scale(residue)
                }
                LogTerm::RootSum { .. } => acc,
            })
        });
        let back = back.map(|b| if config.inject_fault { &b + &Element::one() } else { b });
        if back.as_ref() != Some(&r) {
            failure = Some(format!("counterexample {}", render(&r, &names(2))));
            break;
        }
    }
    checks.push(CheckOutcome { name: "log-combinations", cases: config.cases, failure });

    Report { seed: config.seed, checks }
}
