//! Which kinds of terms each coset class produces, by degree alone.

use serde::Serialize;

use super::cosets::{enumerate_cosets, reduce_against_full, CosetRep};
use super::decompose::Decomposition;
use super::terms::TermKind;
use crate::error::{Error, Result};
use crate::field::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedKind {
    /// Every entry distinct: a constant carried by `δ(1 - λ^d)`.
    Delta,
    /// An `_nF_{n-1}` with `order = n` top parameters.
    Hypergeometric { order: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub class: CosetRep,
    pub kind: PredictedKind,
    /// All bottom parameters trivial.
    pub bottom_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub d: u32,
    pub classes: Vec<ClassInfo>,
    pub constant_multiplicity: u64,
    pub expected_constant_multiplicity: u64,
    pub one_f0_multiplicity: u64,
    pub expected_one_f0_multiplicity: u64,
    pub has_second_order_term: bool,
    pub expects_second_order_term: bool,
    pub trivial_bottom_pairs: usize,
    pub expected_trivial_bottom_pairs: usize,
}

impl Classification {
    /// Whether every observed count matches its prediction.
    pub fn consistent(&self) -> bool {
        self.constant_multiplicity == self.expected_constant_multiplicity
            && self.one_f0_multiplicity == self.expected_one_f0_multiplicity
            && self.has_second_order_term == self.expects_second_order_term
            && self.trivial_bottom_pairs == self.expected_trivial_bottom_pairs
    }

    /// Checks that a decomposition produced exactly the predicted kinds, class by class.
    pub fn matches(&self, dec: &Decomposition) -> bool {
        self.classes.iter().all(|info| {
            dec.terms
                .iter()
                .find(|t| t.source_class.as_ref() == Some(&info.class.w))
                .is_some_and(|t| match info.kind {
                    PredictedKind::Delta => t.kind == TermKind::Delta,
                    PredictedKind::Hypergeometric { order } => {
                        t.kind == TermKind::Hypergeometric
                            && t.params.as_ref().is_some_and(|p| p.n() + 1 == order)
                            && info.bottom_trivial
                                == t.params
                                    .as_ref()
                                    .is_some_and(|p| p.bottom().iter().all(|c| c.is_trivial()))
                    }
                })
        })
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Term types per coset class for `3 <= d <= 10`, with the counts that
/// the structure predicts alongside the ones observed.
pub fn classify_terms(d: u32) -> Result<Classification> {
    if !(3..=10).contains(&d) {
        return Err(Error::OutOfRange(d));
    }
    let classes: Vec<ClassInfo> = enumerate_cosets(d)
        .into_iter()
        .map(|class| {
            let (a, _) = reduce_against_full(&class.w);
            let kind = if a.is_empty() {
                PredictedKind::Delta
            } else {
                PredictedKind::Hypergeometric { order: a.len() }
            };
            let bottom_trivial = a.windows(2).all(|w| w[0] == w[1]);
            ClassInfo {
                class,
                kind,
                bottom_trivial,
            }
        })
        .collect();

    let order_of = |info: &ClassInfo| match info.kind {
        PredictedKind::Delta => 0,
        PredictedKind::Hypergeometric { order } => order,
    };
    let dd = d as usize;
    let constant_multiplicity = classes
        .iter()
        .filter(|c| c.kind == PredictedKind::Delta)
        .map(|c| c.class.class_size)
        .sum();
    let one_f0_multiplicity = classes
        .iter()
        .filter(|c| order_of(c) == 1)
        .map(|c| c.class.class_size)
        .sum();
    let has_second_order_term = classes.iter().any(|c| order_of(c) == dd - 2);
    let trivial_bottom_pairs = classes
        .iter()
        .filter(|c| order_of(c) + 3 == dd && c.bottom_trivial)
        .count();

    let odd = d % 2 == 1;
    Ok(Classification {
        d,
        classes,
        constant_multiplicity,
        expected_constant_multiplicity: if odd { factorial(d as u64 - 1) } else { 0 },
        one_f0_multiplicity,
        expected_one_f0_multiplicity: if odd { 0 } else { factorial(d as u64) / 2 },
        has_second_order_term,
        expects_second_order_term: !is_prime(d as u64),
        trivial_bottom_pairs,
        expected_trivial_bottom_pairs: if odd { (dd - 1) / 2 } else { (dd - 2) / 2 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        let c = classify_terms(5).unwrap();
        assert_eq!(c.constant_multiplicity, 24);
        assert_eq!(c.one_f0_multiplicity, 0);
        assert!(!c.has_second_order_term);
        assert_eq!(c.trivial_bottom_pairs, 2);

        let c = classify_terms(6).unwrap();
        assert_eq!(c.constant_multiplicity, 0);
        assert_eq!(c.one_f0_multiplicity, 360);
        assert!(c.has_second_order_term);

        let c = classify_terms(4).unwrap();
        assert_eq!(c.one_f0_multiplicity, 12);
        assert_eq!(c.trivial_bottom_pairs, 1);
    }

    #[test]
    fn predictions_hold() {
        for d in 3..=10 {
            assert!(classify_terms(d).unwrap().consistent(), "d={d}");
        }
        assert_eq!(classify_terms(2), Err(Error::OutOfRange(2)));
        assert_eq!(classify_terms(11), Err(Error::OutOfRange(11)));
    }
}
