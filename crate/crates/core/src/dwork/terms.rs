//! Terms of a point-count formula.

use serde::Serialize;

use crate::chars::Cx;
use crate::greene::HgfParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// A λ-independent constant, such as the baseline `(q^{d-1}-1)/(q-1)`.
    Constant,
    /// A coefficient times `δ(1 - λ^d)`.
    Delta,
    /// A coefficient times a Greene function.
    Hypergeometric,
    /// A Gauss-sum expression left over after an incomplete cancellation.
    GaussLeftover,
}

/// What a term's function is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    None,
    LambdaPowD,
    InvLambdaPowD,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HgfTerm {
    pub kind: TermKind,
    /// Number of cosets folded into the coefficient.
    pub multiplicity: u64,
    /// Total coefficient, multiplicity included.
    pub coefficient: Cx,
    pub params: Option<HgfParams>,
    pub argument: Argument,
    /// Canonical representative of the originating coset class.
    pub source_class: Option<Vec<u32>>,
    /// Evaluated contribution to the count.
    pub value: Cx,
}

impl HgfTerm {
    pub fn constant(value: f64) -> HgfTerm {
        HgfTerm {
            kind: TermKind::Constant,
            multiplicity: 1,
            coefficient: Cx::new(value, 0.0),
            params: None,
            argument: Argument::None,
            source_class: None,
            value: Cx::new(value, 0.0),
        }
    }

    /// `_{n+1}F_n` label for hypergeometric terms.
    pub fn label(&self) -> String {
        match (&self.kind, &self.params) {
            (TermKind::Hypergeometric, Some(p)) => format!("{}F{}", p.n() + 1, p.n()),
            (TermKind::Constant, _) => "constant".into(),
            (TermKind::Delta, _) => "delta".into(),
            _ => "gauss_leftover".into(),
        }
    }
}
