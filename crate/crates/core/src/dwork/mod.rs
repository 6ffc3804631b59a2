//! Point counts on `X_λ^d: x_1^d + ... + x_d^d = dλ x_1···x_d`.

pub mod classify;
pub mod cosets;
pub mod count;
pub mod decompose;
pub mod terms;

pub use classify::{classify_terms, ClassInfo, Classification, PredictedKind};
pub use cosets::{enumerate_cosets, enumerate_wss, CosetRep};
pub use count::{
    koblitz_count, nq0, s_coset, theorem11_count, threefold_count, CountMethod, CountReport,
    DworkCounter, Theorem11Report,
};
pub use decompose::{decompose, DecompTrace, DecomposeOptions, Decomposition};
pub use terms::{Argument, HgfTerm, TermKind};
