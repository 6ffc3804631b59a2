//! Point counts on Dwork hypersurfaces `x_1^d + ... + x_d^d = dλ x_1···x_d`
//! over finite fields, expressed through Greene's hypergeometric functions.
//!
//! Everything numeric hangs off a [`FieldContext`]: a realized field `F_q`
//! with its character tables and precomputed Gauss sums.
//!
//! ```
//! use dwork_core::{DworkCounter, FieldContext};
//!
//! let ctx = FieldContext::for_field(11, 1)?;
//! let counter = DworkCounter::new(&ctx, 5)?;
//! let lam = ctx.field().elem(2)?;
//! let (report, _terms) = counter.threefold(lam)?;
//! assert_eq!(report.count, counter.koblitz(lam)?.count);
//! # Ok::<(), dwork_core::Error>(())
//! ```

pub mod cache;
pub mod chars;
pub mod context;
pub mod dwork;
pub mod error;
pub mod field;
pub mod gauss;
pub mod greene;
pub mod identities;
pub mod oracle;
pub mod suites;
mod tolerance;

pub use chars::{CharIdx, Cx, RootTables};
pub use context::FieldContext;
pub use dwork::{
    classify_terms, decompose, enumerate_cosets, enumerate_wss, koblitz_count, nq0, s_coset,
    theorem11_count, threefold_count, Argument, Classification, CosetRep, CountMethod, CountReport,
    DecompTrace, DecomposeOptions, Decomposition, DworkCounter, HgfTerm, TermKind, Theorem11Report,
};
pub use error::{Error, Result};
pub use field::{FieldDesc, FqElem};
pub use gauss::GaussTable;
pub use greene::{classical_trunc_mod_p, HgfParams, RationalParams};
pub use identities::{ExponentLists, IdentityReport, Thm32Rhs};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};
pub use tolerance::Tolerances;
