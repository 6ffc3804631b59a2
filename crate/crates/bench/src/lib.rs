//! Shared fixtures for the benchmarks.

use dwork_core::{FieldContext, FqElem};

/// Prime-field context for `p`; panics on a non-prime.
pub fn prime_context(p: u64) -> FieldContext {
    FieldContext::for_field(p, 1).expect("benchmark fields are prime")
}

/// A fiber parameter away from the special fibers of every benchmarked degree.
pub fn generic_lambda(ctx: &FieldContext) -> FqElem {
    ctx.field().elem(2).expect("q > 2")
}
