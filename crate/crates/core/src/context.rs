use std::sync::Arc;

use crate::chars::RootTables;
use crate::error::Result;
use crate::field::FieldDesc;
use crate::gauss::{BinomMemo, GaussTable};

/// A field together with everything character sums read from it: root
/// tables, the Gauss sum table and the memoized normalized Jacobi sums.
///
/// Immutable after construction apart from the binomial memo, whose cells
/// are each written once. Safe to share across threads.
pub struct FieldContext {
    field: Arc<FieldDesc>,
    roots: RootTables,
    gauss: GaussTable,
    binom: BinomMemo,
    /// `(log x, log(1 - x))` for every `x` outside `{0, 1}`.
    jacobi_logs: Vec<(u32, u32)>,
}

impl FieldContext {
    /// Context with `ζ_p = exp(2πi/p)`.
    pub fn new(field: FieldDesc) -> FieldContext {
        Self::with_root_exponent(field, 1).expect("1 is coprime to every prime")
    }

    /// Context with `ζ_p = exp(2πi r/p)`.
    pub fn with_root_exponent(field: FieldDesc, root_exponent: u32) -> Result<FieldContext> {
        let roots = RootTables::new(&field, root_exponent)?;
        let gauss = GaussTable::build(&field, &roots);
        Ok(Self::assemble(field, roots, gauss))
    }

    /// Context around a previously computed Gauss table (see [`crate::cache`]).
    pub(crate) fn assemble(field: FieldDesc, roots: RootTables, gauss: GaussTable) -> FieldContext {
        let one = field.one();
        let jacobi_logs = field
            .units()
            .filter(|&x| x != one)
            .map(|x| {
                let y = field.sub(one, x);
                (field.dlog(x).unwrap(), field.dlog(y).unwrap())
            })
            .collect();
        let binom = BinomMemo::new(field.unit_order());
        FieldContext {
            field: Arc::new(field),
            roots,
            gauss,
            binom,
            jacobi_logs,
        }
    }

    /// Convenience: build `F_{p^e}` with the default modulus and context.
    pub fn for_field(p: u64, e: u32) -> Result<FieldContext> {
        Ok(FieldContext::new(FieldDesc::build(p, e, None)?))
    }

    #[inline]
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldDesc> {
        Arc::clone(&self.field)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn roots(&self) -> &RootTables {
        &self.roots
    }

    #[inline]
    pub fn gauss_table(&self) -> &GaussTable {
        &self.gauss
    }

    #[inline]
    pub(crate) fn binom_memo(&self) -> &BinomMemo {
        &self.binom
    }

    #[inline]
    pub(crate) fn jacobi_logs(&self) -> &[(u32, u32)] {
        &self.jacobi_logs
    }
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext")
            .field("field", &self.field)
            .field("root_exponent", &self.roots.root_exponent())
            .finish()
    }
}
