//! On-disk cache of Gauss sum tables.
//!
//! One JSON file per `(p, e, modulus, generator, root exponent)`, holding the
//! table as `[re, im]` pairs. Floats are written in shortest round-trip form
//! and parsed exactly, so a reload is bit-identical.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chars::{Cx, RootTables};
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::gauss::GaussTable;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct CacheFile {
    version: u32,
    p: u32,
    e: u32,
    modulus: Option<Vec<u32>>,
    generator: u32,
    root_exponent: u32,
    values: Vec<[f64; 2]>,
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Cache(e.to_string())
}

pub fn cache_path(dir: &Path, field: &FieldDesc, root_exponent: u32) -> PathBuf {
    let modulus = field
        .modulus()
        .map(|m| {
            m.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("_")
        })
        .unwrap_or_else(|| "none".into());
    dir.join(format!(
        "gauss-v{CACHE_VERSION}-p{}-e{}-m{}-g{}-r{}.json",
        field.p(),
        field.e(),
        modulus,
        field.generator().index(),
        root_exponent
    ))
}

/// Writes the context's Gauss table, returning the file path.
pub fn save(dir: &Path, ctx: &FieldContext) -> Result<PathBuf> {
    let field = ctx.field();
    let r = ctx.roots().root_exponent();
    fs::create_dir_all(dir).map_err(io_err)?;
    let file = CacheFile {
        version: CACHE_VERSION,
        p: field.p(),
        e: field.e(),
        modulus: field.modulus().map(<[u32]>::to_vec),
        generator: field.generator().index(),
        root_exponent: r,
        values: ctx
            .gauss_table()
            .values()
            .iter()
            .map(|z| [z.re, z.im])
            .collect(),
    };
    let path = cache_path(dir, field, r);
    let text = serde_json::to_string(&file).map_err(io_err)?;
    fs::write(&path, text).map_err(io_err)?;
    Ok(path)
}

/// Reads a cached table for this field, or `None` when absent or stale.
pub fn load(dir: &Path, field: &FieldDesc, root_exponent: u32) -> Result<Option<GaussTable>> {
    let path = cache_path(dir, field, root_exponent);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(e)),
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(io_err)?;
    let fresh = file.version == CACHE_VERSION
        && file.p == field.p()
        && file.e == field.e()
        && file.modulus.as_deref() == field.modulus()
        && file.generator == field.generator().index()
        && file.root_exponent == root_exponent
        && file.values.len() == field.unit_order() as usize;
    if !fresh {
        return Ok(None);
    }
    Ok(Some(GaussTable::from_values(
        file.values
            .iter()
            .map(|&[re, im]| Cx::new(re, im))
            .collect(),
    )))
}

/// A context whose Gauss table comes from `dir` when cached, and is built and
/// stored there otherwise.
pub fn context_with_cache(
    dir: &Path,
    field: FieldDesc,
    root_exponent: u32,
) -> Result<FieldContext> {
    let roots = RootTables::new(&field, root_exponent)?;
    let r = roots.root_exponent();
    if let Some(table) = load(dir, &field, r)? {
        return Ok(FieldContext::assemble(field, roots, table));
    }
    let table = GaussTable::build(&field, &roots);
    let ctx = FieldContext::assemble(field, roots, table);
    save(dir, &ctx)?;
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        for (p, e) in [(61, 1), (3, 3), (2, 5)] {
            let ctx = FieldContext::for_field(p, e).unwrap();
            save(dir.path(), &ctx).unwrap();
            let loaded = load(dir.path(), ctx.field(), 1).unwrap().unwrap();
            for (a, b) in ctx.gauss_table().values().iter().zip(loaded.values()) {
                assert_eq!(a.re.to_bits(), b.re.to_bits());
                assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
        }
    }

    #[test]
    fn stale_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = FieldContext::for_field(13, 1).unwrap();
        let path = save(dir.path(), &ctx).unwrap();
        let other = ctx
            .field()
            .with_generator(ctx.field().elem(6).unwrap())
            .unwrap();
        assert!(load(dir.path(), &other, 1).unwrap().is_none());
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(
            load(dir.path(), ctx.field(), 1),
            Err(Error::Cache(_))
        ));
    }

    #[test]
    fn cached_context_matches_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let field = FieldDesc::build(11, 1, None).unwrap();
        let a = context_with_cache(dir.path(), field.clone(), 3).unwrap();
        let b = context_with_cache(dir.path(), field.clone(), 3).unwrap();
        let fresh = FieldContext::with_root_exponent(field, 3).unwrap();
        assert_eq!(a.gauss_table(), fresh.gauss_table());
        assert_eq!(b.gauss_table(), fresh.gauss_table());
    }
}
