//! Spec parsing, the table registry, checks, reports and the result cache.

pub mod cache;
pub mod report;
pub mod spec;
pub mod table;

pub use cache::{CacheKey, CachedResult, ResultCache, CONVENTION_VERSION};
pub use report::{compare, emit_report, recompute, run_check, run_table, CheckOptions, CheckReport, Delta, Format};
pub use spec::{parse_spec, Factor, RepKind, RepSpec};
pub use table::{entries, instantiate, lookup, Params, RegistryEntry};
