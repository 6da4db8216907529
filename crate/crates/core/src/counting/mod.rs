//! Walk and cycle counting, codegree statistics, and the thin/thick,
//! rich-tuple and weighted-ladder predicates built on them.

mod cycles;
mod rich;
mod walks;
mod weights;

pub use cycles::{
    classify_c4, count_c4, count_even_cycles, enumerate_even_cycles, C4Classification, CycleCount,
    CycleEnumeration,
};
pub use rich::{is_rich_tuple, RichTuple};
pub use walks::{check_path_inequality, hom_path_count, PathInequality};
pub use weights::{prism_path_weight_report, WeightReport, WeightSample};

/// Default enumeration cap for counting and enumeration ops.
pub const DEFAULT_CAP: u64 = 100_000_000;

pub(crate) fn big_decimal<S: serde::Serializer>(v: &num_bigint::BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
