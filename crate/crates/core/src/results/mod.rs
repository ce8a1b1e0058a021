//! Reference data for degree six: the classification table, counts and
//! ratios, published examples, and the cross-check against the pipeline.

pub mod counts;
pub mod cross;
pub mod export;
pub mod literature;
pub mod table;

pub use counts::{counts_and_ratio, CountReport, LITERATURE_RATIOS};
pub use cross::{cross_validate, CrossReport};
pub use export::{read_verdicts, write_verdicts, VERDICT_HEADER};
pub use literature::{literature_witnesses, verify_examples, LiteratureReport, PUBLISHED_EXAMPLES};
pub use table::{builtin_table, ClassificationTable};
