//! Randomized validation of the certified bounds.
//!
//! Every random draw comes from ChaCha8 seeded with the campaign seed, on a
//! stream selected by the trial (or restart) index. Trials never share a
//! generator, so serial and parallel runs produce bit-identical reports.

mod campaign;
mod report;
mod sample;
mod search;
mod sweep;

pub use campaign::{certify_campaign, CertificationReport, Execution, Pipeline, TheoremBreakdown};
pub use report::{write_csv, Decimal, ReportRow, RowStatus, CSV_COLUMNS};
pub use sample::{
    sample_admissible, sample_trial, sample_with_budget, SampleSpec, Strategy,
    DEFAULT_REJECTION_BUDGET,
};
pub use search::{extremal_search, extremal_search_with, ExtremalEstimate, SearchOptions};
pub use sweep::{sweep, SweepConfig};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
