//! File formats, report emitters and the parallel validation driver behind
//! the `biuniv` command line tool. The mathematics lives in `biuniv-core`.

pub mod grid;
pub mod parallel;
pub mod phi_arg;
pub mod report;
pub mod series_json;

pub use grid::{load_corollary_grid, load_search_grid, GridFile};
pub use parallel::{thread_count, validate_parallel};
pub use phi_arg::parse_phi;
pub use series_json::{parse_rational, series_from_json, series_text, series_to_json};
