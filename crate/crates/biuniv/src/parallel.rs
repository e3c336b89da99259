use anyhow::Result;
use biuniv_core::search::{summarize, SearchConfig, SearchGrid, ValidationSummary};
use rayon::prelude::*;

/// Worker count: `BIUNIV_THREADS` when set to a positive integer, otherwise
/// rayon's default.
pub fn thread_count() -> usize {
    std::env::var("BIUNIV_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Same result as `biuniv_core::search::validate_bounds`, with cells run in
/// parallel. Reports keep the sequential cell order. `only` keeps the
/// functionals with that id (`abs_a_m1`, `abs_a_2m1`, `fekete_szego`).
pub fn validate_parallel(
    grid: &SearchGrid,
    config: SearchConfig,
    only: Option<&str>,
) -> Result<ValidationSummary> {
    let mut cells = grid.cells()?;
    if let Some(id) = only {
        for cell in &mut cells {
            cell.functionals.retain(|f| f.id() == id);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(thread_count()).build()?;
    let per_cell: Vec<_> = pool.install(|| cells.par_iter().map(|c| c.run(config)).collect());
    Ok(summarize(per_cell.into_iter().flatten().collect()))
}
