//! Exhaustive generation of graph classes.
//!
//! [`enumerate_class`] builds a class from scratch by orderly column
//! augmentation; [`extend_step`] and [`run_path`] grow a known class one
//! vertex at a time along a backwards path; [`plan_path`] chooses such a path.

mod enumerate;
mod path;
mod spec;
mod step;

pub use enumerate::{enumerate_class, max_edges_by_enumeration, EnumerateOptions, SIZE_GUARD};
pub use path::{
    bare_density_threshold, plan_path, resume_step, run_path, step_threshold, BackwardsPath, RunOptions, RunReport,
    StepReport,
};
pub use spec::{member_check, parse_spec, ClassSpec, SpecError};
pub use step::{extend_step, StepOptions};

use thiserror::Error;

use crate::bigraph::ParseError;
use crate::bitset::WORD_BITS;

#[derive(Debug, Error)]
pub enum ExtendError {
    #[error("bad class spec {0}")]
    Spec(#[from] SpecError),
    #[error("e_min {e_min} exceeds the {max} possible edges")]
    Infeasible { e_min: usize, max: usize },
    #[error("parents have parts {found:?}; target {target:?} must differ by one vertex on one side")]
    PartSizeMismatch { target: (usize, usize), found: (usize, usize) },
    #[error("m*n = {product} exceeds the enumeration guard {limit}; pass an override to run anyway")]
    TooLarge { product: usize, limit: usize },
    #[error("part size {size} exceeds the search limit of {limit}", limit = WORD_BITS)]
    TooWide { size: usize },
    #[error("seed {index} is not a member of {spec}")]
    SeedNotMember { index: usize, spec: ClassSpec },
    #[error("invalid path: {0}")]
    BadPath(String),
    #[error("step {step} produced {count} graphs, over the budget of {limit}; rerun with the same checkpoint directory to resume")]
    BudgetExceeded { step: usize, count: usize, limit: usize },
    #[error("checkpoint {file}: {source}")]
    Checkpoint { file: String, source: ParseError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn check_width(size: usize) -> Result<(), ExtendError> {
    if size > WORD_BITS {
        Err(ExtendError::TooWide { size })
    } else {
        Ok(())
    }
}

/// Column masks (over `m <= 64` rows) of `g`.
fn column_masks(g: &crate::BiGraph) -> Vec<u64> {
    let mut cols = vec![0u64; g.n()];
    for i in 0..g.m() {
        for j in crate::bitset::Ones::over(g.row(i)) {
            cols[j] |= 1 << i;
        }
    }
    cols
}
