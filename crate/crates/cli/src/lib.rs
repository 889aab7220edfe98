//! Command implementations behind the `ftdesign` binary.

use thiserror::Error;

use ftdesign::design::DesignError;
use ftdesign::designfile::FormatError;
use ftdesign::families::{FamilyError, RecipeError};
use ftdesign::semilinear::SemilinearError;

pub mod catalog;
pub mod construct;
pub mod options;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
}
