//! Process exit codes and the mapping from library errors onto them.

use std::fmt;

use degwhit::affine::ParseError;
use degwhit::numeval::NumevalError;
use degwhit::orbits::OrbitError;
use degwhit::reduction::ReductionError;
use degwhit::rootsys::RootSystemError;
use degwhit::symzeta::PoleReport;
use degwhit::weyl::WeylError;

/// Documented nonzero exit codes; success is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Failure = 1,
    Pole = 2,
    Infeasible = 3,
    Validation = 4,
}

/// Rejected input that no library error describes.
#[derive(Debug)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

/// The requested evaluation point is a pole of the coefficient.
#[derive(Debug)]
pub struct PoleAt(pub PoleReport);

impl fmt::Display for PoleAt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for PoleAt {}

/// Report rows failed; the rows themselves were already printed.
#[derive(Debug)]
pub struct RowsFailed(pub usize);

impl fmt::Display for RowsFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} row(s) failed", self.0)
    }
}

impl std::error::Error for RowsFailed {}

fn weyl_code(e: &WeylError) -> Exit {
    match e {
        WeylError::CapExceeded { .. } => Exit::Infeasible,
        WeylError::Corrupt(_) => Exit::Failure,
        _ => Exit::Validation,
    }
}

pub fn classify(err: &anyhow::Error) -> Exit {
    for cause in err.chain() {
        if cause.is::<PoleAt>() {
            return Exit::Pole;
        }
        if cause.is::<Invalid>()
            || cause.is::<ParseError>()
            || cause.is::<RootSystemError>()
            || cause.is::<OrbitError>()
            || cause.is::<clap::Error>()
        {
            return Exit::Validation;
        }
        if let Some(e) = cause.downcast_ref::<WeylError>() {
            return weyl_code(e);
        }
        if let Some(e) = cause.downcast_ref::<ReductionError>() {
            return match e {
                ReductionError::Weyl(w) => weyl_code(w),
                ReductionError::TableMismatch(_) => Exit::Failure,
                _ => Exit::Validation,
            };
        }
        if let Some(e) = cause.downcast_ref::<NumevalError>() {
            return match e {
                NumevalError::Pole { .. } => Exit::Pole,
                NumevalError::Domain { .. } => Exit::Failure,
                _ => Exit::Validation,
            };
        }
    }
    Exit::Failure
}
