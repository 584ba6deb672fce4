use thiserror::Error;

pub type Result<T, E = ShrinkageError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShrinkageError {
    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{what}[{index}] must be strictly positive and finite, got {value}")]
    NonPositive {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("{what} contains a non-finite value at index {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{matrix} is not positive definite (pivot {pivot} = {value})")]
    NotPositiveDefinite {
        matrix: &'static str,
        pivot: usize,
        value: f64,
    },

    #[error("degenerate {what} scale {value}: supply xi > 0 or a response outside the fitted span")]
    DegenerateScale { what: &'static str, value: f64 },

    #[error("column {column} is constant and cannot be standardized")]
    ConstantColumn { column: usize },

    #[error("series has zero variance")]
    ZeroVariance,

    #[error("series too short: need at least {required} values, got {actual}")]
    SeriesTooShort { required: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("model mismatch: kernel for {expected} called with a {actual} specification")]
    ModelMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("iteration {iteration}: {source}")]
    Step {
        iteration: usize,
        #[source]
        source: Box<ShrinkageError>,
    },
}

impl ShrinkageError {
    pub(crate) fn at_iteration(self, iteration: usize) -> Self {
        ShrinkageError::Step {
            iteration,
            source: Box::new(self),
        }
    }
}

pub(crate) fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(ShrinkageError::DimensionMismatch {
            what,
            expected,
            actual,
        });
    }
    Ok(())
}

pub(crate) fn check_positive_f64(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(ShrinkageError::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        });
    }
    Ok(())
}
