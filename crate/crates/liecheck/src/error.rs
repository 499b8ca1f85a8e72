use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Kernel(#[from] symkernel::KernelError),

    #[error("prolongation order {requested} is below the system's maximal derivative order {needed}")]
    OrderTooLow { requested: u32, needed: u32 },

    #[error("generator `{label}` is not a point generator: `{offending}` depends on derivative coordinates")]
    NotPointGenerator { label: String, offending: String },

    #[error("generator `{label}` references `{name}`, which is not part of the system scope")]
    ScopeMismatch { label: String, name: String },

    #[error("side condition `{got}` cannot be solved for a leading derivative coordinate")]
    UnsolvableSideCondition { got: String },

    #[error("unknown catalogue id `{0}`")]
    UnknownId(String),

    #[error("{0}")]
    Format(String),
}
