use crate::costs::VarId;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable {0}")]
    UnknownVariable(VarId),
    #[error("variable {0} appears twice")]
    DuplicateVariable(VarId),
    #[error("value {value} out of range for variable {var} (domain size {size})")]
    ValueOutOfRange {
        var: VarId,
        value: usize,
        size: usize,
    },
    #[error("domain of variable {0} is empty")]
    EmptyDomain(VarId),
    #[error("table has {got} entries, scope requires {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("mini-bucket parts do not partition the bucket")]
    NotAPartition,
    #[error("elimination order is not a permutation of the variables")]
    NotAPermutation,
    #[error("unsupported board size {0}")]
    BoardSize(usize),
    #[error("{required} bytes required, budget is {budget} bytes")]
    MemoryBudget { required: u64, budget: u64 },
    #[error("enumeration of {required} assignments exceeds the cap of {cap}")]
    EnumerationCap { required: u128, cap: u128 },
    #[error("solution count overflowed")]
    CountOverflow,
}
