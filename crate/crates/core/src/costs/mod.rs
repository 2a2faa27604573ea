//! Extensional cost functions and weighted CSP instances.
//!
//! Tables are dense and indexed in mixed radix over their scope, the first
//! scope variable being the most significant digit.

mod bucket;
mod instance;
mod table;

pub use bucket::{bucket_elimination, eliminate_minibuckets, BeOutcome};
pub use instance::{PartialAssignment, WcspInstance};
pub use table::CostTable;

use core::fmt;

/// Index of a variable inside an instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Size of a finite domain; values are `0..size`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Domain(pub usize);

impl Domain {
    pub fn size(self) -> usize {
        self.0
    }
}

/// Visits every tuple of a mixed-radix space (last digit fastest) and hands
/// the callback one linear offset per source, each source being described by
/// its stride for every digit of the space.
pub(crate) fn walk<const K: usize>(
    dims: &[usize],
    strides: [&[usize]; K],
    mut visit: impl FnMut([usize; K]),
) {
    if dims.contains(&0) {
        return;
    }
    let mut digits = alloc::vec![0usize; dims.len()];
    let mut offsets = [0usize; K];
    loop {
        visit(offsets);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < dims[k] {
                for (o, s) in offsets.iter_mut().zip(strides.iter()) {
                    *o += s[k];
                }
                break;
            }
            digits[k] = 0;
            for (o, s) in offsets.iter_mut().zip(strides.iter()) {
                *o -= s[k] * (dims[k] - 1);
            }
        }
    }
}

/// Row-major strides for `dims`.
pub(crate) fn strides_of(dims: &[usize]) -> alloc::vec::Vec<usize> {
    let mut strides = alloc::vec![0usize; dims.len()];
    let mut acc = 1usize;
    for k in (0..dims.len()).rev() {
        strides[k] = acc;
        acc *= dims[k];
    }
    strides
}
