//! Non-negative integer costs with an absorbing top element.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign};

/// A cost in the min-plus semiring over the naturals extended with `TOP`.
///
/// `TOP` is the largest representable value. Addition saturates, so `TOP`
/// absorbs every other cost and a finite overflow lands on `TOP` as well.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(u32);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const TOP: Cost = Cost(u32::MAX);

    /// Finite cost. Values at or above the sentinel collapse to `TOP`.
    pub const fn new(value: u32) -> Cost {
        Cost(value)
    }

    pub const fn is_top(self) -> bool {
        self.0 == u32::MAX
    }

    pub const fn is_finite(self) -> bool {
        !self.is_top()
    }

    /// The finite value, or `None` for `TOP`.
    pub const fn value(self) -> Option<u32> {
        if self.is_top() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Raw representation, `u32::MAX` for `TOP`.
    pub const fn raw(self) -> u32 {
        self.0
    }
}

impl Add for Cost {
    type Output = Cost;

    #[inline]
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0.saturating_add(rhs.0))
    }
}

impl AddAssign for Cost {
    #[inline]
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl From<u32> for Cost {
    fn from(value: u32) -> Cost {
        Cost(value)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn top_absorbs() {
        assert_eq!(Cost::TOP + Cost::new(3), Cost::TOP);
        assert_eq!(Cost::new(3) + Cost::TOP, Cost::TOP);
        assert_eq!(Cost::TOP.min(Cost::new(7)), Cost::new(7));
        assert_eq!(Cost::new(u32::MAX - 1) + Cost::new(5), Cost::TOP);
    }

    fn cost() -> impl Strategy<Value = Cost> {
        prop_oneof![9 => (0u32..1_000_000).prop_map(Cost::new), 1 => Just(Cost::TOP)]
    }

    proptest! {
        #[test]
        fn addition_is_a_commutative_monoid(a in cost(), b in cost(), c in cost()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a + Cost::ZERO, a);
        }
    }
}
