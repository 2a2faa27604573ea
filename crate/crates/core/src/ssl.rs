//! `SSL(n)`: maximum-density still-lifes restricted to vertical mirror
//! symmetry, solved by the row elimination of [`crate::be`] with each row
//! domain cut down to its symmetric values. The optimum is an upper bound
//! on `SL(n)`.

use crate::be::{eliminate_rows, memory_estimate, RowDomain};
use crate::{Cost, Error, Pattern, Result};

pub use crate::life::reverse_bits;

#[derive(Clone, Debug)]
pub struct SslSolution {
    pub optimum: Cost,
    /// A vertically symmetric stable pattern attaining `optimum`.
    pub pattern: Pattern,
    pub memory_estimate: u64,
}

pub fn solve_ssl_be(n: usize, memory_budget: u64) -> Result<SslSolution> {
    let rec = eliminate_rows::<u16>(n, RowDomain::Symmetric, false, memory_budget)?;
    let pattern = rec.reconstruct().ok_or(Error::BoardSize(n))?;
    Ok(SslSolution {
        optimum: rec.optimum(),
        pattern,
        memory_estimate: memory_estimate::<u16>(n, RowDomain::Symmetric, false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::be::{solve_sl_be, BeOptions};
    use crate::life::{is_stable, objective};
    use crate::DEFAULT_MEMORY_BUDGET;

    #[test]
    fn symmetric_solutions_are_valid_upper_bounds() {
        for n in 1..=9 {
            let s = solve_ssl_be(n, DEFAULT_MEMORY_BUDGET).unwrap();
            assert!(s.pattern.is_vertically_symmetric());
            assert!(is_stable(&s.pattern));
            assert_eq!(objective(&s.pattern), s.optimum);
            let sl = solve_sl_be(n, &BeOptions::default()).unwrap();
            assert!(s.optimum >= sl.optimum, "n={n}");
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(
            solve_ssl_be(13, DEFAULT_MEMORY_BUDGET).unwrap().optimum,
            Cost::new(79)
        );
    }
}
