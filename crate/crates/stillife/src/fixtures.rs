//! Published values for `SL(n)`: optimum (dead cells), number of optimal
//! patterns, and the symmetric optimum `SSL(n)`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublishedRow {
    pub n: usize,
    pub opt: Option<u32>,
    pub count: Option<u64>,
    pub ssl: Option<u32>,
}

const fn row(n: usize, opt: Option<u32>, count: Option<u64>, ssl: Option<u32>) -> PublishedRow {
    PublishedRow { n, opt, count, ssl }
}

pub const PUBLISHED: &[PublishedRow] = &[
    row(5, Some(9), Some(1), None),
    row(6, Some(18), Some(48), None),
    row(7, Some(21), Some(2), None),
    row(8, Some(28), Some(1), None),
    row(9, Some(38), Some(76), None),
    row(10, Some(46), Some(3590), None),
    row(11, Some(57), Some(73), None),
    row(12, Some(68), Some(129126), None),
    row(13, Some(79), Some(1682), Some(79)),
    row(14, Some(92), Some(11), Some(92)),
    row(15, Some(106), None, Some(106)),
    row(16, Some(120), None, Some(120)),
    row(17, Some(137), None, Some(137)),
    row(18, Some(153), None, Some(154)),
    row(19, Some(171), None, Some(172)),
    row(20, Some(190), None, Some(192)),
    row(22, None, None, Some(232)),
    row(24, None, None, Some(276)),
    row(26, None, None, Some(326)),
    row(28, None, None, Some(378)),
];

pub fn published(n: usize) -> Option<&'static PublishedRow> {
    PUBLISHED.iter().find(|r| r.n == n)
}
