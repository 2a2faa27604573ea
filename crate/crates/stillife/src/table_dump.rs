//! Debug dump of a cost table: a `scope:` line listing the variable ids,
//! then one `index cost` line per entry (`inf` for top). Indices follow the
//! table layout, first scope variable most significant.

use std::fmt::Write;

use stillife_core::costs::CostTable;

pub fn dump_table(t: &CostTable) -> String {
    let mut out = String::new();
    let ids: Vec<String> = t.scope().iter().map(|v| v.0.to_string()).collect();
    let _ = writeln!(out, "scope: {}", ids.join(","));
    for (k, c) in t.costs().iter().enumerate() {
        let _ = writeln!(out, "{k} {c}");
    }
    out
}
