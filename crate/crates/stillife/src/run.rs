//! One entry point over the still-life solvers, with timing.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use stillife_core::be::{solve_sl_be, BeOptions};
use stillife_core::hyb::{solve_sl_hyb, HybStats, SolveOptions};
use stillife_core::oracle::brute_force_sl;
use stillife_core::ssl::solve_ssl_be;
use stillife_core::{Cost, Error, Pattern};

use crate::pattern_text::pattern_lines;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Be,
    Ssl,
    Hyb,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Be => "be",
            Algorithm::Ssl => "ssl",
            Algorithm::Hyb => "hyb",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub count: bool,
    pub mb_lb: bool,
    pub ssl_ub: bool,
    pub symmetry: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            count: false,
            mb_lb: true,
            ssl_ub: true,
            symmetry: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub n: usize,
    pub algorithm: Algorithm,
    pub flags: Flags,
    pub optimum: Cost,
    pub pattern: Pattern,
    pub count: Option<u64>,
    pub seconds: f64,
    pub memory_estimate: u64,
    pub hyb_stats: Option<HybStats>,
}

pub fn solve(alg: Algorithm, n: usize, flags: Flags, memory_budget: u64) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (optimum, pattern, count, memory_estimate, hyb_stats) = match alg {
        Algorithm::Be => {
            let s = solve_sl_be(
                n,
                &BeOptions {
                    count: flags.count,
                    memory_budget,
                },
            )?;
            (s.optimum, s.pattern, s.count, s.memory_estimate, None)
        }
        Algorithm::Ssl => {
            let s = solve_ssl_be(n, memory_budget)?;
            (s.optimum, s.pattern, None, s.memory_estimate, None)
        }
        Algorithm::Hyb => {
            let opts = SolveOptions {
                use_mb_lb: flags.mb_lb,
                use_ssl_ub: flags.ssl_ub,
                use_symmetry: flags.symmetry,
                memory_budget,
            };
            let s = solve_sl_hyb(n, &opts)?;
            (s.optimum, s.pattern, None, s.memory_estimate, Some(s.stats))
        }
        Algorithm::Brute => {
            let s = brute_force_sl(n)?;
            let pattern = s.pattern.ok_or(Error::BoardSize(n))?;
            let count = flags
                .count
                .then(|| u64::try_from(s.count).unwrap_or(u64::MAX));
            (s.optimum, pattern, count, (n * 8) as u64, None)
        }
    };
    Ok(Outcome {
        n,
        algorithm: alg,
        flags,
        optimum,
        pattern,
        count,
        seconds: start.elapsed().as_secs_f64(),
        memory_estimate,
        hyb_stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub nodes: u64,
    pub leaves: u64,
    pub bound_prunes: u64,
    pub symmetry_prunes: u64,
    pub improvements: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub nodes: u64,
    pub checks: u64,
    pub violations: usize,
}

/// The machine-readable result of `solve`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub algorithm: Algorithm,
    pub optimum_dead: u32,
    pub optimum_alive: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solution_count: Option<u64>,
    pub wall_time_ms: f64,
    pub flags: Flags,
    pub memory_peak_estimate: u64,
    pub pattern: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit: Option<AuditSummary>,
}

impl Summary {
    pub fn of(o: &Outcome) -> Summary {
        let dead = o.optimum.value().unwrap_or(u32::MAX);
        Summary {
            n: o.n,
            algorithm: o.algorithm,
            optimum_dead: dead,
            optimum_alive: (o.n * o.n) as u32 - dead.min((o.n * o.n) as u32),
            solution_count: o.count,
            wall_time_ms: o.seconds * 1000.0,
            flags: o.flags,
            memory_peak_estimate: o.memory_estimate,
            pattern: pattern_lines(&o.pattern),
            search: o.hyb_stats.map(|s| SearchSummary {
                nodes: s.nodes,
                leaves: s.leaves,
                bound_prunes: s.bound_prunes,
                symmetry_prunes: s.symmetry_prunes,
                improvements: s.improvements,
            }),
            audit: None,
        }
    }
}
