//! Self-checks run by `lsc verify`.

use std::fmt;

use thiserror::Error;

use crate::arrangement::{triple_intersection_count, Arrangement, ArrangementError};
use crate::cover::{CoverError, CoverInstance};
use crate::solvers::{kernelize, KernelVerdict};

/// Largest instance accepted by the brute-force kernel check.
pub const BRUTE_FORCE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("instance has {0} segments; brute force handles at most {BRUTE_FORCE_LIMIT}")]
    TooLargeForBruteForce(usize),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub pass: bool,
    pub details: Vec<String>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.check)?;
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

pub fn check_euler(arr: &Arrangement) -> CheckReport {
    let (v, e, f, c) = (arr.vertices().len(), arr.edge_count(), arr.cells().len(), arr.component_count());
    let pass = arr.euler_holds();
    CheckReport {
        check: "euler",
        pass,
        details: vec![format!("V={v} E={e} F={f} C={c}; V-E+F={} vs 1+C={}", v as i64 - e as i64 + f as i64, 1 + c)],
    }
}

/// Cells covered by three segments, per number of intersecting pairs.
pub fn triple_case_bound(intersections: usize) -> usize {
    match intersections {
        0 => 2,
        1 => 4,
        _ => 6,
    }
}

pub fn check_triple_bound(arr: &Arrangement) -> Result<CheckReport, VerifyError> {
    let t = arr.triple_coverage_max()?;
    let mut details = vec![format!(
        "max cells covered by a triple: {} (witness {:?})",
        t.max_count, t.witness
    )];
    let mut pass = t.max_count <= 6;
    let mut worst = [0usize; 4];
    for (&triple, &count) in &t.counts {
        let ic = triple_intersection_count(arr, triple);
        worst[ic] = worst[ic].max(count);
        if count > triple_case_bound(ic) {
            pass = false;
            details.push(format!("violation: {triple:?} with {ic} intersections covers {count} cells"));
        }
    }
    for (ic, w) in worst.iter().enumerate() {
        details.push(format!("{ic} intersecting pairs: max {w} (bound {})", triple_case_bound(ic)));
    }
    Ok(CheckReport {
        check: "triple-bound",
        pass,
        details,
    })
}

/// Minimum hitting set size of `sets` over `0..universe` by enumerating masks.
pub fn brute_force_min_cover(sets: &[Vec<usize>], universe: usize) -> Option<usize> {
    assert!(universe <= 24);
    let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0, |m, &e| m | 1 << e)).collect();
    (0u32..1 << universe)
        .filter(|m| masks.iter().all(|s| s & m != 0))
        .map(|m| m.count_ones() as usize)
        .min()
}

/// Compares minimum cover sizes of the demand collection and both reduced
/// collections. They must agree whenever the optimum is at most `k`.
pub fn check_kernel_equiv(ci: &CoverInstance, k: usize) -> Result<CheckReport, VerifyError> {
    let n = ci.universe();
    if n > BRUTE_FORCE_LIMIT {
        return Err(VerifyError::TooLargeForBruteForce(n));
    }
    let trace = kernelize(ci, k);
    let c = brute_force_min_cover(ci.unmerged(), n);
    let c1 = brute_force_min_cover(&trace.c1, n);
    let c2 = brute_force_min_cover(&trace.c2, n);
    let fmt = |o: Option<usize>| o.map_or("none".to_string(), |v| v.to_string());
    let mut details = vec![
        format!("k={k} |C|={} |C1|={} |C2|={} bound 6k^3={}", ci.unmerged().len(), trace.c1.len(), trace.c2.len(), trace.bound()),
        format!("min cover sizes: C={} C1={} C2={}", fmt(c), fmt(c1), fmt(c2)),
        format!(
            "pair reductions: {}, singleton reductions: {}",
            trace.pair_reductions.len(),
            trace.singleton_reductions.len()
        ),
    ];
    let small = c.is_some_and(|o| o <= k);
    let pass = if small {
        c == c1 && c == c2 && trace.verdict == KernelVerdict::Kernel
    } else {
        details.push("optimum exceeds k; sizes need not agree".into());
        true
    };
    Ok(CheckReport {
        check: "kernel-equiv",
        pass,
        details,
    })
}
