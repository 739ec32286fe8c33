//! Instance → arrangement → cover model → solver, with a text report.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::arrangement::{Arrangement, Instance};
use crate::cover::{AllowedMode, Cover, CoverError, CoverInstance, TargetMode};
use crate::solvers::{local_search, solve_exact, solve_fpt, solve_greedy, FptOutcome, KernelVerdict, LocalSearchParams, SolveError};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Exact,
    Greedy,
    Local,
    Fpt,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Exact => "exact",
            SolverKind::Greedy => "greedy",
            SolverKind::Local => "local",
            SolverKind::Fpt => "fpt",
        })
    }
}

impl FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(SolverKind::Exact),
            "greedy" => Ok(SolverKind::Greedy),
            "local" => Ok(SolverKind::Local),
            "fpt" => Ok(SolverKind::Fpt),
            _ => Err(format!("unknown solver `{s}` (expected exact, greedy, local or fpt)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveRequest {
    pub solver: SolverKind,
    pub target: TargetMode,
    pub allowed: AllowedMode,
    /// Budget for `fpt` (required) and `exact` (optional); swap radius for
    /// `local` (default 2).
    pub k: Option<usize>,
    pub seed: u64,
    pub max_iterations: usize,
    /// Also run the exact solver and report the gap.
    pub oracle: bool,
}

impl SolveRequest {
    pub fn new(solver: SolverKind) -> Self {
        SolveRequest {
            solver,
            target: TargetMode::AllCells,
            allowed: AllowedMode::AllSegments,
            k: None,
            seed: 0,
            max_iterations: 100_000,
            oracle: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Infeasible(#[from] CoverError),
    #[error("{0}")]
    Parameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(Cover),
    NoSolutionAtMostK,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelStats {
    pub demands: usize,
    pub c1: usize,
    pub c2: usize,
    pub pair_reductions: usize,
    pub singleton_reductions: usize,
    pub verdict: KernelVerdict,
    pub used_dp: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub instance: String,
    pub segments: usize,
    pub cells: usize,
    pub target: TargetMode,
    pub allowed: AllowedMode,
    pub demands: usize,
    pub solver: SolverKind,
    pub k: Option<usize>,
    pub seed: u64,
    pub outcome: Outcome,
    /// Solution size minus the optimum, when the oracle ran.
    pub oracle_gap: Option<usize>,
    pub kernel: Option<KernelStats>,
    /// Local search iterations and whether the cap was hit.
    pub local: Option<(usize, bool)>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn cover(&self) -> Option<&Cover> {
        match &self.outcome {
            Outcome::Solved(c) => Some(c),
            Outcome::NoSolutionAtMostK => None,
        }
    }

    /// Everything but the timing; identical across runs with equal inputs.
    pub fn body(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        writeln!(out, "instance: {}", self.instance).unwrap();
        writeln!(out, "segments: {}", self.segments).unwrap();
        writeln!(out, "cells: {}", self.cells).unwrap();
        writeln!(out, "target: {}", self.target).unwrap();
        writeln!(out, "allowed: {}", self.allowed).unwrap();
        writeln!(out, "demands: {}", self.demands).unwrap();
        writeln!(out, "solver: {}", self.solver).unwrap();
        writeln!(out, "k: {}", opt(self.k)).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        match &self.outcome {
            Outcome::Solved(c) => {
                writeln!(out, "status: solved").unwrap();
                writeln!(out, "size: {}", c.len()).unwrap();
                let ids: Vec<String> = c.chosen.iter().map(|i| i.to_string()).collect();
                writeln!(out, "chosen: {}", ids.join(" ")).unwrap();
            }
            Outcome::NoSolutionAtMostK => writeln!(out, "status: no-solution-at-most-k").unwrap(),
        }
        if let Some(gap) = self.oracle_gap {
            writeln!(out, "oracle_gap: {gap}").unwrap();
        }
        if let Some(ks) = &self.kernel {
            writeln!(
                out,
                "kernel: |C|={} |C1|={} |C2|={} pairs={} singletons={} verdict={} finisher={}",
                ks.demands,
                ks.c1,
                ks.c2,
                ks.pair_reductions,
                ks.singleton_reductions,
                match ks.verdict {
                    KernelVerdict::Kernel => "kernel",
                    KernelVerdict::NoSolutionAtMostK => "no-solution-at-most-k",
                },
                if ks.used_dp { "dp" } else { "branch-and-bound" }
            )
            .unwrap();
        }
        if let Some((iterations, capped)) = self.local {
            writeln!(out, "local: iterations={iterations} capped={capped}").unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        format!("{}---\nwall_ms: {:.3}\n", self.body(), self.wall_ms)
    }
}

pub fn cover_instance(arr: &Arrangement, req: &SolveRequest) -> Result<CoverInstance, PipelineError> {
    Ok(CoverInstance::from_arrangement(arr, req.target, req.allowed.clone())?)
}

/// Runs the requested solver on an already built arrangement.
pub fn solve_arrangement(arr: &Arrangement, req: &SolveRequest) -> Result<RunReport, PipelineError> {
    let start = Instant::now();
    let ci = cover_instance(arr, req)?;
    let mut kernel = None;
    let mut local = None;
    let outcome = match req.solver {
        SolverKind::Exact => match solve_exact(&ci, req.k) {
            Ok(c) => Outcome::Solved(c),
            Err(SolveError::BudgetExceeded { .. }) => Outcome::NoSolutionAtMostK,
            Err(e) => return Err(PipelineError::Parameter(e.to_string())),
        },
        SolverKind::Greedy => Outcome::Solved(solve_greedy(&ci)),
        SolverKind::Local => {
            let params = LocalSearchParams {
                k: req.k.unwrap_or(2),
                max_iterations: req.max_iterations,
                seed: req.seed,
            };
            let out = local_search(&ci, &params).map_err(|e| PipelineError::Parameter(e.to_string()))?;
            local = Some((out.iterations, out.capped));
            Outcome::Solved(out.cover)
        }
        SolverKind::Fpt => {
            let k = req
                .k
                .ok_or_else(|| PipelineError::Parameter("the fpt solver needs a budget k".into()))?;
            let run = solve_fpt(&ci, k);
            kernel = Some(KernelStats {
                demands: ci.unmerged().len(),
                c1: run.trace.c1.len(),
                c2: run.trace.c2.len(),
                pair_reductions: run.trace.pair_reductions.len(),
                singleton_reductions: run.trace.singleton_reductions.len(),
                verdict: run.trace.verdict,
                used_dp: run.used_dp,
            });
            match run.outcome {
                FptOutcome::Cover(c) => Outcome::Solved(c),
                FptOutcome::NoSolutionAtMostK => Outcome::NoSolutionAtMostK,
            }
        }
    };
    let oracle_gap = match (&outcome, req.oracle) {
        (Outcome::Solved(c), true) => {
            let opt = solve_exact(&ci, None).expect("unbounded exact solve").len();
            Some(c.len() - opt)
        }
        _ => None,
    };
    Ok(RunReport {
        instance: arr.instance().name.clone(),
        segments: arr.segments().len(),
        cells: arr.cells().len(),
        target: req.target,
        allowed: req.allowed.clone(),
        demands: ci.demands().len(),
        solver: req.solver,
        k: req.k,
        seed: req.seed,
        outcome,
        oracle_gap,
        kernel,
        local,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn solve_instance(inst: &Instance, req: &SolveRequest) -> Result<RunReport, PipelineError> {
    solve_arrangement(&Arrangement::build(inst), req)
}
