//! C ABI over `lsc-core`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every call returns an [`LscStatus`]; on failure a message is available
//! from [`lsc_last_error`] on the same thread. Panics never cross the
//! boundary and surface as `LSC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lsc_core::arrangement::{Arrangement, Instance, RawSegment};
use lsc_core::cover::{AllowedMode, TargetMode};
use lsc_core::io::parse_instance;
use lsc_core::pipeline::{solve_arrangement, Outcome, PipelineError, RunReport, SolveRequest, SolverKind};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LscStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    InvalidInstance = 3,
    Infeasible = 4,
    NoSolution = 5,
    InvalidArgument = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LscSolver {
    Exact = 0,
    Greedy = 1,
    Local = 2,
    Fpt = 3,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LscTarget {
    All = 0,
    Bounded = 1,
    Rectangular = 2,
}

/// A validated segment set.
pub struct LscInstance(Instance);

/// The planar subdivision of an instance.
pub struct LscArrangement(Arrangement);

/// A solver run: chosen segment ids and the text report.
pub struct LscSolution {
    ids: Vec<usize>,
    report: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: LscStatus, msg: impl Into<String>) -> LscStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LscStatus) -> LscStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == LscStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(LscStatus::Panic, "internal panic"),
    }
}

unsafe fn out_handle<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn copy_ids(ids: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> LscStatus {
    if len.is_null() {
        return fail(LscStatus::NullArgument, "len is null");
    }
    *len = ids.len();
    if cap < ids.len() {
        return fail(LscStatus::BufferTooSmall, format!("need room for {} ids", ids.len()));
    }
    if !ids.is_empty() {
        if buf.is_null() {
            return fail(LscStatus::NullArgument, "buf is null");
        }
        ptr::copy_nonoverlapping(ids.as_ptr(), buf, ids.len());
    }
    LscStatus::Ok
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lsc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn lsc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an `LSC 1` instance from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lsc_instance_parse(text: *const c_char, out: *mut *mut LscInstance) -> LscStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(LscStatus::NullArgument, "text or out is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(LscStatus::ParseError, "input is not UTF-8");
        };
        match parse_instance(text) {
            Ok(inst) => {
                out_handle(out, LscInstance(inst));
                LscStatus::Ok
            }
            Err(e @ lsc_core::io::InputError::Invalid { .. }) => fail(LscStatus::InvalidInstance, e.to_string()),
            Err(e) => fail(LscStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds an instance from `4 * count` integers `x1 y1 x2 y2 ...`.
///
/// # Safety
/// `coords` must point to `4 * count` readable values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn lsc_instance_from_coords(coords: *const i64, count: usize, out: *mut *mut LscInstance) -> LscStatus {
    guard(|| {
        if out.is_null() || (coords.is_null() && count > 0) {
            return fail(LscStatus::NullArgument, "coords or out is null");
        }
        let flat: &[i64] = if count == 0 { &[] } else { std::slice::from_raw_parts(coords, 4 * count) };
        let raw: Vec<RawSegment> = flat.chunks_exact(4).map(|c| RawSegment::from_ints(c[0], c[1], c[2], c[3])).collect();
        match Instance::validate(&raw) {
            Ok(inst) => {
                out_handle(out, LscInstance(inst));
                LscStatus::Ok
            }
            Err(e) => fail(LscStatus::InvalidInstance, e.to_string()),
        }
    })
}

/// Number of segments; 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsc_instance_len(inst: *const LscInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.len())
}

/// # Safety
/// `inst` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lsc_instance_free(inst: *mut LscInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lsc_arrangement_build(inst: *const LscInstance, out: *mut *mut LscArrangement) -> LscStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(LscStatus::NullArgument, "inst or out is null");
        };
        out_handle(out, LscArrangement(Arrangement::build(&inst.0)));
        LscStatus::Ok
    })
}

/// Number of cells, the unbounded one included; 0 for a null handle.
///
/// # Safety
/// `arr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsc_arrangement_cell_count(arr: *const LscArrangement) -> usize {
    arr.as_ref().map_or(0, |a| a.0.cells().len())
}

unsafe fn with_cell(arr: *const LscArrangement, cell: usize, f: impl FnOnce(&lsc_core::arrangement::Cell) -> LscStatus) -> LscStatus {
    guard(|| {
        let Some(arr) = arr.as_ref() else {
            return fail(LscStatus::NullArgument, "arr is null");
        };
        match arr.0.cells().get(cell) {
            Some(c) => f(c),
            None => fail(LscStatus::InvalidArgument, format!("cell {cell} out of range")),
        }
    })
}

/// Writes whether `cell` is bounded and whether it is rectangular.
///
/// # Safety
/// `arr` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lsc_arrangement_cell_kind(
    arr: *const LscArrangement,
    cell: usize,
    bounded: *mut bool,
    rectangular: *mut bool,
) -> LscStatus {
    with_cell(arr, cell, |c| {
        if bounded.is_null() || rectangular.is_null() {
            return fail(LscStatus::NullArgument, "out pointer is null");
        }
        *bounded = c.bounded;
        *rectangular = c.rectangular;
        LscStatus::Ok
    })
}

/// Copies the ids of the segments covering `cell` into `buf` (ascending).
/// `*len` receives the count even when `cap` is too small.
///
/// # Safety
/// `arr` must be a live handle, `buf` writable for `cap` values, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn lsc_arrangement_covered_by(
    arr: *const LscArrangement,
    cell: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> LscStatus {
    with_cell(arr, cell, |c| {
        let ids: Vec<usize> = c.covered_by.iter().copied().collect();
        copy_ids(&ids, buf, cap, len)
    })
}

/// # Safety
/// `arr` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lsc_arrangement_free(arr: *mut LscArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// Solves the covering problem on `arr`.
///
/// `allowed` is null for all segments or an orientation filter such as
/// `"orient:h"`. `k` is the budget (exact, fpt) or swap radius (local); pass
/// a negative value for none. A run that proves no cover of size at most `k`
/// exists returns `LSC_STATUS_NO_SOLUTION` and no handle.
///
/// # Safety
/// `arr` must be a live handle, `allowed` null or a C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lsc_solve(
    arr: *const LscArrangement,
    solver: LscSolver,
    target: LscTarget,
    allowed: *const c_char,
    k: i64,
    seed: u64,
    out: *mut *mut LscSolution,
) -> LscStatus {
    guard(|| {
        let (Some(arr), false) = (arr.as_ref(), out.is_null()) else {
            return fail(LscStatus::NullArgument, "arr or out is null");
        };
        let allowed = if allowed.is_null() {
            AllowedMode::AllSegments
        } else {
            match CStr::from_ptr(allowed).to_str().map(str::parse::<AllowedMode>) {
                Ok(Ok(a)) => a,
                Ok(Err(e)) => return fail(LscStatus::InvalidArgument, e),
                Err(_) => return fail(LscStatus::InvalidArgument, "allowed is not UTF-8"),
            }
        };
        let mut req = SolveRequest::new(match solver {
            LscSolver::Exact => SolverKind::Exact,
            LscSolver::Greedy => SolverKind::Greedy,
            LscSolver::Local => SolverKind::Local,
            LscSolver::Fpt => SolverKind::Fpt,
        });
        req.target = match target {
            LscTarget::All => TargetMode::AllCells,
            LscTarget::Bounded => TargetMode::BoundedCells,
            LscTarget::Rectangular => TargetMode::RectangularCells,
        };
        req.allowed = allowed;
        req.k = usize::try_from(k).ok();
        req.seed = seed;
        let report: RunReport = match solve_arrangement(&arr.0, &req) {
            Ok(r) => r,
            Err(e @ PipelineError::Infeasible(_)) => return fail(LscStatus::Infeasible, e.to_string()),
            Err(e @ PipelineError::Parameter(_)) => return fail(LscStatus::InvalidArgument, e.to_string()),
        };
        match &report.outcome {
            Outcome::Solved(c) => {
                let report_text = CString::new(report.body()).expect("report has no NUL");
                out_handle(
                    out,
                    LscSolution {
                        ids: c.chosen.iter().copied().collect(),
                        report: report_text,
                    },
                );
                LscStatus::Ok
            }
            Outcome::NoSolutionAtMostK => fail(LscStatus::NoSolution, "no cover of size at most k"),
        }
    })
}

/// Number of chosen segments; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsc_solution_size(sol: *const LscSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.ids.len())
}

/// Copies the chosen ids (ascending) into `buf`; see
/// [`lsc_arrangement_covered_by`] for the buffer protocol.
///
/// # Safety
/// `sol` must be a live handle, `buf` writable for `cap` values, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn lsc_solution_ids(sol: *const LscSolution, buf: *mut usize, cap: usize, len: *mut usize) -> LscStatus {
    guard(|| match sol.as_ref() {
        Some(s) => copy_ids(&s.ids, buf, cap, len),
        None => fail(LscStatus::NullArgument, "sol is null"),
    })
}

/// The run report without timing, owned by the solution handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsc_solution_report(sol: *const LscSolution) -> *const c_char {
    sol.as_ref().map_or(ptr::null(), |s| s.report.as_ptr())
}

/// # Safety
/// `sol` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lsc_solution_free(sol: *mut LscSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}
