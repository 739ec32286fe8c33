use std::ffi::{CStr, CString};
use std::ptr;

use lsc_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lsc_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn parse(text: &str) -> (LscStatus, *mut LscInstance) {
    let c = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    (lsc_instance_parse(c.as_ptr(), &mut inst), inst)
}

#[test]
fn parse_build_solve() {
    unsafe {
        let (s, inst) = parse("LSC 1\n-1 0 2 0\n-1 1 2 1\n0 -1 0 2\n1 -1 1 2\n");
        assert_eq!(s, LscStatus::Ok);
        let mut arr = ptr::null_mut();
        assert_eq!(lsc_arrangement_build(inst, &mut arr), LscStatus::Ok);
        assert_eq!(lsc_arrangement_cell_count(arr), 2);

        let mut sol = ptr::null_mut();
        let allowed = CString::new("orient:v").unwrap();
        let st = lsc_solve(arr, LscSolver::Exact, LscTarget::Rectangular, allowed.as_ptr(), -1, 0, &mut sol);
        assert_eq!(st, LscStatus::Ok);
        let mut ids = [0usize; 4];
        let mut len = 0;
        assert_eq!(lsc_solution_ids(sol, ids.as_mut_ptr(), 4, &mut len), LscStatus::Ok);
        assert_eq!(&ids[..len], &[2]);
        let report = CStr::from_ptr(lsc_solution_report(sol)).to_str().unwrap();
        assert!(report.contains("allowed: orient:v\n"));
        lsc_solution_free(sol);

        lsc_arrangement_free(arr);
        lsc_instance_free(inst);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let (s, inst) = parse("LSC 1\n0 0 1\n");
        assert_eq!(s, LscStatus::ParseError);
        assert!(inst.is_null());
        assert_eq!(last_error(), "line 2: expected 4 fields, found 3");

        let (s, _) = parse("LSC 1\n0 0 2 2\n0 2 2 0\n1 0 1 3\n");
        assert_eq!(s, LscStatus::InvalidInstance);

        let mut out = ptr::null_mut();
        assert_eq!(lsc_instance_parse(ptr::null(), &mut out), LscStatus::NullArgument);
        assert_eq!(lsc_arrangement_build(ptr::null(), ptr::null_mut()), LscStatus::NullArgument);

        let coords = [0i64, 0, 4, 0];
        let mut inst = ptr::null_mut();
        assert_eq!(lsc_instance_from_coords(coords.as_ptr(), 1, &mut inst), LscStatus::Ok);
        let mut arr = ptr::null_mut();
        assert_eq!(lsc_arrangement_build(inst, &mut arr), LscStatus::Ok);
        let mut sol = ptr::null_mut();
        let v = CString::new("orient:v").unwrap();
        assert_eq!(lsc_solve(arr, LscSolver::Greedy, LscTarget::All, v.as_ptr(), -1, 0, &mut sol), LscStatus::Infeasible);
        assert!(last_error().contains("cell 0"));
        let junk = CString::new("sideways").unwrap();
        assert_eq!(lsc_solve(arr, LscSolver::Greedy, LscTarget::All, junk.as_ptr(), -1, 0, &mut sol), LscStatus::InvalidArgument);
        assert_eq!(lsc_solve(arr, LscSolver::Fpt, LscTarget::All, ptr::null(), -1, 0, &mut sol), LscStatus::InvalidArgument);

        let (mut b, mut r) = (true, true);
        assert_eq!(lsc_arrangement_cell_kind(arr, 0, &mut b, &mut r), LscStatus::Ok);
        assert!(!b && !r);
        assert_eq!(lsc_arrangement_cell_kind(arr, 9, &mut b, &mut r), LscStatus::InvalidArgument);

        let mut len = 0;
        assert_eq!(lsc_arrangement_covered_by(arr, 0, ptr::null_mut(), 0, &mut len), LscStatus::BufferTooSmall);
        assert_eq!(len, 1);
        assert_eq!(last_error(), "need room for 1 ids");

        lsc_arrangement_free(arr);
        lsc_instance_free(inst);
        lsc_instance_free(ptr::null_mut());
    }
}

#[test]
fn version_and_null_handles() {
    let v = unsafe { CStr::from_ptr(lsc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    unsafe {
        assert_eq!(lsc_instance_len(ptr::null()), 0);
        assert_eq!(lsc_solution_size(ptr::null()), 0);
        assert!(lsc_solution_report(ptr::null()).is_null());
    }
}
