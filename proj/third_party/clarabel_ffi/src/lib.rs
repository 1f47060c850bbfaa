//! C entry point for the Clarabel interior-point solver.
//!
//! Problem form: minimize c'x subject to s = b - A x, s in K, where K is
//! zero x nonnegative x second-order cones x PSD triangle cones in that order.
//! PSD cones use the column-wise upper triangle with off-diagonals scaled by sqrt(2).

use clarabel::algebra::CscMatrix;
use clarabel::solver::{DefaultSettings, DefaultSolver, IPSolver, SolverStatus, SupportedConeT};
use std::slice;

#[repr(C)]
pub struct DasecClarabelInfo {
    pub status: i32,
    pub iterations: u32,
    pub obj_val: f64,
    pub solve_time: f64,
    pub r_prim: f64,
    pub r_dual: f64,
}

fn status_code(s: SolverStatus) -> i32 {
    match s {
        SolverStatus::Solved => 1,
        SolverStatus::AlmostSolved => 2,
        SolverStatus::PrimalInfeasible => -2,
        SolverStatus::AlmostPrimalInfeasible => -7,
        SolverStatus::DualInfeasible => -1,
        SolverStatus::AlmostDualInfeasible => -6,
        SolverStatus::MaxIterations | SolverStatus::MaxTime => -3,
        _ => -4,
    }
}

/// # Safety
/// All pointers must reference arrays of the stated lengths; x_out has length n.
#[no_mangle]
pub unsafe extern "C" fn dasec_clarabel_solve(
    n: usize,
    m: usize,
    colptr: *const usize,
    rowval: *const usize,
    nzval: *const f64,
    b: *const f64,
    c: *const f64,
    n_zero: usize,
    n_nonneg: usize,
    soc_dims: *const usize,
    n_soc: usize,
    psd_dims: *const usize,
    n_psd: usize,
    tol: f64,
    max_iter: u32,
    verbose: i32,
    x_out: *mut f64,
    info: *mut DasecClarabelInfo,
) -> i32 {
    let nnz = *colptr.add(n);
    let a = CscMatrix::new(
        m,
        n,
        slice::from_raw_parts(colptr, n + 1).to_vec(),
        slice::from_raw_parts(rowval, nnz).to_vec(),
        slice::from_raw_parts(nzval, nnz).to_vec(),
    );
    let p = CscMatrix::<f64>::zeros((n, n));
    let bv = slice::from_raw_parts(b, m);
    let cv = slice::from_raw_parts(c, n);

    let mut cones = Vec::new();
    if n_zero > 0 {
        cones.push(SupportedConeT::ZeroConeT(n_zero));
    }
    if n_nonneg > 0 {
        cones.push(SupportedConeT::NonnegativeConeT(n_nonneg));
    }
    for &d in slice::from_raw_parts(soc_dims, n_soc) {
        cones.push(SupportedConeT::SecondOrderConeT(d));
    }
    for &d in slice::from_raw_parts(psd_dims, n_psd) {
        cones.push(SupportedConeT::PSDTriangleConeT(d));
    }

    let mut settings = DefaultSettings::<f64>::default();
    settings.verbose = verbose != 0;
    settings.max_iter = max_iter;
    settings.tol_gap_abs = tol;
    settings.tol_gap_rel = tol;
    settings.tol_feas = tol;
    settings.presolve_enable = false;
    settings.chordal_decomposition_enable = false;

    let mut solver = match DefaultSolver::new(&p, cv, &a, bv, &cones, settings) {
        Ok(s) => s,
        Err(_) => return -10,
    };
    solver.solve();
    let sol = &solver.solution;
    let out = slice::from_raw_parts_mut(x_out, n);
    out.copy_from_slice(&sol.x);
    let code = status_code(sol.status);
    if !info.is_null() {
        *info = DasecClarabelInfo {
            status: code,
            iterations: sol.iterations,
            obj_val: sol.obj_val,
            solve_time: sol.solve_time,
            r_prim: sol.r_prim,
            r_dual: sol.r_dual,
        };
    }
    code
}
