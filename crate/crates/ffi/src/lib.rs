//! C interface to `vcpc`.
//!
//! Every object crosses the boundary as an opaque pointer owned by the caller
//! and released with the matching `*_free`. Fallible calls return a
//! [`VcpcStatus`]; on failure [`vcpc_last_error`] describes what went wrong on
//! the calling thread. Panics are caught and reported as
//! `VCPC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use vcpc::colouring::{plan_groups, GroupPlan};
use vcpc::model::parse_model;
use vcpc::solvers::{run_pt, run_sa, PtConfig, SaConfig, SolveResult};
use vcpc::{ClampMask, EnergyModel, Error, ModelBuilder};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcpcStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    Index = 3,
    Capacity = 4,
    Config = 5,
    Domain = 6,
    Infeasible = 7,
    Scoring = 8,
    Parse = 9,
    Io = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

impl From<&Error> for VcpcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Dimension { .. } => VcpcStatus::Dimension,
            Error::Index { .. } => VcpcStatus::Index,
            Error::Capacity { .. } => VcpcStatus::Capacity,
            Error::Config(_) => VcpcStatus::Config,
            Error::Domain(_) => VcpcStatus::Domain,
            Error::Infeasible(_) => VcpcStatus::Infeasible,
            Error::Scoring(_) => VcpcStatus::Scoring,
            Error::Parse { .. } => VcpcStatus::Parse,
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => VcpcStatus::Io,
        }
    }
}

/// Model under construction.
pub struct VcpcModelBuilder(ModelBuilder);

/// Immutable energy model.
pub struct VcpcModel(EnergyModel);

/// Update groups of a model.
pub struct VcpcPlan(GroupPlan);

/// Outcome of a solver run.
pub struct VcpcResult(SolveResult);

/// Simulated-annealing settings: `steps` inverse temperatures spaced
/// linearly from `beta_start` to `beta_end`, `iters_per_step` group updates
/// at each.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct VcpcSaConfig {
    pub beta_start: f64,
    pub beta_end: f64,
    pub steps: usize,
    pub iters_per_step: usize,
    pub repeats: usize,
    pub seed: u64,
}

/// Parallel-tempering settings.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct VcpcPtConfig {
    pub beta_start: f64,
    pub beta_end: f64,
    pub replicas: usize,
    pub iters: usize,
    pub swap_interval: usize,
    pub repeats: usize,
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: VcpcStatus, msg: impl Into<String>) -> VcpcStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, mapping errors and panics to a status and the thread's message.
fn guard(f: impl FnOnce() -> Result<(), VcpcStatus>) -> VcpcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            VcpcStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(VcpcStatus::Panic, msg)
        }
    }
}

fn check<T>(r: vcpc::Result<T>) -> Result<T, VcpcStatus> {
    r.map_err(|e| fail(VcpcStatus::from(&e), e.to_string()))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, VcpcStatus> {
    p.as_ref().ok_or_else(|| fail(VcpcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn obj_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, VcpcStatus> {
    p.as_mut().ok_or_else(|| fail(VcpcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], VcpcStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(VcpcStatus::NullPointer, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), VcpcStatus> {
    if out.is_null() {
        return Err(fail(VcpcStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn state_of<'a>(model: &EnergyModel, s: *const u8, len: usize) -> Result<&'a [u8], VcpcStatus> {
    if len != model.num_vars() {
        return Err(fail(
            VcpcStatus::Dimension,
            format!("state has {len} entries, model has {} variables", model.num_vars()),
        ));
    }
    input(s, len, "state")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vcpc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vcpc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// New builder for a model over `num_vars` binary variables.
#[no_mangle]
pub extern "C" fn vcpc_builder_new(num_vars: usize) -> *mut VcpcModelBuilder {
    Box::into_raw(Box::new(VcpcModelBuilder(EnergyModel::builder(num_vars))))
}

/// Adds `coeff · Π s_v` over the `len` indices in `vars`. Repeated indices
/// collapse (`s² = s`); repeated terms accumulate.
///
/// # Safety
/// `builder` must come from [`vcpc_builder_new`]; `vars` must point to `len`
/// readable indices.
#[no_mangle]
pub unsafe extern "C" fn vcpc_builder_add_term(
    builder: *mut VcpcModelBuilder,
    coeff: f64,
    vars: *const u32,
    len: usize,
) -> VcpcStatus {
    guard(|| {
        let b = obj_mut(builder, "builder")?;
        let vars = input(vars, len, "vars")?;
        check(b.0.add_term(coeff, vars.iter().copied())).map(|_| ())
    })
}

/// # Safety
/// `builder` must come from [`vcpc_builder_new`].
#[no_mangle]
pub unsafe extern "C" fn vcpc_builder_add_constant(builder: *mut VcpcModelBuilder, c: f64) -> VcpcStatus {
    guard(|| {
        obj_mut(builder, "builder")?.0.add_constant(c);
        Ok(())
    })
}

/// Finishes the model and frees the builder, whatever the outcome.
///
/// # Safety
/// `builder` must come from [`vcpc_builder_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vcpc_builder_build(builder: *mut VcpcModelBuilder, out: *mut *mut VcpcModel) -> VcpcStatus {
    guard(|| {
        if builder.is_null() {
            return Err(fail(VcpcStatus::NullPointer, "builder is null"));
        }
        let b = Box::from_raw(builder);
        let model = Box::new(VcpcModel(b.0.build()));
        put(out, Box::into_raw(model), "out")
    })
}

/// # Safety
/// `builder` must come from [`vcpc_builder_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn vcpc_builder_free(builder: *mut VcpcModelBuilder) {
    if !builder.is_null() {
        drop(Box::from_raw(builder));
    }
}

/// Parses the plain-text model format.
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_parse(text: *const c_char, out: *mut *mut VcpcModel) -> VcpcStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(VcpcStatus::NullPointer, "text is null"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| fail(VcpcStatus::InvalidUtf8, e.to_string()))?;
        let model = check(parse_model(text))?;
        put(out, Box::into_raw(Box::new(VcpcModel(model))), "out")
    })
}

/// # Safety
/// `model` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_num_vars(model: *const VcpcModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.num_vars())
}

/// # Safety
/// `model` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_num_terms(model: *const VcpcModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.num_terms())
}

/// Energy of the 0/1 state `s` of length `len`.
///
/// # Safety
/// `model` must be a live model handle; `s` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_energy(model: *const VcpcModel, s: *const u8, len: usize, out: *mut f64) -> VcpcStatus {
    guard(|| {
        let m = &obj(model, "model")?.0;
        let s = state_of(m, s, len)?;
        put(out, check(m.energy(s))?, "out")
    })
}

/// Update drive `E(s | s_k = 0) − E(s | s_k = 1)`.
///
/// # Safety
/// `model` must be a live model handle; `s` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_update_drive(
    model: *const VcpcModel,
    s: *const u8,
    len: usize,
    k: usize,
    out: *mut f64,
) -> VcpcStatus {
    guard(|| {
        let m = &obj(model, "model")?.0;
        let s = state_of(m, s, len)?;
        put(out, check(m.update_drive(s, k))?, "out")
    })
}

/// # Safety
/// `model` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn vcpc_model_free(model: *mut VcpcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Greedy colouring of every variable of `model` into update groups.
///
/// # Safety
/// `model` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_new(model: *const VcpcModel, out: *mut *mut VcpcPlan) -> VcpcStatus {
    guard(|| {
        let m = &obj(model, "model")?.0;
        let plan = check(plan_groups(m, &ClampMask::all_free(m.num_vars())))?;
        put(out, Box::into_raw(Box::new(VcpcPlan(plan))), "out")
    })
}

/// # Safety
/// `plan` must be a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_num_groups(plan: *const VcpcPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.num_groups())
}

/// # Safety
/// `plan` must be a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_avg_group_size(plan: *const VcpcPlan) -> f64 {
    plan.as_ref().map_or(0.0, |p| p.0.avg_group_size())
}

/// Size of group `g`, or 0 when out of range.
///
/// # Safety
/// `plan` must be a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_group_len(plan: *const VcpcPlan, g: usize) -> usize {
    plan.as_ref().and_then(|p| p.0.groups().get(g)).map_or(0, Vec::len)
}

/// Copies the members of group `g` into `out`, which holds `cap` entries.
///
/// # Safety
/// `plan` must be a live plan handle; `out` must have room for `cap` indices.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_group(plan: *const VcpcPlan, g: usize, out: *mut u32, cap: usize) -> VcpcStatus {
    guard(|| {
        let p = &obj(plan, "plan")?.0;
        let group = p
            .groups()
            .get(g)
            .ok_or_else(|| fail(VcpcStatus::Index, format!("group {g} of {}", p.num_groups())))?;
        if cap < group.len() {
            return Err(fail(VcpcStatus::Dimension, format!("buffer holds {cap}, group has {}", group.len())));
        }
        if !group.is_empty() {
            if out.is_null() {
                return Err(fail(VcpcStatus::NullPointer, "out is null"));
            }
            ptr::copy_nonoverlapping(group.as_ptr(), out, group.len());
        }
        Ok(())
    })
}

/// # Safety
/// `plan` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn vcpc_plan_free(plan: *mut VcpcPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Runs simulated annealing with `plan`'s groups.
///
/// # Safety
/// All pointers must be live handles or valid for reads and writes.
#[no_mangle]
pub unsafe extern "C" fn vcpc_solve_sa(
    model: *const VcpcModel,
    plan: *const VcpcPlan,
    config: *const VcpcSaConfig,
    out: *mut *mut VcpcResult,
) -> VcpcStatus {
    guard(|| {
        let m = &obj(model, "model")?.0;
        let p = &obj(plan, "plan")?.0;
        let c = obj(config, "config")?;
        let cfg = SaConfig::new(c.beta_start, c.beta_end, c.steps, c.iters_per_step, c.repeats, c.seed);
        let r = check(run_sa(m, &ClampMask::all_free(m.num_vars()), p, &cfg))?;
        put(out, Box::into_raw(Box::new(VcpcResult(r))), "out")
    })
}

/// Runs parallel tempering with `plan`'s groups.
///
/// # Safety
/// All pointers must be live handles or valid for reads and writes.
#[no_mangle]
pub unsafe extern "C" fn vcpc_solve_pt(
    model: *const VcpcModel,
    plan: *const VcpcPlan,
    config: *const VcpcPtConfig,
    out: *mut *mut VcpcResult,
) -> VcpcStatus {
    guard(|| {
        let m = &obj(model, "model")?.0;
        let p = &obj(plan, "plan")?.0;
        let c = obj(config, "config")?;
        let cfg = PtConfig::new(c.beta_start, c.beta_end, c.replicas, c.iters, c.swap_interval, c.repeats, c.seed);
        let r = check(run_pt(m, &ClampMask::all_free(m.num_vars()), p, &cfg))?;
        put(out, Box::into_raw(Box::new(VcpcResult(r))), "out")
    })
}

/// # Safety
/// `result` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_best_energy(result: *const VcpcResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.0.best_energy)
}

/// # Safety
/// `result` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_total_iterations(result: *const VcpcResult) -> u64 {
    result.as_ref().map_or(0, |r| r.0.total_iterations)
}

/// # Safety
/// `result` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_num_vars(result: *const VcpcResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.best_state.len())
}

/// Copies the best state into `out`, which holds `cap` bytes.
///
/// # Safety
/// `result` must be a live result handle; `out` must have room for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_best_state(result: *const VcpcResult, out: *mut u8, cap: usize) -> VcpcStatus {
    guard(|| {
        let s = obj(result, "result")?.0.best_state.as_slice();
        if cap < s.len() {
            return Err(fail(VcpcStatus::Dimension, format!("buffer holds {cap}, state has {}", s.len())));
        }
        if !s.is_empty() {
            if out.is_null() {
                return Err(fail(VcpcStatus::NullPointer, "out is null"));
            }
            ptr::copy_nonoverlapping(s.as_ptr(), out, s.len());
        }
        Ok(())
    })
}

/// Number of points in the best-so-far trajectory.
///
/// # Safety
/// `result` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_trajectory_len(result: *const VcpcResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.trajectory.len())
}

/// Point `i` of the trajectory: the iteration and the best energy up to it.
///
/// # Safety
/// `result` must be a live result handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_trajectory_point(
    result: *const VcpcResult,
    i: usize,
    iteration: *mut u64,
    best_energy: *mut f64,
) -> VcpcStatus {
    guard(|| {
        let t = &obj(result, "result")?.0.trajectory;
        let p = t.get(i).ok_or_else(|| fail(VcpcStatus::Index, format!("point {i} of {}", t.len())))?;
        put(iteration, p.iteration, "iteration")?;
        put(best_energy, p.best_energy, "best_energy")
    })
}

/// # Safety
/// `result` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn vcpc_result_free(result: *mut VcpcResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Seconds for `adjusted_iters` group iterations on an `n`-variable machine
/// clocked at `f_hz`, with `log2(n) + overhead_cycles` cycles per iteration.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcpc_estimate_tts(
    adjusted_iters: f64,
    n: usize,
    f_hz: f64,
    overhead_cycles: f64,
    out: *mut f64,
) -> VcpcStatus {
    guard(|| {
        let est = check(vcpc::analysis::estimate_tts(adjusted_iters, n, f_hz, overhead_cycles))?;
        put(out, est.seconds, "out")
    })
}
