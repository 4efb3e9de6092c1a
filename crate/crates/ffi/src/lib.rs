//! C ABI for the ks33 verification engine.
//!
//! Every fallible call returns a [`Ks33Status`]; on failure a message is
//! available from [`ks33_last_error`] on the same thread. Handles are opaque
//! and must be released with their `_free` function. Strings returned by the
//! library are released with [`ks33_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use ks33::catalog::{family_rays, peres_rays, penrose_mpairs, FamilyParams};
use ks33::commands::{self, CatalogSet, CriticalTarget, ProveMode};
use ks33::kscolor::{search_coloring, Color, ConstraintSet};
use ks33::majorana::{overlap2_mpairs, state_from_mpair, MPair, MVector};
use ks33::orthograph::{decompose, reference_decomposition, OrthoGraph, TriadDyadDecomposition};
use ks33::rays::Ray;
use ks33::report::Report;
use ks33::scalar::ApproxComplex;
use ks33::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ks33Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    IndexOutOfRange = 3,
    /// The catalog does not have the expected orthogonality structure.
    Structure = 4,
    Io = 5,
    /// A report was produced but at least one check failed.
    CheckFailed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ks33Set {
    Peres = 0,
    Penrose = 1,
    Family = 2,
}

impl From<Ks33Set> for CatalogSet {
    fn from(s: Ks33Set) -> Self {
        match s {
            Ks33Set::Peres => CatalogSet::Peres,
            Ks33Set::Penrose => CatalogSet::Penrose,
            Ks33Set::Family => CatalogSet::Family,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ks33Command {
    Verify = 0,
    Prove = 1,
    Critical = 2,
    Majorana = 3,
}

/// A 33-entry catalog with its unit-normalized state vectors.
pub struct Ks33Catalog {
    set: CatalogSet,
    params: FamilyParams,
    rays: Vec<Ray<ApproxComplex>>,
}

/// Orthogonality graph plus its triad/dyad decomposition.
pub struct Ks33Graph {
    graph: OrthoGraph,
    decomposition: TriadDyadDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> Ks33Status {
    match e {
        Error::InvalidArgument(_) | Error::DivisionByZero | Error::ZeroRay | Error::NotARotation => {
            Ks33Status::InvalidArgument
        }
        Error::IndexOutOfRange(_) => Ks33Status::IndexOutOfRange,
        Error::Io(_) => Ks33Status::Io,
        _ => Ks33Status::Structure,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Ks33Status>) -> Ks33Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Ks33Status::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            Ks33Status::Panic
        }
    }
}

fn fail(e: Error) -> Ks33Status {
    set_error(e.to_string());
    status_of(&e)
}

fn null() -> Ks33Status {
    set_error("null pointer argument");
    Ks33Status::NullPointer
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Ks33Status> {
    p.as_mut().ok_or_else(null)
}

unsafe fn in_ref<'a, T>(p: *const T) -> Result<&'a T, Ks33Status> {
    p.as_ref().ok_or_else(null)
}

fn catalog_rays(set: CatalogSet, params: &FamilyParams) -> ks33::Result<Vec<Ray<ApproxComplex>>> {
    match set {
        CatalogSet::Peres => Ok(peres_rays().iter().map(Ray::to_approx).collect()),
        CatalogSet::Penrose => penrose_mpairs().iter().map(|p| state_from_mpair(p).map(|s| s.as_ray())).collect(),
        CatalogSet::Family => Ok(family_rays(params)),
    }
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ks33_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks33_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a catalog. The phases are used only for [`Ks33Set::Family`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks33_catalog_new(
    set: Ks33Set,
    alpha: f64,
    beta: f64,
    gamma: f64,
    out: *mut *mut Ks33Catalog,
) -> Ks33Status {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if ![alpha, beta, gamma].iter().all(|x| x.is_finite()) {
            return Err(fail(Error::InvalidArgument("phases must be finite".into())));
        }
        let set = CatalogSet::from(set);
        let params = FamilyParams::new(alpha, beta, gamma);
        let rays = catalog_rays(set, &params).map_err(fail)?;
        *out = Box::into_raw(Box::new(Ks33Catalog { set, params, rays }));
        Ok(())
    })
}

/// # Safety
/// `cat` must come from [`ks33_catalog_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks33_catalog_free(cat: *mut Ks33Catalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// # Safety
/// `cat` must be a live catalog handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ks33_catalog_len(cat: *const Ks33Catalog) -> usize {
    cat.as_ref().map_or(0, |c| c.rays.len())
}

/// Unit state vector of ray `index` (1-based) as three real and three
/// imaginary parts.
///
/// # Safety
/// `cat` must be a live handle; `re` and `im` must each point to 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn ks33_catalog_ray(
    cat: *const Ks33Catalog,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> Ks33Status {
    guard(|| {
        let cat = in_ref(cat)?;
        if re.is_null() || im.is_null() {
            return Err(null());
        }
        let ray = index
            .checked_sub(1)
            .and_then(|i| cat.rays.get(i))
            .ok_or_else(|| fail(Error::IndexOutOfRange(index)))?;
        let n = ray.norm_sqr().sqrt();
        for (k, z) in ray.components().iter().enumerate() {
            *re.add(k) = z.re / n;
            *im.add(k) = z.im / n;
        }
        Ok(())
    })
}

/// Builds the orthogonality graph. Peres and Penrose catalogs are tested
/// exactly; family catalogs use `tol` on the squared overlap.
///
/// # Safety
/// `cat` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_build(cat: *const Ks33Catalog, tol: f64, out: *mut *mut Ks33Graph) -> Ks33Status {
    guard(|| {
        let cat = in_ref(cat)?;
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(fail(Error::InvalidArgument("tol must be non-negative".into())));
        }
        let graph = commands::graph_of(cat.set, &cat.params, tol).map_err(fail)?;
        let decomposition = decompose(&graph).map_err(fail)?;
        *out = Box::into_raw(Box::new(Ks33Graph { graph, decomposition }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`ks33_graph_build`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_free(g: *mut Ks33Graph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_edge_count(g: *const Ks33Graph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_has_edge(g: *const Ks33Graph, a: u8, b: u8) -> bool {
    g.as_ref().is_some_and(|g| a != b && (1..=33).contains(&a) && (1..=33).contains(&b) && g.graph.has_edge(a, b))
}

/// # Safety
/// `g` must be a live handle; `triads` and `dyads` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_counts(g: *const Ks33Graph, triads: *mut usize, dyads: *mut usize) -> Ks33Status {
    guard(|| {
        let g = in_ref(g)?;
        *out_ref(triads)? = g.decomposition.triads.len();
        *out_ref(dyads)? = g.decomposition.dyads.len();
        Ok(())
    })
}

/// Whether the triads and dyads equal the reference diagram as sets.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_matches_reference(g: *const Ks33Graph) -> bool {
    g.as_ref().is_some_and(|g| g.decomposition == reference_decomposition())
}

/// Searches for a coloring after deleting ray `delete` (0 deletes nothing).
/// On success `*found` says whether one exists; if so `greens[i]` is 1 when
/// ray `i + 1` is green.
///
/// # Safety
/// `g` must be a live handle, `found` valid, and `greens` point to 33 bytes.
#[no_mangle]
pub unsafe extern "C" fn ks33_graph_find_coloring(
    g: *const Ks33Graph,
    delete: u8,
    found: *mut bool,
    greens: *mut u8,
) -> Ks33Status {
    guard(|| {
        let g = in_ref(g)?;
        let found = out_ref(found)?;
        if greens.is_null() {
            return Err(null());
        }
        let full = ConstraintSet::from_decomposition(g.graph.vertex_count(), &g.decomposition);
        let cs = match delete {
            0 => full,
            v => full.delete(v).map_err(fail)?,
        };
        let coloring = search_coloring(&cs).coloring;
        *found = coloring.is_some();
        for i in 0..33u8 {
            let green = coloring.as_ref().is_some_and(|c| c.get(i + 1) == Color::Green);
            *greens.add(i as usize) = u8::from(green);
        }
        Ok(())
    })
}

unsafe fn mpair_from(p: *const f64) -> Result<MPair<f64>, Ks33Status> {
    if p.is_null() {
        return Err(null());
    }
    let v = std::slice::from_raw_parts(p, 6);
    let first = MVector::new([v[0], v[1], v[2]]).map_err(fail)?;
    let second = MVector::new([v[3], v[4], v[5]]).map_err(fail)?;
    Ok(MPair::new(first, second))
}

/// Squared overlap of the spin-1 states of two M-pairs, each given as six
/// doubles (two M-vectors, any nonzero length).
///
/// # Safety
/// `a` and `b` must each point to 6 doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ks33_overlap2_mpairs(a: *const f64, b: *const f64, out: *mut f64) -> Ks33Status {
    guard(|| {
        let (a, b) = (mpair_from(a)?, mpair_from(b)?);
        *out_ref(out)? = overlap2_mpairs(&a, &b);
        Ok(())
    })
}

/// Writes the DIMACS CNF of the coloring constraints to `path`.
///
/// # Safety
/// `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ks33_export_cnf(set: Ks33Set, path: *const c_char, delete: u8) -> Ks33Status {
    guard(|| {
        let path = in_ref(path)?;
        let path = CStr::from_ptr(path).to_str().map_err(|_| fail(Error::InvalidArgument("path is not UTF-8".into())))?;
        let delete = (delete != 0).then_some(delete);
        let report = commands::export_cnf(set.into(), Path::new(path), delete, ks33::scalar::DEFAULT_TOL).map_err(fail)?;
        report_status(&report)
    })
}

fn report_status(r: &Report) -> Result<(), Ks33Status> {
    if r.passed {
        Ok(())
    } else {
        let names: Vec<_> = r.failed_checks().map(|c| c.name.as_str()).collect();
        set_error(format!("failed checks: {}", names.join(", ")));
        Err(Ks33Status::CheckFailed)
    }
}

/// Runs a verification command and returns its JSON report in `*json`
/// (free with [`ks33_string_free`]). The report is returned even when a
/// check fails, in which case the status is [`Ks33Status::CheckFailed`].
/// `samples` applies to family `verify` and to `majorana`; `ray` selects a
/// single deletion for `critical` (0 means all).
///
/// # Safety
/// `json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks33_run_report(
    command: Ks33Command,
    set: Ks33Set,
    samples: usize,
    ray: u8,
    seed: u64,
    tol: f64,
    json: *mut *mut c_char,
) -> Ks33Status {
    guard(|| {
        let json = out_ref(json)?;
        *json = ptr::null_mut();
        if !(tol.is_finite() && tol > 0.0) {
            return Err(fail(Error::InvalidArgument("tol must be positive".into())));
        }
        let set = CatalogSet::from(set);
        let report = match command {
            Ks33Command::Verify => commands::verify(set, &FamilyParams::peres(), samples, seed, tol),
            Ks33Command::Prove => commands::prove(set, ProveMode::Both, tol),
            Ks33Command::Critical => {
                let target = if ray == 0 { CriticalTarget::All } else { CriticalTarget::Ray(ray) };
                commands::critical(set, target, tol)
            }
            Ks33Command::Majorana => commands::majorana(samples, seed, tol),
        }
        .map_err(fail)?;
        *json = CString::new(report.to_json()).map_err(|_| fail(Error::InvalidArgument("NUL in report".into())))?.into_raw();
        report_status(&report)
    })
}
