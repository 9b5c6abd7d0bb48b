//! C ABI for the tubular decision procedures: opaque handles for algebras,
//! modules and pp-pairs, integer status codes, and JSON strings for all
//! structured payloads. Every returned string is owned by the caller and
//! must be released with `tub_string_free`.
//!
//! Status codes: 0 success; 1 a negative but well-defined answer (not
//! contained / infeasible / not included); 2 undecided; negative values are
//! errors, with the message available from `tub_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use tubular::decide::{decide_inclusion, DecisionContext, Verdict};
use tubular::euler::EulerData;
use tubular::json as wire;
use tubular::module::ModulePresentation;
use tubular::pp::PpPair;
use tubular::presburger::{window_query, Endpoint};
use tubular::profile::slope_profile;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// The most recent error message on this thread; valid until the next
/// failing call.
#[no_mangle]
pub extern "C" fn tub_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `tub_*` function, or null.
#[no_mangle]
pub unsafe extern "C" fn tub_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn out_string(out: *mut *mut c_char, value: String) -> i32 {
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            0
        }
        Err(_) => {
            set_error("interior NUL in output");
            -1
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(-2);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        -2
    })
}

/// An algebra presentation together with its derived Euler data.
pub struct TubAlgebra {
    algebra: Arc<tubular::algebra::AlgebraPresentation>,
    euler: EulerData,
}

/// A module presentation over a `TubAlgebra`.
pub struct TubModule {
    module: ModulePresentation,
}

/// A pp-pair over a `TubAlgebra`.
pub struct TubPair {
    pair: PpPair,
}

/// Creates an algebra from a spec string such as `"C(2,2,2,2;2)"` or a
/// JSON presentation file path.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tub_algebra_new(
    spec: *const c_char,
    out: *mut *mut TubAlgebra,
) -> i32 {
    let spec = match read_str(spec) {
        Ok(s) => s,
        Err(c) => return c,
    };
    match wire::algebra_from_spec(spec).and_then(|algebra| {
        let euler = EulerData::new(&algebra)?;
        Ok(TubAlgebra { algebra, euler })
    }) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(h));
            0
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// # Safety
/// `h` must come from `tub_algebra_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn tub_algebra_free(h: *mut TubAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The algebra presentation as JSON.
///
/// # Safety
/// `h` must be a live algebra handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tub_algebra_json(h: *const TubAlgebra, out: *mut *mut c_char) -> i32 {
    let h = &*h;
    let j = wire::algebra_to_json(&h.algebra);
    out_string(out, serde_json::to_string_pretty(&j).unwrap())
}

fn parse_ivec(s: &str) -> Result<Vec<i64>, i32> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<i64>().map_err(|_| {
                set_error("bad integer vector");
                -2
            })
        })
        .collect()
}

/// Euler pairing of two comma-separated integer vectors.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_euler_pair(
    h: *const TubAlgebra,
    x: *const c_char,
    y: *const c_char,
    out: *mut i64,
) -> i32 {
    let h = &*h;
    let (xs, ys) = match (read_str(x), read_str(y)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    let (xv, yv) = match (parse_ivec(xs), parse_ivec(ys)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    match h.euler.pair(&xv, &yv) {
        Ok(v) => {
            *out = v;
            0
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// Quadratic form value of a comma-separated integer vector.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_euler_chi(
    h: *const TubAlgebra,
    x: *const c_char,
    out: *mut i64,
) -> i32 {
    let h = &*h;
    let xs = match read_str(x) {
        Ok(a) => a,
        Err(c) => return c,
    };
    let xv = match parse_ivec(xs) {
        Ok(a) => a,
        Err(c) => return c,
    };
    if xv.len() != h.euler.n {
        set_error("vector length mismatch");
        return -2;
    }
    *out = h.euler.chi(&xv);
    0
}

/// Slope of a vector as a string: a reduced rational, `inf` or `undefined`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_euler_slope(
    h: *const TubAlgebra,
    x: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    let h = &*h;
    let xs = match read_str(x) {
        Ok(a) => a,
        Err(c) => return c,
    };
    let xv = match parse_ivec(xs) {
        Ok(a) => a,
        Err(c) => return c,
    };
    out_string(out, h.euler.slope_of(&xv).as_string())
}

/// Whether the vector is an indecomposable dimension vector.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_euler_indec(
    h: *const TubAlgebra,
    x: *const c_char,
    out: *mut i32,
) -> i32 {
    let h = &*h;
    let xs = match read_str(x) {
        Ok(a) => a,
        Err(c) => return c,
    };
    let xv = match parse_ivec(xs) {
        Ok(a) => a,
        Err(c) => return c,
    };
    *out = i32::from(h.euler.is_indec_dimvector(&xv));
    0
}

/// The root-coset representatives as a JSON array of integer vectors.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tub_euler_omega_json(
    h: *const TubAlgebra,
    out: *mut *mut c_char,
) -> i32 {
    let h = &*h;
    out_string(out, serde_json::to_string(&h.euler.compute_omega()).unwrap())
}

/// Window query: endpoints are rationals or `"inf"`, `w` a comma-separated
/// vector, `zeros` a JSON array of integer vectors. Returns 0 with a witness
/// JSON, 1 when infeasible, negative on error.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_window_query_json(
    h: *const TubAlgebra,
    a: *const c_char,
    b: *const c_char,
    w: *const c_char,
    zeros: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    let h = &*h;
    let (a, b, w, z) = match (read_str(a), read_str(b), read_str(w), read_str(zeros)) {
        (Ok(a), Ok(b), Ok(w), Ok(z)) => (a, b, w, z),
        (Err(c), ..) | (_, Err(c), ..) | (_, _, Err(c), _) | (_, _, _, Err(c)) => return c,
    };
    let run = || -> tubular::Result<Option<Vec<i64>>> {
        let a = Endpoint::parse(a)?;
        let b = Endpoint::parse(b)?;
        let wv: Vec<i64> = w
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| tubular::Error::Parse("bad integer".into()))
            })
            .collect::<tubular::Result<_>>()?;
        let vs: Vec<Vec<i64>> = serde_json::from_str(z)?;
        window_query(&h.euler, &a, &b, &wv, &vs)
    };
    match run() {
        Ok(Some(x)) => {
            let slope = h.euler.slope_of(&x).as_string();
            out_string(
                out,
                serde_json::json!({"witness": x, "slope": slope}).to_string(),
            )
        }
        Ok(None) => {
            let _ = out_string(out, serde_json::json!({"infeasible": true}).to_string());
            1
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// Loads a module presentation from JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_module_new_json(
    h: *const TubAlgebra,
    json: *const c_char,
    out: *mut *mut TubModule,
) -> i32 {
    let h = &*h;
    let text = match read_str(json) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let run = || -> tubular::Result<ModulePresentation> {
        let j: wire::ModuleJson = serde_json::from_str(text)?;
        wire::module_from_json(&j, h.algebra.clone())
    };
    match run() {
        Ok(module) => {
            *out = Box::into_raw(Box::new(TubModule { module }));
            0
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// # Safety
/// `m` must come from `tub_module_new_json`, or be null.
#[no_mangle]
pub unsafe extern "C" fn tub_module_free(m: *mut TubModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension vector of a module as a JSON array.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tub_module_dimvec_json(
    m: *const TubModule,
    out: *mut *mut c_char,
) -> i32 {
    let m = &*m;
    out_string(out, serde_json::to_string(&m.module.dim_vector()).unwrap())
}

/// Decomposition summary `{summands: [...], absolute: bool}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tub_module_decompose_json(
    m: *const TubModule,
    seed: u64,
    out: *mut *mut c_char,
) -> i32 {
    let m = &*m;
    match tubular::decomp::decompose(&m.module, seed) {
        Ok(d) => {
            let summands: Vec<_> = d
                .groups
                .iter()
                .map(|&(rep, mult)| {
                    serde_json::json!({
                        "dim_vector": d.factors[rep].module.dim_vector(),
                        "multiplicity": mult,
                    })
                })
                .collect();
            out_string(
                out,
                serde_json::json!({
                    "summands": summands,
                    "absolute": d.all_absolute,
                    "certificate_verified": d.verify(&m.module),
                })
                .to_string(),
            )
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// Loads a pp-pair `{phi, psi}` from JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_pair_new_json(
    h: *const TubAlgebra,
    json: *const c_char,
    out: *mut *mut TubPair,
) -> i32 {
    let h = &*h;
    let text = match read_str(json) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let run = || -> tubular::Result<PpPair> {
        let j: wire::PairJson = serde_json::from_str(text)?;
        wire::pair_from_json(&j, h.algebra.clone())
    };
    match run() {
        Ok(pair) => {
            *out = Box::into_raw(Box::new(TubPair { pair }));
            0
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// # Safety
/// `p` must come from `tub_pair_new_json`, or be null.
#[no_mangle]
pub unsafe extern "C" fn tub_pair_free(p: *mut TubPair) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `dim phi(M) - dim psi(M)` on a module handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tub_pair_dim_at(
    p: *const TubPair,
    m: *const TubModule,
    out: *mut i64,
) -> i32 {
    let p = &*p;
    let m = &*m;
    match p.pair.dim_at(&m.module) {
        Ok(d) => {
            *out = d as i64;
            0
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// Slope profile of a pair: `{breakpoints: [...], vectors: [[...]]}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tub_slope_profile_json(
    h: *const TubAlgebra,
    p: *const TubPair,
    seed: u64,
    out: *mut *mut c_char,
) -> i32 {
    let h = &*h;
    let p = &*p;
    match slope_profile(&h.euler, &p.pair, seed) {
        Ok(profile) => out_string(
            out,
            serde_json::json!({
                "breakpoints": profile
                    .breakpoints
                    .iter()
                    .map(tubular::linalg::fmt_rat)
                    .collect::<Vec<_>>(),
                "vectors": profile.vectors,
            })
            .to_string(),
        ),
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

/// Decides `(pair) subseteq union(pairs)`. `pairs_json` is a JSON array of
/// pair objects. Returns 0 included, 1 not included, 2 unknown; the full
/// decision JSON (verdict, witness, log) is written to `out`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tub_decide_include_json(
    h: *const TubAlgebra,
    pair: *const TubPair,
    pairs_json: *const c_char,
    boundary_bound: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> i32 {
    let h = &*h;
    let pair = &*pair;
    let text = match read_str(pairs_json) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let run = || -> tubular::Result<tubular::decide::Decision> {
        let list: Vec<wire::PairJson> = serde_json::from_str(text)?;
        let pairs: Vec<PpPair> = list
            .iter()
            .map(|j| wire::pair_from_json(j, h.algebra.clone()))
            .collect::<tubular::Result<_>>()?;
        let mut ctx = DecisionContext::new(h.algebra.clone())?;
        ctx.boundary_bound = boundary_bound;
        ctx.seed = seed;
        decide_inclusion(&ctx, &pair.pair, &pairs)
    };
    match run() {
        Ok(d) => {
            let (verdict, code) = match &d.verdict {
                Verdict::Included => ("included", 0),
                Verdict::NotIncluded { .. } => ("not_included", 1),
                Verdict::Unknown { .. } => ("unknown", 2),
            };
            let _ = out_string(
                out,
                serde_json::json!({"verdict": verdict, "log": d.log}).to_string(),
            );
            code
        }
        Err(e) => {
            set_error(&e.to_string());
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn algebra_and_euler_through_the_abi() {
        unsafe {
            let mut alg: *mut TubAlgebra = ptr::null_mut();
            let spec = cstr("C(2,2,2,2;2)");
            assert_eq!(tub_algebra_new(spec.as_ptr(), &mut alg), 0);

            let mut chi = 0i64;
            let v = cstr("1,0,1,1,1,1");
            assert_eq!(tub_euler_chi(alg, v.as_ptr(), &mut chi), 0);
            assert_eq!(chi, 1);

            let mut pair = 0i64;
            let x = cstr("1,0,1,1,1,1");
            let y = cstr("0,1,0,0,0,2");
            assert_eq!(tub_euler_pair(alg, x.as_ptr(), y.as_ptr(), &mut pair), 0);
            assert_eq!(pair, 1); // y_inf - y_1 = 2 - 1

            let mut slope: *mut c_char = ptr::null_mut();
            let n = cstr("2,3,2,2,2,3");
            assert_eq!(tub_euler_slope(alg, n.as_ptr(), &mut slope), 0);
            assert_eq!(CStr::from_ptr(slope).to_str().unwrap(), "5/3");
            tub_string_free(slope);

            let mut indec = 0i32;
            let bad = cstr("1,0,0,0,0,1");
            assert_eq!(tub_euler_indec(alg, bad.as_ptr(), &mut indec), 0);
            assert_eq!(indec, 0);

            let mut omega: *mut c_char = ptr::null_mut();
            assert_eq!(tub_euler_omega_json(alg, &mut omega), 0);
            let parsed: Vec<Vec<i64>> =
                serde_json::from_str(CStr::from_ptr(omega).to_str().unwrap()).unwrap();
            assert_eq!(parsed.len(), 24);
            tub_string_free(omega);

            tub_algebra_free(alg);
        }
    }

    #[test]
    fn window_query_through_the_abi() {
        unsafe {
            let mut alg: *mut TubAlgebra = ptr::null_mut();
            let spec = cstr("C(2,2,2,2;2)");
            assert_eq!(tub_algebra_new(spec.as_ptr(), &mut alg), 0);
            let mut out: *mut c_char = ptr::null_mut();
            let (a, b, w, z) = (cstr("1"), cstr("2"), cstr("0,-1,0,0,0,1"), cstr("[]"));
            let code = tub_window_query_json(
                alg,
                a.as_ptr(),
                b.as_ptr(),
                w.as_ptr(),
                z.as_ptr(),
                &mut out,
            );
            assert_eq!(code, 0);
            let text = CStr::from_ptr(out).to_str().unwrap();
            assert!(text.contains("witness"));
            tub_string_free(out);
            // infeasible case returns 1
            let z1 = cstr("[[1,0,0,0,0,0]]");
            let w1 = cstr("1,1,1,1,1,1");
            let code = tub_window_query_json(
                alg,
                a.as_ptr(),
                b.as_ptr(),
                w1.as_ptr(),
                z1.as_ptr(),
                &mut out,
            );
            assert_eq!(code, 1);
            tub_string_free(out);
            tub_algebra_free(alg);
        }
    }

    #[test]
    fn errors_surface_through_last_error() {
        unsafe {
            let mut alg: *mut TubAlgebra = ptr::null_mut();
            let spec = cstr("C(9,9)");
            assert!(tub_algebra_new(spec.as_ptr(), &mut alg) < 0);
            let msg = CStr::from_ptr(tub_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
        }
    }

    #[test]
    fn pair_and_decide_through_the_abi() {
        unsafe {
            let mut alg: *mut TubAlgebra = ptr::null_mut();
            let spec = cstr("C(2,2,2,2;2)");
            assert_eq!(tub_algebra_new(spec.as_ptr(), &mut alg), 0);
            // build the Hom(X,-) pair in Rust, serialize, reload through C
            let cat = tubular::fixtures::Catalog::standard(2).unwrap();
            let pair = tubular::pp::rep_functor_pair(&cat.x_module().module).unwrap();
            let pj = serde_json::to_string(&wire::pair_to_json(&pair)).unwrap();
            let pj_c = cstr(&pj);
            let mut ph: *mut TubPair = ptr::null_mut();
            assert_eq!(tub_pair_new_json(alg, pj_c.as_ptr(), &mut ph), 0);

            let mj = serde_json::to_string(&wire::module_to_json(
                &cat.get("L1").unwrap().module,
            ))
            .unwrap();
            let mj_c = cstr(&mj);
            let mut mh: *mut TubModule = ptr::null_mut();
            assert_eq!(tub_module_new_json(alg, mj_c.as_ptr(), &mut mh), 0);
            let mut d = -1i64;
            assert_eq!(tub_pair_dim_at(ph, mh, &mut d), 0);
            assert_eq!(d, 1);

            let mut out: *mut c_char = ptr::null_mut();
            let empty = cstr("[]");
            let code =
                tub_decide_include_json(alg, ph, empty.as_ptr(), 2, 1, &mut out);
            assert_eq!(code, 1); // not included: interior witnesses exist
            tub_string_free(out);

            tub_module_free(mh);
            tub_pair_free(ph);
            tub_algebra_free(alg);
        }
    }
}
