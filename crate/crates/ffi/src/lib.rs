//! C ABI for the certification library.
//!
//! Callers build or parse a graph behind an opaque [`Tk5Graph`] handle, run
//! [`tk5_certify`] to obtain an opaque [`Tk5Certificate`], and exchange
//! certificates as JSON. Every fallible entry point returns a [`Tk5Status`]
//! code; out-parameters are written only on `TK5_STATUS_OK`. Null required
//! pointers are rejected with `TK5_STATUS_NULL_ARGUMENT` rather than
//! dereferenced, and panics never unwind across the boundary.
//!
//! Each handle owns its data: release graphs with [`tk5_graph_free`],
//! certificates with [`tk5_certificate_free`], and strings returned by this
//! library with [`tk5_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tk5cert::certify::{certify, verify_certificate, Certificate, CertificateKind};
use tk5cert::format::parse_auto;
use tk5cert::graph::Graph;
use tk5cert::{Budget, Error};

/// An owned graph. Construct with [`tk5_graph_new`] or [`tk5_graph_parse`].
pub struct Tk5Graph(Graph);

/// An owned certificate. Produce with [`tk5_certify`] or
/// [`tk5_certificate_from_json`].
pub struct Tk5Certificate(Certificate);

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tk5Status {
    /// The call succeeded; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Arguments violate the call's contract (vertex out of range, loop
    /// edge, certificate kind/payload mismatch, ...).
    BadArgument = 2,
    /// Input text is not valid graph6, edge-list, or certificate JSON.
    ParseError = 3,
    /// The graph exceeds the 64-vertex capacity.
    TooLarge = 4,
    /// The search budget ran out before a verdict was reached.
    BudgetExceeded = 5,
    /// The certifier exhausted every case the structure theorem allows;
    /// indicates an implementation bug, never a property of the input.
    TheoremViolation = 6,
    /// An internal invariant failed.
    Internal = 7,
}

/// The three certificate kinds, mirroring the JSON `kind` tag.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tk5CertificateKind {
    /// A verified K5-subdivision witness.
    Tk5 = 0,
    /// A verified planar embedding.
    Planar = 1,
    /// A verified vertex cut of order at most 4.
    SmallCut = 2,
}

fn status_of(e: &Error) -> Tk5Status {
    match e {
        Error::TooLarge { .. } => Tk5Status::TooLarge,
        Error::BudgetExceeded => Tk5Status::BudgetExceeded,
        Error::TheoremViolation(_) => Tk5Status::TheoremViolation,
        Error::Parse(_) | Error::Io(_) => Tk5Status::ParseError,
        Error::NotFound | Error::LiftFailed(_) => Tk5Status::Internal,
        _ => Tk5Status::BadArgument,
    }
}

/// Write a freshly boxed value through an out-pointer.
unsafe fn emit<T>(out: *mut *mut T, value: T) -> Tk5Status {
    if out.is_null() {
        return Tk5Status::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    Tk5Status::Ok
}

/// Create an empty graph on `n` vertices (at most 64).
///
/// # Safety
/// `out` must point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_new(n: usize, out: *mut *mut Tk5Graph) -> Tk5Status {
    match Graph::empty(n) {
        Ok(g) => emit(out, Tk5Graph(g)),
        Err(e) => status_of(&e),
    }
}

/// Parse a graph from text, accepting graph6 or an edge list (one `u v`
/// pair per line); the format is detected from the content.
///
/// # Safety
/// `text` must be a valid nul-terminated string and `out` must point to
/// writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_parse(
    text: *const c_char,
    out: *mut *mut Tk5Graph,
) -> Tk5Status {
    if text.is_null() {
        return Tk5Status::NullArgument;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return Tk5Status::ParseError,
    };
    match parse_auto(s) {
        Ok(g) => emit(out, Tk5Graph(g)),
        Err(e) => status_of(&e),
    }
}

/// Add the undirected edge `u`–`v`. Re-adding an existing edge is an error,
/// as are loops and out-of-range endpoints.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_add_edge(
    g: *mut Tk5Graph,
    u: usize,
    v: usize,
) -> Tk5Status {
    if g.is_null() {
        return Tk5Status::NullArgument;
    }
    match (*g).0.add_edge(u, v) {
        Ok(()) => Tk5Status::Ok,
        Err(e) => status_of(&e),
    }
}

/// Number of vertices; 0 when `g` is null.
///
/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_order(g: *const Tk5Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    (*g).0.n()
}

/// Number of edges; 0 when `g` is null.
///
/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_size(g: *const Tk5Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    (*g).0.edges().len()
}

/// Release a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must be null or a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk5_graph_free(g: *mut Tk5Graph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Certify the graph: exactly one of a TK5 witness, a planar embedding, or
/// a vertex cut of order ≤ 4. `force_tk5` skips the cut and planarity
/// stages; `budget_steps = 0` selects the default search budget.
///
/// # Safety
/// `g` must be a live handle and `out` must point to writable memory for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn tk5_certify(
    g: *const Tk5Graph,
    force_tk5: bool,
    budget_steps: u64,
    out: *mut *mut Tk5Certificate,
) -> Tk5Status {
    if g.is_null() || out.is_null() {
        return Tk5Status::NullArgument;
    }
    let graph = &(*g).0;
    let budget = if budget_steps == 0 {
        Budget::default()
    } else {
        Budget::with_steps(budget_steps)
    };
    match catch_unwind(AssertUnwindSafe(|| certify(graph, force_tk5, budget))) {
        Ok(Ok(c)) => emit(out, Tk5Certificate(c)),
        Ok(Err(e)) => status_of(&e),
        Err(_) => Tk5Status::Internal,
    }
}

/// Re-check a certificate against a graph. On `TK5_STATUS_OK`, `*valid`
/// says whether the certificate is correct for that graph; a structurally
/// ill-formed pairing of kind and payload reports `TK5_STATUS_BAD_ARGUMENT`
/// instead.
///
/// # Safety
/// `g` and `c` must be live handles and `valid` must point to writable
/// memory for one `bool`.
#[no_mangle]
pub unsafe extern "C" fn tk5_verify(
    g: *const Tk5Graph,
    c: *const Tk5Certificate,
    valid: *mut bool,
) -> Tk5Status {
    if g.is_null() || c.is_null() || valid.is_null() {
        return Tk5Status::NullArgument;
    }
    match catch_unwind(AssertUnwindSafe(|| verify_certificate(&(*g).0, &(*c).0))) {
        Ok(Ok(v)) => {
            *valid = v;
            Tk5Status::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => Tk5Status::Internal,
    }
}

/// The certificate's kind.
///
/// # Safety
/// `c` must be a live handle and `out` must point to writable memory for
/// one `Tk5CertificateKind`.
#[no_mangle]
pub unsafe extern "C" fn tk5_certificate_kind(
    c: *const Tk5Certificate,
    out: *mut Tk5CertificateKind,
) -> Tk5Status {
    if c.is_null() || out.is_null() {
        return Tk5Status::NullArgument;
    }
    *out = match (*c).0.kind {
        CertificateKind::Tk5 => Tk5CertificateKind::Tk5,
        CertificateKind::Planar => Tk5CertificateKind::Planar,
        CertificateKind::SmallCut => Tk5CertificateKind::SmallCut,
    };
    Tk5Status::Ok
}

/// Serialize a certificate to JSON. The returned string is owned by the
/// caller and must be released with [`tk5_string_free`].
///
/// # Safety
/// `c` must be a live handle and `out` must point to writable memory for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn tk5_certificate_to_json(
    c: *const Tk5Certificate,
    out: *mut *mut c_char,
) -> Tk5Status {
    if c.is_null() || out.is_null() {
        return Tk5Status::NullArgument;
    }
    let json = match serde_json::to_string(&(*c).0) {
        Ok(j) => j,
        Err(_) => return Tk5Status::Internal,
    };
    match CString::new(json) {
        Ok(s) => {
            *out = s.into_raw();
            Tk5Status::Ok
        }
        Err(_) => Tk5Status::Internal,
    }
}

/// Deserialize a certificate from JSON text.
///
/// # Safety
/// `text` must be a valid nul-terminated string and `out` must point to
/// writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tk5_certificate_from_json(
    text: *const c_char,
    out: *mut *mut Tk5Certificate,
) -> Tk5Status {
    if text.is_null() {
        return Tk5Status::NullArgument;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return Tk5Status::ParseError,
    };
    match serde_json::from_str::<Certificate>(s) {
        Ok(c) => emit(out, Tk5Certificate(c)),
        Err(_) => Tk5Status::ParseError,
    }
}

/// Release a certificate handle. Null is a no-op.
///
/// # Safety
/// `c` must be null or a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk5_certificate_free(c: *mut Tk5Certificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk5_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A static, nul-terminated name for a status code.
#[no_mangle]
pub extern "C" fn tk5_status_name(status: Tk5Status) -> *const c_char {
    let name: &'static [u8] = match status {
        Tk5Status::Ok => b"ok\0",
        Tk5Status::NullArgument => b"null argument\0",
        Tk5Status::BadArgument => b"bad argument\0",
        Tk5Status::ParseError => b"parse error\0",
        Tk5Status::TooLarge => b"graph too large\0",
        Tk5Status::BudgetExceeded => b"budget exceeded\0",
        Tk5Status::TheoremViolation => b"theorem violation\0",
        Tk5Status::Internal => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}
