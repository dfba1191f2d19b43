//! C ABI for the flipcycles library.
//!
//! Artifacts (generated codes and cycles) are held behind an opaque
//! `FcArtifact` handle. Every fallible entry point returns an `FcStatus`;
//! results are written through out-pointers. Strings returned by this
//! library are NUL terminated, owned by the caller and must be released
//! with `fc_string_free`; handles with `fc_artifact_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flipcycles::assoc_rainbow::r_rainbow_cycle;
use flipcycles::balanced_all::{balanced, lift_rainbow};
use flipcycles::cadj::balanced_cadj;
use flipcycles::format::{Artifact, Format, Payload, Target};
use flipcycles::permutahedron::{rainbow2, rainbow3};
use flipcycles::verify::verify_artifact;
use flipcycles::Error;

/// Opaque handle to a generated or parsed artifact.
pub struct FcArtifact {
    inner: Artifact,
}

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    /// Success.
    FcOk = 0,
    /// A required pointer argument was null.
    FcNullArgument = 1,
    /// Parameters outside the supported domain (order, r, m, kind).
    FcInvalidArgument = 2,
    /// The construction failed an internal consistency check.
    FcConstructionFailed = 3,
    /// The input text could not be parsed as an artifact.
    FcParseFailed = 4,
    /// The artifact replayed cleanly but failed verification.
    FcVerificationFailed = 5,
    /// A panic was caught at the language boundary.
    FcInternalError = 6,
}

/// Kinds of artifacts that can be generated.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcKind {
    /// Balanced Gray code on S_n, all transpositions.
    FcPermAll = 0,
    /// Balanced Gray code on S_n, cyclically adjacent transpositions.
    FcPermCadj = 1,
    /// 2- or 3-rainbow cycle under adjacent transpositions.
    FcPermAdjRainbow = 2,
    /// r-rainbow cycle on triangulations of the n-gon.
    FcAssoc = 3,
}

/// Output text encodings.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcFormat {
    FcText = 0,
    FcJson = 1,
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::Domain(_) => FcStatus::FcInvalidArgument,
        Error::Construction(_) => FcStatus::FcConstructionFailed,
        Error::Parse(_) => FcStatus::FcParseFailed,
        Error::Verification(_) => FcStatus::FcVerificationFailed,
        Error::Io(_) => FcStatus::FcInternalError,
    }
}

fn build(kind: FcKind, n: u32, r: u32, m: u32) -> Result<Artifact, Error> {
    let r = (r != 0).then_some(r);
    let m = (m != 0).then_some(m);
    match kind {
        FcKind::FcPermAll => {
            if r.is_some() {
                return Err(Error::domain("r is not valid for perm-all"));
            }
            let payload = match m {
                Some(m) => Payload::Perm(lift_rainbow(&balanced(m)?, n)?),
                None => Payload::Perm(balanced(n)?.code),
            };
            Ok(Artifact {
                target: Target::PermAll,
                n,
                r: None,
                m,
                payload,
            })
        }
        FcKind::FcPermCadj => {
            if r.is_some() || m.is_some() {
                return Err(Error::domain("r/m are not valid for perm-cadj"));
            }
            Ok(Artifact {
                target: Target::PermCadj,
                n,
                r: None,
                m: None,
                payload: Payload::Perm(balanced_cadj(n)?.code),
            })
        }
        FcKind::FcPermAdjRainbow => {
            if m.is_some() {
                return Err(Error::domain("m is not valid for perm-adj-rainbow"));
            }
            let code = match r {
                Some(2) => rainbow2(n)?,
                Some(3) => rainbow3(n)?,
                _ => return Err(Error::domain("r must be 2 or 3")),
            };
            Ok(Artifact {
                target: Target::PermAdjRainbow,
                n,
                r,
                m: None,
                payload: Payload::Perm(code.code),
            })
        }
        FcKind::FcAssoc => {
            if m.is_some() {
                return Err(Error::domain("m is not valid for assoc"));
            }
            let r = r.ok_or_else(|| Error::domain("assoc needs r"))?;
            Ok(Artifact {
                target: Target::Assoc,
                n,
                r: Some(r),
                m: None,
                payload: Payload::Assoc(r_rainbow_cycle(n, r)?),
            })
        }
    }
}

fn guarded(f: impl FnOnce() -> FcStatus) -> FcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(FcStatus::FcInternalError)
}

/// Generates an artifact. Pass 0 for `r` or `m` when the parameter does not
/// apply. On success `*out` owns the new handle.
#[no_mangle]
pub extern "C" fn fc_generate(
    kind: FcKind,
    n: u32,
    r: u32,
    m: u32,
    out: *mut *mut FcArtifact,
) -> FcStatus {
    if out.is_null() {
        return FcStatus::FcNullArgument;
    }
    guarded(|| match build(kind, n, r, m) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(FcArtifact { inner })) };
            FcStatus::FcOk
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub extern "C" fn fc_artifact_free(artifact: *mut FcArtifact) {
    if !artifact.is_null() {
        drop(unsafe { Box::from_raw(artifact) });
    }
}

/// Number of flips in the artifact, or 0 for null.
#[no_mangle]
pub extern "C" fn fc_artifact_flip_count(artifact: *const FcArtifact) -> u64 {
    let Some(a) = (unsafe { artifact.as_ref() }) else {
        return 0;
    };
    match &a.inner.payload {
        Payload::Perm(seq) => seq.flips().len() as u64,
        Payload::Assoc(c) => c.flips.len() as u64,
    }
}

/// Order parameter n of the artifact, or 0 for null.
#[no_mangle]
pub extern "C" fn fc_artifact_order(artifact: *const FcArtifact) -> u32 {
    unsafe { artifact.as_ref() }.map_or(0, |a| a.inner.n)
}

/// Color multiplicity r of the artifact; 0 when not applicable or null.
#[no_mangle]
pub extern "C" fn fc_artifact_multiplicity(artifact: *const FcArtifact) -> u32 {
    unsafe { artifact.as_ref() }.and_then(|a| a.inner.r).unwrap_or(0)
}

/// Re-certifies the artifact with the verifier matching its kind.
#[no_mangle]
pub extern "C" fn fc_artifact_verify(artifact: *const FcArtifact) -> FcStatus {
    let Some(a) = (unsafe { artifact.as_ref() }) else {
        return FcStatus::FcNullArgument;
    };
    guarded(|| match verify_artifact(&a.inner) {
        Ok(cert) if cert.pass() => FcStatus::FcOk,
        Ok(_) => FcStatus::FcVerificationFailed,
        Err(e) => status_of(&e),
    })
}

/// Re-certifies the artifact and writes the full report to `*out` as an
/// owned string, regardless of pass or fail.
#[no_mangle]
pub extern "C" fn fc_artifact_verify_report(
    artifact: *const FcArtifact,
    out: *mut *mut c_char,
) -> FcStatus {
    let Some(a) = (unsafe { artifact.as_ref() }) else {
        return FcStatus::FcNullArgument;
    };
    if out.is_null() {
        return FcStatus::FcNullArgument;
    }
    guarded(|| match verify_artifact(&a.inner) {
        Ok(cert) => {
            let Ok(s) = CString::new(cert.render()) else {
                return FcStatus::FcInternalError;
            };
            unsafe { *out = s.into_raw() };
            if cert.pass() {
                FcStatus::FcOk
            } else {
                FcStatus::FcVerificationFailed
            }
        }
        Err(e) => status_of(&e),
    })
}

/// Serializes the artifact; `*out` receives an owned string.
#[no_mangle]
pub extern "C" fn fc_artifact_render(
    artifact: *const FcArtifact,
    format: FcFormat,
    out: *mut *mut c_char,
) -> FcStatus {
    let Some(a) = (unsafe { artifact.as_ref() }) else {
        return FcStatus::FcNullArgument;
    };
    if out.is_null() {
        return FcStatus::FcNullArgument;
    }
    let fmt = match format {
        FcFormat::FcText => Format::Text,
        FcFormat::FcJson => Format::Json,
    };
    guarded(|| match CString::new(a.inner.render(fmt)) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            FcStatus::FcOk
        }
        Err(_) => FcStatus::FcInternalError,
    })
}

/// Parses a serialized artifact (text or JSON, auto-detected). On success
/// `*out` owns the new handle.
#[no_mangle]
pub extern "C" fn fc_artifact_parse(text: *const c_char, out: *mut *mut FcArtifact) -> FcStatus {
    if text.is_null() || out.is_null() {
        return FcStatus::FcNullArgument;
    }
    let Ok(s) = (unsafe { CStr::from_ptr(text) }).to_str() else {
        return FcStatus::FcParseFailed;
    };
    guarded(|| match Artifact::parse(s) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(FcArtifact { inner })) };
            FcStatus::FcOk
        }
        Err(e) => match e {
            Error::Parse(_) | Error::Domain(_) => FcStatus::FcParseFailed,
            other => status_of(&other),
        },
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(kind: FcKind, n: u32, r: u32, m: u32) -> *mut FcArtifact {
        let mut h: *mut FcArtifact = ptr::null_mut();
        assert_eq!(fc_generate(kind, n, r, m, &mut h), FcStatus::FcOk);
        assert!(!h.is_null());
        h
    }

    #[test]
    fn generate_query_free() {
        let h = gen(FcKind::FcPermAll, 4, 0, 0);
        assert_eq!(fc_artifact_order(h), 4);
        assert_eq!(fc_artifact_multiplicity(h), 0);
        assert_eq!(fc_artifact_flip_count(h), 23);
        assert_eq!(fc_artifact_verify(h), FcStatus::FcOk);
        fc_artifact_free(h);
    }

    #[test]
    fn roundtrip_through_text() {
        let h = gen(FcKind::FcPermCadj, 4, 0, 0);
        for format in [FcFormat::FcText, FcFormat::FcJson] {
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(fc_artifact_render(h, format, &mut s), FcStatus::FcOk);
            let mut h2: *mut FcArtifact = ptr::null_mut();
            assert_eq!(fc_artifact_parse(s, &mut h2), FcStatus::FcOk);
            assert_eq!(fc_artifact_flip_count(h2), fc_artifact_flip_count(h));
            assert_eq!(fc_artifact_verify(h2), FcStatus::FcOk);
            fc_artifact_free(h2);
            fc_string_free(s);
        }
        fc_artifact_free(h);
    }

    #[test]
    fn verify_report_text() {
        let h = gen(FcKind::FcPermAdjRainbow, 6, 2, 0);
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(fc_artifact_verify_report(h, &mut s), FcStatus::FcOk);
        let report = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        assert!(report.contains("pass: true"), "{report}");
        fc_string_free(s);
        fc_artifact_free(h);
    }

    #[test]
    fn rejects_bad_arguments() {
        let mut h: *mut FcArtifact = ptr::null_mut();
        assert_eq!(
            fc_generate(FcKind::FcPermAll, 4, 0, 0, ptr::null_mut()),
            FcStatus::FcNullArgument
        );
        assert_eq!(
            fc_generate(FcKind::FcPermCadj, 5, 0, 0, &mut h),
            FcStatus::FcInvalidArgument
        );
        assert_eq!(
            fc_generate(FcKind::FcPermAdjRainbow, 6, 4, 0, &mut h),
            FcStatus::FcInvalidArgument
        );
        assert_eq!(
            fc_generate(FcKind::FcAssoc, 10, 2, 0, &mut h),
            FcStatus::FcInvalidArgument
        );
        assert_eq!(fc_artifact_verify(ptr::null()), FcStatus::FcNullArgument);
        assert_eq!(fc_artifact_flip_count(ptr::null()), 0);

        let mut h2: *mut FcArtifact = ptr::null_mut();
        let garbage = CString::new("graycode v1 kind=perm-all n=bogus").unwrap();
        assert_eq!(
            fc_artifact_parse(garbage.as_ptr(), &mut h2),
            FcStatus::FcParseFailed
        );
        assert_eq!(fc_artifact_parse(ptr::null(), &mut h2), FcStatus::FcNullArgument);
    }

    #[test]
    fn corrupted_artifact_fails_verification() {
        let h = gen(FcKind::FcPermAll, 4, 0, 0);
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(fc_artifact_render(h, FcFormat::FcText, &mut s), FcStatus::FcOk);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        fc_string_free(s);
        fc_artifact_free(h);

        // Insert a flip twice in a row: the pair cancels, so the closing
        // still matches, but the walk revisits a permutation and the
        // transition counts go off.
        let mut lines: Vec<&str> = text.lines().collect();
        let pos = lines.iter().rposition(|l| l.starts_with("t ")).unwrap();
        lines.insert(pos, lines[pos]);
        lines.insert(pos, lines[pos]);
        let corrupted = CString::new(lines.join("\n")).unwrap();
        let mut h2: *mut FcArtifact = ptr::null_mut();
        assert_eq!(fc_artifact_parse(corrupted.as_ptr(), &mut h2), FcStatus::FcOk);
        assert_eq!(fc_artifact_verify(h2), FcStatus::FcVerificationFailed);
        let mut rep: *mut c_char = ptr::null_mut();
        assert_eq!(
            fc_artifact_verify_report(h2, &mut rep),
            FcStatus::FcVerificationFailed
        );
        let report = unsafe { CStr::from_ptr(rep) }.to_str().unwrap().to_string();
        assert!(report.contains("pass: false"), "{report}");
        fc_string_free(rep);
        fc_artifact_free(h2);
    }

    #[test]
    fn header_is_generated() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("flipcycles.h");
        let text = std::fs::read_to_string(header).unwrap();
        for name in [
            "fc_generate",
            "fc_artifact_free",
            "fc_artifact_verify",
            "fc_artifact_render",
            "fc_artifact_parse",
            "fc_string_free",
            "typedef struct FcArtifact FcArtifact;",
        ] {
            assert!(text.contains(name), "header missing {name}");
        }
    }
}
