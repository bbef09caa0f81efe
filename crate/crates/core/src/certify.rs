//! One-shot certification: for any graph, exactly one verified certificate.
//!
//! The decision order is cheap-first — (1) a vertex cut of order ≤ 4 when
//! one exists, (2) a planar embedding, (3) a TK5 witness — and the structure
//! theorem behind the library guarantees stage (3) succeeds exactly when
//! reached. A `None` out of stage (3) is therefore surfaced as
//! [`Error::TheoremViolation`]: it indicts the implementation, not the
//! input. Planar-and-low-connectivity graphs take the cut branch; planar
//! 5-connected graphs take the embedding branch; the order is an artifact
//! choice and is recorded in the certificate's strategy trace.

use crate::graph::{self, Cut, Graph};
use crate::planarity::{planarity, PlanarEmbedding, Planarity};
use crate::tk5::{find_tk5_structured, verify_tk5, Tk5Witness};
use crate::{format, Budget, Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::Instant;

/// Which of the three mutually exclusive outcomes a certificate claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    #[serde(rename = "TK5")]
    Tk5,
    Planar,
    SmallCut,
}

/// The verifiable object backing a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CertificatePayload {
    #[serde(rename = "TK5")]
    Tk5(Tk5Witness),
    Planar(PlanarEmbedding),
    SmallCut(Cut),
}

/// Provenance carried with every certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateMeta {
    /// SHA-256 over the vertex count and canonical edge list of the input.
    pub input_sha256: String,
    /// Human-readable trail of the decisions and search stages taken.
    pub strategy: Vec<String>,
    /// Wall-clock milliseconds spent producing the certificate.
    pub elapsed_ms: u64,
}

/// A certificate: kind, payload, and provenance. Produced by [`certify`],
/// checked from scratch by [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub payload: CertificatePayload,
    pub meta: CertificateMeta,
}

/// Stable input fingerprint: vertex count plus the sorted edge list.
pub fn input_hash(g: &Graph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("n={}\n", g.n()));
    hasher.update(format::write_edge_list(g));
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Produce the unique certificate for `g` under the cut → planar → TK5
/// decision order. With `force_tk5` the first two stages are skipped and
/// only a TK5 witness is accepted.
pub fn certify(g: &Graph, force_tk5: bool, budget: Budget) -> Result<Certificate> {
    if g.n() > budget.max_vertices {
        return Err(Error::TooLarge {
            n: g.n(),
            max: budget.max_vertices,
        });
    }
    let started = Instant::now();
    let mut strategy = Vec::new();
    let finish = |kind, payload, mut strategy: Vec<String>, started: Instant| {
        strategy.push(format!("done in {:?}", started.elapsed()));
        Certificate {
            kind,
            payload,
            meta: CertificateMeta {
                input_sha256: input_hash(g),
                strategy,
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
        }
    };

    if force_tk5 {
        strategy.push("decision order: TK5 only (forced)".into());
    } else {
        strategy.push("decision order: small cut, planar, TK5".into());
        if g.n() >= 2 {
            let (kappa, cut) = graph::vertex_connectivity(g)?;
            strategy.push(format!("vertex connectivity {kappa}"));
            if kappa <= 4 {
                if let Some(cut) = cut {
                    strategy.push(format!("minimum cut of order {}", cut.order()));
                    return Ok(finish(
                        CertificateKind::SmallCut,
                        CertificatePayload::SmallCut(cut),
                        strategy,
                        started,
                    ));
                }
                // Complete graphs on ≤ 5 vertices: κ ≤ 4 but no cut exists.
                strategy.push("no cut exists (complete graph)".into());
            }
        }
        match planarity(g) {
            Planarity::Planar(emb) => {
                debug_assert!(emb.verify(g));
                strategy.push("planar embedding found".into());
                return Ok(finish(
                    CertificateKind::Planar,
                    CertificatePayload::Planar(emb),
                    strategy,
                    started,
                ));
            }
            Planarity::Kuratowski(_) => strategy.push("nonplanar".into()),
        }
    }

    let (witness, trace) = find_tk5_structured(g, budget)?;
    strategy.extend(trace);
    match witness {
        Some(w) => {
            debug_assert!(verify_tk5(g, &w).is_valid());
            Ok(finish(
                CertificateKind::Tk5,
                CertificatePayload::Tk5(w),
                strategy,
                started,
            ))
        }
        None => Err(Error::TheoremViolation(if force_tk5 {
            "no TK5 found with stages 1–2 skipped; the input may be planar or \
             low-connectivity"
                .into()
        } else {
            "5-connected nonplanar graph yielded no TK5 witness".into()
        })),
    }
}

/// Re-check a certificate against `g` from scratch, sharing no state with
/// the producer. `Ok(false)` means the payload fails its own verifier (or
/// the small-cut size bound); [`Error::KindMismatch`] means the declared
/// kind and the payload variant disagree.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> Result<bool> {
    match (&c.kind, &c.payload) {
        (CertificateKind::Tk5, CertificatePayload::Tk5(w)) => Ok(verify_tk5(g, w).is_valid()),
        (CertificateKind::Planar, CertificatePayload::Planar(emb)) => Ok(emb.verify(g)),
        (CertificateKind::SmallCut, CertificatePayload::SmallCut(cut)) => {
            Ok(cut.order() <= 4 && cut.verify(g))
        }
        (kind, payload) => Err(Error::KindMismatch(format!(
            "kind {kind:?} does not match payload {}",
            match payload {
                CertificatePayload::Tk5(_) => "TK5",
                CertificatePayload::Planar(_) => "Planar",
                CertificatePayload::SmallCut(_) => "SmallCut",
            }
        ))),
    }
}
