//! Torsion points and rational subtori of the first Alexander stratum,
//! largeness certificates built from them, spectral tests for unimodular
//! matrices, and covers of deficiency-two groups.

mod bp;
mod certificate;
mod kronecker;
mod scan;
mod subtorus;

pub use bp::{baumslag_pride, BpReport, BpRow};
pub use certificate::{
    admissible_prime, build_certificate, multiplicative_order, verify_certificate, CertificateRow,
    LargenessCertificate, NestingCheck, PRIME_SEARCH_BOUND,
};
pub use kronecker::{kronecker_test, verdict_product, KroneckerVerdict};
pub use scan::{scan_size, torsion_scan, ScanEntry, ScanReport};
pub use subtorus::{find_invariant_subtorus, subtorus_contained, Subtorus, SubtorusSearch, SubtorusTester};
