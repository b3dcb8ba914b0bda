//! Benchmark-only crate; see `benches/kernels.rs`.

/// Families exercised by the benchmarks.
pub fn bench_families() -> Vec<hspec_core::CatalogFamily> {
    use hspec_core::{CatalogFamily, FamilyId};
    vec![
        CatalogFamily::new(FamilyId::Lorentzian, 1.0, None).unwrap(),
        CatalogFamily::new(FamilyId::Gaussian, 1.0, None).unwrap(),
        CatalogFamily::new(FamilyId::Rectangle, 1.0, None).unwrap(),
    ]
}
