//! Rips filtrations reduced over Z/2 into annotated barcodes.

mod barcode;
mod filtration;
mod oracle;
mod reduction;

pub use barcode::{cmp_interval, compute_barcode, compute_barcode_capped, extract_barcode, Bar, Barcode};
pub use filtration::{
    build_filtration, build_filtration_with, canonical_ordering, FilteredComplex, FilteredSimplex, Simplex,
    SimplexOrdering, DEFAULT_SIMPLEX_CAP,
};
pub use oracle::{naive_homology_oracle, ORACLE_VERTEX_CAP};
pub use reduction::{boundary_columns, mst_from_reduction, reduce, reduce_tracking_v, ReducedMatrix};
