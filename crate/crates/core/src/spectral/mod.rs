//! Representation data of the Hecke algebra and the closed-form distances and
//! bounds built from it.

pub mod bounds;
pub mod closed_form;
pub mod irreps;
pub mod partition;

pub use bounds::{
    degree_bound_checks, dihedral_random_scan_bound, dihedral_single_scan_bound, hypercube_bound, lead_constant_table,
    symmetric_long_scan_averaged_bound, symmetric_long_scan_bound, symmetric_short_scan_averaged_bound,
    symmetric_short_scan_bound, BoundValue, DegreeBoundChecks, HypercubeScan, LeadConstantRow,
};
pub use closed_form::{
    dihedral_long_scan_avg_chisq, dihedral_long_scan_chisq, dihedral_random_scan_chisq, long_scan_avg_chisq,
    long_scan_chisq, long_scan_power_trace, random_scan_chisq_hypercube, short_scan_chisq_symmetric,
    short_scan_power_trace,
};
pub use irreps::{irreps, nontrivial_content_classes, ContentClass, IrrepData, IrrepLabel};
pub use partition::{content_of_n_box, partitions, standard_tableaux, Partition, StandardTableau};
