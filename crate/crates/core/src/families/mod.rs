//! The experiment families: univariate discriminants, resultants of two
//! trinomials, and multiples of the linear form `x1 + x2 + x3 + x4`.

mod instances;
mod report;

pub use instances::{
    linear_form, monomials_of_degree, multinomial_marked_poly, trinomial_resultant, univariate_discriminant, Family,
    Instance, Shape, Sign,
};
pub use report::{percentage, reference, run_scan, scan_instance, InstanceRecord, Reference, ScanOptions, ScanReport, Totals};
