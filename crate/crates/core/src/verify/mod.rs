//! Verification harnesses: exhaustive scans, integer-level divisibility checks,
//! seeded property suites and reproduction of the published examples.

pub mod bounds;
pub mod examples;
pub mod props;
pub mod scan;

pub use bounds::{scan_divisibility, spread_comparison, DivisibilityReport, SpreadComparison};
pub use examples::{reproduce_example, ExampleReport};
pub use props::{property_degree_two_sunflower, property_extension_sunflower, PropertyReport};
pub use scan::{scan_equidistant, scan_sunflowers, ScanOptions, ScanReport};
