//! File formats: family documents (JSON and plain text) and claim reports.

mod family_doc;
mod report_doc;

pub use family_doc::{parse_family, FamilyDocument};
pub use report_doc::{
    input_digest, serialize_report, write_trace, FamilyBlock, ReportDocument, ReportFormat, Violations, REPORT_SCHEMA,
};
