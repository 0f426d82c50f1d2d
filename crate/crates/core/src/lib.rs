pub mod dga;
pub mod graded_lines;
pub mod ingest;
pub mod linalg;
pub mod scenario;
pub mod sign;

pub use sign::Sign;
