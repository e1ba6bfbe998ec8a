pub mod algebra;
pub mod complex;
pub mod decisions;
pub mod decompose;
pub mod harness;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod pmap;
pub mod verdict;
