pub mod graph;
pub mod families;
pub mod domination;
pub mod report;
pub mod spectra;
pub mod perturbations;
pub mod enumeration;
