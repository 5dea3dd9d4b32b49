pub mod classifier;
pub mod constructions;
pub mod coset;
pub mod graph;
pub mod numtheory;
pub mod perm;
pub mod presentation;
pub mod theorems;
