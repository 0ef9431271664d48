//! Duplicial and cyclic objects from distributive laws of comonads, with
//! exact Hochschild, cyclic and Hopf-cyclic homology at desk scale.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod engine;
pub mod hochschild;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod nerve;
pub mod report;
pub mod scalar;
pub mod setlaws;
pub mod simplicial;
