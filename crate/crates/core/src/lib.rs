//! Exact algebra for derived intersections of Lagrangians in graded symplectic
//! models, twisted simplicial cohomology and torus GIT stratifications.

pub mod kirwan;
pub mod koszul;
pub mod lagrangian;
pub mod linalg;
pub mod localsys;
pub mod polyring;
