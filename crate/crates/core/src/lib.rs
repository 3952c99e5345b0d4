//! Exact computations with quiver representations: Euler forms, Schur roots,
//! canonical decompositions, weight spaces of semi-invariant rings and
//! prehomogeneity checks for small bound quivers.

pub mod fixtures;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod si;
