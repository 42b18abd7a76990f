//! Finite lattices on explicit Hasse diagrams, polygonal intervals, local
//! forcing and lattice congruences.

mod congruence;
mod export;
mod hasse;
mod polygon;

pub use congruence::{
    congruence_from_edges, local_forcing_closure, Congruence, CongruenceExport, EdgeSet, LocalForcing,
};
pub use export::{to_dot, DotStyle};
pub use hasse::{is_isomorphism, is_lattice_homomorphism, HasseLattice};
pub use polygon::{polygonal_intervals, PolygonalInterval};
