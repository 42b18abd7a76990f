//! Coxeter elements, sorting words, sortable elements and Cambrian lattices.

mod cvectors;
mod orientation;
mod sortable;
mod sorting;

pub use cvectors::{c_vectors, CVectorSet};
pub use orientation::{coxeter_element, orientation_of, CoxeterElement, Orientation};
pub use sortable::{
    cambrian_congruence, cambrian_congruence_with, cambrian_generating_edges, cambrian_lattice, sortable_by_filter,
    sortable_elements, CambrianLattice, SearchTree,
};
pub use sorting::{is_sortable, is_sortable_recursive, sorting_word, SortingWord};
