//! Constructions of the digraph families and operators.

pub mod cayley;
pub mod dl;
pub mod j;
pub mod m;
pub mod ops;
pub mod y;

pub use cayley::{make_cayley_free_product_ball, make_cayley_free_product_mixed, make_t_ball, Word};
pub use dl::{make_dl_ball, make_dl_ball_with, make_dl_tree_ball, Bijections};
pub use j::make_j_segment;
pub use m::{make_m_ball, make_m_ball_direct};
pub use ops::{contract_matching, line_ball, line_digraph, star_expand, tensor_product};
pub use y::{make_y_ball, make_y_ball_radius, make_y_ball_with, YGluing};
