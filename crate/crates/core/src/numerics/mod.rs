//! Numerical substrate: polynomial algebra, dense eigensolver, Newton
//! iteration and the special functions behind the pseudo ground states.

pub mod eigen;
pub mod laurent;
pub mod matrix;
pub mod newton;
pub mod poly;
pub mod special;

pub use eigen::{eig_general, eigenvalues, EigenDecomposition};
pub use laurent::Laurent;
pub use matrix::{solve_linear, CMatrix};
pub use newton::{newton_best, newton_solve, NewtonOptions, NewtonReport};
pub use poly::{poly_divide_exact, poly_mul, poly_roots, poly_shift, Polynomial, Var};
pub use special::{log_gamma, q_pochhammer_inf};
