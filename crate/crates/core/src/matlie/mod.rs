//! Dense matrices over prime fields, rationals and polynomial rings:
//! nilpotence and `p`-nilpotence degrees, Jordan types, the Jacobson
//! defect, the Hausdorff product and simultaneous strict triangularization.

mod linalg;
mod matrix;
mod nilpotent;
mod triangularize;

pub use linalg::{from_columns, inverse, null_space, rank, rref};
pub use matrix::{FpMatrix, Matrix, PolyMatrix, QMatrix};
pub use nilpotent::{
    bch, exp_nilpotent, jacobson_defect, jordan_block, jordan_matrix, jordan_type,
    log_unipotent, nilpotence_degree, p_exponent_for_degree, p_nilpotence_degree, rank_profile,
    Partition,
};
pub use triangularize::simultaneous_strict_triangularize;

/// Multiplicative order of a unipotent matrix over `F_p`, found by
/// iterated `p`-th powers. Returns `None` if no `p^k` with `k <= max_k`
/// gives the identity.
pub fn unipotent_order(u: &FpMatrix, max_k: u32) -> Option<u64> {
    let p = u.prime() as u64;
    let mut pow = u.clone();
    let mut order = 1u64;
    for _ in 0..=max_k {
        if pow.is_identity() {
            return Some(order);
        }
        pow = pow.pow(p);
        order *= p;
    }
    None
}
