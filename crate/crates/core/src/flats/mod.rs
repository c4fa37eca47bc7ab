//! Subspaces and flats of F_2^n, their enumeration, and sum-freedom.

mod enumerate;
mod space;
mod sumfree;

pub use enumerate::{enumerate_flats, enumerate_subspaces, flat_count, gaussian_binomial, Grassmannian};
pub use space::{Flat, Subspace, MAX_AMBIENT_DIM};
pub use sumfree::{
    coset_witnesses, coset_witnesses_distinct, derivative_restriction, find_vanishing_flat,
    is_sumfree, order_profile, order_profile_in, witness, OrderProfile,
};

pub(crate) use enumerate::to_u128;
pub(crate) use space::gray_sum;
