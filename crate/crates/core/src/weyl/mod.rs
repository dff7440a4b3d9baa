//! Weyl groups of classical type as groups of signed permutations.

mod descriptor;
mod perm;
mod subgroup;

pub use descriptor::{WeylDescriptor, WeylFamily};
#[allow(unused_imports)]
pub(crate) use descriptor::type_a_roots;
pub use perm::SignedPerm;
pub use subgroup::{conjugacy_classes, coset_space, enumerate_subgroup, Coset, SubgroupSpec};

/// Largest number of coordinates a [`SignedPerm`] can act on.
pub const MAX_RANK: usize = 16;

/// Enumeration cap, `2^8 * 8!`.
pub const MAX_ORDER: u128 = 256 * 40320;

/// `compose(a, b) = a * b`, with a rank check.
pub fn compose(a: &SignedPerm, b: &SignedPerm) -> crate::Result<SignedPerm> {
    a.compose(b)
}

pub fn longest_element(d: &WeylDescriptor) -> SignedPerm {
    d.longest_element()
}

pub fn length(d: &WeylDescriptor, w: &SignedPerm) -> crate::Result<usize> {
    d.length(w)
}
