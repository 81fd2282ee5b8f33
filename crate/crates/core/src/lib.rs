//! Slice-regular Bergman theory of the second kind over the quaternions:
//! kernels, slice quadrature, finite-difference oracles and the integral
//! transforms built from them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod differential;
pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod quaternion;
pub mod sampling;
pub mod slice;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use kernels::{BallForm, HalfSpaceForm, KernelId};
pub use quaternion::{slice_decompose, Quaternion, SlicePoint, UnitImaginary};
pub use slice::{DomainId, FnMap, Holo, QuaternionMap, SliceFunction, StemPair};
