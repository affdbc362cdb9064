//! Book chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/q-range.md")]
mod q_range {}
#[doc = include_str!("../../../book/src/functionals.md")]
mod functionals {}
#[doc = include_str!("../../../book/src/oracle.md")]
mod oracle {}
#[doc = include_str!("../../../book/src/bounds.md")]
mod bounds {}
#[doc = include_str!("../../../book/src/block-product.md")]
mod block_product {}
#[doc = include_str!("../../../book/src/harness.md")]
mod harness {}
#[doc = include_str!("../../../README.md")]
mod readme {}
