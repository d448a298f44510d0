//! Exact free modules and tensor powers over an explicit commutative ring.

pub mod ring;
pub mod sum;
pub mod tensor;

pub use ring::{format_rational, parse_rational, Integers, IntegersMod, Rationals, Ring};
pub use sum::{tensor, tensor_right, Combination, ModuleElement, Tensor2, Tensor3};
pub use tensor::{antisym_e, cyclic_sum, pbar, permute, rotate, swap_outer, BiEndomorphism};
