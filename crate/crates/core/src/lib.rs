pub mod algebra;
pub mod cli;
pub mod loops;
pub mod quasi_lie;
pub mod string_ops;
pub mod surface;
pub mod verify;

#[cfg(test)]
mod testing;
