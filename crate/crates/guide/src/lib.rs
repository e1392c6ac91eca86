//! The book in `book/src`, one module per chapter, so that `cargo test`
//! compiles and runs every snippet.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/statevector.md")]
pub mod statevector {}
#[doc = include_str!("../../../book/src/ewl.md")]
pub mod ewl {}
#[doc = include_str!("../../../book/src/payoff.md")]
pub mod payoff {}
#[doc = include_str!("../../../book/src/equilibrium.md")]
pub mod equilibrium {}
#[doc = include_str!("../../../book/src/circuits.md")]
pub mod circuits {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
