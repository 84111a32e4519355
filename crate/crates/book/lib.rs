//! Every chapter of the guide in `book/src` as a module, so `cargo test`
//! runs its code listings as doc-tests.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/monomials.md")]
pub mod monomials {}
#[doc = include_str!("../../book/src/hilbert.md")]
pub mod hilbert {}
#[doc = include_str!("../../book/src/ranks.md")]
pub mod ranks {}
#[doc = include_str!("../../book/src/lefschetz.md")]
pub mod lefschetz {}
#[doc = include_str!("../../book/src/inverse.md")]
pub mod inverse {}
#[doc = include_str!("../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
