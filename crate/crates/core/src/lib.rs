pub mod counterexample;
pub mod doubleflow;
pub mod flows;
pub mod laurent;
pub mod matchings;
pub mod network;
pub mod relations;
pub mod semiring;
pub mod subset;

pub use subset::Subset;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semirings.md")]
    mod semirings {}
    #[doc = include_str!("../../../book/src/flows.md")]
    mod flows {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/counterexamples.md")]
    mod counterexamples {}
    #[doc = include_str!("../../../book/src/double-flows.md")]
    mod double_flows {}
    #[doc = include_str!("../../../book/src/laurent.md")]
    mod laurent {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
