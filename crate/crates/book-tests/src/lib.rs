//! Runs the code blocks of the guide in `book/src` as doc-tests, one module
//! per chapter so a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/groups.md")]
mod groups {}

#[doc = include_str!("../../../book/src/chief-series.md")]
mod chief_series {}

#[doc = include_str!("../../../book/src/maximal.md")]
mod maximal {}

#[doc = include_str!("../../../book/src/probability.md")]
mod probability {}

#[doc = include_str!("../../../book/src/alpha.md")]
mod alpha {}

#[doc = include_str!("../../../book/src/constructions.md")]
mod constructions {}

#[doc = include_str!("../../../book/src/checks.md")]
mod checks {}
