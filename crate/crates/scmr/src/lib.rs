// SPDX-License-Identifier: Apache-2.0

//! File formats, SAT backends and compile pipelines for the `scmr` tool.

pub mod backend;
pub mod formats;
pub mod pipeline;
