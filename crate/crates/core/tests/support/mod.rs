//! Independent reference computations for the integration tests.

#![allow(dead_code)]

pub mod faces;
pub mod matching;
pub mod tangents;
