//! Independent checks: the split model of the second space and the
//! exhaustive orbit census over small prime fields.

pub mod census;
pub mod predict;
pub mod split;
