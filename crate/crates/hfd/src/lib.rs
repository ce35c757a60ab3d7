//! Exact-arithmetic correction terms for 3-manifolds with standard
//! `HF^inf`, computed from finite graded-module models.

pub mod catalog;
pub mod dinv;
pub mod exterior;
pub mod files;
pub mod functors;
pub mod grading;
pub mod hfmodel;
pub mod intlinalg;
pub mod obstruct;
