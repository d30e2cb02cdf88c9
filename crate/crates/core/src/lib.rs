//! Exact chain models of pointed mapping spaces over prime fields.

pub mod chains;
pub mod exactlin;
pub mod models;
pub mod simplicial;
pub mod surj;
