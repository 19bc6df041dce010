//! Command-line front end: model documents, renderings and the fuzz driver.

pub mod fuzz;
pub mod model;
pub mod render;
