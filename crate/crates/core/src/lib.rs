pub mod budget;
pub mod catalog;
pub mod degeneration;
pub mod error;
pub mod io;
pub mod ideal;
pub mod matfac;
pub mod matrix;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
