pub mod arrangement;
pub mod blockalg;
pub mod chamber_order;
pub mod coeffring;
pub mod dualities;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod par;
pub mod qpoly;
pub mod repcat;
pub mod rh;
pub mod sign;

pub use error::{Error, Result};
pub use sign::SignVector;
