pub mod closed;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod spdc;
pub mod state;
pub mod sweep;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use state::{Family, Ratio, StateSpec};
