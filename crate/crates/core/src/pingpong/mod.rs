//! Effective ping-pong: find `a₀`, `h₀`, pick a separated configuration,
//! schedule the table and certify a power `ℓ`.

pub mod certificate;
pub mod certify;
pub mod frame;
pub mod linear;
pub mod search;
pub mod separation;
pub mod table;

pub use certificate::{recheck, FreePairCertificate, RecheckReport, FORMAT_VERSION};
pub use certify::{certify_pair, CertifyConfig, EtaMode};
pub use frame::Frame;
pub use linear::{certify_linear_pair, LinearCertificate};
pub use search::{find_general_position, find_hyperbolic};
pub use separation::{separation_select, Budgets, GeometryReport};
pub use table::{schedule_params, CheckedInequality, TableParams};
