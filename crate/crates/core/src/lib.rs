pub mod linalg;
pub mod poly;
pub mod upoly;
pub mod trig;
pub mod system;
pub mod ode;
pub mod quad;
pub mod centerlab;
pub mod commutant;
pub mod input;
pub mod report;
pub mod portrait;
pub mod claims;
