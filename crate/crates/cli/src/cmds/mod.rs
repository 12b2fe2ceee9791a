pub mod bound;
pub mod lax;
pub mod pii;
pub mod plot;
pub mod riccati;
pub mod schrodinger;
pub mod yukawa;
