pub mod cli;
pub mod combinatorics;
pub mod enumerator;
pub mod error;
pub mod oracle;
pub mod rates;
pub mod sphere;
