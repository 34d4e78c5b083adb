pub mod gen;
pub mod oracle;
pub mod scenarios;
pub mod strategy;
