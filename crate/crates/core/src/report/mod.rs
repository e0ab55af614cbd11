mod emit;
mod record;
mod suite;

pub use emit::emit;
pub use record::*;
pub use suite::*;
