pub mod decay;
pub mod poly;
pub mod sigma;
pub mod verify;
